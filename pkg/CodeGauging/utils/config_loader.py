"""
Configuration loader for the CodeGauging System.
Loads the default configuration and per-section override files, and reads
CODEGAUGING_* environment overrides.
"""
import os
import json
import logging
from typing import Dict, Any, Optional

logger = logging.getLogger(__name__)

ENV_PREFIX = "CODEGAUGING_"

# Environment variable suffix -> (section, key, parser)
ENV_OVERRIDES = {
    "THREADS": ("system", "threads", int),
    "LOG_LEVEL": ("system", "log_level", str),
    "CAP": ("search", "cap", int),
    "SEED": ("system", "seed", int),
}


class ConfigLoader:
    """Configuration loader for the CodeGauging System."""

    def __init__(self, config_dir: str = None):
        """Initialize the configuration loader.

        Args:
            config_dir: Directory containing configuration files
        """
        if config_dir:
            self.config_dir = config_dir
        else:
            # Default to config directory in project root
            self.config_dir = os.path.join(os.path.dirname(os.path.dirname(__file__)), 'config')

        if not os.path.isdir(self.config_dir):
            logger.warning(f"Config directory not found: {self.config_dir}")

        self.default_config = self._load_default_config()

    def _load_default_config(self) -> Dict[str, Any]:
        """Load default configuration.

        Returns:
            Default configuration dictionary
        """
        default_config_path = os.path.join(self.config_dir, 'default_config.json')

        try:
            with open(default_config_path, 'r') as f:
                return json.load(f)
        except FileNotFoundError:
            logger.warning(f"Default config file not found: {default_config_path}")
            return {}
        except json.JSONDecodeError:
            logger.error(f"Invalid JSON in default config file: {default_config_path}")
            return {}

    def load_config(self, config_name: str) -> Dict[str, Any]:
        """Load configuration for one section.

        The section from default_config.json is merged with an optional
        <config_name>_config.json in the same directory, then environment
        overrides for that section are applied.

        Args:
            config_name: Name of the section to load

        Returns:
            Configuration dictionary
        """
        default_section = dict(self.default_config.get(config_name, {}))

        config_path = os.path.join(self.config_dir, f"{config_name}_config.json")
        try:
            with open(config_path, 'r') as f:
                custom_config = json.load(f)
            merged_config = {**default_section, **custom_config}
            logger.info(f"Loaded configuration for {config_name}")
        except FileNotFoundError:
            logger.debug(f"No custom config file found for {config_name}, using default")
            merged_config = default_section
        except json.JSONDecodeError:
            logger.error(f"Invalid JSON in config file: {config_path}")
            merged_config = default_section

        for suffix, (section, key, parser) in ENV_OVERRIDES.items():
            if section != config_name:
                continue
            value = self.get_env_override(suffix, parser)
            if value is not None:
                merged_config[key] = value
        return merged_config

    def get_env_override(self, name: str, parser=str) -> Optional[Any]:
        """Read CODEGAUGING_<NAME> from the environment.

        Args:
            name: Variable suffix, e.g. "THREADS"
            parser: Conversion applied to the raw string

        Returns:
            Parsed value, or None when unset or unparseable
        """
        raw = os.environ.get(f"{ENV_PREFIX}{name.upper()}")
        if raw is None or raw == "":
            return None
        try:
            return parser(raw)
        except ValueError:
            logger.warning(f"Ignoring {ENV_PREFIX}{name.upper()}={raw!r}: not a valid value")
            return None

    def get_system_config(self) -> Dict[str, Any]:
        return self.load_config('system')

    def get_search_config(self) -> Dict[str, Any]:
        return self.load_config('search')

    def all_sections(self) -> Dict[str, Dict[str, Any]]:
        """Every section of the default configuration, with overrides applied."""
        return {name: self.load_config(name) for name in self.default_config}
