"""
Code file parser for the CodeGauging System.
Reads and writes classical codes in alist format and codes or chain complexes
in the versioned JSON format.
"""
import json
import logging
import os
from dataclasses import dataclass
from typing import Any, Dict, List, Optional, Tuple

from utils.chain_complex import ChainComplex, attach_local_redundancies
from utils.classical_code import ClassicalCode
from utils.errors import AlistParseError, CodeFileError, CodeGaugingError
from utils.gf2 import GF2Matrix

logger = logging.getLogger(__name__)

SCHEMA_VERSION = 1


@dataclass
class CodeFile:
    """A parsed code file: a code, optionally with plaquettes, or a chain complex."""
    format: str
    code: Optional[ClassicalCode] = None
    plaquettes: Optional[GF2Matrix] = None
    complex: Optional[ChainComplex] = None
    path: Optional[str] = None

    def classical_code(self) -> ClassicalCode:
        """The code carried by the file; for a complex, the code of delta_1."""
        if self.code is not None:
            return self.code
        return ClassicalCode(self.complex.boundary(1), name=self._name())

    def chain_complex(self) -> Optional[ChainComplex]:
        """The 2-complex when one is available, built from plaquettes if needed."""
        if self.complex is not None:
            return self.complex
        if self.plaquettes is not None:
            return attach_local_redundancies(self.code, self.plaquettes)
        return None

    def _name(self) -> str:
        return os.path.basename(self.path) if self.path else "code"


class _Lines:
    """Line cursor that reports 1-indexed positions."""

    def __init__(self, text: str):
        self.lines = text.splitlines()
        self.position = 0

    def next_ints(self, what: str) -> Tuple[int, List[int]]:
        if self.position >= len(self.lines):
            raise AlistParseError(self.position + 1, f"file ends before {what}")
        self.position += 1
        raw = self.lines[self.position - 1]
        try:
            return self.position, [int(token) for token in raw.split()]
        except ValueError:
            raise AlistParseError(self.position, f"non-integer token in {what}: {raw.strip()!r}") from None

    def finish(self) -> None:
        for offset, raw in enumerate(self.lines[self.position:]):
            if raw.strip():
                raise AlistParseError(self.position + offset + 1, "unexpected content after adjacency lists")


def _read_adjacency(lines: _Lines, count: int, degrees: List[int], limit: int,
                    what: str) -> List[List[int]]:
    """`count` lines of 1-indexed neighbours; trailing zeros are padding."""
    result = []
    for j in range(count):
        line, values = lines.next_ints(f"{what} list {j + 1}")
        while values and values[-1] == 0:
            values.pop()
        if len(values) != degrees[j]:
            raise AlistParseError(line, f"{what} {j + 1} lists {len(values)} entries, degree says {degrees[j]}")
        for v in values:
            if not 1 <= v <= limit:
                raise AlistParseError(line, f"index {v} outside 1..{limit}")
        if len(set(values)) != len(values):
            raise AlistParseError(line, f"repeated index in {what} {j + 1}")
        result.append([v - 1 for v in values])
    return result


def parse_alist(text: str, name: Optional[str] = None) -> ClassicalCode:
    """Parse alist text: "n m", max degrees, degree lists, then bit and check adjacency.

    Bits are the n variable nodes, checks the m rows of the parity-check matrix.
    """
    lines = _Lines(text)
    line, header = lines.next_ints("header")
    if len(header) != 2 or min(header) < 0:
        raise AlistParseError(line, "expected two non-negative counts 'n m'")
    n, m = header
    line, maxima = lines.next_ints("maximum degrees")
    if len(maxima) != 2:
        raise AlistParseError(line, "expected two maximum degrees")
    line, bit_degrees = lines.next_ints("bit degrees")
    if len(bit_degrees) != n:
        raise AlistParseError(line, f"expected {n} bit degrees, found {len(bit_degrees)}")
    if any(d > maxima[0] for d in bit_degrees):
        raise AlistParseError(line, f"bit degree exceeds declared maximum {maxima[0]}")
    line, check_degrees = lines.next_ints("check degrees")
    if len(check_degrees) != m:
        raise AlistParseError(line, f"expected {m} check degrees, found {len(check_degrees)}")
    if any(d > maxima[1] for d in check_degrees):
        raise AlistParseError(line, f"check degree exceeds declared maximum {maxima[1]}")
    if sum(bit_degrees) != sum(check_degrees):
        raise AlistParseError(line, f"degree sums differ: {sum(bit_degrees)} vs {sum(check_degrees)}")

    first_check_line = lines.position + n + 1
    by_bit = _read_adjacency(lines, n, bit_degrees, m, "bit")
    by_check = _read_adjacency(lines, m, check_degrees, n, "check")
    lines.finish()

    entries = sorted((i, a) for i, checks in enumerate(by_bit) for a in checks)
    transposed = sorted((i, a) for a, bits in enumerate(by_check) for i in bits)
    if entries != transposed:
        mismatch = sorted(set(entries) ^ set(transposed))[0]
        raise AlistParseError(first_check_line + mismatch[1],
                              f"bit {mismatch[0] + 1} and check {mismatch[1] + 1} disagree on adjacency")
    try:
        return ClassicalCode(GF2Matrix.from_sparse(n, m, entries), name=name)
    except CodeGaugingError as e:
        raise AlistParseError(line, str(e)) from e


def emit_alist(c: ClassicalCode) -> str:
    """alist text for c; adjacency lines are never zero-padded."""
    bit_degrees = [int(d) for d in c.delta.row_weights()]
    check_degrees = [int(d) for d in c.delta.column_weights()]
    out = [f"{c.n} {c.m}",
           f"{max(bit_degrees, default=0)} {max(check_degrees, default=0)}",
           " ".join(map(str, bit_degrees)),
           " ".join(map(str, check_degrees))]
    out += [" ".join(str(a + 1) for a in c.bit_checks(i)) for i in range(c.n)]
    out += [" ".join(str(i + 1) for i in c.check_support(a)) for a in range(c.m)]
    return "\n".join(out) + "\n"


def _matrix(rows: int, cols: int, entries: Any, what: str) -> GF2Matrix:
    try:
        return GF2Matrix.from_sparse(rows, cols, [tuple(e) for e in entries])
    except (TypeError, ValueError) as e:
        raise CodeFileError(f"invalid {what} entries: {e}") from e


def parse_code_json(text: str, name: Optional[str] = None) -> CodeFile:
    """Parse schema-1 JSON holding a code ("kind": "code") or a complex ("kind": "complex")."""
    try:
        data = json.loads(text)
    except json.JSONDecodeError as e:
        raise CodeFileError(f"invalid JSON at line {e.lineno}: {e.msg}") from e
    if not isinstance(data, dict):
        raise CodeFileError("top level must be an object")
    if data.get("schema") != SCHEMA_VERSION:
        raise CodeFileError(f"unsupported schema {data.get('schema')!r}, expected {SCHEMA_VERSION}")
    kind = data.get("kind")
    if kind == "complex":
        try:
            return CodeFile("json", complex=ChainComplex.from_json_dict(data))
        except KeyError as e:
            raise CodeFileError(f"missing field {e}") from e
    if kind != "code":
        raise CodeFileError(f"unknown kind {kind!r}")
    try:
        n, m = int(data["n"]), int(data["m"])
        delta = _matrix(n, m, data["delta"], "delta")
    except KeyError as e:
        raise CodeFileError(f"missing field {e}") from e
    code = ClassicalCode(delta, data.get("bit_labels"), data.get("check_labels"), name=data.get("name", name))
    plaquettes = None
    if "plaquettes" in data:
        block = data["plaquettes"]
        plaquettes = _matrix(m, int(block["count"]), block["entries"], "plaquette")
    return CodeFile("json", code=code, plaquettes=plaquettes)


def emit_code_json(c: ClassicalCode, plaquettes: Optional[GF2Matrix] = None, indent: int = 2) -> str:
    data: Dict[str, Any] = {
        "schema": SCHEMA_VERSION,
        "kind": "code",
        "name": c.name,
        "n": c.n,
        "m": c.m,
        "delta": [list(e) for e in c.delta.to_sparse()],
    }
    if c.bit_labels is not None:
        data["bit_labels"] = c.bit_labels
    if c.check_labels is not None:
        data["check_labels"] = c.check_labels
    if plaquettes is not None:
        data["plaquettes"] = {"count": plaquettes.cols, "entries": [list(e) for e in plaquettes.to_sparse()]}
    return json.dumps(data, indent=indent, sort_keys=True) + "\n"


def emit_complex_json(cc: ChainComplex, indent: int = 2) -> str:
    return json.dumps(cc.to_json_dict(), indent=indent, sort_keys=True) + "\n"


class CodeFileParser:
    """Parser for code files, dispatching on extension and then on content."""

    def __init__(self):
        """Initialize the code file parser."""
        self.supported_extensions = {'.alist': 'alist', '.json': 'json'}

    def detect_format(self, path: str, text: str) -> str:
        extension = os.path.splitext(path)[1].lower()
        if extension in self.supported_extensions:
            return self.supported_extensions[extension]
        return "json" if text.lstrip().startswith("{") else "alist"

    def parse(self, path: str) -> CodeFile:
        """Parse a code file.

        Args:
            path: Path to an alist or JSON file

        Returns:
            CodeFile with the parsed content
        """
        try:
            with open(path, 'r') as f:
                text = f.read()
        except OSError as e:
            raise CodeFileError(f"cannot read {path}: {e}") from e
        fmt = self.detect_format(path, text)
        logger.info(f"Parsing {fmt} code file: {path}")
        name = os.path.splitext(os.path.basename(path))[0]
        if fmt == "alist":
            result = CodeFile("alist", code=parse_alist(text, name))
        else:
            result = parse_code_json(text, name)
        result.path = path
        return result


def load_code_file(path: str) -> CodeFile:
    return CodeFileParser().parse(path)
