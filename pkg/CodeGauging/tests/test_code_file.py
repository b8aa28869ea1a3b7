"""Unit tests for code_file.py"""

from __future__ import annotations

import json

import pytest

from utils.chain_complex import ChainComplex
from utils.code_families import ising, toric_complex
from utils.code_file import (CodeFileParser, emit_alist, emit_code_json, emit_complex_json,
                             load_code_file, parse_alist, parse_code_json)
from utils.errors import AlistParseError, CodeFileError

# Open chain of three bits: check 1 on bits 1,2 and check 2 on bits 2,3
CHAIN_ALIST = """3 2
2 2
1 2 1
2 2
1
1 2
2
1 2
2 3
"""


def _replace_line(text: str, line: int, content: str) -> str:
    lines = text.splitlines()
    lines[line - 1] = content
    return "\n".join(lines) + "\n"


def test_parse_alist() -> None:
    c = parse_alist(CHAIN_ALIST, name="chain")
    assert (c.n, c.m, c.k, c.kT) == (3, 2, 1, 0)
    assert c.check_support(1) == [1, 2]
    assert c.bit_checks(1) == [0, 1]
    assert c.name == "chain"


def test_zero_padding_is_ignored() -> None:
    padded = _replace_line(CHAIN_ALIST, 5, "1 0")
    assert parse_alist(padded) == parse_alist(CHAIN_ALIST)


def test_emit_alist() -> None:
    """Emitted alist text reproduces the same parity-check matrix."""
    assert emit_alist(parse_alist(CHAIN_ALIST)) == CHAIN_ALIST
    ring = ising(1, 5).code
    assert parse_alist(emit_alist(ring)) == ring


@pytest.mark.parametrize("line, content, message", [
    (3, "1 x 1", "non-integer"),
    (6, "1", "bit 2 lists 1 entries"),
    (9, "1 3", "bit 1 and check 2 disagree"),
    (7, "4", "outside 1..2"),
    (8, "1 1", "repeated index"),
    (1, "3", "two non-negative counts"),
])
def test_alist_errors_carry_line_numbers(line: int, content: str, message: str) -> None:
    with pytest.raises(AlistParseError, match=message) as info:
        parse_alist(_replace_line(CHAIN_ALIST, line, content))
    assert info.value.line == line
    assert str(info.value).startswith(f"line {line}:")


def test_alist_truncated_and_trailing() -> None:
    truncated = "\n".join(CHAIN_ALIST.splitlines()[:8]) + "\n"
    with pytest.raises(AlistParseError, match="file ends before check list 2") as info:
        parse_alist(truncated)
    assert info.value.line == 9
    with pytest.raises(AlistParseError, match="unexpected content") as info:
        parse_alist(CHAIN_ALIST + "\n7 7\n")
    assert info.value.line == 11


def test_code_json_with_plaquettes() -> None:
    """A code JSON with plaquettes rebuilds the 2-complex of the torus."""
    inst = ising(2, 3)
    text = emit_code_json(inst.code, inst.plaquettes)
    assert json.loads(text)["kind"] == "code"
    cf = parse_code_json(text)
    assert cf.code == inst.code
    assert cf.plaquettes == inst.plaquettes
    assert cf.chain_complex().level_sizes == [9, 18, 9]
    assert cf.code.check_labels == inst.code.check_labels


def test_complex_json() -> None:
    cc = toric_complex(2, 3).complex
    cf = parse_code_json(emit_complex_json(cc))
    assert cf.complex == cc
    assert cf.chain_complex() is cf.complex
    assert cf.classical_code().delta == cc.boundary(1)


@pytest.mark.parametrize("text, message", [
    ("{", "invalid JSON at line 1"),
    ("[1, 2]", "top level"),
    ('{"schema": 2, "kind": "code"}', "unsupported schema"),
    ('{"schema": 1, "kind": "matrix"}', "unknown kind"),
    ('{"schema": 1, "kind": "code", "n": 2, "m": 1}', "missing field"),
    ('{"schema": 1, "kind": "code", "n": 2, "m": 1, "delta": [[5, 0]]}', "invalid delta entries"),
])
def test_code_json_errors(text: str, message: str) -> None:
    with pytest.raises(CodeFileError, match=message):
        parse_code_json(text)


def test_parser_detects_format(tmp_path) -> None:
    """Extensions decide the format; otherwise a leading brace means JSON."""
    alist_path = tmp_path / "chain.alist"
    alist_path.write_text(CHAIN_ALIST)
    cf = load_code_file(str(alist_path))
    assert cf.format == "alist"
    assert cf.code.name == "chain"
    assert cf.chain_complex() is None

    unnamed = tmp_path / "torus.txt"
    unnamed.write_text(emit_complex_json(toric_complex(2, 2).complex))
    parsed = CodeFileParser().parse(str(unnamed))
    assert parsed.format == "json"
    assert isinstance(parsed.complex, ChainComplex)
    assert parsed.classical_code().name == "torus.txt"

    assert CodeFileParser().detect_format("code.dat", "3 2\n") == "alist"
    with pytest.raises(CodeFileError, match="cannot read"):
        load_code_file(str(tmp_path / "missing.alist"))
