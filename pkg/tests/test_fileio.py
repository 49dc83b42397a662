import numpy as np
import pytest
from hypothesis import given, settings

from mdshash.codes import GenericCode, parity_mds_with_allones, rs_code
from mdshash.errors import ParseError
from mdshash.family import HashFamily, family_to_code
from mdshash.fileio import (
    format_code,
    format_family,
    parse_code,
    parse_family,
    read_code,
    read_family,
    write_code,
    write_family,
)

from .strategies import families


@settings(max_examples=60, deadline=None)
@given(families(group="zm"))
def test_family_round_trip(fam):
    assert parse_family(format_family(fam)) == fam


def test_family_round_trip_gf(tmp_path):
    fam = HashFamily(np.array([[0, 1, 2, 3], [3, 2, 1, 0]]), 4, "gf")
    write_family(fam, tmp_path / "f.txt")
    back = read_family(tmp_path / "f.txt")
    assert back == fam and back.group == "gf"


def test_family_format_is_canonical():
    fam = HashFamily(np.array([[0, 1, 2], [2, 1, 0]]), 3)
    assert format_family(fam) == "2 3 3 zm\n0 1 2\n2 1 0\n"
    # blank lines and extra spaces are tolerated on input
    assert parse_family("\n2 3 3\n\n 0  1 2\n2 1 0\n\n") == fam


def test_code_round_trip_linear(tmp_path):
    code = rs_code(5, 2, 4)
    write_code(code, tmp_path / "c.txt")
    back = read_code(tmp_path / "c.txt")
    assert np.array_equal(back.codewords(), code.codewords())
    assert format_code(code).splitlines()[0] == "5 2 4"


def test_code_round_trip_generic():
    code = GenericCode(3, np.array([[0, 0, 0], [1, 2, 0], [2, 1, 1]]))
    text = format_code(code)
    assert text.splitlines()[0] == "3 3 3 generic"
    back = parse_code(text)
    assert isinstance(back, GenericCode)
    assert np.array_equal(back.codewords(), code.codewords())


def test_generic_round_trip_via_family():
    code = family_to_code(HashFamily(np.array([[0, 1, 1], [1, 0, 1]]), 2))
    assert np.array_equal(parse_code(format_code(code)).codewords(), code.codewords())


def test_header_without_type_is_linear():
    code = parse_code("3 3 4\n1 0 0 1\n0 1 0 1\n0 0 1 2\n")
    ref = parity_mds_with_allones(3, 4)
    assert type(code).__name__ == "LinearCode"
    assert np.array_equal(code.codewords(), ref.codewords())


@pytest.mark.parametrize(
    "text,line,fragment",
    [
        ("", 1, "empty"),
        ("2 3\n0 1 2\n", 1, "header"),
        ("2 3 3\n0 1 2\n", 2, "truncated"),
        ("1 3 3\n0 1 2\n1 1 1\n", 3, "extra"),
        ("2 3 3\n0 1 2\n0 1\n", 3, "expected 3 entries"),
        ("2 3 3\n0 x 2\n0 1 2\n", 2, "integers"),
        ("2 3 3 ring\n0 1 2\n0 1 2\n", 1, "group"),
        ("2 3 3\n0 1 5\n0 1 2\n", 1, ""),
    ],
)
def test_family_parse_errors(text, line, fragment):
    with pytest.raises(ParseError) as info:
        parse_family(text)
    assert info.value.line == line
    assert fragment in str(info.value)
    assert str(info.value).startswith(f"line {line}:")
    assert info.value.exit_code == 4


@pytest.mark.parametrize(
    "text,line",
    [
        ("3 2 3 affine\n1 1 1\n0 1 2\n", 1),
        ("3 2 3\n1 1 1\n", 2),
        ("3 2 3\n1 1 1\n2 2 2\n", 1),  # rank deficient generator
        ("3 2 3 generic\n1 1 1\n1 1 1\n", 1),  # repeated codewords
    ],
)
def test_code_parse_errors(text, line):
    with pytest.raises(ParseError) as info:
        parse_code(text)
    assert info.value.line == line
