import pytest

from conftest import random_z4_set
from z4ap.io import SetFileError, format_set, parse_set, read_set, write_set


def test_parse_with_comments():
    A = parse_set("# header\n\n012\n  300 \n# tail\n")
    assert A.n == 3 and A.digit_rows() == [(0, 1, 2), (3, 0, 0)]


def test_round_trip(tmp_path, rng):
    for n in (1, 3, 5):
        A = random_z4_set(rng, n, 20)
        path = tmp_path / f"s{n}.txt"
        write_set(path, A, ["a comment"])
        assert read_set(path) == A
        assert parse_set(format_set(A)) == A


def test_binary_sets():
    S = parse_set("01\n11\n", binary=True)
    assert S.binary and sorted(S) == [0b10, 0b11]
    with pytest.raises(SetFileError, match="line 1"):
        parse_set("2\n", binary=True)


def test_bad_character_reports_line():
    with pytest.raises(SetFileError) as info:
        parse_set("01\n# c\n0x\n")
    assert info.value.lineno == 3


def test_digit_out_of_range():
    with pytest.raises(SetFileError, match="line 2"):
        parse_set("00\n04\n")


def test_mixed_lengths():
    with pytest.raises(SetFileError, match="expected 2"):
        parse_set("01\n012\n")


def test_empty_text():
    A = parse_set("")
    assert len(A) == 0 and A.n == 0
