import pytest
from hypothesis import given, settings

from matro.constructions import uniform
from matro.core import Matroid
from matro.errors import ParseError
from matro.fileformat import format_matroid, parse_matroid, read_matroid

from helpers import matroids


class TestFormat:
    def test_u12(self):
        assert format_matroid(uniform(1, 2)) == "2 1\n0\n1\n"

    def test_rank_zero(self):
        text = format_matroid(uniform(0, 2))
        assert text == "2 0\n\n"
        assert parse_matroid(text) == uniform(0, 2)

    def test_comments(self):
        text = format_matroid(uniform(1, 1), comments=["hello"])
        assert text.startswith("# hello\n")
        assert parse_matroid(text) == uniform(1, 1)

    @given(matroids(n_max=6))
    @settings(max_examples=100, deadline=None)
    def test_round_trip(self, M):
        assert parse_matroid(format_matroid(M)) == M


class TestParseErrors:
    @pytest.mark.parametrize(
        "text",
        [
            "2 1\n0\n1",  # no final newline
            "2 1\n1\n0\n",  # unsorted basis lines
            "3 2\n1 0\n",  # decreasing indices
            "3 2\n0 0\n",  # repeated index
            "2 1\n0\n2\n",  # out of range
            "2\n0\n",  # bad header
            "2 3\n",  # r > n
            "2 1\n0  \n",  # stray spaces
            "4 2\n0 1\n2 3\n",  # exchange fails
            "3 2\n0\n",  # wrong size
        ],
    )
    def test_rejects(self, text):
        with pytest.raises(ParseError):
            parse_matroid(text)

    def test_error_carries_line(self):
        with pytest.raises(ParseError) as info:
            parse_matroid("2 1\n0\n5\n")
        assert info.value.line == 3

    def test_exchange_message(self):
        with pytest.raises(ParseError, match="ExchangeViolated"):
            parse_matroid("4 2\n0 1\n2 3\n")

    def test_unchecked_parse_keeps_invalid_family(self):
        M = parse_matroid("4 2\n0 1\n2 3\n", check=False)
        assert isinstance(M, Matroid) and len(M.bases) == 2


def test_read_file(tmp_path):
    p = tmp_path / "m.matroid"
    p.write_text("3 2\n0 1\n0 2\n1 2\n")
    assert read_matroid(p) == uniform(2, 3)
