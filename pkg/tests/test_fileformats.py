"""Text formats: .dba and .cxt parsing, rendering, error paths."""

import pytest

from dbakit.errors import ParseError
from dbakit.fca import FormalContext
from dbakit.fileformats import parse_algebra, parse_context, render_algebra, render_context
from dbakit.fixtures import builtin_fixtures

TWO_ELEMENT = """\
# the two-element algebra separating the double-negation axioms
elements: a b
meet:
a a
a b
join:
a b
b b
neg: a a
opp: b b
top: b
bot: a
"""


def test_parse_two_element_file():
    alg = parse_algebra(TWO_ELEMENT)
    b = alg.index("b")
    a = alg.index("a")
    assert alg._rows_m[b][b] == b
    assert alg._lneg[b] == a
    assert alg.top == b and alg.bot == a


def test_parse_singleton_file():
    alg = parse_algebra("elements: e\nmeet:\ne\njoin:\ne\nneg: e\nopp: e\ntop: e\nbot: e\n")
    assert alg.n == 1


def test_round_trip_on_fixtures():
    for name, alg in builtin_fixtures():
        text = render_algebra(alg)
        again = parse_algebra(text)
        assert render_algebra(again) == text, name
        assert again.signature() == alg.signature(), name


def test_malformed_row_length_names_the_row():
    bad = TWO_ELEMENT.replace("a b\nb b", "a b\nb b b")
    with pytest.raises(ParseError, match="row"):
        parse_algebra(bad)


def test_unknown_element_name():
    with pytest.raises(ParseError, match="unknown element"):
        parse_algebra(TWO_ELEMENT.replace("neg: a a", "neg: a zz"))


def test_duplicate_section():
    with pytest.raises(ParseError, match="duplicate"):
        parse_algebra(TWO_ELEMENT + "top: b\n")


def test_missing_section():
    with pytest.raises(ParseError, match="missing"):
        parse_algebra("elements: a\nmeet:\na\njoin:\na\nneg: a\nopp: a\ntop: a\n")


def test_comments_and_blank_lines_ignored():
    text = "\n# header\nelements: a  # trailing\nmeet:\na\n\njoin:\na\nneg: a\nopp: a\ntop: a\nbot: a\n"
    assert parse_algebra(text).n == 1


CTX = """\
objects: g1 g2
attributes: m1 m2 m3
X.X
...
"""


def test_parse_context():
    ctx = parse_context(CTX)
    assert ctx.objects == ("g1", "g2")
    assert ctx.attributes == ("m1", "m2", "m3")
    assert ctx.incidence.tolist() == [[True, False, True], [False, False, False]]


def test_context_round_trip():
    ctx = parse_context(CTX)
    assert parse_context(render_context(ctx)).obj_rows == ctx.obj_rows


def test_context_row_count_checked():
    with pytest.raises(ParseError):
        parse_context("objects: g1 g2\nattributes: m1\nX\n")


def test_context_bad_cell():
    with pytest.raises(ParseError, match="'X' or '.'"):
        parse_context("objects: g\nattributes: m\n?\n")


def test_context_row_length_checked():
    with pytest.raises(ParseError):
        parse_context("objects: g\nattributes: m1 m2\nX\n")


def test_empty_object_side_context():
    ctx = parse_context("objects:\nattributes: m1 m2\n")
    assert ctx.n_objects == 0 and ctx.n_attributes == 2
    assert render_context(ctx) == "objects: \nattributes: m1 m2\n"
    assert isinstance(ctx, FormalContext)
