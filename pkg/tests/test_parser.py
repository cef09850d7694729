import pytest

from lpbn.core import Program
from lpbn.parser import ParseError, parse_file, parse_program, serialize_program

from conftest import P1_TEXT


def test_p1(p1):
    assert p1.atoms == ("p", "q", "r")
    assert p1.named_rules() == {
        ("p", frozenset(), frozenset({"q"})),
        ("q", frozenset(), frozenset({"p"})),
        ("r", frozenset({"q"}), frozenset()),
    }


def test_serialize_is_canonical(p1):
    assert serialize_program(p1) == P1_TEXT
    messy = parse_program("r:-q .  % comment\np :- ~q.\nq:-not p.\nx :- not b, a, not a, c.")
    assert serialize_program(messy) == "r :- q.\np :- not q.\nq :- not p.\nx :- a, c, not a, not b.\n"


def test_roundtrip_identity(p1):
    assert parse_program(serialize_program(p1)) == p1


def test_empty_and_comments():
    assert len(parse_program("")) == 0
    assert len(parse_program("% only a comment\n\n")) == 0


def test_facts_and_duplicates():
    p = parse_program("p.\np.\nq :- p.")
    assert len(p) == 2


@pytest.mark.parametrize(
    "text, line, col, fragment",
    [
        (":- p.", 1, 1, "constraints"),
        ("p | q.", 1, 3, "disjunctive"),
        ("p ; q.", 1, 3, "disjunctive"),
        ("p :- -q.", 1, 6, "classical negation"),
        ("p(a).", 1, 2, "arguments"),
        ("p :- X.", 1, 6, "variables"),
        ("p.\nq :- r", 2, 7, "end of input"),
        ("not.", 1, 1, "keyword 'not'"),
        ("p :- not not q.", 1, 10, "keyword 'not'"),
        ("p :- 3.", 1, 6, "number"),
        ("p :- q r.", 1, 8, "expected ','"),
        ("p q.", 1, 3, "expected ':-'"),
        ("p :- q | r.", 1, 8, "disjunctive"),
        ("p :- ~.", 1, 7, "after '~'"),
    ],
)
def test_parse_errors_have_spans(text, line, col, fragment):
    with pytest.raises(ParseError) as err:
        parse_program(text)
    assert (err.value.span.line, err.value.span.col) == (line, col)
    assert fragment in str(err.value)


def test_not_needs_whitespace():
    # "notq" is an atom name, not a negation
    p = parse_program("p :- notq.")
    assert p.named_rules() == {("p", frozenset({"notq"}), frozenset())}


def test_parse_file(tmp_path, p1):
    f = tmp_path / "p1.lp"
    f.write_text(P1_TEXT)
    assert parse_file(str(f)) == p1


def test_program_str_is_serialization(p1):
    assert str(p1) == P1_TEXT
    assert isinstance(parse_program(str(p1)), Program)
