import pytest
from hypothesis import given

from ltlsynth.formulas import (
    And,
    Atom,
    FormulaSyntaxError,
    Future,
    Next,
    Not,
    Or,
    Until,
    cost,
    parse_formula,
    to_text,
)
from ltlsynth.traces import Alphabet

from strategies import formula_trees

ABC = Alphabet.of("abc")
a, b, c = Atom(0), Atom(1), Atom(2)


def test_cost_counts_nodes():
    assert cost(a) == 1
    assert cost(Not(Until(b, a))) == 4
    assert cost(Until(Not(And(b, Next(b))), Until(a, Not(Next(Until(Next(Not(Next(b))), a)))))) == 16


def test_print_negated_until():
    assert to_text(Not(Until(b, a)), ABC) == "!(b U a)"


@pytest.mark.parametrize(
    "text,tree",
    [
        ("a", a),
        ("!a", Not(a)),
        ("X a", Next(a)),
        ("F a", Future(a)),
        ("a U b", Until(a, b)),
        ("a U b U c", Until(a, Until(b, c))),
        ("(a U b) U c", Until(Until(a, b), c)),
        ("a U b & c", And(Until(a, b), c)),
        ("a & b | c", Or(And(a, b), c)),
        ("a | b & c", Or(a, And(b, c))),
        ("X a U b", Until(Next(a), b)),
        ("F !a", Future(Not(a))),
        ("!(a & b)", Not(And(a, b))),
        ("!!a", Not(Not(a))),
        ("X X b", Next(Next(b))),
        ("a & (b | c)", And(a, Or(b, c))),
        ("a U (b & c)", Until(a, And(b, c))),
    ],
)
def test_parse_cases(text, tree):
    assert parse_formula(text, ABC) == tree


@pytest.mark.parametrize(
    "tree,text",
    [
        (And(a, And(b, c)), "a & (b & c)"),
        (And(And(a, b), c), "a & b & c"),
        (Until(Until(a, b), c), "(a U b) U c"),
        (Until(a, Until(b, c)), "a U b U c"),
        (Next(Until(a, b)), "X (a U b)"),
        (Or(And(a, b), c), "a & b | c"),
        (And(a, Or(b, c)), "a & (b | c)"),
    ],
)
def test_print_minimal_parentheses(tree, text):
    assert to_text(tree, ABC) == text


@given(formula_trees(3))
def test_print_parse_round_trip(tree):
    assert parse_formula(to_text(tree, ABC), ABC) == tree


def test_parse_error_at_end_of_input():
    with pytest.raises(FormulaSyntaxError, match="offset 4") as ei:
        parse_formula("(b U", ABC)
    assert ei.value.position == 4


@pytest.mark.parametrize(
    "text,position",
    [
        ("", 0),
        (")", 0),
        ("a b", 2),
        ("a &", 3),
        ("(a", 2),
        ("a @ b", 2),
    ],
)
def test_parse_error_positions(text, position):
    with pytest.raises(FormulaSyntaxError) as ei:
        parse_formula(text, ABC)
    assert ei.value.position == position


def test_unknown_atom_rejected():
    with pytest.raises(FormulaSyntaxError, match="unknown atom 'z'"):
        parse_formula("a U z", ABC)


def test_keywords_are_not_atom_names():
    # "Xa" is an identifier, not X applied to a
    with pytest.raises(FormulaSyntaxError, match="unknown atom 'Xa'"):
        parse_formula("Xa", ABC)
