import pytest
from hypothesis import given

from heytingkit.errors import ParseError
from heytingkit.logic.syntax import And, Atom, Bot, Imp, Not, Or, conj, disj, p, parse
from strategies import formulas


def test_parse_identity():
    assert parse("p0 -> p0") == Imp(Atom(0), Atom(0))


def test_parse_wem():
    assert parse("~p0 | ~~p0") == Or(Not(Atom(0)), Not(Not(Atom(0))))


def test_implication_is_right_associative():
    assert parse("p0 -> p1 -> p2") == Imp(Atom(0), Imp(Atom(1), Atom(2)))


def test_precedence():
    assert parse("~p0 & p1 | p2 -> p3") == Imp(Or(And(Not(Atom(0)), Atom(1)), Atom(2)), Atom(3))
    assert parse("p0 & p1 & p2") == And(And(Atom(0), Atom(1)), Atom(2))


def test_unicode_aliases():
    assert parse("¬p0 ∨ (p1 ∧ p2 → ⊥)") == parse("~p0 | (p1 & p2 -> F)")


def test_bottom():
    assert parse("F") == Bot()
    assert str(Bot()) == "F"


@pytest.mark.parametrize("text,pos", [("p0 &", 4), ("(p0", 3), ("p0 p1", 3), ("q", 0), ("", 0)])
def test_parse_errors_carry_position(text, pos):
    with pytest.raises(ParseError) as info:
        parse(text)
    assert info.value.position == pos


def test_printer_minimal_parentheses():
    assert str(parse("(p0 -> p1) -> p2")) == "(p0 -> p1) -> p2"
    assert str(parse("p0 -> (p1 -> p2)")) == "p0 -> p1 -> p2"
    assert str(parse("~(p0 & p1)")) == "~(p0 & p1)"
    assert str(parse("p0 & (p1 | p2)")) == "p0 & (p1 | p2)"


def test_helpers():
    assert conj([p(0), p(1), p(2)]) == And(And(p(0), p(1)), p(2))
    assert disj([p(0), p(1)]) == Or(p(0), p(1))
    phi = parse("(p0 -> p3) & ~p1")
    assert phi.atoms == {0, 1, 3}
    assert not phi.is_positive and parse("p0 -> p1 | p2").is_positive
    assert parse("p0 & F").is_positive is False


def test_operators_build_formulas():
    assert (p(0) & p(1)) == And(p(0), p(1))
    assert (p(0) >> p(1)) == Imp(p(0), p(1))
    assert (~p(0) | p(1)) == Or(Not(p(0)), p(1))


@given(formulas(n_atoms=4))
def test_parse_print_round_trip(phi):
    assert parse(str(phi)) == phi
    assert parse(str(phi).replace(" ", "")) == phi
    assert parse("  " + str(phi).replace(" ", "\t ") + " ") == phi


@given(formulas())
def test_subformulas_closed(phi):
    subs = set(phi.subformulas())
    assert phi in subs
    for f in subs:
        assert set(f.children()) <= subs
