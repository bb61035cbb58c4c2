import pytest
from hypothesis import given

from heytingkit.errors import ArgumentError, ParseError, SizeLimitError
from heytingkit.logic.corpus import load_corpus, read_corpus
from heytingkit.logic.families import FAMILIES, family_check, family_members
from heytingkit.logic.ipc import ipc_decide
from heytingkit.logic.positive import atom_bound, lift_counter, positivize
from heytingkit.logic.semantics import Valuation, validity
from heytingkit.logic.syntax import parse
from strategies import algebras, formulas

WEM = parse("~p0 | ~~p0")
KP = parse("(~p0 -> p1|p2) -> ((~p0->p1) | (~p0->p2))")


def test_positivize_examples():
    assert positivize(parse("p0 & p1")) == parse("p0 & p1")
    assert positivize(parse("~p0")) == parse("p0 -> p0 & p1")
    assert positivize(WEM) == parse("(p0 -> p0&p1) | ((p0 -> p0&p1) -> p0&p1)")


def test_positivize_bottom_and_bound():
    assert positivize(parse("F")) == parse("p0 & p1")
    assert atom_bound(parse("p3 | ~p1")) == 3
    assert positivize(parse("~p2 -> p0")) == parse("(p2 -> p0 & p1 & p2 & p3) -> p0")


@given(formulas())
def test_positive_output(phi):
    plus = positivize(phi)
    assert plus.is_positive
    assert plus.atoms <= set(range(atom_bound(phi) + 2))


@given(algebras, formulas(n_atoms=2, max_leaves=6))
def test_positive_validity_transfers(H, phi):
    if validity(H, positivize(phi)).valid:
        assert validity(H, phi).valid


@given(algebras, formulas(n_atoms=2, max_leaves=6))
def test_counters_lift_to_segments(H, phi):
    v = validity(H, positivize(phi))
    if not v.valid:
        lifted = lift_counter(H, phi, v.counter)
        assert lifted.refutes
        assert not validity(lifted.segment, phi).valid


def test_lift_requires_a_counter():
    from heytingkit.lattice import chain_algebra
    C = chain_algebra(3)
    with pytest.raises(ArgumentError):
        lift_counter(C, WEM, Valuation(C, {}))


def test_family_examples():
    assert family_check(WEM, "O_n", 3).valid
    assert family_check(KP, "O_n_minus", 3).valid
    rep = family_check(WEM, "O_n_minus_intervals", 2)
    assert not rep.valid and rep.counterexample.verdict.counter is not None


def test_family_sizes():
    assert [H.size for _, _, H in family_members("O_n", 3)] == [3, 6, 20]


@pytest.mark.parametrize(
    "family,n", [("O_n", 5), ("O_n_minus", 5), ("O_n_intervals", 4), ("O_n_minus_intervals", 4)]
)
def test_family_bounds(family, n):
    with pytest.raises(SizeLimitError):
        family_check(WEM, family, n)


def test_family_report_lists_every_member():
    rep = family_check(WEM, "O_n_intervals", 2, stop_at_first=False)
    # intervals over all upsets of P_1 and P_2
    assert len(rep.entries) == 3 + 6
    assert rep.to_dict()["valid_up_to_bound"] == rep.valid


def test_unknown_family():
    assert "O_n" in FAMILIES
    with pytest.raises(ArgumentError):
        family_check(WEM, "O_m", 2)


def test_corpus_is_large_and_consistent():
    entries = load_corpus()
    assert len(entries) >= 50
    assert {e.theorem for e in entries} == {True, False}
    for e in entries:
        assert ipc_decide(e.formula).theorem == e.theorem, e.line


def test_corpus_reader():
    text = "# header\np0 -> p0  # theorem: identity\n\np0 | ~p0  # non-theorem\n"
    entries = read_corpus(text)
    assert [e.theorem for e in entries] == [True, False]
    assert entries[0].note == "identity"
    with pytest.raises(ParseError):
        read_corpus("p0 -> # theorem\n")
