import pytest
from hypothesis import given, settings

from heytingkit.errors import ResourceError
from heytingkit.lattice import chain_algebra
from heytingkit.logic.ipc import ipc_decide, prove
from heytingkit.logic.semantics import validity
from heytingkit.logic.syntax import conj, p, parse
from heytingkit.order import open_algebra
from strategies import formulas, stock

KP = parse("(~p0 -> p1|p2) -> ((~p0->p1) | (~p0->p2))")


def test_identity_is_a_theorem():
    r = ipc_decide(parse("p0 -> p0"))
    assert r.theorem and r.proof.rule == "→R"
    assert r.countermodel is None


def test_wem_countermodel_is_the_fork():
    r = ipc_decide(parse("~p0 | ~~p0"))
    M = r.countermodel
    assert not r.theorem and r.minimal
    assert M.size == 3
    root = M.frame.least
    assert root == 0
    assert all(M.frame.le[root, w] for w in range(3))
    assert not M.frame.le[1, 2] and not M.frame.le[2, 1]
    forced = [w for w in range(3) if M.forces(w, p(0))]
    assert len(forced) == 1 and forced[0] != root
    assert not M.forces(root, parse("~p0 | ~~p0"))


def test_kreisel_putnam_countermodel():
    r = ipc_decide(KP)
    assert not r.theorem
    assert r.countermodel.size <= 6
    assert not r.countermodel.forces(0, KP)


@pytest.mark.parametrize("text", [
    "p0 -> ~~p0",
    "~~~p0 -> ~p0",
    "(p0 -> p1) -> (~p1 -> ~p0)",
    "~~(p0 | ~p0)",
    "(p0 & p1 -> p2) -> (p0 -> p1 -> p2)",
    "F -> p0",
])
def test_theorems(text):
    r = ipc_decide(parse(text))
    assert r.theorem and prove(parse(text)) is not None


@pytest.mark.parametrize("text,worlds", [
    ("p0 | ~p0", 2),
    ("((p0 -> p1) -> p0) -> p0", 2),
    ("~~p0 -> p0", 2),
    ("(p0 -> p1) | (p1 -> p0)", 3),
    ("(~p0 -> p1 | p2) -> ((~p0 -> p1) | (~p0 -> p2))", 4),
])
def test_minimal_countermodels(text, worlds):
    r = ipc_decide(parse(text))
    assert not r.theorem and r.minimal
    assert r.countermodel.size == worlds


def test_size_bound():
    big = conj([p(i % 5) for i in range(80)])
    with pytest.raises(ResourceError):
        ipc_decide(big, max_size=100)


def test_result_serialisation():
    d = ipc_decide(parse("~p0 | ~~p0")).to_dict()
    assert d["theorem"] is False and len(d["countermodel"]["worlds"]) == 3
    d = ipc_decide(parse("p0 -> p0")).to_dict()
    assert d["theorem"] is True and d["proof"]["rule"] == "→R"


@settings(max_examples=120)
@given(formulas(n_atoms=3, max_leaves=8))
def test_decision_agrees_with_semantics(phi):
    r = ipc_decide(phi)
    if r.theorem:
        # sound: valid in every algebra of the stock
        for H in stock():
            assert validity(H, phi).valid
    else:
        M = r.countermodel
        assert M.frame.least == 0 and not M.forces(0, phi)
        # the countermodel's open algebra refutes phi as well
        assert not validity(open_algebra(M.frame), phi).valid


@given(formulas(n_atoms=2, max_leaves=6))
def test_classical_shadow(phi):
    # every intuitionistic theorem is a classical tautology
    if ipc_decide(phi).theorem:
        assert validity(chain_algebra(2), phi).valid
