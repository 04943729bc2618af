import pytest
from hypothesis import given, settings

from inqdef.parsing import parse_formula
from inqdef.semantics import (
    Model,
    ModelMismatch,
    Proposition,
    atom_proposition,
    canonical_dep_model,
    canonical_impl_model,
    check_dep_triviality,
    classical_truth,
    dep_atom_proposition,
    downward_close,
    equivalent_in,
    equivalent_upto,
    format_proposition,
    neg_literal_proposition,
    prop_and,
    prop_bot,
    prop_implies,
    prop_neg,
    prop_or,
    prop_question,
    prop_tensor,
    prop_top,
    proposition,
    support_mask,
    supports,
)
from inqdef.syntax import (
    ALL,
    BOT,
    TOP,
    DepAtom,
    atom,
    conj,
    constancy,
    dep,
    gor,
    implies,
    neg,
    neg_atom,
    question,
    tensor,
)

from oracle import o_proposition, o_supports, to_state_set
from strategies import formulas, formulas_lite, models

P, Q, R = atom("p"), atom("q"), atom("r")
M_IMPL = canonical_impl_model()
M_DEP = canonical_dep_model()


def val_of(m):
    return {w: set(m.valuation[i]) for i, w in enumerate(m.world_names)}


def states_of(m, *name_groups):
    return {m.state_of(g) for g in name_groups}


def down(m, *name_groups):
    return downward_close(m.world_count, states_of(m, *name_groups))


def test_canonical_models():
    assert M_IMPL.valuation == (frozenset({"p"}), frozenset({"q"}), frozenset())
    assert M_DEP.valuation == (
        frozenset({"p"}),
        frozenset({"p", "q"}),
        frozenset({"q"}),
    )
    assert M_IMPL.letter_universe == M_DEP.letter_universe == {"p", "q", "r"}
    assert proposition(M_DEP, R) == prop_bot(M_DEP)
    assert proposition(M_DEP, P) == down(M_DEP, ("w1", "w2"))
    assert proposition(M_DEP, Q) == down(M_DEP, ("w2", "w3"))


def test_model_validation():
    with pytest.raises(ValueError):
        Model.make([f"w{i}" for i in range(17)], {})
    with pytest.raises(ValueError):
        Model(("w1", "w1"), (frozenset(), frozenset()), frozenset())
    with pytest.raises(ValueError):
        Model(("w1",), (frozenset({"p"}),), frozenset())


def test_supports_examples():
    f = question(P)
    s = M_IMPL.state_of(["w2", "w3"])
    assert supports(M_IMPL, s, f)
    assert o_supports(val_of(M_IMPL), frozenset({"w2", "w3"}), f)

    for g in (BOT, f, dep([P], Q), implies(question(P), question(Q))):
        assert supports(M_IMPL, 0, g)

    d = dep([P], Q)
    assert not supports(M_DEP, M_DEP.full_state, d)
    assert not o_supports(val_of(M_DEP), frozenset({"w1", "w2", "w3"}), d)


def test_proposition_paper_values():
    a = proposition(M_IMPL, implies(question(P), question(Q)))
    assert a == down(M_IMPL, ("w1", "w2"), ("w1", "w3"))
    either = proposition(M_IMPL, gor(question(P), question(Q)))
    assert either == down(M_IMPL, ("w1", "w3"), ("w2", "w3"))
    ordep = proposition(M_DEP, gor(constancy(P), constancy(Q)))
    assert ordep == down(M_DEP, ("w1", "w2"), ("w2", "w3"))


def test_classical_truth_examples():
    assert classical_truth(M_DEP, 1, P)
    assert classical_truth(M_DEP, 0, TOP)
    assert not classical_truth(M_DEP, 2, tensor(P, neg_atom("q")))
    with pytest.raises(ValueError):
        classical_truth(M_DEP, 0, question(P))


def test_classical_truth_is_singleton_support():
    for m in (M_IMPL, M_DEP):
        for f in (P, neg_atom("q"), BOT, conj(P, Q), tensor(P, neg_atom("r"))):
            for w in range(m.world_count):
                assert classical_truth(m, w, f) == supports(m, 1 << w, f)


def test_prop_op_examples():
    assert prop_tensor(prop_top(M_IMPL), prop_bot(M_IMPL)) == prop_top(M_IMPL)
    a = prop_implies(proposition(M_IMPL, question(P)), proposition(M_IMPL, question(Q)))
    b = prop_implies(proposition(M_IMPL, question(Q)), proposition(M_IMPL, question(P)))
    assert prop_and(a, b) == down(M_IMPL, ("w1", "w2"), ("w3",))
    assert prop_tensor(
        proposition(M_DEP, constancy(P)), proposition(M_DEP, constancy(Q))
    ) == prop_top(M_DEP)


def test_prop_op_mismatch():
    one = Model.make(("w1",), {"w1": {"p"}})
    with pytest.raises(ModelMismatch):
        prop_and(prop_top(M_IMPL), prop_top(one))


def test_proposition_invariant_enforced():
    with pytest.raises(ValueError):
        Proposition(2, 0b1000 | 1)  # {w1,w2} without its subsets
    with pytest.raises(ValueError):
        Proposition(1, 0b10)  # missing the empty state


def test_dep_atom_examples():
    d = dep_atom_proposition(M_DEP, dep([P], Q))
    assert M_DEP.state_of(["w1", "w3"]) in d
    assert M_DEP.full_state not in d
    assert to_state_set(M_DEP, d) == o_proposition(val_of(M_DEP), dep([P], Q))

    for beta in (P, Q, tensor(P, neg_atom("q"))):
        assert dep_atom_proposition(M_DEP, DepAtom((), beta)) == proposition(
            M_DEP, question(beta)
        )

    assert dep_atom_proposition(M_DEP, dep([atom("r")], atom("r2"))) == prop_top(M_DEP)


def test_downward_close_examples():
    assert downward_close(3, ()) == prop_bot(M_IMPL)
    a = downward_close(3, states_of(M_IMPL, ("w1", "w2"), ("w1", "w3")))
    assert a.state_count() == 6
    assert downward_close(3, (7,)) == prop_top(M_IMPL)


def test_equivalent_examples():
    assert equivalent_in(M_DEP, constancy(Q), question(Q))
    for m in (M_IMPL, M_DEP):
        assert equivalent_in(m, neg(P), implies(P, BOT))
    assert not equivalent_in(
        M_IMPL, implies(question(P), question(Q)), gor(question(P), question(Q))
    )
    assert equivalent_upto(conj(P, P), P, 3)
    assert not equivalent_upto(
        implies(question(P), question(Q)), gor(question(P), question(Q)), 3
    )
    assert equivalent_upto(tensor(P, neg_atom("p")), TOP, 3)
    assert equivalent_upto(tensor(P, neg(P)), TOP, 3)


def test_format_proposition():
    a = proposition(M_IMPL, implies(question(P), question(Q)))
    assert format_proposition(M_IMPL, a) == "{w1,w2},{w1,w3} ↓"
    assert format_proposition(M_IMPL, prop_bot(M_IMPL)) == "{} ↓"
    assert format_proposition(M_IMPL, prop_top(M_IMPL)) == "{w1,w2,w3} ↓"


def test_zero_world_model():
    m = Model.make((), {})
    assert prop_bot(m) == prop_top(m)
    assert supports(m, 0, BOT)
    assert proposition(m, conj(P, neg(P))) == prop_top(m)


@given(models(), formulas(ALL))
@settings(max_examples=120)
def test_pointwise_equals_compositional(m, f):
    comp = proposition(m, f)
    assert comp.bits == support_mask(m, f)
    mask = 0
    for s in range(1 << m.world_count):
        if supports(m, s, f):
            mask |= 1 << s
    assert comp.bits == mask


@given(models(), formulas(ALL))
@settings(max_examples=80)
def test_oracle_agreement(m, f):
    assert to_state_set(m, proposition(m, f)) == o_proposition(val_of(m), f)


@given(models(), formulas(ALL))
@settings(max_examples=120)
def test_downward_closure_and_empty_state(m, f):
    p = proposition(m, f)
    assert 0 in p
    for s in p.states():
        t = s
        while t:
            w = t & -t
            assert (s ^ w) in p
            t ^= w


@given(models(), formulas(ALL), formulas(ALL))
@settings(max_examples=80)
def test_connective_identities(m, f, g):
    pf, pg = proposition(m, f), proposition(m, g)
    assert proposition(m, conj(f, g)) == prop_and(pf, pg)
    assert proposition(m, gor(f, g)) == prop_or(pf, pg)
    assert proposition(m, tensor(f, g)) == prop_tensor(pf, pg)
    assert proposition(m, implies(f, g)) == prop_implies(pf, pg)
    assert proposition(m, neg(f)) == prop_neg(pf)
    assert proposition(m, question(f)) == prop_question(pf)
    assert equivalent_in(m, neg(f), implies(f, BOT))
    assert equivalent_in(m, question(f), gor(f, neg(f)))


@given(models(), formulas(ALL))
@settings(max_examples=80)
def test_neg_collapses_above_singletons(m, f):
    p = proposition(m, f)
    if all(1 << w in p for w in range(m.world_count)):
        assert prop_neg(p) == prop_bot(m)


@given(models(), formulas(ALL), formulas(ALL), formulas(ALL))
@settings(max_examples=60)
def test_tensor_monotone_implies_antitone(m, f, g, h):
    pf, pg, ph = proposition(m, f), proposition(m, g), proposition(m, h)
    wider = prop_or(pf, ph)
    assert prop_tensor(pf, pg).bits & ~prop_tensor(wider, pg).bits == 0
    assert prop_tensor(pg, pf).bits & ~prop_tensor(pg, wider).bits == 0
    assert prop_implies(wider, pg).bits & ~prop_implies(pf, pg).bits == 0
    assert prop_implies(pg, pf).bits & ~prop_implies(pg, wider).bits == 0


@given(models(), formulas_lite())
@settings(max_examples=80)
def test_constancy_question_law(m, beta):
    assert dep_atom_proposition(m, DepAtom((), beta)) == prop_question(
        proposition(m, beta)
    )


def test_check_dep_triviality_examples():
    assert check_dep_triviality(M_DEP, {"p", "q"}, 2)
    assert not check_dep_triviality(M_DEP, {"p"}, 2)
    assert check_dep_triviality(M_IMPL, {"p", "q"}, 2)
