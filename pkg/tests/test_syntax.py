import hypothesis.strategies as st
import pytest
from hypothesis import given

from inqdef.syntax import (
    BOT,
    D,
    D_PLUS,
    HOLE1,
    HOLE2,
    INQ,
    INQ_MINUS,
    INQ_PLUS,
    INQ_TENSOR,
    TOP,
    Atom,
    Compound,
    Connective,
    DepAtom,
    Hole,
    SubstitutionIllFormed,
    Template,
    atom,
    conj,
    constancy,
    dep,
    free_letters,
    first_violation,
    gor,
    implies,
    is_classical,
    is_valid_context,
    neg,
    neg_atom,
    node_count,
    normalize_questions,
    question,
    rename_letters,
    substitute,
    tensor,
    walk,
    well_formed,
)

from strategies import formulas

P, Q, R = atom("p"), atom("q"), atom("r")


def test_arity_enforced():
    with pytest.raises(ValueError):
        Compound(Connective.AND, (P,))
    with pytest.raises(ValueError):
        Compound(Connective.NEG, (P, Q))
    with pytest.raises(ValueError):
        Hole(3)


def test_well_formed_examples():
    assert not well_formed(neg(conj(P, Q)), D)
    assert well_formed(BOT, INQ)
    assert not well_formed(dep([tensor(P, Q)], R), D)
    assert well_formed(dep([tensor(P, Q)], R), D_PLUS)


def test_well_formed_negation_styles():
    assert well_formed(neg_atom("p"), D)
    assert well_formed(neg_atom("p"), D_PLUS)
    assert not well_formed(neg_atom("p"), INQ_PLUS)
    assert well_formed(neg(P), INQ_PLUS)
    assert well_formed(neg(P), INQ_MINUS)
    assert not well_formed(neg(P), INQ)
    assert not well_formed(neg(P), D)


def test_well_formed_connective_membership():
    assert not well_formed(tensor(P, Q), INQ)
    assert well_formed(tensor(P, Q), INQ_TENSOR)
    assert not well_formed(implies(P, Q), INQ_MINUS)
    assert not well_formed(implies(P, Q), D)
    assert not well_formed(question(P), INQ_TENSOR)
    assert well_formed(question(P), INQ_MINUS)
    assert not well_formed(gor(P, Q), D)
    assert well_formed(TOP, INQ)  # top is a primitive in every signature


def test_dep_atom_policies():
    assert not well_formed(constancy(P), INQ_PLUS)
    assert well_formed(constancy(P), D)
    assert well_formed(dep([P, Q], R), D)
    assert not well_formed(dep([neg_atom("p")], R), D)
    assert well_formed(dep([neg_atom("p")], R), D_PLUS)
    assert not well_formed(dep([constancy(P)], R), D_PLUS)  # no nesting
    assert not well_formed(dep([], TOP), D_PLUS)  # top is not classical


def test_first_violation_path():
    f = conj(P, neg(conj(P, Q)))
    assert first_violation(f, D) == (1,)
    assert first_violation(P, D) is None


def test_is_classical():
    assert is_classical(tensor(P, neg_atom("q")))
    assert not is_classical(constancy(P))
    assert not is_classical(implies(P, Q))
    assert not is_classical(TOP)
    assert is_classical(BOT)


def test_free_letters():
    assert free_letters(dep([P, Q], R)) == {"p", "q", "r"}
    assert free_letters(BOT) == frozenset()
    assert free_letters(gor(question(P), neg(Q))) == {"p", "q"}


def test_valid_context_examples():
    assert not is_valid_context(Template(dep([HOLE1], Q)), D)
    assert is_valid_context(Template(conj(HOLE1, HOLE2)), D)
    assert is_valid_context(Template(neg(HOLE1)), INQ_MINUS)
    assert not is_valid_context(Template(neg(HOLE1)), D)
    assert is_valid_context(Template(tensor(HOLE1, dep([R], R))), D)


def test_substitute_examples():
    t = Template(implies(HOLE1, HOLE2))
    assert substitute(t, question(P), question(Q), INQ_PLUS) == implies(
        question(P), question(Q)
    )
    assert substitute(Template(HOLE1), BOT, TOP, INQ) == BOT
    t2 = Template(tensor(HOLE1, HOLE1))
    assert substitute(t2, constancy(P), constancy(Q), D) == tensor(
        constancy(P), constancy(P)
    )


def test_substitute_ill_formed():
    t = Template(neg(HOLE1))
    with pytest.raises(SubstitutionIllFormed):
        substitute(t, constancy(P), constancy(Q), D)


def test_substitute_node_count():
    t = Template(conj(tensor(HOLE1, HOLE1), HOLE2))
    left, right = conj(P, Q), tensor(R, R)
    result = substitute(t, left, right, INQ_TENSOR)
    expected = node_count(t.body) + 2 * (node_count(left) - 1) + 1 * (node_count(right) - 1)
    assert node_count(result) == expected


@given(formulas(INQ))
def test_signature_monotonicity(f):
    assert well_formed(f, INQ)
    assert well_formed(f, INQ_TENSOR)
    assert well_formed(f, INQ_PLUS)


@given(formulas(INQ_TENSOR))
def test_signature_monotonicity_tensor(f):
    assert well_formed(f, INQ_PLUS)


@given(formulas(D))
def test_context_renaming_invariance(f):
    t = Template(conj(f, conj(HOLE1, HOLE2)))
    renamed = Template(rename_letters(t.body, {"p": "q", "q": "r", "r": "p"}))
    assert is_valid_context(t, D) == is_valid_context(renamed, D)


def test_normalize_questions():
    f = question(conj(P, question(Q)))
    g = normalize_questions(f)
    assert g == gor(conj(P, gor(Q, neg(Q))), neg(conj(P, gor(Q, neg(Q)))))
    assert all(
        not (isinstance(n, Compound) and n.conn is Connective.QUESTION)
        for n in walk(g)
    )


def test_template_holes():
    t = Template(conj(HOLE1, tensor(HOLE2, HOLE1)))
    assert t.holes() == {1, 2}
    assert Template(P).holes() == frozenset()
