"""Hypothesis strategies and seeded random generators shared by the tests."""
import random

import hypothesis.strategies as st

from inqdef.syntax import (
    BOT,
    TOP,
    Atom,
    Compound,
    Connective,
    DepAtom,
    LanguageSignature,
    NegAtom,
)
from inqdef.semantics import Model

LETTERS = ("p", "q", "r")

_BINARY = (Connective.AND, Connective.GLOBAL_OR, Connective.TENSOR, Connective.IMPLIES)
_UNARY = (Connective.NEG, Connective.QUESTION)


def _sig_binary(sig):
    return [c for c in _BINARY if sig.permits(c)]


def _sig_unary(sig):
    return [c for c in _UNARY if sig.permits(c) and sig.negation_policy == "full"]


def _leaves(sig: LanguageSignature):
    opts = [st.sampled_from([Atom(l) for l in LETTERS]), st.just(BOT)]
    if sig.permits(Connective.TOP):
        opts.append(st.just(TOP))
    if sig.negation_policy == "literal-only":
        opts.append(st.sampled_from([NegAtom(l) for l in LETTERS]))
    if sig.dep_atom_policy == "letters-only":
        opts.append(
            st.builds(
                lambda ants, c: DepAtom(tuple(Atom(a) for a in sorted(set(ants))), Atom(c)),
                st.lists(st.sampled_from(LETTERS), max_size=2),
                st.sampled_from(LETTERS),
            )
        )
    elif sig.dep_atom_policy == "classical-args":
        classical = formulas_lite()
        opts.append(
            st.builds(
                lambda ants, c: DepAtom(tuple(ants), c),
                st.lists(classical, max_size=2),
                classical,
            )
        )
    return st.one_of(opts)


def formulas_lite():
    """Small classical formulas (letters, negated letters, bot, /\\, (x))."""
    leaves = st.one_of(
        st.sampled_from([Atom(l) for l in LETTERS]),
        st.sampled_from([NegAtom(l) for l in LETTERS]),
        st.just(BOT),
    )
    return st.recursive(
        leaves,
        lambda inner: st.builds(
            lambda conn, a, b: Compound(conn, (a, b)),
            st.sampled_from((Connective.AND, Connective.TENSOR)),
            inner,
            inner,
        ),
        max_leaves=4,
    )


def formulas(sig: LanguageSignature):
    """Well-formed formulas of the signature."""
    binary = _sig_binary(sig)
    unary = _sig_unary(sig)

    def extend(inner):
        opts = [
            st.builds(lambda conn, a, b: Compound(conn, (a, b)), st.sampled_from(binary), inner, inner)
        ]
        if unary:
            opts.append(
                st.builds(lambda conn, a: Compound(conn, (a,)), st.sampled_from(unary), inner)
            )
        return st.one_of(opts)

    return st.recursive(_leaves(sig), extend, max_leaves=8)


def models(max_worlds: int = 3):
    """Models with 1..max_worlds worlds over the shared letters."""

    def build(codes):
        names = tuple(f"w{i + 1}" for i in range(len(codes)))
        val = {
            names[i]: {LETTERS[j] for j in range(len(LETTERS)) if codes[i] >> j & 1}
            for i in range(len(codes))
        }
        return Model.make(names, val, extra_letters=LETTERS)

    return st.lists(
        st.integers(min_value=0, max_value=(1 << len(LETTERS)) - 1),
        min_size=1,
        max_size=max_worlds,
    ).map(lambda codes: build(tuple(codes)))


def random_model(rng: random.Random, max_worlds: int = 3) -> Model:
    n = rng.randint(1, max_worlds)
    names = tuple(f"w{i + 1}" for i in range(n))
    val = {w: {l for l in LETTERS if rng.random() < 0.5} for w in names}
    return Model.make(names, val, extra_letters=LETTERS)


def random_formula(rng: random.Random, depth: int = 5):
    """Formula over the union language with the given maximum AST depth."""
    if depth <= 1 or rng.random() < 0.25:
        kind = rng.randrange(5)
        if kind == 0:
            return Atom(rng.choice(LETTERS))
        if kind == 1:
            return NegAtom(rng.choice(LETTERS))
        if kind == 2:
            return BOT
        if kind == 3:
            return TOP
        ants = tuple(Atom(rng.choice(LETTERS)) for _ in range(rng.randrange(3)))
        return DepAtom(ants, Atom(rng.choice(LETTERS)))
    conn = rng.choice(_BINARY + _UNARY)
    if conn.arity == 1:
        return Compound(conn, (random_formula(rng, depth - 1),))
    return Compound(conn, (random_formula(rng, depth - 1), random_formula(rng, depth - 1)))
