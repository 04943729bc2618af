"""Semantic fixpoint closure: the propositions template formulas can define.

The two argument formulas and every leaf a valid template may use become
generator propositions; the signature's connectives become operations on
propositions. The least set containing the generators and closed under the
operations is exactly the set of propositions [t(left, right)] for t a
valid template of the signature, and each member carries a smallest
witness term saying how to build it.
"""
from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from typing import Optional

from .parsing import render
from .semantics import (
    Model,
    ModelMismatch,
    Proposition,
    atom_proposition,
    check_dep_triviality,
    dep_atom_proposition,
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
)
from .syntax import (
    BOT,
    HOLE1,
    HOLE2,
    TOP,
    Atom,
    Compound,
    Connective,
    DepAtom,
    Formula,
    LanguageSignature,
    NegAtom,
    Template,
    atom,
    first_violation,
    free_letters,
    neg_atom,
    tensor,
)


class CapExceeded(Exception):
    """The closure grew past the defensive proposition cap."""


class LetterClash(Exception):
    """No letter of the model's universe is left to act as the fresh atom."""


class NonUniformFreshAtoms(Exception):
    """The declared fresh letters denote different propositions, so one
    representative cannot stand in for all of them."""


class DepAtomsNotTrivial(Exception):
    """Classical-argument dependence atoms over the fresh letters are not
    all equivalent to top, so they cannot be collapsed into a single
    generator."""


BINARY_OPS = ("and", "or", "tensor", "implies")
UNARY_OPS = ("neg", "question")

_BINARY_FUN = {
    "and": prop_and,
    "or": prop_or,
    "tensor": prop_tensor,
    "implies": prop_implies,
}
_UNARY_FUN = {"neg": prop_neg, "question": prop_question}
_OP_CONNECTIVE = {
    "and": Connective.AND,
    "or": Connective.GLOBAL_OR,
    "tensor": Connective.TENSOR,
    "implies": Connective.IMPLIES,
    "neg": Connective.NEG,
    "question": Connective.QUESTION,
}
_BINARY_CONN = {
    Connective.AND: "and",
    Connective.GLOBAL_OR: "or",
    Connective.TENSOR: "tensor",
    Connective.IMPLIES: "implies",
}
_UNARY_CONN = {Connective.NEG: "neg", Connective.QUESTION: "question"}


@dataclass(frozen=True)
class SemanticOpSet:
    """The proposition-level operations a signature induces."""

    unary: tuple[str, ...]
    binary: tuple[str, ...]
    constants: tuple[str, ...]


def ops_for(sig: LanguageSignature) -> SemanticOpSet:
    """Connectives become operations; literals and dependence atoms do
    not, because template holes may never sit under them."""
    binary = tuple(
        name for conn, name in _BINARY_CONN.items() if sig.permits(conn)
    )
    unary = tuple(
        name
        for conn, name in _UNARY_CONN.items()
        if sig.permits(conn) and sig.negation_policy == "full"
    )
    return SemanticOpSet(unary=unary, binary=binary, constants=("top", "bot"))


@dataclass(frozen=True)
class GeneratorEntry:
    """A labelled generator proposition together with the template leaf it
    stands for (a hole, a literal, a constant, or a dependence atom)."""

    label: str
    leaf: Formula
    proposition: Proposition


@dataclass(frozen=True)
class GeneratorSet:
    model: Model
    entries: tuple[GeneratorEntry, ...]

    def __post_init__(self):
        labels = [e.label for e in self.entries]
        if len(set(labels)) != len(labels):
            raise ValueError("generator labels must be unique")
        for e in self.entries:
            if e.proposition.world_count != self.model.world_count:
                raise ModelMismatch(f"generator {e.label!r} has the wrong dimension")


def fresh_representative(m: Model, left: Formula, right: Formula) -> str:
    """The first universe letter not used by the arguments; stands in for
    every letter the arguments avoid."""
    used = free_letters(left) | free_letters(right)
    if not used <= m.letter_universe:
        raise ValueError("argument formulas use letters outside the model's universe")
    fresh = sorted(m.letter_universe - used)
    if not fresh:
        raise LetterClash(
            "the argument formulas use every letter of the model's universe; "
            "no fresh letter remains"
        )
    return fresh[0]


def generators_for(
    m: Model,
    sig: LanguageSignature,
    left: Formula,
    right: Formula,
    dep_depth: int = 2,
) -> GeneratorSet:
    """Generators for the closure: the two argument propositions plus one
    entry per admissible leaf over letters the arguments avoid.

    All fresh letters must denote the same proposition, so a single
    representative letter covers them; declared or not, a letter false
    everywhere is already covered by the bot generator. For
    classical-argument dependence atoms the trivially-top certificate is
    required, after which the top generator covers them all.
    """
    for label, f in (("left", left), ("right", right)):
        if first_violation(f, sig) is not None:
            raise ValueError(f"{label} formula is not well-formed for {sig.name}")
    used = free_letters(left) | free_letters(right)
    rep = fresh_representative(m, left, right)
    fresh = sorted(m.letter_universe - used)
    rep_prop = proposition(m, Atom(rep))
    for other in fresh[1:]:
        if proposition(m, Atom(other)) != rep_prop:
            raise NonUniformFreshAtoms(
                f"fresh letters {rep!r} and {other!r} denote different propositions"
            )
    literal = sig.negation_policy == "literal-only"
    top_leaf: Formula = tensor(atom(rep), neg_atom(rep)) if literal else TOP
    entries = [
        GeneratorEntry("#1", HOLE1, proposition(m, left)),
        GeneratorEntry("#2", HOLE2, proposition(m, right)),
        GeneratorEntry("bot", BOT, prop_bot(m)),
        GeneratorEntry("top", top_leaf, prop_top(m)),
        GeneratorEntry(rep, Atom(rep), rep_prop),
    ]
    if literal:
        entries.append(
            GeneratorEntry("~" + rep, NegAtom(rep), neg_literal_proposition(m, rep))
        )
    if sig.dep_atom_policy == "letters-only":
        for size in range(len(fresh) + 1):
            for ants in combinations(fresh, size):
                for c in fresh:
                    d = DepAtom(tuple(Atom(a) for a in ants), Atom(c))
                    entries.append(
                        GeneratorEntry(render(d), d, dep_atom_proposition(m, d))
                    )
    elif sig.dep_atom_policy == "classical-args":
        if not check_dep_triviality(m, used, dep_depth):
            raise DepAtomsNotTrivial(
                "dependence atoms over the fresh letters are not all equivalent "
                "to top in this model"
            )
    return GeneratorSet(m, tuple(entries))


Term = tuple


def term_size(t: Term) -> int:
    if t[0] == "gen":
        return 1
    return 1 + sum(term_size(c) for c in t[1:])


def term_formula(t: Term, leaf_of: dict[str, Formula]) -> Formula:
    if t[0] == "gen":
        return leaf_of[t[1]]
    conn = _OP_CONNECTIVE[t[0]]
    return Compound(conn, tuple(term_formula(c, leaf_of) for c in t[1:]))


@dataclass
class ClosureResult:
    """The closed proposition set in discovery order, with one smallest
    witness term per member."""

    model: Model
    generators: tuple[GeneratorEntry, ...]
    members: tuple[Proposition, ...]
    witnesses: dict[Proposition, Term]
    rounds: int
    op_applications: int

    @property
    def propositions(self) -> frozenset[Proposition]:
        return frozenset(self.members)

    def contains(self, p: Proposition) -> Optional[Term]:
        if p.world_count != self.model.world_count:
            raise ModelMismatch("proposition does not match the closure's model")
        return self.witnesses.get(p)

    def witness_template(self, p: Proposition) -> Template:
        term = self.contains(p)
        if term is None:
            raise KeyError("proposition is not in the closure")
        leaf_of = {e.label: e.leaf for e in self.generators}
        return Template(term_formula(term, leaf_of))


def semantic_closure(
    m: Model,
    gens: GeneratorSet,
    ops: SemanticOpSet,
    cap: int = 100_000,
) -> ClosureResult:
    """Least set of propositions containing the generators and the
    signature's constants and closed under its operations.

    Witnesses are assigned breadth-first by term size; ties go to the
    earlier generator, then the earlier operation (and, or, tensor,
    implies, neg, question), then the earlier operands.
    """
    if gens.model.world_count != m.world_count:
        raise ModelMismatch("generator set does not match the model")
    if cap < len(gens.entries):
        raise ValueError("cap must be at least the number of generators")
    entries = list(gens.entries)
    have = {e.label for e in entries}
    for cname in ops.constants:
        if cname not in have:
            p = prop_top(m) if cname == "top" else prop_bot(m)
            entries.append(GeneratorEntry(cname, TOP if cname == "top" else BOT, p))

    binary = [(name, _BINARY_FUN[name]) for name in BINARY_OPS if name in ops.binary]
    unary = [(name, _UNARY_FUN[name]) for name in UNARY_OPS if name in ops.unary]
    op_applications = 0

    # set fixpoint
    universe: dict[Proposition, None] = {}
    for e in entries:
        universe.setdefault(e.proposition, None)
    frontier = list(universe)
    while frontier:
        new: dict[Proposition, None] = {}
        known = list(universe)
        for _, fun in binary:
            for p in frontier:
                for q in known:
                    for r in (fun(p, q), fun(q, p)):
                        op_applications += 1
                        if r not in universe and r not in new:
                            new[r] = None
        for _, fun in unary:
            for p in frontier:
                r = fun(p)
                op_applications += 1
                if r not in universe and r not in new:
                    new[r] = None
        for r in new:
            universe[r] = None
        if len(universe) > cap:
            raise CapExceeded(f"closure exceeded {cap} propositions")
        frontier = list(new)

    # smallest witnesses, breadth-first by term size
    witness: dict[Proposition, Term] = {}
    size_of: dict[Proposition, int] = {}
    order: list[Proposition] = []
    by_size: dict[int, list[Proposition]] = {1: []}
    for e in entries:
        if e.proposition not in witness:
            witness[e.proposition] = ("gen", e.label)
            size_of[e.proposition] = 1
            order.append(e.proposition)
            by_size[1].append(e.proposition)
    rounds = 0
    s = 1
    while len(witness) < len(universe):
        s += 1
        rounds += 1
        bucket: list[Proposition] = []
        for name, fun in binary:
            for sa in range(1, s - 1):
                sb = s - 1 - sa
                for p in by_size.get(sa, ()):
                    for q in by_size.get(sb, ()):
                        r = fun(p, q)
                        op_applications += 1
                        if r not in witness:
                            witness[r] = (name, witness[p], witness[q])
                            size_of[r] = s
                            order.append(r)
                            bucket.append(r)
        for name, fun in unary:
            for p in by_size.get(s - 1, ()):
                r = fun(p)
                op_applications += 1
                if r not in witness:
                    witness[r] = (name, witness[p])
                    size_of[r] = s
                    order.append(r)
                    bucket.append(r)
        by_size[s] = bucket
        if s > 4 * len(universe) + 4:  # pragma: no cover
            raise AssertionError("witness search failed to converge")

    return ClosureResult(
        model=m,
        generators=tuple(entries),
        members=tuple(order),
        witnesses=witness,
        rounds=rounds,
        op_applications=op_applications,
    )
