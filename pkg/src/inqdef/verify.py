"""Theorem-level harnesses plus the brute-force template enumerator used
as an oracle against the closure engine.

``verify_implication_undefinability`` reproduces, over the three-world
model where each test question has its own witness world, that no
implication-free template defines inquisitive implication.
``verify_globalor_undefinability`` reproduces, over the three-world model
where the two constancy atoms overlap at the middle world, that no
dependence-logic context defines global disjunction; the closure there
has exactly six members. ``cross_check`` substitutes the arguments into
every template up to a size bound, evaluates the result state by state,
and confirms each proposition lies in the closure.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Iterator, Optional

from .closure import (
    ClosureResult,
    GeneratorSet,
    Term,
    fresh_representative,
    generators_for,
    ops_for,
    semantic_closure,
    term_formula,
    _OP_CONNECTIVE,
)
from .parsing import model_to_dict, render, render_template
from .semantics import (
    Model,
    Proposition,
    canonical_dep_model,
    canonical_impl_model,
    check_dep_triviality,
    format_proposition,
    mask_implies,
    mask_neg,
    mask_question,
    mask_tensor,
    prop_and,
    prop_implies,
    prop_or,
    proposition,
    support_mask,
)
from .syntax import (
    BOT,
    HOLE1,
    HOLE2,
    TOP,
    Atom,
    Compound,
    Connective,
    D,
    D_PLUS,
    DepAtom,
    Formula,
    INQ_MINUS,
    LanguageSignature,
    NegAtom,
    Template,
    atom,
    conj,
    constancy,
    implies,
    neg_atom,
    question,
    tensor,
)

__all__ = [
    "UndefinabilityReport",
    "EnumerationReport",
    "verify_implication_undefinability",
    "verify_globalor_undefinability",
    "check_singleton_property",
    "check_dep_triviality",
    "enumerate_templates",
    "cross_check",
]


@dataclass
class UndefinabilityReport:
    """Outcome of one definability search: the closure over the canonical
    model, whether the target proposition appears in it, and presence
    flags for the auxiliary propositions the characterisation names."""

    theorem: str
    model: Model
    signature: LanguageSignature
    target_label: str
    target_proposition: Proposition
    closure_size: int
    defined: bool
    witness: Optional[Term]
    forbidden_hits: tuple[tuple[str, bool], ...]
    closure: ClosureResult

    def witness_text(self) -> Optional[str]:
        if self.witness is None:
            return None
        return render_template(self.closure.witness_template(self.target_proposition))

    def as_dict(self) -> dict:
        out = {
            "theorem": self.theorem,
            "model": model_to_dict(self.model),
            "signature": self.signature.name,
            "defined": self.defined,
            "closure_size": self.closure_size,
            "forbidden_hits": [
                {"label": label, "present": present}
                for label, present in self.forbidden_hits
            ],
        }
        text = self.witness_text()
        if text is not None:
            out["witness"] = text
        return out


def verify_implication_undefinability(
    sig: LanguageSignature = INQ_MINUS,
) -> UndefinabilityReport:
    """Search the given signature (implication-free by default) for a
    template defining implication on the canonical three-world model,
    with ?p and ?q as the designated arguments."""
    m = canonical_impl_model()
    left = question(atom("p"))
    right = question(atom("q"))
    gens = generators_for(m, sig, left, right)
    closure = semantic_closure(m, gens, ops_for(sig))
    p_left = proposition(m, left)
    p_right = proposition(m, right)
    a = prop_implies(p_left, p_right)
    b = prop_implies(p_right, p_left)
    c = prop_and(a, b)
    witness = closure.contains(a)
    hits = tuple(
        (label, closure.contains(p) is not None)
        for label, p in (("A", a), ("B", b), ("C", c))
    )
    return UndefinabilityReport(
        theorem="implication",
        model=m,
        signature=sig,
        target_label=render(implies(left, right)),
        target_proposition=a,
        closure_size=len(closure.members),
        defined=witness is not None,
        witness=witness,
        forbidden_hits=hits,
        closure=closure,
    )


def verify_globalor_undefinability(
    sig: LanguageSignature = D,
) -> UndefinabilityReport:
    """Search D or D+ for a context defining global disjunction on the
    canonical three-world model, with =(p) and =(q) as the designated
    arguments; the closure is characterised by six formulas."""
    if sig not in (D, D_PLUS):
        raise ValueError("global disjunction verification runs over D or D+ only")
    m = canonical_dep_model()
    left = constancy(atom("p"))
    right = constancy(atom("q"))
    gens = generators_for(m, sig, left, right)
    closure = semantic_closure(m, gens, ops_for(sig))
    p_left = proposition(m, left)
    p_right = proposition(m, right)
    target = prop_or(p_left, p_right)
    both = conj(left, right)
    characterisation = (
        TOP,
        tensor(both, both),
        left,
        right,
        both,
        BOT,
    )
    hits = tuple(
        (render(f), closure.contains(proposition(m, f)) is not None)
        for f in characterisation
    )
    witness = closure.contains(target)
    return UndefinabilityReport(
        theorem="globalor-d" if sig is D else "globalor-dplus",
        model=m,
        signature=sig,
        target_label=render(left) + " \\/ " + render(right),
        target_proposition=target,
        closure_size=len(closure.members),
        defined=witness is not None,
        witness=witness,
        forbidden_hits=hits,
        closure=closure,
    )


def check_singleton_property(c: ClosureResult, m: Model) -> bool:
    """Every closure member is either the bottom proposition or contains
    all three singleton states."""
    if m.world_count != 3:
        raise ValueError("the singleton property concerns three-world models")
    for p in c.members:
        if p.bits == 1:
            continue
        if not all(p.bits >> (1 << i) & 1 for i in range(3)):
            return False
    return True


@dataclass
class EnumerationReport:
    templates_checked: int
    max_size: int
    all_in_closure: bool
    first_counterexample: Optional[Template]

    def as_dict(self) -> dict:
        return {
            "templates_checked": self.templates_checked,
            "max_size": self.max_size,
            "all_in_closure": self.all_in_closure,
            "first_counterexample": (
                None
                if self.first_counterexample is None
                else render_template(self.first_counterexample)
            ),
        }


def _leaf_bodies(sig: LanguageSignature, fresh_letters: tuple[str, ...]) -> list[Formula]:
    """Template leaves in canonical order. Each counts as one node of
    template size, dependence atoms and the dependence-language rendering
    of top included."""
    literal = sig.negation_policy == "literal-only"
    leaves: list[Formula] = [HOLE1, HOLE2]
    for r in fresh_letters:
        leaves.append(Atom(r))
    if literal:
        for r in fresh_letters:
            leaves.append(NegAtom(r))
    leaves.append(BOT)
    leaves.append(tensor(atom(fresh_letters[0]), neg_atom(fresh_letters[0])) if literal else TOP)
    if sig.dep_atom_policy != "none":
        from itertools import combinations

        for size in range(len(fresh_letters) + 1):
            for ants in combinations(fresh_letters, size):
                for c in fresh_letters:
                    leaves.append(DepAtom(tuple(Atom(a) for a in ants), Atom(c)))
    return leaves


def _template_levels(
    sig: LanguageSignature, max_size: int, fresh_letters: tuple[str, ...]
) -> list[list[Formula]]:
    """Bodies by template size; compositions of distinct children are
    distinct, so no deduplication pass is needed."""
    ops = ops_for(sig)
    binary = [_OP_CONNECTIVE[name] for name in ops.binary]
    unary = [_OP_CONNECTIVE[name] for name in ops.unary]
    levels: list[list[Formula]] = [[] for _ in range(max_size + 1)]
    levels[1] = _leaf_bodies(sig, fresh_letters)
    for s in range(2, max_size + 1):
        bucket = levels[s]
        for conn in binary:
            for sa in range(1, s - 1):
                sb = s - 1 - sa
                for l in levels[sa]:
                    for r in levels[sb]:
                        bucket.append(Compound(conn, (l, r)))
        for conn in unary:
            for c in levels[s - 1]:
                bucket.append(Compound(conn, (c,)))
    return levels


def enumerate_templates(
    sig: LanguageSignature,
    max_size: int,
    fresh_letters: tuple[str, ...] = ("r",),
) -> Iterator[Template]:
    """Every valid context/template up to the size bound, smallest first,
    in a fixed canonical order. Leaves never place a hole under a
    negation or inside a dependence atom, so validity holds by
    construction; each leaf counts as one node."""
    if max_size < 1:
        raise ValueError("max_size must be at least 1")
    if not 1 <= len(fresh_letters) <= 2:
        raise ValueError("one or two fresh letters are supported")
    for level in _template_levels(sig, max_size, fresh_letters)[1:]:
        for body in level:
            yield Template(body)


def cross_check(
    m: Model,
    sig: LanguageSignature,
    left: Formula,
    right: Formula,
    max_size: int,
) -> EnumerationReport:
    """Evaluate every template's substitution instance state by state and
    confirm its proposition lies in the semantic closure."""
    gens = generators_for(m, sig, left, right)
    closure = semantic_closure(m, gens, ops_for(sig))
    member_bits = {p.bits for p in closure.members}
    rep = fresh_representative(m, left, right)
    n = m.world_count

    levels = _template_levels(sig, max_size, (rep,))
    mask_of: dict[int, int] = {}
    checked = 0
    first_bad: Optional[Template] = None
    for leaf in levels[1]:
        if leaf is HOLE1:
            bits = support_mask(m, left)
        elif leaf is HOLE2:
            bits = support_mask(m, right)
        else:
            bits = support_mask(m, leaf)
        mask_of[id(leaf)] = bits
        checked += 1
        if bits not in member_bits and first_bad is None:
            first_bad = Template(leaf)
    # compound bodies share their child objects with lower levels, so one
    # mask per node id combines children in O(1)
    for level in levels[2:]:
        for body in level:
            kids = [mask_of[id(c)] for c in body.children]
            conn = body.conn
            if conn is Connective.AND:
                bits = kids[0] & kids[1]
            elif conn is Connective.GLOBAL_OR:
                bits = kids[0] | kids[1]
            elif conn is Connective.TENSOR:
                bits = mask_tensor(kids[0], kids[1], n)
            elif conn is Connective.IMPLIES:
                bits = mask_implies(kids[0], kids[1], n)
            elif conn is Connective.NEG:
                bits = mask_neg(kids[0], n)
            else:
                bits = mask_question(kids[0], n)
            mask_of[id(body)] = bits
            checked += 1
            if bits not in member_bits and first_bad is None:
                first_bad = Template(body)

    return EnumerationReport(
        templates_checked=checked,
        max_size=max_size,
        all_in_closure=first_bad is None,
        first_counterexample=first_bad,
    )
