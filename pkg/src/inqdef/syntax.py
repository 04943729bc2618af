"""Formula ASTs, language signatures, and hole templates.

One AST serves six languages: four inquisitive languages (negation and
question applicable to arbitrary formulas) and two dependence languages
(negation restricted to propositional letters, dependence atoms with
letter or classical-formula arguments, no implication or global
disjunction).
"""
from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from typing import Iterator, Mapping, Optional


class Connective(Enum):
    BOT = "bot"
    TOP = "top"
    NEG = "~"
    QUESTION = "?"
    AND = "/\\"
    GLOBAL_OR = "\\/"
    TENSOR = "(x)"
    IMPLIES = "->"

    @property
    def arity(self) -> int:
        return _ARITY[self]


_ARITY = {
    Connective.BOT: 0,
    Connective.TOP: 0,
    Connective.NEG: 1,
    Connective.QUESTION: 1,
    Connective.AND: 2,
    Connective.GLOBAL_OR: 2,
    Connective.TENSOR: 2,
    Connective.IMPLIES: 2,
}


class Formula:
    """Base class for AST nodes; all nodes are immutable values."""

    __slots__ = ()


@dataclass(frozen=True)
class Atom(Formula):
    letter: str


@dataclass(frozen=True)
class NegAtom(Formula):
    """A negated letter, the only negation the dependence languages admit."""

    letter: str


@dataclass(frozen=True)
class DepAtom(Formula):
    """Dependence atom =(antecedents; consequent).

    An empty antecedent tuple is the constancy atom =(consequent). The
    arguments must stay classical (letters, negated letters, bot,
    conjunction, tensor); this is enforced by signature checking rather
    than at construction.
    """

    antecedents: tuple[Formula, ...]
    consequent: Formula


@dataclass(frozen=True)
class Compound(Formula):
    conn: Connective
    children: tuple[Formula, ...]

    def __post_init__(self):
        if len(self.children) != self.conn.arity:
            raise ValueError(
                f"{self.conn.name} takes {self.conn.arity} arguments, got {len(self.children)}"
            )


@dataclass(frozen=True)
class Hole(Formula):
    """Template gap #1 or #2; only meaningful inside a Template."""

    index: int

    def __post_init__(self):
        if self.index not in (1, 2):
            raise ValueError("hole index must be 1 or 2")


BOT = Compound(Connective.BOT, ())
TOP = Compound(Connective.TOP, ())
HOLE1 = Hole(1)
HOLE2 = Hole(2)


def atom(letter: str) -> Atom:
    return Atom(letter)


def neg_atom(letter: str) -> NegAtom:
    return NegAtom(letter)


def neg(f: Formula) -> Compound:
    return Compound(Connective.NEG, (f,))


def question(f: Formula) -> Compound:
    return Compound(Connective.QUESTION, (f,))


def conj(a: Formula, b: Formula) -> Compound:
    return Compound(Connective.AND, (a, b))


def gor(a: Formula, b: Formula) -> Compound:
    return Compound(Connective.GLOBAL_OR, (a, b))


def tensor(a: Formula, b: Formula) -> Compound:
    return Compound(Connective.TENSOR, (a, b))


def implies(a: Formula, b: Formula) -> Compound:
    return Compound(Connective.IMPLIES, (a, b))


def dep(antecedents, consequent: Formula) -> DepAtom:
    return DepAtom(tuple(antecedents), consequent)


def constancy(f: Formula) -> DepAtom:
    return DepAtom((), f)


@dataclass(frozen=True)
class LanguageSignature:
    """Which connectives, which negation discipline, which dependence atoms.

    negation_policy is "full" (negation of arbitrary formulas, via the
    NEG connective) or "literal-only" (NegAtom nodes only). The
    dep_atom_policy is "none", "letters-only" or "classical-args".
    """

    name: str
    allowed: frozenset[Connective]
    negation_policy: str
    dep_atom_policy: str

    def permits(self, conn: Connective) -> bool:
        return conn in self.allowed


_C = Connective

INQ = LanguageSignature(
    "INQ",
    frozenset({_C.AND, _C.GLOBAL_OR, _C.IMPLIES, _C.BOT, _C.TOP}),
    "full",
    "none",
)
INQ_TENSOR = LanguageSignature(
    "INQ(x)",
    INQ.allowed | {_C.TENSOR},
    "full",
    "none",
)
INQ_PLUS = LanguageSignature(
    "INQ+",
    INQ_TENSOR.allowed | {_C.NEG, _C.QUESTION},
    "full",
    "none",
)
INQ_MINUS = LanguageSignature(
    "INQ-",
    INQ_PLUS.allowed - {_C.IMPLIES},
    "full",
    "none",
)
D = LanguageSignature(
    "D",
    frozenset({_C.AND, _C.TENSOR, _C.BOT, _C.TOP}),
    "literal-only",
    "letters-only",
)
D_PLUS = LanguageSignature(
    "D+",
    D.allowed,
    "literal-only",
    "classical-args",
)
# union language for evaluation: every connective plus dependence atoms
ALL = LanguageSignature(
    "ALL",
    frozenset(Connective),
    "full",
    "classical-args",
)

SIGNATURES: dict[str, LanguageSignature] = {
    "all": ALL,
    "inq": INQ,
    "inqx": INQ_TENSOR,
    "inq(x)": INQ_TENSOR,
    "inq+": INQ_PLUS,
    "inqplus": INQ_PLUS,
    "inq-": INQ_MINUS,
    "inqminus": INQ_MINUS,
    "d": D,
    "d+": D_PLUS,
    "dplus": D_PLUS,
}


@dataclass(frozen=True)
class Template:
    """A formula body whose Hole leaves stand for the two argument slots."""

    body: Formula

    def holes(self) -> frozenset[int]:
        return frozenset(n.index for n in walk(self.body) if isinstance(n, Hole))


class SubstitutionIllFormed(Exception):
    """Substituting into a template produced a formula the signature rejects."""


def child_nodes(f: Formula) -> tuple[Formula, ...]:
    if isinstance(f, Compound):
        return f.children
    if isinstance(f, DepAtom):
        return f.antecedents + (f.consequent,)
    return ()


def walk(f: Formula) -> Iterator[Formula]:
    """Pre-order traversal of all nodes."""
    yield f
    for c in child_nodes(f):
        yield from walk(c)


def node_count(f: Formula) -> int:
    return sum(1 for _ in walk(f))


def free_letters(f: Formula) -> frozenset[str]:
    """All letters occurring anywhere, including inside dependence atoms."""
    return frozenset(n.letter for n in walk(f) if isinstance(n, (Atom, NegAtom)))


def _classical_violation(f, holes_as_atoms, path):
    if isinstance(f, (Atom, NegAtom)):
        return None
    if isinstance(f, Hole):
        return None if holes_as_atoms else path
    if isinstance(f, Compound):
        if f.conn is _C.BOT:
            return None
        if f.conn in (_C.AND, _C.TENSOR):
            for i, c in enumerate(f.children):
                v = _classical_violation(c, holes_as_atoms, path + (i,))
                if v is not None:
                    return v
            return None
    return path


def is_classical(f: Formula) -> bool:
    """Dependence-atom-free formulas in the literal grammar: letters,
    negated letters, bot, conjunction and tensor only."""
    return _classical_violation(f, False, ()) is None


def first_violation(
    f: Formula, sig: LanguageSignature, holes_as_atoms: bool = False, _path: tuple = ()
) -> Optional[tuple[int, ...]]:
    """Path (child indices) to the first node the signature rejects, or None.

    With holes_as_atoms, Hole leaves are treated like letters, which also
    licenses a negated hole under literal-only negation; context checking
    rejects that case separately.
    """
    if isinstance(f, Hole):
        return None if holes_as_atoms else _path
    if isinstance(f, Atom):
        return None
    if isinstance(f, NegAtom):
        return None if sig.negation_policy == "literal-only" else _path
    if isinstance(f, DepAtom):
        if sig.dep_atom_policy == "none":
            return _path
        args = f.antecedents + (f.consequent,)
        for i, a in enumerate(args):
            if sig.dep_atom_policy == "letters-only":
                ok = isinstance(a, Atom) or (holes_as_atoms and isinstance(a, Hole))
                if not ok:
                    return _path + (i,)
            else:
                v = _classical_violation(a, holes_as_atoms, _path + (i,))
                if v is not None:
                    return v
        return None
    conn = f.conn
    if conn is _C.NEG:
        if not (sig.negation_policy == "full" and sig.permits(conn)):
            lax = (
                holes_as_atoms
                and sig.negation_policy == "literal-only"
                and isinstance(f.children[0], Hole)
            )
            if not lax:
                return _path
    elif not sig.permits(conn):
        return _path
    for i, c in enumerate(f.children):
        v = first_violation(c, sig, holes_as_atoms, _path + (i,))
        if v is not None:
            return v
    return None


def well_formed(f: Formula, sig: LanguageSignature) -> bool:
    return first_violation(f, sig) is None


def _hole_misplaced(f: Formula) -> bool:
    if isinstance(f, DepAtom):
        return any(isinstance(n, Hole) for n in walk(f))
    if isinstance(f, Compound) and f.conn is _C.NEG:
        if any(isinstance(n, Hole) for n in walk(f)):
            return True
    return any(_hole_misplaced(c) for c in child_nodes(f))


def is_valid_context(t: Template, sig: LanguageSignature) -> bool:
    """Whether substituting well-formed arguments can keep the result
    well-formed: the body must be well-formed with holes read as letters,
    and in the dependence languages no hole may sit under a negation or
    inside a dependence atom."""
    if first_violation(t.body, sig, holes_as_atoms=True) is not None:
        return False
    if sig.dep_atom_policy == "none":
        return True
    return not _hole_misplaced(t.body)


def _replace_holes(f: Formula, left: Formula, right: Formula) -> Formula:
    if isinstance(f, Hole):
        return left if f.index == 1 else right
    if isinstance(f, Compound):
        return Compound(f.conn, tuple(_replace_holes(c, left, right) for c in f.children))
    if isinstance(f, DepAtom):
        return DepAtom(
            tuple(_replace_holes(a, left, right) for a in f.antecedents),
            _replace_holes(f.consequent, left, right),
        )
    return f


def substitute(
    t: Template, left: Formula, right: Formula, sig: LanguageSignature
) -> Formula:
    """Replace every #1 with left and every #2 with right."""
    body = _replace_holes(t.body, left, right)
    v = first_violation(body, sig)
    if v is not None:
        raise SubstitutionIllFormed(
            f"substitution result violates {sig.name} at path {list(v)}"
        )
    return body


def rename_letters(f: Formula, mapping: Mapping[str, str]) -> Formula:
    if isinstance(f, Atom):
        return Atom(mapping.get(f.letter, f.letter))
    if isinstance(f, NegAtom):
        return NegAtom(mapping.get(f.letter, f.letter))
    if isinstance(f, Compound):
        return Compound(f.conn, tuple(rename_letters(c, mapping) for c in f.children))
    if isinstance(f, DepAtom):
        return DepAtom(
            tuple(rename_letters(a, mapping) for a in f.antecedents),
            rename_letters(f.consequent, mapping),
        )
    return f


def normalize_questions(f: Formula) -> Formula:
    """Rewrite every ?x into x \\/ ~x; the result is question-free and
    supported by exactly the same states."""
    if isinstance(f, Compound):
        kids = tuple(normalize_questions(c) for c in f.children)
        if f.conn is _C.QUESTION:
            return gor(kids[0], neg(kids[0]))
        return Compound(f.conn, kids)
    if isinstance(f, DepAtom):
        return DepAtom(
            tuple(normalize_questions(a) for a in f.antecedents),
            normalize_questions(f.consequent),
        )
    return f
