"""Finite possible-world models and support semantics over information states.

A state is a bitmask over the model's worlds. A proposition is the set of
all supporting states, held as one integer whose bit s is set when state s
supports the formula; every proposition is downward closed and contains
the empty state.

Support clauses, evaluated at a state s:

    letter       every world of s makes the letter true
    bot          s is empty
    top          always
    x /\\ y      both supported at s
    x \\/ y      one of them supported at s
    x (x) y      s = t1 | t2 for some t1 supporting x and t2 supporting y
    x -> y       every subset of s supporting x supports y
    ~x           x -> bot
    ?x           x \\/ ~x
    =(p..; q)    worlds of s that agree on all of p.. agree on q
    =(a..; b)    worlds of s that agree on the conjunction of a.. agree on b

Two evaluation routes are provided on purpose. ``supports``/``support_mask``
apply the clauses directly (subset and cover enumeration), while
``proposition`` composes the algebraic operations ``prop_*``; the two must
agree and the test suite checks that they do.
"""
from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations, combinations_with_replacement
from typing import Iterable, Iterator, Mapping

from .syntax import (
    Atom,
    Compound,
    Connective,
    DepAtom,
    Formula,
    Hole,
    NegAtom,
    atom,
    free_letters,
    is_classical,
)

MAX_WORLDS = 16


class ModelMismatch(Exception):
    """Operands live over models with different world counts."""


@dataclass(frozen=True)
class Model:
    """Worlds in a fixed order plus a valuation per world.

    Letters outside letter_universe are false at every world; the universe
    may declare extra letters beyond those the valuation mentions so that
    a model can reserve letters that are false everywhere.
    """

    world_names: tuple[str, ...]
    valuation: tuple[frozenset[str], ...]
    letter_universe: frozenset[str]

    def __post_init__(self):
        if len(self.world_names) > MAX_WORLDS:
            raise ValueError(f"at most {MAX_WORLDS} worlds are supported")
        if len(set(self.world_names)) != len(self.world_names):
            raise ValueError("world names must be unique")
        if len(self.valuation) != len(self.world_names):
            raise ValueError("one valuation entry per world required")
        mentioned = frozenset().union(*self.valuation) if self.valuation else frozenset()
        if not mentioned <= self.letter_universe:
            raise ValueError("letter_universe must cover every letter the valuation uses")

    @classmethod
    def make(
        cls,
        world_names: Iterable[str],
        valuation: Mapping[str, Iterable[str]],
        extra_letters: Iterable[str] = (),
    ) -> "Model":
        names = tuple(world_names)
        vals = tuple(frozenset(valuation.get(w, ())) for w in names)
        universe = frozenset(extra_letters).union(*vals) if names else frozenset(extra_letters)
        return cls(names, vals, universe)

    @property
    def world_count(self) -> int:
        return len(self.world_names)

    @property
    def full_state(self) -> int:
        return (1 << self.world_count) - 1

    def world_index(self, name: str) -> int:
        try:
            return self.world_names.index(name)
        except ValueError:
            raise KeyError(f"unknown world {name!r}") from None

    def state_of(self, names: Iterable[str]) -> int:
        s = 0
        for name in names:
            s |= 1 << self.world_index(name)
        return s

    def truth_mask(self, letter: str) -> int:
        """Bitmask of the worlds where the letter is true."""
        m = 0
        for i, val in enumerate(self.valuation):
            if letter in val:
                m |= 1 << i
        return m


def canonical_impl_model() -> Model:
    """Three worlds: w1 makes only p true, w2 only q, w3 nothing; the
    letter r is declared but false everywhere."""
    return Model.make(
        ("w1", "w2", "w3"),
        {"w1": {"p"}, "w2": {"q"}, "w3": set()},
        extra_letters=("p", "q", "r"),
    )


def canonical_dep_model() -> Model:
    """Three worlds: p true at w1 and w2, q true at w2 and w3; the letter
    r is declared but false everywhere."""
    return Model.make(
        ("w1", "w2", "w3"),
        {"w1": {"p"}, "w2": {"p", "q"}, "w3": {"q"}},
        extra_letters=("p", "q", "r"),
    )


@dataclass(frozen=True)
class Proposition:
    """A downward-closed family of states containing the empty state."""

    world_count: int
    bits: int

    def __post_init__(self):
        n = self.world_count
        if not 0 <= n <= MAX_WORLDS:
            raise ValueError("world_count out of range")
        if not 0 <= self.bits < 1 << (1 << n):
            raise ValueError("proposition bit-vector out of range")
        if not self.bits & 1:
            raise ValueError("proposition must contain the empty state")
        bits = self.bits
        for s in range(1 << n):
            if bits >> s & 1:
                t = s
                while t:
                    w = t & -t
                    if not bits >> (s ^ w) & 1:
                        raise ValueError("proposition must be downward closed")
                    t ^= w

    def __contains__(self, state: int) -> bool:
        return bool(self.bits >> state & 1)

    def states(self) -> Iterator[int]:
        for s in range(1 << self.world_count):
            if self.bits >> s & 1:
                yield s

    def maximal_states(self) -> list[int]:
        """The antichain of set-maximal members; the proposition is exactly
        its downward closure."""
        out = []
        full = (1 << self.world_count) - 1
        for s in self.states():
            if all(self.bits >> (s | (1 << i)) & 1 == 0 for i in range(self.world_count) if not s >> i & 1):
                out.append(s)
        return out

    def state_count(self) -> int:
        return bin(self.bits).count("1")


def _subsets(s: int) -> Iterator[int]:
    t = s
    while True:
        yield t
        if t == 0:
            return
        t = (t - 1) & s


def _check_pair(p: Proposition, q: Proposition) -> int:
    if p.world_count != q.world_count:
        raise ModelMismatch(
            f"propositions over {p.world_count} and {q.world_count} worlds"
        )
    return p.world_count


def prop_bot(m: Model) -> Proposition:
    return Proposition(m.world_count, 1)


def prop_top(m: Model) -> Proposition:
    return Proposition(m.world_count, (1 << (1 << m.world_count)) - 1)


def prop_and(p: Proposition, q: Proposition) -> Proposition:
    n = _check_pair(p, q)
    return Proposition(n, p.bits & q.bits)


def prop_or(p: Proposition, q: Proposition) -> Proposition:
    n = _check_pair(p, q)
    return Proposition(n, p.bits | q.bits)


def prop_tensor(p: Proposition, q: Proposition) -> Proposition:
    """Unions s | t with s in p and t in q. Since both operands are
    downward closed it suffices to pair their maximal states and close."""
    n = _check_pair(p, q)
    gens = {a | b for a in p.maximal_states() for b in q.maximal_states()}
    return downward_close(n, gens)


def prop_implies(p: Proposition, q: Proposition) -> Proposition:
    """States none of whose subsets lie in p without lying in q, computed
    by propagating the offending states upward through the subset lattice."""
    n = _check_pair(p, q)
    size = 1 << n
    bad = [bool(p.bits >> s & 1 and not q.bits >> s & 1) for s in range(size)]
    for i in range(n):
        w = 1 << i
        for s in range(size):
            if s & w and bad[s ^ w]:
                bad[s] = True
    bits = 0
    for s in range(size):
        if not bad[s]:
            bits |= 1 << s
    return Proposition(n, bits)


def prop_neg(p: Proposition) -> Proposition:
    return prop_implies(p, Proposition(p.world_count, 1))


def prop_question(p: Proposition) -> Proposition:
    return prop_or(p, prop_neg(p))


def downward_close(world_count: int, states: Iterable[int]) -> Proposition:
    """Smallest downward-closed family containing the given states and
    the empty state."""
    size = 1 << world_count
    member = [False] * size
    member[0] = True
    for s in states:
        if not 0 <= s < size:
            raise ValueError(f"state {s} out of range for {world_count} worlds")
        member[s] = True
    for i in range(world_count):
        w = 1 << i
        for s in range(size - 1, -1, -1):
            if s & w and member[s]:
                member[s ^ w] = True
    bits = 0
    for s in range(size):
        if member[s]:
            bits |= 1 << s
    return Proposition(world_count, bits)


def atom_proposition(m: Model, letter: str) -> Proposition:
    return downward_close(m.world_count, (m.truth_mask(letter),))


def neg_literal_proposition(m: Model, letter: str) -> Proposition:
    return downward_close(m.world_count, (m.full_state & ~m.truth_mask(letter),))


def classical_truth(m: Model, w: int, f: Formula) -> bool:
    """Truth of a classical formula (or top) at a single world; at
    singleton states both conjunction and tensor behave
    truth-functionally."""
    if isinstance(f, Atom):
        return bool(m.truth_mask(f.letter) >> w & 1)
    if isinstance(f, NegAtom):
        return not m.truth_mask(f.letter) >> w & 1
    if isinstance(f, Compound):
        if f.conn is Connective.BOT:
            return False
        if f.conn is Connective.TOP:
            return True
        if f.conn is Connective.AND:
            return classical_truth(m, w, f.children[0]) and classical_truth(m, w, f.children[1])
        if f.conn is Connective.TENSOR:
            return classical_truth(m, w, f.children[0]) or classical_truth(m, w, f.children[1])
    raise ValueError(f"not a classical formula: {f!r}")


def _dep_keys(m: Model, d: DepAtom) -> tuple[list, list]:
    """Per-world antecedent keys and consequent values for a dependence atom.

    Letter antecedents are compared component-wise; general classical
    antecedents are compared through the truth value of their conjunction
    (an empty conjunction counts as true).
    """
    n = m.world_count
    if all(isinstance(a, Atom) for a in d.antecedents):
        keys = [
            tuple(bool(m.truth_mask(a.letter) >> w & 1) for a in d.antecedents)
            for w in range(n)
        ]
    else:
        keys = [all(classical_truth(m, w, a) for a in d.antecedents) for w in range(n)]
    vals = [classical_truth(m, w, d.consequent) for w in range(n)]
    return keys, vals


def dep_atom_proposition(m: Model, d: DepAtom) -> Proposition:
    """States whose worlds determine the consequent from the antecedents:
    within the state, equal antecedent keys force equal consequent values."""
    if not is_classical(d.consequent) or not all(is_classical(a) for a in d.antecedents):
        raise ValueError("dependence atom arguments must be classical")
    n = m.world_count
    keys, vals = _dep_keys(m, d)
    bits = 0
    for s in range(1 << n):
        seen: dict = {}
        ok = True
        for w in range(n):
            if s >> w & 1:
                k = keys[w]
                if k in seen:
                    if seen[k] != vals[w]:
                        ok = False
                        break
                else:
                    seen[k] = vals[w]
        if ok:
            bits |= 1 << s
    return Proposition(n, bits)


def supports(m: Model, s: int, f: Formula) -> bool:
    """Direct clause-by-clause evaluation of support at one state."""
    if not 0 <= s <= m.full_state:
        raise ValueError(f"state {s} out of range")
    return _supports(m, f, s, {})


def _supports(m: Model, f: Formula, s: int, memo: dict) -> bool:
    key = (id(f), s)
    if key in memo:
        return memo[key]
    if isinstance(f, Atom):
        ok = s & ~m.truth_mask(f.letter) == 0
    elif isinstance(f, NegAtom):
        ok = s & m.truth_mask(f.letter) == 0
    elif isinstance(f, DepAtom):
        ok = _dep_supports(m, f, s)
    elif isinstance(f, Hole):
        raise ValueError("cannot evaluate a template hole; substitute first")
    else:
        conn = f.conn
        if conn is Connective.BOT:
            ok = s == 0
        elif conn is Connective.TOP:
            ok = True
        elif conn is Connective.AND:
            ok = _supports(m, f.children[0], s, memo) and _supports(m, f.children[1], s, memo)
        elif conn is Connective.GLOBAL_OR:
            ok = _supports(m, f.children[0], s, memo) or _supports(m, f.children[1], s, memo)
        elif conn is Connective.TENSOR:
            l, r = f.children
            ok = any(
                _supports(m, l, t1, memo) and _supports(m, r, t2, memo)
                for t1 in _subsets(s)
                for t2 in _subsets(s)
                if t1 | t2 == s
            )
        elif conn is Connective.IMPLIES:
            l, r = f.children
            ok = all(
                not _supports(m, l, t, memo) or _supports(m, r, t, memo)
                for t in _subsets(s)
            )
        elif conn is Connective.NEG:
            (c,) = f.children
            ok = all(t == 0 or not _supports(m, c, t, memo) for t in _subsets(s))
        elif conn is Connective.QUESTION:
            (c,) = f.children
            ok = _supports(m, c, s, memo) or all(
                t == 0 or not _supports(m, c, t, memo) for t in _subsets(s)
            )
        else:  # pragma: no cover
            raise AssertionError(conn)
    memo[key] = ok
    return ok


def _dep_supports(m: Model, d: DepAtom, s: int) -> bool:
    keys, vals = _dep_keys(m, d)
    worlds = [w for w in range(m.world_count) if s >> w & 1]
    for a in worlds:
        for b in worlds:
            if keys[a] == keys[b] and vals[a] != vals[b]:
                return False
    return True


# Mask-level clause evaluation: the same quantifier loops as ``supports``,
# applied at every state at once. verify's template enumerator combines
# these directly.

def mask_bot(n: int) -> int:
    return 1


def mask_top(n: int) -> int:
    return (1 << (1 << n)) - 1


def mask_tensor(a: int, b: int, n: int) -> int:
    out = 0
    for s in range(1 << n):
        hit = False
        for t1 in _subsets(s):
            if a >> t1 & 1:
                for t2 in _subsets(s):
                    if t1 | t2 == s and b >> t2 & 1:
                        hit = True
                        break
                if hit:
                    break
        if hit:
            out |= 1 << s
    return out


def mask_implies(a: int, b: int, n: int) -> int:
    out = 0
    for s in range(1 << n):
        if all(not a >> t & 1 or b >> t & 1 for t in _subsets(s)):
            out |= 1 << s
    return out


def mask_neg(a: int, n: int) -> int:
    out = 0
    for s in range(1 << n):
        if all(t == 0 or not a >> t & 1 for t in _subsets(s)):
            out |= 1 << s
    return out


def mask_question(a: int, n: int) -> int:
    return a | mask_neg(a, n)


def support_mask(m: Model, f: Formula) -> int:
    """The pointwise proposition of f as a bare bit-vector, built by
    evaluating the support clauses; independent of the prop_* algebra."""
    n = m.world_count
    memo: dict = {}

    def go(g: Formula) -> int:
        key = id(g)
        if key in memo:
            return memo[key]
        if isinstance(g, Atom):
            tm = m.truth_mask(g.letter)
            bits = 0
            for s in range(1 << n):
                if s & ~tm == 0:
                    bits |= 1 << s
        elif isinstance(g, NegAtom):
            tm = m.truth_mask(g.letter)
            bits = 0
            for s in range(1 << n):
                if s & tm == 0:
                    bits |= 1 << s
        elif isinstance(g, DepAtom):
            bits = 0
            for s in range(1 << n):
                if _dep_supports(m, g, s):
                    bits |= 1 << s
        elif isinstance(g, Hole):
            raise ValueError("cannot evaluate a template hole; substitute first")
        else:
            conn = g.conn
            if conn is Connective.BOT:
                bits = mask_bot(n)
            elif conn is Connective.TOP:
                bits = mask_top(n)
            elif conn is Connective.AND:
                bits = go(g.children[0]) & go(g.children[1])
            elif conn is Connective.GLOBAL_OR:
                bits = go(g.children[0]) | go(g.children[1])
            elif conn is Connective.TENSOR:
                bits = mask_tensor(go(g.children[0]), go(g.children[1]), n)
            elif conn is Connective.IMPLIES:
                bits = mask_implies(go(g.children[0]), go(g.children[1]), n)
            elif conn is Connective.NEG:
                bits = mask_neg(go(g.children[0]), n)
            elif conn is Connective.QUESTION:
                bits = mask_question(go(g.children[0]), n)
            else:  # pragma: no cover
                raise AssertionError(conn)
        memo[key] = bits
        return bits

    return go(f)


def proposition(m: Model, f: Formula) -> Proposition:
    """The proposition of f, composed from the algebraic operations."""
    if isinstance(f, Atom):
        return atom_proposition(m, f.letter)
    if isinstance(f, NegAtom):
        return neg_literal_proposition(m, f.letter)
    if isinstance(f, DepAtom):
        return dep_atom_proposition(m, f)
    if isinstance(f, Hole):
        raise ValueError("cannot evaluate a template hole; substitute first")
    conn = f.conn
    if conn is Connective.BOT:
        return prop_bot(m)
    if conn is Connective.TOP:
        return prop_top(m)
    if conn is Connective.AND:
        return prop_and(proposition(m, f.children[0]), proposition(m, f.children[1]))
    if conn is Connective.GLOBAL_OR:
        return prop_or(proposition(m, f.children[0]), proposition(m, f.children[1]))
    if conn is Connective.TENSOR:
        return prop_tensor(proposition(m, f.children[0]), proposition(m, f.children[1]))
    if conn is Connective.IMPLIES:
        return prop_implies(proposition(m, f.children[0]), proposition(m, f.children[1]))
    if conn is Connective.NEG:
        return prop_neg(proposition(m, f.children[0]))
    if conn is Connective.QUESTION:
        return prop_question(proposition(m, f.children[0]))
    raise AssertionError(conn)  # pragma: no cover


def equivalent_in(m: Model, f: Formula, g: Formula) -> bool:
    return proposition(m, f) == proposition(m, g)


def equivalent_upto(f: Formula, g: Formula, max_worlds: int) -> bool:
    """Equivalence over every model on the formulas' letters with up to
    max_worlds worlds, enumerating valuations up to world renaming."""
    if not 1 <= max_worlds <= MAX_WORLDS:
        raise ValueError(f"max_worlds must be in 1..{MAX_WORLDS}")
    letters = sorted(free_letters(f) | free_letters(g))
    k = len(letters)
    for n in range(1, max_worlds + 1):
        names = tuple(f"w{i + 1}" for i in range(n))
        for codes in combinations_with_replacement(range(1 << k), n):
            val = {
                names[i]: {letters[j] for j in range(k) if codes[i] >> j & 1}
                for i in range(n)
            }
            m = Model.make(names, val, extra_letters=letters)
            if proposition(m, f) != proposition(m, g):
                return False
    return True


def format_state(m: Model, s: int) -> str:
    names = [m.world_names[i] for i in range(m.world_count) if s >> i & 1]
    return "{" + ",".join(names) + "}"


def format_proposition(m: Model, p: Proposition) -> str:
    """Maximal-state antichain followed by the downward-closure marker,
    e.g. ``{w1,w2},{w1,w3} ↓``."""
    if p.world_count != m.world_count:
        raise ModelMismatch("proposition does not match model")
    parts = [format_state(m, s) for s in sorted(p.maximal_states())]
    return ",".join(parts) + " ↓"


def _classical_formulas(letters: list[str], depth: int) -> list[Formula]:
    """All structurally distinct classical formulas over the letters up to
    the given AST depth; meant for small letter sets."""
    from .syntax import BOT, conj, neg_atom, tensor

    level: list[Formula] = [BOT]
    for l in letters:
        level.append(atom(l))
        level.append(neg_atom(l))
    seen = list(level)
    for _ in range(depth - 1):
        new = []
        for a in seen:
            for b in seen:
                new.append(conj(a, b))
                new.append(tensor(a, b))
        known = set(seen)
        for f in new:
            if f not in known:
                known.add(f)
                seen.append(f)
    return seen


def check_dep_triviality(m: Model, excluded: Iterable[str], depth: int = 2) -> bool:
    """Whether every dependence atom avoiding the excluded letters denotes
    the full powerset in m.

    Two checks must both pass: the worlds of m agree on every remaining
    letter of the universe (which settles atoms of any shape), and a
    bounded sweep of concrete atoms, letters-only ones over all antecedent
    subsets plus classical-argument ones up to the given depth, each
    evaluate to top. Antecedent lists longer than one are covered by the
    sweep because a list is compared through its conjunction.
    """
    fresh = sorted(m.letter_universe - frozenset(excluded))
    profiles = {val & frozenset(fresh) for val in m.valuation}
    if len(profiles) > 1:
        return False
    top = prop_top(m)
    for size in range(len(fresh) + 1):
        for ants in combinations(fresh, size):
            for c in fresh:
                d = DepAtom(tuple(atom(a) for a in ants), atom(c))
                if dep_atom_proposition(m, d) != top:
                    return False
    if depth >= 1:
        pool = _classical_formulas(fresh, depth)
        for beta in pool:
            if dep_atom_proposition(m, DepAtom((), beta)) != top:
                return False
            for alpha in pool:
                if dep_atom_proposition(m, DepAtom((alpha,), beta)) != top:
                    return False
    return True
