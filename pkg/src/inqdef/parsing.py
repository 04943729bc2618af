"""Text front-end: the formula/template grammar and the JSON model format.

Grammar (ASCII), loosest to tightest binding:

    ->      implication, right-associative
    \\/     global disjunction, left-associative
    (x)     tensor disjunction, left-associative
    /\\     conjunction, left-associative
    ~  ?    prefix negation and question
    atoms   identifiers, ``bot``, ``top``, dependence atoms
            ``=(a1,...,an; b)`` and ``=(b)``, holes ``#1``/``#2`` in
            templates, and parenthesised groups

``(x)`` is always read as the tensor token, so a lone atom wrapped in
parentheses as ``(x)`` needs a space: ``( x )``.

Models are JSON objects ``{"worlds": [...], "valuation": {world: [letter,
...]}, "letters": [...]}``; ``letters`` is optional and declares extra
letters that are false everywhere. The listed world order fixes world
indices everywhere downstream.
"""
from __future__ import annotations

import json
from dataclasses import dataclass
from typing import Optional

from .semantics import MAX_WORLDS, Model
from .syntax import (
    BOT,
    TOP,
    Atom,
    Compound,
    Connective,
    DepAtom,
    Formula,
    Hole,
    LanguageSignature,
    NegAtom,
    Template,
)


@dataclass(frozen=True)
class SourceSpan:
    start: int
    end: int

    def __post_init__(self):
        if self.start > self.end:
            raise ValueError("span start after end")


class ParseError(Exception):
    def __init__(self, message: str, span: Optional[SourceSpan] = None):
        self.span = span
        if span is not None:
            message = f"{message} (at {span.start}..{span.end})"
        super().__init__(message)


class SignatureError(ParseError):
    """The text parses but uses syntax the signature does not license."""


class FormatError(Exception):
    """Malformed JSON model document."""


@dataclass(frozen=True)
class _Token:
    kind: str
    text: str
    span: SourceSpan


_SINGLE = {
    "(": "LPAREN",
    ")": "RPAREN",
    "=": "EQ",
    ",": "COMMA",
    ";": "SEMI",
    "~": "NEG",
    "?": "QUESTION",
}


def _tokenize(text: str) -> list[_Token]:
    tokens = []
    i = 0
    n = len(text)
    while i < n:
        ch = text[i]
        if ch.isspace():
            i += 1
            continue
        if text.startswith("(x)", i):
            tokens.append(_Token("TENSOR", "(x)", SourceSpan(i, i + 3)))
            i += 3
        elif text.startswith("->", i):
            tokens.append(_Token("IMPLIES", "->", SourceSpan(i, i + 2)))
            i += 2
        elif text.startswith("/\\", i):
            tokens.append(_Token("AND", "/\\", SourceSpan(i, i + 2)))
            i += 2
        elif text.startswith("\\/", i):
            tokens.append(_Token("OR", "\\/", SourceSpan(i, i + 2)))
            i += 2
        elif ch == "#":
            if text.startswith("#1", i) or text.startswith("#2", i):
                tokens.append(_Token("HOLE", text[i : i + 2], SourceSpan(i, i + 2)))
                i += 2
            else:
                raise ParseError("holes are written #1 or #2", SourceSpan(i, i + 1))
        elif ch in _SINGLE:
            tokens.append(_Token(_SINGLE[ch], ch, SourceSpan(i, i + 1)))
            i += 1
        elif ch.isalpha() or ch == "_":
            j = i + 1
            while j < n and (text[j].isalnum() or text[j] == "_"):
                j += 1
            word = text[i:j]
            kind = "BOT" if word == "bot" else "TOP" if word == "top" else "IDENT"
            tokens.append(_Token(kind, word, SourceSpan(i, j)))
            i = j
        else:
            raise ParseError(f"unexpected character {ch!r}", SourceSpan(i, i + 1))
    tokens.append(_Token("EOF", "", SourceSpan(n, n)))
    return tokens


_CLASSICAL_ARGS = LanguageSignature(
    "classical arguments",
    frozenset({Connective.AND, Connective.TENSOR, Connective.BOT}),
    "literal-only",
    "none",
)


class _Parser:
    def __init__(self, text: str, sig: LanguageSignature, allow_holes: bool):
        self.tokens = _tokenize(text)
        self.pos = 0
        self.sig = sig
        self.allow_holes = allow_holes

    def peek(self) -> _Token:
        return self.tokens[self.pos]

    def take(self) -> _Token:
        tok = self.tokens[self.pos]
        self.pos += 1
        return tok

    def expect(self, kind: str, what: str) -> _Token:
        tok = self.take()
        if tok.kind != kind:
            raise ParseError(f"expected {what}, found {tok.text or 'end of input'!r}", tok.span)
        return tok

    def license(self, conn: Connective, tok: _Token) -> None:
        if not self.sig.permits(conn):
            raise SignatureError(f"'{tok.text}' is not part of {self.sig.name}", tok.span)

    def parse(self) -> Formula:
        f = self.parse_implies()
        tok = self.peek()
        if tok.kind != "EOF":
            raise ParseError(f"unexpected {tok.text!r}", tok.span)
        return f

    def parse_implies(self) -> Formula:
        left = self.parse_or()
        tok = self.peek()
        if tok.kind == "IMPLIES":
            self.take()
            self.license(Connective.IMPLIES, tok)
            right = self.parse_implies()
            return Compound(Connective.IMPLIES, (left, right))
        return left

    def parse_or(self) -> Formula:
        left = self.parse_tensor()
        while self.peek().kind == "OR":
            tok = self.take()
            self.license(Connective.GLOBAL_OR, tok)
            left = Compound(Connective.GLOBAL_OR, (left, self.parse_tensor()))
        return left

    def parse_tensor(self) -> Formula:
        left = self.parse_and()
        while self.peek().kind == "TENSOR":
            tok = self.take()
            self.license(Connective.TENSOR, tok)
            left = Compound(Connective.TENSOR, (left, self.parse_and()))
        return left

    def parse_and(self) -> Formula:
        left = self.parse_prefix()
        while self.peek().kind == "AND":
            tok = self.take()
            self.license(Connective.AND, tok)
            left = Compound(Connective.AND, (left, self.parse_prefix()))
        return left

    def parse_prefix(self) -> Formula:
        tok = self.peek()
        if tok.kind == "NEG":
            self.take()
            if self.sig.negation_policy == "literal-only":
                operand = self.parse_prefix()
                if isinstance(operand, Atom):
                    return NegAtom(operand.letter)
                if self.allow_holes and isinstance(operand, Hole):
                    # parses so that context checking can reject it
                    return Compound(Connective.NEG, (operand,))
                raise SignatureError(
                    f"negation applies only to letters in {self.sig.name}", tok.span
                )
            if not self.sig.permits(Connective.NEG):
                raise SignatureError(f"'~' is not part of {self.sig.name}", tok.span)
            return Compound(Connective.NEG, (self.parse_prefix(),))
        if tok.kind == "QUESTION":
            self.take()
            self.license(Connective.QUESTION, tok)
            return Compound(Connective.QUESTION, (self.parse_prefix(),))
        return self.parse_atom()

    def parse_atom(self) -> Formula:
        tok = self.take()
        if tok.kind == "LPAREN":
            f = self.parse_implies()
            self.expect("RPAREN", "')'")
            return f
        if tok.kind == "IDENT":
            return Atom(tok.text)
        if tok.kind == "BOT":
            self.license(Connective.BOT, tok)
            return BOT
        if tok.kind == "TOP":
            self.license(Connective.TOP, tok)
            return TOP
        if tok.kind == "HOLE":
            if not self.allow_holes:
                raise ParseError("holes are only allowed in templates", tok.span)
            return Hole(int(tok.text[1]))
        if tok.kind == "EQ":
            return self.parse_dep(tok)
        raise ParseError(
            f"expected a formula, found {tok.text or 'end of input'!r}", tok.span
        )

    def parse_dep(self, eq_tok: _Token) -> Formula:
        if self.sig.dep_atom_policy == "none":
            raise SignatureError(
                f"dependence atoms are not part of {self.sig.name}", eq_tok.span
            )
        self.expect("LPAREN", "'(' after '='")
        items = [self.parse_dep_arg()]
        while self.peek().kind == "COMMA":
            self.take()
            items.append(self.parse_dep_arg())
        if self.peek().kind == "SEMI":
            self.take()
            consequent = self.parse_dep_arg()
            self.expect("RPAREN", "')'")
            return DepAtom(tuple(items), consequent)
        close = self.expect("RPAREN", "';' or ')'")
        if len(items) != 1:
            raise ParseError(
                "a dependence atom with antecedents needs ';' before the consequent",
                close.span,
            )
        return DepAtom((), items[0])

    def parse_dep_arg(self) -> Formula:
        letters_only = self.sig.dep_atom_policy == "letters-only"
        start = self.peek()
        outer = self.sig
        self.sig = _CLASSICAL_ARGS
        try:
            f = self.parse_implies()
        finally:
            self.sig = outer
        if letters_only and not isinstance(f, (Atom, Hole)):
            raise SignatureError(
                f"dependence atoms take letters only in {self.sig.name}", start.span
            )
        return f


def parse_formula(text: str, sig: LanguageSignature) -> Formula:
    return _Parser(text, sig, allow_holes=False).parse()


def parse_template(text: str, sig: LanguageSignature) -> Template:
    """Parse with holes enabled; validity as a context is checked
    separately by is_valid_context."""
    return Template(_Parser(text, sig, allow_holes=True).parse())


_LEVEL = {
    Connective.IMPLIES: 1,
    Connective.GLOBAL_OR: 2,
    Connective.TENSOR: 3,
    Connective.AND: 4,
}
_PREFIX_LEVEL = 5
_ATOM_LEVEL = 6


def _render(f: Formula) -> tuple[str, int]:
    if isinstance(f, Atom):
        return f.letter, _ATOM_LEVEL
    if isinstance(f, NegAtom):
        return "~" + f.letter, _PREFIX_LEVEL
    if isinstance(f, Hole):
        return f"#{f.index}", _ATOM_LEVEL
    if isinstance(f, DepAtom):
        parts = [render(a) for a in f.antecedents]
        inner = render(f.consequent)
        if parts:
            return "=(" + ",".join(parts) + "; " + inner + ")", _ATOM_LEVEL
        return "=(" + inner + ")", _ATOM_LEVEL
    conn = f.conn
    if conn is Connective.BOT:
        return "bot", _ATOM_LEVEL
    if conn is Connective.TOP:
        return "top", _ATOM_LEVEL
    if conn in (Connective.NEG, Connective.QUESTION):
        text, level = _render(f.children[0])
        if level < _PREFIX_LEVEL:
            text = "(" + text + ")"
        return conn.value + text, _PREFIX_LEVEL
    level = _LEVEL[conn]
    ltext, llevel = _render(f.children[0])
    rtext, rlevel = _render(f.children[1])
    if llevel < level or (llevel == level and conn is Connective.IMPLIES):
        ltext = "(" + ltext + ")"
    if rlevel < level or (rlevel == level and conn is not Connective.IMPLIES):
        rtext = "(" + rtext + ")"
    return f"{ltext} {conn.value} {rtext}", level


def render(f: Formula) -> str:
    """Minimally parenthesised text that parses back to the same AST."""
    return _render(f)[0]


def render_template(t: Template) -> str:
    return render(t.body)


def parse_model(text: str) -> Model:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise FormatError(f"invalid JSON: {exc}") from None
    if not isinstance(doc, dict):
        raise FormatError("model document must be a JSON object")
    unknown = set(doc) - {"worlds", "valuation", "letters"}
    if unknown:
        raise FormatError(f"unknown keys: {sorted(unknown)}")
    worlds = doc.get("worlds")
    if not isinstance(worlds, list) or not all(isinstance(w, str) for w in worlds):
        raise FormatError("'worlds' must be a list of strings")
    if len(set(worlds)) != len(worlds):
        raise FormatError("duplicate world name")
    if len(worlds) > MAX_WORLDS:
        raise FormatError(f"at most {MAX_WORLDS} worlds are supported")
    valuation = doc.get("valuation", {})
    if not isinstance(valuation, dict):
        raise FormatError("'valuation' must be an object")
    for w, letters in valuation.items():
        if w not in worlds:
            raise FormatError(f"valuation mentions unknown world {w!r}")
        if not isinstance(letters, list) or not all(isinstance(l, str) for l in letters):
            raise FormatError(f"letters of world {w!r} must be a list of strings")
    extra = doc.get("letters", [])
    if not isinstance(extra, list) or not all(isinstance(l, str) for l in extra):
        raise FormatError("'letters' must be a list of strings")
    return Model.make(worlds, {w: set(v) for w, v in valuation.items()}, extra_letters=extra)


def model_to_dict(m: Model) -> dict:
    """JSON-ready form; parses back to an equal model."""
    return {
        "worlds": list(m.world_names),
        "valuation": {w: sorted(m.valuation[i]) for i, w in enumerate(m.world_names)},
        "letters": sorted(m.letter_universe),
    }
