"""Finite classical propositional semantics.

Everything semantic is represented by bitmasks:

* an interpretation over ``n`` symbols is an index ``i`` in ``0 .. 2**n - 1``
  whose ``n``-bit binary string lists the truth values of the symbols in
  vocabulary order (``"10"`` over ``p q`` makes ``p`` true and ``q`` false);
* a model set (the semantic content of a formula or of a theory) is an int of
  ``N = 2**n`` bits, written as the characteristic bitstring in interpretation
  order, so interpretation ``i`` sits at bit ``N - 1 - i``;
* a set of formula classes is an int with bit ``c`` set when the class whose
  model-set mask is ``c`` belongs to the set.

With this layout, integer order on masks coincides with lexicographic order
on characteristic bitstrings, which is the canonical enumeration order used
throughout the package.
"""

from __future__ import annotations

import os
import re
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, Iterator, Union

import numpy as np

__all__ = [
    "DEFAULT_MAX_CLASSES",
    "Vocab",
    "Interpretation",
    "SemFormula",
    "Theory",
    "FormulaSet",
    "Const",
    "Var",
    "Not",
    "And",
    "Or",
    "Implies",
    "Iff",
    "Formula",
    "FormulaSyntaxError",
    "UnknownSymbolError",
    "SizeGuardError",
    "VocabMismatchError",
    "parse_formula",
    "format_formula",
    "eval_formula",
    "sem",
    "closure",
    "entails",
    "is_complete",
    "entailed_classes",
    "is_closed",
    "enumerate_interpretations",
    "enumerate_semformulas",
    "enumerate_theories",
    "max_classes",
]

DEFAULT_MAX_CLASSES = 2**16
_CAP_ENV = "PREFENTAIL_MAX_CLASSES"


def max_classes() -> int:
    """Current size cap on the number of formula classes (``2**2**n``)."""
    raw = os.environ.get(_CAP_ENV)
    return int(raw) if raw else DEFAULT_MAX_CLASSES


class SizeGuardError(RuntimeError):
    """Raised when an exhaustive enumeration would exceed the size cap."""


class VocabMismatchError(ValueError):
    pass


class FormulaSyntaxError(ValueError):
    def __init__(self, message: str, position: int):
        super().__init__(f"{message} at position {position}")
        self.position = position


class UnknownSymbolError(ValueError):
    def __init__(self, symbol: str):
        super().__init__(f"unknown symbol {symbol!r}")
        self.symbol = symbol


_IDENT = re.compile(r"[A-Za-z_][A-Za-z0-9_]*\Z")
_RESERVED = {"true", "false"}


@dataclass(frozen=True)
class Vocab:
    symbols: tuple[str, ...]

    def __init__(self, symbols: Iterable[str]):
        syms = tuple(symbols)
        if not syms:
            raise ValueError("a vocabulary needs at least one symbol")
        if len(set(syms)) != len(syms):
            raise ValueError(f"duplicate symbols in {syms}")
        for s in syms:
            if not _IDENT.match(s) or s in _RESERVED:
                raise ValueError(f"invalid symbol name {s!r}")
        object.__setattr__(self, "symbols", syms)

    @property
    def n(self) -> int:
        return len(self.symbols)

    @property
    def n_interpretations(self) -> int:
        return 1 << self.n

    @property
    def n_classes(self) -> int:
        return 1 << self.n_interpretations

    @property
    def full(self) -> int:
        """Model-set mask of all interpretations."""
        return (1 << self.n_interpretations) - 1

    @property
    def all_classes(self) -> int:
        """Class-set mask containing every formula class."""
        return (1 << self.n_classes) - 1

    def index(self, symbol: str) -> int:
        try:
            return self.symbols.index(symbol)
        except ValueError:
            raise UnknownSymbolError(symbol) from None

    def var_mask(self, symbol: str) -> int:
        return _var_masks(self.n)[self.index(symbol)]

    def interp_bit(self, i: int) -> int:
        return 1 << (self.n_interpretations - 1 - i)

    def __str__(self) -> str:
        return " ".join(self.symbols)


@lru_cache(maxsize=None)
def _var_masks(n: int) -> tuple[int, ...]:
    N = 1 << n
    masks = []
    for j in range(n):
        m = 0
        for i in range(N):
            if (i >> (n - 1 - j)) & 1:
                m |= 1 << (N - 1 - i)
        masks.append(m)
    return tuple(masks)


def _check_vocab(a: Vocab, b: Vocab) -> None:
    if a != b:
        raise VocabMismatchError(f"vocabularies differ: [{a}] vs [{b}]")


# --------------------------------------------------------------------------
# Semantic objects


@dataclass(frozen=True)
class Interpretation:
    vocab: Vocab
    index: int

    @classmethod
    def from_true_set(cls, vocab: Vocab, true_set: Iterable[str]) -> "Interpretation":
        idx = 0
        for s in true_set:
            idx |= 1 << (vocab.n - 1 - vocab.index(s))
        return cls(vocab, idx)

    @property
    def true_set(self) -> frozenset[str]:
        n = self.vocab.n
        return frozenset(s for j, s in enumerate(self.vocab.symbols) if (self.index >> (n - 1 - j)) & 1)

    def is_true(self, symbol: str) -> bool:
        return bool((self.index >> (self.vocab.n - 1 - self.vocab.index(symbol))) & 1)

    @property
    def bit(self) -> int:
        return self.vocab.interp_bit(self.index)

    def __str__(self) -> str:
        return "{" + ",".join(sorted(self.true_set, key=self.vocab.index)) + "}"


def _members(vocab: Vocab, models: int) -> list[Interpretation]:
    N = vocab.n_interpretations
    return [Interpretation(vocab, i) for i in range(N) if (models >> (N - 1 - i)) & 1]


@lru_cache(maxsize=8)
def _short_forms(vocab: Vocab) -> dict[int, str]:
    """A short formula text for every model set, for vocabularies of size <= 3.

    Built by repeatedly combining the best known representatives with ``&``
    and ``|`` until no cost improves; cost counts literals and connectives.
    """
    full = vocab.full
    best: dict[int, tuple[int, str, str]] = {0: (1, "false", "atom"), full: (1, "true", "atom")}
    for sym in vocab.symbols:
        m = vocab.var_mask(sym)
        best.setdefault(m, (1, sym, "atom"))
        best.setdefault(full ^ m, (2, "~" + sym, "atom"))
    changed = True
    while changed:
        changed = False
        items = sorted(best.items())
        for i, (a, (ca, ta, oa)) in enumerate(items):
            for b, (cb, tb, ob) in items[i + 1:]:
                cost = ca + cb + 1
                for op, m in (("&", a & b), ("|", a | b)):
                    if m in best and best[m][0] <= cost:
                        continue
                    left = f"({ta})" if op == "&" and oa == "|" else ta
                    right = f"({tb})" if op == "&" and ob == "|" else tb
                    best[m] = (cost, f"{left} {op} {right}", op)
                    changed = True
    return {m: text for m, (_, text, _) in best.items()}


def _dnf(vocab: Vocab, models: int) -> str:
    if vocab.n <= 3:
        return _short_forms(vocab)[models]
    if models == 0:
        return "false"
    if models == vocab.full:
        return "true"
    terms = []
    for mu in _members(vocab, models):
        lits = [s if mu.is_true(s) else "~" + s for s in vocab.symbols]
        terms.append(" & ".join(lits))
    if len(terms) == 1:
        return terms[0]
    if vocab.n == 1:
        return " | ".join(terms)
    return " | ".join(f"({t})" for t in terms)


class _ModelSetMixin:
    vocab: Vocab
    models: int

    @property
    def bitstring(self) -> str:
        return format(self.models, f"0{self.vocab.n_interpretations}b")

    def interpretations(self) -> list[Interpretation]:
        return _members(self.vocab, self.models)

    def to_formula(self) -> str:
        """A DNF formula text with exactly this model set."""
        return _dnf(self.vocab, self.models)

    def __len__(self) -> int:
        return bin(self.models).count("1")


@dataclass(frozen=True)
class SemFormula(_ModelSetMixin):
    """A formula up to logical equivalence: its set of models."""

    vocab: Vocab
    models: int

    def __post_init__(self):
        if not 0 <= self.models <= self.vocab.full:
            raise ValueError("model mask out of range")

    @classmethod
    def parse(cls, vocab: Vocab, text: str) -> "SemFormula":
        return sem(parse_formula(text, vocab), vocab)

    @classmethod
    def from_bitstring(cls, vocab: Vocab, bits: str) -> "SemFormula":
        return cls(vocab, _parse_bits(vocab, bits))

    def __invert__(self) -> "SemFormula":
        return SemFormula(self.vocab, self.vocab.full ^ self.models)

    def __and__(self, other: "SemFormula") -> "SemFormula":
        _check_vocab(self.vocab, other.vocab)
        return SemFormula(self.vocab, self.models & other.models)

    def __or__(self, other: "SemFormula") -> "SemFormula":
        _check_vocab(self.vocab, other.vocab)
        return SemFormula(self.vocab, self.models | other.models)

    def __str__(self) -> str:
        return self.to_formula()


@dataclass(frozen=True)
class Theory(_ModelSetMixin):
    """A deductively closed formula set, stored as its model set.

    An empty model set is the inconsistent theory (every formula); the full
    model set is the theory of tautologies.  Containment of theories as
    formula sets is reverse containment of model sets.
    """

    vocab: Vocab
    models: int

    def __post_init__(self):
        if not 0 <= self.models <= self.vocab.full:
            raise ValueError("model mask out of range")

    @classmethod
    def inconsistent(cls, vocab: Vocab) -> "Theory":
        return cls(vocab, 0)

    @classmethod
    def tautologies(cls, vocab: Vocab) -> "Theory":
        return cls(vocab, vocab.full)

    @classmethod
    def parse(cls, vocab: Vocab, *texts: str) -> "Theory":
        """Theory axiomatized by the conjunction of the given formula texts."""
        m = vocab.full
        for t in texts:
            m &= sem(parse_formula(t, vocab), vocab).models
        return cls(vocab, m)

    @classmethod
    def from_bitstring(cls, vocab: Vocab, bits: str) -> "Theory":
        return cls(vocab, _parse_bits(vocab, bits))

    @property
    def is_inconsistent(self) -> bool:
        return self.models == 0

    def __contains__(self, f: SemFormula) -> bool:
        return entails(self, f)

    def issubset(self, other: "Theory") -> bool:
        """Formula-set containment (``self`` is weaker than ``other``)."""
        _check_vocab(self.vocab, other.vocab)
        return other.models & ~self.models == 0

    def as_formula_set(self) -> "FormulaSet":
        return entailed_classes(self)

    def __str__(self) -> str:
        return "L" if self.models == 0 else f"Th({self.to_formula()})"


def _parse_bits(vocab: Vocab, bits: str) -> int:
    if len(bits) != vocab.n_interpretations or set(bits) - {"0", "1"}:
        raise ValueError(f"expected a {vocab.n_interpretations}-bit string, got {bits!r}")
    return int(bits, 2)


@dataclass(frozen=True)
class FormulaSet:
    """A finite set of formula classes, not necessarily deductively closed."""

    vocab: Vocab
    classes: int

    def __post_init__(self):
        if not 0 <= self.classes <= self.vocab.all_classes:
            raise ValueError("class mask out of range")

    @classmethod
    def empty(cls, vocab: Vocab) -> "FormulaSet":
        return cls(vocab, 0)

    @classmethod
    def everything(cls, vocab: Vocab) -> "FormulaSet":
        """The whole language (all formula classes)."""
        return cls(vocab, vocab.all_classes)

    @classmethod
    def of(cls, vocab: Vocab, formulas: Iterable[Union[SemFormula, str]]) -> "FormulaSet":
        mask = 0
        for f in formulas:
            if isinstance(f, str):
                f = SemFormula.parse(vocab, f)
            _check_vocab(vocab, f.vocab)
            mask |= 1 << f.models
        return cls(vocab, mask)

    @property
    def is_everything(self) -> bool:
        return self.classes == self.vocab.all_classes

    def __contains__(self, f: SemFormula) -> bool:
        _check_vocab(self.vocab, f.vocab)
        return bool((self.classes >> f.models) & 1)

    def __iter__(self) -> Iterator[SemFormula]:
        for c in iter_bits(self.classes):
            yield SemFormula(self.vocab, c)

    def __len__(self) -> int:
        return bin(self.classes).count("1")

    def issubset(self, other: "FormulaSet") -> bool:
        _check_vocab(self.vocab, other.vocab)
        return self.classes & ~other.classes == 0

    def __or__(self, other: "FormulaSet") -> "FormulaSet":
        _check_vocab(self.vocab, other.vocab)
        return FormulaSet(self.vocab, self.classes | other.classes)

    def __and__(self, other: "FormulaSet") -> "FormulaSet":
        _check_vocab(self.vocab, other.vocab)
        return FormulaSet(self.vocab, self.classes & other.classes)

    def __str__(self) -> str:
        if self.is_everything:
            return "L"
        return "{" + ", ".join(f.to_formula() for f in self) + "}"


def iter_bits(mask: int) -> Iterator[int]:
    """Positions of set bits, ascending."""
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


# --------------------------------------------------------------------------
# Syntax


@dataclass(frozen=True)
class Const:
    value: bool


@dataclass(frozen=True)
class Var:
    name: str


@dataclass(frozen=True)
class Not:
    arg: "Formula"


@dataclass(frozen=True)
class And:
    left: "Formula"
    right: "Formula"


@dataclass(frozen=True)
class Or:
    left: "Formula"
    right: "Formula"


@dataclass(frozen=True)
class Implies:
    left: "Formula"
    right: "Formula"


@dataclass(frozen=True)
class Iff:
    left: "Formula"
    right: "Formula"


Formula = Union[Const, Var, Not, And, Or, Implies, Iff]

_TOKEN = re.compile(r"\s*(?:(<->)|(->)|([~&|()])|([A-Za-z_][A-Za-z0-9_]*))")

# binding power, right-associative?
_BINARY = {
    "&": (4, False, And),
    "|": (3, False, Or),
    "->": (2, True, Implies),
    "<->": (1, False, Iff),
}


def _tokenize(text: str) -> list[tuple[str, int]]:
    tokens = []
    pos = 0
    while pos < len(text):
        if text[pos].isspace():
            pos += 1
            continue
        m = _TOKEN.match(text, pos)
        if not m:
            raise FormulaSyntaxError(f"unexpected character {text[pos]!r}", pos)
        start = m.start(m.lastindex)
        tokens.append((m.group(m.lastindex), start))
        pos = m.end()
    tokens.append(("", len(text)))
    return tokens


class _Parser:
    def __init__(self, text: str, vocab: Vocab):
        self.tokens = _tokenize(text)
        self.i = 0
        self.vocab = vocab

    def peek(self) -> tuple[str, int]:
        return self.tokens[self.i]

    def advance(self) -> tuple[str, int]:
        tok = self.tokens[self.i]
        self.i += 1
        return tok

    def expr(self, min_bp: int = 0) -> Formula:
        left = self.unary()
        while True:
            tok, _ = self.peek()
            if tok not in _BINARY:
                return left
            bp, right_assoc, node = _BINARY[tok]
            if bp < min_bp:
                return left
            self.advance()
            right = self.expr(bp if right_assoc else bp + 1)
            left = node(left, right)

    def unary(self) -> Formula:
        tok, pos = self.advance()
        if tok == "~":
            return Not(self.unary())
        if tok == "(":
            inner = self.expr()
            close, cpos = self.advance()
            if close != ")":
                raise FormulaSyntaxError("expected ')'", cpos)
            return inner
        if tok == "true":
            return Const(True)
        if tok == "false":
            return Const(False)
        if tok and _IDENT.match(tok):
            if tok not in self.vocab.symbols:
                raise UnknownSymbolError(tok)
            return Var(tok)
        raise FormulaSyntaxError("unexpected end of input" if not tok else f"unexpected {tok!r}", pos)


def parse_formula(text: str, vocab: Vocab) -> Formula:
    """Parse ``text`` over ``vocab``.

    Operators, tightest first: ``~``, ``&``, ``|``, ``->`` (right
    associative), ``<->``.  Constants are ``true`` and ``false``.
    """
    p = _Parser(text, vocab)
    f = p.expr()
    tok, pos = p.peek()
    if tok:
        raise FormulaSyntaxError(f"unexpected {tok!r}", pos)
    return f


_PREC = {And: 4, Or: 3, Implies: 2, Iff: 1}
_OPS = {And: "&", Or: "|", Implies: "->", Iff: "<->"}


def format_formula(f: Formula) -> str:
    """Print with the minimal parentheses that parse back to the same tree."""
    if isinstance(f, Const):
        return "true" if f.value else "false"
    if isinstance(f, Var):
        return f.name
    if isinstance(f, Not):
        inner = format_formula(f.arg)
        if isinstance(f.arg, (Const, Var, Not)):
            return "~" + inner
        return f"~({inner})"
    prec = _PREC[type(f)]
    right_assoc = isinstance(f, Implies)
    left, right = format_formula(f.left), format_formula(f.right)
    lp = _PREC.get(type(f.left), 9)
    rp = _PREC.get(type(f.right), 9)
    if lp < prec or (lp == prec and right_assoc):
        left = f"({left})"
    if rp < prec or (rp == prec and not right_assoc):
        right = f"({right})"
    return f"{left} {_OPS[type(f)]} {right}"


def eval_formula(f: Formula, mu: Interpretation) -> bool:
    """Classical truth value of ``f`` under ``mu``."""
    if isinstance(f, Const):
        return f.value
    if isinstance(f, Var):
        return mu.is_true(f.name)
    if isinstance(f, Not):
        return not eval_formula(f.arg, mu)
    a = eval_formula(f.left, mu)
    b = eval_formula(f.right, mu)
    if isinstance(f, And):
        return a and b
    if isinstance(f, Or):
        return a or b
    if isinstance(f, Implies):
        return (not a) or b
    return a == b


def _models(f: Formula, vocab: Vocab) -> int:
    full = vocab.full
    if isinstance(f, Const):
        return full if f.value else 0
    if isinstance(f, Var):
        return vocab.var_mask(f.name)
    if isinstance(f, Not):
        return full ^ _models(f.arg, vocab)
    a = _models(f.left, vocab)
    b = _models(f.right, vocab)
    if isinstance(f, And):
        return a & b
    if isinstance(f, Or):
        return a | b
    if isinstance(f, Implies):
        return (full ^ a) | b
    return full ^ (a ^ b)


def sem(f: Formula, vocab: Vocab) -> SemFormula:
    """The equivalence class of ``f`` (its model set)."""
    return SemFormula(vocab, _models(f, vocab))


# --------------------------------------------------------------------------
# Closure and entailment


def closure_mask(classes: int, full: int) -> int:
    """Model set of ``Th(X)`` for a class mask ``X``."""
    if classes & 1:
        # the contradiction class is present
        return 0
    m = full
    for c in iter_bits(classes):
        m &= c
        if not m:
            break
    return m


def closure(ts: FormulaSet) -> Theory:
    return Theory(ts.vocab, closure_mask(ts.classes, ts.vocab.full))


def entails(t: Theory, f: SemFormula) -> bool:
    _check_vocab(t.vocab, f.vocab)
    return t.models & ~f.models == 0


def is_complete(t: Theory) -> bool:
    return len(t) == 1


@lru_cache(maxsize=4096)
def upset_mask(n_interp: int, models: int) -> int:
    """Class mask of every class whose model set contains ``models``."""
    n_cls = 1 << n_interp
    if n_cls <= 64:
        mask = 0
        for c in range(n_cls):
            if models & ~c == 0:
                mask |= 1 << c
        return mask
    cls = np.arange(n_cls, dtype=np.uint64)
    sel = (cls & np.uint64(models)) == np.uint64(models)
    return int.from_bytes(np.packbits(sel, bitorder="little").tobytes(), "little")


def entailed_classes(t: Theory) -> FormulaSet:
    """All formula classes entailed by ``t`` (``t`` as an explicit formula set)."""
    return FormulaSet(t.vocab, upset_mask(t.vocab.n_interpretations, t.models))


def is_closed(x: FormulaSet) -> bool:
    """Whether ``x`` is deductively closed, i.e. equals ``Th(x)``."""
    v = x.vocab
    return x.classes == upset_mask(v.n_interpretations, closure_mask(x.classes, v.full))


# --------------------------------------------------------------------------
# Vectorized helpers for n <= 2 (class masks fit in 16 bits)


def vectorizable(vocab: Vocab) -> bool:
    return vocab.n_classes <= 64


@lru_cache(maxsize=None)
def upset_table(n_interp: int) -> np.ndarray:
    """``table[t]`` is the class mask entailed by theory mask ``t``."""
    return np.array([upset_mask(n_interp, t) for t in range(1 << n_interp)], dtype=np.uint64)


@lru_cache(maxsize=None)
def _chunk_closures(n_classes: int, full: int) -> tuple[np.ndarray, ...]:
    # per byte of a class mask: the meet of the classes present in that byte
    tables = []
    for base in range(0, n_classes, 8):
        width = min(8, n_classes - base)
        tab = np.full(1 << width, full, dtype=np.uint64)
        for byte in range(1, 1 << width):
            low = byte & -byte
            tab[byte] = tab[byte ^ low] & np.uint64(base + low.bit_length() - 1)
        tables.append(tab)
    return tuple(tables)


def closure_many(xs: np.ndarray, vocab: Vocab) -> np.ndarray:
    """Vectorized :func:`closure_mask` over an array of class masks."""
    tables = _chunk_closures(vocab.n_classes, vocab.full)
    out = tables[0][(xs & np.uint64(len(tables[0]) - 1)).astype(np.intp)]
    for k, tab in enumerate(tables[1:], 1):
        out = out & tab[((xs >> np.uint64(8 * k)) & np.uint64(len(tab) - 1)).astype(np.intp)]
    return out


def all_class_sets(vocab: Vocab) -> np.ndarray:
    """Every class mask, ascending (only for vectorizable vocabularies)."""
    if not vectorizable(vocab):
        raise SizeGuardError("explicit enumeration of formula sets needs n <= 2")
    return np.arange(1 << vocab.n_classes, dtype=np.uint64)


# --------------------------------------------------------------------------
# Enumerators


def enumerate_interpretations(v: Vocab) -> Iterator[Interpretation]:
    for i in range(v.n_interpretations):
        yield Interpretation(v, i)


def _guard(v: Vocab) -> None:
    cap = max_classes()
    if v.n_interpretations >= 63 or v.n_classes > cap:
        raise SizeGuardError(
            f"{v.n} symbols give 2^{v.n_interpretations} formula classes, above the cap of {cap}"
        )


def enumerate_semformulas(v: Vocab) -> Iterator[SemFormula]:
    """All formula classes, ordered by characteristic bitstring."""
    _guard(v)
    for m in range(v.n_classes):
        yield SemFormula(v, m)


def enumerate_theories(v: Vocab) -> Iterator[Theory]:
    """All theories, ordered by model-set bitstring (``L`` first)."""
    _guard(v)
    for m in range(v.n_classes):
        yield Theory(v, m)
