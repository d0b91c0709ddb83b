"""MAK preferential models: states with an unconstrained satisfaction relation.

Each state carries the explicit set of formula classes it satisfies.  No
closure property is assumed, so a state may satisfy ``p & q`` without
satisfying ``p``.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Mapping

from .klm import UnknownStateError
from .logic import (
    FormulaSet,
    SizeGuardError,
    Vocab,
    VocabMismatchError,
    closure_mask,
    iter_bits,
    max_classes,
    upset_mask,
)

__all__ = [
    "MakModel",
    "MakKind",
    "mak_sat",
    "mak_minsat",
    "cn_state",
    "cn_entail",
    "mak_entail",
    "classify_mak",
]


@dataclass(frozen=True)
class MakModel:
    vocab: Vocab
    states: tuple[str, ...]
    sat: Mapping[str, FormulaSet]
    pref: frozenset[tuple[str, str]]

    def __init__(
        self,
        vocab: Vocab,
        states: Iterable[str],
        sat: Mapping[str, FormulaSet],
        pref: Iterable[tuple[str, str]] = (),
    ):
        states = tuple(states)
        if len(set(states)) != len(states):
            raise ValueError("duplicate state names")
        missing = [s for s in states if s not in sat]
        if missing:
            raise ValueError(f"states without a satisfaction set: {missing}")
        for s in states:
            if sat[s].vocab != vocab:
                raise VocabMismatchError(f"satisfaction set of {s} uses another vocabulary")
        pref = frozenset((a, b) for a, b in pref)
        known = set(states)
        for a, b in pref:
            if a not in known or b not in known:
                raise UnknownStateError(f"preference pair ({a}, {b}) names an unknown state")
        object.__setattr__(self, "vocab", vocab)
        object.__setattr__(self, "states", states)
        object.__setattr__(self, "sat", {s: sat[s] for s in states})
        object.__setattr__(self, "pref", pref)

    def __hash__(self):
        return hash((self.vocab, self.states, self.sat_masks, self.pref))

    def __eq__(self, other):
        if not isinstance(other, MakModel):
            return NotImplemented
        return (
            self.vocab == other.vocab
            and self.states == other.states
            and self.sat_masks == other.sat_masks
            and self.pref == other.pref
        )

    @cached_property
    def _pos(self) -> dict[str, int]:
        return {s: i for i, s in enumerate(self.states)}

    @cached_property
    def sat_masks(self) -> tuple[int, ...]:
        return tuple(self.sat[s].classes for s in self.states)

    @cached_property
    def pred_masks(self) -> tuple[int, ...]:
        preds = [0] * len(self.states)
        for a, b in self.pref:
            preds[self._pos[b]] |= 1 << self._pos[a]
        return tuple(preds)

    def position(self, s: str) -> int:
        try:
            return self._pos[s]
        except KeyError:
            raise UnknownStateError(s) from None

    def satisfying_mask(self, x: int) -> int:
        sm = 0
        for i, sat in enumerate(self.sat_masks):
            if x & ~sat == 0:
                sm |= 1 << i
        return sm

    def minimal_mask(self, x: int) -> int:
        sm = self.satisfying_mask(x)
        preds = self.pred_masks
        out = 0
        for i in iter_bits(sm):
            if preds[i] & sm == 0:
                out |= 1 << i
        return out

    def _meet(self, state_mask: int) -> int:
        out = self.vocab.all_classes
        sats = self.sat_masks
        for i in iter_bits(state_mask):
            out &= sats[i]
        return out

    def cn_mask(self, x: int) -> int:
        return self._meet(self.satisfying_mask(x))

    def entail_mask(self, x: int) -> int:
        return self._meet(self.minimal_mask(x))


def mak_sat(m: MakModel, s: str, x: FormulaSet) -> bool:
    """``s`` satisfies every class of ``x`` (plain membership, no closure)."""
    i = m.position(s)
    return x.classes & ~m.sat_masks[i] == 0


def mak_minsat(m: MakModel, s: str, x: FormulaSet) -> bool:
    """``s`` satisfies ``x`` and no state preferred to ``s`` does."""
    i = m.position(s)
    if x.classes & ~m.sat_masks[i]:
        return False
    return all(x.classes & ~m.sat_masks[j] for j in iter_bits(m.pred_masks[i]))


def cn_state(m: MakModel, s: str) -> FormulaSet:
    """The set of classes satisfied by ``s``."""
    m.position(s)
    return m.sat[s]


def cn_entail(m: MakModel, x: FormulaSet) -> FormulaSet:
    """Intersection of the satisfied sets of all states satisfying ``x``.

    The whole language when no state satisfies ``x``.
    """
    if x.vocab != m.vocab:
        raise VocabMismatchError("premises and model use different vocabularies")
    return FormulaSet(m.vocab, m.cn_mask(x.classes))


def mak_entail(m: MakModel, x: FormulaSet) -> FormulaSet:
    """The MAK preferential consequence: intersection over minimal satisfying states."""
    if x.vocab != m.vocab:
        raise VocabMismatchError("premises and model use different vocabularies")
    return FormulaSet(m.vocab, m.entail_mask(x.classes))


@dataclass(frozen=True)
class MakKind:
    supra_classical: bool
    classical: bool
    unicity_of_states: bool
    r_and: bool
    r_neg: bool
    r_or: bool


def _respects_and(sat: int, n_cls: int) -> bool:
    for f1 in range(n_cls):
        in1 = (sat >> f1) & 1
        for f2 in range(f1, n_cls):
            both = in1 & (sat >> f2) & 1
            if ((sat >> (f1 & f2)) & 1) != both:
                return False
    return True


def _respects_or(sat: int, n_cls: int) -> bool:
    for f1 in range(n_cls):
        in1 = (sat >> f1) & 1
        for f2 in range(f1, n_cls):
            either = in1 | ((sat >> f2) & 1)
            if ((sat >> (f1 | f2)) & 1) != either:
                return False
    return True


def _respects_neg(sat: int, n_cls: int, full: int) -> bool:
    return all(((sat >> f) & 1) != ((sat >> (full ^ f)) & 1) for f in range(n_cls))


def classify_mak(m: MakModel) -> MakKind:
    """Classify the satisfaction relation of ``m``.

    Every flag is computed from its own definition: ``supra_classical`` and
    ``classical`` compare each satisfied set with a deductive closure, while
    the three connector flags test membership over all class pairs.
    """
    v = m.vocab
    n_cls, n_int, full = v.n_classes, v.n_interpretations, v.full
    if n_cls * n_cls > max_classes() * 16:
        raise SizeGuardError("connector checks enumerate all pairs of formula classes")
    supra = classical = True
    r_and = r_neg = r_or = True
    for sat in m.sat_masks:
        th = closure_mask(sat, full)
        closed = sat == upset_mask(n_int, th)
        supra = supra and closed
        classical = classical and closed and bin(th).count("1") == 1
        r_and = r_and and _respects_and(sat, n_cls)
        r_neg = r_neg and _respects_neg(sat, n_cls, full)
        r_or = r_or and _respects_or(sat, n_cls)
    return MakKind(
        supra_classical=supra,
        classical=classical,
        unicity_of_states=len(set(m.sat_masks)) == len(m.sat_masks),
        r_and=r_and,
        r_neg=r_neg,
        r_or=r_or,
    )
