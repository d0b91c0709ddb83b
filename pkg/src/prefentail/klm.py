"""KLM preferential models: labelled states plus a preference relation.

Labels are theories.  The preference relation is an arbitrary set of state
pairs ``(a, b)`` read as "a is preferred to b"; cycles and reflexive pairs are
taken literally, so a state with ``(s, s)`` is never minimal.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Mapping, Optional

from .logic import (
    SizeGuardError,
    Theory,
    Vocab,
    VocabMismatchError,
    iter_bits,
    max_classes,
)

__all__ = [
    "KlmModel",
    "KlmKind",
    "UnknownStateError",
    "klm_sat",
    "klm_states_of",
    "klm_minimal",
    "klm_entail",
    "classify",
    "theory_state_name",
]


class UnknownStateError(KeyError):
    pass


def theory_state_name(t: Theory) -> str:
    """Canonical state name for a theory in a simplified model."""
    return "T" + t.bitstring


@dataclass(frozen=True)
class KlmModel:
    vocab: Vocab
    states: tuple[str, ...]
    label: Mapping[str, Theory]
    pref: frozenset[tuple[str, str]] = field(default_factory=frozenset)

    def __init__(
        self,
        vocab: Vocab,
        states: Iterable[str],
        label: Mapping[str, Theory],
        pref: Iterable[tuple[str, str]] = (),
    ):
        states = tuple(states)
        if len(set(states)) != len(states):
            raise ValueError("duplicate state names")
        missing = [s for s in states if s not in label]
        if missing:
            raise ValueError(f"unlabelled states: {missing}")
        for s in states:
            if label[s].vocab != vocab:
                raise VocabMismatchError(f"label of {s} uses another vocabulary")
        pref = frozenset((a, b) for a, b in pref)
        known = set(states)
        for a, b in pref:
            if a not in known or b not in known:
                raise UnknownStateError(f"preference pair ({a}, {b}) names an unknown state")
        object.__setattr__(self, "vocab", vocab)
        object.__setattr__(self, "states", states)
        object.__setattr__(self, "label", {s: label[s] for s in states})
        object.__setattr__(self, "pref", pref)

    def __hash__(self):
        return hash((self.vocab, self.states, tuple(self.label[s].models for s in self.states), self.pref))

    def __eq__(self, other):
        if not isinstance(other, KlmModel):
            return NotImplemented
        return (
            self.vocab == other.vocab
            and self.states == other.states
            and all(self.label[s] == other.label[s] for s in self.states)
            and self.pref == other.pref
        )

    # index-based views used by the hot paths

    @cached_property
    def _pos(self) -> dict[str, int]:
        return {s: i for i, s in enumerate(self.states)}

    @cached_property
    def label_masks(self) -> tuple[int, ...]:
        return tuple(self.label[s].models for s in self.states)

    @cached_property
    def pred_masks(self) -> tuple[int, ...]:
        """``pred_masks[i]`` has bit ``j`` set when state ``j`` is preferred to state ``i``."""
        preds = [0] * len(self.states)
        for a, b in self.pref:
            preds[self._pos[b]] |= 1 << self._pos[a]
        return tuple(preds)

    def position(self, s: str) -> int:
        try:
            return self._pos[s]
        except KeyError:
            raise UnknownStateError(s) from None

    def satisfying_mask(self, t_models: int) -> int:
        """Bitmask of the state indices whose label entails the theory ``t_models``."""
        sm = 0
        for i, lab in enumerate(self.label_masks):
            if lab & ~t_models == 0:
                sm |= 1 << i
        return sm

    def minimal_mask(self, t_models: int) -> int:
        sm = self.satisfying_mask(t_models)
        preds = self.pred_masks
        return sum(1 << i for i in iter_bits(sm) if preds[i] & sm == 0)

    def entail_mask(self, t_models: int) -> int:
        out = 0
        labels = self.label_masks
        for i in iter_bits(self.minimal_mask(t_models)):
            out |= labels[i]
        return out

    def _names(self, mask: int) -> frozenset[str]:
        return frozenset(self.states[i] for i in iter_bits(mask))


def klm_sat(m: KlmModel, s: str, t: Theory) -> bool:
    """Whether state ``s`` satisfies ``t`` (its label entails ``t``)."""
    m.position(s)
    return m.label[s].models & ~t.models == 0


def klm_states_of(m: KlmModel, t: Theory) -> frozenset[str]:
    return m._names(m.satisfying_mask(t.models))


def klm_minimal(m: KlmModel, t: Theory) -> frozenset[str]:
    """States satisfying ``t`` with no preferred state that also satisfies ``t``."""
    return m._names(m.minimal_mask(t.models))


def klm_entail(m: KlmModel, t: Theory) -> Theory:
    """The KLM preferential consequence of ``t``.

    Its models are the union of the labels of the minimal satisfying states;
    with no minimal state the result is the inconsistent theory.
    """
    if t.vocab != m.vocab:
        raise VocabMismatchError("premise and model use different vocabularies")
    return Theory(m.vocab, m.entail_mask(t.models))


@dataclass(frozen=True)
class KlmKind:
    consistent_states: bool
    simplified: bool
    singular: bool
    strictly_singular: bool
    smooth: bool
    irreflexive: Optional[bool] = None
    transitive: Optional[bool] = None


def _is_identity_on(m: KlmModel, theories: list[int]) -> bool:
    expected = {"T" + format(t, f"0{m.vocab.n_interpretations}b"): t for t in theories}
    if set(m.states) != set(expected):
        return False
    return all(m.label[s].models == t for s, t in expected.items())


def is_smooth(m: KlmModel) -> bool:
    """Every non-minimal satisfying state has a minimal satisfying state below it, for every theory."""
    v = m.vocab
    if v.n_classes > max_classes():
        raise SizeGuardError("smoothness check enumerates all theories")
    preds = m.pred_masks
    seen = set()
    for t in range(v.n_classes):
        sm = m.satisfying_mask(t)
        if sm in seen:
            continue
        seen.add(sm)
        minimal = 0
        for i in iter_bits(sm):
            if preds[i] & sm == 0:
                minimal |= 1 << i
        for i in iter_bits(sm & ~minimal):
            if preds[i] & minimal == 0:
                return False
    return True


def classify(m: KlmModel, *, order_flags: bool = False) -> KlmKind:
    """Structural classification of a KLM model.

    ``strictly_singular`` uses the complete-theory reading: the states are
    exactly the canonical names of the complete theories, each labelled by
    the theory it names.  (A model whose states are all theories cannot have
    only complete labels, so "simplified and singular" taken literally is
    never satisfied.)
    """
    v = m.vocab
    labels = m.label_masks
    consistent = all(lab != 0 for lab in labels)
    singular = all(bin(lab).count("1") == 1 for lab in labels)
    simplified = len(m.states) == v.n_classes and _is_identity_on(m, list(range(v.n_classes)))
    complete = [1 << k for k in range(v.n_interpretations)]
    strictly = len(m.states) == len(complete) and _is_identity_on(m, complete)
    irreflexive = transitive = None
    if order_flags:
        irreflexive = all(a != b for a, b in m.pref)
        transitive = all((a, d) in m.pref for a, b in m.pref for c, d in m.pref if b == c)
    return KlmKind(
        consistent_states=consistent,
        simplified=simplified,
        singular=singular,
        strictly_singular=strictly,
        smooth=is_smooth(m),
        irreflexive=irreflexive,
        transitive=transitive,
    )
