"""Passages between KLM models, MAK models and pre-circumscription tables."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional, Union

from .klm import KlmModel, theory_state_name
from .logic import (
    FormulaSet,
    SemFormula,
    SizeGuardError,
    Theory,
    Vocab,
    closure,
    closure_mask,
    iter_bits,
    max_classes,
    upset_mask,
)
from .mak import MakModel

__all__ = [
    "PrecircTable",
    "TranslationReport",
    "NotSupraClassicalError",
    "NotCumulativeError",
    "ConstructionMismatchError",
    "klm_to_mak",
    "mak_to_klm",
    "tabulate",
    "preferred_by_table",
    "precirc_to_simplified_klm",
    "compare_tables",
    "validate_translation",
]


class NotSupraClassicalError(ValueError):
    def __init__(self, state: str, missing: SemFormula):
        super().__init__(
            f"state {state} is not deductively closed: it entails {missing.to_formula()} "
            f"[{missing.bitstring}] without satisfying it"
        )
        self.state = state
        self.missing = missing


class NotCumulativeError(ValueError):
    def __init__(self, rule: str, witness: dict):
        detail = ", ".join(f"{k}={v}" for k, v in witness.items())
        super().__init__(f"table violates {rule}: {detail}")
        self.rule = rule
        self.witness = witness


class ConstructionMismatchError(RuntimeError):
    def __init__(self, report: "TranslationReport"):
        super().__init__(f"constructed model disagrees with the table at {report.mismatch_witness}")
        self.report = report


@dataclass(frozen=True)
class PrecircTable:
    """A total map from theories to theories, indexed by theory model mask."""

    vocab: Vocab
    map: tuple[int, ...]

    def __post_init__(self):
        if len(self.map) != self.vocab.n_classes:
            raise ValueError(f"a table over {self.vocab.n} symbols needs {self.vocab.n_classes} entries")
        full = self.vocab.full
        if any(not 0 <= t <= full for t in self.map):
            raise ValueError("table entry out of range")

    def __call__(self, t: Theory) -> Theory:
        return Theory(self.vocab, self.map[t.models])

    def items(self):
        for t, out in enumerate(self.map):
            yield Theory(self.vocab, t), Theory(self.vocab, out)

    @property
    def is_extensive(self) -> bool:
        return all(out & ~t == 0 for t, out in enumerate(self.map))

    @property
    def range(self) -> frozenset[int]:
        return frozenset(self.map)

    @classmethod
    def identity(cls, vocab: Vocab) -> "PrecircTable":
        return cls(vocab, tuple(range(vocab.n_classes)))


@dataclass(frozen=True)
class TranslationReport:
    source_kind: str
    target_kind: str
    validated: bool
    mismatch_witness: Optional[Theory] = None


def _guard(v: Vocab) -> None:
    if v.n_classes > max_classes():
        raise SizeGuardError(f"tabulating {v.n_classes} theories exceeds the cap")


def klm_to_mak(m: KlmModel) -> MakModel:
    """Same states and preference; a state satisfies what its label entails."""
    v = m.vocab
    sat = {s: FormulaSet(v, upset_mask(v.n_interpretations, m.label[s].models)) for s in m.states}
    return MakModel(v, m.states, sat, m.pref)


def _first_unclosed(m: MakModel) -> Optional[tuple[str, SemFormula]]:
    v = m.vocab
    for s, sat in zip(m.states, m.sat_masks):
        closed = upset_mask(v.n_interpretations, closure_mask(sat, v.full))
        missing = closed & ~sat
        if missing:
            return s, SemFormula(v, next(iter_bits(missing)))
    return None


def mak_to_klm(m: MakModel) -> KlmModel:
    """Label each state with the theory it satisfies; needs a supra-classical model."""
    bad = _first_unclosed(m)
    if bad is not None:
        raise NotSupraClassicalError(*bad)
    return KlmModel(m.vocab, m.states, {s: closure(m.sat[s]) for s in m.states}, m.pref)


def tabulate(source: Union[KlmModel, MakModel], *, require_supra: bool = True) -> PrecircTable:
    """The entailment of ``source`` on every theory.

    For a MAK model each theory is fed in as its full set of entailed classes
    and the output is read back through its deductive closure, which is exact
    when the model is supra classical.  ``require_supra=False`` skips that
    precondition (used for MAK entailments already known to respect logical
    equivalence).
    """
    v = source.vocab
    _guard(v)
    if isinstance(source, KlmModel):
        return PrecircTable(v, tuple(source.entail_mask(t) for t in range(v.n_classes)))
    if require_supra:
        bad = _first_unclosed(source)
        if bad is not None:
            raise NotSupraClassicalError(*bad)
    n_int, full = v.n_interpretations, v.full
    return PrecircTable(
        v,
        tuple(closure_mask(source.entail_mask(upset_mask(n_int, t)), full) for t in range(v.n_classes)),
    )


def compare_tables(a: PrecircTable, b: PrecircTable) -> Optional[Theory]:
    """First theory (canonical order) where the two tables differ."""
    for t, (x, y) in enumerate(zip(a.map, b.map)):
        if x != y:
            return Theory(a.vocab, t)
    return None


def preferred_by_table(f: PrecircTable) -> frozenset[tuple[int, int]]:
    """The preference between theories induced by a table, as model-mask pairs.

    ``(t1, t2)`` is included when either ``t1`` is the inconsistent theory
    and ``t2`` is not a value of the table, or ``t2`` is consistent, differs
    from ``t1``, and ``t1 = f(t3)``, ``t2 = f(t4)`` for some ``t3, t4`` with
    ``t3`` contained in ``t2`` as a formula set.
    """
    pre: dict[int, list[int]] = {}
    for t, out in enumerate(f.map):
        pre.setdefault(out, []).append(t)
    values = sorted(pre)
    pairs = set()
    for t2 in range(f.vocab.n_classes):
        if t2 not in pre:
            pairs.add((0, t2))
    for t2 in values:
        if t2 == 0:
            continue
        for t1 in values:
            if t1 == t2:
                continue
            # t3 is contained in t2 as a formula set iff models(t2) is within models(t3)
            if any(t2 & ~t3 == 0 for t3 in pre[t1]):
                pairs.add((t1, t2))
    return frozenset(pairs)


def _check_cumulative(f: PrecircTable) -> None:
    # local import: checks depends on this module
    from .checks import check_cm, check_ct, table_oracle

    if not f.is_extensive:
        t = next(t for t, out in enumerate(f.map) if out & ~t)
        raise NotCumulativeError(
            "extensivity",
            {"T": Theory(f.vocab, t).bitstring, "f(T)": Theory(f.vocab, f.map[t]).bitstring},
        )
    oracle = table_oracle(f)
    for check in (check_ct, check_cm):
        rep = check(oracle)
        if rep.verdict == "fails":
            raise NotCumulativeError(rep.property, rep.witness)


def precirc_to_simplified_klm(f: PrecircTable, *, experimental: bool = False) -> KlmModel:
    """Build a simplified KLM model whose entailment is the table ``f``.

    The states are all theories (named by :func:`theory_state_name`), each
    labelled by itself, ordered by :func:`preferred_by_table`.  ``f`` must be
    cumulative; ``experimental=True`` skips that precondition and runs the
    construction anyway.  The result is always re-tabulated and compared with
    ``f``; a disagreement raises :class:`ConstructionMismatchError`.
    """
    v = f.vocab
    _guard(v)
    if not experimental:
        _check_cumulative(f)
    names = {t: theory_state_name(Theory(v, t)) for t in range(v.n_classes)}
    model = KlmModel(
        v,
        [names[t] for t in range(v.n_classes)],
        {names[t]: Theory(v, t) for t in range(v.n_classes)},
        [(names[a], names[b]) for a, b in sorted(preferred_by_table(f))],
    )
    mismatch = compare_tables(tabulate(model), f)
    if mismatch is not None:
        raise ConstructionMismatchError(TranslationReport("table", "klm-simplified", False, mismatch))
    return model


def validate_translation(source: Union[KlmModel, MakModel], target: Union[KlmModel, MakModel]) -> TranslationReport:
    """Compare two models' entailments on every theory."""
    kind = lambda m: "klm" if isinstance(m, KlmModel) else "mak"  # noqa: E731
    v = source.vocab
    _guard(v)
    n_int = v.n_interpretations

    def outputs(m):
        if isinstance(m, KlmModel):
            return [upset_mask(n_int, m.entail_mask(t)) for t in range(v.n_classes)]
        return [m.entail_mask(upset_mask(n_int, t)) for t in range(v.n_classes)]

    for t, (a, b) in enumerate(zip(outputs(source), outputs(target))):
        if a != b:
            return TranslationReport(kind(source), kind(target), False, Theory(v, t))
    return TranslationReport(kind(source), kind(target), True)

