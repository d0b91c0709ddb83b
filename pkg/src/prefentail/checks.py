"""Property checkers for entailment operators.

An :class:`EntailOracle` wraps a consequence operator on formula sets.  Each
``check_*`` function returns a :class:`CheckReport` whose verdict is

* ``"holds"`` when the whole quantifier domain was enumerated,
* ``"holds-on-sample"`` when only a seeded random sample was tried,
* ``"fails"`` with a witness that :func:`replay` can re-verify.

Theory-respecting oracles (tables, KLM entailments, classical consequence)
are checked exhaustively over theories.  Raw oracles (MAK entailments) are
checked over every formula set when the vocabulary has at most two symbols,
and by sampling otherwise.
"""

from __future__ import annotations

import json
import random
from dataclasses import dataclass, field
from typing import Callable, Optional

import numpy as np

from .klm import KlmModel
from .logic import (
    FormulaSet,
    SemFormula,
    Theory,
    Vocab,
    VocabMismatchError,
    all_class_sets,
    closure_many,
    closure_mask,
    iter_bits,
    max_classes,
    upset_mask,
    upset_table,
    vectorizable,
)
from .mak import MakModel
from .translate import PrecircTable

__all__ = [
    "EntailOracle",
    "CheckReport",
    "table_oracle",
    "klm_oracle",
    "mak_oracle",
    "cn_oracle",
    "classical_oracle",
    "check_tarski",
    "TARSKI_RULES",
    "sample_premises",
    "check_ct",
    "check_cm",
    "check_precirc",
    "check_supra_entail",
    "check_equal",
    "replay",
    "fs_to_str",
    "fs_from_str",
]

HOLDS, FAILS, SAMPLED = "holds", "fails", "holds-on-sample"


@dataclass(frozen=True)
class EntailOracle:
    """A consequence operator over the formula sets of ``vocab``.

    ``fn`` maps a class mask to a class mask.  A ``"theory"`` oracle also
    exposes ``theory_fn`` on theory model masks and its ``fn`` factors
    through deductive closure.  ``batch`` optionally evaluates ``fn`` on a
    numpy array of class masks.  ``hints`` are class masks that the sampler
    draws premise subsets from, so sampled premises are actually satisfied
    by some state.
    """

    vocab: Vocab
    fn: Callable[[int], int]
    domain_kind: str = "raw"
    theory_fn: Optional[Callable[[int], int]] = None
    batch: Optional[Callable[[np.ndarray], np.ndarray]] = None
    hints: tuple[int, ...] = ()
    name: str = "oracle"

    def __post_init__(self):
        if self.domain_kind not in ("raw", "theory"):
            raise ValueError("domain_kind must be 'raw' or 'theory'")
        if self.domain_kind == "theory" and self.theory_fn is None:
            raise ValueError("a theory-respecting oracle needs theory_fn")

    def __call__(self, x: FormulaSet) -> FormulaSet:
        if x.vocab != self.vocab:
            raise VocabMismatchError("premises use another vocabulary")
        return FormulaSet(self.vocab, self.fn(x.classes))

    def on_theory(self, t: Theory) -> Theory:
        if self.theory_fn is None:
            raise TypeError(f"{self.name} is not theory-respecting")
        return Theory(self.vocab, self.theory_fn(t.models))

    def many(self, xs: np.ndarray) -> np.ndarray:
        if self.batch is not None:
            return self.batch(xs)
        return np.array([self.fn(int(x)) for x in xs], dtype=np.uint64)

    @classmethod
    def from_callable(cls, vocab: Vocab, func: Callable[[FormulaSet], FormulaSet], name: str = "callable"):
        return cls(vocab, lambda x: func(FormulaSet(vocab, x)).classes, name=name)


# --------------------------------------------------------------------------
# Oracle constructors


def _theory_oracle(vocab: Vocab, theory_fn, name: str, batch_theory=None) -> EntailOracle:
    n_int, full = vocab.n_interpretations, vocab.full

    def fn(x: int) -> int:
        return upset_mask(n_int, theory_fn(closure_mask(x, full)))

    batch = None
    if vectorizable(vocab):
        up = upset_table(n_int)
        tf = batch_theory or np.array([theory_fn(t) for t in range(vocab.n_classes)], dtype=np.uint64)

        def batch_fn(xs: np.ndarray) -> np.ndarray:
            return up[tf[closure_many(xs, vocab)]]

        batch = batch_fn

    return EntailOracle(vocab, fn, "theory", theory_fn, batch, (), name)


def table_oracle(f: PrecircTable) -> EntailOracle:
    table = f.map
    return _theory_oracle(f.vocab, lambda t: table[t], "table")


def classical_oracle(vocab: Vocab) -> EntailOracle:
    """Classical consequence ``Th``."""
    return _theory_oracle(vocab, lambda t: t, "Th")


def klm_oracle(m: KlmModel) -> EntailOracle:
    """KLM entailment, evaluated directly from the labels on every call."""
    v = m.vocab
    o = _theory_oracle(v, m.entail_mask, "klm")
    if not vectorizable(v):
        return o
    labels = [np.uint64(lab) for lab in m.label_masks]
    preds = m.pred_masks
    up = upset_table(v.n_interpretations)

    def batch(xs: np.ndarray) -> np.ndarray:
        cl = closure_many(xs, v)
        ins = [(lab & ~cl) == 0 for lab in labels]
        out = np.zeros(xs.shape, dtype=np.uint64)
        for i, lab in enumerate(labels):
            minimal = ins[i].copy()
            for j in iter_bits(preds[i]):
                minimal &= ~ins[j]
            out = np.where(minimal, out | lab, out)
        return up[out]

    return EntailOracle(v, o.fn, "theory", m.entail_mask, batch, (), "klm")


def _state_oracle(m: MakModel, minimal: bool, name: str) -> EntailOracle:
    v = m.vocab
    fn = m.entail_mask if minimal else m.cn_mask
    batch = None
    if vectorizable(v):
        sats = [np.uint64(s) for s in m.sat_masks]
        preds = m.pred_masks
        everything = np.uint64(v.all_classes)

        def batch_fn(xs: np.ndarray) -> np.ndarray:
            ins = [(xs & ~s) == 0 for s in sats]
            out = np.full(xs.shape, everything, dtype=np.uint64)
            for i, s in enumerate(sats):
                keep = ins[i]
                if minimal:
                    keep = keep.copy()
                    for j in iter_bits(preds[i]):
                        keep &= ~ins[j]
                out = np.where(keep, out & s, out)
            return out

        batch = batch_fn

    return EntailOracle(v, fn, "raw", None, batch, tuple(m.sat_masks), name)


def mak_oracle(m: MakModel) -> EntailOracle:
    return _state_oracle(m, True, "mak")


def cn_oracle(m: MakModel) -> EntailOracle:
    return _state_oracle(m, False, "cn")


# --------------------------------------------------------------------------
# Reports


def fs_to_str(vocab: Vocab, classes: int) -> str:
    if classes == vocab.all_classes:
        return "*"
    width = vocab.n_interpretations
    return "{" + ",".join(format(c, f"0{width}b") for c in iter_bits(classes)) + "}"


def fs_from_str(vocab: Vocab, text: str) -> int:
    text = text.strip()
    if text == "*":
        return vocab.all_classes
    body = text.strip("{}").strip()
    mask = 0
    for part in filter(None, (p.strip() for p in body.split(","))):
        mask |= 1 << SemFormula.from_bitstring(vocab, part).models
    return mask


def _th(vocab: Vocab, t: int) -> str:
    return format(t, f"0{vocab.n_interpretations}b")


@dataclass(frozen=True)
class CheckReport:
    property: str
    verdict: str
    witness: Optional[dict] = None
    trials: int = 0
    seed: Optional[int] = None
    coverage: str = "exhaustive"
    failed_rules: tuple[str, ...] = field(default=())
    witnesses: tuple[dict, ...] = field(default=())

    def witness_for(self, rule: str) -> Optional[dict]:
        return next((w for w in self.witnesses if w["rule"] == rule), None)

    @property
    def ok(self) -> bool:
        return self.verdict != FAILS

    def to_dict(self) -> dict:
        return {
            "property": self.property,
            "verdict": self.verdict,
            "coverage": self.coverage,
            "trials": self.trials,
            "seed": self.seed,
            "failed_rules": list(self.failed_rules),
            "witness": self.witness,
            "witnesses": list(self.witnesses),
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True)

    def to_text(self) -> str:
        lines = [
            f"property: {self.property}",
            f"verdict: {self.verdict}",
            f"coverage: {self.coverage}",
            f"trials: {self.trials}",
            f"seed: {self.seed}",
        ]
        if self.failed_rules:
            lines.append("failed: " + ", ".join(self.failed_rules))
        for w in self.witnesses:
            prefix = f"witness[{w['rule']}]"
            lines += [f"{prefix}.{k}: {val}" for k, val in sorted(w.items()) if k != "rule"]
        return "\n".join(lines)


class _Result:
    """Accumulates rule failures; the first witness per rule wins."""

    def __init__(self, only: Optional[tuple[str, ...]] = None):
        self.only = only
        self.failed: list[str] = []
        self.witnesses: list[dict] = []
        self.count = 0

    def fail(self, rule: str, witness: dict) -> None:
        if rule in self.failed or (self.only is not None and rule not in self.only):
            return
        self.failed.append(rule)
        self.witnesses.append({"rule": rule, **witness})

    def report(self, prop: str, exhaustive: bool, seed, coverage: str) -> CheckReport:
        if self.failed:
            verdict = FAILS
        else:
            verdict = HOLDS if exhaustive else SAMPLED
        first = self.witnesses[0] if self.witnesses else None
        return CheckReport(prop, verdict, first, self.count, seed, coverage, tuple(self.failed), tuple(self.witnesses))


# --------------------------------------------------------------------------
# Sampling


class _Sampler:
    def __init__(self, oracle: EntailOracle, seed: int):
        self.rng = random.Random(f"premises:{seed}")
        self.v = oracle.vocab
        self.hints = oracle.hints

    def submask(self, y: int) -> int:
        return y & self.rng.getrandbits(self.v.n_classes)

    def premise(self) -> int:
        if self.hints and self.rng.random() < 0.5:
            return self.submask(self.rng.choice(self.hints))
        k = self.rng.choice((0, 1, 1, 2, 2, 3))
        mask = 0
        for _ in range(k):
            mask |= 1 << self.rng.randrange(self.v.n_classes)
        return mask


def sample_premises(o: EntailOracle, k: int, seed: int = 0) -> list[FormulaSet]:
    """``k`` premise sets drawn the way the sampled checks draw them."""
    sampler = _Sampler(o, seed)
    return [FormulaSet(o.vocab, sampler.premise()) for _ in range(k)]


def _exhaustive_sets(o: EntailOracle, exhaustive: Optional[bool]) -> bool:
    if exhaustive is False:
        return False
    ok = vectorizable(o.vocab) and o.vocab.n_classes <= 16 and (1 << o.vocab.n_classes) <= max_classes()
    if exhaustive and not ok:
        raise ValueError("exhaustive enumeration of formula sets needs n <= 2 and a sufficient cap")
    return ok


def _first(mask: np.ndarray) -> Optional[int]:
    idx = np.flatnonzero(mask)
    return int(idx[0]) if idx.size else None


def _theory_pairs_ok(v: Vocab) -> bool:
    return v.n_classes * v.n_classes <= max_classes() * 16


# --------------------------------------------------------------------------
# Checks


TARSKI_RULES = ("extensive", "idempotent", "monotone")


def check_tarski(
    o: EntailOracle,
    *,
    trials: int = 100,
    seed: int = 0,
    exhaustive: Optional[bool] = None,
    rules: tuple[str, ...] = TARSKI_RULES,
) -> CheckReport:
    """Extensivity, idempotence and monotony.

    ``rules`` restricts the verdict to a subset of the three axioms; the
    report is then named after the rules checked.
    """
    unknown = set(rules) - set(TARSKI_RULES)
    if unknown or not rules:
        raise ValueError(f"rules must be drawn from {TARSKI_RULES}")
    prop = "tarski" if set(rules) == set(TARSKI_RULES) else "+".join(r for r in TARSKI_RULES if r in rules)
    v = o.vocab
    res = _Result(tuple(rules))
    if o.domain_kind == "theory" and exhaustive is not False and _theory_pairs_ok(v):
        f = o.theory_fn
        outs = [f(t) for t in range(v.n_classes)]
        for t, out in enumerate(outs):
            res.count += 1
            if out & ~t:
                res.fail("extensive", {"T": _th(v, t), "C(T)": _th(v, out)})
            if f(out) != out:
                res.fail("idempotent", {"T": _th(v, t), "C(T)": _th(v, out), "C(C(T))": _th(v, f(out))})
        for t in range(v.n_classes):
            for t2 in range(v.n_classes):
                # t is contained in t2 as a formula set
                if t2 & ~t:
                    continue
                res.count += 1
                if outs[t2] & ~outs[t]:
                    res.fail("monotone", {"T": _th(v, t), "T2": _th(v, t2), "C(T)": _th(v, outs[t]), "C(T2)": _th(v, outs[t2])})
        return res.report(prop, True, seed, "theories")

    sampler = _Sampler(o, seed)
    enumerated = False
    if not {"extensive", "idempotent"} & set(rules):
        pass
    elif _exhaustive_sets(o, exhaustive):
        enumerated = True
        xs = all_class_sets(v)
        ys = o.many(xs)
        yys = o.many(ys)
        res.count += len(xs)
        bad = _first((xs & ~ys) != 0)
        if bad is not None:
            res.fail("extensive", {"X": fs_to_str(v, bad), "C(X)": fs_to_str(v, int(ys[bad]))})
        bad = _first(yys != ys)
        if bad is not None:
            res.fail("idempotent", {"X": fs_to_str(v, bad), "C(X)": fs_to_str(v, int(ys[bad])), "C(C(X))": fs_to_str(v, int(yys[bad]))})
    else:
        for _ in range(trials):
            x = sampler.premise()
            y = o.fn(x)
            res.count += 1
            if x & ~y:
                res.fail("extensive", {"X": fs_to_str(v, x), "C(X)": fs_to_str(v, y)})
            yy = o.fn(y)
            if yy != y:
                res.fail("idempotent", {"X": fs_to_str(v, x), "C(X)": fs_to_str(v, y), "C(C(X))": fs_to_str(v, yy)})
    for _ in range(trials if "monotone" in rules else 0):
        big = sampler.premise()
        small = sampler.submask(big)
        res.count += 1
        a, b = o.fn(small), o.fn(big)
        if a & ~b:
            res.fail("monotone", {"X": fs_to_str(v, small), "Y": fs_to_str(v, big), "C(X)": fs_to_str(v, a), "C(Y)": fs_to_str(v, b)})
    if enumerated and "monotone" not in rules:
        return res.report(prop, True, seed, "all formula sets")
    return res.report(prop, False, seed, "sampled")


def _interval_count(o: EntailOracle) -> int:
    f = o.theory_fn
    total = 0
    for t in range(o.vocab.n_classes):
        free = t & ~(f(t) & t)
        total += 1 << bin(free).count("1")
    return total


def _cumulative(o: EntailOracle, rule: str, *, trials: int, subsets: int, seed: int, exhaustive: Optional[bool]) -> CheckReport:
    """Shared driver for (CT) and (CM).

    For theory oracles: adding premises ``T'`` entailed by ``C(T)`` to ``T``
    yields exactly the theories whose models lie between those of
    ``C(T) & T`` and those of ``T``, so both rules are checked on that
    interval.
    """
    v = o.vocab
    res = _Result()
    ct = rule == "ct"

    def violated(c_small: int, c_big: int) -> bool:
        # c_small = C(T), c_big = C(T u T') as model masks (theory) or class masks (raw)
        return bool(c_small & ~c_big) if ct else bool(c_big & ~c_small)

    if o.domain_kind == "theory" and exhaustive is not False and v.n_classes <= max_classes() and _interval_count(o) <= max_classes():
        f = o.theory_fn
        for t in range(v.n_classes):
            ft = f(t)
            low = ft & t
            free = t & ~low
            sub = free
            while True:
                t2 = low | sub
                res.count += 1
                f2 = f(t2)
                # theory masks: formula-set containment C(T2) within C(T) is models(C(T)) within models(C(T2))
                if violated(ft, f2):
                    res.fail(rule, {"T": _th(v, t), "T2": _th(v, t2), "C(T)": _th(v, ft), "C(T2)": _th(v, f2)})
                if sub == 0:
                    break
                sub = (sub - 1) & free
        return res.report(rule, True, seed, "theories")

    if o.domain_kind == "theory":
        rng = random.Random(f"{rule}:{seed}")
        f = o.theory_fn
        for _ in range(trials):
            t = rng.randrange(v.n_classes)
            ft = f(t)
            low = ft & t
            for _ in range(subsets):
                t2 = low | (t & rng.getrandbits(v.n_interpretations))
                res.count += 1
                f2 = f(t2)
                if violated(ft, f2):
                    res.fail(rule, {"T": _th(v, t), "T2": _th(v, t2), "C(T)": _th(v, ft), "C(T2)": _th(v, f2)})
        return res.report(rule, False, seed, "sampled")

    sampler = _Sampler(o, seed)
    for _ in range(trials):
        x = sampler.premise()
        y = o.fn(x)
        for _ in range(subsets):
            extra = sampler.submask(y)
            res.count += 1
            z = o.fn(x | extra)
            # class masks: the violation direction is mirrored
            if (ct and z & ~y) or (not ct and y & ~z):
                res.fail(rule, {"X": fs_to_str(v, x), "X2": fs_to_str(v, extra), "C(X)": fs_to_str(v, y), "C(X+X2)": fs_to_str(v, z)})
    return res.report(rule, False, seed, "sampled")


def check_ct(o: EntailOracle, *, trials: int = 100, subsets: int = 50, seed: int = 0, exhaustive: Optional[bool] = None) -> CheckReport:
    """Cumulative transitivity: ``T' within C(T)`` implies ``C(T u T') within C(T)``."""
    return _cumulative(o, "ct", trials=trials, subsets=subsets, seed=seed, exhaustive=exhaustive)


def check_cm(o: EntailOracle, *, trials: int = 100, subsets: int = 50, seed: int = 0, exhaustive: Optional[bool] = None) -> CheckReport:
    """Cumulative monotony: ``T' within C(T)`` implies ``C(T) within C(T u T')``."""
    return _cumulative(o, "cm", trials=trials, subsets=subsets, seed=seed, exhaustive=exhaustive)


def _theory_reps(v: Vocab) -> list[int]:
    if v.n_classes > max_classes():
        return []
    return [upset_mask(v.n_interpretations, t) for t in range(v.n_classes)]


def check_precirc(o: EntailOracle, *, trials: int = 200, seed: int = 0, exhaustive: Optional[bool] = None) -> CheckReport:
    """Pre-circumscription: extensive, closed outputs, equal outputs on equivalent inputs.

    Each premise set is compared with the deductive closure of itself, which
    is the canonical member of its equivalence class, so the left side is
    checked exactly on every enumerated set.
    """
    v = o.vocab
    n_int, full = v.n_interpretations, v.full
    res = _Result()
    if _exhaustive_sets(o, exhaustive):
        up = upset_table(n_int)
        xs = all_class_sets(v)
        ys = o.many(xs)
        reps = up[closure_many(xs, v)]
        rep_out = o.many(reps)
        res.count += len(xs)
        bad = _first((xs & ~ys) != 0)
        if bad is not None:
            res.fail("extensive", {"X": fs_to_str(v, bad), "C(X)": fs_to_str(v, int(ys[bad]))})
        bad = _first(up[closure_many(ys, v)] != ys)
        if bad is not None:
            res.fail("right-side", {"X": fs_to_str(v, bad), "C(X)": fs_to_str(v, int(ys[bad]))})
        bad = _first(rep_out != ys)
        if bad is not None:
            res.fail("left-side", {"X1": fs_to_str(v, bad), "X2": fs_to_str(v, int(reps[bad])), "C(X1)": fs_to_str(v, int(ys[bad])), "C(X2)": fs_to_str(v, int(rep_out[bad]))})
        return res.report("precirc", True, seed, "all formula sets")

    sampler = _Sampler(o, seed)
    xs = _theory_reps(v) + [sampler.premise() for _ in range(trials)]
    for x in xs:
        res.count += 1
        y = o.fn(x)
        if x & ~y:
            res.fail("extensive", {"X": fs_to_str(v, x), "C(X)": fs_to_str(v, y)})
        if upset_mask(n_int, closure_mask(y, full)) != y:
            res.fail("right-side", {"X": fs_to_str(v, x), "C(X)": fs_to_str(v, y)})
        rep = upset_mask(n_int, closure_mask(x, full))
        yr = o.fn(rep)
        if yr != y:
            res.fail("left-side", {"X1": fs_to_str(v, x), "X2": fs_to_str(v, rep), "C(X1)": fs_to_str(v, y), "C(X2)": fs_to_str(v, yr)})
    # a theory oracle factors through closure, so the theories cover it exactly
    complete = o.domain_kind == "theory" and bool(_theory_reps(v))
    return res.report("precirc", complete, seed, "theories" if complete else "sampled")


def check_supra_entail(o: EntailOracle, *, trials: int = 200, seed: int = 0, exhaustive: Optional[bool] = None) -> CheckReport:
    """Supra classicality: every classical consequence of ``X`` is in ``C(X)``."""
    v = o.vocab
    n_int, full = v.n_interpretations, v.full
    res = _Result()

    def witness(x: int, y: int) -> dict:
        missing = upset_mask(n_int, closure_mask(x, full)) & ~y
        return {"X": fs_to_str(v, x), "phi": format(next(iter_bits(missing)), f"0{n_int}b"), "C(X)": fs_to_str(v, y)}

    if _exhaustive_sets(o, exhaustive):
        xs = all_class_sets(v)
        ys = o.many(xs)
        th = upset_table(n_int)[closure_many(xs, v)]
        res.count += len(xs)
        bad = _first((th & ~ys) != 0)
        if bad is not None:
            res.fail("supra", witness(bad, int(ys[bad])))
        return res.report("supra", True, seed, "all formula sets")
    sampler = _Sampler(o, seed)
    for x in _theory_reps(v) + [sampler.premise() for _ in range(trials)]:
        res.count += 1
        y = o.fn(x)
        if upset_mask(n_int, closure_mask(x, full)) & ~y:
            res.fail("supra", witness(x, y))
    complete = o.domain_kind == "theory" and bool(_theory_reps(v))
    return res.report("supra", complete, seed, "theories" if complete else "sampled")


def check_equal(o1: EntailOracle, o2: EntailOracle, *, trials: int = 200, seed: int = 0, exhaustive: Optional[bool] = None) -> CheckReport:
    """Equality of two entailments; the first mismatch in canonical order is reported."""
    v = o1.vocab
    if o2.vocab != v:
        raise VocabMismatchError("oracles are defined over different vocabularies")
    res = _Result()
    both_theory = o1.domain_kind == o2.domain_kind == "theory"
    for t, rep in enumerate(_theory_reps(v)):
        res.count += 1
        if both_theory:
            a, b = o1.theory_fn(t), o2.theory_fn(t)
            if a != b:
                res.fail("equal", {"T": _th(v, t), "C1(T)": _th(v, a), "C2(T)": _th(v, b)})
                break
        else:
            a, b = o1.fn(rep), o2.fn(rep)
            if a != b:
                res.fail("equal", {"X": fs_to_str(v, rep), "C1(X)": fs_to_str(v, a), "C2(X)": fs_to_str(v, b)})
                break
    if both_theory:
        return res.report("equal", bool(_theory_reps(v)), seed, "theories")
    if res.failed:
        return res.report("equal", True, seed, "theories")
    if _exhaustive_sets(o1, exhaustive):
        xs = all_class_sets(v)
        a, b = o1.many(xs), o2.many(xs)
        res.count += len(xs)
        bad = _first(a != b)
        if bad is not None:
            res.fail("equal", {"X": fs_to_str(v, bad), "C1(X)": fs_to_str(v, int(a[bad])), "C2(X)": fs_to_str(v, int(b[bad]))})
        return res.report("equal", True, seed, "all formula sets")
    hints = o1.hints or o2.hints
    sampler = _Sampler(EntailOracle(v, o1.fn, hints=hints), seed)
    for _ in range(trials):
        x = sampler.premise()
        res.count += 1
        a, b = o1.fn(x), o2.fn(x)
        if a != b:
            res.fail("equal", {"X": fs_to_str(v, x), "C1(X)": fs_to_str(v, a), "C2(X)": fs_to_str(v, b)})
            break
    return res.report("equal", False, seed, "theories + sampled")


# --------------------------------------------------------------------------
# Witness replay


def replay(report: CheckReport, o: EntailOracle, other: Optional[EntailOracle] = None, rule: Optional[str] = None) -> bool:
    """Re-derive the violation recorded in a failing report from its inputs alone.

    ``rule`` selects the witness of a particular failed rule (default: the first).
    """
    w = report.witness if rule is None else report.witness_for(rule)
    if not w:
        return False
    v = o.vocab
    rule = w["rule"]
    th = lambda key: int(w[key], 2)  # noqa: E731
    fs = lambda key: fs_from_str(v, w[key])  # noqa: E731
    n_int, full = v.n_interpretations, v.full
    if "T" in w and rule in ("extensive", "idempotent", "monotone", "ct", "cm"):
        f = o.theory_fn
        t = th("T")
        if rule == "extensive":
            return bool(f(t) & ~t)
        if rule == "idempotent":
            return f(f(t)) != f(t)
        t2 = th("T2")
        if rule == "monotone":
            return t2 & ~t == 0 and bool(f(t2) & ~f(t))
        ft = f(t)
        if t2 & ~t or (ft & t) & ~t2:
            return False
        return bool(ft & ~f(t2)) if rule == "ct" else bool(f(t2) & ~ft)
    if rule == "extensive":
        x = fs("X")
        return bool(x & ~o.fn(x))
    if rule == "idempotent":
        x = fs("X")
        return o.fn(o.fn(x)) != o.fn(x)
    if rule == "monotone":
        x, y = fs("X"), fs("Y")
        return x & ~y == 0 and bool(o.fn(x) & ~o.fn(y))
    if rule in ("ct", "cm"):
        x, x2 = fs("X"), fs("X2")
        y = o.fn(x)
        if x2 & ~y:
            return False
        z = o.fn(x | x2)
        return bool(z & ~y) if rule == "ct" else bool(y & ~z)
    if rule == "right-side":
        y = o.fn(fs("X"))
        return upset_mask(n_int, closure_mask(y, full)) != y
    if rule == "left-side":
        x1, x2 = fs("X1"), fs("X2")
        return closure_mask(x1, full) == closure_mask(x2, full) and o.fn(x1) != o.fn(x2)
    if rule == "supra":
        x = fs("X")
        phi = int(w["phi"], 2)
        return closure_mask(x, full) & ~phi == 0 and not (o.fn(x) >> phi) & 1
    if rule == "equal":
        if other is None:
            raise ValueError("replaying an equality witness needs both oracles")
        if "T" in w:
            t = th("T")
            return o.theory_fn(t) != other.theory_fn(t)
        x = fs("X")
        return o.fn(x) != other.fn(x)
    raise ValueError(f"unknown rule {rule!r}")
