"""Seeded model generators and claim campaigns.

Every trial owns a generator seeded from ``(seed, trial index)``, so a
campaign is reproducible trial by trial and its machine-readable report is
byte-identical across runs.
"""

from __future__ import annotations

import hashlib
import json
import random
import time
from dataclasses import dataclass, field, replace
from typing import Callable, Optional, Union

import numpy as np

from .checks import (
    check_cm,
    check_ct,
    check_equal,
    check_precirc,
    check_tarski,
    cn_oracle,
    fs_to_str,
    klm_oracle,
    mak_oracle,
    sample_premises,
    table_oracle,
)
from .formats import format_klm, format_mak, format_table, formula_list
from .klm import KlmModel, classify, is_smooth, theory_state_name
from .logic import FormulaSet, SemFormula, SizeGuardError, Theory, Vocab, iter_bits, max_classes, upset_mask
from .mak import MakModel, classify_mak
from .translate import (
    compare_tables,
    klm_to_mak,
    mak_to_klm,
    precirc_to_simplified_klm,
    tabulate,
)

__all__ = [
    "GenSpec",
    "CampaignResult",
    "TargetUnreachableError",
    "UnknownClaimError",
    "WitnessNotFoundError",
    "CLAIMS",
    "NEGATIVE_CLAIMS",
    "gen_klm",
    "gen_mak",
    "trial_spec",
    "run_campaign",
]

MAK_KINDS = ("raw", "supra", "classical", "unicity", "padded", "mixed")
KLM_KINDS = ("any", "smooth", "simplified", "singular")
MAX_VOCAB = 4


class TargetUnreachableError(RuntimeError):
    pass


class UnknownClaimError(ValueError):
    pass


class WitnessNotFoundError(RuntimeError):
    def __init__(self, result: "CampaignResult"):
        super().__init__(f"{result.claim}: no witness within {result.trials} trials")
        self.result = result


@dataclass(frozen=True)
class GenSpec:
    """Parameters for random model generation.

    ``pref_density`` is either a fixed probability or a ``(lo, hi)`` range
    from which each model draws its own density.  ``mak_kind="padded"``
    adds unreachable junk states to a supra-classical model; ``"mixed"``
    cycles through the other MAK kinds by trial index.  A kind left as
    ``None`` means "raw" / "any" for the generators and the claim's own
    default in campaigns.
    """

    vocab_size: int = 2
    states: tuple[int, int] = (1, 4)
    pref_density: Union[float, tuple[float, float]] = (0.0, 0.6)
    mak_kind: Optional[str] = None
    klm_kind: Optional[str] = None
    seed: int = 0
    resample_budget: int = 1000

    def __post_init__(self):
        if not 1 <= self.vocab_size <= MAX_VOCAB:
            raise ValueError(f"vocab_size must be between 1 and {MAX_VOCAB}")
        if (1 << (1 << self.vocab_size)) > max_classes():
            raise SizeGuardError(f"vocabulary of size {self.vocab_size} exceeds the class cap")
        lo, hi = self.states
        if not 1 <= lo <= hi:
            raise ValueError("states must be a range (lo, hi) with 1 <= lo <= hi")
        d = self.pref_density
        lo_d, hi_d = (d, d) if isinstance(d, (int, float)) else d
        if not 0.0 <= lo_d <= hi_d <= 1.0:
            raise ValueError("pref_density must lie in [0, 1]")
        if self.mak_kind is not None and self.mak_kind not in MAK_KINDS:
            raise ValueError(f"mak_kind must be one of {MAK_KINDS}")
        if self.klm_kind is not None and self.klm_kind not in KLM_KINDS:
            raise ValueError(f"klm_kind must be one of {KLM_KINDS}")
        if self.resample_budget < 1:
            raise ValueError("resample_budget must be positive")

    @property
    def vocab(self) -> Vocab:
        return Vocab([chr(ord("p") + i) for i in range(self.vocab_size)])


def _derive(seed: int, trial: int) -> int:
    digest = hashlib.sha256(f"{seed}:{trial}".encode()).digest()
    return int.from_bytes(digest[:8], "big") >> 1


def trial_spec(spec: GenSpec, trial: int) -> GenSpec:
    """The generator spec for one trial of a campaign."""
    kind = spec.mak_kind
    if kind == "mixed":
        kind = MAK_KINDS[trial % 5]
    return replace(spec, seed=_derive(spec.seed, trial), mak_kind=kind)


def _density(spec: GenSpec, rng: random.Random) -> float:
    d = spec.pref_density
    if isinstance(d, (int, float)):
        return float(d)
    return rng.uniform(*d)


def _pref(names: list[str], density: float, rng: random.Random) -> list[tuple[str, str]]:
    return [(a, b) for a in names for b in names if rng.random() < density]


def _names(k: int) -> list[str]:
    return [f"s{i + 1}" for i in range(k)]


def _draw_klm(spec: GenSpec, rng: random.Random) -> KlmModel:
    v = spec.vocab
    density = _density(spec, rng)
    if spec.klm_kind == "simplified":
        theories = [Theory(v, t) for t in range(v.n_classes)]
        names = [theory_state_name(t) for t in theories]
        return KlmModel(v, names, dict(zip(names, theories)), _pref(names, density, rng))
    names = _names(rng.randint(*spec.states))
    if spec.klm_kind == "singular":
        labels = {s: Theory(v, 1 << rng.randrange(v.n_interpretations)) for s in names}
    else:
        labels = {s: Theory(v, rng.randrange(v.n_classes)) for s in names}
    return KlmModel(v, names, labels, _pref(names, density, rng))


def gen_klm(spec: GenSpec) -> KlmModel:
    """A random KLM model; ``klm_kind="smooth"`` resamples until smooth."""
    rng = random.Random(f"klm:{spec.seed}")
    if spec.klm_kind != "smooth":
        return _draw_klm(spec, rng)
    base = replace(spec, klm_kind="any")
    for _ in range(spec.resample_budget):
        m = _draw_klm(base, rng)
        if is_smooth(m):
            return m
    raise TargetUnreachableError(f"no smooth model within {spec.resample_budget} draws")


def _raw_sat(v: Vocab, rng: random.Random) -> int:
    if rng.random() < 0.5:
        return rng.getrandbits(v.n_classes)
    # a closed set with a few memberships flipped
    sat = upset_mask(v.n_interpretations, rng.randrange(v.n_classes))
    for _ in range(rng.randint(1, 3)):
        sat ^= 1 << rng.randrange(v.n_classes)
    return sat


def gen_mak(spec: GenSpec) -> MakModel:
    """A random MAK model of the requested kind.

    ``supra`` labels each state with the classes entailed by a random
    theory, ``classical`` does the same with complete theories, and
    ``unicity`` is ``supra`` with pairwise distinct theories.
    """
    rng = random.Random(f"mak:{spec.seed}")
    v = spec.vocab
    n_int = v.n_interpretations
    kind = spec.mak_kind or "raw"
    if kind == "mixed":
        kind = MAK_KINDS[spec.seed % 5]
    density = _density(spec, rng)
    k = rng.randint(*spec.states)
    names = _names(k)
    if kind == "raw":
        sats = [_raw_sat(v, rng) for _ in names]
    elif kind == "classical":
        sats = [upset_mask(n_int, 1 << rng.randrange(n_int)) for _ in names]
    elif kind == "unicity":
        if k > v.n_classes:
            raise TargetUnreachableError(f"only {v.n_classes} distinct theories exist")
        sats = [upset_mask(n_int, t) for t in rng.sample(range(v.n_classes), k)]
    else:
        sats = [upset_mask(n_int, rng.randrange(v.n_classes)) for _ in names]
    pref = _pref(names, density, rng)
    if kind == "padded":
        # junk states prefer themselves only, so they are never minimal and never dominate
        junk = [f"j{i + 1}" for i in range(rng.randint(1, 2))]
        sats += [_raw_sat(v, rng) for _ in junk]
        pref += [(j, j) for j in junk]
        names = names + junk
    return MakModel(v, names, {s: FormulaSet(v, m) for s, m in zip(names, sats)}, pref)


# --------------------------------------------------------------------------
# Campaigns


@dataclass
class CampaignResult:
    claim: str
    trials: int
    failures: int
    counterexample: Optional[dict]
    wall_time: float
    coverage: str
    negative: bool = False
    notes: dict = field(default_factory=dict)

    @property
    def ok(self) -> bool:
        if self.negative:
            return self.counterexample is not None
        return self.failures == 0

    def to_dict(self, include_time: bool = False) -> dict:
        d = {
            "claim": self.claim,
            "kind": "search" if self.negative else "verification",
            "trials": self.trials,
            "failures": self.failures,
            "coverage": self.coverage,
            "ok": self.ok,
            "counterexample": self.counterexample,
            "notes": self.notes,
        }
        if include_time:
            d["wall_time"] = round(self.wall_time, 3)
        return d

    def to_json(self, include_time: bool = False) -> str:
        return json.dumps(self.to_dict(include_time), sort_keys=True, indent=2)

    def to_text(self) -> str:
        lines = [
            f"claim: {self.claim}",
            f"trials: {self.trials}",
            f"failures: {self.failures}",
            f"coverage: {self.coverage}",
            f"result: {'ok' if self.ok else 'NOT OK'}",
            f"wall_time: {self.wall_time:.2f}s",
        ]
        for k, val in sorted(self.notes.items()):
            lines.append(f"note.{k}: {val}")
        if self.counterexample:
            cx = self.counterexample
            for k in sorted(cx):
                if k == "model":
                    continue
                lines.append(f"{'witness' if self.negative else 'counterexample'}.{k}: {cx[k]}")
            if "model" in cx:
                lines.append("model:")
                lines += ["  " + ln for ln in cx["model"].splitlines()]
        return "\n".join(lines)


def _ce(trial: int, model: Union[KlmModel, MakModel], **extra) -> dict:
    text = format_klm(model) if isinstance(model, KlmModel) else format_mak(model)
    return {"trial": trial, "model_kind": "klm" if isinstance(model, KlmModel) else "mak", "model": text, **extra}


def _failed(*reports) -> Optional[dict]:
    for r in reports:
        if not r.ok:
            return r.to_dict()
    return None


@dataclass
class _Ctx:
    premise_sets: int
    subsets: int
    coverage: set = field(default_factory=set)
    counts: dict = field(default_factory=dict)

    def note(self, *reports) -> None:
        for r in reports:
            self.coverage.add(f"{r.property}: {r.coverage}")

    def bump(self, key: str) -> None:
        self.counts[key] = self.counts.get(key, 0) + 1


def _spec_for(spec: GenSpec, **kw) -> GenSpec:
    return replace(spec, **kw)


# Each positive trial returns None on success or a counterexample dict.


def _p36(spec, i, ctx):
    m = gen_klm(spec)
    f = tabulate(m)
    o = table_oracle(f)
    reps = (check_precirc(o), check_ct(o), check_precirc(klm_oracle(m)))
    ctx.note(*reps)
    bad = _failed(*reps)
    return _ce(i, m, report=bad) if bad else None


def _p310(spec, i, ctx):
    m = gen_mak(spec)
    o = mak_oracle(m)
    reps = (
        check_tarski(o, rules=("extensive",), seed=i),
        check_ct(o, trials=ctx.premise_sets, subsets=ctx.subsets, seed=i),
    )
    ctx.note(*reps)
    bad = _failed(*reps)
    return _ce(i, m, report=bad) if bad else None


def _idem(spec, i, ctx):
    m = gen_mak(spec)
    o = mak_oracle(m)
    for x in sample_premises(o, ctx.premise_sets, seed=i):
        y = o.fn(x.classes)
        if o.fn(y) != y:
            v = m.vocab
            return _ce(i, m, X=fs_to_str(v, x.classes), **{"C(X)": fs_to_str(v, y), "C(C(X))": fs_to_str(v, o.fn(y))})
    ctx.coverage.add(f"idempotence: {ctx.premise_sets} sampled premise sets")
    return None


def _tarski(spec, i, ctx):
    m = gen_mak(spec)
    rep = check_tarski(cn_oracle(m), trials=ctx.premise_sets, seed=i)
    ctx.note(rep)
    if not rep.ok:
        return _ce(i, m, report=rep.to_dict())
    for s, sat in zip(m.states, m.sat_masks):
        if m.cn_mask(sat) != sat:
            return _ce(i, m, state=s, rule="Cn(Cn(s)) = Cn(s)")
    return None


def _cn_sub(spec, i, ctx):
    m = gen_mak(spec)
    o = mak_oracle(m)
    v = m.vocab
    for x in sample_premises(o, ctx.premise_sets, seed=i):
        a, b = m.cn_mask(x.classes), m.entail_mask(x.classes)
        if a & ~b:
            return _ce(i, m, X=fs_to_str(v, x.classes), **{"Cn(X)": fs_to_str(v, a), "C(X)": fs_to_str(v, b)})
    ctx.coverage.add(f"Cn within C: {ctx.premise_sets} sampled premise sets")
    return None


def _klm2mak(spec, i, ctx):
    m = gen_klm(spec)
    mm = klm_to_mak(m)
    if not classify_mak(mm).supra_classical:
        return _ce(i, m, rule="klm_to_mak output is not supra classical")
    rep = check_equal(klm_oracle(m), mak_oracle(mm), seed=i)
    ctx.note(rep)
    return _ce(i, m, report=rep.to_dict()) if not rep.ok else None


def _supra_kind(spec):
    return spec if spec.mak_kind in ("supra", "classical", "unicity") else replace(spec, mak_kind="supra")


def _equiv(spec, i, ctx):
    m = gen_mak(_supra_kind(spec))
    rep = check_precirc(mak_oracle(m), seed=i)
    ctx.note(rep)
    return _ce(i, m, report=rep.to_dict()) if not rep.ok else None


def _t_supra(spec, i, ctx):
    m = gen_mak(_supra_kind(spec))
    k = mak_to_klm(m)
    if k.states != m.states or k.pref != m.pref:
        return _ce(i, m, rule="states or preference changed")
    rep = check_equal(mak_oracle(m), klm_oracle(k), seed=i)
    ctx.note(rep)
    return _ce(i, m, report=rep.to_dict()) if not rep.ok else None


def _r_and(spec, i, ctx):
    m = gen_mak(spec)
    kind = classify_mak(m)
    ctx.bump("supra" if kind.supra_classical else "not-supra")
    if kind.supra_classical != kind.r_and:
        return _ce(i, m, supra_classical=kind.supra_classical, r_and=kind.r_and)
    ctx.coverage.add("connector flags: exhaustive over class pairs")
    return None


def _r_or(spec, i, ctx):
    m = gen_mak(spec)
    k = classify_mak(m)
    ctx.bump("classical" if k.classical else "not-classical")
    if k.classical != (k.supra_classical and k.r_neg):
        return _ce(i, m, rule="classical iff supra and r_neg", classical=k.classical, supra_classical=k.supra_classical, r_neg=k.r_neg)
    if k.r_and and k.r_neg and not k.r_or:
        return _ce(i, m, rule="r_and and r_neg imply r_or", r_and=k.r_and, r_neg=k.r_neg, r_or=k.r_or)
    ctx.coverage.add("connector flags: exhaustive over class pairs")
    return None


def _smooth_cm(spec, i, ctx):
    m = gen_klm(replace(spec, klm_kind="smooth"))
    o = table_oracle(tabulate(m))
    reps = (check_cm(o), check_ct(o))
    ctx.note(*reps)
    bad = _failed(*reps)
    return _ce(i, m, report=bad) if bad else None


def _constr(spec, i, ctx):
    m = gen_klm(replace(spec, klm_kind="smooth"))
    f = tabulate(m)
    rep = check_cm(table_oracle(f))
    ctx.note(rep)
    if not rep.ok:
        return _ce(i, m, report=rep.to_dict())
    built = precirc_to_simplified_klm(f)
    kind = classify(built, order_flags=True)
    if not (kind.simplified and kind.smooth and kind.irreflexive):
        return _ce(i, m, rule="constructed model kind", kind=str(kind))
    mismatch = compare_tables(tabulate(built), f)
    if mismatch is not None:
        return _ce(i, m, rule="table mismatch", theory=mismatch.bitstring)
    ctx.coverage.add("construction: table compared on every theory")
    return None


# Negative searches return a witness dict or None.


def _nonmono(spec, i, ctx):
    m = gen_mak(spec)
    rep = check_tarski(mak_oracle(m), rules=("monotone",), trials=ctx.premise_sets, seed=i)
    if rep.ok:
        return None
    w = rep.witness
    v = m.vocab
    x, y = _fs(v, w["X"]), _fs(v, w["Y"])
    return _ce(
        i,
        m,
        X=w["X"],
        Y=w["Y"],
        premises_x=formula_list(x),
        premises_y=formula_list(y),
        **{"C(X)": w["C(X)"], "C(Y)": w["C(Y)"]},
        report=rep.to_dict(),
    )


def _fs(v: Vocab, text: str) -> FormulaSet:
    from .checks import fs_from_str

    return FormulaSet(v, fs_from_str(v, text))


def _nonclose(spec, i, ctx):
    m = gen_mak(spec)
    v = m.vocab
    full = v.full
    o = mak_oracle(m)
    premises = [FormulaSet.empty(v)] + sample_premises(o, ctx.premise_sets, seed=i)
    # prefer a consistent conjunction and a non-tautological missing conjunct
    for strict in (True, False):
        for x, conj, a in _unclosed(m, premises, strict):
            y = m.entail_mask(x.classes)
            b = conj | (full & ~a)
            return _ce(
                i,
                m,
                X=fs_to_str(v, x.classes),
                premises=formula_list(x),
                conjunction=SemFormula(v, conj).to_formula(),
                conjunct_missing=SemFormula(v, a).to_formula(),
                other_conjunct=SemFormula(v, b).to_formula(),
                **{"C(X)": fs_to_str(v, y)},
            )
    return None


def _unclosed(m: MakModel, premises: list[FormulaSet], strict: bool):
    """Triples (premises, entailed class, weaker class not entailed)."""
    v = m.vocab
    for x in premises:
        y = m.entail_mask(x.classes)
        for conj in iter_bits(y):
            if strict and conj == 0:
                continue
            for a in range(v.n_classes):
                if a != conj and conj & ~a == 0 and not (y >> a) & 1 and not (strict and a == v.full):
                    yield x, conj, a


def _sing_limit(spec, trials, ctx):
    """Search for a KLM entailment table no strictly-singular model realizes."""
    v = spec.vocab
    n_int = v.n_interpretations
    if n_int * n_int > 16:
        raise SizeGuardError("strictly-singular enumeration is limited to vocabularies of size 1 or 2")
    n_rel = 1 << (n_int * n_int)
    rels = np.arange(n_rel, dtype=np.uint32)
    # state k is the complete theory whose single model sits at bit k of a model mask
    preds = [((rels >> (n_int * k)) & ((1 << n_int) - 1)) for k in range(n_int)]
    table = np.zeros((n_rel, v.n_classes), dtype=np.uint16)
    for t in range(v.n_classes):
        col = np.zeros(n_rel, dtype=np.uint32)
        for k in iter_bits(t):
            col |= np.where((preds[k] & t) == 0, 1 << k, 0).astype(np.uint32)
        table[:, t] = col
    realized = {row.tobytes() for row in table}
    ctx.counts["strictly_singular_relations"] = n_rel
    ctx.counts["distinct_tables_realized"] = len(realized)

    examined = 0
    for m in _small_klm_models(v, max_states=2):
        examined += 1
        f = tabulate(m)
        key = np.array(f.map, dtype=np.uint16).tobytes()
        if key not in realized:
            return examined, _ce(examined - 1, m, table=format_table(f))
        if examined >= trials:
            break
    return examined, None


def _small_klm_models(v: Vocab, max_states: int):
    n_cls = v.n_classes
    for k in range(1, max_states + 1):
        names = _names(k)
        pairs = [(a, b) for a in names for b in names]
        for labels in np.ndindex(*([n_cls] * k)):
            lab = {s: Theory(v, int(t)) for s, t in zip(names, labels)}
            for r in range(1 << len(pairs)):
                yield KlmModel(v, names, lab, [p for j, p in enumerate(pairs) if (r >> j) & 1])


_POSITIVE: dict[str, tuple[Callable, dict]] = {
    "P3.6": (_p36, {"klm_kind": "any"}),
    "P3.10": (_p310, {"mak_kind": "raw"}),
    "IDEM": (_idem, {"mak_kind": "raw"}),
    "TARSKI": (_tarski, {"mak_kind": "raw"}),
    "CN-SUB": (_cn_sub, {"mak_kind": "raw"}),
    "T-KLM2MAK": (_klm2mak, {}),
    "T-EQUIV": (_equiv, {}),
    "T-SUPRA": (_t_supra, {}),
    "R-AND": (_r_and, {"mak_kind": "mixed"}),
    "R-OR": (_r_or, {"mak_kind": "mixed"}),
    "SMOOTH-CM": (_smooth_cm, {}),
    "CONSTR": (_constr, {}),
}
_NEGATIVE: dict[str, tuple[Callable, dict]] = {
    "NONMONO": (_nonmono, {"mak_kind": "raw"}),
    "NONCLOSE": (_nonclose, {"mak_kind": "raw"}),
}
NEGATIVE_CLAIMS = ("NONMONO", "NONCLOSE", "SING-LIMIT")
CLAIMS = tuple(_POSITIVE) + NEGATIVE_CLAIMS


def run_campaign(
    claim: str,
    trials: int = 100,
    spec: Optional[GenSpec] = None,
    *,
    premise_sets: int = 100,
    subsets: int = 50,
    raise_on_missing: bool = True,
) -> CampaignResult:
    """Verify a positive claim over ``trials`` random models, or search for a witness.

    Positive claims count failing trials and keep the first counterexample.
    Negative claims stop at the first witness; with ``raise_on_missing``
    an exhausted budget raises :class:`WitnessNotFoundError`.  Generator
    kinds left unset in ``spec`` take the claim's default.  Claims about
    smooth or supra-classical models always generate such models.
    """
    if claim not in CLAIMS:
        raise UnknownClaimError(f"unknown claim {claim!r}; expected one of {', '.join(CLAIMS)}")
    if trials < 1:
        raise ValueError("trials must be positive")
    spec = spec or GenSpec()
    ctx = _Ctx(premise_sets, subsets)
    start = time.perf_counter()

    if claim == "SING-LIMIT":
        ran, witness = _sing_limit(spec, trials, ctx)
        result = CampaignResult(
            claim, ran, 0, witness, time.perf_counter() - start,
            f"all strictly-singular models at vocab size {spec.vocab_size}; "
            "candidates: KLM models with at most 2 states in canonical order",
            True, dict(sorted(ctx.counts.items())),
        )
        if witness is None and raise_on_missing:
            raise WitnessNotFoundError(result)
        return result

    negative = claim in _NEGATIVE
    fn, overrides = (_NEGATIVE if negative else _POSITIVE)[claim]
    base = replace(spec, **{k: val for k, val in overrides.items() if getattr(spec, k) is None})
    failures, first, ran = 0, None, 0
    for i in range(trials):
        ran += 1
        out = fn(trial_spec(base, i), i, ctx)
        if out is not None:
            failures += 1
            if first is None:
                first = out
            if negative:
                break
    if negative:
        coverage = f"random search, {premise_sets} premise sets per model"
    else:
        coverage = "; ".join(sorted(ctx.coverage)) or "per-trial checks"
    result = CampaignResult(
        claim, ran, 0 if negative else failures, first, time.perf_counter() - start,
        coverage, negative, dict(sorted(ctx.counts.items())),
    )
    if negative and first is None and raise_on_missing:
        raise WitnessNotFoundError(result)
    return result
