"""Command-line interface: ``prefentail <command> ...``.

Exit status is 0 on success or the expected verdict, 1 when a checked
property fails (or a precondition of the requested operation does not hold),
and 2 on usage errors such as unreadable files or malformed input.
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import asdict
from pathlib import Path
from typing import Optional, Sequence, Union

from . import checks
from .formats import (
    ModelFormatError,
    format_klm,
    format_mak,
    format_table,
    parse_model,
    parse_premises,
    parse_table,
)
from .harness import CLAIMS, KLM_KINDS, MAK_KINDS, GenSpec, UnknownClaimError, WitnessNotFoundError, run_campaign
from .klm import KlmModel, classify
from .logic import FormulaSet, SizeGuardError, Theory, closure
from .mak import MakModel, classify_mak
from .translate import (
    ConstructionMismatchError,
    NotCumulativeError,
    NotSupraClassicalError,
    PrecircTable,
    klm_to_mak,
    mak_to_klm,
    precirc_to_simplified_klm,
    tabulate,
)

PROPERTIES = ("tarski", "ct", "cm", "precirc", "supra")


class UsageError(Exception):
    pass


def _read(path: str) -> str:
    try:
        return Path(path).read_text()
    except OSError as e:
        raise UsageError(f"cannot read {path}: {e.strerror}") from None


def _load(path: str) -> Union[KlmModel, MakModel, PrecircTable]:
    text = _read(path)
    try:
        for line in text.splitlines():
            word = line.split("#", 1)[0].split()
            if word and word[0] == "map":
                return parse_table(text)
            if word and word[0] in ("state", "pref"):
                break
        return parse_model(text)
    except (ModelFormatError, ValueError) as e:
        raise UsageError(f"{path}: {e}") from None


def _load_model(path: str) -> Union[KlmModel, MakModel]:
    obj = _load(path)
    if isinstance(obj, PrecircTable):
        raise UsageError(f"{path} is a table, not a model")
    return obj


def _emit(args, text: str, data: dict) -> None:
    if getattr(args, "json", False):
        print(json.dumps(data, sort_keys=True, indent=2))
    else:
        print(text)


def _fs_text(x: FormulaSet) -> str:
    if x.is_everything:
        return "everything (all formulas)"
    items = [f.to_formula() for f in x]
    return "{" + "; ".join(items) + "}"


def cmd_entail(args) -> int:
    m = _load_model(args.model)
    as_klm = args.klm or (not args.mak and isinstance(m, KlmModel))
    try:
        premises = parse_premises(m.vocab, args.premises)
    except ValueError as e:
        raise UsageError(f"premises: {e}") from None
    if as_klm:
        km = m if isinstance(m, KlmModel) else mak_to_klm(m)
        t = closure(premises)
        out = Theory(km.vocab, km.entail_mask(t.models))
        _emit(args, str(out), {"semantics": "klm", "premises": t.bitstring, "conclusion": out.bitstring, "text": str(out)})
    else:
        mm = m if isinstance(m, MakModel) else klm_to_mak(m)
        out = FormulaSet(mm.vocab, mm.entail_mask(premises.classes))
        _emit(
            args,
            _fs_text(out),
            {
                "semantics": "mak",
                "premises": checks.fs_to_str(mm.vocab, premises.classes),
                "conclusion": checks.fs_to_str(mm.vocab, out.classes),
                "text": _fs_text(out),
            },
        )
    return 0


def _oracle(obj, which: Optional[str]) -> checks.EntailOracle:
    if isinstance(obj, PrecircTable):
        if which not in (None, "table"):
            raise UsageError("a table file only supports --oracle table")
        return checks.table_oracle(obj)
    if isinstance(obj, KlmModel):
        if which in (None, "klm"):
            return checks.klm_oracle(obj)
        obj = klm_to_mak(obj)
    if which in (None, "mak"):
        return checks.mak_oracle(obj)
    if which == "cn":
        return checks.cn_oracle(obj)
    if which == "klm":
        return checks.klm_oracle(mak_to_klm(obj))
    raise UsageError(f"--oracle {which} does not apply to this file")


def cmd_check(args) -> int:
    o = _oracle(_load(args.model), args.oracle)
    kw = {"seed": args.seed}
    if args.trials is not None:
        kw["trials"] = args.trials
    fn = {
        "tarski": checks.check_tarski,
        "ct": checks.check_ct,
        "cm": checks.check_cm,
        "precirc": checks.check_precirc,
        "supra": checks.check_supra_entail,
    }[args.property]
    rep = fn(o, **kw)
    _emit(args, rep.to_text(), rep.to_dict())
    return 0 if rep.ok else 1


def cmd_classify(args) -> int:
    m = _load_model(args.model)
    if isinstance(m, KlmModel):
        kind = asdict(classify(m, order_flags=True))
        label = "klm"
    else:
        kind = asdict(classify_mak(m))
        label = "mak"
    text = "\n".join([f"model: {label}"] + [f"{k}: {str(v).lower()}" for k, v in kind.items()])
    _emit(args, text, {"model": label, **kind})
    return 0


def cmd_translate(args) -> int:
    m = _load_model(args.model)
    if args.to == "table":
        out = format_table(tabulate(m))
    elif args.to == "mak":
        out = format_mak(m if isinstance(m, MakModel) else klm_to_mak(m))
    else:
        out = format_klm(m if isinstance(m, KlmModel) else mak_to_klm(m))
    _write(args, out)
    return 0


def _write(args, text: str) -> None:
    if args.out:
        Path(args.out).write_text(text)
    else:
        sys.stdout.write(text)


def cmd_construct(args) -> int:
    obj = _load(args.table)
    if not isinstance(obj, PrecircTable):
        raise UsageError(f"{args.table} is not a table file")
    _write(args, format_klm(precirc_to_simplified_klm(obj, experimental=args.experimental)))
    return 0


def cmd_fuzz(args) -> int:
    try:
        spec = GenSpec(vocab_size=args.vocab, seed=args.seed, mak_kind=args.mak_kind, klm_kind=args.klm_kind)
    except (ValueError, SizeGuardError) as e:
        raise UsageError(str(e)) from None
    try:
        res = run_campaign(args.claim, args.trials, spec, premise_sets=args.premise_sets, subsets=args.subsets)
    except UnknownClaimError as e:
        raise UsageError(str(e)) from None
    except WitnessNotFoundError as e:
        res = e.result
    if args.json:
        print(res.to_json())
    else:
        print(res.to_text())
    return 0 if res.ok else 1


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="prefentail", description="Preferential entailment over finite propositional vocabularies.")
    sub = p.add_subparsers(dest="command", required=True)

    e = sub.add_parser("entail", help="compute the preferential consequence of premises")
    e.add_argument("--model", required=True, help="KLM or MAK model file")
    kind = e.add_mutually_exclusive_group()
    kind.add_argument("--klm", action="store_true", help="KLM semantics: premises are closed to a theory")
    kind.add_argument("--mak", action="store_true", help="MAK semantics: premises form a raw formula set")
    e.add_argument("--premises", default="", help='formulas separated by ";"')
    e.add_argument("--json", action="store_true")
    e.set_defaults(func=cmd_entail)

    c = sub.add_parser("check", help="check a property of a model's entailment (or a table)")
    c.add_argument("--model", required=True, help="model or table file")
    c.add_argument("--property", required=True, choices=PROPERTIES)
    c.add_argument("--oracle", choices=("klm", "mak", "cn", "table"), help="which entailment to check (default: the file's own)")
    c.add_argument("--trials", type=int, help="premise sets sampled when the domain is not enumerated")
    c.add_argument("--seed", type=int, default=0)
    c.add_argument("--json", action="store_true")
    c.set_defaults(func=cmd_check)

    k = sub.add_parser("classify", help="structural classification of a model")
    k.add_argument("--model", required=True)
    k.add_argument("--json", action="store_true")
    k.set_defaults(func=cmd_classify)

    t = sub.add_parser("translate", help="convert between KLM models, MAK models and tables")
    t.add_argument("--model", required=True)
    t.add_argument("--to", required=True, choices=("klm", "mak", "table"))
    t.add_argument("--out", help="output file (default: stdout)")
    t.set_defaults(func=cmd_translate)

    s = sub.add_parser("construct", help="build a simplified KLM model realizing a table")
    s.add_argument("--table", required=True)
    s.add_argument("--experimental", action="store_true", help="skip the cumulativity precondition")
    s.add_argument("--out", help="output file (default: stdout)")
    s.set_defaults(func=cmd_construct)

    f = sub.add_parser("fuzz", help="run a claim campaign")
    f.add_argument("--claim", required=True, help=", ".join(CLAIMS))
    f.add_argument("--trials", type=int, default=100)
    f.add_argument("--seed", type=int, default=0)
    f.add_argument("--vocab", type=int, default=2, help="number of propositional symbols")
    f.add_argument("--mak-kind", choices=MAK_KINDS, help="MAK generator kind (default: the claim's own)")
    f.add_argument("--klm-kind", choices=KLM_KINDS, help="KLM generator kind (default: the claim's own)")
    f.add_argument("--premise-sets", type=int, default=100)
    f.add_argument("--subsets", type=int, default=50)
    f.add_argument("--json", action="store_true")
    f.set_defaults(func=cmd_fuzz)
    return p


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return int(e.code or 0)
    try:
        return args.func(args)
    except UsageError as e:
        print(f"error: {e}", file=sys.stderr)
        return 2
    except SizeGuardError as e:
        print(f"error: {e}", file=sys.stderr)
        return 2
    except (NotSupraClassicalError, NotCumulativeError, ConstructionMismatchError) as e:
        print(f"error: {e}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
