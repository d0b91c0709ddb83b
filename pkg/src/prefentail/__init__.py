"""Preferential entailment over finite propositional vocabularies.

Two model families are provided: KLM models, whose states carry theories,
and MAK models, whose states carry arbitrary sets of satisfied formula
classes.  Translations between them, property checkers for consequence
operators, and seeded campaigns that exercise the whole stack are included.
"""

from .checks import (
    CheckReport,
    EntailOracle,
    check_cm,
    check_ct,
    check_equal,
    check_precirc,
    check_supra_entail,
    check_tarski,
    classical_oracle,
    cn_oracle,
    klm_oracle,
    mak_oracle,
    replay,
    table_oracle,
)
from .formats import (
    format_klm,
    format_mak,
    format_table,
    load_model,
    load_table,
    parse_klm,
    parse_mak,
    parse_model,
    parse_table,
)
from .harness import CampaignResult, GenSpec, gen_klm, gen_mak, run_campaign
from .klm import KlmKind, KlmModel, classify, klm_entail, klm_minimal, klm_sat, klm_states_of
from .logic import (
    FormulaSet,
    Interpretation,
    SemFormula,
    SizeGuardError,
    Theory,
    Vocab,
    closure,
    entails,
    eval_formula,
    is_complete,
    parse_formula,
    sem,
)
from .mak import MakKind, MakModel, classify_mak, cn_entail, cn_state, mak_entail, mak_minsat, mak_sat
from .translate import (
    PrecircTable,
    klm_to_mak,
    mak_to_klm,
    precirc_to_simplified_klm,
    tabulate,
    validate_translation,
)

__version__ = "0.1.0"

__all__ = [
    "CheckReport",
    "EntailOracle",
    "check_cm",
    "check_ct",
    "check_equal",
    "check_precirc",
    "check_supra_entail",
    "check_tarski",
    "classical_oracle",
    "cn_oracle",
    "klm_oracle",
    "mak_oracle",
    "replay",
    "table_oracle",
    "format_klm",
    "format_mak",
    "format_table",
    "load_model",
    "load_table",
    "parse_klm",
    "parse_mak",
    "parse_model",
    "parse_table",
    "CampaignResult",
    "GenSpec",
    "gen_klm",
    "gen_mak",
    "run_campaign",
    "KlmKind",
    "KlmModel",
    "classify",
    "klm_entail",
    "klm_minimal",
    "klm_sat",
    "klm_states_of",
    "FormulaSet",
    "Interpretation",
    "SemFormula",
    "SizeGuardError",
    "Theory",
    "Vocab",
    "closure",
    "entails",
    "eval_formula",
    "is_complete",
    "parse_formula",
    "sem",
    "MakKind",
    "MakModel",
    "classify_mak",
    "cn_entail",
    "cn_state",
    "mak_entail",
    "mak_minsat",
    "mak_sat",
    "PrecircTable",
    "klm_to_mak",
    "mak_to_klm",
    "precirc_to_simplified_klm",
    "tabulate",
    "validate_translation",
]
