"""Pattern avoidance by entropy compression: records, counting bounds and search."""

__version__ = "0.1.0"

from ._backend import BACKEND
from .bounds import (
    GammaBound,
    dyck_count,
    dyck_counts,
    gamma_upper,
    gbar,
    gbar_below,
    gbar_core,
    partial_dyck_count,
    phi,
    tau_polynomial,
    tau_root,
)
from .errors import CapacityError, ContractError, CorruptRecordError, PatavoidError, PatternParseError
from .occurrence import Occurrence, as_word, contains_instance, find_suffix_occurrences, format_word, instance_check
from .ogf import SweepReport, TruncatedSeries, g4_sweep, h_bruteforce, pattern_ogf, series_multiply
from .pattern import (
    Pattern,
    PatternClass,
    aa_family,
    classify,
    extract_balanced_factor,
    is_balanced,
    is_doubled,
    parse_pattern,
    q,
    random_doubled_pattern,
    reduce_doubled,
    zimin,
)
from .search import SearchOutcome, backtrack_avoid, unavoidability_probe
from .simulate import (
    AvoidPattern,
    BudgetExhausted,
    Reached,
    Record,
    RecordDocument,
    SimTrace,
    decode,
    run_avoid_pattern,
    simulate_until,
    verify_record,
)

__all__ = [
    "__version__",
    "AvoidPattern",
    "BACKEND",
    "BudgetExhausted",
    "CapacityError",
    "ContractError",
    "CorruptRecordError",
    "GammaBound",
    "Occurrence",
    "PatavoidError",
    "Pattern",
    "PatternClass",
    "PatternParseError",
    "Reached",
    "Record",
    "RecordDocument",
    "SearchOutcome",
    "SimTrace",
    "SweepReport",
    "TruncatedSeries",
    "aa_family",
    "as_word",
    "backtrack_avoid",
    "classify",
    "contains_instance",
    "decode",
    "dyck_count",
    "dyck_counts",
    "extract_balanced_factor",
    "find_suffix_occurrences",
    "format_word",
    "g4_sweep",
    "gamma_upper",
    "gbar",
    "gbar_below",
    "gbar_core",
    "h_bruteforce",
    "instance_check",
    "is_balanced",
    "is_doubled",
    "parse_pattern",
    "partial_dyck_count",
    "pattern_ogf",
    "phi",
    "q",
    "random_doubled_pattern",
    "reduce_doubled",
    "run_avoid_pattern",
    "series_multiply",
    "simulate_until",
    "tau_polynomial",
    "tau_root",
    "unavoidability_probe",
    "verify_record",
    "zimin",
]
