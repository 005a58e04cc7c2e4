"""runforge: runs (maximal periodicities) and total run length of words.

Exact run enumeration with two independent engines, exhaustive extremal
search over all words of a length, closed-form bound checks, exact expected
total run length with its asymptotic density, and a seeded annealing search,
all behind one CLI.
"""

__version__ = "0.1.0"

from .anneal import AnnealConfig, SearchResult, anneal_max_trl
from .constructions import (
    BoundCheckReport,
    check_upper_bound,
    lower_bound_holds,
    trl_u_formula,
    upper_bound_expr,
    word_min_trl,
    word_u,
)
from .errors import (
    CapacityError,
    InternalCheckError,
    UnsupportedAlphabetError,
    WordSyntaxError,
)
from .expectation import (
    DensityEstimate,
    ExpectationReport,
    expected_trl_exact,
    expected_trl_oracle,
    format_rational,
    mobius,
    primitive_count,
    s2_limit,
    trl_density,
)
from .runs import Run, RunStats, coverage, find_runs_fast, find_runs_oracle, run_stats
from .search import (
    TauRecord,
    ViolationReport,
    tau_exhaustive,
    verify_four_runs_theorem,
    verify_pair_coverage,
)
from .words import (
    Word,
    canonical_form,
    complement,
    has_period,
    is_primitive,
    minimal_period,
    parse_word,
    reverse,
)

__all__ = [
    "__version__",
    "AnnealConfig",
    "BoundCheckReport",
    "CapacityError",
    "DensityEstimate",
    "ExpectationReport",
    "InternalCheckError",
    "Run",
    "RunStats",
    "SearchResult",
    "TauRecord",
    "UnsupportedAlphabetError",
    "ViolationReport",
    "Word",
    "WordSyntaxError",
    "anneal_max_trl",
    "canonical_form",
    "check_upper_bound",
    "complement",
    "coverage",
    "expected_trl_exact",
    "expected_trl_oracle",
    "find_runs_fast",
    "find_runs_oracle",
    "format_rational",
    "has_period",
    "is_primitive",
    "lower_bound_holds",
    "minimal_period",
    "mobius",
    "parse_word",
    "primitive_count",
    "reverse",
    "run_stats",
    "s2_limit",
    "tau_exhaustive",
    "trl_density",
    "trl_u_formula",
    "upper_bound_expr",
    "verify_four_runs_theorem",
    "verify_pair_coverage",
    "word_min_trl",
    "word_u",
]
