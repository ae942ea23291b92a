"""Finite past-equivalence covers of minimal one-sided shift spaces.

Build certified finite languages from generators (substitutions, Sturmian
words, Toeplitz words, matrix shifts of finite type), compute past sets and
past-equivalence structure, construct finite levels of the past-equivalence
cover with its connecting maps and level shift, and verify the resulting
structure theorems (isolated orbits, fiber cardinalities, two-sided shadow)
against brute-force oracles at desk scale.
"""

from .analysis import (
    ComplexityProfile,
    LeftSpecialScan,
    SpecialRay,
    TailClassPartition,
    adjusted_set,
    bounded_growth_check,
    complexity,
    j_maximal,
    left_special_rays,
    left_special_words,
    path_count,
    property_star_check,
    property_star_star_check,
    tail_classes,
)
from .cli import main, run_config
from .cover import (
    CoverClass,
    FiberReport,
    LevelIndex,
    QuotientBuilder,
    QuotientLevel,
    connecting_map,
    default_chain,
    default_refinements,
    extract_chain,
    growing_chain,
    iota_level,
    isolated_classes,
    pi_fiber,
    poset_leq,
    quotient_level,
    shift_on_level,
)
from .errors import (
    ConfigError,
    ConstructionError,
    HorizonExceededError,
    ShiftCoverError,
    StabilizationError,
)
from .export import export_complexity_csv, export_dot
from .generators import (
    MatrixSFT,
    Ray,
    SturmianSpec,
    SubstitutionSystem,
    ToeplitzSpec,
    WordSource,
    language_from_generator,
    looks_periodic,
    mechanical_word,
    standard_sturmian_prefix,
)
from .pastequiv import (
    STABILITY_WINDOW,
    PastClass,
    PastSet,
    is_isolated_in_past_equiv,
    isolation_horizon,
    past_classes,
    past_set,
    stabilized_past_set,
    unique_past_horizon,
)
from .verify import (
    Workspace,
    backward_rays,
    naive_oracle_quotient,
    verify_fiber_counts,
    verify_isolated_orbits,
    verify_two_sided_shadow,
)
from .words import LanguageTable, factors, table_from_text, table_from_words, validate_table

__version__ = "0.1.0"

__all__ = [name for name in dir() if not name.startswith("_")]
