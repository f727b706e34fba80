"""
Configuration constants, enums, and environment overrides.
"""

import os
from enum import Enum

from dotenv import load_dotenv

load_dotenv()


# =============================================================================
# FIELD & RANDOMNESS
# =============================================================================

DEFAULT_PRIME = int(os.getenv("IDEALCALC_PRIME", "32003"))
SECOND_PRIME = 31991          # field-stability reruns
DEFAULT_SEED = int(os.getenv("IDEALCALC_SEED", "1"))

# General linear forms are certified by agreement across this many seeds
GENERICITY_SEEDS = 3
RANDOM_RETRY_BOUND = 10

# int64 matrix products accumulate many p^2 terms
MAX_PRIME = 2**25


# =============================================================================
# RINGS & GROEBNER
# =============================================================================

MAX_VARS = 16
DEGREE_GUARD = int(os.getenv("IDEALCALC_DEGREE_GUARD", "40"))
ELIMINATION_VARIABLE = "t"


# =============================================================================
# COHOMOLOGY WINDOWS
# =============================================================================

# Extra degrees added on both sides of the default truncation window
WINDOW_PADDING = int(os.getenv("IDEALCALC_WINDOW_PADDING", "0"))
STABILIZATION_STEP = 4


# =============================================================================
# CLI & CORPUS
# =============================================================================

CORPUS_PATH = os.getenv("IDEALCALC_CORPUS", "corpus")
CORPUS_MANIFEST = "manifest.json"
WORKERS = int(os.getenv("IDEALCALC_WORKERS", "1"))
LOG_LEVEL = os.getenv("IDEALCALC_LOG_LEVEL", "WARNING")

FUZZ_DEFAULT_COUNT = 200


# =============================================================================
# ENUMS
# =============================================================================

class FieldKind(Enum):
    PRIME = "prime"
    RATIONALS = "rationals"


class OrderKind(Enum):
    GREVLEX = "grevlex"
    LEX = "lex"
    ELIMINATION = "elimination"
    SCHREYER = "schreyer"


class PositionPolicy(Enum):
    POSITION_OVER_TERM = "pot"
    TERM_OVER_POSITION = "top"


class OutputFormat(Enum):
    JSON = "json"
    TEXT = "text"
    CSV = "csv"


class Verdict(Enum):
    HOLDS = "holds"
    VIOLATED = "violated"
    NOT_APPLICABLE = "not-applicable"


class StabilizationStatus(Enum):
    CERTIFIED = "certified"
    WINDOW_LIMITED = "window-limited"
