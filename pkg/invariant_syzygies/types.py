"""Default definitions and enumerations for the invariant syzygy workbench."""

from dataclasses import dataclass
from enum import Enum, IntEnum

"""Pipeline stages in execution order, with the quantity each one produces"""
PIPELINE_STAGES = {
    "closure": "group_closure",  # all group elements, breadth-first from the identity
    "generators": "minimal_generators",  # minimal homogeneous invariants f_1..f_r, degrees descending
    "completeness": "check_generation",  # generators span every R_d up to |G|
    "tau": "hilbert_ideal",  # Groebner basis of I = (f_1..f_r) in T and its standard monomials
    "syzygy_ideal": "syzygy_ideal",  # J by elimination of the y block
    "resolution": "betti_table",  # Schreyer syzygies, pruned to the minimal resolution
    "hilbert": "hilbert_series",  # H(R,t) from Betti numbers, Molien cross-check in characteristic 0
    "module_u": "first_syzygies_over_t",  # relations among f_1..f_r with coefficients in T
    "oracle": "koszul_betti_numbers",  # degreewise Tor dimensions, independent of the resolution
}


class FieldKind(Enum):
    """Enumeration for supported base fields."""

    RATIONALS = "rational"
    PRIME_FIELD = "prime"


class OrderKind(Enum):
    """Enumeration for monomial orders."""

    WEIGHTED_GREVLEX = "weighted_grevlex"
    LEX = "lex"
    BLOCK_ELIMINATION = "block_elimination"


class Comparison(IntEnum):
    """Result of comparing two monomials."""

    LESS = -1
    EQUAL = 0
    GREATER = 1


class GroupKind(Enum):
    """Enumeration for the ways a finite linear group can be specified."""

    PERMUTATION = "permutation"
    MATRICES = "matrices"
    CYCLIC_SCALAR = "cyclic_scalar"


class BoundKind(Enum):
    """Enumeration for the nature of a checked inequality."""

    THEOREM = "theorem"  # proven, a violation is an implementation bug
    IDENTITY = "identity"  # proven equality
    CONJECTURE = "conjecture"  # reported as a finding, never a failure


class BoundStatus(Enum):
    """Enumeration for the verdict of one inequality record."""

    holds = "holds"
    sharp = "sharp"
    violated = "VIOLATED"
    conjecture_holds = "conjecture-holds"
    conjecture_sharp = "conjecture-sharp"
    conjecture_counterexample = "CONJECTURE-COUNTEREXAMPLE"


class ExitCode(IntEnum):
    """Process exit codes of the command line interface."""

    OK = 0
    CONJECTURE_COUNTEREXAMPLE = 3
    USAGE = 64  # malformed input or command line
    UNSUPPORTED = 65  # modular case, closure cap or time budget exceeded
    BOUND_VIOLATION = 70  # proven bound violated, i.e. an implementation bug


@dataclass(frozen=True)
class WorkbenchDefaults:
    """Dataclass for workbench defaults to be used."""

    # Largest group closure enumerated before giving up
    GROUP_CAP: int = 5000
    # Homological degree up to which bounds are reported
    I_MAX_DEF: int = 8
    # Wall clock budget in seconds, None means unlimited
    BUDGET_SECONDS_DEF: float = None
    # Worker processes for a sweep over spec files
    JOBS_DEF: int = 1
    # Buchberger iterations between two budget checks
    INTERRUPT_EVERY: int = 25
    # The Koszul oracle runs inside verify only up to this many variables of S
    ORACLE_MAX_VARIABLES: int = 6
    # Names of the coordinate functions of V and of the variables of S
    T_PREFIX: str = "y"
    S_PREFIX: str = "x"
