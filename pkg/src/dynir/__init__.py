"""Exact finite-field arithmetic and dynamical irreducibility tests.

A polynomial is dynamically irreducible (stable) over a finite field when
every iterate under self-composition stays irreducible.  This package
decides or bounds that property with exact tower arithmetic:

* unicritical polynomials: a complete decision via power-residue tests on
  the adjusted critical orbit;
* cubics: a recursive two-condition test (a base-field square sequence
  plus cube tests up an extension tower), the one-level family criterion
  for conjugates of x^3 - 3x, and the parity-of-factors necessary check;
* shifted linearized polynomials a_p*x^p - a_1*x - a_0: the trace
  irreducibility criterion and the proof-backed guarantee that the second
  (or, in characteristic 2, third) iterate is reducible;
* an independent factorization oracle over any tower level for
  cross-validation.
"""

from .errors import DynirError
from .ffield import (
    FieldDesc,
    FieldElem,
    ResidueVerdict,
    adjoin_sqrt_minus3,
    arith,
    build_field,
    extend_field,
    frobenius,
    is_rth_power,
    lift,
    lower,
    norm,
    sqrt,
    trace,
)
from .polyring import (
    FactorList,
    Poly,
    affine_conjugate,
    capelli_consistency,
    compose,
    discriminant,
    factor,
    from_string,
    is_irreducible,
    iterate,
    resultant,
    roots_in_field,
    to_string,
)
from .unicritical import (
    OrbitReport,
    UnicriticalForm,
    Verdict,
    VerdictKind,
    adjusted_critical_orbit,
    detect_unicritical,
    hypothesis_check,
    pair_test,
    step_test,
    unicritical_verdict,
)
from .cubic import (
    DepressedCubic,
    chu_polynomial,
    chu_sequence,
    chu_test,
    condition1_sequence,
    condition2_check,
    depress,
    dickson_test,
    gnos_check,
    make_depressed,
    recursive_test,
)
from .linearized import (
    CohenWitness,
    ShiftedLinearized,
    cohen_test,
    linearized_verdict,
    trace_obstruction,
    verify_theorem52,
)

__version__ = "0.1.0"

__all__ = [name for name in dir() if not name.startswith("_")]
