"""linkagelab: exact engine for checking linkage of ideals over modules.

The layers, bottom to top: prime-field polynomials and free-module vectors
(`poly`), Groebner bases with colon/intersection/syzygies (`groebner`),
quotient rings and presented modules (`quotient`), resolutions and Ext with
the derived invariants (`homology`), monomial associated primes
(`monomial`), the enumeration oracle (`oracle`), the linkage checks and
statement verifiers (`linkage`), and the session/CLI surface (`session`,
`cli`, `report`).
"""

from .errors import (
    DomainError,
    EngineError,
    ResourceError,
    SessionError,
    StructuralError,
)
from .poly import PrimeField, Poly, Ring, Vec, compare, leading_term, poly_arith
from .groebner import (
    GroebnerBasis,
    SubmoduleGens,
    buchberger,
    colon_by_ideal,
    eliminate,
    intersect,
    normal_form,
    schreyer_syzygies,
)
from .quotient import (
    IdealHandle,
    PresentedModule,
    QuotientRing,
    SubmoduleHandle,
    annihilator,
    as_quotient,
    colon_module,
    cyclic_module,
    hom_into_quotient,
    is_proper,
    quotient_module,
    regular_sequence_check,
    scalar_module,
    submodule_equal,
    support_equal,
)
from .homology import (
    ExtResult,
    FreeResolution,
    HomologicalProfile,
    canonical_module,
    depth,
    ext_over_R,
    ext_over_S,
    free_resolution,
    gdim_report,
    grade,
    height_on_module,
    injdim_report,
    is_gorenstein,
    is_unmixed,
    krull_dim,
    profile,
)
from .monomial import (
    MonomialIdeal,
    VariablePrime,
    mono_ass_primes,
    mono_min_primes,
    mono_unmixed,
)
from .oracle import FiniteAlgebra, FiniteModule, oracle_ass, oracle_colon, oracle_is_linked
from .linkage import (
    LinkageInstance,
    LinkageReport,
    VerifierReport,
    check_linked,
    crosscheck_artinian,
    generate_fixture,
    run_suite,
    verify_c6,
    verify_c8,
    verify_e4,
    verify_l6,
    verify_l7,
    verify_l10,
    verify_l13,
    verify_l14,
    verify_p3,
    verify_r2,
    verify_t2,
    verify_t3,
    verify_t5,
)
from .session import SessionFile, parse_session

__version__ = "0.1.0"
