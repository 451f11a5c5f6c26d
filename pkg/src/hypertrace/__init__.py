"""Exact hypergeometric monodromy, cyclotomic trace fields, and G-series audits."""

from .certify import (
    CertificateReport,
    EnumerationRow,
    audit_krammer_singularities,
    certify_krammer_route,
    certify_nonabelian_cubic,
    certify_quadratic_exclusion,
    enumerate_rank2,
)
from .cyclo import (
    CyclotomicField,
    CyclotomicNumber,
    SubfieldDescriptor,
    cyclotomic_field,
    fixed_field,
    galois_apply,
    quadratic_subfields,
    root_of_unity,
    sqrt_as_cyclotomic,
)
from .hyper import (
    HypergeometricDatum,
    MonodromyTriple,
    TriangleSignature,
    classify_rank2,
    is_irreducible,
    is_kummer_induced,
    monodromy_triple,
    triangle_signature,
)
from .linalg import ExactMatrix, QQ, char_poly, jordan_shape, kernel_basis
from .midconv import MonodromyTuple, double_cover_tuple, middle_convolution, verify_family
from .ratcore import (
    Rational,
    ResidueClass,
    lcm_upto,
    quadratic_discriminant,
    squarefree_part,
)
from .series import (
    DenominatorAudit,
    DifferentialOperator,
    SeriesSolution,
    denominator_audit,
    hadamard,
    hyp_operator,
    indicial_exponents,
    krammer_operator,
    operator_to_recurrence,
    pochhammer_series,
    solve_at_ordinary_point,
)
from .tracefield import (
    WordTraceSample,
    adjoint_trace_field_rank2,
    adjoint_trace_field_tuple,
    trace_field_rigid,
    trace_field_tuple,
)

__version__ = "0.1.0"
