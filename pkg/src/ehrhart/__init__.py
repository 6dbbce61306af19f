"""Exact Ehrhart polynomials of lattice polytopes: counting, interpolation,
coefficient inequalities and root analysis."""

from .algebra import (
    BinomialBasisPolynomial,
    RationalPolynomial,
    bernoulli_polynomial,
    binomial,
    forward_differences,
    newton_forward,
    squarefree_decomposition,
    stirling_first,
    sturm_real_roots,
    sturm_sequence,
    to_binomial_basis,
)
from .audit import AuditEntry, AuditReport, NotDimension2, audit, audit_dim2
from .engine import (
    EhrhartProfile,
    ehrhart_polynomial,
    evaluate,
    generating_numerator,
    interior_count_via_reciprocity,
)
from .geometry import (
    DegeneratePolytope,
    Facet,
    LatticePolytope,
    build_polytope,
    count_lattice_points,
    dilate,
    facet_enumeration,
    lattice_points,
    load_polytope,
)
from .roots import (
    DimensionTooLarge,
    NonConvergence,
    RootReport,
    check_root_bounds,
    dim2_root_region_member,
    dimension_bound_table,
    find_roots,
    marden_max_root,
    real_roots_below_one,
    verify_proof_machinery,
)
from .zoo import (
    ZooSpec,
    check_cyclic_conjecture,
    check_fiber_lemma,
    generate,
    largest_real_root_order_polytope,
    order_polytope_ehrhart,
    parse_zoo_spec,
    random_batch,
)

__version__ = "0.1.0"
