"""Exact Zariski chambers and infinitesimal Newton-Okounkov polygons on blown-up surfaces."""

__version__ = "0.1.0"

from .criteria import (  # noqa: E402
    Certificate,
    CertificateKind,
    Outcome,
    SeshadriResult,
    Verdict,
    effective_global_generation_check,
    gross_popescu_check,
    k_very_ample_check,
    koszul_check,
    np_check,
    power_np_check,
    projective_normality_check,
    projective_normality_counts,
    reider_global_generation,
    reider_very_ample,
    seshadri,
    singular_divisor_certificate,
)
from .exactnum import QuadraticNumber, format_exact, parse_exact, qn_arith, qn_compare  # noqa: E402
from .lattice import (  # noqa: E402
    BlownUpLattice,
    CurveClass,
    DivisorClass,
    IntersectionLattice,
    SurfaceModel,
    blowup_extend,
    lattice_new,
    pair,
)
from .models import (  # noqa: E402
    elliptic_square_model,
    load_model,
    parse_family,
    product_elliptic_model,
    rho_one_abelian_model,
    save_model,
)
from .polygon import (  # noqa: E402
    LAMBDA,
    NOKPolygon,
    RegionLambda,
    area,
    build_generic_polygon,
    contains_inverted_simplex,
    envelope_check,
    lambda_interior_meets,
    largest_inverted_simplex,
    triangle_containment_check,
)
from .verify import oracle_zariski, run_suite, sample_models  # noqa: E402
from .zariski import RayChambers, ZariskiDecomposition, ray_chambers, zariski_decompose  # noqa: E402
