"""Quadrature identities for conic domains under the spherical area measure.

Typical use::

    from conicquad import Conic, standard_map, spherical_identity, verify_identity, standard_family
    f, s = standard_map(Conic("ellipse", 2, 1))
    ident = spherical_identity(f, s)
    report = verify_identity(ident, standard_family(s, f), tol=1e-7)
"""
from .catalog import CatalogEntry
from .classify import LocalData, Verdict, classify_local, residue_oracle
from .curves import (
    Conic,
    DegenerateCircle,
    GenusReport,
    HermitianCurve,
    asymptotic_directions,
    conic_polynomial,
    genus_report,
    invert_curve,
    schwarz_branches,
    singular_points,
)
from .engine import (
    QuadratureIdentity,
    QuadratureNode,
    euclidean_identity,
    node_locus,
    physical_nodes,
    rotate_for_regularity,
    scaled_identity,
    spherical_identity,
)
from .maps import (
    ANTIPODAL_FREE,
    REAL_AXIS,
    UNIT_CIRCLE,
    Divisor,
    RationalMap,
    SymmetricSurface,
    branch_points,
    divisor_of,
    reflect,
    standard_map,
)
from .sphere import (
    INFINITY,
    ProjectivePoint,
    SpherePoint,
    antipode,
    mobius_rotate,
    sphere_to_ray,
    sphere_to_stereographic,
    spherical_density,
    stereographic_to_sphere,
)
from .verify import (
    TestFunction,
    VerifyReport,
    euclidean_limit_check,
    integrate_pullback,
    null_quadrature_check,
    standard_family,
    verify_identity,
)

__version__ = "0.1.0"
