"""Closed geodesics in quotient orbifolds and foliation leaf spaces.

Thin re-export of the compiled core: model-space kernels (Euclidean,
sphere, hyperbolic plane), discrete isometry groups, the double
curve-shortening iteration, Riemannian foliation reduction, and the
scenario runner.
"""

from ._core import (  # noqa: F401
    ClosedPair,
    ContractError,
    GeodesicResult,
    HorizontalResult,
    Isometry,
    IsometryGroup,
    LinearTorusFoliation,
    NonUniqueGeodesic,
    SchemaError,
    Space,
    SuspensionFoliation,
    affine_weyl_group,
    apply,
    axis_via_displacement_min,
    compose,
    distance,
    euclidean,
    exp_map,
    explicit_group,
    export_figure,
    find_horizontal_periodic_geodesic,
    fixed_point,
    fold,
    geodesic_point,
    hyperbolic2,
    hyperbolic_triangle_group,
    identity_isometry,
    inverse,
    iterate_shortening,
    lattice_group,
    linear_torus_foliation,
    log_map,
    make_auto_pair,
    make_isometry,
    make_pair,
    oracle_report,
    project_to_space,
    run_scenario,
    run_scenario_file,
    shorten_step,
    shortest_horizontal_length_oracle,
    spherical_group,
    sphere,
    suspension_foliation,
    translation_length,
    uniqueness_radius,
    word_element,
)

__all__ = [name for name in dir() if not name.startswith("_")]
__version__ = "0.1.0"
