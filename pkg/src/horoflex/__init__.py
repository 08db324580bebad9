"""Exact flexibility analysis of affine horospherical varieties.

Typical use::

    from horoflex import GroupSpec, build, flexibility

    h = build(GroupSpec((("A", 1),), torus_rank=1), [(2, 0), (1, 1), (1, 2)])
    flexibility(h).verdict   # 'FLEXIBLE'
"""
from .cones import Cone, cone, dual_cone, faces
from .errors import HoroflexError
from .horospherical import (
    FLEXIBLE,
    NOT_FLEXIBLE,
    UNDECIDED,
    Bounds,
    FlexReport,
    HoroVariety,
    build,
    codim_one_rays,
    dimension,
    find_lnd_root,
    flexibility,
    orbit_lattice,
    regularity_cone,
    significant_rays,
)
from .rootsystem import GroupSpec
from .semigroup import AffineSemigroup, module_generators, saturation_holes

__all__ = [
    "AffineSemigroup",
    "Bounds",
    "Cone",
    "FLEXIBLE",
    "FlexReport",
    "GroupSpec",
    "HoroVariety",
    "HoroflexError",
    "NOT_FLEXIBLE",
    "UNDECIDED",
    "build",
    "codim_one_rays",
    "cone",
    "dimension",
    "dual_cone",
    "faces",
    "find_lnd_root",
    "flexibility",
    "module_generators",
    "orbit_lattice",
    "regularity_cone",
    "saturation_holes",
    "significant_rays",
]
