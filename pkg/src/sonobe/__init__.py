"""Augmented deltahedra from Sonobe modules: validation, realization,
caps, blueprints, and nets."""

from sonobe.augment import (
    AugmentedModel,
    CapReport,
    Wedge,
    augment,
    cap_apex,
    cap_feasibility,
    hinge_model,
    wedge_precheck,
)
from sonobe.blueprint import (
    AssemblyPlan,
    ModuleColoring,
    VertexDiagram,
    assembly_plan,
    color_modules,
    diagram_layout,
    module_count,
    vertex_diagram,
)
from sonobe.catalog import CatalogEntry, get, list_catalog, parse_off, torus_grid, write_off
from sonobe.net import PlanarNet, net_overlaps, net_svg, refold_deviation, unfold
from sonobe.realize import (
    Embedding,
    RealizationReport,
    canonicalize_orientation,
    dihedral_angles,
    edge_energy,
    energy_gradient,
    realize,
    self_intersects,
)
from sonobe.surface import (
    MixedFacePolyhedron,
    TriangleMesh,
    build_mesh,
    build_mixed_polyhedron,
    dissect_hexagons,
    euler_characteristic,
    genus,
    vertex_degrees,
)

__version__ = "0.1.0"

__all__ = [
    "AssemblyPlan",
    "AugmentedModel",
    "CapReport",
    "CatalogEntry",
    "Embedding",
    "MixedFacePolyhedron",
    "ModuleColoring",
    "PlanarNet",
    "RealizationReport",
    "TriangleMesh",
    "VertexDiagram",
    "Wedge",
    "assembly_plan",
    "augment",
    "build_mesh",
    "build_mixed_polyhedron",
    "canonicalize_orientation",
    "cap_apex",
    "cap_feasibility",
    "color_modules",
    "diagram_layout",
    "dihedral_angles",
    "dissect_hexagons",
    "edge_energy",
    "energy_gradient",
    "euler_characteristic",
    "genus",
    "get",
    "hinge_model",
    "list_catalog",
    "module_count",
    "net_overlaps",
    "net_svg",
    "parse_off",
    "realize",
    "refold_deviation",
    "self_intersects",
    "torus_grid",
    "unfold",
    "vertex_degrees",
    "vertex_diagram",
    "wedge_precheck",
    "write_off",
]
