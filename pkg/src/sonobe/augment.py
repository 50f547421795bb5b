"""Pyramid caps with Sonobe proportions and cap-collision feasibility.

Three Sonobe modules form one low triangular pyramid over an equilateral
face: each lateral face is a right isosceles triangle with the right
angle at the apex, which fixes the apex at distance s/sqrt(2) from the
face corners and height s/sqrt(6) over the centroid (s = edge length).
Steep interior dihedrals leave too little exterior wedge for the two caps
meeting at an edge, so caps can be forced to intersect; that geometric
feasibility is decided here.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass

import numpy as np

from sonobe import _kernels
from sonobe.errors import DegenerateTriangle
from sonobe.realize import EPS_GEOM, Embedding, dihedral_angles, face_normal
from sonobe.surface import TriangleMesh, edge_faces_map

# Cap proportions for unit edges.
CAP_HEIGHT = 1.0 / np.sqrt(6.0)
CAP_APEX_DISTANCE = 1.0 / np.sqrt(2.0)
# Tilt of a cap's lateral face above its base face.
CAP_TILT_DEG = float(np.degrees(np.arctan(np.sqrt(2.0))))
# Interior dihedral above which the caps across an edge must collide:
# the exterior wedge 360 - dihedral falls below twice the cap tilt.
DIHEDRAL_LIMIT_DEG = 360.0 - 2.0 * CAP_TILT_DEG
EPS_ANGLE_DEG = 1e-6


class Wedge(enum.Enum):
    FEASIBLE = "feasible"
    BOUNDARY = "boundary"
    INFEASIBLE = "infeasible"


@dataclass(eq=False)
class AugmentedModel:
    """Base embedding plus one cap apex per face.

    Augmented vertex ids: 0..V-1 are base vertices, V+f is the apex of
    face f.  cap_faces holds the 3F lateral triangles in face order,
    windings consistent with the base orientation.
    """

    base: Embedding
    apexes: np.ndarray
    cap_faces: tuple[tuple[int, int, int], ...]

    @property
    def all_coords(self) -> np.ndarray:
        return np.vstack([self.base.coords, self.apexes])


@dataclass(eq=False)
class CapReport:
    feasible: bool
    colliding_pairs: tuple[tuple[int, int], ...]
    edge_wedge_angles: dict[tuple[int, int], float]
    boundary_contacts: tuple[tuple[int, int], ...]


def cap_apex(triangle: np.ndarray, outward_normal: np.ndarray) -> np.ndarray:
    """Apex of the Sonobe cap over an equilateral triangle.

    centroid + (s/sqrt(6)) * outward_normal, which puts the apex at
    s/sqrt(2) from each corner and makes every lateral face right
    isosceles.
    """
    triangle = np.asarray(triangle, dtype=float)
    sides = np.array([
        np.linalg.norm(triangle[1] - triangle[0]),
        np.linalg.norm(triangle[2] - triangle[1]),
        np.linalg.norm(triangle[0] - triangle[2]),
    ])
    s = float(sides.mean())
    if s < 1e-12:
        raise DegenerateTriangle("triangle has zero size")
    if float(np.abs(sides - s).max()) > 1e-3 * s:
        raise DegenerateTriangle(
            f"triangle is not equilateral within tolerance: sides {sides}"
        )
    centroid = triangle.mean(axis=0)
    return centroid + (s / np.sqrt(6.0)) * np.asarray(outward_normal, dtype=float)


def augment(mesh: TriangleMesh, emb: Embedding) -> AugmentedModel:
    """Cap every face; requires a converged, outward-oriented embedding."""
    apexes = np.empty((len(mesh.faces), 3))
    cap_faces: list[tuple[int, int, int]] = []
    nv = mesh.vertex_count
    for f, face in enumerate(mesh.faces):
        tri = emb.coords[list(face)]
        apexes[f] = cap_apex(tri, face_normal(emb.coords, face))
        apex_id = nv + f
        a, b, c = face
        cap_faces.extend([(a, b, apex_id), (b, c, apex_id), (c, a, apex_id)])
    return AugmentedModel(base=emb, apexes=apexes, cap_faces=tuple(cap_faces))


def wedge_precheck(interior_dihedral_deg: float) -> Wedge:
    """Fast per-edge test: do the two caps at this edge fit the wedge?

    Each lateral face rises CAP_TILT_DEG above its base, so the caps need
    2*CAP_TILT_DEG of the exterior wedge 360 - dihedral.
    """
    delta = float(interior_dihedral_deg)
    if abs(delta - DIHEDRAL_LIMIT_DEG) <= EPS_ANGLE_DEG:
        return Wedge.BOUNDARY
    if delta > DIHEDRAL_LIMIT_DEG:
        return Wedge.INFEASIBLE
    return Wedge.FEASIBLE


def cap_feasibility(model: AugmentedModel, eps: float = EPS_GEOM) -> CapReport:
    """Authoritative cap-collision decision by pairwise triangle tests.

    All cap faces of distinct base faces are tested against each other;
    contact along shared base vertices/edges is not a collision, and
    exact coplanar contact at the wedge limit is reported as a boundary
    contact, not a collision.  The per-edge wedge angles provide the fast
    screen and the report's angle data.
    """
    mesh = model.base.mesh
    coords = model.all_coords
    n_faces = len(mesh.faces)

    edge_wedge: dict[tuple[int, int], float] = {}
    boundary: list[tuple[int, int]] = []
    boundary_face_pairs: set[tuple[int, int]] = set()
    two_sided = {e: fs for e, fs in edge_faces_map(mesh).items() if len(fs) == 2}
    if two_sided:
        dihedrals = _dihedrals_tolerant(mesh, model.base, two_sided)
        for edge, delta in dihedrals.items():
            edge_wedge[edge] = 360.0 - delta
            if wedge_precheck(delta) is Wedge.BOUNDARY:
                boundary.append(edge)
                fa, fb = two_sided[edge]
                boundary_face_pairs.add((fa, fb) if fa < fb else (fb, fa))

    cap_ids = np.asarray(model.cap_faces, dtype=np.int32)
    tris = np.ascontiguousarray(coords[cap_ids])
    pairs = _kernels.candidate_pairs(tris, pad=_kernels.EPS_BEYOND)
    # only caps of distinct base faces can collide
    keep = (pairs[:, 0] // 3) != (pairs[:, 1] // 3)
    pairs = pairs[keep]
    colliding: set[tuple[int, int]] = set()
    if len(pairs):
        mask = _kernels.collide_pairs(tris, cap_ids, pairs, eps, _kernels.EPS_BEYOND)
        for (i, j), hit in zip(pairs, mask):
            if hit:
                fa, fb = int(i) // 3, int(j) // 3
                key = (fa, fb) if fa < fb else (fb, fa)
                # exact coplanar contact at the wedge limit is a boundary
                # contact, not a collision (paper folds tolerate it)
                if key not in boundary_face_pairs:
                    colliding.add(key)
    pairs_out = tuple(sorted(colliding))
    return CapReport(
        feasible=not pairs_out,
        colliding_pairs=pairs_out,
        edge_wedge_angles=edge_wedge,
        boundary_contacts=tuple(sorted(boundary)),
    )


def _dihedrals_tolerant(mesh, emb, two_sided):
    """dihedral_angles, but only for edges with two faces (open rigs)."""
    if len(two_sided) == len(mesh.edges):
        return dihedral_angles(mesh, emb)
    coords = emb.coords
    normals = {f: face_normal(coords, mesh.faces[f]) for fs in two_sided.values() for f in fs}
    out = {}
    for edge, (f1, f2) in two_sided.items():
        a, b = edge
        face = mesh.faces[f1]
        if not any(face[i] == a and face[(i + 1) % 3] == b for i in range(3)):
            f1, f2 = f2, f1
        n1, n2 = normals[f1], normals[f2]
        axis = coords[b] - coords[a]
        axis = axis / np.linalg.norm(axis)
        angle = np.degrees(np.arctan2(float(np.dot(np.cross(n1, n2), axis)),
                                      float(np.dot(n1, n2))))
        out[edge] = (180.0 - angle) % 360.0
    return out


def hinge_model(interior_dihedral_deg: float) -> AugmentedModel:
    """Two unit triangles joined at one edge, both capped: a test rig.

    The hinge edge is (0, 1) along the x axis; face 0 lies in the z=0
    plane, face 1 is rotated to the requested interior dihedral.  The rig
    is an open surface built directly (it bypasses closed-manifold
    validation) and exists for collision oracles and threshold sweeps.
    """
    delta = np.radians(float(interior_dihedral_deg))
    h = np.sqrt(3.0) / 2.0
    coords = np.array([
        [0.0, 0.0, 0.0],
        [1.0, 0.0, 0.0],
        [0.5, -h, 0.0],
        # face 1's far vertex: exterior wedge is measured on the +y side
        [0.5, -h * np.cos(delta), h * np.sin(delta)],
    ])
    # windings chosen so both normals point into the exterior wedge
    mesh = TriangleMesh(
        vertex_count=4,
        faces=((0, 1, 2), (1, 0, 3)),
        edges=((0, 1), (0, 2), (0, 3), (1, 2), (1, 3)),
        name=f"hinge_{interior_dihedral_deg:g}",
    )
    return augment(mesh, Embedding(coords, mesh))


def augmented_vertex_edges(model: AugmentedModel) -> dict[int, tuple[int, int]]:
    """Per original vertex: (valley edge count, mountain edge count).

    Valley edges join original vertices (exactly the base edges); mountain
    edges run from an original vertex to a cap apex, one per incident face.
    """
    mesh = model.base.mesh
    nv = mesh.vertex_count
    valley = {v: 0 for v in range(nv)}
    for a, b in mesh.edges:
        valley[a] += 1
        valley[b] += 1
    mountain = {v: 0 for v in range(nv)}
    seen = set()
    for a, b, apex in model.cap_faces:
        for v in (a, b):
            if (v, apex) not in seen:
                seen.add((v, apex))
                mountain[v] += 1
    return {v: (valley[v], mountain[v]) for v in range(nv)}
