"""Unit-edge 3D realization and geometric predicates.

A deltahedron is a triangulation realized with every edge at length 1.
Realization minimizes the sum of squared edge-length residuals with a
damped Gauss-Newton (Levenberg-Marquardt) loop over seeded multi-starts.
Gauge freedom (rigid motions) is left free; the damping handles the six
singular directions at the scales this package targets (<= ~100 vertices).

Tolerance ladder, used package-wide:
  TOL_ENERGY  convergence threshold on the squared-residual sum
  TOL_EDGE    per-edge acceptance on |length - 1|
  EPS_GEOM    geometric predicate tolerance
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from sonobe import _kernels
from sonobe.errors import DegenerateNormal, ZeroLengthEdge, ZeroVolume
from sonobe.surface import TriangleMesh, edge_faces_map, genus

TOL_ENERGY = 1e-10
TOL_EDGE = 1e-4
EPS_GEOM = 1e-9

# LM keeps polishing below the convergence tolerance until it hits this
# floor, so converged embeddings are accurate to near machine precision.
_ENERGY_FLOOR = 1e-28


@dataclass(eq=False)
class Embedding:
    """3D coordinates per vertex; target edge length is 1 (dimensionless)."""

    coords: np.ndarray
    mesh: TriangleMesh

    def __post_init__(self):
        self.coords = np.ascontiguousarray(self.coords, dtype=float)
        if self.coords.shape != (self.mesh.vertex_count, 3):
            raise ValueError(
                f"coordinate shape {self.coords.shape} does not match "
                f"{self.mesh.vertex_count} vertices"
            )
        if not np.all(np.isfinite(self.coords)):
            raise ValueError("coordinates must be finite")


@dataclass(eq=False)
class RealizationReport:
    embedding: Embedding
    final_energy: float
    converged: bool
    restarts_used: int
    self_intersecting: bool


def edges_array(mesh: TriangleMesh) -> np.ndarray:
    return np.ascontiguousarray(np.asarray(mesh.edges, dtype=np.int32))


def edge_energy(mesh: TriangleMesh, emb: Embedding) -> float:
    """Sum over edges of (length - 1)^2."""
    return _kernels.edge_energy(emb.coords, edges_array(mesh))


def energy_gradient(mesh: TriangleMesh, emb: Embedding) -> np.ndarray:
    """Exact analytic gradient of edge_energy, one 3-vector per vertex."""
    edges = edges_array(mesh)
    lengths = _kernels.edge_lengths(emb.coords, edges)
    if float(lengths.min()) < 1e-12:
        k = int(lengths.argmin())
        raise ZeroLengthEdge(f"edge {mesh.edges[k]} has zero length")
    return _kernels.energy_gradient(emb.coords, edges)


def rescale_to_unit_edges(mesh: TriangleMesh, coords: np.ndarray) -> np.ndarray:
    """Uniformly scale coordinates so the mean edge length is 1."""
    coords = np.asarray(coords, dtype=float)
    mean = float(_kernels.edge_lengths(coords, edges_array(mesh)).mean())
    if mean < 1e-12:
        raise ZeroLengthEdge("cannot rescale: mean edge length is zero")
    return coords / mean


def _lm_minimize(coords0, edges, tol_energy, max_iterations=400):
    """Damped Gauss-Newton on the edge-length residuals.

    Returns (coords, energy).  Identity damping keeps the normal matrix
    regular despite the rigid-motion null space.
    """
    x = coords0.reshape(-1).copy()
    nv = coords0.shape[0]

    def unpack(v):
        return v.reshape(nv, 3)

    lengths = _kernels.edge_lengths(unpack(x), edges)
    if float(lengths.min()) < 1e-9:
        return unpack(x), float(((lengths - 1.0) ** 2).sum())
    r, jac = _kernels.residual_jacobian(unpack(x), edges)
    energy = float(r @ r)
    lam = 1e-3
    eye = np.eye(x.size)
    for _ in range(max_iterations):
        if energy < _ENERGY_FLOOR:
            break
        g = jac.T @ r
        if float(np.abs(g).max()) < 1e-14:
            break
        a = jac.T @ jac
        accepted = False
        while lam < 1e15:
            try:
                step = np.linalg.solve(a + lam * eye, -g)
            except np.linalg.LinAlgError:
                lam *= 4.0
                continue
            x_new = x + step
            lengths = _kernels.edge_lengths(unpack(x_new), edges)
            if float(lengths.min()) < 1e-9:
                lam *= 4.0
                continue
            e_new = float(((lengths - 1.0) ** 2).sum())
            if e_new < energy:
                x = x_new
                energy = e_new
                lam = max(lam / 3.0, 1e-15)
                r, jac = _kernels.residual_jacobian(unpack(x), edges)
                accepted = True
                break
            lam *= 4.0
        if not accepted:
            break
    return unpack(x), energy


def spectral_start(mesh: TriangleMesh) -> np.ndarray:
    """Graph-Laplacian start: three smallest nontrivial eigenvectors.

    For the highly symmetric catalog solids this lands in the basin of the
    symmetric realization, which random starts often miss.
    """
    n = mesh.vertex_count
    lap = np.zeros((n, n))
    for a, b in mesh.edges:
        lap[a, b] -= 1.0
        lap[b, a] -= 1.0
        lap[a, a] += 1.0
        lap[b, b] += 1.0
    _, vecs = np.linalg.eigh(lap)
    coords = vecs[:, 1:4].copy()
    mean = float(_kernels.edge_lengths(coords, edges_array(mesh)).mean())
    if mean > 1e-12:
        coords /= mean
    return coords


def _random_start(rng, mesh: TriangleMesh) -> np.ndarray:
    scale = np.sqrt(len(mesh.faces)) / 4.0  # estimated circumradius
    return rng.normal(0.0, scale, size=(mesh.vertex_count, 3))


def realize(
    mesh: TriangleMesh,
    init: Embedding | None = None,
    *,
    tolerance: float = TOL_ENERGY,
    max_restarts: int = 64,
    seed: int = 0,
    use_spectral: bool = True,
    max_iterations: int = 400,
) -> RealizationReport:
    """Find a unit-edge embedding by seeded multi-start least squares.

    Start order: caller's init, then the spectral start, then Gaussian
    random starts.  The first converged, non-self-intersecting embedding
    (in start order) wins; if every converged start self-intersects the
    first of those is returned with the flag set; otherwise the report
    carries the best residual found and converged=False.  Deterministic
    for fixed (mesh, seed, options).
    """
    edges = edges_array(mesh)
    rng = np.random.default_rng(seed)

    def starts():
        if init is not None:
            yield init.coords
        if use_spectral:
            yield spectral_start(mesh)
        while True:
            yield _random_start(rng, mesh)

    best_coords = None
    best_energy = np.inf
    first_dirty: tuple[np.ndarray, float] | None = None
    used = 0
    for idx, start in enumerate(starts()):
        if idx >= max_restarts:
            break
        used = idx + 1
        coords, energy = _lm_minimize(start, edges, tolerance, max_iterations)
        if energy < best_energy:
            best_energy = energy
            best_coords = coords
        if energy < tolerance:
            deviation = float(np.abs(_kernels.edge_lengths(coords, edges) - 1.0).max())
            if deviation >= TOL_EDGE:
                continue
            emb = Embedding(coords, mesh)
            crossing, _ = self_intersects(mesh, emb)
            if not crossing:
                return RealizationReport(emb, energy, True, used, False)
            if first_dirty is None:
                first_dirty = (coords, energy)
    if first_dirty is not None:
        coords, energy = first_dirty
        return RealizationReport(Embedding(coords, mesh), energy, True, used, True)
    return RealizationReport(Embedding(best_coords, mesh), best_energy, False, used, False)


def self_intersects(mesh: TriangleMesh, emb: Embedding,
                    eps: float = EPS_GEOM) -> tuple[bool, tuple[tuple[int, int], ...]]:
    """Face pairs that intersect beyond any shared vertex or edge.

    Coplanar faces sharing an edge (dissected hexagons) do not count;
    coincident or crossing faces do.
    """
    faces = np.asarray(mesh.faces, dtype=np.int32)
    tris = np.ascontiguousarray(emb.coords[faces])
    pairs = _kernels.candidate_pairs(tris, pad=_kernels.EPS_BEYOND)
    if len(pairs) == 0:
        return False, ()
    mask = _kernels.collide_pairs(tris, faces, pairs, eps, _kernels.EPS_BEYOND)
    bad = sorted((int(i), int(j)) for (i, j), hit in zip(pairs, mask) if hit)
    return bool(bad), tuple(bad)


def face_normal(coords: np.ndarray, face, eps: float = EPS_GEOM) -> np.ndarray:
    a, b, c = (coords[v] for v in face)
    n = np.cross(b - a, c - a)
    ln = float(np.linalg.norm(n))
    if ln < eps:
        raise DegenerateNormal(f"face {tuple(face)} has zero area")
    return n / ln


def dihedral_angles(mesh: TriangleMesh, emb: Embedding) -> dict[tuple[int, int], float]:
    """Interior dihedral per edge, degrees in (0, 360).

    Convex edges measure below 180, flat edges 180, reflex edges above.
    Requires a consistently oriented mesh with outward normals.
    """
    coords = emb.coords
    ef = edge_faces_map(mesh)
    normals = [face_normal(coords, f) for f in mesh.faces]
    out: dict[tuple[int, int], float] = {}
    for edge, (f1, f2) in ef.items():
        a, b = edge
        # pick the face traversing a -> b as the reference side
        face = mesh.faces[f1]
        fwd = any(face[i] == a and face[(i + 1) % 3] == b for i in range(3))
        if not fwd:
            f1, f2 = f2, f1
        n1, n2 = normals[f1], normals[f2]
        axis = coords[b] - coords[a]
        axis = axis / np.linalg.norm(axis)
        angle = np.degrees(np.arctan2(float(np.dot(np.cross(n1, n2), axis)),
                                      float(np.dot(n1, n2))))
        out[edge] = (180.0 - angle) % 360.0
    return out


def signed_volume(mesh: TriangleMesh, emb: Embedding) -> float:
    c = emb.coords
    total = 0.0
    for a, b, d in mesh.faces:
        total += float(np.dot(c[a], np.cross(c[b], c[d])))
    return total / 6.0


def canonicalize_orientation(mesh: TriangleMesh, emb: Embedding) -> TriangleMesh:
    """Flip all faces if the signed volume is negative (genus 0 only).

    Leaves higher-genus meshes untouched: their orientation is taken as
    given.  Canonical edge ids are unchanged by the flip.
    """
    if genus(mesh) != 0:
        return mesh
    vol = signed_volume(mesh, emb)
    if abs(vol) < EPS_GEOM:
        raise ZeroVolume(f"signed volume {vol:g} is numerically zero")
    if vol > 0:
        return mesh
    flipped = tuple((a, c, b) for a, b, c in mesh.faces)
    return TriangleMesh(
        vertex_count=mesh.vertex_count,
        faces=flipped,
        edges=mesh.edges,
        name=mesh.name,
        flat_edges=mesh.flat_edges,
    )
