"""Planar nets: unfold a realized deltahedron along a dual spanning tree.

Each face is carried into the root face's plane by composing hinge
rotations along the tree path, so placements stay rigidly congruent to
the 3D faces and the per-face isometries can be inverted to refold the
net (a conditioning check on deep trees).
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass

import numpy as np

from sonobe import _kernels
from sonobe.realize import Embedding, face_normal
from sonobe.surface import TriangleMesh, canonical_edge, edge_faces_map
from sonobe.svgdoc import SvgDoc

RETRY_BUDGET = 32


@dataclass(eq=False)
class PlanarNet:
    """Rigid 2D placements of all faces joined along a dual spanning tree."""

    mesh: TriangleMesh
    placements: tuple[tuple[int, np.ndarray], ...]  # (face id, (3,2) points)
    tree_edges: tuple[tuple[int, int, tuple[int, int]], ...]  # parent, child, hinge
    boundary_edges: tuple[tuple[int, int], ...]  # cut edges
    frames: tuple[tuple[int, np.ndarray, np.ndarray], ...]  # (face, R, t): 3D -> net
    overlap_free: bool
    overlapping_pairs: tuple[tuple[int, int], ...]
    attempts_used: int


def _dual_adjacency(mesh: TriangleMesh) -> dict[int, list[tuple[int, tuple[int, int]]]]:
    adj: dict[int, list[tuple[int, tuple[int, int]]]] = {f: [] for f in range(len(mesh.faces))}
    for edge, fs in edge_faces_map(mesh).items():
        if len(fs) == 2:
            a, b = fs
            adj[a].append((b, edge))
            adj[b].append((a, edge))
    for f in adj:
        adj[f].sort()
    return adj


def _rotation(axis: np.ndarray, angle: float) -> np.ndarray:
    kx, ky, kz = axis
    k = np.array([[0.0, -kz, ky], [kz, 0.0, -kx], [-ky, kx, 0.0]])
    return np.eye(3) + np.sin(angle) * k + (1.0 - np.cos(angle)) * (k @ k)


def _spanning_tree(mesh, root_face, order_rng=None):
    """BFS dual spanning tree; neighbor order optionally shuffled."""
    adj = _dual_adjacency(mesh)
    parent: dict[int, tuple[int, tuple[int, int]] | None] = {root_face: None}
    order = [root_face]
    queue = deque([root_face])
    while queue:
        f = queue.popleft()
        nbrs = adj[f]
        if order_rng is not None:
            nbrs = list(nbrs)
            order_rng.shuffle(nbrs)
        for g, edge in nbrs:
            if g not in parent:
                parent[g] = (f, edge)
                order.append(g)
                queue.append(g)
    return parent, order


def _place_faces(mesh, emb, root_face, parent, order):
    coords = emb.coords
    normals = {f: face_normal(coords, mesh.faces[f]) for f in range(len(mesh.faces))}
    frames: dict[int, tuple[np.ndarray, np.ndarray]] = {}

    a, b, _ = mesh.faces[root_face]
    e1 = coords[b] - coords[a]
    e1 = e1 / np.linalg.norm(e1)
    n = normals[root_face]
    e2 = np.cross(n, e1)
    r0 = np.stack([e1, e2, n])
    frames[root_face] = (r0, -r0 @ coords[a])

    for f in order[1:]:
        pf, edge = parent[f]
        u, v = edge
        axis = coords[v] - coords[u]
        axis = axis / np.linalg.norm(axis)
        nf = normals[f]
        npar = normals[pf]
        # rotate about the hinge until this face's plane matches the parent's;
        # aligning consistently oriented normals lands it on the open side
        angle = np.arctan2(float(np.dot(np.cross(nf, npar), axis)), float(np.dot(nf, npar)))
        rot = _rotation(axis, angle)
        rp, tp = frames[pf]
        r = rp @ rot
        t = rp @ (coords[u] - rot @ coords[u]) + tp
        frames[f] = (r, t)

    placements = []
    for f in range(len(mesh.faces)):
        r, t = frames[f]
        pts = (coords[list(mesh.faces[f])] @ r.T) + t
        placements.append((f, np.ascontiguousarray(pts[:, :2])))
    return placements, frames


def _overlaps(tris2d, face_ids):
    pts3 = np.stack([np.column_stack([t, np.zeros(3)]) for t in tris2d])
    pairs = _kernels.candidate_pairs(pts3, pad=0.0)
    bad = []
    for i, j in pairs:
        if _kernels.tri_overlap_area_2d(tris2d[i], tris2d[j]) > _kernels.EPS_AREA:
            bad.append((face_ids[i], face_ids[j]))
    return tuple(sorted(bad))


def net_overlaps(net: PlanarNet) -> tuple[tuple[int, int], ...]:
    """Pairs of placed faces whose interiors intersect (fold contact excluded)."""
    return _overlaps([p for _, p in net.placements], [f for f, _ in net.placements])


def unfold(
    mesh: TriangleMesh,
    emb: Embedding,
    root_face: int = 0,
    *,
    seed: int = 0,
    max_attempts: int = RETRY_BUDGET,
) -> PlanarNet:
    """Unfold into the plane, retrying spanning trees until overlap-free.

    The root face is placed with its first edge on the x axis.  Attempt 0
    uses face-id BFS order; later attempts shuffle the dual neighbor order
    with a seeded generator.  Returns the first overlap-free net, else the
    least-overlapping one flagged (overlap is reported, never raised).
    """
    best = None
    for attempt in range(max_attempts):
        rng = None if attempt == 0 else np.random.default_rng([seed, attempt])
        parent, order = _spanning_tree(mesh, root_face, rng)
        placements, frames = _place_faces(mesh, emb, root_face, parent, order)
        bad = _overlaps([p for _, p in placements], [f for f, _ in placements])
        tree = tuple(sorted(
            (pe[0], f, pe[1]) for f, pe in parent.items() if pe is not None
        ))
        used = {edge for _, _, edge in tree}
        boundary = tuple(e for e in mesh.edges if e not in used)
        net = PlanarNet(
            mesh=mesh,
            placements=tuple(placements),
            tree_edges=tree,
            boundary_edges=boundary,
            frames=tuple((f, r, t) for f, (r, t) in sorted(frames.items())),
            overlap_free=not bad,
            overlapping_pairs=bad,
            attempts_used=attempt + 1,
        )
        if not bad:
            return net
        if best is None or len(bad) < len(best.overlapping_pairs):
            best = net
    return best


def refold_deviation(net: PlanarNet, emb: Embedding) -> float:
    """Max distance between inverted placements and the 3D vertices.

    Inverts each face's composed hinge transform; measures how well the
    net refolds onto the original embedding.
    """
    mesh = net.mesh
    frames = {f: (r, t) for f, r, t in net.frames}
    worst = 0.0
    for f, pts2 in net.placements:
        r, t = frames[f]
        lifted = np.column_stack([pts2, np.zeros(3)])
        back = (lifted - t) @ r  # rows through R^-1 = R^T
        worst = max(worst, float(np.abs(back - emb.coords[list(mesh.faces[f])]).max()))
    return worst


def net_svg(net: PlanarNet) -> str:
    """Cut edges solid, fold edges dashed, faces labeled by id, 5% margin."""
    all_pts = np.vstack([p for _, p in net.placements])
    lo = all_pts.min(axis=0)
    hi = all_pts.max(axis=0)
    margin = 0.05 * float((hi - lo).max())
    view = (float(lo[0]) - margin, float(lo[1]) - margin,
            float(hi[0] - lo[0]) + 2 * margin, float(hi[1] - lo[1]) + 2 * margin)
    doc = SvgDoc(view)
    width = 0.006 * float((hi - lo).max())

    fold_parent = {(pf, edge) for pf, _, edge in net.tree_edges}
    fold_child = {(cf, edge) for _, cf, edge in net.tree_edges}
    for f, pts in net.placements:
        face = net.mesh.faces[f]
        for i in range(3):
            e = canonical_edge(face[i], face[(i + 1) % 3])
            if (f, e) in fold_child:
                continue  # the parent draws this hinge
            dashed = (f, e) in fold_parent
            doc.line(pts[i], pts[(i + 1) % 3], width=width, dashed=dashed)
        doc.text(pts.mean(axis=0), str(f), size=6 * width)
    return doc.render()


def net_json_payload(net: PlanarNet) -> dict:
    """Placement dump with fixed field order: face id plus three points."""
    return {
        "faces": [
            {"face": f, "points": [[float(x), float(y)] for x, y in pts]}
            for f, pts in net.placements
        ],
        "fold_edges": [[int(a), int(b)] for _, _, (a, b) in net.tree_edges],
        "cut_edges": [[int(a), int(b)] for a, b in net.boundary_edges],
        "overlap_free": bool(net.overlap_free),
        "attempts_used": int(net.attempts_used),
    }
