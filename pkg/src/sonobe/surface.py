"""Combinatorics of closed triangulated surfaces.

Candidate deltahedra are plain vertex-indexed face lists.  Validation
checks the closed-manifold rules, repairs mixed windings where possible,
and derives the canonical edge list every other module keys on.
"""

from __future__ import annotations

from collections import defaultdict, deque
from dataclasses import dataclass, field, replace

from sonobe.errors import (
    DegenerateFace,
    Disconnected,
    NonManifoldEdge,
    OddResult,
    Unorientable,
    UnsupportedFaceSize,
)

Edge = tuple[int, int]


@dataclass(frozen=True)
class TriangleMesh:
    """Closed, consistently oriented, connected triangulation.

    Faces are counterclockwise seen from outside once an embedding is
    canonicalized.  `edges` is derived: (min, max) pairs in lexicographic
    order, so the index of an edge in this tuple is its stable id.
    `flat_edges` marks edges that are exactly flat (180 deg) in any
    faithful realization; hexagon dissection fills it in.
    """

    vertex_count: int
    faces: tuple[tuple[int, int, int], ...]
    edges: tuple[Edge, ...]
    name: str | None = None
    flat_edges: frozenset[Edge] = field(default_factory=frozenset)

    @property
    def face_count(self) -> int:
        return len(self.faces)

    @property
    def edge_count(self) -> int:
        return len(self.edges)


@dataclass(frozen=True)
class MixedFacePolyhedron:
    """Closed oriented surface whose faces are triangles or hexagons."""

    vertex_count: int
    faces: tuple[tuple[int, ...], ...]
    edges: tuple[Edge, ...]
    name: str | None = None


def canonical_edge(a: int, b: int) -> Edge:
    return (a, b) if a < b else (b, a)


def _face_edges(face) -> list[Edge]:
    n = len(face)
    return [canonical_edge(face[i], face[(i + 1) % n]) for i in range(n)]


def _derive_edges(faces) -> tuple[Edge, ...]:
    return tuple(sorted({e for f in faces for e in _face_edges(f)}))


def _check_faces_basic(vertex_count, faces, allowed_sizes):
    if not faces:
        raise DegenerateFace("face list is empty")
    for k, face in enumerate(faces):
        if len(face) not in allowed_sizes:
            raise UnsupportedFaceSize(
                f"face {k} has {len(face)} vertices; allowed: {sorted(allowed_sizes)}"
            )
        if len(set(face)) != len(face):
            raise DegenerateFace(f"face {k} repeats a vertex: {face}")
        for v in face:
            if not 0 <= v < vertex_count:
                raise DegenerateFace(f"face {k} references vertex {v} out of range")


def _edge_face_incidence(faces) -> dict[Edge, list[int]]:
    inc: dict[Edge, list[int]] = defaultdict(list)
    for k, face in enumerate(faces):
        for e in _face_edges(face):
            inc[e].append(k)
    return inc


def _check_manifold(incidence) -> None:
    for e, fs in incidence.items():
        if len(fs) != 2:
            raise NonManifoldEdge(f"edge {e} lies in {len(fs)} faces, expected 2")


def _check_duplicates(faces) -> None:
    seen: dict[frozenset, int] = {}
    for k, face in enumerate(faces):
        key = frozenset(face)
        if key in seen:
            raise DegenerateFace(f"faces {seen[key]} and {k} share vertex set {set(face)}")
        seen[key] = k


def _check_connected(vertex_count, faces, incidence) -> None:
    used = {v for f in faces for v in f}
    if len(used) != vertex_count:
        missing = sorted(set(range(vertex_count)) - used)
        raise Disconnected(f"vertices {missing} are not on the surface")
    seen = [False] * len(faces)
    queue = deque([0])
    seen[0] = True
    reached = 1
    while queue:
        f = queue.popleft()
        for e in _face_edges(faces[f]):
            for g in incidence[e]:
                if not seen[g]:
                    seen[g] = True
                    reached += 1
                    queue.append(g)
    if reached != len(faces):
        raise Disconnected(f"face-adjacency graph has {len(faces) - reached} unreachable faces")


def _check_vertex_links(faces, incidence) -> None:
    """Each vertex's incident faces must form a single closed fan."""
    vertex_faces: dict[int, list[int]] = defaultdict(list)
    for k, face in enumerate(faces):
        for v in face:
            vertex_faces[v].append(k)
    for v, fs in vertex_faces.items():
        start = fs[0]
        seen = {start}
        queue = deque([start])
        while queue:
            f = queue.popleft()
            face = faces[f]
            for e in _face_edges(face):
                if v not in e:
                    continue
                for g in incidence[e]:
                    if g != f and g not in seen and v in faces[g]:
                        seen.add(g)
                        queue.append(g)
        if len(seen) != len(fs):
            raise Disconnected(f"vertex {v} is pinched: its face fan is not a single cycle")


def _orient_consistently(faces, incidence):
    """Flip windings by BFS from face 0 until every directed edge is unique."""
    oriented: list[tuple[int, ...] | None] = [None] * len(faces)
    oriented[0] = tuple(faces[0])
    queue = deque([0])
    while queue:
        f = queue.popleft()
        fc = oriented[f]
        directed = {(fc[i], fc[(i + 1) % len(fc)]) for i in range(len(fc))}
        for e in _face_edges(fc):
            for g in incidence[e]:
                if g == f:
                    continue
                gc = faces[g]
                a, b = e
                # g must traverse the shared edge opposite to f
                g_dir = None
                for i in range(len(gc)):
                    u, w = gc[i], gc[(i + 1) % len(gc)]
                    if {u, w} == {a, b}:
                        g_dir = (u, w)
                        break
                needs_flip = g_dir in directed
                candidate = tuple(reversed(gc)) if needs_flip else tuple(gc)
                if oriented[g] is None:
                    oriented[g] = candidate
                    queue.append(g)
                elif oriented[g] != candidate:
                    raise Unorientable(
                        f"faces {f} and {g} cannot be oriented consistently"
                    )
    result = [f for f in oriented if f is not None]
    # final sanity: every directed edge appears exactly once
    directed_all = set()
    for fc in result:
        for i in range(len(fc)):
            d = (fc[i], fc[(i + 1) % len(fc)])
            if d in directed_all:
                raise Unorientable(f"directed edge {d} appears twice after repair")
            directed_all.add(d)
    return result


def _validate(vertex_count, faces, allowed_sizes):
    faces = [tuple(int(v) for v in f) for f in faces]
    _check_faces_basic(vertex_count, faces, allowed_sizes)
    incidence = _edge_face_incidence(faces)
    _check_manifold(incidence)
    _check_duplicates(faces)
    _check_connected(vertex_count, faces, incidence)
    _check_vertex_links(faces, incidence)
    return _orient_consistently(faces, incidence)


def build_mesh(vertex_count: int, faces, name: str | None = None) -> TriangleMesh:
    """Validate a triangle face list and derive the canonical edge list.

    Windings are repaired automatically by propagating flips from face 0;
    the mesh is rejected only if no consistent orientation exists.
    """
    oriented = _validate(vertex_count, faces, allowed_sizes={3})
    return TriangleMesh(
        vertex_count=vertex_count,
        faces=tuple(oriented),
        edges=_derive_edges(oriented),
        name=name,
    )


def build_mixed_polyhedron(vertex_count: int, faces, name: str | None = None) -> MixedFacePolyhedron:
    """Validate a surface with triangle and hexagon faces."""
    oriented = _validate(vertex_count, faces, allowed_sizes={3, 6})
    return MixedFacePolyhedron(
        vertex_count=vertex_count,
        faces=tuple(oriented),
        edges=_derive_edges(oriented),
        name=name,
    )


def euler_characteristic(mesh) -> int:
    return mesh.vertex_count - len(mesh.edges) + len(mesh.faces)


def genus(mesh) -> int:
    chi = euler_characteristic(mesh)
    if chi % 2 != 0:
        raise OddResult(f"Euler characteristic {chi} is odd")
    return (2 - chi) // 2


def vertex_degrees(mesh) -> dict[int, int]:
    deg: dict[int, int] = {v: 0 for v in range(mesh.vertex_count)}
    for a, b in mesh.edges:
        deg[a] += 1
        deg[b] += 1
    return deg


def edge_index_map(mesh) -> dict[Edge, int]:
    return {e: i for i, e in enumerate(mesh.edges)}


def edge_faces_map(mesh) -> dict[Edge, list[int]]:
    inc = _edge_face_incidence(mesh.faces)
    return dict(inc)


def vertex_faces_map(mesh) -> dict[int, list[int]]:
    vf: dict[int, list[int]] = defaultdict(list)
    for k, face in enumerate(mesh.faces):
        for v in face:
            vf[v].append(k)
    return dict(vf)


def adjacency(mesh) -> dict[int, list[int]]:
    nbrs: dict[int, set[int]] = defaultdict(set)
    for a, b in mesh.edges:
        nbrs[a].add(b)
        nbrs[b].add(a)
    return {v: sorted(nbrs[v]) for v in range(mesh.vertex_count)}


def dissect_hexagons(poly: MixedFacePolyhedron) -> TriangleMesh:
    """Split each hexagon into six triangles around a new center vertex.

    The spokes to each new center are flat (180 deg) in any faithful
    realization; they are recorded in the result's flat_edges.
    """
    vertex_count = poly.vertex_count
    faces: list[tuple[int, int, int]] = []
    flat: set[Edge] = set()
    next_vertex = vertex_count
    for face in poly.faces:
        if len(face) == 3:
            faces.append(face)  # type: ignore[arg-type]
            continue
        center = next_vertex
        next_vertex += 1
        for i in range(6):
            faces.append((face[i], face[(i + 1) % 6], center))
        for v in face:
            flat.add(canonical_edge(v, center))
    mesh = build_mesh(next_vertex, faces, name=poly.name)
    return replace(mesh, flat_edges=frozenset(flat))


def hexagon_centers(poly: MixedFacePolyhedron, coords):
    """Coordinates for dissect_hexagons output: input rows plus centroids.

    Centroid rows are appended in hexagon order, matching the vertex ids
    the dissection assigns.
    """
    import numpy as np

    coords = np.asarray(coords, dtype=float)
    rows = [coords]
    for face in poly.faces:
        if len(face) == 6:
            rows.append(coords[list(face)].mean(axis=0, keepdims=True))
    return np.vstack(rows)
