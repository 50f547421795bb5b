"""Construction artifacts: vertex diagram, module counts, assembly order.

The vertex diagram is the base mesh's 1-skeleton: its vertices are the
model's original vertices, its edges the valley edges, and each vertex is
annotated with the number of pyramids meeting there.  One Sonobe module
corresponds to one base edge, so a model takes E = 3F/2 modules.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, replace

import numpy as np

from sonobe.errors import LayoutFailed
from sonobe.surface import (
    TriangleMesh,
    adjacency,
    edge_index_map,
    genus,
    vertex_degrees,
)
from sonobe.svgdoc import SvgDoc


@dataclass(frozen=True)
class VertexDiagram:
    """Base 1-skeleton with pyramid counts; the construction blueprint."""

    vertex_count: int
    edges: tuple[tuple[int, int], ...]
    pyramids_at: tuple[int, ...]
    genus: int
    outer_face: tuple[int, int, int]
    layout: tuple[tuple[float, float], ...] | None = None


@dataclass(frozen=True)
class PlanStep:
    vertex: int
    modules_added: tuple[int, ...]
    pyramids_completed: tuple[int, ...]


@dataclass(frozen=True)
class AssemblyPlan:
    steps: tuple[PlanStep, ...]
    total_modules: int
    start_vertex: int


@dataclass(frozen=True)
class ModuleColoring:
    """Edge id -> color index; the three edges of every face differ."""

    colors: tuple[int, ...]
    color_count: int


def module_count(mesh: TriangleMesh) -> int:
    """Modules needed for the augmented model: 3F/2, one per base edge."""
    count = 3 * len(mesh.faces) // 2
    assert count == len(mesh.edges)
    return count


def vertex_diagram(mesh: TriangleMesh) -> VertexDiagram:
    deg = vertex_degrees(mesh)
    return VertexDiagram(
        vertex_count=mesh.vertex_count,
        edges=mesh.edges,
        pyramids_at=tuple(deg[v] for v in range(mesh.vertex_count)),
        genus=genus(mesh),
        outer_face=mesh.faces[0],
    )


def diagram_layout(diagram: VertexDiagram, seed: int = 0) -> tuple[np.ndarray, bool]:
    """2D positions for the diagram and whether the drawing is planar.

    Genus 0: Tutte barycentric embedding with the outer face pinned to a
    triangle, guaranteed crossing-free for 3-connected planar skeletons.
    Higher genus: deterministic force-directed layout, flagged non-planar.
    """
    if diagram.genus == 0:
        return _tutte_layout(diagram), True
    return _force_layout(diagram, seed), False


def _tutte_layout(diagram: VertexDiagram) -> np.ndarray:
    n = diagram.vertex_count
    outer = list(diagram.outer_face)
    angles = np.radians([90.0, 210.0, 330.0])
    pos = np.zeros((n, 2))
    fixed = np.zeros(n, dtype=bool)
    for v, t in zip(outer, angles):
        pos[v] = (np.cos(t), np.sin(t))
        fixed[v] = True
    nbrs: dict[int, list[int]] = {v: [] for v in range(n)}
    for a, b in diagram.edges:
        nbrs[a].append(b)
        nbrs[b].append(a)
    free = [v for v in range(n) if not fixed[v]]
    if free:
        index = {v: i for i, v in enumerate(free)}
        a = np.zeros((len(free), len(free)))
        rhs = np.zeros((len(free), 2))
        for v in free:
            i = index[v]
            a[i, i] = len(nbrs[v])
            for w in nbrs[v]:
                if fixed[w]:
                    rhs[i] += pos[w]
                else:
                    a[i, index[w]] -= 1.0
        try:
            sol = np.linalg.solve(a, rhs)
        except np.linalg.LinAlgError as exc:
            raise LayoutFailed("barycentric system is singular") from exc
        if not np.all(np.isfinite(sol)):
            raise LayoutFailed("barycentric system produced non-finite positions")
        for v in free:
            pos[v] = sol[index[v]]
    return pos


def _force_layout(diagram: VertexDiagram, seed: int) -> np.ndarray:
    """Small deterministic Fruchterman-Reingold loop."""
    n = diagram.vertex_count
    rng = np.random.default_rng(seed)
    pos = rng.uniform(-1.0, 1.0, size=(n, 2))
    k = np.sqrt(4.0 / n)
    step = 0.1
    for _ in range(200):
        delta = pos[:, None, :] - pos[None, :, :]
        dist = np.sqrt((delta**2).sum(axis=2)) + 1e-9
        repulse = (k * k / dist)[:, :, None] * delta / dist[:, :, None]
        np.einsum("iik->ik", repulse)[:] = 0.0
        disp = repulse.sum(axis=1)
        for a, b in diagram.edges:
            d = pos[a] - pos[b]
            ln = np.linalg.norm(d) + 1e-9
            pull = (ln / k) * (d / ln)
            disp[a] -= pull
            disp[b] += pull
        lengths = np.linalg.norm(disp, axis=1) + 1e-9
        pos += disp / lengths[:, None] * np.minimum(lengths, step)[:, None]
        step *= 0.99
    return pos


def assembly_plan(mesh: TriangleMesh, start_vertex: int | None = None) -> AssemblyPlan:
    """Breadth-first build order over original vertices.

    The step at vertex v adds every not-yet-placed edge of every face
    incident to v (for the first vertex of degree d that is 2d modules:
    the d-cycle of valley edges plus the d closing edges), then records
    which pyramids became complete.  Ends when every edge is placed.
    """
    start = 0 if start_vertex is None else int(start_vertex)
    if not 0 <= start < mesh.vertex_count:
        raise ValueError(f"start vertex {start} out of range")
    eidx = edge_index_map(mesh)
    vfaces: dict[int, list[int]] = {v: [] for v in range(mesh.vertex_count)}
    for k, face in enumerate(mesh.faces):
        for v in face:
            vfaces[v].append(k)
    nbrs = adjacency(mesh)

    placed = [False] * len(mesh.edges)
    done = [False] * len(mesh.faces)
    steps: list[PlanStep] = []
    total = 0
    seen = {start}
    queue = deque([start])
    while queue:
        v = queue.popleft()
        added: list[int] = []
        for f in vfaces[v]:
            face = mesh.faces[f]
            for i in range(3):
                a, b = face[i], face[(i + 1) % 3]
                e = eidx[(a, b) if a < b else (b, a)]
                if not placed[e]:
                    placed[e] = True
                    added.append(e)
        completed = []
        for f in range(len(mesh.faces)):
            if done[f]:
                continue
            face = mesh.faces[f]
            if all(
                placed[eidx[(face[i], face[(i + 1) % 3]) if face[i] < face[(i + 1) % 3]
                            else (face[(i + 1) % 3], face[i])]]
                for i in range(3)
            ):
                done[f] = True
                completed.append(f)
        steps.append(PlanStep(v, tuple(sorted(added)), tuple(sorted(completed))))
        total += len(added)
        if all(placed):
            break
        for w in nbrs[v]:
            if w not in seen:
                seen.add(w)
                queue.append(w)
    return AssemblyPlan(steps=tuple(steps), total_modules=total, start_vertex=start)


def color_modules(mesh: TriangleMesh, k: int = 3) -> ModuleColoring | None:
    """Backtracking edge coloring with every face rainbow, or None.

    Deterministic: edges in canonical id order, colors tried ascending.
    """
    if k < 3:
        raise ValueError("k must be at least 3")
    eidx = edge_index_map(mesh)
    face_edges = [
        tuple(
            eidx[(f[i], f[(i + 1) % 3]) if f[i] < f[(i + 1) % 3] else (f[(i + 1) % 3], f[i])]
            for i in range(3)
        )
        for f in mesh.faces
    ]
    edge_faces: list[list[int]] = [[] for _ in mesh.edges]
    for fi, es in enumerate(face_edges):
        for e in es:
            edge_faces[e].append(fi)
    colors = [-1] * len(mesh.edges)

    def admissible(e: int, c: int) -> bool:
        for fi in edge_faces[e]:
            for other in face_edges[fi]:
                if other != e and colors[other] == c:
                    return False
        return True

    def backtrack(e: int) -> bool:
        if e == len(colors):
            return True
        for c in range(k):
            if admissible(e, c):
                colors[e] = c
                if backtrack(e + 1):
                    return True
                colors[e] = -1
        return False

    if not backtrack(0):
        return None
    return ModuleColoring(colors=tuple(colors), color_count=k)


def diagram_svg(diagram: VertexDiagram, layout: np.ndarray | None = None) -> str:
    """Unit-square SVG: labeled vertex circles joined by solid valley edges."""
    if layout is None:
        layout, _ = diagram_layout(diagram)
    pos = np.asarray(layout, dtype=float)
    lo = pos.min(axis=0)
    span = float((pos.max(axis=0) - lo).max())
    if span < 1e-12:
        span = 1.0
    pos = 0.05 + 0.9 * (pos - lo) / span
    doc = SvgDoc((0.0, 0.0, 1.0, 1.0))
    for a, b in diagram.edges:
        doc.line(pos[a], pos[b], width=0.004)
    radius = min(0.035, 0.35 / np.sqrt(diagram.vertex_count))
    for v in range(diagram.vertex_count):
        doc.circle(pos[v], radius)
        doc.text(pos[v], str(diagram.pyramids_at[v]), size=radius)
    return doc.render()


def diagram_with_layout(diagram: VertexDiagram, seed: int = 0) -> VertexDiagram:
    pos, _ = diagram_layout(diagram, seed)
    return replace(diagram, layout=tuple((float(x), float(y)) for x, y in pos))
