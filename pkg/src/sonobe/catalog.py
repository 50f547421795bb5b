"""Built-in shapes, torus generators, and OFF file round-trips.

Combinatorics and reference embeddings ship as OFF files under
sonobe/data with a catalog.json manifest carrying tags and notes.  The
files were produced by tools/regen_fixtures.py and are re-verified by the
test suite, not trusted blindly.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, replace
from importlib import resources
from pathlib import Path

import numpy as np

from sonobe.errors import OffSyntaxError, UnknownName, UnsupportedFaceSize
from sonobe.realize import Embedding
from sonobe.surface import (
    MixedFacePolyhedron,
    TriangleMesh,
    build_mesh,
    build_mixed_polyhedron,
    canonical_edge,
)


@dataclass(eq=False)
class CatalogEntry:
    name: str
    mesh: TriangleMesh
    reference_embedding: Embedding | None
    tags: frozenset[str]
    notes: str


# ---------------------------------------------------------------------------
# OFF format


def parse_off(text: str):
    """Parse OFF text into a mesh (or mixed polyhedron) and coordinates.

    Returns (surface, coords) where coords is None for combinatorics-only
    files (all-zero vertex rows).  Faces must have 3 or 6 vertices.
    """
    lines = text.splitlines()
    rows = []
    for i, raw in enumerate(lines, start=1):
        stripped = raw.split("#", 1)[0].strip()
        if stripped:
            rows.append((i, stripped))
    if not rows:
        raise OffSyntaxError(1, "empty file")
    ln, header = rows[0]
    if header != "OFF":
        raise OffSyntaxError(ln, f"expected OFF header, got {header!r}")
    if len(rows) < 2:
        raise OffSyntaxError(ln, "missing counts line")
    ln, counts = rows[1]
    parts = counts.split()
    if len(parts) != 3:
        raise OffSyntaxError(ln, f"counts line needs 'V F E', got {counts!r}")
    try:
        nv, nf, _ = (int(p) for p in parts)
    except ValueError as exc:
        raise OffSyntaxError(ln, f"counts are not integers: {counts!r}") from exc
    if nv <= 0 or nf <= 0:
        raise OffSyntaxError(ln, "vertex and face counts must be positive")
    if len(rows) != 2 + nv + nf:
        raise OffSyntaxError(ln, f"expected {2 + nv + nf} content lines, found {len(rows)}")

    coords = np.zeros((nv, 3))
    for k in range(nv):
        ln, row = rows[2 + k]
        parts = row.split()
        if len(parts) != 3:
            raise OffSyntaxError(ln, f"vertex line needs 3 coordinates, got {row!r}")
        try:
            coords[k] = [float(p) for p in parts]
        except ValueError as exc:
            raise OffSyntaxError(ln, f"bad coordinate in {row!r}") from exc

    faces = []
    has_hexagon = False
    for k in range(nf):
        ln, row = rows[2 + nv + k]
        parts = row.split()
        try:
            nums = [int(p) for p in parts]
        except ValueError as exc:
            raise OffSyntaxError(ln, f"bad face line {row!r}") from exc
        if not nums or len(nums) != nums[0] + 1:
            raise OffSyntaxError(ln, f"face line count mismatch: {row!r}")
        size = nums[0]
        if size not in (3, 6):
            raise UnsupportedFaceSize(f"line {ln}: face with {size} vertices")
        if size == 6:
            has_hexagon = True
        faces.append(tuple(nums[1:]))

    name = None
    for raw in lines:
        s = raw.strip()
        if s.startswith("#") and len(s) > 1:
            name = s[1:].strip() or None
            break

    if has_hexagon:
        surface = build_mixed_polyhedron(nv, faces, name=name)
    else:
        surface = build_mesh(nv, faces, name=name)
    if not coords.any():
        return surface, None  # combinatorics-only file
    return surface, coords


def write_off(surface, coords=None, comment: str | None = None) -> str:
    """Serialize a mesh or mixed polyhedron; zero coordinates if unknown."""
    nv = surface.vertex_count
    if coords is None:
        coords = np.zeros((nv, 3))
    coords = np.asarray(coords, dtype=float)
    out = ["OFF\n"]
    label = comment if comment is not None else surface.name
    if label:
        out.append(f"# {label}\n")
    out.append(f"{nv} {len(surface.faces)} {len(surface.edges)}\n")
    for row in coords:
        out.append(" ".join(f"{x:.17g}" for x in row) + "\n")
    for face in surface.faces:
        out.append(f"{len(face)} " + " ".join(str(v) for v in face) + "\n")
    return "".join(out)


# ---------------------------------------------------------------------------
# torus generators


def torus_grid(m: int, n: int) -> TriangleMesh:
    """Doubly wrapped m x n vertex grid, squares split by one diagonal.

    V = mn, F = 2mn, E = 3mn, genus 1.  Requires m, n >= 3 (below that the
    wrap produces duplicate or non-manifold edges).
    """
    if m < 3 or n < 3:
        raise ValueError(f"torus grid needs m, n >= 3, got {m}x{n}")

    def vid(i: int, j: int) -> int:
        return (i % m) * n + (j % n)

    faces = []
    for i in range(m):
        for j in range(n):
            a = vid(i, j)
            b = vid(i + 1, j)
            c = vid(i + 1, j + 1)
            d = vid(i, j + 1)
            faces.append((a, b, c))
            faces.append((a, c, d))
    return build_mesh(m * n, faces, name=f"torus_grid_{m}x{n}")


# ---------------------------------------------------------------------------
# catalog loading


def _data_root(data_dir: str | Path | None) -> Path:
    if data_dir is not None:
        return Path(data_dir)
    return Path(resources.files("sonobe") / "data")


def _load_entry(root: Path, spec: dict) -> CatalogEntry:
    text = (root / spec["file"]).read_text()
    surface, coords = parse_off(text)
    if isinstance(surface, MixedFacePolyhedron):
        raise UnsupportedFaceSize(f"catalog entry {spec['name']} must be a triangulation")
    mesh = surface
    if spec.get("flat_edges"):
        flat = frozenset(canonical_edge(a, b) for a, b in spec["flat_edges"])
        mesh = replace(mesh, flat_edges=flat)
    mesh = replace(mesh, name=spec["name"])
    emb = Embedding(coords, mesh) if coords is not None else None
    return CatalogEntry(
        name=spec["name"],
        mesh=mesh,
        reference_embedding=emb,
        tags=frozenset(spec.get("tags", [])),
        notes=spec.get("notes", ""),
    )


def list_catalog(data_dir: str | Path | None = None) -> tuple[CatalogEntry, ...]:
    """All built-in entries, manifest order."""
    root = _data_root(data_dir)
    manifest = json.loads((root / "catalog.json").read_text())
    return tuple(_load_entry(root, spec) for spec in manifest["entries"])


def get(name: str, data_dir: str | Path | None = None) -> CatalogEntry:
    root = _data_root(data_dir)
    manifest = json.loads((root / "catalog.json").read_text())
    for spec in manifest["entries"]:
        if spec["name"] == name:
            return _load_entry(root, spec)
    known = ", ".join(s["name"] for s in manifest["entries"])
    raise UnknownName(f"no catalog entry {name!r} (known: {known})")


def catalog_names(data_dir: str | Path | None = None) -> tuple[str, ...]:
    root = _data_root(data_dir)
    manifest = json.loads((root / "catalog.json").read_text())
    return tuple(spec["name"] for spec in manifest["entries"])
