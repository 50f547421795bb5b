"""Regenerate the catalog fixtures under src/sonobe/data.

Closed-form coordinates are used where they exist; the snub disphenoid
and gyroelongated square dipyramid are realized by the optimizer from
their combinatorics.  Every embedding is polished to near machine
precision, canonicalized outward, and verified before being written.

Run from the repository root:  python tools/regen_fixtures.py
"""

from __future__ import annotations

import json
import sys
from pathlib import Path

import numpy as np
from scipy.spatial import ConvexHull

sys.path.insert(0, str(Path(__file__).resolve().parents[1] / "src"))

import sonobe
from sonobe.catalog import write_off
from sonobe.realize import Embedding, signed_volume
from sonobe.surface import dissect_hexagons, hexagon_centers

DATA = Path(__file__).resolve().parents[1] / "src" / "sonobe" / "data"
ENERGY_LIMIT = 1e-24


def hull_faces(coords: np.ndarray):
    return [tuple(int(v) for v in s) for s in ConvexHull(coords).simplices]


def ordered_cycle(points: np.ndarray, indices, normal) -> tuple[int, ...]:
    """Order `indices` counterclockwise around their centroid wrt normal."""
    center = points[list(indices)].mean(axis=0)
    ref = points[indices[0]] - center
    ref /= np.linalg.norm(ref)
    second = np.cross(normal, ref)

    def key(v):
        d = points[v] - center
        return np.arctan2(float(d @ second), float(d @ ref))

    return tuple(sorted(indices, key=key))


# ---------------------------------------------------------------------------
# coordinate constructions


def tetrahedron():
    coords = np.array([[1, 1, 1], [1, -1, -1], [-1, 1, -1], [-1, -1, 1]], dtype=float)
    coords /= 2.0 * np.sqrt(2.0)
    faces = [(0, 1, 2), (0, 3, 1), (0, 2, 3), (1, 3, 2)]
    return coords, faces


def triangular_dipyramid():
    r = 1.0 / np.sqrt(3.0)
    h = np.sqrt(2.0 / 3.0)
    ang = np.radians([90, 210, 330])
    coords = np.vstack([
        np.column_stack([r * np.cos(ang), r * np.sin(ang), np.zeros(3)]),
        [[0, 0, h], [0, 0, -h]],
    ])
    faces = [(0, 1, 3), (1, 2, 3), (2, 0, 3), (1, 0, 4), (2, 1, 4), (0, 2, 4)]
    return coords, faces


def octahedron():
    s = 1.0 / np.sqrt(2.0)
    coords = np.array([[s, 0, 0], [-s, 0, 0], [0, s, 0], [0, -s, 0], [0, 0, s], [0, 0, -s]])
    faces = [(0, 2, 4), (2, 1, 4), (1, 3, 4), (3, 0, 4),
             (2, 0, 5), (1, 2, 5), (3, 1, 5), (0, 3, 5)]
    return coords, faces


def pentagonal_dipyramid():
    r = 1.0 / (2.0 * np.sin(np.pi / 5.0))
    h = np.sqrt(1.0 - r * r)
    ang = np.radians(90 + 72 * np.arange(5))
    coords = np.vstack([
        np.column_stack([r * np.cos(ang), r * np.sin(ang), np.zeros(5)]),
        [[0, 0, h], [0, 0, -h]],
    ])
    faces = [(i, (i + 1) % 5, 5) for i in range(5)]
    faces += [((i + 1) % 5, i, 6) for i in range(5)]
    return coords, faces


def snub_disphenoid():
    faces = [(0, 1, 6), (0, 6, 4), (0, 4, 7), (0, 7, 1), (1, 6, 5), (1, 5, 7),
             (2, 3, 4), (3, 4, 7), (3, 7, 5), (2, 3, 5), (2, 4, 6), (2, 6, 5)]
    return None, faces  # realized by the optimizer


def triaugmented_triangular_prism():
    r = 1.0 / np.sqrt(3.0)
    ang = np.radians([90, 210, 330])
    top = np.column_stack([r * np.cos(ang), r * np.sin(ang), np.full(3, 0.5)])
    bot = top - [0, 0, 1.0]
    coords = [top, bot]
    faces = [(0, 1, 2), (5, 4, 3)]
    apexes = []
    for k in range(3):
        a, b = k, (k + 1) % 3
        quad = np.array([top[a], top[b], bot[b], bot[a]])
        center = quad.mean(axis=0)
        outward = center - [0, 0, center[2]]
        outward /= np.linalg.norm(outward)
        apexes.append(center + outward / np.sqrt(2.0))
        apex = 6 + k
        faces += [(a, b, apex), (b, b + 3, apex), (b + 3, a + 3, apex), (a + 3, a, apex)]
    coords.append(np.array(apexes))
    return np.vstack(coords), faces


def gyroelongated_square_dipyramid():
    r = np.sqrt(2.0) / 2.0
    h = 2.0 ** -0.25
    top_ang = np.radians(90 * np.arange(4))
    bot_ang = top_ang + np.radians(45)
    top = np.column_stack([r * np.cos(top_ang), r * np.sin(top_ang), np.full(4, h / 2)])
    bot = np.column_stack([r * np.cos(bot_ang), r * np.sin(bot_ang), np.full(4, -h / 2)])
    za = h / 2 + 1.0 / np.sqrt(2.0)
    coords = np.vstack([top, bot, [[0, 0, za], [0, 0, -za]]])
    faces = hull_faces(coords)
    return coords, faces


def icosahedron():
    phi = (1.0 + np.sqrt(5.0)) / 2.0
    rows = []
    for a in (-0.5, 0.5):
        for b in (-phi / 2, phi / 2):
            rows += [[0, a, b], [a, b, 0], [b, 0, a]]
    coords = np.array(rows)
    return coords, hull_faces(coords)


def tetra_capped_12():
    base, base_faces = tetrahedron()
    coords = [base]
    faces = []
    for k, face in enumerate(base_faces):
        tri = base[list(face)]
        centroid = tri.mean(axis=0)
        normal = centroid / np.linalg.norm(centroid)  # tetra centered at origin
        apex = centroid + np.sqrt(2.0 / 3.0) * normal
        coords.append(apex[None, :])
        a, b, c = face
        apex_id = 4 + k
        faces += [(a, b, apex_id), (b, c, apex_id), (c, a, apex_id)]
    return np.vstack(coords), faces


def cube_capped_24():
    corners = np.array([[(i >> 2 & 1) - 0.5, (i >> 1 & 1) - 0.5, (i & 1) - 0.5]
                        for i in range(8)])
    coords = [corners]
    faces = []
    apex_id = 8
    for axis in range(3):
        for sign in (-1.0, 1.0):
            idx = [i for i in range(8) if corners[i, axis] * sign > 0]
            normal = np.zeros(3)
            normal[axis] = sign
            cycle = ordered_cycle(corners, idx, normal)
            apex = normal * (0.5 + 1.0 / np.sqrt(2.0))
            coords.append(apex[None, :])
            for i in range(4):
                faces.append((cycle[i], cycle[(i + 1) % 4], apex_id))
            apex_id += 1
    return np.vstack(coords), faces


def truncated_tetrahedron_mixed():
    tet = np.array([[1, 1, 1], [1, -1, -1], [-1, 1, -1], [-1, -1, 1]], dtype=float)
    ids = {}
    pts = []
    for i in range(4):
        for j in range(4):
            if i != j:
                ids[(i, j)] = len(pts)
                pts.append(tet[i] + (tet[j] - tet[i]) / 3.0)
    coords = np.array(pts) * (3.0 / (2.0 * np.sqrt(2.0)))  # unit edges
    faces = []
    for i in range(4):
        others = [j for j in range(4) if j != i]
        tri = [ids[(i, j)] for j in others]
        normal = tet[i] / np.linalg.norm(tet[i])
        faces.append(ordered_cycle(coords, tri, normal))
    for trio in [(0, 1, 2), (0, 1, 3), (0, 2, 3), (1, 2, 3)]:
        hexa = [ids[(i, j)] for i in trio for j in trio if i != j]
        center = coords[hexa].mean(axis=0)
        normal = center / np.linalg.norm(center)
        faces.append(ordered_cycle(coords, hexa, normal))
    return coords, faces


def csaszar_faces():
    faces = []
    for i in range(7):
        faces.append((i, (i + 1) % 7, (i + 3) % 7))
        faces.append((i, (i + 2) % 7, (i + 3) % 7))
    return faces


# ---------------------------------------------------------------------------
# polishing and verification


def polish(mesh, coords):
    rep = sonobe.realize(mesh, init=Embedding(np.asarray(coords, dtype=float), mesh),
                         max_restarts=1, use_spectral=False)
    if not rep.converged:
        raise SystemExit(f"{mesh.name}: polish failed, energy {rep.final_energy:g}")
    return rep


def realize_fresh(mesh):
    rep = sonobe.realize(mesh, seed=0)
    if not rep.converged:
        raise SystemExit(f"{mesh.name}: realization failed, energy {rep.final_energy:g}")
    return rep


def finalize(name, mesh, rep):
    mesh = sonobe.canonicalize_orientation(mesh, rep.embedding)
    emb = Embedding(rep.embedding.coords, mesh)
    energy = sonobe.edge_energy(mesh, emb)
    crossing, _ = sonobe.self_intersects(mesh, emb)
    dmax = max(sonobe.dihedral_angles(mesh, emb).values())
    assert energy < ENERGY_LIMIT, (name, energy)
    assert not crossing, name
    assert signed_volume(mesh, emb) > 0, name
    print(f"  {name}: energy {energy:.2e}  max dihedral {dmax:8.3f}")
    return mesh, emb, dmax


def main():
    DATA.mkdir(parents=True, exist_ok=True)
    entries = []

    convex_builders = [
        ("tetrahedron", tetrahedron, "Four faces; the smallest deltahedron."),
        ("triangular_dipyramid", triangular_dipyramid,
         "Two regular tetrahedra glued on a face; six faces."),
        ("octahedron", octahedron,
         "Eight faces; four pyramids meet at each of the six original vertices."),
        ("pentagonal_dipyramid", pentagonal_dipyramid,
         "Two pentagonal pyramids glued base to base; ten faces, fifteen modules."),
        ("snub_disphenoid", snub_disphenoid,
         "Twelve faces; vertex degrees 4,4,4,4,5,5,5,5. Realized numerically."),
        ("triaugmented_triangular_prism", triaugmented_triangular_prism,
         "Triangular prism with a square pyramid on each square face; fourteen faces."),
        ("gyroelongated_square_dipyramid", gyroelongated_square_dipyramid,
         "Square antiprism capped by two square pyramids; sixteen faces. "
         "Realized numerically."),
        ("icosahedron", icosahedron, "Twenty faces; the classic Sonobe ball base."),
    ]
    for name, builder, notes in convex_builders:
        coords, faces = builder()
        nv = (coords.shape[0] if coords is not None
              else max(v for f in faces for v in f) + 1)
        mesh = sonobe.build_mesh(nv, faces, name=name)
        rep = polish(mesh, coords) if coords is not None else realize_fresh(mesh)
        mesh, emb, dmax = finalize(name, mesh, rep)
        assert dmax < 180.0, (name, dmax)
        entries.append((name, mesh, emb, ["convex"], notes, None))

    for name, builder, notes in [
        ("tetra_capped_12", tetra_capped_12,
         "Tetrahedron with a regular-tetrahedron cap on each face (cap height "
         "sqrt(2/3), taller than the flat Sonobe cap that augmentation adds); "
         "reflex edges near 211.6 degrees."),
        ("cube_capped_24", cube_capped_24,
         "Cube with an equilateral square-pyramid cap on each face; reflex "
         "edges near 199.5 degrees."),
    ]:
        coords, faces = builder()
        mesh = sonobe.build_mesh(coords.shape[0], faces, name=name)
        mesh, emb, dmax = finalize(name, mesh, polish(mesh, coords))
        assert dmax > 180.0, (name, dmax)
        entries.append((name, mesh, emb, ["nonconvex"], notes, None))

    # dissected truncated tetrahedron (plus the mixed-face source fixture)
    coords, faces = truncated_tetrahedron_mixed()
    poly = sonobe.build_mixed_polyhedron(12, faces, name="truncated_tetrahedron")
    (DATA / "truncated_tetrahedron_mixed.off").write_text(write_off(poly, coords))
    mesh = dissect_hexagons(poly)
    full = hexagon_centers(poly, coords)
    name = "dissected_truncated_tetrahedron"
    mesh = sonobe.TriangleMesh(mesh.vertex_count, mesh.faces, mesh.edges,
                               name=name, flat_edges=mesh.flat_edges)
    mesh_f, emb, dmax = finalize(name, mesh, polish(mesh, full))
    flat = sorted(mesh.flat_edges)
    dihedrals = sonobe.dihedral_angles(mesh_f, emb)
    worst_flat = max(abs(dihedrals[e] - 180.0) for e in flat)
    print(f"  flat spokes within {worst_flat:.2e} deg of 180")
    assert worst_flat < 1e-6
    entries.append((
        name, mesh_f, emb, ["degenerate_flat_edges"],
        "Truncated tetrahedron with each hexagon split into six coplanar "
        "triangles. The spoke edges are exactly flat, so the augmented model "
        "holds its shape there only through module tension.",
        [list(e) for e in flat],
    ))

    mesh = sonobe.build_mesh(7, csaszar_faces(), name="csaszar_torus")
    assert sonobe.genus(mesh) == 1
    print(f"  csaszar_torus: genus 1, combinatorics only")
    entries.append((
        "csaszar_torus", mesh, None, ["torus"],
        "Seven-vertex genus-1 triangulation (complete graph on 7 vertices). "
        "No unit-edge embedding is known; searches report residuals only.",
        None,
    ))

    manifest = {"entries": []}
    for name, mesh, emb, tags, notes, flat in entries:
        fname = f"{name}.off"
        coords = emb.coords if emb is not None else None
        (DATA / fname).write_text(write_off(mesh, coords, comment=name))
        spec = {"name": name, "file": fname, "tags": tags, "notes": notes}
        if flat:
            spec["flat_edges"] = flat
        manifest["entries"].append(spec)
    (DATA / "catalog.json").write_text(json.dumps(manifest, indent=2) + "\n")
    print(f"wrote {len(entries)} entries + mixed fixture to {DATA}")


if __name__ == "__main__":
    main()
