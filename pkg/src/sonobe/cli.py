"""Command-line front end.

Subcommands mirror the pipeline: catalog, validate, realize, augment,
blueprint, net, search-torus.  Every run emits a JSON report (stdout and
file) that validates against sonobe/data/run_report.schema.json.  All
randomness flows from --seed; identical invocations produce byte-identical
artifacts.

Exit codes: 0 success, 2 validation/input error, 3 non-convergence,
4 infeasible caps.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

import numpy as np

import sonobe
from sonobe import blueprint as bp
from sonobe import catalog as cat
from sonobe import net as netmod
from sonobe.errors import SonobeError
from sonobe.realize import Embedding, rescale_to_unit_edges
from sonobe.surface import MixedFacePolyhedron, hexagon_centers

EXIT_OK = 0
EXIT_VALIDATION = 2
EXIT_NO_CONVERGENCE = 3
EXIT_INFEASIBLE = 4


class CommandError(Exception):
    def __init__(self, exit_code: int, message: str):
        super().__init__(message)
        self.exit_code = exit_code


def _report_skeleton(command: str, inputs: dict) -> dict:
    return {
        "command": command,
        "inputs": inputs,
        "outcomes": {},
        "metrics": {
            "energy": None,
            "module_count": None,
            "genus": None,
            "max_dihedral": None,
        },
        "artifacts_written": [],
    }


def _write_json(path: Path, payload: dict) -> None:
    path.write_text(json.dumps(payload, indent=2) + "\n")


def _emit(report: dict, out_dir: Path, base: str) -> None:
    report["artifacts_written"].sort()
    path = out_dir / f"{base}_{report['command'].replace('-', '_')}_report.json"
    _write_json(path, report)
    sys.stdout.write(json.dumps(report, indent=2) + "\n")


def _wants(fmt: str, kind: str) -> bool:
    return fmt == "all" or fmt == kind


class Target:
    """Resolved input: catalog entry or parsed file."""

    def __init__(self, base: str, mesh, entry=None, file_coords=None, dissected=False):
        self.base = base
        self.mesh = mesh
        self.entry = entry
        self.file_coords = file_coords
        self.dissected = dissected


def _resolve_target(spec: str, data_dir) -> Target:
    if spec in cat.catalog_names(data_dir):
        entry = cat.get(spec, data_dir)
        return Target(spec, entry.mesh, entry=entry)
    path = Path(spec)
    if not path.exists():
        raise CommandError(
            EXIT_VALIDATION,
            f"{spec!r} is neither a catalog name nor an existing file",
        )
    surface, coords = cat.parse_off(path.read_text())
    base = path.stem
    if isinstance(surface, MixedFacePolyhedron):
        mesh = sonobe.dissect_hexagons(surface)
        if coords is not None:
            coords = hexagon_centers(surface, coords)
        return Target(base, mesh, file_coords=coords, dissected=True)
    return Target(base, surface, file_coords=coords)


def _obtain_embedding(target: Target, args, report: dict):
    """Reference embedding when available, otherwise run the optimizer."""
    if target.entry is not None and target.entry.reference_embedding is not None:
        report["outcomes"]["realized"] = "reference"
        emb = target.entry.reference_embedding
        report["metrics"]["energy"] = sonobe.edge_energy(target.mesh, emb)
        return emb
    init = None
    if target.file_coords is not None:
        init = Embedding(rescale_to_unit_edges(target.mesh, target.file_coords), target.mesh)
    rep = sonobe.realize(
        target.mesh, init=init, tolerance=args.tol,
        max_restarts=args.restarts, seed=args.seed,
    )
    report["metrics"]["energy"] = rep.final_energy
    report["metrics"]["restarts_used"] = rep.restarts_used
    if not rep.converged:
        report["outcomes"]["realized"] = "not_converged"
        raise CommandError(
            EXIT_NO_CONVERGENCE,
            f"no unit-edge embedding found (best residual {rep.final_energy:.3e})",
        )
    report["outcomes"]["realized"] = "converged"
    if rep.self_intersecting:
        report["outcomes"]["self_intersecting"] = "yes"
    return rep.embedding


def _canonical(target: Target, emb):
    mesh = sonobe.canonicalize_orientation(target.mesh, emb)
    return mesh, Embedding(emb.coords, mesh)


def _common_metrics(report, mesh, emb=None):
    report["metrics"]["module_count"] = bp.module_count(mesh)
    report["metrics"]["genus"] = sonobe.genus(mesh)
    if emb is not None:
        dihedrals = sonobe.dihedral_angles(mesh, emb)
        report["metrics"]["max_dihedral"] = max(dihedrals.values())


# ---------------------------------------------------------------------------
# subcommands


def cmd_catalog(args) -> int:
    report = _report_skeleton("catalog", {"data_dir": str(args.data_dir or "")})
    entries = cat.list_catalog(args.data_dir)
    listing = [
        {
            "name": e.name,
            "vertices": e.mesh.vertex_count,
            "faces": len(e.mesh.faces),
            "edges": len(e.mesh.edges),
            "modules": bp.module_count(e.mesh),
            "genus": sonobe.genus(e.mesh),
            "tags": sorted(e.tags),
            "has_reference_embedding": e.reference_embedding is not None,
            "notes": e.notes,
        }
        for e in entries
    ]
    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    if _wants(args.format, "json"):
        path = out / "catalog_listing.json"
        _write_json(path, {"entries": listing})
        report["artifacts_written"].append(str(path))
    report["outcomes"]["validated"] = "ok"
    report["metrics"]["entry_count"] = len(entries)
    report["metrics"]["convex_count"] = sum(1 for e in entries if "convex" in e.tags)
    _emit(report, out, "catalog")
    return EXIT_OK


def cmd_validate(args) -> int:
    report = _report_skeleton("validate", {"file": args.file})
    target = _resolve_target(args.file, args.data_dir)
    report["outcomes"]["validated"] = "ok"
    if target.dissected:
        report["outcomes"]["dissected"] = "hexagons split into triangles"
    mesh = target.mesh
    _common_metrics(report, mesh)
    report["metrics"]["vertices"] = mesh.vertex_count
    report["metrics"]["faces"] = len(mesh.faces)
    report["metrics"]["edges"] = len(mesh.edges)
    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    _emit(report, out, target.base)
    return EXIT_OK


def cmd_realize(args) -> int:
    report = _report_skeleton(
        "realize",
        {"target": args.target, "seed": args.seed, "tolerance": args.tol,
         "restarts": args.restarts},
    )
    target = _resolve_target(args.target, args.data_dir)
    report["outcomes"]["validated"] = "ok"
    mesh = target.mesh
    init = None
    if target.file_coords is not None:
        init = Embedding(rescale_to_unit_edges(mesh, target.file_coords), mesh)
    rep = sonobe.realize(
        mesh, init=init, tolerance=args.tol, max_restarts=args.restarts, seed=args.seed
    )
    report["metrics"]["energy"] = rep.final_energy
    report["metrics"]["restarts_used"] = rep.restarts_used
    report["metrics"]["self_intersecting"] = rep.self_intersecting
    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    if not rep.converged:
        report["outcomes"]["realized"] = "not_converged"
        _common_metrics(report, mesh)
        _emit(report, out, target.base)
        raise CommandError(
            EXIT_NO_CONVERGENCE,
            f"no unit-edge embedding found (best residual {rep.final_energy:.3e})",
        )
    report["outcomes"]["realized"] = "converged"
    emb = rep.embedding
    if not rep.self_intersecting and sonobe.genus(mesh) == 0:
        mesh, emb = _canonical(Target(target.base, mesh), emb)
        report["outcomes"]["canonicalized"] = "ok"
    _common_metrics(report, mesh, emb)
    if _wants(args.format, "off"):
        path = out / f"{target.base}_realized.off"
        path.write_text(cat.write_off(mesh, emb.coords, comment=target.base))
        report["artifacts_written"].append(str(path))
    _emit(report, out, target.base)
    return EXIT_OK


def cmd_augment(args) -> int:
    report = _report_skeleton(
        "augment",
        {"target": args.target, "seed": args.seed, "tolerance": args.tol,
         "restarts": args.restarts},
    )
    target = _resolve_target(args.target, args.data_dir)
    report["outcomes"]["validated"] = "ok"
    emb = _obtain_embedding(target, args, report)
    mesh, emb = _canonical(target, emb)
    target.mesh = mesh
    _common_metrics(report, mesh, emb)
    model = sonobe.augment(mesh, emb)
    report["outcomes"]["augmented"] = "ok"
    cap = sonobe.cap_feasibility(model)
    report["metrics"]["colliding_pairs"] = len(cap.colliding_pairs)
    report["metrics"]["boundary_contacts"] = len(cap.boundary_contacts)
    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    if _wants(args.format, "off"):
        aug_faces = model.cap_faces
        aug_mesh = sonobe.build_mesh(
            mesh.vertex_count + len(mesh.faces), aug_faces, name=f"{target.base}_augmented"
        )
        path = out / f"{target.base}_augmented.off"
        path.write_text(cat.write_off(aug_mesh, model.all_coords))
        report["artifacts_written"].append(str(path))
    if cap.feasible:
        report["outcomes"]["feasible"] = (
            "yes_with_boundary_contacts" if cap.boundary_contacts else "yes"
        )
        _emit(report, out, target.base)
        return EXIT_OK
    report["outcomes"]["feasible"] = "no"
    _emit(report, out, target.base)
    raise CommandError(
        EXIT_INFEASIBLE,
        f"caps intersect on {len(cap.colliding_pairs)} face pair(s)",
    )


def cmd_blueprint(args) -> int:
    report = _report_skeleton(
        "blueprint",
        {"target": args.target, "seed": args.seed, "start_vertex": args.start_vertex,
         "colors": args.colors},
    )
    target = _resolve_target(args.target, args.data_dir)
    report["outcomes"]["validated"] = "ok"
    mesh = target.mesh
    _common_metrics(report, mesh)
    diagram = sonobe.vertex_diagram(mesh)
    layout, planar = sonobe.diagram_layout(diagram, seed=args.seed)
    report["outcomes"]["diagram"] = "planar" if planar else "non_planar"
    plan = sonobe.assembly_plan(mesh, start_vertex=args.start_vertex)
    coloring = sonobe.color_modules(mesh, args.colors)
    report["outcomes"]["coloring"] = "found" if coloring is not None else "none"

    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    if _wants(args.format, "svg"):
        path = out / f"{target.base}_diagram.svg"
        path.write_text(bp.diagram_svg(diagram, layout))
        report["artifacts_written"].append(str(path))
    if _wants(args.format, "json"):
        payload = {
            "name": target.base,
            "module_count": bp.module_count(mesh),
            "edges": [[int(a), int(b)] for a, b in mesh.edges],
            "pyramids_at": list(diagram.pyramids_at),
            "steps": [
                {
                    "vertex": s.vertex,
                    "modules_added": list(s.modules_added),
                    "pyramids_completed": list(s.pyramids_completed),
                }
                for s in plan.steps
            ],
            "total_modules": plan.total_modules,
            "module_colors": list(coloring.colors) if coloring is not None else None,
        }
        path = out / f"{target.base}_plan.json"
        _write_json(path, payload)
        report["artifacts_written"].append(str(path))
    _emit(report, out, target.base)
    return EXIT_OK


def cmd_net(args) -> int:
    report = _report_skeleton(
        "net",
        {"target": args.target, "seed": args.seed, "root_face": args.root_face,
         "tolerance": args.tol, "restarts": args.restarts},
    )
    target = _resolve_target(args.target, args.data_dir)
    report["outcomes"]["validated"] = "ok"
    emb = _obtain_embedding(target, args, report)
    mesh, emb = _canonical(target, emb)
    target.mesh = mesh
    _common_metrics(report, mesh, emb)
    net = sonobe.unfold(mesh, emb, root_face=args.root_face, seed=args.seed)
    report["outcomes"]["net"] = "overlap_free" if net.overlap_free else "overlapping"
    report["metrics"]["unfold_attempts"] = net.attempts_used
    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    if _wants(args.format, "svg"):
        path = out / f"{target.base}_net.svg"
        path.write_text(sonobe.net_svg(net))
        report["artifacts_written"].append(str(path))
    if _wants(args.format, "json"):
        path = out / f"{target.base}_net.json"
        _write_json(path, netmod.net_json_payload(net))
        report["artifacts_written"].append(str(path))
    _emit(report, out, target.base)
    return EXIT_OK


def cmd_search_torus(args) -> int:
    if (args.grid is None) == (args.name is None):
        raise CommandError(EXIT_VALIDATION, "give exactly one of --grid or --name")
    if args.grid is not None:
        parts = args.grid.lower().split("x")
        if len(parts) != 2 or not all(p.isdigit() for p in parts):
            raise CommandError(EXIT_VALIDATION, f"bad grid spec {args.grid!r}; want MxN")
        m, n = (int(p) for p in parts)
        try:
            mesh = cat.torus_grid(m, n)
        except ValueError as exc:
            raise CommandError(EXIT_VALIDATION, str(exc)) from exc
        base = f"torus_grid_{m}x{n}"
    else:
        target = _resolve_target(args.name, args.data_dir)
        mesh = target.mesh
        base = target.base
    report = _report_skeleton(
        "search-torus",
        {"grid": args.grid, "name": args.name, "seed": args.seed,
         "restarts": args.restarts, "tolerance": args.tol},
    )
    report["outcomes"]["validated"] = "ok"
    report["metrics"]["module_count"] = bp.module_count(mesh)
    report["metrics"]["genus"] = sonobe.genus(mesh)
    rep = sonobe.realize(
        mesh, tolerance=args.tol, max_restarts=args.restarts, seed=args.seed
    )
    report["metrics"]["energy"] = rep.final_energy
    report["metrics"]["best_residual"] = rep.final_energy
    report["metrics"]["restarts_used"] = rep.restarts_used
    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    if not rep.converged:
        report["outcomes"]["search"] = "not_realized"
    elif rep.self_intersecting:
        report["outcomes"]["search"] = "realized+self-intersecting"
    else:
        emb = rep.embedding
        report["metrics"]["max_dihedral"] = max(
            sonobe.dihedral_angles(mesh, emb).values()
        )
        cap = sonobe.cap_feasibility(sonobe.augment(mesh, emb))
        report["outcomes"]["search"] = (
            "realized+feasible" if cap.feasible else "realized+infeasible"
        )
        if _wants(args.format, "off"):
            path = out / f"{base}_realized.off"
            path.write_text(cat.write_off(mesh, emb.coords, comment=base))
            report["artifacts_written"].append(str(path))
    _emit(report, out, base)
    return EXIT_OK


# ---------------------------------------------------------------------------
# argument parsing


def _add_common(p, with_solver=True):
    p.add_argument("--seed", type=int, default=0, help="seed for all randomness")
    p.add_argument("--out", default=".", help="output directory")
    p.add_argument("--format", choices=["json", "svg", "off", "all"], default="all",
                   help="restrict which artifact files are written")
    p.add_argument("--data-dir", default=None, help="override the catalog directory")
    if with_solver:
        p.add_argument("--tol", type=float, default=1e-10,
                       help="convergence tolerance on the edge-length energy")
        p.add_argument("--restarts", type=int, default=64,
                       help="maximum optimizer starts")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="sonobe",
        description="Blueprints, nets and feasibility checks for augmented "
        "deltahedra built from Sonobe modules.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("catalog", help="list built-in shapes")
    _add_common(p, with_solver=False)
    p.set_defaults(func=cmd_catalog)

    p = sub.add_parser("validate", help="validate an OFF file or catalog name")
    p.add_argument("file")
    _add_common(p, with_solver=False)
    p.set_defaults(func=cmd_validate)

    p = sub.add_parser("realize", help="find a unit-edge embedding")
    p.add_argument("target", help="catalog name or OFF file")
    _add_common(p)
    p.set_defaults(func=cmd_realize)

    p = sub.add_parser("augment", help="cap every face and check feasibility")
    p.add_argument("target")
    _add_common(p)
    p.set_defaults(func=cmd_augment)

    p = sub.add_parser("blueprint", help="vertex diagram, module count, assembly plan")
    p.add_argument("target")
    p.add_argument("--start-vertex", type=int, default=None)
    p.add_argument("--colors", type=int, default=3)
    _add_common(p, with_solver=False)
    p.set_defaults(func=cmd_blueprint)

    p = sub.add_parser("net", help="unfold into a planar net")
    p.add_argument("target")
    p.add_argument("--root-face", type=int, default=0)
    _add_common(p)
    p.set_defaults(func=cmd_net)

    p = sub.add_parser("search-torus", help="survey toroidal candidates")
    p.add_argument("--grid", default=None, help="torus grid size, e.g. 4x5")
    p.add_argument("--name", default=None, help="catalog torus entry")
    _add_common(p)
    p.set_defaults(func=cmd_search_torus)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except CommandError as exc:
        sys.stderr.write(f"error: {exc}\n")
        return exc.exit_code
    except SonobeError as exc:
        sys.stderr.write(f"error: {type(exc).__name__}: {exc}\n")
        return EXIT_VALIDATION


def main_entry() -> None:
    sys.exit(main())


if __name__ == "__main__":
    main_entry()
