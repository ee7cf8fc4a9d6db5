"""Command-line entry point.

Exit codes: 0 success or verified, 1 a verification failed, 2 usage error.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import os
import sys
from concurrent.futures import ProcessPoolExecutor

from .bracketings import associahedron_frame, catalan, f_vector, face_poset, poset_to_dot, poset_to_json
from .circle import count_product_types, padded, partitions_at_most
from .config import FORMATS, OUTPUT_DIR_ENV, load_config
from .polytopes import (
    build_circle_product,
    build_interval_simplex,
    collision_faces,
    facet_census,
    iterated_truncation,
    labeled_isomorphism,
    truncated_matches_associahedron,
)

EXIT_OK, EXIT_FAILED, EXIT_USAGE = 0, 1, 2


class UsageError(Exception):
    pass


def _pmap(fn, items, threads):
    items = list(items)
    if threads <= 1 or len(items) <= 1:
        return [fn(x) for x in items]
    with ProcessPoolExecutor(max_workers=threads) as ex:
        return list(ex.map(fn, items))


def _csv(rows) -> str:
    buf = io.StringIO()
    csv.writer(buf, lineterminator="\n").writerows(rows)
    return buf.getvalue()


def _parse_partition(text):
    try:
        parts = tuple(int(t) for t in text.split(","))
    except ValueError:
        raise UsageError(f"bad partition {text!r}; expected e.g. 2,1,0")
    if len(parts) > 3 or any(p < 0 for p in parts):
        raise UsageError("a partition has at most three non-negative parts")
    return parts + (0,) * (3 - len(parts))


def _polytope(args):
    """Product polytope (optionally truncated) chosen by --partition/--interval."""
    if args.partition is not None:
        p = build_circle_product(_parse_partition(args.partition))
    elif args.interval is not None:
        if args.interval < 1:
            raise UsageError("--interval needs at least one free node")
        p = build_interval_simplex(args.interval)
    else:
        raise UsageError("choose --k, --partition or --interval")
    return p


def _truncate(p):
    return iterated_truncation(p, collision_faces(p))


def _target_index(p):
    # K_n has n - 2 dimensions
    return p.dim + 2


# -- fvector -------------------------------------------------------------------


def cmd_fvector(args, cfg, out):
    if args.k is not None:
        if not 2 <= args.k <= cfg.max_k:
            raise UsageError(f"--k must lie in 2..{cfg.max_k}")
        frame = associahedron_frame(args.k)
        fvec = f_vector(frame)
        name = f"K{args.k}"
        if cfg.format == "json" and not args.facets_only:
            out.write(poset_to_json(face_poset(frame)))
            return EXIT_OK
        if cfg.format == "dot" and not args.facets_only:
            out.write(poset_to_dot(face_poset(frame)))
            return EXIT_OK
    else:
        p = _polytope(args)
        if args.truncated:
            p = _truncate(p)
        fvec = p.f_vector()
        name = "truncated" if args.truncated else "product"
        if cfg.format == "json" and not args.facets_only:
            out.write(p.to_json() + "\n")
            return EXIT_OK
    if args.facets_only:
        value = fvec[1] if len(fvec) > 1 else 0
        out.write(_csv([["name", "facets"], [name, value]]) if cfg.format == "csv" else f"{value}\n")
    elif cfg.format == "csv":
        out.write(_csv([["name"] + [f"codim{i}" for i in range(len(fvec))], [name, *fvec]]))
    else:
        out.write(" ".join(map(str, fvec)) + "\n")
    return EXIT_OK


# -- truncate ------------------------------------------------------------------


def _truncate_report(spec):
    kind, value = spec
    p = build_circle_product(value) if kind == "partition" else build_interval_simplex(value)
    sched = collision_faces(p)
    t = iterated_truncation(p, sched)
    labeled = labeled_isomorphism(t) is not None
    generic = truncated_matches_associahedron(t)
    census = facet_census(t)
    return {
        "source": kind,
        "value": ",".join(map(str, value)) if kind == "partition" else str(value),
        "k": _target_index(t),
        "schedule": {str(d): c for d, c in sorted(sched.counts().items())},
        "fvector": list(t.f_vector()),
        "facets": t.facet_count,
        "labeled_map": labeled,
        "isomorphic": labeled and generic,
        "facet_census": {" ".join(map(str, k)): v for k, v in census.items()},
    }


def cmd_truncate(args, cfg, out):
    if args.all is not None:
        if not 4 <= args.all <= cfg.max_k:
            raise UsageError(f"--all must lie in 4..{cfg.max_k}")
        specs = [("partition", padded(p)) for p in partitions_at_most(args.all - 2)]
    elif args.partition is not None:
        specs = [("partition", _parse_partition(args.partition))]
    elif args.interval is not None:
        if args.interval < 1:
            raise UsageError("--interval needs at least one free node")
        specs = [("interval", args.interval)]
    else:
        raise UsageError("choose --partition, --interval or --all")
    reports = _pmap(_truncate_report, specs, cfg.threads)
    if cfg.format == "json":
        out.write(json.dumps(reports, indent=1) + "\n")
    elif cfg.format == "csv":
        rows = [["source", "value", "k", "fvector", "facets", "isomorphic"]]
        for r in reports:
            rows.append([r["source"], r["value"], r["k"], " ".join(map(str, r["fvector"])),
                         r["facets"], "yes" if r["isomorphic"] else "no"])
        out.write(_csv(rows))
    else:
        for r in reports:
            out.write(f"{r['source']} {r['value']}: truncations by dimension {r['schedule']}\n")
            out.write(f"f-vector: {' '.join(map(str, r['fvector']))} ({r['facets']} facets)\n")
            if args.census:
                for k, v in r["facet_census"].items():
                    out.write(f"  {v} facets with f-vector {k}\n")
            out.write(f"isomorphic to K_{r['k']}: {'yes' if r['isomorphic'] else 'no'}\n")
    return EXIT_OK if all(r["isomorphic"] for r in reports) else EXIT_FAILED


# -- tile ----------------------------------------------------------------------


def _tile_summary(space_name, n, building_set, cfg):
    from .tiling import (
        build_complex,
        classify_surface,
        describe_census,
        euler_characteristic,
        incidence_multiplicities,
        polygon_census,
        space_for,
        verify_right_angled,
    )

    space = space_for(space_name, n)
    cx = build_complex(space, building_set, cfg.max_n)
    info = {
        "space": str(space),
        "n": n,
        "building_set": building_set,
        "tiles": len(cx.top_cells()),
        "fvector": list(cx.f_vector()),
        "chi": euler_characteristic(cx),
        "right_angled": verify_right_angled(cx),
    }
    mult = incidence_multiplicities(cx)
    dims = {c.id: c.dim for c in cx.cells}
    by_dim = {}
    for cid, m in mult.items():
        by_dim.setdefault(dims[cid], set()).add(m)
    info["gluing_multiplicities"] = {str(d): sorted(v) for d, v in sorted(by_dim.items())}
    if cx.dim == 2 and cx.polygons is not None:
        s = classify_surface(cx)
        census = polygon_census(cx)
        info.update(closed=s.closed, orientable=s.orientable, surface=s.name,
                    polygons=describe_census(census))
    return cx, info


def cmd_tile(args, cfg, out):
    cx, info = _tile_summary(args.space, args.n, args.building_set, cfg)
    if cfg.format == "json":
        out.write(cx.to_json() + "\n")
    elif cfg.format == "dot":
        out.write(cx.dual_graph_dot())
    elif cfg.format == "csv":
        out.write(cx.f_vector_csv())
    else:
        line = f"{info['tiles']} tiles, chi={info['chi']}"
        if "orientable" in info:
            line += ", " + ("orientable" if info["orientable"] else "non-orientable")
        out.write(f"{info['space']} ({info['building_set']}): {line}\n")
        out.write(f"f-vector (vertices first): {' '.join(map(str, info['fvector']))}\n")
        if "polygons" in info:
            out.write(f"top cells: {info['polygons']}\n")
            out.write(f"surface: {info['surface']} ({'closed' if info['closed'] else 'not closed'})\n")
        glue = ", ".join(f"dim {d}: {m}" for d, m in info["gluing_multiplicities"].items())
        out.write(f"tiles meeting each cell: {glue}\n")
        out.write(f"right-angled: {'yes' if info['right_angled'] else 'no'}\n")
    return EXIT_OK


# -- verify-kapranov -------------------------------------------------------------


def cmd_verify_kapranov(args, cfg, out):
    from .tiling import verify_kapranov

    if args.n > cfg.max_n:
        raise UsageError(f"n = {args.n} exceeds max_n = {cfg.max_n}")
    r = verify_kapranov(args.n, args.building_set, cfg.max_n, oracle=not args.no_oracle)
    if cfg.format == "json":
        out.write(json.dumps({
            "n": r.n, "building_set": r.building_set, "isomorphic": r.isomorphic,
            "top_cells": list(r.top_cells), "f_vectors": [list(f) for f in r.f_vectors],
            "oracle_isomorphic": r.oracle_isomorphic, "diagnostics": r.diagnostics,
            "mapping": None if r.mapping is None else {str(k): v for k, v in sorted(r.mapping.items())},
        }, indent=1) + "\n")
    else:
        out.write(r.summary() + "\n")
    return EXIT_OK if r.isomorphic else EXIT_FAILED


# -- chambers --------------------------------------------------------------------


def cmd_chambers(args, cfg, out):
    from .chambers import count_projective_chambers, sampling_report

    if args.n < 2:
        raise UsageError("--n must be at least 2")
    if args.projective_count:
        k = count_projective_chambers(args.n, args.samples, cfg.seed)
        out.write(f"{k}\n")
        return EXIT_OK
    rows = sampling_report(args.n, args.samples, cfg.seed, cfg.epsilon)
    if cfg.format in ("csv", "text") and not args.summary:
        table = [["input", "image", "chamber", "matches"]]
        for v, p, c, ok in rows:
            table.append([" ".join(f"{x:.17g}" for x in v), " ".join(f"{x:.17g}" for x in p),
                          str(c), int(ok)])
        out.write(_csv(table))
    failures = sum(1 for *_, ok in rows if not ok)
    if args.summary or cfg.format == "json":
        out.write(json.dumps({"n": args.n, "samples": args.samples, "seed": cfg.seed,
                              "failures": failures}) + "\n")
    return EXIT_OK if failures == 0 else EXIT_FAILED


# -- product-types ---------------------------------------------------------------


def cmd_product_types(args, cfg, out):
    if not 3 <= args.n <= cfg.max_k:
        raise UsageError(f"--n must lie in 3..{cfg.max_k}")
    r = count_product_types(args.n)
    if cfg.format == "json":
        out.write(json.dumps({"n": r.n, "enumerated": r.enumerated,
                              "formula_as_printed": r.formula_as_printed,
                              "formula_shifted": r.formula_shifted,
                              "discrepancy": r.discrepancy,
                              "types": [list(t) for t in r.types]}) + "\n")
    elif cfg.format == "csv":
        out.write(_csv([["n", "enumerated", "formula_as_printed", "formula_shifted", "discrepancy"],
                        [r.n, r.enumerated, r.formula_as_printed, r.formula_shifted, int(r.discrepancy)]]))
    else:
        types = ", ".join("x".join(f"D{p}" for p in t) for t in r.types)
        out.write(f"K_{r.n}: {r.enumerated} simplex-product types ({types})\n")
        out.write(f"p3(n-3) + p2(n-2) + 1 = {r.formula_as_printed}; "
                  f"p3(n-2) + p2(n-2) + 1 = {r.formula_shifted}\n")
        if r.discrepancy:
            out.write("discrepancy: the p3(n-3) formula disagrees with enumeration\n")
    return EXIT_OK


# -- export ----------------------------------------------------------------------


def _write(cfg, name, text):
    os.makedirs(cfg.out_dir, exist_ok=True)
    path = os.path.join(cfg.out_dir, name)
    with open(path, "w") as fh:
        fh.write(text)
    return path


def cmd_export(args, cfg, out):
    fmt = cfg.format if cfg.format != "text" else "json"
    if args.k is not None:
        if not 2 <= args.k <= cfg.max_k:
            raise UsageError(f"--k must lie in 2..{cfg.max_k}")
        frame = associahedron_frame(args.k)
        if fmt == "json":
            text = poset_to_json(face_poset(frame))
        elif fmt == "dot":
            text = poset_to_dot(face_poset(frame))
        else:
            fvec = f_vector(frame)
            text = _csv([["name"] + [f"codim{i}" for i in range(len(fvec))], [f"K{args.k}", *fvec]])
        name = f"K{args.k}.{fmt}"
    elif args.space is not None:
        cx, _ = _tile_summary(args.space, args.n, args.building_set, cfg)
        text = {"json": cx.to_json() + "\n", "dot": cx.dual_graph_dot(), "csv": cx.f_vector_csv()}[fmt]
        name = f"{args.space}{args.n}_{args.building_set}.{fmt}"
    else:
        raise UsageError("choose --k or --space")
    out.write(_write(cfg, name, text) + "\n")
    return EXIT_OK


# -- report ----------------------------------------------------------------------


def cmd_report(args, cfg, out):
    """CSV tables and PNG figures for the main counts, written to the output dir."""
    from . import plotting
    from .tiling import build_complex, polygon_census, space_for, verify_kapranov

    top_k = min(cfg.max_k, 7)
    files = {}

    rows = [["k", "codim0", "codim1", "codim2", "codim3", "codim4", "codim5", "vertices", "catalan"]]
    bars = []
    for k in range(3, top_k + 1):
        fvec = f_vector(associahedron_frame(k))
        rows.append([k] + list(fvec) + [""] * (6 - len(fvec)) + [fvec[-1], catalan(k - 1)])
        bars.append((f"K{k}", list(reversed(fvec))))
    files["fvectors.csv"] = _csv(rows)

    specs = [("interval", m) for m in range(1, min(top_k - 2, 4) + 1)]
    for k in range(4, min(top_k, 6) + 1):
        specs += [("partition", padded(p)) for p in partitions_at_most(k - 2)]
    reports = _pmap(_truncate_report, specs, cfg.threads)
    rows = [["source", "value", "k", "fvector", "isomorphic"]]
    for r in reports:
        rows.append([r["source"], r["value"], r["k"], " ".join(map(str, r["fvector"])),
                     "yes" if r["isomorphic"] else "no"])
    files["constructions.csv"] = _csv(rows)

    rows = [["space", "n", "building_set", "tiles", "fvector", "chi", "right_angled"]]
    censuses = []
    top_n = min(cfg.max_n, 3)
    for n in range(1, top_n + 1):
        for name in ("pv", "moduli"):
            _, info = _tile_summary(name, n, "minimal", cfg)
            rows.append([info["space"], n, "minimal", info["tiles"], " ".join(map(str, info["fvector"])),
                         info["chi"], int(info["right_angled"])])
    if top_n >= 2:
        for bs in ("minimal", "maximal"):
            for name in ("pv", "moduli"):
                cx = build_complex(space_for(name, 2), bs)
                censuses.append((f"{space_for(name, 2)} {bs}", polygon_census(cx)))
                if bs == "maximal":
                    _, info = _tile_summary(name, 2, bs, cfg)
                    rows.append([info["space"], 2, bs, info["tiles"], " ".join(map(str, info["fvector"])),
                                 info["chi"], int(info["right_angled"])])
    files["complexes.csv"] = _csv(rows)

    rows = [["n", "building_set", "isomorphic", "oracle_isomorphic", "top_cells"]]
    cases = [(n, "minimal") for n in range(1, top_n + 1)] + ([(2, "maximal")] if top_n >= 2 else [])
    ok = True
    for n, bs in cases:
        r = verify_kapranov(n, bs, cfg.max_n)
        ok &= r.oracle_agrees and r.isomorphic == (bs == "minimal")
        rows.append([n, bs, int(r.isomorphic), int(bool(r.oracle_isomorphic)), r.top_cells[0]])
    files["kapranov.csv"] = _csv(rows)

    written = [_write(cfg, name, text) for name, text in files.items()]
    os.makedirs(cfg.out_dir, exist_ok=True)
    fig = os.path.join(cfg.out_dir, "fvectors.png")
    plotting.fvector_figure(bars, fig)
    written.append(fig)
    fig = os.path.join(cfg.out_dir, "K4_hasse.png")
    plotting.hasse_figure(face_poset(associahedron_frame(4)), fig,
                          label=lambda e: str(e) if e.codim else "K4", title="Bracketings of K4")
    written.append(fig)
    if censuses:
        fig = os.path.join(cfg.out_dir, "tile_census.png")
        plotting.census_figure(censuses, fig)
        written.append(fig)

    for name, text in files.items():
        out.write(f"# {name}\n{text}")
    out.write("# files\n" + "\n".join(written) + "\n")
    return EXIT_OK if ok and all(r["isomorphic"] for r in reports) else EXIT_FAILED


# -- parser ----------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    # SUPPRESS keeps a flag given before the subcommand from being reset after it
    common = argparse.ArgumentParser(add_help=False, argument_default=argparse.SUPPRESS)
    common.add_argument("--config", help="INI file with a [run] section")
    common.add_argument("--format", choices=FORMATS)
    common.add_argument("--output-dir", help=f"defaults to ${OUTPUT_DIR_ENV} or the working directory")
    common.add_argument("--threads", type=int, help="worker processes for independent jobs")
    common.add_argument("--seed", type=int)
    common.add_argument("--epsilon", type=float)
    common.add_argument("--max-n", type=int, help="largest n for glued complexes")
    common.add_argument("--max-k", type=int, help="largest k for single associahedra K_k")

    parser = argparse.ArgumentParser(prog="associahedra", description=__doc__, parents=[common])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("fvector", parents=[common], help="face counts of K_k or a product of simplices")
    p.add_argument("--k", type=int)
    p.add_argument("--partition")
    p.add_argument("--interval", type=int, help="number of free nodes of the interval frame")
    p.add_argument("--truncated", action="store_true")
    p.add_argument("--facets-only", action="store_true")
    p.set_defaults(func=cmd_fvector)

    p = sub.add_parser("truncate", parents=[common], help="truncate a simplex product into an associahedron")
    p.add_argument("--partition")
    p.add_argument("--interval", type=int)
    p.add_argument("--all", type=int, metavar="K", help="every partition of K - 2 into at most three parts")
    p.add_argument("--census", action="store_true", help="list facets by combinatorial type")
    p.set_defaults(func=cmd_truncate)

    for name, func, helptext in (
        ("tile", cmd_tile, "glue associahedra into a projective sphere or moduli space"),
        ("export", cmd_export, "write a poset or complex to the output directory"),
    ):
        p = sub.add_parser(name, parents=[common], help=helptext)
        p.add_argument("--space", choices=("pv", "moduli"), required=name == "tile")
        p.add_argument("--n", type=int, default=2)
        p.add_argument("--building-set", choices=("minimal", "maximal"), default="minimal")
        if name == "export":
            p.add_argument("--k", type=int)
        p.set_defaults(func=func)

    p = sub.add_parser("verify-kapranov", parents=[common], help="compare the two glued complexes")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--building-set", choices=("minimal", "maximal"), default="minimal")
    p.add_argument("--no-oracle", action="store_true", help="skip the generic isomorphism search")
    p.set_defaults(func=cmd_verify_kapranov)

    p = sub.add_parser("chambers", parents=[common], help="sample the numeric chamber map")
    p.add_argument("--n", type=int, default=3, help="number of points")
    p.add_argument("--samples", type=int, default=10)
    p.add_argument("--summary", action="store_true")
    p.add_argument("--projective-count", action="store_true")
    p.set_defaults(func=cmd_chambers)

    p = sub.add_parser("product-types", parents=[common], help="simplex-product types truncating to K_n")
    p.add_argument("--n", type=int, required=True)
    p.set_defaults(func=cmd_product_types)

    p = sub.add_parser("report", parents=[common], help="CSV tables and PNG figures")
    p.set_defaults(func=cmd_report)
    return parser


def main(argv=None, out=None) -> int:
    out = sys.stdout if out is None else out
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return EXIT_USAGE if e.code else EXIT_OK
    try:
        flags = {k: getattr(args, k, None) for k in
                 ("format", "output_dir", "threads", "seed", "epsilon", "max_n", "max_k")}
        cfg = load_config(getattr(args, "config", None)).override(**flags)
        return args.func(args, cfg, out)
    except (UsageError, ValueError, OSError) as e:
        print(f"associahedra: error: {e}", file=sys.stderr)
        return EXIT_USAGE


def main_exit():
    sys.exit(main())


if __name__ == "__main__":
    main_exit()
