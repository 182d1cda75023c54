"""Command-line entry point.

Every artifact-producing command writes a `<output>.manifest.json` next to
its output recording the command line, tool version, seeds, input/output
digests, and wall time.  Randomized commands take an explicit --seed; no
wall-clock default exists, so every run is replayable.

Exit codes: 0 success, 1 validation failure, 2 usage error.
"""

from __future__ import annotations

import argparse
import hashlib
import json
import sys
import time
from concurrent.futures import ThreadPoolExecutor

import numpy as np

from . import __version__
from .golay import build_golay, word_to_str, EXPECTED_WEIGHT_HISTOGRAM
from .leech import (FULL_SET_IP_COUNTS, Shape, enumerate_minimal_vectors,
                    lattice_membership)
from .laminated import (EXPECTED_SECTION_COUNTS, InvalidDimension,
                        rank_of_span, reproduce_table, section)
from .confgraph import (CapacityExceeded, DEFAULT_MEM_BUDGET, build_graph,
                        export_dimacs, peel)
from .coloring import (Coloring, SearchConfig, dsatur, load_coloring,
                       save_coloring, tabucol, verify_coloring)
from . import hset as hset_mod


def _sha256(path: str) -> str:
    h = hashlib.sha256()
    with open(path, "rb") as fh:
        for chunk in iter(lambda: fh.read(1 << 20), b""):
            h.update(chunk)
    return h.hexdigest()


def _write_manifest(primary_out: str, argv: list[str], seeds: list[int],
                    inputs: list[str], outputs: list[str], t0: float) -> None:
    manifest = {
        "command": "leechpart " + " ".join(argv),
        "version": __version__,
        "seeds": seeds,
        "input_digests": {p: _sha256(p) for p in inputs},
        "output_digests": {p: _sha256(p) for p in outputs},
        "wall_time_seconds": round(time.monotonic() - t0, 3),
    }
    with open(primary_out + ".manifest.json", "w", encoding="utf-8") as fh:
        json.dump(manifest, fh, indent=1)
        fh.write("\n")


def _full_set():
    return enumerate_minimal_vectors(build_golay())


def _vector_set_for(args):
    """Vector set selected by --dim / --hset flags."""
    code = build_golay()
    M = enumerate_minimal_vectors(code)
    hset_file = getattr(args, "hset", None)
    if hset_file:
        if args.dim != 24:
            raise SystemExit("--hset files are selections over the full set; use --dim 24")
        with open(hset_file, "rb") as fh:
            data = fh.read()
        selection = hset_mod.decode_selection(data, M, code)
        return selection.as_vector_set(), [hset_file]
    return section(M, args.dim), []


def _write_vectors(vectors: np.ndarray, out) -> None:
    for row in vectors:
        out.write(" ".join(str(int(c)) for c in row) + "\n")


def _parse_vectors(path: str) -> np.ndarray:
    rows = []
    with open(path, encoding="utf-8") as fh:
        for line in fh:
            line = line.strip()
            if not line:
                continue
            parts = line.split()
            if len(parts) != 24:
                raise ValueError(f"expected 24 integers per line, got {len(parts)}")
            rows.append([int(p) for p in parts])
    return np.array(rows, dtype=np.int8)


# ---------------------------------------------------------------------------
# subcommands
# ---------------------------------------------------------------------------

def cmd_golay(args, argv) -> int:
    t0 = time.monotonic()
    code = build_golay()
    status = 0
    if args.check or not args.dump:
        print("weight  count   expected")
        for w in sorted(EXPECTED_WEIGHT_HISTOGRAM):
            got = code.weight_histogram.get(w, 0)
            exp = EXPECTED_WEIGHT_HISTOGRAM[w]
            flag = "PASS" if got == exp else "FAIL"
            print(f"{w:6d}  {got:5d}   {exp:5d}  {flag}")
            if got != exp:
                status = 1
        print("note: counts of words at distance 8 and 16 are 759 each; a")
        print("      circulated variant of the generator table lists 729, but")
        print("      the weight enumerator of the [24,12,8] code fixes 759.")
        print(f"words: {len(code)}  {'PASS' if len(code) == 4096 else 'FAIL'}")
    if args.dump:
        with open(args.dump, "w", encoding="utf-8") as fh:
            for w in code.words:
                fh.write(word_to_str(w) + "\n")
        _write_manifest(args.dump, argv, [], [], [args.dump], t0)
    return status


def cmd_enumerate(args, argv) -> int:
    t0 = time.monotonic()
    S, _ = _vector_set_for(args)
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            _write_vectors(S.vectors, fh)
        _write_manifest(args.out, argv, [], [], [args.out], t0)
        print(f"wrote {len(S)} vectors of {S.label} to {args.out}")
    else:
        _write_vectors(S.vectors, sys.stdout)
    return 0


def cmd_stats(args, argv) -> int:
    S, _ = _vector_set_for(args)
    counts = S.counts_by_shape
    print(f"{S.label}: {len(S)} vectors")
    for shape in Shape:
        print(f"  {shape.label:10s} {counts[shape]}")
    Xf = S.float_vectors()
    if args.full_pairs:
        base_ids = np.arange(len(S))
    else:
        k = min(args.sample, len(S))
        base_ids = np.unique(np.linspace(0, len(S) - 1, k).astype(np.int64))
    hist: dict[int, int] = {}

    def scan(block_ids):
        local: dict[int, int] = {}
        ips = (Xf @ Xf[block_ids].T).astype(np.int32)
        values, cnt = np.unique(ips, return_counts=True)
        for v, c in zip(values.tolist(), cnt.tolist()):
            local[v] = local.get(v, 0) + c
        return local

    blocks = [base_ids[s:s + 256] for s in range(0, len(base_ids), 256)]
    with ThreadPoolExecutor(max_workers=args.jobs) as pool:
        for local in pool.map(scan, blocks):
            for v, c in local.items():
                hist[v] = hist.get(v, 0) + c
    print(f"inner products over {len(base_ids)} base vectors:")
    for v in sorted(hist, reverse=True):
        print(f"  <x,y> = {v:4d}: {hist[v]}")
    if S.dimension == 24 and S.label == "M24":
        per_vec = {v: c // len(base_ids) for v, c in hist.items()}
        ok = per_vec == FULL_SET_IP_COUNTS
        print(f"full-set inner-product law: {'PASS' if ok else 'FAIL'}")
        return 0 if ok else 1
    return 0


def cmd_slice(args, argv) -> int:
    return cmd_enumerate(args, argv)


def cmd_counts(args, argv) -> int:
    if not args.all:
        raise SystemExit("counts: use --all")
    M = _full_set()
    rows = reproduce_table(M)
    status = 0
    print(" n  name    condition            total            (+-4,0)       "
          "(+-2,0)        (+-3,+-1)      rank")
    for row in rows:
        cells = []
        for got, exp, ok in zip(row["got"], row["expected"], row["cells_ok"]):
            cells.append(f"{got}/{exp} {'PASS' if ok else 'FAIL'}")
            if not ok:
                status = 1
        S = section(M, row["n"])
        rank = rank_of_span(S)
        rank_ok = rank == row["n"]
        if not rank_ok:
            status = 1
        print(f"{row['n']:3d} {row['name']:7s} {row['condition']:20s} "
              + "  ".join(f"{c:16s}" for c in cells)
              + f" {rank}/{row['n']} {'PASS' if rank_ok else 'FAIL'}")
    print("laminated table:", "ALL PASS" if status == 0 else "FAILURES PRESENT")
    return status


def cmd_export(args, argv) -> int:
    t0 = time.monotonic()
    if args.format != "dimacs":
        raise SystemExit(f"unknown format {args.format!r}")
    S, inputs = _vector_set_for(args)
    try:
        G = build_graph(S, mode=args.mode, mem_budget=args.mem_budget)
    except CapacityExceeded as e:
        print(f"error: {e}", file=sys.stderr)
        return 1
    with open(args.out, "w", encoding="utf-8") as fh:
        export_dimacs(G, fh)
    _write_manifest(args.out, argv, [], inputs, [args.out], t0)
    print(f"wrote {G.vertex_count} vertices / {G.edge_count} edges to {args.out}")
    return 0


def cmd_peel(args, argv) -> int:
    t0 = time.monotonic()
    S, inputs = _vector_set_for(args)
    G = build_graph(S, mode=args.mode, mem_budget=args.mem_budget)
    balls, residual = peel(G, args.k, source=S)
    with open(args.out, "w", encoding="utf-8") as fh:
        for ball in balls:
            fh.write(" ".join(str(int(i) + 1) for i in ball.member_ids) + "\n")
    _write_manifest(args.out, argv, [], inputs, [args.out], t0)
    sizes = [len(b.member_ids) for b in balls]
    print(f"peeled {len(balls)} independent sets of sizes {sizes}; "
          f"{residual.vertex_count} vertices remain")
    return 0


def cmd_color(args, argv) -> int:
    t0 = time.monotonic()
    S, inputs = _vector_set_for(args)
    G = build_graph(S, mode=args.mode, mem_budget=args.mem_budget)
    if args.strategy == "dsatur":
        result = dsatur(G)
        result.meta["seed"] = args.seed
    else:
        if args.k is None:
            raise SystemExit("color: tabucol needs -k")
        if args.peel > 0:
            if args.k - args.peel < 1:
                raise SystemExit("color: -k must exceed --peel")
            balls, residual = peel(G, args.peel, source=S)
            sub_cfg = SearchConfig(k=args.k - len(balls), seed=args.seed,
                                   max_iterations=args.max_iters,
                                   restarts=args.restarts,
                                   time_limit=args.time_limit)
            sub = tabucol(residual, sub_cfg)
            assignment = np.full(G.vertex_count, -1, dtype=np.int32)
            assignment[residual.vertex_ids] = sub.assignment
            for i, ball in enumerate(balls):
                assignment[ball.member_ids] = sub.k + i
            result = Coloring(assignment=assignment, k=args.k,
                              conflicts=sub.conflicts, meta=sub.meta)
            result.meta["strategy"] = f"tabucol+peel{len(balls)}"
        else:
            cfg = SearchConfig(k=args.k, seed=args.seed,
                               max_iterations=args.max_iters,
                               restarts=args.restarts,
                               time_limit=args.time_limit)
            result = tabucol(G, cfg)
    save_coloring(args.out, result, dimension=args.dim)
    _write_manifest(args.out, argv, [args.seed], inputs, [args.out], t0)
    recount, _ = verify_coloring(G, result.assignment)
    print(f"colors={result.k} conflicts={result.conflicts} "
          f"(recount {recount}) iterations={result.meta.get('iterations')}")
    return 0


def cmd_verify(args, argv) -> int:
    from .coloring import LengthMismatch
    S, _ = _vector_set_for(args)
    G = build_graph(S, mode=args.mode, mem_budget=args.mem_budget)
    try:
        doc = load_coloring(args.coloring)
    except (ValueError, json.JSONDecodeError) as e:
        print(f"error: {e}", file=sys.stderr)
        return 1
    if doc["dimension"] != args.dim:
        print(f"error: coloring file is for dimension {doc['dimension']}, "
              f"not {args.dim}", file=sys.stderr)
        return 1
    try:
        count, edges = verify_coloring(G, doc["assignment"])
    except LengthMismatch as e:
        print(f"error: {e}", file=sys.stderr)
        return 1
    print(f"colors={doc['colors']} recorded_conflicts={doc['conflicts']} "
          f"recount={count}")
    for u, v in edges:
        print(f"  conflict: {u + 1} {v + 1}")
    return 0 if count == 0 else 1


def cmd_hset(args, argv) -> int:
    t0 = time.monotonic()
    code = build_golay()
    M = enumerate_minimal_vectors(code)
    if args.hset_cmd == "make":
        base = section(M, args.dim)
        if args.rule == "canonical":
            selection = hset_mod.make_hset(base, "canonical")
            seeds = []
        elif args.rule.startswith("seed:"):
            seed = int(args.rule.split(":", 1)[1])
            selection = hset_mod.make_hset(base, "seeded", seed=seed)
            seeds = [seed]
        else:
            raise SystemExit(f"unknown rule {args.rule!r}")
        data = hset_mod.encode_selection(selection)
        with open(args.out, "wb") as fh:
            fh.write(data)
        _write_manifest(args.out, argv, seeds, [], [args.out], t0)
        print(f"wrote {len(selection)} records ({len(data)} bytes) to {args.out}")
        return 0
    if args.hset_cmd == "decode":
        with open(args.infile, "rb") as fh:
            data = fh.read()
        try:
            selection = hset_mod.decode_selection(data, M, code)
        except (hset_mod.SizeMismatch, hset_mod.AlphabetViolation,
                hset_mod.NotInLattice, hset_mod.AntipodalViolation) as e:
            print(f"error: {type(e).__name__}: {e}", file=sys.stderr)
            return 1
        with open(args.out, "w", encoding="utf-8") as fh:
            _write_vectors(selection.realized, fh)
        _write_manifest(args.out, argv, [], [args.infile], [args.out], t0)
        print(f"decoded {len(selection)} vectors to {args.out}")
        return 0
    if args.hset_cmd == "encode":
        vectors = _parse_vectors(args.infile)
        if not lattice_membership(vectors, code).all():
            print("error: input contains vectors outside the lattice",
                  file=sys.stderr)
            return 1
        try:
            ids = np.array([M.position_of(v) for v in vectors], dtype=np.int64)
        except Exception:
            print("error: input contains non-minimal vectors", file=sys.stderr)
            return 1
        selection = hset_mod.HSelection(base=M, realized_ids=ids, label="H24:text")
        report = hset_mod.validate_hset(selection)
        if not report.ok:
            print("error: " + "; ".join(report.failures), file=sys.stderr)
            return 1
        data = hset_mod.encode_selection(selection)
        with open(args.out, "wb") as fh:
            fh.write(data)
        _write_manifest(args.out, argv, [], [args.infile], [args.out], t0)
        print(f"encoded {len(selection)} records to {args.out}")
        return 0
    if args.hset_cmd == "validate":
        with open(args.infile, "rb") as fh:
            data = fh.read()
        try:
            selection = hset_mod.decode_selection(data, M, code)
        except (hset_mod.SizeMismatch, hset_mod.AlphabetViolation,
                hset_mod.NotInLattice, hset_mod.AntipodalViolation) as e:
            print(f"error: {type(e).__name__}: {e}", file=sys.stderr)
            return 1
        report = hset_mod.validate_hset(selection, full_pairwise=args.full_pairs)
        print(f"{report.label}: {report.size} vectors")
        print(f"  one per antipodal pair: {report.pair_complete}")
        for shape in Shape:
            print(f"  {shape.label:10s} {report.shape_counts[shape]}")
        print(f"  min inner product: {report.min_ip}")
        print(f"  squared diameter:  {report.diameter_squared}")
        if report.ip_support is not None:
            print(f"  inner-product support: {report.ip_support}")
        if not report.ok:
            for f in report.failures:
                print(f"  FAIL: {f}")
            return 1
        print("  PASS")
        return 0
    raise SystemExit(f"unknown hset subcommand {args.hset_cmd!r}")


# ---------------------------------------------------------------------------
# argument parsing
# ---------------------------------------------------------------------------

def _add_graph_opts(p: argparse.ArgumentParser) -> None:
    p.add_argument("--mode", choices=["auto", "explicit", "implicit"],
                   default="auto")
    p.add_argument("--mem-budget", type=int, default=DEFAULT_MEM_BUDGET,
                   help="bytes allowed for explicit adjacency (default 3 GiB)")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="leechpart",
        description="Leech lattice kissing configurations, laminated sections, "
                    "and small-diameter partitions via graph coloring")
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="cmd", required=True)

    p = sub.add_parser("golay", help="build and check the Golay code")
    p.add_argument("--check", action="store_true")
    p.add_argument("--dump", metavar="FILE")
    p.set_defaults(func=cmd_golay)

    p = sub.add_parser("enumerate", help="write minimal vectors")
    p.add_argument("--dim", type=int, default=24)
    p.add_argument("--out", metavar="FILE")
    p.set_defaults(func=cmd_enumerate)

    p = sub.add_parser("stats", help="shape counts and inner-product histogram")
    p.add_argument("--dim", type=int, required=True)
    p.add_argument("--full-pairs", action="store_true")
    p.add_argument("--sample", type=int, default=100)
    p.add_argument("--jobs", type=int, default=1)
    p.set_defaults(func=cmd_stats)

    p = sub.add_parser("slice", help="write a laminated section")
    p.add_argument("--dim", type=int, required=True)
    p.add_argument("--out", metavar="FILE")
    p.set_defaults(func=cmd_slice)

    p = sub.add_parser("counts", help="reproduce the section count table")
    p.add_argument("--all", action="store_true")
    p.set_defaults(func=cmd_counts)

    p = sub.add_parser("export", help="export the conflict graph")
    p.add_argument("--dim", type=int, required=True)
    p.add_argument("--hset", metavar="FILE")
    p.add_argument("--format", default="dimacs")
    p.add_argument("--out", required=True)
    _add_graph_opts(p)
    p.set_defaults(func=cmd_export)

    p = sub.add_parser("peel", help="remove large independent ball sets")
    p.add_argument("--dim", type=int, required=True)
    p.add_argument("--hset", metavar="FILE")
    p.add_argument("-k", type=int, required=True)
    p.add_argument("--out", required=True)
    _add_graph_opts(p)
    p.set_defaults(func=cmd_peel)

    p = sub.add_parser("color", help="search for a proper coloring")
    p.add_argument("--dim", type=int, required=True)
    p.add_argument("--hset", metavar="FILE")
    p.add_argument("-k", type=int)
    p.add_argument("--seed", type=int, required=True)
    p.add_argument("--strategy", choices=["tabucol", "dsatur"], default="tabucol")
    p.add_argument("--max-iters", type=int, default=100_000)
    p.add_argument("--restarts", type=int, default=1)
    p.add_argument("--peel", type=int, default=0)
    p.add_argument("--time-limit", type=float)
    p.add_argument("--out", required=True)
    _add_graph_opts(p)
    p.set_defaults(func=cmd_color)

    p = sub.add_parser("verify", help="recount conflicts of a coloring file")
    p.add_argument("--dim", type=int, required=True)
    p.add_argument("--hset", metavar="FILE")
    p.add_argument("--coloring", required=True)
    _add_graph_opts(p)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("hset", help="antipodal selections and their files")
    hsub = p.add_subparsers(dest="hset_cmd", required=True)
    hp = hsub.add_parser("make")
    hp.add_argument("--dim", type=int, default=24)
    hp.add_argument("--rule", required=True, help="canonical or seed:S")
    hp.add_argument("--out", required=True)
    hp = hsub.add_parser("decode")
    hp.add_argument("--in", dest="infile", required=True)
    hp.add_argument("--out", required=True)
    hp = hsub.add_parser("encode")
    hp.add_argument("--in", dest="infile", required=True)
    hp.add_argument("--out", required=True)
    hp = hsub.add_parser("validate")
    hp.add_argument("--in", dest="infile", required=True)
    hp.add_argument("--full-pairs", action="store_true")
    p.set_defaults(func=cmd_hset)

    return parser


def main(argv: list[str] | None = None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args, argv)
    except InvalidDimension as e:
        print(f"error: {e}", file=sys.stderr)
        return 2
    except FileNotFoundError as e:
        print(f"error: {e}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    raise SystemExit(main())
