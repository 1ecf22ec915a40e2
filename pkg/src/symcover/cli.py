"""Batch front end: build covers and circuits, verify them, report sizes,
export the bipartite-graph view.

Exit codes: 0 success, 1 verification failure, 2 usage or I/O error,
3 construction failure, 4 unsupported-modulus guard on export.
"""

from __future__ import annotations

import argparse
import math
import sys
from dataclasses import dataclass
from pathlib import Path

from .zmod import UnsupportedModulusError, factorize, mod_inverse
from .cover2d import WeightedRectCover, build_s2_cover, verify_s2_properties
from .coverkd import (
    ConstructionError,
    WeightedBoxCover,
    build_sk_cover,
    verify_sk_properties,
)
from .circuit import (
    BudgetExceededError,
    expand_coefficients,
    from_cover2d,
    from_coverkd,
    size,
)
from .astrong import check_astrong, target_coefficients
from . import serialize
from .serialize import SchemaError

EXIT_OK = 0
EXIT_VERIFY_FAIL = 1
EXIT_USAGE = 2
EXIT_CONSTRUCTION = 3
EXIT_UNSUPPORTED_MODULUS = 4


@dataclass
class RunConfig:
    command: str
    poly: str | None = None
    n: int | None = None
    n_list: list[int] | None = None
    k: int = 2
    m: int | None = None
    b: int | None = None
    strategy: str = "greedy"
    seed: int = 0
    expansion_budget: int = 10_000_000
    verify_cap: int = 10_000_000
    input: str | None = None
    output: str | None = None
    circuit_output: str | None = None
    csv: str | None = None
    out_dir: str | None = None
    fmt: str = "dot"


def _parse_args(argv: list[str]) -> RunConfig:
    parser = argparse.ArgumentParser(
        prog="symcover",
        description="build and verify weighted covers and depth-3 circuits "
        "for elementary symmetric polynomials modulo composites",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    build = sub.add_parser("build", help="construct a cover and its circuit")
    build.add_argument("--poly", choices=["s2", "sk"], required=True)
    build.add_argument("--n", type=int, required=True)
    build.add_argument("--m", type=int, required=True)
    build.add_argument("--k", type=int, default=3, help="tuple size for sk")
    build.add_argument("--b", type=int, default=None, help="hash alphabet size")
    build.add_argument("--strategy", choices=["greedy", "randomized"], default="greedy")
    build.add_argument("--seed", type=int, default=0)
    build.add_argument("--out", required=True, help="cover JSON path")
    build.add_argument("--circuit-out", default=None, help="circuit JSON path")

    verify = sub.add_parser("verify", help="verify a cover artifact")
    verify.add_argument("--in", dest="input", required=True)
    verify.add_argument("--expansion-budget", type=int, default=10_000_000)
    verify.add_argument("--cap", type=int, default=10_000_000,
                        help="exhaustive tuple-check cap for box covers")
    verify.add_argument("--seed", type=int, default=0)

    report = sub.add_parser("report", help="size table over a range of n")
    report.add_argument("--poly", choices=["s2"], required=True)
    report.add_argument("--n", required=True, help="comma-separated list")
    report.add_argument("--m", type=int, required=True)
    report.add_argument("--csv", required=True)

    export = sub.add_parser("export-dot", help="bipartite graph cover export")
    export.add_argument("--in", dest="input", required=True)
    export.add_argument("--out-dir", required=True)
    export.add_argument("--format", dest="fmt", choices=["dot", "csv"], default="dot")

    ns = parser.parse_args(argv)
    cfg = RunConfig(command=ns.command)
    if ns.command == "build":
        cfg.poly, cfg.n, cfg.m, cfg.k = ns.poly, ns.n, ns.m, ns.k
        cfg.b, cfg.strategy, cfg.seed = ns.b, ns.strategy, ns.seed
        cfg.output, cfg.circuit_output = ns.out, ns.circuit_out
    elif ns.command == "verify":
        cfg.input = ns.input
        cfg.expansion_budget = ns.expansion_budget
        cfg.verify_cap, cfg.seed = ns.cap, ns.seed
    elif ns.command == "report":
        cfg.poly, cfg.m, cfg.csv = ns.poly, ns.m, ns.csv
        try:
            cfg.n_list = [int(part) for part in ns.n.split(",") if part]
        except ValueError as exc:
            parser.error(f"--n expects comma-separated integers: {exc}")
        if not cfg.n_list:
            parser.error("--n expects at least one value")
    else:
        cfg.input, cfg.out_dir, cfg.fmt = ns.input, ns.out_dir, ns.fmt
    return cfg


def cmd_build(cfg: RunConfig) -> int:
    if cfg.n is None or cfg.n < 2:
        raise ValueError(f"need n >= 2, got {cfg.n}")
    mod = factorize(cfg.m)
    if cfg.poly == "s2":
        cover = build_s2_cover(cfg.n, mod)
        circuit = from_cover2d(cover)
    else:
        if not 2 <= cfg.k <= cfg.n:
            raise ValueError(f"need 2 <= k <= n, got k={cfg.k}, n={cfg.n}")
        cover = build_sk_cover(
            cfg.n, cfg.k, mod, b=cfg.b, strategy=cfg.strategy, seed=cfg.seed
        )
        circuit = from_coverkd(cover)
    cover.meta.setdefault("seed", cfg.seed)

    serialize.dump(serialize.cover_to_dict(cover), cfg.output)
    written = [cfg.output]
    if cfg.circuit_output:
        serialize.dump(serialize.circuit_to_dict(circuit), cfg.circuit_output)
        written.append(cfg.circuit_output)

    s = size(circuit)
    print(f"wrote {', '.join(written)}")
    print(
        f"items={len(cover.items)} bbr_degree={cover.meta['bbr_degree']} "
        f"gate_total={s.gate_total} products={s.products} "
        f"graph_model_count={s.graph_model_count}"
    )
    return EXIT_OK


def cmd_verify(cfg: RunConfig) -> int:
    cover = serialize.cover_from_dict(serialize.load(cfg.input))
    if isinstance(cover, WeightedRectCover):
        report = verify_s2_properties(cover)
        circuit = from_cover2d(cover)
        k = 2
    else:
        report = verify_sk_properties(
            cover, exhaustive_cap=cfg.verify_cap, seed=cfg.seed
        )
        circuit = from_coverkd(cover)
        k = cover.k
    print(f"properties: {report.summary()}")
    for v in report.violations[:20]:
        print(f"  cell {v.cell}: {v.reason}")
    if len(report.violations) > 20:
        print(f"  ... and {len(report.violations) - 20} more")

    astrong_ok = True
    try:
        expansion = expand_coefficients(circuit, budget=cfg.expansion_budget)
        target = target_coefficients(cover.n, k, ordered=True)
        a_report = check_astrong(expansion, target, cover.mod)
        astrong_ok = a_report.ok
        print(f"a-strong: {'pass' if a_report.ok else 'fail'} "
              f"({a_report.checked} monomials)")
        if not a_report.ok:
            sys.stdout.write(a_report.text())
    except BudgetExceededError as exc:
        print(f"a-strong: skipped ({exc}); cover-level check above is authoritative")

    return EXIT_OK if report.ok and astrong_ok else EXIT_VERIFY_FAIL


def cmd_report(cfg: RunConfig) -> int:
    import csv as csv_mod

    mod = factorize(cfg.m)
    rows = []
    for n in cfg.n_list:
        if n < 2:
            raise ValueError(f"need n >= 2, got {n}")
        cover = build_s2_cover(n, mod)
        circuit = from_cover2d(cover)
        s = size(circuit)
        rows.append(
            {
                "n": n,
                "m": cfg.m,
                "h": cover.meta["h"],
                "bbr_degree": cover.meta["bbr_degree"],
                "distinct_rectangles": len(cover.items),
                "graph_model_count": s.graph_model_count,
                "baseline_graham_pollack": n - 1,
                "baseline_naive": math.comb(n, 2),
            }
        )
    fields = list(rows[0].keys())
    with open(cfg.csv, "w", newline="") as fh:
        writer = csv_mod.DictWriter(fh, fieldnames=fields)
        writer.writeheader()
        writer.writerows(rows)
    print(f"wrote {cfg.csv} ({len(rows)} rows)")
    print(
        "note: the size advantage over the n-1 and C(n,2) baselines is "
        "asymptotic; no inequality is claimed at these small n"
    )
    return EXIT_OK


def _dot_graph(name: str, rows: list[int], cols: list[int]) -> str:
    lines = [f"graph {name} {{"]
    for i in rows:
        lines.append(f'  l{i} [label="{i}" side=left];')
    for j in cols:
        lines.append(f'  r{j} [label="{j}" side=right];')
    for i in rows:
        for j in cols:
            lines.append(f"  l{i} -- r{j};")
    lines.append("}")
    return "\n".join(lines) + "\n"


def cmd_export_dot(cfg: RunConfig) -> int:
    cover = serialize.cover_from_dict(serialize.load(cfg.input))
    if not isinstance(cover, WeightedRectCover):
        raise ValueError("export expects a rectangle cover artifact")
    m = cover.mod.m
    if m % 2 == 0:
        print(
            f"modulus {m} is even: the symmetrized edge counts double and "
            f"cannot be rescaled by an inverse of 2; export supports odd m only",
            file=sys.stderr,
        )
        return EXIT_UNSUPPORTED_MODULUS
    inv2 = mod_inverse(2, m)
    out_dir = Path(cfg.out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)

    edge_counts: dict[tuple[int, int], int] = {}
    graphs = 0
    for idx, (rect, w) in enumerate(cover.items):
        rep = (w * inv2) % m
        rows, cols = sorted(rect.rows), sorted(rect.cols)
        for copy in range(1, rep + 1):
            name = f"cover_{idx:04d}_{copy:02d}"
            if cfg.fmt == "dot":
                (out_dir / f"{name}.dot").write_text(_dot_graph(name, rows, cols))
            graphs += 1
        for i in rows:
            for j in cols:
                edge = (min(i, j), max(i, j))
                edge_counts[edge] = edge_counts.get(edge, 0) + rep

    if cfg.fmt == "csv":
        lines = ["graph_id,i,j"]
        gid = 0
        for idx, (rect, w) in enumerate(cover.items):
            rep = (w * inv2) % m
            for _ in range(rep):
                for i in sorted(rect.rows):
                    for j in sorted(rect.cols):
                        lines.append(f"{gid},{i},{j}")
                gid += 1
        (out_dir / "edges.csv").write_text("\n".join(lines) + "\n")

    manifest = {"n": cover.n, "m": m, "factors": [list(f) for f in cover.mod.factors],
                "graphs": graphs, "edges": []}
    for i in range(1, cover.n + 1):
        for j in range(i + 1, cover.n + 1):
            count = edge_counts.get((i, j), 0)
            unit = next(
                (fi for fi, q in enumerate(cover.mod.prime_powers) if count % q == 1),
                None,
            )
            manifest["edges"].append(
                {"edge": [i, j], "count": count, "factor_index": unit,
                 "prime_power": cover.mod.prime_powers[unit] if unit is not None else None}
            )
    serialize.dump(manifest, out_dir / "manifest.json")
    print(f"wrote {graphs} graphs and manifest to {out_dir}")
    return EXIT_OK


def main(argv: list[str] | None = None) -> int:
    try:
        cfg = _parse_args(sys.argv[1:] if argv is None else argv)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else EXIT_USAGE

    handlers = {
        "build": cmd_build,
        "verify": cmd_verify,
        "report": cmd_report,
        "export-dot": cmd_export_dot,
    }
    try:
        return handlers[cfg.command](cfg)
    except ConstructionError as exc:
        print(f"construction failed: {exc}", file=sys.stderr)
        return EXIT_CONSTRUCTION
    except (UnsupportedModulusError, ValueError, SchemaError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except OSError as exc:
        print(f"i/o error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
