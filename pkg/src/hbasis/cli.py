"""Command line front end: compute, reduce and bench subcommands.

System files declare variables on a ``vars:`` line and one polynomial
per following non-comment line.  Reports are emitted as JSON (floats
with 17 significant digits, stable field order) or as readable text.
"""

from __future__ import annotations

import argparse
import hashlib
import json
import sys
import time
from pathlib import Path

from .driver import (
    HBasisConfig,
    HBasisResult,
    NormalizeMode,
    Status,
    compute_hbasis,
    hilbert_function_numeric,
)
from .exact import exact_hilbert_function, exact_macaulay_rank
from .linalg import RankPolicy, RankStrategy, numerical_rank, svd
from .macaulay import build_macaulay
from .poly import Polynomial, PolynomialSyntaxError, PolynomialSystem, format_polynomial, parse_polynomial
from .reduction import Reducer, is_numerically_zero

EXIT_CODES = {
    Status.SUCCESS: 0,
    Status.CONSTANT_IDEAL: 2,
    Status.DEGREE_CAP_REACHED: 3,
    Status.NUMERICAL_BREAKDOWN: 4,
}


class SystemFileError(ValueError):
    pass


def parse_system_file(path: str | Path) -> tuple[PolynomialSystem, list[str]]:
    """Read a system file; returns the system and the variable names."""
    path = Path(path)
    lines = path.read_text().splitlines()
    variables: list[str] | None = None
    polys: list[Polynomial] = []
    for lineno, raw in enumerate(lines, start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if variables is None:
            if not line.startswith("vars:"):
                raise SystemFileError(f"{path}:{lineno}: expected a 'vars:' declaration first")
            variables = line[len("vars:") :].split()
            if not variables:
                raise SystemFileError(f"{path}:{lineno}: no variables declared")
            continue
        try:
            polys.append(parse_polynomial(line, variables))
        except PolynomialSyntaxError as exc:
            raise SystemFileError(f"{path}:{lineno}:{exc.position}: {exc}") from exc
    if variables is None:
        raise SystemFileError(f"{path}: missing 'vars:' line")
    if not polys:
        raise SystemFileError(f"{path}: no polynomials found")
    return PolynomialSystem(tuple(polys), len(variables)), variables


def render_json(obj) -> str:
    """Serialize with insertion-ordered keys and 17-significant-digit floats."""

    def emit(x) -> str:
        if isinstance(x, dict):
            return "{" + ", ".join(f"{json.dumps(str(k))}: {emit(v)}" for k, v in x.items()) + "}"
        if isinstance(x, (list, tuple)):
            return "[" + ", ".join(emit(v) for v in x) + "]"
        if isinstance(x, bool) or x is None:
            return json.dumps(x)
        if isinstance(x, float):
            return format(x, ".17g")
        if isinstance(x, int):
            return str(x)
        return json.dumps(x)

    return emit(obj)


def _generators_payload(result_system: PolynomialSystem) -> list:
    out = []
    for g in result_system.generators:
        terms = sorted(g.terms.items(), key=lambda t: (-sum(t[0]), tuple(-e for e in t[0])))
        out.append([[list(a), c] for a, c in terms])
    return out


def _config_payload(config: HBasisConfig) -> dict:
    return {
        "epsilon": config.epsilon,
        "tau": config.rank_policy.tau_override if config.rank_policy.tau_override is not None else "auto",
        "rank_strategy": config.rank_policy.strategy.value,
        "normalize": config.normalize.value,
        "max_degree_cap": config.max_degree_cap,
    }


def build_report(digest: str, variables: list[str], config: HBasisConfig, result: HBasisResult, include_degree_log: bool) -> dict:
    report = {
        "input_digest": digest,
        "config": _config_payload(config),
        "status": result.status.value,
        "num_vars": len(variables),
        "variables": list(variables),
        "generators": _generators_payload(result.generators),
        "generator_count": result.num_generators,
        "d_max": result.d_max,
        "bound": result.bound,
        "bound_history": [list(h) for h in result.bound_history],
        "remainder_norms": [
            [rec.k, list(rec.remainder_norms)] for rec in result.records if rec.remainder_norms
        ],
        "wall_clock_seconds": result.wall_time,
    }
    if include_degree_log:
        report["degree_log"] = [
            {
                "k": rec.k,
                "rows": rec.rows,
                "cols": rec.cols,
                "density": rec.density,
                "rank": rec.rank,
                "nullity": rec.nullity,
                "pure_count": rec.pure_count,
                "mode": rec.mode,
                "tau": rec.tau,
                "tau_prime": rec.tau_prime,
                "sigma_min_accepted": rec.sigma_min_accepted,
                "sigma_max_rejected": rec.sigma_max_rejected,
                "gap_ratio": rec.gap_ratio,
                "appended_degree": rec.appended_degree,
            }
            for rec in result.records
        ]
    return report


def render_text(report: dict, variables: list[str], result: HBasisResult) -> str:
    lines = [
        f"status      : {report['status']}",
        f"generators  : {report['generator_count']}",
        f"d_max       : {report['d_max']}",
        f"bound       : {report['bound']}",
        f"wall clock  : {report['wall_clock_seconds']:.3f} s",
        "basis:",
    ]
    for g in result.generators.generators:
        lines.append(f"  {format_polynomial(g, variables)}")
    if "degree_log" in report:
        lines.append("degree log (k, shape, rank, nullity, pure):")
        for rec in report["degree_log"]:
            lines.append(
                f"  k={rec['k']:3d}  {rec['rows']}x{rec['cols']}  rank={rec['rank']}"
                f"  nullity={rec['nullity']}  pure={rec['pure_count']}"
            )
    return "\n".join(lines)


def _policy_from_args(args) -> RankPolicy:
    tau = None if args.tau == "auto" else float(args.tau)
    strategy = RankStrategy.TOLERANCE if args.rank_strategy == "tolerance" else RankStrategy.GAP_MAX
    return RankPolicy(strategy=strategy, tau_override=tau)


def _config_from_args(args) -> HBasisConfig:
    return HBasisConfig(
        epsilon=args.epsilon,
        rank_policy=_policy_from_args(args),
        normalize=NormalizeMode(args.normalize),
        max_degree_cap=args.max_degree,
    )


def _add_common_flags(p: argparse.ArgumentParser) -> None:
    p.add_argument("--epsilon", type=float, default=1e-10, help="zero threshold for remainders")
    p.add_argument("--tau", default="auto", help="rank tolerance; 'auto' uses max(m,n)*sigma_max*eps")
    p.add_argument("--rank-strategy", choices=["tolerance", "gap"], default="tolerance")
    p.add_argument("--normalize", choices=["none", "l1", "l2", "linf"], default="none")
    p.add_argument("--max-degree", type=int, default=None, help="hard stop degree")
    p.add_argument("--output", choices=["json", "text"], default="json")
    p.add_argument("--diagnostics", action="store_true", help="include the per-degree log")
    p.add_argument("--oracle", action="store_true", help="cross-check ranks exactly (small systems only)")


def _oracle_payload(system: PolynomialSystem, result: HBasisResult, config: HBasisConfig) -> dict:
    ranks = []
    hilbert = []
    ok = True
    for k in range(result.bound + 1):
        c_matrix = build_macaulay(system, k)
        if c_matrix.layout.total_cols == 0:
            num = 0
        else:
            res = svd(c_matrix.matrix)
            num = numerical_rank(res.singular_values, config.rank_policy, *c_matrix.matrix.shape)
        exact = exact_macaulay_rank(system, k)
        ranks.append([k, num, exact])
        ok = ok and num == exact
        if result.status is Status.SUCCESS:
            hn = hilbert_function_numeric(result.generators, k, config.rank_policy)
            he = exact_hilbert_function(system, k)
            hilbert.append([k, hn, he])
            ok = ok and hn == he
    return {"input_ranks": ranks, "hilbert": hilbert, "match": ok}


def cmd_compute(args) -> int:
    try:
        system, variables = parse_system_file(args.system)
    except (SystemFileError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    config = _config_from_args(args)
    digest = hashlib.sha256(Path(args.system).read_bytes()).hexdigest()
    result = compute_hbasis(system, config)
    report = build_report(digest, variables, config, result, args.diagnostics)
    if args.oracle:
        report["oracle"] = _oracle_payload(system, result, config)
    if args.output == "json":
        print(render_json(report))
    else:
        print(render_text(report, variables, result))
    return EXIT_CODES[result.status]


def cmd_reduce(args) -> int:
    try:
        system, variables = parse_system_file(args.system)
        p = parse_polynomial(args.poly, variables)
    except (SystemFileError, PolynomialSyntaxError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    config = _config_from_args(args)
    reducer = Reducer(system, config.rank_policy)
    result = reducer.reduce(p)
    member = is_numerically_zero(result.remainder, config.epsilon)
    payload = {
        "polynomial": args.poly,
        "quotients": [format_polynomial(q, variables) for q in result.quotients],
        "remainder": format_polynomial(result.remainder, variables),
        "remainder_norm": result.remainder.norm2(),
        "reconstruction_residual": result.reconstruction_residual,
        "member": member,
    }
    if args.output == "json":
        print(render_json(payload))
    else:
        print(f"remainder : {payload['remainder']}")
        print(f"|r|_2     : {payload['remainder_norm']:.6e}")
        for name, q in zip(("q" + str(i + 1) for i in range(len(result.quotients))), payload["quotients"]):
            print(f"{name:<10}: {q}")
        print(f"member    : {member}")
    return 0


def cmd_bench(args) -> int:
    corpus = Path(args.corpus)
    manifest_path = corpus / "manifest.json"
    if not corpus.is_dir() or not manifest_path.exists():
        print(f"error: no manifest at {manifest_path}", file=sys.stderr)
        return 1
    manifest = json.loads(manifest_path.read_text())
    rows = []
    failed = False
    for entry in manifest["entries"]:
        name = entry["file"]
        path = corpus / name
        label = f"{name} (eps={entry['epsilon']:g})"
        if not path.exists():
            if entry.get("optional"):
                rows.append((label, "SKIP", "optional file not present", 0.0))
                continue
            rows.append((label, "FAIL", "file missing", 0.0))
            failed = True
            continue
        system, _ = parse_system_file(path)
        config = HBasisConfig(
            epsilon=entry["epsilon"],
            normalize=NormalizeMode(entry.get("normalize", "none")),
        )
        t0 = time.perf_counter()
        result = compute_hbasis(system, config)
        dt = time.perf_counter() - t0
        expect = entry["expect"]
        checks = [("status", result.status.value, expect.get("status"))]
        if result.status is Status.SUCCESS:
            checks += [
                ("generators", result.num_generators, expect.get("generators")),
                ("d_max", result.d_max, expect.get("d_max")),
                ("bound", result.bound, expect.get("bound")),
            ]
        bad = [f"{what}={got} (want {want})" for what, got, want in checks if want is not None and got != want]
        if bad:
            rows.append((label, "FAIL", "; ".join(bad), dt))
            failed = True
        else:
            verdict = "XFAIL" if entry.get("xfail") else "PASS"
            summary = f"status={result.status.value}"
            if result.status is Status.SUCCESS:
                summary = f"gens={result.num_generators} d_max={result.d_max} bound={result.bound}"
            rows.append((label, verdict, summary, dt))
    width = max(len(r[0]) for r in rows) if rows else 10
    for label, verdict, detail, dt in rows:
        print(f"{label:<{width}}  {verdict:<5}  {detail}  [{dt:.2f}s]")
    return 1 if failed else 0


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(prog="hbasis", description="Numerical H-basis engine")
    sub = parser.add_subparsers(dest="command", required=True)

    p_compute = sub.add_parser("compute", help="compute an H-basis for a system file")
    p_compute.add_argument("system")
    _add_common_flags(p_compute)
    p_compute.set_defaults(func=cmd_compute)

    p_reduce = sub.add_parser("reduce", help="reduce a polynomial against a system file")
    p_reduce.add_argument("system")
    p_reduce.add_argument("--poly", required=True, help="polynomial expression to reduce")
    _add_common_flags(p_reduce)
    p_reduce.set_defaults(func=cmd_reduce)

    p_bench = sub.add_parser("bench", help="run a corpus against its expected-results manifest")
    p_bench.add_argument("corpus")
    p_bench.set_defaults(func=cmd_bench)

    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 1 if exc.code not in (0, None) else 0
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())
