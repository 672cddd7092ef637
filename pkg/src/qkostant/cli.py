"""Command-line front end.

Every command prints an aligned text summary and, with ``--report PATH``,
writes a JSON report (schema in ``report_schema.json``).  A failed check exits
with status 1 and a usage error with status 2.  Reports are a function of
the command line alone; wall-clock time is recorded only under ``--timing``.
"""

from __future__ import annotations

import argparse
import json
import os
import random
import sys
import time
from dataclasses import dataclass, field
from pathlib import Path

from . import kostant
from .filtration import (
    compatibility_check,
    symbol,
    tower_check,
    trace_weighting,
    weighting_wt,
)
from .freealg import NCPolynomial, ParseError, format_expr, parse_expr
from .hopf import antipode_axiom_residuals, is_invariant
from .mutation import (
    STRATEGIES,
    MutationSystem,
    build_system,
    corrupted_system,
    multiply,
    normalize,
    pbw_confluence_check,
)
from .qminors import delta_d, delta_d_prime, delta_d_t, qdet

SCHEMA_PATH = Path(__file__).with_name("report_schema.json")


class UsageError(Exception):
    def __init__(self, flag: str, msg: str):
        super().__init__(f"{flag}: {msg}")
        self.flag = flag


@dataclass
class RunConfig:
    command: str
    n: int = 2
    stage: int = 1
    max_degree: int | None = None
    d: int | None = None
    mode: str | None = None
    samples: int = 3
    right: bool = False
    primed: bool = False
    expr: str | None = None
    strategy: str = "leftmost"
    trials: int = 200
    seed: int = 0
    threads: int = 1
    timing: bool = False
    corrupt: bool = False
    report: str | None = None
    extra: dict = field(default_factory=dict)

    def validate(self):
        if self.n < 1:
            raise UsageError("--n", "must be at least 1")
        if not 1 <= self.stage <= self.n:
            raise UsageError("--stage", f"must lie in 1..{self.n}")
        if self.max_degree is not None and self.max_degree < 0:
            raise UsageError("--max-degree", "must be non-negative")
        if self.command == "kostant-certify" and self.max_degree is not None and self.max_degree < 1:
            raise UsageError("--max-degree", "must be at least 1")
        if self.d is not None and not 1 <= self.d <= self.n:
            raise UsageError("--d", f"must lie in 1..{self.n}")
        if self.samples < 1:
            raise UsageError("--samples", "must be at least 1")
        if self.trials < 0:
            raise UsageError("--trials", "must be non-negative")
        if self.threads < 1:
            raise UsageError("--threads", "must be at least 1")
        if self.strategy not in STRATEGIES:
            raise UsageError("--strategy", f"must be one of {', '.join(STRATEGIES)}")


# ---------------------------------------------------------------------------
# text helpers


def table(header: list[str], rows: list[list]) -> str:
    cells = [header] + [[str(c) for c in r] for r in rows]
    widths = [max(len(r[i]) for r in cells) for i in range(len(header))]
    lines = ["  ".join(c.rjust(w) for c, w in zip(r, widths)) for r in cells]
    lines.insert(1, "  ".join("-" * w for w in widths))
    return "\n".join(lines)


def verdict(ok: bool) -> str:
    return "pass" if ok else "fail"


# ---------------------------------------------------------------------------
# randomized property suite


def _rand_word(rng: random.Random, n: int, length: int) -> tuple[int, ...]:
    return tuple(rng.randrange(n * n) for _ in range(length))


def seeded_random_suite(n: int = 2, trials: int = 200, seed: int = 0,
                        system: MutationSystem | None = None) -> dict:
    """Associativity, strategy independence, symbol multiplicativity and q = 1
    commutativity on random inputs.  ``system`` replaces S_1 (negative controls).
    """
    rng = random.Random(seed)
    S = system if system is not None else build_system(n, 1)
    props = {k: [] for k in ("associativity", "strategy_independence",
                             "symbol_multiplicativity", "q1_commutativity")}
    for _ in range(trials):
        a, b, c = (kostant.random_polynomial(n, rng, 2) for _ in range(3))
        if multiply(multiply(a, b, S), c, S) != multiply(a, multiply(b, c, S), S):
            props["associativity"].append(
                f"a = {format_expr(a)}; b = {format_expr(b)}; c = {format_expr(c)}")

        w = NCPolynomial.from_word(_rand_word(rng, n, rng.randint(2, 4)), n)
        sub = rng.randrange(2**32)
        forms = {s: normalize(w, S, s, rng=random.Random(sub)) for s in STRATEGIES}
        if len(set(forms.values())) > 1:
            props["strategy_independence"].append(f"p = {format_expr(w)}; rng = {sub}")

        if n > 1:
            t = rng.randint(1, n - 1)
            St = S if t == 1 else build_system(n, t)
            wt, nxt = weighting_wt(n, t), build_system(n, t + 1)
            ab = multiply(a, b, St)
            if ab and symbol(ab, wt, St) != multiply(symbol(a, wt, St), symbol(b, wt, St), nxt):
                props["symbol_multiplicativity"].append(
                    f"t = {t}; a = {format_expr(a)}; b = {format_expr(b)}")

        if kostant.at_q1(multiply(a, b, S)) != kostant.at_q1(multiply(b, a, S)):
            props["q1_commutativity"].append(f"a = {format_expr(a)}; b = {format_expr(b)}")

    return {
        "command": "suite",
        "n": n,
        "seed": seed,
        "trials": trials,
        "system": S.label,
        "properties": [
            {"name": k, "trials": trials, "failures": [{"reproducer": r} for r in v]}
            for k, v in props.items()
        ],
        "verdict": verdict(not any(props.values())),
    }


# ---------------------------------------------------------------------------
# commands; each returns (text, report)


def cmd_normalize(cfg: RunConfig):
    if cfg.expr is None:
        raise UsageError("--expr", "required")
    try:
        p = parse_expr(cfg.expr, cfg.n)
    except ParseError as e:
        raise UsageError("--expr", str(e)) from e
    S = build_system(cfg.n, cfg.stage)
    out = format_expr(normalize(p, S, cfg.strategy, rng=random.Random(cfg.seed)))
    rep = {"command": "normalize", "n": cfg.n, "stage": cfg.stage, "strategy": cfg.strategy,
           "input": cfg.expr, "output": out, "verdict": "pass"}
    return out, rep


def cmd_relations(cfg: RunConfig):
    S = corrupted_system(cfg.n, cfg.stage) if cfg.corrupt else build_system(cfg.n, cfg.stage)
    lines = S.table_lines()
    rep = {"command": "relations", "n": cfg.n, "stage": cfg.stage, "relations": lines,
           "verdict": "pass"}
    return "\n".join(lines), rep


def cmd_qdet(cfg: RunConfig):
    n = cfg.n
    S = build_system(n, 1)
    D = qdet(n)
    central = all(
        multiply(D, x, S) == multiply(x, D, S)
        for x in (NCPolynomial.x(i, j, n) for i in range(1, n + 1) for j in range(1, n + 1))
    )
    text = f"det_q = {format_expr(D)}\ncentral: {verdict(central)}"
    rep = {"command": "qdet", "n": n, "expr": format_expr(D), "central": central,
           "verdict": verdict(central)}
    return text, rep


def cmd_delta(cfg: RunConfig):
    n = cfg.n
    ds = [cfg.d] if cfg.d is not None else list(range(1, n + 1))
    out = []
    for d in ds:
        if cfg.primed:
            p, name = delta_d_prime(n, d), f"Delta'_{d}"
        elif cfg.stage > 1:
            p, name = delta_d_t(n, d, cfg.stage), f"Delta_{d}^({cfg.stage})"
        else:
            p, name = delta_d(n, d), f"Delta_{d}"
        out.append({"name": name, "d": d, "expr": format_expr(p)})
    text = "\n".join(f"{e['name']} = {e['expr']}" for e in out)
    rep = {"command": "delta", "n": n, "stage": cfg.stage, "primed": cfg.primed,
           "elements": out, "verdict": "pass"}
    return text, rep


def cmd_invariants(cfg: RunConfig):
    n = cfg.n
    rows, inv = [], []
    for d in range(1, n + 1):
        a = is_invariant(delta_d(n, d), "alpha")
        b = is_invariant(delta_d_prime(n, d), "beta")
        rows.append([d, verdict(a), verdict(b)])
        inv.append({"d": d, "delta_alpha": a, "delta_prime_beta": b})
    residuals = antipode_axiom_residuals(n)
    max_degree = cfg.max_degree if cfg.max_degree is not None else 4
    ring = kostant.invariant_ring_check(n, max_degree, check_invariance=False)
    ok = all(r["delta_alpha"] and r["delta_prime_beta"] for r in inv) and not residuals and ring.ok
    text = "\n".join([
        table(["d", "Delta_d alpha", "Delta'_d beta"], rows),
        f"antipode axioms: {verdict(not residuals)}",
        f"Delta_d commute: {verdict(ring.commute)}",
        table(["degree", "monomials", "rank"], [list(t) for t in ring.independence]),
        f"verdict: {verdict(ok)}",
    ])
    rep = {
        "command": "invariants", "n": n, "max_degree": max_degree,
        "invariance": inv,
        "antipode_residuals": [f"{i},{j} {side}: {format_expr(p)}" for i, j, side, p in residuals],
        "ring": ring.to_json(),
        "verdict": verdict(ok),
    }
    return text, rep


def cmd_pbw_check(cfg: RunConfig):
    n = cfg.n
    stages = [cfg.stage] if cfg.extra.get("stage_given") else list(range(1, n + 1))
    deg = cfg.max_degree if cfg.max_degree is not None else 3
    if deg < 3:
        raise UsageError("--max-degree", "must be at least 3 for overlap checks")
    rows, results = [], []
    for t in stages:
        S = corrupted_system(n, t) if cfg.corrupt else build_system(n, t)
        r = pbw_confluence_check(S, deg)
        rows.append([t, r.checked, len(r.failures), verdict(r.ok)])
        results.append({"stage": t, "label": S.label, "checked": r.checked,
                        "failures": [f.describe(n) for f in r.failures], "pass": r.ok})
    ok = all(r["pass"] for r in results)
    text = table(["t", "overlaps", "failures", "result"], rows)
    for r in results:
        for f in r["failures"][:5]:
            text += f"\n  t={r['stage']}: {f}"
    rep = {"command": "pbw-check", "n": n, "max_degree": deg, "stages": results,
           "verdict": verdict(ok)}
    return text, rep


def cmd_tower_check(cfg: RunConfig):
    n = cfg.n
    deg = cfg.max_degree if cfg.max_degree is not None else 3
    rows = tower_check(n, deg)
    trace = compatibility_check(build_system(n, 1), trace_weighting(n))
    body = [[r.t, r.compatible, r.symbol_matches_next, r.graded_dims_match, r.next_pbw,
             verdict(r.ok)] for r in rows]
    ok = all(r.ok for r in rows)
    text = table(["t", "compatible", "symbol=S_t+1", "graded dims", "next PBW", "result"], body)
    text += f"\ntrace weighting compatible: {bool(trace)}"
    for line in trace.describe(n)[:3]:
        text += f"\n  {line}"
    rep = {
        "command": "tower-check", "n": n, "max_degree": deg,
        "rows": [{"t": r.t, "compatible": r.compatible,
                  "symbol_matches_next": r.symbol_matches_next,
                  "graded_dims_match": r.graded_dims_match,
                  "next_pbw": r.next_pbw, "pass": r.ok} for r in rows],
        "trace_weighting": {"compatible": bool(trace), "witnesses": trace.describe(n)},
        "verdict": verdict(ok),
    }
    return text, rep


def cmd_hilbert(cfg: RunConfig):
    D = cfg.max_degree if cfg.max_degree is not None else 6
    prof = kostant.hilbert_dims(cfg.n, D)
    ok = prof.convolution_holds()
    text = table(["d", "dim A", "dim I", "dim H"],
                 [[d, prof.dims_A[d], prof.dims_I[d], prof.dims_H[d]] for d in range(D + 1)])
    text += f"\nconvolution dims_A = dims_H * dims_I: {verdict(ok)}"
    rep = {"command": "hilbert", "n": cfg.n, "max_degree": D, "dims_A": prof.dims_A,
           "dims_I": prof.dims_I, "dims_H": prof.dims_H, "verdict": verdict(ok)}
    return text, rep


def cmd_kostant_certify(cfg: RunConfig):
    D = cfg.max_degree if cfg.max_degree is not None else 4
    mode = cfg.mode or ("exact" if cfg.n <= 2 else "sampled")
    cert = kostant.certify_freeness(
        cfg.n, D, mode, samples=cfg.samples, seed=cfg.seed,
        side="right" if cfg.right else "left", timing=cfg.timing, workers=cfg.threads,
    )
    counting = kostant.counting_identity(cfg.n, D)
    rows = [[r.d, r.dim_A, r.candidate_count, r.rank, verdict(r.passed)] for r in cert.degrees]
    text = table(["d", "dim A", "candidates", "rank", "result"], rows)
    if mode == "sampled":
        text += "\nsample points: " + ", ".join(str(p) for p in cert.sampled_points)
    text += f"\ncounting identity: {verdict(all(counting))}"
    text += f"\nverdict: {verdict(cert.verdict and all(counting))}"
    rep = {"command": "kostant-certify", **cert.to_json(), "counting_identity": all(counting)}
    rep["verdict"] = verdict(cert.verdict and all(counting))
    return text, rep


def cmd_suite(cfg: RunConfig):
    system = corrupted_system(cfg.n, 1) if cfg.corrupt else None
    rep = seeded_random_suite(cfg.n, cfg.trials, cfg.seed, system)
    rows = [[p["name"], p["trials"], len(p["failures"])] for p in rep["properties"]]
    text = table(["property", "trials", "failures"], rows)
    for p in rep["properties"]:
        for f in p["failures"][:3]:
            text += f"\n  {p['name']}: {f['reproducer']}"
    text += f"\nverdict: {rep['verdict']}"
    return text, rep


COMMANDS = {
    "normalize": cmd_normalize,
    "relations": cmd_relations,
    "qdet": cmd_qdet,
    "delta": cmd_delta,
    "invariants": cmd_invariants,
    "pbw-check": cmd_pbw_check,
    "tower-check": cmd_tower_check,
    "hilbert": cmd_hilbert,
    "kostant-certify": cmd_kostant_certify,
    "suite": cmd_suite,
}


def dispatch(cfg: RunConfig) -> tuple[int, str, dict]:
    cfg.validate()
    t0 = time.perf_counter()
    text, rep = COMMANDS[cfg.command](cfg)
    if cfg.timing and "elapsed_ms" not in rep:
        rep["elapsed_ms"] = int((time.perf_counter() - t0) * 1000)
    rep.setdefault("elapsed_ms", None)
    return (0 if rep["verdict"] == "pass" else 1), text, rep


# ---------------------------------------------------------------------------
# argument parsing


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--n", type=int, default=2)
    common.add_argument("--report", metavar="PATH")
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--threads", type=int, default=None,
                        help="worker cap (default: $QKOSTANT_THREADS or 1)")
    common.add_argument("--timing", action="store_true", help="record elapsed_ms in reports")
    common.add_argument("--corrupt", action="store_true", help=argparse.SUPPRESS)

    parser = argparse.ArgumentParser(prog="qkostant", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("normalize", parents=[common])
    p.add_argument("--stage", type=int, default=1)
    p.add_argument("--expr", required=True)
    p.add_argument("--strategy", default="leftmost")

    p = sub.add_parser("relations", parents=[common])
    p.add_argument("--stage", type=int, default=1)

    sub.add_parser("qdet", parents=[common])

    p = sub.add_parser("delta", parents=[common])
    p.add_argument("--d", type=int)
    p.add_argument("--stage", type=int, default=1)
    p.add_argument("--primed", action="store_true")

    p = sub.add_parser("invariants", parents=[common])
    p.add_argument("--max-degree", type=int)

    p = sub.add_parser("pbw-check", parents=[common])
    p.add_argument("--stage", type=int)
    p.add_argument("--max-degree", type=int)

    p = sub.add_parser("tower-check", parents=[common])
    p.add_argument("--max-degree", type=int)

    p = sub.add_parser("hilbert", parents=[common])
    p.add_argument("--max-degree", type=int)

    p = sub.add_parser("kostant-certify", parents=[common])
    p.add_argument("--max-degree", type=int)
    p.add_argument("--mode", choices=["exact", "sampled"])
    p.add_argument("--samples", type=int, default=3)
    p.add_argument("--right", action="store_true")

    p = sub.add_parser("suite", parents=[common])
    p.add_argument("--trials", type=int, default=200)
    return parser


def config_from_args(ns: argparse.Namespace) -> RunConfig:
    threads = ns.threads
    if threads is None:
        env = os.environ.get("QKOSTANT_THREADS")
        try:
            threads = int(env) if env else 1
        except ValueError:
            raise UsageError("QKOSTANT_THREADS", f"not an integer: {env!r}") from None
    stage = getattr(ns, "stage", None)
    return RunConfig(
        command=ns.command,
        n=ns.n,
        stage=stage if stage is not None else 1,
        max_degree=getattr(ns, "max_degree", None),
        d=getattr(ns, "d", None),
        mode=getattr(ns, "mode", None),
        samples=getattr(ns, "samples", 3),
        right=getattr(ns, "right", False),
        primed=getattr(ns, "primed", False),
        expr=getattr(ns, "expr", None),
        strategy=getattr(ns, "strategy", "leftmost"),
        trials=getattr(ns, "trials", 200),
        seed=ns.seed,
        threads=threads,
        timing=ns.timing,
        corrupt=ns.corrupt,
        report=ns.report,
        extra={"stage_given": stage is not None},
    )


def write_report(rep: dict, path: str):
    Path(path).write_text(json.dumps(rep, indent=2, sort_keys=True) + "\n")


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    ns = parser.parse_args(argv)  # exits 2 on malformed flags
    try:
        cfg = config_from_args(ns)
        code, text, rep = dispatch(cfg)
    except UsageError as e:
        print(f"qkostant {ns.command}: error: {e}", file=sys.stderr)
        return 2
    print(text)
    if cfg.report:
        write_report(rep, cfg.report)
    return code


if __name__ == "__main__":
    sys.exit(main())
