"""Command-line interface: ``tspectral <command> [args] [--flags]``.

Commands operate on tensor files in the JSON schema of
:mod:`tspectral.core`.  Exit codes are a stable contract for scripting:
0 success, 1 property/verification failure, 2 usage or parse errors.
"""

from __future__ import annotations

import argparse
import json
import os
import statistics
import sys
import time
from dataclasses import dataclass, field

import numpy as np

from . import __version__
from .core import (
    Tensor3,
    conj_transpose,
    frobenius_norm,
    read_tensor,
    trace,
    write_tensor,
)
from .errors import (
    DomainError,
    NumericError,
    ParseError,
    PreconditionError,
    ShapeError,
    SingularityError,
    TSpectralError,
)
from .bounds import (
    extremal_ratio_bounds,
    hermitian_trace_bounds,
    ky_fan_sum,
    sandwich_bounds,
    symmetric_relax_bounds,
    symmetrized_bounds,
    vn_trace_bounds,
)
from .geometry import (
    dist_bures_wasserstein,
    dist_frobenius,
    dist_log_euclidean,
    geodesic,
    geodesic_trace_profile,
)
from .spectral import (
    is_hermitian,
    is_psd,
    pd_tolerance,
    random_psd,
    t_eigenvalues,
    t_function,
)
from .transform import SpectralSlices, from_fourier, tprod, tprod_fft

SEED_ENV_VAR = "TSPECTRAL_SEED"

_USAGE_ERRORS = (
    ParseError,
    ShapeError,
    DomainError,
    PreconditionError,
    SingularityError,
    ValueError,
)


@dataclass
class RunReport:
    """Deterministic record of one CLI invocation (timing aside)."""

    command: str
    inputs: dict = field(default_factory=dict)
    outputs: dict = field(default_factory=dict)
    bound_reports: list = field(default_factory=list)
    timing: dict = field(default_factory=dict)

    def to_json(self) -> str:
        doc = {
            "command": self.command,
            "inputs": self.inputs,
            "outputs": self.outputs,
            "bound_reports": self.bound_reports,
            "timing": self.timing,
        }
        return json.dumps(doc, sort_keys=True)


def _fmt(x: float) -> str:
    return f"{x:.17g}"


def _report_dict(rep) -> dict:
    return {
        "context": rep.context,
        "lower": rep.lower,
        "value": rep.value,
        "upper": rep.upper,
        "slack_lower": rep.slack_lower,
        "slack_upper": rep.slack_upper,
        "satisfied": rep.satisfied,
    }


def _print_report(rep) -> None:
    status = "ok" if rep.satisfied else "VIOLATED"
    print(
        f"{rep.context}: {rep.lower:.4f} <= {rep.value:.4f} <= {rep.upper:.4f} "
        f"[slack {rep.slack_lower:.4f}/{rep.slack_upper:.4f}] {status}"
    )


def _default_seed() -> int:
    return int(os.environ.get(SEED_ENV_VAR, "0"))


def _random_hermitian(n: int, p: int, rng: np.random.Generator) -> Tensor3:
    m = Tensor3(rng.standard_normal((n, n, p)))
    return (m + conj_transpose(m)) * 0.5


def _random_psd_from(rng: np.random.Generator, n: int, p: int) -> Tensor3:
    m = Tensor3(rng.standard_normal((n, n, p)))
    return tprod_fft(m, conj_transpose(m))


# ---------------------------------------------------------------------------
# Commands
# ---------------------------------------------------------------------------


def cmd_tprod(args) -> int:
    a = read_tensor(args.a)
    b = read_tensor(args.b)
    t0 = time.perf_counter()
    c = tprod(a, b, path=args.path)
    elapsed = time.perf_counter() - t0
    write_tensor(c, args.out)
    scale = 1.0 / c.p if args.convention == "slice1" else 1.0
    tr = trace(c) * scale if c.m == c.n else None
    if tr is not None:
        print(f"trace = {_fmt(float(np.real(tr)))}")
    print(f"frobenius_norm = {_fmt(frobenius_norm(c))}")
    if args.json:
        rep = RunReport(
            command="tprod",
            inputs={"a": args.a, "b": args.b, "path": args.path},
            outputs={
                "out": args.out,
                "trace": None if tr is None else float(np.real(tr)),
                "frobenius_norm": frobenius_norm(c),
            },
            timing={"tprod_seconds": elapsed},
        )
        print(rep.to_json())
    return 0


def cmd_eig(args) -> int:
    a = read_tensor(args.a)
    spec = t_eigenvalues(a, method=args.method)
    vals = spec.values

    def fmt4(x: float) -> str:
        return f"{round(float(x), 4) + 0.0:.4f}"  # avoid "-0.0000"

    if spec.is_real:
        print(" ".join(fmt4(v) for v in vals))
    else:
        print(" ".join(f"{fmt4(v.real)}{round(v.imag, 4) + 0.0:+.4f}j" for v in vals))
    if args.json:
        out = [[float(np.real(v)), float(np.imag(v))] for v in vals]
        rep = RunReport(
            command="eig",
            inputs={"a": args.a, "method": args.method},
            outputs={"eigenvalues": out},
        )
        print(rep.to_json())
    return 0


def cmd_bounds(args) -> int:
    a = read_tensor(args.a)
    reports = []
    hard = True
    if args.kind == "symmetrized":
        result = symmetrized_bounds(a)
        print(f"mu_min = {result.mu_min:.4f}  mu_max = {result.mu_max:.4f}")
        print(
            f"rho_tensor = {result.rho_tensor:.4f}  "
            f"rho_symmetrized = {result.rho_symmetrized:.4f}"
        )
        reports = list(result.eigen_reports) + [result.radius_report]
    elif args.kind == "kyfan":
        res = ky_fan_sum(a, args.k, which=args.which)
        print(f"kyfan_{args.which}(k={args.k}) = {_fmt(res.value)}")
        if args.json:
            rep = RunReport(
                command="bounds",
                inputs={"kind": "kyfan", "a": args.a, "k": args.k, "which": args.which},
                outputs={"value": res.value},
            )
            print(rep.to_json())
        return 0
    else:
        if args.b is None:
            raise ValueError(f"bounds {args.kind} requires two tensor files")
        b = read_tensor(args.b)
        fn = {
            "vn": vn_trace_bounds,
            "hermitian": hermitian_trace_bounds,
            "sandwich": sandwich_bounds,
            "ratio": extremal_ratio_bounds,
            "relax": symmetric_relax_bounds,
        }[args.kind]
        reports = [fn(a, b)]
        hard = args.kind != "relax"

    for rep in reports:
        _print_report(rep)
    if args.json:
        run = RunReport(
            command="bounds",
            inputs={"kind": args.kind, "a": args.a, "b": getattr(args, "b", None)},
            bound_reports=[_report_dict(r) for r in reports],
        )
        print(run.to_json())
    if hard and not all(r.satisfied for r in reports):
        return 1
    return 0


def cmd_dist(args) -> int:
    a = read_tensor(args.a)
    b = read_tensor(args.b)
    if args.metric == "fro":
        d = dist_frobenius(a, b, convention=args.convention)
    elif args.metric == "bw":
        d = dist_bures_wasserstein(a, b, convention=args.convention)
    else:
        d = dist_log_euclidean(a, b, convention=args.convention)
    print(_fmt(d))
    if args.json:
        rep = RunReport(
            command="dist",
            inputs={"metric": args.metric, "a": args.a, "b": args.b,
                    "convention": args.convention},
            outputs={"distance": d},
        )
        print(rep.to_json())
    return 0


def cmd_geodesic(args) -> int:
    a = read_tensor(args.a)
    b = read_tensor(args.b)
    if args.t is not None:
        g = geodesic(a, b, args.t, regularize=args.regularize)
        write_tensor(g, args.out)
        print(f"trace = {_fmt(float(np.real(trace(g))))}")
    else:
        profile = geodesic_trace_profile(a, b, args.samples, regularize=args.regularize)
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write("t,trace\n")
            for t, tr in zip(profile.ts, profile.traces):
                fh.write(f"{t:.17g},{tr:.17g}\n")
        print(f"wrote {args.samples} samples to {args.out}")
    return 0


def cmd_gen(args) -> int:
    seed = args.seed if args.seed is not None else _default_seed()
    if args.kind == "psd":
        t = random_psd(args.n, args.p, seed)
    elif args.kind == "hermitian":
        t = _random_hermitian(args.n, args.p, np.random.default_rng(seed))
    else:
        t = Tensor3(np.random.default_rng(seed).standard_normal((args.n, args.n, args.p)))
    write_tensor(t, args.out)
    print(f"wrote {args.kind} tensor {t.m}x{t.n}x{t.p} (seed {seed}) to {args.out}")
    return 0


def cmd_verify(args) -> int:
    a = read_tensor(args.a)
    checks = args.checks.split(",")
    ok = True
    for check in checks:
        if check == "hermitian":
            res = is_hermitian(a)
            print(f"hermitian: residual = {_fmt(res.residual)} -> {'ok' if res.ok else 'FAIL'}")
            ok &= res.ok
        elif check == "psd":
            res = is_psd(a)
            print(
                f"psd: min_eigenvalue = {_fmt(res.min_eigenvalue)} -> "
                f"{'ok' if res.ok else 'FAIL'}"
            )
            ok &= res.ok
        elif check == "pd":
            spec = t_eigenvalues(a)
            lam = np.real(np.asarray(spec.values))
            lam_min, lam_max = float(lam.min()), float(lam.max())
            good = is_hermitian(a).ok and lam_min > pd_tolerance(lam_max)
            print(f"pd: min_eigenvalue = {_fmt(lam_min)} -> {'ok' if good else 'FAIL'}")
            ok &= good
        else:
            raise ValueError(f"unknown check {check!r}; use hermitian, psd, pd")
    return 0 if ok else 1


# ---------------------------------------------------------------------------
# Property sweeps
# ---------------------------------------------------------------------------


def _sweep_vn(rng: np.random.Generator) -> bool:
    n = int(rng.integers(1, 5))
    p = int(rng.integers(1, 5))
    a = _random_psd_from(rng, n, p)
    b = _random_psd_from(rng, n, p)
    return vn_trace_bounds(a, b).satisfied


def _sweep_sandwich(rng: np.random.Generator) -> bool:
    n = int(rng.integers(1, 5))
    p = int(rng.integers(1, 4))
    a = _random_psd_from(rng, n, p)
    b = _random_psd_from(rng, n, p)
    return sandwich_bounds(a, b).satisfied


def _sweep_ratio(rng: np.random.Generator) -> bool:
    n = int(rng.integers(1, 5))
    p = int(rng.integers(1, 4))
    a = _random_hermitian(n, p, rng)
    b = _random_psd_from(rng, n, p)
    return extremal_ratio_bounds(a, b).satisfied


def _sweep_kyfan(rng: np.random.Generator) -> bool:
    n = int(rng.integers(2, 5))
    p = int(rng.integers(1, 4))
    h = _random_hermitian(n, p, rng)
    k = int(rng.integers(1, n + 1))
    hi = ky_fan_sum(h, k, which="max").value
    lo = ky_fan_sum(h, k, which="min").value
    for _ in range(5):
        u = _random_partial_isometry(rng, k, n, p)
        val = float(np.real(trace(tprod_fft(tprod_fft(u, h), conj_transpose(u)))))
        if val > hi + 1e-8 * max(1.0, abs(hi)) or val < lo - 1e-8 * max(1.0, abs(lo)):
            return False
    return True


def _random_partial_isometry(rng: np.random.Generator, k: int, n: int, p: int) -> Tensor3:
    """Slice-wise orthonormalized Gaussian rows in the Fourier domain."""
    uhat = np.empty((k, n, p), dtype=np.complex128)
    for s in range(p):
        g = rng.standard_normal((n, k)) + 1j * rng.standard_normal((n, k))
        q, _ = np.linalg.qr(g)
        uhat[:, :, s] = q.conj().T
    return from_fourier(SpectralSlices(uhat), kind="complex")


def _sweep_concavity(rng: np.random.Generator) -> bool:
    n = int(rng.integers(1, 4))
    p = int(rng.integers(1, 4))
    x = _random_psd_from(rng, n, p)
    y = _random_psd_from(rng, n, p)
    a = float(rng.uniform(0.1, 0.9))
    mixed = float(np.real(trace(t_function(a * x + (1.0 - a) * y, "sqrt"))))
    split = a * float(np.real(trace(t_function(x, "sqrt")))) + (1.0 - a) * float(
        np.real(trace(t_function(y, "sqrt")))
    )
    return mixed - split > 1e-12


def _sweep_bw_axioms(rng: np.random.Generator) -> bool:
    n = int(rng.integers(1, 4))
    p = int(rng.integers(1, 4))
    a = _random_psd_from(rng, n, p)
    b = _random_psd_from(rng, n, p)
    c = _random_psd_from(rng, n, p)
    dab = dist_bures_wasserstein(a, b)
    if dab < 0 or abs(dab - dist_bures_wasserstein(b, a)) > 1e-8:
        return False
    if dist_bures_wasserstein(a, a) > 1e-6:
        return False
    dac = dist_bures_wasserstein(a, c)
    dbc = dist_bures_wasserstein(b, c)
    return dac <= dab + dbc + 1e-8


def _sweep_relax(rng: np.random.Generator) -> bool:
    n = int(rng.integers(1, 4))
    p = int(rng.integers(1, 4))
    a = Tensor3(rng.standard_normal((n, n, p)))
    b = _random_hermitian(n, p, rng)
    return symmetric_relax_bounds(a, b).satisfied


_SWEEPS = {
    "vn-bounds": (_sweep_vn, True),
    "sandwich": (_sweep_sandwich, True),
    "ratio": (_sweep_ratio, True),
    "kyfan": (_sweep_kyfan, True),
    "concavity": (_sweep_concavity, True),
    "bw-metric-axioms": (_sweep_bw_axioms, True),
    "relax-bounds": (_sweep_relax, False),
}


def cmd_sweep(args) -> int:
    if args.property not in _SWEEPS:
        raise ValueError(
            f"unknown property {args.property!r}; choose from {sorted(_SWEEPS)}"
        )
    fn, hard = _SWEEPS[args.property]
    seed = args.seed if args.seed is not None else _default_seed()
    passed = 0
    for trial in range(args.trials):
        rng = np.random.default_rng((seed, trial))
        if fn(rng):
            passed += 1
    print(f"{args.property}: {passed}/{args.trials} pass")
    if hard and passed != args.trials:
        return 1
    return 0


# ---------------------------------------------------------------------------
# Benchmark harness
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class BenchRow:
    op: str
    n: int
    p: int
    median_seconds: float


def _bench_callable(op: str, n: int, p: int, seed: int):
    rng = np.random.default_rng((seed, n, p))
    if op in ("tprod-dense", "tprod-fft"):
        a = Tensor3(rng.standard_normal((n, n, p)))
        b = Tensor3(rng.standard_normal((n, n, p)))
        path = "dense" if op == "tprod-dense" else "fft"
        return lambda: tprod(a, b, path=path)
    if op == "eig":
        a = Tensor3(rng.standard_normal((n, n, p)))
        return lambda: t_eigenvalues(a, method="bcirc")
    if op == "bw-dist":
        a = _random_psd_from(rng, n, p)
        b = _random_psd_from(rng, n, p)
        return lambda: dist_bures_wasserstein(a, b)
    if op == "kyfan":
        h = _random_hermitian(n, p, rng)
        return lambda: ky_fan_sum(h, max(1, n // 2))
    raise ValueError(f"unknown benchmark op {op!r}")


def run_benchmark(op: str, n_grid, p_grid, reps: int, seed: int = 0) -> list[BenchRow]:
    """Median wall-clock seconds per call of ``op`` over a size grid.

    Sub-millisecond operations are batched inside each timed sample so the
    measurement is not dominated by timer and scheduler noise.
    """
    rows = []
    for n in n_grid:
        for p in p_grid:
            fn = _bench_callable(op, n, p, seed)
            fn()  # warm-up, excluded from timing
            t0 = time.perf_counter()
            fn()
            single = time.perf_counter() - t0
            batch = max(1, int(np.ceil(1e-3 / max(single, 1e-9))))
            times = []
            for _ in range(reps):
                t0 = time.perf_counter()
                for _ in range(batch):
                    fn()
                times.append((time.perf_counter() - t0) / batch)
            rows.append(BenchRow(op, n, p, statistics.median(times)))
    return rows


def fit_exponents(rows) -> tuple[float | None, float | None]:
    """Least-squares exponents of runtime vs n and vs p on log-log axes.

    Fits log t = c + alpha log n + beta log p; an exponent is None when the
    corresponding dimension does not vary in the grid.
    """
    ns = np.array([r.n for r in rows], dtype=float)
    ps = np.array([r.p for r in rows], dtype=float)
    ts = np.array([max(r.median_seconds, 1e-9) for r in rows])
    cols = [np.ones_like(ns)]
    fit_n = len(set(ns)) > 1
    fit_p = len(set(ps)) > 1
    if fit_n:
        cols.append(np.log(ns))
    if fit_p:
        cols.append(np.log(ps))
    if len(cols) == 1:
        return None, None
    design = np.column_stack(cols)
    coef, *_ = np.linalg.lstsq(design, np.log(ts), rcond=None)
    idx = 1
    alpha = beta = None
    if fit_n:
        alpha = float(coef[idx])
        idx += 1
    if fit_p:
        beta = float(coef[idx])
    return alpha, beta


def cmd_bench(args) -> int:
    n_grid = [int(x) for x in args.n_grid.split(",")]
    p_grid = [int(x) for x in args.p_grid.split(",")]
    seed = args.seed if args.seed is not None else _default_seed()
    rows = run_benchmark(args.op, n_grid, p_grid, args.reps, seed)
    if args.csv:
        with open(args.csv, "w", encoding="utf-8") as fh:
            fh.write("op,n,p,median_seconds\n")
            for r in rows:
                fh.write(f"{r.op},{r.n},{r.p},{r.median_seconds:.9e}\n")
    for r in rows:
        print(f"{r.op} n={r.n} p={r.p}: {r.median_seconds:.3e} s")
    alpha, beta = fit_exponents(rows)
    if alpha is not None:
        print(f"fitted n-exponent: {alpha:.3f}")
    if beta is not None:
        print(f"fitted p-exponent: {beta:.3f}")
    return 0


# ---------------------------------------------------------------------------
# Parser
# ---------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="tspectral",
        description="Spectral analysis and trace geometry of third-order tensors",
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    parser.add_argument(
        "--convention",
        choices=("bcirc", "slice1"),
        default="bcirc",
        help="tensor trace convention used by trace-derived outputs",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    sp = sub.add_parser("tprod", help="t-product of two tensor files")
    sp.add_argument("a")
    sp.add_argument("b")
    sp.add_argument("-o", "--out", required=True)
    sp.add_argument("--path", choices=("dense", "fft"), default="fft")
    sp.add_argument("--json", action="store_true")
    sp.set_defaults(fn=cmd_tprod)

    sp = sub.add_parser("eig", help="tensor eigenvalues")
    sp.add_argument("a")
    sp.add_argument("--method", choices=("fourier", "bcirc"), default="fourier")
    sp.add_argument("--json", action="store_true")
    sp.set_defaults(fn=cmd_eig)

    sp = sub.add_parser("bounds", help="verify a trace/eigenvalue bound")
    sp.add_argument(
        "kind",
        choices=("symmetrized", "vn", "hermitian", "sandwich", "ratio", "relax", "kyfan"),
    )
    sp.add_argument("a")
    sp.add_argument("b", nargs="?")
    sp.add_argument("--k", type=int, default=1, help="subspace size for kyfan")
    sp.add_argument("--which", choices=("max", "min"), default="max")
    sp.add_argument("--json", action="store_true")
    sp.set_defaults(fn=cmd_bounds)

    sp = sub.add_parser("dist", help="distance between two tensors")
    sp.add_argument("--metric", choices=("fro", "bw", "logeuclid"), required=True)
    sp.add_argument("a")
    sp.add_argument("b")
    sp.add_argument("--json", action="store_true")
    sp.set_defaults(fn=cmd_dist)

    sp = sub.add_parser("geodesic", help="geodesic point or trace profile")
    sp.add_argument("a")
    sp.add_argument("b")
    group = sp.add_mutually_exclusive_group(required=True)
    group.add_argument("--t", type=float)
    group.add_argument("--samples", type=int)
    sp.add_argument("-o", "--out", required=True)
    sp.add_argument("--regularize", type=float, default=0.0)
    sp.set_defaults(fn=cmd_geodesic)

    sp = sub.add_parser("gen", help="generate a deterministic tensor file")
    sp.add_argument("kind", choices=("psd", "hermitian", "random"))
    sp.add_argument("-n", type=int, required=True)
    sp.add_argument("-p", type=int, required=True)
    sp.add_argument("--seed", type=int, default=None,
                    help=f"default from ${SEED_ENV_VAR} or 0")
    sp.add_argument("-o", "--out", required=True)
    sp.set_defaults(fn=cmd_gen)

    sp = sub.add_parser("verify", help="check structural properties of a tensor file")
    sp.add_argument("a")
    sp.add_argument("--checks", default="hermitian,psd")
    sp.set_defaults(fn=cmd_verify)

    sp = sub.add_parser("sweep", help="randomized property sweep")
    sp.add_argument("property", help=f"one of {sorted(_SWEEPS)}")
    sp.add_argument("--trials", type=int, default=100)
    sp.add_argument("--seed", type=int, default=None)
    sp.set_defaults(fn=cmd_sweep)

    sp = sub.add_parser("bench", help="runtime scaling benchmark")
    sp.add_argument("--op", choices=("tprod-dense", "tprod-fft", "eig", "bw-dist", "kyfan"),
                    required=True)
    sp.add_argument("--n-grid", default="8")
    sp.add_argument("--p-grid", default="8,16,32,64")
    sp.add_argument("--reps", type=int, default=5)
    sp.add_argument("--seed", type=int, default=None)
    sp.add_argument("--csv", default=None)
    sp.set_defaults(fn=cmd_bench)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.fn(args)
    except _USAGE_ERRORS as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except NumericError as exc:
        print(f"numeric failure: {exc}", file=sys.stderr)
        return 1
    except TSpectralError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
