"""Command-line front end: CSV/JSON emitters over the library modules.

Every subcommand validates its whole configuration (grids, ranges,
expressions, family names) before any computation starts, writes CSV with a
header row and %.17g numbers (or schema-versioned JSON for reports), and is
deterministic for a fixed argument list.  Exit codes: 0 success, 1 a
verification check failed, 2 usage or configuration error.
"""

from __future__ import annotations

import argparse
import json
import math
import sys
from dataclasses import dataclass, field

import numpy as np

from . import basis as basis_mod
from . import coeffs as coeffs_mod
from . import diffop
from . import periodic as periodic_mod
from . import quadrature
from . import schrodinger as sch
from . import verify as verify_mod
from .expr import ParseError, compile_function, evaluate, parse as expr_parse

__all__ = ["RunConfig", "main"]

_FMT = "%.17g"
_STDOUT_TOKENS = {None, "-", "csv", "json"}


@dataclass
class RunConfig:
    """A fully validated subcommand invocation; executing it cannot half-fail
    on malformed input because all parsing happens before construction."""

    subcommand: str
    family: str | None = None
    N: int = 0
    n_range: tuple[int, int] | None = None
    grid: np.ndarray | None = None
    out: str | None = None
    method: str | None = None
    params: dict = field(default_factory=dict)


def _eval_scalar(text: str, what: str) -> float:
    """Numeric CLI field; accepts expressions like 'pi' or '-pi/2'."""
    try:
        return float(evaluate(expr_parse(text.strip(), varname="x"), 0.0))
    except (ParseError, ValueError) as exc:
        raise ValueError(f"invalid {what} {text!r}: {exc}") from None


def _parse_grid(spec: str) -> np.ndarray:
    parts = spec.split(":")
    if len(parts) != 3:
        raise ValueError(f"grid must be lo:hi:step, got {spec!r}")
    lo = _eval_scalar(parts[0], "grid start")
    hi = _eval_scalar(parts[1], "grid end")
    step = _eval_scalar(parts[2], "grid step")
    if step <= 0.0 or hi <= lo:
        raise ValueError(f"grid needs hi > lo and step > 0, got {spec!r}")
    count = int(math.floor((hi - lo) / step + 1e-9)) + 1
    return lo + step * np.arange(count)


def _parse_n_range(spec: str) -> tuple[int, int]:
    parts = spec.split(":")
    try:
        if len(parts) == 1:
            lo = hi = int(parts[0])
        elif len(parts) == 2:
            lo, hi = int(parts[0]), int(parts[1])
        else:
            raise ValueError
    except ValueError:
        raise ValueError(f"index range must be n or lo:hi, got {spec!r}") from None
    if hi < lo:
        raise ValueError(f"empty index range {spec!r}")
    return lo, hi


def _emit(out: str | None, text: str) -> None:
    if out in _STDOUT_TOKENS:
        sys.stdout.write(text)
    else:
        with open(out, "w") as handle:
            handle.write(text)


def _csv(header: str, rows) -> str:
    lines = [header]
    for row in rows:
        lines.append(",".join(_FMT % v if isinstance(v, float) else str(v) for v in row))
    return "\n".join(lines) + "\n"


def _resolve_family(family: str, N: int):
    """TransformedBasis for continuous families, PeriodicBasis for charlier."""
    head, _, tail = family.partition(":")
    if head == "charlier":
        a = _eval_scalar(tail or "0.5", "charlier parameter")
        return periodic_mod.charlier_basis(a, N=max(N + 2, 8))
    return basis_mod.make_basis(family, N=max(N + 2, 8))


def _cmd_basis(cfg: RunConfig) -> int:
    bas = cfg.params["basis"]
    lo, hi = cfg.n_range
    table = basis_mod.phi_grid(bas, hi, cfg.grid, method=cfg.method or "auto")
    rows = []
    for n in range(lo, hi + 1):
        for x, v in zip(cfg.grid, table[n]):
            rows.append((n, float(x), float(v.real), float(v.imag)))
    _emit(cfg.out, _csv("n,x,re_phi,im_phi", rows))
    return 0


def _cmd_quad(cfg: RunConfig) -> int:
    bas = cfg.params["basis"]
    rule = quadrature.golub_welsch(bas.jacobi, cfg.N)
    rows = [(float(x), float(w)) for x, w in zip(rule.nodes, rule.weights)]
    _emit(cfg.out, _csv("node,weight", rows))
    return 0


def _cmd_diffmat(cfg: RunConfig) -> int:
    bas = cfg.params["basis"]
    D = diffop.build(bas.jacobi, cfg.N)
    rows = []
    for m in range(cfg.N):
        if m > 0:
            rows.append((m, m - 1, float(D.sub[m - 1]), 0.0))
        rows.append((m, m, 0.0, float(D.diag[m])))
        if m + 1 < cfg.N:
            rows.append((m, m + 1, float(D.super[m]), 0.0))
    _emit(cfg.out, _csv("row,col,re,im", rows))
    return 0


def _cmd_coeffs(cfg: RunConfig) -> int:
    bas = cfg.params["basis"]
    f = cfg.params["f"]
    method = cfg.method
    head = bas.family.partition(":")[0]
    if method == "auto":
        if head == "mt":
            method = "fft"
        elif head == "tanhjacobi" and coeffs_mod.tanh_cheb_kind(bas) is not None:
            method = "dct"
        else:
            method = "xspace"
    if method == "fft":
        if head != "mt":
            raise ValueError("--method fft is only available for the mt family")
        vec = coeffs_mod.mt_coeffs_fft(f, cfg.N, basis=bas)
    elif method == "dct":
        kind = coeffs_mod.tanh_cheb_kind(bas)
        if kind is None:
            raise ValueError("--method dct needs a tanh-Chebyshev family "
                             "(tanhjacobi with parameters in {1/4, 3/4})")
        vec = coeffs_mod.tanh_chebyshev_coeffs(f, kind, cfg.N, basis=bas)
    elif method == "xspace":
        vec = coeffs_mod.coeffs_xspace(f, bas, cfg.N, window=cfg.params["window"])
    else:
        raise ValueError(f"unknown method {method!r}")
    rows = [(int(n), float(v.real), float(v.imag), float(abs(v)))
            for n, v in zip(vec.indices, vec.values)]
    _emit(cfg.out, _csv("n,re,im,abs", rows))
    return 0


def _cmd_decay(cfg: RunConfig) -> int:
    source = cfg.params["infile"]
    if source == "-":
        text = sys.stdin.read()
    else:
        with open(source) as handle:
            text = handle.read()
    lines = [ln for ln in text.strip().splitlines() if ln.strip()]
    if not lines or lines[0].split(",")[0].strip() != "n":
        raise ValueError("decay expects the coeffs CSV (header n,re,im,abs)")
    ns, vals = [], []
    for ln in lines[1:]:
        cells = ln.split(",")
        ns.append(int(cells[0]))
        vals.append(complex(float(cells[1]), float(cells[2])))
    ns = np.asarray(ns)
    n_start = int(ns.min())
    if not np.array_equal(ns, np.arange(n_start, n_start + len(ns))):
        raise ValueError("coefficient indices must be contiguous")
    vec = coeffs_mod.CoefficientVector(np.asarray(vals), n_start=n_start)
    fit = coeffs_mod.decay_fit(vec, cfg.params["model"], skip=cfg.params["skip"])
    payload = {
        "schema": "favard.decay/1",
        "model": fit.model,
        "param": fit.param,
        "amplitude": fit.amplitude,
        "r2": fit.r2,
        "n_used": fit.n_used,
    }
    if fit.p is not None:
        payload["p"] = fit.p
    _emit(cfg.out, json.dumps(payload, indent=2) + "\n")
    return 0


def _cmd_periodic(cfg: RunConfig) -> int:
    bas = cfg.params["basis"]
    lo, hi = cfg.n_range
    rows = []
    for n in range(lo, hi + 1):
        vals = periodic_mod.periodic_phi(bas, n, cfg.grid)
        for x, v in zip(cfg.grid, vals):
            rows.append((n, float(x), float(v.real), float(v.imag)))
    _emit(cfg.out, _csv("n,x,re_phi,im_phi", rows))
    return 0


def _cmd_schrodinger(cfg: RunConfig) -> int:
    bas = cfg.params["basis"]
    f0 = cfg.params["f0"]
    V = cfg.params["potential"]
    tau = cfg.params["tau"]
    steps = cfg.params["steps"]
    nodes, synth, analyze = sch._grid_pair(bas, cfg.N)
    a = analyze(np.asarray(f0(nodes), dtype=complex))
    work = sch._StrangWork(bas, cfg.N, tau)
    table = basis_mod.phi_grid(bas, cfg.N - 1, cfg.grid)
    rows = []

    def emit(t, vec):
        u = vec @ table
        norm = float(np.linalg.norm(vec))
        for x, v in zip(cfg.grid, u):
            rows.append((float(t), float(x), float(v.real), float(v.imag), norm))

    emit(0.0, a)
    for k in range(1, steps + 1):
        a = work.step(a, V)
        emit(k * tau, a)
    _emit(cfg.out, _csv("t,x,re_u,im_u,norm", rows))
    return 0


_CHECK_NAMES = ("gram", "recurrence", "cramer", "ramanujan",
                "tanh-jacobi-identity", "pw-support")


def _verify_reports(cfg: RunConfig) -> list:
    family = cfg.family
    head, _, tail = family.partition(":")
    which = cfg.params["check"]
    N = cfg.N
    reports = []

    def add(name):
        if name in ("gram", "recurrence"):
            bas = _resolve_family(family, max(N, 12))
            fn = verify_mod.check_gram if name == "gram" else verify_mod.check_recurrence
            reports.append(fn(bas, N))
        elif name == "cramer":
            reports.append(verify_mod.check_cramer(max(N, 50)))
        elif name == "ramanujan":
            reports.append(verify_mod.check_ramanujan(cfg.params["a"]))
        elif name == "tanh-jacobi-identity":
            if head != "tanhjacobi":
                raise ValueError("tanh-jacobi-identity needs --family tanhjacobi:a,b")
            a, b = basis_mod._parse_params(family, tail, 2)
            reports.append(verify_mod.check_tanh_jacobi_identity(a, b, min(N, 6)))
        elif name == "pw-support":
            bas = _resolve_family(family, max(N, 8))
            for n in range(min(N, 3)):
                reports.append(verify_mod.check_pw_support(bas, n))
        else:
            raise ValueError(f"unknown check {name!r}")

    if which == "all":
        add("gram")
        add("recurrence")
        if head == "hermite":
            add("cramer")
        if head == "tanhjacobi":
            a, b = basis_mod._parse_params(family, tail, 2)
            if a == b:
                add("tanh-jacobi-identity")
            add("ramanujan")
        if head == "legendre":
            add("pw-support")
    else:
        add(which)
    return reports


def _cmd_verify(cfg: RunConfig) -> int:
    reports = _verify_reports(cfg)
    payload = [r.as_dict() for r in reports]
    _emit(cfg.out, json.dumps(payload, indent=2) + "\n")
    bad = [r for r in reports if not r.passed and not r.metadata.get("expected_fail")]
    return 1 if bad else 0


def _build_parser() -> argparse.ArgumentParser:
    root = argparse.ArgumentParser(
        prog="favard",
        description="Orthonormal function systems with tridiagonal differentiation matrices.",
    )
    subs = root.add_subparsers(dest="subcommand", required=True)

    p = subs.add_parser("basis", help="evaluate basis functions on a grid")
    p.add_argument("action", choices=["eval"])
    p.add_argument("--family", required=True)
    p.add_argument("--n", default="0:3", help="index range lo:hi")
    p.add_argument("--grid", default="-20:20:0.05", help="lo:hi:step (fields may use pi)")
    p.add_argument("--method", choices=["auto", "quadrature", "closed"], default="auto")
    p.add_argument("--out", default=None)

    p = subs.add_parser("quad", help="Gauss nodes and weights of a family's measure")
    p.add_argument("--family", required=True)
    p.add_argument("--N", type=int, required=True)
    p.add_argument("--out", default=None)

    p = subs.add_parser("diffmat", help="tridiagonal differentiation matrix entries")
    p.add_argument("--family", required=True)
    p.add_argument("--N", type=int, required=True)
    p.add_argument("--out", default=None)

    p = subs.add_parser("coeffs", help="expansion coefficients of a function")
    p.add_argument("--family", required=True)
    p.add_argument("--f", required=True, help="expression in x")
    p.add_argument("--N", type=int, required=True)
    p.add_argument("--method", choices=["auto", "fft", "dct", "xspace"], default="auto")
    p.add_argument("--window", default="-30:30:0.01", help="xspace window lo:hi:step")
    p.add_argument("--out", default=None)

    p = subs.add_parser("decay", help="fit a decay model to coefficients CSV")
    p.add_argument("--in", dest="infile", default="-", help="coeffs CSV path or - for stdin")
    p.add_argument("--model", required=True,
                   help="exp | alg | stretched:<p> (e.g. stretched:0.5)")
    p.add_argument("--skip", type=int, default=8)
    p.add_argument("--out", default=None)

    p = subs.add_parser("periodic", help="periodic Charlier system")
    p.add_argument("action", choices=["eval"])
    p.add_argument("--a", default="0.5")
    p.add_argument("--n", default="0:3")
    p.add_argument("--grid", default="-pi:pi:0.05", help="lo:hi:step (fields may use pi)")
    p.add_argument("--out", default=None)

    p = subs.add_parser("schrodinger", help="Strang-split Schroedinger propagation")
    p.add_argument("--basis", required=True, help="hermite or mt")
    p.add_argument("--N", type=int, required=True)
    p.add_argument("--f0", required=True, help="initial data, expression in x")
    p.add_argument("--T", type=float, required=True)
    p.add_argument("--tau", type=float, required=True)
    p.add_argument("--potential", default="none", help="expression in x, or none")
    p.add_argument("--grid", default="-8:8:0.5")
    p.add_argument("--out", default=None)

    p = subs.add_parser("verify", help="run verification checks, emit JSON reports")
    p.add_argument("check", help="all or one of: " + ", ".join(_CHECK_NAMES))
    p.add_argument("--family", default="hermite")
    p.add_argument("--N", type=int, default=12)
    p.add_argument("--a", default="0.5", help="ramanujan parameter")
    p.add_argument("--out", default=None)
    return root


def _configure(args: argparse.Namespace) -> tuple[RunConfig, callable]:
    sub = args.subcommand
    if sub == "basis":
        grid = _parse_grid(args.grid)
        n_range = _parse_n_range(args.n)
        if n_range[0] < 0:
            raise ValueError("basis eval needs nonnegative indices")
        bas = _resolve_family(args.family, n_range[1])
        if isinstance(bas, periodic_mod.PeriodicBasis):
            raise ValueError("use the periodic subcommand for charlier families")
        method = {"auto": "auto", "quadrature": "quadrature", "closed": "auto"}[args.method]
        cfg = RunConfig(sub, family=args.family, n_range=n_range, grid=grid,
                        out=args.out, method=method, params={"basis": bas})
        return cfg, _cmd_basis
    if sub == "quad":
        if args.N < 1:
            raise ValueError("N must be positive")
        bas = _resolve_family(args.family, args.N)
        cfg = RunConfig(sub, family=args.family, N=args.N, out=args.out,
                        params={"basis": bas})
        return cfg, _cmd_quad
    if sub == "diffmat":
        if args.N < 1:
            raise ValueError("N must be positive")
        bas = _resolve_family(args.family, args.N)
        cfg = RunConfig(sub, family=args.family, N=args.N, out=args.out,
                        params={"basis": bas})
        return cfg, _cmd_diffmat
    if sub == "coeffs":
        if args.N < 1:
            raise ValueError("N must be positive")
        bas = _resolve_family(args.family, min(args.N, 256))
        if isinstance(bas, periodic_mod.PeriodicBasis):
            raise ValueError("coeffs supports continuous families only")
        f = compile_function(args.f)
        window_grid = _parse_grid(args.window)
        window = (float(window_grid[0]), float(window_grid[-1]))
        cfg = RunConfig(sub, family=args.family, N=args.N, out=args.out,
                        method=args.method,
                        params={"basis": bas, "f": f, "window": window})
        return cfg, _cmd_coeffs
    if sub == "decay":
        names = {"exp": "exponential", "alg": "algebraic"}
        model = names.get(args.model, args.model)
        if model not in names.values() and not model.startswith("stretched:"):
            raise ValueError(f"unknown decay model {args.model!r}")
        if args.skip < 0:
            raise ValueError("skip must be nonnegative")
        cfg = RunConfig(sub, out=args.out,
                        params={"infile": args.infile, "model": model, "skip": args.skip})
        return cfg, _cmd_decay
    if sub == "periodic":
        a = _eval_scalar(args.a, "charlier parameter")
        if a <= 0.0:
            raise ValueError("charlier parameter must be positive")
        n_range = _parse_n_range(args.n)
        if n_range[0] < 0:
            raise ValueError("periodic eval needs nonnegative indices")
        grid = _parse_grid(args.grid)
        bas = periodic_mod.charlier_basis(a, N=max(n_range[1] + 2, 8))
        cfg = RunConfig(sub, n_range=n_range, grid=grid, out=args.out,
                        params={"basis": bas})
        return cfg, _cmd_periodic
    if sub == "schrodinger":
        if args.N < 1:
            raise ValueError("N must be positive")
        if args.tau <= 0.0 or args.T < 0.0:
            raise ValueError("need T >= 0 and tau > 0")
        steps = args.T / args.tau
        if abs(steps - round(steps)) > 1e-9:
            raise ValueError("T must be an integer multiple of tau")
        bas = _resolve_family(args.basis, args.N)
        if isinstance(bas, periodic_mod.PeriodicBasis):
            raise ValueError("schrodinger supports hermite and mt bases")
        f0 = compile_function(args.f0)
        V = None if args.potential.strip().lower() == "none" else compile_function(args.potential)
        grid = _parse_grid(args.grid)
        cfg = RunConfig(sub, family=args.basis, N=args.N, grid=grid, out=args.out,
                        params={"basis": bas, "f0": f0, "potential": V,
                                "tau": args.tau, "steps": int(round(steps))})
        return cfg, _cmd_schrodinger
    if sub == "verify":
        if args.check != "all" and args.check not in _CHECK_NAMES:
            raise ValueError(f"unknown check {args.check!r}; "
                             f"expected all or one of {', '.join(_CHECK_NAMES)}")
        a = _eval_scalar(args.a, "ramanujan parameter")
        cfg = RunConfig(sub, family=args.family, N=args.N, out=args.out,
                        params={"check": args.check, "a": a})
        return cfg, _cmd_verify
    raise ValueError(f"unknown subcommand {sub!r}")


_VALUE_FLAGS = {"--family", "--n", "--grid", "--method", "--out", "--N", "--f",
                "--window", "--in", "--model", "--skip", "--a", "--basis",
                "--f0", "--T", "--tau", "--potential", "--check"}


def _join_negative_values(argv):
    """Fold '--grid -20:20:0.05' into '--grid=-20:20:0.05' so argparse does
    not mistake a leading-minus value for an option."""
    out = []
    i = 0
    while i < len(argv):
        tok = argv[i]
        if (tok in _VALUE_FLAGS and i + 1 < len(argv)
                and argv[i + 1].startswith("-") and argv[i + 1] != "-"):
            out.append(f"{tok}={argv[i + 1]}")
            i += 2
        else:
            out.append(tok)
            i += 1
    return out


def main(argv=None) -> int:
    parser = _build_parser()
    if argv is None:
        argv = sys.argv[1:]
    try:
        args = parser.parse_args(_join_negative_values(list(argv)))
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        cfg, handler = _configure(args)
    except (ValueError, ParseError) as exc:
        print(f"favard: {exc}", file=sys.stderr)
        return 2
    try:
        return handler(cfg)
    except (ValueError, ParseError) as exc:
        print(f"favard: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
