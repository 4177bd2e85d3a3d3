"""Command-line entry point and the scenario runner behind it.

    logsurf <command> [scenario.json] [--support=E1,E2] [--alpha p/q]
            [--alpha-grid k] [--bits n] [--format json|text] [--out path]

Exit codes: 0 every applicable check holds, 1 some check fails, 2 invalid
input, 3 a hypothesis is unmet, 4 a verdict stayed unknown.
"""

from __future__ import annotations

import argparse
import os
import sys
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from pathlib import Path
from typing import Sequence

from . import scenario as scenario_io
from .bmy import (
    certified_representative,
    chain_checks,
    chain_validators,
    chern_data,
    curve_invariants,
    discriminant_inequality,
    main_quadratic,
    main_quadratic_coefficients,
    reduction_data,
)
from .bounds import DEFAULT_LAMBDA0, p2_corollary, select_bound
from .errors import InputError, InvariantViolation, LogsurfError
from .intervals import DEFAULT_BITS
from .lattice import Cycle, format_rational, to_rational
from .report import Report, combine_exit_codes, render_text
from .resolution import build_resolved_lattice, check_adjunction, e_prime_dot_c
from .scenario import PlaneData, Scenario
from .verdicts import EXIT_FAIL, EXIT_INVALID, Check, Status, Verdict, exit_code
from .zariski import ORACLE_LIMIT, negative_square, zariski_absolute, zariski_oracle, zariski_support

COMMANDS = ("zariski", "adjunction", "bmy", "bound", "p2", "batch")
BITS_ENV = "LOGSURF_BITS"


@dataclass(frozen=True)
class Options:
    support: tuple[str, ...] | None = None
    alpha: Fraction | None = None
    alpha_grid: int | None = None
    bits: int = DEFAULT_BITS
    kind: str | None = None
    command: str | None = None
    jobs: int = 1
    plane: PlaneData | None = None


# ---------------------------------------------------------------------------
# commands


def _zariski(scn: Scenario, opts: Options) -> Report:
    model = scn.require_surface()
    if scn.divisor is None:
        raise InputError(f"scenario {scn.name!r} has no divisor to decompose")
    support = opts.support if opts.support is not None else scn.support
    checks = [Check("certificate", Verdict.HOLDS)]
    if support:
        res = zariski_support(scn.divisor, Cycle(tuple(support)), model)
        if len(support) <= ORACLE_LIMIT:
            ref = zariski_oracle(scn.divisor, Cycle(tuple(support)), model)
            checks.append(Check("oracle_agrees", Verdict.of(ref.negative == res.negative)))
        mode = "support"
    else:
        res = zariski_absolute(scn.divisor, model)
        mode = "absolute"
    out = res.to_json()
    out["mode"] = mode
    out["negative_square"] = format_rational(negative_square(res, model))
    return Report("zariski", scn.name, exit_code(checks, {}), tuple(checks), {}, out)


def _adjunction(scn: Scenario, opts: Options) -> Report:
    model, datum, C = scn.require_curve()
    resolved = build_resolved_lattice(model, datum, C)
    adj = check_adjunction(model, datum, C, resolved)
    lattice, formula = e_prime_dot_c(resolved)
    checks = [
        Check("adjunction", Verdict.of(adj.holds)),
        Check("e_prime_dot_c", Verdict.of(lattice == formula)),
    ]
    out = {
        "adjunction": adj.to_json(),
        "discrepancies": list(resolved.discrepancies.x),
        "e_prime_dot_c": {"lattice": format_rational(lattice), "formula": format_rational(formula)},
    }
    return Report("adjunction", scn.name, exit_code(checks, {}), tuple(checks), {}, out)


def _alphas(scn: Scenario, opts: Options) -> list[Fraction]:
    if opts.alpha_grid is not None:
        k = opts.alpha_grid
        if k < 1:
            raise InputError("--alpha-grid needs k >= 1")
        return [Fraction(i, k) for i in range(k + 1)]
    if opts.alpha is not None:
        return [opts.alpha]
    return [scn.alpha if scn.alpha is not None else Fraction(1)]


def _bmy(scn: Scenario, opts: Options) -> Report:
    model, datum, C = scn.require_curve()
    resolved = build_resolved_lattice(model, datum, C)
    inv = curve_invariants(model, datum, C, resolved)
    disc = discriminant_inequality(inv)
    hyps: dict[str, Status] = {}
    rep = certified_representative(model, scn.kd_representative)
    if rep is not None:
        hyps["kappa_nonneg"] = Status.MET
    else:
        hyps["kappa_nonneg"] = Status.ASSERTED if scn.asserts("kappa_nonneg") else Status.UNMET
    hyps.update(disc.hypotheses)

    families: dict[str, tuple[bool, tuple[str, ...]]] = {}
    rows = []
    quad_ok = True
    for alpha in _alphas(scn, opts):
        chern = chern_data(model, datum, C, alpha, resolved)
        red = reduction_data(
            resolved,
            chern,
            representative=scn.kd_representative,
            kappa_asserted=scn.asserts("kappa_nonneg"),
        )
        chain = chain_validators(inv, resolved, chern, red)
        for chk in chain_checks(chain):
            ok, req = families.get(chk.name, (True, chk.requires))
            families[chk.name] = (ok and chk.verdict is Verdict.HOLDS, req)
        quad = main_quadratic(inv, alpha)
        quad_ok = quad_ok and quad >= 0
        rows.append(
            {
                "alpha": format_rational(alpha),
                "quadratic": format_rational(quad),
                "principal": None if chain.principal is None else format_rational(chain.principal),
                "chern": {k: v for k, v in chern.to_json().items() if k != "d_alpha"},
                "reduction": red.to_json(),
                "chain": [r.to_json() for r in chain.rows],
            }
        )
    a2, a1, a0 = main_quadratic_coefficients(inv)
    checks = [
        Check("main_quadratic_nonneg", Verdict.of(quad_ok), requires=("kappa_nonneg",)),
        Check("discriminant", disc.verdict, requires=tuple(disc.hypotheses)),
    ]
    checks += [Check(name, Verdict.of(ok), requires=req) for name, (ok, req) in families.items()]
    out = {
        "invariants": inv.to_json(),
        "quadratic_coefficients": [format_rational(a2), format_rational(a1), format_rational(a0)],
        "discriminant": disc.to_json(),
        "alphas": rows,
    }
    return Report("bmy", scn.name, exit_code(checks, hyps), tuple(checks), hyps, out)


def _bound(scn: Scenario, opts: Options) -> Report:
    model, datum, C = scn.require_curve()
    inv = curve_invariants(model, datum, C)
    nef = Status.ASSERTED if scn.asserts("nef") else Status.UNMET
    rep = select_bound(inv, opts.bits, nef=nef, kind=opts.kind or scn.bound_kind)
    out = rep.to_json()
    out["invariants"] = inv.to_json()
    out.pop("checks")
    out.pop("hypotheses")
    return Report("bound", scn.name, rep.exit_code, rep.checks, dict(rep.hypotheses), out)


def _p2(scn: Scenario, opts: Options) -> Report:
    plane = opts.plane or scn.plane
    if plane is None:
        raise InputError("p2 needs degrees: a 'p2' block in the scenario or --d1/--d2/--d/--genus/--m")
    rep = p2_corollary(
        plane.d1,
        plane.d2,
        plane.d,
        plane.g,
        plane.m,
        lambda0=plane.lambda0 if plane.lambda0 is not None else DEFAULT_LAMBDA0,
        bits=opts.bits,
    )
    out = rep.to_json()
    out.pop("checks")
    out.pop("hypotheses")
    return Report("p2", scn.name, rep.exit_code, rep.checks, dict(rep.hypotheses), out)


_RUNNERS = {
    "zariski": _zariski,
    "adjunction": _adjunction,
    "bmy": _bmy,
    "bound": _bound,
    "p2": _p2,
}


def _error_report(command: str, name: str, exc: Exception) -> Report:
    code = EXIT_FAIL if isinstance(exc, InvariantViolation) else EXIT_INVALID
    return Report(command, name, code, error=f"{type(exc).__name__}: {exc}")


def run(command: str, scn: Scenario, opts: Options = Options()) -> Report:
    """Evaluate one command on one scenario.  Input errors become exit 2."""
    if command not in _RUNNERS:
        return _error_report(command, scn.name, InputError(f"unknown command {command!r}"))
    try:
        return _RUNNERS[command](scn, opts)
    except InvariantViolation as exc:
        return _error_report(command, scn.name, exc)
    except (LogsurfError, ValueError, ZeroDivisionError) as exc:
        return _error_report(command, scn.name, exc)


def run_file(path: str | Path, command: str | None, opts: Options = Options()) -> Report:
    name = Path(path).stem
    try:
        scn = scenario_io.load(path)
    except LogsurfError as exc:
        return _error_report(command or "load", name, exc)
    cmd = command or scn.command or opts.command
    if cmd is None:
        return _error_report("load", scn.name, InputError("scenario names no command; pass --command"))
    return run(cmd, scn, opts)


def _run_file_star(args: tuple[str, Options]) -> Report:
    path, opts = args
    return run_file(path, None, opts)


def run_batch(directory: str | Path, opts: Options = Options()) -> Report:
    """Run every *.json scenario in a directory; results keep file order."""
    directory = Path(directory)
    if not directory.is_dir():
        return _error_report("batch", str(directory), InputError(f"{directory} is not a directory"))
    files = sorted(str(p) for p in directory.glob("*.json"))
    jobs = [(f, opts) for f in files]
    if opts.jobs > 1 and len(files) > 1:
        with ProcessPoolExecutor(max_workers=opts.jobs) as pool:
            reports = list(pool.map(_run_file_star, jobs))
    else:
        reports = [_run_file_star(j) for j in jobs]
    code = combine_exit_codes(r.exit_code for r in reports)
    summary = {"scenarios": len(reports), "by_status": {}}
    for r in reports:
        summary["by_status"][r.status] = summary["by_status"].get(r.status, 0) + 1
    return Report("batch", directory.name, code, result=summary, children=tuple(reports))


# ---------------------------------------------------------------------------
# argument parsing


def _parse_rational(text: str) -> Fraction:
    try:
        return to_rational(text)
    except (TypeError, ValueError) as exc:
        raise argparse.ArgumentTypeError(str(exc)) from exc


def _positive_int(text: str) -> int:
    try:
        v = int(text)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(f"expected an integer, got {text!r}") from exc
    if v < 1:
        raise argparse.ArgumentTypeError("expected a positive integer")
    return v


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(
        prog="logsurf",
        description="Zariski decompositions, log resolutions and canonical-degree bounds on surfaces.",
    )
    p.add_argument("command", choices=COMMANDS)
    p.add_argument("scenario", nargs="?", help="scenario JSON file (a directory for batch)")
    p.add_argument("--support", help="comma-separated cycle for a supported Zariski decomposition")
    p.add_argument("--alpha", type=_parse_rational, help="rational in [0, 1], e.g. 1/2")
    p.add_argument("--alpha-grid", type=_positive_int, metavar="K", help="evaluate at alpha = i/K, i = 0..K")
    p.add_argument("--bits", type=_positive_int, help=f"interval precision (default ${BITS_ENV} or {DEFAULT_BITS})")
    p.add_argument("--kind", choices=("general", "smooth", "d_rational"), help="force a bound branch")
    p.add_argument("--format", choices=("json", "text"), default="text")
    p.add_argument("--out", help="write the report here instead of stdout")
    p.add_argument("--command", dest="default_command", choices=COMMANDS[:-1], help="command for batch scenarios that name none")
    p.add_argument("--jobs", type=_positive_int, default=1, help="worker processes for batch")
    g = p.add_argument_group("p2 degrees")
    for flag in ("d1", "d2", "d", "genus", "m"):
        g.add_argument(f"--{flag}", type=int)
    g.add_argument("--lambda0", type=_parse_rational)
    return p


def _bits_from_env() -> int:
    raw = os.environ.get(BITS_ENV)
    if raw is None or raw == "":
        return DEFAULT_BITS
    try:
        v = int(raw)
    except ValueError:
        raise InputError(f"{BITS_ENV} must be a positive integer, got {raw!r}") from None
    if v < 1:
        raise InputError(f"{BITS_ENV} must be a positive integer, got {raw!r}")
    return v


def _options(ns: argparse.Namespace) -> Options:
    bits = ns.bits if ns.bits is not None else _bits_from_env()
    plane = None
    degrees = (ns.d1, ns.d2, ns.d, ns.genus, ns.m)
    if any(v is not None for v in degrees):
        if any(v is None for v in degrees):
            raise InputError("p2 needs all of --d1 --d2 --d --genus --m")
        plane = PlaneData(ns.d1, ns.d2, ns.d, ns.genus, ns.m, ns.lambda0)
    elif ns.lambda0 is not None:
        raise InputError("--lambda0 only applies together with --d1/--d2/--d/--genus/--m")
    support = None
    if ns.support is not None:
        support = tuple(s.strip() for s in ns.support.split(",") if s.strip())
    return Options(
        support=support,
        alpha=ns.alpha,
        alpha_grid=ns.alpha_grid,
        bits=bits,
        kind=ns.kind,
        command=ns.default_command,
        jobs=ns.jobs,
        plane=plane,
    )


def _dispatch(ns: argparse.Namespace) -> Report:
    try:
        opts = _options(ns)
    except LogsurfError as exc:
        return _error_report(ns.command, ns.scenario or "-", exc)
    if ns.command == "batch":
        if ns.scenario is None:
            return _error_report("batch", "-", InputError("batch needs a directory"))
        return run_batch(ns.scenario, opts)
    if ns.scenario is None:
        if ns.command == "p2" and opts.plane is not None:
            return run("p2", Scenario(name="p2"), opts)
        return _error_report(ns.command, "-", InputError("a scenario file is required"))
    try:
        scn = scenario_io.load(ns.scenario)
    except LogsurfError as exc:
        return _error_report(ns.command, Path(ns.scenario).stem, exc)
    return run(ns.command, scn, opts)


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    try:
        ns = parser.parse_args(argv)
    except SystemExit as exc:
        # argparse exits 2 on bad usage, which matches our invalid-input code
        return int(exc.code or 0)
    report = _dispatch(ns)
    text = report.dumps() if ns.format == "json" else render_text(report)
    if ns.out:
        try:
            Path(ns.out).write_text(text + "\n", encoding="utf-8")
        except OSError as exc:
            print(f"logsurf: cannot write {ns.out}: {exc}", file=sys.stderr)
            return EXIT_INVALID
    else:
        print(text)
    return report.exit_code


if __name__ == "__main__":
    sys.exit(main())
