"""Command-line entry point: ``cliffproc table|verify|emit``.

Exit codes: 0 success, 1 verification failure, 2 usage error, 3 I/O error.
"""
from __future__ import annotations

import argparse
import csv
import io
import json
import sys

import numpy as np

from . import __version__
from .algebra import Algebra, parse_algebra
from .bohm import GaussianPacket, PlaneWave, decompose_polar, gaussian_quantum_potential, \
    quantum_potential, residual_table, sample, uniform_axis
from .groupoid import REFERENCE_TABLES, Extensive, build_clifford
from .spinors import hopf_map, lift_null_vector, null_residual
from .suites import SUITES, report_passed, run_suite
from .weyl import MAX_ORDER, MIN_ORDER, WeylAlgebra

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_IO = 0, 1, 2, 3
FULL_TABLE_MAX = 4


class UsageError(Exception):
    pass


# -- rendering -----------------------------------------------------------------------

def _csv_text(header, rows) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(header)
    for r in rows:
        w.writerow([repr(float(v)) if isinstance(v, (float, np.floating)) else v for v in r])
    return buf.getvalue()


def _text_table(cells: list[list[str]]) -> str:
    width = max(len(c) for row in cells for c in row)
    lines = []
    for i, row in enumerate(cells):
        lines.append(row[0].rjust(width) + " | " + "  ".join(c.rjust(width) for c in row[1:]))
        if i == 0:
            lines.append("-" * len(lines[0]))
    return "\n".join(lines) + "\n"


def _bracket_names(alg: Algebra) -> dict[int, tuple[int, str]] | None:
    """``mask -> (sign, bracket)`` with ``blade = sign * bracket`` for the tabulated algebras."""
    for ref in REFERENCE_TABLES.values():
        real = build_clifford([Extensive(*g) for g in ref["generators"]], ref["metric"],
                              first_index=ref["first_index"])
        if real.algebra.metric != alg.metric or real.algebra.first_index != alg.first_index:
            continue
        names = {0: (1, "1")}
        for p, q in ref["rows"]:
            img = real.images[(p, q)]
            mask = int(np.flatnonzero(img.coeffs)[0])
            names[mask] = (int(np.sign(img.coeffs[mask].real)), f"[{p}{q}]")
        return names
    return None


def _blade_label(alg: Algebra, sign: float, mask: int, brackets) -> str:
    if brackets:
        s, name = brackets[mask]
        sign = sign * s
    else:
        name = alg.blade_name(mask)
    if name == "1":
        return "1" if sign > 0 else "-1"
    return name if sign > 0 else "-" + name


def table_cells(alg: Algebra) -> list[list[str]]:
    """Products of the non-scalar basis blades, laid out with ``1`` in the corner."""
    if alg.n > FULL_TABLE_MAX:
        raise UsageError(f"{alg.name or 'algebra'} has p+q = {alg.n} > {FULL_TABLE_MAX}; "
                         "use --generators-only")
    brackets = _bracket_names(alg)
    masks = range(1, alg.dim)
    # headers are the bracket elements themselves, i.e. sign * blade
    unit = {m: brackets[m][0] if brackets else 1 for m in range(alg.dim)}
    cells = [["1"] + [_blade_label(alg, unit[m], m, brackets) for m in masks]]
    for a in masks:
        row = [cells[0][a]]
        for b in masks:
            sign = alg.sign_table[a, b] * unit[a] * unit[b]
            row.append(_blade_label(alg, sign, a ^ b, brackets))
        cells.append(row)
    return cells


def bracket_legend(alg: Algebra) -> str:
    brackets = _bracket_names(alg)
    if not brackets:
        return ""
    parts = [f"{name} = {'-' if s < 0 else ''}{alg.blade_name(m)}"
             for m, (s, name) in sorted(brackets.items()) if m]
    return "where " + ", ".join(parts) + "\n"


def generator_summary(alg: Algebra) -> list[list[str]]:
    rows = [["pair", "relation"]]
    for i in range(alg.n):
        ei = alg.blade_name(1 << i)
        rows.append([f"{ei}{ei}", f"{ei}^2 = {alg.metric[i]:+d}"])
    for i in range(alg.n):
        for j in range(i + 1, alg.n):
            ei, ej = alg.blade_name(1 << i), alg.blade_name(1 << j)
            rows.append([f"{ei}{ej}", f"{ei} {ej} = -{ej} {ei}"])
    return rows


def _weyl_power(sym: str, k: int, n: int) -> str:
    k %= n
    return "1" if k == 0 else sym if k == 1 else f"{sym}^{k}"


def weyl_cells(n: int, generators_only: bool) -> list[list[str]]:
    """Generator table (or defining relations) of the clock-and-shift algebra of order ``n``."""
    if generators_only:
        return [["pair", "relation"], ["UU", f"U^{n} = 1"], ["VV", f"V^{n} = 1"],
                ["UV", f"U V = omega V U, omega = exp(2 pi i/{n})"]]
    vu = "-U V" if n == 2 else "omega^-1 U V"
    return [["1", "U", "V"],
            ["U", _weyl_power("U", 2, n), "U V"],
            ["V", vu, _weyl_power("V", 2, n)]]


def _weyl_order(spec: str) -> int:
    _, _, tail = spec.partition(":")
    try:
        n = int(tail)
    except ValueError:
        raise UsageError("the clock-and-shift algebra needs an order, e.g. weyl:8") from None
    if not MIN_ORDER <= n <= MAX_ORDER:
        raise UsageError(f"weyl order must be in [{MIN_ORDER}, {MAX_ORDER}]")
    return n


def cmd_table(args) -> str:
    if args.algebra.strip().lower().startswith("weyl"):
        n = _weyl_order(args.algebra.strip().lower())
        cells = weyl_cells(n, args.generators_only)
        header = {"algebra": args.algebra, "order": n}
        alg = None
    else:
        try:
            alg = parse_algebra(args.algebra)
        except ValueError as exc:
            raise UsageError(str(exc)) from None
        cells = generator_summary(alg) if args.generators_only else table_cells(alg)
        header = {"algebra": args.algebra, "signature": [alg.p, alg.q]}
    if args.format == "json":
        return json.dumps({**header, "rows": cells}, indent=2) + "\n"
    if args.format == "csv":
        return _csv_text(cells[0], cells[1:])
    if args.generators_only:
        return "\n".join(r[1] for r in cells[1:]) + "\n"
    return _text_table(cells) + (bracket_legend(alg) if alg else "")


# -- verify -----------------------------------------------------------------------------

def cmd_verify(args) -> tuple[str, int]:
    report = run_suite(args.suite, seed=args.seed, n=args.n)
    code = EXIT_OK if report_passed(report) else EXIT_FAIL
    return json.dumps(report, indent=2) + "\n", code


# -- emit -------------------------------------------------------------------------------

def emit_lightcone(args):
    rng = np.random.default_rng(args.seed)
    rows = []
    for g in rng.normal(size=(args.count, 4)):
        v = hopf_map(*g)
        lift_null_vector(v)
        rows.append([*g, *v, null_residual(v)])
    header = ["g0[1]", "g1[1]", "g2[1]", "g3[1]", "t[c=1]", "x[c=1]", "y[c=1]", "z[c=1]",
              "null_residual[c=1]"]
    return header, rows


def emit_bohm(args):
    specs = {"gaussian": (GaussianPacket(sigma=args.sigma, k0=args.k, m=args.m), -5 * args.sigma,
                          5 * args.sigma, 0.1 * args.sigma, 0.02),
             "plane_wave": (PlaneWave(k=(args.k,), m=args.m), 0.0, 2.0, 0.02, 0.02)}
    header = ["wavefunction", "h[length]", "dt[time]", "liouville[1/(length*time)]",
              "conservation[1/(length*time)]", "anticommutator[energy/length]", "qhj[energy]"]
    rows = []
    for name in (["gaussian", "plane_wave"] if args.wavefunction == "all" else [args.wavefunction]):
        spec, lo, hi, h, dt = specs[name]
        for r in residual_table(spec, lo, hi, h, dt, t=0.3, levels=args.levels):
            rows.append([name, r["h"], r["dt"], r["liouville"], r["conservation"],
                         r["anticommutator"], r["qhj"]])
    return header, rows


def emit_quantum_potential(args):
    x = uniform_axis(-args.extent * args.sigma, args.extent * args.sigma, args.h)
    polar = decompose_polar(sample(GaussianPacket(sigma=args.sigma, m=args.m), [x], 0.0))
    q = quantum_potential(polar, args.m)
    qa = gaussian_quantum_potential(x, args.sigma, args.m)
    rows = [[xi, ri, qi, ai] for xi, ri, qi, ai in zip(x, polar.R, q, qa) if np.isfinite(qi)]
    return ["x[length]", "R[length^-1/2]", "Q_numeric[energy]", "Q_analytic[energy]"], rows


def emit_weyl_points(args):
    W = WeylAlgebra(args.n, dx=args.dx, dp=args.dp)
    ex = [W.idempotent_x(j) for j in range(W.n)]
    ep = [W.idempotent_p(l) for l in range(W.n)]
    rows = []
    for j in range(W.n):
        for l in range(W.n):
            ov = abs((ex[j] * ep[l]).trace())
            rows.append([f"x{j}", f"p{l}", j * W.dx, l * W.dp, ov, abs(ov - 1 / W.n)])
    return ["x_point", "p_point", "x[dx]", "p[dp]", "overlap[1]", "deviation_from_1/n[1]"], rows


EMITTERS = {
    "lightcone-samples": emit_lightcone,
    "bohm-residuals": emit_bohm,
    "quantum-potential-profile": emit_quantum_potential,
    "weyl-points": emit_weyl_points,
}


def cmd_emit(args) -> str:
    header, rows = EMITTERS[args.dataset](args)
    if args.format == "json":
        keys = [h.split("[")[0] for h in header]
        records = [{k: (float(v) if isinstance(v, (float, np.floating)) else v) for k, v in zip(keys, r)}
                   for r in rows]
        return json.dumps({"dataset": args.dataset, "columns": header, "rows": records,
                           "seed": args.seed, "version": __version__}, indent=2) + "\n"
    return _csv_text(header, rows)


# -- argument parsing ---------------------------------------------------------------------

def _positive_int(s: str) -> int:
    v = int(s)
    if v <= 0:
        raise argparse.ArgumentTypeError("must be a positive integer")
    return v


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="cliffproc", description=__doc__.splitlines()[0])
    ap.add_argument("--version", action="version", version=__version__)
    sub = ap.add_subparsers(dest="command", required=True)

    t = sub.add_parser("table", help="print a multiplication table")
    t.add_argument("--algebra", required=True,
                   help="cl(p,q), weyl:n, or one of schrodinger, quaternion, spacetime, "
                        "pauli, dirac, conformal")
    t.add_argument("--generators-only", action="store_true",
                   help="print only generator squares and anticommutation relations")
    t.add_argument("--format", choices=["table", "json", "csv"], default="table")
    t.add_argument("--output", help="write to this path instead of stdout")

    v = sub.add_parser("verify", help="run a verification suite and print a JSON report")
    v.add_argument("--suite", required=True, choices=[*SUITES, "all"])
    v.add_argument("--seed", type=int, default=0)
    v.add_argument("--n", type=_positive_int, default=None,
                   help="order of the clock-and-shift algebra (weyl suite)")
    v.add_argument("--output")

    e = sub.add_parser("emit", help="write a plot-ready dataset")
    e.add_argument("dataset", choices=list(EMITTERS))
    e.add_argument("--format", choices=["csv", "json"], default="csv")
    e.add_argument("--output")
    e.add_argument("--seed", type=int, default=0)
    e.add_argument("--count", type=_positive_int, default=100)
    e.add_argument("--sigma", type=float, default=1.0)
    e.add_argument("--m", type=float, default=1.0)
    e.add_argument("--k", type=float, default=1.0)
    e.add_argument("--h", type=float, default=0.05)
    e.add_argument("--extent", type=float, default=4.0, help="half-width in units of sigma")
    e.add_argument("--levels", type=_positive_int, default=4)
    e.add_argument("--wavefunction", choices=["gaussian", "plane_wave", "all"], default="all")
    e.add_argument("--n", type=_positive_int, default=8)
    e.add_argument("--dx", type=float, default=1.0)
    e.add_argument("--dp", type=float, default=1.0)
    return ap


def _write(text: str, path: str | None):
    if path is None:
        sys.stdout.write(text)
        return
    with open(path, "w", newline="\n") as fh:
        fh.write(text)


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code else EXIT_OK
    code = EXIT_OK
    try:
        if args.command == "table":
            text = cmd_table(args)
        elif args.command == "verify":
            if args.n is not None and not 2 <= args.n <= 64:
                raise UsageError("--n must lie between 2 and 64")
            text, code = cmd_verify(args)
        else:
            if args.sigma <= 0 or args.m <= 0 or args.h <= 0:
                raise UsageError("--sigma, --m and --h must be positive")
            if args.dataset == "weyl-points" and not 2 <= args.n <= 64:
                raise UsageError("--n must lie between 2 and 64")
            text = cmd_emit(args)
    except UsageError as exc:
        print(f"cliffproc: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    try:
        _write(text, args.output)
    except OSError as exc:
        print(f"cliffproc: cannot write output: {exc}", file=sys.stderr)
        return EXIT_IO
    return code


if __name__ == "__main__":
    sys.exit(main())
