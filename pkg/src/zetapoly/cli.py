"""Command-line interface.

Subcommands: rv-forward, rv-inverse, check, thm2, delta, wspace,
lvalues, roots.  Global flags: --prec <bits>, --tol <dec>, --kmax <int>,
--format json|text, --out <path>.  Exit codes form a stable contract:
0 = all checks pass, 1 = a mathematical check failed (or precision was
unattainable), 2 = input or usage error.  The coefficient cache honors
the ZETAPOLY_CACHE_DIR environment variable.
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass

import mpmath

from zetapoly.delta import run_delta
from zetapoly.errors import InputError, PrecisionError, ZetapolyError
from zetapoly.lvalues import NewformData, completed_l, delta_newform, l_value
from zetapoly.polyspace import (
    PolyX,
    es_residuals,
    fricke_residual,
    rescaled_es1_residual,
    rescaled_es2_residual,
    wspace_basis,
)
from zetapoly.rv import ZetaPoly, rv_forward, rv_inverse
from zetapoly.zeta import as_tolerance, rh_check, roots, thm2_residual

EXIT_OK = 0
EXIT_CHECK_FAILED = 1
EXIT_INPUT = 2


@dataclass(frozen=True)
class RunConfig:
    """Global run options shared by all subcommands."""

    precision: int = 128
    tol: str = "1e-10"
    k_max: int = 400
    output: str | None = None
    format: str = "text"

    def __post_init__(self):
        if self.precision < 64:
            raise InputError(f"--prec must be at least 64 bits, got {self.precision}")
        as_tolerance(self.tol)
        if self.k_max < 1:
            raise InputError(f"--kmax must be positive, got {self.k_max}")
        if self.format not in ("json", "text"):
            raise InputError(f"--format must be json or text, got {self.format!r}")


def _read_json(path: str) -> dict:
    try:
        with open(path) as fh:
            return json.load(fh)
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise InputError(f"{path} is not valid JSON: {exc}") from exc


def _read_poly_x(path: str) -> PolyX:
    return PolyX.from_dict(_read_json(path))


def _read_zeta(path: str) -> ZetaPoly:
    return ZetaPoly.from_dict(_read_json(path))


def _read_z_or_r(path: str) -> ZetaPoly:
    """Accept either a zeta-polynomial (variable "s") or a period-style
    polynomial, transforming the latter."""
    data = _read_json(path)
    if data.get("variable") == "s":
        return ZetaPoly.from_dict(data)
    return rv_forward(PolyX.from_dict(data))


def _emit(cfg: RunConfig, payload, text_lines) -> None:
    if cfg.format == "json":
        out = json.dumps(payload, indent=2) + "\n"
    else:
        out = "\n".join(text_lines) + "\n"
    if cfg.output:
        with open(cfg.output, "w") as fh:
            fh.write(out)
    else:
        sys.stdout.write(out)


def _emit_poly(cfg: RunConfig, payload: dict) -> None:
    # polynomial outputs are always the documented JSON file format
    out = json.dumps(payload, indent=1) + "\n"
    if cfg.output:
        with open(cfg.output, "w") as fh:
            fh.write(out)
    else:
        sys.stdout.write(out)


# ---------------------------------------------------------------------
# Subcommand implementations
# ---------------------------------------------------------------------


def _cmd_rv_forward(cfg: RunConfig, args) -> int:
    Z = rv_forward(_read_poly_x(args.input))
    _emit_poly(cfg, Z.to_dict())
    return EXIT_OK


def _cmd_rv_inverse(cfg: RunConfig, args) -> int:
    R = rv_inverse(_read_zeta(args.input))
    _emit_poly(cfg, R.to_dict())
    return EXIT_OK


def _cmd_check(cfg: RunConfig, args) -> int:
    relation = args.relation
    poly = _read_poly_x(args.input)
    if relation == "fricke":
        if args.eps is None:
            raise InputError("relation 'fricke' requires --eps +1 or -1")
        residuals = [fricke_residual(poly, args.eps)]
    elif relation == "res1":
        residuals = [rescaled_es1_residual(poly)]
    elif relation == "res2":
        residuals = [rescaled_es2_residual(poly)]
    elif relation == "es1":
        residuals = [es_residuals(poly)[0]]
    else:
        residuals = [es_residuals(poly)[1]]
    holds = all(r.is_zero() for r in residuals)
    payload = {
        "relation": relation,
        "holds": holds,
        "residual": [list(c.to_str_pair()) for c in residuals[0].coeffs],
    }
    lines = [
        f"relation {relation}: {'holds' if holds else 'FAILS'}",
        "residual: " + " ".join(str(c) for c in residuals[0].coeffs),
    ]
    _emit(cfg, payload, lines)
    return EXIT_OK if holds else EXIT_CHECK_FAILED


def _parse_n_list(spec: str) -> list[int]:
    try:
        values = [int(part) for part in spec.split(",") if part.strip()]
    except ValueError as exc:
        raise InputError(f"bad --n list {spec!r}") from exc
    if not values or any(v < 1 for v in values):
        raise InputError(f"--n must list positive integers, got {spec!r}")
    return values


def _cmd_thm2(cfg: RunConfig, args) -> int:
    Z = _read_z_or_r(args.input)
    tol = as_tolerance(cfg.tol)
    reports = [
        thm2_residual(Z, n, tol=tol, k_max=cfg.k_max) for n in _parse_n_list(args.n)
    ]
    all_ok = all(rep.converged and rep.total_below(tol) for rep in reports)
    payload = {"passed": all_ok, "reports": [rep.to_dict() for rep in reports]}
    lines = []
    for rep in reports:
        status = "ok" if (rep.converged and rep.total_below(tol)) else "FAIL"
        lines.append(
            f"n={rep.n}: |total|={mpmath.nstr(rep.abs_total, 6)} "
            f"k_stop={rep.k_stop} converged={rep.converged} "
            f"residual_bound={mpmath.nstr(rep.residual_bound, 6)} [{status}]"
        )
    lines.append(f"overall: {'pass' if all_ok else 'FAIL'}")
    _emit(cfg, payload, lines)
    return EXIT_OK if all_ok else EXIT_CHECK_FAILED


def _cmd_delta(cfg: RunConfig, args) -> int:
    report = run_delta(cfg.precision, root_tol="1e-8")
    d = report.to_dict()
    lines = [
        f"precision: {cfg.precision} bits",
        f"completed-L symmetry max deviation: {d['lambda_symmetry_max']}",
        f"even scale factor: {d['scale_even']} (reference 0.114379, ok={d['scale_even_ok']})",
        f"odd scale factor:  {d['scale_odd']} (reference 0.00926927, ok={d['scale_odd_ok']})",
        f"coefficient pattern max relative deviation: {d['pattern_max_rel_dev']}",
        "zeta-polynomial coefficients vs reference:",
    ]
    for entry in d["z_coeffs"]:
        lines.append(
            f"  s^{entry['power']}: computed {entry['computed']} "
            f"reference {entry['reference']} ok={entry['ok']}"
        )
    lines += [
        f"exact transform matches golden zeta data: {d['exact_z_match']}",
        f"golden polynomials satisfy all relations: {d['golden_relations_ok']}",
        f"zeta roots on critical line: {d['z_roots_critical_line']['passed']} "
        f"(max dev {d['z_roots_critical_line']['max_deviation']})",
        f"period roots on unit circle: {d['r_roots_unit_circle']['passed']} "
        f"(max dev {d['r_roots_unit_circle']['max_deviation']})",
        f"odd part fails unit circle with deviation: {d['r_minus_circle_deviation']}",
        f"overall: {'pass' if d['passed'] else 'FAIL'}",
    ]
    _emit(cfg, d, lines)
    return EXIT_OK if report.passed else EXIT_CHECK_FAILED


def _cmd_wspace(cfg: RunConfig, args) -> int:
    if args.w < 2 or args.w % 2:
        raise InputError(f"w must be an even integer >= 2, got {args.w}")
    basis, dim_plus, dim_minus = wspace_basis(args.w)
    payload = {
        "w": args.w,
        "dim": len(basis),
        "dim_plus": dim_plus,
        "dim_minus": dim_minus,
        "basis": [[list(c.to_str_pair()) for c in b.coeffs] for b in basis],
    }
    lines = [f"w={args.w}: dim W = {len(basis)}, dim W+ = {dim_plus}, dim W- = {dim_minus}"]
    for b in basis:
        lines.append("  basis: " + " ".join(str(c) for c in b.coeffs))
    _emit(cfg, payload, lines)
    return EXIT_OK


def _load_newform(cfg: RunConfig, args) -> NewformData:
    if args.input:
        return NewformData.from_dict(_read_json(args.input))
    return delta_newform(cfg.precision)


def _cmd_lvalues(cfg: RunConfig, args) -> int:
    nf = _load_newform(cfg, args)
    digits = int(cfg.precision * 0.3010) + 3
    values = []
    for s in range(1, nf.weight):
        lam = completed_l(nf, s, cfg.precision)
        lv = l_value(nf, s, cfg.precision)
        values.append((s, lam, lv))
    payload = {
        "label": nf.label,
        "level": nf.level,
        "weight": nf.weight,
        "precision": cfg.precision,
        "values": [
            {"s": s, "completed": mpmath.nstr(lam, digits), "l": mpmath.nstr(lv, digits)}
            for s, lam, lv in values
        ],
    }
    lines = [f"newform {nf.label or '(unnamed)'}, level {nf.level}, weight {nf.weight}"]
    for s, lam, lv in values:
        lines.append(f"  s={s}: Lambda={mpmath.nstr(lam, digits)} L={mpmath.nstr(lv, digits)}")
    _emit(cfg, payload, lines)
    return EXIT_OK


def _cmd_roots(cfg: RunConfig, args) -> int:
    data = _read_json(args.input)
    poly = ZetaPoly.from_dict(data) if data.get("variable") == "s" else PolyX.from_dict(data)
    if args.mode:
        report = rh_check(poly, args.mode, tol=cfg.tol, precision=cfg.precision)
        payload = report.to_dict()
        lines = [
            f"mode {args.mode}: passed={report.passed} "
            f"max deviation {mpmath.nstr(report.max_deviation, 8)}"
        ]
        for z in report.roots:
            lines.append(f"  {mpmath.nstr(z, 20)}")
        _emit(cfg, payload, lines)
        return EXIT_OK if report.passed else EXIT_CHECK_FAILED
    rts = roots(poly, precision=cfg.precision)
    payload = {
        "roots": [[mpmath.nstr(mpmath.re(z), 20), mpmath.nstr(mpmath.im(z), 20)] for z in rts]
    }
    lines = [mpmath.nstr(z, 20) for z in rts]
    _emit(cfg, payload, lines)
    return EXIT_OK


# ---------------------------------------------------------------------
# Parser
# ---------------------------------------------------------------------


def _add_global_flags(parser: argparse.ArgumentParser, suppress: bool) -> None:
    # Subparsers carry SUPPRESS defaults so flags work on either side of
    # the subcommand without clobbering values parsed at the top level.
    d = argparse.SUPPRESS if suppress else None
    parser.add_argument(
        "--prec", type=int, help="working precision in bits (>= 64)",
        **({"default": d} if suppress else {"default": 128}),
    )
    parser.add_argument(
        "--tol", help="decimal tolerance for numeric checks",
        **({"default": d} if suppress else {"default": "1e-10"}),
    )
    parser.add_argument(
        "--kmax", type=int, help="series truncation cap",
        **({"default": d} if suppress else {"default": 400}),
    )
    parser.add_argument(
        "--format", choices=("json", "text"),
        **({"default": d} if suppress else {"default": "text"}),
    )
    parser.add_argument(
        "--out", help="write output to this path instead of stdout",
        **({"default": d} if suppress else {"default": None}),
    )


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="zetapoly",
        description="Zeta-polynomials from period polynomials: transforms, "
        "relation checks, identity verification, and the end-to-end "
        "weight-12 level-1 reproduction.",
    )
    _add_global_flags(parser, suppress=False)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("rv-forward", help="transform a period-style polynomial file to a zeta-polynomial")
    p.add_argument("input")
    _add_global_flags(p, suppress=True)
    p.set_defaults(func=_cmd_rv_forward)

    p = sub.add_parser("rv-inverse", help="invert a zeta-polynomial file back to the period side")
    p.add_argument("input")
    _add_global_flags(p, suppress=True)
    p.set_defaults(func=_cmd_rv_inverse)

    p = sub.add_parser("check", help="check a relation on a polynomial file")
    p.add_argument("relation", choices=("fricke", "res1", "res2", "es1", "es2"))
    p.add_argument("input")
    p.add_argument("--eps", type=int, choices=(1, -1), default=None, help="Fricke eigenvalue")
    _add_global_flags(p, suppress=True)
    p.set_defaults(func=_cmd_check)

    p = sub.add_parser("thm2", help="evaluate the convergent series identity at the given n values")
    p.add_argument("input", help="zeta-polynomial file, or period-style file to transform first")
    p.add_argument("--n", default="1", help="comma-separated positive integers")
    _add_global_flags(p, suppress=True)
    p.set_defaults(func=_cmd_thm2)

    p = sub.add_parser("delta", help="reproduce the weight-12 level-1 example end to end")
    _add_global_flags(p, suppress=True)
    p.set_defaults(func=_cmd_delta)

    p = sub.add_parser("wspace", help="basis and parity dimensions of the relation nullspace")
    p.add_argument("w", type=int)
    _add_global_flags(p, suppress=True)
    p.set_defaults(func=_cmd_wspace)

    p = sub.add_parser("lvalues", help="critical completed-L and L-values of a newform")
    p.add_argument("input", nargs="?", default=None, help="newform JSON file (default: built-in weight-12 level-1)")
    _add_global_flags(p, suppress=True)
    p.set_defaults(func=_cmd_lvalues)

    p = sub.add_parser("roots", help="roots of a polynomial file, optionally with a line/circle check")
    p.add_argument("input")
    p.add_argument("--mode", choices=("critical_line", "unit_circle"), default=None)
    _add_global_flags(p, suppress=True)
    p.set_defaults(func=_cmd_roots)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        cfg = RunConfig(
            precision=args.prec,
            tol=args.tol,
            k_max=args.kmax,
            output=args.out,
            format=args.format,
        )
        return args.func(cfg, args)
    except InputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except PrecisionError as exc:
        print(f"precision error: {exc}", file=sys.stderr)
        return EXIT_CHECK_FAILED
    except ZetapolyError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CHECK_FAILED
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
