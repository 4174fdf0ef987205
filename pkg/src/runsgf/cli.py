"""Command-line interface.

Examples::

    runsgf dist --ell 3 --k 2,2,3 --p 1/6,1/3,1/2 --n 17
    runsgf counts --ell 3 --k 2,2,3 --n 17 --format json
    runsgf gf --ell 2 --k 1,2 --right-end --p 1/3,2/3
    runsgf expect --ell 3 --k 2,2,3 --p 1/6,1/3,1/2 --n 17 --principal
    runsgf verify --max-n 10

Exit codes: 0 success, 1 verification failure, 2 usage error.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .algebra import PolyZ, RationalGF
from .models import (
    DistributionTable,
    PatternSpec,
    ProbModel,
    decimal_str,
    fraction_str,
    parse_fraction,
)
from .patterns import (
    counts_iid_all,
    distributions,
    expected_count,
    expected_count_l3,
    expected_count_l3_iid,
    expected_count_principal,
    pattern_gf,
    pattern_gf_iid,
    recurrence_spec,
    recurrence_spec_iid,
    recurrence_text,
    right_end_gf,
    right_end_gf_iid,
)
from .verify import VerifyConfig, run_verify

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


class UsageError(ValueError):
    pass


@dataclass(frozen=True)
class RunConfig:
    command: str
    spec: PatternSpec
    probs: ProbModel | None
    n_values: tuple[int, ...] = ()
    fmt: str = "text"
    digits: int = 10


# --------------------------------------------------------------------------
# parsing
# --------------------------------------------------------------------------

def _parse_n(text: str) -> tuple[int, ...]:
    if ":" in text:
        lo, hi = (int(t) for t in text.split(":", 1))
        if lo > hi:
            raise UsageError(f"empty n-range {text!r}")
        values = tuple(range(lo, hi + 1))
    else:
        values = (int(text),)
    if any(n < 0 for n in values):
        raise UsageError("n must be non-negative")
    return values


def _parse_probs(text: str | None, ell: int) -> ProbModel | None:
    if text is None:
        return None
    try:
        ps = tuple(parse_fraction(t) for t in text.split(",") if t.strip())
    except (ValueError, ZeroDivisionError) as exc:
        raise UsageError(f"bad probability list {text!r}: {exc}") from None
    if len(ps) != ell:
        raise UsageError(f"expected {ell} probabilities, got {len(ps)}")
    total = sum(ps, Fraction(0))
    if total != 1:
        raise UsageError(f"probabilities must sum to 1, got sum {total}")
    try:
        return ProbModel(ps)
    except ValueError as exc:
        raise UsageError(str(exc)) from None


def build_config(args: argparse.Namespace) -> RunConfig:
    try:
        spec = PatternSpec.parse(args.k, args.ell)
    except ValueError as exc:
        raise UsageError(f"bad thresholds: {exc}") from None
    probs = _parse_probs(getattr(args, "p", None), spec.ell)
    n_values = _parse_n(args.n) if getattr(args, "n", None) is not None else ()
    if args.digits < 1:
        raise UsageError("--digits must be positive")
    return RunConfig(args.command, spec, probs, n_values, args.format, args.digits)


# --------------------------------------------------------------------------
# rendering
# --------------------------------------------------------------------------

def _exact(v, mode: str) -> str:
    return str(int(v)) if mode == "count" else fraction_str(v)


def _decimal(v, mode: str, digits: int) -> str:
    return str(int(v)) if mode == "count" else decimal_str(v, digits)


def table_json(cfg: RunConfig, table: DistributionTable) -> dict:
    return {
        "spec": {"ell": cfg.spec.ell, "k": list(cfg.spec.thresholds)},
        "probs": None if cfg.probs is None else [fraction_str(p) for p in cfg.probs.probs],
        "n": table.n,
        "mode": table.mode,
        "values": [
            {"m": m, "exact": _exact(v, table.mode), "decimal": _decimal(v, table.mode, cfg.digits)}
            for m, v in enumerate(table.values)
        ],
    }


def table_from_json(obj: dict) -> DistributionTable:
    values = [Fraction(v["exact"]) for v in sorted(obj["values"], key=lambda v: v["m"])]
    return DistributionTable(obj["n"], obj["mode"], tuple(values))


def _poly_in_w(values: Sequence[str]) -> str:
    terms = []
    for m, v in enumerate(values):
        if m == 0:
            terms.append(v)
        elif m == 1:
            terms.append(f"{v} w")
        else:
            terms.append(f"{v} w^{m}")
    return " + ".join(terms)


def render_tables(cfg: RunConfig, tables: Sequence[DistributionTable]) -> str:
    if cfg.fmt == "json":
        body = [table_json(cfg, t) for t in tables]
        return json.dumps(body[0] if len(body) == 1 else body, indent=2)
    if cfg.fmt == "csv":
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(["n", "m", "exact", "decimal"])
        for t in tables:
            for m, v in enumerate(t.values):
                writer.writerow([t.n, m, _exact(v, t.mode), _decimal(v, t.mode, cfg.digits)])
        return buf.getvalue().rstrip("\n")
    lines = []
    name = "A" if cfg.probs is None and tables and tables[0].mode == "count" else "F"
    for t in tables:
        decs = [_decimal(v, t.mode, cfg.digits) for v in t.values]
        lines.append(f"{name}_{{{cfg.spec.ell},{t.n}}}(w) = {_poly_in_w(decs)}")
        if t.mode == "probability":
            for m, v in enumerate(t.values):
                lines.append(f"  m={m}: {fraction_str(v)}")
    return "\n".join(lines)


def poly_coefficients(p: PolyZ) -> list[list[str]]:
    """Coefficient lists by ascending z power, each by ascending mark power."""
    return [[str(c) for c in coef.coeffs] for coef in p.coeffs]


def gf_json(f: RationalGF) -> dict:
    return {
        "var": f.var,
        "numerator": poly_coefficients(f.numerator),
        "denominator": poly_coefficients(f.denominator),
    }


# --------------------------------------------------------------------------
# commands
# --------------------------------------------------------------------------

def cmd_dist(cfg: RunConfig) -> tuple[int, str]:
    if not cfg.n_values:
        raise UsageError("--n is required")
    probs = cfg.probs or ProbModel.uniform(cfg.spec.ell)
    cfg = RunConfig(cfg.command, cfg.spec, probs, cfg.n_values, cfg.fmt, cfg.digits)
    all_tables = distributions(cfg.spec, probs, max(cfg.n_values))
    tables = [all_tables[n] for n in cfg.n_values]
    for t in tables:
        if t.total != 1:
            return EXIT_FAIL, f"internal error: probabilities at n={t.n} sum to {t.total}"
    return EXIT_OK, render_tables(cfg, tables)


def cmd_counts(cfg: RunConfig) -> tuple[int, str]:
    if not cfg.n_values:
        raise UsageError("--n is required")
    if cfg.probs is not None:
        raise UsageError("counts is the i.i.d. mode; omit --p")
    all_tables = counts_iid_all(cfg.spec, max(cfg.n_values))  # checks sum == ell^n
    return EXIT_OK, render_tables(cfg, [all_tables[n] for n in cfg.n_values])


def _recurrence_block(cfg: RunConfig) -> dict:
    rec = recurrence_spec(cfg.spec, cfg.probs) if cfg.probs else recurrence_spec_iid(cfg.spec)
    return {
        "symbolic": recurrence_text(cfg.spec.ell),
        "coefficients": [str(a) for a in rec.coeffs],
        "pattern_coeff": str(rec.pattern_coeff),
        "lag": rec.lag,
        "counts": cfg.probs is None,
    }


def cmd_gf(cfg: RunConfig, right_end: bool = False) -> tuple[int, str]:
    if cfg.probs is None:
        gfs = {"G": pattern_gf_iid(cfg.spec)}
        if right_end:
            h = right_end_gf_iid(cfg.spec)
            ell = cfg.spec.ell
            everything = RationalGF.from_univariate((0, ell), (1, -ell))
            gfs.update({"H": h, "H_complement": everything - h})
    else:
        gfs = {"G": pattern_gf(cfg.spec, cfg.probs)}
        if right_end:
            h, hc = right_end_gf(cfg.spec, cfg.probs)
            gfs.update({"H": h, "H_complement": hc})
    rec = _recurrence_block(cfg)
    if cfg.fmt == "json":
        out = {
            "spec": {"ell": cfg.spec.ell, "k": list(cfg.spec.thresholds)},
            "probs": None if cfg.probs is None else [fraction_str(p) for p in cfg.probs.probs],
            "gf": {name: gf_json(f) for name, f in gfs.items()},
            "recurrence": rec,
        }
        return EXIT_OK, json.dumps(out, indent=2)
    lines = []
    for name, f in gfs.items():
        lines.append(f"{name} numerator:   {poly_coefficients(f.numerator)}")
        lines.append(f"{name} denominator: {poly_coefficients(f.denominator)}")
    lines.append(rec["symbolic"])
    lines.append("a = [" + ", ".join(rec["coefficients"]) + "]")
    lines.append(f"pattern coefficient = {rec['pattern_coeff']}, lag k = {rec['lag']}")
    return EXIT_OK, "\n".join(lines)


def cmd_expect(cfg: RunConfig, principal: bool = False) -> tuple[int, str]:
    if not cfg.n_values:
        raise UsageError("--n is required")
    probs = cfg.probs or ProbModel.uniform(cfg.spec.ell)
    rows = []
    for n in cfg.n_values:
        mean = expected_count(cfg.spec, probs, n)
        row = {"n": n, "exact": fraction_str(mean), "decimal": decimal_str(mean, cfg.digits)}
        if cfg.spec.ell == 3 and n >= cfg.spec.k_total:
            closed = (
                expected_count_l3_iid(cfg.spec, n)
                if cfg.probs is None
                else expected_count_l3(cfg.spec, probs, n)
            )
            row["closed_form_agrees"] = closed == mean
        if principal:
            if n < cfg.spec.k_total:
                row["principal"] = None
            else:
                pp = expected_count_principal(cfg.spec, probs, n)
                row["principal"] = {"exact": fraction_str(pp), "decimal": decimal_str(pp, cfg.digits)}
        rows.append(row)
    if cfg.fmt == "json":
        return EXIT_OK, json.dumps(rows[0] if len(rows) == 1 else rows, indent=2)
    if cfg.fmt == "csv":
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(["n", "exact", "decimal", "principal_exact"])
        for r in rows:
            pp = r.get("principal")
            writer.writerow([r["n"], r["exact"], r["decimal"], pp["exact"] if pp else ""])
        return EXIT_OK, buf.getvalue().rstrip("\n")
    lines = []
    for r in rows:
        line = f"E[X^({r['n']})] = {r['exact']} ~ {r['decimal']}"
        if r.get("principal"):
            line += f"; principal part {r['principal']['exact']} ~ {r['principal']['decimal']}"
        if r.get("closed_form_agrees") is False:
            line += "; WARNING: three-state closed form disagrees"
        lines.append(line)
    return EXIT_OK, "\n".join(lines)


def cmd_verify(args: argparse.Namespace) -> tuple[int, str]:
    try:
        ells = tuple(int(t) for t in args.ells.split(","))
    except ValueError:
        raise UsageError(f"bad --ells {args.ells!r}") from None
    if any(e < 2 for e in ells) or args.max_k < 1 or args.max_n < 0:
        raise UsageError("need ells >= 2, max-k >= 1, max-n >= 0")
    cfg = VerifyConfig(
        ells=ells,
        max_k=args.max_k,
        max_n=args.max_n,
        probs_per_spec=args.probs_per_spec,
        seed=args.seed,
        engine=not args.no_engine,
        golden=not args.no_golden,
        perturb=args.perturb,
    )
    results = run_verify(cfg)
    lines = [r.line() for r in results]
    ok = all(r.passed for r in results)
    lines.append("ALL CHECKS PASSED" if ok else "VERIFICATION FAILED")
    return (EXIT_OK if ok else EXIT_FAIL), "\n".join(lines)


# --------------------------------------------------------------------------
# entry point
# --------------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="runsgf", description="Exact distributions of (k_1,...,k_ell) run patterns."
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p: argparse.ArgumentParser, need_n: bool, probs: bool = True) -> None:
        p.add_argument("--ell", type=int, required=True, help="number of states")
        p.add_argument("--k", required=True, help="thresholds, e.g. 2,2,3")
        if probs:
            p.add_argument("--p", help="probabilities as a/b or terminating decimals; omit for i.i.d.")
        if need_n:
            p.add_argument("--n", required=True, help="length, or an inclusive range lo:hi")
        p.add_argument("--format", choices=("text", "json", "csv"), default="text")
        p.add_argument("--digits", type=int, default=10, help="significant digits of decimals")

    common(sub.add_parser("dist", help="probability table P(X=m)"), need_n=True)
    common(sub.add_parser("counts", help="i.i.d. sequence counts A(m)"), need_n=True, probs=False)
    gf = sub.add_parser("gf", help="generating function and recurrence")
    common(gf, need_n=False)
    gf.add_argument("--right-end", action="store_true", help="also print H and its complement")
    ex = sub.add_parser("expect", help="mean number of patterns")
    common(ex, need_n=True)
    ex.add_argument("--principal", action="store_true", help="also print the linear part")

    ver = sub.add_parser("verify", help="run the cross-check suite")
    ver.add_argument("--ells", default="2,3")
    ver.add_argument("--max-k", type=int, default=3)
    ver.add_argument("--max-n", type=int, default=12)
    ver.add_argument("--probs-per-spec", type=int, default=3)
    ver.add_argument("--seed", type=int, default=2021)
    ver.add_argument("--no-engine", action="store_true", help="skip transfer-engine checks")
    ver.add_argument("--no-golden", action="store_true", help="skip the golden n=17 tables")
    ver.add_argument("--perturb", action="store_true", help=argparse.SUPPRESS)
    return parser


def run(argv: Sequence[str] | None = None) -> tuple[int, str]:
    args = build_parser().parse_args(argv)
    if args.command == "verify":
        return cmd_verify(args)
    cfg = build_config(args)
    if args.command == "dist":
        return cmd_dist(cfg)
    if args.command == "counts":
        return cmd_counts(cfg)
    if args.command == "gf":
        return cmd_gf(cfg, right_end=args.right_end)
    return cmd_expect(cfg, principal=args.principal)


def main(argv: Sequence[str] | None = None) -> int:
    try:
        code, text = run(argv)
    except UsageError as exc:
        print(f"runsgf: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    print(text)
    return code


if __name__ == "__main__":
    raise SystemExit(main())
