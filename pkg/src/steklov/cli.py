"""Command-line interface.

Subcommands: bound, curve, classify, sweep, diagnosis, verify.  Exit codes:
0 success, 2 usage error, 3 arithmetic overflow, 4 verification discrepancy
(a scan came back empty for a property expected to hold; suppress with
--expect-fail when the failure is the expected outcome).

Configuration precedence: explicit flags > config file (key=value lines) >
built-in defaults.  All parallelism lives in sweep/curve evaluation through
a worker pool sized by --workers; output writing is single-threaded and
ordered, so fixed flags give byte-identical files at any worker count.
"""

from __future__ import annotations

import argparse
import multiprocessing
import os
import sys
from fractions import Fraction
from typing import Optional

import numpy as np

from . import lemmas, reporting
from .critical import ScanConfig, classify, diagnosis_sequence, sweep
from .extension import bound_curve, candidate_multiplicities, sharp_bound
from .spectra import (
    AnnulusGeometry,
    Family,
    multiplicity,
    steklov_dirichlet,
    steklov_neumann,
)

_CONFIG_KEYS = {
    "lmin": float,
    "lmax": float,
    "samples": int,
    "epsilon": float,
    "workers": str,
    "format": str,
}


def _load_config(path: str) -> dict:
    opts: dict = {}
    with open(path, encoding="utf-8") as fh:
        for line_no, raw in enumerate(fh, start=1):
            line = raw.strip()
            if not line or line.startswith("#"):
                continue
            if "=" not in line:
                raise ValueError(f"{path}:{line_no}: expected key=value, got {line!r}")
            key, value = (part.strip() for part in line.split("=", 1))
            if key not in _CONFIG_KEYS:
                raise ValueError(f"{path}:{line_no}: unknown config key {key!r}")
            opts[key] = _CONFIG_KEYS[key](value)
    return opts


def _resolve(args, key: str, default):
    value = getattr(args, key, None)
    if value is not None:
        return value
    return getattr(args, "_config", {}).get(key, default)


def _resolve_workers(args) -> int:
    raw = _resolve(args, "workers", "1")
    if raw == "auto":
        return os.cpu_count() or 1
    count = int(raw)
    if count < 1:
        raise ValueError(f"worker count must be >= 1, got {count}")
    return count


def _scan_config(args) -> ScanConfig:
    config = ScanConfig(
        l_min=float(_resolve(args, "lmin", 1e-3)),
        l_max=float(_resolve(args, "lmax", 1e3)),
        grid_points=int(_resolve(args, "samples", 512)),
        epsilon=float(_resolve(args, "epsilon", 1e-9)),
    )
    config.validate()
    return config


def _emit(text: str, out: Optional[str]) -> None:
    if out in (None, "-"):
        sys.stdout.write(text)
    else:
        with open(out, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)


def _format_for(args, default: str, allow_svg: bool = False) -> str:
    fmt = _resolve(args, "format", default)
    choices = {"text", "csv", "json"} | ({"svg"} if allow_svg else set())
    if fmt not in choices:
        raise ValueError(f"unsupported format {fmt!r} (choose from {sorted(choices)})")
    return fmt


# ---------------------------------------------------------------------------
# subcommand handlers
# ---------------------------------------------------------------------------


def _cmd_bound(args) -> int:
    fmt = _format_for(args, "text")
    geom = AnnulusGeometry(args.length)
    result = sharp_bound(args.n, args.k, geom)
    if fmt == "csv":
        text = reporting.bound_csv(result)
    elif fmt == "json":
        text = reporting.dump_json(
            reporting.bound_json(args.n, args.k, args.length, result)
        )
    else:
        won = result.achieved_by
        lines = [
            f"B(n={args.n}, k={args.k}, L={reporting.fmt(args.length)}) = "
            f"{reporting.fmt(result.bound)}",
            f"  l0 = {result.l0}   l1 = {result.l1}",
            f"  achieved by {won.family.value}_{won.harmonic_index} "
            f"({'Neumann' if won.family is Family.NEUMANN else 'Dirichlet'}), "
            f"multiplicity {won.multiplicity}",
            "  candidates (pos, value, family, index, multiplicity, cumulative):",
        ]
        cum = 0
        for pos, cand in enumerate(result.candidates):
            cum += cand.multiplicity
            marker = " <- bound" if pos == result.l1 else ""
            lines.append(
                f"    {pos:3d}  {reporting.fmt(cand.value):<22} "
                f"{cand.family.value}_{cand.harmonic_index:<4d} "
                f"m={cand.multiplicity:<8d} cum={cum}{marker}"
            )
        text = "\n".join(lines) + "\n"
    _emit(text, args.out)
    return 0


def _mixed_branches(n: int, k: int, grid) -> dict:
    l0, _ = candidate_multiplicities(n, k)
    geoms = [AnnulusGeometry(L) for L in grid]
    return {
        Family.DIRICHLET: [
            (j, [steklov_dirichlet(n, j, g) for g in geoms]) for j in range(l0 + 1)
        ],
        Family.NEUMANN: [
            (j, [steklov_neumann(n, j, g) for g in geoms]) for j in range(1, l0 + 2)
        ],
    }


def _cmd_curve(args) -> int:
    fmt = _format_for(args, "csv", allow_svg=True)
    l_lo = float(_resolve(args, "lmin", 0.01))
    l_hi = float(_resolve(args, "lmax", 20.0))
    samples = int(_resolve(args, "samples", 500))
    if not (0.0 < l_lo < l_hi) or samples < 1:
        raise ValueError(
            f"curve needs 0 < lmin < lmax and samples >= 1, got [{l_lo}, {l_hi}], {samples}"
        )
    grid = np.linspace(l_lo, l_hi, samples)

    workers = _resolve_workers(args)
    if workers > 1:
        with multiprocessing.Pool(workers) as pool:
            rows = bound_curve(args.n, args.k, grid, map_fn=pool.map)
    else:
        rows = bound_curve(args.n, args.k, grid)

    if fmt == "svg":
        mixed = _mixed_branches(args.n, args.k, grid) if args.with_mixed else None
        annotation = classify(args.n, args.k, _scan_config_defaults())
        text = reporting.render_curve_svg(args.n, args.k, rows, mixed, annotation)
    elif fmt == "json":
        text = reporting.dump_json(reporting.curve_json(args.n, args.k, rows))
    else:  # csv and text coincide for curves
        text = reporting.curve_csv(rows)
    _emit(text, args.out)
    return 0


def _scan_config_defaults() -> ScanConfig:
    return ScanConfig()


def _cmd_classify(args) -> int:
    fmt = _format_for(args, "text")
    report = classify(args.n, args.k, _scan_config(args))
    if fmt == "csv":
        text = reporting.classify_csv(report)
    elif fmt == "json":
        text = reporting.dump_json(reporting.classify_json(report))
    else:
        lines = [
            f"classify(n={report.n}, k={report.k}): {report.verdict.value}",
            f"  supremum estimate = {reporting.fmt(report.supremum_estimate)}",
            f"  asymptotic limit  = {reporting.fmt(report.asymptotic_limit)}",
            f"  scan horizon = {reporting.fmt(report.scan_horizon)}   "
            f"samples = {report.samples_used}",
        ]
        if report.witness_length is not None:
            lines.insert(1, f"  witness length    = {reporting.fmt(report.witness_length)}")
        text = "\n".join(lines) + "\n"
    _emit(text, args.out)
    return 0


def _read_resume_rows(path: str, n: int) -> tuple[list[str], set[tuple[int, int]]]:
    """Completed CSV rows from an earlier sweep run, keyed by (i, k).

    Rows whose k does not match the diagnosis value of i for this n are a
    sign the file belongs to a different dimension: rejected outright.
    """
    with open(path, encoding="utf-8") as fh:
        lines = [line.rstrip("\n") for line in fh if line.strip()]
    if not lines or lines[0] != reporting.SWEEP_CSV_HEADER:
        raise ValueError(f"{path}: not a sweep CSV (bad header)")
    rows = []
    done: set[tuple[int, int]] = set()
    for line in lines[1:]:
        fields = line.split(",")
        i, k, cover_end = int(fields[0]), int(fields[1]), int(fields[2])
        k_i = diagnosis_sequence(n, i)[i - 1]
        block_end = k_i + 2 * multiplicity(n, i) - 1
        block_row = k == k_i and cover_end == block_end
        per_k_row = k_i <= k <= block_end and cover_end == k
        if not (block_row or per_k_row):
            raise ValueError(
                f"{path}: row (i={i}, k={k}) does not belong to dimension n={n}"
            )
        rows.append(line)
        done.add((i, k))
    return rows, done


def _cmd_sweep(args) -> int:
    fmt = _format_for(args, "text")
    if args.i_from is None or args.i_to is None:
        raise ValueError("sweep requires --from and --to diagnosis indices")
    config = _scan_config(args)
    workers = _resolve_workers(args)

    old_rows: list[str] = []
    skip: set[tuple[int, int]] = set()
    if args.resume:
        if fmt != "csv" or args.out in (None, "-"):
            raise ValueError("--resume needs --format csv and --out FILE")
        if os.path.exists(args.out):
            old_rows, skip = _read_resume_rows(args.out, args.n)

    if workers > 1:
        with multiprocessing.Pool(workers) as pool:
            report = sweep(
                args.n,
                args.i_from,
                args.i_to,
                config,
                map_fn=pool.map,
                per_k=args.per_k,
                skip=skip,
            )
    else:
        report = sweep(
            args.n, args.i_from, args.i_to, config, per_k=args.per_k, skip=skip
        )

    if fmt == "csv":
        new_lines = reporting.sweep_csv(report).splitlines()
        merged = sorted(
            old_rows + new_lines[1:],
            key=lambda row: (int(row.split(",")[0]), int(row.split(",")[1])),
        )
        text = "\n".join([reporting.SWEEP_CSV_HEADER] + merged) + "\n"
    elif fmt == "json":
        text = reporting.dump_json(reporting.sweep_json(report))
    else:
        lines = [f"sweep(n={report.n}) over diagnosis indices:"]
        for e in report.entries:
            r = e.report
            witness = (
                f" at L={reporting.fmt(r.witness_length)}"
                if r.witness_length is not None
                else ""
            )
            lines.append(
                f"  i={e.i:<4d} k={e.k:<8d} covers..{e.k_cover_end:<8d} "
                f"{r.verdict.value}{witness}"
            )
        text = "\n".join(lines) + "\n"
    _emit(text, args.out)
    return 0


def _cmd_diagnosis(args) -> int:
    fmt = _format_for(args, "text")
    values = diagnosis_sequence(args.n, args.count)
    if fmt == "csv":
        text = reporting.diagnosis_csv(values)
    elif fmt == "json":
        text = reporting.dump_json(reporting.diagnosis_json(args.n, values))
    else:
        text = (
            f"diagnosis indices for n={args.n}: "
            + ", ".join(str(v) for v in values)
            + "\n"
        )
    _emit(text, args.out)
    return 0


def _cmd_verify(args) -> int:
    fmt = _format_for(args, "text")
    lemma = args.lemma
    discrepancy = False

    if lemma == "c0":
        res = lemmas.solve_c0(args.tolerance)
        doc = {
            "lemma": "c0",
            "root": res.root,
            "residual": res.residual,
            "iterations": res.iterations,
            "bracket": list(res.bracket),
        }
        text_lines = [
            f"c0 = {reporting.fmt(res.root)}",
            f"  residual = {res.residual:.3e}   iterations = {res.iterations}",
        ]
        csv_text = (
            "root,residual,iterations,bracket_lo,bracket_hi\n"
            f"{reporting.fmt(res.root)},{res.residual:.17g},{res.iterations},"
            f"{reporting.fmt(res.bracket[0])},{reporting.fmt(res.bracket[1])}\n"
        )
    elif lemma == "crossing":
        if args.kappa is None:
            raise ValueError("verify --lemma crossing requires --kappa")
        res = lemmas.crossing_b_kappa(args.n, args.kappa)
        doc = {
            "lemma": "crossing",
            "n": args.n,
            "kappa": res.kappa,
            "crossing_value": res.crossing_value,
            "crossing_length": res.crossing_length,
        }
        text_lines = [
            f"b_{res.kappa} = {reporting.fmt(res.crossing_value)} "
            f"at L = {reporting.fmt(res.crossing_length)} (n={args.n})"
        ]
        csv_text = (
            "kappa,crossing_value,crossing_length\n"
            f"{res.kappa},{reporting.fmt(res.crossing_value)},"
            f"{reporting.fmt(res.crossing_length)}\n"
        )
    elif lemma == "growth":
        c = float(args.c if args.c is not None else 0.8)
        lo = args.i_from if args.i_from is not None else 1
        hi = args.i_to if args.i_to is not None else 500
        onset = lemmas.verify_lemma_c_growth(args.n, c, range(lo, hi + 1))
        discrepancy = onset is None
        doc = {
            "lemma": "growth",
            "n": args.n,
            "c": c,
            "kappa_min": lo,
            "kappa_max": hi,
            "onset": onset,
        }
        text_lines = [
            f"b_kappa >= {c}*kappa holds from kappa = {onset} "
            f"through {hi} (n={args.n})"
            if onset is not None
            else f"b_kappa >= {c}*kappa fails at the top of 1..{hi} (n={args.n})"
        ]
        csv_text = (
            "c,kappa_min,kappa_max,onset\n"
            f"{c},{lo},{hi},{'' if onset is None else onset}\n"
        )
    elif lemma == "multiplicity":
        c_raw = args.c if args.c is not None else "0.83"
        lo = args.i_from if args.i_from is not None else 1
        hi = args.i_to if args.i_to is not None else 10_000
        onset = lemmas.verify_multiplicity_inequality(
            args.n, Fraction(str(c_raw)), range(lo, hi + 1)
        )
        discrepancy = onset is None
        doc = {
            "lemma": "multiplicity",
            "n": args.n,
            "c": str(c_raw),
            "kappa_min": lo,
            "kappa_max": hi,
            "onset": onset,
        }
        text_lines = [
            f"multiplicity-sum inequality (c={c_raw}) holds from kappa = {onset} "
            f"through {hi} (n={args.n})"
            if onset is not None
            else f"multiplicity-sum inequality (c={c_raw}) fails at the top of "
            f"{lo}..{hi} (n={args.n})"
        ]
        csv_text = (
            "c,kappa_min,kappa_max,onset\n"
            f"{c_raw},{lo},{hi},{'' if onset is None else onset}\n"
        )
    elif lemma == "final":
        lo = args.i_from if args.i_from is not None else 195
        hi = args.i_to if args.i_to is not None else 200
        report = lemmas.verify_final_lemma(args.n, range(lo, hi + 1), _scan_config(args))
        discrepancy = report.first_passing_kappa is None
        doc = {
            "lemma": "final",
            "n": report.n,
            "first_passing_kappa": report.first_passing_kappa,
            "checks": [
                {
                    "kappa": c.kappa,
                    "k_sampled": c.k_sampled,
                    "small_length_on_neumann_branch": c.small_length_on_neumann_branch,
                    "ladder_limit": c.ladder_limit,
                    "ladder_cap": c.ladder_cap,
                    "ladder_cap_ok": c.ladder_cap_ok,
                    "crossing_value": c.crossing_value,
                    "crossing_ok": c.crossing_ok,
                    "verdict": c.verdict.value,
                }
                for c in report.checks
            ],
        }
        text_lines = [f"finite-critical-length mechanism (n={report.n}):"]
        for c in report.checks:
            text_lines.append(
                f"  kappa={c.kappa:<5d} k={c.k_sampled:<9d} "
                f"small-L branch {'ok' if c.small_length_on_neumann_branch else 'FAIL'}, "
                f"limit {c.ladder_limit:g} <= cap {c.ladder_cap} "
                f"{'ok' if c.ladder_cap_ok else 'FAIL'}, "
                f"b_kappa = {c.crossing_value:.6g} > cap "
                f"{'ok' if c.crossing_ok else 'FAIL'}, {c.verdict.value}"
            )
        text_lines.append(
            f"  first kappa passing all checks: {report.first_passing_kappa}"
        )
        csv_lines = [
            "kappa,k_sampled,small_l_ok,ladder_limit,ladder_cap,ladder_cap_ok,"
            "crossing_value,crossing_ok,verdict"
        ]
        for c in report.checks:
            csv_lines.append(
                f"{c.kappa},{c.k_sampled},{int(c.small_length_on_neumann_branch)},"
                f"{reporting.fmt(c.ladder_limit)},{c.ladder_cap},{int(c.ladder_cap_ok)},"
                f"{reporting.fmt(c.crossing_value)},{int(c.crossing_ok)},{c.verdict.value}"
            )
        csv_text = "\n".join(csv_lines) + "\n"
    else:  # pragma: no cover - argparse restricts choices
        raise ValueError(f"unknown lemma {lemma!r}")

    if fmt == "json":
        text = reporting.dump_json(doc)
    elif fmt == "csv":
        text = csv_text
    else:
        text = "\n".join(text_lines) + "\n"
    _emit(text, args.out)
    if discrepancy and not args.expect_fail:
        print(
            "verification scan found no onset for an asserted property",
            file=sys.stderr,
        )
        return 4
    return 0


# ---------------------------------------------------------------------------
# parser
# ---------------------------------------------------------------------------


def _add_common(sub: argparse.ArgumentParser, svg: bool = False) -> None:
    choices = ["text", "csv", "json"] + (["svg"] if svg else [])
    sub.add_argument("--format", choices=choices, default=None)
    sub.add_argument("--out", default=None, help="output path ('-' for stdout)")
    sub.add_argument("--config", default=None, help="key=value config file")
    sub.add_argument("--workers", default=None, help="worker count or 'auto'")


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="steklov",
        description=(
            "Sharp upper bounds for Steklov eigenvalues of hypersurfaces of "
            "revolution with two boundary components, and critical-length "
            "classification of eigenvalue indices."
        ),
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("bound", help="bound at one (n, k, L) with provenance")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--length", type=float, required=True)
    _add_common(p)
    p.set_defaults(handler=_cmd_bound)

    p = sub.add_parser("curve", help="bound as a function of L")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--lmin", type=float, default=None)
    p.add_argument("--lmax", type=float, default=None)
    p.add_argument("--samples", type=int, default=None)
    p.add_argument(
        "--with-mixed",
        dest="with_mixed",
        action="store_true",
        help="also draw/emit the Dirichlet and Neumann branch curves",
    )
    _add_common(p, svg=True)
    p.set_defaults(handler=_cmd_curve)

    p = sub.add_parser("classify", help="finite vs not-found critical length")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--lmin", type=float, default=None)
    p.add_argument("--lmax", type=float, default=None)
    p.add_argument("--samples", type=int, default=None)
    p.add_argument("--epsilon", type=float, default=None)
    _add_common(p)
    p.set_defaults(handler=_cmd_classify)

    p = sub.add_parser("sweep", help="classify a range of diagnosis indices")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--from", dest="i_from", type=int, default=None)
    p.add_argument("--to", dest="i_to", type=int, default=None)
    p.add_argument("--lmin", type=float, default=None)
    p.add_argument("--lmax", type=float, default=None)
    p.add_argument("--samples", type=int, default=None)
    p.add_argument("--epsilon", type=float, default=None)
    p.add_argument("--resume", action="store_true")
    p.add_argument(
        "--per-k",
        dest="per_k",
        action="store_true",
        help="classify every index of every covered block individually",
    )
    _add_common(p)
    p.set_defaults(handler=_cmd_sweep)

    p = sub.add_parser("diagnosis", help="list diagnosis indices")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--count", type=int, required=True)
    _add_common(p)
    p.set_defaults(handler=_cmd_diagnosis)

    p = sub.add_parser("verify", help="run one lemma verification")
    p.add_argument(
        "--lemma",
        choices=["c0", "crossing", "growth", "multiplicity", "final"],
        required=True,
    )
    p.add_argument("--n", type=int, default=3)
    p.add_argument("--kappa", type=int, default=None)
    p.add_argument("--c", default=None)
    p.add_argument("--from", dest="i_from", type=int, default=None)
    p.add_argument("--to", dest="i_to", type=int, default=None)
    p.add_argument("--tolerance", type=float, default=1e-12)
    p.add_argument("--lmin", type=float, default=None)
    p.add_argument("--lmax", type=float, default=None)
    p.add_argument("--samples", type=int, default=None)
    p.add_argument("--epsilon", type=float, default=None)
    p.add_argument("--expect-fail", dest="expect_fail", action="store_true")
    _add_common(p)
    p.set_defaults(handler=_cmd_verify)

    return parser


def main(argv=None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        code = exc.code
        return int(code) if code is not None else 0

    if args.config is not None:
        args._config = _load_config(args.config)
    else:
        args._config = {}

    try:
        return args.handler(args)
    except OverflowError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 3
    except (ValueError, ArithmeticError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
