"""Command line interface.

Every subcommand supports ``--format json|csv|text``.  JSON output is a
single envelope object ``{command, parameters, result, elapsed_ms, version}``
and is byte-identical across identical invocations except for elapsed_ms.

Exit codes: 0 success, 2 usage or parse error, 3 capacity/budget error,
4 internal invariant violation (including a verifier finding violations).
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import os
import sys
import time
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any

from . import __version__
from .anneal import AnnealConfig, anneal_max_trl
from .constructions import (
    check_upper_bound,
    trl_u_formula,
    u_closed_form_in_n,
    word_min_trl,
    word_u,
)
from .errors import CapacityError, InternalCheckError, WordSyntaxError
from .expectation import (
    density_rounded,
    expected_trl_exact,
    expected_trl_oracle,
    format_rational,
    s2_limit,
    trl_density,
)
from .lemmas import (
    check_overlap_concatenation_lemma,
    check_period_difference_lemma,
    check_periodicity_lemma,
    check_two_period_structure,
)
from .reference import DENSITY_4DP, MAX_TRL
from .runs import find_runs_fast, run_factor_text, run_stats
from .search import tau_exhaustive, verify_four_runs_theorem, verify_pair_coverage
from .words import parse_word

TABLE1_BUDGET = 22
TABLE2_ALPHABETS = (2, 3, 5, 10)
TABLE2_TOLERANCE = Fraction(5, 100_000)


@dataclass
class CommandOutput:
    """What a handler produces; rendering picks the piece for the format."""

    result: Any
    rows: list[dict] = field(default_factory=list)
    lines: list[str] = field(default_factory=list)
    exit_code: int = 0
    elapsed_ms: int = 0


def _jobs_default() -> int:
    env = os.environ.get("RUNFORGE_JOBS", "")
    try:
        return max(1, int(env))
    except ValueError:
        return 1


def _resolve_jobs(value: int | None) -> int:
    return value if value else _jobs_default()


def _frac(value: Fraction) -> str:
    return str(value)


# --- handlers ---------------------------------------------------------------


def _cmd_runs(args) -> CommandOutput:
    w = parse_word(args.word, args.alpha)
    runs = find_runs_fast(w)
    stats = run_stats(w)
    run_dicts = [
        {
            "start": r.start,
            "length": r.length,
            "period": r.period,
            "factor": run_factor_text(w, r),
        }
        for r in runs
    ]
    result = {
        "word": w.text(),
        "alphabet_size": w.alphabet_size,
        "runs": run_dicts,
        "stats": {
            "trl": stats.trl,
            "run_count": stats.run_count,
            "exponent_sum": _frac(stats.exponent_sum),
        },
    }
    lines = [f"word: {w.text()!r} (alphabet size {w.alphabet_size})"]
    for r in run_dicts:
        lines.append(
            f"  run start={r['start']:>3} length={r['length']:>3} "
            f"period={r['period']:>3} factor={r['factor']}"
        )
    lines.append(
        f"trl={stats.trl} runs={stats.run_count} exponent_sum={stats.exponent_sum}"
    )
    return CommandOutput(result=result, rows=run_dicts, lines=lines)


def _cmd_trl(args) -> CommandOutput:
    w = parse_word(args.word, args.alpha)
    value = run_stats(w).trl
    result = {"word": w.text(), "trl": value}
    return CommandOutput(result=result, rows=[result], lines=[str(value)])


def _tau_like(args, mode: str) -> CommandOutput:
    jobs = _resolve_jobs(args.jobs)
    t0 = time.perf_counter()
    record = tau_exhaustive(args.n, args.alpha, mode, jobs=jobs)
    elapsed_ms = int((time.perf_counter() - t0) * 1000)
    result = {
        "n": record.n,
        "alpha": record.alphabet_size,
        "mode": record.mode,
        "value": record.value,
        "witnesses": [w.text() for w in record.witnesses],
        "witness_count": record.witness_count,
        "words_examined": record.words_examined,
        "elapsed_ms": elapsed_ms,
    }
    rows = [
        {
            "n": record.n,
            "alpha": record.alphabet_size,
            "mode": record.mode,
            "value": record.value,
            "witness": w.text(),
        }
        for w in record.witnesses
    ]
    lines = [
        f"{mode} TRL over length-{record.n} words on {record.alphabet_size} letters: "
        f"{record.value}",
        f"witnesses ({record.witness_count if record.witness_count is not None else '>cap'}):"
        f" {', '.join(w.text() for w in record.witnesses)}",
        f"words examined: {record.words_examined} in {elapsed_ms} ms",
    ]
    return CommandOutput(result=result, rows=rows, lines=lines)


def _cmd_tau(args) -> CommandOutput:
    return _tau_like(args, args.mode)


def _cmd_min_trl(args) -> CommandOutput:
    return _tau_like(args, "min")


def _cmd_verify(args) -> CommandOutput:
    suites = []
    chosen = args.suite
    if chosen in ("four-runs", "all"):
        rep = verify_four_runs_theorem(args.max_n, args.alpha)
        suites.append(
            {
                "name": "four-runs",
                "words_scanned": rep.words_scanned,
                "violations": [
                    {
                        "word": v.word,
                        "position": v.position,
                        "periods": list(v.periods),
                        "runs": [
                            {"start": r.start, "length": r.length, "period": r.period}
                            for r in v.runs
                        ],
                    }
                    for v in rep.violations
                ],
                "ok": rep.ok,
            }
        )
    if chosen in ("pair-coverage", "all"):
        rep = verify_pair_coverage(args.max_n, args.alpha)
        suites.append(
            {
                "name": "pair-coverage",
                "words_scanned": rep.words_scanned,
                "violations": [
                    {
                        "word": v.word,
                        "position": v.position,
                        "periods": list(v.periods),
                        "runs": [
                            {"start": r.start, "length": r.length, "period": r.period}
                            for r in v.runs
                        ],
                    }
                    for v in rep.violations
                ],
                "ok": rep.ok,
            }
        )
    if chosen in ("lemmas", "all"):
        lemma_max = min(args.max_n, 12)
        reports = [
            check_periodicity_lemma(lemma_max, args.alpha),
            check_period_difference_lemma(lemma_max, args.alpha),
            check_overlap_concatenation_lemma(min(args.max_n, 3), args.alpha),
            check_two_period_structure(min(args.max_n, 5), args.alpha),
        ]
        for rep in reports:
            suites.append(
                {
                    "name": rep.name,
                    "words_scanned": rep.words_scanned,
                    "premise_cases": rep.premise_cases,
                    "violations": rep.failures,
                    "ok": rep.ok,
                }
            )
    ok = all(s["ok"] for s in suites)
    result = {"suites": suites, "ok": ok}
    rows = [
        {
            "suite": s["name"],
            "words_scanned": s["words_scanned"],
            "violations": len(s["violations"]),
            "ok": s["ok"],
        }
        for s in suites
    ]
    lines = [
        f"{s['name']}: scanned {s['words_scanned']} words, "
        f"{len(s['violations'])} violations ({'ok' if s['ok'] else 'FAILED'})"
        for s in suites
    ]
    return CommandOutput(result=result, rows=rows, lines=lines, exit_code=0 if ok else 4)


def _cmd_construct(args) -> CommandOutput:
    if args.family == "u":
        w = word_u(args.k)
        trl = run_stats(w).trl
        result = {
            "family": "u",
            "k": args.k,
            "word": w.text(),
            "length": len(w),
            "trl": trl,
        }
        if args.k >= 2:
            result["closed_form"] = trl_u_formula(args.k)
    else:
        w = word_min_trl(args.n)
        trl = run_stats(w).trl
        result = {
            "family": "min",
            "n": args.n,
            "word": w.text(),
            "length": len(w),
            "trl": trl,
        }
    lines = [f"{result['word']} (length {result['length']}, trl {result['trl']})"]
    return CommandOutput(result=result, rows=[result], lines=lines)


def _cmd_bounds(args) -> CommandOutput:
    tau_known = {n: v for n, (v, _) in MAX_TRL.items()}
    report = check_upper_bound(args.max_n, tau_values=tau_known)
    lower = {
        n: {"tau": v, "holds": 8 * v > n * n}
        for n, (v, _) in sorted(MAX_TRL.items())
        if n >= 2
    }
    lower_ok = all(entry["holds"] for entry in lower.values())
    result = {
        "max_n": args.max_n,
        "upper_bound_ok": report.all_ok,
        "upper_failures": [list(f) for f in report.failures],
        "lower_bound_ok": lower_ok,
        "lower_bound": [
            {"n": n, "tau": e["tau"], "holds": e["holds"]} for n, e in lower.items()
        ],
        "all_ok": report.all_ok and lower_ok,
    }
    rows = [
        {"check": "upper", "n_range": f"1..{args.max_n}", "ok": report.all_ok},
        {"check": "lower", "n_range": "2..22", "ok": lower_ok},
    ]
    lines = [
        f"upper bound strict for n = 1..{args.max_n}: {report.all_ok}",
        f"8*tau(n) > n^2 for known n = 2..22: {lower_ok}",
    ]
    return CommandOutput(
        result=result, rows=rows, lines=lines, exit_code=0 if result["all_ok"] else 4
    )


def _published_claim_checks() -> list[dict]:
    """Structured comparisons against published claims that do not hold up."""
    checks = []
    est = s2_limit(2, Fraction(1, 10**6))
    lo, hi = est.value, est.value + est.tail_bound
    checks.append(
        {
            "claim": "limit of the one-ended-run term equals 10 for alphabet 2",
            "computed": format_rational(est.value, 4),
            "interval": [format_rational(lo, 6), format_rational(hi, 6)],
            "matches": bool(lo <= 10 <= hi),
        }
    )
    evidence = []
    forms_match = True
    for k in range(2, 7):
        n = 4 * k + 2
        trl = run_stats(word_u(k)).trl
        good_form, claimed_form = u_closed_form_in_n(n)
        evidence.append(
            {
                "k": k,
                "n": n,
                "trl": trl,
                "formula_2k2_8k_4": trl_u_formula(k),
                "n_form_n2_12n_4_over_8": good_form // 8,
                "claimed_n2_4n_12_over_8": claimed_form // 8,
            }
        )
        forms_match = forms_match and 8 * trl == claimed_form
    checks.append(
        {
            "claim": "TRL of the u family equals (n^2+4n+12)/8 at n = 4k+2",
            "computed": "TRL(u(k)) = 2k^2+8k+4 = (n^2+12n+4)/8",
            "evidence": evidence,
            "matches": forms_match,
        }
    )
    return checks


def _cmd_expected(args) -> CommandOutput:
    report = expected_trl_exact(args.n, args.alpha, digits=args.digits)
    result = {
        "n": report.n,
        "alpha": report.alpha,
        "s1": _frac(report.s1),
        "s2": _frac(report.s2),
        "s3": _frac(report.s3),
        "total": _frac(report.total),
        "decimal": report.decimal,
    }
    exit_code = 0
    lines = [
        f"expected TRL(n={report.n}, alpha={report.alpha}) = {report.total} "
        f"= {report.decimal}",
        f"  interior {report.s1} + one-ended {report.s2} + whole-word {report.s3}",
    ]
    if args.oracle:
        oracle = expected_trl_oracle(args.n, args.alpha)
        result["oracle"] = _frac(oracle)
        result["matches_oracle"] = oracle == report.total
        lines.append(f"  enumeration average: {oracle}")
        if not result["matches_oracle"]:
            lines.append("  MISMATCH between formula and enumeration")
            exit_code = 4
    if args.verify_paper:
        result["claim_checks"] = _published_claim_checks()
        for c in result["claim_checks"]:
            lines.append(
                f"  claim check: {c['claim']} -> computed {c['computed']} "
                f"(matches: {c['matches']})"
            )
    rows = [
        {
            "n": report.n,
            "alpha": report.alpha,
            "total": _frac(report.total),
            "decimal": report.decimal,
        }
    ]
    return CommandOutput(result=result, rows=rows, lines=lines, exit_code=exit_code)


def _cmd_density(args) -> CommandOutput:
    tol = Fraction(args.tol)
    est = trl_density(args.alpha, tol)
    decimal, _ = density_rounded(args.alpha, args.digits, tol)
    result = {
        "alpha": est.alpha,
        "tolerance": str(tol),
        "value": _frac(est.value),
        "tail_bound": _frac(est.tail_bound),
        "terms": est.terms,
        "decimal": decimal,
    }
    lines = [
        f"TRL density(alpha={est.alpha}) = {decimal} "
        f"(partial sum {format_rational(est.value, args.digits + 2)}, "
        f"tail < {format_rational(est.tail_bound, args.digits + 2)}, {est.terms} terms)"
    ]
    if args.verify_paper:
        result["claim_checks"] = _published_claim_checks()
        for c in result["claim_checks"]:
            lines.append(
                f"  claim check: {c['claim']} -> computed {c['computed']} "
                f"(matches: {c['matches']})"
            )
    rows = [{"alpha": est.alpha, "density": decimal}]
    return CommandOutput(result=result, rows=rows, lines=lines)


def _cmd_anneal(args) -> CommandOutput:
    config = AnnealConfig(
        n=args.n,
        seed=args.seed,
        iterations=args.iters,
        restarts=args.restarts,
        initial_temperature=args.t0,
        cooling_factor=args.cooling,
        target_trl=args.target,
    )
    outcome = anneal_max_trl(config, jobs=_resolve_jobs(args.jobs))
    result = {
        "n": config.n,
        "seed": config.seed,
        "iterations": config.iterations,
        "restarts": config.restarts,
        "initial_temperature": config.initial_temperature,
        "cooling_factor": config.cooling_factor,
        "target_trl": config.target_trl,
        "best_word": outcome.best_word.text(),
        "best_trl": outcome.best_trl,
        "ratio": outcome.ratio,
        "baseline_word": outcome.baseline_word.text(),
        "baseline_trl": outcome.baseline_trl,
        "history": [
            {
                "restart": h.restart,
                "best_trl": h.best_trl,
                "iterations_run": h.iterations_run,
            }
            for h in outcome.history
        ],
    }
    rows = [
        {
            "n": config.n,
            "seed": config.seed,
            "best_trl": outcome.best_trl,
            "best_word": outcome.best_word.text(),
            "baseline_trl": outcome.baseline_trl,
        }
    ]
    lines = [
        f"best TRL {outcome.best_trl} (ratio {outcome.ratio:.4f}) "
        f"word {outcome.best_word.text()}",
        f"baseline {outcome.baseline_word.text()} trl {outcome.baseline_trl}",
    ]
    return CommandOutput(result=result, rows=rows, lines=lines)


def _cmd_table1(args) -> CommandOutput:
    if args.max_n > TABLE1_BUDGET and not args.allow_large:
        raise CapacityError(
            f"table regeneration beyond n = {TABLE1_BUDGET} requires --allow-large "
            f"(requested {args.max_n})"
        )
    jobs = _resolve_jobs(args.jobs)
    rows = []
    example_failures = []
    for n in range(1, args.max_n + 1):
        record = tau_exhaustive(n, 2, "max", jobs=jobs)
        ratio = format_rational(Fraction(record.value, n * n), 3)
        entry = {
            "n": n,
            "tau": record.value,
            "ratio": ratio,
            "witness": record.witnesses[0].text() if record.witnesses else "",
        }
        if n in MAX_TRL:
            example = MAX_TRL[n][1]
            example_trl = run_stats(parse_word(example, 2)).trl
            entry["example"] = example
            entry["example_trl"] = example_trl
            if example_trl != record.value:
                example_failures.append((n, example, example_trl, record.value))
        rows.append(entry)
    if example_failures:
        raise InternalCheckError(
            f"published example words disagree with the search: {example_failures}"
        )
    result = {"max_n": args.max_n, "rows": rows}
    lines = [f"{'n':>3} {'tau':>5} {'tau/n^2':>8}  witness"]
    for r in rows:
        lines.append(f"{r['n']:>3} {r['tau']:>5} {r['ratio']:>8}  {r['witness']}")
    return CommandOutput(result=result, rows=rows, lines=lines)


def _cmd_table2(args) -> CommandOutput:
    rows = []
    for alpha in TABLE2_ALPHABETS:
        decimal, est = density_rounded(alpha, 4, TABLE2_TOLERANCE)
        rows.append({"alpha": alpha, "density": decimal, "terms": est.terms})
    result = {"tolerance": str(TABLE2_TOLERANCE), "rows": rows}
    lines = [f"{'alphabet':>8} {'TRL density':>12}"]
    lines += [f"{r['alpha']:>8} {r['density']:>12}" for r in rows]
    return CommandOutput(result=result, rows=rows, lines=lines)


# --- wiring -----------------------------------------------------------------


def _add_format(p: argparse.ArgumentParser):
    p.add_argument(
        "--format",
        choices=("json", "csv", "text"),
        default="text",
        help="output format (default text)",
    )


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="runforge",
        description="Runs (maximal periodicities) and total run length of words.",
    )
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("runs", help="list all runs of a word with statistics")
    p.add_argument("word", help="word as lowercase letters")
    p.add_argument("--alpha", type=int, default=None, help="alphabet size override")
    _add_format(p)
    p.set_defaults(handler=_cmd_runs)

    p = sub.add_parser("trl", help="total run length of a word")
    p.add_argument("word")
    p.add_argument("--alpha", type=int, default=None)
    _add_format(p)
    p.set_defaults(handler=_cmd_trl)

    p = sub.add_parser("tau", help="exhaustive extremal TRL over all length-n words")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--alpha", type=int, default=2)
    p.add_argument("--mode", choices=("max", "min"), default="max")
    p.add_argument("--jobs", type=int, default=None, help="parallel workers")
    _add_format(p)
    p.set_defaults(handler=_cmd_tau)

    p = sub.add_parser("min-trl", help="exhaustive minimum TRL (tau --mode min)")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--alpha", type=int, default=2)
    p.add_argument("--jobs", type=int, default=None)
    _add_format(p)
    p.set_defaults(handler=_cmd_min_trl)

    p = sub.add_parser("verify", help="run structural verifiers (expected: no violations)")
    p.add_argument(
        "--suite",
        choices=("four-runs", "pair-coverage", "lemmas", "all"),
        default="all",
    )
    p.add_argument("--max-n", type=int, default=10)
    p.add_argument("--alpha", type=int, default=2)
    _add_format(p)
    p.set_defaults(handler=_cmd_verify)

    p = sub.add_parser("construct", help="generate the explicit word families")
    family = p.add_subparsers(dest="family", required=True)
    pu = family.add_parser("u", help="((ab)^k a)^2")
    pu.add_argument("--k", type=int, required=True)
    _add_format(pu)
    pu.set_defaults(handler=_cmd_construct)
    pm = family.add_parser("min", help="a b a^(n-4) b a")
    pm.add_argument("--n", type=int, required=True)
    _add_format(pm)
    pm.set_defaults(handler=_cmd_construct)

    p = sub.add_parser("bounds", help="exact integer checks of the quadratic bounds")
    p.add_argument("--max-n", type=int, default=10**6)
    _add_format(p)
    p.set_defaults(handler=_cmd_bounds)

    p = sub.add_parser("expected", help="exact expected TRL of a random word")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--alpha", type=int, default=2)
    p.add_argument("--oracle", action="store_true", help="also average by enumeration")
    p.add_argument("--digits", type=int, default=10)
    p.add_argument(
        "--verify-paper",
        action="store_true",
        help="also check published claims and flag mismatches",
    )
    _add_format(p)
    p.set_defaults(handler=_cmd_expected)

    p = sub.add_parser("density", help="asymptotic expected TRL per letter")
    p.add_argument("--alpha", type=int, required=True)
    p.add_argument("--tol", default="5e-5", help="tail bound tolerance")
    p.add_argument("--digits", type=int, default=4)
    p.add_argument("--verify-paper", action="store_true")
    _add_format(p)
    p.set_defaults(handler=_cmd_density)

    p = sub.add_parser("anneal", help="seeded annealing search for high-TRL words")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--seed", type=int, default=42)
    p.add_argument("--iters", type=int, default=100_000)
    p.add_argument("--restarts", type=int, default=20)
    p.add_argument("--t0", type=float, default=2.0)
    p.add_argument("--cooling", type=float, default=0.9999)
    p.add_argument("--target", type=int, default=None, help="stop a restart at this TRL")
    p.add_argument("--jobs", type=int, default=None)
    _add_format(p)
    p.set_defaults(handler=_cmd_anneal)

    p = sub.add_parser("table1", help="regenerate the extremal TRL table")
    p.add_argument("--max-n", type=int, default=TABLE1_BUDGET)
    p.add_argument("--jobs", type=int, default=None)
    p.add_argument(
        "--allow-large",
        action="store_true",
        help=f"permit max-n beyond the default budget of {TABLE1_BUDGET}",
    )
    _add_format(p)
    p.set_defaults(handler=_cmd_table1)

    p = sub.add_parser("table2", help="TRL density for alphabet sizes 2, 3, 5, 10")
    _add_format(p)
    p.set_defaults(handler=_cmd_table2)

    return parser


def _emit(command: str, args, output: CommandOutput, stream) -> None:
    fmt = getattr(args, "format", "text")
    if fmt == "json":
        parameters = {
            k: v
            for k, v in sorted(vars(args).items())
            if k not in ("handler", "command", "format") and v is not None
        }
        envelope = {
            "command": command,
            "parameters": parameters,
            "result": output.result,
            "elapsed_ms": output.elapsed_ms,
            "version": __version__,
        }
        json.dump(envelope, stream, indent=2, sort_keys=True)
        stream.write("\n")
    elif fmt == "csv":
        if output.rows:
            writer = csv.DictWriter(stream, fieldnames=list(output.rows[0].keys()))
            writer.writeheader()
            for row in output.rows:
                writer.writerow(row)
    else:
        for line in output.lines:
            stream.write(line + "\n")


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return e.code if isinstance(e.code, int) else 2

    t0 = time.perf_counter()
    try:
        output = args.handler(args)
    except WordSyntaxError as e:
        print(f"error: {e}", file=sys.stderr)
        return 2
    except ValueError as e:
        print(f"error: {e}", file=sys.stderr)
        return 2
    except CapacityError as e:
        print(f"capacity error: {e}", file=sys.stderr)
        return 3
    except InternalCheckError as e:
        print(f"internal invariant violation: {e}", file=sys.stderr)
        return 4
    output.elapsed_ms = int((time.perf_counter() - t0) * 1000)

    command = args.command if args.command != "construct" else f"construct-{args.family}"
    _emit(command, args, output, sys.stdout)
    return output.exit_code


if __name__ == "__main__":
    sys.exit(main())
