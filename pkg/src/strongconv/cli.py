"""``strongconv`` command line.

Exit codes: 0 success, 1 a checked inequality failed, 2 bad input.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from pathlib import Path

import numpy as np

from . import __version__
from . import fourier as fr
from . import sequences as sq
from .checks import SUITES, run_suite
from .errors import ScheduleTooShort, StrongConvError, UnknownTrace
from .report import AnalysisReport
from .results import Estimate, FunctionalTrace, InequalityCheck
from .specs import (SpecError, complex_to_json, parse_coeffs, parse_lambda, parse_metric,
                    parse_schedule, parse_sequence, sequence_to_json, series_to_json)

EXIT_OK, EXIT_CHECK, EXIT_INPUT = 0, 1, 2
SEQ_NORMS = ("sup", "bv", "cr", "c", "chain")


class InputError(Exception):
    """Raised for arguments that parse but make no sense together."""

    def __init__(self, field, msg):
        self.field = field
        super().__init__(f"{field}: {msg}")


def _emit(text, out):
    if out:
        Path(out).write_text(text)
    else:
        sys.stdout.write(text)


def _csv_list(text, allowed, field):
    items = [x.strip() for x in text.split(",") if x.strip()]
    bad = [x for x in items if x not in allowed]
    if bad:
        raise InputError(field, f"unknown entries {bad}; expected from {list(allowed)}")
    return items


def _int_list(text, field):
    try:
        return [int(x) for x in text.split(",") if x.strip()]
    except ValueError:
        raise InputError(field, f"expected comma-separated integers, got {text!r}") from None


def _add_common(p):
    p.add_argument("--lambda", dest="lam", required=True, help="weights: power:<alpha>, log, explicit:<path>")
    p.add_argument("--r", type=int, default=1, help="lag (positive integer)")
    p.add_argument("--schedule", help="comma list or geom:<start>:<factor>:<count> (default 1,2,...,1024)")
    p.add_argument("--n", type=int, help="single index; shorthand for a one-point schedule")
    p.add_argument("--seed", type=int, default=None, help="recorded in the report")
    p.add_argument("--out", help="write the JSON report here instead of stdout")


def _schedule(args):
    if args.n is not None:
        if args.schedule is not None:
            raise InputError("--n", "give either --n or --schedule, not both")
        return parse_schedule(str(args.n))
    return parse_schedule(args.schedule)


def _check_r(r):
    if r < 1:
        raise InputError("--r", f"must be a positive integer, got {r}")
    return r


# -- seq -----------------------------------------------------------------------------

def cmd_seq(args) -> AnalysisReport:
    w = parse_lambda(args.lam)
    r = _check_r(args.r)
    S = parse_sequence(args.seq)
    if args.limit is not None:
        try:
            lim = complex(args.limit)
        except ValueError:
            raise InputError("--limit", f"not a number: {args.limit!r}") from None
    else:
        lim = S.limit
        if lim is None:
            raise InputError("--limit", "the sequence has no implied limit; pass --limit")
    schedule = _schedule(args)
    traces = _csv_list(args.trace, sq.FUNCTIONALS, "--trace") if args.trace else []
    norms = []
    if args.norms:
        norms = list(SEQ_NORMS) if args.norms == "all" else _csv_list(args.norms, SEQ_NORMS, "--norms")
    remainders = _int_list(args.schauder, "--schauder") if args.schauder else []
    if not (traces or norms or remainders or args.r_factor):
        traces = ["V"]

    rep = AnalysisReport(tool_version=__version__, seed=args.seed)
    rep.inputs = {"command": "seq", "lambda": w.description, "r": r, "seq": sequence_to_json(S),
                  "limit": complex_to_json(lim), "schedule": list(schedule)}
    if S.limit is not None and lim != S.limit:
        rep.notes.append(f"--limit {complex_to_json(lim)} differs from the tail limit; V will not decay")

    for name in traces:
        if name == "T":
            rep.traces.append(_t_trace(S, w, r, schedule, rep))
        else:
            rep.traces.append(sq.trace_functional(S, lim, w, r, schedule, name))

    n_max = args.n_max
    if norms:
        gen = S.is_generator
        trunc = n_max if gen else None
        if "sup" in norms:
            rep.norms["sup"] = sq.sup_norm(S, trunc)
        if "bv" in norms:
            rep.norms["bv"] = sq.bv_norm(S, trunc)
        if "cr" in norms:
            rep.norms[f"cr[r={r}]"] = sq.cr_norm(S, w, r, n_max)
        if "c" in norms:
            rep.norms["c"] = sq.c_lambda_norm(S, w, n_max)
        if "chain" in norms:
            if gen:
                rep.notes.append("norm chain skipped: generator tails give truncated norms only")
            else:
                chain = sq.norm_chain_check(S, w, r)
                for i, link in enumerate(chain.links, 1):
                    rep.checks[f"chain.link{i}"] = link
    if args.r_factor:
        top = schedule[-1]
        rep.checks[f"r_factor[n={top}]"] = sq.r_factor_inequality_check(S, w, r, top)
    for m in remainders:
        res = sq.schauder_remainder_norm(S, w, r, m)
        rep.norms[f"schauder_remainder[m={m}]"] = res.norm
        ub = res.norm.value + (res.norm.error_bound or 0.0)
        rep.checks[f"schauder[m={m}]"] = InequalityCheck(ub, res.bound, res.passed)
    return rep


def _t_trace(S, w, r, schedule, rep):
    keep = tuple(n for n in schedule if n >= r)
    if len(keep) < len(schedule):
        if not keep:
            raise ScheduleTooShort(f"--schedule: T_n needs n >= r={r}; every index is below it")
        rep.notes.append(f"T trace: schedule indices below r={r} dropped")
    tr = sq.trace_functional(S, 0, w, r, keep, "T")
    return tr


# -- fourier --------------------------------------------------------------------------

def _grid_trace(name, schedule, fn, err):
    vals, errs = [], []
    for n in schedule:
        vals.append(fn(n))
        errs.append(err(n))
    has_err = any(e > 0 for e in errs)
    return FunctionalTrace(name, tuple(schedule), tuple(vals), tuple(errs) if has_err else None,
                           {"exact": not has_err})


def cmd_fourier(args) -> AnalysisReport:
    w = parse_lambda(args.lam)
    r = _check_r(args.r)
    m = parse_metric(args.metric)
    schedule = _schedule(args)
    degree = args.degree if args.degree is not None else m.grid_points // 16
    if degree < 1 or 16 * degree > m.grid_points:
        raise InputError("--degree", f"needs 1 <= degree <= grid/16 = {m.grid_points // 16}")
    F, generated = parse_coeffs(args.coeffs, degree)
    if not generated and 16 * F.degree > m.grid_points:
        raise InputError("--metric", f"grid {m.grid_points} is below 16 x degree {F.degree}")

    rep = AnalysisReport(tool_version=__version__, seed=args.seed)
    rep.inputs = {"command": "fourier", "lambda": w.description, "r": r, "metric": m.spec_string(),
                  "coeffs": series_to_json(F), "schedule": list(schedule)}
    if generated:
        rep.notes.append(f"coefficients truncated at degree {F.degree}; grid values carry error bounds")

    rep.traces.append(_grid_trace(
        "S", schedule, lambda n: fr.s_lambda_r_functional(F, w, r, n, m),
        lambda n: fr.tail_error_bound(F, w, r, n, m, "membership")))
    iv_sched = tuple(n for n in schedule if n >= r)
    if len(iv_sched) < len(schedule):
        rep.notes.append(f"iv trace: schedule indices below r={r} dropped")
    if iv_sched:
        rep.traces.append(_grid_trace(
            "iv", iv_sched, lambda n: fr.condition_iv_functional(F, w, r, n, m),
            lambda n: fr.tail_error_bound(F, w, r, n, m, "iv")))
    rep.traces.append(_grid_trace(
        "sigma_dev", schedule, lambda n: fr.sigma_deviation(F, w, r, n, m),
        lambda n: fr.tail_error_bound(F, w, r, n, m, "sigma")))

    if args.dl or args.dlp2 is not None:
        # Denjoy-Luzin functionals only read coefficients, so they use the full schedule length
        G = parse_coeffs(args.coeffs, max(schedule[-1], degree))[0] if generated else F
    if args.dl:
        dl_sched = tuple(n for n in schedule if n >= 1)
        rep.traces.append(_grid_trace(
            f"dl_{args.dl}", dl_sched, lambda n: fr.dl_functional(G, w, n, args.dl),
            lambda n: fr.dl_error_bound(G, w, n)))
    if args.dlp2 is not None:
        if not G.exact:
            raise InputError("--dlp2", "the sufficiency check needs a finite coefficient list")
        for n in schedule:
            if n >= 2:
                rep.checks[f"dlp2[p={args.dlp2:g},n={n}]"] = fr.dlp2_sufficiency_check(G, w, n, args.dlp2)
    if args.dl2 is not None:
        res = fr.dl2_group_sums(F, m, args.dl2, args.C)
        rep.norms["dl2_group_sum_max"] = Estimate(float(np.max(res.sums)), int(np.argmax(res.sums)),
                                                     exact=F.exact, error_bound=None if F.exact else F.tau)
        if res.lower_bound is not None:
            rep.checks[f"dl2_lower_bound[C={args.C:g}]"] = res.lower_bound

    if args.norms:
        if not F.exact:
            raise InputError("--norms", "norms need a finite coefficient list (zero tail)")
        chain = fr.fourier_norm_chain(F, w, r, m)
        rep.norms["U"] = chain.u
        rep.norms[f"S[r={r}]"] = chain.s_r
        rep.norms["S[r=1]"] = chain.s_1
        rep.norms["A"] = Estimate(chain.a)
        for i, link in enumerate(chain.links, 1):
            rep.checks[f"chain.link{i}"] = link
    for cut in (_int_list(args.remainder, "--remainder") if args.remainder else []):
        res = fr.thm_c2_remainder(F, w, r, m, cut)
        rep.norms[f"remainder[cut={cut}]"] = res.norm
        ub = res.norm.value + (res.norm.error_bound or 0.0)
        rep.checks[f"remainder[cut={cut}]"] = InequalityCheck(ub, res.bound, res.passed)
    return rep


# -- check / plot-data --------------------------------------------------------------------

def cmd_check(args):
    if args.trials < 0:
        raise InputError("--trials", "must be non-negative")
    res = run_suite(args.suite, args.trials, args.seed, args.C)
    return res


def cmd_plot_data(args) -> str:
    try:
        rep = AnalysisReport.from_json(Path(args.report).read_text())
    except OSError as exc:
        raise InputError("--report", f"cannot read {args.report!r}: {exc}") from None
    except (json.JSONDecodeError, KeyError, TypeError, ValueError) as exc:
        raise InputError("--report", f"not a report: {exc}") from None
    tr = rep.trace(args.trace)
    buf = io.StringIO()
    wr = csv.writer(buf, lineterminator="\n")
    has_err = tr.error_bounds is not None
    wr.writerow(["n", "value", "error_bound"] if has_err else ["n", "value"])
    for i, (n, v) in enumerate(zip(tr.schedule, tr.values)):
        wr.writerow([n, repr(v), repr(tr.error_bounds[i])] if has_err else [n, repr(v)])
    return buf.getvalue()


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="strongconv", description="Weighted strong-convergence diagnostics")
    p.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("seq", help="diagnostics for a numeric sequence")
    _add_common(s)
    s.add_argument("--seq", required=True, help='JSON {"values":[...],"tail":...}, zero, constant:<c> or @file')
    s.add_argument("--limit", help="limit s used by V and sigma_dev (default: implied by the tail)")
    s.add_argument("--trace", help="comma list from V,T,sigma_dev (default V)")
    s.add_argument("--norms", help="'all' or a comma list from sup,bv,cr,c,chain")
    s.add_argument("--r-factor", action="store_true", help="check the lag-r vs lag-1 inequality")
    s.add_argument("--schauder", help="comma list of m for expansion remainders")
    s.add_argument("--n-max", type=int, default=sq.DEFAULT_N_MAX, help="truncation for generator tails")

    f = sub.add_parser("fourier", help="diagnostics for a trigonometric series")
    _add_common(f)
    f.add_argument("--coeffs", required=True, help='JSON {"a0":..,"a":[...],"b":[...]}, zero or @file')
    f.add_argument("--metric", default="C:grid=512", help="C:grid=N or Lp:p=P,grid=N")
    f.add_argument("--degree", type=int, help="truncation degree for generated coefficients")
    f.add_argument("--n-max", type=int, help="accepted for symmetry; norms are searched over all n")
    f.add_argument("--dl", choices=("single", "pair"), help="add a Denjoy-Luzin functional trace")
    f.add_argument("--dlp2", type=float, metavar="P", help="check the L^p sufficiency inequality")
    f.add_argument("--dl2", type=int, metavar="K", help="grouped-pair sums up to K pairs")
    f.add_argument("--C", type=float, help="constant for the grouped-pair lower bound")
    f.add_argument("--norms", action="store_true", help="U, S(Lambda^r), S(Lambda), A norms and their chain")
    f.add_argument("--remainder", help="comma list of cuts for the partial-sum remainder bound")

    c = sub.add_parser("check", help="run a seeded randomized suite")
    c.add_argument("--suite", required=True, choices=sorted(SUITES))
    c.add_argument("--trials", type=int, default=100)
    c.add_argument("--seed", type=int, default=0)
    c.add_argument("--C", type=float, help="constant for dl2-bound (default 0.2)")
    c.add_argument("--out", help="write the JSON summary here instead of stdout")

    d = sub.add_parser("plot-data", help="CSV of one trace from a report")
    d.add_argument("--report", required=True)
    d.add_argument("--trace", required=True)
    d.add_argument("--out")
    return p


def _fail(msg):
    print(f"strongconv: error: {msg}", file=sys.stderr)
    return EXIT_INPUT


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0) and EXIT_INPUT
    try:
        if args.command == "seq":
            rep = cmd_seq(args)
        elif args.command == "fourier":
            rep = cmd_fourier(args)
        elif args.command == "check":
            res = cmd_check(args)
            for msg in res.warnings:
                print(f"strongconv: warning: {msg}", file=sys.stderr)
            _emit(json.dumps(res.to_dict(), sort_keys=True, indent=2) + "\n", args.out)
            return EXIT_OK if res.passed else EXIT_CHECK
        else:
            _emit(cmd_plot_data(args), args.out)
            return EXIT_OK
    except UnknownTrace as exc:
        return _fail(f"--trace: {exc.args[0]}")
    except SpecError as exc:
        return _fail(f"{exc} [RejectedSpec]")
    except InputError as exc:
        return _fail(str(exc))
    except StrongConvError as exc:
        return _fail(f"{type(exc).__name__}: {exc}")
    _emit(rep.to_json(), args.out)
    return EXIT_OK if rep.passed else EXIT_CHECK


if __name__ == "__main__":
    sys.exit(main())
