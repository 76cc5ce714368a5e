"""Command line interface: ``tamgame <command> <model> ...``.

Exit codes: 0 success, 1 validation failure (``validate`` only), 2 bad input.
"""

from __future__ import annotations

import argparse
import sys
from fractions import Fraction
from pathlib import Path

from .coalition import enumerate_coalition_sne, probation_best_efforts
from .equilibrium import enumerate_sne
from .farkas import DualFeasible, build_farkas_systems, farkas_check
from .interval import Interval
from .io import (
    ModelDocumentError, format_number, load_document, round_half_up, sweep_csv, sweep_rows,
)
from .model import (
    GRAND_STATES, S_HL, STRATEGIES, TYPES, ModelError, PureStrategy, TypeDistribution,
    shapley_shares, to_scalar,
)
from .thresholds import existence_conditions, interval_report, rationalizability
from .validation import check_hypotheses
from .welfare import welfare_curve, welfare_dominance

EXIT_OK, EXIT_INVALID, EXIT_INPUT = 0, 1, 2


class InputError(Exception):
    pass


def parse_probability(text: str) -> TypeDistribution:
    try:
        p = to_scalar(text)
    except (TypeError, ValueError) as exc:
        raise InputError(f"unparseable probability {text!r}") from exc
    if not 0 < p < 1:
        raise InputError(f"probability must lie strictly between 0 and 1, got {text}")
    return TypeDistribution(p)


def _endpoint(x) -> str:
    if isinstance(x, (int, Fraction)):
        return str(x) if Fraction(x).denominator == 1 else round_half_up(Fraction(x))
    return round_half_up(x.rational_approximation(16))


def format_interval(iv: Interval) -> str:
    if iv.empty:
        return "empty"
    approx = Interval(_endpoint(iv.lower), _endpoint(iv.upper), iv.lower_closed, iv.upper_closed)
    exact = str(iv)
    return exact if str(approx) == exact else f"{exact} ≈ {approx}"


def format_poly(curve) -> str:
    terms = []
    for coef, power in zip(curve.coefficients, ("p^2", "p", "")):
        if coef == 0 and power:
            continue
        sign = "-" if coef < 0 else "+"
        body = format_number(abs(coef)) + (f" {power}" if power else "")
        terms.append((sign, body))
    head_sign, head = terms[0]
    text = ("-" if head_sign == "-" else "") + head
    return text + "".join(f" {sg} {body}" for sg, body in terms[1:])


def _hypothesis_stamp(doc, args, out) -> None:
    if args.skip_validation:
        out.append("hypotheses: not checked (--skip-validation)")
        return
    hyp = check_hypotheses(doc.machine, doc.cost)
    failed = [r.name for r in hyp.reports if not r.passed]
    out.append("hypotheses: all checks passed" if not failed
               else "hypotheses: failed " + ", ".join(failed))


def cmd_validate(doc, args, out) -> int:
    hyp = check_hypotheses(doc.machine, doc.cost)
    out.extend(r.summary() for r in hyp.reports)
    out.append(f"standing assumptions: {'hold' if hyp.valid else 'VIOLATED'}")
    out.append(f"concavity (optional): {'holds' if hyp.concavity.passed else 'fails'}")
    return EXIT_OK if hyp.valid else EXIT_INVALID


def cmd_shapley(doc, args, out) -> int:
    m = doc.machine
    out.append(f"{'state':<22} {'M':>10} {'Sh_1':>10} {'Sh_2':>10}")
    for g in GRAND_STATES:
        sh = shapley_shares(m, g)
        out.append(f"{str(g):<22} {format_number(m[g]):>10} "
                   f"{format_number(sh.share_1):>10} {format_number(sh.share_2):>10}")
    return EXIT_OK


def cmd_equilibria(doc, args, out) -> int:
    p = parse_probability(args.p)
    report = enumerate_sne(doc.machine, doc.cost, p)
    out.append(f"p(t_h) = {format_number(p.p_high)}")
    out.append("SNE set: {" + ", ".join(s.name for s in report.sorted_sne()) + "}")
    asym = sorted(report.asymmetric_nash)
    out.append("asymmetric Nash profiles: "
               + (", ".join(f"({a}, {b})" for a, b in asym) if asym else "none"))
    for s in STRATEGIES:
        if not report.is_sne(s):
            out.append(f"  ({s}, {s}) broken by {report.witnesses[s, s][0]}")
    _hypothesis_stamp(doc, args, out)
    return EXIT_OK


def cmd_intervals(doc, args, out) -> int:
    m, c = doc.machine, doc.cost
    rep = interval_report(m, c, skip_validation=args.skip_validation)
    for s in (STRATEGIES[3], STRATEGIES[0], STRATEGIES[1]):
        out.append(f"{s}: {format_interval(rep.intervals[s])}")
    out.append(f"{S_HL}: {format_interval(rep.intervals[S_HL])} (never a symmetric equilibrium)")
    out.extend(f"note: {n}" for n in rep.notes)

    ex = existence_conditions(m, c)
    out.append("existence chains vs nontrivial ranges:")
    for s in STRATEGIES:
        if s == S_HL:
            continue
        out.append(f"  {s}: chain {ex.chains[s]}, nontrivial {ex.nontrivial[s]}, "
                   f"agree {ex.agreement[s]}")
    out.append("  low type's net gain from raising effort against e_h: "
               f"{format_number(ex.margin_vs_low_type)} at (t_l,t_l), "
               f"{format_number(ex.margin_vs_high_type)} at (t_l,t_h); "
               f"sign relation holds: {ex.margin_signs_consistent}")

    rat = rationalizability(m, c)
    out.append("rationalizability (p at which the strategy is the unique SNE):")
    for s in STRATEGIES:
        w = rat.witnesses[s]
        out.append(f"  {s}: " + (f"witness p = {format_number(w)}" if w is not None
                                 else "not rationalizable"))
    for (a, b), common in rat.overlaps.items():
        out.append(f"  overlap {a} & {b}: {format_interval(common)}")
    claim = rat.disjointness_claim_holds
    out.append("  disjointness under concavity: "
               + ("not applicable (hypotheses fail)" if claim is None else str(claim)))

    existence, failure = build_farkas_systems(m, c)
    out.append("Farkas alternatives for (s_hh, s_hh):")
    for label, system in (("no profitable deviation", existence),
                          ("profitable deviation", failure)):
        res = farkas_check(system)
        if isinstance(res, DualFeasible):
            y = ", ".join(str(v) for v in res.y)
            z = ", ".join(str(v) for v in res.z)
            out.append(f"  {label}: infeasible, certificate y=({y}) z=({z})")
        else:
            pt = ", ".join(str(v) for v in res.point)
            out.append(f"  {label}: feasible at (p_l, p_h) = ({pt})")
    return EXIT_OK


def cmd_welfare(doc, args, out) -> int:
    m, c = doc.machine, doc.cost
    for s in STRATEGIES:
        if s == S_HL:
            continue
        w = welfare_curve(m, c, s)
        out.append(f"EW({s}) = {format_poly(w)}")
    if args.compare:
        a, b = (PureStrategy.parse(x) for x in args.compare)
        rep = welfare_dominance(m, c, a, b)
        d = rep.difference
        out.append(f"EW({a}) - EW({b}) = {format_poly(d)}")
        if rep.roots is None:
            out.append("curves coincide")
        else:
            roots = ", ".join(format_number(r) for r in rep.roots_in_unit) or "none"
            out.append(f"crossings in (0, 1): {roots}")
        for iv, sign in rep.pieces:
            out.append(f"  {format_interval(iv)}: {_leader_text(rep, sign)}")
        out.append(f"both are SNE on: {format_interval(rep.joint_region)}")
        for iv, sign in rep.joint_pieces:
            out.append(f"  {format_interval(iv)}: {_leader_text(rep, sign)}")
        if not rep.joint_region.empty and not rep.dominates_throughout_joint_region(a):
            out.append(f"warning: {a} does not dominate {b} on the whole common SNE range")
    return EXIT_OK


def _leader_text(rep, sign: int) -> str:
    leader = rep.leader(sign)
    return "equal welfare" if leader is None else f"{leader} has higher welfare"


def cmd_coalition(doc, args, out) -> int:
    p = parse_probability(args.p)
    eqs = enumerate_coalition_sne(doc.machine, doc.cost, p)
    out.append(f"p(t_h) = {format_number(p.p_high)}")
    out.append("coalition SNE set (probation, joint): {"
               + ", ".join(str(s) for s in sorted(eqs)) + "}")
    best = probation_best_efforts(doc.machine, doc.cost)
    for t in TYPES:
        out.append(f"probation best effort at {t.label}: "
                   + ", ".join(e.label for e in sorted(best[t])))
    _hypothesis_stamp(doc, args, out)
    return EXIT_OK


def cmd_sweep(doc, args, out) -> int:
    if args.grid < 2:
        raise InputError("--grid must be at least 2")
    rows = sweep_rows(doc.machine, doc.cost, args.grid)
    text = sweep_csv(rows, exact=args.exact)
    Path(args.out).write_text(text, encoding="utf-8")
    mismatches = sum(not r.consistent for r in rows)
    out.append(f"wrote {len(rows)} rows to {args.out}; "
               f"equilibrium flags differ from interval flags on {mismatches} row(s)")
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="tamgame", description="Effort games on a task aggregator machine.")
    parser.add_argument("--skip-validation", action="store_true",
                        help="do not run the hypothesis checks on analysis commands")
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name, func, help_text):
        p = sub.add_parser(name, help=help_text)
        p.add_argument("model", help="'example1' or a path to a JSON model document")
        p.set_defaults(func=func)
        return p

    add("validate", cmd_validate, "run every structural check")
    add("shapley", cmd_shapley, "Shapley shares on all grand states")
    add("equilibria", cmd_equilibria, "brute-force equilibria at one p").add_argument(
        "--p", required=True, help="probability of t_h, as a/b or a decimal")
    add("intervals", cmd_intervals, "closed-form SNE ranges and related checks")
    add("welfare", cmd_welfare, "welfare curves and dominance").add_argument(
        "--compare", nargs=2, metavar=("SA", "SB"))
    add("coalition", cmd_coalition, "coalition-strategy equilibria at one p").add_argument(
        "--p", required=True)
    sweep = add("sweep", cmd_sweep, "CSV of equilibria over a grid of p")
    sweep.add_argument("--grid", type=int, default=200)
    sweep.add_argument("--out", required=True)
    sweep.add_argument("--exact", action="store_true", help="write fractions, not decimals")
    return parser


def run_cli(argv: list[str] | None = None) -> tuple[int, str]:
    """Run a command and return ``(exit code, output text)``."""
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0), ""
    out: list[str] = []
    try:
        doc = load_document(args.model)
        code = args.func(doc, args, out)
    except (InputError, ModelDocumentError, ModelError, ValueError) as exc:
        return EXIT_INPUT, f"error: {exc}"
    return code, "\n".join(out)


def main(argv: list[str] | None = None) -> int:
    code, text = run_cli(argv)
    if text:
        stream = sys.stderr if code == EXIT_INPUT else sys.stdout
        print(text, file=stream)
    return code


if __name__ == "__main__":
    sys.exit(main())
