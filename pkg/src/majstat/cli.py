"""``majstat`` command line.

Exit status: 0 on success or a verified check, 1 when a verification finds a
mismatch, 2 on bad usage (malformed shapes, exceeded caps, unknown options).
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from dataclasses import asdict
from fractions import Fraction
from typing import Sequence

from . import cumulants as cm
from . import enumeration as en
from . import equivalence as eq
from . import limits as lm
from . import qpoly as qp
from . import scan as sc
from .shapes import ShapeError, SkewShape, as_skew, parse_partition, parse_shape

EXIT_OK, EXIT_MISMATCH, EXIT_USAGE = 0, 1, 2

_SUPERSCRIPT = str.maketrans("0123456789", "⁰¹²³⁴⁵⁶⁷⁸⁹")


class UsageError(Exception):
    pass


def pretty(p: qp.IntPolynomial) -> str:
    """Compact form such as ``q+q²`` or ``3+3q``."""
    terms = []
    for i, c in enumerate(p.coeffs):
        if not c:
            continue
        mono = "" if i == 0 else "q" + (str(i).translate(_SUPERSCRIPT) if i > 1 else "")
        if not mono:
            terms.append(str(c))
        else:
            terms.append(mono if c == 1 else f"{c}{mono}")
    return "+".join(terms) if terms else "0"


def _frac(x: Fraction) -> str:
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


def _shape(text: str):
    try:
        return parse_shape(text)
    except ShapeError as exc:
        raise UsageError(f"malformed shape {text!r}: {exc}") from None


def _product_form_shape(text: str):
    s = _shape(text)
    if isinstance(s, SkewShape) and not s.is_straight():
        raise UsageError(f"{text!r} is a general skew shape with no product formula; try 'oracle'")
    return s


def _part(lam) -> str:
    return ",".join(map(str, lam))


def _emit(args, payload, human: str, table: tuple[Sequence[str], list] | None = None) -> None:
    """JSON with ``--json``, CSV with ``--csv`` (when ``table`` is given), else ``human``."""
    if table is not None and getattr(args, "csv", False):
        header, rows = table
        w = csv.writer(sys.stdout, lineterminator="\n")
        w.writerow(header)
        w.writerows(rows)
        return
    if getattr(args, "json", False):
        json.dump(payload, sys.stdout, indent=2, sort_keys=True, default=str)
        sys.stdout.write("\n")
    else:
        sys.stdout.write(human.rstrip("\n") + "\n")


# --- subcommands -----------------------------------------------------------


def cmd_gf(args) -> int:
    s = _product_form_shape(args.shape)
    poly = qp.expand(qp.maj_gf(s))
    payload = poly.to_json()
    human = (
        f"shape: {s}\nshift: {payload['shift']}\n"
        f"coeffs: [{', '.join(payload['coeffs'])}]\n"
        f"polynomial: {pretty(poly)}"
    )
    _emit(args, {"shape": str(s), **payload}, human)
    return EXIT_OK


def cmd_cumulants(args) -> int:
    s = _product_form_shape(args.shape)
    pf = qp.maj_gf(s)
    k = cm.formal_cumulants(pf, args.dmax)
    mu = cm.cumulants_to_moments(k)
    alpha = cm.cumulants_to_central_moments(k)
    payload = {
        "shape": str(s),
        "dmax": args.dmax,
        "cumulants": [_frac(x) for x in k.values],
        "moments": [_frac(x) for x in mu.values],
        "central_moments": [_frac(x) for x in alpha.values],
    }
    try:
        payload["normalized_cumulants"] = cm.normalize(k) if args.dmax >= 2 else None
    except cm.DegenerateDistribution:
        payload["normalized_cumulants"] = None
    lines = [f"shape: {s}", f"{'d':>3}  {'kappa_d':>24}  {'mu_d':>24}  {'alpha_d':>24}"]
    for d in range(1, args.dmax + 1):
        lines.append(
            f"{d:>3}  {payload['cumulants'][d - 1]:>24}  {payload['moments'][d - 1]:>24}"
            f"  {payload['central_moments'][d - 1]:>24}"
        )
    if payload["normalized_cumulants"] is None:
        lines.append("normalized: undefined (zero variance)")
    else:
        lines.append("normalized: " + ", ".join(f"{x:.6g}" for x in payload["normalized_cumulants"]))
    _emit(args, payload, "\n".join(lines))
    return EXIT_OK


def _fmt(x) -> str:
    return "-" if x is None else f"{x:.6g}"


def cmd_classify(args) -> int:
    shapes = []
    try:
        if args.family:
            shapes = lm.parse_family(args.family)
    except (lm.FamilyExpressionError, ShapeError) as exc:
        raise UsageError(str(exc)) from None
    shapes += [_product_form_shape(t) for t in args.shapes]
    if not shapes:
        raise UsageError("classify needs shapes or --family")
    report = lm.classify_family(shapes, ks=args.ks)
    lines = [f"{'shape':<28} {'n':>5} {'aft':>4} {'k3*':>10} {'k4*':>10} {'KS_N':>10} {'KS_IH':>10}"]
    for r in report.rows:
        lines.append(
            f"{r.shape:<28} {r.n:>5} {r.aft:>4} {_fmt(r.kappa3_star):>10} {_fmt(r.kappa4_star):>10}"
            f" {_fmt(r.ks_normal):>10} {_fmt(r.ks_irwin_hall):>10}"
        )
    lines.append(f"verdict: consistent-with-({report.verdict})" if report.verdict != "inconclusive"
                 else "verdict: inconclusive")
    if report.limit:
        lines.append(f"limit: {report.limit}")
    lines.append(f"window: last {report.window} shapes (finite-prefix diagnosis)")
    lines += [f"note: {n}" for n in report.notes]
    _emit(args, report.to_dict(), "\n".join(lines))
    return EXIT_OK


def cmd_equiv(args) -> int:
    if args.scan is not None:
        try:
            report = eq.verify_theorem71(args.scan, widen=args.widen, jobs=args.jobs, cap=args.cap)
        except eq.CapExceeded as exc:
            raise UsageError(str(exc)) from None
        lines = [f"pairs: {len(report.pairs)}  by case: {report.case_counts()}"]
        lines += [f"  {','.join(map(str, a))}  ~  {','.join(map(str, b))}  ({c})" for (a, b), c in report.pairs]
        lines.append(f"counterexamples: {len(report.counterexamples)}")
        lines += [f"  {json.dumps(c)}" for c in report.counterexamples]
        if report.case_ii_missing or report.case_ii_unexpected:
            lines.append(f"case (ii) missing: {report.case_ii_missing}")
            lines.append(f"case (ii) unexpected: {report.case_ii_unexpected}")
        lines.append("verified" if report.ok else "MISMATCH")
        _emit(args, report.to_dict(), "\n".join(lines))
        return EXIT_OK if report.ok else EXIT_MISMATCH
    if len(args.shapes) != 2:
        raise UsageError("equiv needs two partitions, or --scan N")
    try:
        lam, nu = (parse_partition(t) for t in args.shapes)
    except ShapeError as exc:
        raise UsageError(str(exc)) from None
    same, case = eq.same_normalized_distribution(lam, nu)
    direct = eq.standardized_equal(qp.expand(qp.maj_gf(lam)), qp.expand(qp.maj_gf(nu)))
    payload = {"lambda": list(lam), "nu": list(nu), "same": same, "case": case, "direct": direct}
    human = f"{lam} vs {nu}: {'same' if same else 'different'} (case {case}); direct comparison: {direct}"
    _emit(args, payload, human)
    return EXIT_OK if same == direct else EXIT_MISMATCH


def cmd_scan(args) -> int:
    try:
        if args.what == "unimodal":
            r = sc.unimodality_scan(args.n, jobs=args.jobs, cap=args.cap)
            human = [f"n={r.n}: {len(r.exceptions)} non-unimodal partitions"]
            human += [f"  {','.join(map(str, lam))}  [{r.patterns[lam]}]" for lam in r.exceptions]
            human.append(f"unexpected: {r.unexpected}\nmissing: {r.missing}")
            human.append("verified" if r.ok else "MISMATCH")
            pred = set(r.predicted)
            rows = [[_part(lam), r.patterns[lam], lam in pred] for lam in r.exceptions]
            rows += [[_part(lam), "unimodal", True] for lam in r.missing]
            _emit(args, r.to_dict(), "\n".join(human), (("partition", "pattern", "predicted"), rows))
            return EXIT_OK if r.ok else EXIT_MISMATCH
        if args.what == "logconcave":
            r = sc.log_concavity_probabilities(args.n, jobs=args.jobs, cap=args.cap)
            human = (
                f"n={r.n}: {r.total} partitions, {r.classes} transpose classes\n"
                f"per partition:     P(LC) = {r.p_lc:.7f}  P(NLC) = {r.p_nlc:.7f}\n"
                f"per {{lam, lam'}}:   P(LC) = {r.p_lc_classes:.7f}  P(NLC) = {r.p_nlc_classes:.7f}"
            )
            cols = ("n", "total", "classes", "p_lc", "p_nlc", "p_lc_classes", "p_nlc_classes")
            _emit(args, r.to_dict(), human, (cols, [[getattr(r, c) for c in cols]]))
            return EXIT_OK
        if args.what == "nearly":
            bad = sc.nearly_unimodal_check(args.n)
            payload = {"n_max": args.n, "failures": [[list(l), p] for l, p in bad]}
            _emit(
                args,
                payload,
                f"failures up to n={args.n}: {bad or 'none'}",
                (("partition", "pattern"), [[_part(l), p] for l, p in bad]),
            )
            return EXIT_MISMATCH if bad else EXIT_OK
        if args.what == "k22":
            if args.n < 3:
                raise UsageError("scan k22 needs --n >= 3 (checks k = 3..N)")
            rows = [sc.k22_check(k) for k in range(3, args.n + 1)]
            ok = all(r.ok for r in rows)
            human = [f"k={r.k}: gap {r.gap} (expected {r.expected_gap}) {'ok' if r.ok else 'FAIL'}" for r in rows]
            human.append("verified" if ok else "MISMATCH")
            cols = ("k", "j", "gap", "expected_gap", "prefix_ok", "median_ok", "ok")
            table = (cols, [[getattr(r, c) for c in cols] for r in rows])
            _emit(args, [asdict(r) for r in rows], "\n".join(human), table)
            return EXIT_OK if ok else EXIT_MISMATCH
        if args.what == "local":
            lo = args.lo if args.lo is not None else 25
            r = sc.local_limit_scan(lo, args.n, jobs=args.jobs)
            human = (
                f"{lo} < n <= {args.n}, aft > 1: {r['checked']} partitions, max {r['max']:.6f}"
                f" at {r['argmax']}; violations of 1/9: {len(r['violations'])};"
                f" aft = 1 shapes reported separately: {len(r['aft_one'])}"
            )
            rows = [[_part(l), v, "violation"] for l, v in r["violations"]]
            rows += [[_part(l), v, "aft_one"] for l, v in r["aft_one"]]
            _emit(args, r, human, (("partition", "deviation", "kind"), rows))
            return EXIT_MISMATCH if r["violations"] else EXIT_OK
    except sc.CapExceeded as exc:
        raise UsageError(str(exc)) from None
    raise UsageError(f"unknown scan {args.what!r}")


def _oracle_target(text: str):
    """``sn:4`` or ``S4`` for permutations, ``w:2,1`` for words, anything else a shape."""
    t = text.strip()
    if t.lower().startswith("sn:") or (t[:1] == "S" and t[1:].isdigit()):
        return "perm", int(t.split(":", 1)[1] if ":" in t else t[1:])
    if t.lower().startswith(("w:", "alpha:")):
        body = t.split(":", 1)[1]
        try:
            alpha = tuple(int(x) for x in body.split(","))
        except ValueError:
            raise UsageError(f"malformed composition {body!r}") from None
        if any(a < 0 for a in alpha):
            raise UsageError(f"malformed composition {body!r}")
        return "word", alpha
    return "shape", _shape(t)


def cmd_oracle(args) -> int:
    kind, target = _oracle_target(args.target)
    stat = args.stat
    try:
        if kind == "shape":
            if stat != "maj":
                raise UsageError("tableaux support only --stat maj")
            oracle = en.stat_gf(en.syt_iter(as_skew(target)), en.tab_maj)
            if isinstance(target, SkewShape) and not target.is_straight():
                formula = None
            else:
                formula = qp.expand(qp.maj_gf(target))
        elif kind == "word":
            if stat == "baj-inv":
                raise UsageError("baj-inv is defined on permutations only")
            words = en.words_iter(target)
            pick = 0 if stat == "inv" else 1
            oracle = en.stat_gf(words, lambda w: en.word_stats(w)[pick])
            formula = qp.q_multinomial(target)
        else:
            perms = en.perms_iter(target)
            if stat == "baj-inv":
                oracle = en.stat_gf(perms, en.STATISTICS["baj-inv"])
                formula = qp.baj_inv_gf(target)
            else:
                pick = 0 if stat == "inv" else 1
                oracle = en.stat_gf(perms, lambda w: en.word_stats(w)[pick])
                formula = qp.q_factorial(target)
    except en.SizeCapError as exc:
        raise UsageError(str(exc)) from None
    payload = {"target": args.target, "stat": stat, "oracle": oracle.to_json()}
    if formula is None:
        payload["formula"] = None
        _emit(args, payload, f"oracle: {pretty(oracle)} (no product formula for this shape)")
        return EXIT_OK
    payload["formula"] = formula.to_json()
    payload["match"] = formula == oracle
    if formula == oracle:
        human = f"formula == oracle: {pretty(oracle)}"
    else:
        human = f"MISMATCH\nformula: {pretty(formula)}\noracle:  {pretty(oracle)}"
    _emit(args, payload, human)
    return EXIT_OK if formula == oracle else EXIT_MISMATCH


CSV_COLUMNS = ("k", "count", "normal_pdf_scaled", "ih_pdf_scaled")


def cmd_plot(args) -> int:
    from .svg import bar_chart

    s = _product_form_shape(args.shape)
    overlay = set()
    for item in args.overlay or ["normal", "ih"]:
        for o in item.split(","):
            if o not in ("normal", "ih"):
                raise UsageError(f"unknown overlay {o!r}; use normal or ih")
            overlay.add(o)
    rows = lm.plot_rows(s, overlay)
    out = args.out
    if out and out.endswith(".svg"):
        overlays = {
            col: [r[col] for r in rows]
            for col, key in (("normal_pdf_scaled", "normal"), ("ih_pdf_scaled", "ih"))
            if key in overlay
        }
        text = bar_chart([r["k"] for r in rows], [r["count"] for r in rows], overlays, title=f"maj on {s}")
    else:
        buf = io.StringIO()
        w = csv.DictWriter(buf, fieldnames=CSV_COLUMNS, lineterminator="\n")
        w.writeheader()
        for r in rows:
            w.writerow({k: (repr(v) if isinstance(v, float) else v) for k, v in r.items()})
        text = buf.getvalue()
    if out:
        with open(out, "w", encoding="utf-8") as fh:
            fh.write(text)
        sys.stderr.write(f"wrote {out} ({len(rows)} coefficients)\n")
    else:
        sys.stdout.write(text)
    return EXIT_OK


# --- parser -------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="majstat", description="Exact major-index statistics on tableaux.")
    sub = p.add_subparsers(dest="command", required=True)

    def add(name, fn, help_):
        sp = sub.add_parser(name, help=help_)
        sp.add_argument("--json", action="store_true", help="machine-readable output")
        sp.set_defaults(func=fn)
        return sp

    sp = add("gf", cmd_gf, "maj generating polynomial of a shape")
    sp.add_argument("shape")

    sp = add("cumulants", cmd_cumulants, "exact cumulants and moments")
    sp.add_argument("shape")
    sp.add_argument("--dmax", type=int, default=cm.DEFAULT_DMAX)

    sp = add("classify", cmd_classify, "limit-law diagnostics for a shape sequence")
    sp.add_argument("shapes", nargs="*")
    sp.add_argument("--family", help='e.g. "N+5,5 @ N=20..100:10"')
    sp.add_argument("--ks", action=argparse.BooleanOptionalAction, default=True)

    sp = add("equiv", cmd_equiv, "equal standardized distributions")
    sp.add_argument("shapes", nargs="*")
    sp.add_argument("--scan", type=int, metavar="N")
    sp.add_argument("--widen", action="store_true", help="also pair sizes more than one apart")
    sp.add_argument("--cap", type=int, default=eq.DEFAULT_PAIR_CAP)
    sp.add_argument("--jobs", type=int, default=1)

    sp = add("scan", cmd_scan, "exhaustive coefficient scans")
    sp.add_argument("what", choices=["unimodal", "logconcave", "nearly", "k22", "local"])
    sp.add_argument("--n", type=int, required=True)
    sp.add_argument("--lo", type=int, help="lower size bound (exclusive) for 'local'")
    sp.add_argument("--jobs", type=int, default=1)
    sp.add_argument("--cap", type=int, default=sc.DEFAULT_SCAN_CAP)
    sp.add_argument("--csv", action="store_true", help="CSV rows instead of the human summary")

    sp = add("oracle", cmd_oracle, "brute-force generating function vs formula")
    sp.add_argument("target", help="shape, w:<composition> or sn:<n>")
    sp.add_argument("--stat", choices=["maj", "inv", "baj-inv"], default="maj")

    sp = add("plot", cmd_plot, "coefficients with scaled density overlays")
    sp.add_argument("shape")
    sp.add_argument("--overlay", action="append", help="normal, ih, or both comma-separated")
    sp.add_argument("--out", help="*.svg for SVG, anything else for CSV; stdout if absent")
    return p


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code) if exc.code is not None else EXIT_OK
    try:
        return args.func(args)
    except UsageError as exc:
        sys.stderr.write(f"majstat: error: {exc}\n")
        return EXIT_USAGE
    except (ShapeError, ValueError) as exc:
        sys.stderr.write(f"majstat: error: {exc}\n")
        return EXIT_USAGE


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
