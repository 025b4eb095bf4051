"""Command-line surface for the certification pipeline.

Every pipeline stage is scriptable: symbolic matrix products and trace
coefficients, the Groebner/saturation/elimination engine, univariate root
counting, the core polynomial, the full certification driver with slice
filtering and resume, and the floating-point search harness.

Exit codes: 0 when the invoked operation verified/succeeded, 1 when a check
failed, 2 on usage errors, 3 when a resource budget was exhausted.
"""

from __future__ import annotations

import argparse
import os
import sys
from fractions import Fraction

from . import bmvcert, numsearch
from .idealkit import (
    Budget,
    BudgetExceededError,
    Ideal,
    buchberger,
    eliminate,
    format_ideal,
    parse_ideal,
    saturate,
)
from .polycore import (
    GREVLEX,
    LEX,
    Polynomial,
    format_polynomial,
    parse_polynomial,
)
from .realroots import (
    count_roots_open,
    no_roots_in_unit_interval,
    parse_unipoly,
    sturm_sequence,
    format_unipoly,
)
from .symmatrix import (
    PolyMatrix,
    format_matrix,
    hurwitz,
    hurwitz_bruteforce,
    parse_matrix,
    trace_coefficients,
    verify_trace_identity,
)

OK, CHECK_FAILED, USAGE, BUDGET = 0, 1, 2, 3

ENV_BUDGET_PAIRS = "HURWITZCERT_BUDGET_PAIRS"
ENV_BUDGET_SECONDS = "HURWITZCERT_BUDGET_SECONDS"


def _order(name: str):
    if name == "grevlex":
        return GREVLEX
    if name == "lex":
        return LEX
    raise _UsageError(f"unknown order {name!r}")


class _UsageError(Exception):
    pass


def _budget(args) -> Budget:
    """Budget from flags, environment variables, or library defaults."""
    pairs = args.budget_pairs
    if pairs is None:
        pairs = int(os.environ.get(ENV_BUDGET_PAIRS, Budget.max_pairs))
    seconds = args.budget_seconds
    if seconds is None:
        seconds = float(os.environ.get(ENV_BUDGET_SECONDS,
                                       Budget.max_seconds))
    return Budget(max_pairs=pairs, max_seconds=seconds)


def _add_budget_flags(sub):
    sub.add_argument("--budget-pairs", type=int, default=None,
                     help="maximum S-pairs per engine run "
                          f"(default from ${ENV_BUDGET_PAIRS} or "
                          f"{Budget.max_pairs})")
    sub.add_argument("--budget-seconds", type=float, default=None,
                     help="wall-clock limit per engine run "
                          f"(default from ${ENV_BUDGET_SECONDS} or "
                          f"{Budget.max_seconds})")


def _read(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    with open(path) as f:
        return f.read()


def _parse_ring(text: str) -> tuple:
    names = tuple(text.replace(",", " ").split())
    if not names:
        raise _UsageError("empty ring")
    return names


def _load_matrix(path: str, ring: tuple) -> PolyMatrix:
    return parse_matrix(_read(path), ring)


def _example_pair():
    """The built-in demonstration pair: A = diag(1, x1, x2) with a fixed
    integer second matrix."""
    ring = ("x1", "x2")
    A = PolyMatrix.diagonal([Polynomial.one(ring),
                             Polynomial.variable(ring, "x1"),
                             Polynomial.variable(ring, "x2")])
    B = PolyMatrix.from_scalars([[-2, 1, 0], [-1, 2, 3], [1, -1, 3]], ring)
    return A, B


def _symbolic_pair(n: int):
    ring = tuple(f"a{i}" for i in range(1, n + 1)) + tuple(
        f"b{i}{j}" for i in range(1, n + 1) for j in range(i, n + 1))
    A = PolyMatrix.diagonal([Polynomial.variable(ring, f"a{i}")
                             for i in range(1, n + 1)])
    rows = [[Polynomial.variable(ring, f"b{min(i, j)}{max(i, j)}")
             for j in range(1, n + 1)] for i in range(1, n + 1)]
    return A, PolyMatrix(rows)


def _matrix_pair(args):
    if args.matrix_a or args.matrix_b:
        if not (args.matrix_a and args.matrix_b and args.ring):
            raise _UsageError("--matrix-a, --matrix-b and --ring go together")
        ring = _parse_ring(args.ring)
        return _load_matrix(args.matrix_a, ring), \
            _load_matrix(args.matrix_b, ring)
    return _example_pair()


# ---------------------------------------------------------------------------
# subcommands
# ---------------------------------------------------------------------------

def _cmd_hurwitz(args) -> int:
    A, B = _matrix_pair(args)
    fn = hurwitz_bruteforce if args.bruteforce else hurwitz
    S = fn(A, B, args.m, args.k)
    print(format_matrix(S))
    return OK


def _cmd_trace_coeffs(args) -> int:
    builtin = not (args.matrix_a or args.matrix_b)
    A, B = _matrix_pair(args)
    for coeff_m in ([args.m, args.m - 1] if builtin and args.m > 1
                    else [args.m]):
        coeffs = trace_coefficients(A, B, coeff_m)
        for k, c in enumerate(coeffs):
            print(f"Tr[S_{{{coeff_m},{k}}}] = {format_polynomial(c)}")
    return OK


def _cmd_trace_identity(args) -> int:
    n = args.n
    A, B = _symbolic_pair(n)
    ms = [args.m] if args.m else list(range(1, args.max_m + 1))
    ok = True
    for m in ms:
        ks = [args.k] if args.k is not None else list(range(m))
        for k in ks:
            if k >= m:
                raise _UsageError(f"need k < m, got k={k} m={m}")
            holds = verify_trace_identity(A, B, m, k)
            print(f"m={m} k={k}: {'verified' if holds else 'FAILED'}")
            ok = ok and holds
    return OK if ok else CHECK_FAILED


def _cmd_groebner(args) -> int:
    ideal = parse_ideal(_read(args.ideal))
    basis = buchberger(ideal, order=_order(args.order), budget=_budget(args))
    print(format_ideal(Ideal(ideal.ring, basis.basis)))
    return OK


def _cmd_saturate(args) -> int:
    ideal = parse_ideal(_read(args.ideal))
    by = parse_polynomial(args.by, ideal.ring)
    result = saturate(ideal, by, order=_order(args.order),
                      budget=_budget(args), method=args.method)
    print(format_ideal(result))
    return OK


def _cmd_eliminate(args) -> int:
    ideal = parse_ideal(_read(args.ideal))
    keep = _parse_ring(args.keep)
    result = eliminate(ideal, keep, order=_order(args.order),
                       budget=_budget(args))
    print(format_ideal(result))
    return OK


def _cmd_sturm(args) -> int:
    try:
        poly = parse_unipoly(args.poly)
    except ValueError as e:
        raise _UsageError(str(e))
    a_text, _, b_text = args.interval.partition(",")
    try:
        a, b = Fraction(a_text.strip()), Fraction(b_text.strip())
    except (ValueError, ZeroDivisionError):
        raise _UsageError(f"bad interval {args.interval!r}")
    if (a, b) == (Fraction(0), Fraction(1)):
        ok, cert = no_roots_in_unit_interval(poly)
        count = cert.roots_in_open_interval
        if args.verbose:
            print(cert.text())
    else:
        try:
            count = count_roots_open(poly, a, b)
        except ValueError as e:
            raise _UsageError(str(e))
        if args.verbose:
            chain = sturm_sequence(poly, normalization="primitive")
            for i, q in enumerate(chain.sequence):
                print(f"# chain[{i}] = {format_unipoly(q)}")
    print(f"roots_in_open_interval: {count}")
    if args.assert_none and count:
        return CHECK_FAILED
    return OK


def _cmd_build_p(args) -> int:
    try:
        p = bmvcert.build_p()
    except bmvcert.DenominatorError as e:
        print(f"failed: {e}")
        return CHECK_FAILED
    text = format_polynomial(p)
    if args.out:
        with open(args.out, "w") as f:
            f.write(text + "\n")
    print(text)
    print(f"# terms: {len(p.terms)}")
    print(f"# p_hash: {bmvcert.polynomial_hash(p)}")
    print(f"# joint degree in (x, y, z, u, b): "
          f"{bmvcert.scaling_exponent(p)}")
    return OK


def _report_exit(report) -> int:
    if any(s.status == "failed" for s in report.steps):
        return CHECK_FAILED
    if any(s.status == "budget-exceeded" for s in report.steps):
        return BUDGET
    return OK if report.overall == "certified" else CHECK_FAILED


def _read_last_report(path: str):
    """Reports are append-only: return the last one in the file, or None."""
    try:
        text = _read(path)
    except FileNotFoundError:
        return None
    marker = "# trace-positivity certification report"
    chunks = [c for c in text.split(marker) if c.strip()]
    if not chunks:
        return None
    return bmvcert.parse_report(marker + chunks[-1])


def _cmd_certify(args) -> int:
    budget = _budget(args)
    slices = args.slices.split("+") if args.slices else None
    resume = None
    if args.resume:
        try:
            resume = _read_last_report(args.resume)
        except ValueError as e:
            print(f"# ignoring resume file: {e}", file=sys.stderr)
    report = bmvcert.certify_m6n3(
        slice_budget=budget, interior_budget=budget, slices=slices,
        jobs=args.jobs, resume=resume)
    text = bmvcert.format_report(report, deterministic=args.deterministic)
    if args.out:
        mode = "a" if os.path.exists(args.out) else "w"
        with open(args.out, mode) as f:
            f.write(text)
    print(text, end="")
    return _report_exit(report)


def _cmd_slice(args) -> int:
    fixed = {}
    for part in args.fix.split(","):
        name, _, value = part.partition("=")
        value = value or "1"
        if value not in ("0", "1"):
            raise _UsageError(f"slice value must be 0 or 1, got {part!r}")
        fixed[name.strip()] = int(value)
    try:
        spec = bmvcert.SliceSpec.from_fixed(fixed)
    except ValueError as e:
        raise _UsageError(str(e))
    step = bmvcert.certify_slice(spec, bmvcert.build_p(),
                                 budget=_budget(args))
    print(f"[STEP] {step.name}")
    print(f"status: {step.status}")
    print(f"pairs_used: {step.pairs_used}")
    print("certificate:")
    for line in step.certificate.splitlines():
        print("  " + line)
    print("[/STEP]")
    if step.status == "verified":
        return OK
    return BUDGET if step.status == "budget-exceeded" else CHECK_FAILED


def _cmd_scan(args) -> int:
    result = numsearch.scan_coefficients(
        args.n, args.m, trials=args.trials, seed=args.seed,
        rank_a=args.rank_a, rank_b=args.rank_b)
    print(result.text())
    return CHECK_FAILED if result.flagged else OK


def _cmd_minimize(args) -> int:
    if args.matrix_b:
        import numpy as np
        ring_free = [[float(Fraction(v)) for v in row.split(",")]
                     for row in _read(args.matrix_b).split(";")]
        B = np.array(ring_free)
    else:
        import numpy as np
        B = np.array([[-2.0, 1.0, 0.0], [-1.0, 2.0, 3.0], [1.0, -1.0, 3.0]])
    point, value = numsearch.minimize_box(B, args.m, args.k,
                                          starts=args.starts, seed=args.seed)
    residual = numsearch.stationarity_residual(point, B, args.m, args.k)
    print(f"minimizer: {[float(v) for v in point]}")
    print(f"value: {value!r}")
    print(f"stationarity_residual: {residual!r}")
    return OK


# ---------------------------------------------------------------------------
# parser
# ---------------------------------------------------------------------------

def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="hurwitzcert",
        description="Exact certification toolkit for trace-coefficient "
                    "nonnegativity of symmetric matrix pencils.")
    subs = parser.add_subparsers(dest="command", required=True)

    def matrix_flags(sub):
        sub.add_argument("--matrix-a", help="path to the first matrix "
                         "(text format; '-' for stdin)")
        sub.add_argument("--matrix-b", help="path to the second matrix")
        sub.add_argument("--ring", help="ring variables, e.g. 'x y z'")

    s = subs.add_parser("hurwitz", help="one symbolic product-sum matrix")
    s.add_argument("--m", type=int, required=True)
    s.add_argument("--k", type=int, required=True)
    s.add_argument("--bruteforce", action="store_true",
                   help="use the word-enumeration oracle instead of the "
                        "recurrence")
    matrix_flags(s)
    s.set_defaults(fn=_cmd_hurwitz)

    s = subs.add_parser("trace-coeffs",
                        help="trace coefficients of (A + tB)^m")
    s.add_argument("--m", type=int, required=True)
    matrix_flags(s)
    s.set_defaults(fn=_cmd_trace_coeffs)

    s = subs.add_parser("trace-identity", aliases=["lemma1"],
                        help="verify the trace derivative identity "
                             "(m-k) Tr[S_{m,k}] = m Tr[A S_{m-1,k}]")
    s.add_argument("--m", type=int, default=None,
                   help="single m (default: all m up to --max-m)")
    s.add_argument("--max-m", type=int, default=6)
    s.add_argument("--k", type=int, default=None,
                   help="single k (default: all k < m)")
    s.add_argument("--n", type=int, default=3, help="matrix size")
    s.set_defaults(fn=_cmd_trace_identity)

    s = subs.add_parser("groebner", help="reduced Groebner basis of an ideal")
    s.add_argument("--ideal", required=True,
                   help="ideal file ('-' for stdin; '# ring:' header)")
    s.add_argument("--order", default="grevlex", choices=["grevlex", "lex"])
    _add_budget_flags(s)
    s.set_defaults(fn=_cmd_groebner)

    s = subs.add_parser("saturate", help="saturation (I : g^infinity)")
    s.add_argument("--ideal", required=True)
    s.add_argument("--by", required=True, help="the polynomial g")
    s.add_argument("--order", default="grevlex", choices=["grevlex", "lex"])
    s.add_argument("--method", default="aux", choices=["aux", "quotient"])
    _add_budget_flags(s)
    s.set_defaults(fn=_cmd_saturate)

    s = subs.add_parser("eliminate", help="elimination ideal")
    s.add_argument("--ideal", required=True)
    s.add_argument("--keep", required=True, help="variables to keep")
    s.add_argument("--order", default="grevlex", choices=["grevlex", "lex"])
    _add_budget_flags(s)
    s.set_defaults(fn=_cmd_eliminate)

    s = subs.add_parser("sturm", help="count real roots in an open interval")
    s.add_argument("--poly", required=True)
    s.add_argument("--interval", default="0,1", help="a,b")
    s.add_argument("--assert-none", action="store_true",
                   help="exit 1 when any root lies in the interval")
    s.add_argument("--verbose", action="store_true")
    s.set_defaults(fn=_cmd_sturm)

    s = subs.add_parser("build-p", help="construct the core polynomial p")
    s.add_argument("--out", help="also write p to this file")
    s.set_defaults(fn=_cmd_build_p)

    s = subs.add_parser("certify", help="run the full certification driver")
    s.add_argument("--slices", default=None,
                   help="'+'-separated filter tokens (slice names like "
                        "x or x,y plus interior/endpoints/all); "
                        "default: everything")
    s.add_argument("--resume", help="reuse verified steps from this report")
    s.add_argument("--jobs", type=int, default=1)
    s.add_argument("--out", help="append the report to this file")
    s.add_argument("--deterministic", action="store_true",
                   help="zero wall times for byte-identical output")
    _add_budget_flags(s)
    s.set_defaults(fn=_cmd_certify)

    s = subs.add_parser("slice", help="certify one boundary slice")
    s.add_argument("--fix", required=True,
                   help="comma-separated pins, e.g. 'x=1,y=1' (bare 'x' "
                        "means x=1)")
    _add_budget_flags(s)
    s.set_defaults(fn=_cmd_slice)

    s = subs.add_parser("scan", help="random PSD scan of trace coefficients")
    s.add_argument("--n", type=int, required=True)
    s.add_argument("--m", type=int, required=True)
    s.add_argument("--trials", type=int, default=10_000)
    s.add_argument("--seed", type=int, default=0)
    s.add_argument("--rank-a", type=int, default=None)
    s.add_argument("--rank-b", type=int, default=None)
    s.set_defaults(fn=_cmd_scan)

    s = subs.add_parser("minimize",
                        help="numeric box-constrained minimization of one "
                             "trace coefficient")
    s.add_argument("--m", type=int, default=4)
    s.add_argument("--k", type=int, default=2)
    s.add_argument("--matrix-b", help="numeric matrix file (rows ';', "
                                      "entries ',')")
    s.add_argument("--starts", type=int, default=32)
    s.add_argument("--seed", type=int, default=0)
    s.set_defaults(fn=_cmd_minimize)

    return parser


def run(argv=None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return USAGE if e.code not in (0, None) else 0
    try:
        return args.fn(args)
    except _UsageError as e:
        print(f"usage error: {e}", file=sys.stderr)
        return USAGE
    except BudgetExceededError as e:
        print(f"budget exhausted: {e} (pairs_done={e.pairs_done}, "
              f"elapsed={e.elapsed:.1f}s)", file=sys.stderr)
        return BUDGET
    except FileNotFoundError as e:
        print(f"usage error: {e}", file=sys.stderr)
        return USAGE


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
