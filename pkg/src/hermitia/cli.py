"""Command line interface.

Every subcommand prints rows in one of three formats (--format
table|json|csv) and uses three exit codes:

  0  success
  2  precondition violation (unknown ring, norm discriminant,
     out-of-scope s, malformed z, ...)
  3  internal oracle mismatch discovered by `selftest`

Numeric precision (in bits) defaults to the HERMITIA_PRECISION
environment variable, or 128.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import os
import random
import sys
import time
from fractions import Fraction

import mpmath

from .field import (
    QuadElem,
    field,
    nonnorm_deltas,
    smallest_nonnorm,
)
from . import cfrac, forms, hsum, lfun, polyspace

EXIT_OK = 0
EXIT_PRECONDITION = 2
EXIT_ORACLE = 3


def default_bits() -> int:
    return int(os.environ.get("HERMITIA_PRECISION", "128"))


def parse_z(f, text: str) -> QuadElem:
    """Parse "u,v" (meaning u + v*theta_d, both rational) or a bare "u"."""
    parts = text.split(",")
    if len(parts) > 2:
        raise ValueError(f"z must be 'u' or 'u,v', got {text!r}")
    try:
        u = Fraction(parts[0])
        v = Fraction(parts[1]) if len(parts) == 2 else Fraction(0)
    except (ValueError, ZeroDivisionError) as exc:
        raise ValueError(f"bad coordinate in z = {text!r}: {exc}") from None
    return QuadElem.from_display(f, u, v)


def emit(rows: list[dict], fmt: str, stream=None) -> None:
    stream = stream or sys.stdout
    if fmt == "json":
        json.dump(rows, stream, indent=2, default=str)
        stream.write("\n")
        return
    if not rows:
        return
    header = list(rows[0].keys())
    if fmt == "csv":
        buf = io.StringIO()
        writer = csv.writer(buf)
        writer.writerow(header)
        for row in rows:
            writer.writerow(["" if row.get(h) is None else str(row.get(h)) for h in header])
        stream.write(buf.getvalue())
        return
    if fmt != "table":
        raise ValueError(f"unknown format {fmt!r}")
    cells = [[("" if row.get(h) is None else str(row.get(h))) for h in header] for row in rows]
    widths = [max(len(h), *(len(r[i]) for r in cells)) for i, h in enumerate(header)]
    stream.write("  ".join(h.ljust(w) for h, w in zip(header, widths)).rstrip() + "\n")
    for r in cells:
        stream.write("  ".join(c.ljust(w) for c, w in zip(r, widths)).rstrip() + "\n")


def _nstr(value, bits: int) -> str:
    digits = max(6, int(bits * 0.301) - 2)
    return mpmath.nstr(value, digits)


# ----------------------------------------------------------------- commands


def cmd_alpha(args) -> list[dict]:
    f = field(args.d)
    deltas = [args.delta] if args.delta else nonnorm_deltas(f, args.count)
    return [
        {"d": args.d, "k": args.k, "delta": dl, "alpha": forms.alpha(f, args.k, dl)}
        for dl in deltas
    ]


def cmd_theta(args) -> list[dict]:
    f = field(args.d)
    value = lfun.theta(f, args.delta, args.s)
    return [
        {
            "d": args.d,
            "delta": args.delta,
            "s": args.s,
            "theta": str(value),
            "numeric": float(value),
        }
    ]


def cmd_rcount(args) -> list[dict]:
    f = field(args.d)
    if args.delta <= 0:
        raise ValueError("delta is the positive form discriminant")
    out = []
    for n in args.n:
        count = lfun.r_count(f, -args.delta, n)
        row = {"d": args.d, "delta": args.delta, "n": n, "count": count}
        if args.check:
            naive = lfun.r_count_naive(f, -args.delta, n)
            row["naive"] = naive
            if naive != count:
                raise OracleMismatch(f"r_count disagrees with naive count at n={n}")
        out.append(row)
    return out


def cmd_lvalue(args) -> list[dict]:
    f = field(args.d)
    bits = args.bits or default_bits()
    value = lfun.l_closed_form(f, args.s, args.delta)
    numeric = value.numeric(bits)
    return [
        {
            "d": args.d,
            "s": args.s,
            "delta": value.delta,
            "exact": value.exact_str(),
            "pi_power": value.pi_power,
            "numeric": _nstr(numeric, bits),
        }
    ]


def cmd_bench(args) -> list[dict]:
    f = field(args.d)
    bits = args.bits or default_bits()
    rep = lfun.bench_negative(f, args.s, bits, args.repeats)
    return [
        {
            "d": rep.d,
            "s": rep.s,
            "bits": rep.bits,
            "closed_form_s": f"{rep.fast_seconds:.6f}",
            "baseline_s": f"{rep.baseline_seconds:.6f}",
            "speedup": f"{rep.speedup:.1f}",
            "agree": rep.agree,
            "value": rep.value,
        }
    ]


def cmd_hconst(args) -> list[dict]:
    f = field(args.d)
    forms.check_delta(f, args.delta)
    points: list[QuadElem] = []
    if args.z:
        points = [parse_z(f, z) for z in args.z]
    else:
        rng = random.Random(args.seed)
        while len(points) < args.points:
            den = rng.randint(1, args.den)
            u = Fraction(rng.randint(-2 * den, 2 * den), den)
            v = Fraction(rng.randint(-2 * den, 2 * den), den)
            points.append(QuadElem.from_display(f, u, v))
    rows = []
    values = set()
    for z in points:
        val = hsum.eval_exact(f, args.k, args.delta, z)
        values.add(val)
        u, v = z.display_coords()
        rows.append(
            {"d": args.d, "k": args.k, "delta": args.delta, "z": f"{u},{v}", "value": str(val)}
        )
    rows.append(
        {
            "d": args.d,
            "k": args.k,
            "delta": args.delta,
            "z": f"[{len(points)} points]",
            "value": f"{len(values)} distinct value(s)",
        }
    )
    return rows


def cmd_average(args) -> list[dict]:
    f = field(args.d)
    rep = hsum.average_quadrature(
        f, args.k, args.delta, grid=args.grid, a_max=args.a_max, engine=args.engine
    )
    return [
        {
            "d": args.d,
            "k": args.k,
            "delta": args.delta,
            "grid": args.grid,
            "a_max": args.a_max,
            "quadrature": f"{rep.quadrature:.10g}",
            "formula": f"{rep.formula:.10g}",
            "rel_error": f"{rep.rel_error:.3e}",
        }
    ]


def cmd_cfrac(args) -> list[dict]:
    f = field(args.d)
    z = parse_z(f, args.z)
    exp = cfrac.hurwitz_cf(f, z, max_steps=args.max_steps)
    rows = []
    for i, a in enumerate(exp.alphas):
        u, v = QuadElem.from_quadint(a).display_coords()
        conv = exp.convergent(i)
        cu, cv = conv.display_coords()
        rows.append(
            {
                "n": i,
                "alpha": f"{u},{v}",
                "convergent": f"{cu},{cv}",
                "error": f"{exp.error(i):.3e}",
            }
        )
    rows.append(
        {
            "n": len(exp.alphas),
            "alpha": "(terminated)" if exp.terminated else "(truncated)",
            "convergent": "",
            "error": "",
        }
    )
    return rows


def cmd_dims(args) -> list[dict]:
    f = field(args.d)
    rows = []
    for k in range(1, args.kmax + 1, 2):
        rep = polyspace.wkk(f, k, method=args.method)
        row: dict = {"d": args.d, "k": k}
        row.update(rep.dims)
        row["total"] = rep.total
        rows.append(row)
    return rows


def cmd_basis(args) -> list[dict]:
    f = field(args.d)
    rep = polyspace.wkk(f, args.k, method="exact")
    rows = []
    labels = polyspace.eigen_labels(f)
    idx = 0
    per_label: dict[str, int] = {}
    for lab in labels:
        per_label[lab] = rep.dims[lab]
    want = args.eigen
    pos = 0
    for lab in labels:
        for _ in range(per_label[lab]):
            poly = rep.basis[pos]
            pos += 1
            if want and lab != want:
                continue
            rows.append({"d": args.d, "k": args.k, "eigen": lab, "index": idx, "poly": str(poly)})
            idx += 1
    if not rows:
        rows.append({"d": args.d, "k": args.k, "eigen": want or "-", "index": "-", "poly": "(empty)"})
    return rows


def cmd_expandp(args) -> list[dict]:
    f = field(args.d)
    P = forms.expand_P(f, args.k, args.delta)
    row = {"d": args.d, "k": args.k, "delta": args.delta, "poly": str(P)}
    if args.check:
        row["in_W1"] = polyspace.membership(P, "1")
        if not row["in_W1"]:
            raise OracleMismatch("expanded sum failed the cocycle membership test")
    return [row]


class OracleMismatch(Exception):
    pass


def cmd_selftest(args) -> list[dict]:
    rows = []

    def check(name: str, fn) -> None:
        try:
            fn()
            rows.append({"check": name, "status": "ok"})
        except Exception as exc:  # noqa: BLE001 - reported, then exit 3
            rows.append({"check": name, "status": f"FAIL: {exc}"})

    def residue_counts():
        for d in (1, 2, 3, 7, 11):
            f = field(d)
            delta = smallest_nonnorm(d)
            for n in (2, 3, 4, 5, 6, 8, 9, 12):
                fast = lfun.r_count(f, -delta, n)
                naive = lfun.r_count_naive(f, -delta, n)
                mult = lfun.r_count_multiplicative(f, -delta, n)
                if not fast == naive == mult:
                    raise OracleMismatch(f"d={d} n={n}: {fast}/{naive}/{mult}")

    def local_series():
        for d in (1, 2, 3, 7, 11):
            f = field(d)
            for delta in nonnorm_deltas(f, 2):
                for p in (2, 3, 5):
                    series = lfun.local_count_coeffs(f, -delta, p, 3)
                    naive = [lfun.r_count_naive(f, -delta, p**j) for j in range(4)]
                    if series != naive:
                        raise OracleMismatch(f"d={d} delta={delta} p={p}")

    def alpha_paths():
        for d in (1, 2, 3, 7, 11):
            f = field(d)
            for k in (1, 3):
                for delta in nonnorm_deltas(f, 2):
                    if forms.alpha(f, k, delta) != forms.alpha_direct(f, k, delta):
                        raise OracleMismatch(f"d={d} k={k} delta={delta}")

    def reduction_identity():
        for d in (1, 2, 3, 7, 11):
            f = field(d)
            z = QuadElem.from_display(f, Fraction(1, 3), Fraction(1, 2))
            rep = hsum.reduction_identity_check(f, 1, smallest_nonnorm(d), z)
            if not rep.holds():
                raise OracleMismatch(f"d={d}")

    def lvalue_consistency():
        for d in (1, 2, 3, 7, 11):
            f = field(d)
            if lfun.l_closed_form(f, -2).coeff != lfun.l_negative_exact(f, -2):
                raise OracleMismatch(f"d={d}")

    def cf_identities():
        for d in (1, 2, 3, 7, 11):
            f = field(d)
            z = QuadElem.from_display(f, Fraction(3, 7), Fraction(2, 5))
            exp = cfrac.hurwitz_cf(f, z)
            if not exp.terminated:
                raise OracleMismatch(f"d={d} did not terminate")
            if exp.convergent(len(exp.alphas) - 1) != z:
                raise OracleMismatch(f"d={d} final convergent")

    def cocycle_dims():
        want = {1: 1, 2: 2, 3: 1, 7: 1, 11: 2}
        for d, dim in want.items():
            rep = polyspace.wkk(field(d), 3)
            if rep.dims["1"] != dim or rep.total != rep.split_sum:
                raise OracleMismatch(f"d={d}: {rep.dims}")

    check("residue counts (fast vs naive vs multiplicative)", residue_counts)
    check("local series vs literal counts", local_series)
    check("alpha: divisor-sum vs form-sum", alpha_paths)
    check("reduction identity, exact", reduction_identity)
    check("closed form matches Bernoulli at s=-2", lvalue_consistency)
    check("continued fractions terminate and reproduce z", cf_identities)
    check("cocycle dimensions at k=3", cocycle_dims)
    return rows


# -------------------------------------------------------------------- parser


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="hermitia",
        description="Sums of powers of binary Hermitian forms over the five "
        "Euclidean imaginary quadratic rings, and the L-values they compute.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name: str, help_: str, fn, needs_d: bool = True):
        p = sub.add_parser(name, help=help_)
        p.set_defaults(fn=fn)
        if needs_d:
            p.add_argument("-d", type=int, required=True, choices=(1, 2, 3, 7, 11),
                           help="ring O_d")
        p.add_argument("--format", choices=("table", "json", "csv"), default="table")
        return p

    p = add("alpha", "the integer constants alpha_{k,Delta}", cmd_alpha)
    p.add_argument("-k", type=int, required=True)
    p.add_argument("--delta", type=int)
    p.add_argument("--count", type=int, default=3, help="how many non-norm deltas")

    p = add("theta", "exact local correction factor theta(delta, s)", cmd_theta)
    p.add_argument("--delta", type=int, required=True)
    p.add_argument("-s", type=int, required=True)

    p = add("rcount", "residue counts of N(beta) = delta mod n", cmd_rcount)
    p.add_argument("--delta", type=int, required=True)
    p.add_argument("-n", type=int, nargs="+", required=True)
    p.add_argument("--check", action="store_true", help="cross-check naively")

    p = add("lvalue", "special values L(chi, s) in closed form", cmd_lvalue)
    p.add_argument("-s", type=int, required=True)
    p.add_argument("--delta", type=int)
    p.add_argument("--bits", type=int)

    p = add("bench", "closed form vs character-sum baseline", cmd_bench)
    p.add_argument("-s", type=int, default=-2)
    p.add_argument("--bits", type=int)
    p.add_argument("--repeats", type=int, default=5)

    p = add("hconst", "evaluate the sum H_{k,Delta} at exact points", cmd_hconst)
    p.add_argument("-k", type=int, required=True)
    p.add_argument("--delta", type=int, required=True)
    p.add_argument("-z", action="append", help="point 'u,v' = u + v*theta (repeatable)")
    p.add_argument("--points", type=int, default=20)
    p.add_argument("--den", type=int, default=8)
    p.add_argument("--seed", type=int, default=0)

    p = add("average", "cell average: quadrature vs closed form", cmd_average)
    p.add_argument("-k", type=int, required=True)
    p.add_argument("--delta", type=int, required=True)
    p.add_argument("--grid", type=int, default=32)
    p.add_argument("--a-max", type=int, default=200)
    p.add_argument("--engine", choices=("numpy", "python"), default="numpy")

    p = add("cfrac", "nearest-integer continued fraction of z", cmd_cfrac)
    p.add_argument("-z", required=True, help="point 'u,v' = u + v*theta")
    p.add_argument("--max-steps", type=int, default=40)

    p = add("dims", "dimensions of the cocycle spaces W_{k,k}", cmd_dims)
    p.add_argument("--kmax", type=int, default=11)
    p.add_argument("--method", choices=("exact", "modular"), default="exact")

    p = add("basis", "exact basis of W_{k,k}", cmd_basis)
    p.add_argument("-k", type=int, required=True)
    p.add_argument("--eigen", help="restrict to one eigenvalue label")

    p = add("expandp", "the transfer polynomial P_{k,Delta}", cmd_expandp)
    p.add_argument("-k", type=int, required=True)
    p.add_argument("--delta", type=int, required=True)
    p.add_argument("--check", action="store_true", help="verify cocycle membership")

    add("selftest", "run the internal oracle cross-checks", cmd_selftest, needs_d=False)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        rows = args.fn(args)
    except OracleMismatch as exc:
        print(f"oracle mismatch: {exc}", file=sys.stderr)
        return EXIT_ORACLE
    except (ValueError, ZeroDivisionError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PRECONDITION
    emit(rows, args.format)
    if args.command == "selftest" and any(r["status"] != "ok" for r in rows):
        return EXIT_ORACLE
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
