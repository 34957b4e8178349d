"""Exact nullspaces of matrices over the rings O_d.

The polynomial cocycle spaces are cut out as kernels of integral matrices
whose entries live in O_d.  Two routes are provided:

* `quad_kernel` -- fraction-free (Bareiss) Gaussian elimination directly
  over O_d: cross-multiply with the current pivot and divide exactly by
  the previous one, which keeps entries at determinant-minor size instead
  of growing exponentially.  Exact back substitution then produces
  integral, content-free kernel vectors, and every vector is re-checked
  against the input matrix, so the result is proven.

* `quad_rank_modular` -- ranks modulo ~2^30 primes that split in the ring
  (so O_d/p = Z/p via an integer image of the generator).  Reduction mod p
  can only lower the rank, hence can only raise the kernel dimension:
  every single prime yields a true upper bound on the kernel dimension.
  The report is accepted once several primes agree on the full pivot
  pattern, which pins the dimension down with overwhelming probability;
  combined with an exact lower bound (independent verified kernel
  vectors) the bound becomes an unconditional certificate.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .field import FieldSpec, QuadElem, QuadInt, kronecker
from .intarith import is_probable_prime, sqrt_mod_prime

Pair = tuple[int, int]


def _mul(f: FieldSpec, a: Pair, b: Pair) -> Pair:
    # (x1 + y1 w)(x2 + y2 w) with w^2 = t w - n
    x1, y1 = a
    x2, y2 = b
    yy = y1 * y2
    return (x1 * x2 - f.norm_coeff * yy, x1 * y2 + y1 * x2 + f.disc * yy)


def _div(f: FieldSpec, a: Pair, b: Pair) -> Pair:
    """a / b in O_d; exact by the Bareiss divisibility guarantee."""
    u, v = b
    nb = u * u + f.disc * u * v + f.norm_coeff * v * v
    x, y = a
    cu, cv = u + f.disc * v, -v
    px = x * cu - f.norm_coeff * y * cv
    py = x * cv + y * cu + f.disc * y * cv
    return (px // nb, py // nb)


def _row_content(row: list[Pair]) -> int:
    g = 0
    for x, y in row:
        g = math.gcd(g, math.gcd(abs(x), abs(y)))
        if g == 1:
            return 1
    return g


def _strip(row: list[Pair]) -> list[Pair]:
    g = _row_content(row)
    if g > 1:
        return [(x // g, y // g) for x, y in row]
    return row


def quad_kernel(
    f: FieldSpec, rows: Sequence[Sequence[QuadInt]]
) -> list[list[QuadElem]]:
    """Basis of { v : M v = 0 } over the field of fractions of O_d.

    Returns integral, content-free vectors (QuadElem of denominator 1).
    The basis vectors are verified against M exactly before returning.
    """
    if not rows:
        return []
    ncols = len(rows[0])
    remaining: list[list[Pair]] = []
    for row in rows:
        if len(row) != ncols:
            raise ValueError("ragged matrix")
        pr = [(e.x, e.y) for e in row]
        if any(p != (0, 0) for p in pr):
            remaining.append(_strip(pr))

    zero_pair = (0, 0)
    pivots: list[tuple[int, list[Pair]]] = []  # (pivot column, frozen row)
    prev: Pair = (1, 0)
    for col in range(ncols):
        if not remaining:
            break
        candidates = [r for r in remaining if r[col] != zero_pair]
        if not candidates:
            continue
        # the smallest pivot entry keeps the minor growth down
        pivot = min(candidates, key=lambda r: max(abs(r[col][0]), abs(r[col][1])))
        pv = pivot[col]
        nxt: list[list[Pair]] = []
        for r in remaining:
            if r is pivot:
                continue
            e = r[col]
            if e == zero_pair:
                new = [
                    _div(f, _mul(f, pv, rc), prev) if rc != zero_pair else zero_pair
                    for rc in r
                ]
            else:
                new = []
                for rc, pc in zip(r, pivot):
                    t1 = _mul(f, pv, rc) if rc != zero_pair else zero_pair
                    t2 = _mul(f, e, pc) if pc != zero_pair else zero_pair
                    diff = (t1[0] - t2[0], t1[1] - t2[1])
                    new.append(_div(f, diff, prev) if diff != zero_pair else zero_pair)
            if any(p != zero_pair for p in new):
                nxt.append(new)
        pivots.append((col, pivot))
        prev = pv
        remaining = nxt

    pivot_cols = [c for c, _ in pivots]
    free_cols = [c for c in range(ncols) if c not in pivot_cols]
    basis: list[list[QuadElem]] = []
    zero = QuadElem.from_quadint(f.zero)
    for fc in free_cols:
        v: list[QuadElem] = [zero] * ncols
        v[fc] = QuadElem.from_quadint(f.one)
        for col, row in reversed(pivots):
            acc = zero
            for c in range(col + 1, ncols):
                rc = row[c]
                if rc != zero_pair and not v[c].is_zero():
                    acc = acc + QuadElem.from_quadint(f.quad(*rc)) * v[c]
            pe = QuadElem.from_quadint(f.quad(*row[col]))
            v[col] = -acc * pe.inverse() if not acc.is_zero() else zero
        basis.append(_canonical_integral(f, v))

    for v in basis:
        if not matvec_is_zero(f, rows, v):
            raise AssertionError("kernel vector failed exact verification")
    return basis


def _canonical_integral(f: FieldSpec, vec: list[QuadElem]) -> list[QuadElem]:
    """Scale to an integral vector with content 1 and a sign-normalized
    first nonzero coordinate."""
    lcm = 1
    for e in vec:
        lcm = lcm * e.den // math.gcd(lcm, e.den)
    ints = [(e.num.x * (lcm // e.den), e.num.y * (lcm // e.den)) for e in vec]
    g = _row_content(ints)
    if g > 1:
        ints = [(x // g, y // g) for x, y in ints]
    lead = next(((x, y) for x, y in ints if (x, y) != (0, 0)), (1, 0))
    if lead[0] < 0 or (lead[0] == 0 and lead[1] < 0):
        ints = [(-x, -y) for x, y in ints]
    return [QuadElem.from_quadint(f.quad(x, y)) for x, y in ints]


def matvec_is_zero(
    f: FieldSpec, rows: Sequence[Sequence[QuadInt]], vec: Sequence[QuadElem]
) -> bool:
    zero = QuadElem.from_quadint(f.zero)
    for row in rows:
        acc = zero
        for e, v in zip(row, vec):
            if not (e.is_zero() or v.is_zero()):
                acc = acc + QuadElem.from_quadint(e) * v
        if not acc.is_zero():
            return False
    return True


# ------------------------------------------------------------- modular path


@dataclass(frozen=True)
class ModularRankReport:
    ncols: int
    rank: int
    pivot_cols: tuple[int, ...]
    primes: tuple[int, ...]

    @property
    def kernel_dim(self) -> int:
        return self.ncols - self.rank


def split_primes(f: FieldSpec, count: int, start: int = 1 << 30) -> list[int]:
    """Odd primes p with (d_K/p) = 1, where O_d embeds in Z/p."""
    out: list[int] = []
    p = start | 1
    while len(out) < count:
        if is_probable_prime(p) and kronecker(f.disc, p) == 1:
            out.append(p)
        p += 2
    return out


def _omega_mod(f: FieldSpec, p: int) -> int:
    root = sqrt_mod_prime(f.disc % p, p)
    return (f.disc + root) * pow(2, p - 2, p) % p


def _rank_mod(
    f: FieldSpec, rows: Sequence[Sequence[QuadInt]], p: int
) -> tuple[int, tuple[int, ...]]:
    w = _omega_mod(f, p)
    mat = np.array(
        [[(e.x + e.y * w) % p for e in row] for row in rows], dtype=np.int64
    )
    mat = mat[np.any(mat, axis=1)]
    ncols = len(rows[0]) if rows else 0
    pivot_cols: list[int] = []
    top = 0
    nrows = mat.shape[0]
    for col in range(ncols):
        if top == nrows:
            break
        nz = np.nonzero(mat[top:, col])[0]
        if nz.size == 0:
            continue
        sel = top + int(nz[0])
        if sel != top:
            mat[[top, sel]] = mat[[sel, top]]
        inv = pow(int(mat[top, col]), p - 2, p)
        mat[top] = (mat[top] * inv) % p
        coeffs = mat[:, col].copy()
        coeffs[top] = 0
        hit = np.nonzero(coeffs)[0]
        if hit.size:
            # entries stay below p < 2^31, so the products fit in int64
            mat[hit] = (mat[hit] - coeffs[hit, None] * mat[top][None, :]) % p
        pivot_cols.append(col)
        top += 1
    return top, tuple(pivot_cols)


def quad_rank_modular(
    f: FieldSpec, rows: Sequence[Sequence[QuadInt]], agreements: int = 3
) -> ModularRankReport:
    """Rank (and kernel dimension) from pivot-pattern agreement across
    `agreements` split primes.  The kernel dimension of any single prime
    is already a true upper bound for the exact kernel dimension."""
    if not rows:
        return ModularRankReport(0, 0, (), ())
    primes = split_primes(f, agreements)
    results = [_rank_mod(f, rows, p) for p in primes]
    ranks = {r for r, _ in results}
    patterns = {cols for _, cols in results}
    if len(ranks) != 1 or len(patterns) != 1:
        # a prime of bad reduction slipped in; extend until stable
        extra = split_primes(f, 2 * agreements)[agreements:]
        for p in extra:
            primes.append(p)
            results.append(_rank_mod(f, rows, p))
        best = max({r for r, _ in results})
        results = [(r, c) for r, c in results if r == best]
        if len(results) < agreements:
            raise ArithmeticError("modular ranks failed to stabilize")
    rank, cols = results[0]
    return ModularRankReport(len(rows[0]), rank, cols, tuple(primes))


def kernel_dim_upper_bound(f: FieldSpec, rows: Sequence[Sequence[QuadInt]]) -> int:
    """An unconditional upper bound: min kernel dimension mod two split
    primes (each single prime already bounds from above)."""
    if not rows:
        return 0
    return min(
        len(rows[0]) - _rank_mod(f, rows, p)[0] for p in split_primes(f, 2)
    )
