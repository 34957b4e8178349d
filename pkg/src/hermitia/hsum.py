"""Sums of k-th powers of binary Hermitian forms of fixed discriminant.

For a positive non-norm Delta and odd k, the object of study is

    H_{k,Delta}(z) = sum over forms h with a < 0, h(z,1) > 0 of h(z,1)^k .

At exact z in K the positive terms have |a| <= Delta*den(z)^2, so the sum
is a finite exact rational; `eval_exact` computes it with an all-integer
inner loop.  For floating z the series is absolutely convergent for k >= 3
and `eval_truncated` returns the partial sum over |a| <= a_max together
with a rigorous bound on the discarded tail (for k = 1 the full sum only
converges on K, where it has finite support, so truncation is refused).

The sum satisfies the reduction identity

    N(z)^k * H_{k,Delta}(-1/z) - H_{k,Delta}(z) = P_{k,Delta}(z, zbar)

with the transfer polynomial of `forms.expand_P`; `reduction_identity_check`
evaluates the difference of the two sides (exactly on K).  Averaging over a
fundamental cell of the lattice connects the sum to a Dirichlet series:

    mean of H_{k,Delta} = (2 pi Delta^(k+1) / ((k+1) sqrt(m))) * Z(-Delta, k+1)

which `average_quadrature` verifies numerically on a midpoint grid.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .field import FieldSpec, QuadElem, lattice_points_with_norm_below
from .forms import check_delta, expand_P


def eval_exact(f: FieldSpec, k: int, delta: int, z: QuadElem) -> Fraction:
    """H_{k,Delta}(z) as an exact rational, z in K.

    Completeness of the window: h(z,1)*den^2 is a positive integer for each
    contributing form and Delta = N(conj(b) + a z) - a*h(z,1), so
    |a| <= Delta*den^2; for each a the admissible b sweep a disk of radius
    sqrt(Delta) around -a*z.
    """
    check_delta(f, delta)
    if k < 1:
        raise ValueError("k must be a positive integer")
    if not isinstance(z, QuadElem):
        raise TypeError("eval_exact needs an exact field element")
    t, n, m = f.disc, f.norm_coeff, f.abs_disc
    zx, zy, den = z.num.x, z.num.y, z.den
    dd = delta * den * den
    ymax_num = math.isqrt(4 * dd // m)
    total = 0
    for a in range(-dd, 0):
        ax, ay = a * zx, a * zy
        ylo = (-ymax_num - ay) // den - 1
        yhi = (ymax_num - ay) // den + 1
        for vy in range(ylo, yhi + 1):
            yy = vy * den + ay
            disc4 = 4 * dd - m * yy * yy
            if disc4 < 0:
                continue
            s = math.isqrt(disc4)
            xlo = (-s - t * yy - 2 * ax) // (2 * den) - 1
            xhi = (s - t * yy - 2 * ax) // (2 * den) + 1
            tyy = t * yy
            for vx in range(xlo, xhi + 1):
                xx = vx * den + ax
                nxy = xx * xx + tyy * xx + n * yy * yy
                if nxy >= dd:
                    continue
                if (vx * vx + t * vx * vy + n * vy * vy - delta) % a:
                    continue
                total += ((nxy - dd) // a) ** k
    return Fraction(total, den ** (2 * k))


@dataclass(frozen=True)
class HEvalReport:
    """Truncated evaluation with a rigorous tail bound."""

    d: int
    k: int
    delta: int
    z: complex
    a_max: int
    value: float
    tail_bound: float
    terms: int


def tail_bound(f: FieldSpec, k: int, delta: int, a_max: int) -> float:
    """Upper bound on the discarded |a| > a_max part of H_{k,Delta}, k >= 3.

    At fixed a the positive forms have conj(b) in a disk of radius
    sqrt(Delta) around -a*z; the Voronoi cells (area sqrt(m)/2, radius at
    most rho) of those lattice points are disjoint inside the enlarged disk,
    so there are at most pi*(sqrt(Delta)+rho)^2 / (sqrt(m)/2) of them, each
    contributing at most (Delta/|a|)^k.  Summing a^(-k) over |a| > a_max is
    bounded by the integral a_max^(1-k)/(k-1).
    """
    if k < 3:
        raise ValueError("tail bound needs k >= 3")
    rho = math.sqrt(float(f.covering_radius_sq))
    count_bound = math.pi * (math.sqrt(delta) + rho) ** 2 / f.covolume
    return count_bound * delta**k * a_max ** (1 - k) / (k - 1)


def eval_truncated(
    f: FieldSpec, k: int, delta: int, z: complex, a_max: int = 2000
) -> HEvalReport:
    """Partial sum of H_{k,Delta}(z) over 0 < |a| <= a_max, with tail bound.

    Requires k >= 3: for k = 1 the defining series diverges off K, so no
    truncation is meaningful there.
    """
    check_delta(f, delta)
    if k < 3:
        raise ValueError(
            "eval_truncated needs k >= 3; for k = 1 use eval_exact on K"
        )
    if a_max < 1:
        raise ValueError("a_max must be positive")
    zc = complex(z)
    t, n, m = f.disc, f.norm_coeff, f.abs_disc
    half_sqm = f.sqrt_abs_disc / 2.0
    znorm = zc.real * zc.real + zc.imag * zc.imag
    sqrt_delta = math.sqrt(delta)
    total = 0.0
    terms = 0
    for a in range(-a_max, 0):
        cx, cy = -a * zc.real, -a * zc.imag  # v must be within sqrt(D) of here
        ylo = math.floor((cy - sqrt_delta) / half_sqm)
        yhi = math.ceil((cy + sqrt_delta) / half_sqm)
        for vy in range(ylo, yhi + 1):
            imag_off = vy * half_sqm - cy
            rad2 = delta - imag_off * imag_off
            if rad2 < 0:
                continue
            rad = math.sqrt(rad2)
            xbase = vy * t / 2.0
            xlo = math.floor(cx - rad - xbase)
            xhi = math.ceil(cx + rad - xbase)
            for vx in range(xlo, xhi + 1):
                nv = vx * vx + t * vx * vy + n * vy * vy
                if (nv - delta) % a:
                    continue
                c = (nv - delta) // a
                # b = conj(v); trace of b*z is 2*Re(conj(v)*z)
                vre, vim = vx + xbase, vy * half_sqm
                h = a * znorm + 2.0 * (vre * zc.real + vim * zc.imag) + c
                if h > 0.0:
                    total += h**k
                    terms += 1
    return HEvalReport(
        f.d, k, delta, zc, a_max, total, tail_bound(f, k, delta, a_max), terms
    )


@dataclass(frozen=True)
class ReductionCheck:
    """Difference N(z)^k H(-1/z) - H(z) - P(z, zbar) with its error budget."""

    residual: Fraction | float
    error_bound: Fraction | float
    exact: bool

    def holds(self, slack: float = 1e-9) -> bool:
        if self.exact:
            return self.residual == 0
        return abs(self.residual) <= float(self.error_bound) + slack


def reduction_identity_check(
    f: FieldSpec, k: int, delta: int, z, a_max: int = 2000
) -> ReductionCheck:
    """Evaluate both sides of the reduction identity at z != 0.

    For exact z in K the residual is an exact rational and the identity
    holds iff it is 0.  For floating z both sums are truncated at a_max and
    the error bound is the sum of the two tail bounds (k >= 3 only).
    """
    P = expand_P(f, k, delta)
    if isinstance(z, QuadElem):
        if z.is_zero():
            raise ValueError("the reduction identity needs z != 0")
        w = -z.inverse()
        lhs = z.norm() ** k * eval_exact(f, k, delta, w) - eval_exact(f, k, delta, z)
        rhs = P.eval_exact(z).as_fraction()
        return ReductionCheck(lhs - rhs, Fraction(0), True)
    zc = complex(z)
    if zc == 0:
        raise ValueError("the reduction identity needs z != 0")
    w = -1.0 / zc
    rep_w = eval_truncated(f, k, delta, w, a_max)
    rep_z = eval_truncated(f, k, delta, zc, a_max)
    znorm = abs(zc) ** 2
    residual = znorm**k * rep_w.value - rep_z.value - P.eval_complex(zc).real
    bound = znorm**k * rep_w.tail_bound + rep_z.tail_bound
    return ReductionCheck(residual, bound, False)


@dataclass(frozen=True)
class AverageReport:
    d: int
    k: int
    delta: int
    grid: int
    a_max: int
    quadrature: float
    formula: float

    @property
    def rel_error(self) -> float:
        return abs(self.quadrature - self.formula) / abs(self.formula)


def formula_average(f: FieldSpec, k: int, delta: int) -> float:
    """Mean of H_{k,Delta} over a fundamental cell, from the closed form
    (2 pi Delta^(k+1) / ((k+1) sqrt(m))) * Z(-Delta, k+1)."""
    from . import lfun

    zval = lfun.zseries_closed_form(f, delta, k + 1)
    return float(
        2 * math.pi * delta ** (k + 1) / ((k + 1) * f.sqrt_abs_disc) * float(zval)
    )


def _offsets_window(f: FieldSpec, delta: int) -> list[tuple[int, int]]:
    """Lattice offsets covering a disk of radius sqrt(Delta) around any
    point, after componentwise rounding of the center.

    Componentwise rounding (y first, then x) lands within
    sqrt(1/4 + m/16) of the true center, so offsets of norm up to
    (sqrt(Delta) + sqrt(1/4 + m/16))^2 suffice."""
    m = f.abs_disc
    slack = math.sqrt(0.25 + m / 16.0)
    bound = math.floor((math.sqrt(delta) + slack) ** 2) + 2
    return [(w.x, w.y) for w in lattice_points_with_norm_below(f, bound)]


def average_quadrature(
    f: FieldSpec,
    k: int,
    delta: int,
    grid: int = 64,
    a_max: int = 300,
    engine: str = "numpy",
) -> AverageReport:
    """Midpoint-rule average of H_{k,Delta} over the cell {u + v*theta},
    u, v in [0, 1), on a grid x grid lattice of midpoints, truncating each
    evaluation at a_max.  Summation order is fixed (row-major over the
    grid); the numpy engine vectorizes over grid points per (a, offset)
    stencil and the python engine evaluates points one at a time.
    """
    check_delta(f, delta)
    if k < 3:
        raise ValueError("averages are computed for k >= 3 only")
    if engine == "python":
        theta = f.theta_complex
        acc = 0.0
        for i in range(grid):
            for j in range(grid):
                zc = (i + 0.5) / grid + (j + 0.5) / grid * theta
                acc += eval_truncated(f, k, delta, zc, a_max).value
        quad = acc / (grid * grid)
    elif engine == "numpy":
        quad = _average_quadrature_numpy(f, k, delta, grid, a_max)
    else:
        raise ValueError(f"unknown engine {engine!r}")
    return AverageReport(f.d, k, delta, grid, a_max, quad, formula_average(f, k, delta))


def _average_quadrature_numpy(
    f: FieldSpec, k: int, delta: int, grid: int, a_max: int
) -> float:
    t, n, m = f.disc, f.norm_coeff, f.abs_disc
    half_sqm = f.sqrt_abs_disc / 2.0
    theta = f.theta_complex
    idx = (np.arange(grid) + 0.5) / grid
    zz = idx[:, None] + idx[None, :] * theta  # row-major: z[i, j]
    zre = zz.real.ravel()
    zim = zz.imag.ravel()
    znorm = zre * zre + zim * zim
    offsets = _offsets_window(f, delta)
    total = np.zeros_like(zre)
    for a in range(-a_max, 0):
        cx, cy = -a * zre, -a * zim
        by = np.rint(cy / half_sqm).astype(np.int64)
        bx = np.rint(cx - by * (t / 2.0)).astype(np.int64)
        for ox, oy in offsets:
            vx, vy = bx + ox, by + oy
            nv = vx * vx + t * vx * vy + n * vy * vy
            divisible = (nv - delta) % (-a) == 0
            c = (nv - delta) // a
            vre = vx + vy * (t / 2.0)
            vim = vy * half_sqm
            h = a * znorm + 2.0 * (vre * zre + vim * zim) + c
            mask = divisible & (h > 0.0)
            if mask.any():
                total = total + np.where(mask, h, 0.0) ** k
    return float(total.sum()) / (grid * grid)
