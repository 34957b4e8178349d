"""Binary Hermitian forms over O_d, their matrix group, and the transfer
polynomials attached to sums of powers of forms.

A form is the Hermitian matrix h = [[a, b], [conj(b), c]] with a, c
rational integers and b in O_d; it acts on column vectors as the sesquilinear
map (u, v) h (conj(u), conj(v))^t, and its value along the section v = 1 is

    h(z, 1) = a*z*conj(z) + b*z + conj(b*z) + c ,

a real quantity.  The discriminant used throughout is

    delta(h) = N(b) - a*c,

so det h = -delta(h).  A matrix sigma in GL_2(O_d) acts by
sigma(h) = conj(sigma)^t h sigma, which preserves delta whenever det sigma
is a unit.

For a positive integer Delta that is *not* a norm from O_d, the forms of
discriminant Delta with a < 0 < c evaluated at 0 give the constant

    alpha_{k,Delta} = sum_{N(b) < Delta} sigma_k(Delta - N(b)),

and the finitely many forms with c < 0 < a assemble into the transfer
polynomial

    P_{k,Delta}(z, zbar) = sum_{c < 0 < a} (a*z*zbar + b*z + conj(b)*zbar + c)^k,

an element of the space of polynomials of bidegree at most (k, k).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterator, Union

from .field import FieldSpec, QuadElem, QuadInt, is_norm, lattice_points_with_norm_below
from .intarith import divisor_power_sum, divisors

ZLike = Union[QuadElem, complex]


# --------------------------------------------------------------- matrix group

@dataclass(frozen=True, slots=True)
class GroupElement:
    """2x2 matrix [[a, b], [c, e]] over O_d."""

    a: QuadInt
    b: QuadInt
    c: QuadInt
    e: QuadInt

    @staticmethod
    def make(f: FieldSpec, rows) -> "GroupElement":
        """Build from ((a, b), (c, e)) where entries are QuadInt or int."""
        (a, b), (c, e) = rows

        def q(v):
            return v if isinstance(v, QuadInt) else f.quad(v)

        return GroupElement(q(a), q(b), q(c), q(e))

    @property
    def field(self) -> FieldSpec:
        return self.a.field

    def __matmul__(self, other: "GroupElement") -> "GroupElement":
        return GroupElement(
            self.a * other.a + self.b * other.c,
            self.a * other.b + self.b * other.e,
            self.c * other.a + self.e * other.c,
            self.c * other.b + self.e * other.e,
        )

    def det(self) -> QuadInt:
        return self.a * self.e - self.b * self.c

    def conj(self) -> "GroupElement":
        return GroupElement(self.a.conj(), self.b.conj(), self.c.conj(), self.e.conj())

    def transpose(self) -> "GroupElement":
        return GroupElement(self.a, self.c, self.b, self.e)

    def inverse(self) -> "GroupElement":
        """Inverse, defined when det is a unit of O_d."""
        dt = self.det()
        if dt.norm() != 1:
            raise ValueError(f"matrix with det {dt} is not invertible over O_d")
        u = dt.conj()  # the inverse of a unit is its conjugate
        return GroupElement(u * self.e, -(u * self.b), -(u * self.c), u * self.a)

    def is_scalar_unit(self) -> bool:
        return (
            self.b.is_zero()
            and self.c.is_zero()
            and self.a == self.e
            and self.a.is_unit()
        )

    def apply(self, z: ZLike) -> ZLike:
        """Moebius action z -> (a z + b) / (c z + e)."""
        if isinstance(z, QuadElem):
            return (self.a * z + self.b) / (self.c * z + self.e)
        zc = complex(z)
        return (complex(self.a) * zc + complex(self.b)) / (
            complex(self.c) * zc + complex(self.e)
        )

    def entries(self) -> tuple[QuadInt, QuadInt, QuadInt, QuadInt]:
        return (self.a, self.b, self.c, self.e)

    def __pow__(self, k: int) -> "GroupElement":
        base = self if k >= 0 else self.inverse()
        k = abs(k)
        out = identity(self.field)
        while k:
            if k & 1:
                out = out @ base
            base = base @ base
            k >>= 1
        return out

    def __str__(self) -> str:
        return f"[[{self.a}, {self.b}], [{self.c}, {self.e}]]"


def identity(f: FieldSpec) -> GroupElement:
    return GroupElement.make(f, ((1, 0), (0, 1)))


def gen_S(f: FieldSpec) -> GroupElement:
    """The inversion [[0, -1], [1, 0]]."""
    return GroupElement.make(f, ((0, -1), (1, 0)))


def gen_T(f: FieldSpec) -> GroupElement:
    """Translation by 1."""
    return GroupElement.make(f, ((1, 1), (0, 1)))


def translation(f: FieldSpec, q: QuadInt) -> GroupElement:
    return GroupElement.make(f, ((1, q), (0, 1)))


def gen_T_omega(f: FieldSpec) -> GroupElement:
    """Translation by the conventional generator of O_d."""
    return translation(f, f.theta)


# ------------------------------------------------------------ Hermitian forms

@dataclass(frozen=True, slots=True)
class HermitianForm:
    """h = [[a, b], [conj(b), c]] with a, c in Z and b in O_d."""

    a: int
    b: QuadInt
    c: int

    @property
    def field(self) -> FieldSpec:
        return self.b.field

    def delta(self) -> int:
        return self.b.norm() - self.a * self.c

    def eval(self, z: ZLike):
        """h(z, 1); a Fraction for exact z, a float for complex z."""
        if isinstance(z, QuadElem):
            return self.a * z.norm() + (self.b * z).trace() + self.c
        zc = complex(z)
        return (
            self.a * (zc.real * zc.real + zc.imag * zc.imag)
            + 2 * (complex(self.b) * zc).real
            + self.c
        )

    def __str__(self) -> str:
        return f"[a={self.a}, b={self.b}, c={self.c}]"


def act(g: GroupElement, h: HermitianForm) -> HermitianForm:
    """conj(g)^t h g; composes contravariantly: act(g1, act(g2, h)) =
    act(g2 @ g1, h)."""
    f = g.field
    hm = (
        (f.quad(h.a), h.b),
        (h.b.conj(), f.quad(h.c)),
    )
    gc = g.conj()
    # rows of conj(g)^t h
    r00 = gc.a * hm[0][0] + gc.c * hm[1][0]
    r01 = gc.a * hm[0][1] + gc.c * hm[1][1]
    r10 = gc.b * hm[0][0] + gc.e * hm[1][0]
    r11 = gc.b * hm[0][1] + gc.e * hm[1][1]
    new_a = r00 * g.a + r01 * g.c
    new_b = r00 * g.b + r01 * g.e
    new_c = r10 * g.b + r11 * g.e
    if new_a.y != 0 or new_c.y != 0:
        raise AssertionError("form action produced a non-Hermitian matrix")
    return HermitianForm(new_a.x, new_b, new_c.x)


# ---------------------------------------------------- fixed-discriminant sets

def check_delta(f: FieldSpec, delta: int) -> None:
    if delta <= 0:
        raise ValueError(f"delta must be a positive integer, got {delta}")
    if is_norm(f, delta):
        raise ValueError(
            f"delta = {delta} is a norm from O_{f.d}; the sums of powers of "
            f"forms are only defined for non-norm discriminants"
        )


def delta_forms(
    f: FieldSpec, delta: int, side: str = "negative_a"
) -> Iterator[HermitianForm]:
    """All forms of discriminant delta with a < 0 < c (side="negative_a")
    or c < 0 < a (side="positive_a"), in a deterministic order.

    These index sets are finite: ac = N(b) - delta < 0 forces N(b) < delta
    and |a|*|c| <= delta.
    """
    check_delta(f, delta)
    if side not in ("negative_a", "positive_a"):
        raise ValueError(f"unknown side {side!r}")
    for b in lattice_points_with_norm_below(f, delta):
        m = delta - b.norm()
        for e in divisors(m):
            if side == "negative_a":
                yield HermitianForm(-e, b, m // e)
            else:
                yield HermitianForm(e, b, -(m // e))


def alpha(f: FieldSpec, k: int, delta: int) -> int:
    """The constant alpha_{k,Delta} = sum_{N(b) < Delta} sigma_k(Delta - N(b)).

    Requires delta to be a positive non-norm of O_d.
    """
    check_delta(f, delta)
    if k < 1:
        raise ValueError("k must be a positive integer")
    return sum(
        divisor_power_sum(k, delta - b.norm())
        for b in lattice_points_with_norm_below(f, delta)
    )


def alpha_direct(f: FieldSpec, k: int, delta: int) -> int:
    """alpha_{k,Delta} computed from its definition as the value at z = 0:
    the sum of h(0,1)^k = c^k over the forms with a < 0 < c."""
    if k < 1:
        raise ValueError("k must be a positive integer")
    return sum(h.c**k for h in delta_forms(f, delta, "negative_a"))


def enumerate_window(f: FieldSpec, delta: int, z: QuadElem) -> list[HermitianForm]:
    """The finitely many forms h of discriminant delta with a < 0 and
    h(z, 1) > 0, for exact z in K.

    Completeness: write z = (zx + zy*omega)/den in lowest terms.  Then
    h(z,1)*den^2 is a positive integer for every contributing form, and

        delta = N(conj(b) + a*z) - a*h(z,1) >= |a| * h(z,1),

    so |a| <= delta*den^2.  For each a, the b with h(z,1) > 0 are exactly
    those with N(conj(b) + a*z) < delta and (N(b) - delta) divisible by a;
    they live in a disk of radius sqrt(delta) around -a*z and are swept by
    an exact integer scan.
    """
    check_delta(f, delta)
    if not isinstance(z, QuadElem):
        raise TypeError("enumerate_window needs an exact field element")
    t, n, m = f.disc, f.norm_coeff, f.abs_disc
    zx, zy, den = z.num.x, z.num.y, z.den
    dd = delta * den * den
    out = []
    for a in range(-delta * den * den, 0):
        # v = conj(b): scan integer pairs with N(v*den + a*z_num) < delta*den^2
        axy, ayy = a * zx, a * zy
        ymax_num = math.isqrt(4 * dd // m)
        ylo = (-ymax_num - ayy) // den - 1
        yhi = (ymax_num - ayy) // den + 1
        for vy in range(ylo, yhi + 1):
            yy = vy * den + ayy
            disc4 = 4 * dd - m * yy * yy
            if disc4 < 0:
                continue
            s = math.isqrt(disc4)
            xlo = (-s - t * yy - 2 * axy) // (2 * den) - 1
            xhi = (s - t * yy - 2 * axy) // (2 * den) + 1
            for vx in range(xlo, xhi + 1):
                xx = vx * den + axy
                if xx * xx + t * xx * yy + n * yy * yy >= dd:
                    continue
                v = QuadInt(f, vx, vy)
                if (v.norm() - delta) % a != 0:
                    continue
                b = v.conj()
                out.append(HermitianForm(a, b, (v.norm() - delta) // a))
    out.sort(key=lambda h: (h.a, h.b.trace(), h.b.y))
    return out


# --------------------------------------------------------- bidegree (n, n)

@dataclass(frozen=True)
class BiPoly:
    """Polynomial in z and zbar of bidegree at most (n, n), with exact
    coefficients in K.  coeffs maps (i, j) -> coefficient of z^i zbar^j;
    zero coefficients are never stored."""

    field: FieldSpec
    n: int
    coeffs: dict[tuple[int, int], QuadElem]

    @staticmethod
    def make(
        f: FieldSpec, n: int, coeffs: dict[tuple[int, int], QuadElem]
    ) -> "BiPoly":
        clean = {}
        for (i, j), v in coeffs.items():
            if not (0 <= i <= n and 0 <= j <= n):
                raise ValueError(f"monomial ({i},{j}) outside bidegree ({n},{n})")
            if not v.is_zero():
                clean[(i, j)] = v
        return BiPoly(f, n, clean)

    @staticmethod
    def zero(f: FieldSpec, n: int) -> "BiPoly":
        return BiPoly(f, n, {})

    @staticmethod
    def monomial(f: FieldSpec, n: int, i: int, j: int, coeff=1) -> "BiPoly":
        c = _as_elem(f, coeff)
        return BiPoly.make(f, n, {(i, j): c})

    def is_zero(self) -> bool:
        return not self.coeffs

    def __add__(self, other: "BiPoly") -> "BiPoly":
        out = dict(self.coeffs)
        for key, v in other.coeffs.items():
            out[key] = out[key] + v if key in out else v
        return BiPoly.make(self.field, max(self.n, other.n), out)

    def __sub__(self, other: "BiPoly") -> "BiPoly":
        return self + (-other)

    def __neg__(self) -> "BiPoly":
        return BiPoly(self.field, self.n, {k: -v for k, v in self.coeffs.items()})

    def scaled(self, factor) -> "BiPoly":
        c = _as_elem(self.field, factor)
        return BiPoly.make(
            self.field, self.n, {k: v * c for k, v in self.coeffs.items()}
        )

    def swap_args(self) -> "BiPoly":
        """The polynomial P(zbar, z), i.e. monomial (i, j) -> (j, i)."""
        return BiPoly(self.field, self.n, {(j, i): v for (i, j), v in self.coeffs.items()})

    def eval_exact(self, z: QuadElem, zbar: QuadElem | None = None) -> QuadElem:
        if zbar is None:
            zbar = z.conj()
        zero = _as_elem(self.field, 0)
        zp = _power_list(z, self.n)
        wp = _power_list(zbar, self.n)
        total = zero
        for (i, j), v in self.coeffs.items():
            total = total + v * zp[i] * wp[j]
        return total

    def eval_complex(self, z: complex, zbar: complex | None = None) -> complex:
        if zbar is None:
            zbar = z.conjugate()
        total = 0j
        for (i, j), v in self.coeffs.items():
            total += complex(v) * z**i * zbar**j
        return total

    def terms(self) -> list[tuple[int, int, QuadElem]]:
        """Sorted (i, j, coeff) triples."""
        return [(i, j, self.coeffs[(i, j)]) for (i, j) in sorted(self.coeffs)]

    def __str__(self) -> str:
        if self.is_zero():
            return "0"
        parts = []
        for i, j, v in self.terms():
            factors = [f"({v})"]
            if i:
                factors.append("z" if i == 1 else f"z^{i}")
            if j:
                factors.append("zbar" if j == 1 else f"zbar^{j}")
            parts.append("*".join(factors))
        return " + ".join(parts)


def _as_elem(f: FieldSpec, v) -> QuadElem:
    if isinstance(v, QuadElem):
        return v
    if isinstance(v, QuadInt):
        return QuadElem.from_quadint(v)
    if isinstance(v, int):
        return QuadElem(f.quad(v), 1)
    if isinstance(v, Fraction):
        return QuadElem.make(f, v.numerator, 0, v.denominator)
    raise TypeError(f"cannot coerce {v!r} to a coefficient")


def _power_list(z: QuadElem, n: int) -> list[QuadElem]:
    out = [_as_elem(z.field, 1)]
    for _ in range(n):
        out.append(out[-1] * z)
    return out


def expand_P(f: FieldSpec, k: int, delta: int) -> BiPoly:
    """The transfer polynomial P_{k,Delta} as an exact BiPoly of bidegree
    (k, k): the sum of (a z zbar + b z + conj(b) zbar + c)^k over the forms
    of discriminant delta with c < 0 < a."""
    if k < 1:
        raise ValueError("k must be a positive integer")
    check_delta(f, delta)
    acc: dict[tuple[int, int], QuadInt] = {}
    fact = math.factorial
    for h in delta_forms(f, delta, "positive_a"):
        a_pow = [h.a**i for i in range(k + 1)]
        c_pow = [h.c**i for i in range(k + 1)]
        b_pow = _int_power_list(h.b, k)
        bbar_pow = _int_power_list(h.b.conj(), k)
        for i in range(k + 1):
            for j in range(k + 1 - i):
                for l in range(k + 1 - i - j):
                    r = k - i - j - l
                    mult = fact(k) // (fact(i) * fact(j) * fact(l) * fact(r))
                    coeff = (mult * a_pow[i] * c_pow[r]) * (b_pow[j] * bbar_pow[l])
                    key = (i + j, i + l)
                    acc[key] = acc[key] + coeff if key in acc else coeff
    return BiPoly.make(
        f, k, {key: QuadElem.from_quadint(v) for key, v in acc.items()}
    )


def _int_power_list(q: QuadInt, n: int) -> list[QuadInt]:
    out = [q.field.one]
    for _ in range(n):
        out.append(out[-1] * q)
    return out
