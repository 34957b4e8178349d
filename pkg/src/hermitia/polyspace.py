"""The modules V_{k,k} of bidegree-(k, k) polynomials in (z, zbar) and the
parabolic cocycle subspaces W_{k,k} inside them.

GL_2(O_d) acts on the right on V_{k,k} by

    (P|g)(z, zbar) = (c z + e)^k (c~ zbar + e~)^k P(g z, g~ zbar),

where g = [[a, b], [c, e]], g~ is the entrywise conjugate, and gz is the
Moebius image.  On coefficient vectors the action is the Kronecker product
of two one-variable substitution matrices, so words in the generators
become integral matrices over O_d and the cocycle conditions become exact
kernel computations (see `linalg`).

W_{k,k} is the common kernel of a short list of word operators derived
from a presentation of PGL-type for each of the five rings (generators:
the inversion S, the translations T = T_1 and T_t by the ring generator t,
and for d = 1, 3 the diagonal unit rotation L).  The distinguished
diagonal involution eps splits W_{k,k} into eigenspaces indexed by the
unit group; the sums of k-th powers of Hermitian forms land in the
eigenvalue-1 part.
"""

from __future__ import annotations

from dataclasses import dataclass

from .field import FieldSpec, QuadElem, QuadInt
from .forms import (
    BiPoly,
    GroupElement,
    gen_S,
    gen_T,
    gen_T_omega,
    identity,
)
from . import linalg

# ------------------------------------------------------------------- action


def _poly_mul(f: FieldSpec, a: list[QuadInt], b: list[QuadInt]) -> list[QuadInt]:
    out = [f.zero] * (len(a) + len(b) - 1)
    for i, ai in enumerate(a):
        if ai.is_zero():
            continue
        for j, bj in enumerate(b):
            if not bj.is_zero():
                out[i + j] = out[i + j] + ai * bj
    return out


def _binomial_powers(f: FieldSpec, lo: QuadInt, hi: QuadInt, n: int) -> list[list[QuadInt]]:
    """pows[j] = coefficients (in z) of (hi*z + lo)^j for j = 0..n."""
    pows = [[f.one]]
    base = [lo, hi]
    for _ in range(n):
        pows.append(_poly_mul(f, pows[-1], base))
    return pows


def one_var_matrix(f: FieldSpec, g: GroupElement, n: int) -> list[list[QuadInt]]:
    """(n+1) x (n+1) matrix A with A[i][j] = coefficient of z^i in
    (a z + b)^j (c z + e)^(n-j)."""
    a, b, c, e = g.entries()
    top = _binomial_powers(f, b, a, n)
    bot = _binomial_powers(f, e, c, n)
    cols = [_poly_mul(f, top[j], bot[n - j]) for j in range(n + 1)]
    return [[cols[j][i] for j in range(n + 1)] for i in range(n + 1)]


def flat_index(k: int, i: int, j: int) -> int:
    return i * (k + 1) + j


def operator_matrix(f: FieldSpec, g: GroupElement, k: int) -> list[list[QuadInt]]:
    """Matrix of P -> P|g on coefficient vectors, the Kronecker product of
    the z substitution matrix and its conjugate acting on zbar."""
    az = one_var_matrix(f, g, k)
    azb = one_var_matrix(f, g.conj(), k)
    size = (k + 1) * (k + 1)
    out = [[f.zero] * size for _ in range(size)]
    for i1 in range(k + 1):
        for i2 in range(k + 1):
            left = az[i1][i2]
            if left.is_zero():
                continue
            for j1 in range(k + 1):
                for j2 in range(k + 1):
                    right = azb[j1][j2]
                    if not right.is_zero():
                        out[flat_index(k, i1, j1)][flat_index(k, i2, j2)] = left * right
    return out


def act_poly(P: BiPoly, g: GroupElement) -> BiPoly:
    """(P|g), computed directly by binomial substitution."""
    f = P.field
    k = P.n
    a, b, c, e = g.entries()
    top = _binomial_powers(f, b, a, k)
    bot = _binomial_powers(f, e, c, k)
    gc = g.conj()
    ac, bc, cc, ec = gc.entries()
    topc = _binomial_powers(f, bc, ac, k)
    botc = _binomial_powers(f, ec, cc, k)
    out: dict[tuple[int, int], QuadElem] = {}
    for (i, j), coeff in P.coeffs.items():
        zpart = _poly_mul(f, top[i], bot[k - i])
        wpart = _poly_mul(f, topc[j], botc[k - j])
        for p, zp in enumerate(zpart):
            if zp.is_zero():
                continue
            for q, wq in enumerate(wpart):
                if wq.is_zero():
                    continue
                key = (p, q)
                term = coeff * (zp * wq)
                out[key] = out[key] + term if key in out else term
    return BiPoly.make(f, k, out)


def poly_to_vector(P: BiPoly) -> list[QuadElem]:
    f = P.field
    zero = QuadElem.from_quadint(f.zero)
    vec = [zero] * (P.n + 1) ** 2
    for (i, j), c in P.coeffs.items():
        vec[flat_index(P.n, i, j)] = c
    return vec


def vector_to_poly(f: FieldSpec, k: int, vec) -> BiPoly:
    coeffs = {}
    for i in range(k + 1):
        for j in range(k + 1):
            v = vec[flat_index(k, i, j)]
            if not v.is_zero():
                coeffs[(i, j)] = v
    return BiPoly.make(f, k, coeffs)


# -------------------------------------------------------- unit eigenstructure


def unit_diagonal(f: FieldSpec, u: QuadInt) -> GroupElement:
    return GroupElement.make(f, [[u, 0], [0, 1]])


def primitive_unit(f: FieldSpec) -> QuadInt:
    """A generator of the unit group: i for d=1, a sixth root for d=3,
    -1 otherwise."""
    if f.d == 1:
        return f.theta
    if f.d == 3:
        return f.quad(2, 1)
    return f.quad(-1)


def epsilon(f: FieldSpec) -> GroupElement:
    """The diagonal unit rotation diag(u, 1) splitting W_{k,k}."""
    return unit_diagonal(f, primitive_unit(f))


def eigen_order(f: FieldSpec) -> int:
    return {1: 4, 3: 6}.get(f.d, 2)


def eigen_labels(f: FieldSpec) -> list[str]:
    if f.d == 1:
        return ["1", "i", "-1", "-i"]
    if f.d == 3:
        return ["1", "z6", "z6^2", "-1", "z6^4", "z6^5"]
    return ["1", "-1"]


def eigen_exponent(f: FieldSpec, i: int, j: int) -> int:
    """Exponent e with (z^i zbar^j)|eps = u^e z^i zbar^j."""
    return (i - j) % eigen_order(f)


# --------------------------------------------------------------- word lists

Word = list[tuple[int, GroupElement]]


def kernel_words(f: FieldSpec) -> list[Word]:
    """Signed group words whose operators cut out W_{k,k} as a common
    kernel.  They encode the parabolic cocycle conditions coming from the
    defining relations of the automorphism group over O_d."""
    I = identity(f)
    S = gen_S(f)
    T = gen_T(f)
    Tw = gen_T_omega(f)
    U = T @ S
    words: list[Word] = [
        [(1, I), (1, S)],
        [(1, I), (1, U), (1, U @ U)],
    ]
    if f.d == 1:
        L = GroupElement.make(f, [[f.theta, 0], [0, -f.theta]])
        E = Tw @ S @ L
        words.insert(1, [(1, I), (-1, L)])
        words.append([(1, I), (1, E), (1, E @ E)])
    elif f.d == 3:
        z3 = f.quad(1, 1)
        L = GroupElement.make(f, [[z3 * z3, 0], [0, z3]])
        E = Tw @ S @ L
        words.insert(1, [(1, I), (-1, L)])
        words.append([(1, I), (1, E), (1, E @ E)])
    elif f.d == 2:
        words.append(
            [(1, I), (1, S @ Tw), (1, Tw @ S), (1, Tw.inverse() @ S @ Tw @ S)]
        )
    elif f.d == 7:
        words.append(
            [
                (1, T),
                (1, S @ Tw),
                (1, Tw @ S @ T),
                (1, S @ Tw.inverse() @ S @ Tw),
            ]
        )
    else:  # d == 11
        E = Tw.inverse() @ S @ Tw @ S @ T
        words.append(
            [
                (1, T),
                (1, S @ Tw),
                (1, T @ E),
                (1, S @ Tw @ E.inverse()),
                (1, Tw @ S @ T),
                (1, S @ Tw.inverse() @ S @ Tw),
            ]
        )
    return words


def apply_word(P: BiPoly, word: Word) -> BiPoly:
    out = BiPoly.zero(P.field, P.n)
    for sign, g in word:
        term = act_poly(P, g)
        out = out + (term if sign == 1 else term.scaled(sign))
    return out


def word_matrix(f: FieldSpec, word: Word, k: int) -> list[list[QuadInt]]:
    size = (k + 1) * (k + 1)
    total = [[f.zero] * size for _ in range(size)]
    for sign, g in word:
        m = operator_matrix(f, g, k)
        for r in range(size):
            row_m = m[r]
            row_t = total[r]
            for c in range(size):
                e = row_m[c]
                if not e.is_zero():
                    row_t[c] = row_t[c] + (e if sign == 1 else f.quad(sign) * e)
    return total


def stacked_word_matrix(f: FieldSpec, k: int) -> list[list[QuadInt]]:
    rows: list[list[QuadInt]] = []
    for word in kernel_words(f):
        rows.extend(word_matrix(f, word, k))
    return [r for r in rows if any(not e.is_zero() for e in r)]


# ------------------------------------------------------------------ subspace


@dataclass(frozen=True)
class SubspaceReport:
    d: int
    k: int
    method: str
    dims: dict[str, int]
    total: int
    basis: tuple[BiPoly, ...] | None

    @property
    def split_sum(self) -> int:
        return sum(self.dims.values())


def _eigen_columns(f: FieldSpec, k: int, exponent: int) -> list[int]:
    return [
        flat_index(k, i, j)
        for i in range(k + 1)
        for j in range(k + 1)
        if eigen_exponent(f, i, j) == exponent
    ]


def eigen_kernel(
    f: FieldSpec, k: int, exponent: int, rows: list[list[QuadInt]] | None = None
) -> list[list[QuadElem]]:
    """Exact basis of W^(u^exponent), as full coefficient vectors.

    Eigenvectors of the diagonal eps operator are exactly the vectors
    supported on monomials of one exponent class, so the eigenspace is the
    kernel of the stacked word matrix restricted to those columns.
    """
    if rows is None:
        rows = stacked_word_matrix(f, k)
    cols = _eigen_columns(f, k, exponent)
    sub = [[row[c] for c in cols] for row in rows]
    sub = [r for r in sub if any(not e.is_zero() for e in r)]
    if not sub:
        sub = [[f.zero for _ in cols]]
    zero = QuadElem.from_quadint(f.zero)
    out = []
    for v in linalg.quad_kernel(f, sub):
        full = [zero] * (k + 1) ** 2
        for c, val in zip(cols, v):
            full[c] = val
        out.append(full)
    return out


def wkk(f: FieldSpec, k: int, method: str = "exact") -> SubspaceReport:
    """Compute W_{k,k} with its eigenspace splitting.

    exact: proven kernels over O_d; the basis returned is the union of the
    eigenspace bases.  The total dimension is certified by a sandwich: the
    verified eigenvectors bound it from below, and the kernel dimension
    modulo any split prime bounds it from above; when the two meet the
    result is unconditional, otherwise the full exact kernel is computed.
    modular: dimensions only, via agreeing ranks mod split primes.
    """
    rows = stacked_word_matrix(f, k)
    labels = eigen_labels(f)
    dims: dict[str, int] = {}
    if method == "modular":
        total = linalg.quad_rank_modular(f, rows).kernel_dim
        for e, lab in enumerate(labels):
            cols = _eigen_columns(f, k, e)
            sub = [[row[c] for c in cols] for row in rows]
            sub = [r for r in sub if any(not x.is_zero() for x in r)]
            if not sub:
                dims[lab] = len(cols)
                continue
            dims[lab] = linalg.quad_rank_modular(f, sub).kernel_dim
        return SubspaceReport(f.d, k, "modular", dims, total, None)
    if method != "exact":
        raise ValueError("method must be 'exact' or 'modular'")
    basis: list[BiPoly] = []
    for e, lab in enumerate(labels):
        vecs = eigen_kernel(f, k, e, rows)
        dims[lab] = len(vecs)
        basis.extend(vector_to_poly(f, k, v) for v in vecs)
    lower = len(basis)
    upper = linalg.kernel_dim_upper_bound(f, rows)
    total = lower if upper == lower else len(linalg.quad_kernel(f, rows))
    return SubspaceReport(f.d, k, "exact", dims, total, tuple(basis))


def membership(P: BiPoly, label: str = "1") -> bool:
    """Whether P lies in W_{k,k} with the given eps eigenvalue."""
    f = P.field
    for word in kernel_words(f):
        if not apply_word(P, word).is_zero():
            return False
    e = eigen_labels(f).index(label)
    u = primitive_unit(f)
    lam = u**e
    return (act_poly(P, epsilon(f)) - P.scaled(lam)).is_zero()
