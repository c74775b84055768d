"""Symmetric powers of exact sequences: dualizing commutes with symmetrizing.

For a short exact sequence 0 -> M -> N -> P -> 0 of rational vector spaces
there are two routes to the induced sequence on i-th symmetric powers of
duals: symmetrize the quotient map and dualize, or dualize first and
symmetrize the dualized surjection.  Both routes are realized here as
explicit matrices on monomial bases and compared entry by entry.

The identification of (Sym^i W)^* with Sym^i(W^*) uses the averaging
pairing <w_1...w_i, l_1...l_i> = (1/i!) sum over permutations of the
products l_{sigma(k)}(w_k); on monomials this pairing is diagonal with
entry a!/i! at the exponent vector a.  All denominators stay exact.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import factorial

from .linalg import QMatrix
from .poly import HomPoly, monomial_index, monomials
from .prng import SplitMix64


@dataclass(frozen=True)
class LinearSES:
    """0 -> M --phi--> N --psi--> P -> 0 with exactness checked."""

    phi: QMatrix  # n x m, injective
    psi: QMatrix  # p x n, surjective, psi*phi = 0

    def __post_init__(self):
        n, m = self.phi.rows, self.phi.cols
        p = self.psi.rows
        if self.psi.cols != n:
            raise ValueError("psi domain must match phi codomain")
        if n != m + p:
            raise ValueError("dimensions not exact: need dim N = dim M + dim P")
        if self.phi.rank() != m:
            raise ValueError("phi not injective")
        if self.psi.rank() != p:
            raise ValueError("psi not surjective")
        if not (self.psi * self.phi).is_zero():
            raise ValueError("psi . phi != 0")

    @property
    def dims(self) -> tuple[int, int, int]:
        return (self.phi.cols, self.phi.rows, self.psi.rows)


def sym_power(f: QMatrix, i: int) -> QMatrix:
    """Matrix of the i-th symmetric power on monomial bases.

    A monomial x^a of the source maps to the product of the i-th powers of
    the columns of f, expanded on the degree-i monomials of the target.
    """
    if i < 1:
        raise ValueError("symmetric power degree must be >= 1")
    rows_dim = f.rows
    cols = []
    col_polys = [
        HomPoly(rows_dim, 1, {tuple(1 if r == k else 0 for r in range(rows_dim)): f[(k, j)]
                              for k in range(rows_dim) if f[(k, j)]})
        for j in range(f.cols)
    ]
    tgt_index = monomial_index(rows_dim, i)
    tgt_count = len(monomials(rows_dim, i))
    for a in monomials(f.cols, i):
        image = HomPoly.constant(rows_dim, 1)
        for j, e in enumerate(a):
            for _ in range(e):
                image = image * col_polys[j]
        col = [Fraction(0)] * tgt_count
        for mono, c in image.terms.items():
            col[tgt_index[mono]] = c
        cols.append(col)
    return QMatrix([[cols[j][r] for j in range(len(cols))] for r in range(tgt_count)])


def _dual_diag(dim: int, i: int) -> tuple[QMatrix, QMatrix]:
    """Diagonal pairing matrices for (Sym^i W)^* vs Sym^i(W^*).

    Returns (D, D_inv) with D[a][a] = i!/a!: abstract dual basis vectors of
    monomials correspond to D times the dual-variable monomials.
    """
    monos = monomials(dim, i)
    fi = factorial(i)
    diag = []
    for a in monos:
        fa = 1
        for e in a:
            fa *= factorial(e)
        diag.append(Fraction(fi, fa))
    n = len(monos)
    d = QMatrix([[diag[r] if r == c else 0 for c in range(n)] for r in range(n)])
    dinv = QMatrix([[1 / diag[r] if r == c else 0 for c in range(n)] for r in range(n)])
    return d, dinv


def injection_via_symmetrize_then_dualize(ses: LinearSES, i: int) -> QMatrix:
    """Route one for Sym^i P^* -> Sym^i N^*: transpose Sym^i(psi), then
    translate abstract duals to monomials of the dual variables."""
    s = sym_power(ses.psi, i)
    n_dim = ses.phi.rows
    p_dim = ses.psi.rows
    dn, _ = _dual_diag(n_dim, i)
    _, dp_inv = _dual_diag(p_dim, i)
    return dn * s.transpose() * dp_inv


def injection_via_dualize_then_symmetrize(ses: LinearSES, i: int) -> QMatrix:
    """Route two: symmetric power of the plain transpose of psi."""
    return sym_power(ses.psi.transpose(), i)


def _mult_injection(ses: LinearSES, i: int) -> QMatrix:
    """Sym^{i-1} N (x) M -> Sym^i N: multiply by the image of a basis vector
    of M under phi.  Columns indexed by (monomial b of degree i-1, k)."""
    n_dim = ses.phi.rows
    m_dim = ses.phi.cols
    src_monos = monomials(n_dim, i - 1)
    tgt_index = monomial_index(n_dim, i)
    tgt_count = len(monomials(n_dim, i))
    cols = []
    for b in src_monos:
        for k in range(m_dim):
            col = [Fraction(0)] * tgt_count
            for j in range(n_dim):
                c = ses.phi[(j, k)]
                if c:
                    mono = b[:j] + (b[j] + 1,) + b[j + 1 :]
                    col[tgt_index[mono]] += c
            cols.append(col)
    return QMatrix([[cols[j][r] for j in range(len(cols))] for r in range(tgt_count)])


def quotient_via_symmetrize_then_dualize(ses: LinearSES, i: int) -> QMatrix:
    """Route one for Sym^i N^* -> Sym^{i-1} N^* (x) M^*: dualize the
    multiplication injection, with the pairing diagonals on both sides
    (the M^* tensor factor pairs plainly)."""
    inj = _mult_injection(ses, i)
    n_dim = ses.phi.rows
    m_dim = ses.phi.cols
    dlow, _ = _dual_diag(n_dim, i - 1)
    _, dn_inv = _dual_diag(n_dim, i)
    # result = (D_low (x) I_M) * inj^T * D_N^{-1}, all diagonals explicit
    injt = inj.transpose()
    out = []
    for r in range(injt.rows):
        scale = dlow[(r // m_dim, r // m_dim)]
        out.append([scale * injt[(r, c)] * dn_inv[(c, c)] for c in range(injt.cols)])
    return QMatrix(out)


def quotient_via_dualize_then_symmetrize(ses: LinearSES, i: int) -> QMatrix:
    """Route two, the explicit peel-one-factor formula: a monomial l^a maps
    to (1/i) sum_j a_j [l^(a - e_j)] (x) phi^T(l_j)."""
    n_dim = ses.phi.rows
    m_dim = ses.phi.cols
    src_monos = monomials(n_dim, i)
    low_index = monomial_index(n_dim, i - 1)
    low_count = len(monomials(n_dim, i - 1))
    cols = []
    for a in src_monos:
        col = [Fraction(0)] * (low_count * m_dim)
        for j in range(n_dim):
            if not a[j]:
                continue
            b = a[:j] + (a[j] - 1,) + a[j + 1 :]
            for k in range(m_dim):
                c = ses.phi[(j, k)]
                if c:
                    col[low_index[b] * m_dim + k] += Fraction(a[j], i) * c
        cols.append(col)
    return QMatrix(
        [[cols[j][r] for j in range(len(cols))] for r in range(low_count * m_dim)]
    )


def check_commute(ses: LinearSES, i: int) -> bool:
    """True iff both routes give identical injection and quotient matrices."""
    if i < 1:
        raise ValueError("symmetric power degree must be >= 1")
    inj1 = injection_via_symmetrize_then_dualize(ses, i)
    inj2 = injection_via_dualize_then_symmetrize(ses, i)
    quo1 = quotient_via_symmetrize_then_dualize(ses, i)
    quo2 = quotient_via_dualize_then_symmetrize(ses, i)
    return inj1 == inj2 and quo1 == quo2


def quotient_map(ses: LinearSES, i: int) -> QMatrix:
    """The peel-one-factor map Sym^i N^* -> Sym^{i-1} N^* (x) M^*.

    For i = 1 this is the plain transpose of phi.
    """
    if i < 1:
        raise ValueError("symmetric power degree must be >= 1")
    return quotient_via_dualize_then_symmetrize(ses, i)


def random_ses(seed: int, max_middle: int = 5) -> LinearSES:
    """Seeded random exact sequence with small integer entries.

    phi is a random injective integer matrix; psi rows span the left kernel
    of phi.  Dimensions are drawn with 1 <= dim M, dim P and dim N <= max_middle.
    """
    rng = SplitMix64(seed)
    while True:
        n = rng.next_int(2, max_middle)
        m = rng.next_int(1, n - 1)
        phi = QMatrix(
            [[rng.next_int(-4, 4) for _ in range(m)] for _ in range(n)]
        )
        if phi.rank() != m:
            continue
        kernel = phi.transpose().kernel_basis()
        psi = QMatrix([[v[(j, 0)] for j in range(n)] for v in kernel])
        return LinearSES(phi, psi)
