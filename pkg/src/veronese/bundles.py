"""Constructors for the maps and bundles attached to a Veronese embedding.

Conventions, fixed once for the whole package:

* theta rows are indexed by the degree-d monomials Z^g (graded-lex); the
  entry in column i is the partial derivative of Z^g with respect to Z_i.
  This is the multiplication-by-the-Euler-section matrix with each row
  divided by its constant multinomial factor, an automorphism of the
  target that leaves the cokernel sheaf unchanged.
* xi uses the formal-derivative transition: entry (row b, column g) is
  g_j * Z_j when g = b + e_j, else zero.  With these two choices the dual
  of theta agrees with the (d-1)-step contraction up to one global integer
  scalar, which verify_dual_identity computes and reports: the observed
  diagonal is constantly (d-1)!.
* d = 1 is rejected everywhere: that embedding is an isomorphism and the
  normal bundle is zero.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import comb, factorial

from .gradedmap import GradedMap
from .poly import HomPoly, monomials


class VeroneseDegreeError(ValueError):
    """Raised for d = 1: the embedding is an isomorphism, normal bundle zero."""


@dataclass(frozen=True)
class VeroneseContext:
    """Dimension n >= 1 and degree d >= 2 of an embedding of P^n by degree-d forms."""

    n: int
    d: int

    def __post_init__(self):
        if self.n < 1:
            raise ValueError("dimension n must be >= 1")
        if self.d == 1:
            raise VeroneseDegreeError(
                "Veronese with d=1 is an isomorphism; normal bundle is zero"
            )
        if self.d < 1:
            raise ValueError("degree d must be >= 2")

    @property
    def num_vars(self) -> int:
        return self.n + 1

    @property
    def sym_dim(self) -> int:
        """dim Sym^d of an (n+1)-dimensional space = C(n+d, d)."""
        return comb(self.n + self.d, self.d)


def theta_matrix(ctx: VeroneseContext) -> GradedMap:
    """The relation matrix of the twisted-down normal bundle.

    Maps (n+1) copies of O(1-d) to C(n+d,d) copies of O; the cokernel is
    the normal bundle twisted by O(-d).  Entry (row g, column i) is
    d(Z^g)/dZ_i.
    """
    nv = ctx.num_vars
    rows = []
    for g in monomials(nv, ctx.d):
        mono = HomPoly.monomial(nv, g)
        rows.append([mono.differentiate(i) for i in range(nv)])
    return GradedMap(nv, [1 - ctx.d] * nv, [0] * ctx.sym_dim, rows)


def normal_presentation(ctx: VeroneseContext) -> GradedMap:
    """Presentation with cokernel the normal bundle itself.

    Same entries as theta_matrix, twisted so the map runs from (n+1)
    copies of O(1) to C(n+d,d) copies of O(d); cokernel rank is
    C(n+d,d) - n - 1.
    """
    return theta_matrix(ctx).twist(ctx.d)


def xi_matrix(ctx: VeroneseContext, i: int) -> GradedMap:
    """Single contraction step Sym^i (x) O(d-i) -> Sym^{i-1} (x) O(d-i+1).

    Entries follow the formal-derivative convention: column g maps to
    sum_j g_j Z_j at row g - e_j.  Strata are surjective in the stable
    range m >= i-1; below it the first cohomology of the symmetric-power
    kernel can obstruct the section-level map.
    """
    if not 1 <= i <= ctx.d:
        raise ValueError(f"xi index {i} outside 1..{ctx.d}")
    nv = ctx.num_vars
    cols = monomials(nv, i)
    rows = []
    for b in monomials(nv, i - 1):
        row = []
        for g in cols:
            j = _single_step(b, g)
            if j is None:
                row.append(HomPoly.zero(nv, 1))
            else:
                row.append(HomPoly.variable(nv, j, g[j]))
        rows.append(row)
    return GradedMap(nv, [ctx.d - i] * len(cols), [ctx.d - i + 1] * len(rows), rows)


def _single_step(b: tuple, g: tuple):
    """Index j with g = b + e_j, or None."""
    j = None
    for k, (x, y) in enumerate(zip(b, g)):
        if y == x + 1:
            if j is not None:
                return None
            j = k
        elif y != x:
            return None
    return j


def delta_matrix(ctx: VeroneseContext, i: int) -> GradedMap:
    """Iterated contraction Sym^d (x) O -> Sym^{d-i} (x) O(i): the last i xi steps."""
    if not 1 <= i <= ctx.d:
        raise ValueError(f"delta index {i} outside 1..{ctx.d}")
    out = xi_matrix(ctx, ctx.d)
    for k in range(ctx.d - 1, ctx.d - i, -1):
        out = xi_matrix(ctx, k).compose(out)
    return out


@dataclass(frozen=True)
class KBundleStats:
    """Rank, degree and slope of the kernel of the i-step contraction."""

    i: int
    rank: int
    degree: int
    slope: Fraction


def k_bundle_stats(ctx: VeroneseContext, i: int) -> KBundleStats:
    """Closed-form invariants of ker(delta^i): additive over the contraction sequence.

    Uses the convention C(n-1, -1) = 0 for i = d+1, where the kernel is the
    whole trivial bundle and the slope is 0.
    """
    if not 1 <= i <= ctx.d + 1:
        raise ValueError(f"kernel index {i} outside 1..{ctx.d + 1}")
    quotient_rank = comb(ctx.n + ctx.d - i, ctx.d - i) if i <= ctx.d else 0
    rank = ctx.sym_dim - quotient_rank
    degree = -i * quotient_rank
    return KBundleStats(i, rank, degree, Fraction(degree, rank))


def euler_presentation(n: int) -> GradedMap:
    """Presentation of the tangent bundle of P^n: O -> O(1)^(n+1), column (Z_i)."""
    if n < 1:
        raise ValueError("need n >= 1")
    nv = n + 1
    rows = [[HomPoly.variable(nv, i)] for i in range(nv)]
    return GradedMap(nv, [0], [1] * nv, rows)


def euler_column(n: int, source_twist: int = -1) -> GradedMap:
    """The tautological column (Z_0, ..., Z_n): O(a) -> O(a+1)^(n+1)."""
    nv = n + 1
    rows = [[HomPoly.variable(nv, i)] for i in range(nv)]
    return GradedMap(nv, [source_twist], [source_twist + 1] * nv, rows)


def power_column(ctx: VeroneseContext) -> GradedMap:
    """Column of all degree-d monomials: O(-d) -> O^C(n+d,d)."""
    nv = ctx.num_vars
    rows = [[HomPoly.monomial(nv, g)] for g in monomials(nv, ctx.d)]
    return GradedMap(nv, [-ctx.d], [0] * ctx.sym_dim, rows)


@dataclass(frozen=True)
class DualIdentityReport:
    """Outcome of comparing dual(theta) with the (d-1)-step contraction."""

    ok: bool
    row_scales: tuple[Fraction, ...]
    is_scalar: bool
    scale: Fraction | None
    detail: str

    def to_json(self) -> dict:
        return {
            "ok": self.ok,
            "rowScales": [str(x) for x in self.row_scales],
            "isScalar": self.is_scalar,
            "scale": str(self.scale) if self.scale is not None else None,
            "detail": self.detail,
        }


def verify_dual_identity(ctx: VeroneseContext) -> DualIdentityReport:
    """Check dual(theta) = D * delta^{d-1} for an invertible diagonal D.

    The twists of dual(theta) already match those of delta^{d-1}; the
    comparison is entrywise on polynomial matrices.  With this package's
    conventions the diagonal is constant (d-1)!, which the report records.
    """
    lhs = theta_matrix(ctx).dual()
    rhs = delta_matrix(ctx, ctx.d - 1)
    if (
        lhs.source_twists != rhs.source_twists
        or lhs.target_twists != rhs.target_twists
    ):
        return DualIdentityReport(
            False, (), False, None, "twist lists disagree"
        )
    p, q = lhs.shape
    scales = []
    for r in range(p):
        scale = None
        for c in range(q):
            a, b = lhs.entry(r, c), rhs.entry(r, c)
            if a.is_zero() != b.is_zero():
                return DualIdentityReport(
                    False, tuple(scales), False, None,
                    f"zero pattern differs at ({r},{c})",
                )
            if a.is_zero():
                continue
            if scale is None:
                lead = a.sorted_terms()[0]
                scale = b.coeff(lead[0]) / lead[1]
            if b != a * scale:
                return DualIdentityReport(
                    False, tuple(scales), False, None,
                    f"rows not proportional at ({r},{c})",
                )
        if scale is None or scale == 0:
            return DualIdentityReport(
                False, tuple(scales), False, None, f"row {r} gives no invertible scale"
            )
        scales.append(scale)
    constant = len(set(scales)) == 1
    if constant:
        expected = Fraction(factorial(ctx.d - 1))
        mark = "= (d-1)!" if scales[0] == expected else f"!= (d-1)! = {expected}"
        detail = f"delta^{ctx.d - 1} = {scales[0]} * dual(theta); scalar diagonal {mark}"
    else:
        detail = "diagonal rescaling exists but row scales are not constant"
    return DualIdentityReport(
        True, tuple(scales), constant, scales[0] if constant else None, detail
    )
