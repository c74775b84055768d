"""Maps between direct sums of twisted line bundles on projective space.

A GradedMap from O(s_1) + ... + O(s_q) to O(t_1) + ... + O(t_p) is a p x q
matrix of forms, entry (i, j) homogeneous of degree t_i - s_j (zero when
that is negative).  Twist convention: sections of O(a) in twist m are the
forms of degree a + m; twists always name the line-bundle summands
themselves, never shifted duals, so dual() is a pure transpose with both
twist lists negated.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .poly import (
    HomPoly,
    monomial_index,
    monomials,
    parse_poly,
    render_poly,
    section_dim,
)
from .linalg import QMatrix


class TwistMismatchError(ValueError):
    """Composition attempted between maps with incompatible twists."""


class BasePointError(ValueError):
    """Parametrization forms share a common zero."""


# -- binary form gcd ----------------------------------------------------------


def _univ_gcd(a: list[Fraction], b: list[Fraction]) -> list[Fraction]:
    """Monic gcd of univariate polynomials given as coefficient lists."""

    def trim(p):
        while p and not p[-1]:
            p.pop()
        return p

    a, b = trim(list(a)), trim(list(b))
    while b:
        # remainder of a modulo b
        while len(a) >= len(b) and a:
            f = a[-1] / b[-1]
            shift = len(a) - len(b)
            for i, c in enumerate(b):
                a[i + shift] -= f * c
            trim(a)
        a, b = b, a
    if a:
        lead = a[-1]
        a = [c / lead for c in a]
    return a


def _split_st_powers(f: HomPoly) -> tuple[int, int, list[Fraction]]:
    """Write a nonzero binary form as s^vs * t^vt * u(s) with u dehomogenized.

    Returns (vs, vt, coeffs of u by ascending s-power); u has nonzero
    constant and leading coefficients, so no factor is lost by passing to
    the affine chart t = 1.
    """
    vs = min(m[0] for m in f.terms)
    vt = min(m[1] for m in f.terms)
    deg = f.degree - vs - vt
    coeffs = [Fraction(0)] * (deg + 1)
    for (a, _b), c in f.terms.items():
        coeffs[a - vs] = c
    return vs, vt, coeffs


def binary_gcd(f: HomPoly, g: HomPoly) -> HomPoly:
    """Monic gcd of two binary forms (zero if both are zero)."""
    if f.num_vars != 2 or g.num_vars != 2:
        raise ValueError("binary_gcd needs forms in two variables")
    if f.is_zero() and g.is_zero():
        return HomPoly.zero(2, 0)
    if f.is_zero() or g.is_zero():
        h = g if f.is_zero() else f
        lead = h.sorted_terms()[0][1]
        return h * (1 / lead)
    vs1, vt1, u1 = _split_st_powers(f)
    vs2, vt2, u2 = _split_st_powers(g)
    u = _univ_gcd(u1, u2)
    k = len(u) - 1
    vs, vt = min(vs1, vs2), min(vt1, vt2)
    terms = {}
    for a, c in enumerate(u):
        if c:
            terms[(a + vs, k - a + vt)] = c
    return HomPoly(2, k + vs + vt, terms)


def binary_gcd_many(forms: Sequence[HomPoly]) -> HomPoly:
    acc = HomPoly.zero(2, 0)
    for f in forms:
        if f.is_zero():
            continue
        acc = binary_gcd(acc, f)
        if acc.degree == 0:
            break
    return acc


# -- curves --------------------------------------------------------------------


@dataclass(frozen=True)
class CurveParam:
    """A base-point-free parametrization of a rational curve in P^n.

    forms: n+1 binary forms of one common degree e >= 1 with no common zero.
    """

    degree: int
    forms: tuple[HomPoly, ...]

    def __post_init__(self):
        if self.degree < 1:
            raise ValueError("parametrization degree must be >= 1")
        if len(self.forms) < 2:
            raise ValueError("need at least two forms")
        for f in self.forms:
            if f.num_vars != 2:
                raise ValueError("parametrization forms must be binary")
            if f.degree != self.degree:
                raise ValueError("inhomogeneous parametrization")
        g = binary_gcd_many(self.forms)
        if g.is_zero() or g.degree > 0:
            raise BasePointError("parametrization has base point")

    @property
    def ambient_vars(self) -> int:
        return len(self.forms)

    def to_json(self) -> dict:
        return {
            "degree": self.degree,
            "forms": [render_poly(f) for f in self.forms],
        }

    @classmethod
    def from_json(cls, obj: dict) -> "CurveParam":
        degree = int(obj["degree"])
        forms = tuple(parse_poly(s, 2, degree) for s in obj["forms"])
        return cls(degree, forms)


# -- graded maps ----------------------------------------------------------------


class GradedMap:
    """Matrix of forms between twisted free sheaves."""

    __slots__ = ("num_vars", "source_twists", "target_twists", "entries")

    def __init__(
        self,
        num_vars: int,
        source_twists: Sequence[int],
        target_twists: Sequence[int],
        entries: Sequence[Sequence[HomPoly]],
    ):
        self.num_vars = num_vars
        self.source_twists = tuple(int(s) for s in source_twists)
        self.target_twists = tuple(int(t) for t in target_twists)
        rows = tuple(tuple(row) for row in entries)
        if len(rows) != len(self.target_twists):
            raise ValueError("row count != number of target twists")
        for i, row in enumerate(rows):
            if len(row) != len(self.source_twists):
                raise ValueError("column count != number of source twists")
            for j, e in enumerate(row):
                if e.num_vars != num_vars:
                    raise ValueError("entry variable count mismatch")
                want = self.target_twists[i] - self.source_twists[j]
                if e.is_zero():
                    continue
                if want < 0:
                    raise ValueError(
                        f"entry ({i},{j}) must vanish: twist gap {want} < 0"
                    )
                if e.degree != want:
                    raise ValueError(
                        f"entry ({i},{j}) has degree {e.degree}, expected {want}"
                    )
        self.entries = rows

    # -- constructors ----------------------------------------------------------

    @classmethod
    def identity(cls, num_vars: int, twists: Sequence[int]) -> "GradedMap":
        n = len(twists)
        one = HomPoly.constant(num_vars, 1)
        rows = [
            [one if i == j else HomPoly.zero(num_vars, 0) for j in range(n)]
            for i in range(n)
        ]
        return cls(num_vars, twists, twists, rows)

    @property
    def shape(self) -> tuple[int, int]:
        return (len(self.target_twists), len(self.source_twists))

    def entry(self, i: int, j: int) -> HomPoly:
        return self.entries[i][j]

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, GradedMap)
            and self.num_vars == other.num_vars
            and self.source_twists == other.source_twists
            and self.target_twists == other.target_twists
            and self.entries == other.entries
        )

    def __repr__(self) -> str:
        p, q = self.shape
        return f"GradedMap({p}x{q}, {self.source_twists} -> {self.target_twists})"

    # -- operations --------------------------------------------------------------

    def compose(self, inner: "GradedMap") -> "GradedMap":
        """self after inner: requires inner's target twists = self's source twists."""
        if self.num_vars != inner.num_vars:
            raise TwistMismatchError("variable count mismatch in composition")
        if self.source_twists != inner.target_twists:
            raise TwistMismatchError(
                f"cannot compose: {self.source_twists} != {inner.target_twists}"
            )
        p, _ = self.shape
        _, q = inner.shape
        rows = []
        for i in range(p):
            row = []
            for j in range(q):
                deg = self.target_twists[i] - inner.source_twists[j]
                acc = HomPoly.zero(self.num_vars, max(deg, 0))
                for k in range(len(self.source_twists)):
                    a = self.entries[i][k]
                    b = inner.entries[k][j]
                    if not a.is_zero() and not b.is_zero():
                        acc = acc + a * b
                row.append(acc)
            rows.append(row)
        return GradedMap(self.num_vars, inner.source_twists, self.target_twists, rows)

    def dual(self) -> "GradedMap":
        """Transpose with negated twists: the map between dual twisted frees."""
        p, q = self.shape
        rows = [[self.entries[i][j] for i in range(p)] for j in range(q)]
        return GradedMap(
            self.num_vars,
            tuple(-t for t in self.target_twists),
            tuple(-s for s in self.source_twists),
            rows,
        )

    def twist(self, a: int) -> "GradedMap":
        """Tensor with O(a): all twists shift, entries unchanged."""
        return GradedMap(
            self.num_vars,
            tuple(s + a for s in self.source_twists),
            tuple(t + a for t in self.target_twists),
            self.entries,
        )

    def pullback(self, curve: CurveParam) -> "GradedMap":
        """Restrict along a parametrized rational curve; twists scale by e."""
        if curve.ambient_vars != self.num_vars:
            raise ValueError(
                f"curve lives in P^{curve.ambient_vars - 1}, map in P^{self.num_vars - 1}"
            )
        e = curve.degree
        rows = [
            [entry.substitute(curve.forms) for entry in row] for row in self.entries
        ]
        return GradedMap(
            2,
            tuple(e * s for s in self.source_twists),
            tuple(e * t for t in self.target_twists),
            rows,
        )

    def stratum(self, m: int) -> QMatrix:
        """Scalar matrix induced on degree-m sections.

        Source basis: per summand j, the monomials of degree m + s_j (empty
        when negative); target likewise with m + t_i.  Block (i, j) is
        multiplication by entry (i, j).
        """
        nv = self.num_vars
        src_dims = [section_dim(nv, m + s) for s in self.source_twists]
        tgt_dims = [section_dim(nv, m + t) for t in self.target_twists]
        n_cols = sum(src_dims)
        n_rows = sum(tgt_dims)
        mat = [[Fraction(0)] * n_cols for _ in range(n_rows)]
        row_off = 0
        for i, tdim in enumerate(tgt_dims):
            if tdim == 0:
                continue
            tgt_index = monomial_index(nv, m + self.target_twists[i])
            col_off = 0
            for j, sdim in enumerate(src_dims):
                entry = self.entries[i][j]
                if sdim and not entry.is_zero():
                    for cj, mono in enumerate(monomials(nv, m + self.source_twists[j])):
                        for emono, c in entry.terms.items():
                            prod = tuple(a + b for a, b in zip(mono, emono))
                            mat[row_off + tgt_index[prod]][col_off + cj] += c
                col_off += sdim
            row_off += tdim
        return QMatrix(mat, cols=n_cols)

    # -- serialization --------------------------------------------------------------

    def to_json(self) -> dict:
        return {
            "numVars": self.num_vars,
            "sourceTwists": list(self.source_twists),
            "targetTwists": list(self.target_twists),
            "entries": [[render_poly(e) for e in row] for row in self.entries],
        }

    @classmethod
    def from_json(cls, obj: dict) -> "GradedMap":
        nv = int(obj["numVars"])
        src = [int(x) for x in obj["sourceTwists"]]
        tgt = [int(x) for x in obj["targetTwists"]]
        rows = []
        for i, row in enumerate(obj["entries"]):
            prow = []
            for j, text in enumerate(row):
                deg = max(tgt[i] - src[j], 0)
                prow.append(parse_poly(text, nv, deg))
            rows.append(prow)
        return cls(nv, src, tgt, rows)

    def dumps(self) -> str:
        return json.dumps(self.to_json())
