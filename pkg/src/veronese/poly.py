"""Sparse homogeneous polynomials with exact rational coefficients.

Variables are Z0..Z{k-1}; the projective line uses two variables, written
(s, t) = (Z0, Z1) in prose but serialized with the same Z-names.  Monomials
are exponent tuples; every polynomial carries an explicit degree so the
zero polynomial of a prescribed degree is representable (graded map
entries need it).

The global monomial order is graded lexicographic: within one total
degree, exponent tuples compare lexicographically with Z0 largest.  All
row/column indexing in the package derives from this order.
"""

from __future__ import annotations

import re
from fractions import Fraction
from functools import lru_cache
from typing import Mapping, Sequence

Monomial = tuple[int, ...]


@lru_cache(maxsize=None)
def monomials(num_vars: int, degree: int) -> tuple[Monomial, ...]:
    """All exponent tuples of the given total degree, graded-lex ordered."""
    if num_vars < 1:
        raise ValueError("need at least one variable")
    if degree < 0:
        return ()
    if num_vars == 1:
        return ((degree,),)
    out = []
    for first in range(degree, -1, -1):
        for rest in monomials(num_vars - 1, degree - first):
            out.append((first,) + rest)
    return tuple(out)


@lru_cache(maxsize=None)
def monomial_index(num_vars: int, degree: int) -> dict[Monomial, int]:
    return {m: i for i, m in enumerate(monomials(num_vars, degree))}


def section_dim(num_vars: int, degree: int) -> int:
    """Dimension of the space of forms of the given degree (0 if negative)."""
    return len(monomials(num_vars, degree)) if degree >= 0 else 0


class HomPoly:
    """A homogeneous polynomial: map from exponent tuple to coefficient."""

    __slots__ = ("num_vars", "degree", "terms")

    def __init__(self, num_vars: int, degree: int, terms: Mapping[Monomial, object]):
        if num_vars < 1:
            raise ValueError("need at least one variable")
        if degree < 0:
            raise ValueError("negative degree")
        clean: dict[Monomial, Fraction] = {}
        for mono, c in terms.items():
            c = Fraction(c)
            if not c:
                continue
            if len(mono) != num_vars or any(e < 0 for e in mono):
                raise ValueError(f"bad monomial {mono} for {num_vars} variables")
            if sum(mono) != degree:
                raise ValueError(f"monomial {mono} not of degree {degree}")
            clean[tuple(mono)] = c
        self.num_vars = num_vars
        self.degree = degree
        self.terms = clean

    # -- constructors ------------------------------------------------------

    @classmethod
    def zero(cls, num_vars: int, degree: int) -> "HomPoly":
        return cls(num_vars, degree, {})

    @classmethod
    def constant(cls, num_vars: int, c) -> "HomPoly":
        return cls(num_vars, 0, {(0,) * num_vars: c})

    @classmethod
    def variable(cls, num_vars: int, i: int, coeff=1) -> "HomPoly":
        if not 0 <= i < num_vars:
            raise ValueError("variable index out of range")
        mono = tuple(1 if j == i else 0 for j in range(num_vars))
        return cls(num_vars, 1, {mono: coeff})

    @classmethod
    def monomial(cls, num_vars: int, exps: Sequence[int], coeff=1) -> "HomPoly":
        exps = tuple(exps)
        return cls(num_vars, sum(exps), {exps: coeff})

    # -- basic queries ------------------------------------------------------

    def is_zero(self) -> bool:
        return not self.terms

    def coeff(self, mono: Monomial) -> Fraction:
        return self.terms.get(tuple(mono), Fraction(0))

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, HomPoly)
            and self.num_vars == other.num_vars
            and self.terms == other.terms
            and (self.degree == other.degree or not self.terms or not other.terms)
        )

    def __hash__(self) -> int:
        return hash((self.num_vars, frozenset(self.terms.items())))

    def __repr__(self) -> str:
        return f"HomPoly({render_poly(self)!r})"

    # -- arithmetic ---------------------------------------------------------

    def __add__(self, other: "HomPoly") -> "HomPoly":
        if self.num_vars != other.num_vars:
            raise ValueError("variable count mismatch")
        if self.is_zero():
            return other
        if other.is_zero():
            return self
        if self.degree != other.degree:
            raise ValueError("cannot add forms of different degrees")
        terms = dict(self.terms)
        for mono, c in other.terms.items():
            acc = terms.get(mono, Fraction(0)) + c
            if acc:
                terms[mono] = acc
            else:
                terms.pop(mono, None)
        return HomPoly(self.num_vars, self.degree, terms)

    def __neg__(self) -> "HomPoly":
        return HomPoly(
            self.num_vars, self.degree, {m: -c for m, c in self.terms.items()}
        )

    def __sub__(self, other: "HomPoly") -> "HomPoly":
        return self + (-other)

    def __mul__(self, other) -> "HomPoly":
        if not isinstance(other, HomPoly):
            c = Fraction(other)
            return HomPoly(
                self.num_vars, self.degree, {m: c * v for m, v in self.terms.items()}
            )
        if self.num_vars != other.num_vars:
            raise ValueError("variable count mismatch")
        deg = self.degree + other.degree
        terms: dict[Monomial, Fraction] = {}
        for m1, c1 in self.terms.items():
            for m2, c2 in other.terms.items():
                m = tuple(a + b for a, b in zip(m1, m2))
                acc = terms.get(m, Fraction(0)) + c1 * c2
                if acc:
                    terms[m] = acc
                else:
                    terms.pop(m, None)
        return HomPoly(self.num_vars, deg, terms)

    def __rmul__(self, other) -> "HomPoly":
        return self.__mul__(other)

    def power(self, k: int) -> "HomPoly":
        if k < 0:
            raise ValueError("negative power")
        out = HomPoly.constant(self.num_vars, 1)
        for _ in range(k):
            out = out * self
        return out

    # -- calculus and substitution -------------------------------------------

    def differentiate(self, i: int) -> "HomPoly":
        """Partial derivative with respect to variable i; drops degree by 1."""
        if not 0 <= i < self.num_vars:
            raise ValueError("variable index out of range")
        if self.degree == 0:
            return HomPoly.zero(self.num_vars, 0)
        terms: dict[Monomial, Fraction] = {}
        for mono, c in self.terms.items():
            e = mono[i]
            if e:
                m = mono[:i] + (e - 1,) + mono[i + 1 :]
                terms[m] = terms.get(m, Fraction(0)) + c * e
        return HomPoly(self.num_vars, self.degree - 1, terms)

    def substitute(self, forms: Sequence["HomPoly"]) -> "HomPoly":
        """Substitute one binary form per variable; result lives in (s, t).

        All forms must share one degree e; the result is homogeneous of
        degree e * deg(self).
        """
        if len(forms) != self.num_vars:
            raise ValueError("need one form per variable")
        degrees = {f.degree for f in forms}
        if len(degrees) != 1:
            raise ValueError("inhomogeneous parametrization")
        nv = forms[0].num_vars
        if any(f.num_vars != nv for f in forms):
            raise ValueError("substitution forms disagree on variable count")
        e = degrees.pop()
        # cache powers of each form up to its maximal exponent
        max_exp = [0] * self.num_vars
        for mono in self.terms:
            for i, a in enumerate(mono):
                max_exp[i] = max(max_exp[i], a)
        powers: list[list[HomPoly]] = []
        for i, f in enumerate(forms):
            row = [HomPoly.constant(nv, 1)]
            for _ in range(max_exp[i]):
                row.append(row[-1] * f)
            powers.append(row)
        out = HomPoly.zero(nv, e * self.degree)
        for mono, c in self.terms.items():
            piece = HomPoly.constant(nv, c)
            for i, a in enumerate(mono):
                if a:
                    piece = piece * powers[i][a]
            out = out + piece
        return out

    def evaluate(self, point: Sequence) -> Fraction:
        vals = [Fraction(x) for x in point]
        if len(vals) != self.num_vars:
            raise ValueError("point dimension mismatch")
        acc = Fraction(0)
        for mono, c in self.terms.items():
            term = c
            for v, e in zip(vals, mono):
                term *= v**e
            acc += term
        return acc

    def sorted_terms(self) -> list[tuple[Monomial, Fraction]]:
        order = monomial_index(self.num_vars, self.degree)
        return sorted(self.terms.items(), key=lambda kv: order[kv[0]])


# -- text format --------------------------------------------------------------
#
# Canonical rendering: terms in graded-lex order, "coeff*Z0^a*Z1^b" with unit
# exponents shortened to "Z0" and pure constants rendered as the coefficient.
# The parser accepts exactly what render_poly produces (plus redundant "+/-"
# spacing), and round-trips exactly.

_TERM_RE = re.compile(r"^(?:(-?\d+(?:/\d+)?)(?:\*)?)?((?:Z\d+(?:\^\d+)?(?:\*Z\d+(?:\^\d+)?)*))?$")
_VAR_RE = re.compile(r"^Z(\d+)(?:\^(\d+))?$")


def render_poly(p: HomPoly) -> str:
    if p.is_zero():
        return "0"
    parts = []
    for mono, c in p.sorted_terms():
        factors = []
        for i, e in enumerate(mono):
            if e == 1:
                factors.append(f"Z{i}")
            elif e > 1:
                factors.append(f"Z{i}^{e}")
        if not factors:
            body = str(abs(c))
        elif abs(c) == 1:
            body = "*".join(factors)
        else:
            body = str(abs(c)) + "*" + "*".join(factors)
        if not parts:
            parts.append(body if c > 0 else "-" + body)
        else:
            parts.append(("+ " if c > 0 else "- ") + body)
    return " ".join(parts)


def parse_poly(text: str, num_vars: int, degree: int) -> HomPoly:
    """Inverse of render_poly for forms of known variable count and degree."""
    s = text.strip()
    if s == "0":
        return HomPoly.zero(num_vars, degree)
    # normalize to '+'-separated signed terms
    s = s.replace("- ", "+ -").replace("+ ", "+")
    if s.startswith("+"):
        s = s[1:]
    chunks = [c.strip() for c in s.split("+")]
    terms: dict[Monomial, Fraction] = {}
    for chunk in chunks:
        if not chunk:
            raise ValueError(f"empty term in {text!r}")
        negate = chunk.startswith("-")
        if negate:
            chunk = chunk[1:]
        m = _TERM_RE.match(chunk)
        if not m or (m.group(1) is None and m.group(2) is None):
            raise ValueError(f"cannot parse term {chunk!r}")
        coeff = Fraction(m.group(1)) if m.group(1) else Fraction(1)
        if negate:
            coeff = -coeff
        exps = [0] * num_vars
        if m.group(2):
            for factor in m.group(2).split("*"):
                vm = _VAR_RE.match(factor)
                if not vm:
                    raise ValueError(f"cannot parse factor {factor!r}")
                idx = int(vm.group(1))
                if idx >= num_vars:
                    raise ValueError(f"variable Z{idx} out of range")
                exps[idx] += int(vm.group(2)) if vm.group(2) else 1
        mono = tuple(exps)
        if sum(mono) != degree:
            raise ValueError(
                f"term {chunk!r} has degree {sum(mono)}, expected {degree}"
            )
        terms[mono] = terms.get(mono, Fraction(0)) + coeff
    return HomPoly(num_vars, degree, terms)
