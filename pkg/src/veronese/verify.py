"""Verification corpus: every acceptance check behind the `verify` command.

Each check is exact (no tolerances anywhere); a check either recomputes a
closed form, compares polynomial matrices entrywise, or matches a frozen
golden file.  `fast` scope runs reduced parameter sets for a quick gate;
`full` scope runs the complete corpus.

Slope semistability of the normal bundle for general (n, d) is not decided
by an algorithm here; it is evidenced by the necessary-condition checks
(Grauert-Mulich spread, Chern degree sums, dual identity, slope tables).
"""

from __future__ import annotations

import json
import time
from dataclasses import dataclass
from importlib import resources
from math import factorial

from . import bundles, chow, curves, p1split, symlin
from .bundles import VeroneseContext
from .gradedmap import CurveParam, GradedMap
from .poly import HomPoly, monomials
from .prng import SplitMix64

SEMISTABILITY_NOTE = (
    "Slope semistability for general (n, d) is covered by necessary-condition "
    "checks (grauert_mulich_chern, dual_identity, k_tower_slopes), not by a "
    "decision procedure."
)


@dataclass(frozen=True)
class CheckResult:
    name: str
    status: str
    elapsed_s: float
    detail: str

    def to_json(self) -> dict:
        return {
            "name": self.name,
            "status": self.status,
            "elapsed_s": round(self.elapsed_s, 3),
            "detail": self.detail,
        }


def _line_multiset(n: int) -> tuple[int, ...]:
    return tuple(
        sorted([4] + [3] * (n - 1) + [2] * (n * (n - 1) // 2), reverse=True)
    )


def _restrict_normal(ctx: VeroneseContext, curve: CurveParam) -> p1split.SplittingType:
    return p1split.splitting_type(bundles.normal_presentation(ctx).pullback(curve))


# -- individual checks ----------------------------------------------------------


def check_rnc_balanced(ds) -> tuple[bool, str]:
    """n = 1: restriction along the identity splits as (d+2) repeated d-1 times."""
    ident = curves.standard_line(1)
    for d in ds:
        st = _restrict_normal(VeroneseContext(1, d), ident)
        if st.degrees != (d + 2,) * (d - 1):
            return False, f"d={d}: got {st.degrees}"
    return True, f"d in {tuple(ds)}: splitting (d+2)^(d-1), exact"


def check_line_restriction_d2(ns, n_lines: int) -> tuple[bool, str]:
    """d = 2 on lines: degrees 4, 3^(n-1), 2^(n(n-1)/2), standard line included."""
    total = 0
    for n in ns:
        ctx = VeroneseContext(n, 2)
        want = _line_multiset(n)
        samples = [curves.standard_line(n)] + [
            curves.random_line(n, seed) for seed in range(1, n_lines + 1)
        ]
        for k, line in enumerate(samples):
            st = _restrict_normal(ctx, line)
            if st.degrees != want:
                return False, f"n={n} sample {k}: got {st.degrees}, want {want}"
            total += 1
    return True, f"{total} line restrictions, all exact"


def check_rnc_restriction_d2(ns, n_curves: int) -> tuple[bool, str]:
    """d = 2 on rational normal curves: (2n+2) repeated n(n+1)/2 times."""
    total = 0
    for n in ns:
        ctx = VeroneseContext(n, 2)
        want = (2 * n + 2,) * (n * (n + 1) // 2)
        for seed in range(n_curves):
            st = _restrict_normal(ctx, curves.rnc(n, seed))
            if st.degrees != want:
                return False, f"n={n} seed {seed}: got {st.degrees}"
            total += 1
    return True, f"{total} rational-normal-curve restrictions, all exact"


def check_grauert_mulich_chern(cases, n_lines: int) -> tuple[bool, str]:
    """Random lines: spread <= 1, degree sum and rank match the Chern data."""
    total = 0
    for n, d in cases:
        ctx = VeroneseContext(n, d)
        for seed in range(1, n_lines + 1):
            st = _restrict_normal(ctx, curves.random_line(n, seed))
            rep = chow.gm_check(st, ctx)
            if not rep.all_ok:
                return False, f"(n,d)=({n},{d}) seed {seed}: {rep.to_json()}"
            total += 1
    return True, f"{total} restrictions pass spread/sum/rank"


def check_dual_identity(n_max: int, d_max: int) -> tuple[bool, str]:
    """dual(theta) vs the contraction chain, with the diagonal recorded."""
    diags = []
    for n in range(1, n_max + 1):
        for d in range(2, d_max + 1):
            rep = bundles.verify_dual_identity(VeroneseContext(n, d))
            if not rep.ok or not rep.is_scalar:
                return False, f"(n,d)=({n},{d}): {rep.detail}"
            if rep.scale != factorial(d - 1):
                return False, f"(n,d)=({n},{d}): diagonal {rep.scale} != (d-1)!"
            diags.append(f"({n},{d}):{rep.scale}")
    return True, "scalar diagonals " + " ".join(diags)


def check_commute_suite(count: int, max_middle: int = 5) -> tuple[bool, str]:
    """Symmetrize-then-dualize vs dualize-then-symmetrize on random sequences."""
    rng = SplitMix64(2024)
    for k in range(count):
        ses = symlin.random_ses(rng.next_u64(), max_middle=max_middle)
        i = 1 + k % 3
        if not symlin.check_commute(ses, i):
            return False, f"instance {k} dims {ses.dims} i={i}"
    return True, f"{count} random exact sequences, i <= 3, exact equality"


def check_k_tower_slopes(nd_max: int, cross_max: int) -> tuple[bool, str]:
    """Strict slope chain ending at 0; degrees cross-checked on a line."""
    for n in range(1, nd_max + 1):
        for d in range(2, nd_max + 1):
            ctx = VeroneseContext(n, d)
            stats = [bundles.k_bundle_stats(ctx, i) for i in range(1, d + 2)]
            slopes = [s.slope for s in stats]
            if not all(a < b for a, b in zip(slopes, slopes[1:])):
                return False, f"(n,d)=({n},{d}): slopes {slopes} not increasing"
            if slopes[-1] != 0:
                return False, f"(n,d)=({n},{d}): terminal slope {slopes[-1]}"
    checked = 0
    for n in range(1, cross_max + 1):
        for d in range(2, cross_max + 1):
            ctx = VeroneseContext(n, d)
            line = curves.random_line(n, 11) if n > 1 else curves.standard_line(1)
            for i in range(1, d + 1):
                pres = bundles.delta_matrix(ctx, i).pullback(line).dual()
                st = p1split.splitting_type(pres)
                want = bundles.k_bundle_stats(ctx, i)
                if -st.degree != want.degree or st.rank != want.rank:
                    return False, f"(n,d,i)=({n},{d},{i}): {st.degrees} vs {want}"
                checked += 1
    return True, (
        f"slope chains strict for n,d <= {nd_max}; "
        f"{checked} kernel degrees cross-checked on lines"
    )


def check_tangent_restrictions(ns) -> tuple[bool, str]:
    """Euler cokernel on lines and rational normal curves, plus symmetric squares."""
    for n in ns:
        euler = bundles.euler_presentation(n)
        on_line = p1split.splitting_type(euler.pullback(curves.standard_line(n)))
        if on_line.degrees != tuple([2] + [1] * (n - 1)):
            return False, f"n={n} line: {on_line.degrees}"
        for seed in (0, 1):
            on_rnc = p1split.splitting_type(euler.pullback(curves.rnc(n, seed)))
            if on_rnc.degrees != (n + 1,) * n:
                return False, f"n={n} rnc seed {seed}: {on_rnc.degrees}"
        if on_line.sym_square().degrees != _line_multiset(n):
            return False, f"n={n}: sym^2 of line tangent mismatch"
        if on_rnc.sym_square().degrees != (2 * n + 2,) * (n * (n + 1) // 2):
            return False, f"n={n}: sym^2 of rnc tangent mismatch"
    return True, f"n in {tuple(ns)}: tangent splittings and symmetric squares exact"


# -- randomized property suites ---------------------------------------------------


def _random_poly(rng: SplitMix64, nv: int, deg: int) -> HomPoly:
    terms = {}
    for mono in monomials(nv, deg):
        if rng.next_below(3):  # about 2/3 of monomials present
            c = rng.next_int(-5, 5)
            if c:
                terms[mono] = c
    return HomPoly(nv, deg, terms)


def _random_graded_map(rng: SplitMix64, nv: int, p: int, q: int) -> GradedMap:
    src = sorted(rng.next_int(-1, 1) for _ in range(q))
    tgt = sorted(rng.next_int(1, 3) for _ in range(p))
    rows = []
    for i in range(p):
        row = []
        for j in range(q):
            deg = tgt[i] - src[j]
            row.append(
                _random_poly(rng, nv, deg) if deg >= 0 else HomPoly.zero(nv, 0)
            )
        rows.append(row)
    return GradedMap(nv, src, tgt, rows)


def prop_euler_identity(count: int) -> tuple[bool, str]:
    rng = SplitMix64(101)
    for k in range(count):
        nv = rng.next_int(2, 4)
        deg = rng.next_int(1, 4)
        p = _random_poly(rng, nv, deg)
        acc = HomPoly.zero(nv, deg)
        for i in range(nv):
            acc = acc + HomPoly.variable(nv, i) * p.differentiate(i)
        if acc != p * deg:
            return False, f"instance {k}"
    return True, f"{count} instances"


def prop_substitution_homomorphism(count: int) -> tuple[bool, str]:
    rng = SplitMix64(202)
    for k in range(count):
        nv = rng.next_int(2, 3)
        e = rng.next_int(1, 2)
        forms = [_random_poly(rng, 2, e) for _ in range(nv)]
        p = _random_poly(rng, nv, rng.next_int(1, 3))
        q = _random_poly(rng, nv, rng.next_int(1, 2))
        lhs = (p * q).substitute(forms)
        rhs = p.substitute(forms) * q.substitute(forms)
        if lhs != rhs:
            return False, f"instance {k}"
    return True, f"{count} instances"


def prop_stratum_functoriality(count: int) -> tuple[bool, str]:
    rng = SplitMix64(303)
    for k in range(count):
        nv = rng.next_int(2, 3)
        inner = _random_graded_map(rng, nv, rng.next_int(1, 3), rng.next_int(1, 2))
        # outer must consume inner's target twists
        outer_p = rng.next_int(1, 3)
        outer_tgt = sorted(
            max(inner.target_twists) + rng.next_int(0, 2) for _ in range(outer_p)
        )
        rows = []
        for i in range(outer_p):
            row = []
            for j, s in enumerate(inner.target_twists):
                deg = outer_tgt[i] - s
                row.append(
                    _random_poly(rng, nv, deg) if deg >= 0 else HomPoly.zero(nv, 0)
                )
            rows.append(row)
        outer = GradedMap(nv, inner.target_twists, outer_tgt, rows)
        m = rng.next_int(-1, 2)
        lhs = outer.compose(inner).stratum(m)
        rhs = outer.stratum(m) * inner.stratum(m)
        if lhs != rhs:
            return False, f"instance {k} at twist {m}"
    return True, f"{count} instances"


def _random_p1_presentation(rng: SplitMix64) -> GradedMap:
    while True:
        q = rng.next_int(1, 2)
        rank = rng.next_int(1, 2)
        p = q + rank
        src = sorted(rng.next_int(-2, 0) for _ in range(q))
        tgt = sorted(max(src) + rng.next_int(0, 2) for _ in range(p))
        rows = []
        for i in range(p):
            row = []
            for j in range(q):
                deg = tgt[i] - src[j]
                row.append(
                    _random_poly(rng, 2, deg) if deg >= 0 else HomPoly.zero(2, 0)
                )
            rows.append(row)
        pres = GradedMap(2, src, tgt, rows)
        try:
            p1split.splitting_type(pres)
            return pres
        except (p1split.NotInjectiveError, p1split.NotLocallyFreeError):
            continue


def prop_h0_oracle(count: int) -> tuple[bool, str]:
    rng = SplitMix64(404)
    for k in range(count):
        pres = _random_p1_presentation(rng)
        st = p1split.splitting_type(pres)
        top = max(st.degrees)
        lo, hi = -top - 2, top + 2
        profile = st.h0_profile(lo, hi)
        direct = [p1split.h0_direct(pres, m) for m in range(lo, hi + 1)]
        if profile != direct:
            return False, f"instance {k}: {profile} vs {direct}"
        # chi-consistency in the regime where the source has no h^1
        for m in range(-min(pres.source_twists) - 1, hi + 1):
            chi = sum(t + m + 1 for t in pres.target_twists) - sum(
                s + m + 1 for s in pres.source_twists
            )
            if sum(max(0, b + m + 1) for b in st.degrees) != chi:
                return False, f"instance {k}: chi mismatch at twist {m}"
    return True, f"{count} instances, full window plus chi regime"


def prop_degree_conservation(count: int) -> tuple[bool, str]:
    rng = SplitMix64(505)
    for k in range(count):
        pres = _random_p1_presentation(rng)
        st = p1split.splitting_type(pres)
        if st.degree != sum(pres.target_twists) - sum(pres.source_twists):
            return False, f"instance {k}"
    return True, f"{count} instances"


def check_property_suites(count: int) -> tuple[bool, str]:
    suites = [
        ("euler_identity", prop_euler_identity),
        ("substitution_homomorphism", prop_substitution_homomorphism),
        ("stratum_functoriality", prop_stratum_functoriality),
        ("h0_oracle", prop_h0_oracle),
        ("degree_conservation", prop_degree_conservation),
    ]
    details = []
    for name, fn in suites:
        ok, detail = fn(count)
        if not ok:
            return False, f"{name}: {detail}"
        details.append(f"{name} ok")
    return True, f"{count} seeded instances per suite: " + ", ".join(details)


# -- golden files -----------------------------------------------------------------


def _load_golden(name: str) -> dict:
    path = resources.files("veronese").joinpath("golden", name)
    with path.open("r", encoding="utf-8") as f:
        return json.load(f)


def check_golden_files(full: bool) -> tuple[bool, str]:
    name = "monomial_order_v1.json"
    try:
        golden = _load_golden(name)
        for key, monos in golden.items():
            nv, m = (int(x) for x in key.split(","))
            if [list(x) for x in monomials(nv, m)] != monos:
                return False, f"{name}: order mismatch at ({nv},{m})"
    except (OSError, ValueError, KeyError) as exc:
        return False, f"{name}: {exc}"

    name = "curves_v1.json"
    try:
        golden = _load_golden(name)
        for key, blob in golden.items():
            kind, n, seed = key.split(",")
            n, seed = int(n), int(seed)
            made = (
                curves.random_line(n, seed) if kind == "line" else curves.rnc(n, seed)
            )
            if made.to_json() != blob:
                return False, f"{name}: {key} differs from regenerated curve"
    except (OSError, ValueError, KeyError) as exc:
        return False, f"{name}: {exc}"

    name = "splitting_n2_d3_line_v1.json"
    try:
        golden = _load_golden(name)
        ctx = VeroneseContext(int(golden["n"]), int(golden["d"]))
        samples = golden["samples"] if full else golden["samples"][:2]
        for entry in samples:
            st = _restrict_normal(ctx, curves.random_line(ctx.n, int(entry["seed"])))
            if list(st.degrees) != entry["degrees"]:
                return False, f"{name}: seed {entry['seed']} gives {st.degrees}"
        st = _restrict_normal(ctx, curves.standard_line(ctx.n))
        if list(st.degrees) != golden["standard_line_degrees"]:
            return False, f"{name}: standard line gives {st.degrees}"
    except (OSError, ValueError, KeyError) as exc:
        return False, f"{name}: {exc}"
    return True, "monomial order, pinned curves, empirical splitting all match"


# -- corpus assembly ----------------------------------------------------------------


def corpus(scope: str) -> list[tuple[str, object]]:
    if scope == "full":
        return [
            ("rnc_balanced", lambda: check_rnc_balanced(range(2, 9))),
            ("line_restriction_d2", lambda: check_line_restriction_d2((2, 3, 4, 5), 10)),
            ("rnc_restriction_d2", lambda: check_rnc_restriction_d2((2, 3, 4), 5)),
            (
                "grauert_mulich_chern",
                lambda: check_grauert_mulich_chern(((2, 3), (2, 4), (3, 3)), 10),
            ),
            ("dual_identity", lambda: check_dual_identity(4, 4)),
            ("symmetrize_dualize_commute", lambda: check_commute_suite(100)),
            ("k_tower_slopes", lambda: check_k_tower_slopes(8, 3)),
            ("tangent_restrictions", lambda: check_tangent_restrictions((2, 3, 4))),
            ("property_suites", lambda: check_property_suites(50)),
            ("golden_files", lambda: check_golden_files(full=True)),
        ]
    if scope == "fast":
        return [
            ("rnc_balanced", lambda: check_rnc_balanced(range(2, 6))),
            ("line_restriction_d2", lambda: check_line_restriction_d2((2, 3), 3)),
            ("rnc_restriction_d2", lambda: check_rnc_restriction_d2((2, 3), 2)),
            (
                "grauert_mulich_chern",
                lambda: check_grauert_mulich_chern(((2, 3),), 3),
            ),
            ("dual_identity", lambda: check_dual_identity(3, 3)),
            ("symmetrize_dualize_commute", lambda: check_commute_suite(25)),
            ("k_tower_slopes", lambda: check_k_tower_slopes(6, 2)),
            ("tangent_restrictions", lambda: check_tangent_restrictions((2, 3))),
            ("property_suites", lambda: check_property_suites(15)),
            ("golden_files", lambda: check_golden_files(full=False)),
        ]
    raise ValueError(f"unknown scope {scope!r}")


def run_corpus(scope: str) -> dict:
    checks = []
    passed = True
    for name, fn in corpus(scope):
        t0 = time.monotonic()
        try:
            ok, detail = fn()
        except Exception as exc:  # a crash is a failing check, not a crash of verify
            ok, detail = False, f"exception: {exc!r}"
        elapsed = time.monotonic() - t0
        passed = passed and ok
        checks.append(CheckResult(name, "pass" if ok else "fail", elapsed, detail))
    return {
        "command": "verify",
        "scope": scope,
        "passed": passed,
        "checks": [c.to_json() for c in checks],
        "note": SEMISTABILITY_NOTE,
    }
