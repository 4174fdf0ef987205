"""Closed-form generating functions, recurrences and moments of (k_1..k_ell) patterns.

Conventions: ``G(w, z) = sum_n F_n(w) z^n`` where ``[w^m] F_n`` is the probability
(or, for the i.i.d. variants, the number) of length-``n`` sequences holding
``m`` patterns.  State labels are 1-based.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from math import prod

from .algebra import PolyW, PolyZ, RationalGF, series_coeffs
from .models import DistributionTable, PatternSpec, ProbModel, prefix_sum


def _linear(c: Fraction) -> PolyZ:
    """``1 - c*z``."""
    return PolyZ.from_univariate((1, -c))


def pattern_weight(spec: PatternSpec, probs: ProbModel) -> Fraction:
    """``prod_i p_i**k_i``, the probability of one minimal occurrence."""
    probs.check(spec)
    return prod((p**k for p, k in zip(probs.probs, spec.thresholds)), start=Fraction(1))


def block_gfs(spec: PatternSpec, probs: ProbModel, i: int) -> tuple[RationalGF, RationalGF]:
    """Runs of state ``i`` shorter than ``k_i`` and at least ``k_i`` long.

    Returns ``(g_short, g_long)`` with
    ``g_short = (p z - (p z)^k) / (1 - p z)`` and ``g_long = (p z)^k / (1 - p z)``.
    """
    probs.check(spec)
    if not 1 <= i <= spec.ell:
        raise ValueError(f"state index {i} outside 1..{spec.ell}")
    p, k = probs[i], spec.thresholds[i - 1]
    den = _linear(p)
    short = PolyZ.monomial(p, 1) - PolyZ.monomial(p**k, k)
    long_ = PolyZ.monomial(p**k, k)
    return RationalGF(short, den), RationalGF(long_, den)


def right_end_gf(
    spec: PatternSpec, probs: ProbModel, upto: int | None = None
) -> tuple[RationalGF, RationalGF]:
    """Sequences over states ``1..upto`` ending in the prefix pattern, and the rest.

    ``H = prod p_i^k_i z^k / ((1 - z*sum p_i) * prod_{i=2}^{upto} (1 - p_i z))``
    with all sums and products over the first ``upto`` states; the complement is
    ``S z / (1 - S z) - H`` for ``S = p_1 + ... + p_upto``.  ``upto`` defaults to
    ``ell``; ``upto = 1`` gives the two run blocks of state 1.
    """
    probs.check(spec)
    upto = spec.ell if upto is None else upto
    if not 1 <= upto <= spec.ell:
        raise ValueError(f"prefix length {upto} outside 1..{spec.ell}")
    ks = spec.thresholds[:upto]
    weight = prod((probs[i] ** ks[i - 1] for i in range(1, upto + 1)), start=Fraction(1))
    s = prefix_sum(probs.probs, upto)
    den = _linear(s)
    for i in range(2, upto + 1):
        den = den * _linear(probs[i])
    h = RationalGF(PolyZ.monomial(weight, sum(ks)), den)
    everything = RationalGF(PolyZ.monomial(s, 1), _linear(s))
    return h, everything - h


def right_end_gf_iid(spec: PatternSpec) -> RationalGF:
    """Counting version: ``z^k / ((1 - z)^(ell-1) (1 - ell z))``."""
    den = _linear(Fraction(1)) ** (spec.ell - 1) * _linear(Fraction(spec.ell))
    return RationalGF(PolyZ.monomial(1, spec.k_total), den)


def _inner_product(probs: ProbModel, ell: int) -> PolyZ:
    """``prod_{i=2}^{ell-1} (1 - p_i z)``; the empty product for ``ell = 2``."""
    out = PolyZ.const(1)
    for i in range(2, ell):
        out = out * _linear(probs[i])
    return out


def pattern_gf(spec: PatternSpec, probs: ProbModel) -> RationalGF:
    """Double generating function ``G_ell(w, z)`` of the pattern count."""
    probs.check(spec)
    v = _inner_product(probs, spec.ell)
    marked = PolyZ.monomial(PolyW((-1, 1)) * pattern_weight(spec, probs), spec.k_total)
    return RationalGF(v, _linear(Fraction(1)) * v - marked)


def pattern_gf_iid(spec: PatternSpec) -> RationalGF:
    """``(1-z)^(ell-2) / ((1-z)^(ell-2) (1 - ell z) - (w-1) z^k)``."""
    v = _linear(Fraction(1)) ** (spec.ell - 2)
    marked = PolyZ.monomial(PolyW((-1, 1)), spec.k_total)
    return RationalGF(v, v * _linear(Fraction(spec.ell)) - marked)


def iid_substitution(spec: PatternSpec) -> RationalGF:
    """``pattern_gf`` at uniform probabilities with ``z -> ell z``."""
    return pattern_gf(spec, ProbModel.uniform(spec.ell)).scale_z(spec.ell)


# --------------------------------------------------------------------------
# recurrence
# --------------------------------------------------------------------------

@dataclass(frozen=True)
class RecurrenceSpec:
    """``F_n = sum_i a_i F_{n-i} + (w - 1) * pattern_coeff * F_{n-lag}`` for ``n >= lag``.

    ``base`` is the value ``F_n`` takes (as a constant) for ``n < lag``.
    """

    coeffs: tuple[Fraction, ...]
    pattern_coeff: Fraction
    lag: int
    base: tuple[Fraction, ...] = ()

    def initial(self, n: int) -> Fraction:
        return self.base[n] if self.base else Fraction(1)


def _expand(factors: list[Fraction]) -> list[Fraction]:
    """Coefficients of ``prod (1 - c z)`` in ascending powers."""
    poly = [Fraction(1)]
    for c in factors:
        poly = [a - c * b for a, b in zip(poly + [Fraction(0)], [Fraction(0)] + poly)]
    return poly


def recurrence_spec(spec: PatternSpec, probs: ProbModel) -> RecurrenceSpec:
    """Recurrence read off ``U(z) = (1-z) prod_{i=2}^{ell-1} (1 - p_i z) = 1 - a_1 z - ...``."""
    probs.check(spec)
    u = _expand([Fraction(1)] + [probs[i] for i in range(2, spec.ell)])
    return RecurrenceSpec(
        coeffs=tuple(-c for c in u[1:]),
        pattern_coeff=pattern_weight(spec, probs),
        lag=spec.k_total,
    )


def recurrence_spec_iid(spec: PatternSpec) -> RecurrenceSpec:
    """Integer recurrence from the denominator of :func:`pattern_gf_iid`."""
    ell, k = spec.ell, spec.k_total
    u = _expand([Fraction(1)] * (ell - 2) + [Fraction(ell)])
    return RecurrenceSpec(
        coeffs=tuple(-c for c in u[1:]),
        pattern_coeff=Fraction(1),
        lag=k,
        base=tuple(Fraction(ell) ** n for n in range(k)),
    )


def iterate_recurrence(rec: RecurrenceSpec, n_max: int) -> list[PolyW]:
    """``F_0 .. F_{n_max}`` as polynomials in the mark."""
    mark = PolyW((-rec.pattern_coeff, rec.pattern_coeff))  # (w - 1) * c
    terms = [(i, a) for i, a in enumerate(rec.coeffs, start=1) if a]
    out: list[PolyW] = []
    for n in range(n_max + 1):
        if n < rec.lag:
            out.append(PolyW.const(rec.initial(n)))
            continue
        acc = mark * out[n - rec.lag]
        for i, a in terms:
            acc = acc + out[n - i] * a
        out.append(acc)
    return out


def _check_support(spec: PatternSpec, n: int, f: PolyW) -> None:
    if f.degree > spec.m_max(n):
        raise AssertionError(f"recurrence produced w^{f.degree} at n={n}")


def distributions(spec: PatternSpec, probs: ProbModel, n_max: int) -> list[DistributionTable]:
    rec = recurrence_spec(spec, probs)
    out = []
    for n, f in enumerate(iterate_recurrence(rec, n_max)):
        _check_support(spec, n, f)
        out.append(DistributionTable(n, "probability", f.coeffs))
    return out


def distribution(spec: PatternSpec, probs: ProbModel, n: int) -> DistributionTable:
    """Exact ``P(X = m)`` for ``m = 0..floor(n/k)`` at length ``n``."""
    if n < 0:
        raise ValueError("n must be non-negative")
    return distributions(spec, probs, n)[n]


def counts_iid_all(spec: PatternSpec, n_max: int) -> list[DistributionTable]:
    rec = recurrence_spec_iid(spec)
    out = []
    for n, f in enumerate(iterate_recurrence(rec, n_max)):
        _check_support(spec, n, f)
        table = DistributionTable(n, "count", f.coeffs)
        if table.total != spec.ell**n:
            raise AssertionError(f"counts at n={n} sum to {table.total}, not {spec.ell}^{n}")
        out.append(table)
    return out


def counts_iid(spec: PatternSpec, n: int) -> DistributionTable:
    """Number of length-``n`` sequences over ``ell`` equiprobable states with ``m`` patterns."""
    if n < 0:
        raise ValueError("n must be non-negative")
    return counts_iid_all(spec, n)[n]


# --------------------------------------------------------------------------
# means
# --------------------------------------------------------------------------

def mean_gf(spec: PatternSpec, probs: ProbModel) -> RationalGF:
    """``dG/dw`` at ``w = 1``, taken mechanically from :func:`pattern_gf`."""
    return pattern_gf(spec, probs).diff_mark().eval_mark(1)


def expected_count(spec: PatternSpec, probs: ProbModel, n: int) -> Fraction:
    """Exact mean number of patterns in a length-``n`` sequence."""
    if n < spec.k_total:
        return Fraction(0)
    return series_coeffs(mean_gf(spec, probs), n)[n].constant()


def expected_count_principal(spec: PatternSpec, probs: ProbModel, n: int) -> Fraction:
    """Linear-in-``n`` part of the mean: ``w (n - k + 1) / prod_{i=2}^{ell-1} (1 - p_i)``."""
    if n < spec.k_total:
        raise ValueError("principal part is defined for n >= k")
    den = prod((1 - probs[i] for i in range(2, spec.ell)), start=Fraction(1))
    return pattern_weight(spec, probs) * (n - spec.k_total + 1) / den


def expected_count_l3(spec: PatternSpec, probs: ProbModel, n: int) -> Fraction:
    """Closed-form mean for three states."""
    if spec.ell != 3:
        raise ValueError("closed form applies to ell = 3 only")
    p2 = probs[2]
    t = n - spec.k_total + 1
    return pattern_weight(spec, probs) * (
        Fraction(t) / (1 - p2) - p2 * (1 - p2**t) / (1 - p2) ** 2
    )


def expected_count_l3_iid(spec: PatternSpec, n: int) -> Fraction:
    """Closed-form mean for three equiprobable states."""
    if spec.ell != 3:
        raise ValueError("closed form applies to ell = 3 only")
    k = spec.k_total
    return (Fraction(1, 4) + Fraction(1, 4) * (1 + 2 * n - 2 * k) * Fraction(3) ** (n - k + 1)) / Fraction(3) ** n


# --------------------------------------------------------------------------
# symbolic recurrence text
# --------------------------------------------------------------------------

def _elementary_symmetric(symbols: list[str], j: int) -> list[str]:
    terms = []
    for combo in combinations(symbols, j):
        factors = [s for s in combo if s != "1"]
        terms.append("*".join(factors) if factors else "1")
    return terms


def recurrence_text(ell: int) -> str:
    """The recurrence for ``F_{ell,n}(w)`` written in the state symbols ``p1..p_ell``.

    Example for ``ell = 3``::

        F(n) = (1 + p2)*F(n-1) - p2*F(n-2) + (w-1)*p1^k1*p2^k2*p3^k3*F(n-k)
    """
    symbols = ["1"] + [f"p{i}" for i in range(2, ell)]
    parts = []
    for j in range(1, ell):
        terms = _elementary_symmetric(symbols, j)
        body = " + ".join(terms)
        if len(terms) > 1:
            body = f"({body})"
        lag = f"F(n-{j})"
        factor = lag if body == "1" else f"{body}*{lag}"
        sign = "+" if j % 2 == 1 else "-"
        parts.append((sign, factor))
    pattern = "*".join(f"p{i}^k{i}" for i in range(1, ell + 1))
    parts.append(("+", f"(w-1)*{pattern}*F(n-k)"))
    text = parts[0][1] if parts[0][0] == "+" else f"-{parts[0][1]}"
    for sign, factor in parts[1:]:
        text += f" {sign} {factor}"
    return f"F(n) = {text}"
