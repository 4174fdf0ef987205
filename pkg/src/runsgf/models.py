"""Pattern specifications, probability models and distribution tables."""

from __future__ import annotations

from dataclasses import dataclass
from decimal import ROUND_HALF_EVEN, Context, Decimal
from fractions import Fraction
from typing import Iterable, Sequence, Union

Number = Union[int, Fraction]


@dataclass(frozen=True)
class PatternSpec:
    """Thresholds ``(k_1, ..., k_ell)`` of the pattern."""

    thresholds: tuple[int, ...]

    def __post_init__(self):
        ks = tuple(self.thresholds)
        if len(ks) < 2:
            raise ValueError("a pattern needs at least two states")
        for k in ks:
            if isinstance(k, bool) or not isinstance(k, int) or k < 1:
                raise ValueError(f"thresholds must be positive integers, got {k!r}")
        object.__setattr__(self, "thresholds", ks)

    @property
    def ell(self) -> int:
        return len(self.thresholds)

    @property
    def k_total(self) -> int:
        return sum(self.thresholds)

    def m_max(self, n: int) -> int:
        return n // self.k_total

    @classmethod
    def parse(cls, text: str, ell: int | None = None) -> PatternSpec:
        ks = tuple(int(t) for t in text.replace(" ", "").split(",") if t)
        if ell is not None and len(ks) != ell:
            raise ValueError(f"expected {ell} thresholds, got {len(ks)}")
        return cls(ks)


def parse_fraction(text: str) -> Fraction:
    """Exact value of ``"a/b"`` or a terminating decimal such as ``"0.25"``."""
    if isinstance(text, float):
        raise TypeError("floating-point probabilities are not accepted; pass a string")
    s = str(text).strip()
    if not s or "..." in s or "(" in s:
        raise ValueError(f"not an exact rational: {text!r}")
    return Fraction(s)


@dataclass(frozen=True)
class ProbModel:
    """Exact state probabilities ``p_1..p_ell``."""

    probs: tuple[Fraction, ...]

    def __post_init__(self):
        ps = []
        for p in self.probs:
            if isinstance(p, float):
                raise TypeError("floating-point probabilities are not accepted")
            ps.append(p if isinstance(p, Fraction) else parse_fraction(p))
        if any(p <= 0 for p in ps):
            raise ValueError("every probability must be positive")
        total = sum(ps, Fraction(0))
        if total != 1:
            raise ValueError(f"probabilities must sum to 1, got sum {total}")
        object.__setattr__(self, "probs", tuple(ps))

    @classmethod
    def uniform(cls, ell: int) -> ProbModel:
        return cls(tuple(Fraction(1, ell) for _ in range(ell)))

    @classmethod
    def parse(cls, text: str) -> ProbModel:
        return cls(tuple(parse_fraction(t) for t in text.split(",") if t.strip()))

    @property
    def ell(self) -> int:
        return len(self.probs)

    def __getitem__(self, i: int) -> Fraction:
        """1-based access, matching the state labels."""
        return self.probs[i - 1]

    def check(self, spec: PatternSpec) -> None:
        if self.ell != spec.ell:
            raise ValueError(f"{self.ell} probabilities given for {spec.ell} states")


@dataclass(frozen=True)
class DistributionTable:
    """Distribution of the pattern count at fixed length ``n``.

    ``values[m]`` is P(X = m) in ``"probability"`` mode and the number of
    sequences with ``m`` patterns in ``"count"`` mode.
    """

    n: int
    mode: str
    values: tuple[Number, ...]

    def __post_init__(self):
        if self.mode not in ("probability", "count"):
            raise ValueError(f"unknown mode {self.mode!r}")
        vals = list(self.values)
        while len(vals) > 1 and vals[-1] == 0:
            vals.pop()
        if self.mode == "count":
            vals = [int(v) for v in vals]
        else:
            vals = [Fraction(v) for v in vals]
        object.__setattr__(self, "values", tuple(vals) or (0,))

    @property
    def total(self) -> Number:
        return sum(self.values)

    @property
    def m_max(self) -> int:
        return len(self.values) - 1

    def __getitem__(self, m: int) -> Number:
        return self.values[m] if 0 <= m < len(self.values) else 0

    def mean(self) -> Fraction:
        s = sum(m * v for m, v in enumerate(self.values))
        return Fraction(s, self.total) if self.mode == "count" else Fraction(s)

    def as_dict(self) -> dict[int, Number]:
        return {m: v for m, v in enumerate(self.values)}

    @classmethod
    def from_coefficients(cls, n: int, mode: str, coeffs: Iterable[Number]) -> DistributionTable:
        return cls(n, mode, tuple(coeffs))


def round_sig(x: Number, digits: int = 10) -> Decimal:
    """``x`` rounded half-to-even to ``digits`` significant digits."""
    x = Fraction(x)
    if x == 0:
        return Decimal(0)
    ctx = Context(prec=digits, rounding=ROUND_HALF_EVEN)
    return ctx.divide(Decimal(x.numerator), Decimal(x.denominator))


def decimal_str(x: Number, digits: int = 10) -> str:
    """Plain (non-scientific) decimal string of :func:`round_sig`."""
    d = round_sig(x, digits)
    return format(d, "f")


def fraction_str(x: Number) -> str:
    x = Fraction(x)
    return f"{x.numerator}/{x.denominator}"


def prefix_sum(probs: Sequence[Fraction], upto: int) -> Fraction:
    return sum(probs[:upto], Fraction(0))
