"""Exact polynomial and rational-function arithmetic.

Coefficients are :class:`fractions.Fraction`.  Three layers:

* :class:`PolyW`  -- polynomial in a single mark variable (``w`` or ``u``) over Q.
* :class:`PolyZ`  -- polynomial in ``z`` whose coefficients are :class:`PolyW`.
* :class:`RationalGF` -- quotient of two :class:`PolyZ`, kept in normalized form.

Everything is immutable.  Zero polynomials have no coefficients and degree -1.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence, Union

Scalar = Union[int, Fraction]

ZERO_DEGREE = -1


class DegenerateSystemError(ArithmeticError):
    """Raised when a transfer matrix is singular over the fraction field."""


# --------------------------------------------------------------------------
# univariate helpers on coefficient tuples (ascending powers)
# --------------------------------------------------------------------------

def _trim(coeffs: Iterable[Scalar]) -> tuple[Fraction, ...]:
    out = [c if type(c) is Fraction else Fraction(c) for c in coeffs]
    while out and out[-1] == 0:
        out.pop()
    return tuple(out)


def _udivmod(a: Sequence[Fraction], b: Sequence[Fraction]):
    if not b:
        raise ZeroDivisionError("polynomial division by zero")
    rem = list(a)
    db = len(b) - 1
    lead = b[-1]
    quot = [Fraction(0)] * max(len(a) - db, 0)
    for i in range(len(a) - 1 - db, -1, -1):
        c = rem[i + db] / lead
        if c:
            quot[i] = c
            for j, bj in enumerate(b):
                rem[i + j] -= c * bj
    return _trim(quot), _trim(rem)


def _ugcd(a: Sequence[Fraction], b: Sequence[Fraction]) -> tuple[Fraction, ...]:
    """Monic gcd over Q; gcd(0, 0) is 0."""
    a, b = _trim(a), _trim(b)
    while b:
        a, b = b, _udivmod(a, b)[1]
    if not a:
        return a
    return tuple(c / a[-1] for c in a)


# --------------------------------------------------------------------------
# PolyW
# --------------------------------------------------------------------------

@dataclass(frozen=True)
class PolyW:
    """Polynomial in the mark variable; ``coeffs[j]`` multiplies ``w**j``."""

    coeffs: tuple[Fraction, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "coeffs", _trim(self.coeffs))

    @classmethod
    def const(cls, c: Scalar) -> PolyW:
        return cls((c,))

    @classmethod
    def var(cls) -> PolyW:
        return cls((0, 1))

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return not self.coeffs

    def is_const(self) -> bool:
        return len(self.coeffs) <= 1

    def constant(self) -> Fraction:
        return self.coeffs[0] if self.coeffs else Fraction(0)

    def __getitem__(self, j: int) -> Fraction:
        return self.coeffs[j] if 0 <= j < len(self.coeffs) else Fraction(0)

    def __add__(self, other: PolyW | Scalar) -> PolyW:
        other = _as_polyw(other)
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        return PolyW(tuple(x + (b[i] if i < len(b) else 0) for i, x in enumerate(a)))

    __radd__ = __add__

    def __neg__(self) -> PolyW:
        return PolyW(tuple(-c for c in self.coeffs))

    def __sub__(self, other: PolyW | Scalar) -> PolyW:
        return self + (-_as_polyw(other))

    def __rsub__(self, other: Scalar) -> PolyW:
        return _as_polyw(other) - self

    def __mul__(self, other: PolyW | Scalar) -> PolyW:
        if not isinstance(other, PolyW):
            c = Fraction(other)
            return PolyW(tuple(c * x for x in self.coeffs))
        a, b = self.coeffs, other.coeffs
        if not a or not b:
            return PolyW()
        out = [Fraction(0)] * (len(a) + len(b) - 1)
        for i, x in enumerate(a):
            if x:
                for j, y in enumerate(b):
                    out[i + j] += x * y
        return PolyW(tuple(out))

    __rmul__ = __mul__

    def __pow__(self, e: int) -> PolyW:
        out, base = PolyW.const(1), self
        while e:
            if e & 1:
                out = out * base
            base = base * base
            e >>= 1
        return out

    def divmod(self, other: PolyW) -> tuple[PolyW, PolyW]:
        q, r = _udivmod(self.coeffs, other.coeffs)
        return PolyW(q), PolyW(r)

    def exact_div(self, other: PolyW) -> PolyW:
        q, r = self.divmod(other)
        if not r.is_zero():
            raise ArithmeticError("inexact polynomial division")
        return q

    def __call__(self, x: Scalar) -> Fraction:
        acc = Fraction(0)
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def derivative(self) -> PolyW:
        return PolyW(tuple(j * c for j, c in enumerate(self.coeffs) if j))

    def __repr__(self) -> str:
        return f"PolyW({_fmt_terms(self.coeffs, 'w')})"


def _as_polyw(x: PolyW | Scalar) -> PolyW:
    return x if isinstance(x, PolyW) else PolyW.const(x)


def _fmt_terms(coeffs: Sequence[Fraction], var: str) -> str:
    terms = []
    for j, c in enumerate(coeffs):
        if not c:
            continue
        mono = "" if j == 0 else (var if j == 1 else f"{var}^{j}")
        if mono and c == 1:
            terms.append(mono)
        elif mono:
            terms.append(f"({c})*{mono}")
        else:
            terms.append(str(c))
    return " + ".join(terms) if terms else "0"


# --------------------------------------------------------------------------
# PolyZ
# --------------------------------------------------------------------------

@dataclass(frozen=True)
class PolyZ:
    """Polynomial in ``z`` with :class:`PolyW` coefficients."""

    coeffs: tuple[PolyW, ...] = ()

    def __post_init__(self):
        cs = [_as_polyw(c) for c in self.coeffs]
        while cs and cs[-1].is_zero():
            cs.pop()
        object.__setattr__(self, "coeffs", tuple(cs))

    @classmethod
    def const(cls, c: PolyW | Scalar) -> PolyZ:
        return cls((_as_polyw(c),))

    @classmethod
    def z(cls) -> PolyZ:
        return cls((PolyW(), PolyW.const(1)))

    @classmethod
    def monomial(cls, c: PolyW | Scalar, power: int) -> PolyZ:
        return cls((PolyW(),) * power + (_as_polyw(c),))

    @classmethod
    def from_univariate(cls, coeffs: Iterable[Scalar]) -> PolyZ:
        return cls(tuple(PolyW.const(c) for c in coeffs))

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    @property
    def w_degree(self) -> int:
        return max((c.degree for c in self.coeffs), default=ZERO_DEGREE)

    def is_zero(self) -> bool:
        return not self.coeffs

    def is_w_free(self) -> bool:
        return all(c.is_const() for c in self.coeffs)

    def __getitem__(self, i: int) -> PolyW:
        return self.coeffs[i] if 0 <= i < len(self.coeffs) else PolyW()

    def __add__(self, other: PolyZ | PolyW | Scalar) -> PolyZ:
        other = _as_polyz(other)
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        return PolyZ(tuple(x + b[i] if i < len(b) else x for i, x in enumerate(a)))

    __radd__ = __add__

    def __neg__(self) -> PolyZ:
        return PolyZ(tuple(-c for c in self.coeffs))

    def __sub__(self, other: PolyZ | PolyW | Scalar) -> PolyZ:
        return self + (-_as_polyz(other))

    def __rsub__(self, other: PolyW | Scalar) -> PolyZ:
        return _as_polyz(other) - self

    def __mul__(self, other: PolyZ | PolyW | Scalar) -> PolyZ:
        if not isinstance(other, PolyZ):
            return PolyZ(tuple(c * other for c in self.coeffs))
        a, b = self.coeffs, other.coeffs
        if not a or not b:
            return PolyZ()
        out = [PolyW()] * (len(a) + len(b) - 1)
        for i, x in enumerate(a):
            if x.is_zero():
                continue
            for j, y in enumerate(b):
                if not y.is_zero():
                    out[i + j] = out[i + j] + x * y
        return PolyZ(tuple(out))

    __rmul__ = __mul__

    def __pow__(self, e: int) -> PolyZ:
        out, base = PolyZ.const(1), self
        while e:
            if e & 1:
                out = out * base
            base = base * base
            e >>= 1
        return out

    def exact_div(self, other: PolyZ) -> PolyZ:
        """Quotient in Q[w][z]; raises ArithmeticError if ``other`` does not divide."""
        if other.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        rem = list(self.coeffs)
        dd = other.degree
        lead = other.coeffs[-1]
        quot = [PolyW()] * max(len(rem) - dd, 0)
        for i in range(len(rem) - 1 - dd, -1, -1):
            top = rem[i + dd]
            if top.is_zero():
                continue
            c = top.exact_div(lead)
            quot[i] = c
            for j, oj in enumerate(other.coeffs):
                rem[i + j] = rem[i + j] - c * oj
        if any(not r.is_zero() for r in rem):
            raise ArithmeticError("inexact polynomial division")
        return PolyZ(tuple(quot))

    def eval_w(self, x: Scalar) -> PolyZ:
        return PolyZ(tuple(PolyW.const(c(x)) for c in self.coeffs))

    def scale_z(self, c: Scalar) -> PolyZ:
        """Substitute ``z -> c*z``."""
        c = Fraction(c)
        return PolyZ(tuple(coef * c**i for i, coef in enumerate(self.coeffs)))

    def diff_w(self) -> PolyZ:
        return PolyZ(tuple(c.derivative() for c in self.coeffs))

    def mark_coefficient(self, j: int) -> PolyZ:
        """The w-free polynomial ``[w**j] self``."""
        return PolyZ(tuple(PolyW.const(c[j]) for c in self.coeffs))

    def univariate(self) -> tuple[Fraction, ...]:
        if not self.is_w_free():
            raise ValueError("polynomial depends on the mark variable")
        return tuple(c.constant() for c in self.coeffs)

    def z_content(self) -> tuple[Fraction, ...]:
        """Monic gcd of the slices ``[w**j] self`` (the largest factor in z alone)."""
        g: tuple[Fraction, ...] = ()
        for j in range(self.w_degree + 1):
            g = _ugcd(g, [c[j] for c in self.coeffs])
            if len(g) == 1:
                break
        return g

    def w_content(self) -> tuple[Fraction, ...]:
        """Monic gcd of the z-coefficients (the largest factor in w alone)."""
        g: tuple[Fraction, ...] = ()
        for c in self.coeffs:
            g = _ugcd(g, c.coeffs)
            if len(g) == 1:
                break
        return g

    def __repr__(self) -> str:
        parts = []
        for i, c in enumerate(self.coeffs):
            if c.is_zero():
                continue
            mono = "" if i == 0 else ("z" if i == 1 else f"z^{i}")
            body = _fmt_terms(c.coeffs, "w")
            parts.append(f"({body})*{mono}" if mono else f"({body})")
        return "PolyZ(" + (" + ".join(parts) if parts else "0") + ")"


def _as_polyz(x: PolyZ | PolyW | Scalar) -> PolyZ:
    return x if isinstance(x, PolyZ) else PolyZ.const(x)


def _divide_w_factor(p: PolyZ, f: Sequence[Fraction]) -> PolyZ:
    fw = PolyW(tuple(f))
    return PolyZ(tuple(c.exact_div(fw) for c in p.coeffs))


# --------------------------------------------------------------------------
# RationalGF
# --------------------------------------------------------------------------

@dataclass(frozen=True, eq=False)
class RationalGF:
    """``numerator / denominator`` as a formal power series in z.

    Stored normalized: shared factors depending on z alone or on the mark alone
    are cancelled, and the denominator's constant term is 1.  ``var`` names the
    mark variable carried by the coefficient ring ("w" or "u").
    """

    numerator: PolyZ
    denominator: PolyZ = PolyZ((PolyW((Fraction(1),)),))
    var: str = "w"

    def __post_init__(self):
        num, den = _as_polyz(self.numerator), _as_polyz(self.denominator)
        if den.is_zero():
            raise ZeroDivisionError("malformed generating function: zero denominator")
        num, den = _normalize(num, den)
        object.__setattr__(self, "numerator", num)
        object.__setattr__(self, "denominator", den)

    @classmethod
    def const(cls, c: Scalar, var: str = "w") -> RationalGF:
        return cls(PolyZ.const(c), var=var)

    @classmethod
    def zero(cls, var: str = "w") -> RationalGF:
        return cls(PolyZ(), var=var)

    @classmethod
    def from_univariate(cls, num: Iterable[Scalar], den: Iterable[Scalar]) -> RationalGF:
        return cls(PolyZ.from_univariate(num), PolyZ.from_univariate(den))

    def is_zero(self) -> bool:
        return self.numerator.is_zero()

    def is_mark_free(self) -> bool:
        return self.numerator.is_w_free() and self.denominator.is_w_free()

    def _join_var(self, other: RationalGF) -> str:
        if self.is_mark_free():
            return other.var
        if other.is_mark_free() or other.var == self.var:
            return self.var
        raise ValueError(f"cannot combine mark variables {self.var!r} and {other.var!r}")

    def __add__(self, other: RationalGF | Scalar) -> RationalGF:
        other = _as_gf(other)
        var = self._join_var(other)
        if self.denominator == other.denominator:
            return RationalGF(self.numerator + other.numerator, self.denominator, var)
        return RationalGF(
            self.numerator * other.denominator + other.numerator * self.denominator,
            self.denominator * other.denominator,
            var,
        )

    __radd__ = __add__

    def __neg__(self) -> RationalGF:
        return RationalGF(-self.numerator, self.denominator, self.var)

    def __sub__(self, other: RationalGF | Scalar) -> RationalGF:
        return self + (-_as_gf(other))

    def __rsub__(self, other: Scalar) -> RationalGF:
        return _as_gf(other) - self

    def __mul__(self, other: RationalGF | PolyZ | PolyW | Scalar) -> RationalGF:
        if not isinstance(other, RationalGF):
            return RationalGF(self.numerator * _as_polyz(other), self.denominator, self.var)
        var = self._join_var(other)
        return RationalGF(
            self.numerator * other.numerator, self.denominator * other.denominator, var
        )

    __rmul__ = __mul__

    def __truediv__(self, other: RationalGF) -> RationalGF:
        other = _as_gf(other)
        if other.is_zero():
            raise ZeroDivisionError("division by the zero generating function")
        return RationalGF(
            self.numerator * other.denominator,
            self.denominator * other.numerator,
            self._join_var(other),
        )

    def __eq__(self, other: object) -> bool:
        if isinstance(other, (int, Fraction)):
            other = RationalGF.const(other)
        if not isinstance(other, RationalGF):
            return NotImplemented
        if not (self.is_mark_free() or other.is_mark_free()) and self.var != other.var:
            return False
        return self.numerator * other.denominator == other.numerator * self.denominator

    __hash__ = None  # type: ignore[assignment]

    def eval_mark(self, x: Scalar) -> RationalGF:
        return RationalGF(self.numerator.eval_w(x), self.denominator.eval_w(x), self.var)

    def scale_z(self, c: Scalar) -> RationalGF:
        return RationalGF(self.numerator.scale_z(c), self.denominator.scale_z(c), self.var)

    def diff_mark(self) -> RationalGF:
        n, d = self.numerator, self.denominator
        return RationalGF(n.diff_w() * d - n * d.diff_w(), d * d, self.var)

    def series(self, n_max: int) -> list[PolyW]:
        return series_coeffs(self, n_max)

    def __repr__(self) -> str:
        return f"RationalGF[{self.var}]({self.numerator!r} / {self.denominator!r})"


def _as_gf(x: RationalGF | Scalar) -> RationalGF:
    return x if isinstance(x, RationalGF) else RationalGF.const(x)


def _normalize(num: PolyZ, den: PolyZ) -> tuple[PolyZ, PolyZ]:
    if num.is_zero():
        return PolyZ(), PolyZ.const(1)
    common_z = _ugcd(num.z_content(), den.z_content())
    if len(common_z) > 1:
        fz = PolyZ.from_univariate(common_z)
        num, den = num.exact_div(fz), den.exact_div(fz)
    common_w = _ugcd(num.w_content(), den.w_content())
    if len(common_w) > 1:
        num, den = _divide_w_factor(num, common_w), _divide_w_factor(den, common_w)
    c0 = den[0].constant()
    if c0 == 0:
        raise ValueError("malformed generating function: denominator vanishes at z=0")
    if c0 != 1:
        inv = 1 / c0
        num, den = num * inv, den * inv
    return num, den


def gf_normalize(f: RationalGF) -> RationalGF:
    """Return ``f`` in normalized form (construction already normalizes)."""
    return RationalGF(f.numerator, f.denominator, f.var)


def series_coeffs(f: RationalGF, n_max: int) -> list[PolyW]:
    """``[z^0]f, ..., [z^n_max]f`` by the recurrence the denominator induces."""
    num, den = f.numerator, f.denominator
    q0 = den[0]
    if not q0.is_const() or q0.is_zero():
        raise ValueError("denominator constant term must be a nonzero rational")
    inv = 1 / q0.constant()
    tail = [(i, den[i]) for i in range(1, den.degree + 1) if not den[i].is_zero()]
    out: list[PolyW] = []
    for n in range(n_max + 1):
        acc = num[n]
        for i, qi in tail:
            if i > n:
                break
            acc = acc - qi * out[n - i]
        out.append(acc * inv)
    return out


# --------------------------------------------------------------------------
# linear algebra over the fraction field
# --------------------------------------------------------------------------

def _bareiss_det(rows: list[list[PolyZ]]) -> PolyZ:
    a = [list(r) for r in rows]
    n = len(a)
    sign = 1
    prev = PolyZ.const(1)
    for k in range(n - 1):
        if a[k][k].is_zero():
            swap = next((r for r in range(k + 1, n) if not a[r][k].is_zero()), None)
            if swap is None:
                return PolyZ()
            a[k], a[swap] = a[swap], a[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]).exact_div(prev)
        prev = a[k][k]
    det = a[n - 1][n - 1]
    return det if sign > 0 else -det


def _clear_rows(
    matrix: Sequence[Sequence[RationalGF]], rhs: Sequence[RationalGF]
) -> tuple[list[list[PolyZ]], list[PolyZ]]:
    """Scale each equation by a common denominator so every entry is polynomial."""
    rows, out_rhs = [], []
    for mrow, b in zip(matrix, rhs):
        entries = list(mrow) + [b]
        dens: list[PolyZ] = []
        for e in entries:
            if e.denominator != PolyZ.const(1) and e.denominator not in dens:
                dens.append(e.denominator)
        cleared = []
        for e in entries:
            mult = PolyZ.const(1)
            for d in dens:
                if d != e.denominator:
                    mult = mult * d
            cleared.append(e.numerator * mult)
        rows.append(cleared[:-1])
        out_rhs.append(cleared[-1])
    return rows, out_rhs


def solve_polynomial(
    matrix: Sequence[Sequence[RationalGF]], rhs: Sequence[RationalGF]
) -> tuple[list[PolyZ], PolyZ]:
    """Cramer numerators and common determinant for ``matrix @ x = rhs``."""
    n = len(matrix)
    if any(len(r) != n for r in matrix) or len(rhs) != n:
        raise ValueError("matrix must be square and match the right-hand side")
    rows, b = _clear_rows(matrix, rhs)
    det = _bareiss_det(rows)
    if det.is_zero():
        raise DegenerateSystemError("degenerate transfer system")
    nums = []
    for j in range(n):
        replaced = [r[:j] + [b[i]] + r[j + 1:] for i, r in enumerate(rows)]
        nums.append(_bareiss_det(replaced))
    return nums, det


def _system_var(items: Iterable[RationalGF]) -> str:
    var = "w"
    for f in items:
        if not f.is_mark_free():
            var = f.var
    return var


def fraction_field_solve(
    matrix: Sequence[Sequence[RationalGF]], rhs: Sequence[RationalGF]
) -> list[RationalGF]:
    """Exact solution of ``matrix @ x = rhs`` over rational functions in (mark, z)."""
    var = _system_var([e for r in matrix for e in r] + list(rhs))
    nums, det = solve_polynomial(matrix, rhs)
    return [RationalGF(num, det, var) for num in nums]


def matvec(matrix: Sequence[Sequence[RationalGF]], x: Sequence[RationalGF]) -> list[RationalGF]:
    out = []
    for row in matrix:
        acc = RationalGF.zero(_system_var(list(row) + list(x)))
        for a, b in zip(row, x):
            if not a.is_zero() and not b.is_zero():
                acc = acc + a * b
        out.append(acc)
    return out
