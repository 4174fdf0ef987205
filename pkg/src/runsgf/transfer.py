"""Transfer-matrix evaluation of block systems.

A system is a list of block generating functions ``g_1..g_s`` and a matrix of
interaction marks ``w_ij`` for a block ``i`` immediately followed by a block
``j``.  Marks are ``0`` (adjacency forbidden), ``1`` (allowed, unmarked) or a
formal mark variable, ``"w"`` or ``"u"``.  The generating function of all
block sequences is ``e M^-1 g`` with ``M_ii = 1`` and ``M_ij = -g_i w_ij``.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence, Union

from .algebra import PolyW, PolyZ, RationalGF, solve_polynomial

Mark = Union[int, str]
MARK_VARIABLES = ("w", "u")


@dataclass(frozen=True)
class TransferSystem:
    blocks: tuple[RationalGF, ...]
    marks: tuple[tuple[Mark, ...], ...]

    def __post_init__(self):
        blocks = tuple(self.blocks)
        marks = tuple(tuple(r) for r in self.marks)
        object.__setattr__(self, "blocks", blocks)
        object.__setattr__(self, "marks", marks)
        s = len(blocks)
        if s == 0:
            raise ValueError("a transfer system needs at least one block")
        if len(marks) != s or any(len(r) != s for r in marks):
            raise ValueError(f"marks must be a {s}x{s} matrix")
        for i, g in enumerate(blocks):
            if not g.numerator[0].is_zero():
                raise ValueError(f"block {i + 1} has a nonzero constant term")
        used = set()
        for i, row in enumerate(marks):
            for j, m in enumerate(row):
                if m in (0, 1):
                    continue
                if m not in MARK_VARIABLES:
                    raise ValueError(f"unsupported mark {m!r} at ({i + 1}, {j + 1})")
                if i == j:
                    raise ValueError("diagonal marks must be 0")
                used.add(m)
        if len(used) > 1:
            raise ValueError("a system may use only one mark variable")
        for g in blocks:
            if not g.is_mark_free() and used and g.var not in used:
                raise ValueError("blocks and marks use different mark variables")
        # u counts a terminal block: only columns whose row has no successors.
        for i, row in enumerate(marks):
            for j, m in enumerate(row):
                if m == "u" and any(x != 0 for jj, x in enumerate(marks[j]) if jj != j):
                    raise ValueError(
                        f"u-mark at ({i + 1}, {j + 1}) targets a non-terminal block; "
                        "u-degree would exceed 1"
                    )

    @property
    def size(self) -> int:
        return len(self.blocks)

    @property
    def mark_var(self) -> str:
        for row in self.marks:
            for m in row:
                if m in MARK_VARIABLES:
                    return m
        for g in self.blocks:
            if not g.is_mark_free():
                return g.var
        return "w"


def _mark_value(m: Mark) -> PolyW:
    if m in MARK_VARIABLES:
        return PolyW.var()
    return PolyW.const(m)


def assemble_matrix(sys: TransferSystem) -> list[list[RationalGF]]:
    """The matrix ``M`` with ones on the diagonal and ``-g_i w_ij`` elsewhere."""
    var = sys.mark_var
    out = []
    for i, (g, row) in enumerate(zip(sys.blocks, sys.marks)):
        cells = []
        for j, m in enumerate(row):
            if i == j:
                cells.append(RationalGF.const(1, var))
            elif m == 0:
                cells.append(RationalGF.zero(var))
            else:
                cells.append(RationalGF(-g.numerator * _mark_value(m), g.denominator, var))
        out.append(cells)
    return out


def system_gf(sys: TransferSystem, include_empty: bool = False) -> RationalGF:
    """``e M^-1 g``; with ``include_empty`` the empty sequence adds 1."""
    var = sys.mark_var
    nums, det = solve_polynomial(assemble_matrix(sys), list(sys.blocks))
    total = PolyZ()
    for n in nums:
        total = total + n
    if include_empty:
        total = total + det
    return RationalGF(total, det, var)


def extract_mark_coefficient(g: RationalGF, var: str, degree: int) -> RationalGF:
    """``[var^degree] g`` as a mark-free generating function."""
    if var not in MARK_VARIABLES:
        raise ValueError(f"unknown mark variable {var!r}")
    if degree < 0:
        raise ValueError("degree must be non-negative")
    if g.is_mark_free():
        return g if degree == 0 else RationalGF.zero()
    if g.var != var:
        raise ValueError(f"generating function is marked by {g.var!r}, not {var!r}")
    if not g.denominator.is_w_free():
        raise ValueError(f"denominator depends on {var!r}; not a polynomial in the mark")
    if degree > g.numerator.w_degree:
        return RationalGF.zero()
    return RationalGF(g.numerator.mark_coefficient(degree), g.denominator)


def block_system(
    left: Sequence[RationalGF], right: Sequence[RationalGF], mark: Mark = "w"
) -> TransferSystem:
    """Alternating two-family system with the long/long adjacency marked.

    ``left = (short_L, long_L)`` and ``right = (short_R, long_R)``.  Blocks of
    the same family may not touch, so every run of blocks alternates
    left/right; ``long_L`` followed by ``long_R`` carries ``mark``.
    """
    (sl, ll), (sr, lr) = left, right
    marks = (
        (0, 0, 1, 1),
        (0, 0, 1, mark),
        (1, 1, 0, 0),
        (1, 1, 0, 0),
    )
    return TransferSystem((sl, ll, sr, lr), marks)


def right_end_system(
    left: Sequence[RationalGF], right: Sequence[RationalGF]
) -> TransferSystem:
    """:func:`block_system` plus a terminal copy of ``long_R`` entered by ``long_L`` under ``u``."""
    (sl, ll), (sr, lr) = left, right
    marks = (
        (0, 0, 1, 1, 1),
        (0, 0, 1, 1, "u"),
        (1, 1, 0, 0, 0),
        (1, 1, 0, 0, 0),
        (0, 0, 0, 0, 0),
    )
    return TransferSystem((sl, ll, sr, lr, lr), marks)
