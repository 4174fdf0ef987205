"""Direct counting of patterns on explicit sequences.

Nothing here touches generating functions.  A pattern occurrence is a window
of ``ell`` consecutive maximal runs whose symbols are ``1, 2, ..., ell`` and
whose lengths are at least ``k_1, ..., k_ell``.
"""

from __future__ import annotations

import os
import re
from collections import defaultdict
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from itertools import groupby, product
from typing import Iterable, Sequence

from .models import DistributionTable, PatternSpec, ProbModel

DEFAULT_BUDGET = 2 * 10**7


class BudgetExceeded(RuntimeError):
    pass


@dataclass(frozen=True)
class RunBlock:
    symbol: int
    length: int


def runs(seq: Iterable[int]) -> list[RunBlock]:
    return [RunBlock(s, sum(1 for _ in grp)) for s, grp in groupby(seq)]


def _validate(spec: PatternSpec, seq: Sequence[int]) -> None:
    for x in seq:
        if not (isinstance(x, int) and 1 <= x <= spec.ell):
            raise ValueError(f"invalid symbol {x!r} for {spec.ell} states")


def _count_runs(ks: tuple[int, ...], blocks: Sequence[tuple[int, int]]) -> int:
    ell = len(ks)
    count = 0
    for i in range(len(blocks) - ell + 1):
        for j in range(ell):
            sym, length = blocks[i + j]
            if sym != j + 1 or length < ks[j]:
                break
        else:
            count += 1
    return count


def count_in_sequence(spec: PatternSpec, seq: Sequence[int]) -> int:
    """Number of pattern occurrences in ``seq`` (labels ``1..ell``)."""
    seq = list(seq)
    _validate(spec, seq)
    blocks = [(b.symbol, b.length) for b in runs(seq)]
    return _count_runs(spec.thresholds, blocks)


def count_by_regex(spec: PatternSpec, seq: Sequence[int]) -> int:
    """Same count via a regular expression over the run-length string.

    Each maximal run becomes ``<symbol>:<length>;``; an occurrence is a
    lookahead match of ``ell`` consecutive such tokens starting at a token
    boundary.
    """
    seq = list(seq)
    _validate(spec, seq)
    text = ";" + "".join(f"{b.symbol}:{b.length};" for b in runs(seq))
    parts = []
    for j, k in enumerate(spec.thresholds, start=1):
        # lengths >= k: a number with more digits, or same digits and >= k
        parts.append(f"{j}:(?:{_at_least(k)});")
    pattern = re.compile("(?<=;)(?=" + "".join(parts) + ")")
    return sum(1 for _ in pattern.finditer(text))


def _at_least(k: int) -> str:
    # explicit alternation is enough for the small thresholds used here
    digits = len(str(k))
    alts = [rf"[1-9]\d{{{digits},}}"]
    alts.extend(str(v) for v in range(k, 10**digits))
    return "|".join(alts)


def budget() -> int:
    raw = os.environ.get("RUNSGF_BUDGET")
    return int(raw) if raw else DEFAULT_BUDGET


@lru_cache(maxsize=64)
def _enumerate_windows(ell: int, n: int) -> dict[tuple[tuple[int, ...], tuple], int]:
    """Scan all ``ell**n`` sequences once, independent of the thresholds.

    Each sequence is reduced to its symbol composition and the run lengths of
    every window of maximal runs labelled ``1..ell``; the result maps that
    summary to the number of sequences sharing it.
    """
    acc: dict[tuple[tuple[int, ...], tuple], int] = defaultdict(int)
    for seq in product(range(1, ell + 1), repeat=n):
        comp = [0] * ell
        for x in seq:
            comp[x - 1] += 1
        blocks = [(s, sum(1 for _ in g)) for s, g in groupby(seq)]
        windows = []
        for i in range(len(blocks) - ell + 1):
            if all(blocks[i + j][0] == j + 1 for j in range(ell)):
                windows.append(tuple(blocks[i + j][1] for j in range(ell)))
        acc[(tuple(comp), tuple(windows))] += 1
    return dict(acc)


def _enumerate_counts(ks: tuple[int, ...], n: int) -> dict[tuple[tuple[int, ...], int], int]:
    """Multiplicity of each (symbol composition, pattern count) over all sequences."""
    acc: dict[tuple[tuple[int, ...], int], int] = defaultdict(int)
    for (comp, windows), mult in _enumerate_windows(len(ks), n).items():
        m = sum(1 for lengths in windows if all(a >= k for a, k in zip(lengths, ks)))
        acc[(comp, m)] += mult
    return acc


def enumerate_distribution(
    spec: PatternSpec, probs: ProbModel | None, n: int, max_sequences: int | None = None
) -> DistributionTable:
    """Brute force over all ``ell**n`` sequences.

    With ``probs=None`` the table counts sequences; otherwise it holds exact
    probabilities.
    """
    limit = budget() if max_sequences is None else max_sequences
    if spec.ell**n > limit:
        raise BudgetExceeded(
            f"{spec.ell}^{n} sequences exceed the budget of {limit}; use dp_distribution"
        )
    counts = _enumerate_counts(spec.thresholds, n)
    m_max = max(m for _, m in counts)
    if probs is None:
        values: list = [0] * (m_max + 1)
        for (_, m), mult in counts.items():
            values[m] += mult
        return DistributionTable(n, "count", tuple(values))
    probs.check(spec)
    values = [Fraction(0)] * (m_max + 1)
    for (comp, m), mult in counts.items():
        weight = Fraction(mult)
        for p, c in zip(probs.probs, comp):
            weight *= p**c
        values[m] += weight
    return DistributionTable(n, "probability", tuple(values))


@dataclass(frozen=True)
class OracleState:
    """Scanner state after reading a non-empty prefix.

    ``run_length`` is capped at the threshold of ``last_symbol``.  ``on_track``
    records whether the maximal runs right before the current one are exactly
    ``1..last_symbol-1`` with qualifying lengths (always true for symbol 1).
    """

    last_symbol: int
    run_length: int
    on_track: bool


def step(ks: Sequence[int], state: OracleState | None, x: int) -> tuple[OracleState, bool]:
    """Read symbol ``x``; return the new state and whether an occurrence completes."""
    ell = len(ks)
    if state is not None and x == state.last_symbol:
        r = state.run_length
        new_r = min(r + 1, ks[x - 1])
        credit = state.on_track and x == ell and r + 1 == ks[x - 1]
        return OracleState(x, new_r, state.on_track), credit
    if x == 1:
        on_track = True
    elif state is None:
        on_track = False
    else:
        prev = state.last_symbol
        on_track = (
            x == prev + 1 and state.on_track and state.run_length >= ks[prev - 1]
        )
    credit = on_track and x == ell and ks[x - 1] == 1
    return OracleState(x, 1, on_track), credit


def count_by_scanner(spec: PatternSpec, seq: Sequence[int]) -> int:
    """Count occurrences by running :func:`step` over ``seq``."""
    _validate(spec, seq)
    state, total = None, 0
    for x in seq:
        state, credit = step(spec.thresholds, state, x)
        total += credit
    return total


def dp_distribution(
    spec: PatternSpec, probs: ProbModel | None, n: int
) -> DistributionTable:
    """Exact distribution by dynamic programming over scanner states.

    ``probs=None`` counts sequences (every symbol has weight 1).
    """
    if n < 0:
        raise ValueError("n must be non-negative")
    ks = spec.thresholds
    if probs is None:
        weights = [Fraction(1)] * spec.ell
        mode = "count"
    else:
        probs.check(spec)
        weights = list(probs.probs)
        mode = "probability"
    # layer maps (state, m) -> weight; the empty prefix is state None
    layer: dict[tuple[OracleState | None, int], Fraction] = {(None, 0): Fraction(1)}
    for _ in range(n):
        nxt: dict[tuple[OracleState | None, int], Fraction] = defaultdict(Fraction)
        for (state, m), wt in layer.items():
            for x in range(1, spec.ell + 1):
                new_state, credit = step(ks, state, x)
                nxt[(new_state, m + credit)] += wt * weights[x - 1]
        layer = nxt
    values = [Fraction(0)] * (spec.m_max(n) + 1)
    for (_, m), wt in layer.items():
        values[m] += wt
    return DistributionTable(n, mode, tuple(values))
