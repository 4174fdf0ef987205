"""Pattern generating functions assembled by the transfer engine.

These rebuild the closed forms of :mod:`runsgf.patterns` from run blocks alone:
the right-end pair for states ``1..j`` is obtained from the pair for
``1..j-1`` and the run blocks of state ``j``, and the full distribution from the
pair for ``1..ell-1`` and the blocks of state ``ell``.
"""

from __future__ import annotations

from .algebra import RationalGF
from .models import PatternSpec, ProbModel
from .patterns import block_gfs, right_end_gf
from .transfer import block_system, extract_mark_coefficient, right_end_system, system_gf


def engine_right_end(
    spec: PatternSpec, probs: ProbModel, upto: int | None = None
) -> tuple[RationalGF, RationalGF]:
    """``(H, H_complement)`` for states ``1..upto`` by iterating the u-marked system."""
    upto = spec.ell if upto is None else upto
    short, long_ = block_gfs(spec, probs, 1)
    h, hc = long_, short
    for j in range(2, upto + 1):
        blocks = block_gfs(spec, probs, j)
        g = system_gf(right_end_system((hc, h), blocks))
        marked = extract_mark_coefficient(g, "u", 1)
        # [u^0] also holds sequences that are the terminal block alone, so the
        # complement comes from the unmarked full system instead.
        everything = system_gf(block_system((hc, h), blocks, mark=1))
        h, hc = marked, everything - marked
    return h, hc


def engine_pattern_gf(spec: PatternSpec, probs: ProbModel, inner: str = "engine") -> RationalGF:
    """Double generating function from the four-block system.

    ``inner`` selects where the right-end pair for states ``1..ell-1`` comes
    from: ``"engine"`` (iterated systems) or ``"closed"`` (closed form).
    """
    if inner == "engine":
        h, hc = engine_right_end(spec, probs, spec.ell - 1)
    elif inner == "closed":
        h, hc = right_end_gf(spec, probs, spec.ell - 1)
    else:
        raise ValueError(f"unknown inner source {inner!r}")
    return system_gf(block_system((hc, h), block_gfs(spec, probs, spec.ell)), include_empty=True)


def engine_pattern_gf_iid(spec: PatternSpec) -> RationalGF:
    return engine_pattern_gf(spec, ProbModel.uniform(spec.ell)).scale_z(spec.ell)
