"""Hypothesis strategies shared by the test modules."""

from fractions import Fraction

from hypothesis import strategies as st

from runsgf.models import PatternSpec, ProbModel


@st.composite
def prob_models(draw, ell, scale=12):
    weights = draw(st.lists(st.integers(1, scale), min_size=ell, max_size=ell))
    total = sum(weights)
    return ProbModel(tuple(Fraction(w, total) for w in weights))


@st.composite
def specs(draw, min_ell=2, max_ell=4, max_k=3):
    ell = draw(st.integers(min_ell, max_ell))
    ks = draw(st.lists(st.integers(1, max_k), min_size=ell, max_size=ell))
    return PatternSpec(tuple(ks))


@st.composite
def spec_and_probs(draw, min_ell=2, max_ell=4, max_k=3):
    spec = draw(specs(min_ell, max_ell, max_k))
    return spec, draw(prob_models(spec.ell))
