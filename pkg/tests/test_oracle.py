from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from runsgf.models import PatternSpec, ProbModel
from runsgf.oracle import (
    BudgetExceeded,
    count_by_regex,
    count_by_scanner,
    count_in_sequence,
    dp_distribution,
    enumerate_distribution,
    runs,
)
from runsgf.patterns import distribution
from strategies import prob_models, specs

EXAMPLE = "223" "11123333" "112" "1122233" "2233" "112333" "12"


def as_seq(text):
    return [int(c) for c in text]


def test_example_sequence():
    seq = as_seq(EXAMPLE)
    assert len(seq) == 33
    assert count_in_sequence(PatternSpec((2, 1, 2)), seq) == 3


def test_short_sequence_has_no_pattern():
    assert count_in_sequence(PatternSpec((2, 2, 3)), [1, 1, 2, 2, 3, 3]) == 0


def test_alternating_pair():
    assert count_in_sequence(PatternSpec((1, 1)), [1, 2, 1, 2]) == 2


def test_runs_are_maximal():
    blocks = runs([1, 1, 2, 1, 1, 1])
    assert [(b.symbol, b.length) for b in blocks] == [(1, 2), (2, 1), (1, 3)]


def test_invalid_symbol():
    with pytest.raises(ValueError):
        count_in_sequence(PatternSpec((1, 1)), [1, 3])


sequences = st.integers(2, 4).flatmap(
    lambda ell: st.tuples(
        st.lists(st.integers(1, 3), min_size=ell, max_size=ell),
        st.lists(st.integers(1, ell), max_size=40),
    )
)


@given(sequences)
def test_three_counters_agree(data):
    ks, seq = data
    spec = PatternSpec(tuple(ks))
    c = count_in_sequence(spec, seq)
    assert count_by_regex(spec, seq) == c
    assert count_by_scanner(spec, seq) == c


@given(sequences, st.lists(st.integers(1, 4), max_size=10))
def test_count_monotone_under_extension(data, extra):
    ks, seq = data
    spec = PatternSpec(tuple(ks))
    extra = [min(x, spec.ell) for x in extra]
    assert count_in_sequence(spec, seq + extra) >= count_in_sequence(spec, seq)


def test_regex_handles_long_runs():
    spec = PatternSpec((12, 1))
    assert count_by_regex(spec, [1] * 13 + [2]) == 1
    assert count_by_regex(spec, [1] * 11 + [2]) == 0


def test_enumerate_small():
    spec = PatternSpec((1, 1))
    assert enumerate_distribution(spec, None, 2).values == (3, 1)
    probs = ProbModel.parse("1/3,2/3")
    assert enumerate_distribution(spec, probs, 2).values == (Fraction(7, 9), Fraction(2, 9))


def test_enumerate_empty_sequence():
    assert enumerate_distribution(PatternSpec((1, 2)), None, 0).values == (1,)
    assert dp_distribution(PatternSpec((1, 2)), None, 0).values == (1,)


def test_enumerate_budget(monkeypatch):
    with pytest.raises(BudgetExceeded, match="dp_distribution"):
        enumerate_distribution(PatternSpec((1, 1)), None, 10, max_sequences=100)
    monkeypatch.setenv("RUNSGF_BUDGET", "10")
    with pytest.raises(BudgetExceeded):
        enumerate_distribution(PatternSpec((1, 1)), None, 4)


def test_enumerate_matches_closed_form_golden_params(golden_spec, golden_probs):
    assert enumerate_distribution(golden_spec, golden_probs, 12) == distribution(golden_spec, golden_probs, 12)


def test_dp_golden_example(golden_spec, golden_probs):
    assert dp_distribution(golden_spec, golden_probs, 17) == distribution(golden_spec, golden_probs, 17)


def test_dp_below_threshold(golden_spec, golden_probs):
    assert dp_distribution(golden_spec, golden_probs, 6).values == (1,)


@pytest.mark.parametrize("ks", [(a, b) for a in (1, 2, 3) for b in (1, 2, 3)])
def test_dp_equals_enumeration_two_states(ks):
    spec = PatternSpec(ks)
    probs = ProbModel.parse("2/7,5/7")
    for n in range(13):
        assert dp_distribution(spec, None, n) == enumerate_distribution(spec, None, n)
        assert dp_distribution(spec, probs, n) == enumerate_distribution(spec, probs, n)


@settings(max_examples=20, deadline=None)
@given(specs(max_ell=4), st.integers(0, 60), st.data())
def test_dp_equals_closed_form(spec, n, data):
    probs = data.draw(prob_models(spec.ell))
    assert dp_distribution(spec, probs, n) == distribution(spec, probs, n)
