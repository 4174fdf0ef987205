"""Cross-checks between the oracle, the recurrences and the transfer engine."""

from __future__ import annotations

import random
from dataclasses import dataclass, field, replace
from fractions import Fraction
from itertools import product
from typing import Callable, Iterable, Sequence

from .algebra import series_coeffs
from .models import DistributionTable, PatternSpec, ProbModel
from .oracle import dp_distribution, enumerate_distribution
from .patterns import (
    counts_iid_all,
    iid_substitution,
    iterate_recurrence,
    pattern_gf,
    pattern_gf_iid,
    recurrence_spec,
    right_end_gf,
)
from .systems import engine_pattern_gf, engine_right_end

GOLDEN_SPEC = PatternSpec((2, 2, 3))
GOLDEN_PROBS = ProbModel((Fraction(1, 6), Fraction(1, 3), Fraction(1, 2)))
GOLDEN_N = 17
GOLDEN_PROB_DECIMALS = ("0.9939258642", "0.006071881114", "0.000002254704073")
GOLDEN_COUNTS = (128210550, 929204, 409)


@dataclass
class CheckResult:
    name: str
    cases: int = 0
    failures: list[str] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return not self.failures

    def fail(self, message: str) -> None:
        self.failures.append(message)

    def line(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        text = f"{status} {self.name} ({self.cases} cases)"
        if self.failures:
            text += ": " + self.failures[0]
            if len(self.failures) > 1:
                text += f" [+{len(self.failures) - 1} more]"
        return text


@dataclass(frozen=True)
class VerifyConfig:
    ells: tuple[int, ...] = (2, 3)
    max_k: int = 3
    max_n: int = 12
    probs_per_spec: int = 3
    seed: int = 2021
    engine: bool = True
    golden: bool = True
    perturb: bool = False


def random_probs(rng: random.Random, ell: int, scale: int = 20) -> ProbModel:
    weights = [rng.randint(1, scale) for _ in range(ell)]
    total = sum(weights)
    return ProbModel(tuple(Fraction(w, total) for w in weights))


def first_difference(a: DistributionTable, b: DistributionTable) -> tuple[int, object, object] | None:
    for m in range(max(len(a.values), len(b.values))):
        if a[m] != b[m]:
            return m, a[m], b[m]
    return None


def _describe(spec: PatternSpec, probs: ProbModel | None) -> str:
    p = "iid" if probs is None else ",".join(str(x) for x in probs.probs)
    return f"k={spec.thresholds} p={p}"


def _compare(
    result: CheckResult, label: str, left: Sequence[DistributionTable], right: Sequence[DistributionTable]
) -> None:
    result.cases += 1
    for a, b in zip(left, right):
        diff = first_difference(a, b)
        if diff is not None:
            m, x, y = diff
            result.fail(f"{label}: n={a.n} m={m}: {x} != {y}")
            return


def recurrence_tables(
    spec: PatternSpec, probs: ProbModel, n_max: int, perturb: bool = False
) -> list[DistributionTable]:
    rec = recurrence_spec(spec, probs)
    if perturb:
        rec = replace(rec, coeffs=(rec.coeffs[0] + Fraction(1, 97),) + rec.coeffs[1:])
    return [
        DistributionTable(n, "probability", f.coeffs)
        for n, f in enumerate(iterate_recurrence(rec, n_max))
    ]


def specs_for(cfg: VerifyConfig) -> Iterable[PatternSpec]:
    for ell in cfg.ells:
        for ks in product(range(1, cfg.max_k + 1), repeat=ell):
            yield PatternSpec(ks)


def run_verify(cfg: VerifyConfig, log: Callable[[str], None] | None = None) -> list[CheckResult]:
    rng = random.Random(cfg.seed)
    oracle = CheckResult("oracle: enumeration == dp == recurrence")
    counts = CheckResult("oracle: i.i.d. counts == enumeration == dp")
    series = CheckResult("recurrence == series of closed-form G")
    norm = CheckResult("normalization: sum P = 1, sum A = ell^n")
    engine = CheckResult("transfer engine == closed forms (G, H, H')")
    subst = CheckResult("i.i.d. substitution identity")
    results = [oracle, counts, series, norm, engine, subst]

    for spec in specs_for(cfg):
        if log:
            log(f"checking k={spec.thresholds}")
        n_max = cfg.max_n
        iid_tables = counts_iid_all(spec, n_max)
        enum_counts = [enumerate_distribution(spec, None, n) for n in range(n_max + 1)]
        dp_counts = [dp_distribution(spec, None, n) for n in range(n_max + 1)]
        _compare(counts, _describe(spec, None) + " enum", iid_tables, enum_counts)
        _compare(counts, _describe(spec, None) + " dp", iid_tables, dp_counts)
        norm.cases += 1
        for t in iid_tables:
            if t.total != spec.ell**t.n:
                norm.fail(f"{_describe(spec, None)} n={t.n}: sum {t.total}")
        subst.cases += 1
        if iid_substitution(spec) != pattern_gf_iid(spec):
            subst.fail(_describe(spec, None))

        for idx in range(cfg.probs_per_spec):
            probs = random_probs(rng, spec.ell)
            label = _describe(spec, probs)
            rec = recurrence_tables(spec, probs, n_max, cfg.perturb)
            enum = [enumerate_distribution(spec, probs, n) for n in range(n_max + 1)]
            dp = [dp_distribution(spec, probs, n) for n in range(n_max + 1)]
            _compare(oracle, label + " enum vs dp", enum, dp)
            _compare(oracle, label + " recurrence vs enum", rec, enum)
            gf_series = series_coeffs(pattern_gf(spec, probs), n_max)
            _compare(
                series,
                label,
                rec,
                [DistributionTable(n, "probability", f.coeffs) for n, f in enumerate(gf_series)],
            )
            norm.cases += 1
            for t in rec:
                if t.total != 1:
                    norm.fail(f"{label} n={t.n}: sum {t.total}")
            if cfg.engine and idx == 0:
                engine.cases += 1
                if engine_pattern_gf(spec, probs) != pattern_gf(spec, probs):
                    engine.fail(f"{label}: G differs")
                for name, a, b in zip(("H", "H'"), engine_right_end(spec, probs), right_end_gf(spec, probs)):
                    if a != b:
                        engine.fail(f"{label}: {name} differs")

    if cfg.golden:
        results.append(golden_check(cfg.perturb))
    return [r for r in results if r.cases]


def golden_check(perturb: bool = False) -> CheckResult:
    from .models import decimal_str

    res = CheckResult("golden n=17 tables")
    res.cases = 2
    table = recurrence_tables(GOLDEN_SPEC, GOLDEN_PROBS, GOLDEN_N, perturb)[GOLDEN_N]
    got = tuple(decimal_str(v, 10) for v in table.values)
    if got != GOLDEN_PROB_DECIMALS:
        res.fail(f"probabilities {got} != {GOLDEN_PROB_DECIMALS}")
    dp = dp_distribution(GOLDEN_SPEC, GOLDEN_PROBS, GOLDEN_N)
    diff = first_difference(table, dp)
    if diff is not None:
        res.fail(f"recurrence vs dp at n={GOLDEN_N} m={diff[0]}: {diff[1]} != {diff[2]}")
    counts = counts_iid_all(GOLDEN_SPEC, GOLDEN_N)[GOLDEN_N]
    if counts.values != GOLDEN_COUNTS:
        res.fail(f"counts {counts.values} != {GOLDEN_COUNTS}")
    return res
