"""Rule-set comparison and the two desk-scale experiments.

Quality values are not comparable across operator pairs (each pair defines
its own measures), so rule sets are compared structurally: two rules are the
same when they involve the same consequent literal and the same antecedent
labels. The similarity of two sets is the Jaccard index of those structural
identities, as a percentage.

The synthetic generator plants a one-way dependency between two variables
(large A forces large B, not conversely); the parameter sweep then tracks
support and confidence of "A=High -> B=High" and its reverse across an
operator-family parameter, and the threshold sweep tracks rule-set size and
top-rule quality across the minimum-coverage threshold.
"""

from __future__ import annotations

import csv
import io
import math
from dataclasses import dataclass
from typing import Literal as TypingLiteral
from typing import Sequence

import numpy as np

from .data import Dataset, Column, ColumnKind, MembershipMatrix, dataset_to_csv_bytes, fnv1a64, fuzzify
from .errors import ConfigurationError, UsageError
from .miner import MinerConfig, RuleSet, mine
from .operators import (
    ImplicationKind,
    ImplicationSpec,
    OperatorPair,
    TNormKind,
    TNormSpec,
)
from .partitions import FuzzyPartition
from .parallel import deterministic_map
from .rules import Rule, quality

SYNTH_GENERATOR_NAME = "numpy-pcg64"

SweepFamily = TypingLiteral["ss_lambda", "lk_ip"]


@dataclass(frozen=True)
class SweepRow:
    """Support/confidence of the two directional rules at one parameter
    value."""

    param_value: float
    supp_ab: float
    conf_ab: float
    supp_ba: float
    conf_ba: float


@dataclass(frozen=True)
class ThresholdRow:
    min_cov: float
    n_rules: int
    mean_conf_top20: float
    mean_supp_top20: float


@dataclass(frozen=True)
class SimilarityResult:
    intersection_size: int
    union_size: int
    percent: float


def similarity(rs1: RuleSet, rs2: RuleSet) -> SimilarityResult:
    """Structural Jaccard similarity, in percent; two empty sets count as
    identical (100)."""
    if rs1.vocabulary != rs2.vocabulary:
        raise UsageError(
            "rule sets reference different (variable, label) vocabularies"
        )
    s1 = rs1.signatures()
    s2 = rs2.signatures()
    union = len(s1 | s2)
    inter = len(s1 & s2)
    percent = 100.0 if union == 0 else 100.0 * inter / union
    return SimilarityResult(inter, union, percent)


def gen_synthetic_ab(n: int, seed: int) -> Dataset:
    """Two numeric columns with a planted one-way dependency.

    A is uniform on [0, 100]; B is uniform on [0, 100] when A <= 70 and
    uniform on [70, 100] otherwise. Bit-reproducible for a fixed (n, seed):
    the generator draws exactly two length-n uniform blocks from PCG64.
    """
    if n < 1:
        raise ConfigurationError(f"n must be >= 1, got {n}")
    rng = np.random.default_rng(seed)
    a = rng.uniform(0.0, 100.0, n)
    u = rng.uniform(0.0, 1.0, n)
    b = np.where(a <= 70.0, 100.0 * u, 70.0 + 30.0 * u)
    dataset = Dataset(
        columns=[
            Column("A", ColumnKind.NUMERIC, a),
            Column("B", ColumnKind.NUMERIC, b),
        ],
        row_count=n,
        fingerprint="",
        provenance={
            "generator": SYNTH_GENERATOR_NAME,
            "seed": seed,
            "n": n,
        },
    )
    dataset.fingerprint = fnv1a64(dataset_to_csv_bytes(dataset))
    return dataset


def _directional_rules(
    matrix: MembershipMatrix,
) -> tuple[Rule, Rule]:
    lit_a = matrix.literal_for("A", "High")
    lit_b = matrix.literal_for("B", "High")
    return (
        Rule((lit_a,), lit_b),
        Rule((lit_b,), lit_a),
    )


def _pair_for(family: SweepFamily, value: float) -> OperatorPair:
    if family == "ss_lambda":
        return OperatorPair(
            TNormSpec(TNormKind.SCHWEIZER_SKLAR, lam=value),
            ImplicationSpec(ImplicationKind.SCHWEIZER_SKLAR_K, lam=value),
        )
    if family == "lk_ip":
        return OperatorPair(
            TNormSpec(TNormKind.LUKASIEWICZ),
            ImplicationSpec(ImplicationKind.IP, p=value),
        )
    raise ConfigurationError(f"unknown sweep family {family!r}")


def param_sweep(
    family: SweepFamily,
    values: Sequence[float],
    dataset: Dataset,
    partitions: list[FuzzyPartition],
    threads: int = 1,
) -> list[SweepRow]:
    """Quality of the two directional High-High rules per parameter value,
    in input order."""
    matrix = fuzzify(dataset, partitions)
    rule_ab, rule_ba = _directional_rules(matrix)

    def evaluate(value: float) -> SweepRow:
        pair = _pair_for(family, value)
        q_ab = quality(rule_ab, pair, matrix)
        q_ba = quality(rule_ba, pair, matrix)
        return SweepRow(
            float(value), q_ab.fsupp, q_ab.fconf, q_ba.fsupp, q_ba.fconf
        )

    return deterministic_map(evaluate, list(values), threads)


def threshold_sweep(
    dataset: Dataset,
    partitions: list[FuzzyPartition],
    pair: OperatorPair,
    cov_values: Sequence[float],
    min_conf: float,
    min_supp: float,
    threads: int = 1,
) -> list[ThresholdRow]:
    """Mining outcome per minimum-coverage threshold.

    ``top 20%`` means the ceil(0.2 * n) rules ranked by confidence
    (descending, canonical order breaking ties); means are 0 when no rule
    survives.
    """
    if any(v <= 0.0 for v in cov_values):
        raise ConfigurationError("coverage thresholds must be positive")

    def evaluate(cov: float) -> ThresholdRow:
        config = MinerConfig(
            pair=pair, min_cov=cov, min_supp=min_supp, min_conf=min_conf
        )
        ruleset = mine(dataset, partitions, config, threads=1)
        n = len(ruleset)
        if n == 0:
            return ThresholdRow(float(cov), 0, 0.0, 0.0)
        by_conf = sorted(
            ruleset.rules, key=lambda rq: -rq[1].fconf
        )
        k = math.ceil(0.2 * n)
        top = by_conf[:k]
        mean_conf = sum(q.fconf for _, q in top) / k
        mean_supp = sum(q.fsupp for _, q in top) / k
        return ThresholdRow(float(cov), n, mean_conf, mean_supp)

    return deterministic_map(evaluate, list(cov_values), threads)


def param_sweep_to_csv(rows: Sequence[SweepRow]) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(["param", "supp_ab", "conf_ab", "supp_ba", "conf_ba"])
    for row in rows:
        writer.writerow(
            [repr(row.param_value), repr(row.supp_ab), repr(row.conf_ab),
             repr(row.supp_ba), repr(row.conf_ba)]
        )
    return buf.getvalue()


def threshold_sweep_to_csv(rows: Sequence[ThresholdRow]) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(
        ["min_cov", "n_rules", "mean_conf_top20", "mean_supp_top20"]
    )
    for row in rows:
        writer.writerow(
            [repr(row.min_cov), row.n_rules, repr(row.mean_conf_top20),
             repr(row.mean_supp_top20)]
        )
    return buf.getvalue()
