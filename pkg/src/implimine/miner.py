"""Level-wise Apriori mining of fuzzy implicative association rules.

Frequent itemsets are literal sets (at most one literal per column) whose
fuzzy coverage, the dataset-average of the t-norm fold, clears a minimum
threshold; coverage is anti-monotone under refinement for every t-norm, so
downward closure is always sound. Each frequent itemset of size >= 2 is then
split in every direction, one literal at a time taken as the consequent,
because support need not be symmetric; a rule survives when its fuzzy
support and confidence clear their thresholds. Consequents are single
literals throughout. Redundancy pruning drops a rule when a strictly more
general rule with the same consequent is at least as confident.

Cross-level support pruning (skipping a rule whose generalization already
missed the support threshold) is only sound when the operator pair has the
monotone-GMP property, so :func:`mine` enables it only after certifying the
pair; non-certified pairs still mine, with a provenance warning.

``brute_force_mine`` is an independent oracle: it enumerates every
column-distinct subset and split directly, with no candidate generation and
no pruning shortcuts, and must agree with :func:`mine` exactly.
"""

from __future__ import annotations

import itertools
import json
from dataclasses import dataclass, field

import numpy as np

from .data import Dataset, Literal, MembershipMatrix, fuzzify
from .errors import ConfigurationError, UsageError
from .operators import OperatorPair, PropertyReport, TNormSpec, certify, tnorm
from .parallel import deterministic_map
from .partitions import FuzzyPartition
from .rules import QualityReport, Rule, quality


@dataclass(frozen=True)
class Itemset:
    """Canonical sorted literal set with its fuzzy coverage."""

    literals: tuple[Literal, ...]
    fcov: float


@dataclass(frozen=True)
class MinerConfig:
    pair: OperatorPair
    min_cov: float = 0.3
    min_supp: float = 0.3
    min_conf: float = 0.8
    max_itemset_size: int = 4
    prune_redundant: bool = True
    target_column: str | None = None

    def __post_init__(self) -> None:
        if not 0.0 < self.min_cov <= 1.0:
            raise ConfigurationError(
                f"min_cov must be in (0, 1], got {self.min_cov}"
            )
        if not 0.0 <= self.min_supp <= 1.0:
            raise ConfigurationError(
                f"min_supp must be in [0, 1], got {self.min_supp}"
            )
        if not 0.0 <= self.min_conf <= 1.0:
            raise ConfigurationError(
                f"min_conf must be in [0, 1], got {self.min_conf}"
            )
        if self.max_itemset_size < 1:
            raise ConfigurationError(
                f"max_itemset_size must be >= 1, got {self.max_itemset_size}"
            )

    def to_dict(self) -> dict:
        return {
            "pair": self.pair.to_dict(),
            "min_cov": self.min_cov,
            "min_supp": self.min_supp,
            "min_conf": self.min_conf,
            "max_itemset_size": self.max_itemset_size,
            "prune_redundant": self.prune_redundant,
            "target_column": self.target_column,
        }


@dataclass
class RuleSet:
    """Deterministically ordered rules with their qualities and provenance.

    Ordering is (fsupp desc, fconf desc, canonical text asc), total and
    stable across runs and thread counts.
    """

    rules: tuple[tuple[Rule, QualityReport], ...]
    vocabulary: tuple[tuple[str, tuple[str, ...]], ...]
    provenance: dict = field(default_factory=dict)

    def __len__(self) -> int:
        return len(self.rules)

    def __iter__(self):
        return iter(self.rules)

    def texts(self) -> list[str]:
        return [rule.text(self.vocabulary) for rule, _ in self.rules]

    def signatures(self) -> set:
        """Structural identities: (antecedent name set, consequent name),
        quality values ignored."""
        out = set()
        for rule, _ in self.rules:
            ant = frozenset(
                _literal_names(self.vocabulary, lit)
                for lit in rule.antecedent
            )
            out.add((ant, _literal_names(self.vocabulary, rule.consequent)))
        return out

    def to_json_text(self) -> str:
        payload = {
            "schema": "implimine-ruleset/1",
            "provenance": self.provenance,
            "vocabulary": [
                {"variable": var, "labels": list(labels)}
                for var, labels in self.vocabulary
            ],
            "rules": [
                {
                    "antecedent": [
                        _literal_payload(self.vocabulary, lit)
                        for lit in rule.antecedent
                    ],
                    "consequent": _literal_payload(
                        self.vocabulary, rule.consequent
                    ),
                    "text": rule.text(self.vocabulary),
                    "quality": q.to_dict(),
                }
                for rule, q in self.rules
            ],
        }
        return json.dumps(payload, indent=2) + "\n"

    def to_csv_text(self) -> str:
        import csv as _csv
        import io as _io

        buf = _io.StringIO()
        writer = _csv.writer(buf, lineterminator="\n")
        writer.writerow(
            ["antecedent", "consequent", "fcov", "fsupp", "fconf", "fwracc"]
        )
        for rule, q in self.rules:
            ant = " AND ".join(
                "{}={}".format(*_literal_names(self.vocabulary, lit))
                for lit in rule.antecedent
            )
            con = "{}={}".format(
                *_literal_names(self.vocabulary, rule.consequent)
            )
            writer.writerow(
                [ant, con, repr(q.fcov), repr(q.fsupp), repr(q.fconf),
                 repr(q.fwracc)]
            )
        return buf.getvalue()


def _literal_names(vocabulary, lit: Literal) -> tuple[str, str]:
    variable, labels = vocabulary[lit.column]
    return variable, labels[lit.label]


def _literal_payload(vocabulary, lit: Literal) -> dict:
    variable, label = _literal_names(vocabulary, lit)
    return {"variable": variable, "label": label}


def ruleset_from_json_text(text: str) -> RuleSet:
    try:
        payload = json.loads(text)
        vocabulary = tuple(
            (entry["variable"], tuple(entry["labels"]))
            for entry in payload["vocabulary"]
        )
        col_index = {var: ci for ci, (var, _) in enumerate(vocabulary)}

        def lit(entry: dict) -> Literal:
            ci = col_index[entry["variable"]]
            labels = vocabulary[ci][1]
            return Literal(ci, labels.index(entry["label"]))

        rules = tuple(
            (
                Rule(
                    tuple(lit(e) for e in raw["antecedent"]),
                    lit(raw["consequent"]),
                ),
                QualityReport.from_dict(raw["quality"]),
            )
            for raw in payload["rules"]
        )
        return RuleSet(rules, vocabulary, payload.get("provenance", {}))
    except (KeyError, TypeError, ValueError) as exc:
        raise UsageError(f"malformed rule-set JSON: {exc}") from None


def _fcov_of(
    matrix: MembershipMatrix, tnorm_spec: TNormSpec, indices: tuple[int, ...]
) -> float:
    acc = matrix.mu[:, indices[0]]
    for idx in indices[1:]:
        acc = tnorm(tnorm_spec, acc, matrix.mu[:, idx])
    return float(np.asarray(acc).sum()) / matrix.row_count


def frequent_itemsets(
    matrix: MembershipMatrix,
    tnorm_spec: TNormSpec,
    min_cov: float,
    max_size: int,
    threads: int = 1,
) -> list[Itemset]:
    """All column-distinct literal sets of size <= max_size with coverage at
    least ``min_cov``, by level-wise candidate generation."""
    if min_cov <= 0.0:
        raise ConfigurationError("min_cov must be > 0 for itemset mining")
    n_lit = len(matrix.literals)
    col_of = [lit.column for lit in matrix.literals]

    def evaluate(indices: tuple[int, ...]) -> float:
        return _fcov_of(matrix, tnorm_spec, indices)

    singles = [(i,) for i in range(n_lit)]
    covs = deterministic_map(evaluate, singles, threads)
    frontier = [
        (ids, cov) for ids, cov in zip(singles, covs) if cov >= min_cov
    ]
    out: list[Itemset] = [
        Itemset(tuple(matrix.literals[i] for i in ids), cov)
        for ids, cov in frontier
    ]

    size = 1
    frequent_ids = {ids for ids, _ in frontier}
    while size < max_size and frontier:
        candidates: list[tuple[int, ...]] = []
        items = [ids for ids, _ in frontier]
        for a_pos in range(len(items)):
            for b_pos in range(a_pos + 1, len(items)):
                a, b = items[a_pos], items[b_pos]
                if a[:-1] != b[:-1]:
                    # Sorted frontier: once prefixes diverge no later b joins.
                    break
                if col_of[a[-1]] == col_of[b[-1]]:
                    continue
                cand = a + (b[-1],)
                if all(
                    cand[:k] + cand[k + 1:] in frequent_ids
                    for k in range(len(cand))
                ):
                    candidates.append(cand)
        covs = deterministic_map(evaluate, candidates, threads)
        frontier = [
            (ids, cov)
            for ids, cov in zip(candidates, covs)
            if cov >= min_cov
        ]
        frequent_ids.update(ids for ids, _ in frontier)
        out.extend(
            Itemset(tuple(matrix.literals[i] for i in ids), cov)
            for ids, cov in frontier
        )
        size += 1
    return out


def _target_index(matrix: MembershipMatrix, target_column: str | None):
    if target_column is None:
        return None
    for ci, (var, _) in enumerate(matrix.vocabulary):
        if var == target_column:
            return ci
    raise UsageError(f"target column {target_column!r} not in matrix")


def _canonical_order(entries, vocabulary):
    return tuple(
        sorted(
            entries,
            key=lambda rq: (-rq[1].fsupp, -rq[1].fconf,
                            rq[0].text(vocabulary)),
        )
    )


def generate_rules(
    itemsets: list[Itemset],
    matrix: MembershipMatrix,
    config: MinerConfig,
    threads: int = 1,
    support_pruning: bool = False,
) -> RuleSet:
    """Split every frequent itemset in all single-consequent directions and
    keep the rules clearing the support and confidence thresholds.

    ``support_pruning`` skips refinements of support-failed rules; enable it
    only for pairs certified monotone (then it cannot change the output).
    """
    target_ci = _target_index(matrix, config.target_column)
    by_size: dict[int, list[Itemset]] = {}
    for itemset in itemsets:
        by_size.setdefault(len(itemset.literals), []).append(itemset)

    kept: list[tuple[Rule, QualityReport]] = []
    support_failed: set[tuple[tuple[Literal, ...], Literal]] = set()
    for size in sorted(by_size):
        if size < 2:
            continue
        level = sorted(by_size[size], key=lambda s: s.literals)
        tasks: list[tuple[tuple[Literal, ...], Literal]] = []
        for itemset in level:
            for consequent in itemset.literals:
                if target_ci is not None and consequent.column != target_ci:
                    continue
                antecedent = tuple(
                    l for l in itemset.literals if l != consequent
                )
                if support_pruning and size >= 3 and any(
                    (antecedent[:k] + antecedent[k + 1:], consequent)
                    in support_failed
                    for k in range(len(antecedent))
                ):
                    support_failed.add((antecedent, consequent))
                    continue
                tasks.append((antecedent, consequent))

        def evaluate(task):
            antecedent, consequent = task
            rule = Rule(antecedent, consequent)
            return rule, quality(rule, config.pair, matrix)

        for (antecedent, consequent), (rule, q) in zip(
            tasks, deterministic_map(evaluate, tasks, threads)
        ):
            if q.fsupp < config.min_supp:
                support_failed.add((antecedent, consequent))
                continue
            if q.fconf >= config.min_conf:
                kept.append((rule, q))

    return RuleSet(
        rules=_canonical_order(kept, matrix.vocabulary),
        vocabulary=matrix.vocabulary,
        provenance={
            "config": config.to_dict(),
            "dataset_fingerprint": matrix.fingerprint,
            "warnings": [],
        },
    )


def prune_redundant(ruleset: RuleSet) -> RuleSet:
    """Drop a rule when the (pre-pruning) set holds a strictly more general
    rule, same consequent, with confidence at least as high."""
    entries = list(ruleset.rules)
    by_consequent: dict[Literal, list[tuple[set, float]]] = {}
    for rule, q in entries:
        by_consequent.setdefault(rule.consequent, []).append(
            (set(rule.antecedent), q.fconf)
        )

    def dominated(rule: Rule, q: QualityReport) -> bool:
        mine_ant = set(rule.antecedent)
        for other_ant, other_conf in by_consequent[rule.consequent]:
            if other_ant < mine_ant and other_conf >= q.fconf:
                return True
        return False

    kept = tuple(
        (rule, q) for rule, q in entries if not dominated(rule, q)
    )
    return RuleSet(kept, ruleset.vocabulary, dict(ruleset.provenance))


def _adequacy_warnings(
    pair: OperatorPair,
) -> tuple[list[str], PropertyReport, PropertyReport]:
    # Soundness of cross-level support pruning hangs on MTC alone, so only
    # an MTC failure downgrades the run (and disables that pruning).
    tc, mtc = certify(pair)
    warnings = []
    if not mtc.holds:
        warnings.append(
            "non-adequate pair: {} fails MTC on the default grid "
            "(max violation {:.6g}); support-based pruning disabled".format(
                pair.describe(), mtc.max_violation
            )
        )
    return warnings, tc, mtc


def mine(
    dataset: Dataset,
    partitions: list[FuzzyPartition],
    config: MinerConfig,
    threads: int = 1,
) -> RuleSet:
    """Full pipeline: fuzzify, frequent itemsets, directional rule
    generation, optional redundancy pruning."""
    matrix = fuzzify(dataset, partitions)
    warnings, _tc, mtc = _adequacy_warnings(config.pair)
    itemsets = frequent_itemsets(
        matrix, config.pair.tnorm, config.min_cov,
        config.max_itemset_size, threads,
    )
    ruleset = generate_rules(
        itemsets, matrix, config, threads, support_pruning=mtc.holds
    )
    ruleset.provenance["warnings"] = warnings
    if config.prune_redundant:
        ruleset = prune_redundant(ruleset)
    return ruleset


BRUTE_FORCE_LITERAL_LIMIT = 20


def brute_force_mine(
    dataset: Dataset,
    partitions: list[FuzzyPartition],
    config: MinerConfig,
    threads: int = 1,
) -> RuleSet:
    """Exhaustive oracle with the same contract as :func:`mine`.

    Enumerates every column-distinct literal subset up to the size cap and
    every directional split, thresholding each directly. Guarded to small
    literal counts.
    """
    matrix = fuzzify(dataset, partitions)
    n_lit = len(matrix.literals)
    if n_lit > BRUTE_FORCE_LITERAL_LIMIT:
        raise UsageError(
            f"brute force guard: {n_lit} literals exceeds "
            f"{BRUTE_FORCE_LITERAL_LIMIT}"
        )
    warnings, _tc, _mtc = _adequacy_warnings(config.pair)
    target_ci = _target_index(matrix, config.target_column)
    col_of = [lit.column for lit in matrix.literals]

    kept: list[tuple[Rule, QualityReport]] = []
    for size in range(2, config.max_itemset_size + 1):
        for ids in itertools.combinations(range(n_lit), size):
            if len({col_of[i] for i in ids}) != size:
                continue
            if _fcov_of(matrix, config.pair.tnorm, ids) < config.min_cov:
                continue
            for c_idx in ids:
                consequent = matrix.literals[c_idx]
                if target_ci is not None and consequent.column != target_ci:
                    continue
                rule = Rule(
                    tuple(matrix.literals[i] for i in ids if i != c_idx),
                    consequent,
                )
                q = quality(rule, config.pair, matrix)
                if q.fsupp >= config.min_supp and q.fconf >= config.min_conf:
                    kept.append((rule, q))

    ruleset = RuleSet(
        rules=_canonical_order(kept, matrix.vocabulary),
        vocabulary=matrix.vocabulary,
        provenance={
            "config": config.to_dict(),
            "dataset_fingerprint": matrix.fingerprint,
            "warnings": warnings,
        },
    )
    if config.prune_redundant:
        ruleset = prune_redundant(ruleset)
    return ruleset
