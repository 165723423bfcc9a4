"""Rules as logical conditionals and their quality measures.

A rule joins a set of antecedent literals (at most one per column) with a
single consequent literal on a different column. Per example, four truth
values derive from the membership matrix:

* mu_ant  - t-norm fold of the antecedent literals' memberships
* mu_con  - the consequent literal's membership
* mu_rule - I(mu_ant, mu_con), the conditional's truth value
* mu_eval - T(mu_ant, I(mu_ant, mu_con)), the inference's truth value

Averaging over the dataset yields fuzzy coverage (mu_ant), fuzzy support
(mu_eval), fuzzy confidence (their quotient) and fuzzy weighted relative
accuracy, coverage times the gap between confidence and the consequent's
base rate. WRAcc is classically defined against a target class; here it is
applied to arbitrary consequent literals in association mode, a faithful
extension of that definition.

All functions are pure over immutable inputs. Dataset averages use numpy's
pairwise summation, whose reduction shape is fixed by the array length, so
results are identical no matter how callers parallelize across rules.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .data import Literal, MembershipMatrix
from .errors import UsageError
from .operators import OperatorPair, TNormSpec, gmp, implication, tnorm

# fconf at zero coverage is defined as 0 and flagged vacuous rather than
# raising; any positive coverage threshold filters such rules anyway.


@dataclass(frozen=True)
class Rule:
    """Antecedent literal set plus one consequent literal.

    The antecedent is stored sorted by (column, label) so structural equality
    and hashing are canonical.
    """

    antecedent: tuple[Literal, ...]
    consequent: Literal

    def __post_init__(self) -> None:
        if not self.antecedent:
            raise UsageError("rule needs a non-empty antecedent")
        ordered = tuple(sorted(self.antecedent))
        object.__setattr__(self, "antecedent", ordered)
        cols = [lit.column for lit in ordered]
        if len(set(cols)) != len(cols):
            raise UsageError(
                "antecedent may hold at most one literal per column"
            )
        if self.consequent.column in cols:
            raise UsageError(
                "consequent column must be disjoint from the antecedent"
            )

    def text(self, matrix_or_vocab) -> str:
        """Canonical rendering, variables in ascending column order."""
        name = _literal_namer(matrix_or_vocab)
        body = " AND ".join(name(lit) for lit in self.antecedent)
        return f"IF {body} THEN {name(self.consequent)}"


def _literal_namer(matrix_or_vocab):
    if isinstance(matrix_or_vocab, MembershipMatrix):
        return matrix_or_vocab.literal_name
    vocab = matrix_or_vocab

    def name(lit: Literal) -> str:
        variable, labels = vocab[lit.column]
        return f"{variable}={labels[lit.label]}"

    return name


@dataclass(frozen=True)
class QualityReport:
    fcov: float
    fsupp: float
    fconf: float
    fwracc: float
    vacuous: bool = False

    def to_dict(self) -> dict:
        return {
            "fcov": self.fcov,
            "fsupp": self.fsupp,
            "fconf": self.fconf,
            "fwracc": self.fwracc,
            "vacuous": self.vacuous,
        }

    @classmethod
    def from_dict(cls, payload: dict) -> "QualityReport":
        return cls(
            float(payload["fcov"]),
            float(payload["fsupp"]),
            float(payload["fconf"]),
            float(payload["fwracc"]),
            bool(payload.get("vacuous", False)),
        )


def antecedent_vector(
    rule: Rule, tnorm_spec: TNormSpec, matrix: MembershipMatrix
) -> np.ndarray:
    """mu_ant for every row: left t-norm fold in ascending literal order."""
    acc = matrix.mu[:, matrix.index_of(rule.antecedent[0])]
    for lit in rule.antecedent[1:]:
        acc = tnorm(tnorm_spec, acc, matrix.mu[:, matrix.index_of(lit)])
    return np.asarray(acc)


def consequent_vector(rule: Rule, matrix: MembershipMatrix) -> np.ndarray:
    return matrix.mu[:, matrix.index_of(rule.consequent)]


def mu_ant(
    rule: Rule, row: int, tnorm_spec: TNormSpec, matrix: MembershipMatrix
) -> float:
    values = [
        matrix.mu[row, matrix.index_of(lit)] for lit in rule.antecedent
    ]
    from .operators import tnorm_nary

    return tnorm_nary(tnorm_spec, values)


def mu_con(rule: Rule, row: int, matrix: MembershipMatrix) -> float:
    return float(matrix.mu[row, matrix.index_of(rule.consequent)])


def mu_rule(
    rule: Rule, row: int, pair: OperatorPair, matrix: MembershipMatrix
) -> float:
    a = mu_ant(rule, row, pair.tnorm, matrix)
    c = mu_con(rule, row, matrix)
    return float(implication(pair.implication, a, c))


def mu_eval(
    rule: Rule, row: int, pair: OperatorPair, matrix: MembershipMatrix
) -> float:
    a = mu_ant(rule, row, pair.tnorm, matrix)
    c = mu_con(rule, row, matrix)
    return float(gmp(pair, a, c))


def _mean(values: np.ndarray) -> float:
    return float(values.sum()) / len(values)


def quality(
    rule: Rule, pair: OperatorPair, matrix: MembershipMatrix
) -> QualityReport:
    """The four measures of a rule over the whole matrix."""
    if matrix.row_count == 0:
        raise UsageError("membership matrix has no rows")
    ant = antecedent_vector(rule, pair.tnorm, matrix)
    con = consequent_vector(rule, matrix)
    ev = np.asarray(gmp(pair, ant, con))
    fcov = _mean(ant)
    fsupp = _mean(ev)
    base = _mean(con)
    vacuous = fcov <= 0.0
    fconf = 0.0 if vacuous else fsupp / fcov
    fwracc = fcov * (fconf - base)
    return QualityReport(fcov, fsupp, fconf, fwracc, vacuous)


def is_refinement(general: Rule, refined: Rule) -> bool:
    """True when ``refined`` keeps the consequent and strictly extends the
    antecedent literal set."""
    if general.consequent != refined.consequent:
        return False
    g = set(general.antecedent)
    r = set(refined.antecedent)
    return g < r
