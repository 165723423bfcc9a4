"""Fuzzy linguistic partitions for numeric and categorical variables.

Numeric variables get three quantile-anchored triangles (Low / Mid / High)
that form a Ruspini partition on the observed range: Low plateaus below the
first quartile and falls to 0 at the median, Mid peaks at the median between
the quartiles, High rises from the median and plateaus above the third
quartile. The shoulder plateaus also clamp values outside the observed range
to 1 on the nearest outer label. Categorical variables get one indicator
label per category. ``crispify`` turns a triangular partition into 0/1
intervals cut at the points where adjacent triangles cross (membership 0.5),
so a crisp baseline shares cut semantics with the fuzzy one.

Also home to :class:`GridSpec`, the evaluation grid used by the numeric
property certifiers in :mod:`implimine.operators`.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from typing import Sequence, Union

import numpy as np

from .errors import ConfigurationError, UsageError

DEFAULT_LABEL_NAMES = ("Low", "Mid", "High")

# Ruspini sum-to-one is asserted to this tolerance on observed points.
RUSPINI_TOLERANCE = 1e-9


@dataclass(frozen=True)
class GridSpec:
    """Evaluation grid on [0,1]: a uniform mesh plus seeded random points.

    ``resolution`` is the number of uniform points (endpoints 0 and 1
    included), ``random_points`` the number of extra uniform draws appended
    before deduplication. Deterministic for a fixed seed.
    """

    resolution: int = 65
    random_points: int = 200
    seed: int = 2027

    def __post_init__(self) -> None:
        if self.resolution < 2:
            raise ConfigurationError(
                f"grid resolution must be >= 2, got {self.resolution}"
            )
        if self.random_points < 0:
            raise ConfigurationError(
                f"random_points must be >= 0, got {self.random_points}"
            )
        if not 0 <= self.seed < 2**64:
            raise ConfigurationError("seed must be an unsigned 64-bit integer")

    def points(self) -> np.ndarray:
        """Sorted, deduplicated grid points (always contains 0 and 1)."""
        base = np.linspace(0.0, 1.0, self.resolution)
        if self.random_points:
            rng = np.random.default_rng(self.seed)
            base = np.concatenate(
                [base, rng.uniform(0.0, 1.0, self.random_points)]
            )
        return np.unique(base)


DEFAULT_GRID = GridSpec()


@dataclass(frozen=True)
class Triangular:
    """Triangular membership with apex ``b``.

    ``a == b`` makes the left side a plateau of value 1 (and likewise
    ``b == c`` on the right), which is how the outer labels clamp values
    beyond the observed range. ``a == b == c`` degenerates to a singleton
    spike at ``b``.
    """

    name: str
    a: float
    b: float
    c: float

    def __post_init__(self) -> None:
        if not (self.a <= self.b <= self.c):
            raise ConfigurationError(
                f"triangle anchors must satisfy a <= b <= c, got "
                f"({self.a}, {self.b}, {self.c})"
            )


@dataclass(frozen=True)
class CrispCategory:
    """Indicator label for one categorical value."""

    name: str
    value: str


@dataclass(frozen=True)
class CrispInterval:
    """Half-open interval label ``[lo, hi)`` (closed at ``hi`` when
    ``closed_right``). Evaluation is clamped at the partition level: the
    first/last interval of a chain absorbs out-of-range values."""

    name: str
    lo: float
    hi: float
    closed_right: bool


LabelSpec = Union[Triangular, CrispCategory, CrispInterval]


def triangular_membership(a: float, b: float, c: float, x) -> float | np.ndarray:
    """Piecewise-linear membership of ``x`` under the triangle (a, b, c)."""
    if not (a <= b <= c):
        raise ConfigurationError(
            f"triangle anchors must satisfy a <= b <= c, got ({a}, {b}, {c})"
        )
    xv = np.asarray(x, dtype=float)
    if a == b == c:
        out = np.where(xv == b, 1.0, 0.0)
    else:
        left = np.ones_like(xv) if a == b else (xv - a) / (b - a)
        right = np.ones_like(xv) if b == c else (c - xv) / (c - b)
        out = np.clip(np.minimum(left, right), 0.0, 1.0)
    if np.ndim(x) == 0:
        return float(out)
    return out


@dataclass(frozen=True)
class FuzzyPartition:
    """Named, ordered labels for one variable."""

    variable: str
    labels: tuple[LabelSpec, ...]

    def __post_init__(self) -> None:
        names = [lab.name for lab in self.labels]
        if len(set(names)) != len(names):
            raise ConfigurationError(
                f"duplicate label names in partition for {self.variable!r}"
            )
        if not self.labels:
            raise ConfigurationError(
                f"partition for {self.variable!r} has no labels"
            )

    @property
    def label_names(self) -> tuple[str, ...]:
        return tuple(lab.name for lab in self.labels)

    @property
    def is_categorical(self) -> bool:
        return isinstance(self.labels[0], CrispCategory)

    def membership(self, label: str, value) -> float:
        """Membership of ``value`` under the named label."""
        try:
            idx = self.label_names.index(label)
        except ValueError:
            raise UsageError(
                f"unknown label {label!r} for variable {self.variable!r}"
            ) from None
        return float(self.memberships(value)[idx])

    def memberships(self, value) -> np.ndarray:
        """Memberships of a single value under every label, in label order."""
        first = self.labels[0]
        if isinstance(first, CrispCategory):
            if not isinstance(value, str):
                raise UsageError(
                    f"variable {self.variable!r} is categorical; got "
                    f"{type(value).__name__}"
                )
            return np.array(
                [1.0 if value == lab.value else 0.0 for lab in self.labels]
            )
        if isinstance(value, str):
            raise UsageError(
                f"variable {self.variable!r} is numeric; got a string"
            )
        if isinstance(first, Triangular):
            return np.array(
                [
                    triangular_membership(lab.a, lab.b, lab.c, float(value))
                    for lab in self.labels
                ]
            )
        # Interval chain: the active label is decided by the interior cuts,
        # values at a cut belong to the right interval, out-of-range values
        # clamp to the outer intervals.
        cuts = [lab.hi for lab in self.labels[:-1]]
        idx = int(np.searchsorted(cuts, float(value), side="right"))
        out = np.zeros(len(self.labels))
        out[idx] = 1.0
        return out

    def column_memberships(self, values: np.ndarray) -> np.ndarray:
        """Vectorized memberships: shape (n_values, n_labels)."""
        first = self.labels[0]
        if isinstance(first, CrispCategory):
            arr = np.asarray(values, dtype=object)
            cols = [
                (arr == lab.value).astype(float) for lab in self.labels
            ]
            return np.column_stack(cols)
        vals = np.asarray(values, dtype=float)
        if isinstance(first, Triangular):
            cols = [
                np.asarray(
                    triangular_membership(lab.a, lab.b, lab.c, vals)
                )
                for lab in self.labels
            ]
            return np.column_stack(cols)
        cuts = np.array([lab.hi for lab in self.labels[:-1]])
        idx = np.searchsorted(cuts, vals, side="right")
        out = np.zeros((len(vals), len(self.labels)))
        out[np.arange(len(vals)), idx] = 1.0
        return out


def build_numeric_partition(
    variable: str,
    values: Sequence[float],
    label_names: Sequence[str] = DEFAULT_LABEL_NAMES,
) -> FuzzyPartition:
    """Three quantile-anchored triangles over the observed values.

    With q25/q50/q75 the quartiles: Low = (q25, q25, q50) with its plateau
    extending left, Mid = (q25, q50, q75), High = (q50, q75, q75) with its
    plateau extending right. A degenerate quartile (q25 equal to the median,
    or the median to q75) collapses the affected outer label to a spike at
    that value; no spread between the quartiles at all leaves nothing to
    partition.
    """
    vals = np.asarray(list(values), dtype=float)
    if vals.size == 0:
        raise ConfigurationError(f"no values for variable {variable!r}")
    if len(label_names) != 3:
        raise ConfigurationError(
            f"exactly 3 label names required, got {len(label_names)}"
        )
    q25, q50, q75 = (
        float(np.quantile(vals, q)) for q in (0.25, 0.5, 0.75)
    )
    if q25 == q75:
        raise ConfigurationError(
            f"values of {variable!r} have no spread between the quartiles "
            f"({q25}); no partition possible"
        )
    lo_name, mid_name, hi_name = label_names
    low = (
        Triangular(lo_name, q25, q25, q25)
        if q25 == q50
        else Triangular(lo_name, q25, q25, q50)
    )
    mid = Triangular(mid_name, q25, q50, q75)
    high = (
        Triangular(hi_name, q75, q75, q75)
        if q50 == q75
        else Triangular(hi_name, q50, q75, q75)
    )
    return FuzzyPartition(variable, (low, mid, high))


def build_crisp_partition(
    variable: str, categories: Sequence[str]
) -> FuzzyPartition:
    """One indicator label per category."""
    cats = list(categories)
    if not cats:
        raise ConfigurationError(f"no categories for variable {variable!r}")
    if len(set(cats)) != len(cats):
        raise ConfigurationError(
            f"duplicate categories for variable {variable!r}"
        )
    return FuzzyPartition(
        variable, tuple(CrispCategory(c, c) for c in cats)
    )


def crispify(partition: FuzzyPartition) -> FuzzyPartition:
    """0/1 interval partition cut where adjacent triangles cross.

    For the standard quantile triangles the crossings are the midpoints
    between consecutive apexes, so Low = [q0, (q0+q50)/2), Mid up to
    (q50+q100)/2, High closed on the right. A value exactly at a cut belongs
    to the interval on the right.
    """
    if not all(isinstance(lab, Triangular) for lab in partition.labels):
        raise UsageError(
            f"crispify needs a triangular partition, got "
            f"{partition.variable!r} with mixed or crisp labels"
        )
    labels: tuple[Triangular, ...] = partition.labels  # type: ignore[assignment]
    apexes = [lab.b for lab in labels]
    cuts = [(apexes[i] + apexes[i + 1]) / 2.0 for i in range(len(apexes) - 1)]
    lo_edge = labels[0].a
    hi_edge = labels[-1].c
    edges = [lo_edge, *cuts, hi_edge]
    intervals = []
    for i, lab in enumerate(labels):
        intervals.append(
            CrispInterval(
                lab.name,
                edges[i],
                edges[i + 1],
                closed_right=(i == len(labels) - 1),
            )
        )
    return FuzzyPartition(partition.variable, tuple(intervals))


def membership(partition: FuzzyPartition, label: str, value) -> float:
    """Module-level convenience wrapper for :meth:`FuzzyPartition.membership`."""
    return partition.membership(label, value)


def partition_to_dict(partition: FuzzyPartition) -> dict:
    labels = []
    for lab in partition.labels:
        if isinstance(lab, Triangular):
            labels.append(
                {"name": lab.name, "kind": "triangular",
                 "a": lab.a, "b": lab.b, "c": lab.c}
            )
        elif isinstance(lab, CrispCategory):
            labels.append(
                {"name": lab.name, "kind": "category", "value": lab.value}
            )
        else:
            labels.append(
                {"name": lab.name, "kind": "interval", "lo": lab.lo,
                 "hi": lab.hi, "closed_right": lab.closed_right}
            )
    return {"variable": partition.variable, "labels": labels}


def partition_from_dict(payload: dict) -> FuzzyPartition:
    try:
        variable = payload["variable"]
        raw_labels = payload["labels"]
    except (KeyError, TypeError) as exc:
        raise UsageError(f"malformed partition payload: {exc}") from None
    labels: list[LabelSpec] = []
    for raw in raw_labels:
        kind = raw.get("kind")
        if kind == "triangular":
            labels.append(
                Triangular(raw["name"], float(raw["a"]), float(raw["b"]),
                           float(raw["c"]))
            )
        elif kind == "category":
            labels.append(CrispCategory(raw["name"], str(raw["value"])))
        elif kind == "interval":
            labels.append(
                CrispInterval(raw["name"], float(raw["lo"]), float(raw["hi"]),
                              bool(raw["closed_right"]))
            )
        else:
            raise UsageError(f"unknown label kind {kind!r}")
    return FuzzyPartition(variable, tuple(labels))


def partitions_to_json(partitions: Sequence[FuzzyPartition]) -> str:
    return json.dumps([partition_to_dict(p) for p in partitions], indent=2)


def partitions_from_json(text: str) -> list[FuzzyPartition]:
    try:
        payload = json.loads(text)
    except json.JSONDecodeError as exc:
        raise UsageError(f"invalid partition JSON: {exc}") from None
    if not isinstance(payload, list):
        raise UsageError("partition JSON must be a list of partitions")
    return [partition_from_dict(entry) for entry in payload]
