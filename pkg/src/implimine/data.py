"""CSV ingestion, column typing, and the precomputed membership matrix.

A column is numeric when every non-empty field parses as a finite real
(overridable per column); rows with any empty field are dropped and counted,
never imputed. ``fuzzify`` applies one partition per column and materializes
a dense row-major matrix of memberships whose columns are the literals, in
(column order) x (label order); that matrix is the miner's sole numeric
input. Datasets carry a 64-bit FNV-1a fingerprint of their raw CSV bytes so
run provenance pins the exact input.
"""

from __future__ import annotations

import csv
import enum
import io
import logging
import math
from dataclasses import dataclass, field
from pathlib import Path
from typing import Mapping, NamedTuple, Sequence

import numpy as np

from .errors import IngestionError, UsageError
from .partitions import (
    FuzzyPartition,
    Triangular,
    build_crisp_partition,
    build_numeric_partition,
    crispify,
)

log = logging.getLogger(__name__)

_FNV_OFFSET = 0xCBF29CE484222325
_FNV_PRIME = 0x100000001B3


def fnv1a64(data: bytes) -> str:
    """Hex-encoded 64-bit FNV-1a hash."""
    h = _FNV_OFFSET
    for b in data:
        h ^= b
        h = (h * _FNV_PRIME) & 0xFFFFFFFFFFFFFFFF
    return f"{h:016x}"


class ColumnKind(str, enum.Enum):
    NUMERIC = "numeric"
    CATEGORICAL = "categorical"


@dataclass
class Column:
    name: str
    kind: ColumnKind
    values: np.ndarray  # float64 for numeric, object (str) for categorical


@dataclass
class Dataset:
    """Immutable-by-convention tabular data with a provenance fingerprint."""

    columns: list[Column]
    row_count: int
    fingerprint: str
    provenance: dict = field(default_factory=dict)
    dropped_rows: int = 0

    @property
    def column_names(self) -> list[str]:
        return [c.name for c in self.columns]

    def column(self, name: str) -> Column:
        for c in self.columns:
            if c.name == name:
                return c
        raise UsageError(f"unknown column {name!r}")


class Literal(NamedTuple):
    """A (feature, linguistic label) atom, as indices into the bound
    dataset/partition list."""

    column: int
    label: int


@dataclass
class MembershipMatrix:
    """Dense membership cache: rows are examples, columns are literals."""

    literals: tuple[Literal, ...]
    mu: np.ndarray
    vocabulary: tuple[tuple[str, tuple[str, ...]], ...]
    fingerprint: str = ""

    @property
    def row_count(self) -> int:
        return int(self.mu.shape[0])

    def index_of(self, literal: Literal) -> int:
        try:
            return self.literals.index(literal)
        except ValueError:
            raise UsageError(f"literal {literal} not in matrix") from None

    def literal_name(self, literal: Literal) -> str:
        variable, labels = self.vocabulary[literal.column]
        return f"{variable}={labels[literal.label]}"

    def literal_for(self, variable: str, label: str) -> Literal:
        for ci, (var, labels) in enumerate(self.vocabulary):
            if var == variable:
                if label not in labels:
                    raise UsageError(
                        f"variable {variable!r} has no label {label!r}"
                    )
                return Literal(ci, labels.index(label))
        raise UsageError(f"unknown variable {variable!r}")


def _parse_real(text: str) -> float | None:
    try:
        value = float(text)
    except ValueError:
        return None
    return value if math.isfinite(value) else None


def load_csv(
    path: str | Path,
    overrides: Mapping[str, ColumnKind | str] | None = None,
) -> Dataset:
    """Load a headered, comma-separated file into a typed Dataset.

    Rows containing any empty field are dropped (counted, logged). Column
    kinds are inferred from the non-empty fields unless overridden.
    """
    path = Path(path)
    try:
        raw = path.read_bytes()
    except OSError as exc:
        raise IngestionError(f"cannot read {path}: {exc}") from None
    try:
        text = raw.decode("utf-8")
    except UnicodeDecodeError as exc:
        raise IngestionError(f"{path} is not valid UTF-8: {exc}") from None

    reader = csv.reader(io.StringIO(text))
    rows = list(reader)
    if not rows:
        raise IngestionError(f"{path} is empty (no header row)")
    header = rows[0]
    if len(set(header)) != len(header):
        raise IngestionError(f"{path} has duplicate column names")
    body = rows[1:]
    for lineno, row in enumerate(body, start=2):
        if len(row) != len(header):
            raise IngestionError(
                f"{path}:{lineno} has {len(row)} fields, expected "
                f"{len(header)}"
            )

    kept = [row for row in body if all(f != "" for f in row)]
    dropped = len(body) - len(kept)
    if dropped:
        log.warning(
            "%s: dropped %d row(s) with empty fields", path, dropped
        )
    if not kept:
        raise IngestionError(f"{path} has no complete data rows")

    overrides = dict(overrides or {})
    for name in overrides:
        if name not in header:
            raise IngestionError(
                f"schema override for unknown column {name!r}"
            )

    columns: list[Column] = []
    for ci, name in enumerate(header):
        forced = overrides.get(name)
        if forced is not None:
            kind = ColumnKind(forced)
        else:
            non_empty = [row[ci] for row in body if row[ci] != ""]
            numeric = bool(non_empty) and all(
                _parse_real(f) is not None for f in non_empty
            )
            kind = ColumnKind.NUMERIC if numeric else ColumnKind.CATEGORICAL
        if kind is ColumnKind.NUMERIC:
            parsed = [_parse_real(row[ci]) for row in kept]
            if any(v is None for v in parsed):
                raise IngestionError(
                    f"column {name!r} forced numeric but holds "
                    f"non-numeric fields"
                )
            values = np.array(parsed, dtype=float)
        else:
            values = np.array([row[ci] for row in kept], dtype=object)
        columns.append(Column(name, kind, values))

    return Dataset(
        columns=columns,
        row_count=len(kept),
        fingerprint=fnv1a64(raw),
        provenance={"source": str(path), "dropped_rows": dropped},
        dropped_rows=dropped,
    )


def dataset_to_csv_bytes(dataset: Dataset) -> bytes:
    """Canonical CSV serialization; numeric cells use shortest round-trip
    floats so reloading reproduces the exact values."""
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(dataset.column_names)
    for r in range(dataset.row_count):
        row = []
        for col in dataset.columns:
            v = col.values[r]
            row.append(repr(float(v)) if col.kind is ColumnKind.NUMERIC
                       else str(v))
        writer.writerow(row)
    return buf.getvalue().encode("utf-8")


def fuzzify(
    dataset: Dataset, partitions: Sequence[FuzzyPartition]
) -> MembershipMatrix:
    """Materialize memberships of every row under every literal.

    One partition per dataset column, names matching in order; literal
    ordering is (column order) x (label order).
    """
    if len(partitions) != len(dataset.columns):
        raise UsageError(
            f"{len(partitions)} partitions for {len(dataset.columns)} columns"
        )
    for col, part in zip(dataset.columns, partitions):
        if col.name != part.variable:
            raise UsageError(
                f"partition {part.variable!r} does not match column "
                f"{col.name!r}"
            )
        if part.is_categorical != (col.kind is ColumnKind.CATEGORICAL):
            raise UsageError(
                f"partition kind mismatch for column {col.name!r}"
            )

    literals: list[Literal] = []
    blocks: list[np.ndarray] = []
    vocabulary: list[tuple[str, tuple[str, ...]]] = []
    for ci, (col, part) in enumerate(zip(dataset.columns, partitions)):
        block = part.column_memberships(col.values)
        blocks.append(block)
        vocabulary.append((part.variable, part.label_names))
        literals.extend(Literal(ci, li) for li in range(block.shape[1]))
    mu = (
        np.column_stack(blocks)
        if blocks
        else np.zeros((dataset.row_count, 0))
    )
    return MembershipMatrix(
        literals=tuple(literals),
        mu=mu,
        vocabulary=tuple(vocabulary),
        fingerprint=dataset.fingerprint,
    )


def export_mu_csv(matrix: MembershipMatrix, path: str | Path) -> None:
    """Debug dump of the membership matrix, one column per literal."""
    with open(path, "w", newline="") as fh:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow([matrix.literal_name(l) for l in matrix.literals])
        for row in matrix.mu:
            writer.writerow([repr(float(v)) for v in row])


def build_partitions(
    dataset: Dataset,
    custom: Sequence[FuzzyPartition] | None = None,
    mode: str = "fuzzy",
) -> list[FuzzyPartition]:
    """Default partitions for a dataset, in column order.

    Numeric columns get the quartile triangles, categorical ones indicator
    labels over their sorted categories. ``custom`` entries override per
    variable; crisp mode swaps triangles for their interval counterparts.
    """
    overrides = {p.variable: p for p in (custom or [])}
    unknown = set(overrides) - set(dataset.column_names)
    if unknown:
        raise UsageError(
            f"custom partitions for unknown columns: {sorted(unknown)}"
        )
    out = []
    for col in dataset.columns:
        part = overrides.get(col.name)
        if part is None:
            if col.kind is ColumnKind.NUMERIC:
                part = build_numeric_partition(col.name, col.values)
            else:
                part = build_crisp_partition(
                    col.name, sorted(set(col.values))
                )
        if mode == "crisp" and all(
            isinstance(lab, Triangular) for lab in part.labels
        ):
            part = crispify(part)
        out.append(part)
    return out
