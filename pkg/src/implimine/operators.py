"""Parametric t-norms, fuzzy implication functions, and their certification.

A rule's conjunction is modeled by a t-norm T and its conditional by a fuzzy
implication function I; inference combines them through the generalized modus
ponens GMP(x, y) = T(x, I(x, y)). Two pair-level properties make a pair
(T, I) behave well for rule mining:

* TC  (t-conditionality): T(x, I(x, y)) <= y, so the inferred truth never
  exceeds the consequent's.
* MTC (monotone GMP): T(x~, I(x~, y)) <= T(x, I(x, y)) whenever x~ <= x, so
  refining a rule can only lower its support.

Neither property is proved here; it is certified numerically over a
:class:`~implimine.partitions.GridSpec` together with the classical
implication axioms (I1: antitone in the first argument, I2: isotone in the
second, I3: the classical corners), the left neutrality principle NP
(I(1, y) = y) and the ordering property OP (I(x, y) = 1 iff x <= y).

All evaluators accept scalars or numpy arrays and are pure functions of
immutable specs, safe for unsynchronized concurrent use. Numeric guards
at 0 and 1 follow the limit behavior of each family, so the neutral element
and annihilator identities are exact in floating point.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .errors import ConfigurationError, UsageError
from .partitions import DEFAULT_GRID, GridSpec

# Verdict tolerance for property certificates.
PROPERTY_TOLERANCE = 1e-9

# Closed-form identities of the registry pairs round-trip well below this.
IDENTITY_TOLERANCE = 1e-12

DEFAULT_SS_LAMBDA = -10.0
DEFAULT_IP_P = 0.01


class TNormKind(str, enum.Enum):
    MINIMUM = "minimum"
    PRODUCT = "product"
    LUKASIEWICZ = "lukasiewicz"
    SCHWEIZER_SKLAR = "schweizer_sklar"


class ImplicationKind(str, enum.Enum):
    LUKASIEWICZ = "lukasiewicz"
    GOGUEN = "goguen"
    GODEL = "godel"
    YAGER_IY = "yager_iy"
    SCHWEIZER_SKLAR_K = "schweizer_sklar_k"
    IP = "ip"


@dataclass(frozen=True)
class TNormSpec:
    """A t-norm family member. ``lam`` is required (and < 0) exactly for the
    Schweizer-Sklar kind."""

    kind: TNormKind
    lam: float | None = None

    def __post_init__(self) -> None:
        if self.kind is TNormKind.SCHWEIZER_SKLAR:
            if self.lam is None:
                raise ConfigurationError(
                    "schweizer_sklar t-norm requires lambda"
                )
            if not self.lam < 0:
                raise ConfigurationError(
                    f"schweizer_sklar t-norm requires lambda < 0, "
                    f"got {self.lam}"
                )
        elif self.lam is not None:
            raise ConfigurationError(
                f"{self.kind.value} t-norm takes no lambda"
            )

    def to_dict(self) -> dict:
        out: dict = {"kind": self.kind.value}
        if self.lam is not None:
            out["lambda"] = self.lam
        return out

    @classmethod
    def from_dict(cls, payload: dict) -> "TNormSpec":
        try:
            kind = TNormKind(payload["kind"])
        except (KeyError, ValueError, TypeError):
            raise ConfigurationError(
                f"unknown t-norm spec {payload!r}"
            ) from None
        lam = payload.get("lambda")
        return cls(kind, None if lam is None else float(lam))


@dataclass(frozen=True)
class ImplicationSpec:
    """An implication family member. ``lam`` (< 0) belongs to the
    Schweizer-Sklar k-generated kind, ``p`` (> 0) to the reinforcement
    implication ``1 - x + x*y**p``."""

    kind: ImplicationKind
    lam: float | None = None
    p: float | None = None

    def __post_init__(self) -> None:
        if self.kind is ImplicationKind.SCHWEIZER_SKLAR_K:
            if self.lam is None:
                raise ConfigurationError(
                    "schweizer_sklar_k implication requires lambda"
                )
            if not self.lam < 0:
                raise ConfigurationError(
                    f"schweizer_sklar_k implication requires lambda < 0, "
                    f"got {self.lam}"
                )
        elif self.lam is not None:
            raise ConfigurationError(
                f"{self.kind.value} implication takes no lambda"
            )
        if self.kind is ImplicationKind.IP:
            if self.p is None:
                raise ConfigurationError("ip implication requires p")
            if not self.p > 0:
                raise ConfigurationError(
                    f"ip implication requires p > 0, got {self.p}"
                )
        elif self.p is not None:
            raise ConfigurationError(
                f"{self.kind.value} implication takes no p"
            )

    def to_dict(self) -> dict:
        out: dict = {"kind": self.kind.value}
        if self.lam is not None:
            out["lambda"] = self.lam
        if self.p is not None:
            out["p"] = self.p
        return out

    @classmethod
    def from_dict(cls, payload: dict) -> "ImplicationSpec":
        try:
            kind = ImplicationKind(payload["kind"])
        except (KeyError, ValueError, TypeError):
            raise ConfigurationError(
                f"unknown implication spec {payload!r}"
            ) from None
        lam = payload.get("lambda")
        p = payload.get("p")
        return cls(
            kind,
            None if lam is None else float(lam),
            None if p is None else float(p),
        )


@dataclass(frozen=True)
class OperatorPair:
    """A (t-norm, implication) pair; certification happens on demand through
    :func:`certify` and is cached per (pair, grid)."""

    tnorm: TNormSpec
    implication: ImplicationSpec

    def to_dict(self) -> dict:
        return {
            "tnorm": self.tnorm.to_dict(),
            "implication": self.implication.to_dict(),
        }

    @classmethod
    def from_dict(cls, payload: dict) -> "OperatorPair":
        try:
            return cls(
                TNormSpec.from_dict(payload["tnorm"]),
                ImplicationSpec.from_dict(payload["implication"]),
            )
        except (KeyError, TypeError):
            raise ConfigurationError(
                f"operator pair payload must carry 'tnorm' and "
                f"'implication': {payload!r}"
            ) from None

    def describe(self) -> str:
        t = self.tnorm.to_dict()
        i = self.implication.to_dict()
        t_extra = f"(lambda={t['lambda']})" if "lambda" in t else ""
        i_extra = ""
        if "lambda" in i:
            i_extra = f"(lambda={i['lambda']})"
        if "p" in i:
            i_extra = f"(p={i['p']})"
        return f"({t['kind']}{t_extra}, {i['kind']}{i_extra})"


@dataclass(frozen=True)
class PropertyReport:
    """Outcome of one numeric property check.

    ``holds`` is true exactly when ``max_violation`` does not exceed
    :data:`PROPERTY_TOLERANCE`. ``witness`` is present only on failure and
    re-evaluates to a violation above tolerance; its layout depends on the
    property (pairs (x, y) for TC/OP/I3, (y,) for NP, triples for I1/I2, and
    (x, x~, y) for MTC, lexicographically smallest among the worst).
    """

    property: str
    holds: bool
    max_violation: float
    witness: tuple[float, ...] | None = None

    def to_dict(self) -> dict:
        out: dict = {
            "property": self.property,
            "holds": self.holds,
            "max_violation": self.max_violation,
        }
        if self.witness is not None:
            out["witness"] = list(self.witness)
        return out


def _as_float_arrays(x, y) -> tuple[np.ndarray, np.ndarray, bool]:
    scalar = np.ndim(x) == 0 and np.ndim(y) == 0
    return np.asarray(x, dtype=float), np.asarray(y, dtype=float), scalar


def _finish(out: np.ndarray, scalar: bool):
    return float(out) if scalar else out


def tnorm(spec: TNormSpec, x, y):
    """T(x, y). Inputs in [0,1]; broadcasts over arrays."""
    xv, yv, scalar = _as_float_arrays(x, y)
    kind = spec.kind
    if kind is TNormKind.MINIMUM:
        out = np.minimum(xv, yv)
    elif kind is TNormKind.PRODUCT:
        out = xv * yv
    elif kind is TNormKind.LUKASIEWICZ:
        core = np.maximum(xv + yv - 1.0, 0.0)
        # Exact neutrality: 1 + y - 1 need not round back to y.
        out = np.where(xv == 1.0, yv, np.where(yv == 1.0, xv, core))
    else:
        lam = spec.lam
        with np.errstate(divide="ignore", over="ignore", invalid="ignore"):
            core = (xv**lam + yv**lam - 1.0) ** (1.0 / lam)
        # x**lam diverges at 0 for lam < 0; the limit is 0.
        out = np.where(
            (xv == 0.0) | (yv == 0.0),
            0.0,
            np.where(xv == 1.0, yv, np.where(yv == 1.0, xv, core)),
        )
    return _finish(out, scalar)


def tnorm_nary(spec: TNormSpec, values):
    """Left fold of the binary t-norm over a non-empty sequence."""
    seq = list(values)
    if not seq:
        raise UsageError("tnorm_nary needs at least one value")
    acc = seq[0]
    for v in seq[1:]:
        acc = tnorm(spec, acc, v)
    if all(np.ndim(v) == 0 for v in seq):
        return float(acc)
    return acc


def _k_ss(lam: float, y: np.ndarray) -> np.ndarray:
    """Multiplicative generator k(y) = exp((y**lam - 1)/lam); k(0) = 0."""
    with np.errstate(divide="ignore", over="ignore", invalid="ignore"):
        return np.exp((y**lam - 1.0) / lam)


def implication(spec: ImplicationSpec, x, y):
    """I(x, y). Inputs in [0,1]; broadcasts over arrays; I(0, y) = 1 for
    every kind."""
    xv, yv, scalar = _as_float_arrays(x, y)
    kind = spec.kind
    if kind is ImplicationKind.LUKASIEWICZ:
        out = np.minimum(1.0, 1.0 - xv + yv)
    elif kind is ImplicationKind.GOGUEN:
        with np.errstate(divide="ignore", invalid="ignore"):
            ratio = yv / xv
        out = np.where(xv <= yv, 1.0, ratio)
    elif kind is ImplicationKind.GODEL:
        out = np.where(xv <= yv, 1.0, yv)
    elif kind is ImplicationKind.YAGER_IY:
        out = np.where((xv == 0.0) | (yv == 1.0), 1.0, yv)
    elif kind is ImplicationKind.SCHWEIZER_SKLAR_K:
        lam = spec.lam
        with np.errstate(divide="ignore", over="ignore", invalid="ignore"):
            ypl = yv**lam
            threshold = np.exp((ypl - 1.0) / lam)
            alt = (ypl - lam * np.log(xv)) ** (1.0 / lam)
        out = np.where(xv <= threshold, 1.0, alt)
    else:
        p = spec.p
        out = 1.0 - xv + xv * yv**p
    return _finish(out, scalar)


def gmp(pair: OperatorPair, x, y):
    """Generalized modus ponens T(x, I(x, y))."""
    return tnorm(pair.tnorm, x, implication(pair.implication, x, y))


def adequate_pairs() -> tuple[OperatorPair, ...]:
    """The four registry pairs certified TC + MTC, with default parameters
    lambda = -10 and p = 0.01."""
    return (
        OperatorPair(
            TNormSpec(TNormKind.PRODUCT),
            ImplicationSpec(ImplicationKind.YAGER_IY),
        ),
        OperatorPair(
            TNormSpec(TNormKind.LUKASIEWICZ),
            ImplicationSpec(ImplicationKind.LUKASIEWICZ),
        ),
        OperatorPair(
            TNormSpec(TNormKind.SCHWEIZER_SKLAR, lam=DEFAULT_SS_LAMBDA),
            ImplicationSpec(
                ImplicationKind.SCHWEIZER_SKLAR_K, lam=DEFAULT_SS_LAMBDA
            ),
        ),
        OperatorPair(
            TNormSpec(TNormKind.LUKASIEWICZ),
            ImplicationSpec(ImplicationKind.IP, p=DEFAULT_IP_P),
        ),
    )


# ---------------------------------------------------------------------------
# Property certification
# ---------------------------------------------------------------------------


def _report(prop: str, violation: float, witness) -> PropertyReport:
    holds = violation <= PROPERTY_TOLERANCE
    return PropertyReport(
        prop,
        holds,
        float(max(violation, 0.0)),
        None if holds else witness,
    )


def _impl_matrix(spec: ImplicationSpec, g: np.ndarray) -> np.ndarray:
    return implication(spec, g[:, None], g[None, :])


def _gmp_matrix(pair: OperatorPair, g: np.ndarray) -> np.ndarray:
    return gmp(pair, g[:, None], g[None, :])


def _check_i1(M: np.ndarray, g: np.ndarray) -> PropertyReport:
    # Antitone first argument: columns must be non-increasing as x grows.
    prefix_min = np.minimum.accumulate(M, axis=0)
    v = float((M - prefix_min).max())
    if v <= PROPERTY_TOLERANCE:
        return _report("I1", v, None)
    witness = None
    for i1 in range(len(g)):
        diffs = M[i1:, :] - M[i1, :]
        hits = np.argwhere(diffs == v)
        if hits.size:
            r, j = hits[0]
            witness = (float(g[i1]), float(g[i1 + r]), float(g[j]))
            break
    return _report("I1", v, witness)


def _check_i2(M: np.ndarray, g: np.ndarray) -> PropertyReport:
    # Isotone second argument: rows must be non-decreasing as y grows.
    prefix_max = np.maximum.accumulate(M, axis=1)
    v = float((prefix_max - M).max())
    if v <= PROPERTY_TOLERANCE:
        return _report("I2", v, None)
    witness = None
    for i in range(len(g)):
        row = M[i]
        for j1 in range(len(g)):
            hits = np.flatnonzero(row[j1] - row[j1:] == v)
            if hits.size:
                witness = (
                    float(g[i]),
                    float(g[j1]),
                    float(g[j1 + hits[0]]),
                )
                break
        if witness is not None:
            break
    return _report("I2", v, witness)


def _check_i3(M: np.ndarray, g: np.ndarray) -> PropertyReport:
    corners = (
        (0.0, 0.0, abs(M[0, 0] - 1.0)),
        (1.0, 1.0, abs(M[-1, -1] - 1.0)),
        (1.0, 0.0, abs(M[-1, 0])),
    )
    x, y, v = max(corners, key=lambda c: c[2])
    return _report("I3", float(v), (x, y))


def _check_np(M: np.ndarray, g: np.ndarray) -> PropertyReport:
    diffs = np.abs(M[-1, :] - g)
    v = float(diffs.max())
    j = int(np.flatnonzero(diffs == v)[0])
    return _report("NP", v, (float(g[j]),))


def _check_op(M: np.ndarray, g: np.ndarray) -> PropertyReport:
    le = g[:, None] <= g[None, :]
    # x <= y must force I = 1; on x > y a value within 2*tol of 1 counts as
    # a violation of the "only if" direction.
    viol = np.where(
        le, 1.0 - M, np.maximum(M - 1.0 + 2.0 * PROPERTY_TOLERANCE, 0.0)
    )
    v = float(viol.max())
    if v <= PROPERTY_TOLERANCE:
        return _report("OP", v, None)
    i, j = np.argwhere(viol == v)[0]
    return _report("OP", v, (float(g[i]), float(g[j])))


def check_axioms(
    spec: ImplicationSpec, grid: GridSpec = DEFAULT_GRID
) -> list[PropertyReport]:
    """Certify I1, I2, I3, NP and OP over the grid.

    Reports come back in that order; each carries the largest violation found
    and, on failure, a deterministic witness.
    """
    g = grid.points()
    M = _impl_matrix(spec, g)
    return [
        _check_i1(M, g),
        _check_i2(M, g),
        _check_i3(M, g),
        _check_np(M, g),
        _check_op(M, g),
    ]


def check_tc(
    pair: OperatorPair, grid: GridSpec = DEFAULT_GRID
) -> PropertyReport:
    """Certify T(x, I(x, y)) <= y over all grid pairs."""
    g = grid.points()
    G = _gmp_matrix(pair, g)
    diffs = G - g[None, :]
    v = float(max(diffs.max(), 0.0))
    if v <= PROPERTY_TOLERANCE:
        return _report("TC", v, None)
    i, j = np.argwhere(diffs == v)[0]
    return _report("TC", v, (float(g[i]), float(g[j])))


def check_mtc(
    pair: OperatorPair, grid: GridSpec = DEFAULT_GRID
) -> PropertyReport:
    """Certify that GMP is monotone in the antecedent truth value.

    The violation of a triple (x, x~, y) with x~ <= x is
    GMP(x~, y) - GMP(x, y); the reported witness is the lexicographically
    smallest (x, x~, y) among those attaining the maximal violation.
    """
    g = grid.points()
    G = _gmp_matrix(pair, g)
    prefix_max = np.maximum.accumulate(G, axis=0)
    v = float((prefix_max - G).max())
    if v <= PROPERTY_TOLERANCE:
        return _report("MTC", v, None)
    witness = None
    for i in range(len(g)):
        diffs = G[: i + 1, :] - G[i, :]
        hits = np.argwhere(diffs == v)
        if hits.size:
            r, j = hits[0]
            witness = (float(g[i]), float(g[r]), float(g[j]))
            break
    return _report("MTC", v, witness)


@lru_cache(maxsize=128)
def certify(
    pair: OperatorPair, grid: GridSpec = DEFAULT_GRID
) -> tuple[PropertyReport, PropertyReport]:
    """Cached (TC, MTC) certification of a pair."""
    return check_tc(pair, grid), check_mtc(pair, grid)


def is_adequate(pair: OperatorPair, grid: GridSpec = DEFAULT_GRID) -> bool:
    """True when the pair passes both TC and MTC on the grid."""
    tc, mtc = certify(pair, grid)
    return tc.holds and mtc.holds
