import numpy as np
import pytest

from implimine import (
    ConfigurationError,
    CrispCategory,
    CrispInterval,
    FuzzyPartition,
    Triangular,
    UsageError,
    build_crisp_partition,
    build_numeric_partition,
    crispify,
    membership,
    partition_from_dict,
    partition_to_dict,
    partitions_from_json,
    partitions_to_json,
    triangular_membership,
)


def grid_0_100():
    return list(range(0, 101))


# ---------------------------------------------------------------------------
# triangular membership
# ---------------------------------------------------------------------------


def test_triangle_apex_and_midpoint():
    assert triangular_membership(0, 5, 10, 5) == 1.0
    assert triangular_membership(0, 5, 10, 2.5) == 0.5
    assert triangular_membership(0, 5, 10, 7.5) == 0.5


def test_triangle_left_shoulder_plateau():
    assert triangular_membership(0, 0, 10, -3) == 1.0
    assert triangular_membership(0, 0, 10, 0) == 1.0
    assert triangular_membership(0, 0, 10, 5) == 0.5


def test_triangle_right_shoulder_plateau():
    assert triangular_membership(0, 10, 10, 15) == 1.0
    assert triangular_membership(0, 10, 10, 5) == 0.5


def test_triangle_outside_support():
    assert triangular_membership(2, 5, 8, 1) == 0.0
    assert triangular_membership(2, 5, 8, 9) == 0.0


def test_triangle_spike():
    assert triangular_membership(5, 5, 5, 5) == 1.0
    assert triangular_membership(5, 5, 5, 5.1) == 0.0


def test_triangle_invalid_anchors():
    with pytest.raises(ConfigurationError):
        triangular_membership(5, 3, 10, 1)
    with pytest.raises(ConfigurationError):
        Triangular("bad", 0, 5, 4)


# ---------------------------------------------------------------------------
# quantile partitions
# ---------------------------------------------------------------------------


def test_numeric_partition_anchors_on_uniform_grid():
    # quartiles of 0..100 are 25 / 50 / 75
    part = build_numeric_partition("x", grid_0_100())
    low, mid, high = part.labels
    assert (low.a, low.b, low.c) == (25.0, 25.0, 50.0)
    assert (mid.a, mid.b, mid.c) == (25.0, 50.0, 75.0)
    assert (high.a, high.b, high.c) == (50.0, 75.0, 75.0)
    assert part.membership("High", 75) == 1.0
    assert part.membership("High", 100) == 1.0
    assert part.membership("High", 50) == 0.0
    assert part.membership("High", 62.5) == 0.5
    assert part.membership("Low", 10) == 1.0
    assert part.membership("Low", 37.5) == 0.5


def test_numeric_partition_median_has_full_mid_membership():
    rng = np.random.default_rng(5)
    values = rng.normal(10, 3, 501)
    part = build_numeric_partition("x", values)
    assert part.membership("Mid", float(np.median(values))) == 1.0


def test_numeric_partition_ruspini_sum():
    rng = np.random.default_rng(6)
    for _ in range(5):
        values = rng.uniform(-50, 50, 200)
        part = build_numeric_partition("x", values)
        probes = rng.uniform(values.min(), values.max(), 1000)
        sums = part.column_memberships(probes).sum(axis=1)
        assert np.max(np.abs(sums - 1.0)) <= 1e-9


def test_numeric_partition_input_order_invariant():
    values = [3.0, 1.0, 9.0, 4.0, 7.0, 2.0]
    a = build_numeric_partition("x", values)
    b = build_numeric_partition("x", sorted(values, reverse=True))
    assert a == b


def test_numeric_partition_label_names():
    part = build_numeric_partition("x", grid_0_100(), ["S", "M", "L"])
    assert part.label_names == ("S", "M", "L")
    with pytest.raises(ConfigurationError):
        build_numeric_partition("x", grid_0_100(), ["a", "b"])


def test_numeric_partition_degenerate_quartiles():
    # lower quartile pinned at the repeated minimum: Low collapses to a spike
    values = [0.0] * 40 + [1.0, 2.0, 3.0, 4.0, 5.0] * 4
    part = build_numeric_partition("x", values)
    low = part.labels[0]
    assert low.a == low.b == low.c == 0.0
    assert part.membership("Low", 0.0) == 1.0
    assert part.membership("Low", 0.5) == 0.0


def test_numeric_partition_errors():
    with pytest.raises(ConfigurationError):
        build_numeric_partition("x", [])
    with pytest.raises(ConfigurationError):
        build_numeric_partition("x", [4.2] * 10)
    # spread exists but not between the quartiles
    with pytest.raises(ConfigurationError):
        build_numeric_partition("x", [0.0] + [1.0] * 20 + [2.0])


# ---------------------------------------------------------------------------
# categorical partitions
# ---------------------------------------------------------------------------


def test_crisp_partition_indicator():
    part = build_crisp_partition("sex", ["M", "F", "I"])
    assert part.label_names == ("M", "F", "I")
    assert part.membership("M", "M") == 1.0
    assert part.membership("M", "F") == 0.0
    assert membership(part, "I", "I") == 1.0


def test_crisp_partition_single_category():
    part = build_crisp_partition("c", ["only"])
    assert part.membership("only", "only") == 1.0


def test_crisp_partition_errors():
    with pytest.raises(ConfigurationError):
        build_crisp_partition("c", [])
    with pytest.raises(ConfigurationError):
        build_crisp_partition("c", ["a", "a"])


# ---------------------------------------------------------------------------
# crispified partitions
# ---------------------------------------------------------------------------


def test_crispify_cut_positions():
    part = crispify(build_numeric_partition("x", grid_0_100()))
    low, mid, high = part.labels
    # cuts sit where adjacent triangles cross (membership 0.5)
    assert (low.lo, low.hi) == (25.0, 37.5)
    assert (mid.lo, mid.hi) == (37.5, 62.5)
    assert (high.lo, high.hi) == (62.5, 75.0)
    assert high.closed_right


def test_crispify_membership_is_partition():
    part = crispify(build_numeric_partition("x", grid_0_100()))
    for value in (-5, 0, 24.9, 37.5, 50, 62.4999, 62.5, 80, 100, 140):
        mus = part.column_memberships(np.array([value], dtype=float))[0]
        assert sorted(mus.tolist()) == [0.0, 0.0, 1.0]


def test_crispify_cut_goes_right():
    part = crispify(build_numeric_partition("x", grid_0_100()))
    assert part.membership("Mid", 37.5) == 1.0
    assert part.membership("Low", 37.5) == 0.0
    assert part.membership("High", 62.5) == 1.0


def test_crispify_requires_triangles():
    with pytest.raises(UsageError):
        crispify(build_crisp_partition("c", ["a", "b"]))


# ---------------------------------------------------------------------------
# membership evaluation and serialization
# ---------------------------------------------------------------------------


def test_membership_unknown_label_and_type_mismatch():
    part = build_numeric_partition("x", grid_0_100())
    with pytest.raises(UsageError):
        part.membership("Huge", 10)
    with pytest.raises(UsageError):
        part.membership("High", "ten")
    cat = build_crisp_partition("c", ["a"])
    with pytest.raises(UsageError):
        cat.membership("a", 3.0)


def test_membership_out_of_range_clamps_to_shoulders():
    part = build_numeric_partition("x", grid_0_100())
    assert part.membership("Low", -10) == 1.0
    assert part.membership("High", 500) == 1.0
    assert part.membership("Low", 100) == 0.0
    assert part.membership("Mid", -10) == 0.0


def test_duplicate_label_names_rejected():
    with pytest.raises(ConfigurationError):
        FuzzyPartition("x", (
            Triangular("A", 0, 0, 1), Triangular("A", 0, 1, 1),
        ))


def test_partition_json_round_trip():
    parts = [
        build_numeric_partition("x", grid_0_100()),
        build_crisp_partition("c", ["a", "b"]),
        crispify(build_numeric_partition("y", grid_0_100())),
    ]
    text = partitions_to_json(parts)
    again = partitions_from_json(text)
    assert again == parts
    payload = partition_to_dict(parts[0])
    assert payload["labels"][0] == {
        "name": "Low", "kind": "triangular", "a": 25.0, "b": 25.0, "c": 50.0,
    }
    assert partition_from_dict(payload) == parts[0]


def test_partition_json_errors():
    with pytest.raises(UsageError):
        partitions_from_json("{not json")
    with pytest.raises(UsageError):
        partitions_from_json('{"variable": "x"}')
    with pytest.raises(UsageError):
        partition_from_dict(
            {"variable": "x", "labels": [{"name": "a", "kind": "mystery"}]}
        )
