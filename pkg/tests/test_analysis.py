import numpy as np
import pytest

from conftest import SYNTH_SEED

from implimine import (
    ConfigurationError,
    Literal,
    MinerConfig,
    QualityReport,
    Rule,
    RuleSet,
    UsageError,
    gen_synthetic_ab,
    param_sweep,
    similarity,
    threshold_sweep,
)
from implimine.analysis import (
    param_sweep_to_csv,
    threshold_sweep_to_csv,
)
from implimine.cli import build_partitions, pair_from_shorthand

VOCAB = (("A", ("Low", "Mid", "High")), ("B", ("Low", "Mid", "High")),
         ("C", ("Low", "Mid", "High")))


def _rs(rule_specs, vocab=VOCAB):
    entries = tuple(
        (Rule(ant, con), QualityReport(0.5, 0.4, 0.9, 0.1))
        for ant, con in rule_specs
    )
    return RuleSet(entries, vocab, {})


RULE_A = ((Literal(0, 2),), Literal(1, 2))
RULE_B = ((Literal(1, 2),), Literal(0, 2))
RULE_C = ((Literal(0, 0), Literal(2, 1)), Literal(1, 0))


# ---------------------------------------------------------------------------
# similarity
# ---------------------------------------------------------------------------


def test_similarity_identical_sets():
    rs = _rs([RULE_A, RULE_B, RULE_C])
    result = similarity(rs, _rs([RULE_A, RULE_B, RULE_C]))
    assert result.percent == 100.0
    assert result.intersection_size == result.union_size == 3


def test_similarity_disjoint_sets():
    result = similarity(_rs([RULE_A]), _rs([RULE_B]))
    assert result.percent == 0.0


def test_similarity_jaccard_arithmetic():
    result = similarity(_rs([RULE_A, RULE_B]), _rs([RULE_A, RULE_C]))
    assert result.intersection_size == 1
    assert result.union_size == 3
    assert result.percent == pytest.approx(100.0 / 3.0, abs=1e-12)


def test_similarity_symmetric_and_quality_blind():
    rs1 = _rs([RULE_A, RULE_C])
    entries = tuple(
        (rule, QualityReport(0.1, 0.1, 0.1, 0.0)) for rule, _ in rs1.rules
    )
    rs2 = RuleSet(tuple(reversed(entries)), VOCAB, {})
    assert similarity(rs1, rs2).percent == 100.0
    assert similarity(rs2, rs1).percent == 100.0


def test_similarity_empty_union_counts_as_identical():
    assert similarity(_rs([]), _rs([])).percent == 100.0


def test_similarity_vocabulary_mismatch():
    other_vocab = (("A", ("Low", "Mid", "Huge")),) + VOCAB[1:]
    with pytest.raises(UsageError):
        similarity(_rs([RULE_A]), _rs([RULE_A], vocab=other_vocab))


# ---------------------------------------------------------------------------
# synthetic generator
# ---------------------------------------------------------------------------


def test_synthetic_shape_and_construction():
    ds = gen_synthetic_ab(1000, SYNTH_SEED)
    assert ds.row_count == 1000
    a = ds.column("A").values
    b = ds.column("B").values
    assert np.all((a >= 0) & (a <= 100))
    assert np.all(b[a > 70] >= 70.0)
    frac = float((a > 70).mean())
    assert 0.25 <= frac <= 0.35
    assert ds.provenance["generator"] == "numpy-pcg64"


def test_synthetic_bit_reproducible():
    first = gen_synthetic_ab(200, 11)
    second = gen_synthetic_ab(200, 11)
    np.testing.assert_array_equal(
        first.column("B").values, second.column("B").values
    )
    assert first.fingerprint == second.fingerprint
    assert gen_synthetic_ab(200, 12).fingerprint != first.fingerprint


def test_synthetic_rejects_empty():
    with pytest.raises(ConfigurationError):
        gen_synthetic_ab(0, 1)


# ---------------------------------------------------------------------------
# parameter sweep
# ---------------------------------------------------------------------------


@pytest.fixture(scope="module")
def synth():
    ds = gen_synthetic_ab(1000, SYNTH_SEED)
    return ds, build_partitions(ds)


def test_param_sweep_symmetric_at_p_one(synth):
    ds, parts = synth
    rows = param_sweep("lk_ip", [1.0], ds, parts)
    assert rows[0].supp_ab == pytest.approx(rows[0].supp_ba, abs=1e-12)


def test_param_sweep_directional_divergence(synth):
    ds, parts = synth
    lo, hi = param_sweep("lk_ip", [0.01, 10.0], ds, parts)
    assert lo.param_value == 0.01 and hi.param_value == 10.0
    assert lo.supp_ab > lo.supp_ba
    assert lo.conf_ab > lo.conf_ba
    assert hi.conf_ba > hi.conf_ab


def test_param_sweep_ss_family_nearly_invariant(synth):
    ds, parts = synth
    rows = param_sweep("ss_lambda", [-0.5, -1.0, -10.0], ds, parts)
    for row in rows:
        assert abs(row.supp_ab - row.supp_ba) < 0.01
        assert row.conf_ab >= row.conf_ba
        assert abs(row.conf_ab - row.conf_ba) < 0.02


def test_param_sweep_rejects_bad_parameters(synth):
    ds, parts = synth
    with pytest.raises(ConfigurationError):
        param_sweep("ss_lambda", [0.5], ds, parts)
    with pytest.raises(ConfigurationError):
        param_sweep("lk_ip", [-1.0], ds, parts)


def test_param_sweep_needs_high_labels():
    ds = gen_synthetic_ab(50, 3)
    parts = build_partitions(ds)
    renamed = [
        type(p)(p.variable + "_x", p.labels) for p in parts
    ]
    from implimine.data import Column, ColumnKind, Dataset

    other = Dataset(
        columns=[
            Column("A_x", ColumnKind.NUMERIC, ds.column("A").values),
            Column("B_x", ColumnKind.NUMERIC, ds.column("B").values),
        ],
        row_count=ds.row_count,
        fingerprint="x",
    )
    with pytest.raises(UsageError):
        param_sweep("lk_ip", [1.0], other, renamed)


def test_param_sweep_csv_header(synth):
    ds, parts = synth
    rows = param_sweep("lk_ip", [0.5, 2.0], ds, parts)
    text = param_sweep_to_csv(rows)
    lines = text.splitlines()
    assert lines[0] == "param,supp_ab,conf_ab,supp_ba,conf_ba"
    assert len(lines) == 3
    assert lines[1].startswith("0.5,")


# ---------------------------------------------------------------------------
# threshold sweep
# ---------------------------------------------------------------------------


def test_threshold_sweep_monotone_rule_count(synth):
    ds, parts = synth
    pair = pair_from_shorthand("tlk-ip")
    rows = threshold_sweep(
        ds, parts, pair, [0.1, 0.2, 0.3, 0.45], min_conf=0.8, min_supp=0.3
    )
    counts = [row.n_rules for row in rows]
    assert counts == sorted(counts, reverse=True)
    assert [row.min_cov for row in rows] == [0.1, 0.2, 0.3, 0.45]


def test_threshold_sweep_empty_convention(synth):
    ds, parts = synth
    pair = pair_from_shorthand("tlk-ip")
    rows = threshold_sweep(
        ds, parts, pair, [0.99], min_conf=0.8, min_supp=0.3
    )
    assert rows[0].n_rules == 0
    assert rows[0].mean_conf_top20 == 0.0
    assert rows[0].mean_supp_top20 == 0.0


def test_threshold_sweep_rejects_nonpositive(synth):
    ds, parts = synth
    with pytest.raises(ConfigurationError):
        threshold_sweep(
            ds, parts, pair_from_shorthand("tlk-ip"), [0.0, 0.3],
            min_conf=0.8, min_supp=0.3,
        )


def test_threshold_sweep_csv_header(synth):
    ds, parts = synth
    rows = threshold_sweep(
        ds, parts, pair_from_shorthand("tm-igd"), [0.2], min_conf=0.5,
        min_supp=0.1,
    )
    lines = threshold_sweep_to_csv(rows).splitlines()
    assert lines[0] == "min_cov,n_rules,mean_conf_top20,mean_supp_top20"
    assert len(lines) == 2


# ---------------------------------------------------------------------------
# model-comparison composition (pairwise similarity matrix)
# ---------------------------------------------------------------------------


def test_pairwise_similarity_matrix_composition(iris_path):
    """Mining one dataset under several operator choices and comparing the
    rule sets pairwise: the matrix is symmetric with an identity diagonal,
    and the directional pair stands apart from the conjunctive ones."""
    from implimine import MinerConfig, load_csv, mine, build_partitions

    ds = load_csv(iris_path)
    fuzzy_parts = build_partitions(ds)
    crisp_parts = build_partitions(ds, mode="crisp")
    models = {
        "tp-iy": (fuzzy_parts, pair_from_shorthand("tp-iy")),
        "tm-igd": (fuzzy_parts, pair_from_shorthand("tm-igd")),
        "tlk-ip": (fuzzy_parts, pair_from_shorthand("tlk-ip")),
        "crisp": (crisp_parts, pair_from_shorthand("crisp")),
    }
    rulesets = {
        name: mine(ds, parts, MinerConfig(pair=pair))
        for name, (parts, pair) in models.items()
    }
    names = list(models)
    matrix = {
        (a, b): similarity(rulesets[a], rulesets[b]).percent
        for a in names for b in names
    }
    for a in names:
        assert matrix[(a, a)] == 100.0
        for b in names:
            assert matrix[(a, b)] == pytest.approx(matrix[(b, a)])
    conjunctive_overlap = matrix[("tp-iy", "tm-igd")]
    directional_overlap = min(
        matrix[("tlk-ip", "tp-iy")], matrix[("tlk-ip", "tm-igd")]
    )
    assert conjunctive_overlap > directional_overlap
