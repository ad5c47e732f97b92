import json

import numpy as np
import pytest
from hypothesis import given, strategies as st

from conftest import independent_bits, random_distribution
from entrogeo import (
    JointDistribution,
    PreconditionError,
    ValidationError,
    distribution_from_csv,
    parse_samples_csv,
    product,
    validate_subset,
)


def test_flat_order_is_last_variable_fastest():
    d = JointDistribution.from_flat([("A", 2), ("B", 3)], [0.1, 0.2, 0.3, 0.15, 0.15, 0.1])
    assert d.tensor[0, 1] == 0.2
    assert d.tensor[1, 0] == 0.15
    assert d.probabilities.tolist() == [0.1, 0.2, 0.3, 0.15, 0.15, 0.1]


def test_tensor_is_read_only():
    d = independent_bits(2)
    with pytest.raises(ValueError):
        d.tensor[0, 0] = 1.0


@pytest.mark.parametrize(
    "variables,probs,code",
    [
        ([("A", 2)], [0.5, 0.5, 0.0], "SHAPE_MISMATCH"),
        ([("A", 2)], [0.5, float("nan")], "NOT_FINITE"),
        ([("A", 2)], [-0.1, 1.1], "NEGATIVE_PROBABILITY"),
        ([("A", 2)], [0.7, 0.7], "NOT_NORMALIZED"),
        ([("A", 2)], [1.5, -0.5], "NEGATIVE_PROBABILITY"),
        ([("A", 2), ("A", 2)], [0.25] * 4, "DUPLICATE_NAME"),
        ([("A", 0)], [1.0], "INVALID_CARDINALITY"),
        ([("", 2)], [0.5, 0.5], "INVALID_NAME"),
    ],
)
def test_construction_rejections(variables, probs, code):
    with pytest.raises(ValidationError) as err:
        JointDistribution.from_flat(variables, probs)
    assert err.value.code == code


def test_normalization_tolerance_is_adjustable():
    probs = [0.5, 0.5 + 5e-7]
    with pytest.raises(ValidationError):
        JointDistribution.from_flat([("A", 2)], probs)
    d = JointDistribution.from_flat([("A", 2)], probs, atol=1e-6)
    assert d.tensor.sum() == pytest.approx(1.0, abs=1e-6)


def test_marginalize_values_and_order():
    d = JointDistribution.from_flat([("A", 2), ("B", 3)], [0.1, 0.2, 0.3, 0.15, 0.15, 0.1])
    a = d.marginalize((0,))
    assert np.allclose(a.probabilities, [0.6, 0.4])
    b = d.marginalize((1,))
    assert np.allclose(b.probabilities, [0.25, 0.35, 0.4])
    # requested order is respected, not sorted
    ba = d.marginalize((1, 0))
    assert ba.names == ("B", "A")
    assert ba.tensor[2, 0] == pytest.approx(0.3)


def test_marginalize_consistency_random():
    rng = np.random.default_rng(11)
    for _ in range(25):
        d = random_distribution(rng, (2, 3, 2))
        m = d.marginalize((0, 2))
        direct = d.tensor.sum(axis=1)
        assert np.allclose(m.tensor, direct, atol=1e-12)


def test_condition_slices_and_renormalizes():
    d = JointDistribution.from_flat([("A", 2), ("B", 2)], [0.375, 0.125, 0.125, 0.375])
    c = d.condition(0, 0)
    assert c.names == ("B",)
    assert np.allclose(c.probabilities, [0.75, 0.25])


def test_condition_on_zero_probability_event():
    probs = np.zeros(8)
    probs[0] = probs[7] = 0.5
    d = JointDistribution.from_flat([("A", 2), ("B", 2), ("C", 2)], probs)
    c = d.condition(0, 1)
    assert np.allclose(c.tensor[1, 1], 1.0)
    zero = JointDistribution.from_flat([("A", 2), ("B", 2)], [1.0, 0.0, 0.0, 0.0])
    with pytest.raises(PreconditionError) as err:
        zero.condition(0, 1)
    assert err.value.code == "ZERO_CONDITION"


def test_condition_needs_two_variables():
    d = JointDistribution.from_flat([("A", 2)], [0.5, 0.5])
    with pytest.raises(PreconditionError) as err:
        d.condition(0, 0)
    assert err.value.code == "TOO_FEW_VARIABLES"


def test_product_builds_independent_joint():
    a = JointDistribution.from_flat([("A", 2)], [0.25, 0.75])
    b = JointDistribution.from_flat([("B", 3)], [0.2, 0.3, 0.5])
    ab = product(a, b)
    assert ab.names == ("A", "B")
    assert ab.tensor[1, 2] == pytest.approx(0.375)
    with pytest.raises(ValidationError) as err:
        product(a, a)
    assert err.value.code == "NAME_COLLISION"


def test_validate_subset_errors():
    d = independent_bits(3)
    with pytest.raises(PreconditionError) as err:
        validate_subset(d, ())
    assert err.value.code == "EMPTY_SUBSET"
    with pytest.raises(PreconditionError) as err:
        validate_subset(d, (0, 3))
    assert err.value.code == "INDEX_OUT_OF_RANGE"
    with pytest.raises(PreconditionError) as err:
        validate_subset(d, (1, 1))
    assert err.value.code == "DUPLICATE_INDEX"


def test_subset_for_and_index_of():
    d = independent_bits(3)
    assert d.subset_for(["C", "A"]) == (2, 0)
    assert d.index_of("B") == 1
    with pytest.raises(PreconditionError):
        d.index_of("Z")


def test_from_samples_counts():
    records = [(0, 0), (0, 0), (0, 1), (1, 1)]
    d = JointDistribution.from_samples(records, [("A", 2), ("B", 2)])
    assert np.allclose(d.probabilities, [0.5, 0.25, 0.0, 0.25])


def test_from_samples_rejections():
    with pytest.raises(ValidationError) as err:
        JointDistribution.from_samples([], [("A", 2)])
    assert err.value.code == "EMPTY_SAMPLE"
    with pytest.raises(ValidationError) as err:
        JointDistribution.from_samples([(0, 1)], [("A", 2)])
    assert err.value.code == "SHAPE_MISMATCH"
    with pytest.raises(ValidationError) as err:
        JointDistribution.from_samples([(2,)], [("A", 2)])
    assert err.value.code == "OUT_OF_RANGE_OUTCOME"


def test_csv_parsing_and_distribution():
    text = "A,B\n0,0\n0,0\n0,1\n1,2\n"
    names, records = parse_samples_csv(text)
    assert names == ["A", "B"]
    assert records == [(0, 0), (0, 0), (0, 1), (1, 2)]
    d = distribution_from_csv(text)
    assert d.cardinalities == (2, 3)
    assert d.tensor[0, 0] == pytest.approx(0.5)


@pytest.mark.parametrize(
    "text,code",
    [
        ("", "EMPTY_SAMPLE"),
        ("A,B\n0,x\n", "MALFORMED_INPUT"),
        ("A,B\n0\n", "MALFORMED_INPUT"),
        ("A,B\n0,-1\n", "OUT_OF_RANGE_OUTCOME"),
    ],
)
def test_csv_rejections(text, code):
    with pytest.raises(ValidationError) as err:
        distribution_from_csv(text)
    assert err.value.code == code


def test_json_round_trip():
    rng = np.random.default_rng(3)
    d = random_distribution(rng, (2, 3))
    doc = json.loads(json.dumps(d.to_json_dict()))
    back = JointDistribution.from_json_dict(doc)
    assert back.names == d.names
    assert np.array_equal(back.tensor, d.tensor)


def test_from_json_dict_rejects_malformed():
    for doc in (42, {"variables": []}, {"probabilities": [1.0]}, {"variables": [{"name": "A"}], "probabilities": [1.0]}):
        with pytest.raises(ValidationError):
            JointDistribution.from_json_dict(doc)


@given(st.lists(st.integers(min_value=0, max_value=50), min_size=2, max_size=12).filter(lambda w: sum(w) > 0))
def test_integer_weight_vectors_always_validate(weights):
    probs = np.asarray(weights, dtype=float) / sum(weights)
    d = JointDistribution.from_flat([("A", len(weights))], probs)
    assert d.tensor.sum() == pytest.approx(1.0, abs=1e-9)
