import json

import numpy as np
import pytest

from bagwhisker.analysis.bag import construct_bag
from bagwhisker.analysis.depth import depth_profile
from bagwhisker.analysis.fence import classic_model
from bagwhisker.data.models import Dataset, DepthMode, PointClass
from bagwhisker.data.serialization import (comparison_to_document, dumps, model_to_document,
                                           scene_from_document, scene_from_model)
from bagwhisker.errors import EmptyModel


@pytest.fixture
def toy_model(toy_calculator, toy):
    return toy_calculator.calculate_model(toy)


def test_document_fields(toy_model):
    doc = model_to_document(toy_model)
    assert doc["schema_version"] == "1.0"
    assert doc["method"] == "fwer"
    assert doc["level"] == 0.1
    assert doc["n"] == 8
    assert doc["depth"]["depths"] == [3, 2, 2, 2, 1, 1, 1, 1]
    assert doc["depth"]["mode"] == "exact"
    assert doc["bag"]["inner_k"] == 2
    assert doc["bag"]["interpolation_t"] is None
    assert doc["bag"]["center"] is None
    assert doc["bag"]["widened_to"] is None
    assert doc["robust"]["reweighted_count"] == 7
    assert doc["rejected"] == [7]
    assert doc["outliers"] == [7]
    assert doc["lambda"] == pytest.approx(8.0)
    assert [w["index"] for w in doc["whiskers"]] == [4, 5, 6]
    assert doc["classification"] == ["in_bag"] * 4 + ["outer"] * 3 + ["outlier"]


def test_json_text_is_parseable_and_stable(toy_model):
    text = dumps(model_to_document(toy_model))
    assert text.endswith("}\n")
    assert json.loads(text) == json.loads(dumps(model_to_document(toy_model)))
    assert text == dumps(model_to_document(toy_model))


def test_floats_survive_json_exactly(toy_model):
    doc = json.loads(dumps(model_to_document(toy_model)))
    assert doc["robust"]["scatter"] == toy_model.estimate.scatter.tolist()
    assert doc["fence"] == toy_model.fence.vertices.tolist()
    assert doc["d2"] == toy_model.outcome.d2.tolist()


def test_classic_document(toy_calculator, toy):
    doc = model_to_document(toy_calculator.calculate_classic(toy))
    assert doc["method"] == "classic"
    assert doc["factor"] == 3.0
    assert doc["outliers"] == [4, 5, 6, 7]
    assert "loop_hull" in doc
    assert doc["classification"][4:] == ["outlier"] * 4


def test_comparison_document(toy_calculator, toy):
    doc = comparison_to_document(toy_calculator.calculate_comparison(toy))
    assert [p["method"] for p in doc["panels"]] == ["classic", "fwer", "fdr", "pfer"]


def test_scene_from_document_matches_model(toy_model):
    direct = scene_from_model(toy_model)
    rebuilt = scene_from_document(json.loads(dumps(model_to_document(toy_model))))
    assert rebuilt.label == direct.label
    assert rebuilt.median == direct.median
    np.testing.assert_array_equal(rebuilt.points, direct.points)
    np.testing.assert_array_equal(rebuilt.bag, direct.bag)
    np.testing.assert_array_equal(rebuilt.boundary, direct.boundary)
    assert rebuilt.classification == direct.classification
    assert rebuilt.whiskers == direct.whiskers


def test_classic_scene(toy_calculator, toy):
    scene = scene_from_model(toy_calculator.calculate_classic(toy))
    assert scene.boundary_kind == "loop"
    assert scene.whiskers == ()
    assert scene.outliers == [4, 5, 6, 7]
    assert scene.classification[:4] == (PointClass.IN_BAG,) * 4


@pytest.mark.parametrize("document", [{}, {"method": "fwer"}, {"method": "fwer", "points": None}])
def test_scene_from_bad_document(document):
    with pytest.raises(EmptyModel):
        scene_from_document(document)


def test_scene_from_unknown_object():
    with pytest.raises(EmptyModel):
        scene_from_model(object())


def test_interpolated_bag_records_its_centre():
    angles = np.linspace(0, 2 * np.pi, 12, endpoint=False)
    ring = np.column_stack((np.cos(angles), np.sin(angles)))
    data = Dataset(np.vstack((ring, [[0.0, 0.0]] * 3)))
    profile = depth_profile(data, DepthMode.exact())
    section = model_to_document(classic_model(data, profile, construct_bag(data, profile)))["bag"]
    assert section["interpolation_t"] == pytest.approx(5 / 12)
    assert section["center"] == [0.0, 0.0]
