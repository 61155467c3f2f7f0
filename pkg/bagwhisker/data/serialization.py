"""JSON documents for models, and the render scene rebuilt from them."""

import json
import logging
from typing import Dict, List, Sequence, Union

import numpy as np

from .. import config
from ..analysis.geometry import containment
from ..errors import EmptyModel
from .models import (BagplotModel, ClassicModel, Containment, DepthProfile, Bag, PlotScene,
                     Point2, PointClass, Whisker)

logger = logging.getLogger(__name__)

AnyModel = Union[BagplotModel, ClassicModel]


def _floats(array) -> List:
    """Nested lists of Python floats; json writes them with the shortest exact repr."""
    return np.asarray(array, dtype=float).tolist()


def _pair(point) -> List[float]:
    return [float(point[0]), float(point[1])]


def _depth_section(profile: DepthProfile) -> Dict:
    return {
        "mode": profile.mode.label,
        "median_rule": profile.median_rule,
        "depths": [int(d) for d in profile.depths],
        "max_depth": profile.max_depth,
        "deepest_set": list(profile.deepest_set),
        "median": _pair(profile.median),
    }


def _bag_section(bag: Bag) -> Dict:
    return {
        "vertices": _floats(bag.polygon.vertices),
        "inner_k": bag.inner_k,
        "interpolation_t": bag.interpolation_t,
        "contained_count": bag.contained_count,
        "degenerate": bag.degenerate,
        "center": None if bag.center is None else _pair(bag.center),
        "widened_to": bag.widened_to,
    }


def model_to_document(model: AnyModel) -> Dict:
    """
    JSON-ready dictionary holding every intermediate quantity of a model.

    Args:
        model: BagplotModel or ClassicModel

    Returns:
        dict with a schema_version field
    """
    if isinstance(model, ClassicModel):
        return _classic_document(model)

    estimate = model.estimate
    outcome = model.outcome
    return {
        "schema_version": config.SCHEMA_VERSION,
        "method": outcome.method.value,
        "level": outcome.q,
        "n": model.data.n,
        "points": _floats(model.data.points),
        "depth": _depth_section(model.profile),
        "bag": _bag_section(model.bag),
        "robust": {
            "location": _pair(estimate.location),
            "scatter": _floats(estimate.scatter),
            "h": estimate.h,
            "raw_subset": list(estimate.raw_subset),
            "raw_determinant": float(estimate.raw_determinant),
            "raw_location": None if estimate.raw_location is None else _floats(estimate.raw_location),
            "raw_scatter": None if estimate.raw_scatter is None else _floats(estimate.raw_scatter),
            "consistency": float(estimate.consistency),
            "reweighted_count": estimate.reweighted_count,
        },
        "d2": _floats(outcome.d2),
        "pvalues": _floats(outcome.pvalues),
        "t_adj": outcome.t_adj,
        "d2_adj": outcome.d2_adj,
        "rejected": list(outcome.rejected),
        "lambda_stat": model.lambda_stat,
        "lambda_data": model.lambda_data,
        "lambda": model.lambda_,
        "fence": _floats(model.fence.vertices),
        "classification": [c.value for c in model.classification],
        "whiskers": [{"index": w.index, "start": _pair(w.start), "end": _pair(w.end)}
                     for w in model.whiskers],
        "outliers": model.outliers,
    }


def _classic_classification(model: ClassicModel) -> List[PointClass]:
    outliers = set(model.outliers)
    classes = []
    for i, z in enumerate(model.data.points):
        if i in outliers:
            classes.append(PointClass.OUTLIER)
        elif containment(z, model.bag.polygon) is not Containment.OUTSIDE:
            classes.append(PointClass.IN_BAG)
        else:
            classes.append(PointClass.OUTER)
    return classes


def _classic_document(model: ClassicModel) -> Dict:
    return {
        "schema_version": config.SCHEMA_VERSION,
        "method": "classic",
        "factor": model.factor,
        "n": model.data.n,
        "points": _floats(model.data.points),
        "depth": _depth_section(model.profile),
        "bag": _bag_section(model.bag),
        "fence": _floats(model.fence3.vertices),
        "loop_hull": _floats(model.loop_hull.vertices),
        "classification": [c.value for c in _classic_classification(model)],
        "outliers": list(model.outliers),
    }


def comparison_to_document(models: Sequence[AnyModel]) -> Dict:
    """Document with one panel per model, in the given order."""
    return {
        "schema_version": config.SCHEMA_VERSION,
        "panels": [model_to_document(m) for m in models],
    }


def dumps(document: Dict) -> str:
    return json.dumps(document, indent=2, allow_nan=False) + "\n"


def scene_from_model(model: AnyModel) -> PlotScene:
    """The render scene of a model."""
    if isinstance(model, ClassicModel):
        return PlotScene(
            label="classic",
            points=model.data.points,
            median=model.profile.median,
            bag=model.bag.polygon.vertices,
            boundary=model.loop_hull.vertices,
            boundary_kind="loop",
            classification=tuple(_classic_classification(model)),
        )
    if not isinstance(model, BagplotModel):
        raise EmptyModel(f"cannot draw a {type(model).__name__}", module="render")
    return PlotScene(
        label=model.label,
        points=model.data.points,
        median=model.estimate.location,
        bag=model.bag.polygon.vertices,
        boundary=model.fence.vertices,
        boundary_kind="fence",
        classification=model.classification,
        whiskers=model.whiskers,
    )


def scene_from_document(document: Dict) -> PlotScene:
    """
    Rebuild the render scene from a single-model JSON document.

    Args:
        document: dict produced by model_to_document (or parsed from its JSON)

    Returns:
        PlotScene equal to scene_from_model of the original model
    """
    try:
        classic = document["method"] == "classic"
        if classic:
            median = document["depth"]["median"]
        else:
            median = document["robust"]["location"]
        return PlotScene(
            label=document["method"],
            points=document["points"],
            median=Point2(float(median[0]), float(median[1])),
            bag=document["bag"]["vertices"],
            boundary=document["loop_hull"] if classic else document["fence"],
            boundary_kind="loop" if classic else "fence",
            classification=tuple(PointClass(c) for c in document["classification"]),
            whiskers=tuple(
                Whisker(int(w["index"]), Point2(*map(float, w["start"])), Point2(*map(float, w["end"])))
                for w in document.get("whiskers", [])
            ),
        )
    except (KeyError, TypeError, ValueError) as e:
        raise EmptyModel(f"document does not describe a model: {e}", module="render")
