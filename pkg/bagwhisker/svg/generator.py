"""SVG figure generator for bag-and-whisker and classic bagplots."""

import logging
from typing import Dict, List, Optional, Sequence

import numpy as np

from ..data.models import BagplotModel, ClassicModel, PlotScene, PointClass, RenderStyle
from ..data.serialization import scene_from_document, scene_from_model
from ..errors import EmptyModel
from .elements import (CanvasTransform, circle, cross, element, fmt, line, linear_gradient,
                       polygon, star, text)

logger = logging.getLogger(__name__)

PANEL_TITLES = {
    "classic": "Classic bagplot (factor 3)",
    "fwer": "FWER (Holm)",
    "fdr": "FDR (Benjamini-Hochberg)",
    "pfer": "PFER (Bonferroni)",
}


class BagplotSvgGenerator:
    """Draws one PlotScene as layered SVG."""

    def __init__(self, scene: PlotScene, style: Optional[RenderStyle] = None, id_prefix: str = ""):
        """
        Initialise the generator.

        Args:
            scene: PlotScene to draw
            style: RenderStyle; defaults when None
            id_prefix: Prefix for gradient ids, unique per panel
        """
        if scene is None or len(scene.points) == 0 or len(scene.bag) == 0:
            raise EmptyModel("nothing to draw: the model has no points or no bag", module="render")
        self.scene = scene
        self.style = style or RenderStyle()
        self.id_prefix = id_prefix

    def generate(self) -> str:
        """Complete standalone SVG document."""
        s = self.style
        body = self.render(s.width, s.height)
        title = element("title", f"{s.title}: {self.scene.label}")
        return _document(s.width, s.height, title, *body)

    def save(self, output_path: str):
        with open(output_path, "w", encoding="utf-8", newline="\n") as f:
            f.write(self.generate())

    def render(self, width: float, height: float) -> List[str]:
        """
        Layers of the figure for a canvas of the given size.

        Order bottom to top: gradient definitions, whiskers, loop (classic),
        bag, fence, points, outlier markers, depth median.
        """
        scene = self.scene
        extent = np.vstack((scene.points, scene.boundary, scene.bag))
        self.transform = CanvasTransform(extent, width, height, self.style.margin)

        layers = []
        if scene.whiskers:
            layers.append(self._gradients())
            layers.extend(self._whiskers())
        if scene.boundary_kind == "loop":
            layers.append(self._loop())
        layers.append(self._bag())
        if scene.boundary_kind == "fence":
            layers.append(self._fence())
        layers.extend(self._points())
        layers.extend(self._outlier_markers())
        layers.append(self._median())
        return layers

    def _gradient_id(self, index: int) -> str:
        return f"{self.id_prefix}whisker-{index}"

    def _gradients(self) -> str:
        s = self.style
        gradients = [
            linear_gradient(self._gradient_id(w.index), self.transform(w.start), self.transform(w.end),
                            s.whisker_color, s.whisker_alpha)
            for w in self.scene.whiskers
        ]
        return element("defs", *gradients)

    def _whiskers(self) -> List[str]:
        return [
            line(self.transform(w.start), self.transform(w.end), class_="whisker",
                 stroke=f"url(#{self._gradient_id(w.index)})", stroke_width="1.5")
            for w in self.scene.whiskers
        ]

    def _pixels(self, vertices) -> List:
        return [self.transform(v) for v in vertices]

    def _bag(self) -> str:
        s = self.style
        return polygon(self._pixels(self.scene.bag), class_="bag", fill=s.bag_color,
                       fill_opacity=fmt(s.bag_opacity), stroke=s.bag_color)

    def _fence(self) -> str:
        s = self.style
        return polygon(self._pixels(self.scene.boundary), class_="fence", fill="none",
                       stroke=s.fence_color, stroke_dasharray=s.fence_dash, stroke_width="1")

    def _loop(self) -> str:
        s = self.style
        return polygon(self._pixels(self.scene.boundary), class_="loop", fill=s.loop_color,
                       fill_opacity="0.15", stroke=s.loop_color, stroke_width="1")

    def _points(self) -> List[str]:
        s = self.style
        return [
            circle(self.transform(z), s.point_radius, class_="point", fill=s.point_color)
            for z in self.scene.points
        ]

    def _outlier_markers(self) -> List[str]:
        s = self.style
        return [
            cross(self.transform(self.scene.points[i]), s.point_radius * 1.8, class_="outlier",
                  stroke=s.outlier_color, stroke_width="2", fill="none")
            for i, c in enumerate(self.scene.classification) if c is PointClass.OUTLIER
        ]

    def _median(self) -> str:
        s = self.style
        return star(self.transform(self.scene.median), s.point_radius * 3.0, class_="median",
                    fill=s.median_color, stroke="#ffffff", stroke_width="0.5")


def _document(width: float, height: float, *children: str) -> str:
    head = '<?xml version="1.0" encoding="UTF-8" standalone="no"?>\n'
    svg = element(
        "svg", "\n", *(child + "\n" for child in children),
        xmlns="http://www.w3.org/2000/svg", version="1.1",
        width=str(width), height=str(height), viewBox=f"0 0 {width} {height}",
    )
    return head + svg + "\n"


def render_scene(scene: PlotScene, style: Optional[RenderStyle] = None) -> str:
    return BagplotSvgGenerator(scene, style).generate()


def render_svg(model, style: Optional[RenderStyle] = None) -> str:
    """
    SVG document for a BagplotModel or ClassicModel.

    Args:
        model: BagplotModel or ClassicModel
        style: RenderStyle

    Returns:
        SVG 1.1 text, byte-identical for identical inputs
    """
    if model is None:
        raise EmptyModel("no model to draw", module="render")
    return render_scene(scene_from_model(model), style)


def render_classic_svg(model: ClassicModel, style: Optional[RenderStyle] = None) -> str:
    """SVG document of a classic bagplot: bag and loop hull, no fence or whiskers."""
    if not isinstance(model, ClassicModel):
        raise EmptyModel("expected a classic model", module="render")
    return render_svg(model, style)


def render_comparison_scenes(scenes: Sequence[PlotScene], style: Optional[RenderStyle] = None) -> str:
    """2x2 panel figure, panels filled row by row."""
    if not scenes:
        raise EmptyModel("no panels to draw", module="render")
    style = style or RenderStyle()
    panel_w, panel_h = style.width / 2.0, style.height / 2.0

    panels = []
    for k, scene in enumerate(scenes):
        generator = BagplotSvgGenerator(scene, style, id_prefix=f"p{k}-")
        body = generator.render(panel_w, panel_h)
        label = text((panel_w / 2.0, 16.0), PANEL_TITLES.get(scene.label, scene.label),
                     class_="panel-title", text_anchor="middle", font_family="sans-serif",
                     font_size="12")
        panels.append(element(
            "svg", label, *body,
            x=fmt((k % 2) * panel_w), y=fmt((k // 2) * panel_h),
            width=fmt(panel_w), height=fmt(panel_h),
        ))
    title = element("title", style.title)
    return _document(style.width, style.height, title, *panels)


def render_comparison_svg(models: Sequence, style: Optional[RenderStyle] = None) -> str:
    """Comparison figure of the models, in the given order (classic, FWER, FDR, PFER)."""
    return render_comparison_scenes([scene_from_model(m) for m in models], style)


def render_document(document: Dict, style: Optional[RenderStyle] = None) -> str:
    """Re-render the SVG from a JSON document alone."""
    if "panels" in document:
        return render_comparison_scenes([scene_from_document(p) for p in document["panels"]], style)
    return render_scene(scene_from_document(document), style)
