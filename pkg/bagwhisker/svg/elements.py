"""Reusable SVG element builders."""

import math
from html import escape
from typing import Iterable, Sequence, Tuple

import numpy as np

from ..config import COORD_DIGITS

Pixel = Tuple[float, float]


def fmt(value: float) -> str:
    """Fixed-point number with COORD_DIGITS fractional digits, never '-0'."""
    text = f"{float(value):.{COORD_DIGITS}f}"
    if text.startswith("-") and float(text) == 0.0:
        text = text[1:]
    return text


def _attrs(attrs: dict) -> str:
    parts = []
    for key, value in attrs.items():
        if value is None:
            continue
        name = key.rstrip("_").replace("_", "-")
        if isinstance(value, float):
            value = fmt(value)
        parts.append(f' {name}="{escape(str(value), quote=True)}"')
    return "".join(parts)


def element(tag: str, *children: str, **attrs) -> str:
    """
    Build one element.

    Args:
        tag: Element name
        children: Already-rendered child elements or text
        attrs: Attributes; underscores become hyphens, a trailing one is dropped (class_)

    Returns:
        The element text
    """
    if not children:
        return f"<{tag}{_attrs(attrs)}/>"
    return f"<{tag}{_attrs(attrs)}>{''.join(children)}</{tag}>"


def points_attr(pixels: Iterable[Pixel]) -> str:
    return " ".join(f"{fmt(x)},{fmt(y)}" for x, y in pixels)


def polygon(pixels: Iterable[Pixel], **attrs) -> str:
    return element("polygon", points=points_attr(pixels), **attrs)


def line(a: Pixel, b: Pixel, **attrs) -> str:
    return element("line", x1=fmt(a[0]), y1=fmt(a[1]), x2=fmt(b[0]), y2=fmt(b[1]), **attrs)


def circle(center: Pixel, radius: float, **attrs) -> str:
    return element("circle", cx=fmt(center[0]), cy=fmt(center[1]), r=fmt(radius), **attrs)


def star(center: Pixel, radius: float, **attrs) -> str:
    """Five-pointed star polygon."""
    cx, cy = center
    pixels = []
    for k in range(10):
        r = radius if k % 2 == 0 else radius * 0.45
        angle = -math.pi / 2 + k * math.pi / 5
        pixels.append((cx + r * math.cos(angle), cy + r * math.sin(angle)))
    return polygon(pixels, **attrs)


def cross(center: Pixel, size: float, **attrs) -> str:
    """Diagonal cross marker as a single path."""
    cx, cy = center
    d = (f"M{fmt(cx - size)},{fmt(cy - size)}L{fmt(cx + size)},{fmt(cy + size)}"
         f"M{fmt(cx - size)},{fmt(cy + size)}L{fmt(cx + size)},{fmt(cy - size)}")
    return element("path", d=d, **attrs)


def linear_gradient(gradient_id: str, a: Pixel, b: Pixel, color: str,
                    alphas: Tuple[float, float]) -> str:
    """
    Gradient along the segment a -> b in user space.

    Args:
        gradient_id: Element id
        a: Start pixel
        b: End pixel
        color: Stop colour
        alphas: Opacity at a and at b

    Returns:
        linearGradient element
    """
    return element(
        "linearGradient",
        element("stop", offset="0", stop_color=color, stop_opacity=fmt(alphas[0])),
        element("stop", offset="1", stop_color=color, stop_opacity=fmt(alphas[1])),
        id=gradient_id,
        gradientUnits="userSpaceOnUse",
        x1=fmt(a[0]), y1=fmt(a[1]), x2=fmt(b[0]), y2=fmt(b[1]),
    )


def text(pos: Pixel, content: str, **attrs) -> str:
    return element("text", escape(content), x=fmt(pos[0]), y=fmt(pos[1]), **attrs)


class CanvasTransform:
    """Maps data coordinates onto a canvas, aspect preserved and y flipped."""

    def __init__(self, data_points: np.ndarray, width: float, height: float, margin: float):
        lo = data_points.min(axis=0)
        hi = data_points.max(axis=0)
        span = hi - lo
        inner_w = width * (1.0 - 2.0 * margin)
        inner_h = height * (1.0 - 2.0 * margin)

        scales = [s for s in (inner_w / span[0] if span[0] > 0 else None,
                              inner_h / span[1] if span[1] > 0 else None) if s is not None]
        self.scale = min(scales) if scales else 1.0
        centre = (lo + hi) / 2.0
        self.cx, self.cy = float(centre[0]), float(centre[1])
        self.width, self.height = width, height

    def __call__(self, point: Sequence[float]) -> Pixel:
        x = self.width / 2.0 + self.scale * (float(point[0]) - self.cx)
        y = self.height / 2.0 - self.scale * (float(point[1]) - self.cy)
        return x, y

    def inverse(self, pixel: Pixel) -> Pixel:
        x = self.cx + (pixel[0] - self.width / 2.0) / self.scale
        y = self.cy - (pixel[1] - self.height / 2.0) / self.scale
        return x, y
