"""SVG rendering of coefficient paths against L1 arc length."""
from __future__ import annotations

import xml.etree.ElementTree as ET

import numpy as np

WIDTH, HEIGHT = 720, 480
MARGIN = 60


def _fmt(v):
    return f"{v:.3f}"


def render_path_svg(betas, column_names, selected_arc=None, title="") -> str:
    """One polyline per coefficient over cumulative arc length of ``betas``.

    ``betas`` is the ``(knots, m)`` array of coefficients to draw. Knots get
    thin vertical rules; ``selected_arc``, a position on the arc-length axis,
    gets a dashed marker.
    """
    betas = np.asarray(betas, dtype=float)
    steps = np.abs(np.diff(betas, axis=0)).sum(axis=1) if len(betas) > 1 else np.zeros(0)
    s = np.concatenate([[0.0], np.cumsum(steps)])
    smax = s[-1] if s[-1] > 0 else 1.0
    lo, hi = float(betas.min()), float(betas.max())
    if hi == lo:
        lo, hi = lo - 1.0, hi + 1.0
    pad = 0.05 * (hi - lo)
    lo, hi = lo - pad, hi + pad

    def px(v):
        return MARGIN + (WIDTH - 2 * MARGIN) * v / smax

    def py(v):
        return HEIGHT - MARGIN - (HEIGHT - 2 * MARGIN) * (v - lo) / (hi - lo)

    root = ET.Element("svg", {"xmlns": "http://www.w3.org/2000/svg", "version": "1.1",
                              "width": str(WIDTH), "height": str(HEIGHT)})
    if title:
        ET.SubElement(root, "title").text = title
    axes = ET.SubElement(root, "g", {"class": "axes", "stroke": "black"})
    ET.SubElement(axes, "line", {"x1": _fmt(px(0)), "y1": _fmt(py(lo)),
                                 "x2": _fmt(px(smax)), "y2": _fmt(py(lo))})
    ET.SubElement(axes, "line", {"x1": _fmt(px(0)), "y1": _fmt(py(lo)),
                                 "x2": _fmt(px(0)), "y2": _fmt(py(hi))})
    if lo < 0 < hi:
        ET.SubElement(axes, "line", {"x1": _fmt(px(0)), "y1": _fmt(py(0)),
                                     "x2": _fmt(px(smax)), "y2": _fmt(py(0)),
                                     "stroke": "#999"})
    labels = ET.SubElement(root, "g", {"class": "labels", "font-size": "12",
                                       "font-family": "sans-serif"})
    ET.SubElement(labels, "text", {"x": _fmt(WIDTH / 2), "y": _fmt(HEIGHT - 15),
                                   "text-anchor": "middle"}).text = "sum |beta_j| (L1 arc length)"
    ET.SubElement(labels, "text", {"x": _fmt(px(0)), "y": _fmt(py(lo) + 15),
                                   "text-anchor": "middle"}).text = "0"
    ET.SubElement(labels, "text", {"x": _fmt(px(smax)), "y": _fmt(py(lo) + 15),
                                   "text-anchor": "middle"}).text = f"{smax:.4g}"
    ET.SubElement(labels, "text", {"x": _fmt(MARGIN - 5), "y": _fmt(py(hi)),
                                   "text-anchor": "end"}).text = f"{hi:.4g}"
    ET.SubElement(labels, "text", {"x": _fmt(MARGIN - 5), "y": _fmt(py(lo)),
                                   "text-anchor": "end"}).text = f"{lo:.4g}"

    rules = ET.SubElement(root, "g", {"class": "knots", "stroke": "#ccc"})
    for v in s[1:]:
        ET.SubElement(rules, "line", {"x1": _fmt(px(v)), "y1": _fmt(py(lo)),
                                      "x2": _fmt(px(v)), "y2": _fmt(py(hi))})
    if selected_arc is not None:
        v = float(selected_arc)
        ET.SubElement(root, "line", {"class": "selected", "stroke": "red",
                                     "stroke-dasharray": "6,4",
                                     "x1": _fmt(px(v)), "y1": _fmt(py(lo)),
                                     "x2": _fmt(px(v)), "y2": _fmt(py(hi))})

    palette = ["#1f77b4", "#ff7f0e", "#2ca02c", "#d62728", "#9467bd",
               "#8c564b", "#e377c2", "#7f7f7f", "#bcbd22", "#17becf"]
    curves = ET.SubElement(root, "g", {"class": "coefficients", "fill": "none"})
    for j, name in enumerate(column_names):
        pts = " ".join(f"{_fmt(px(a))},{_fmt(py(b))}" for a, b in zip(s, betas[:, j]))
        line = ET.SubElement(curves, "polyline", {"points": pts,
                                                  "stroke": palette[j % len(palette)],
                                                  "data-name": str(name)})
        ET.SubElement(line, "title").text = str(name)
        ET.SubElement(labels, "text", {"x": _fmt(px(smax) + 4),
                                       "y": _fmt(py(betas[-1, j])),
                                       "font-size": "10"}).text = str(name)
    return '<?xml version="1.0" encoding="UTF-8"?>\n' + ET.tostring(root, encoding="unicode") + "\n"
