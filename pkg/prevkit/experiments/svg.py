"""
SVG line chart of the standard-error sweep: one panel per test kit, four
polylines per panel (the three averaged estimated SEs and the empirical SD of
``π̂_c``) against the population size.
"""
from __future__ import absolute_import, division, print_function, unicode_literals

import logging
import math
from collections import OrderedDict

from prevkit.core.errors import ConfigurationError

from .output import write_text_file

logger = logging.getLogger(__name__)

#: ``(SweepRow attribute, legend label, colour)``, in the order the curves
#: are stacked from top to bottom
SERIES = (
    ('se_mle', 'MLE_SE', '#1f77b4'),
    ('se_new', 'New_SE', '#d62728'),
    ('se_empirical', 'Empirical_SE', '#2ca02c'),
    ('se_fpc', 'MLE_SE_fpc', '#ff7f0e'),
)

PANEL_WIDTH = 520
PANEL_HEIGHT = 400
MARGIN_LEFT = 80
MARGIN_RIGHT = 20
MARGIN_TOP = 50
MARGIN_BOTTOM = 60
LEGEND_HEIGHT = 40
TICK_COUNT = 5


def _escape(text):
    return (
        text.replace("&", "&amp;")
        .replace("<", "&lt;")
        .replace(">", "&gt;")
        .replace('"', "&quot;")
        .replace("'", "&#39;")
    )


def _nice_step(span, count=TICK_COUNT):
    raw = span / count
    base = 10 ** math.floor(math.log10(raw))
    for factor in (1, 2, 2.5, 5):
        if factor * base >= raw:
            return factor * base
    return 10 * base


def _ticks(low, high, count=TICK_COUNT):
    if high <= low:
        return [low]
    step = _nice_step(high - low, count)
    first = math.ceil(low / step - 1e-9)
    last = math.floor(high / step + 1e-9)
    return [k * step for k in range(int(first), int(last) + 1)]


def group_by_kit(rows):
    """:returns: OrderedDict ``(Se, Sp) -> [SweepRow]`` sorted by N"""
    panels = OrderedDict()
    for row in rows:
        panels.setdefault((row.sensitivity, row.specificity), []).append(row)
    for key in panels:
        panels[key].sort(key=lambda r: r.N)
    return panels


class Panel(object):
    """Maps data coordinates into the pixel box of one chart panel."""

    def __init__(self, left, top, rows):
        self.left = left + MARGIN_LEFT
        self.right = left + PANEL_WIDTH - MARGIN_RIGHT
        self.top = top + MARGIN_TOP
        self.bottom = top + PANEL_HEIGHT - MARGIN_BOTTOM
        self.rows = rows
        xs = [r.N for r in rows]
        ys = [getattr(r, attr) for r in rows for attr, _, _ in SERIES]
        self.x_min, self.x_max = min(xs), max(xs)
        if self.x_max == self.x_min:
            self.x_min -= 1
            self.x_max += 1
        self.y_min = 0.0
        self.y_max = max(ys) * 1.1 if max(ys) > 0 else 1.0

    def x(self, value):
        return self.left + (value - self.x_min) / (self.x_max - self.x_min) * (self.right - self.left)

    def y(self, value):
        return self.bottom - (value - self.y_min) / (self.y_max - self.y_min) * (self.bottom - self.top)

    def render(self, title):
        lines = []
        mid_x = (self.left + self.right) / 2.0
        mid_y = (self.top + self.bottom) / 2.0
        lines.append(
            '<text x="{:.1f}" y="{:.1f}" text-anchor="middle" font-size="16" font-family="Arial">{}</text>'.format(
                mid_x, self.top - 20, _escape(title))
        )
        for value in _ticks(self.y_min, self.y_max):
            y = self.y(value)
            lines.append(
                '<line x1="{}" y1="{:.2f}" x2="{}" y2="{:.2f}" stroke="#d9d9d9" stroke-width="1"/>'.format(
                    self.left, y, self.right, y)
            )
            lines.append(
                '<text x="{}" y="{:.2f}" text-anchor="end" font-size="12" font-family="Arial">{:g}</text>'.format(
                    self.left - 8, y + 4, round(value, 6))
            )
        for value in _ticks(self.x_min, self.x_max):
            x = self.x(value)
            lines.append(
                '<line x1="{:.2f}" y1="{}" x2="{:.2f}" y2="{}" stroke="#000000" stroke-width="1"/>'.format(
                    x, self.bottom, x, self.bottom + 5)
            )
            lines.append(
                '<text x="{:.2f}" y="{}" text-anchor="middle" font-size="12" font-family="Arial">{:g}</text>'.format(
                    x, self.bottom + 20, round(value, 6))
            )
        # axes
        lines.append('<line x1="{0}" y1="{1}" x2="{2}" y2="{1}" stroke="#000000" stroke-width="1.5"/>'.format(
            self.left, self.bottom, self.right))
        lines.append('<line x1="{0}" y1="{1}" x2="{0}" y2="{2}" stroke="#000000" stroke-width="1.5"/>'.format(
            self.left, self.top, self.bottom))
        for attr, _, colour in SERIES:
            points = " ".join("{:.2f},{:.2f}".format(self.x(r.N), self.y(getattr(r, attr))) for r in self.rows)
            lines.append('<polyline fill="none" stroke="{}" stroke-width="2" points="{}"/>'.format(colour, points))
        lines.append(
            '<text x="{:.1f}" y="{}" text-anchor="middle" font-size="13" font-family="Arial">Population size N</text>'.format(
                mid_x, self.bottom + 42)
        )
        label_x = self.left - 58
        lines.append(
            '<text x="{0}" y="{1:.1f}" text-anchor="middle" font-size="13" font-family="Arial" '
            'transform="rotate(-90 {0} {1:.1f})">Standard error</text>'.format(label_x, mid_y)
        )
        return lines


def render_sweep_svg(rows):
    """
    :returns: the SVG document as text
    """
    panels = group_by_kit(rows)
    if not panels:
        raise ConfigurationError("no sweep rows to plot")
    width = PANEL_WIDTH * len(panels)
    height = PANEL_HEIGHT + LEGEND_HEIGHT
    lines = [
        '<svg xmlns="http://www.w3.org/2000/svg" width="{0}" height="{1}" viewBox="0 0 {0} {1}">'.format(width, height),
        '<rect x="0" y="0" width="100%" height="100%" fill="#ffffff"/>',
    ]
    for position, ((se, sp), panel_rows) in enumerate(panels.items()):
        panel = Panel(position * PANEL_WIDTH, 0, panel_rows)
        lines.extend(panel.render("Se = {:g}, Sp = {:g}".format(se, sp)))

    legend_y = PANEL_HEIGHT + LEGEND_HEIGHT / 2.0
    slot = width / float(len(SERIES))
    for position, (_, label, colour) in enumerate(SERIES):
        x = position * slot + 20
        lines.append('<line x1="{0:.1f}" y1="{1:.1f}" x2="{2:.1f}" y2="{1:.1f}" stroke="{3}" stroke-width="3"/>'.format(
            x, legend_y, x + 24, colour))
        lines.append(
            '<text x="{:.1f}" y="{:.1f}" text-anchor="start" font-size="13" font-family="Arial">{}</text>'.format(
                x + 30, legend_y + 4, _escape(label))
        )
    lines.append('</svg>')
    return "\n".join(lines) + "\n"


def write_sweep_svg(rows, path):
    logger.debug("Plotting {} sweep rows".format(len(rows)))
    return write_text_file(path, render_sweep_svg(rows))
