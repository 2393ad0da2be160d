"""Text, SVG and JSON renderings of bigraded bases."""

from __future__ import annotations

import json
from dataclasses import dataclass
from typing import Any, Dict, List, Tuple

from ..exceptions import ErrorCode, SyntomicError
from ..models import BasisClass, BigradedBasis, DimensionTable
from .svg import SvgDocument

__all__ = ['ChartSpec', 'render_text', 'render_svg', 'render_json', 'parse_json', 'render_table', 'stack_offsets']

TICK_EVERY = 5


@dataclass(frozen=True)
class ChartSpec:
    """Axis ranges (degree across, Adams weight up) and drawing options."""

    degree_range: Tuple[int, int]
    weight_range: Tuple[int, int]
    labels: bool = True
    scale: int = 40

    def __post_init__(self):
        for name, (low, high) in (("degree", self.degree_range), ("weight", self.weight_range)):
            if low > high:
                raise SyntomicError(
                    f"chart {name} range [{low}, {high}] is empty", ErrorCode.RANGE_EMPTY, {"axis": name}
                )
        if self.scale < 4:
            raise SyntomicError(f"chart scale {self.scale} is too small", ErrorCode.RANGE_EMPTY)

    @classmethod
    def for_basis(cls, basis: BigradedBasis, labels: bool = True, scale: int = 40) -> ChartSpec:
        """Ranges covering every class with one empty column and row of padding."""
        if basis.classes:
            degrees = [c.degree for c in basis]
            weights = [c.adams_weight for c in basis]
            degree_range = (min(degrees) - 1, max(degrees) + 1)
            weight_range = (min(weights) - 1, max(weights) + 1)
        else:
            degree_range = basis.window.degree
            weight_range = basis.window.weight or (0, 0)
        return cls(degree_range, weight_range, labels, scale)

    @property
    def columns(self) -> int:
        return self.degree_range[1] - self.degree_range[0] + 1

    @property
    def rows(self) -> int:
        return self.weight_range[1] - self.weight_range[0] + 1

    def contains(self, c: BasisClass) -> bool:
        return (
            self.degree_range[0] <= c.degree <= self.degree_range[1]
            and self.weight_range[0] <= c.adams_weight <= self.weight_range[1]
        )


def _by_cell(basis: BigradedBasis, spec: ChartSpec) -> Dict[Tuple[int, int], List[BasisClass]]:
    cells: Dict[Tuple[int, int], List[BasisClass]] = {}
    for c in basis:
        if spec.contains(c):
            cells.setdefault(c.bidegree, []).append(c)
    return cells


def _mark(count: int) -> str:
    if count == 0:
        return "."
    if count == 1:
        return "o"
    return str(count) if count < 10 else "*"


def render_text(basis: BigradedBasis, spec: ChartSpec) -> str:
    """Fixed-width grid, one row per Adams weight, top weight first."""
    cells = _by_cell(basis, spec)
    low, high = spec.degree_range
    lines = [
        f"p={basis.p} n={basis.n} degree {low}..{high} weight {spec.weight_range[0]}..{spec.weight_range[1]}"
    ]
    for weight in range(spec.weight_range[1], spec.weight_range[0] - 1, -1):
        row = "".join(_mark(len(cells.get((degree, weight), []))) for degree in range(low, high + 1))
        lines.append(f"{weight:>4} {row}")
    lines.append("     " + "-" * spec.columns)

    ticks = [" "] * spec.columns
    cursor = 0
    for degree in range(low, high + 1):
        if degree % TICK_EVERY:
            continue
        column = degree - low
        text = str(degree)
        if column < cursor or column + len(text) > spec.columns:
            continue
        ticks[column:column + len(text)] = list(text)
        cursor = column + len(text) + 1
    lines.append(("     " + "".join(ticks)).rstrip())

    if spec.labels:
        for (degree, weight), members in sorted(cells.items(), key=lambda item: (item[0][1], item[0][0])):
            lines.append(f"({degree},{weight}) " + " ".join(c.label for c in members))
    return "\n".join(lines) + "\n"


def stack_offsets(count: int, step: int) -> List[int]:
    """Vertical offsets for ``count`` nodes in one cell: above, below, then alternating outward."""
    if count == 1:
        return [0]
    offsets = []
    for index in range(count):
        distance = (index // 2 + 1) * step
        offsets.append(-distance if index % 2 == 0 else distance)
    return offsets


def render_svg(basis: BigradedBasis, spec: ChartSpec) -> str:
    """Chart with one node per class at ``(degree, weight)``, grid lines and axis ticks."""
    scale = spec.scale
    margin = scale
    width = (spec.columns + 1) * scale + margin
    height = (spec.rows + 1) * scale + margin
    low, high = spec.degree_range
    bottom, top = spec.weight_range

    def x_of(degree: int) -> int:
        return margin + (degree - low) * scale

    def y_of(weight: int) -> int:
        return margin // 2 + (top - weight) * scale

    document = SvgDocument(width, height)
    document.group_start(id="grid", stroke="#dddddd", stroke_width=1)
    for degree in range(low, high + 1):
        document.line(x_of(degree), y_of(top), x_of(degree), y_of(bottom))
    for weight in range(bottom, top + 1):
        document.line(x_of(low), y_of(weight), x_of(high), y_of(weight))
    document.group_end()

    document.group_start(id="ticks", font_family="monospace", font_size=scale // 3, fill="#444444")
    axis_y = y_of(bottom) + scale // 2
    for degree in range(low, high + 1):
        document.text(x_of(degree), axis_y, str(degree), text_anchor="middle")
    for weight in range(bottom, top + 1):
        document.text(margin // 2, y_of(weight) + scale // 10, str(weight), text_anchor="end")
    document.group_end()

    step = max(2, scale // 4)
    document.group_start(id="classes", font_family="serif", font_size=scale // 3)
    for (degree, weight), members in sorted(_by_cell(basis, spec).items(), key=lambda item: (item[0][1], item[0][0])):
        for c, offset in zip(members, stack_offsets(len(members), step)):
            cx, cy = x_of(degree), y_of(weight) + offset
            document.circle(cx, cy, max(2, scale // 10), title=c.label, fill="#000000")
            if spec.labels:
                document.text(cx + scale // 8, cy - scale // 8, c.label)
    document.group_end()
    return document.render()


def render_json(obj: Any) -> str:
    """Stable dump of a mapping or of anything with ``to_dict``."""
    payload = obj if isinstance(obj, dict) else obj.to_dict()
    return json.dumps(payload, ensure_ascii=False, indent=2) + "\n"


def parse_json(text: str) -> BigradedBasis:
    """Read a basis dump written by ``render_json``."""
    try:
        return BigradedBasis.from_dict(json.loads(text))
    except json.JSONDecodeError as exc:
        raise SyntomicError(
            f"dump:{exc.lineno}:{exc.colno}: {exc.msg}", ErrorCode.PARSE_ERROR, {"line": exc.lineno}
        ) from None
    except (KeyError, TypeError) as exc:
        raise SyntomicError(f"dump is not a basis: {exc}", ErrorCode.PARSE_ERROR) from None


def render_table(*tables: DimensionTable) -> str:
    """Aligned columns of graded dimensions, one column per table."""
    if not tables:
        return ""
    degrees = sorted(set().union(*(table.dimensions for table in tables)))
    header = ["degree"] + [table.module or "dim" for table in tables]
    widths = [max(len(header[0]), 6)] + [max(len(name), 3) for name in header[1:]]
    lines = ["  ".join(name.rjust(width) for name, width in zip(header, widths))]
    for degree in degrees:
        cells = [str(degree)] + [str(table.dimension(degree)) for table in tables]
        lines.append("  ".join(cell.rjust(width) for cell, width in zip(cells, widths)))
    return "\n".join(lines) + "\n"
