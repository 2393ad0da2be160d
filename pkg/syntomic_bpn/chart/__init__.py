"""Chart renderers for bigraded bases."""

from .render import ChartSpec, parse_json, render_json, render_svg, render_table, render_text, stack_offsets
from .svg import SvgDocument

__all__ = [
    "ChartSpec",
    "SvgDocument",
    "parse_json",
    "render_json",
    "render_svg",
    "render_table",
    "render_text",
    "stack_offsets",
]
