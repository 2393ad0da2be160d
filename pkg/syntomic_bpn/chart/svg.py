"""Minimal string-building SVG 1.1 writer with integer coordinates."""

from __future__ import annotations

from typing import Dict, List
from xml.sax.saxutils import escape, quoteattr

__all__ = ['SvgDocument']


class SvgDocument:
    """Accumulates SVG elements in insertion order."""

    def __init__(self, width: int, height: int):
        self.width = width
        self.height = height
        self._parts: List[str] = []

    @staticmethod
    def _attributes(extra: Dict[str, object]) -> str:
        return "".join(f" {key.replace('_', '-')}={quoteattr(str(value))}" for key, value in extra.items())

    def group_start(self, **attributes: object) -> None:
        self._parts.append(f"<g{self._attributes(attributes)}>\n")

    def group_end(self) -> None:
        self._parts.append("</g>\n")

    def line(self, x1: int, y1: int, x2: int, y2: int, **attributes: object) -> None:
        self._parts.append(
            f'<line x1="{x1}" y1="{y1}" x2="{x2}" y2="{y2}"{self._attributes(attributes)}/>\n'
        )

    def circle(self, cx: int, cy: int, r: int, title: str = "", **attributes: object) -> None:
        head = f'<circle cx="{cx}" cy="{cy}" r="{r}"{self._attributes(attributes)}'
        if title:
            self._parts.append(f"{head}><title>{escape(title)}</title></circle>\n")
        else:
            self._parts.append(f"{head}/>\n")

    def text(self, x: int, y: int, content: str, **attributes: object) -> None:
        self._parts.append(f'<text x="{x}" y="{y}"{self._attributes(attributes)}>{escape(content)}</text>\n')

    def render(self) -> str:
        header = (
            '<?xml version="1.0" encoding="UTF-8" standalone="no"?>\n'
            '<svg version="1.1" xmlns="http://www.w3.org/2000/svg" '
            f'width="{self.width}" height="{self.height}" viewBox="0 0 {self.width} {self.height}">\n'
        )
        return header + "".join(self._parts) + "</svg>\n"
