"""Minimal deterministic SVG assembly used by the diagram and net writers."""

from __future__ import annotations


def fmt(x: float) -> str:
    return f"{x:.6f}"


class SvgDoc:
    def __init__(self, view_box: tuple[float, float, float, float]):
        x, y, w, h = view_box
        self.parts: list[str] = [
            '<?xml version="1.0" encoding="UTF-8"?>\n',
            f'<svg xmlns="http://www.w3.org/2000/svg" viewBox="{fmt(x)} {fmt(y)} '
            f'{fmt(w)} {fmt(h)}">\n',
        ]

    def line(self, p0, p1, width: float, dashed: bool = False) -> None:
        dash = f' stroke-dasharray="{fmt(3 * width)} {fmt(2 * width)}"' if dashed else ""
        self.parts.append(
            f'<line x1="{fmt(p0[0])}" y1="{fmt(p0[1])}" x2="{fmt(p1[0])}" '
            f'y2="{fmt(p1[1])}" stroke="black" stroke-width="{fmt(width)}"{dash}/>\n'
        )

    def circle(self, center, radius: float, fill: str = "white") -> None:
        self.parts.append(
            f'<circle cx="{fmt(center[0])}" cy="{fmt(center[1])}" r="{fmt(radius)}" '
            f'fill="{fill}" stroke="black" stroke-width="{fmt(radius / 6)}"/>\n'
        )

    def text(self, pos, content: str, size: float) -> None:
        self.parts.append(
            f'<text x="{fmt(pos[0])}" y="{fmt(pos[1])}" font-size="{fmt(size)}" '
            f'font-family="sans-serif" text-anchor="middle" '
            f'dominant-baseline="central">{content}</text>\n'
        )

    def render(self) -> str:
        return "".join(self.parts) + "</svg>\n"
