"""Meander graphs of type-A seaweeds and their index.

Vertices are stored 0-based; every public edge list and every drawing uses
1-based labels.  A top edge and a bottom edge joining the same two vertices
are kept as two parallel edges, so together they form a 2-cycle.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import NamedTuple, Optional, Sequence, Union

from . import kernels
from .partitions import Composition, Partition

__all__ = [
    "Meander",
    "ComponentCount",
    "WeightMismatchError",
    "build_meander",
    "count_components",
    "seaweed_index",
    "path_count_formula",
    "index_parity",
    "render_meander",
]

PartsLike = Union[Composition, Partition, Sequence[int]]


class WeightMismatchError(ValueError):
    pass


class ComponentCount(NamedTuple):
    cycles: int
    paths: int


def _parts(x: PartsLike) -> tuple[int, ...]:
    if isinstance(x, (Composition, Partition)):
        return x.parts
    return Composition(tuple(x)).parts


def _check_weights(lam: tuple[int, ...], mu: tuple[int, ...]) -> int:
    a, b = sum(lam), sum(mu)
    if a != b:
        raise WeightMismatchError(
            f"top composition {lam} has weight {a} but bottom composition {mu} has weight {b}"
        )
    return a


@dataclass(frozen=True)
class Meander:
    n: int
    top: tuple[Optional[int], ...]
    bottom: tuple[Optional[int], ...]

    def __post_init__(self):
        for side in (self.top, self.bottom):
            if len(side) != self.n:
                raise ValueError("partner arrays must have length n")
            for v, w in enumerate(side):
                if w is None:
                    continue
                if w == v or not 0 <= w < self.n or side[w] != v:
                    raise ValueError(f"pairing is not a fixed-point-free involution at vertex {v + 1}")

    @staticmethod
    def _edges(side) -> list[tuple[int, int]]:
        return [(v + 1, w + 1) for v, w in enumerate(side) if w is not None and v < w]

    @property
    def top_edges(self) -> list[tuple[int, int]]:
        """Top edges as 1-based (left, right) pairs, ordered by left endpoint."""
        return self._edges(self.top)

    @property
    def bottom_edges(self) -> list[tuple[int, int]]:
        return self._edges(self.bottom)

    def _arrays(self) -> tuple[list[int], list[int]]:
        top = [-1 if w is None else w for w in self.top]
        bottom = [-1 if w is None else w for w in self.bottom]
        return top, bottom


def build_meander(lam: PartsLike, mu: PartsLike) -> Meander:
    """Meander of the seaweed of type lam/mu (top edges from lam, bottom from mu)."""
    lam_p, mu_p = _parts(lam), _parts(mu)
    n = _check_weights(lam_p, mu_p)

    def side(parts):
        return tuple(None if w < 0 else w for w in kernels.block_partners(parts, n))

    return Meander(n, side(lam_p), side(mu_p))


def count_components(m: Meander) -> ComponentCount:
    """Cycles and paths of the meander; isolated vertices count as paths."""
    if m.n == 0:
        return ComponentCount(0, 0)
    top, bottom = m._arrays()
    return ComponentCount(*kernels.components(top, bottom))


def seaweed_index(lam: PartsLike, mu: PartsLike) -> int:
    """2 * cycles + paths - 1; the empty pair has index -1."""
    c = count_components(build_meander(lam, mu))
    return 2 * c.cycles + c.paths - 1


def _ops(lam: PartsLike, mu: PartsLike) -> tuple[int, int]:
    lam_p, mu_p = _parts(lam), _parts(mu)
    n = _check_weights(lam_p, mu_p)
    if n < 1:
        raise ValueError("compositions must have positive weight")
    return sum(p & 1 for p in lam_p), sum(p & 1 for p in mu_p)


def path_count_formula(lam: PartsLike, mu: PartsLike) -> int:
    """Number of paths predicted from the odd-part counts alone."""
    a, b = _ops(lam, mu)
    return (a + b) // 2


def index_parity(lam: PartsLike, mu: PartsLike) -> int:
    """Parity of the index from odd-part counts, without building the graph."""
    a, b = _ops(lam, mu)
    return ((a + b) // 2 - 1) % 2


# -- rendering ---------------------------------------------------------------

_SPACING = 40
_MARGIN = 20
_ARC_SCALE = 0.5  # arc height per unit of horizontal span


def _render_svg(m: Meander) -> str:
    spans = [b - a for a, b in m.top_edges + m.bottom_edges] or [0]
    reach = _ARC_SCALE * _SPACING * max(spans) + _MARGIN
    width = 2 * _MARGIN + _SPACING * max(m.n - 1, 0)
    height = 2 * reach
    base = reach

    def x(v):
        return _MARGIN + _SPACING * (v - 1)

    lines = [
        '<?xml version="1.0" encoding="UTF-8"?>',
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{width:g}" height="{height:g}" '
        f'viewBox="0 0 {width:g} {height:g}">',
        '<g fill="none" stroke="black" stroke-width="1.5">',
    ]
    for cls, edges, sign in (("top", m.top_edges, -1), ("bottom", m.bottom_edges, 1)):
        for a, b in edges:
            h = _ARC_SCALE * _SPACING * (b - a)
            # cubic with both controls at 4/3 h peaks at exactly h
            cy = base + sign * h * 4 / 3
            lines.append(
                f'<path class="{cls}" d="M {x(a):g} {base:g} C {x(a):g} {cy:g} '
                f'{x(b):g} {cy:g} {x(b):g} {base:g}"/>'
            )
    lines.append("</g>")
    lines.append('<g fill="black">')
    for v in range(1, m.n + 1):
        lines.append(f'<circle class="vertex" cx="{x(v):g}" cy="{base:g}" r="3"/>')
    lines.append("</g>")
    lines.append("</svg>")
    return "\n".join(lines) + "\n"


def _render_tikz(m: Meander) -> str:
    lines = ["\\begin{tikzpicture}"]
    for v in range(m.n):
        lines.append(f"\\filldraw ({v},0) circle (.5mm);")
    for edges, sign in ((m.top_edges, 1), (m.bottom_edges, -1)):
        for a, b in edges:
            h = sign * _ARC_SCALE * (b - a) * 4 / 3
            lines.append(
                f"\\draw ({a - 1},0) .. controls ({a - 1},{h:g}) and ({b - 1},{h:g}) .. ({b - 1},0);"
            )
    lines.append("\\end{tikzpicture}")
    return "\n".join(lines) + "\n"


def render_meander(m: Meander, format: str = "svg") -> str:
    """Draw the meander as standalone SVG or as a bare tikzpicture."""
    fmt = format.lower()
    if fmt == "svg":
        return _render_svg(m)
    if fmt in ("tikz", "tex"):
        return _render_tikz(m)
    raise ValueError(f"unknown format {format!r}; expected 'svg' or 'tikz'")
