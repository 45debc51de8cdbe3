"""Fixed instances used by the tests, the acceptance suite and the CLI."""

from __future__ import annotations

from fractions import Fraction

from .families import DagDesc
from .polytope import Projection, VPolytope, facet_description

# columns m1..m7 of a 3-dimensional polytope whose projection to the first
# two coordinates is a hexagon; m4 sits over the hexagon's interior
EXAMPLE_M = (
    (1, 5, 1, 0, -1, -5, -1),
    (1, 0, -1, 0, 1, 0, -1),
    (0, -4, 0, 1, 0, -4, 0),
)


def example_points() -> dict[str, tuple[Fraction, ...]]:
    return {f"m{j + 1}": tuple(Fraction(row[j]) for row in EXAMPLE_M) for j in range(7)}


def example_extension():
    """``(P, Q_H, projection, names)``; ``names[i]`` labels vertex i of conv(m1..m7)."""
    pts = example_points()
    Qv = VPolytope.of(pts.values())
    names = {Qv.index(p): name for name, p in pts.items()}
    Q_H, _ = facet_description(Qv)
    proj = Projection.coordinates(3, (0, 1))
    P = VPolytope.hull(proj(p) for p in Qv.vertices)
    return P, Q_H, proj, [names[i] for i in range(len(Qv))]


def _dag(n, arcs, s=0, t=None):
    return DagDesc(n, tuple(arcs), s, n - 1 if t is None else t)


# DAGs where every inner node is avoided by some s-t path
NON_DECOMPOSABLE = {
    "diamond": _dag(4, [(0, 1), (0, 2), (1, 3), (2, 3)]),
    "triangle_chord": _dag(4, [(0, 1), (0, 2), (1, 2), (1, 3), (2, 3)]),
    # spindle x -> {p, q} -> y with a bypass that re-enters inside the spindle
    "spindle_reentry": _dag(
        7, [(0, 1), (1, 2), (1, 3), (2, 4), (3, 4), (4, 6), (0, 5), (5, 2), (5, 6)]
    ),
    # spindle x -> {p, q} -> y with a bypass that rejoins after it
    "spindle_bypass": _dag(6, [(0, 1), (1, 2), (1, 3), (2, 4), (3, 4), (4, 5), (0, 5)]),
    "grid_3x3": _dag(
        9,
        [(0, 1), (1, 2), (3, 4), (4, 5), (6, 7), (7, 8), (0, 3), (3, 6), (1, 4), (4, 7), (2, 5), (5, 8)],
    ),
    "layered_3_2": _dag(7, [(0, a) for a in (1, 2, 3)] + [(a, b) for a in (1, 2, 3) for b in (4, 5)] + [(4, 6), (5, 6)]),
    "parallel_arcs": _dag(3, [(0, 2), (0, 2), (0, 1), (1, 2)]),
}

# DAGs with an inner node every s-t path passes through
DECOMPOSABLE = {
    "two_diamonds": _dag(7, [(0, 1), (0, 2), (1, 3), (2, 3), (3, 4), (3, 5), (4, 6), (5, 6)]),
    "parallel_pairs": _dag(3, [(0, 1), (0, 1), (1, 2), (1, 2)]),
    "three_diamonds": _dag(
        10,
        [(0, 1), (0, 2), (1, 3), (2, 3), (3, 4), (3, 5), (4, 6), (5, 6), (6, 7), (6, 8), (7, 9), (8, 9)],
    ),
    "diamond_then_chord": _dag(7, [(0, 1), (0, 2), (1, 3), (2, 3), (3, 4), (3, 5), (4, 5), (4, 6), (5, 6)]),
}
