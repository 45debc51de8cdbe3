"""Extension constructions and the tests that decide when they are simple.

* reflections of a polytope at a halfspace, and the iterated reflections that
  give a 2k-facet simple extension of the regular 2^k-gon;
* homogenisation cones, their weak/strong simplicity and product cones;
* the disjunctive extension of ``conv(P1 u P2)``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations
from typing import Sequence

import numpy as np

from . import lp
from .errors import DimensionMismatch, EmptyIntersection, InputError, NotPointed, ToleranceFailure
from .linalg import Vec, affine_rank, dot, nullspace, rank, rat, rref, vec
from .polytope import (
    HPolytope,
    Projection,
    VPolytope,
    _primitive,
    affine_dimension,
    enumerate_vertices,
    facet_description,
    is_simple,
)


@dataclass(frozen=True)
class Halfspace:
    """``{x : normal . x <= rhs}``."""

    normal: Vec
    rhs: Fraction

    def __post_init__(self):
        object.__setattr__(self, "normal", vec(self.normal))
        object.__setattr__(self, "rhs", rat(self.rhs))
        if not any(self.normal):
            raise InputError("halfspace normal must be nonzero")

    def reflect(self, x: Sequence[Fraction]) -> Vec:
        a = self.normal
        t = 2 * (dot(a, x) - self.rhs) / dot(a, a)
        return tuple(xi - t * ai for xi, ai in zip(x, a))


@dataclass(frozen=True)
class Extension:
    Q: HPolytope
    projection: Projection
    notes: dict = field(default_factory=dict, compare=False)


def _cut(P: HPolytope, h: Halfspace) -> HPolytope:
    P1 = P.with_inequality(h.normal, h.rhs)
    A_ub = [list(a) for a, _ in P1.inequalities]
    b_ub = [b for _, b in P1.inequalities]
    E = [list(a) for a, _ in P1.equations]
    e = [b for _, b in P1.equations]
    if not lp.feasible(E, e, A_ub, b_ub, n=P.ambient_dim, free=range(P.ambient_dim)):
        raise EmptyIntersection("P does not meet the halfspace")
    return P1


def reflection_extension(P: HPolytope, h: Halfspace) -> Extension:
    """Extension of the reflection ``conv(P1 u reflect(P1))`` in ``R^{2n}``.

    Variables are ordered ``(x, y)``; ``y`` ranges over P, ``x`` is its
    image. The condition ``x - y in lin(a)`` becomes ``n - 1`` equations
    from a basis of the orthogonal complement of ``a``.
    """
    n = P.ambient_dim
    if len(h.normal) != n:
        raise DimensionMismatch("halfspace and polytope live in different spaces")
    _cut(P, h)
    zero = (Fraction(0),) * n
    a = h.normal
    ineqs = [(zero + A, b) for A, b in P.inequalities]
    ineqs.append((tuple(-x for x in a) + a, Fraction(0)))  # <a,y> <= <a,x>
    ineqs.append((a + a, 2 * h.rhs))  # <a,x> <= 2 beta - <a,y>
    eqs = [(zero + E, b) for E, b in P.equations]
    for c in nullspace([a], n):
        eqs.append((c + tuple(-x for x in c), Fraction(0)))
    Q = HPolytope(2 * n, tuple(ineqs), tuple(eqs))
    return Extension(Q, Projection.coordinates(2 * n, range(n)))


@dataclass(frozen=True)
class ReflectionVerdict:
    simple: bool
    branch: str
    p1_simple: bool
    p1_dim: int
    f_dim: int
    enumerated_simple: bool | None = None


def reflection_simplicity(P: HPolytope, h: Halfspace, cross_check: bool = False) -> ReflectionVerdict:
    """Decide whether the reflection extension is simple without building it.

    Simple iff ``P1 = P n H<=`` is simple and ``F = P1 n H=`` is empty, all
    of ``P1``, or a facet of ``P1``.
    """
    P1 = _cut(P, h)
    V1, inc1 = enumerate_vertices(P1)
    d = inc1.dim
    F = [v for v in V1.vertices if dot(h.normal, v) == h.rhs]
    k = affine_rank(F)
    p1_simple = is_simple(inc1)
    if not p1_simple:
        branch, ok = "P1 not simple", False
    elif len(F) == len(V1.vertices):
        branch, ok = "P1 = F", True
    elif not F:
        branch, ok = "F empty", True
    elif k == d - 1:
        branch, ok = "F facet of P1", True
    else:
        branch, ok = "F proper face, not a facet", False
    enumerated = None
    if cross_check:
        _, incQ = enumerate_vertices(reflection_extension(P, h).Q)
        enumerated = is_simple(incQ)
    return ReflectionVerdict(ok, branch, p1_simple, d, k, enumerated)


# regular 2^k-gons ---------------------------------------------------------


@dataclass
class GonReport:
    k: int
    facet_count: int
    inequality_count: int
    vertex_count: int
    dim: int
    simple: bool
    projected: list[tuple[float, float]]
    matches_regular_gon: bool
    max_match_error: float

    def to_json(self) -> dict:
        return {
            "k": self.k,
            "facet_count": self.facet_count,
            "inequality_count": self.inequality_count,
            "vertex_count": self.vertex_count,
            "dim": self.dim,
            "simple": self.simple,
            "matches_regular_gon": self.matches_regular_gon,
            "max_match_error": self.max_match_error,
        }


def reflection_angle(i: int, k: int) -> float:
    """Angle of the i-th mirror line (0-based) in the 2^k-gon construction.

    The mirror sits halfway between the last vertex built so far,
    at angle ``(2^i - 1) * 2pi/2^k``, and its image.
    """
    return (2 ** (i + 1) - 1) * math.pi / 2**k


def build_gon_extension(k: int, tol: float = 1e-9, match_tol: float = 1e-7):
    """Simple extension of the regular 2^k-gon with 2k inequalities.

    Each reflection adds one scalar ``t`` and moves the planar point by
    ``t * a`` where ``a`` is the unit mirror normal, so Q lives in R^{2+k}:
    two pinned base coordinates plus one coordinate per reflection.
    """
    if not 2 <= k <= 6:
        raise InputError("k must satisfy 2 <= k <= 6")
    n = 2 + k
    normals = []
    for i in range(k):
        th = reflection_angle(i, k)
        normals.append((Fraction(-math.sin(th)), Fraction(math.cos(th))))
    # planar point p(z) = (x0, y0) + sum_j t_j a_j
    proj_rows = (
        (Fraction(1), Fraction(0)) + tuple(a[0] for a in normals),
        (Fraction(0), Fraction(1)) + tuple(a[1] for a in normals),
    )
    ineqs = []
    for i, a in enumerate(normals):
        lower = [Fraction(0)] * n
        lower[2 + i] = Fraction(-1)  # t_i >= 0
        ineqs.append((tuple(lower), Fraction(0)))
        # 2 <a, p_before> + t_i <= 0, where p_before uses t_0..t_{i-1}
        upper = [2 * (a[0] * proj_rows[0][c] + a[1] * proj_rows[1][c]) for c in range(n)]
        for c in range(2 + i, n):
            upper[c] = Fraction(0)
        upper[2 + i] = Fraction(1)
        ineqs.append((tuple(upper), Fraction(0)))
    unit = lambda c: tuple(Fraction(int(j == c)) for j in range(n))  # noqa: E731
    Q = HPolytope(n, tuple(ineqs), ((unit(0), Fraction(1)), (unit(1), Fraction(0))))
    proj = Projection(proj_rows, (Fraction(0), Fraction(0)))

    verts, facets, dim = float_enumerate(Q, tol)
    counts = [sum(j in f for f in facets) for j in range(len(verts))]
    M = np.array([[float(x) for x in r] for r in proj_rows])
    projected = [tuple(M @ v) for v in verts]
    m = 2**k
    target = [(math.cos(2 * math.pi * j / m), math.sin(2 * math.pi * j / m)) for j in range(m)]
    ok, err = _match_sets(projected, target, match_tol)
    report = GonReport(
        k=k,
        facet_count=len(facets),
        inequality_count=len(Q.inequalities),
        vertex_count=len(verts),
        dim=dim,
        simple=all(c == dim for c in counts),
        projected=[(float(x), float(y)) for x, y in projected],
        matches_regular_gon=ok,
        max_match_error=err,
    )
    return Q, proj, report


def _match_sets(found, target, tol):
    if len(found) != len(target):
        return False, math.inf
    used, worst = set(), 0.0
    for p in target:
        dists = [(math.dist(p, q), i) for i, q in enumerate(found) if i not in used]
        d, i = min(dists)
        used.add(i)
        worst = max(worst, d)
    return worst <= tol, worst


def float_enumerate(H: HPolytope, tol: float = 1e-9):
    """Vertex/facet enumeration in double precision with explicit tolerances.

    Slacks within ``tol`` (relative) count as tight; anything between ``tol``
    and ``sqrt(tol)`` is ambiguous and raises :class:`ToleranceFailure`.
    Returns ``(vertices, facets, dim)``.
    """
    A = np.array([[float(x) for x in a] for a, _ in H.inequalities])
    b = np.array([float(x) for _, x in H.inequalities])
    E = np.array([[float(x) for x in a] for a, _ in H.equations]).reshape(-1, H.ambient_dim)
    e = np.array([float(x) for _, x in H.equations])
    n = H.ambient_dim
    k = n - len(E)
    loose = math.sqrt(tol)
    verts: list[np.ndarray] = []
    for subset in combinations(range(len(A)), k):
        M = np.vstack([E, A[list(subset)]])
        if abs(np.linalg.det(M)) < 1e-12:
            continue
        x = np.linalg.solve(M, np.concatenate([e, b[list(subset)]]))
        scale = max(1.0, float(np.abs(A).max() * np.abs(x).max()), float(np.abs(b).max()))
        slack = b - A @ x
        worst = slack.min() / scale
        if worst < -loose:
            continue
        if worst < -tol:
            raise ToleranceFailure(f"feasibility of a candidate vertex is ambiguous ({worst:.2e})")
        if any(np.linalg.norm(x - v) <= loose * scale for v in verts):
            continue
        verts.append(x)
    if not verts:
        raise ToleranceFailure("no vertex certified")
    X = np.array(verts)
    dim = int(np.linalg.matrix_rank(X[1:] - X[0], tol=loose)) if len(X) > 1 else 0
    facets = []
    for a_row, b_val in zip(A, b):
        slack = b_val - X @ a_row
        scale = max(1.0, float(np.abs(a_row).max() * np.abs(X).max()), abs(float(b_val)))
        rel = np.abs(slack) / scale
        if np.any((rel > tol) & (rel < loose)):
            raise ToleranceFailure("facet incidence is ambiguous")
        tight = frozenset(int(j) for j in np.nonzero(rel <= tol)[0])
        if not tight or len(tight) == len(X) or tight in facets:
            continue
        pts = X[sorted(tight)]
        r = int(np.linalg.matrix_rank(pts[1:] - pts[0], tol=loose)) if len(pts) > 1 else 0
        if r == dim - 1:
            facets.append(tight)
    return verts, facets, dim


# cones ---------------------------------------------------------------------


@dataclass(frozen=True)
class Cone:
    """Pointed polyhedral cone ``{x : c.x >= 0 for c in facet_normals}``
    intersected with its linear hull (``equations``: ``e.x = 0``).
    """

    ambient_dim: int
    generators: tuple[Vec, ...]
    facet_normals: tuple[Vec, ...]
    equations: tuple[Vec, ...] = ()

    @classmethod
    def from_generators(cls, generators: Sequence[Sequence]) -> "Cone":
        """Cone spanned by ``generators``; facets and extreme rays are recomputed."""
        gens = [vec(g) for g in generators]
        if not gens:
            raise InputError("a cone needs at least one generator")
        n = len(gens[0])
        if any(not any(g) for g in gens):
            raise InputError("zero generator")
        _check_pointed(gens)
        normals = _cone_facets(gens)
        d = rank(gens)
        rays = {}
        for g in gens:
            tight = [c for c in normals if dot(c, g) == 0]
            if d == 1 or rank(tight) == d - 1:
                key = _primitive(g, Fraction(0))[0]
                rays.setdefault(key, key)
        return cls(n, tuple(sorted(rays)), tuple(normals), tuple(nullspace(gens, n)))

    @property
    def dim(self) -> int:
        return rank(self.generators)

    def ray_facet_counts(self) -> list[int]:
        return [sum(dot(c, r) == 0 for c in self.facet_normals) for r in self.generators]


def _check_pointed(gens: list[Vec]) -> None:
    n = len(gens[0])
    A_eq = [[g[k] for g in gens] for k in range(n)] + [[1] * len(gens)]
    if lp.feasible(A_eq, [0] * n + [1], n=len(gens)):
        raise NotPointed("the generators positively span a line")


def _cone_facets(gens: list[Vec]) -> list[Vec]:
    n = len(gens[0])
    red, chart = rref(gens, n)
    d = len(chart)
    local = [tuple(g[c] for c in chart) for g in gens]
    found: dict[frozenset, Vec] = {}
    for subset in combinations(range(len(gens)), d - 1):
        span = [local[i] for i in subset]
        if span and rank(span) < d - 1:
            continue
        normals = nullspace(span, d) if span else [(Fraction(1),)]
        if len(normals) != 1:
            continue
        c = normals[0]
        side = [dot(c, q) for q in local]
        if all(s >= 0 for s in side):
            pass
        elif all(s <= 0 for s in side):
            c = tuple(-x for x in c)
        else:
            continue
        tight = frozenset(j for j, s in enumerate(side) if s == 0)
        if tight in found or len(tight) == len(gens):
            continue
        full = [Fraction(0)] * n
        for idx, col in enumerate(chart):
            full[col] = c[idx]
        found[tight] = _primitive(tuple(full), Fraction(0))[0]
    return [found[t] for t in sorted(found, key=sorted)]


STRONG, WEAK_ONLY, NEITHER = "strong", "weak_only", "neither"


def cone_simplicity(C: Cone) -> str:
    _check_pointed(list(C.generators))
    d = C.dim
    weak = all(c == d - 1 for c in C.ray_facet_counts())
    if len(C.facet_normals) == d:
        return STRONG
    return WEAK_ONLY if weak else NEITHER


def homogenize(P: VPolytope) -> Cone:
    """``cone(P x {1})`` with facets lifted from the facets of P."""
    H, _ = facet_description(P)
    gens = tuple(v + (Fraction(1),) for v in P.vertices)
    normals = tuple(tuple(-x for x in a) + (b,) for a, b in H.inequalities)
    if not normals:
        # P is a point: the single facet of a ray is its apex
        normals = ((Fraction(0),) * P.ambient_dim + (Fraction(1),),)
    eqs = tuple(e + (-g,) for e, g in H.equations)
    return Cone(P.ambient_dim + 1, gens, normals, eqs)


@dataclass(frozen=True)
class LemmaCheck:
    direct_weak: bool
    predicted_weak: bool

    @property
    def agrees(self) -> bool:
        return self.direct_weak == self.predicted_weak


def product_cone(C1: Cone, C2: Cone) -> tuple[Cone, LemmaCheck]:
    """Cartesian product; the check recomputes weak simplicity from scratch."""
    _check_pointed(list(C1.generators))
    _check_pointed(list(C2.generators))
    z1 = (Fraction(0),) * C1.ambient_dim
    z2 = (Fraction(0),) * C2.ambient_dim
    gens = tuple(r + z2 for r in C1.generators) + tuple(z1 + s for s in C2.generators)
    normals = tuple(c + z2 for c in C1.facet_normals) + tuple(z1 + c for c in C2.facet_normals)
    eqs = tuple(e + z2 for e in C1.equations) + tuple(z1 + e for e in C2.equations)
    C = Cone(C1.ambient_dim + C2.ambient_dim, gens, normals, eqs)
    recomputed = Cone.from_generators(gens)
    direct = cone_simplicity(recomputed) != NEITHER
    predicted = cone_simplicity(C1) == STRONG and cone_simplicity(C2) == STRONG
    return C, LemmaCheck(direct, predicted)


def _homog_rows(P: VPolytope):
    H, _ = facet_description(P)
    ineqs = [(a, b) for a, b in H.inequalities]
    return ineqs, list(H.equations)


def disjunctive_extension(P1: VPolytope, P2: VPolytope) -> Extension:
    """``{(x1, l1, x2, l2) in homog P1 x homog P2 : l1 + l2 = 1}`` with ``pi = x1 + x2``."""
    if P1.ambient_dim != P2.ambient_dim:
        raise DimensionMismatch("P1 and P2 must share the ambient space")
    n = P1.ambient_dim
    width = n + 1
    total = 2 * width

    def place(row, block):
        out = [Fraction(0)] * total
        out[block * width : (block + 1) * width] = row
        return tuple(out)

    ineqs, eqs = [], []
    for block, P in enumerate((P1, P2)):
        rows, hull = _homog_rows(P)
        for a, b in rows:
            ineqs.append((place(a + (-b,), block), Fraction(0)))
        for e, g in hull:
            eqs.append((place(e + (-g,), block), Fraction(0)))
        lam = [Fraction(0)] * width
        lam[-1] = Fraction(-1)
        ineqs.append((place(tuple(lam), block), Fraction(0)))
    both = [Fraction(0)] * total
    both[n] = both[total - 1] = Fraction(1)
    eqs.append((tuple(both), Fraction(1)))
    Q = HPolytope(total, tuple(ineqs), tuple(eqs))
    matrix = tuple(
        tuple(Fraction(int(c % width == r and c % width != n)) for c in range(total)) for r in range(n)
    )
    return Extension(Q, Projection(matrix, (Fraction(0),) * n))


def is_simplex(P: VPolytope) -> bool:
    return len(P) == affine_dimension(P) + 1


def disjunctive_simplicity(P1: VPolytope, P2: VPolytope) -> bool:
    if P1.ambient_dim != P2.ambient_dim:
        raise DimensionMismatch("P1 and P2 must share the ambient space")
    return is_simplex(P1) and is_simplex(P2)
