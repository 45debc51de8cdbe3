"""Exact-rational polytope kernel.

H- and V-descriptions, brute-force vertex and facet enumeration, incidence,
simplicity, face lattices and 1-skeletons. Everything is sized for small
("desk scale") instances and favours obvious correctness over speed.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from itertools import combinations
from math import comb
from typing import Iterable, Sequence

from . import lp
from .config import Budget, default_budget
from .errors import Infeasible, InputError, TooLarge, Unbounded
from .graph import SkeletonGraph
from .linalg import Vec, affine_rank, dot, nullspace, rank, rat, rref, solve_unique, sub, vec

Row = tuple[Vec, Fraction]


def _row(normal, rhs) -> Row:
    return vec(normal), rat(rhs)


@dataclass(frozen=True)
class HPolytope:
    """``{x : a.x <= b for inequalities, a.x = b for equations}``."""

    ambient_dim: int
    inequalities: tuple[Row, ...]
    equations: tuple[Row, ...] = ()

    def __post_init__(self):
        n = self.ambient_dim
        ineqs = []
        for a, b in (_row(a, b) for a, b in self.inequalities):
            if len(a) != n:
                raise InputError(f"inequality of length {len(a)} in R^{n}")
            if any(a) or b < 0:
                ineqs.append((a, b))  # an all-zero row with b < 0 marks infeasibility
        eqs = [_row(a, b) for a, b in self.equations]
        if any(len(a) != n for a, _ in eqs):
            raise InputError("equation of wrong length")
        object.__setattr__(self, "inequalities", tuple(ineqs))
        object.__setattr__(self, "equations", _reduce_equations(eqs, n))

    @classmethod
    def from_matrix(cls, A, b, E=(), e=()) -> "HPolytope":
        A = [vec(r) for r in A]
        n = len(A[0]) if A else len(E[0])
        return cls(n, tuple(zip(A, b)), tuple(zip(E, e)))

    def with_inequality(self, normal, rhs) -> "HPolytope":
        return HPolytope(self.ambient_dim, self.inequalities + (_row(normal, rhs),), self.equations)

    def with_equation(self, normal, rhs) -> "HPolytope":
        return HPolytope(self.ambient_dim, self.inequalities, self.equations + (_row(normal, rhs),))

    def contains(self, x: Sequence[Fraction]) -> bool:
        return all(dot(a, x) <= b for a, b in self.inequalities) and all(
            dot(a, x) == b for a, b in self.equations
        )


def _reduce_equations(eqs: list[Row], n: int) -> tuple[Row, ...]:
    if not eqs:
        return ()
    red, pivots = rref([list(a) + [b] for a, b in eqs], n + 1)
    if n in pivots:
        # 0 = 1: keep a single contradictory row so enumeration reports Infeasible
        return ((tuple(Fraction(0) for _ in range(n)), Fraction(1)),)
    return tuple((tuple(r[:n]), r[n]) for r in red)


@dataclass(frozen=True)
class VPolytope:
    """A vertex list, sorted lexicographically and deduplicated."""

    ambient_dim: int
    vertices: tuple[Vec, ...]

    def __post_init__(self):
        verts = sorted(set(vec(v) for v in self.vertices))
        if any(len(v) != self.ambient_dim for v in verts):
            raise InputError("vertex of wrong length")
        object.__setattr__(self, "vertices", tuple(verts))

    @classmethod
    def of(cls, points: Iterable[Sequence]) -> "VPolytope":
        pts = [vec(p) for p in points]
        if not pts:
            raise Infeasible("empty vertex list")
        return cls(len(pts[0]), tuple(pts))

    @classmethod
    def hull(cls, points: Iterable[Sequence]) -> "VPolytope":
        """Like :meth:`of`, but drops points that are not vertices."""
        pts = sorted(set(vec(p) for p in points))
        keep = [p for i, p in enumerate(pts) if not _in_hull(p, pts[:i] + pts[i + 1 :])]
        return cls.of(keep)

    def __len__(self) -> int:
        return len(self.vertices)

    def index(self, point: Sequence) -> int:
        return self.vertices.index(vec(point))


def _in_hull(p: Vec, points: Sequence[Vec]) -> bool:
    if not points:
        return False
    n = len(p)
    A_eq = [[q[k] for q in points] for k in range(n)] + [[1] * len(points)]
    return lp.feasible(A_eq, list(p) + [1], n=len(points))


@dataclass(frozen=True)
class IncidenceStructure:
    """Facet-vertex incidences: ``facets[i]`` is the set of vertex indices on facet i."""

    facets: tuple[frozenset[int], ...]
    vertex_count: int
    dim: int
    facet_inequalities: tuple[Row, ...] = field(default=(), compare=False)

    @property
    def facet_count(self) -> int:
        return len(self.facets)

    @property
    def incident(self) -> list[list[bool]]:
        return [[j in f for j in range(self.vertex_count)] for f in self.facets]

    def vertex_facets(self, j: int) -> frozenset[int]:
        return frozenset(i for i, f in enumerate(self.facets) if j in f)

    def column_counts(self) -> list[int]:
        counts = [0] * self.vertex_count
        for f in self.facets:
            for j in f:
                counts[j] += 1
        return counts


def affine_dimension(V: VPolytope) -> int:
    if not V.vertices:
        raise Infeasible("empty polytope has no dimension")
    return affine_rank(V.vertices)


def is_simple(inc: IncidenceStructure) -> bool:
    return all(c == inc.dim for c in inc.column_counts())


def check_bounded(H: HPolytope) -> None:
    """Raise :class:`Unbounded` if the recession cone is nontrivial."""
    n = H.ambient_dim
    A_ub = [list(a) for a, _ in H.inequalities]
    E = [list(a) for a, _ in H.equations]
    for i in range(n):
        for sign in (1, -1):
            unit = [Fraction(0)] * n
            unit[i] = Fraction(sign)
            res = lp.solve([0] * n, E + [unit], [0] * len(E) + [1], A_ub, [0] * len(A_ub), free=range(n))
            if res.status == lp.OPTIMAL:
                raise Unbounded(f"recession direction {res.x}")


def incidence_from_vertices(
    vertices: Sequence[Vec], rows: Sequence[Row], dim: int | None = None
) -> IncidenceStructure:
    """Facets among ``rows`` (valid inequalities), identified by their tight vertex sets."""
    if dim is None:
        dim = affine_rank(vertices)
    everything = frozenset(range(len(vertices)))
    seen: dict[frozenset[int], Row] = {}
    for a, b in rows:
        tight = frozenset(j for j, v in enumerate(vertices) if dot(a, v) == b)
        if not tight or tight == everything or tight in seen:
            continue
        if affine_rank([vertices[j] for j in sorted(tight)]) == dim - 1:
            seen[tight] = (a, b)
    order = sorted(seen, key=lambda s: sorted(s))
    return IncidenceStructure(tuple(order), len(vertices), dim, tuple(seen[s] for s in order))


def enumerate_vertices(H: HPolytope, budget: Budget | None = None) -> tuple[VPolytope, IncidenceStructure]:
    """All vertices of a bounded H-polytope plus the exact facet incidences.

    Every choice of ``n - rank(equations)`` inequalities is solved as an
    equality system; unique, feasible solutions are the vertices.
    """
    budget = budget or default_budget()
    n = H.ambient_dim
    eq_rows = [list(a) for a, _ in H.equations]
    eq_rhs = [b for _, b in H.equations]
    if any(not any(a) and b != 0 for a, b in H.equations) or any(
        not any(a) and b < 0 for a, b in H.inequalities
    ):
        raise Infeasible("contradictory constraint")
    k = n - len(eq_rows)
    m = len(H.inequalities)
    A_ub = [list(a) for a, _ in H.inequalities]
    if not lp.feasible(eq_rows, eq_rhs, A_ub, [b for _, b in H.inequalities], n=n, free=range(n)):
        raise Infeasible("empty polytope")
    check_bounded(H)
    if comb(m, k) > budget.subsets:
        raise TooLarge(f"{comb(m, k)} constraint subsets exceed budget {budget.subsets}")
    found = set()
    for subset in combinations(range(m), k):
        rows = eq_rows + [list(H.inequalities[i][0]) for i in subset]
        rhs = eq_rhs + [H.inequalities[i][1] for i in subset]
        x = solve_unique(rows, rhs) if rows else ()
        if x is None or x in found:
            continue
        if all(dot(a, x) <= b for a, b in H.inequalities):
            found.add(x)
    if not found:
        raise Infeasible("no feasible vertex")
    V = VPolytope(n, tuple(found))
    inc = incidence_from_vertices(V.vertices, H.inequalities)
    return V, inc


def _coordinate_chart(points: Sequence[Vec]) -> list[int]:
    """Coordinates on which the projection is injective over the affine hull."""
    p0 = points[0]
    diffs = [sub(p, p0) for p in points[1:]]
    if not diffs:
        return []
    return rref(diffs, len(p0))[1]


def facet_description(V: VPolytope, budget: Budget | None = None) -> tuple[HPolytope, IncidenceStructure]:
    """Facets of ``conv(V)`` by brute-force hyperplane search.

    Works in a coordinate chart of the affine hull; every ``d``-subset of
    affinely independent vertices spans a candidate hyperplane which is kept
    when all vertices lie on one side.
    """
    budget = budget or default_budget()
    pts = V.vertices
    n = V.ambient_dim
    p0 = pts[0]
    chart = _coordinate_chart(pts)
    d = len(chart)
    diffs = [sub(p, p0) for p in pts[1:]]
    hull_eqs = [(c, dot(c, p0)) for c in nullspace(diffs, n)] if diffs else [
        (tuple(Fraction(int(i == j)) for j in range(n)), p0[i]) for i in range(n)
    ]
    if d == 0:
        H = HPolytope(n, (), tuple(hull_eqs))
        return H, IncidenceStructure((), 1, 0)
    if comb(len(pts), d) > budget.subsets:
        raise TooLarge(f"{comb(len(pts), d)} vertex subsets exceed budget")
    local = [tuple(p[c] for c in chart) for p in pts]
    rows = []
    seen = set()
    for subset in combinations(range(len(pts)), d):
        base = local[subset[0]]
        span = [sub(local[i], base) for i in subset[1:]]
        if d > 1 and rank(span) < d - 1:
            continue
        normals = nullspace(span, d) if span else [tuple(Fraction(int(j == 0)) for j in range(d))]
        if len(normals) != 1:
            continue
        c = normals[0]
        beta = dot(c, base)
        side = [dot(c, q) - beta for q in local]
        if all(s <= 0 for s in side):
            pass
        elif all(s >= 0 for s in side):
            c, beta = tuple(-x for x in c), -beta
        else:
            continue
        tight = frozenset(j for j, q in enumerate(local) if dot(c, q) == beta)
        if tight in seen or len(tight) == len(pts):
            continue
        seen.add(tight)
        full = [Fraction(0)] * n
        for idx, col in enumerate(chart):
            full[col] = c[idx]
        rows.append((_primitive(tuple(full), beta)))
    H = HPolytope(n, tuple(rows), tuple(hull_eqs))
    inc = incidence_from_vertices(pts, H.inequalities, d)
    return H, inc


def _primitive(a: Vec, b: Fraction) -> Row:
    """Scale a row to coprime integers (sign preserved)."""
    from math import gcd, lcm

    den = 1
    for x in (*a, b):
        den = lcm(den, x.denominator)
    ints = [int(x * den) for x in (*a, b)]
    g = 0
    for x in ints:
        g = gcd(g, x)
    g = g or 1
    return tuple(Fraction(x // g) for x in ints[:-1]), Fraction(ints[-1] // g)


def v_adjacency(V: VPolytope, i: int, j: int) -> bool:
    """Whether ``[v_i, v_j]`` is an edge of ``conv(V)``.

    Minimise the weight on ``{v_i, v_j}`` over convex representations of the
    midpoint; the segment is an edge exactly when that minimum is 1.
    """
    if i == j:
        raise InputError("adjacency needs two distinct vertices")
    pts = V.vertices
    mid = tuple((a + b) / 2 for a, b in zip(pts[i], pts[j]))
    N = len(pts)
    A_eq = [[p[k] for p in pts] for k in range(V.ambient_dim)] + [[1] * N]
    b_eq = list(mid) + [1]
    cost = [int(t in (i, j)) for t in range(N)]
    res = lp.solve(cost, A_eq, b_eq)
    return res.status == lp.OPTIMAL and res.value == 1


def skeleton(V: VPolytope, budget: Budget | None = None) -> SkeletonGraph:
    budget = budget or default_budget()
    if len(V) > budget.vertices:
        raise TooLarge(f"{len(V)} vertices exceed skeleton budget {budget.vertices}")
    N = len(V)
    edges = [(i, j) for i in range(N) for j in range(i + 1, N) if v_adjacency(V, i, j)]
    return SkeletonGraph.from_edges(N, edges, V.vertices)


def incidence_adjacency(inc: IncidenceStructure, i: int, j: int) -> bool:
    """Edge test from incidences alone: the smallest face through both is ``{i, j}``."""
    face = frozenset(range(inc.vertex_count))
    for f in inc.facets:
        if i in f and j in f:
            face &= f
    return i != j and face == {i, j}


def skeleton_from_incidence(inc: IncidenceStructure, labels: Sequence = ()) -> SkeletonGraph:
    N = inc.vertex_count
    edges = [(i, j) for i in range(N) for j in range(i + 1, N) if incidence_adjacency(inc, i, j)]
    return SkeletonGraph.from_edges(N, edges, labels)


@dataclass(frozen=True)
class FaceLattice:
    """All faces as vertex bitmasks, ordered by (dimension, sorted vertices).

    ``faces[0]`` is the empty face and ``faces[-1]`` the polytope itself.
    ``facets_of[k]`` lists the facet indices whose intersection is face k.
    """

    faces: tuple[int, ...]
    dims: tuple[int, ...]
    facets_of: tuple[frozenset[int], ...]
    vertex_count: int
    dim: int

    @cached_property
    def _index(self) -> dict[int, int]:
        return {m: k for k, m in enumerate(self.faces)}

    def __len__(self) -> int:
        return len(self.faces)

    def vertex_set(self, k: int) -> frozenset[int]:
        m = self.faces[k]
        return frozenset(j for j in range(self.vertex_count) if m >> j & 1)

    def index_of(self, vertices: Iterable[int]) -> int:
        """Face id of a vertex set; KeyError if it is not a face."""
        return self._index[_mask(vertices)]

    def is_face(self, vertices: Iterable[int]) -> bool:
        return _mask(vertices) in self._index

    def subfaces(self, k: int) -> list[int]:
        m = self.faces[k]
        return [i for i, g in enumerate(self.faces) if g & m == g]

    def facet_ids(self) -> list[int]:
        return [k for k, d in enumerate(self.dims) if d == self.dim - 1]

    def edge_ids(self) -> list[int]:
        return [k for k, d in enumerate(self.dims) if d == 1]

    def f_vector(self) -> list[int]:
        counts = [0] * (self.dim + 2)
        for d in self.dims:
            counts[d + 1] += 1
        return counts


def _mask(vertices: Iterable[int]) -> int:
    m = 0
    for j in vertices:
        m |= 1 << j
    return m


def face_lattice(inc: IncidenceStructure, budget: Budget | None = None) -> FaceLattice:
    budget = budget or default_budget()
    full = (1 << inc.vertex_count) - 1
    facet_masks = [_mask(f) for f in inc.facets]
    faces = {full: frozenset()}
    frontier = [full]
    while frontier:
        nxt = []
        for m in frontier:
            for fi, fm in enumerate(facet_masks):
                g = m & fm
                if g not in faces:
                    faces[g] = frozenset()
                    nxt.append(g)
                    if len(faces) > budget.lattice:
                        raise TooLarge(f"face lattice exceeds {budget.lattice} faces")
        frontier = nxt
    faces.setdefault(0, frozenset())
    # each face is the intersection of the facets containing it
    annotated = {m: frozenset(i for i, fm in enumerate(facet_masks) if m & fm == m) for m in faces}
    annotated[full] = frozenset()

    dims: dict[int, int] = {0: -1}

    def dim_of(m: int) -> int:
        if m in dims:
            return dims[m]
        if m == full:
            dims[m] = inc.dim
            return inc.dim
        # dimension = 1 + dimension of any maximal proper subface
        subs = {m & fm for fm in facet_masks if m & fm != m}
        maximal = max(subs, key=lambda g: bin(g).count("1"))
        dims[m] = 1 + dim_of(maximal)
        return dims[m]

    for m in sorted(faces, key=lambda x: bin(x).count("1")):
        dim_of(m)
    dims[full] = inc.dim

    def key(m):
        return (dims[m], [j for j in range(inc.vertex_count) if m >> j & 1])

    order = sorted(faces, key=key)
    return FaceLattice(
        tuple(order),
        tuple(dims[m] for m in order),
        tuple(annotated[m] for m in order),
        inc.vertex_count,
        inc.dim,
    )


@dataclass(frozen=True)
class Projection:
    """Affine map ``x -> matrix @ x + offset``."""

    matrix: tuple[Vec, ...]
    offset: Vec

    @classmethod
    def coordinates(cls, source_dim: int, keep: Sequence[int]) -> "Projection":
        rows = tuple(tuple(Fraction(int(c == k)) for c in range(source_dim)) for k in keep)
        return cls(rows, tuple(Fraction(0) for _ in keep))

    @property
    def source_dim(self) -> int:
        return len(self.matrix[0]) if self.matrix else 0

    @property
    def target_dim(self) -> int:
        return len(self.matrix)

    def __call__(self, x: Sequence[Fraction]) -> Vec:
        return tuple(dot(row, x) + o for row, o in zip(self.matrix, self.offset))
