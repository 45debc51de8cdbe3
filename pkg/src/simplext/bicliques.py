"""Face/vertex bicliques induced by the facets of an extension.

For a facet f of an extension Q of P, the induced faces are the faces F of P
whose whole preimage lies in f, and the induced vertices are the vertices
of P with some preimage vertex off f. Faces are handled purely through
their vertex sets: a vertex q of Q lies over F iff its image is tight on
every facet of P that contains F.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from typing import Iterable, Sequence

from .closure import is_closed
from .config import Budget, default_budget
from .errors import InconsistentWitness, InputError
from .graph import SkeletonGraph
from .linalg import dot
from .polytope import (
    FaceLattice,
    HPolytope,
    IncidenceStructure,
    Projection,
    VPolytope,
    enumerate_vertices,
    face_lattice,
    facet_description,
    is_simple,
    skeleton_from_incidence,
)


@dataclass
class ExtensionWitness:
    """A claimed extension ``P = projection(Q)``, checked on construction."""

    P: VPolytope
    P_H: HPolytope
    P_inc: IncidenceStructure
    lattice: FaceLattice
    Q: HPolytope
    Q_vertices: VPolytope
    Q_inc: IncidenceStructure
    projection: Projection
    images: tuple
    fibers: tuple[frozenset[int], ...]

    @classmethod
    def build(cls, P: VPolytope, Q: HPolytope, projection: Projection, budget: Budget | None = None):
        budget = budget or default_budget()
        if projection.source_dim != Q.ambient_dim or projection.target_dim != P.ambient_dim:
            raise InputError("projection dimensions do not fit P and Q")
        P = VPolytope.hull(P.vertices)
        P_H, P_inc = facet_description(P, budget)
        lattice = face_lattice(P_inc, budget)
        QV, Q_inc = enumerate_vertices(Q, budget)
        images = tuple(projection(q) for q in QV.vertices)
        for i, y in enumerate(images):
            if not P_H.contains(y):
                raise InconsistentWitness(f"vertex {i} of Q projects outside P")
        fibers = []
        for v in P.vertices:
            fib = frozenset(i for i, y in enumerate(images) if y == v)
            if not fib:
                raise InconsistentWitness(f"vertex {v} of P is not the image of a vertex of Q")
            fibers.append(fib)
        return cls(P, P_H, P_inc, lattice, Q, QV, Q_inc, projection, images, tuple(fibers))

    @cached_property
    def _tight(self) -> list[int]:
        """Bitmask over P's facets tight at the image of each vertex of Q."""
        rows = self.P_inc.facet_inequalities or self.P_H.inequalities
        out = []
        for y in self.images:
            m = 0
            for k, (a, b) in enumerate(rows):
                if dot(a, y) == b:
                    m |= 1 << k
            out.append(m)
        return out

    @cached_property
    def over_face(self) -> list[int]:
        """For each face of P, the bitmask of Q-vertices lying over it."""
        out = []
        for k in range(len(self.lattice)):
            if self.lattice.faces[k] == 0:
                out.append(0)
                continue
            need = 0
            for i in self.lattice.facets_of[k]:
                need |= 1 << i
            m = 0
            for q, t in enumerate(self._tight):
                if t & need == need:
                    m |= 1 << q
            out.append(m)
        return out

    @property
    def facet_count(self) -> int:
        return self.Q_inc.facet_count

    def is_simple(self) -> bool:
        return is_simple(self.Q_inc)

    def skeleton(self) -> SkeletonGraph:
        return skeleton_from_incidence(self.P_inc, self.P.vertices)


@dataclass(frozen=True)
class InducedBiclique:
    facet_id: int | None
    faces: frozenset[int]
    vertices: frozenset[int]
    proper: bool

    @classmethod
    def from_faces(cls, lattice: FaceLattice, generators: Iterable[Iterable[int]]) -> "InducedBiclique":
        """Biclique spanned by some faces (given as vertex sets) and all their subfaces."""
        faces = set()
        for g in generators:
            faces.update(lattice.subfaces(lattice.index_of(g)))
        covered = set()
        for k in faces:
            covered |= lattice.vertex_set(k)
        verts = frozenset(range(lattice.vertex_count)) - covered
        return cls(None, frozenset(faces), verts, len(verts) != lattice.vertex_count)


def induced_sets(w: ExtensionWitness, facet_id: int) -> InducedBiclique:
    if not 0 <= facet_id < w.Q_inc.facet_count:
        raise InputError(f"no facet {facet_id}")
    fmask = 0
    for q in w.Q_inc.facets[facet_id]:
        fmask |= 1 << q
    faces = frozenset(k for k, m in enumerate(w.over_face) if m & ~fmask == 0)
    verts = frozenset(v for v, fib in enumerate(w.fibers) if not fib <= w.Q_inc.facets[facet_id])
    return InducedBiclique(facet_id, faces, verts, len(verts) != len(w.P))


def check_subface_closure(b: InducedBiclique, lattice: FaceLattice) -> bool:
    """Faces closed under subfaces, and the vertices are exactly those the faces miss."""
    for k in b.faces:
        if not set(lattice.subfaces(k)) <= b.faces:
            return False
    covered = set()
    for k in b.faces:
        covered |= lattice.vertex_set(k)
    return b.vertices == frozenset(range(lattice.vertex_count)) - covered


@dataclass
class SimpleConditionResult:
    passed: bool
    condition: str | None = None
    witness: tuple = ()
    violations: list = field(default_factory=list)
    restricted: bool = False

    def to_json(self) -> dict:
        return {
            "passed": self.passed,
            "condition": self.condition,
            "witness": [sorted(x) if isinstance(x, frozenset) else x for x in self.witness],
            "violation_count": len(self.violations),
            "restricted_to_adjacent_edges": self.restricted,
        }


def check_simple_conditions(
    b: InducedBiclique, lattice: FaceLattice, budget: Budget | None = None
) -> SimpleConditionResult:
    """Necessary conditions on faces induced by a facet of a simple extension.

    (a) two faces outside the set never meet in a nonempty face inside it;
    (b) maximal faces of the set are facets of P;
    (c) every vertex outside the vertex set lies on a facet in the set.
    Violations of (a) are all collected; the witness is the first one.
    """
    budget = budget or default_budget()
    faces = lattice.faces
    outside = [k for k in range(len(lattice)) if k not in b.faces and faces[k]]
    restricted = len(outside) * (len(outside) - 1) // 2 > budget.pairs
    if restricted:
        outside = [k for k in outside if lattice.dims[k] == 1]
    index = lattice._index
    violations = []
    for x, k in enumerate(outside):
        for k2 in outside[x + 1 :]:
            if restricted and not faces[k] & faces[k2]:
                continue
            meet = faces[k] & faces[k2]
            if meet and index[meet] in b.faces:
                violations.append((lattice.vertex_set(k), lattice.vertex_set(k2), lattice.vertex_set(index[meet])))
    if violations:
        return SimpleConditionResult(False, "a", violations[0], violations, restricted)
    nonempty = [k for k in b.faces if faces[k]]
    for k in sorted(nonempty):
        maximal = not any(k2 != k and faces[k] & faces[k2] == faces[k] for k2 in nonempty)
        if maximal and lattice.dims[k] != lattice.dim - 1:
            return SimpleConditionResult(False, "b", (lattice.vertex_set(k),), restricted=restricted)
    facet_ids = [k for k in b.faces if lattice.dims[k] == lattice.dim - 1]
    for v in range(lattice.vertex_count):
        if v in b.vertices:
            continue
        if not any(faces[k] >> v & 1 for k in facet_ids):
            return SimpleConditionResult(False, "c", (v,), restricted=restricted)
    return SimpleConditionResult(True, restricted=restricted)


def vertex_set_is_closed_check(b: InducedBiclique, G: SkeletonGraph) -> bool:
    """The induced vertex set is a proper closed set of the skeleton."""
    return len(b.vertices) != G.n and is_closed(G, b.vertices)


@dataclass
class CoveringReport:
    facet_count: int
    proper_facets: list[int]
    skipped: list[int]
    biclique_violations: list[tuple[int, frozenset[int], int]]
    uncovered: list[tuple[frozenset[int], int]]

    @property
    def ok(self) -> bool:
        return not self.biclique_violations and not self.uncovered

    def to_json(self) -> dict:
        return {
            "ok": self.ok,
            "facet_count": self.facet_count,
            "proper_facets": self.proper_facets,
            "skipped_facets": self.skipped,
            "biclique_violations": [
                {"facet": f, "face": sorted(F), "vertex": v} for f, F, v in self.biclique_violations
            ],
            "uncovered": [{"face": sorted(F), "vertex": v} for F, v in self.uncovered[:50]],
            "uncovered_count": len(self.uncovered),
        }


def verify_biclique_covering(w: ExtensionWitness, skip_facets: Sequence[int] = ()) -> CoveringReport:
    """Every non-incident (face, vertex) pair of P must lie in a proper facet's biclique.

    ``skip_facets`` removes facets from the analysis, e.g. to probe a
    witness with a facet dropped.
    """
    lattice = w.lattice
    skip = set(skip_facets)
    bicliques = [induced_sets(w, f) for f in range(w.facet_count) if f not in skip]
    violations = []
    for b in bicliques:
        for k in b.faces:
            for v in lattice.vertex_set(k) & b.vertices:
                violations.append((b.facet_id, lattice.vertex_set(k), v))
    proper = [b for b in bicliques if b.proper]
    uncovered = []
    for k in range(len(lattice)):
        m = lattice.faces[k]
        if not m:
            continue
        for v in range(lattice.vertex_count):
            if m >> v & 1:
                continue
            if not any(k in b.faces and v in b.vertices for b in proper):
                uncovered.append((lattice.vertex_set(k), v))
    return CoveringReport(w.facet_count, [b.facet_id for b in proper], sorted(skip), violations, uncovered)


def analyze_witness(w: ExtensionWitness, skip_facets: Sequence[int] = (), budget: Budget | None = None) -> dict:
    """Per-facet induced sets and necessary-condition verdicts, plus the covering check."""
    G = w.skeleton()
    facets = []
    for f in range(w.facet_count):
        if f in set(skip_facets):
            continue
        b = induced_sets(w, f)
        cond = check_simple_conditions(b, w.lattice, budget)
        facets.append(
            {
                "facet": f,
                "proper": b.proper,
                "vertices": sorted(b.vertices),
                "maximal_faces": [
                    sorted(w.lattice.vertex_set(k))
                    for k in sorted(b.faces)
                    if w.lattice.faces[k]
                    and not any(
                        k2 != k and w.lattice.faces[k] & w.lattice.faces[k2] == w.lattice.faces[k] for k2 in b.faces
                    )
                ],
                "subface_closed": check_subface_closure(b, w.lattice),
                "conditions": cond.to_json(),
                "vertex_set_closed": vertex_set_is_closed_check(b, G) if b.proper else None,
            }
        )
    covering = verify_biclique_covering(w, skip_facets)
    all_pass = all(
        f["subface_closed"] and f["conditions"]["passed"] and f["vertex_set_closed"] is not False for f in facets
    )
    return {
        "Q_simple": w.is_simple(),
        "Q_vertex_count": len(w.Q_vertices),
        "Q_facet_count": w.facet_count,
        "P_vertex_count": len(w.P),
        "facets": facets,
        "covering": covering.to_json(),
        "necessary_conditions_hold": all_pass,
        "verdict": "ok" if covering.ok and all_pass else "violations",
    }


# standard extensions -----------------------------------------------------------


def trivial_extension(P: VPolytope) -> tuple[HPolytope, Projection]:
    """The simplex of convex-combination weights over P's vertices."""
    N = len(P)
    ineqs = tuple((tuple(Fraction(-int(i == j)) for j in range(N)), Fraction(0)) for i in range(N))
    eq = ((tuple(Fraction(1) for _ in range(N)), Fraction(1)),)
    matrix = tuple(tuple(v[r] for v in P.vertices) for r in range(P.ambient_dim))
    return HPolytope(N, ineqs, eq), Projection(matrix, (Fraction(0),) * P.ambient_dim)


def identity_extension(P: VPolytope) -> tuple[HPolytope, Projection]:
    H, _ = facet_description(P)
    return H, Projection.coordinates(P.ambient_dim, range(P.ambient_dim))
