"""A small exact two-phase simplex method (Bland's rule) over Fractions.

Only meant for the desk-scale feasibility and optimisation problems that
arise in adjacency and boundedness tests; no attempt is made at speed.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

OPTIMAL = "optimal"
INFEASIBLE = "infeasible"
UNBOUNDED = "unbounded"


@dataclass(frozen=True)
class LPResult:
    status: str
    x: tuple[Fraction, ...] | None = None
    value: Fraction | None = None


def _pivot(tab, basis, r, c):
    p = tab[r][c]
    row = [v / p for v in tab[r]]
    tab[r] = row
    for i, other in enumerate(tab):
        if i != r and other[c] != 0:
            f = other[c]
            tab[i] = [a - f * b for a, b in zip(other, row)]
    basis[r] = c


def _simplex(tab, basis, ncols, allowed):
    """Minimise the objective stored in the last row of ``tab``.

    The last row holds reduced costs with the negated objective value in the
    final column. Returns False if unbounded.
    """
    obj = tab[-1]
    while True:
        obj = tab[-1]
        enter = next((j for j in range(ncols) if allowed[j] and obj[j] < 0), None)
        if enter is None:
            return True
        best = None
        for i in range(len(tab) - 1):
            a = tab[i][enter]
            if a > 0:
                ratio = tab[i][-1] / a
                if best is None or ratio < best[0] or (ratio == best[0] and basis[i] < basis[best[1]]):
                    best = (ratio, i)
        if best is None:
            return False
        _pivot(tab, basis, best[1], enter)


def solve(
    c: Sequence,
    A_eq: Sequence[Sequence] = (),
    b_eq: Sequence = (),
    A_ub: Sequence[Sequence] = (),
    b_ub: Sequence = (),
    free: Sequence[int] = (),
) -> LPResult:
    """Minimise ``c.x`` subject to ``A_eq x = b_eq``, ``A_ub x <= b_ub``.

    Variables are nonnegative except those listed in ``free``.
    """
    n = len(c)
    free = set(free)
    # column map: original variable -> (plus column, minus column or None)
    cols = []
    k = 0
    for j in range(n):
        if j in free:
            cols.append((k, k + 1))
            k += 2
        else:
            cols.append((k, None))
            k += 1
    nslack = len(A_ub)
    nstruct = k
    ntot = nstruct + nslack

    def expand(row):
        out = [Fraction(0)] * ntot
        for j, a in enumerate(row):
            a = Fraction(a)
            p, m = cols[j]
            out[p] = a
            if m is not None:
                out[m] = -a
        return out

    rows, rhs = [], []
    for row, b in zip(A_eq, b_eq):
        rows.append(expand(row))
        rhs.append(Fraction(b))
    for i, (row, b) in enumerate(zip(A_ub, b_ub)):
        r = expand(row)
        r[nstruct + i] = Fraction(1)
        rows.append(r)
        rhs.append(Fraction(b))
    for i in range(len(rows)):
        if rhs[i] < 0:
            rows[i] = [-v for v in rows[i]]
            rhs[i] = -rhs[i]

    m = len(rows)
    width = ntot + m
    tab = [rows[i] + [Fraction(int(i == r)) for r in range(m)] + [rhs[i]] for i in range(m)]
    basis = [ntot + i for i in range(m)]
    # phase one: minimise the sum of artificials
    phase1 = [Fraction(0)] * (width + 1)
    for i in range(m):
        for j in range(ntot):
            phase1[j] -= tab[i][j]
        phase1[-1] -= tab[i][-1]
    tab.append(phase1)
    _simplex(tab, basis, width, [True] * ntot + [False] * m)
    if tab[-1][-1] != 0:
        return LPResult(INFEASIBLE)
    # drive remaining artificials out of the basis; drop redundant rows
    i = 0
    while i < len(tab) - 1:
        if basis[i] >= ntot:
            j = next((j for j in range(ntot) if tab[i][j] != 0), None)
            if j is None:
                del tab[i]
                del basis[i]
                continue
            _pivot(tab, basis, i, j)
        i += 1
    tab.pop()
    tab = [row[:ntot] + [row[-1]] for row in tab]

    cost = [Fraction(0)] * ntot
    for j in range(n):
        p, mcol = cols[j]
        cost[p] = Fraction(c[j])
        if mcol is not None:
            cost[mcol] = -Fraction(c[j])
    obj = cost + [Fraction(0)]
    for i, b in enumerate(basis):
        if obj[b] != 0:
            f = obj[b]
            obj = [a - f * v for a, v in zip(obj, tab[i])]
    tab.append(obj)
    if not _simplex(tab, basis, ntot, [True] * ntot):
        return LPResult(UNBOUNDED)
    val = [Fraction(0)] * ntot
    for i, b in enumerate(basis):
        val[b] = tab[i][-1]
    x = []
    for p, mcol in cols:
        x.append(val[p] - (val[mcol] if mcol is not None else 0))
    return LPResult(OPTIMAL, tuple(x), -tab[-1][-1])


def feasible(A_eq=(), b_eq=(), A_ub=(), b_ub=(), n: int = 0, free=()) -> bool:
    return solve([0] * n, A_eq, b_eq, A_ub, b_ub, free).status == OPTIMAL
