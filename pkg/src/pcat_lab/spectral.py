"""Group homology through normalized bar complexes, and the flag spectral sequence for
the orbit category of proper subgroups of an elementary abelian group."""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field

from .category import group_category
from .homology import BudgetExceeded, Nerve, chain_budget
from .linalg import ColumnReducer, FieldSpec


class TableGroup:
    """Finite group given by a multiplication table; element 0 is the identity."""

    def __init__(self, table, labels=None):
        self.table = table
        self.labels = labels if labels is not None else list(range(len(table)))

    @property
    def order(self) -> int:
        return len(self.table)

    def mul(self, i: int, j: int) -> int:
        return self.table[i][j]


def vector_space(p: int, r: int) -> list:
    """All vectors of F_p^r, zero vector first."""
    return list(itertools.product(range(p), repeat=r))


def _add(u, v, p):
    return tuple((a + b) % p for a, b in zip(u, v))


def subspaces(p: int, r: int) -> list:
    """All subspaces of F_p^r as sorted tuples of vectors, ordered by size then content."""
    vecs = vector_space(p, r)
    zero = vecs[0]
    found = {(zero,)}
    frontier = [frozenset([zero])]
    while frontier:
        nxt = []
        for S in frontier:
            for v in vecs:
                if v in S:
                    continue
                span = set(S)
                for c in range(1, p):
                    cv = tuple((c * a) % p for a in v)
                    span |= {_add(s, cv, p) for s in S}
                key = tuple(sorted(span))
                if key not in found:
                    found.add(key)
                    nxt.append(frozenset(span))
        frontier = nxt
    return sorted(found, key=lambda s: (len(s), s))


def quotient(p: int, r: int, L) -> tuple:
    """``(V/L as TableGroup, coset index of each vector)``."""
    vecs = vector_space(p, r)
    Lset = set(L)
    coset_of = {}
    reps = []
    for v in vecs:
        if v in coset_of:
            continue
        k = len(reps)
        reps.append(v)
        for w in Lset:
            coset_of[_add(v, w, p)] = k
    table = [[coset_of[_add(a, b, p)] for b in reps] for a in reps]
    return TableGroup(table, reps), coset_of


@dataclass
class BarModel:
    """Homology of a finite group with F_p coefficients via the normalized bar complex."""

    group: object
    p: int
    tmax: int
    nerve: Nerve
    boundaries: dict  # t -> ColumnReducer spanning the boundaries in degree t
    basis: dict  # t -> list of cycle representatives (dicts keyed by bar tuples)
    coords: dict = field(default_factory=dict)  # t -> reducer used for coordinates

    @property
    def dims(self) -> list:
        return [len(self.basis[t]) for t in range(self.tmax + 1)]

    def coordinates(self, t: int, cycle: dict) -> list:
        """Coordinates of a cycle in the chosen homology basis."""
        red = self.coords[t]
        rem, combo = red.reduce(cycle, {})
        if rem:
            raise ValueError("not a cycle")
        p = self.p
        return [(-combo.get(("h", i), 0)) % p for i in range(len(self.basis[t]))]


def bar_homology(W, p: int, tmax: int, budget=None) -> BarModel:
    fs = FieldSpec(p)
    C = group_category(W)
    if (W.order - 1) ** (tmax + 1) > chain_budget(budget):
        raise BudgetExceeded(f"bar complex of a group of order {W.order} through degree {tmax + 1}", tmax + 1)
    nv = Nerve(C, tmax, budget)
    boundaries = {}
    basis = {}
    coords = {}
    for t in range(tmax + 1):
        B = ColumnReducer(fs)
        for ch in nv.chains(t + 1):
            col = {}
            for s, face in nv.faces(ch, t + 1):
                col[face] = col.get(face, 0) + s
            B.add(fs.normalize(col))
        boundaries[t] = B
        Z = ColumnReducer(fs, track=True)
        cycles = []
        for ch in nv.chains(t):
            col = {}
            for s, face in nv.faces(ch, t):
                col[face] = col.get(face, 0) + s
            kern = Z.add(fs.normalize(col), ch)
            if kern is not None:
                cycles.append(kern)
        H = ColumnReducer(fs, track=True)
        for j, (pcol, _) in enumerate(B.pivots.values()):
            H.add(pcol, ("b", j))
        reps = []
        for z in cycles:
            if not H.contains(z):
                H.add(z, ("h", len(reps)))
                reps.append(z)
        basis[t] = reps
        coords[t] = H
    return BarModel(W, p, tmax, nv, boundaries, basis, coords)


def push_cycle(f, cycle: dict, t: int, p: int) -> dict:
    """Apply a homomorphism (element map) coordinatewise to a bar chain."""
    out = {}
    for ch, c in cycle.items():
        if t == 0:
            img = (0,)
        else:
            img = tuple(f[x] for x in ch)
            if any(x == 0 for x in img):
                continue
        v = (out.get(img, 0) + c) % p
        if v:
            out[img] = v
        else:
            out.pop(img, None)
    return out


def induced_bar_map(f, source: BarModel, target: BarModel, t: int) -> list:
    """Matrix (rows = target basis, columns = source basis) of ``H_t(f)``."""
    cols = [target.coordinates(t, push_cycle(f, z, t, source.p)) for z in source.basis[t]]
    rows = len(target.basis[t])
    return [[cols[j][i] for j in range(len(cols))] for i in range(rows)]


def matrix_rank_mod(M: list, p: int) -> int:
    red = ColumnReducer(FieldSpec(p))
    ncols = len(M[0]) if M else 0
    for j in range(ncols):
        red.add({i: M[i][j] % p for i in range(len(M)) if M[i][j] % p})
    return red.rank


@dataclass
class SpectralPages:
    rank: int
    p: int
    tmax: int
    flags: dict  # s -> list of flags (tuples of subspace indices)
    E1: list  # E1[s][t]
    E2: list
    d1_squared_zero: bool

    @property
    def smax(self) -> int:
        return len(self.E1) - 1

    def diagonal_sums(self) -> list:
        top = self.tmax
        return [sum(self.E2[s][n - s] for s in range(self.smax + 1) if 0 <= n - s <= top) for n in range(top + 1)]

    def as_dict(self):
        return {"rank": self.rank, "p": self.p, "tmax": self.tmax, "E1": self.E1, "E2": self.E2}


def e1_e2_pages(r: int, p: int, tmax: int, budget=None) -> SpectralPages:
    """E1 and E2 pages of the flag spectral sequence for ``V = F_p^r``."""
    subs = subspaces(p, r)
    proper = [i for i, S in enumerate(subs) if len(S) < p**r]
    sets = [set(S) for S in subs]
    flags = {0: [(i,) for i in proper]}
    s = 0
    while True:
        nxt = []
        for fl in flags[s]:
            last = sets[fl[-1]]
            for j in proper:
                if len(subs[j]) > len(last) and last <= sets[j]:
                    nxt.append(fl + (j,))
        if not nxt:
            break
        s += 1
        flags[s] = nxt
    smax = s
    models = {}
    qmaps = {}
    for i in proper:
        W, coset_of = quotient(p, r, subs[i])
        qmaps[i] = coset_of
        models[i] = bar_homology(W, p, tmax, budget)
    # H_t(V/L0) -> H_t(V/L1) for L0 < L1
    maps = {}

    def bar_map(i, j, t):
        key = (i, j, t)
        if key not in maps:
            src, tgt = models[i], models[j]
            f = [qmaps[j][v] for v in src.group.labels]
            maps[key] = induced_bar_map(f, src, tgt, t)
        return maps[key]

    E1 = [[0] * (tmax + 1) for _ in range(smax + 1)]
    E2 = [[0] * (tmax + 1) for _ in range(smax + 1)]
    dd_ok = True
    for t in range(tmax + 1):
        offsets = {}
        for s in range(smax + 1):
            off = 0
            for fl in flags[s]:
                offsets[(s, fl)] = off
                off += models[fl[0]].dims[t]
            E1[s][t] = off
        # d1 : E1[s][t] -> E1[s-1][t] as columns of dicts
        d1 = {}
        for s in range(1, smax + 1):
            cols = []
            for fl in flags[s]:
                dim = models[fl[0]].dims[t]
                block_cols = [dict() for _ in range(dim)]
                for i in range(len(fl)):
                    face = fl[:i] + fl[i + 1 :]
                    off = offsets[(s - 1, face)]
                    sign = 1 if i % 2 == 0 else p - 1
                    if i == 0:
                        M = bar_map(fl[0], fl[1], t)
                        for c in range(dim):
                            for rrow in range(len(M)):
                                v = M[rrow][c] * sign % p
                                if v:
                                    block_cols[c][off + rrow] = (block_cols[c].get(off + rrow, 0) + v) % p
                    else:
                        for c in range(dim):
                            block_cols[c][off + c] = (block_cols[c].get(off + c, 0) + sign) % p
                cols.extend({k: v for k, v in bc.items() if v} for bc in block_cols)
            d1[s] = cols
        for s in range(2, smax + 1):
            for col in d1[s]:
                acc = {}
                for k, c in col.items():
                    for rr, e in d1[s - 1][k].items():
                        acc[rr] = (acc.get(rr, 0) + c * e) % p
                if any(acc.values()):
                    dd_ok = False
        rk = {}
        for s in range(1, smax + 1):
            red = ColumnReducer(FieldSpec(p))
            for col in d1[s]:
                red.add(col)
            rk[s] = red.rank
        for s in range(smax + 1):
            E2[s][t] = E1[s][t] - rk.get(s, 0) - rk.get(s + 1, 0)
    return SpectralPages(r, p, tmax, flags, E1, E2, dd_ok)


@dataclass
class AbutmentRow:
    n: int
    e2_sum: int
    betti: int

    @property
    def equal(self) -> bool:
        return self.e2_sum == self.betti


def abutment_check(r: int, p: int, nmax: int, budget=None) -> list:
    """Compare diagonal sums of E2 with mod-p Betti numbers of the orbit category of proper subgroups."""
    from .homology import betti
    from .subcats import build

    pages = e1_e2_pages(r, p, nmax, budget)
    V = elementary_abelian_perm_group(p, r)
    O = build(V, p, "O", "interval:[1..P)")
    b = betti(O, nmax, [f"F{p}"], budget)[f"F{p}"].betti
    sums = pages.diagonal_sums()
    return [AbutmentRow(n, sums[n], b[n]) for n in range(nmax + 1)]


def elementary_abelian_perm_group(p: int, r: int):
    """``(C_p)^r`` acting on ``r`` disjoint blocks of ``p`` points."""
    from .perm import enumerate_group

    gens = []
    for k in range(r):
        img = list(range(p * r))
        for x in range(p):
            img[k * p + x] = k * p + (x + 1) % p
        gens.append(tuple(img))
    return enumerate_group(gens, p * r)


@dataclass
class ConjectureRow:
    rank: int
    p: int
    s: int
    t: int
    e2: int

    @property
    def vanishes(self) -> bool:
        return self.e2 == 0

    def as_dict(self):
        return {"rank": self.rank, "p": self.p, "s": self.s, "t": self.t, "E2": self.e2,
                "vanishes": self.vanishes, "status": "reported"}


def conjecture_scan(cases=((2, 2), (2, 3), (3, 2)), tmax: int = 3, budget=None) -> list:
    """E2 entries off the last column (s < r-1, t > 0); reported as data, never asserted."""
    rows = []
    for r, p in cases:
        pages = e1_e2_pages(r, p, tmax, budget)
        for t in range(1, tmax + 1):
            for s in range(0, r - 1):
                rows.append(ConjectureRow(r, p, s, t, pages.E2[s][t]))
    return rows
