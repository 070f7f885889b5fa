"""Normalized nerve chains of a finite category, Betti numbers and induced maps.

A degree-k chain (k >= 1) is a tuple of k composable nonidentity morphisms
``(f1, ..., fk)`` with ``cod(fi) == dom(fi+1)``; degree-0 chains are ``(a,)``
for objects ``a``.  Betti numbers are computed as cohomology ranks, reducing
coboundary columns in increasing degree and skipping (clearing) columns already
known to be coboundaries.
"""

from __future__ import annotations

import os
from dataclasses import dataclass, field

from .category import FiniteCategory, FunctorMap, initial_objects, terminal_objects
from .linalg import ColumnReducer, FieldSpec

DEFAULT_CHAIN_BUDGET = 5_000_000


class BudgetExceeded(RuntimeError):
    def __init__(self, message, degree=None):
        super().__init__(message)
        self.degree = degree


def chain_budget(override=None) -> int:
    if override is not None:
        return int(override)
    env = os.environ.get("PCAT_BUDGET_CHAINS")
    return int(env) if env else DEFAULT_CHAIN_BUDGET


class Nerve:
    """Nondegenerate simplices of the nerve up to degree ``dmax + 1``."""

    def __init__(self, C: FiniteCategory, dmax: int, budget=None):
        self.C = C
        self.dmax = dmax
        m = C.n_morphisms
        self.nonid = [f for f in range(m) if not C.is_identity(f)]
        n = C.n_objects
        self.out = [[] for _ in range(n)]
        self.into = [[] for _ in range(n)]
        for f in self.nonid:
            self.out[C.dom[f]].append(f)
            self.into[C.cod[f]].append(f)
        # factorizations h = u;v with u, v nonidentity
        self.factor = {}
        for u in self.nonid:
            for v, h in C.comp[u].items():
                if not C.is_identity(v) and not C.is_identity(h):
                    self.factor.setdefault(h, []).append((u, v))
        self.dims = self._count(dmax + 1)
        limit = chain_budget(budget)
        total = 0
        for k, d in enumerate(self.dims):
            total += d
            if total > limit:
                raise BudgetExceeded(
                    f"nerve needs {total} simplices through degree {k}, budget {limit}", degree=k
                )
        self._chains = {}
        self._index = {}

    def _count(self, top: int) -> list:
        n = self.C.n_objects
        # ending[a] = number of k-chains ending at a
        ending = [1] * n
        dims = [n]
        for _ in range(top):
            nxt = [0] * n
            for f in self.nonid:
                nxt[self.C.cod[f]] += ending[self.C.dom[f]]
            ending = nxt
            dims.append(sum(ending))
        return dims

    def chains(self, k: int) -> list:
        """All degree-k chains in lexicographic order."""
        if k in self._chains:
            return self._chains[k]
        if k == 0:
            out = [(a,) for a in range(self.C.n_objects)]
        elif k == 1:
            out = [(f,) for f in self.nonid]
        else:
            out = []
            for ch in self.chains(k - 1):
                for f in self.out[self.C.cod[ch[-1]]]:
                    out.append(ch + (f,))
        self._chains[k] = out
        return out

    def index(self, k: int) -> dict:
        if k not in self._index:
            self._index[k] = {c: i for i, c in enumerate(self.chains(k))}
        return self._index[k]

    def faces(self, ch: tuple, k: int):
        """Nonzero faces ``(sign, face)`` of a degree-k chain in the normalized complex."""
        C = self.C
        if k == 0:
            return []
        if k == 1:
            f = ch[0]
            return [(1, (C.cod[f],)), (-1, (C.dom[f],))]
        out = [(1, ch[1:])]
        for j in range(1, k):
            h = C.comp[ch[j - 1]][ch[j]]
            if not C.is_identity(h):
                out.append(((-1) ** j, ch[: j - 1] + (h,) + ch[j + 1 :]))
        out.append(((-1) ** k, ch[:-1]))
        return out

    def coboundary(self, ch: tuple, k: int) -> dict:
        """Coboundary of the dual basis cochain of ``ch``, keyed by degree-(k+1) chains."""
        C = self.C
        col = {}

        def add(key, s):
            v = col.get(key, 0) + s
            if v:
                col[key] = v
            else:
                col.pop(key, None)

        if k == 0:
            a = ch[0]
            for f in self.into[a]:
                add((f,), 1)
            for f in self.out[a]:
                add((f,), -1)
            return col
        for f in self.into[C.dom[ch[0]]]:
            add((f,) + ch, 1)
        for j in range(1, k + 1):
            sign = (-1) ** j
            for u, v in self.factor.get(ch[j - 1], ()):
                add(ch[: j - 1] + (u, v) + ch[j:], sign)
        sign = (-1) ** (k + 1)
        for f in self.out[C.cod[ch[-1]]]:
            add(ch + (f,), sign)
        return col


@dataclass
class ChainComplexF:
    """Per-degree dimensions and sparse boundary matrices ``d_k : C_k -> C_{k-1}``.

    ``boundaries[k]`` is a list of columns (one per degree-k chain) keyed by
    indices of degree-(k-1) chains; ``boundaries[0]`` is empty.
    """

    field: FieldSpec
    dims: list
    boundaries: list

    def check_dd_zero(self) -> bool:
        p = self.field.char
        for k in range(2, len(self.boundaries)):
            lower = self.boundaries[k - 1]
            for col in self.boundaries[k]:
                acc = {}
                for i, c in col.items():
                    for r, e in lower[i].items():
                        acc[r] = acc.get(r, 0) + c * e
                if any((v % p if p else v) for v in acc.values()):
                    return False
        return True


def nerve_complex(C: FiniteCategory, dmax: int, field="Q", budget=None) -> ChainComplexF:
    """Explicit normalized chain complex through degree ``dmax + 1``."""
    field = FieldSpec.parse(field)
    nv = Nerve(C, dmax, budget)
    bounds = [[]]
    for k in range(1, dmax + 2):
        idx = nv.index(k - 1)
        cols = []
        for ch in nv.chains(k):
            col = {}
            for s, face in nv.faces(ch, k):
                i = idx[face]
                col[i] = col.get(i, 0) + s
            # keep the literal coefficients; rescaling would preserve ranks but not dd = 0
            q = field.char
            cols.append({i: (c % q if q else c) for i, c in col.items() if (c % q if q else c)})
        bounds.append(cols)
    return ChainComplexF(field, nv.dims[: dmax + 2], bounds)


def betti_from_complex(cx: ChainComplexF) -> list:
    """Betti numbers ``b_0 .. b_{top-1}`` from explicit boundary ranks (slow reference path)."""
    from .linalg import rank

    ranks = [0] + [rank(b, cx.field) for b in cx.boundaries[1:]]
    top = len(cx.dims) - 1
    return [cx.dims[k] - ranks[k] - ranks[k + 1] for k in range(top)]


@dataclass
class Cohomology:
    field: FieldSpec
    dims: list
    ranks: list  # rank of the coboundary leaving degree k
    reps: dict = field(default_factory=dict)  # degree -> list of cocycle dicts
    coboundary_bases: dict = field(default_factory=dict)  # degree -> ColumnReducer spanning B^k

    @property
    def betti(self) -> list:
        out = []
        for k, r in enumerate(self.ranks):
            below = self.ranks[k - 1] if k else 0
            out.append(self.dims[k] - r - below)
        return out


def cohomology(nerve: Nerve, field, dmax: int | None = None, reps: bool = False) -> Cohomology:
    field = FieldSpec.parse(field)
    if dmax is None:
        dmax = nerve.dmax
    cleared = set()
    ranks = []
    result = Cohomology(field, nerve.dims[: dmax + 1], ranks)
    for k in range(dmax + 1):
        red = ColumnReducer(field, track=reps)
        cocycles = []
        for ch in nerve.chains(k):
            if ch in cleared:
                continue
            col = field.normalize(nerve.coboundary(ch, k))
            kern = red.add(col, ch)
            if reps and kern is not None:
                cocycles.append(kern)
        ranks.append(red.rank)
        if reps:
            result.reps[k] = cocycles
            result.coboundary_bases[k + 1] = red
        cleared = set(red.pivots)
    if reps:
        result.coboundary_bases[0] = ColumnReducer(field)
    return result


@dataclass
class BettiTable:
    field: str
    betti: list
    dims: list
    shortcut: str = ""

    @property
    def reduced(self) -> list:
        out = list(self.betti)
        if out:
            out[0] -= 1
        return out

    def as_dict(self):
        d = {"field": self.field, "betti": self.betti, "reduced": self.reduced, "dims": self.dims}
        if self.shortcut:
            d["shortcut"] = self.shortcut
        return d


def contractible_shortcut(C: FiniteCategory) -> str:
    if C.n_objects and initial_objects(C):
        return "initial object"
    if C.n_objects and terminal_objects(C):
        return "terminal object"
    return ""


def betti(C: FiniteCategory, dmax: int, fields=("Q",), budget=None, shortcut: bool = True) -> dict:
    """``{field name: BettiTable}`` for degrees ``0..dmax``."""
    out = {}
    why = contractible_shortcut(C) if shortcut else ""
    nv = None
    for fld in fields:
        fs = FieldSpec.parse(fld)
        if why:
            out[fs.name] = BettiTable(fs.name, [1] + [0] * dmax, [], why)
            continue
        if C.n_objects == 0:
            out[fs.name] = BettiTable(fs.name, [0] * (dmax + 1), [0] * (dmax + 2))
            continue
        if nv is None:
            nv = Nerve(C, dmax, budget)
        co = cohomology(nv, fs, dmax)
        out[fs.name] = BettiTable(fs.name, co.betti, nv.dims[: dmax + 2])
    return out


@dataclass
class InducedHomMap:
    field: str
    source_betti: list
    target_betti: list
    ranks: list

    @property
    def verdicts(self) -> list:
        out = []
        for bs, bt, r in zip(self.source_betti, self.target_betti, self.ranks):
            out.append("iso" if bs == bt == r else "not-iso")
        return out

    @property
    def first_failure(self):
        for k, v in enumerate(self.verdicts):
            if v != "iso":
                return k
        return None

    def as_dict(self):
        return {
            "field": self.field,
            "source_betti": self.source_betti,
            "target_betti": self.target_betti,
            "ranks": self.ranks,
            "verdicts": self.verdicts,
        }


def _push_chain(F: FunctorMap, ch: tuple, k: int):
    if k == 0:
        return (F.obj_map[ch[0]],)
    img = tuple(F.mor_map[f] for f in ch)
    T = F.target
    if any(T.is_identity(g) for g in img):
        return None
    return img


def induced_map(F: FunctorMap, dmax: int, field="Q", budget=None, nerves=None) -> InducedHomMap:
    """Ranks of ``H_k(source) -> H_k(target)`` for ``k <= dmax``.

    Computed dually: cocycle representatives of the target are pulled back along
    the functor and their rank is taken modulo the coboundaries of the source.
    """
    fs = FieldSpec.parse(field)
    src_nv, tgt_nv = nerves if nerves else (Nerve(F.source, dmax, budget), Nerve(F.target, dmax, budget))
    src = cohomology(src_nv, fs, dmax, reps=True)
    tgt = cohomology(tgt_nv, fs, dmax, reps=True)
    ranks = []
    for k in range(dmax + 1):
        pulled = []
        for z in tgt.reps[k]:
            col = {}
            for ch in src_nv.chains(k):
                img = _push_chain(F, ch, k)
                if img is not None:
                    c = z.get(img)
                    if c:
                        col[ch] = c
            pulled.append(fs.normalize(col))
        base = src.coboundary_bases[k]
        red = ColumnReducer(fs)
        red.pivots = dict(base.pivots)
        before = red.rank
        for col in pulled:
            red.add(col)
        ranks.append(red.rank - before)
    return InducedHomMap(fs.name, src.betti, tgt.betti, ranks)


def euler_from_nerve(C: FiniteCategory, budget=None):
    """Alternating simplex count when the nerve is finite, else ``None``."""
    # a finite nondegenerate nerve needs an acyclic graph of nonidentity morphisms
    n = C.n_objects
    for f in range(C.n_morphisms):
        if not C.is_identity(f) and C.dom[f] == C.cod[f]:
            return None
    nv = Nerve(C, n, budget)
    if nv.dims[-1] != 0:
        return None
    return sum((-1) ** k * d for k, d in enumerate(nv.dims))


@dataclass
class InclusionVerdict:
    label: str
    chi_source: object
    chi_target: object
    maps: list
    dmax: int

    @property
    def chi_equal(self) -> bool:
        return self.chi_source == self.chi_target

    @property
    def homology_iso(self) -> bool:
        return all(m.first_failure is None for m in self.maps)

    @property
    def verdict(self) -> str:
        if self.chi_equal and self.homology_iso:
            return "consistent-with-equivalence"
        deg = min((m.first_failure for m in self.maps if m.first_failure is not None), default=None)
        if deg is None:
            return "refuted-by-euler-characteristic"
        return f"refuted-at-degree-{deg}"

    def as_dict(self):
        return {
            "functor": self.label,
            "chi_source": str(self.chi_source),
            "chi_target": str(self.chi_target),
            "chi_equal": self.chi_equal,
            "dmax": self.dmax,
            "maps": [m.as_dict() for m in self.maps],
            "verdict": self.verdict,
            "note": "truncated homology only: consistent with, not a proof of, homotopy equivalence",
        }


def verify_inclusion(F: FunctorMap, dmax: int, fields=("Q",), label: str = "", budget=None) -> InclusionVerdict:
    from .euler import euler_characteristic

    chi_s = euler_characteristic(F.source).chi
    chi_t = euler_characteristic(F.target).chi
    nerves = (Nerve(F.source, dmax, budget), Nerve(F.target, dmax, budget))
    maps = [induced_map(F, dmax, f, nerves=nerves) for f in fields]
    return InclusionVerdict(label, chi_s, chi_t, maps, dmax)
