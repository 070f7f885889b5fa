"""The lattice of p-subgroups, Möbius functions and subgroup classification."""

from __future__ import annotations

import json
from dataclasses import dataclass, field

from .perm import (
    CapExceeded,
    PermGroup,
    Subgroup,
    center,
    centralizer,
    is_cyclic,
    normalizer,
    o_p,
    p_part,
    quotient_group,
    sylow,
    transporter,
)

DEFAULT_SUBGROUP_CAP = 20_000


class NotComparable(ValueError):
    pass


class EquivalenceViolation(AssertionError):
    pass


@dataclass(frozen=True)
class SubgroupAttrs:
    order: int
    is_eab: bool
    is_cyclic: bool
    is_G_radical: bool
    is_G_selfcentralizing: bool
    is_F_radical: bool

    def as_dict(self):
        return {
            "order": self.order,
            "eab": self.is_eab,
            "cyclic": self.is_cyclic,
            "G_radical": self.is_G_radical,
            "selfcentralizing": self.is_G_selfcentralizing,
            "F_radical": self.is_F_radical,
        }


def is_elementary_abelian(H: Subgroup, p: int) -> bool:
    amb = H.ambient
    if not H.is_abelian():
        return False
    return all(amb.element_order(g) in (1, p) for g in H.members)


def is_f_radical(G: PermGroup, p: int, H: Subgroup) -> bool:
    """``O_p`` of the outer automorphism group ``N_G(H) / H C_G(H)`` is trivial."""
    N = normalizer(G, H)
    HC = H.join(centralizer(G, H))
    Q, _ = quotient_group(N, HC)
    return o_p(Q, p).order == 1


def classify(G: PermGroup, p: int, H: Subgroup) -> SubgroupAttrs:
    C = centralizer(G, H)
    sfc = center(H).order == p_part(C.order, p)
    return SubgroupAttrs(
        order=H.order,
        is_eab=is_elementary_abelian(H, p),
        is_cyclic=is_cyclic(H),
        is_G_radical=o_p(normalizer(G, H), p) == H,
        is_G_selfcentralizing=sfc,
        is_F_radical=is_f_radical(G, p, H),
    )


def f_selfcentralizing(G: PermGroup, p: int, P: Subgroup, H: Subgroup) -> bool:
    """Fusion-system selfcentralizing test, cross-checked against the group-level bit.

    ``H <= P`` is F-selfcentralizing when ``C_P(H^g) <= H^g`` for every ``g`` with
    ``H^g <= P``.
    """
    if not H <= P:
        raise ValueError("H must be a subgroup of the Sylow subgroup P")
    ok = True
    for g in sorted(transporter(G, H, P)):
        Hg = H.conjugate(g)
        if not centralizer(P, Hg) <= Hg:
            ok = False
            break
    g_bit = classify(G, p, H).is_G_selfcentralizing
    if ok != g_bit:
        raise EquivalenceViolation(f"F-selfcentralizing={ok} but G-selfcentralizing={g_bit} for {H}")
    return ok


@dataclass
class PSubgroupLattice:
    group: PermGroup
    p: int
    subgroups: list
    attrs: list
    conj_classes: list
    class_of: list
    sylow_index: int
    _pos: dict = field(repr=False, default_factory=dict)

    def __len__(self):
        return len(self.subgroups)

    def index(self, H: Subgroup) -> int:
        return self._pos[H.mask]

    def leq(self, i: int, j: int) -> bool:
        return self.subgroups[i] <= self.subgroups[j]

    def leq_matrix(self):
        n = len(self.subgroups)
        return [[self.leq(i, j) for j in range(n)] for i in range(n)]

    @property
    def trivial_index(self) -> int:
        return 0

    @property
    def sylow(self) -> Subgroup:
        return self.subgroups[self.sylow_index]

    def below(self, j: int) -> list:
        return [i for i in range(len(self.subgroups)) if self.leq(i, j)]

    def hasse_edges(self):
        n = len(self.subgroups)
        edges = []
        for i in range(n):
            for j in range(n):
                if i != j and self.leq(i, j):
                    if not any(k not in (i, j) and self.leq(i, k) and self.leq(k, j) for k in range(n)):
                        edges.append((i, j))
        return edges

    def class_rep(self, i: int) -> int:
        return self.conj_classes[self.class_of[i]][0]

    def to_json(self) -> str:
        doc = {
            "version": 1,
            "group_order": self.group.order,
            "prime": self.p,
            "subgroups": [
                {
                    "index": i,
                    "order": H.order,
                    "generators": H.generator_strings(),
                    "class": self.class_of[i],
                    "attributes": self.attrs[i].as_dict(),
                }
                for i, H in enumerate(self.subgroups)
            ],
            "hasse_edges": [list(e) for e in self.hasse_edges()],
            "conjugacy_classes": [list(c) for c in self.conj_classes],
        }
        return json.dumps(doc, indent=2)


def subgroups_of_p_group(P: Subgroup, cap: int = DEFAULT_SUBGROUP_CAP) -> list:
    """All subgroups of the p-group ``P``, found by adding one element at a time."""
    amb = P.ambient
    triv = amb.trivial()
    found = {triv.mask: triv}
    frontier = [triv]
    while frontier:
        nxt = []
        for S in frontier:
            for x in P.members:
                if x in S:
                    continue
                T = amb.generate(S.generators + (x,))
                if T.mask not in found:
                    found[T.mask] = T
                    if len(found) > cap:
                        raise CapExceeded(f"more than {cap} p-subgroups")
                    nxt.append(T)
        frontier = nxt
    return list(found.values())


def enumerate_p_subgroups(G: PermGroup, p: int, cap: int = DEFAULT_SUBGROUP_CAP) -> PSubgroupLattice:
    P = sylow(G, p)
    found = {}
    for S in subgroups_of_p_group(P, cap):
        for g in range(G.order):
            T = S.conjugate(g) if g else S
            if T.mask not in found:
                found[T.mask] = T
                if len(found) > cap:
                    raise CapExceeded(f"more than {cap} p-subgroups")
    subs = sorted(found.values(), key=lambda S: (S.order, S.members))
    pos = {S.mask: i for i, S in enumerate(subs)}
    class_of = [-1] * len(subs)
    classes = []
    for i, S in enumerate(subs):
        if class_of[i] >= 0:
            continue
        members = sorted({pos[S.conjugate(g).mask] for g in range(G.order)})
        for j in members:
            class_of[j] = len(classes)
        classes.append(members)
    attrs = []
    cache = {}
    for i, S in enumerate(subs):
        rep = classes[class_of[i]][0]
        if rep not in cache:
            cache[rep] = classify(G, p, subs[rep])
        attrs.append(cache[rep])
    return PSubgroupLattice(
        group=G,
        p=p,
        subgroups=subs,
        attrs=attrs,
        conj_classes=classes,
        class_of=class_of,
        sylow_index=pos[P.mask],
        _pos=pos,
    )


def mobius_table(leq, n: int, bottom: int) -> dict:
    """``{top: mu(bottom, top)}`` for every element above ``bottom``."""
    above = [j for j in range(n) if leq(bottom, j)]
    # a linear extension: sort by the number of elements below
    depth = {j: sum(1 for k in above if leq(k, j)) for j in above}
    above.sort(key=lambda j: (depth[j], j))
    mu = {}
    for j in above:
        if j == bottom:
            mu[j] = 1
        else:
            mu[j] = -sum(mu[k] for k in above if k != j and leq(k, j) and k in mu)
    return mu


def mobius(leq, n: int, bottom: int, top: int) -> int:
    if not leq(bottom, top):
        raise NotComparable(f"{bottom} is not below {top}")
    return mobius_table(leq, n, bottom)[top]


def lattice_mobius(lattice: PSubgroupLattice, bottom: int, top: int) -> int:
    return mobius(lattice.leq, len(lattice), bottom, top)
