"""The six categories of p-subgroups with coset morphisms, object filters and functors between them."""

from __future__ import annotations

import re
from dataclasses import dataclass

from .category import FiniteCategory, FunctorMap
from .lattice import PSubgroupLattice, enumerate_p_subgroups, f_selfcentralizing
from .perm import PermGroup, Subgroup, centralizer, normalizer, o_upper_p, transporter

FLAVORS = ("S", "T", "L", "F", "O", "FTilde")
_FLAVOR_NAMES = {"s": "S", "t": "T", "l": "L", "f": "F", "o": "O", "ftilde": "FTilde", "ft": "FTilde"}

# flavors where "radical" means F-radical (O_p of the exterior automorphism group is trivial)
_F_RADICAL_FLAVORS = ("L", "F", "FTilde")


class EmptyCategory(ValueError):
    pass


class FilterUnsupported(ValueError):
    pass


class MismatchedAutGroup(AssertionError):
    pass


class PreconditionViolated(ValueError):
    pass


def parse_flavor(name: str) -> str:
    if name in FLAVORS:
        return name
    key = name.strip().lower().replace("~", "tilde").replace("_", "")
    if key not in _FLAVOR_NAMES:
        raise FilterUnsupported(f"unknown flavor {name!r}; use one of s|t|l|f|o|ftilde")
    return _FLAVOR_NAMES[key]


@dataclass(frozen=True)
class ObjectFilter:
    """Which p-subgroups become objects.

    ``kind`` is one of all, star, star-eab, sfc, sfc-rad, rad, star-rad, interval.
    Interval bounds are ``"1"`` (trivial subgroup), ``"P"`` (the whole group, which
    should then be a p-group) or a lattice index.
    """

    kind: str = "all"
    lower: str = "1"
    upper: str = "P"
    lower_closed: bool = True
    upper_closed: bool = False

    def __str__(self):
        if self.kind != "interval":
            return self.kind
        lb = "[" if self.lower_closed else "("
        ub = "]" if self.upper_closed else ")"
        return f"interval:{lb}{self.lower}..{self.upper}{ub}"


FILTER_KINDS = ("all", "star", "star-eab", "sfc", "sfc-rad", "rad", "star-rad")
_INTERVAL = re.compile(r"^interval:\s*([\[(]?)\s*(\w+)\s*(?:\.\.|,)\s*(\w+)\s*([\])]?)$")


def parse_filter(text) -> ObjectFilter:
    """Parse ``all|star|star-eab|sfc|sfc-rad|rad|star-rad|interval:A..B``.

    A bare ``interval:A..B`` is half-open ``[A, B)``; brackets pick the ends,
    e.g. ``interval:(1..P)``.
    """
    if isinstance(text, ObjectFilter):
        return text
    t = text.strip().lower().replace("+", "-").replace("_", "-")
    if t in FILTER_KINDS:
        return ObjectFilter(t)
    m = _INTERVAL.match(text.strip())
    if not m:
        raise FilterUnsupported(f"unknown object filter {text!r}")
    lb, lo, hi, ub = m.groups()
    return ObjectFilter("interval", lo, hi, lb != "(", ub == "]")


def _resolve_bound(lattice: PSubgroupLattice, token: str) -> Subgroup:
    G = lattice.group
    if token == "1":
        return G.trivial()
    if token.upper() in ("P", "G"):
        return G.whole()
    return lattice.subgroups[int(token)]


def select_objects(lattice: PSubgroupLattice, flavor: str, filt) -> list:
    """Lattice indices of the subgroups passing ``filt``, in lattice order."""
    filt = parse_filter(filt)
    flavor = parse_flavor(flavor)
    f_rad = flavor in _F_RADICAL_FLAVORS

    def radical(i):
        a = lattice.attrs[i]
        return a.is_F_radical if f_rad else a.is_G_radical

    def keep(i):
        H = lattice.subgroups[i]
        a = lattice.attrs[i]
        k = filt.kind
        if k == "all":
            return True
        if k == "star":
            return H.order > 1
        if k == "star-eab":
            return H.order > 1 and a.is_eab
        if k == "sfc":
            return a.is_G_selfcentralizing
        if k == "sfc-rad":
            return a.is_G_selfcentralizing and radical(i)
        if k == "rad":
            return radical(i)
        if k == "star-rad":
            return H.order > 1 and radical(i)
        if k == "interval":
            lo = _resolve_bound(lattice, filt.lower)
            hi = _resolve_bound(lattice, filt.upper)
            above = lo <= H and (filt.lower_closed or H != lo)
            below = H <= hi and (filt.upper_closed or H != hi)
            return above and below
        raise FilterUnsupported(filt.kind)

    return [i for i in range(len(lattice)) if keep(i)]


class SubgroupCategory(FiniteCategory):
    """A p-subgroup category; objects carry lattice indices, morphisms carry coset representatives."""

    def __init__(self, *args, group, p, flavor, lattice, subgroup_index, reps, filt, class_maps):
        super().__init__(*args)
        self.group = group
        self.p = p
        self.flavor = flavor
        self.lattice = lattice
        self.subgroup_index = subgroup_index
        self.reps = reps
        self.filter = filt
        self._class_maps = class_maps

    def subgroup(self, a: int) -> Subgroup:
        return self.lattice.subgroups[self.subgroup_index[a]]

    def object_of(self, lattice_index: int):
        try:
            return self.subgroup_index.index(lattice_index)
        except ValueError:
            return None

    def morphism_containing(self, a: int, b: int, g: int) -> int:
        """Id of the morphism ``a -> b`` whose class contains the element ``g``."""
        return self._class_maps[(a, b)][g]


def _left_factor(G: PermGroup, p: int, flavor: str, H: Subgroup):
    if flavor == "L":
        return o_upper_p(centralizer(G, H), p).members
    if flavor in ("F", "FTilde"):
        return centralizer(G, H).members
    return (0,)


def _partition(G, trans, left, right):
    """Split a transporter set into classes ``left * g * right``; map element -> least element."""
    rep_of = {}
    for g in sorted(trans):
        if g in rep_of:
            continue
        for a in left:
            ag = G.mul(a, g)
            for k in right:
                rep_of[G.mul(ag, k)] = g
    return rep_of


def _label(lattice, i):
    H = lattice.subgroups[i]
    gens = ",".join(H.generator_strings()) or "1"
    return f"H{i}<{gens}>"


def build(
    G: PermGroup,
    p: int,
    flavor: str,
    filt="all",
    lattice: PSubgroupLattice | None = None,
    skeletal: bool = False,
    allow_empty: bool = True,
) -> SubgroupCategory:
    """Build one of the six p-subgroup categories of ``G`` on the filtered objects.

    With ``skeletal=True`` only the least member of each conjugacy class is kept
    (for the poset flavor every object is its own class).
    """
    flavor = parse_flavor(flavor)
    filt = parse_filter(filt)
    if lattice is None:
        lattice = enumerate_p_subgroups(G, p)
    chosen = select_objects(lattice, flavor, filt)
    if skeletal and flavor != "S":
        seen = set()
        kept = []
        for i in chosen:
            c = lattice.class_of[i]
            if c not in seen:
                seen.add(c)
                kept.append(i)
        chosen = kept
    if not chosen and not allow_empty:
        raise EmptyCategory(f"no objects pass filter {filt}")
    subs = [lattice.subgroups[i] for i in chosen]
    n = len(subs)
    left = [_left_factor(G, p, flavor, H) for H in subs]

    dom, cod, reps, labels = [], [], [], []
    class_maps = {}
    for a, H in enumerate(subs):
        for b, K in enumerate(subs):
            if flavor == "S":
                if not H <= K:
                    continue
                trans = transporter(G, H, K)
                class_maps[(a, b)] = {g: len(dom) for g in trans}
                dom.append(a)
                cod.append(b)
                reps.append(0)
                labels.append(f"{a}<={b}")
                continue
            if H.order > K.order:
                continue
            trans = transporter(G, H, K)
            if not trans:
                continue
            right = K.members if flavor in ("O", "FTilde") else (0,)
            rep_of = _partition(G, trans, left[a], right)
            ids = {}
            for g in sorted(set(rep_of.values())):
                ids[g] = len(dom)
                dom.append(a)
                cod.append(b)
                reps.append(g)
                labels.append(f"{a}->{b}@{g}")
            class_maps[(a, b)] = {g: ids[r] for g, r in rep_of.items()}

    identity = [class_maps[(a, a)][0] for a in range(n)]
    out = [[] for _ in range(n)]
    for f, a in enumerate(dom):
        out[a].append(f)
    comp = []
    for f in range(len(dom)):
        a, b, g = dom[f], cod[f], reps[f]
        row = {}
        for h in out[b]:
            c = cod[h]
            row[h] = class_maps[(a, c)][G.mul(g, reps[h])]
        comp.append(row)
    return SubgroupCategory(
        [_label(lattice, i) for i in chosen],
        dom,
        cod,
        identity,
        comp,
        labels,
        group=G,
        p=p,
        flavor=flavor,
        lattice=lattice,
        subgroup_index=chosen,
        reps=reps,
        filt=filt,
        class_maps=class_maps,
    )


def expected_aut_size(G: PermGroup, p: int, flavor: str, H: Subgroup) -> int:
    """Size of the automorphism group of ``H`` predicted by the coset description."""
    flavor = parse_flavor(flavor)
    if flavor == "S":
        return 1
    N = normalizer(G, H)
    if flavor == "T":
        return N.order
    if flavor == "O":
        return N.order // H.order
    C = centralizer(G, H)
    if flavor == "L":
        return N.order // o_upper_p(C, p).order
    if flavor == "F":
        return N.order // C.order
    return N.order // H.join(C).order


def aut_sizes(C: SubgroupCategory) -> list:
    """``[(object, |C(H)|, expected)]``; raises if any count disagrees with the formula."""
    rows = []
    for a in range(C.n_objects):
        got = len(C.hom(a, a))
        want = expected_aut_size(C.group, C.p, C.flavor, C.subgroup(a))
        if got != want:
            raise MismatchedAutGroup(f"object {C.objects[a]}: {got} automorphisms, expected {want}")
        rows.append((a, got, want))
    return rows


# the commutative square of flavor projections, plus the poset inclusion
_PROJECTIONS = {
    ("S", "T"), ("T", "L"), ("L", "F"), ("F", "FTilde"), ("T", "O"), ("O", "FTilde"),
    ("T", "F"), ("T", "FTilde"), ("L", "FTilde"),
}


def flavor_functor(src: SubgroupCategory, dst: SubgroupCategory) -> FunctorMap:
    """The canonical functor between two flavors built on the same objects.

    The poset flavor maps ``H <= K`` to the class of the identity element.
    """
    if (src.flavor, dst.flavor) not in _PROJECTIONS and src.flavor != dst.flavor:
        raise FilterUnsupported(f"no canonical functor {src.flavor} -> {dst.flavor}")
    if src.subgroup_index != dst.subgroup_index:
        raise ValueError("source and target must have the same objects")
    mor_map = [
        dst.morphism_containing(src.dom[f], src.cod[f], src.reps[f]) for f in range(src.n_morphisms)
    ]
    return FunctorMap(src, dst, list(range(src.n_objects)), mor_map)


def quotient_functor_F_to_Ftilde(G: PermGroup, p: int, filt="star", lattice=None) -> FunctorMap:
    if lattice is None:
        lattice = enumerate_p_subgroups(G, p)
    F = build(G, p, "F", filt, lattice)
    Ft = build(G, p, "FTilde", filt, lattice)
    return flavor_functor(F, Ft)


def inclusion(small: SubgroupCategory, big: SubgroupCategory) -> FunctorMap:
    """Inclusion functor between two builds of the same flavor with nested object sets."""
    if small.flavor != big.flavor:
        raise ValueError("inclusion needs matching flavors")
    obj_map = []
    for i in small.subgroup_index:
        a = big.object_of(i)
        if a is None:
            raise ValueError(f"object H{i} missing from the larger category")
        obj_map.append(a)
    mor_map = [
        big.morphism_containing(obj_map[small.dom[f]], obj_map[small.cod[f]], small.reps[f])
        for f in range(small.n_morphisms)
    ]
    return FunctorMap(small, big, obj_map, mor_map)


@dataclass
class ExtensionCheck:
    by_search: bool
    by_criterion: bool
    witness: int | None

    @property
    def agree(self) -> bool:
        return self.by_search == self.by_criterion


def fusion_extends(G: PermGroup, p: int, P: Subgroup, H: Subgroup, N: Subgroup, K: Subgroup, g: int):
    """Does the fusion morphism ``H -> K`` given by conjugation with ``g`` extend to ``N -> K``?

    Evaluated by brute-force search over ``N_G(N, K)`` and by comparing the
    automorphism groups ``Aut_N(H)^g`` and ``Aut_K(H^g)``.
    """
    if not (H <= N and N <= normalizer(P, H) and K <= P):
        raise PreconditionViolated("need H <= N <= N_P(H) and K <= P")
    if not H.conjugate(g) <= K:
        raise PreconditionViolated("g does not conjugate H into K")
    if not f_selfcentralizing(G, p, P, H):
        raise PreconditionViolated("H is not selfcentralizing in the fusion system")
    CH = centralizer(G, H)
    witness = None
    for x in sorted(transporter(G, N, K)):
        # same restriction to H as conjugation by g
        if G.mul(x, G.inv(g)) in CH:
            witness = x
            break
    Hg = H.conjugate(g)
    CHg = centralizer(G, Hg)
    NK = normalizer(K, Hg)
    allowed = {G.mul(c, y) for c in CHg.members for y in NK.members}
    crit = all(G.conj(x, g) in allowed for x in N.members)
    return ExtensionCheck(witness is not None, crit, witness)
