"""Finite permutation groups with full element enumeration.

Elements are tuples of point images, ``g[x]`` being the image of ``x``.
Maps act from the right, so the product ``g * h`` applies ``g`` first:
``(g * h)[x] == h[g[x]]``.  Conjugation is ``h^g = g^-1 h g``.
"""

from __future__ import annotations

import re
from functools import cached_property
from math import gcd

DEFAULT_ELEMENT_CAP = 10_000


class CapExceeded(RuntimeError):
    pass


class InvalidPermutation(ValueError):
    pass


class NotNormal(ValueError):
    pass


def compose(g, h):
    return tuple(h[x] for x in g)


def invert(g):
    inv = [0] * len(g)
    for x, y in enumerate(g):
        inv[y] = x
    return tuple(inv)


def check_permutation(images, degree):
    images = tuple(images)
    if len(images) != degree or sorted(images) != list(range(degree)):
        raise InvalidPermutation(f"{list(images)} is not a permutation of degree {degree}")
    return images


def parse_permutation(text: str, degree: int) -> tuple:
    """Parse ``(0 1)(2 3)`` cycle notation or an image list ``[1,0,3,2]``."""
    text = text.strip()
    if text.startswith("["):
        try:
            images = [int(tok) for tok in text.strip("[]").replace(",", " ").split()]
        except ValueError as exc:
            raise InvalidPermutation(f"bad image list {text!r}") from exc
        return check_permutation(images, degree)
    images = list(range(degree))
    if text in ("", "()"):
        return tuple(images)
    if not re.fullmatch(r"(\([\d\s,]*\)\s*)+", text):
        raise InvalidPermutation(f"bad cycle notation {text!r}")
    seen = set()
    for body in re.findall(r"\(([^)]*)\)", text):
        cycle = [int(tok) for tok in body.replace(",", " ").split()]
        for x in cycle:
            if not 0 <= x < degree:
                raise InvalidPermutation(f"point {x} out of range for degree {degree}")
            if x in seen:
                raise InvalidPermutation(f"point {x} repeated in {text!r}")
            seen.add(x)
        for a, b in zip(cycle, cycle[1:] + cycle[:1]):
            images[a] = b
    return tuple(images)


def format_cycles(g) -> str:
    seen = set()
    parts = []
    for start in range(len(g)):
        if start in seen or g[start] == start:
            continue
        cycle = [start]
        seen.add(start)
        x = g[start]
        while x != start:
            cycle.append(x)
            seen.add(x)
            x = g[x]
        parts.append("(" + " ".join(map(str, cycle)) + ")")
    return "".join(parts) or "()"


def parse_group_text(text: str):
    """Parse the group file format: a ``degree: n`` line, then one generator per line."""
    degree = None
    gens = []
    for raw in text.splitlines():
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if degree is None:
            m = re.fullmatch(r"degree\s*:\s*(\d+)", line)
            if not m:
                raise InvalidPermutation("group file must start with 'degree: n'")
            degree = int(m.group(1))
            continue
        gens.append(parse_permutation(line, degree))
    if degree is None:
        raise InvalidPermutation("missing 'degree: n' line")
    return degree, gens


class PermGroup:
    """A permutation group together with the sorted list of all its elements."""

    def __init__(self, degree: int, generators, elements):
        self.degree = degree
        self.generators = tuple(generators)
        self.elements = tuple(elements)
        self.index = {g: i for i, g in enumerate(self.elements)}
        n = len(self.elements)
        if n <= 1024:
            self._table = [[self.index[compose(g, h)] for h in self.elements] for g in self.elements]
        else:
            self._table = None
        self._inv = [self.index[invert(g)] for g in self.elements]

    def __repr__(self):
        gens = ", ".join(format_cycles(g) for g in self.generators)
        return f"PermGroup(order={self.order}, degree={self.degree}, gens=[{gens}])"

    @property
    def order(self) -> int:
        return len(self.elements)

    def __len__(self):
        return len(self.elements)

    def mul(self, i: int, j: int) -> int:
        if self._table is not None:
            return self._table[i][j]
        return self.index[compose(self.elements[i], self.elements[j])]

    def inv(self, i: int) -> int:
        return self._inv[i]

    def conj(self, i: int, g: int) -> int:
        """Index of ``i^g = g^-1 i g``."""
        return self.mul(self.mul(self._inv[g], i), g)

    def element_order(self, i: int) -> int:
        k, x = 1, i
        while x != 0:
            x = self.mul(x, i)
            k += 1
        return k

    def whole(self) -> "Subgroup":
        return Subgroup(self, range(self.order))

    def trivial(self) -> "Subgroup":
        return Subgroup(self, (0,))

    def generate(self, indices) -> "Subgroup":
        """Subgroup generated by the given element indices."""
        gens = [i for i in set(indices) if i != 0]
        members = {0}
        frontier = [0]
        while frontier:
            nxt = []
            for x in frontier:
                for s in gens:
                    y = self.mul(x, s)
                    if y not in members:
                        members.add(y)
                        nxt.append(y)
            frontier = nxt
        return Subgroup(self, members)

    def is_subgroup(self, indices) -> bool:
        s = set(indices)
        if 0 not in s:
            return False
        return all(self.mul(a, b) in s for a in s for b in s)


def enumerate_group(generators, degree: int, cap: int = DEFAULT_ELEMENT_CAP) -> PermGroup:
    """Closure of ``generators`` as a :class:`PermGroup` with canonically sorted elements."""
    gens = [check_permutation(g, degree) for g in generators]
    identity = tuple(range(degree))
    seen = {identity}
    frontier = [identity]
    while frontier:
        nxt = []
        for x in frontier:
            for s in gens:
                y = compose(x, s)
                if y not in seen:
                    seen.add(y)
                    if len(seen) > cap:
                        raise CapExceeded(f"group order exceeds cap {cap}")
                    nxt.append(y)
        frontier = nxt
    return PermGroup(degree, gens, sorted(seen))


class Subgroup:
    """Subgroup of an ambient :class:`PermGroup`, stored as sorted element indices."""

    __slots__ = ("ambient", "members", "mask", "_set", "__dict__")

    def __init__(self, ambient: PermGroup, members):
        self.ambient = ambient
        self.members = tuple(sorted(set(members)))
        mask = 0
        for i in self.members:
            mask |= 1 << i
        self.mask = mask
        self._set = frozenset(self.members)

    @property
    def order(self) -> int:
        return len(self.members)

    def __len__(self):
        return len(self.members)

    def __contains__(self, i) -> bool:
        return i in self._set

    def __iter__(self):
        return iter(self.members)

    def __eq__(self, other):
        return isinstance(other, Subgroup) and self.mask == other.mask and self.ambient is other.ambient

    def __hash__(self):
        return hash(self.mask)

    def __le__(self, other: "Subgroup") -> bool:
        return self.mask & ~other.mask == 0

    def __lt__(self, other: "Subgroup") -> bool:
        return self.mask != other.mask and self <= other

    def __repr__(self):
        return f"Subgroup(order={self.order}, gens=[{', '.join(self.generator_strings())}])"

    @cached_property
    def generators(self) -> tuple:
        """A small generating set, chosen greedily by element index."""
        G = self.ambient
        gens = []
        current = {0}
        for i in self.members:
            if i not in current:
                gens.append(i)
                current = set(G.generate(gens).members)
                if len(current) == self.order:
                    break
        return tuple(gens)

    def generator_strings(self):
        return [format_cycles(self.ambient.elements[i]) for i in self.generators]

    def conjugate(self, g: int) -> "Subgroup":
        G = self.ambient
        return Subgroup(G, (G.conj(h, g) for h in self.members))

    def intersection(self, other: "Subgroup") -> "Subgroup":
        return Subgroup(self.ambient, self._set & other._set)

    def join(self, other: "Subgroup") -> "Subgroup":
        return self.ambient.generate(self.generators + other.generators)

    def is_abelian(self) -> bool:
        G = self.ambient
        gens = self.generators
        return all(G.mul(a, b) == G.mul(b, a) for a in gens for b in gens)

    def is_normal_in(self, other: "Subgroup") -> bool:
        return self <= other and all(
            self.ambient.conj(h, g) in self for g in other.generators for h in self.generators
        )

    def as_group(self) -> PermGroup:
        """This subgroup as a standalone permutation group on the same points."""
        G = self.ambient
        return enumerate_group([G.elements[i] for i in self.generators], G.degree)


def _as_subgroup(X) -> Subgroup:
    return X.whole() if isinstance(X, PermGroup) else X


def p_part(n: int, p: int) -> int:
    q = 1
    while n % p == 0:
        n //= p
        q *= p
    return q


def is_p_power(n: int, p: int) -> bool:
    return p_part(n, p) == n


def centralizer(G, H: Subgroup) -> Subgroup:
    """Elements of ``G`` commuting with every element of ``H``."""
    Gs = _as_subgroup(G)
    amb = Gs.ambient
    gens = H.generators
    return Subgroup(amb, (g for g in Gs.members if all(amb.mul(g, h) == amb.mul(h, g) for h in gens)))


def normalizer(G, H: Subgroup) -> Subgroup:
    Gs = _as_subgroup(G)
    amb = Gs.ambient
    gens = H.generators
    return Subgroup(amb, (g for g in Gs.members if all(amb.conj(h, g) in H for h in gens)))


def transporter(G, H: Subgroup, K: Subgroup) -> frozenset:
    """The transporter set ``{g in G | H^g <= K}``."""
    Gs = _as_subgroup(G)
    amb = Gs.ambient
    if H.order > K.order or K.order % H.order:
        return frozenset()
    gens = H.generators
    return frozenset(g for g in Gs.members if all(amb.conj(h, g) in K for h in gens))


def center(H: Subgroup) -> Subgroup:
    return centralizer(H, H)


def sylow(G, p: int, strict: bool = False) -> Subgroup:
    """A Sylow ``p``-subgroup, grown one order-``p`` step at a time inside normalizers.

    If ``S`` is a non-Sylow ``p``-subgroup then ``N(S)/S`` has order divisible by
    ``p``, so some ``x`` in ``N(S) - S`` has ``x^p`` in ``S``.  Taking the least such
    ``x`` makes the result deterministic.
    """
    K = _as_subgroup(G)
    amb = K.ambient
    target = p_part(K.order, p)
    if target == 1 and strict:
        raise ValueError(f"{p} does not divide the group order {K.order}")
    S = amb.trivial()
    while S.order < target:
        N = normalizer(K, S)
        for x in N.members:
            if x in S:
                continue
            y = x
            for _ in range(p - 1):
                y = amb.mul(y, x)
            if y in S:
                S = amb.generate(S.generators + (x,))
                break
        else:  # pragma: no cover - impossible by Sylow's theorem
            raise RuntimeError("Sylow extension failed")
    return S


def sylow_subgroups(G, p: int) -> list:
    K = _as_subgroup(G)
    P = sylow(K, p)
    found = {P.mask: P}
    for g in K.members:
        Q = P.conjugate(g)
        found.setdefault(Q.mask, Q)
    return [found[m] for m in sorted(found)]


def o_p(K, p: int) -> Subgroup:
    """Largest normal ``p``-subgroup: the intersection of all Sylow ``p``-subgroups."""
    K = _as_subgroup(K)
    result = None
    for P in sylow_subgroups(K, p):
        result = P if result is None else result.intersection(P)
    return result


def o_upper_p(K, p: int) -> Subgroup:
    """Subgroup generated by the elements of order prime to ``p``."""
    K = _as_subgroup(K)
    amb = K.ambient
    return amb.generate(g for g in K.members if amb.element_order(g) % p)


def all_subgroups(H, cap: int = 5000) -> list:
    """Every subgroup of ``H`` by closure over adding one element at a time."""
    H = _as_subgroup(H)
    amb = H.ambient
    triv = amb.trivial()
    found = {triv.mask: triv}
    frontier = [triv]
    while frontier:
        nxt = []
        for S in frontier:
            for x in H.members:
                if x in S:
                    continue
                T = amb.generate(S.generators + (x,))
                if T.mask not in found:
                    found[T.mask] = T
                    if len(found) > cap:
                        raise CapExceeded(f"more than {cap} subgroups")
                    nxt.append(T)
        frontier = nxt
    return sorted(found.values(), key=lambda S: (S.order, S.members))


def frattini(H) -> Subgroup:
    """Intersection of the maximal subgroups of ``H``."""
    H = _as_subgroup(H)
    amb = H.ambient
    n = H.order
    primes = {q for q in range(2, n + 1) if n % q == 0 and all(q % r for r in range(2, q))}
    if len(primes) <= 1:
        # p-group: generated by p-th powers and commutators
        if not primes:
            return amb.trivial()
        (p,) = primes
        gens = []
        for a in H.members:
            y = a
            for _ in range(p - 1):
                y = amb.mul(y, a)
            gens.append(y)
            for b in H.generators:
                gens.append(amb.mul(amb.mul(amb.inv(a), amb.inv(b)), amb.mul(a, b)))
        return amb.generate(gens)
    subs = all_subgroups(H)
    proper = [S for S in subs if S.order < n]
    maximal = [S for S in proper if not any(S < T for T in proper)]
    result = H
    for M in maximal:
        result = result.intersection(M)
    return result


def quotient_group(K, N: Subgroup):
    """``K/N`` acting on the right cosets ``Nk``; returns the group and the projection.

    The projection maps each element index of ``K`` (in the ambient group) to an
    element index of the quotient group.
    """
    K = _as_subgroup(K)
    amb = K.ambient
    if not N.is_normal_in(K):
        raise NotNormal("N is not a normal subgroup of K")
    coset_of = {}
    cosets = []
    for k in K.members:
        if k in coset_of:
            continue
        c = len(cosets)
        members = sorted(amb.mul(n, k) for n in N.members)
        cosets.append(members[0])
        for x in members:
            coset_of[x] = c
    m = len(cosets)

    def action(k):
        return tuple(coset_of[amb.mul(rep, k)] for rep in cosets)

    gens = [action(k) for k in K.generators]
    Q = enumerate_group(gens, m) if m > 0 else None
    projection = {k: Q.index[action(k)] for k in K.members}
    return Q, projection


def is_cyclic(H: Subgroup) -> bool:
    amb = H.ambient
    return any(amb.element_order(g) == H.order for g in H.members)


def exponent(H: Subgroup) -> int:
    amb = H.ambient
    e = 1
    for g in H.members:
        o = amb.element_order(g)
        e = e * o // gcd(e, o)
    return e
