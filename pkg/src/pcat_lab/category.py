"""Finite categories: validation, isomorphism classes, heights, slices and functors.

Composition is diagrammatic: ``comp(f, g)`` is "f then g" and needs
``cod(f) == dom(g)``.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from functools import cached_property


class NotComposable(ValueError):
    pass


class CycleDetected(ValueError):
    pass


class FiniteCategory:
    """Objects ``0..n-1`` and morphisms ``0..m-1`` with a composition table.

    ``comp[f]`` maps each ``g`` with ``dom(g) == cod(f)`` to the id of ``f;g``.
    """

    def __init__(self, objects, dom, cod, identity, comp, mlabels=None):
        self.objects = list(objects)
        self.dom = list(dom)
        self.cod = list(cod)
        self.identity = list(identity)
        self.comp = comp
        self.mlabels = list(mlabels) if mlabels is not None else [str(f) for f in range(len(self.dom))]
        n = len(self.objects)
        self._hom = {}
        self.out = [[] for _ in range(n)]
        self.into = [[] for _ in range(n)]
        for f, (a, b) in enumerate(zip(self.dom, self.cod)):
            self._hom.setdefault((a, b), []).append(f)
            self.out[a].append(f)
            self.into[b].append(f)
        self._is_identity = [False] * len(self.dom)
        for i in self.identity:
            self._is_identity[i] = True

    def __repr__(self):
        return f"<{type(self).__name__} objects={self.n_objects} morphisms={self.n_morphisms}>"

    @property
    def n_objects(self) -> int:
        return len(self.objects)

    @property
    def n_morphisms(self) -> int:
        return len(self.dom)

    def hom(self, a: int, b: int) -> list:
        return self._hom.get((a, b), [])

    def is_identity(self, f: int) -> bool:
        return self._is_identity[f]

    def compose(self, f: int, g: int) -> int:
        try:
            return self.comp[f][g]
        except KeyError:
            raise NotComposable(f"cannot compose {self.mlabels[f]} with {self.mlabels[g]}") from None

    def is_empty(self) -> bool:
        return not self.objects

    @cached_property
    def iso_classes(self) -> "IsoClassIndex":
        return iso_class_index(self)

    def to_json(self) -> str:
        triples = [[f, g, h] for f in range(self.n_morphisms) for g, h in sorted(self.comp[f].items())]
        doc = {
            "version": 1,
            "objects": [{"id": i, "label": str(lab)} for i, lab in enumerate(self.objects)],
            "morphisms": [
                {"id": f, "dom": self.dom[f], "cod": self.cod[f], "label": str(self.mlabels[f])}
                for f in range(self.n_morphisms)
            ],
            "identity": self.identity,
            "composition": triples,
        }
        return json.dumps(doc)

    @classmethod
    def from_json(cls, text: str) -> "FiniteCategory":
        doc = json.loads(text)
        objs = [o["label"] for o in sorted(doc["objects"], key=lambda o: o["id"])]
        mors = sorted(doc["morphisms"], key=lambda m: m["id"])
        comp = [dict() for _ in mors]
        for f, g, h in doc["composition"]:
            comp[f][g] = h
        return cls(
            objs,
            [m["dom"] for m in mors],
            [m["cod"] for m in mors],
            doc["identity"],
            comp,
            [m["label"] for m in mors],
        )


def from_table(objects, morphisms, identity, compose) -> FiniteCategory:
    """Build a category from ``[(dom, cod, label)]`` and a composition callable."""
    dom = [m[0] for m in morphisms]
    cod = [m[1] for m in morphisms]
    labels = [m[2] if len(m) > 2 else str(i) for i, m in enumerate(morphisms)]
    n = len(objects)
    out = [[] for _ in range(n)]
    for f, a in enumerate(dom):
        out[a].append(f)
    comp = [{g: compose(f, g) for g in out[cod[f]]} for f in range(len(dom))]
    return FiniteCategory(objects, dom, cod, identity, comp, labels)


def group_category(G) -> FiniteCategory:
    """One-object category of a permutation group."""
    morphisms = [(0, 0, str(i)) for i in range(G.order)]
    return from_table(["*"], morphisms, [0], G.mul)


def poset_category(elements, leq) -> FiniteCategory:
    n = len(elements)
    pairs = [(a, b) for a in range(n) for b in range(n) if leq(a, b)]
    pos = {ab: i for i, ab in enumerate(pairs)}
    morphisms = [(a, b, f"{a}<={b}") for a, b in pairs]
    identity = [pos[(a, a)] for a in range(n)]
    return from_table(
        [str(e) for e in elements], morphisms, identity, lambda f, g: pos[(pairs[f][0], pairs[g][1])]
    )


def empty_category() -> FiniteCategory:
    return FiniteCategory([], [], [], [], [])


def validate(C: FiniteCategory) -> list:
    """All violations of the category axioms, as human-readable strings."""
    problems = []
    n, m = C.n_objects, C.n_morphisms
    if len(C.identity) != n:
        return [f"identity table has {len(C.identity)} entries for {n} objects"]
    for a, i in enumerate(C.identity):
        if not (0 <= i < m) or C.dom[i] != a or C.cod[i] != a:
            problems.append(f"identity of object {a} is not an endomorphism of it")
    if problems:
        return problems
    for f in range(m):
        expected = set(C.out[C.cod[f]])
        got = set(C.comp[f])
        if got != expected:
            problems.append(f"composition of {C.mlabels[f]} defined on the wrong set")
        for g, h in C.comp[f].items():
            if not (0 <= h < m) or C.dom[h] != C.dom[f] or C.cod[h] != C.cod[g]:
                problems.append(f"comp({C.mlabels[f]}, {C.mlabels[g]}) has wrong domain/codomain")
    if problems:
        return problems
    for f in range(m):
        a, b = C.dom[f], C.cod[f]
        if C.comp[C.identity[a]].get(f) != f:
            problems.append(f"left identity law fails for {C.mlabels[f]}")
        if C.comp[f].get(C.identity[b]) != f:
            problems.append(f"right identity law fails for {C.mlabels[f]}")
    for f in range(m):
        cf = C.comp[f]
        for g, fg in cf.items():
            cg = C.comp[g]
            cfg = C.comp[fg]
            for h, gh in cg.items():
                if cfg[h] != cf[gh]:
                    problems.append(
                        f"associativity fails for ({C.mlabels[f]}, {C.mlabels[g]}, {C.mlabels[h]})"
                    )
    return problems


def inverse_of(C: FiniteCategory, f: int):
    """A two-sided inverse of ``f``, or ``None``."""
    a, b = C.dom[f], C.cod[f]
    ida, idb = C.identity[a], C.identity[b]
    for g in C.hom(b, a):
        if C.comp[f][g] == ida and C.comp[g][f] == idb:
            return g
    return None


def is_iso(C: FiniteCategory, f: int) -> bool:
    return inverse_of(C, f) is not None


def is_EI(C: FiniteCategory) -> bool:
    return all(is_iso(C, f) for a in range(C.n_objects) for f in C.hom(a, a))


@dataclass
class IsoClassIndex:
    classes: list  # sorted lists of object ids; classes ordered by least member
    class_of: list
    aut_size: list  # |C(a)| per object

    def __len__(self):
        return len(self.classes)

    def size(self, k: int) -> int:
        return len(self.classes[k])

    def rep(self, k: int) -> int:
        return self.classes[k][0]


def iso_class_index(C: FiniteCategory) -> IsoClassIndex:
    n = C.n_objects
    parent = list(range(n))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for a in range(n):
        for b in range(a + 1, n):
            if find(a) == find(b) or not C.hom(a, b) or not C.hom(b, a):
                continue
            if any(is_iso(C, f) for f in C.hom(a, b)):
                parent[find(b)] = find(a)
    groups = {}
    for a in range(n):
        groups.setdefault(find(a), []).append(a)
    classes = sorted(groups.values())
    class_of = [0] * n
    for k, members in enumerate(classes):
        for a in members:
            class_of[a] = k
    return IsoClassIndex(classes, class_of, [len(C.hom(a, a)) for a in range(n)])


def heights(C: FiniteCategory) -> list:
    """Longest chain of nonisomorphisms ending at each object."""
    idx = C.iso_classes
    k = len(idx)
    succ = [set() for _ in range(k)]
    for f in range(C.n_morphisms):
        ca, cb = idx.class_of[C.dom[f]], idx.class_of[C.cod[f]]
        if ca != cb:
            succ[ca].add(cb)
        elif not is_iso(C, f):
            raise CycleDetected(f"{C.mlabels[f]} is a noninvertible morphism inside an isomorphism class")
    indeg = [0] * k
    for s in succ:
        for t in s:
            indeg[t] += 1
    ht = [0] * k
    ready = [c for c in range(k) if indeg[c] == 0]
    done = 0
    while ready:
        c = ready.pop()
        done += 1
        for t in succ[c]:
            ht[t] = max(ht[t], ht[c] + 1)
            indeg[t] -= 1
            if indeg[t] == 0:
                ready.append(t)
    if done != k:
        raise CycleDetected("nonisomorphisms form a cycle; the category is not EI")
    return [ht[idx.class_of[a]] for a in range(C.n_objects)]


@dataclass
class FunctorMap:
    source: FiniteCategory
    target: FiniteCategory
    obj_map: list
    mor_map: list

    def violations(self) -> list:
        S, T = self.source, self.target
        out = []
        for f in range(S.n_morphisms):
            F = self.mor_map[f]
            if T.dom[F] != self.obj_map[S.dom[f]] or T.cod[F] != self.obj_map[S.cod[f]]:
                out.append(f"{S.mlabels[f]} mapped with wrong domain/codomain")
        for a in range(S.n_objects):
            if self.mor_map[S.identity[a]] != T.identity[self.obj_map[a]]:
                out.append(f"identity of object {a} not preserved")
        for f in range(S.n_morphisms):
            for g, h in S.comp[f].items():
                if T.comp[self.mor_map[f]].get(self.mor_map[g]) != self.mor_map[h]:
                    out.append(f"composition ({S.mlabels[f]}, {S.mlabels[g]}) not preserved")
        return out

    def is_faithful(self) -> bool:
        S = self.source
        for a in range(S.n_objects):
            for b in range(S.n_objects):
                images = [self.mor_map[f] for f in S.hom(a, b)]
                if len(set(images)) != len(images):
                    return False
        return True

    def is_full(self) -> bool:
        S, T = self.source, self.target
        for a in range(S.n_objects):
            for b in range(S.n_objects):
                images = {self.mor_map[f] for f in S.hom(a, b)}
                if images != set(T.hom(self.obj_map[a], self.obj_map[b])):
                    return False
        return True

    def compose(self, other: "FunctorMap") -> "FunctorMap":
        """``self`` then ``other``."""
        return FunctorMap(
            self.source,
            other.target,
            [other.obj_map[x] for x in self.obj_map],
            [other.mor_map[f] for f in self.mor_map],
        )


def identity_functor(C: FiniteCategory) -> FunctorMap:
    return FunctorMap(C, C, list(range(C.n_objects)), list(range(C.n_morphisms)))


def full_subcategory(C: FiniteCategory, keep):
    """Full subcategory on the objects accepted by ``keep`` and its inclusion functor.

    ``keep`` is a predicate on object ids or a collection of object ids.
    """
    if callable(keep):
        objs = [a for a in range(C.n_objects) if keep(a)]
    else:
        objs = sorted(set(keep))
    onew = {a: i for i, a in enumerate(objs)}
    mors = [f for f in range(C.n_morphisms) if C.dom[f] in onew and C.cod[f] in onew]
    mnew = {f: i for i, f in enumerate(mors)}
    comp = [{mnew[g]: mnew[h] for g, h in C.comp[f].items() if g in mnew} for f in mors]
    sub = FiniteCategory(
        [C.objects[a] for a in objs],
        [onew[C.dom[f]] for f in mors],
        [onew[C.cod[f]] for f in mors],
        [mnew[C.identity[a]] for a in objs],
        comp,
        [C.mlabels[f] for f in mors],
    )
    return sub, FunctorMap(sub, C, objs, mors)


def skeleton(C: FiniteCategory):
    """Full subcategory on the least object of each isomorphism class."""
    idx = C.iso_classes
    return full_subcategory(C, [members[0] for members in idx.classes])


def coslice(C: FiniteCategory, A, x: int, strict: bool = False) -> FiniteCategory:
    """``x/A`` (or ``x//A`` when strict): morphisms from ``x`` into objects of ``A``.

    A morphism ``phi -> psi`` is a ``u`` in ``A`` with ``phi;u == psi``.  ``A`` is a
    collection of object ids of ``C`` (``None`` for all of ``C``).
    """
    inA = set(range(C.n_objects)) if A is None else set(A)
    objs = [f for f in C.out[x] if C.cod[f] in inA and not (strict and is_iso(C, f))]
    opos = {f: i for i, f in enumerate(objs)}
    by_cod = {}
    for f in objs:
        by_cod.setdefault(C.cod[f], []).append(f)
    mors = []
    for phi in objs:
        for u in C.out[C.cod[phi]]:
            if C.cod[u] not in inA:
                continue
            psi = C.comp[phi][u]
            if psi in opos:
                mors.append((opos[phi], opos[psi], u))
    return _under_over(C, objs, mors, opos, lambda phi: f"{C.mlabels[phi]}#{phi}", over=False)


def slice_(C: FiniteCategory, A, y: int, strict: bool = False) -> FiniteCategory:
    """``A/y`` (or ``A//y`` when strict): morphisms from objects of ``A`` into ``y``."""
    inA = set(range(C.n_objects)) if A is None else set(A)
    objs = [f for f in C.into[y] if C.dom[f] in inA and not (strict and is_iso(C, f))]
    opos = {f: i for i, f in enumerate(objs)}
    mors = []
    for psi in objs:
        for u in C.into[C.dom[psi]]:
            if C.dom[u] not in inA:
                continue
            phi = C.comp[u][psi]
            if phi in opos:
                mors.append((opos[phi], opos[psi], u))
    return _under_over(C, objs, mors, opos, lambda phi: f"{C.mlabels[phi]}#{phi}", over=True)


def _under_over(C, objs, mors, opos, label, over):
    mors.sort()
    mpos = {m: i for i, m in enumerate(mors)}
    identity = [0] * len(objs)
    for i, phi in enumerate(objs):
        end = C.dom[phi] if over else C.cod[phi]
        identity[i] = mpos[(i, i, C.identity[end])]
    out = {}
    for k, (s, t, u) in enumerate(mors):
        out.setdefault(s, []).append(k)
    comp = []
    for s, t, u in mors:
        row = {}
        for k2 in out.get(t, ()):
            _, t2, u2 = mors[k2]
            row[k2] = mpos[(s, t2, C.comp[u][u2])]
        comp.append(row)
    return FiniteCategory(
        [label(phi) for phi in objs],
        [m[0] for m in mors],
        [m[1] for m in mors],
        identity,
        comp,
        [f"u#{m[2]}" for m in mors],
    )


def opposite(C: FiniteCategory) -> FiniteCategory:
    comp = [dict() for _ in range(C.n_morphisms)]
    for f in range(C.n_morphisms):
        for g, h in C.comp[f].items():
            comp[g][f] = h
    return FiniteCategory(C.objects, C.cod, C.dom, C.identity, comp, C.mlabels)


def initial_objects(C: FiniteCategory) -> list:
    return [a for a in range(C.n_objects) if all(len(C.hom(a, b)) == 1 for b in range(C.n_objects))]


def terminal_objects(C: FiniteCategory) -> list:
    return [b for b in range(C.n_objects) if all(len(C.hom(a, b)) == 1 for a in range(C.n_objects))]


def is_thin(C: FiniteCategory) -> bool:
    return all(len(v) <= 1 for v in C._hom.values())


def is_mono(C: FiniteCategory, f: int) -> bool:
    """``g;f == h;f`` implies ``g == h``."""
    seen = {}
    for g in C.into[C.dom[f]]:
        key = (C.dom[g], C.comp[g][f])
        if key in seen:
            return False
        seen[key] = g
    return True


def is_epi(C: FiniteCategory, f: int) -> bool:
    seen = set()
    for g in C.out[C.cod[f]]:
        key = (C.cod[g], C.comp[f][g])
        if key in seen:
            return False
        seen.add(key)
    return True


def is_left_ideal(C: FiniteCategory, sub_objects) -> bool:
    """Every morphism out of the subset lands back in it."""
    s = set(sub_objects)
    return all(C.cod[f] in s for a in s for f in C.out[a])
