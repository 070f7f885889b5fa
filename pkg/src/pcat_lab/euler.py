"""Weightings, coweightings and Euler characteristics of finite categories, in exact rationals."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .category import FiniteCategory, CycleDetected, coslice, heights, is_EI, skeleton, slice_


class NoWeighting(ArithmeticError):
    pass


class NonUniqueWeighting(ArithmeticError):
    pass


def fmt(q) -> str:
    """Rational as ``num/den`` (``num`` alone for integers)."""
    q = Fraction(q)
    return str(q.numerator) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"


def class_matrix(C: FiniteCategory) -> list:
    """Hom-set sizes between representatives of the isomorphism classes."""
    idx = C.iso_classes
    reps = [members[0] for members in idx.classes]
    return [[len(C.hom(a, b)) for b in reps] for a in reps]


@dataclass
class Weighting:
    kind: str  # "weighting" or "coweighting"
    classes: list
    values: list  # one Fraction per class; the per-object value is value / class size
    method: str

    def per_object(self, n_objects: int) -> list:
        out = [Fraction(0)] * n_objects
        for members, v in zip(self.classes, self.values):
            for a in members:
                out[a] = v / len(members)
        return out

    @property
    def total(self) -> Fraction:
        return sum(self.values, Fraction(0))

    def support(self) -> list:
        """Indices of classes with nonzero value."""
        return [k for k, v in enumerate(self.values) if v != 0]

    def as_dict(self):
        return {
            "kind": self.kind,
            "method": self.method,
            "classes": self.classes,
            "values": [fmt(v) for v in self.values],
        }


def _class_heights(C: FiniteCategory) -> list:
    ht = heights(C)
    return [ht[members[0]] for members in C.iso_classes.classes]


def _triangular(Z: list, order: list, transpose: bool) -> list:
    n = len(Z)
    k = [Fraction(0)] * n
    for a in order:
        s = Fraction(1)
        for b in range(n):
            if b != a:
                zab = Z[b][a] if transpose else Z[a][b]
                if zab:
                    s -= zab * k[b]
        diag = Z[a][a]
        k[a] = s / diag
    return k


def solve_exact(A: list, rhs: list) -> list:
    """Unique solution of ``A x = rhs`` by Gauss-Jordan elimination over Q."""
    n = len(A)
    m = len(A[0]) if n else 0
    M = [[Fraction(x) for x in row] + [Fraction(r)] for row, r in zip(A, rhs)]
    pivcols = []
    row = 0
    for col in range(m):
        piv = next((r for r in range(row, n) if M[r][col] != 0), None)
        if piv is None:
            continue
        M[row], M[piv] = M[piv], M[row]
        inv = 1 / M[row][col]
        M[row] = [x * inv for x in M[row]]
        for r in range(n):
            if r != row and M[r][col] != 0:
                f = M[r][col]
                M[r] = [x - f * y for x, y in zip(M[r], M[row])]
        pivcols.append(col)
        row += 1
    if any(all(x == 0 for x in M[r][:m]) and M[r][m] != 0 for r in range(row, n)):
        raise NoWeighting("the linear system has no solution")
    if len(pivcols) < m:
        raise NonUniqueWeighting("the linear system has several solutions")
    x = [Fraction(0)] * m
    for r, col in enumerate(pivcols):
        x[col] = M[r][m]
    return x


def _solve(C: FiniteCategory, kind: str, method: str) -> Weighting:
    Z = class_matrix(C)
    classes = C.iso_classes.classes
    n = len(Z)
    transpose = kind == "coweighting"
    if method == "auto":
        method = "triangular-EI" if is_EI(C) else "general-solve"
    if method == "triangular-EI":
        try:
            ht = _class_heights(C)
        except CycleDetected as err:
            raise NoWeighting(f"triangular method needs an EI category: {err}") from None
        # the weighting is solved from the top down, the coweighting from the bottom up
        order = sorted(range(n), key=lambda c: (ht[c], c), reverse=not transpose)
        values = _triangular(Z, order, transpose)
    else:
        A = [[Z[b][a] for b in range(n)] for a in range(n)] if transpose else Z
        values = solve_exact(A, [1] * n)
    return Weighting(kind, classes, values, method)


def weighting(C: FiniteCategory, method: str = "auto") -> Weighting:
    return _solve(C, "weighting", method)


def coweighting(C: FiniteCategory, method: str = "auto") -> Weighting:
    return _solve(C, "coweighting", method)


def check_weighting(C: FiniteCategory, w: Weighting) -> bool:
    """Does ``w`` satisfy its defining linear system exactly?"""
    Z = class_matrix(C)
    n = len(Z)
    for a in range(n):
        if w.kind == "weighting":
            s = sum(Z[a][b] * w.values[b] for b in range(n))
        else:
            s = sum(w.values[b] * Z[b][a] for b in range(n))
        if s != 1:
            return False
    return True


@dataclass
class EulerReport:
    chi: Fraction
    via_weighting: Fraction
    via_coweighting: Fraction

    @property
    def chi_reduced(self) -> Fraction:
        return self.chi - 1

    @property
    def consistent(self) -> bool:
        return self.via_weighting == self.via_coweighting

    def as_dict(self):
        return {
            "chi": fmt(self.chi),
            "chi_reduced": fmt(self.chi_reduced),
            "via_weighting": fmt(self.via_weighting),
            "via_coweighting": fmt(self.via_coweighting),
            "consistent": self.consistent,
        }


def euler_characteristic(C: FiniteCategory) -> EulerReport:
    if C.n_objects == 0:
        return EulerReport(Fraction(0), Fraction(0), Fraction(0))
    w = weighting(C).total
    cw = coweighting(C).total
    if w != cw:
        raise AssertionError(f"weighting total {w} differs from coweighting total {cw}")
    return EulerReport(w, w, cw)


def _fingerprint(D: FiniteCategory):
    Z = class_matrix(D)
    return (D.n_objects, D.n_morphisms, tuple(tuple(r) for r in Z))


class SliceEuler:
    """Euler characteristics computed only through strict coslices.

    Each class contributes ``-reduced_chi(a//D) / |D(a)|``.  Results are memoized
    by the hom-count matrix of the skeleton, which determines the value.
    """

    def __init__(self):
        self.memo = {}

    def chi(self, D: FiniteCategory) -> Fraction:
        if D.n_objects == 0:
            return Fraction(0)
        sk, _ = skeleton(D)
        key = _fingerprint(sk)
        hit = self.memo.get(key)
        if hit is not None:
            return hit
        total = Fraction(0)
        for a in range(sk.n_objects):
            sub = coslice(sk, None, a, strict=True)
            total += (1 - self.chi(sub)) / len(sk.hom(a, a))
        self.memo[key] = total
        return total


_SHARED = SliceEuler()


def weighting_via_slices(C: FiniteCategory, engine: SliceEuler | None = None) -> Weighting:
    if not is_EI(C):
        raise NoWeighting("the slice formula needs an EI category")
    engine = engine or _SHARED
    classes = C.iso_classes.classes
    values = []
    for members in classes:
        a = members[0]
        sub = coslice(C, None, a, strict=True)
        values.append((1 - engine.chi(sub)) / len(C.hom(a, a)))
    return Weighting("weighting", classes, values, "slices")


def coweighting_via_slices(C: FiniteCategory, engine: SliceEuler | None = None) -> Weighting:
    if not is_EI(C):
        raise NoWeighting("the slice formula needs an EI category")
    engine = engine or _SHARED
    classes = C.iso_classes.classes
    values = []
    for members in classes:
        b = members[0]
        sub = slice_(C, None, b, strict=True)
        values.append((1 - engine.chi(sub)) / len(C.hom(b, b)))
    return Weighting("coweighting", classes, values, "slices")


def poset_local_sum(C: FiniteCategory) -> Fraction:
    """``sum_b -reduced_chi(C_{<b})`` for a poset category (strict slices over each object)."""
    total = Fraction(0)
    for b in range(C.n_objects):
        below = slice_(C, None, b, strict=True)
        total += 1 - euler_characteristic(below).chi
    return total


@dataclass
class PGroupValues:
    """Computed and predicted values for the proper-subgroup categories of a p-group."""

    p: int
    order: int
    cyclic: bool
    mobius: int
    center_index: int
    chi_red_S: Fraction
    chi_red_Ftilde: Fraction
    chi_red_F: Fraction
    chi_O: Fraction

    @property
    def predicted(self) -> dict:
        return {
            "chi_red_S": Fraction(self.mobius),
            "chi_red_Ftilde": Fraction(self.mobius, self.center_index),
            "chi_red_F": Fraction(self.mobius, self.center_index),
            "chi_O": Fraction(1, self.p) if self.cyclic else Fraction(1),
        }

    @property
    def computed(self) -> dict:
        return {
            "chi_red_S": self.chi_red_S,
            "chi_red_Ftilde": self.chi_red_Ftilde,
            "chi_red_F": self.chi_red_F,
            "chi_O": self.chi_O,
        }

    @property
    def agree(self) -> bool:
        return self.predicted == self.computed

    def as_dict(self):
        return {
            "order": self.order,
            "p": self.p,
            "mobius": self.mobius,
            "center_index": self.center_index,
            "computed": {k: fmt(v) for k, v in self.computed.items()},
            "predicted": {k: fmt(v) for k, v in self.predicted.items()},
            "agree": self.agree,
        }


def pgroup_values(P, p: int) -> PGroupValues:
    """Euler characteristics of the proper/nonidentity subgroup categories of the p-group ``P``."""
    from .lattice import enumerate_p_subgroups, lattice_mobius
    from .perm import center, is_cyclic
    from .subcats import build

    L = enumerate_p_subgroups(P, p)
    top = L.index(P.whole())
    if P.order == 1:
        raise ValueError("need a nonidentity p-group")
    open_ = "interval:(1..P)"
    S = build(P, p, "S", open_, L)
    Ft = build(P, p, "FTilde", open_, L)
    F = build(P, p, "F", open_, L)
    O = build(P, p, "O", "interval:[1..P)", L)
    return PGroupValues(
        p=p,
        order=P.order,
        cyclic=is_cyclic(P.whole()),
        mobius=lattice_mobius(L, 0, top),
        center_index=P.order // center(P.whole()).order,
        chi_red_S=euler_characteristic(S).chi_reduced,
        chi_red_Ftilde=euler_characteristic(Ft).chi_reduced,
        chi_red_F=euler_characteristic(F).chi_reduced,
        chi_O=euler_characteristic(O).chi,
    )
