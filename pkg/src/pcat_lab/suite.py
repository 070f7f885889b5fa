"""Check orchestration: every verification runs as a named check with a status and a data payload."""

from __future__ import annotations

import json
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction

from . import catalog
from .category import (
    coslice,
    initial_objects,
    is_EI,
    is_epi,
    is_mono,
    is_thin,
    opposite,
    slice_,
    validate,
)
from .euler import (
    coweighting,
    coweighting_via_slices,
    euler_characteristic,
    fmt,
    pgroup_values,
    poset_local_sum,
    weighting,
    weighting_via_slices,
)
from .homology import (
    BudgetExceeded,
    betti,
    euler_from_nerve,
    induced_map,
    nerve_complex,
    verify_inclusion,
)
from .lattice import (
    EquivalenceViolation,
    enumerate_p_subgroups,
    f_selfcentralizing,
    mobius_table,
)
from .perm import (
    CapExceeded,
    centralizer,
    frattini,
    normalizer,
    o_p,
    quotient_group,
    transporter,
)
from .subcats import (
    FLAVORS,
    PreconditionViolated,
    aut_sizes,
    build,
    flavor_functor,
    fusion_extends,
    inclusion,
)

STATUSES = ("pass", "fail", "refuted", "consistent", "reported", "skipped-budget")
OK_STATUSES = ("pass", "refuted", "consistent", "reported")

DEFAULT_DMAX = {"S": 3, "T": 2, "L": 2, "F": 3, "O": 3, "FTilde": 3}
FILTERS = ("all", "star", "star-eab", "sfc", "sfc-rad", "rad", "star-rad")

GROUP_SUITES = (
    "lattice",
    "radical-contains-op",
    "functors",
    "euler-slices",
    "supports",
    "slice-identities",
    "pgroup-closed-forms",
    "inclusions",
    "sfc-counterexample",
    "radical-detection",
    "extension",
    "nerve-checks",
)
GLOBAL_SUITES = ("klein-orbit", "spectral", "conjecture-scan")
ALL_SUITES = GROUP_SUITES + GLOBAL_SUITES

# inclusions claimed to be homotopy equivalences: (part, flavor, smaller filter, larger filter)
INCLUSIONS = (
    ("poset", "S", "star-rad", "star"),
    ("poset", "S", "sfc-rad", "sfc"),
    ("poset", "S", "star-eab", "star"),
    ("transporter", "T", "star-rad", "star"),
    ("transporter", "T", "sfc-rad", "sfc"),
    ("transporter", "T", "star-eab", "star"),
    ("fusion", "F", "star-eab", "star"),
    ("orbit", "O", "rad", "all"),
    ("orbit", "O", "star-rad", "star"),
    ("orbit", "O", "sfc-rad", "sfc"),
    ("exterior-quotient", "FTilde", "sfc-rad", "sfc"),
    ("exterior-quotient", "FTilde", "star-eab", "star"),
    ("linking", "L", "sfc-rad", "sfc"),
    ("linking", "L", "star-eab", "star"),
)

CLAIMS = {
    "lattice": "Moebius recursion, conjugation closure and selfcentralizing/radical predicates",
    "radical-contains-op": "every G-radical p-subgroup contains O_p(G)",
    "functors": "coset categories are valid EI categories related by one faithful and five full functors",
    "euler-slices": "weighting by linear solve equals weighting by strict coslices",
    "supports": "vanishing of weightings and coweightings off distinguished subgroups",
    "slice-identities": "strict slices have the Euler characteristic of subgroup posets of automizers",
    "pgroup-closed-forms": "closed forms for proper-subgroup categories of a p-group",
    "inclusions": "inclusions of radical/elementary abelian subcategories are homotopy equivalences",
    "sfc-counterexample": "selfcentralizing Brown poset inclusion can fail to be an equivalence",
    "radical-detection": "noncontractible automizer posets occur only at radical subgroups",
    "extension": "fusion morphism extension criterion agrees with direct search",
    "nerve-checks": "nerve complexes: boundary squares to zero, poset Euler characteristic, degree-0 homology",
    "klein-orbit": "orbit category of proper subgroups of the Klein four-group",
    "spectral": "flag spectral sequence for rank-two elementary abelian groups degenerates at E2",
    "conjecture-scan": "E2 vanishing off the last column (conjectural, reported only)",
}


@dataclass
class CheckResult:
    id: str
    claim: str
    status: str
    data: dict = field(default_factory=dict)
    wall_time: float = 0.0

    def as_dict(self, timing: bool = True):
        d = {"id": self.id, "claim": self.claim, "status": self.status, "data": self.data}
        if timing:
            d["wall_time"] = round(self.wall_time, 4)
        return d


@dataclass
class SuiteConfig:
    groups: list = field(default_factory=list)  # [(source, [primes] or None)]
    suites: list = field(default_factory=list)
    fields: list = field(default_factory=lambda: ["Q", "Fp"])
    dmax: dict = field(default_factory=lambda: dict(DEFAULT_DMAX))
    element_cap: int = 10_000
    subgroup_cap: int = 20_000
    chain_cap: int | None = None
    workers: int = 1

    @classmethod
    def from_dict(cls, doc: dict) -> "SuiteConfig":
        cfg = cls()
        groups = []
        for g in doc.get("groups", []):
            if isinstance(g, str):
                groups.append((g, None))
            else:
                groups.append((g["group"], g.get("primes")))
        cfg.groups = groups
        suites = doc.get("suites", [])
        if suites == "all" or suites == ["all"]:
            suites = list(ALL_SUITES)
        unknown = [s for s in suites if s not in ALL_SUITES]
        if unknown:
            raise ValueError(f"unknown suites: {', '.join(unknown)}")
        cfg.suites = list(suites)
        if "fields" in doc:
            cfg.fields = list(doc["fields"])
        for k, v in doc.get("dmax", {}).items():
            from .subcats import parse_flavor

            cfg.dmax[parse_flavor(k)] = int(v)
        budgets = doc.get("budgets", {})
        cfg.element_cap = int(budgets.get("elements", cfg.element_cap))
        cfg.subgroup_cap = int(budgets.get("subgroups", cfg.subgroup_cap))
        if "chains" in budgets:
            cfg.chain_cap = int(budgets["chains"])
        cfg.workers = int(doc.get("workers", 1))
        caps = [cfg.element_cap, cfg.subgroup_cap, cfg.workers]
        if cfg.chain_cap is not None:
            caps.append(cfg.chain_cap)
        if min(caps) <= 0:
            raise ValueError("budgets and worker counts must be positive")
        for _, primes in cfg.groups:
            for p in primes or ():
                if p < 2 or any(p % q == 0 for q in range(2, p)):
                    raise ValueError(f"{p} is not prime")
        return cfg

    @classmethod
    def load(cls, path) -> "SuiteConfig":
        with open(path) as fh:
            return cls.from_dict(json.load(fh))


@dataclass
class SuiteReport:
    checks: list = field(default_factory=list)

    @property
    def exit_code(self) -> int:
        return 0 if all(c.status in OK_STATUSES or c.status == "skipped-budget" for c in self.checks) else 1

    def counts(self) -> dict:
        out = {}
        for c in self.checks:
            out[c.status] = out.get(c.status, 0) + 1
        return out

    def as_dict(self, timing: bool = True):
        return {"version": 1, "checks": [c.as_dict(timing) for c in self.checks]}


class Context:
    """Lazily built lattice and categories for one (group, prime)."""

    def __init__(self, name: str, G, p: int, cfg: SuiteConfig):
        self.name = name
        self.G = G
        self.p = p
        self.cfg = cfg
        self.lattice = enumerate_p_subgroups(G, p, cfg.subgroup_cap)
        self._cats = {}

    def cat(self, flavor, filt="all", skeletal=False):
        key = (flavor, filt, skeletal)
        if key not in self._cats:
            self._cats[key] = build(self.G, self.p, flavor, filt, self.lattice, skeletal=skeletal)
        return self._cats[key]

    @property
    def fields(self) -> list:
        return [f"F{self.p}" if f.lower() == "fp" else f for f in self.cfg.fields]

    def tag(self, *parts) -> str:
        return "/".join([self.name, f"p{self.p}", *parts])


def _status(ok: bool) -> str:
    return "pass" if ok else "fail"


def _run(cid, claim, fn):
    t0 = time.perf_counter()
    try:
        status, data = fn()
    except (BudgetExceeded, CapExceeded) as err:
        status, data = "skipped-budget", {"reason": str(err)}
    except (AssertionError, EquivalenceViolation) as err:
        status, data = "fail", {"error": str(err)}
    return CheckResult(cid, claim, status, data, time.perf_counter() - t0)


# ---- per-group suites ------------------------------------------------------


def suite_lattice(ctx: Context):
    L, G, p = ctx.lattice, ctx.G, ctx.p
    claim = CLAIMS["lattice"]

    def mobius_identity():
        n = len(L)
        bad = 0
        for a in range(n):
            mu = mobius_table(L.leq, n, a)
            for b in mu:
                if b != a and sum(mu[c] for c in mu if L.leq(c, b)) != 0:
                    bad += 1
        return _status(bad == 0), {"subgroups": n, "violations": bad}

    def closure():
        masks = {H.mask for H in L.subgroups}
        ok = all(H.conjugate(g).mask in masks for H in L.subgroups for g in (G.index[x] for x in G.generators))
        return _status(ok), {"subgroups": len(L)}

    def selfcentralizing():
        P = L.sylow
        below = [H for H in L.subgroups if H <= P]
        agree = all(f_selfcentralizing(G, p, P, H) == L.attrs[L.index(H)].is_G_selfcentralizing for H in below)
        return _status(agree), {"checked": len(below)}

    def radical_implication():
        P = L.sylow
        bad = []
        for H in L.subgroups:
            if H <= P:
                a = L.attrs[L.index(H)]
                if a.is_G_selfcentralizing and a.is_F_radical and not a.is_G_radical:
                    bad.append(L.index(H))
        return _status(not bad), {"violations": bad}

    return [
        _run(ctx.tag("lattice", "mobius-identity"), claim, mobius_identity),
        _run(ctx.tag("lattice", "conjugation-closure"), claim, closure),
        _run(ctx.tag("lattice", "selfcentralizing-equivalence"), claim, selfcentralizing),
        _run(ctx.tag("lattice", "fusion-radical-implies-group-radical"), claim, radical_implication),
    ]


def suite_radical_contains_op(ctx: Context):
    def check():
        L = ctx.lattice
        O = o_p(ctx.G, ctx.p)
        rad = [i for i in range(len(L)) if L.attrs[i].is_G_radical]
        bad = [i for i in rad if not O <= L.subgroups[i]]
        return _status(not bad), {"O_p_order": O.order, "radical": rad, "violations": bad}

    return [_run(ctx.tag("radical-contains-op"), CLAIMS["radical-contains-op"], check)]


def suite_functors(ctx: Context):
    claim = CLAIMS["functors"]
    out = []
    for fl in FLAVORS:

        def valid(fl=fl):
            C = ctx.cat(fl)
            problems = validate(C)
            aut_sizes(C)
            return _status(not problems and is_EI(C)), {
                "objects": C.n_objects,
                "morphisms": C.n_morphisms,
                "problems": problems[:5],
            }

        out.append(_run(ctx.tag("functors", f"valid-EI-{fl}"), claim, valid))

    def diagram():
        cats = {fl: ctx.cat(fl) for fl in FLAVORS}
        res = {}
        F_ST = flavor_functor(cats["S"], cats["T"])
        res["S->T faithful"] = F_ST.is_faithful() and not F_ST.violations()
        for a, b in (("T", "L"), ("L", "F"), ("F", "FTilde"), ("T", "O"), ("O", "FTilde")):
            Fn = flavor_functor(cats[a], cats[b])
            res[f"{a}->{b} full"] = Fn.is_full() and not Fn.violations()
        top = flavor_functor(cats["T"], cats["L"]).compose(flavor_functor(cats["L"], cats["F"]))
        top = top.compose(flavor_functor(cats["F"], cats["FTilde"]))
        bottom = flavor_functor(cats["T"], cats["O"]).compose(flavor_functor(cats["O"], cats["FTilde"]))
        res["square commutes"] = top.mor_map == bottom.mor_map
        return _status(all(res.values())), res

    out.append(_run(ctx.tag("functors", "diagram"), claim, diagram))

    def facts():
        res = {}
        F = ctx.cat("F", "star")
        res["fusion morphisms mono"] = all(is_mono(F, f) for f in range(F.n_morphisms))
        res["fusion slices thin"] = all(
            is_thin(slice_(F, None, k)) and is_thin(slice_(F, None, k, strict=True)) for k in range(F.n_objects)
        )
        O = ctx.cat("O")
        res["orbit morphisms epi"] = all(is_epi(O, f) for f in range(O.n_morphisms))
        star = _nonidentity_objects(O)
        res["orbit coslices thin"] = all(
            is_thin(coslice(O, star, h)) and is_thin(coslice(O, star, h, strict=True)) for h in range(O.n_objects)
        )
        res["trivial subgroup not initial"] = 0 not in initial_objects(O)
        Ft = ctx.cat("FTilde", "sfc")
        res["exterior quotient epi on sfc"] = all(is_epi(Ft, f) for f in range(Ft.n_morphisms))
        res["exterior quotient coslices thin on sfc"] = all(
            is_thin(coslice(Ft, None, h)) for h in range(Ft.n_objects)
        )
        Ls = ctx.cat("L", "sfc")
        res["linking mono and epi on sfc"] = all(is_mono(Ls, f) and is_epi(Ls, f) for f in range(Ls.n_morphisms))
        free = True
        for a in range(Ls.n_objects):
            for b in range(Ls.n_objects):
                if len(Ls.hom(a, b)) != Ls.subgroup(b).order * len(Ft.hom(a, b)):
                    free = False
        res["codomain acts freely on linking morphisms"] = free
        return _status(all(res.values())), res

    out.append(_run(ctx.tag("functors", "facts"), claim, facts))
    return out


def _nonidentity_objects(O):
    """Objects of a subgroup category other than the trivial subgroup."""
    return [a for a in range(O.n_objects) if O.subgroup(a).order > 1]


def suite_euler_slices(ctx: Context):
    claim = CLAIMS["euler-slices"]
    out = []
    for fl in FLAVORS:
        for filt in FILTERS:

            def check(fl=fl, filt=filt):
                C = ctx.cat(fl, filt)
                if C.n_objects == 0:
                    return "pass", {"objects": 0, "note": "empty category"}
                w, cw = weighting(C), coweighting(C)
                ws, cws = weighting_via_slices(C), coweighting_via_slices(C)
                wop = weighting(opposite(C))
                same_op = sorted(map(tuple, wop.classes)) == sorted(map(tuple, cw.classes)) and dict(
                    zip(map(tuple, wop.classes), wop.values)
                ) == dict(zip(map(tuple, cw.classes), cw.values))
                ok = w.values == ws.values and cw.values == cws.values and same_op
                data = {
                    "objects": C.n_objects,
                    "chi": fmt(w.total),
                    "weighting": [fmt(v) for v in w.values],
                    "coweighting": [fmt(v) for v in cw.values],
                    "opposite_agrees": same_op,
                }
                if fl == "S":
                    local = poset_local_sum(C)
                    data["local_sum"] = fmt(local)
                    ok = ok and local == w.total
                return _status(ok), data

            out.append(_run(ctx.tag("euler-slices", fl, filt), claim, check))
    return out


def _support_check(C, kind, allowed):
    w = weighting(C) if kind == "weighting" else coweighting(C)
    bad = [C.objects[m[0]] for k, m in enumerate(w.classes) if w.values[k] != 0 and not allowed(m[0])]
    return _status(not bad), {
        "support": [C.objects[w.classes[k][0]] for k in w.support()],
        "violations": bad,
    }


def suite_supports(ctx: Context):
    claim = CLAIMS["supports"]
    L = ctx.lattice

    def attr(C, a):
        return L.attrs[C.subgroup_index[a]]

    specs = [
        ("fusion-coweighting-eab", "F", "star", "coweighting", lambda C, a: attr(C, a).is_eab),
        ("exterior-coweighting-eab", "FTilde", "star", "coweighting", lambda C, a: attr(C, a).is_eab),
        ("orbit-weighting-radical", "O", "all", "weighting", lambda C, a: attr(C, a).is_G_radical),
        ("orbit-coweighting-cyclic", "O", "all", "coweighting", lambda C, a: attr(C, a).is_cyclic),
        ("linking-weighting-F-radical", "L", "sfc", "weighting", lambda C, a: attr(C, a).is_F_radical),
        ("exterior-weighting-F-radical", "FTilde", "sfc", "weighting", lambda C, a: attr(C, a).is_F_radical),
        ("poset-weighting-radical", "S", "star", "weighting", lambda C, a: attr(C, a).is_G_radical),
    ]
    out = []
    for name, fl, filt, kind, pred in specs:

        def check(fl=fl, filt=filt, kind=kind, pred=pred):
            C = ctx.cat(fl, filt)
            return _support_check(C, kind, lambda a: pred(C, a))

        out.append(_run(ctx.tag("supports", name), claim, check))

    def same_coweightings():
        F, Ft = ctx.cat("F", "star"), ctx.cat("FTilde", "star")
        a, b = coweighting(F), coweighting(Ft)
        ok = a.classes == b.classes and a.values == b.values
        return _status(ok), {"fusion": [fmt(v) for v in a.values], "exterior": [fmt(v) for v in b.values]}

    out.append(_run(ctx.tag("supports", "fusion-and-exterior-coweightings-equal"), claim, same_coweightings))
    return out


def _poset_chi(K, p, filt="star"):
    """Euler characteristic of a p-subgroup poset of the standalone group ``K``."""
    if K is None or K.order % p != 0:
        return Fraction(0) if filt == "star" else Fraction(1)
    return euler_characteristic(build(K, p, "S", filt)).chi


def automizer(G, H, kind: str):
    """``N_G(H)/H`` (orbit) or ``N_G(H)/H C_G(H)`` (exterior quotient) as a permutation group."""
    N = normalizer(G, H)
    D = H if kind == "orbit" else H.join(centralizer(G, H))
    Q, _ = quotient_group(N, D)
    return Q


def suite_slice_identities(ctx: Context):
    claim = CLAIMS["slice-identities"]
    G, p = ctx.G, ctx.p
    out = []

    def under(flavor, filt, strict, kind, nonidentity, sfc_only=False):
        C = ctx.cat(flavor, filt)
        rows = []
        ok = True
        for a in range(C.n_objects):
            H = C.subgroup(a)
            if nonidentity and H.order == 1:
                continue
            if sfc_only and not ctx.lattice.attrs[C.subgroup_index[a]].is_G_selfcentralizing:
                continue
            lhs = euler_characteristic(coslice(C, None, a, strict=strict)).chi
            rhs = _poset_chi(automizer(G, H, kind), p)
            rows.append([C.objects[a], fmt(lhs), fmt(rhs)])
            ok = ok and lhs == rhs
        return _status(ok), {"rows": rows}

    def over(flavor, filt):
        C = ctx.cat(flavor, filt)
        rows = []
        ok = True
        for b in range(C.n_objects):
            K = C.subgroup(b)
            lhs = euler_characteristic(slice_(C, None, b, strict=True)).chi
            Kg = K.as_group()
            rhs = euler_characteristic(build(Kg, p, "S", "interval:(1..P)")).chi if K.order > 1 else Fraction(0)
            rows.append([C.objects[b], fmt(lhs), fmt(rhs)])
            ok = ok and lhs == rhs
        return _status(ok), {"rows": rows}

    out.append(_run(ctx.tag("slice-identities", "poset-coslice"), claim,
                    lambda: under("S", "star", True, "orbit", True)))
    out.append(_run(ctx.tag("slice-identities", "orbit-coslice"), claim,
                    lambda: under("O", "all", True, "orbit", False)))
    out.append(_run(ctx.tag("slice-identities", "exterior-coslice-sfc"), claim,
                    lambda: under("FTilde", "sfc", True, "exterior", False)))
    out.append(_run(ctx.tag("slice-identities", "fusion-slice"), claim, lambda: over("F", "star")))
    out.append(_run(ctx.tag("slice-identities", "linking-slice"), claim, lambda: over("L", "star")))

    def poset_slice_objects():
        C = ctx.cat("S", "star")
        ok = True
        for b in range(C.n_objects):
            K = C.subgroup(b)
            sl = slice_(C, None, b)
            below = [i for i in range(len(ctx.lattice)) if ctx.lattice.subgroups[i].order > 1 and ctx.lattice.subgroups[i] <= K]
            ok = ok and sl.n_objects == len(below)
        return _status(ok), {"objects": C.n_objects}

    out.append(_run(ctx.tag("slice-identities", "poset-slice-objects"), claim, poset_slice_objects))
    return out


def suite_pgroup(ctx: Context):
    claim = CLAIMS["pgroup-closed-forms"]
    P = ctx.lattice.sylow
    if P.order == 1:
        return []
    Pg = P.as_group()
    p = ctx.p
    dmax = ctx.cfg.dmax["S"]

    def closed_forms():
        v = pgroup_values(Pg, p)
        return _status(v.agree), v.as_dict()

    def noncontractible_iff_eab():
        eab = ctx.lattice.attrs[ctx.lattice.sylow_index].is_eab
        res = {}
        for fl in ("S", "FTilde"):
            C = build(Pg, p, fl, "interval:(1..P)", skeletal=True)
            b = betti(C, dmax, ["Q"])["Q"]
            red = b.reduced if C.n_objects else [-1] + [0] * dmax
            res[fl] = {"reduced_betti": red, "nonzero": any(red)}
        ok = all(r["nonzero"] == eab for r in res.values())
        return _status(ok), {"elementary_abelian": eab, **res}

    def frattini_quotient():
        from .spectral import elementary_abelian_perm_group

        Phi = frattini(Pg.whole())
        r = 0
        q = P.order // Phi.order
        while q > 1:
            q //= p
            r += 1
        V = elementary_abelian_perm_group(p, r)
        A = build(Pg, p, "O", "interval:[1..P)", skeletal=True)
        B = build(V, p, "O", "interval:[1..P)", skeletal=True)
        chiA, chiB = euler_characteristic(A).chi, euler_characteristic(B).chi
        fld = f"F{p}"
        bA = betti(A, dmax, [fld])[fld].betti
        bB = betti(B, dmax, [fld])[fld].betti
        ok = chiA == chiB and bA == bB
        return _status(ok), {"rank": r, "chi": [fmt(chiA), fmt(chiB)], "betti": [bA, bB]}

    return [
        _run(ctx.tag("pgroup-closed-forms", "values"), claim, closed_forms),
        _run(ctx.tag("pgroup-closed-forms", "noncontractible-iff-elementary-abelian"), claim, noncontractible_iff_eab),
        _run(ctx.tag("pgroup-closed-forms", "frattini-quotient"), claim, frattini_quotient),
    ]


def _verify(ctx, small, big, fl, label):
    F = inclusion(small, big) if small.flavor == big.flavor else flavor_functor(small, big)
    return verify_inclusion(F, ctx.cfg.dmax[fl], ctx.fields, label, ctx.cfg.chain_cap)


def suite_inclusions(ctx: Context):
    claim = CLAIMS["inclusions"]
    out = []
    for part, fl, small, big in INCLUSIONS:

        def check(fl=fl, small=small, big=big):
            A = ctx.cat(fl, small, skeletal=True)
            C = ctx.cat(fl, big, skeletal=True)
            v = _verify(ctx, A, C, fl, f"{fl}[{small}] -> {fl}[{big}]")
            status = "consistent" if v.verdict == "consistent-with-equivalence" else "fail"
            return status, v.as_dict()

        out.append(_run(ctx.tag("inclusions", part, f"{fl}-{small}-in-{big}"), claim, check))

    def quotient():
        A = ctx.cat("F", "star", skeletal=True)
        C = ctx.cat("FTilde", "star", skeletal=True)
        v = _verify(ctx, A, C, "F", "F[star] -> FTilde[star]")
        status = "consistent" if v.verdict == "consistent-with-equivalence" else "fail"
        return status, v.as_dict()

    out.append(_run(ctx.tag("inclusions", "quotient", "F-star-to-FTilde-star"), claim, quotient))
    return out


def suite_sfc_counterexample(ctx: Context):
    def check():
        A = ctx.cat("S", "sfc", skeletal=True)
        C = ctx.cat("S", "star", skeletal=True)
        v = _verify(ctx, A, C, "S", "S[sfc] -> S[star]")
        status = "consistent" if v.verdict == "consistent-with-equivalence" else "refuted"
        return status, v.as_dict()

    return [_run(ctx.tag("sfc-counterexample"), CLAIMS["sfc-counterexample"], check)]


def suite_radical_detection(ctx: Context):
    claim = CLAIMS["radical-detection"]
    L, G, p = ctx.lattice, ctx.G, ctx.p
    dmax = 3

    def check(kind):
        rows = []
        ok = True
        P = L.sylow
        for cls in L.conj_classes:
            i = cls[0]
            H = L.subgroups[i]
            if kind == "exterior":
                # fusion system over the Sylow: use a class member inside P
                inside = [j for j in cls if L.subgroups[j] <= P]
                i = inside[0]
                H = L.subgroups[i]
            K = automizer(G, H, kind)
            if K.order % p:
                red = [0] * (dmax + 1)  # no nonidentity p-subgroups: empty poset
                red[0] = -1
            else:
                C = build(K, p, "S", "star", skeletal=True)
                red = betti(C, dmax, ["Q"])["Q"].reduced if C.n_objects else [-1] + [0] * dmax
            noncontractible = any(red)
            rad = L.attrs[i].is_G_radical if kind == "orbit" else L.attrs[i].is_F_radical
            rows.append({"subgroup": i, "reduced_betti": red, "radical": rad})
            if noncontractible and not rad:
                ok = False
        return _status(ok), {"rows": rows}

    return [
        _run(ctx.tag("radical-detection", "orbit-automizer"), claim, lambda: check("orbit")),
        _run(ctx.tag("radical-detection", "exterior-automizer"), claim, lambda: check("exterior")),
    ]


def suite_extension(ctx: Context):
    def check():
        L, G, p = ctx.lattice, ctx.G, ctx.p
        P = L.sylow
        below = [H for H in L.subgroups if H <= P]
        triples = 0
        positive = negative = 0
        disagreements = []
        for H in below:
            if not L.attrs[L.index(H)].is_G_selfcentralizing:
                continue
            NPH = normalizer(P, H)
            CH = centralizer(G, H)
            for N in below:
                if not (H <= N and N <= NPH):
                    continue
                for K in below:
                    seen = set()
                    for g in sorted(transporter(G, H, K)):
                        rep = min(G.mul(c, g) for c in CH.members)
                        if rep in seen:
                            continue
                        seen.add(rep)
                        try:
                            res = fusion_extends(G, p, P, H, N, K, rep)
                        except PreconditionViolated:
                            continue
                        triples += 1
                        positive += res.by_search
                        negative += not res.by_search
                        if not res.agree:
                            disagreements.append([L.index(H), L.index(N), L.index(K), rep])
        data = {"cases": triples, "extendable": positive, "not_extendable": negative,
                "disagreements": disagreements}
        if negative == 0:
            data["negative_cases"] = "vacuous"
        return _status(not disagreements), data

    return [_run(ctx.tag("extension"), CLAIMS["extension"], check)]


def suite_nerve_checks(ctx: Context):
    claim = CLAIMS["nerve-checks"]
    out = []

    def dd_zero():
        rows = {}
        ok = True
        for fl in FLAVORS:
            for filt in ("all", "star", "sfc"):
                C = ctx.cat(fl, filt, skeletal=True)
                d = 2 if fl in ("S", "F", "FTilde") else 1
                for fld in ctx.fields:
                    cx = nerve_complex(C, d, fld, ctx.cfg.chain_cap)
                    good = cx.check_dd_zero()
                    rows[f"{fl}[{filt}]/{fld}"] = good
                    ok = ok and good
        return _status(ok), rows

    def poset_euler():
        rows = {}
        ok = True
        for filt in FILTERS:
            C = ctx.cat("S", filt)
            if C.n_objects == 0:
                continue
            from_nerve = euler_from_nerve(C)
            leinster = euler_characteristic(C).chi
            rows[filt] = [from_nerve, fmt(leinster)]
            ok = ok and from_nerve == leinster
        return _status(ok), rows

    def degree_zero():
        rows = {}
        ok = True
        for fl in FLAVORS:
            for filt in ("star", "sfc"):
                C = ctx.cat(fl, filt, skeletal=True)
                if C.n_objects == 0:
                    continue
                b = betti(C, 0, ["Q", f"F{ctx.p}"], ctx.cfg.chain_cap, shortcut=False)
                vals = [t.betti[0] for t in b.values()]
                rows[f"{fl}[{filt}]"] = vals
                ok = ok and len(set(vals)) == 1
        return _status(ok), rows

    def naturality():
        # H_k(S*) -> H_k(T*) -> H_k(O*) against the composite, at the rank level
        S, T, O = (ctx.cat(fl, "star", skeletal=False) for fl in ("S", "T", "O"))
        f1, f2 = flavor_functor(S, T), flavor_functor(T, O)
        comp = f1.compose(f2)
        fld = f"F{ctx.p}"
        m1, m2, m12 = (induced_map(F, 1, fld, ctx.cfg.chain_cap) for F in (f1, f2, comp))
        ok = True
        for k in range(2):
            # rank(g f) <= min(rank f, rank g); equality forced when one factor is an isomorphism
            if m12.ranks[k] > min(m1.ranks[k], m2.ranks[k]):
                ok = False
            if m1.verdicts[k] == "iso" and m12.ranks[k] != m2.ranks[k]:
                ok = False
            if m2.verdicts[k] == "iso" and m12.ranks[k] != m1.ranks[k]:
                ok = False
        return _status(ok), {"S->T": m1.ranks, "T->O": m2.ranks, "S->O": m12.ranks}

    out.append(_run(ctx.tag("nerve-checks", "boundary-squared-zero"), claim, dd_zero))
    out.append(_run(ctx.tag("nerve-checks", "poset-euler-from-nerve"), claim, poset_euler))
    out.append(_run(ctx.tag("nerve-checks", "degree-zero-field-independent"), claim, degree_zero))
    out.append(_run(ctx.tag("nerve-checks", "naturality"), claim, naturality))
    return out


GROUP_SUITE_FUNCS = {
    "lattice": suite_lattice,
    "radical-contains-op": suite_radical_contains_op,
    "functors": suite_functors,
    "euler-slices": suite_euler_slices,
    "supports": suite_supports,
    "slice-identities": suite_slice_identities,
    "pgroup-closed-forms": suite_pgroup,
    "inclusions": suite_inclusions,
    "sfc-counterexample": suite_sfc_counterexample,
    "radical-detection": suite_radical_detection,
    "extension": suite_extension,
    "nerve-checks": suite_nerve_checks,
}


# ---- global suites ---------------------------------------------------------


def klein_orbit_checks(cfg: SuiteConfig):
    claim = CLAIMS["klein-orbit"]
    V = catalog.get("c2xc2")

    def data():
        from .euler import class_matrix

        O = build(V, 2, "O", "interval:[1..P)")
        Z = class_matrix(O)
        cw = coweighting(O)
        chi = euler_characteristic(O).chi
        ok = Z == [[4, 2, 2, 2], [0, 2, 0, 0], [0, 0, 2, 0], [0, 0, 0, 2]] and cw.values == [Fraction(1, 4)] * 4 and chi == 1
        return _status(ok), {"zeta": Z, "coweighting": [fmt(v) for v in cw.values], "chi": fmt(chi)}

    def bound():
        O = build(V, 2, "O", "interval:[1..P)")
        b = betti(O, 4, ["F2"], cfg.chain_cap)["F2"].betti
        ok = all(b[t + 1] >= 2 * t - 1 for t in (1, 2, 3))
        return _status(ok), {"betti_F2": b, "bounds": {t + 1: 2 * t - 1 for t in (1, 2, 3)}}

    def cyclic_not_equivalent():
        O = build(V, 2, "O", "all")
        cyc = build(V, 2, "O", "interval:[1..P)")
        v = verify_inclusion(inclusion(cyc, O), 3, ["F2"], "O[cyclic] -> O", cfg.chain_cap)
        status = "consistent" if v.verdict == "consistent-with-equivalence" else "refuted"
        return status, v.as_dict()

    return [
        _run("klein-orbit/exact-data", claim, data),
        _run("klein-orbit/betti-lower-bound", claim, bound),
        _run("klein-orbit/cyclic-inclusion", claim, cyclic_not_equivalent),
    ]


def spectral_checks(cfg: SuiteConfig):
    from .spectral import abutment_check, e1_e2_pages

    claim = CLAIMS["spectral"]
    out = []
    for p, nmax in ((2, 4), (3, 2)):

        def abut(p=p, nmax=nmax):
            rows = abutment_check(2, p, nmax, cfg.chain_cap)
            ok = all(r.equal for r in rows)
            return _status(ok), {"rows": [[r.n, r.e2_sum, r.betti] for r in rows]}

        out.append(_run(f"spectral/abutment/r2-p{p}", claim, abut))

    def bottom_row():
        rows = {}
        ok = True
        for p in (2, 3):
            pg = e1_e2_pages(2, p, 3, cfg.chain_cap)
            col = [pg.E2[s][0] for s in range(pg.smax + 1)]
            rows[f"p{p}"] = {"E2_row0": col, "E1": pg.E1, "E2": pg.E2, "d1_squared_zero": pg.d1_squared_zero}
            ok = ok and col[0] == 1 and all(x == 0 for x in col[1:]) and pg.d1_squared_zero
        return _status(ok), rows

    def lower_bounds():
        from .homology import betti as _betti
        from .spectral import elementary_abelian_perm_group

        res = {}
        ok = True
        for p, ts in ((2, (1, 2, 3)), (3, (1,))):
            V = elementary_abelian_perm_group(p, 2)
            O = build(V, p, "O", "interval:[1..P)")
            top = max(ts) + 1
            b = _betti(O, top, [f"F{p}"], cfg.chain_cap)[f"F{p}"].betti
            for t in ts:
                good = b[t + 1] >= p * t - 1
                res[f"p{p}/b{t + 1}"] = [b[t + 1], p * t - 1]
                ok = ok and good
        return _status(ok), res

    out.append(_run("spectral/bottom-row", claim, bottom_row))
    out.append(_run("spectral/betti-lower-bounds", claim, lower_bounds))
    return out


def conjecture_checks(cfg: SuiteConfig):
    from .spectral import conjecture_scan

    def scan():
        rows = conjecture_scan(tmax=3, budget=cfg.chain_cap)
        return "reported", {"rows": [r.as_dict() for r in rows]}

    return [_run("conjecture-scan/e2-off-last-column", CLAIMS["conjecture-scan"], scan)]


GLOBAL_SUITE_FUNCS = {
    "klein-orbit": klein_orbit_checks,
    "spectral": spectral_checks,
    "conjecture-scan": conjecture_checks,
}


def _group_job(args):
    source, p, suites, cfg = args
    try:
        G = catalog.load(source) if cfg.element_cap == 10_000 else _load_capped(source, cfg.element_cap)
        ctx = Context(source, G, p, cfg)
    except CapExceeded as err:
        return [CheckResult(f"{source}/p{p}/setup", "group and lattice construction", "skipped-budget",
                            {"reason": str(err)})]
    out = []
    for s in suites:
        if s in GROUP_SUITE_FUNCS:
            out.extend(GROUP_SUITE_FUNCS[s](ctx))
    return out


def _load_capped(source, cap):
    from pathlib import Path

    from .perm import enumerate_group, parse_group_text

    path = Path(source)
    if path.suffix and path.exists():
        degree, gens = parse_group_text(path.read_text())
        return enumerate_group(gens, degree, cap)
    G = catalog.get(source)
    if G.order > cap:
        raise CapExceeded(f"group order {G.order} exceeds cap {cap}")
    return G


def _global_job(args):
    name, cfg = args
    return GLOBAL_SUITE_FUNCS[name](cfg)


def run_suite(cfg: SuiteConfig) -> SuiteReport:
    jobs = []
    group_suites = [s for s in cfg.suites if s in GROUP_SUITE_FUNCS]
    if group_suites:
        for source, primes in cfg.groups:
            if primes is None:
                G = catalog.load(source)
                primes = catalog.primes_dividing(G.order)
            for p in primes:
                jobs.append((_group_job, (source, p, group_suites, cfg)))
    for s in cfg.suites:
        if s in GLOBAL_SUITE_FUNCS:
            jobs.append((_global_job, (s, cfg)))
    if cfg.workers > 1 and len(jobs) > 1:
        with ProcessPoolExecutor(max_workers=cfg.workers) as pool:
            futures = [pool.submit(fn, args) for fn, args in jobs]
            results = [f.result() for f in futures]
    else:
        results = [fn(args) for fn, args in jobs]
    checks = [c for chunk in results for c in chunk]
    return SuiteReport(checks)
