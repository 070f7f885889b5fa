"""Command line entry point ``pcat-lab``."""

from __future__ import annotations

import argparse
import sys

from . import catalog
from .perm import format_cycles
from .report import UnknownFormat, parse_format, render_records, render_suite

EXIT_OK, EXIT_FAIL, EXIT_CONFIG = 0, 1, 2


class ConfigError(Exception):
    pass


def _group(source: str, cap: int):
    from .perm import CapExceeded, InvalidPermutation
    from .suite import _load_capped

    try:
        return _load_capped(source, cap)
    except (KeyError, FileNotFoundError, InvalidPermutation, CapExceeded, ValueError) as err:
        raise ConfigError(f"cannot load group {source!r}: {err}") from None


def _prime(G, p):
    if p is None:
        primes = catalog.primes_dividing(G.order)
        if not primes:
            raise ConfigError("the trivial group has no relevant prime")
        return primes[0]
    if p < 2 or any(p % q == 0 for q in range(2, p)):
        raise ConfigError(f"{p} is not prime")
    return p


def _category(args):
    from .subcats import FilterUnsupported, build, parse_flavor

    G = _group(args.group, args.element_cap)
    p = _prime(G, args.prime)
    try:
        flavor = parse_flavor(args.flavor)
        return build(G, p, flavor, args.filter, skeletal=getattr(args, "skeletal", False)), G, p
    except (FilterUnsupported, ValueError, KeyError) as err:
        raise ConfigError(str(err)) from None


def _write(text: str, out):
    if out:
        with open(out, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def cmd_suite(args):
    from .suite import ALL_SUITES, SuiteConfig, run_suite

    try:
        if args.config:
            cfg = SuiteConfig.load(args.config)
        else:
            doc = {
                "groups": [{"group": g, "primes": args.primes} for g in args.groups or []],
                "suites": args.suites or list(ALL_SUITES),
            }
            cfg = SuiteConfig.from_dict(doc)
        if args.workers:
            cfg.workers = args.workers
    except (OSError, ValueError, KeyError, TypeError) as err:
        raise ConfigError(f"bad suite configuration: {err}") from None
    report = run_suite(cfg)
    _write(render_suite(report, args.format, timing=not args.no_timing), args.out)
    return report.exit_code


def cmd_euler(args):
    from .euler import class_matrix, coweighting, euler_characteristic, fmt, weighting

    C, G, p = _category(args)
    if C.n_objects == 0:
        _write(render_records(["class", "objects", "weighting", "coweighting"], [], args.format,
                              {"category": _label(args, G, p), "chi": "0"}), args.out)
        return EXIT_OK
    w, cw = weighting(C), coweighting(C)
    rep = euler_characteristic(C)
    rows = []
    for k, members in enumerate(w.classes):
        rows.append([k, " ".join(C.objects[a] for a in members), fmt(w.values[k]), fmt(cw.values[k])])
    extra = {"category": _label(args, G, p), "chi": fmt(rep.chi), "chi_reduced": fmt(rep.chi_reduced)}
    if parse_format(args.format) == "json":
        extra["zeta"] = class_matrix(C)
    _write(render_records(["class", "objects", "weighting", "coweighting"], rows, args.format, extra), args.out)
    return EXIT_OK


def _label(args, G, p):
    return f"{args.flavor}[{args.filter}] of {args.group} (order {G.order}) at p={p}"


def cmd_homology(args):
    from .homology import betti, verify_inclusion
    from .subcats import build, inclusion

    C, G, p = _category(args)
    fields = [f.strip() for f in args.fields.split(",") if f.strip()]
    try:
        tables = betti(C, args.dmax, fields)
    except ValueError as err:
        raise ConfigError(str(err)) from None
    rows = []
    for name, t in tables.items():
        for k, b in enumerate(t.betti):
            rows.append([_label(args, G, p), name, k, b, t.dims[k] if k < len(t.dims) else ""])
    extra = {}
    code = EXIT_OK
    if args.against:
        big = build(G, p, C.flavor, args.against, C.lattice)
        v = verify_inclusion(inclusion(C, big), args.dmax, fields, f"{args.filter} -> {args.against}")
        extra = {"verdict": v.verdict, "note": v.as_dict()["note"]}
        if parse_format(args.format) == "json":
            extra["inclusion"] = v.as_dict()
    _write(render_records(["category", "field", "degree", "betti", "chains"], rows, args.format, extra), args.out)
    return code


def cmd_spectral(args):
    from .spectral import conjecture_scan, e1_e2_pages

    if args.prime < 2 or any(args.prime % q == 0 for q in range(2, args.prime)):
        raise ConfigError(f"{args.prime} is not prime")
    if args.rank < 1 or args.tmax < 0:
        raise ConfigError("rank must be positive and tmax nonnegative")
    pages = e1_e2_pages(args.rank, args.prime, args.tmax)
    rows = []
    for s in range(pages.smax + 1):
        for t in range(args.tmax + 1):
            rows.append([s, t, pages.E1[s][t], pages.E2[s][t]])
    extra = {"rank": args.rank, "p": args.prime, "d1_squared_zero": pages.d1_squared_zero}
    text = render_records(["s", "t", "E1", "E2"], rows, args.format, extra)
    if args.scan:
        scan = conjecture_scan(((args.rank, args.prime),), args.tmax)
        text += render_records(["rank", "p", "s", "t", "E2", "status"],
                               [[r.rank, r.p, r.s, r.t, r.e2, "reported"] for r in scan], args.format)
    _write(text, args.out)
    return EXIT_OK


def cmd_catalog(args):
    rows = []
    for name in catalog.names():
        G = catalog.get(name)
        gens = "; ".join(format_cycles(g) for g in G.generators)
        rows.append([name, G.order, G.degree, gens, catalog.DESCRIPTIONS.get(name, "")])
    _write(render_records(["name", "order", "degree", "generators", "description"], rows, args.format), args.out)
    return EXIT_OK


def cmd_lattice(args):
    G = _group(args.group, args.element_cap)
    p = _prime(G, args.prime)
    from .lattice import enumerate_p_subgroups

    _write(enumerate_p_subgroups(G, p).to_json() + "\n", args.out)
    return EXIT_OK


def cmd_category(args):
    C, _, _ = _category(args)
    _write(C.to_json() + "\n", args.out)
    return EXIT_OK


def _common(sp, category=True):
    sp.add_argument("--group", required=True, help="catalog name or group file")
    sp.add_argument("--prime", type=int)
    sp.add_argument("--element-cap", type=int, default=10_000)
    if category:
        sp.add_argument("--flavor", default="s", help="s, t, l, f, o or ftilde")
        sp.add_argument("--filter", default="all")


def make_parser():
    ap = argparse.ArgumentParser(prog="pcat-lab", description="Coset categories of p-subgroups: Euler characteristics, homology and checks.")
    sub = ap.add_subparsers(dest="command", required=True)

    sp = sub.add_parser("suite", help="run verification suites")
    sp.add_argument("--config")
    sp.add_argument("--groups", nargs="*")
    sp.add_argument("--primes", nargs="*", type=int)
    sp.add_argument("--suites", nargs="*")
    sp.add_argument("--workers", type=int)
    sp.add_argument("--no-timing", action="store_true", help="omit wall times (byte-stable output)")
    sp.set_defaults(func=cmd_suite)

    sp = sub.add_parser("euler", help="weighting, coweighting and Euler characteristic")
    _common(sp)
    sp.set_defaults(func=cmd_euler)

    sp = sub.add_parser("homology", help="Betti numbers of the nerve")
    _common(sp)
    sp.add_argument("--dmax", type=int, default=3)
    sp.add_argument("--fields", default="q")
    sp.add_argument("--skeletal", action="store_true")
    sp.add_argument("--against", help="larger filter; verify the inclusion")
    sp.set_defaults(func=cmd_homology)

    sp = sub.add_parser("spectral", help="E1 and E2 pages of the flag spectral sequence")
    sp.add_argument("--rank", type=int, default=2)
    sp.add_argument("--prime", type=int, default=2)
    sp.add_argument("--tmax", type=int, default=4)
    sp.add_argument("--scan", action="store_true", help="append the conjecture scan")
    sp.set_defaults(func=cmd_spectral)

    sp = sub.add_parser("catalog", help="list built-in groups")
    sp.set_defaults(func=cmd_catalog)

    sp = sub.add_parser("lattice", help="export the p-subgroup lattice as JSON")
    _common(sp, category=False)
    sp.set_defaults(func=cmd_lattice, format="json")

    sp = sub.add_parser("category", help="export a coset category as JSON")
    _common(sp)
    sp.set_defaults(func=cmd_category, format="json")

    for name, p in sub.choices.items():
        if name not in ("lattice", "category"):
            p.add_argument("--format", default="json")
        p.add_argument("--out")
    return ap


def main(argv=None) -> int:
    args = make_parser().parse_args(argv)
    try:
        if hasattr(args, "format"):
            parse_format(args.format)
        return args.func(args)
    except (ConfigError, UnknownFormat) as err:
        print(f"pcat-lab: {err}", file=sys.stderr)
        return EXIT_CONFIG


if __name__ == "__main__":
    sys.exit(main())
