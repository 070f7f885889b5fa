"""Built-in desk-scale groups."""

from __future__ import annotations

from functools import lru_cache
from pathlib import Path

from .perm import PermGroup, enumerate_group, parse_group_text, parse_permutation


def _quaternion_regular():
    # elements (sign, unit) with unit in 1,i,j,k; right regular action x -> x*g
    table = {
        ("1", "1"): (1, "1"), ("1", "i"): (1, "i"), ("1", "j"): (1, "j"), ("1", "k"): (1, "k"),
        ("i", "1"): (1, "i"), ("i", "i"): (-1, "1"), ("i", "j"): (1, "k"), ("i", "k"): (-1, "j"),
        ("j", "1"): (1, "j"), ("j", "i"): (-1, "k"), ("j", "j"): (-1, "1"), ("j", "k"): (1, "i"),
        ("k", "1"): (1, "k"), ("k", "i"): (1, "j"), ("k", "j"): (-1, "i"), ("k", "k"): (-1, "1"),
    }
    elems = [(s, u) for s in (1, -1) for u in "1ijk"]
    pos = {e: n for n, e in enumerate(elems)}

    def right_mult(g):
        out = []
        for s, u in elems:
            t, v = table[(u, g)]
            out.append(pos[(s * t, v)])
        return tuple(out)

    return [right_mult("i"), right_mult("j")]


def _sl23():
    vecs = [(a, b) for a in range(3) for b in range(3) if (a, b) != (0, 0)]
    pos = {v: n for n, v in enumerate(vecs)}

    def act(m):
        # row vector times matrix
        return tuple(
            pos[((v[0] * m[0][0] + v[1] * m[1][0]) % 3, (v[0] * m[0][1] + v[1] * m[1][1]) % 3)]
            for v in vecs
        )

    return [act(((1, 1), (0, 1))), act(((1, 0), (1, 1)))]


def _cycles(degree, *texts):
    return degree, [parse_permutation(t, degree) for t in texts]


_SPECS = {
    "c2": lambda: _cycles(2, "(0 1)"),
    "c3": lambda: _cycles(3, "(0 1 2)"),
    "c4": lambda: _cycles(4, "(0 1 2 3)"),
    "c8": lambda: _cycles(8, "(0 1 2 3 4 5 6 7)"),
    "c9": lambda: _cycles(9, "(0 1 2 3 4 5 6 7 8)"),
    "c2xc2": lambda: _cycles(4, "(0 1)", "(2 3)"),
    "c3xc3": lambda: _cycles(6, "(0 1 2)", "(3 4 5)"),
    "d8": lambda: _cycles(4, "(0 1 2 3)", "(0 2)"),
    "q8": lambda: (8, _quaternion_regular()),
    "s3": lambda: _cycles(3, "(0 1)", "(0 1 2)"),
    "s4": lambda: _cycles(4, "(0 1 2 3)", "(0 1)"),
    "a4": lambda: _cycles(4, "(0 1 2)", "(0 1)(2 3)"),
    "c2xs3": lambda: _cycles(5, "(0 1)", "(2 3 4)", "(3 4)"),
    "sl23": lambda: (8, _sl23()),
}

DESCRIPTIONS = {
    "c2": "cyclic group of order 2",
    "c3": "cyclic group of order 3",
    "c4": "cyclic group of order 4",
    "c8": "cyclic group of order 8",
    "c9": "cyclic group of order 9",
    "c2xc2": "Klein four-group",
    "c3xc3": "elementary abelian group of order 9",
    "d8": "dihedral group of order 8",
    "q8": "quaternion group (regular representation)",
    "s3": "symmetric group on 3 points",
    "s4": "symmetric group on 4 points",
    "a4": "alternating group on 4 points",
    "c2xs3": "direct product C2 x S3 (central C2)",
    "sl23": "SL(2,3) acting on the nonzero vectors of F_3^2",
}

P_GROUPS = ("c2", "c4", "c8", "c2xc2", "c3", "c9", "c3xc3", "d8", "q8")


def names() -> list:
    return list(_SPECS)


@lru_cache(maxsize=None)
def get(name: str) -> PermGroup:
    key = name.lower().replace("×", "x").replace("σ", "s").replace("_", "")
    if key not in _SPECS:
        raise KeyError(f"unknown catalog group {name!r}; known: {', '.join(_SPECS)}")
    degree, gens = _SPECS[key]()
    return enumerate_group(gens, degree)


def load(source: str) -> PermGroup:
    """Catalog name or path to a group file."""
    path = Path(source)
    if path.suffix and path.exists():
        degree, gens = parse_group_text(path.read_text())
        return enumerate_group(gens, degree)
    return get(source)


def primes_dividing(n: int) -> list:
    out = []
    q = 2
    while n > 1:
        if n % q == 0:
            out.append(q)
            while n % q == 0:
                n //= q
        q += 1
    return out
