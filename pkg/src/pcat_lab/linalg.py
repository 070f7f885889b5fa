"""Exact sparse column reduction over Q and F_p.

Columns are dicts ``{row: coefficient}``.  Over Q coefficients are integers and
columns are kept primitive (fraction-free elimination); over F_p they are
residues in ``0..p-1``.  The pivot of a column is its largest row key.
"""

from __future__ import annotations

from math import gcd


class FieldSpec:
    """``Q`` (characteristic 0) or ``F_p``."""

    def __init__(self, char: int = 0):
        self.char = char

    @classmethod
    def parse(cls, text) -> "FieldSpec":
        if isinstance(text, FieldSpec):
            return text
        t = str(text).strip().lower()
        if t in ("q", "0", "qq", "rational", "rationals"):
            return cls(0)
        if t.startswith("f"):
            t = t[1:]
        p = int(t)
        if p < 2 or any(p % q == 0 for q in range(2, int(p**0.5) + 1)):
            raise ValueError(f"{text!r} is not a prime field")
        return cls(p)

    @property
    def name(self) -> str:
        return "Q" if self.char == 0 else f"F{self.char}"

    def __repr__(self):
        return self.name

    def __eq__(self, other):
        return isinstance(other, FieldSpec) and other.char == self.char

    def __hash__(self):
        return hash(self.char)

    def normalize(self, col: dict) -> dict:
        """Drop zeros; reduce mod p, or divide out the content over Q."""
        p = self.char
        if p:
            return {r: c % p for r, c in col.items() if c % p}
        col = {r: c for r, c in col.items() if c}
        g = 0
        for c in col.values():
            g = gcd(g, c)
            if g == 1:
                return col
        if g > 1:
            col = {r: c // g for r, c in col.items()}
        return col


def _axpy(target: dict, a: int, source: dict, p: int):
    """``target += a * source`` in place, mod p when p > 0."""
    if p:
        for r, c in source.items():
            v = (target.get(r, 0) + a * c) % p
            if v:
                target[r] = v
            else:
                target.pop(r, None)
    else:
        for r, c in source.items():
            v = target.get(r, 0) + a * c
            if v:
                target[r] = v
            else:
                target.pop(r, None)


def _scale(col: dict, a: int, p: int) -> dict:
    if p:
        return {r: (c * a) % p for r, c in col.items()}
    return {r: c * a for r, c in col.items()}


class ColumnReducer:
    """Incremental column echelon form with optional tracking of the column operations.

    ``add(col, tag)`` reduces ``col`` against the stored pivots.  A nonzero
    remainder becomes a new pivot column; a zero remainder returns the tracked
    combination of input tags that produced it (a kernel vector).
    """

    def __init__(self, field: FieldSpec, track: bool = False):
        self.field = field
        self.track = track
        self.pivots = {}  # pivot row -> (column, combination)

    @property
    def rank(self) -> int:
        return len(self.pivots)

    def reduce(self, col: dict, combo: dict | None = None):
        p = self.field.char
        col = dict(col)
        combo = dict(combo) if combo is not None else None
        while col:
            low = max(col)
            hit = self.pivots.get(low)
            if hit is None:
                break
            pcol, pcombo = hit
            c = col[low]
            if p:
                # pivot columns are stored with leading coefficient 1
                a = (-c) % p
                _axpy(col, a, pcol, p)
                if combo is not None:
                    _axpy(combo, a, pcombo, p)
            else:
                pc = pcol[low]
                g = gcd(c, pc)
                m_self, m_piv = pc // g, -(c // g)
                if m_self != 1:
                    col = _scale(col, m_self, 0)
                    if combo is not None:
                        combo = _scale(combo, m_self, 0)
                _axpy(col, m_piv, pcol, 0)
                if combo is not None:
                    _axpy(combo, m_piv, pcombo, 0)
                col, combo = self._primitive(col, combo)
        return col, combo

    def _primitive(self, col, combo):
        g = 0
        for c in col.values():
            g = gcd(g, c)
            if g == 1:
                return col, combo
        if combo is not None:
            for c in combo.values():
                g = gcd(g, c)
                if g == 1:
                    return col, combo
        if g > 1:
            col = {r: c // g for r, c in col.items()}
            if combo is not None:
                combo = {r: c // g for r, c in combo.items()}
        return col, combo

    def add(self, col: dict, tag=None):
        """Insert a column; return ``None`` if independent, else the kernel combination."""
        combo = {tag: 1} if self.track and tag is not None else None
        col, combo = self.reduce(col, combo)
        if not col:
            return combo if combo is not None else {}
        p = self.field.char
        low = max(col)
        if p:
            inv = pow(col[low], -1, p)
            if inv != 1:
                col = _scale(col, inv, p)
                if combo is not None:
                    combo = _scale(combo, inv, p)
        self.pivots[low] = (col, combo)
        return None

    def contains(self, col: dict) -> bool:
        rem, _ = self.reduce(col)
        return not rem


def rank(columns, field) -> int:
    field = FieldSpec.parse(field)
    red = ColumnReducer(field)
    for col in columns:
        red.add(field.normalize(col))
    return red.rank


def rank_modulo(columns, base_columns, field) -> int:
    """Rank of ``columns`` in the quotient by the span of ``base_columns``."""
    field = FieldSpec.parse(field)
    red = ColumnReducer(field)
    for col in base_columns:
        red.add(field.normalize(col))
    before = red.rank
    for col in columns:
        red.add(field.normalize(col))
    return red.rank - before


def matmul_sparse(A_cols: list, B_cols: list, field) -> list:
    """Columns of ``A @ B`` where ``B``'s rows index ``A``'s columns."""
    field = FieldSpec.parse(field)
    p = field.char
    out = []
    for bcol in B_cols:
        acc = {}
        for k, c in bcol.items():
            _axpy(acc, c, A_cols[k], p)
        out.append(acc)
    return out
