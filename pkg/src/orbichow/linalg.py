"""Exact sparse row reduction over the rationals.

Rows are sparse integer vectors (dicts column -> coefficient), kept primitive
by stripping the gcd after every combination so coefficients stay small.  The
reducer maintains a fully reduced echelon system at all times: no pivot row
contains another pivot column.  Because the reduced row echelon form of a row
space is unique for a fixed column order, the final state is canonical and
does not depend on the order rows were added in.

The pivot of a row is its largest column, so the surviving (non-pivot)
columns of a full system are the smallest in the column order.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd
from typing import Iterable

Q = Fraction


def _strip(row: dict[int, int]) -> dict[int, int]:
    row = {c: v for c, v in row.items() if v}
    if not row:
        return row
    g = 0
    for v in row.values():
        g = gcd(g, v)
    if g > 1:
        row = {c: v // g for c, v in row.items()}
    return row


def _combine(row: dict[int, int], other: dict[int, int], col: int) -> dict[int, int]:
    """Eliminate ``col`` from ``row`` using ``other`` (which contains it)."""
    a, b = row[col], other[col]
    out: dict[int, int] = {}
    for c in row.keys() | other.keys():
        v = b * row.get(c, 0) - a * other.get(c, 0)
        if v:
            out[c] = v
    return _strip(out)


class IntRowReducer:
    """Incremental reduced echelon form for sparse integer rows."""

    def __init__(self) -> None:
        self.pivot_rows: dict[int, dict[int, int]] = {}
        self._cols_to_pivots: dict[int, set[int]] = {}

    @property
    def rank(self) -> int:
        return len(self.pivot_rows)

    def pivots(self) -> list[int]:
        return sorted(self.pivot_rows)

    def add_row(self, row: dict[int, int]) -> bool:
        """Reduce ``row`` against the system; returns True if it was independent."""
        r = _strip(dict(row))
        for col in sorted(set(r) & set(self.pivot_rows), reverse=True):
            if col in r:  # may have cancelled while reducing earlier columns
                r = _combine(r, self.pivot_rows[col], col)
        if not r:
            return False
        piv = max(r)
        if r[piv] < 0:
            r = {c: -v for c, v in r.items()}
        # eliminate the new pivot column from every row that mentions it
        for other_piv in list(self._cols_to_pivots.get(piv, ())):
            old = self.pivot_rows[other_piv]
            new = _combine(old, r, piv)
            if new[other_piv] < 0:
                new = {c: -v for c, v in new.items()}
            self._set_row(other_piv, new, old)
        self._set_row(piv, r, None)
        return True

    def _set_row(self, piv: int, row: dict[int, int], old: dict[int, int] | None) -> None:
        if old is not None:
            for c in old:
                if c not in row:
                    self._cols_to_pivots[c].discard(piv)
        self.pivot_rows[piv] = row
        for c in row:
            self._cols_to_pivots.setdefault(c, set()).add(piv)

    def reducer(self, piv: int) -> dict[int, Fraction]:
        """Expansion of the pivot column over the non-pivot columns."""
        row = self.pivot_rows[piv]
        lead = row[piv]
        return {c: Q(-v, lead) for c, v in row.items() if c != piv}


def rank_of_rows(rows: Iterable[dict[int, int]]) -> int:
    red = IntRowReducer()
    for row in rows:
        red.add_row(row)
    return red.rank


def fraction_rows_rank(rows: Iterable[Iterable[Fraction]]) -> int:
    """Rank of a small dense matrix of Fractions (clears denominators)."""
    red = IntRowReducer()
    for row in rows:
        row = [Q(x) for x in row]
        den = 1
        for x in row:
            den = den * x.denominator // gcd(den, x.denominator)
        red.add_row({i: int(x * den) for i, x in enumerate(row) if x})
    return red.rank
