"""Exact linear algebra: incremental sparse row reduction over any field.

Rows are dicts mapping hashable column labels to FieldElements.  The pivot
of a row is its largest column under the supplied key function, matching
the leading-monomial convention used everywhere else.  Over a prime field
a dense kernel path is available for rank computations.
"""

from __future__ import annotations

from . import _kernel


class ResourceCapError(ValueError):
    """The requested computation exceeds the configured resource cap."""


class RowReducer:
    """Incremental Gaussian elimination keeping one monic row per pivot."""

    def __init__(self, field, key=None):
        self.field = field
        self.key = key if key is not None else lambda c: c
        self.pivots = {}

    @property
    def rank(self):
        return len(self.pivots)

    def reduce_row(self, row):
        """Return a copy of row with all pivot columns eliminated from the top."""
        work = {c: v for c, v in row.items() if v}
        while work:
            col = max(work, key=self.key)
            pivot_row = self.pivots.get(col)
            if pivot_row is None:
                return work
            factor = work[col]
            for c, v in pivot_row.items():
                cur = work.get(c)
                dec = factor * v
                cur = -dec if cur is None else cur - dec
                if cur:
                    work[c] = cur
                else:
                    work.pop(c, None)
        return work

    def add_row(self, row):
        """Insert a row; True if it increased the rank."""
        work = self.reduce_row(row)
        if not work:
            return False
        col = max(work, key=self.key)
        inv = work[col].inverse()
        self.pivots[col] = {c: v * inv for c, v in work.items()}
        return True


def matrix_rank(rows, field, key=None, columns=None):
    """Rank of a list of sparse rows over the field.

    Over GF(p) the rows are densified and handed to the kernel; over the
    rationals the sparse reducer is used.  columns, when given, fixes the
    column universe (labels absent from every row are allowed).
    """
    rows = [r for r in rows if any(r.values())]
    if not rows:
        return 0
    if field.char:
        if columns is None:
            seen = set()
            for r in rows:
                seen.update(r)
            columns = sorted(seen, key=key) if key else sorted(seen)
        index = {c: i for i, c in enumerate(columns)}
        dense = []
        for r in rows:
            vec = [0] * len(columns)
            for c, v in r.items():
                vec[index[c]] = v.value
            dense.append(vec)
        return _kernel.rref_mod_p(dense, field.char)
    reducer = RowReducer(field, key)
    for r in rows:
        reducer.add_row(r)
    return reducer.rank
