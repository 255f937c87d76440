"""Exact sparse Gaussian elimination over Q(q)."""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Hashable, Sequence

from .coeffq import ONE, RatQ


@dataclass
class LinSystem:
    """Homogeneous system: each row is a sparse map column -> coefficient."""

    rows: list = field(default_factory=list)
    labels: Sequence[Hashable] | None = None

    def add_row(self, row: dict) -> None:
        row = {c: v for c, v in row.items() if v}
        if row:
            self.rows.append(row)

    @property
    def ncols(self) -> int:
        if self.labels is not None:
            return len(self.labels)
        return 1 + max((c for r in self.rows for c in r), default=-1)


def _axpy(target: dict, factor: RatQ, source: dict) -> None:
    """target -= factor * source, in place."""
    for c, v in source.items():
        t = target.get(c)
        nv = -(factor * v) if t is None else t - factor * v
        if nv:
            target[c] = nv
        else:
            target.pop(c, None)


def row_reduce(rows: Sequence[dict], ncols: int) -> dict:
    """Reduced row echelon form as ``{pivot column: normalized row}``.

    Columns are processed in increasing order; among the rows with a
    nonzero entry in the current column the pivot is the one whose entry has
    the lowest numerator degree (earliest row on ties).
    """
    work = [dict(r) for r in rows if r]
    pivots: dict = {}
    for col in range(ncols):
        best = None
        for idx, r in enumerate(work):
            v = r.get(col)
            if v is not None:
                key = (v.degree_key(), idx)
                if best is None or key < best[0]:
                    best = (key, idx)
        if best is None:
            continue
        prow = work.pop(best[1])
        inv = prow[col].inverse()
        prow = {c: v * inv for c, v in prow.items()}
        prow[col] = ONE
        for r in work:
            f = r.get(col)
            if f is not None:
                _axpy(r, f, prow)
        for r in pivots.values():
            f = r.get(col)
            if f is not None:
                _axpy(r, f, prow)
        work = [r for r in work if r]
        pivots[col] = prow
    return pivots


def kernel(sys: LinSystem) -> list:
    """Basis of the null space, one vector per free column.

    Each vector has a 1 in its free column and is written as a sparse map.
    """
    n = sys.ncols
    piv = row_reduce(sys.rows, n)
    basis = []
    for free in range(n):
        if free in piv:
            continue
        vec = {free: ONE}
        for pc, row in piv.items():
            v = row.get(free)
            if v is not None:
                vec[pc] = -v
        basis.append(vec)
    return basis


def rank(vectors: Sequence[dict], ncols: int) -> int:
    return len(row_reduce(vectors, ncols))


def residual(sys: LinSystem, vec: dict) -> list:
    """Row-by-row values of ``row . vec``; all zero for kernel vectors."""
    out = []
    for r in sys.rows:
        acc = RatQ()
        for c, v in r.items():
            x = vec.get(c)
            if x is not None:
                acc = acc + v * x
        out.append(acc)
    return out
