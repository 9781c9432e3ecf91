"""Sparse exact linear algebra over the rationals.

Vectors are dicts mapping arbitrary hashable keys to int/Fraction
coefficients. Zero entries are never stored.
"""

from __future__ import annotations

import heapq
from fractions import Fraction


def as_rational(x):
    """Collapse integral Fractions to int (ints are much faster to combine)."""
    if isinstance(x, Fraction) and x.denominator == 1:
        return x.numerator
    return x


class SparseEliminator:
    """Incremental row echelon form.

    Rows are reduced against earlier pivots at insertion time, so reducing
    a vector by pivots in insertion order never reintroduces an earlier
    pivot key.
    """

    def __init__(self):
        self._rows: list[dict] = []
        self._pivot_index: dict = {}

    def __len__(self):
        return len(self._rows)

    @property
    def rank(self) -> int:
        return len(self._rows)

    def reduce(self, vec: dict) -> dict:
        vec = dict(vec)
        heap = [self._pivot_index[key] for key in vec if key in self._pivot_index]
        heapq.heapify(heap)
        seen = set(heap)
        while heap:
            i = heapq.heappop(heap)
            seen.discard(i)
            row = self._rows[i]
            pivot = next(iter(row))
            c = vec.get(pivot)
            if not c:
                continue
            for key, v in row.items():
                nv = vec.get(key, 0) - c * v
                if nv:
                    vec[key] = nv
                    j = self._pivot_index.get(key)
                    if j is not None and j > i and j not in seen:
                        heapq.heappush(heap, j)
                        seen.add(j)
                else:
                    vec.pop(key, None)
        return vec

    def add(self, vec: dict) -> bool:
        """Insert a vector; returns True if it increased the rank."""
        r = self.reduce(vec)
        if not r:
            return False
        pivot = next(iter(r))
        c = r[pivot]
        row = {pivot: 1}
        for key, v in r.items():
            if key != pivot:
                row[key] = as_rational(Fraction(v) / c)
        self._pivot_index[pivot] = len(self._rows)
        self._rows.append(row)
        return True

    def contains(self, vec: dict) -> bool:
        return not self.reduce(vec)


def rank(vectors) -> int:
    elim = SparseEliminator()
    for v in vectors:
        elim.add(v)
    return elim.rank


def in_span(target: dict, vectors) -> bool:
    elim = SparseEliminator()
    for v in vectors:
        elim.add(v)
    return elim.contains(target)


def solve_in_span(target: dict, vectors) -> dict | None:
    """Coefficients {i: c} with target = sum_i c * vectors[i], or None.

    Each echelon row remembers which input vectors it combines, so the
    answer is an explicit witness that can be re-checked by expansion.
    """
    rows: list = []
    pivot_index: dict = {}

    def reduce(vec: dict, combo: dict):
        vec, combo = dict(vec), dict(combo)
        heap = [pivot_index[key] for key in vec if key in pivot_index]
        heapq.heapify(heap)
        seen = set(heap)
        while heap:
            i = heapq.heappop(heap)
            seen.discard(i)
            pivot, row, rcombo = rows[i]
            c = vec.get(pivot)
            if not c:
                continue
            for key, v in row.items():
                nv = vec.get(key, 0) - c * v
                if nv:
                    vec[key] = nv
                    j = pivot_index.get(key)
                    if j is not None and j > i and j not in seen:
                        heapq.heappush(heap, j)
                        seen.add(j)
                else:
                    vec.pop(key, None)
            for key, v in rcombo.items():
                nv = combo.get(key, 0) - c * v
                if nv:
                    combo[key] = nv
                else:
                    combo.pop(key, None)
        return vec, combo

    for n, v in enumerate(vectors):
        r, combo = reduce(v, {n: 1})
        if not r:
            continue
        pivot = next(iter(r))
        c = Fraction(r[pivot])
        row = {key: as_rational(Fraction(val) / c) for key, val in r.items()}
        pivot_index[pivot] = len(rows)
        rows.append((pivot, row, {key: as_rational(Fraction(val) / c) for key, val in combo.items()}))
    r, combo = reduce(target, {})
    if r:
        return None
    return {i: as_rational(-c) for i, c in combo.items()}
