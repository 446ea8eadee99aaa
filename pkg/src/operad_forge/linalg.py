"""Exact sparse row reduction over the rationals.

Rows are tree polynomials; column coordinates are trees ordered by their
preorder token key, so elimination is reproducible.
"""

from __future__ import annotations

import heapq
from typing import Iterable, Sequence

from .poly import Actions, TreePoly, normal_form


class RowSpace:
    """Incrementally maintained echelon basis of a span of tree polynomials."""

    def __init__(self, rows: Iterable[TreePoly] = ()):
        # pivot key -> (pivot tree, row dict keyed by tree) with pivot coefficient 1
        self._pivots: dict[tuple, dict] = {}
        self._keys: dict = {}
        for r in rows:
            self.add(r)

    def __len__(self):
        return len(self._pivots)

    @property
    def rank(self) -> int:
        return len(self._pivots)

    def _reduce(self, p: TreePoly) -> dict:
        vec = {t: c for t, c in p._terms.items()}
        heap = [(t.key, t) for t in vec]
        heapq.heapify(heap)
        seen = set()
        while heap:
            k, t = heapq.heappop(heap)
            if k in seen:
                continue
            seen.add(k)
            c = vec.get(t)
            if not c:
                continue
            row = self._pivots.get(k)
            if row is None:
                continue
            for u, v in row.items():
                nv = vec.get(u, 0) - c * v
                if nv:
                    if u not in vec:
                        heapq.heappush(heap, (u.key, u))
                    vec[u] = nv
                else:
                    vec.pop(u, None)
        return vec

    def reduce(self, p: TreePoly) -> TreePoly:
        return TreePoly(self._reduce(p))

    def add(self, p: TreePoly) -> bool:
        """Insert ``p``; returns True when it enlarged the span."""
        vec = self._reduce(p)
        if not vec:
            return False
        lead = min(vec, key=lambda t: t.key)
        inv = 1 / vec[lead]
        row = {t: c * inv for t, c in vec.items()}
        self._pivots[lead.key] = row
        return True

    def contains(self, p: TreePoly) -> bool:
        return not self._reduce(p)

    def basis(self) -> list[TreePoly]:
        return [TreePoly(r) for _, r in sorted(self._pivots.items())]


def _prep(ps: Iterable[TreePoly], actions: Actions | None) -> list[TreePoly]:
    return [normal_form(p, actions) for p in ps]


def rank(ps: Iterable[TreePoly], actions: Actions | None = None) -> int:
    return RowSpace(_prep(ps, actions)).rank


def in_span(p: TreePoly, ps: Iterable[TreePoly], actions: Actions | None = None) -> bool:
    return RowSpace(_prep(ps, actions)).contains(normal_form(p, actions))


EQUAL = "equal"
A_IN_B = "A⊆B"
B_IN_A = "B⊆A"
INCOMPARABLE = "incomparable"


def span_relate(A: Sequence[TreePoly], B: Sequence[TreePoly], actions: Actions | None = None) -> str:
    """Compare the rational row spaces of ``A`` and ``B``."""
    A = _prep(A, actions)
    B = _prep(B, actions)
    sa, sb = RowSpace(A), RowSpace(B)
    a_in_b = all(sb.contains(p) for p in A)
    b_in_a = all(sa.contains(p) for p in B)
    if a_in_b and b_in_a:
        return EQUAL
    if a_in_b:
        return A_IN_B
    if b_in_a:
        return B_IN_A
    return INCOMPARABLE


def not_contained(A: Sequence[TreePoly], B: Sequence[TreePoly], actions: Actions | None = None) -> list[TreePoly]:
    """Elements of ``A`` outside span(B) (witnesses for failed containment)."""
    sb = RowSpace(_prep(B, actions))
    return [p for p in A if not sb.contains(normal_form(p, actions))]


__all__ = ["RowSpace", "rank", "in_span", "span_relate", "not_contained", "EQUAL", "A_IN_B", "B_IN_A", "INCOMPARABLE"]
