"""Incremental double description for pointed polyhedral cones.

Given integer constraint rows ``m_i``, compute the extreme rays of
``{y : m_i . y >= 0 for all i}``.  Rows are inserted in input order after a
greedily chosen nonsingular starting basis; adjacency of rays is decided by
the combinatorial test on zero sets, so no arithmetic beyond integer dot
products is involved.
"""

from __future__ import annotations

import math
from typing import Sequence

from .errors import DimensionMismatch
from .exact_linalg import rank, solve, identity, primitive_integer_vector


def _primitive(v: Sequence[int]) -> tuple[int, ...]:
    g = math.gcd(*v)
    return tuple(x // g for x in v)


def _idot(u, v) -> int:
    return sum(a * b for a, b in zip(u, v))


def extreme_rays(rows: Sequence[Sequence[int]], n: int) -> list[tuple[tuple[int, ...], int]]:
    """Extreme rays of the cone cut out by ``rows``.

    Returns ``(ray, zero_mask)`` pairs where bit ``i`` of ``zero_mask`` is set
    iff ``rows[i] . ray == 0``.  The rows must have rank ``n`` (pointed cone);
    callers remove any lineality space beforehand.
    """
    rows = [tuple(int(x) for x in r) for r in rows]
    if any(len(r) != n for r in rows):
        raise DimensionMismatch(f"constraint rows must have length {n}")

    basis_idx: list[int] = []
    for i, row in enumerate(rows):
        if rank([rows[j] for j in basis_idx] + [row]) > len(basis_idx):
            basis_idx.append(i)
            if len(basis_idx) == n:
                break
    if len(basis_idx) < n:
        raise DimensionMismatch(f"constraint rows have rank {len(basis_idx)} < {n}; cone not pointed")

    B = [rows[i] for i in basis_idx]
    all_basis = 0
    for i in basis_idx:
        all_basis |= 1 << i
    rays: list[tuple[tuple[int, ...], int]] = []
    for j, e in enumerate(identity(n)):
        col = primitive_integer_vector(solve(B, e))
        rays.append((col, all_basis & ~(1 << basis_idx[j])))

    in_basis = set(basis_idx)
    for i, row in enumerate(rows):
        if i in in_basis:
            continue
        bit = 1 << i
        plus, zero, minus = [], [], []
        for ray, mask in rays:
            s = _idot(row, ray)
            if s > 0:
                plus.append((ray, mask, s))
            elif s < 0:
                minus.append((ray, mask, s))
            else:
                zero.append((ray, mask | bit))
        if not minus:
            rays = [(r, m) for r, m, _ in plus] + zero
            continue
        masks = [m for _, m in rays]
        created = []
        for rp, mp, sp in plus:
            for rq, mq, sq in minus:
                common = mp & mq
                if common.bit_count() < n - 2:
                    continue
                adjacent = True
                for m in masks:
                    if m != mp and m != mq and common & m == common:
                        adjacent = False
                        break
                if not adjacent:
                    continue
                new = _primitive([sp * b - sq * a for a, b in zip(rp, rq)])
                created.append((new, common | bit))
        rays = [(r, m) for r, m, _ in plus] + zero + created
    return rays
