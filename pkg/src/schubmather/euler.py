"""Euler characteristic of resolution fibres, d = P_{alpha,beta}(1).

Merging valley i splits the fibre over a cell point according to the excess t
(0 <= t <= min(c_i, c_{i+1})) of the new column, giving

    d(h, c) = sum_t C(a_{i+1} - c_i + c_{i+1}, c_{i+1} - t)
                    * C(b_i + c_i - c_{i+1}, c_i - t) * d(h', c(t))

where h' is the merged matrix and c(t) replaces c_i, c_{i+1} by t. The valley
is the one the tower builder merges, so both describe the same resolution.
"""

from __future__ import annotations

from functools import lru_cache
from math import comb
from typing import Sequence

from .combinatorics import Capacity, HMatrix, IndexSeq, block_matrix, bruhat_leq, capacity
from .errors import ContainmentError, InvalidInput
from .resolution import ZERO, Column, Policy, eligible_valleys, is_final, merge_order


def binom(m: int, k: int) -> int:
    if m < 0 or k < 0 or k > m:
        return 0
    return comb(m, k)


def _columns(cols: tuple[tuple[int, int], ...]) -> list[Column]:
    return [Column(q, a, ZERO) for q, a in cols]


def _split(cols, c, i):
    """Terms (coefficient, merged columns, merged capacity) of one merge."""
    (qi, ai), (qj, aj) = cols[i], cols[i + 1]
    ci, cj = c[i], c[i + 1]
    b = qj - qi - aj
    new = (qi + aj, ai + aj)
    if i == 0:
        ncols = (cols[0], new) + cols[2:]
    else:
        ncols = cols[:i] + (new,) + cols[i + 2:]
    for t in range(min(ci, cj) + 1):
        coef = binom(aj - ci + cj, cj - t) * binom(b + ci - cj, ci - t)
        if coef:
            nc = (0, t) + c[2:] if i == 0 else c[:i] + (t,) + c[i + 2:]
            yield coef, ncols, nc


def _done(cols, c) -> int:
    return 1 if not any(c) else 0


@lru_cache(maxsize=None)
def _d_rule(cols, c, rule):
    if is_final(_columns(cols)):
        return _done(cols, c)
    i = eligible_valleys(_columns(cols), rule)[0]
    return sum(coef * _d_rule(nc, ncap, rule) for coef, nc, ncap in _split(cols, c, i))


def _d_order(cols, c, order):
    if not order:
        return _done(cols, c)
    return sum(coef * _d_order(nc, ncap, order[1:]) for coef, nc, ncap in _split(cols, c, order[0]))


def d_value(h: HMatrix, c: Sequence[int], policy: Policy = "smallest-eligible") -> int:
    """Fibre Euler characteristic for block matrix h and capacity c = (0, c_1, ..., c_d)."""
    c = tuple(c)
    if len(c) != h.d + 1:
        raise InvalidInput(f"capacity {c} must have length d+1 = {h.d + 1}")
    if c[0] != 0 or any(x < 0 for x in c):
        raise InvalidInput(f"capacity {c} must start with 0 and be nonnegative")
    cols = ((0, 0),) + tuple(h.columns())
    if isinstance(policy, str):
        return _d_rule(cols, c, policy)
    return _d_order(cols, c, tuple(policy))


def fiber_euler(alpha: IndexSeq, beta: IndexSeq, policy: Policy = "smallest-eligible") -> int:
    """d_value for the pair (alpha, beta), using alpha's merge order under the policy."""
    if not isinstance(policy, str):
        policy = merge_order(alpha, policy)
    return d_value(block_matrix(alpha), capacity(alpha, beta), policy)


def is_smooth_point(alpha: IndexSeq, beta: IndexSeq) -> bool:
    """True iff the cell of beta consists of smooth points of the Schubert variety of alpha."""
    if not bruhat_leq(beta, alpha):
        raise ContainmentError(f"beta={beta.parts} is not contained in alpha={alpha.parts}")
    return not any(capacity(alpha, beta))
