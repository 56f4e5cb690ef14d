"""Schur Q- and P-tilde polynomials evaluated at numeric Chern classes.

All routines work with Python ints or Fractions, so results stay exact.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Sequence

from .errors import InvalidInput


def chern_from_roots(roots: Sequence) -> tuple:
    """Elementary symmetric functions (c_0 = 1, c_1, ..., c_m) of the roots."""
    c = [1] + [0] * len(roots)
    for r in roots:
        for k in range(len(c) - 1, 0, -1):
            c[k] += c[k - 1] * r
    return tuple(c)


def _ck(c: Sequence, k: int):
    return c[k] if 0 <= k < len(c) else 0


def qtilde_pair(k: int, l: int, c: Sequence):
    """Q~_{kl} = c_k c_l + 2 sum_{j=1}^{l} (-1)^j c_{k+j} c_{l-j} for k > l.

    The matrix entries are skew by construction: Q~_{kk} = 0 and
    Q~_{lk} = -Q~_{kl}.
    """
    if k < 0 or l < 0:
        raise InvalidInput("indices must be nonnegative")
    if k == l:
        return 0
    if k < l:
        return -qtilde_pair(l, k, c)
    total = _ck(c, k) * _ck(c, l)
    for j in range(1, l + 1):
        total += 2 * (-1) ** j * _ck(c, k + j) * _ck(c, l - j)
    return total


def pfaffian(m: Sequence[Sequence]):
    """Pfaffian by expansion along the first row."""
    size = len(m)
    if any(len(row) != size for row in m):
        raise InvalidInput("matrix must be square")
    if size % 2:
        raise InvalidInput("Pfaffian needs an even-sized matrix")
    for i in range(size):
        if m[i][i] != 0 or any(m[i][j] != -m[j][i] for j in range(i)):
            raise InvalidInput("matrix is not skew-symmetric")
    return _pf(tuple(tuple(row) for row in m), tuple(range(size)))


def _pf(m, idx):
    if not idx:
        return 1
    first, rest = idx[0], idx[1:]
    total = 0
    for pos, j in enumerate(rest):
        entry = m[first][j]
        if entry == 0:
            continue
        sub = rest[:pos] + rest[pos + 1:]
        sign = -1 if pos % 2 else 1
        total += sign * entry * _pf(m, sub)
    return total


def _check_strict(lam: Sequence[int]) -> tuple[int, ...]:
    lam = tuple(int(x) for x in lam)
    if any(x <= y for x, y in zip(lam, lam[1:])) or any(x < 0 for x in lam):
        raise InvalidInput(f"{lam} is not a strict partition")
    return tuple(x for x in lam if x > 0)


def qtilde(lam: Sequence[int], c: Sequence):
    """Q~_lambda = Pf(Q~_{lambda_i lambda_j}), padding lambda with a zero part if needed."""
    parts = list(_check_strict(lam))
    if len(parts) % 2:
        parts.append(0)
    size = len(parts)
    mat = [[0] * size for _ in range(size)]
    for i in range(size):
        for j in range(i + 1, size):
            v = qtilde_pair(parts[i], parts[j], c)
            mat[i][j] = v
            mat[j][i] = -v
    return _pf(tuple(map(tuple, mat)), tuple(range(size)))


def ptilde(lam: Sequence[int], c: Sequence):
    """P~_lambda = Q~_lambda / 2^{l(lambda)}, l counting nonzero parts."""
    parts = _check_strict(lam)
    return Fraction(qtilde(parts, c)) / 2 ** len(parts)
