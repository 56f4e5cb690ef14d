"""Torus-fixed points of Grassmannians, Schubert cells and resolution towers.

A fixed isotropic subspace is spanned by basis vectors e_i or e_{i bar}. We
encode it as a frozenset of nonzero ints: ``i`` for e_i and ``-i`` for e_{i bar}.
Intermediate tower stages live inside V_n, so their subsets are unbarred.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from itertools import combinations, product
from typing import Iterator, Sequence

from .combinatorics import IndexSeq, family_length_parity, normalize_family
from .errors import InvalidInput
from .resolution import Handle, Tower

SignedSubset = frozenset


@dataclass(frozen=True)
class ChainPoint:
    stages: tuple[frozenset, ...]
    base: frozenset

    def to_dict(self) -> dict:
        return {"stages": [sorted(s) for s in self.stages], "base": signed_sorted(self.base)}


def signed_sorted(s) -> list[int]:
    """Order of the basis e_1 < ... < e_n < e_nbar < ... < e_1bar."""
    return sorted(s, key=lambda x: x if x > 0 else 2 * 10**9 + x)


def barred_count(s) -> int:
    return sum(1 for x in s if x < 0)


def unbarred(s) -> tuple[int, ...]:
    return tuple(sorted(x for x in s if x > 0))


def _parity_ok(lie_type: str, n: int, family, s) -> bool:
    if lie_type != "D":
        return True
    return len(unbarred(s)) % 2 == family_length_parity(n, family)


def ambient_fixed_points(lie_type: str, n: int, family: str | None = None) -> list[frozenset]:
    """All fixed maximal isotropic subspaces (one component in type D)."""
    fam = normalize_family(family)
    if lie_type == "D" and fam is None:
        raise InvalidInput("type D needs a family tag")
    out = []
    for signs in product((1, -1), repeat=n):
        s = frozenset(sg * i for sg, i in zip(signs, range(1, n + 1)))
        if _parity_ok(lie_type, n, fam, s):
            out.append(s)
    return out


def cell_fixed_point(beta: IndexSeq) -> frozenset:
    """The fixed point of the Schubert cell of beta: e_{beta_i} and e_{j bar} otherwise."""
    chosen = set(beta.parts)
    s = frozenset(i if i in chosen else -i for i in range(1, beta.n + 1))
    if not _parity_ok(beta.lie_type, beta.n, beta.family, s):
        raise InvalidInput(f"{beta.parts} does not lie on component {beta.family}")
    return s


def flag_profile(s, n: int) -> tuple[int, ...]:
    """(dim(L n V_1), ..., dim(L n V_n)) for the fixed point L = span(s)."""
    return tuple(sum(1 for x in s if 0 < x <= j) for j in range(1, n + 1))


def in_cell(s, beta: IndexSeq) -> bool:
    """Cell membership: the flag intersections of s are exactly those of beta."""
    return flag_profile(s, beta.n) == tuple(
        sum(1 for b in beta.parts if b <= j) for j in range(1, beta.n + 1)
    )


def in_schubert_variety(s, alpha: IndexSeq) -> bool:
    prof = flag_profile(s, alpha.n)
    return _parity_ok(alpha.lie_type, alpha.n, alpha.family, s) and all(
        prof[a - 1] >= i for i, a in enumerate(alpha.parts, start=1)
    )


def colex_combinations(items: Sequence[int], r: int) -> list[tuple[int, ...]]:
    return sorted(combinations(sorted(items), r), key=lambda c: c[::-1])


def resolve_handle(h: Handle, chain: Sequence[frozenset]) -> frozenset:
    if h.kind == "zero":
        return frozenset()
    if h.kind == "flag":
        return frozenset(range(1, h.index + 1))
    if h.kind == "coord":
        return chain[h.index - 1]
    raise InvalidInput("the full space has no fixed subset")


def stage_chains(t: Tower) -> Iterator[tuple[frozenset, ...]]:
    """Fixed points of the intermediate stages, left to right."""
    stages = t.intermediate

    def walk(j, chain):
        if j == len(stages):
            yield tuple(chain)
            return
        st = stages[j]
        left, right = resolve_handle(st.left, chain), resolve_handle(st.right, chain)
        for extra in colex_combinations(right - left, st.dim - len(left)):
            yield from walk(j + 1, chain + [left | frozenset(extra)])

    yield from walk(0, [])


def _base_completions(t: Tower, left: frozenset) -> Iterator[frozenset]:
    others = [i for i in range(1, t.n + 1) if i not in left]
    for signs in product((1, -1), repeat=len(others)):
        s = left | frozenset(sg * i for sg, i in zip(signs, others))
        if _parity_ok(t.lie_type, t.n, t.family, s):
            yield s


def tower_fixed_points(t: Tower) -> list[ChainPoint]:
    out = []
    for chain in stage_chains(t):
        left = resolve_handle(t.base.left, chain)
        out.extend(ChainPoint(chain, s) for s in _base_completions(t, left))
    return out


def fiber_fixed_count(t: Tower, base) -> int:
    """Number of tower fixed points over the ambient fixed point ``base``."""
    base = frozenset(base)
    if len(base) != t.n or {abs(x) for x in base} != set(range(1, t.n + 1)):
        raise InvalidInput(f"{signed_sorted(base)} is not a fixed maximal isotropic subspace")
    if not _parity_ok(t.lie_type, t.n, t.family, base):
        return 0
    return sum(1 for chain in stage_chains(t) if resolve_handle(t.base.left, chain) <= base)


# --------------------------------------------------------------------------
# weights


def default_weights(n: int) -> tuple[int, ...]:
    return tuple(range(1, n + 1))


def random_weights(n: int, rng: random.Random | None = None, high: int = 10**6) -> tuple[int, ...]:
    rng = rng or random.Random()
    return tuple(rng.sample(range(1, high + 1), n))


def signed_weight(w: Sequence[int], x: int) -> int:
    """Weight of e_x: w_x for x > 0, -w_{|x|} for a barred index."""
    return w[x - 1] if x > 0 else -w[-x - 1]
