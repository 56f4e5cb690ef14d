"""Small-resolution towers built by iterated valley merges.

The block matrix of alpha is kept as a list of columns ``(q, a, handle)``
preceded by a virtual column ``(0, 0, ZERO)``. Merging valley i (between
columns i and i+1) introduces a new subspace U of dimension q_i + a_{i+1}
with handle(i) <= U <= handle(i+1) and replaces the two columns by
``(q_i + a_{i+1}, a_i + a_{i+1}, Coord(U))``. The process stops when only a
leading column with q = a (a subspace pinned at the origin) remains; the base
stage is then the maximal isotropic U_base containing it.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterator, Sequence, Union

from .combinatorics import IndexSeq, block_matrix, schubert_dim
from .errors import ConstructionFailure, IntegrityError, InvalidInput, NotAdmissible

INF = math.inf


@dataclass(frozen=True)
class Handle:
    kind: str  # zero | flag | coord | full
    index: int = 0

    def __str__(self):
        if self.kind == "flag":
            return f"V_{self.index}"
        if self.kind == "coord":
            return f"U_{self.index}"
        return "0" if self.kind == "zero" else "V"

    def to_dict(self):
        if self.kind in ("flag", "coord"):
            return {"kind": self.kind, "index": self.index}
        return {"kind": self.kind}


ZERO = Handle("zero")
FULL = Handle("full")


def flag(q: int) -> Handle:
    return Handle("flag", q)


def coord(j: int) -> Handle:
    """Handle of tower stage j (1-based, U_j)."""
    return Handle("coord", j)


@dataclass(frozen=True)
class Column:
    q: int
    a: int
    handle: Handle


@dataclass(frozen=True)
class TowerStage:
    dim: int
    left: Handle
    right: Handle
    free_rank: int


@dataclass(frozen=True)
class Tower:
    alpha: IndexSeq
    stages: tuple[TowerStage, ...]
    merge_log: tuple[tuple[int, tuple[int, int]], ...]
    policy: str

    @property
    def lie_type(self) -> str:
        return self.alpha.lie_type

    @property
    def n(self) -> int:
        return self.alpha.n

    @property
    def family(self):
        return self.alpha.family

    @property
    def intermediate(self) -> tuple[TowerStage, ...]:
        return self.stages[:-1]

    @property
    def base(self) -> TowerStage:
        return self.stages[-1]

    def handle_dim(self, h: Handle) -> int:
        if h.kind == "zero":
            return 0
        if h.kind == "flag":
            return h.index
        if h.kind == "coord":
            return self.stages[h.index - 1].dim
        return 2 * self.n + (1 if self.lie_type == "B" else 0)

    def to_dict(self) -> dict:
        return {
            "lie_type": self.lie_type,
            "n": self.n,
            "family": self.family,
            "alpha": list(self.alpha.parts),
            "policy": self.policy,
            "stages": [
                {
                    "name": "U" if j == len(self.stages) else f"U_{j}",
                    "dim": s.dim,
                    "left": s.left.to_dict(),
                    "right": s.right.to_dict(),
                    "free_rank": s.free_rank,
                }
                for j, s in enumerate(self.stages, start=1)
            ],
            "merge_log": [{"valley": i, "column": list(col)} for i, col in self.merge_log],
            "dim": tower_dim(self),
        }


# --------------------------------------------------------------------------
# admissibility


def admissibility_failures(alpha: IndexSeq) -> list[str]:
    """Names of the existence conditions alpha violates (empty when admissible)."""
    n, s = alpha.n, len(alpha)
    if s == 0:
        return ["alpha is empty (the whole space is smooth and needs no resolution)"]
    parts = alpha.parts
    failures = []
    bound = n if alpha.lie_type == "D" else n + 1
    if alpha.lie_type == "D":
        ok = parts[-1] <= n - s or (parts[-1] == n and (s < 2 or parts[-2] <= n - s))
        if not ok:
            failures.append(
                f"alpha_s <= n-s or (alpha_s = n and alpha_(s-1) <= n-s) fails "
                f"(alpha_s={parts[-1]}, n-s={n - s})"
            )
    elif parts[-1] > n - s:
        failures.append(f"alpha_s <= n-s fails (alpha_s={parts[-1]}, n-s={n - s})")
    h = block_matrix(alpha)
    if h.d == 0:
        return failures
    q_d, a_d = h.q[-1], h.a[-1]
    if not q_d < bound - a_d:
        failures.append(f"q_d < {'n' if bound == n else 'n+1'} - a_d fails (q_d={q_d}, a_d={a_d})")
    for i in range(1, h.d + 1):
        lhs = sum(h.a[i - 1:]) - sum(h.b[i:])
        if not lhs < bound - q_d:
            failures.append(
                f"(a_d+...+a_{i}) - (b_(d-1)+...+b_{i}) < {'n' if bound == n else 'n+1'} - q_d "
                f"fails for i={i} ({lhs} >= {bound - q_d})"
            )
    return failures


def admissible(alpha: IndexSeq) -> bool:
    return not admissibility_failures(alpha)


def admissible_sequences(lie_type: str, n: int, family: str | None = None) -> list[IndexSeq]:
    """Admissible alpha, by dimension descending."""
    from .combinatorics import order_key, sequences

    if lie_type == "D" and family is None:
        found = [a for fam in ("OG'", "OG''") for a in sequences(lie_type, n, fam) if admissible(a)]
    else:
        found = [a for a in sequences(lie_type, n, family) if admissible(a)]
    return sorted(found, key=order_key)


# --------------------------------------------------------------------------
# valleys and merges

RULES = ("smallest-eligible", "literal")


def initial_columns(alpha: IndexSeq) -> list[Column]:
    h = block_matrix(alpha)
    return [Column(0, 0, ZERO)] + [Column(q, a, flag(q)) for q, a in zip(h.q, h.a)]


def is_final(cols: Sequence[Column]) -> bool:
    return len(cols) == 1 or (len(cols) == 2 and cols[1].q == cols[1].a)


def _valleys(cols: Sequence[Column]) -> list[int]:
    """Nontrivial valley indices. Valley 0 with b_0 = 0 would create U = V_{a_1}."""
    b = valley_depths(cols)
    return [i for i in range(len(cols) - 1) if not (i == 0 and b[0] == 0)]


def valley_depths(cols: Sequence[Column]) -> list[int]:
    """b_i = q_{i+1} - q_i - a_{i+1} for each valley i."""
    return [cols[i + 1].q - cols[i].q - cols[i + 1].a for i in range(len(cols) - 1)]


def eligible_valleys(cols: Sequence[Column], rule: str = "smallest-eligible") -> list[int]:
    """Valleys i with b_i <= a_i and a_{i+1} <= b_{i+1}.

    The final ascent counts as infinite and so does a_0. Under the default rule
    a column whose block starts at 1 (q = a) also counts as infinite: it is
    already pinned to the origin, exactly like the virtual column. The
    ``literal`` rule only uses a_0 = infinity and can get stuck.
    """
    if rule not in RULES:
        raise InvalidInput(f"unknown eligibility rule {rule!r}")
    if is_final(cols):
        return []
    b = valley_depths(cols)
    d = len(b)
    out = []
    for i in _valleys(cols):
        if i == 0 or (rule == "smallest-eligible" and i == 1 and cols[1].q == cols[1].a):
            left_cap = INF
        else:
            left_cap = cols[i].a
        right_cap = b[i + 1] if i + 1 < d else INF
        if b[i] <= left_cap and cols[i + 1].a <= right_cap:
            out.append(i)
    if not out:
        raise ConstructionFailure(
            f"no eligible valley in columns {[(c.q, c.a) for c in cols]} under rule {rule!r}"
        )
    return out


def merge_valley(cols: Sequence[Column], i: int, stage_number: int) -> tuple[list[Column], TowerStage, int]:
    """Merge columns i and i+1; the new stage becomes U_{stage_number}.

    Returns the new column list, the stage and the left bound dimension.
    """
    if not 0 <= i < len(cols) - 1:
        raise InvalidInput(f"valley {i} out of range for {len(cols) - 1} valleys")
    ci, cj = cols[i], cols[i + 1]
    k = ci.q + cj.a
    new = Column(k, ci.a + cj.a, coord(stage_number))
    stage = TowerStage(k, ci.handle, cj.handle, k - ci.q)
    if i == 0:
        out = [cols[0], new] + list(cols[2:])
    else:
        out = list(cols[:i]) + [new] + list(cols[i + 2:])
    return out, stage, ci.q


Policy = Union[str, Sequence[int]]


def policy_name(policy: Policy) -> str:
    if isinstance(policy, str):
        return policy
    return "order:" + ",".join(map(str, policy))


def parse_policy(text: str) -> Policy:
    if text in RULES:
        return text
    if text.startswith("order:"):
        body = text[len("order:"):]
        try:
            return tuple(int(x) for x in body.split(",") if x.strip() != "")
        except ValueError:
            raise InvalidInput(f"bad merge order {text!r}") from None
    raise InvalidInput(f"unknown policy {text!r}; use {', '.join(RULES)} or order:i,j,...")


def merge_order(alpha: IndexSeq, policy: Policy = "smallest-eligible") -> tuple[int, ...]:
    """The sequence of valley indices the policy merges."""
    cols = initial_columns(alpha)
    order = []
    explicit = None if isinstance(policy, str) else list(policy)
    step = 0
    while not is_final(cols):
        if explicit is None:
            i = eligible_valleys(cols, policy)[0]
        else:
            if step >= len(explicit):
                raise ConstructionFailure(f"merge order {tuple(explicit)} ends before the tower is complete")
            i = explicit[step]
            if i not in _valleys(cols):
                raise ConstructionFailure(f"step {step}: valley {i} is not a nontrivial valley")
        cols, _, _ = merge_valley(cols, i, step + 1)
        order.append(i)
        step += 1
    if explicit is not None and step != len(explicit):
        raise ConstructionFailure(f"merge order {tuple(explicit)} is longer than needed ({step} merges)")
    return tuple(order)


def build_tower(alpha: IndexSeq, policy: Policy = "smallest-eligible", check: bool = True) -> Tower:
    """Build the resolution tower of the Schubert variety of alpha.

    The empty sequence (the whole space) is accepted and gives the one-stage
    tower U = maximal isotropic, left bound 0.
    """
    if len(alpha) and not admissible(alpha):
        raise NotAdmissible(alpha, admissibility_failures(alpha))
    order = merge_order(alpha, policy)
    cols = initial_columns(alpha)
    stages: list[TowerStage] = []
    log = []
    for step, i in enumerate(order, start=1):
        cols, stage, _ = merge_valley(cols, i, step)
        stages.append(stage)
        log.append((i, (cols[i if i else 1].q, cols[i if i else 1].a)))
    left = cols[1].handle if len(cols) == 2 else ZERO
    left_dim = cols[1].q if len(cols) == 2 else 0
    stages.append(TowerStage(alpha.n, left, FULL, alpha.n - left_dim))
    tower = Tower(alpha, tuple(stages), tuple(log), policy_name(policy))
    if check:
        _check_handles(tower)
        if tower_dim(tower) != schubert_dim(alpha):
            raise IntegrityError(
                f"tower dimension {tower_dim(tower)} != Schubert dimension {schubert_dim(alpha)}"
            )
    return tower


def _check_handles(t: Tower) -> None:
    for j, s in enumerate(t.stages, start=1):
        for h in (s.left, s.right):
            if h.kind == "coord" and not h.index < j:
                raise IntegrityError(f"stage {j} refers forward to U_{h.index}")
            if h.kind == "flag" and not h.index <= t.n:
                raise IntegrityError(f"stage {j} refers to V_{h.index} beyond n")
        if j < len(t.stages) and s.right.kind == "full":
            raise IntegrityError(f"intermediate stage {j} is bounded by the full space")
        if not t.handle_dim(s.left) < s.dim:
            raise IntegrityError(f"stage {j} is not larger than its left bound")


def all_merge_orders(alpha: IndexSeq, eligible_only: bool = True) -> Iterator[tuple[int, ...]]:
    """Every complete merge order, either through eligible valleys only or through any valley."""

    def walk(cols, prefix):
        if is_final(cols):
            yield prefix
            return
        choices = eligible_valleys(cols) if eligible_only else _valleys(cols)
        for i in choices:
            nxt, _, _ = merge_valley(cols, i, len(prefix) + 1)
            yield from walk(nxt, prefix + (i,))

    yield from walk(initial_columns(alpha), ())


def tower_dim(t: Tower) -> int:
    """Sum of the Grassmannian fibre dimensions of the stages."""
    total = 0
    for s in t.intermediate:
        total += s.free_rank * (t.handle_dim(s.right) - s.dim)
    l = t.base.free_rank
    if t.lie_type == "D":
        total += l * (l - 1) // 2
    elif t.lie_type == "C":
        total += l * (l + 1) // 2
    else:
        total += l * (l - 1) // 2 + l
    return total
