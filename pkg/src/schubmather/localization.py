"""gamma_{alpha,beta} by the Bott residue formula on the resolution tower.

At a fixed point p of Z_alpha the integrand c(TZ) * class(dual of beta)
restricts to a product of linear factors (1 + theta t) over the tangent
weights theta, times the class value at the Chern roots of U^vee. The degree
dim Z coefficient divided by the product of tangent weights, summed over p,
is gamma. The class is Q~ in type C and P~ in types D and B.
"""

from __future__ import annotations

import random
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations
from math import prod
from typing import Callable, Sequence

from .combinatorics import (
    IndexSeq,
    StrictPartition,
    bruhat_leq,
    dual_partition,
    schubert_dim,
    sub_betas,
)
from .errors import ContainmentError, GenericityError, IntegrityError, InvalidInput
from .fixedpoints import (
    ChainPoint,
    resolve_handle,
    default_weights,
    random_weights,
    signed_weight,
    tower_fixed_points,
)
from .pq import chern_from_roots, ptilde, qtilde
from .resolution import Policy, Tower, build_tower, policy_name

RETRY_ATTEMPTS = 3


class TruncPoly:
    """Polynomial in t with exact coefficients, truncated above degree ``top``."""

    __slots__ = ("coeffs", "top")

    def __init__(self, coeffs: Sequence, top: int):
        self.top = top
        cs = list(coeffs)[: top + 1]
        self.coeffs = cs + [0] * (top + 1 - len(cs))

    @classmethod
    def one(cls, top: int) -> "TruncPoly":
        return cls([1], top)

    @classmethod
    def total_chern(cls, weights: Sequence[int], top: int) -> "TruncPoly":
        """prod (1 + theta t) over the weights."""
        p = cls.one(top)
        for theta in weights:
            p = p.times_linear(theta)
        return p

    def times_linear(self, theta) -> "TruncPoly":
        cs = list(self.coeffs)
        for k in range(self.top, 0, -1):
            cs[k] += cs[k - 1] * theta
        return TruncPoly(cs, self.top)

    def times_monomial(self, value, degree: int) -> "TruncPoly":
        cs = [0] * (self.top + 1)
        for k in range(self.top + 1 - degree):
            cs[k + degree] = self.coeffs[k] * value
        return TruncPoly(cs, self.top)

    def __mul__(self, other: "TruncPoly") -> "TruncPoly":
        top = min(self.top, other.top)
        cs = [0] * (top + 1)
        for i, x in enumerate(self.coeffs[: top + 1]):
            if x:
                for j in range(top + 1 - i):
                    cs[i + j] += x * other.coeffs[j]
        return TruncPoly(cs, top)

    def __getitem__(self, k: int):
        return self.coeffs[k] if 0 <= k <= self.top else 0

    def __eq__(self, other):
        return isinstance(other, TruncPoly) and self.top == other.top and self.coeffs == other.coeffs

    def __repr__(self):
        return f"TruncPoly({self.coeffs}, top={self.top})"


def tangent_weights(t: Tower, p: ChainPoint, w: Sequence[int]) -> tuple[int, ...]:
    """Torus weights of T Z_alpha at p.

    Stage j contributes Hom(U_j / W_L, W_R / U_j); the base contributes
    wedge^2 (type D), Sym^2 (type C) or wedge^2 plus the line U^perp / U
    (type B) of (U / W_L)^vee.
    """
    out = []
    for j, st in enumerate(t.intermediate):
        left = resolve_handle(st.left, p.stages)
        right = resolve_handle(st.right, p.stages)
        s = p.stages[j]
        for a in sorted(s - left):
            for b in sorted(right - s):
                out.append(signed_weight(w, b) - signed_weight(w, a))
    free = sorted(p.base - resolve_handle(t.base.left, p.stages), key=abs)
    fw = [signed_weight(w, a) for a in free]
    out.extend(-x - y for x, y in combinations(fw, 2))
    if t.lie_type == "C":
        out.extend(-2 * x for x in fw)
    elif t.lie_type == "B":
        out.extend(-x for x in fw)
    if any(theta == 0 for theta in out):
        raise GenericityError(f"weights {tuple(w)} give a zero tangent weight at {p.to_dict()}")
    return tuple(out)


def dual_chern(p: ChainPoint, w: Sequence[int]) -> tuple:
    """Chern classes of U^vee at p; its roots are -w(a), a in the base subset."""
    return chern_from_roots([-signed_weight(w, a) for a in p.base])


def class_value(lie_type: str, lam: StrictPartition, c: Sequence):
    return qtilde(lam, c) if lie_type == "C" else ptilde(lam, c)


def integrand_value(t: Tower, p: ChainPoint, lambda_dual: StrictPartition, w: Sequence[int]) -> TruncPoly:
    top = schubert_dim(t.alpha)
    tw = tangent_weights(t, p, w)
    q = class_value(t.lie_type, lambda_dual, dual_chern(p, w))
    return TruncPoly.total_chern(tw, top).times_monomial(q, sum(lambda_dual))


def _elementary(values: Sequence[int], top: int) -> list[int]:
    e = [1] + [0] * top
    for v in values:
        for k in range(top, 0, -1):
            e[k] += e[k - 1] * v
    return e


@dataclass(frozen=True)
class _PointData:
    lie_type: str
    elementary: tuple[int, ...]
    euler: int
    chern: tuple[int, ...]


def _point_data(t: Tower, points: Sequence[ChainPoint], w: Sequence[int]) -> list[_PointData]:
    top = schubert_dim(t.alpha)
    out = []
    for p in points:
        tw = tangent_weights(t, p, w)
        if len(tw) != top:
            raise IntegrityError(f"{len(tw)} tangent weights at a point of a {top}-dimensional tower")
        out.append(_PointData(t.lie_type, tuple(_elementary(tw, top)), prod(tw), dual_chern(p, w)))
    return out


def _partial_sums(data: Sequence[_PointData], lambdas: Sequence[StrictPartition], degrees: Sequence[int]):
    """sum_p e_{k - |lambda|}(theta_p) class_lambda(p) / euler_p for each (lambda, k)."""
    sums = [Fraction(0)] * len(lambdas)
    for pd in data:
        values = {}
        for idx, (lam, k) in enumerate(zip(lambdas, degrees)):
            m = k - sum(lam)
            if m < 0 or not pd.elementary[m]:
                continue
            if lam not in values:
                values[lam] = class_value(pd.lie_type, lam, pd.chern)
            sums[idx] += Fraction(pd.elementary[m] * values[lam], pd.euler)
    return sums


def _localize(data, lambdas, degrees, jobs: int):
    if jobs <= 1 or len(data) < 2 * jobs:
        return _partial_sums(data, lambdas, degrees)
    chunks = [data[i::jobs] for i in range(jobs)]
    with ProcessPoolExecutor(max_workers=jobs) as pool:
        parts = list(pool.map(_partial_sums, chunks, [lambdas] * jobs, [degrees] * jobs))
    return [sum(col, Fraction(0)) for col in zip(*parts)]


def _to_int(x: Fraction, what: str) -> int:
    if x.denominator != 1:
        raise IntegrityError(f"{what} is not an integer: {x}")
    return x.numerator


@dataclass
class TableResult:
    alpha: IndexSeq
    entries: dict = field(default_factory=dict)  # IndexSeq -> int, in sub_betas order
    weights: tuple[int, ...] = ()
    policy: str = "smallest-eligible"


def with_generic_weights(run: Callable[[Sequence[int]], object], n: int,
                         weights: Sequence[int] | None = None,
                         attempts: int = RETRY_ATTEMPTS, rng: random.Random | None = None):
    """Call run(w); on a vanishing weight retry with fresh random weights.

    Returns (result, weights used). Raises GenericityError when the retries
    are exhausted too.
    """
    w = tuple(weights) if weights is not None else default_weights(n)
    if len(w) != n:
        raise InvalidInput(f"need {n} weights, got {len(w)}")
    rng = rng or random.Random(0)
    last = None
    for _ in range(attempts + 1):
        try:
            return run(w), w
        except GenericityError as exc:
            last = exc
            w = random_weights(n, rng)
    raise GenericityError(f"no generic weights after {attempts} retries: {last}")


def _table(alpha: IndexSeq, betas: Sequence[IndexSeq], w, policy: Policy, jobs: int) -> dict:
    tower = build_tower(alpha, policy)
    top = schubert_dim(alpha)
    data = _point_data(tower, tower_fixed_points(tower), w)
    lambdas = [dual_partition(b) for b in betas]
    sums = _localize(data, lambdas, [top] * len(lambdas), jobs)
    return {b: _to_int(s, f"gamma for alpha={alpha.parts}, beta={b.parts}") for b, s in zip(betas, sums)}


def compute_table(alpha: IndexSeq, weights: Sequence[int] | None = None,
                  policy: Policy = "smallest-eligible", jobs: int = 1,
                  betas: Sequence[IndexSeq] | None = None, retry: bool = True) -> TableResult:
    betas = list(betas) if betas is not None else sub_betas(alpha)
    for b in betas:
        if not bruhat_leq(b, alpha):
            raise ContainmentError(f"beta={b.parts} is not contained in alpha={alpha.parts}")
    run = lambda w: _table(alpha, betas, w, policy, jobs)  # noqa: E731
    if retry:
        entries, used = with_generic_weights(run, alpha.n, weights)
    else:
        used = tuple(weights) if weights is not None else default_weights(alpha.n)
        entries = run(used)
    return TableResult(alpha, entries, tuple(used), policy_name(policy))


def gamma(alpha: IndexSeq, beta: IndexSeq, weights: Sequence[int] | None = None,
          policy: Policy = "smallest-eligible", jobs: int = 1) -> int:
    """Coefficient of [S(beta)] in the pushforward of c(T Z_alpha)."""
    return compute_table(alpha, weights, policy, jobs, betas=[beta]).entries[beta]


def gamma_table(alpha: IndexSeq, weights: Sequence[int] | None = None,
                policy: Policy = "smallest-eligible", jobs: int = 1) -> dict:
    """beta -> gamma for every beta <= alpha, ordered as sub_betas."""
    return compute_table(alpha, weights, policy, jobs).entries


@dataclass
class AuditReport:
    alpha: IndexSeq
    dim: int
    sums: dict  # (lambda, degree) -> Fraction
    top: dict  # lambda -> Fraction at degree dim

    @property
    def max_deviation(self) -> Fraction:
        return max((abs(v) for v in self.sums.values()), default=Fraction(0))

    @property
    def ok(self) -> bool:
        return self.max_deviation == 0


def degree_audit(alpha: IndexSeq, weights: Sequence[int] | None = None,
                 policy: Policy = "smallest-eligible", strict: bool = True) -> AuditReport:
    """Localization sums in every degree below dim Z must vanish exactly."""
    w = tuple(weights) if weights is not None else default_weights(alpha.n)
    tower = build_tower(alpha, policy)
    top = schubert_dim(alpha)
    data = _point_data(tower, tower_fixed_points(tower), w)
    lams = list(dict.fromkeys(dual_partition(b) for b in sub_betas(alpha)))
    keys = [(lam, k) for lam in lams for k in range(sum(lam), top + 1)]
    sums = _localize(data, [k[0] for k in keys], [k[1] for k in keys], 1)
    low = {key: s for key, s in zip(keys, sums) if key[1] < top}
    high = {key[0]: s for key, s in zip(keys, sums) if key[1] == top}
    report = AuditReport(alpha, top, low, high)
    if strict and not report.ok:
        raise IntegrityError(f"degree audit residue {report.max_deviation} for alpha={alpha.parts}")
    return report
