"""Invariant suite used by the ``check`` command and the acceptance tests."""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Iterable, Sequence

from .combinatorics import IndexSeq, schubert_dim, sub_betas
from .errors import SchubertError
from .euler import fiber_euler
from .fixedpoints import cell_fixed_point, fiber_fixed_count, random_weights, tower_fixed_points
from .localization import compute_table, degree_audit
from .pq import pfaffian
from .resolution import admissible_sequences, all_merge_orders, build_tower, tower_dim


@dataclass
class CheckResult:
    name: str
    ok: bool
    detail: str = ""


def _alphas(types: Iterable[str], n_max: int) -> list[IndexSeq]:
    return [a for t in types for n in range(1, n_max + 1) for a in admissible_sequences(t, n)]


def _label(a: IndexSeq) -> str:
    return f"{a.lie_type}{a.n} {a.family or ''} alpha=({a})".replace("  ", " ")


def _run(name: str, alphas: Sequence[IndexSeq], probe: Callable[[IndexSeq], str | None]) -> CheckResult:
    for a in alphas:
        try:
            problem = probe(a)
        except SchubertError as exc:
            problem = f"{type(exc).__name__}: {exc}"
        if problem:
            return CheckResult(name, False, f"{_label(a)}: {problem}")
    return CheckResult(name, True, f"{len(alphas)} sequences")


def check_tower_dims(alphas):
    def probe(a):
        t = build_tower(a)
        if tower_dim(t) != schubert_dim(a):
            return f"tower_dim {tower_dim(t)} != {schubert_dim(a)}"
    return _run("tower dimension", alphas, probe)


def check_oracle(alphas):
    def probe(a):
        t = build_tower(a)
        for b in sub_betas(a):
            d, count = fiber_euler(a, b), fiber_fixed_count(t, cell_fixed_point(b))
            if d != count:
                return f"beta=({b}): recursion {d} != fixed points {count}"
    return _run("oracle equivalence", alphas, probe)


def check_census(alphas):
    def probe(a):
        total = sum(fiber_euler(a, b) for b in sub_betas(a))
        points = len(tower_fixed_points(build_tower(a)))
        if total != points:
            return f"sum of d = {total}, tower has {points} fixed points"
    return _run("fixed-point census", alphas, probe)


def check_degree_audit(alphas):
    def probe(a):
        rep = degree_audit(a, strict=False)
        if not rep.ok:
            return f"residue {rep.max_deviation}"
    return _run("degree audit", alphas, probe)


def check_gamma_values(alphas):
    def probe(a):
        table = compute_table(a).entries
        if table.get(a) != 1:
            return f"diagonal gamma = {table.get(a)}"
        bad = [(str(b), g) for b, g in table.items() if g <= 0]
        if bad:
            return f"nonpositive gammas {bad}"
    return _run("integrality, diagonal, positivity", alphas, probe)


def check_weight_independence(alphas, seeds=(1, 2)):
    def probe(a):
        ref = compute_table(a).entries
        for seed in seeds:
            w = random_weights(a.n, random.Random(seed))
            other = compute_table(a, weights=w, retry=False).entries
            if other != ref:
                return f"weights {w} change the table"
    return _run("weight independence", alphas, probe)


def check_policy_independence(alphas):
    def probe(a):
        ref = compute_table(a).entries
        for order in all_merge_orders(a):
            if compute_table(a, policy=order).entries != ref:
                return f"merge order {order} changes the table"
    return _run("policy independence", alphas, probe)


def check_user_weights(alphas, weights: Sequence[int]):
    def probe(a):
        if len(weights) != a.n:
            return None
        compute_table(a, weights=weights, retry=False)
    return _run(f"weights {tuple(weights)} generic", [a for a in alphas if a.n == len(weights)], probe)


def check_pfaffian(trials: int = 20, seed: int = 0):
    import sympy

    rng = random.Random(seed)
    for _ in range(trials):
        size = rng.choice([2, 4, 6, 8])
        m = [[Fraction(0)] * size for _ in range(size)]
        for i in range(size):
            for j in range(i + 1, size):
                v = Fraction(rng.randint(-9, 9), rng.randint(1, 4))
                m[i][j], m[j][i] = v, -v
        if sympy.Rational(pfaffian(m)) ** 2 != sympy.Matrix(m).det():
            return CheckResult("Pfaffian squared = determinant", False, f"matrix {m}")
    return CheckResult("Pfaffian squared = determinant", True, f"{trials} random matrices")


def run_checks(n_max: int = 5, types: Sequence[str] = ("D", "C", "B"),
               weights: Sequence[int] | None = None) -> list[CheckResult]:
    alphas = _alphas(types, n_max)
    results = [
        check_tower_dims(alphas),
        check_oracle(alphas),
        check_census(alphas),
        check_degree_audit(alphas),
        check_gamma_values(alphas),
        check_weight_independence(alphas),
        check_policy_independence(alphas),
        check_pfaffian(),
    ]
    if weights is not None:
        results.append(check_user_weights(alphas, weights))
    return results
