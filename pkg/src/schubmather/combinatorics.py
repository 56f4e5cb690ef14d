"""Index sequences, Bruhat order, block matrices, profiles and class partitions.

An index sequence alpha = (alpha_1 < ... < alpha_s) in [1, n] names the Schubert
variety of maximal isotropic subspaces L with dim(L n V_{alpha_i}) >= i, where
V_1 < ... < V_n is a fixed isotropic flag.

Three ambient spaces are supported:

* ``D``: the even orthogonal Grassmannian OG(n, 2n), one component at a time,
* ``C``: the Lagrangian Grassmannian LG(n, 2n),
* ``B``: the odd orthogonal Grassmannian OG(n, 2n + 1).

In type D the two components are told apart by the parity of dim(L n V_n),
which on a Schubert cell equals the length of its index sequence. The
component where this dimension is congruent to n mod 2 is tagged ``"OG'"``,
the other one ``"OG''"``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations
from typing import Iterator, Sequence

from .errors import ContainmentError, IntegrityError, InvalidInput

LIE_TYPES = ("D", "C", "B")
FAMILIES = ("OG'", "OG''")

_FAMILY_ALIASES = {
    "og'": "OG'",
    "prime": "OG'",
    "1": "OG'",
    "og''": "OG''",
    'og"': "OG''",
    "dprime": "OG''",
    "double-prime": "OG''",
    "2": "OG''",
}

StrictPartition = tuple[int, ...]
Capacity = tuple[int, ...]


def normalize_family(tag: str | None) -> str | None:
    if tag is None:
        return None
    try:
        return _FAMILY_ALIASES[tag.strip().lower()]
    except KeyError:
        raise InvalidInput(f"unknown family tag {tag!r}; use one of {FAMILIES}") from None


def family_for(n: int, length: int) -> str:
    """Component of OG(n, 2n) containing the cells of sequences of this length."""
    return "OG'" if (length - n) % 2 == 0 else "OG''"


def family_length_parity(n: int, family: str) -> int:
    """Parity of len(alpha) (= dim L n V_n) on the given type D component."""
    return n % 2 if family == "OG'" else (n + 1) % 2


@dataclass(frozen=True)
class IndexSeq:
    lie_type: str
    n: int
    parts: tuple[int, ...]
    family: str | None = None

    def __post_init__(self):
        if self.lie_type not in LIE_TYPES:
            raise InvalidInput(f"lie_type must be one of {LIE_TYPES}, got {self.lie_type!r}")
        if not isinstance(self.n, int) or self.n < 1:
            raise InvalidInput(f"n must be a positive integer, got {self.n!r}")
        parts = tuple(int(p) for p in self.parts)
        object.__setattr__(self, "parts", parts)
        if any(p < 1 or p > self.n for p in parts):
            raise InvalidInput(f"parts {parts} must lie in [1, {self.n}]")
        if any(x >= y for x, y in zip(parts, parts[1:])):
            raise InvalidInput(f"parts {parts} must be strictly increasing")
        if self.lie_type == "D":
            natural = family_for(self.n, len(parts))
            fam = normalize_family(self.family)
            if fam is None:
                fam = natural
            elif fam != natural:
                raise InvalidInput(
                    f"sequence {parts} has length {len(parts)}, which does not lie on "
                    f"component {fam} of OG({self.n},{2 * self.n})"
                )
            object.__setattr__(self, "family", fam)
        else:
            object.__setattr__(self, "family", None)

    def __len__(self):
        return len(self.parts)

    def __iter__(self):
        return iter(self.parts)

    def with_parts(self, parts: Sequence[int]) -> "IndexSeq":
        return IndexSeq(self.lie_type, self.n, tuple(parts), self.family)

    def __str__(self):
        return ",".join(map(str, self.parts)) or "()"


def index_seq(lie_type: str, n: int, parts: Sequence[int], family: str | None = None) -> IndexSeq:
    return IndexSeq(lie_type, n, tuple(parts), family)


def from_complement(lie_type: str, n: int, parts: Sequence[int], family: str | None = None) -> IndexSeq:
    """Build alpha from the complementary set of indices in [1, n].

    Some tables index a Schubert variety by the positions not taken by alpha.
    """
    taken = set(parts)
    if len(taken) != len(parts) or any(p < 1 or p > n for p in taken):
        raise InvalidInput(f"complement indices {tuple(parts)} must be distinct and in [1, {n}]")
    return IndexSeq(lie_type, n, tuple(i for i in range(1, n + 1) if i not in taken), family)


def _same_space(beta: IndexSeq, alpha: IndexSeq) -> None:
    if (beta.lie_type, beta.n, beta.family) != (alpha.lie_type, alpha.n, alpha.family):
        raise InvalidInput(
            f"sequences live in different spaces: {beta.lie_type}{beta.n} {beta.family} "
            f"vs {alpha.lie_type}{alpha.n} {alpha.family}"
        )


def bruhat_leq(beta: IndexSeq, alpha: IndexSeq) -> bool:
    """True iff the Schubert variety of beta lies in that of alpha."""
    _same_space(beta, alpha)
    if len(beta) < len(alpha):
        return False
    return all(b <= a for a, b in zip(alpha.parts, beta.parts))


def ambient_dim(lie_type: str, n: int) -> int:
    return n * (n - 1) // 2 if lie_type == "D" else n * (n + 1) // 2


def schubert_dim(alpha: IndexSeq) -> int:
    n, s = alpha.n, len(alpha)
    if alpha.lie_type == "D":
        dim = sum(alpha.parts) + n * (n - s) - n * (n + 1) // 2
    else:
        dim = sum(alpha.parts) + (n + 1) * (n - s) - n * (n + 1) // 2
    if dim < 0:
        raise InvalidInput(f"sequence {alpha.parts} has negative dimension {dim}")
    return dim


@dataclass(frozen=True)
class HMatrix:
    """Block matrix: column i is (q_i, a_i) = (end, length) of the i-th run of alpha."""

    q: tuple[int, ...]
    a: tuple[int, ...]
    n: int
    has_n_column: bool = False
    b: tuple[int, ...] = field(init=False)
    b_last: int = field(init=False)

    def __post_init__(self):
        if len(self.q) != len(self.a):
            raise InvalidInput("q and a rows must have equal length")
        b = []
        prev = 0
        for q, a in zip(self.q, self.a):
            b.append(q - prev - a)
            prev = q
        b_last = self.n - prev
        if any(x < 0 for x in b) or b_last < 0 or any(a < 1 for a in self.a):
            raise InvalidInput(f"malformed block matrix q={self.q} a={self.a} n={self.n}")
        object.__setattr__(self, "b", tuple(b))
        object.__setattr__(self, "b_last", b_last)

    @property
    def d(self) -> int:
        return len(self.q)

    def columns(self) -> list[tuple[int, int]]:
        return list(zip(self.q, self.a))


def block_matrix(alpha: IndexSeq) -> HMatrix:
    parts = list(alpha.parts)
    has_n = alpha.lie_type == "D" and bool(parts) and parts[-1] == alpha.n
    if has_n:
        parts.pop()
    cols: list[list[int]] = []
    for p in parts:
        if cols and cols[-1][0] == p - 1:
            cols[-1][0] = p
            cols[-1][1] += 1
        else:
            cols.append([p, 1])
    return HMatrix(tuple(c[0] for c in cols), tuple(c[1] for c in cols), alpha.n, has_n)


def b_sequence(h: HMatrix) -> tuple[tuple[int, ...], int]:
    """(b_0, ..., b_{d-1}) and the boundary ascent b_d = n - q_d."""
    return h.b, h.b_last


def parts_from_matrix(h: HMatrix) -> tuple[int, ...]:
    parts = [p for q, a in zip(h.q, h.a) for p in range(q - a + 1, q + 1)]
    if h.has_n_column:
        parts.append(h.n)
    return tuple(parts)


@dataclass(frozen=True)
class ProfilePath:
    """Zigzag graph: ascend b_0, descend a_1, ascend b_1, ..., descend a_d, ascend b_d."""

    start: tuple[int, int]
    segments: tuple[int, ...]

    @classmethod
    def from_blocks(cls, b: Sequence[int], a: Sequence[int], b_last: int = 0,
                    start: tuple[int, int] = (0, 0)) -> "ProfilePath":
        if len(b) != len(a):
            raise InvalidInput("need one ascent b_{i-1} before every descent a_i")
        segs: list[int] = []
        for up, down in zip(b, a):
            segs += [up, down]
        segs.append(b_last)
        return cls(start, tuple(segs))

    @classmethod
    def of(cls, seq: IndexSeq) -> "ProfilePath":
        h = block_matrix(seq)
        return cls.from_blocks(h.b, h.a, h.b_last)

    @property
    def extent(self) -> int:
        return sum(self.segments)

    def vertices(self) -> list[tuple[int, int]]:
        x, y = self.start
        pts = [(x, y)]
        for k, length in enumerate(self.segments):
            x += length
            y += length if k % 2 == 0 else -length
            pts.append((x, y))
        return pts

    def minima(self) -> list[int]:
        """x-coordinates of the feet of the descents."""
        pts = self.vertices()
        return [pts[k + 1][0] for k in range(1, len(self.segments), 2)]

    def y(self, x: int) -> int:
        x0, y = self.start
        if x < x0 or x > x0 + self.extent:
            raise InvalidInput(f"x={x} outside the profile")
        pos = x0
        for k, length in enumerate(self.segments):
            if pos >= x:
                break
            step = min(length, x - pos)
            y += step if k % 2 == 0 else -step
            pos += step
        return y


def _check_below(alpha: IndexSeq, beta: IndexSeq) -> None:
    if not bruhat_leq(beta, alpha):
        raise ContainmentError(f"beta={beta.parts} is not contained in alpha={alpha.parts}")


def profile_gap(alpha: IndexSeq, beta: IndexSeq) -> tuple[int, ...]:
    """Vertical distance from each local minimum of alpha's profile down to beta's.

    Entry 0 is the shared start point, so it is always 0.
    """
    _check_below(alpha, beta)
    pa, pb = ProfilePath.of(alpha), ProfilePath.of(beta)
    return (0,) + tuple(pa.y(m) - pb.y(m) for m in pa.minima())


def capacity(alpha: IndexSeq, beta: IndexSeq) -> Capacity:
    """c_j = dim(L_beta n V_{q_j}) - (a_1 + ... + a_j), with c_0 = 0.

    This is the excess of the cell point of beta over the generic point of
    alpha at the j-th block end; it is half the profile gap.
    """
    _check_below(alpha, beta)
    h = block_matrix(alpha)
    out = [0]
    run = 0
    for q, a in zip(h.q, h.a):
        run += a
        out.append(sum(1 for x in beta.parts if x <= q) - run)
    return tuple(out)


def _staircase_width(lie_type: str, n: int) -> int:
    return n - 1 if lie_type == "D" else n


def class_partition(beta: IndexSeq) -> StrictPartition:
    """Strict partition lambda with [S(beta)] given by the P/Q polynomial of lambda."""
    n = beta.n
    if beta.lie_type == "D":
        lam = sorted((n - x for x in beta.parts if x < n), reverse=True)
    else:
        lam = sorted((n + 1 - x for x in beta.parts), reverse=True)
    lam = tuple(lam)
    if sum(lam) + schubert_dim(beta) != ambient_dim(beta.lie_type, n):
        raise IntegrityError(f"codimension identity fails for {beta.lie_type}{n} {beta.parts}")
    return lam


def dual_partition(beta: IndexSeq) -> StrictPartition:
    """Staircase complement rho(m) minus class_partition(beta)."""
    m = _staircase_width(beta.lie_type, beta.n)
    lam = class_partition(beta)
    if any(p > m for p in lam):
        raise InvalidInput(f"partition {lam} does not fit in the staircase of width {m}")
    used = set(lam)
    return tuple(k for k in range(m, 0, -1) if k not in used)


def sequences(lie_type: str, n: int, family: str | None = None) -> Iterator[IndexSeq]:
    """All index sequences of the space (one component in type D when family is given)."""
    fam = normalize_family(family)
    for r in range(n + 1):
        if lie_type == "D" and fam is not None and r % 2 != family_length_parity(n, fam):
            continue
        for parts in combinations(range(1, n + 1), r):
            yield IndexSeq(lie_type, n, parts, fam if lie_type == "D" else None)


def order_key(seq: IndexSeq):
    """Sort key: dimension descending, then parts lexicographically descending."""
    return (-schubert_dim(seq), tuple(-p for p in seq.parts), len(seq))


def sub_betas(alpha: IndexSeq) -> list[IndexSeq]:
    out = [b for b in sequences(alpha.lie_type, alpha.n, alpha.family) if bruhat_leq(b, alpha)]
    out.sort(key=order_key)
    return out
