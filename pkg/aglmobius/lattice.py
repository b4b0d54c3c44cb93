"""Finite Poset and Moebius Function Module.

Generic incidence machinery over finite posets: the defining Moebius
recursion, Moebius inversion and both forms of the crosscut theorem. These
are the independent oracles the closed formula in agl_mobius is checked
against. Elements are addressed by index; labels are opaque client handles.
"""

import logging
from dataclasses import dataclass, field
from functools import cached_property
from typing import Callable, Dict, Hashable, Iterable, List, Mapping, Optional, Sequence, Tuple, Union

import numpy as np

from . import config
from .errors import NotCrosscut, NotLattice, NotPartialOrder, SizeCap
from .gf import FieldSpec
from .submodules import Submodule, enumerate_submodules

logger = logging.getLogger("aglmobius.lattice")


class Poset:
    """Immutable finite partial order on range(size).

    leq is a read-only boolean matrix with leq[i, j] iff i <= j.
    """

    def __init__(self, labels: Sequence[Hashable], leq, validate: bool = True):
        matrix = np.array(leq, dtype=bool)
        size = len(labels)
        if matrix.shape != (size, size):
            raise NotPartialOrder(f"relation matrix has shape {matrix.shape}, expected ({size}, {size})")
        matrix.setflags(write=False)
        self.labels: Tuple[Hashable, ...] = tuple(labels)
        self.leq = matrix
        if validate:
            self._validate()

    def _validate(self) -> None:
        leq = self.leq
        if not np.all(np.diagonal(leq)):
            raise NotPartialOrder("relation is not reflexive")
        off_diagonal = leq & leq.T
        np.fill_diagonal(off_diagonal, False)
        if off_diagonal.any():
            i, j = np.argwhere(off_diagonal)[0]
            raise NotPartialOrder(f"relation is not antisymmetric at ({i}, {j})")
        composed = (leq.astype(np.float32) @ leq.astype(np.float32)) > 0
        broken = composed & ~leq
        if broken.any():
            i, j = np.argwhere(broken)[0]
            raise NotPartialOrder(f"relation is not transitive: {i} <= z <= {j} but not {i} <= {j}")

    @classmethod
    def from_relation(cls, labels: Sequence[Hashable], leq_fn: Callable[[Hashable, Hashable], bool],
                      validate: bool = True) -> "Poset":
        matrix = np.array([[leq_fn(x, y) for y in labels] for x in labels], dtype=bool).reshape(len(labels), len(labels))
        return cls(labels, matrix, validate=validate)

    @property
    def size(self) -> int:
        return len(self.labels)

    def __len__(self) -> int:
        return len(self.labels)

    @cached_property
    def index(self) -> Dict[Hashable, int]:
        return {label: i for i, label in enumerate(self.labels)}

    def is_leq(self, x: int, y: int) -> bool:
        return bool(self.leq[x, y])

    def is_lt(self, x: int, y: int) -> bool:
        return x != y and bool(self.leq[x, y])

    def up_set(self, x: int) -> List[int]:
        return np.flatnonzero(self.leq[x]).tolist()

    def down_set(self, y: int) -> List[int]:
        return np.flatnonzero(self.leq[:, y]).tolist()

    def interval(self, x: int, y: int) -> List[int]:
        return np.flatnonzero(self.leq[x] & self.leq[:, y]).tolist()

    def subposet(self, elements: Sequence[int]) -> "Poset":
        """Induced order on the given indices; labels are the original indices."""
        idx = np.array(elements, dtype=int)
        return Poset(list(elements), self.leq[np.ix_(idx, idx)], validate=False)

    def interval_poset(self, x: int, y: int) -> "Poset":
        return self.subposet(self.interval(x, y))

    @cached_property
    def cover(self) -> np.ndarray:
        """cover[i, j] iff j covers i."""
        lt = self.leq.copy()
        np.fill_diagonal(lt, False)
        between = (lt.astype(np.float32) @ lt.astype(np.float32)) > 0
        out = lt & ~between
        out.setflags(write=False)
        return out

    def upper_covers(self, x: int) -> List[int]:
        return np.flatnonzero(self.cover[x]).tolist()

    def lower_covers(self, y: int) -> List[int]:
        return np.flatnonzero(self.cover[:, y]).tolist()

    def bottom(self) -> Optional[int]:
        found = np.flatnonzero(self.leq.all(axis=1))
        return int(found[0]) if len(found) else None

    def top(self) -> Optional[int]:
        found = np.flatnonzero(self.leq.all(axis=0))
        return int(found[0]) if len(found) else None

    def atoms(self) -> List[int]:
        b = self.bottom()
        return [] if b is None else self.upper_covers(b)

    def coatoms(self) -> List[int]:
        t = self.top()
        return [] if t is None else self.lower_covers(t)

    def join(self, x: int, y: int) -> int:
        """Least upper bound of x and y."""
        bounds = np.flatnonzero(self.leq[x] & self.leq[y])
        least = [u for u in bounds if self.leq[u, bounds].all()]
        if len(least) != 1:
            raise NotLattice(f"elements {x} and {y} have no least upper bound")
        return int(least[0])

    def meet(self, x: int, y: int) -> int:
        """Greatest lower bound of x and y."""
        bounds = np.flatnonzero(self.leq[:, x] & self.leq[:, y])
        greatest = [u for u in bounds if self.leq[bounds, u].all()]
        if len(greatest) != 1:
            raise NotLattice(f"elements {x} and {y} have no greatest lower bound")
        return int(greatest[0])

    @cached_property
    def linear_extension(self) -> Tuple[int, ...]:
        """Indices ordered so that x < y puts x first (sorted by down-set size)."""
        heights = self.leq.sum(axis=0)
        return tuple(int(i) for i in np.argsort(heights, kind="stable"))

    def __repr__(self) -> str:
        return f"Poset(size={self.size})"


@dataclass
class MoebiusTable:
    """mu(x, y) for every comparable pair x <= y of a poset."""

    poset: Poset
    mu: Dict[Tuple[int, int], int] = field(default_factory=dict)

    def value(self, x: int, y: int) -> int:
        return self.mu.get((x, y), 0)

    def __getitem__(self, pair: Tuple[int, int]) -> int:
        return self.value(*pair)

    def satisfies_defining_identity(self) -> bool:
        """Interval sums of mu(x, .) vanish except on the diagonal."""
        P = self.poset
        for (x, y) in self.mu:
            total = sum(self.mu[(x, z)] for z in P.interval(x, y))
            if total != (1 if x == y else 0):
                return False
        return True


def mu_recursive(P: Poset, sources: Optional[Iterable[int]] = None) -> MoebiusTable:
    """Moebius function from the defining recursion.

    For each x the up-set is walked in a linear extension, with
    mu(x, x) = 1 and mu(x, y) = -sum of mu(x, z) over x <= z < y.
    sources restricts the computation to the rows mu(x, .) of those x.
    """
    order = P.linear_extension
    position = {x: i for i, x in enumerate(order)}
    mu: Dict[Tuple[int, int], int] = {}
    for x in (range(P.size) if sources is None else sources):
        ups = sorted(P.up_set(x), key=position.__getitem__)
        ups_arr = np.array(ups, dtype=int)
        values = np.zeros(len(ups), dtype=object)
        for k, y in enumerate(ups):
            if k == 0:
                values[k] = 1
            else:
                below = P.leq[ups_arr[:k], y]
                values[k] = -int(values[:k][below].sum())
            mu[(x, y)] = int(values[k])
    logger.debug("recursive Moebius table over %d elements (%d pairs)", P.size, len(mu))
    return MoebiusTable(P, mu)


def _require_bounded(P: Poset) -> Tuple[int, int]:
    bottom, top = P.bottom(), P.top()
    if bottom is None or top is None:
        raise NotLattice("poset needs a minimum and a maximum element")
    return bottom, top


def _check_cap(size: int) -> None:
    if size > config.CROSSCUT_MAX_SIZE:
        raise SizeCap(f"crosscut of size {size} exceeds the cap {config.CROSSCUT_MAX_SIZE}")


def _signed_subset_sum(elements: List[int], start: int, target: int, combine: Callable[[int, int], int]) -> int:
    """Sum of (-1)^|E| over subsets E whose combined value is target.

    start is the value of the empty combination. Once a partial combination
    reaches target, every extension by the remaining elements also does and
    their signed contributions cancel unless none remain.
    """
    count = len(elements)

    def walk(i: int, current: int, sign: int) -> int:
        if current == target:
            return sign if i == count else 0
        if i == count:
            return 0
        return walk(i + 1, current, sign) + walk(i + 1, combine(current, elements[i]), -sign)

    return walk(0, start, 1)


def mu_crosscut_lower(P: Poset, A: Iterable[int]) -> int:
    """mu(bottom, top) as the signed count of subsets of A joining to the top.

    Raises:
        NotLattice: If a needed join does not exist or P is unbounded.
        NotCrosscut: If A is not a lower crosscut.
        SizeCap: If A exceeds config.CROSSCUT_MAX_SIZE.
    """
    bottom, top = _require_bounded(P)
    A = sorted(set(A))
    _check_cap(len(A))
    if bottom in A:
        raise NotCrosscut("a lower crosscut may not contain the minimum")
    in_A = set(A)
    for y in range(P.size):
        if y == bottom or y in in_A:
            continue
        if not any(P.is_lt(x, y) for x in A):
            raise NotCrosscut(f"element {y} lies above no member of the crosscut")
    return _signed_subset_sum(A, bottom, top, P.join)


def mu_crosscut_upper(P: Poset, B: Iterable[int]) -> int:
    """mu(bottom, top) as the signed count of subsets of B meeting to the bottom."""
    bottom, top = _require_bounded(P)
    B = sorted(set(B))
    _check_cap(len(B))
    if top in B:
        raise NotCrosscut("an upper crosscut may not contain the maximum")
    in_B = set(B)
    for y in range(P.size):
        if y == top or y in in_B:
            continue
        if not any(P.is_lt(y, x) for x in B):
            raise NotCrosscut(f"element {y} lies below no member of the crosscut")
    return _signed_subset_sum(B, top, bottom, P.meet)


FunctionLike = Union[Mapping[int, int], Callable[[int], int]]


def _as_callable(f: FunctionLike) -> Callable[[int], int]:
    return f.__getitem__ if isinstance(f, Mapping) else f


def summation(P: Poset, f: FunctionLike) -> Dict[int, int]:
    """Zeta transform: x -> sum of f(z) over z <= x."""
    g = _as_callable(f)
    values = [g(z) for z in range(P.size)]
    return {x: sum(values[z] for z in P.down_set(x)) for x in range(P.size)}


def moebius_invert(P: Poset, f_sum: FunctionLike, table: Optional[MoebiusTable] = None) -> Dict[int, int]:
    """Recover f from its down-set sums: f(x) = sum of mu(z, x) f_sum(z) over z <= x."""
    g = _as_callable(f_sum)
    if table is None:
        table = mu_recursive(P)
    values = [g(z) for z in range(P.size)]
    return {x: sum(table.value(z, x) * values[z] for z in P.down_set(x)) for x in range(P.size)}


def translation_poset(spec: FieldSpec) -> Poset:
    """Subgroup lattice of the translation group (F_q, +), labelled by Submodule."""
    subspaces = enumerate_submodules(spec, spec.p)
    return Poset.from_relation(subspaces, Submodule.is_subspace_of, validate=False)


def pgroup_mu_check(P: Poset, p: int, rank: Optional[Callable[[Hashable], int]] = None) -> bool:
    """Check mu(x, y) = (-1)^a p^(a(a-1)/2) with a the rank difference, for all x <= y.

    rank defaults to the F_p-dimension of Submodule labels.
    """
    rank = rank or (lambda label: label.dim_p)
    table = mu_recursive(P)
    for (x, y), value in table.mu.items():
        alpha = rank(P.labels[y]) - rank(P.labels[x])
        expected = (-1) ** alpha * p ** (alpha * (alpha - 1) // 2)
        if value != expected:
            logger.warning("elementary abelian identity failed at (%d, %d): %d != %d", x, y, value, expected)
            return False
    return True
