"""Designs and Eulerian Function Module.

Applications of the Moebius table. A subgroup H fixes f_k(H) of the
k-subsets of F_q; inverting over the subgroups above H gives g_k(H), the
number of k-subsets whose full stabilizer is exactly H. Since AGL(1, F_q)
is 2-transitive, every such subset B is a base block of a 2-(q, k, lambda)
design with lambda = k(k-1)/|H|. The Eulerian function counts generating
m-tuples of the group.
"""

import logging
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Dict, FrozenSet, Iterable, List, Optional, Tuple

from . import config
from .agl_mobius import AglMuTable
from .errors import InvalidOrder, KOutOfRange, SizeCap
from .gf import FieldElement
from .subgroups import GroupCatalog, Subgroup, cayley_table

logger = logging.getLogger("aglmobius.designs")


class UnionFind:
    def __init__(self, X):
        self.parent = {x: x for x in X}
        self.rank = {x: 0 for x in X}

    def find(self, x):
        y = self.parent[x]
        if self.parent[y] != y:
            y = self.parent[x] = self.find(y)
        return y

    def union(self, x, y):
        x, y = self.find(x), self.find(y)
        if x == y:
            return
        if self.rank[x] < self.rank[y]:
            x, y = y, x
        elif self.rank[x] == self.rank[y]:
            self.rank[x] += 1
        self.parent[y] = x


@dataclass
class OrbitPartition:
    subgroup: Subgroup
    orbits: List[FrozenSet[FieldElement]]

    @property
    def sizes(self) -> List[int]:
        return sorted(len(orbit) for orbit in self.orbits)


def orbits(S: Subgroup) -> OrbitPartition:
    """Orbits of S on F_q under x -> ax + b, ordered by smallest member."""
    points = list(S.spec.elements())
    uf = UnionFind(points)
    for g in S.generators():
        for x in points:
            uf.union(x, g.apply(x))
    classes: Dict[FieldElement, set] = {}
    for x in points:
        classes.setdefault(uf.find(x), set()).add(x)
    ordered = sorted((frozenset(c) for c in classes.values()),
                     key=lambda orbit: min(x.coeffs for x in orbit))
    return OrbitPartition(S, ordered)


@lru_cache(maxsize=None)
def fixed_subset_counts(S: Subgroup) -> Tuple[int, ...]:
    """Coefficients of the product of (1 + z^|O|) over the orbits O of S.

    Entry k is the number of k-subsets of F_q that S maps to themselves.
    """
    q = S.spec.q
    poly = [1] + [0] * q
    for size in orbits(S).sizes:
        for k in range(q, size - 1, -1):
            poly[k] += poly[k - size]
    return tuple(poly)


def _check_k(k: int, q: int) -> None:
    if not 0 <= k <= q:
        raise KOutOfRange(f"k = {k} is outside 0..{q}")


def f_k(S: Subgroup, k: int) -> int:
    _check_k(k, S.spec.q)
    return fixed_subset_counts(S)[k]


def g_k(S: Subgroup, k: int, table: AglMuTable) -> int:
    """Sum of mu(S, K) f_k(K) over all K containing S (S and G included)."""
    _check_k(k, S.spec.q)
    catalog = table.catalog
    i = catalog.index_of(S)
    return sum(table.value(i, j) * f_k(catalog[j], k) for j in catalog.up_set(i))


def lambda_param(q: int, k: int, order_h: int) -> Fraction:
    """lambda = (|G|/|H|) * k(k-1) / (q(q-1)) = k(k-1)/|H| for t = 2, v = q.

    Raises:
        KOutOfRange: If k is not in 2..q.
        InvalidOrder: If order_h does not divide q(q-1).
    """
    if not 2 <= k <= q:
        raise KOutOfRange(f"k = {k} is outside 2..{q}")
    if order_h < 1 or (q * (q - 1)) % order_h:
        raise InvalidOrder(f"{order_h} does not divide |G| = {q * (q - 1)}")
    return Fraction(q * (q - 1), order_h) * Fraction(k * (k - 1), q * (q - 1))


@dataclass
class DesignRow:
    subgroup_index: int
    order: int
    k: int
    f_k: int
    g_k: int
    lam: Optional[Fraction] = None

    @property
    def integral(self) -> Optional[bool]:
        return None if self.lam is None else self.lam.denominator == 1

    @property
    def realizable(self) -> bool:
        return self.g_k > 0


@dataclass
class DesignReport:
    q: int
    k_values: List[int]
    rows: List[DesignRow] = field(default_factory=list)
    t: int = 2

    @property
    def v(self) -> int:
        return self.q


@dataclass(frozen=True)
class DesignParameters:
    v: int
    k: int
    lam: Fraction
    stabilizer_orders: Tuple[int, ...]


def design_scan(catalog: GroupCatalog, table: AglMuTable, k_range: Iterable[int]) -> DesignReport:
    """f_k, g_k and lambda for every subgroup and every k in k_range."""
    q = catalog.spec.q
    ks = list(k_range)
    for k in ks:
        _check_k(k, q)
    fixed = [fixed_subset_counts(S) for S in catalog]
    report = DesignReport(q=q, k_values=ks)
    for i, S in enumerate(catalog):
        ups = catalog.up_set(i)
        for k in ks:
            g = sum(table.value(i, j) * fixed[j][k] for j in ups)
            lam = lambda_param(q, k, S.order) if k >= 2 else None
            report.rows.append(DesignRow(i, S.order, k, fixed[i][k], g, lam))
    logger.info("design scan for q=%d over k=%s: %d rows, %d realizable",
                q, ks, len(report.rows), sum(row.realizable for row in report.rows))
    return report


def design_parameters(report: DesignReport) -> List[DesignParameters]:
    """Distinct realizable 2-(v, k, lambda) parameter sets with the stabilizer orders producing them."""
    found: Dict[Tuple[int, Fraction], set] = {}
    for row in report.rows:
        if row.realizable and row.lam is not None and row.integral:
            found.setdefault((row.k, row.lam), set()).add(row.order)
    return [DesignParameters(report.v, k, lam, tuple(sorted(orders)))
            for (k, lam), orders in sorted(found.items())]


def eulerian_phi(catalog: GroupCatalog, table: AglMuTable, m: int) -> int:
    """Number of ordered m-tuples generating G: sum of mu(H, G) |H|^m."""
    if m < 1:
        raise ValueError(f"m must be positive, got {m}")
    top = catalog.top
    return sum(table.value(i, top) * catalog[i].order ** m for i in catalog.down_set(top))


def eulerian_probability(catalog: GroupCatalog, table: AglMuTable, m: int) -> Fraction:
    """Probability that m uniformly random elements generate G."""
    order = catalog[catalog.top].order
    return Fraction(eulerian_phi(catalog, table, m), order ** m)


def count_generating_tuples(catalog: GroupCatalog, m: int) -> int:
    """Brute-force count of ordered m-tuples whose closure is G.

    Counts are propagated through the subgroups reached by prefixes: once a
    prefix generates G every completion counts.

    Raises:
        SizeCap: If q exceeds config.EULERIAN_BRUTE_MAX_Q.
    """
    spec = catalog.spec
    if spec.q > config.EULERIAN_BRUTE_MAX_Q:
        raise SizeCap(f"q = {spec.q} exceeds the brute-force cap {config.EULERIAN_BRUTE_MAX_Q}")
    if m < 1:
        raise ValueError(f"m must be positive, got {m}")
    group = cayley_table(spec)
    size = len(group)
    trivial = frozenset([group.identity])
    gens: Dict[FrozenSet[int], Tuple[int, ...]] = {trivial: ()}

    def extend(S: FrozenSet[int], g: int) -> FrozenSet[int]:
        if g in S:
            return S
        T = group.closure(gens[S] + (g,))
        gens.setdefault(T, gens[S] + (g,))
        return T

    @lru_cache(maxsize=None)
    def count(S: FrozenSet[int], remaining: int) -> int:
        if len(S) == size:
            return size ** remaining
        if remaining == 0:
            return 0
        return sum(count(extend(S, g), remaining - 1) for g in range(size))

    return count(trivial, m)
