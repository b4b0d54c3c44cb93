"""Affine Group Subgroups Module.

Every subgroup of AGL(1, F_q) is S(A, b, H) = <x -> Ax + b> acting on the
translations by H, with A = gamma^((q-1)/d) for a divisor d of q - 1, H an
F_p(A)-submodule of F_q, and b determined modulo H (b = 0 when d = 1).
This module keeps subgroups as canonical (d, b, H) triples and derives
element sets, membership, containment and conjugation from them.

It also carries the brute-force closure enumeration used to validate the
classification for small fields.
"""

import logging
import time
from collections import deque
from dataclasses import dataclass
from functools import cached_property, lru_cache
from typing import Dict, FrozenSet, Iterable, List, Optional, Sequence, Tuple

import numpy as np

from . import config
from .errors import FieldMismatch, FullGroup, NotDivisor, NotModule, SizeCap, ZeroElement
from .gf import (
    FieldElement, FieldSpec, GeneratorCertificate, discrete_log, find_generator, inv, power,
)
from .lattice import Poset
from .number_utils import divisors, prime_divisors
from .submodules import (
    Submodule, coefficient_field, covering_submodules, enumerate_submodules, is_module_over,
    p_of_d, stabilizer_field,
)

logger = logging.getLogger("aglmobius.subgroups")


# ============================================================================
# Affine maps
# ============================================================================

@dataclass(frozen=True)
class AffineMap:
    """x -> a*x + b with a != 0."""

    a: FieldElement
    b: FieldElement

    def __post_init__(self):
        if self.a.spec != self.b.spec:
            raise FieldMismatch("affine map coefficients belong to different fields")
        if not self.a:
            raise ZeroElement("affine map needs a nonzero multiplier")

    @classmethod
    def identity(cls, spec: FieldSpec) -> "AffineMap":
        return cls(spec.one, spec.zero)

    @classmethod
    def translation(cls, c: FieldElement) -> "AffineMap":
        return cls(c.spec.one, c)

    @property
    def spec(self) -> FieldSpec:
        return self.a.spec

    def compose(self, other: "AffineMap") -> "AffineMap":
        """self o other, i.e. x -> self(other(x))."""
        return AffineMap(self.a * other.a, self.a * other.b + self.b)

    def __mul__(self, other: "AffineMap") -> "AffineMap":
        return self.compose(other)

    def inverse(self) -> "AffineMap":
        a_inv = inv(self.a)
        return AffineMap(a_inv, -(a_inv * self.b))

    def apply(self, x: FieldElement) -> FieldElement:
        return self.a * x + self.b

    def key(self) -> Tuple[int, int]:
        return (self.a.to_int(), self.b.to_int())

    def __repr__(self) -> str:
        return f"AffineMap(a={list(self.a.coeffs)}, b={list(self.b.coeffs)})"


def conjugate_map(g: AffineMap, t: AffineMap) -> AffineMap:
    """t o g o t^-1."""
    return t.compose(g).compose(t.inverse())


# ============================================================================
# Subgroup triples
# ============================================================================

@dataclass(frozen=True)
class Subgroup:
    """S(gamma^((q-1)/d), b, H) with b the canonical representative of b + H."""

    d: int
    b: FieldElement
    H: Submodule

    @property
    def spec(self) -> FieldSpec:
        return self.H.spec

    @property
    def order(self) -> int:
        return self.d * self.H.size

    @cached_property
    def A(self) -> FieldElement:
        return power(find_generator(self.spec).gamma, (self.spec.q - 1) // self.d)

    def generators(self) -> List[AffineMap]:
        gens = [AffineMap.translation(h) for h in self.H.vectors()]
        if self.d != 1:
            gens.insert(0, AffineMap(self.A, self.b))
        return gens

    def sort_key(self) -> tuple:
        return (self.d, self.H.dim_p, self.H.basis, self.b.coeffs)

    def __repr__(self) -> str:
        return f"Subgroup(d={self.d}, b={list(self.b.coeffs)}, H={[list(r) for r in self.H.basis]})"


def make_subgroup(spec: FieldSpec, d: int, b: Optional[FieldElement], H: Submodule) -> Subgroup:
    """Validate a (d, b, H) triple and put b in canonical form.

    Raises:
        NotDivisor: If d does not divide q - 1.
        NotModule: If H is not an F_p(A)-module.
    """
    if H.spec != spec or (b is not None and b.spec != spec):
        raise FieldMismatch("subgroup components belong to different fields")
    if d < 1 or (spec.q - 1) % d:
        raise NotDivisor(f"{d} does not divide q - 1 = {spec.q - 1}")
    r = coefficient_field(spec.p, d)
    if not is_module_over(H, r):
        raise NotModule(f"{H} is not an F_{r}-module, needed for d = {d}")
    rep = spec.zero if d == 1 or b is None else H.reduce(b)
    return Subgroup(d, rep, H)


def trivial_subgroup(spec: FieldSpec) -> Subgroup:
    return Subgroup(1, spec.zero, Submodule.zero(spec))


def full_group(spec: FieldSpec) -> Subgroup:
    return Subgroup(spec.q - 1, spec.zero, Submodule.whole(spec))


def geometric_sum(A: FieldElement, k: int) -> FieldElement:
    """1 + A + ... + A^(k-1)."""
    spec = A.spec
    if A == spec.one:
        return spec.constant(k)
    return (power(A, k) - spec.one) / (A - spec.one)


def _check_field(g_spec: FieldSpec, S: Subgroup) -> None:
    if g_spec != S.spec:
        raise FieldMismatch("map and subgroup belong to different fields")


def member(g: AffineMap, S: Subgroup) -> bool:
    """Membership through the decomposition (A^k, b(1 + ... + A^(k-1)) + h)."""
    _check_field(g.spec, S)
    step = (S.spec.q - 1) // S.d
    e = discrete_log(g.a)
    if e % step:
        return False
    k = e // step
    return (g.b - S.b * geometric_sum(S.A, k)) in S.H


def elements(S: Subgroup) -> FrozenSet[AffineMap]:
    """The d * |H| maps of S."""
    out = set()
    Ak = S.spec.one
    for k in range(S.d):
        shift = S.b * geometric_sum(S.A, k)
        for h in S.H.elements():
            out.add(AffineMap(Ak, shift + h))
        Ak = Ak * S.A
    return frozenset(out)


def element_keys(S: Subgroup) -> FrozenSet[Tuple[int, int]]:
    return frozenset(g.key() for g in elements(S))


def closure(generators: Iterable[AffineMap]) -> FrozenSet[AffineMap]:
    """The subgroup generated by the given maps (closure under composition)."""
    gens = list(generators)
    if not gens:
        raise ValueError("closure needs at least one generator")
    start = AffineMap.identity(gens[0].spec)
    seen = {start}
    queue = deque([start])
    while queue:
        x = queue.popleft()
        for g in gens:
            y = x.compose(g)
            if y not in seen:
                seen.add(y)
                queue.append(y)
    return frozenset(seen)


def from_generators(gens: Iterable[AffineMap]) -> Subgroup:
    """Recognize the canonical triple of the subgroup generated by gens.

    d is the number of distinct multipliers, H collects the translations and
    b is read off the element whose multiplier is exactly gamma^((q-1)/d).
    """
    group = closure(gens)
    spec = next(iter(group)).spec
    multipliers = {g.a for g in group}
    d = len(multipliers)
    H = Submodule.span(spec, [g.b for g in group if g.a == spec.one])
    A = power(find_generator(spec).gamma, (spec.q - 1) // d)
    b = next(g.b for g in group if g.a == A)
    return make_subgroup(spec, d, b, H)


def conjugate_by_translation(S: Subgroup, c: FieldElement) -> Subgroup:
    """t S t^-1 for t = (1, c): S(A, b - (A - 1)c, H)."""
    if S.d == 1:
        return S
    return make_subgroup(S.spec, S.d, S.b - (S.A - S.spec.one) * c, S.H)


def normalize_conjugate(S: Subgroup) -> Tuple[Subgroup, AffineMap]:
    """Translate S to S(A, 0, H); returns the subgroup and the translation t = (1, c).

    c = b / (A - 1), and t S t^-1 is the returned subgroup.
    """
    spec = S.spec
    if S.d == 1 or not S.b:
        return S, AffineMap.identity(spec)
    c = S.b / (S.A - spec.one)
    return Subgroup(S.d, spec.zero, S.H), AffineMap.translation(c)


def contains(S2: Subgroup, S1: Subgroup) -> bool:
    """S1 <= S2, checked on the generators of S1."""
    if S1.spec != S2.spec:
        raise FieldMismatch("subgroups belong to different fields")
    if S2.d % S1.d or S2.H.dim_p < S1.H.dim_p:
        return False
    if not S1.H.is_subspace_of(S2.H):
        return False
    return S1.d == 1 or member(AffineMap(S1.A, S1.b), S2)


def contains_by_theorem(S2: Subgroup, S1: Subgroup) -> bool:
    """Containment after translating S1 to b = 0.

    S(A1, 0, H1) <= S(A2, b2, H2) iff d1 | d2, H1 is in H2, and b2 = 0 unless d1 = 1.
    """
    if S1.spec != S2.spec:
        raise FieldMismatch("subgroups belong to different fields")
    S1n, t = normalize_conjugate(S1)
    S2n = conjugate_by_translation(S2, t.b)
    if S2n.d % S1n.d or not S1n.H.is_subspace_of(S2n.H):
        return False
    return S1n.d == 1 or not S2n.b


# ============================================================================
# Catalog
# ============================================================================

class GroupCatalog:
    """Every subgroup of AGL(1, F_q) in canonical order.

    Built once, then read-only. The containment relation is held as a
    boolean matrix when q is at most config.CONTAINMENT_MATRIX_MAX_Q and
    answered by contains() otherwise.
    """

    def __init__(self, spec: FieldSpec, subgroups: Sequence[Subgroup]):
        self.spec = spec
        self.gamma: GeneratorCertificate = find_generator(spec)
        self.subgroups: Tuple[Subgroup, ...] = tuple(sorted(subgroups, key=Subgroup.sort_key))
        self.index: Dict[Subgroup, int] = {S: i for i, S in enumerate(self.subgroups)}
        if len(self.index) != len(self.subgroups):
            raise ValueError("catalog contains duplicate subgroups")
        self.index_by_order: Dict[int, List[int]] = {}
        for i, S in enumerate(self.subgroups):
            self.index_by_order.setdefault(S.order, []).append(i)
        self._element_cache: Dict[int, FrozenSet[AffineMap]] = {}
        self.containment: Optional[np.ndarray] = None
        if spec.q <= config.CONTAINMENT_MATRIX_MAX_Q:
            self.containment = self._build_containment()

    def _build_containment(self) -> np.ndarray:
        n = len(self.subgroups)
        matrix = np.zeros((n, n), dtype=bool)
        inclusion: Dict[Tuple[Submodule, Submodule], bool] = {}
        for i, S1 in enumerate(self.subgroups):
            for j, S2 in enumerate(self.subgroups):
                if S2.d % S1.d or S2.order % S1.order:
                    continue
                key = (S1.H, S2.H)
                if key not in inclusion:
                    inclusion[key] = S1.H.is_subspace_of(S2.H)
                if not inclusion[key]:
                    continue
                matrix[i, j] = S1.d == 1 or member(AffineMap(S1.A, S1.b), S2)
        matrix.setflags(write=False)
        return matrix

    def __len__(self) -> int:
        return len(self.subgroups)

    def __iter__(self):
        return iter(self.subgroups)

    def __getitem__(self, i: int) -> Subgroup:
        return self.subgroups[i]

    def index_of(self, S: Subgroup) -> int:
        if S.spec != self.spec:
            raise FieldMismatch("subgroup does not belong to this catalog's field")
        return self.index[S]

    @property
    def bottom(self) -> int:
        return self.index[trivial_subgroup(self.spec)]

    @property
    def top(self) -> int:
        return self.index[full_group(self.spec)]

    def leq(self, i: int, j: int) -> bool:
        """S_i <= S_j."""
        if self.containment is not None:
            return bool(self.containment[i, j])
        return contains(self.subgroups[j], self.subgroups[i])

    def up_set(self, i: int) -> List[int]:
        if self.containment is not None:
            return np.flatnonzero(self.containment[i]).tolist()
        return [j for j in range(len(self)) if self.leq(i, j)]

    def down_set(self, j: int) -> List[int]:
        if self.containment is not None:
            return np.flatnonzero(self.containment[:, j]).tolist()
        return [i for i in range(len(self)) if self.leq(i, j)]

    def comparable_pairs(self) -> List[Tuple[int, int]]:
        return [(i, j) for i in range(len(self)) for j in self.up_set(i)]

    def elements_of(self, i: int) -> FrozenSet[AffineMap]:
        cached = self._element_cache.get(i)
        if cached is None:
            cached = self._element_cache.setdefault(i, elements(self.subgroups[i]))
        return cached

    def minimal_strict_supergroups(self, i: int) -> List[int]:
        above = [j for j in self.up_set(i) if j != i]
        return [j for j in above if not any(k != j and self.leq(k, j) for k in above)]

    def maximal_strict_subgroups(self, j: int) -> List[int]:
        below = [i for i in self.down_set(j) if i != j]
        return [i for i in below if not any(k != i and self.leq(i, k) for k in below)]

    def poset(self) -> Poset:
        """The subgroup lattice, labelled by catalog index."""
        n = len(self)
        if self.containment is not None:
            matrix = self.containment
        else:
            matrix = np.array([[self.leq(i, j) for j in range(n)] for i in range(n)], dtype=bool).reshape(n, n)
        return Poset(list(range(n)), matrix)


def enumerate_all(spec: FieldSpec) -> GroupCatalog:
    """Catalog of all subgroups, one per (d, H, b + H).

    Raises:
        SizeCap: If q exceeds config.CATALOG_MAX_Q.
    """
    if spec.q > config.CATALOG_MAX_Q:
        raise SizeCap(f"q = {spec.q} exceeds the catalog cap {config.CATALOG_MAX_Q}")
    started = time.perf_counter()
    found: List[Subgroup] = []
    for d in divisors(spec.q - 1):
        r = coefficient_field(spec.p, d)
        for H in enumerate_submodules(spec, r):
            if d == 1:
                found.append(Subgroup(1, spec.zero, H))
            else:
                found.extend(Subgroup(d, b, H) for b in H.coset_representatives())
    catalog = GroupCatalog(spec, found)
    logger.info("catalog for q=%d: %d subgroups in %.3fs", spec.q, len(catalog), time.perf_counter() - started)
    return catalog


def immediate_supergroups(S: Subgroup, catalog: GroupCatalog) -> List[Subgroup]:
    """Minimal strict supergroups of S, from the (d, H) data alone.

    After translating S to S(A, 0, H), with H' the stabilizer field of H:
    for d != 1 they are S(gamma^((q-1)/(de)), 0, H) for primes e dividing
    (|H'| - 1)/d together with S(A, 0, K) for K covering H over F_p(d);
    for d = 1 they are S(gamma^((q-1)/e), b, H) for primes e dividing
    |H'| - 1 and every coset b + H, together with the translation groups K
    covering H over F_p. The result is translated back.

    Raises:
        FullGroup: If S is the whole group.
    """
    spec = catalog.spec
    if S == full_group(spec):
        raise FullGroup("the full group has no strict supergroups")
    S0, t = normalize_conjugate(S)
    stabilizer = stabilizer_field(S0.H).r
    found: List[Subgroup] = []
    if S0.d != 1:
        for e in prime_divisors((stabilizer - 1) // S0.d):
            found.append(Subgroup(S0.d * e, spec.zero, S0.H))
        for K in covering_submodules(S0.H, p_of_d(spec.p, S0.d)):
            found.append(Subgroup(S0.d, spec.zero, K))
    else:
        for e in prime_divisors(stabilizer - 1):
            found.extend(make_subgroup(spec, e, b, S0.H) for b in S0.H.coset_representatives())
        for K in covering_submodules(S0.H, spec.p):
            found.append(Subgroup(1, spec.zero, K))
    back = -t.b
    result = {conjugate_by_translation(K, back) for K in found}
    return sorted(result, key=catalog.index_of)


def maximal_subgroups(S: Subgroup, catalog: GroupCatalog) -> List[Subgroup]:
    """Maximal proper subgroups of S."""
    return [catalog[i] for i in catalog.maximal_strict_subgroups(catalog.index_of(S))]


# ============================================================================
# Brute-force closure oracle
# ============================================================================

class AffineCayleyTable:
    """AGL(1, F_q) as indexed elements with a composition table.

    Small fields only; element i is (a, b) in coefficient order of a then b.
    """

    def __init__(self, spec: FieldSpec):
        self.spec = spec
        self.maps: List[AffineMap] = [
            AffineMap(a, b) for a in spec.nonzero_elements() for b in spec.elements()
        ]
        self.index: Dict[Tuple[int, int], int] = {g.key(): i for i, g in enumerate(self.maps)}
        n = len(self.maps)
        table = np.empty((n, n), dtype=np.int32)
        for i, g in enumerate(self.maps):
            for j, h in enumerate(self.maps):
                table[i, j] = self.index[g.compose(h).key()]
        table.setflags(write=False)
        self.table = table
        self._rows = table.tolist()
        self.identity = self.index[AffineMap.identity(spec).key()]

    def __len__(self) -> int:
        return len(self.maps)

    def closure(self, generators: Iterable[int]) -> FrozenSet[int]:
        gens = list(generators)
        seen = {self.identity}
        queue = deque([self.identity])
        while queue:
            x = queue.popleft()
            for g in gens:
                y = self._rows[x][g]
                if y not in seen:
                    seen.add(y)
                    queue.append(y)
        return frozenset(seen)

    def keys_of(self, indices: Iterable[int]) -> FrozenSet[Tuple[int, int]]:
        return frozenset(self.maps[i].key() for i in indices)


@lru_cache(maxsize=8)
def cayley_table(spec: FieldSpec) -> AffineCayleyTable:
    return AffineCayleyTable(spec)


def enumerate_by_closure(spec: FieldSpec) -> List[FrozenSet[Tuple[int, int]]]:
    """All subgroups as element-key sets, by repeatedly adjoining single elements.

    Starting from the trivial group, each known subgroup is joined with every
    element outside it until no new subgroup appears.

    Raises:
        SizeCap: If q exceeds config.CLOSURE_MAX_Q.
    """
    if spec.q > config.CLOSURE_MAX_Q:
        raise SizeCap(f"q = {spec.q} exceeds the closure oracle cap {config.CLOSURE_MAX_Q}")
    started = time.perf_counter()
    group = cayley_table(spec)
    trivial = frozenset([group.identity])
    known: Dict[FrozenSet[int], Tuple[int, ...]] = {trivial: ()}
    frontier = [trivial]
    while frontier:
        next_frontier = []
        for S in frontier:
            gens = known[S]
            for g in range(len(group)):
                if g in S:
                    continue
                T = group.closure(gens + (g,))
                if T not in known:
                    known[T] = gens + (g,)
                    next_frontier.append(T)
        frontier = next_frontier
    logger.info("closure enumeration for q=%d: %d subgroups in %.3fs",
                spec.q, len(known), time.perf_counter() - started)
    return sorted((group.keys_of(S) for S in known), key=lambda s: (len(s), sorted(s)))
