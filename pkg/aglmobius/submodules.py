"""Submodule Enumeration Module.

F_r-submodules of F_q for the subfields F_r of F_q. Every submodule is
stored over the prime field as a reduced row-echelon basis of coefficient
vectors, so a single canonical form serves every subfield at once; being an
F_r-module is a predicate checked against that form.
"""

import logging
from dataclasses import dataclass
from functools import cached_property, lru_cache
from itertools import combinations, product
from typing import Iterable, List, Sequence, Tuple, Union

from .errors import CharDividesD, NonIntegralDim, NotContained, NotDivisor, NotModule
from .gf import FieldElement, FieldSpec, gamma_of, mul, power, subfield_elements, subfield_generator
from .number_utils import gaussian_binomial, gaussian_total, multiplicative_order_mod

logger = logging.getLogger("aglmobius.submodules")

Vector = Tuple[int, ...]

__all__ = [
    "Submodule", "SubfieldTag", "p_of_d", "coefficient_field", "subfield_tag", "subfield_tags",
    "is_module_over", "stabilizer_field", "span_over", "enumerate_submodules",
    "covering_submodules", "quotient_dim", "mu_subspace", "subfield_sum_check",
    "gaussian_binomial", "gaussian_total",
]


def _rref(vectors: Iterable[Sequence[int]], p: int) -> Tuple[Vector, ...]:
    """Reduced row-echelon form over F_p.

    Leading entries are 1, pivot columns are cleared and rows are ordered
    by pivot column.
    """
    basis: List[Tuple[int, List[int]]] = []
    for raw in vectors:
        v = [x % p for x in raw]
        for piv, row in basis:
            c = v[piv]
            if c:
                v = [(x - c * y) % p for x, y in zip(v, row)]
        if not any(v):
            continue
        piv = next(i for i, x in enumerate(v) if x)
        scale = pow(v[piv], -1, p)
        v = [(x * scale) % p for x in v]
        cleared = []
        for pc, row in basis:
            c = row[piv]
            if c:
                row = [(x - c * y) % p for x, y in zip(row, v)]
            cleared.append((pc, row))
        cleared.append((piv, v))
        basis = sorted(cleared, key=lambda item: item[0])
    return tuple(tuple(row) for _, row in basis)


@dataclass(frozen=True)
class Submodule:
    """An additive subgroup of F_q in canonical F_p echelon form."""

    spec: FieldSpec
    basis: Tuple[Vector, ...]

    @classmethod
    def span(cls, spec: FieldSpec, vectors: Iterable[Union[FieldElement, Sequence[int]]]) -> "Submodule":
        rows = [v.coeffs if isinstance(v, FieldElement) else tuple(v) for v in vectors]
        return cls(spec, _rref(rows, spec.p))

    @classmethod
    def zero(cls, spec: FieldSpec) -> "Submodule":
        return cls(spec, ())

    @classmethod
    def whole(cls, spec: FieldSpec) -> "Submodule":
        return cls(spec, tuple(tuple(int(i == j) for j in range(spec.n)) for i in range(spec.n)))

    @property
    def dim_p(self) -> int:
        return len(self.basis)

    @property
    def size(self) -> int:
        return self.spec.p ** self.dim_p

    @cached_property
    def pivots(self) -> Tuple[int, ...]:
        return tuple(next(i for i, x in enumerate(row) if x) for row in self.basis)

    def vectors(self) -> List[FieldElement]:
        return [FieldElement(self.spec, row) for row in self.basis]

    def reduce(self, x: FieldElement) -> FieldElement:
        """Canonical representative of the coset x + H.

        Pivot coordinates are zeroed, which yields the coset element with the
        lexicographically smallest coefficient vector.
        """
        p = self.spec.p
        v = list(x.coeffs)
        for piv, row in zip(self.pivots, self.basis):
            c = v[piv]
            if c:
                v = [(a - c * b) % p for a, b in zip(v, row)]
        return FieldElement(self.spec, tuple(v))

    def __contains__(self, x: FieldElement) -> bool:
        return not self.reduce(x)

    def contains(self, x: FieldElement) -> bool:
        return x in self

    def is_subspace_of(self, other: "Submodule") -> bool:
        return self.dim_p <= other.dim_p and all(v in other for v in self.vectors())

    def elements(self) -> Tuple[FieldElement, ...]:
        return self._elements

    @cached_property
    def _elements(self) -> Tuple[FieldElement, ...]:
        p = self.spec.p
        out = []
        for combo in product(range(p), repeat=self.dim_p):
            v = [0] * self.spec.n
            for c, row in zip(combo, self.basis):
                if c:
                    v = [(a + c * b) % p for a, b in zip(v, row)]
            out.append(FieldElement(self.spec, tuple(v)))
        return tuple(sorted(out, key=lambda e: e.coeffs))

    def coset_representatives(self) -> List[FieldElement]:
        """Canonical representatives of F_q / H in coefficient order."""
        free = [i for i in range(self.spec.n) if i not in self.pivots]
        reps = []
        for values in product(range(self.spec.p), repeat=len(free)):
            v = [0] * self.spec.n
            for i, c in zip(free, values):
                v[i] = c
            reps.append(FieldElement(self.spec, tuple(v)))
        return reps

    def sort_key(self) -> Tuple[int, Tuple[Vector, ...]]:
        return (self.dim_p, self.basis)

    def to_dict(self) -> dict:
        return {"dim_p": self.dim_p, "basis": [list(row) for row in self.basis]}

    def __repr__(self) -> str:
        return f"Submodule(q={self.spec.q}, basis={[list(r) for r in self.basis]})"


@dataclass(frozen=True)
class SubfieldTag:
    """The subfield F_r of F_q, r = p^m with m | n."""

    r: int
    m: int


def subfield_tag(spec: FieldSpec, r: Union[int, SubfieldTag]) -> SubfieldTag:
    if isinstance(r, SubfieldTag):
        r = r.r
    m = 0
    size = 1
    while size < r:
        size *= spec.p
        m += 1
    if size != r or m == 0 or spec.n % m:
        raise NotDivisor(f"F_{r} is not a subfield of F_{spec.q}")
    return SubfieldTag(r, m)


def subfield_tags(spec: FieldSpec) -> List[SubfieldTag]:
    """All subfields of F_q, smallest first."""
    return [SubfieldTag(spec.p ** m, m) for m in range(1, spec.n + 1) if spec.n % m == 0]


def p_of_d(p: int, d: int) -> int:
    """Smallest power of p congruent to 1 mod d.

    Args:
        p: Prime.
        d: Positive integer prime to p.

    Returns:
        int: p^m with m the multiplicative order of p mod d (1 when d = 1).

    Raises:
        CharDividesD: If p divides d.
    """
    if d % p == 0:
        raise CharDividesD(f"characteristic {p} divides {d}")
    return p ** multiplicative_order_mod(p, d)


def coefficient_field(p: int, d: int) -> int:
    """Order of F_p(a) for a of multiplicative order d."""
    return p if d == 1 else p_of_d(p, d)


def is_module_over(H: Submodule, r: Union[int, SubfieldTag]) -> bool:
    tag = subfield_tag(H.spec, r)
    if tag.m == 1:
        return True
    s = subfield_generator(H.spec, tag.r)
    return all(mul(s, h) in H for h in H.vectors())


def stabilizer_field(H: Submodule) -> SubfieldTag:
    """Largest subfield K of F_q with K * H contained in H."""
    for tag in reversed(subfield_tags(H.spec)):
        if is_module_over(H, tag):
            return tag
    raise RuntimeError("F_p stabilizes every submodule")  # unreachable


def span_over(spec: FieldSpec, vectors: Iterable[FieldElement], r: Union[int, SubfieldTag]) -> Submodule:
    """F_r-span of the given elements, in canonical F_p form."""
    tag = subfield_tag(spec, r)
    s = subfield_generator(spec, tag.r)
    scalars = [power(s, i) for i in range(tag.m)]
    return Submodule.span(spec, (mul(c, v) for v in vectors for c in scalars))


def _echelon_shapes(k: int, size: int):
    """Coefficient matrices of every reduced echelon form of a k-space.

    Yields lists of rows (lists of scalar indices into range(size)) with
    entries restricted to the reduced echelon pattern.
    """
    for dim in range(k + 1):
        for pivots in combinations(range(k), dim):
            slots = [(i, j) for i, piv in enumerate(pivots) for j in range(piv + 1, k) if j not in pivots]
            for values in product(range(size), repeat=len(slots)):
                rows = [[0] * k for _ in range(dim)]
                for i, piv in enumerate(pivots):
                    rows[i][piv] = 1
                for (i, j), v in zip(slots, values):
                    rows[i][j] = v
                yield rows


@lru_cache(maxsize=None)
def _enumerate_submodules(spec: FieldSpec, r: int) -> Tuple[Submodule, ...]:
    tag = subfield_tag(spec, r)
    k = spec.n // tag.m
    if tag.m == 1:
        found = [Submodule(spec, _rref(rows, spec.p)) for rows in _echelon_shapes(k, spec.p)]
    else:
        # F_r-coordinates against the F_r-basis 1, gamma, ..., gamma^(k-1).
        scalars = sorted(subfield_elements(spec, tag.m), key=lambda e: e.coeffs)
        scalars.remove(spec.zero)
        scalars.remove(spec.one)
        scalars = [spec.zero, spec.one] + scalars
        gamma = gamma_of(spec)
        frame = [power(gamma, i) for i in range(k)]
        found = []
        for rows in _echelon_shapes(k, tag.r):
            vectors = []
            for row in rows:
                v = spec.zero
                for coeff, base in zip(row, frame):
                    if coeff:
                        v = v + mul(scalars[coeff], base)
                vectors.append(v)
            found.append(span_over(spec, vectors, tag))
    found.sort(key=Submodule.sort_key)
    logger.debug("q=%d r=%d: %d submodules", spec.q, r, len(found))
    return tuple(found)


def enumerate_submodules(spec: FieldSpec, r: Union[int, SubfieldTag]) -> List[Submodule]:
    """All F_r-subspaces of F_q, sorted by (dim_p, basis).

    The count is the Gaussian-binomial total of an (n/m)-dimensional space
    over F_r.
    """
    return list(_enumerate_submodules(spec, subfield_tag(spec, r).r))


def covering_submodules(H: Submodule, r: Union[int, SubfieldTag]) -> List[Submodule]:
    """F_r-submodules K containing H with dim_r(K/H) = 1.

    These are the preimages in F_q of the points of the projective space
    of F_q/H over F_r.
    """
    tag = subfield_tag(H.spec, r)
    seen = set()
    covers = []
    for x in H.coset_representatives():
        if not x:
            continue
        K = span_over(H.spec, H.vectors() + [x], tag)
        if K not in seen:
            seen.add(K)
            covers.append(K)
    covers.sort(key=Submodule.sort_key)
    return covers


def quotient_dim(H1: Submodule, H2: Submodule, r: Union[int, SubfieldTag]) -> int:
    """dim over F_r of H2/H1."""
    tag = subfield_tag(H1.spec, r)
    if not H1.is_subspace_of(H2):
        raise NotContained(f"{H1} is not contained in {H2}")
    for H in (H1, H2):
        if not is_module_over(H, tag):
            raise NotModule(f"{H} is not an F_{tag.r}-module")
    diff = H2.dim_p - H1.dim_p
    if diff % tag.m:
        raise NonIntegralDim(f"F_p-codimension {diff} is not a multiple of {tag.m}")
    return diff // tag.m


def mu_subspace(l: int, r: int) -> int:
    """Moebius value of a codimension-l pair in a subspace lattice over F_r."""
    return (-1) ** l * r ** (l * (l - 1) // 2)


def subfield_sum_check(spec: FieldSpec, r: Union[int, SubfieldTag], V: Submodule,
                       q_prime: Union[int, SubfieldTag, None] = None) -> bool:
    """Check the subfield summation identity for one (r, q', V) triple.

    Sums mu_r(0, L) over every F_r-subspace L of V whose F_q'-span is V and
    compares with mu_q'(0, V). q' defaults to the stabilizer field of V,
    the largest field V is a module over.

    Raises:
        NotDivisor: If F_r is not contained in F_q'.
        NotModule: If V is not an F_q'-module.
    """
    small = subfield_tag(spec, r)
    large = stabilizer_field(V) if q_prime is None else subfield_tag(spec, q_prime)
    if large.m % small.m:
        raise NotDivisor(f"F_{small.r} is not a subfield of F_{large.r}")
    if not is_module_over(V, large):
        raise NotModule(f"{V} is not an F_{large.r}-module")
    total = 0
    for L in enumerate_submodules(spec, small):
        if not L.is_subspace_of(V):
            continue
        if span_over(spec, L.vectors(), large) != V:
            continue
        total += mu_subspace(L.dim_p // small.m, small.r)
    expected = mu_subspace(V.dim_p // large.m, large.r)
    if total != expected:
        logger.warning("subfield identity failed: r=%d q'=%d V=%s (%d != %d)",
                       small.r, large.r, V, total, expected)
    return total == expected
