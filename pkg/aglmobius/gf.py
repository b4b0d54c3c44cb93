"""Finite Field Arithmetic Module.

Exact arithmetic in F_q = GF(p^n). Elements are coefficient vectors of
length n over F_p (constant term first), reduced modulo a fixed monic
irreducible polynomial. The modulus is the lexicographically smallest monic
irreducible polynomial of degree n and the fixed generator gamma of F_q^* is
the lexicographically smallest primitive element, so every canonical form
built on top of this module is reproducible across runs.
"""

import json
import logging
import re
from dataclasses import dataclass, field
from functools import cached_property, lru_cache
from itertools import product
from typing import Dict, FrozenSet, Iterable, Iterator, Sequence, Tuple

from . import config
from .errors import (
    DivisionByZero, FieldMismatch, NotDivisor, ParseError, SizeCap, UsageError, ZeroElement,
)
from .number_utils import factorize, prime_divisors, require_prime

logger = logging.getLogger("aglmobius.gf")

_POWER_FORM = re.compile(r"^g(?:\^(-?\d+))?$")


# ============================================================================
# Polynomials over F_p (coefficient tuples, constant term first)
# ============================================================================

def _poly_mod(a: Sequence[int], b: Sequence[int], p: int) -> Tuple[int, ...]:
    """Remainder of a modulo the monic polynomial b over F_p."""
    rem = list(a)
    deg_b = len(b) - 1
    for i in range(len(rem) - 1, deg_b - 1, -1):
        c = rem[i] % p
        if c:
            shift = i - deg_b
            for j, bj in enumerate(b):
                rem[shift + j] -= c * bj
    return tuple(x % p for x in rem[:deg_b])


def is_irreducible(coeffs: Sequence[int], p: int) -> bool:
    """Check irreducibility of a monic polynomial over F_p.

    Trial division by every monic polynomial of degree 1..n//2.

    Args:
        coeffs: Coefficients, constant term first, leading coefficient 1.
        p: Prime characteristic.

    Returns:
        bool: True if the polynomial has no nontrivial factor.
    """
    n = len(coeffs) - 1
    if n <= 1:
        return n == 1
    for deg in range(1, n // 2 + 1):
        for tail in product(range(p), repeat=deg):
            if not any(_poly_mod(coeffs, tail + (1,), p)):
                return False
    return True


# ============================================================================
# Field description and elements
# ============================================================================

@dataclass(frozen=True)
class FieldSpec:
    """GF(p^n) with a fixed monic irreducible modulus (constant term first)."""

    p: int
    n: int
    modulus: Tuple[int, ...]

    @property
    def q(self) -> int:
        return self.p ** self.n

    @cached_property
    def zero(self) -> "FieldElement":
        return FieldElement(self, (0,) * self.n)

    @cached_property
    def one(self) -> "FieldElement":
        return FieldElement(self, (1,) + (0,) * (self.n - 1))

    def element(self, coeffs: Iterable[int]) -> "FieldElement":
        """Build an element from any coefficient list, reducing eagerly."""
        raw = [int(c) for c in coeffs]
        if len(raw) > self.n:
            reduced = _poly_mod(raw, self.modulus, self.p)
        else:
            reduced = tuple(c % self.p for c in raw) + (0,) * (self.n - len(raw))
        return FieldElement(self, reduced)

    def constant(self, c: int) -> "FieldElement":
        return self.element([c])

    def from_int(self, index: int) -> "FieldElement":
        """Element whose coefficients are the base-p digits of index."""
        digits = []
        for _ in range(self.n):
            index, digit = divmod(index, self.p)
            digits.append(digit)
        return FieldElement(self, tuple(digits))

    def elements(self) -> Iterator["FieldElement"]:
        """All q elements in coefficient-lexicographic order."""
        for coeffs in product(range(self.p), repeat=self.n):
            yield FieldElement(self, coeffs)

    def nonzero_elements(self) -> Iterator["FieldElement"]:
        for a in self.elements():
            if a:
                yield a

    def __repr__(self) -> str:
        return f"FieldSpec(p={self.p}, n={self.n}, modulus={list(self.modulus)})"


@dataclass(frozen=True)
class FieldElement:
    spec: FieldSpec
    coeffs: Tuple[int, ...]

    def __post_init__(self):
        if len(self.coeffs) != self.spec.n:
            raise ValueError(f"expected {self.spec.n} coefficients, got {len(self.coeffs)}")
        if any(not 0 <= c < self.spec.p for c in self.coeffs):
            raise ValueError(f"coefficients {self.coeffs} are not reduced mod {self.spec.p}")

    def __bool__(self) -> bool:
        return any(self.coeffs)

    def to_int(self) -> int:
        return sum(c * self.spec.p ** i for i, c in enumerate(self.coeffs))

    def __add__(self, other: "FieldElement") -> "FieldElement":
        return add(self, other)

    def __sub__(self, other: "FieldElement") -> "FieldElement":
        return sub(self, other)

    def __neg__(self) -> "FieldElement":
        return neg(self)

    def __mul__(self, other: "FieldElement") -> "FieldElement":
        return mul(self, other)

    def __truediv__(self, other: "FieldElement") -> "FieldElement":
        return div(self, other)

    def __pow__(self, e: int) -> "FieldElement":
        return power(self, e)

    def __repr__(self) -> str:
        return f"FieldElement(q={self.spec.q}, {list(self.coeffs)})"


def _check_same(a: FieldElement, b: FieldElement) -> None:
    if a.spec is not b.spec and a.spec != b.spec:
        raise FieldMismatch(f"operands belong to different fields: {a.spec} vs {b.spec}")


def add(a: FieldElement, b: FieldElement) -> FieldElement:
    _check_same(a, b)
    p = a.spec.p
    return FieldElement(a.spec, tuple((x + y) % p for x, y in zip(a.coeffs, b.coeffs)))


def neg(a: FieldElement) -> FieldElement:
    p = a.spec.p
    return FieldElement(a.spec, tuple((-x) % p for x in a.coeffs))


def sub(a: FieldElement, b: FieldElement) -> FieldElement:
    _check_same(a, b)
    p = a.spec.p
    return FieldElement(a.spec, tuple((x - y) % p for x, y in zip(a.coeffs, b.coeffs)))


def mul(a: FieldElement, b: FieldElement) -> FieldElement:
    _check_same(a, b)
    spec = a.spec
    n = spec.n
    prod = [0] * (2 * n - 1)
    for i, x in enumerate(a.coeffs):
        if x:
            for j, y in enumerate(b.coeffs):
                if y:
                    prod[i + j] += x * y
    return FieldElement(spec, _poly_mod(prod, spec.modulus, spec.p))


def power(a: FieldElement, e: int) -> FieldElement:
    """a^e by square-and-multiply; negative e inverts first."""
    if e < 0:
        return power(inv(a), -e)
    result = a.spec.one
    base = a
    while e:
        if e & 1:
            result = mul(result, base)
        base = mul(base, base)
        e >>= 1
    return result


pow = power


def inv(a: FieldElement) -> FieldElement:
    if not a:
        raise DivisionByZero("zero has no multiplicative inverse")
    return power(a, a.spec.q - 2)


def div(a: FieldElement, b: FieldElement) -> FieldElement:
    _check_same(a, b)
    return mul(a, inv(b))


def frobenius(a: FieldElement, k: int = 1) -> FieldElement:
    """a^(p^k)."""
    return power(a, a.spec.p ** k)


# ============================================================================
# Field construction and the multiplicative group
# ============================================================================

@lru_cache(maxsize=None)
def build_field(p: int, n: int, size_cap: int = None) -> FieldSpec:
    """Construct GF(p^n) with the lexicographically smallest irreducible modulus.

    Candidates are the monic degree-n polynomials ordered by their
    coefficient tuples, constant term first.

    Args:
        p: Prime characteristic.
        n: Extension degree, n >= 1.
        size_cap: Largest admissible q; defaults to config.FIELD_SIZE_CAP.

    Returns:
        FieldSpec: The field description.

    Raises:
        NotPrime: If p is composite.
        SizeCap: If p^n exceeds the cap.
    """
    require_prime(p)
    if n < 1:
        raise UsageError(f"extension degree must be positive, got {n}")
    cap = config.FIELD_SIZE_CAP if size_cap is None else size_cap
    if p ** n > cap:
        raise SizeCap(f"q = {p}^{n} = {p ** n} exceeds the field size cap {cap}")
    for tail in product(range(p), repeat=n):
        modulus = tail + (1,)
        if is_irreducible(modulus, p):
            logger.debug("GF(%d^%d) modulus %s", p, n, list(modulus))
            return FieldSpec(p, n, modulus)
    raise RuntimeError(f"no irreducible polynomial of degree {n} over F_{p}")  # unreachable


@dataclass(frozen=True)
class GeneratorCertificate:
    """A primitive element together with its order witnesses.

    prime_checks holds (l, gamma^((q-1)/l)) for every prime l | q-1; each
    witness differs from 1.
    """

    gamma: FieldElement
    order: int
    prime_checks: Tuple[Tuple[int, FieldElement], ...] = field(default=())


def _is_primitive(a: FieldElement, order: int, primes: Sequence[int]) -> bool:
    one = a.spec.one
    return all(power(a, order // ell) != one for ell in primes)


@lru_cache(maxsize=None)
def find_generator(spec: FieldSpec) -> GeneratorCertificate:
    """Smallest (coefficient-lexicographic) element of order q-1."""
    order = spec.q - 1
    primes = prime_divisors(order)
    for a in spec.nonzero_elements():
        if _is_primitive(a, order, primes):
            checks = tuple((ell, power(a, order // ell)) for ell in primes)
            logger.debug("gamma for q=%d is %s", spec.q, list(a.coeffs))
            return GeneratorCertificate(gamma=a, order=order, prime_checks=checks)
    raise RuntimeError(f"no generator found for {spec}")  # unreachable


def gamma_of(spec: FieldSpec) -> FieldElement:
    return find_generator(spec).gamma


def element_order(a: FieldElement) -> int:
    """Multiplicative order of a nonzero element; divides q-1."""
    if not a:
        raise ZeroElement("zero has no multiplicative order")
    order = a.spec.q - 1
    one = a.spec.one
    for ell, _ in factorize(order):
        while order % ell == 0 and power(a, order // ell) == one:
            order //= ell
    return order


@lru_cache(maxsize=None)
def _log_table(spec: FieldSpec) -> Dict[Tuple[int, ...], int]:
    gamma = gamma_of(spec)
    table: Dict[Tuple[int, ...], int] = {}
    x = spec.one
    for e in range(spec.q - 1):
        table[x.coeffs] = e
        x = mul(x, gamma)
    logger.debug("discrete log table built for q=%d", spec.q)
    return table


def discrete_log(a: FieldElement) -> int:
    """Exponent e in [0, q-1) with gamma^e = a."""
    if not a:
        raise ZeroElement("zero has no discrete logarithm")
    return _log_table(a.spec)[a.coeffs]


def _subfield_degree(spec: FieldSpec, r: int) -> int:
    m = 0
    size = 1
    while size < r:
        size *= spec.p
        m += 1
    if size != r or m == 0 or spec.n % m:
        raise NotDivisor(f"F_{r} is not a subfield of F_{spec.q}")
    return m


def subfield_generator(spec: FieldSpec, r: int) -> FieldElement:
    """gamma^((q-1)/(r-1)), which generates F_r^*."""
    _subfield_degree(spec, r)
    return power(gamma_of(spec), (spec.q - 1) // (r - 1))


def subfield_elements(spec: FieldSpec, m: int) -> FrozenSet[FieldElement]:
    """The subfield F_{p^m}: the fixed points of x -> x^(p^m).

    The fixed points are 0 together with the powers of gamma^((q-1)/(p^m-1)),
    which is how they are listed here.
    """
    if m < 1 or spec.n % m:
        raise NotDivisor(f"{m} does not divide the extension degree {spec.n}")
    r = spec.p ** m
    g = subfield_generator(spec, r)
    elements = {spec.zero}
    x = spec.one
    for _ in range(r - 1):
        elements.add(x)
        x = mul(x, g)
    return frozenset(elements)


# ============================================================================
# Textual notation
# ============================================================================

def format_element(a: FieldElement) -> str:
    """Power form "g^k" for nonzero elements, "0" for zero."""
    if not a:
        return "0"
    return f"g^{discrete_log(a)}"


def format_coefficients(a: FieldElement) -> str:
    return "[" + ",".join(str(c) for c in a.coeffs) + "]"


def parse_element(spec: FieldSpec, text: str) -> FieldElement:
    """Parse "0", "1", "g", "g^k" or a coefficient list "[c0,c1,...]".

    Raises:
        ParseError: If the text matches none of the notations.
    """
    s = text.strip().replace(" ", "")
    if s == "0":
        return spec.zero
    if s == "1":
        return spec.one
    match = _POWER_FORM.match(s)
    if match:
        exponent = int(match.group(1)) if match.group(1) is not None else 1
        return power(gamma_of(spec), exponent)
    if s.startswith("["):
        try:
            coeffs = json.loads(s)
        except ValueError as e:
            raise ParseError(f"invalid coefficient list '{text}': {e}") from e
        if not isinstance(coeffs, list) or not all(isinstance(c, int) for c in coeffs):
            raise ParseError(f"coefficient list must contain integers: '{text}'")
        if len(coeffs) != spec.n:
            raise ParseError(f"coefficient list '{text}' must have length {spec.n}")
        return spec.element(coeffs)
    raise ParseError(f"cannot parse field element '{text}'")
