"""Closed-Form Moebius Function Module.

mu(S1, S2) for subgroups S1 <= S2 of AGL(1, F_q), evaluated from the
(d, H) data of both subgroups after translating them to b = 0. With
r = p(d2), the value is

    0                                   if H1 is not an F_r-module,
    mu(d2/d1) * mu_r(H2/H1)             if d1 != 1,
    |H2|/|H1| * mu(d2) * mu_r(H2/H1)    if d1 = 1 and d2 != 1,

and mu_p(H2/H1) when both subgroups are translation groups. Tables over a
whole catalog are produced either from this formula or from the defining
recursion, and both share one schema so they compare directly.
"""

import logging
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Sequence, Tuple

from sympy import mobius

from . import config
from .errors import NotContained, SizeCap
from .lattice import mu_recursive
from .subgroups import (
    GroupCatalog, Subgroup, conjugate_by_translation, contains, normalize_conjugate,
)
from .submodules import is_module_over, mu_subspace, p_of_d, quotient_dim

logger = logging.getLogger("aglmobius.mobius")


def classic_mu(n: int) -> int:
    """Number-theoretic Moebius function."""
    if n < 1:
        raise ValueError(f"classic_mu expects a positive integer, got {n}")
    return int(mobius(n))


@dataclass(frozen=True)
class MuQuery:
    S1: Subgroup
    S2: Subgroup


@dataclass
class MuExplanation:
    """The branch of the closed formula taken for one pair, with its factors."""

    value: int
    branch: str
    S1: Subgroup
    S2: Subgroup
    factors: Dict[str, int] = field(default_factory=dict)

    def describe(self) -> str:
        f = self.factors
        if self.branch == "identity":
            return "S1 = S2: mu = 1"
        if self.branch == "translation":
            return (f"translation groups: mu_{f['r']}(H2/H1) with l={f['l']} "
                    f"gives {f['subspace_mu']}")
        if self.branch == "vanishing":
            return f"H1 is not an F_{f['r']}-module (r = p(d2), d2={f['d2']}): mu = 0"
        if self.branch == "d1_ne_1":
            return (f"d1={f['d1']} != 1: mu({f['d2'] // f['d1']})={f['classic_mu']}, "
                    f"mu_{f['r']}(l={f['l']})={f['subspace_mu']}")
        return (f"d1=1: |H2|/|H1|={f['index']}, mu({f['d2']})={f['classic_mu']}, "
                f"mu_{f['r']}(l={f['l']})={f['subspace_mu']}")


def normalize_pair(S1: Subgroup, S2: Subgroup) -> Tuple[Subgroup, Subgroup]:
    """Conjugate the pair by translations until both have b = 0.

    S1 is translated to b = 0 and S2 moved along with it; when d1 = 1 the
    translation subgroup S1 is fixed by every translation, so S2 is then
    normalized on its own.

    Raises:
        NotContained: If S1 is not a subgroup of S2.
    """
    if not contains(S2, S1):
        raise NotContained(f"{S1} is not a subgroup of {S2}")
    S1n, t = normalize_conjugate(S1)
    S2n = conjugate_by_translation(S2, t.b)
    if S1n.d == 1:
        S2n, _ = normalize_conjugate(S2n)
    return S1n, S2n


def explain_mu(S1: Subgroup, S2: Subgroup) -> MuExplanation:
    """Evaluate the closed formula and record the branch taken."""
    S1n, S2n = normalize_pair(S1, S2)
    if S1 == S2:
        return MuExplanation(1, "identity", S1n, S2n)
    p = S1.spec.p
    d1, d2 = S1n.d, S2n.d
    H1, H2 = S1n.H, S2n.H
    factors = {"d1": d1, "d2": d2}
    if d2 == 1:
        l = H2.dim_p - H1.dim_p
        factors.update(r=p, l=l, subspace_mu=mu_subspace(l, p))
        return MuExplanation(factors["subspace_mu"], "translation", S1n, S2n, factors)
    r = p_of_d(p, d2)
    factors["r"] = r
    if not is_module_over(H1, r):
        return MuExplanation(0, "vanishing", S1n, S2n, factors)
    l = quotient_dim(H1, H2, r)
    factors.update(l=l, subspace_mu=mu_subspace(l, r))
    if d1 != 1:
        factors["classic_mu"] = classic_mu(d2 // d1)
        value = factors["classic_mu"] * factors["subspace_mu"]
        return MuExplanation(value, "d1_ne_1", S1n, S2n, factors)
    factors.update(index=H2.size // H1.size, classic_mu=classic_mu(d2))
    value = factors["index"] * factors["classic_mu"] * factors["subspace_mu"]
    return MuExplanation(value, "d1_eq_1", S1n, S2n, factors)


def mu_closed(S1: Subgroup, S2: Subgroup) -> int:
    return explain_mu(S1, S2).value


@dataclass
class AglMuTable:
    """mu over every comparable pair of a catalog, keyed by catalog indices."""

    catalog: GroupCatalog
    mu: Dict[Tuple[int, int], int]
    source: str = "closed"

    def value(self, i: int, j: int) -> int:
        return self.mu.get((i, j), 0)

    def __getitem__(self, pair: Tuple[int, int]) -> int:
        return self.value(*pair)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, AglMuTable):
            return NotImplemented
        return self.catalog.spec == other.catalog.spec and self.mu == other.mu

    def entries(self) -> List[Tuple[int, int, int]]:
        return [(i, j, v) for (i, j), v in sorted(self.mu.items())]

    def mismatches(self, other: "AglMuTable") -> List[Tuple[int, int, int, int]]:
        """(i, j, mine, theirs) for every pair where the tables disagree."""
        keys = sorted(set(self.mu) | set(other.mu))
        return [(i, j, self.value(i, j), other.value(i, j))
                for i, j in keys if self.value(i, j) != other.value(i, j)]


def _evaluate_chunk(args: Tuple[Sequence[Subgroup], Sequence[Tuple[int, int]]]) -> List[int]:
    subgroups, pairs = args
    return [mu_closed(subgroups[i], subgroups[j]) for i, j in pairs]


def mu_table_closed(catalog: GroupCatalog, jobs: Optional[int] = None,
                    sources: Optional[Sequence[int]] = None) -> AglMuTable:
    """Closed-formula value for every comparable pair (or only rows in sources).

    Pairs are independent; with jobs > 1 they are evaluated in a process pool.
    """
    started = time.perf_counter()
    jobs = config.JOBS if jobs is None else jobs
    rows = range(len(catalog)) if sources is None else sources
    pairs = [(i, j) for i in rows for j in catalog.up_set(i)]
    if jobs > 1 and len(pairs) > jobs:
        size = -(-len(pairs) // (jobs * 4))
        chunks = [pairs[k:k + size] for k in range(0, len(pairs), size)]
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            results = pool.map(_evaluate_chunk, [(catalog.subgroups, chunk) for chunk in chunks])
            values = [v for chunk_values in results for v in chunk_values]
    else:
        values = _evaluate_chunk((catalog.subgroups, pairs))
    table = AglMuTable(catalog, dict(zip(pairs, values)), source="closed")
    logger.info("closed table for q=%d: %d pairs in %.3fs (jobs=%d)",
                catalog.spec.q, len(pairs), time.perf_counter() - started, jobs)
    return table


def mu_table_oracle(catalog: GroupCatalog, sources: Optional[Sequence[int]] = None,
                    cap: Optional[int] = None) -> AglMuTable:
    """Recursive Moebius table of the catalog's subgroup poset.

    cap defaults to config.ORACLE_MAX_SUBGROUPS.

    Raises:
        SizeCap: If the catalog has more than cap subgroups.
    """
    cap = config.ORACLE_MAX_SUBGROUPS if cap is None else cap
    if len(catalog) > cap:
        raise SizeCap(f"{len(catalog)} subgroups exceed the oracle cap {cap}")
    started = time.perf_counter()
    table = mu_recursive(catalog.poset(), sources=sources)
    logger.info("oracle table for q=%d: %d pairs in %.3fs",
                catalog.spec.q, len(table.mu), time.perf_counter() - started)
    return AglMuTable(catalog, dict(table.mu), source="oracle")


def row_sum_check(table: AglMuTable) -> bool:
    """For each S1 <= S2: sum of mu(S1, K) over S1 <= K <= S2 is [S1 = S2]."""
    catalog = table.catalog
    for (i, j) in table.mu:
        total = sum(table.value(i, k) for k in catalog.up_set(i) if catalog.leq(k, j))
        if total != (1 if i == j else 0):
            logger.warning("row sum fails at (%d, %d): %d", i, j, total)
            return False
    return True
