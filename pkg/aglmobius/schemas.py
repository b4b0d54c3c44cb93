"""Wire models for the CLI's JSON output and the cache files.

The JSON layouts here are compatibility surfaces; they are documented as
JSON schemas in docs/schemas.
"""

from typing import Any, Dict, List, Literal, Optional, Tuple

from pydantic import BaseModel, ConfigDict, Field, field_validator, model_validator

from .gf import FieldSpec, find_generator, format_element, parse_element
from .submodules import Submodule
from .subgroups import GroupCatalog, Subgroup


class SubmoduleRecord(BaseModel):
    dim_p: int = Field(..., ge=0, description="F_p-dimension of the submodule")
    basis: List[List[int]] = Field(..., description="Reduced echelon basis rows, constant term first")

    @field_validator('basis')
    @classmethod
    def validate_basis(cls, v, info):
        dim = info.data.get('dim_p')
        if dim is not None and len(v) != dim:
            raise ValueError(f"basis has {len(v)} rows but dim_p is {dim}")
        return v


class SubgroupRecord(BaseModel):
    index: int = Field(..., ge=0, description="Position in the canonical catalog order")
    d: int = Field(..., ge=1, description="Order of the multiplier A = gamma^((q-1)/d)")
    b: str = Field(..., description="Canonical coset representative in power form")
    H: SubmoduleRecord
    order: int = Field(..., ge=1, description="d * |H|")


class MuEntry(BaseModel):
    i: int
    j: int
    d1: int
    d2: int
    dimH1: int
    dimH2: int
    mu: int


class FieldFingerprint(BaseModel):
    model_config = ConfigDict(frozen=True)

    p: int
    n: int
    modulus: List[int]
    gamma: List[int]


class MuTableDump(BaseModel):
    q: int
    p: int
    n: int
    modulus: List[int]
    gamma: List[int]
    subgroups: List[SubgroupRecord]
    mu: List[Tuple[int, int, int]] = Field(..., description="[i, j, mu(S_i, S_j)] sorted by (i, j)")


class MuResult(BaseModel):
    q: int
    S1: SubgroupRecord
    S2: SubgroupRecord
    mu: int
    branch: str
    explanation: str
    factors: Dict[str, int] = Field(default_factory=dict)


class DesignRowRecord(BaseModel):
    subgroup_index: int
    order: int
    k: int
    f_k: int
    g_k: int = Field(..., ge=0)
    lambda_num: Optional[int] = None
    lambda_den: Optional[int] = None
    integral: Optional[bool] = None
    realizable: bool


class DesignParametersRecord(BaseModel):
    v: int
    k: int
    lambda_num: int
    lambda_den: int
    stabilizer_orders: List[int]


class DesignReportDump(BaseModel):
    q: int
    t: int = 2
    v: int
    k_values: List[int]
    rows: List[DesignRowRecord]
    parameters: List[DesignParametersRecord] = Field(default_factory=list)


class EulerianResult(BaseModel):
    q: int
    m: int
    phi: int
    probability_num: int
    probability_den: int
    brute_force: Optional[int] = None


class SupergroupsDump(BaseModel):
    q: int
    subgroup: SubgroupRecord
    immediate_supergroups: List[SubgroupRecord]
    maximal_subgroups: List[SubgroupRecord]


class CacheEnvelope(BaseModel):
    schema_version: int = Field(..., ge=1)
    fingerprint: FieldFingerprint
    kind: Literal["catalog", "table"]
    payload: Dict[str, Any]


class RunConfig(BaseModel):
    command: Literal["mu", "table", "subgroups", "verify", "designs", "eulerian", "supergroups"]
    p: Optional[int] = Field(None, ge=2)
    n: Optional[int] = Field(None, ge=1)
    q: Optional[int] = Field(None, ge=2)
    output_format: Literal["table", "json", "csv"] = "table"
    cache_dir: Optional[str] = None
    use_cache: bool = False
    oracle_cap: int = Field(..., gt=0)
    jobs: int = Field(1, ge=1)
    verbosity: int = Field(0, ge=0)

    @model_validator(mode='after')
    def check_field_size(self):
        if self.p is not None and self.n is not None and self.q is not None and self.p ** self.n != self.q:
            raise ValueError(f"q = {self.q} is not {self.p}^{self.n}")
        return self


class CheckResult(BaseModel):
    name: str
    q: int
    passed: int = 0
    failed: int = 0
    skipped: bool = False
    detail: Optional[str] = None

    @property
    def ok(self) -> bool:
        return self.failed == 0


class VerifyReport(BaseModel):
    level: Literal["fast", "full"]
    q_values: List[int]
    checks: List[CheckResult] = Field(default_factory=list)

    @property
    def ok(self) -> bool:
        return all(check.ok for check in self.checks)


# ----------------------------------------------------------------------------
# Conversions
# ----------------------------------------------------------------------------

def submodule_record(H: Submodule) -> SubmoduleRecord:
    return SubmoduleRecord(dim_p=H.dim_p, basis=[list(row) for row in H.basis])


def subgroup_record(S: Subgroup, index: int) -> SubgroupRecord:
    return SubgroupRecord(index=index, d=S.d, b=format_element(S.b), H=submodule_record(S.H), order=S.order)


def catalog_records(catalog: GroupCatalog) -> List[SubgroupRecord]:
    return [subgroup_record(S, i) for i, S in enumerate(catalog)]


def subgroup_from_record(spec: FieldSpec, record: SubgroupRecord) -> Subgroup:
    H = Submodule(spec, tuple(tuple(row) for row in record.H.basis))
    return Subgroup(record.d, parse_element(spec, record.b), H)


def field_fingerprint(spec: FieldSpec) -> FieldFingerprint:
    gamma = find_generator(spec).gamma
    return FieldFingerprint(p=spec.p, n=spec.n, modulus=list(spec.modulus), gamma=list(gamma.coeffs))


def mu_entry(catalog: GroupCatalog, i: int, j: int, value: int) -> MuEntry:
    S1, S2 = catalog[i], catalog[j]
    return MuEntry(i=i, j=j, d1=S1.d, d2=S2.d, dimH1=S1.H.dim_p, dimH2=S2.H.dim_p, mu=value)


def mu_table_dump(table) -> MuTableDump:
    catalog = table.catalog
    fp = field_fingerprint(catalog.spec)
    return MuTableDump(
        q=catalog.spec.q, p=fp.p, n=fp.n, modulus=fp.modulus, gamma=fp.gamma,
        subgroups=catalog_records(catalog),
        mu=[(i, j, v) for i, j, v in table.entries()],
    )


def design_report_dump(report, parameters) -> DesignReportDump:
    rows = [
        DesignRowRecord(
            subgroup_index=row.subgroup_index, order=row.order, k=row.k, f_k=row.f_k, g_k=row.g_k,
            lambda_num=None if row.lam is None else row.lam.numerator,
            lambda_den=None if row.lam is None else row.lam.denominator,
            integral=row.integral, realizable=row.realizable,
        )
        for row in report.rows
    ]
    params = [
        DesignParametersRecord(v=p.v, k=p.k, lambda_num=p.lam.numerator, lambda_den=p.lam.denominator,
                               stabilizer_orders=list(p.stabilizer_orders))
        for p in parameters
    ]
    return DesignReportDump(q=report.q, t=report.t, v=report.v, k_values=report.k_values, rows=rows, parameters=params)
