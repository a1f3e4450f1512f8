# src/models.py
from pydantic import BaseModel, ConfigDict, Field
from typing import Optional, List, Dict, Any, Tuple

from .dirichlet_ring import FiniteDirichletSeries


class ZsigmondyResult(BaseModel):
    a: int
    n: int
    primes: List[int] = []
    is_exception: bool = False


class PrimitiveDivisorReport(BaseModel):
    p: int
    zeta: int
    tau: int
    a_holds: bool
    b_holds: bool
    c_holds: bool
    witnesses: Dict[str, List[int]] = {}

    @property
    def holds(self) -> bool:
        return self.a_holds and self.b_holds and self.c_holds


class ExtractionResult(BaseModel):
    model_config = ConfigDict(arbitrary_types_allowed=True)

    q: int
    alpha: int
    w: int
    terms: List[int]                      # b_{i, w^{r_i}} in factor order
    F_star: FiniteDirichletSeries


class SmlReport(BaseModel):
    r_values: List[int]
    q: Optional[int] = None
    divisor_counts: Dict[int, int] = {}   # n -> #{i : r_i | n}
    t: int


class CascadeStep(BaseModel):
    model_config = ConfigDict(arbitrary_types_allowed=True)

    prime: int
    members: List[int] = []               # factor positions in Lambda_p or I_m
    m: Optional[int] = None
    tau: Optional[int] = None
    alpha: Optional[int] = None
    beta: Optional[int] = None
    w: Optional[int] = None
    terms: List[int] = []
    F_star: Optional[FiniteDirichletSeries] = None
    negative: bool = True
    notes: List[str] = []


class CascadeReport(BaseModel):
    kind: str                             # "lie" | "sporadic"
    case: Optional[str] = None
    primes: List[int] = []
    steps: List[CascadeStep] = []
    sml: Optional[SmlReport] = None
    notes: List[str] = []


class TableValidationReport(BaseModel):
    checked: int
    violations: List[str] = []
    flagged: List[str] = []
    notes: List[str] = []

    @property
    def ok(self) -> bool:
        return not self.violations


class TermDiff(BaseModel):
    index: int
    computed: int
    printed: int


class AppendixRowReport(BaseModel):
    row: str
    label: str
    variant: Optional[str] = None
    computed: List[Tuple[int, int]] = []
    diffs: List[TermDiff] = []
    note: Optional[str] = None

    @property
    def matches(self) -> bool:
        return not self.diffs


class AppendixReport(BaseModel):
    rows: List[AppendixRowReport] = []
    extra: Dict[str, Any] = Field(default_factory=dict)

    @property
    def mismatches(self) -> int:
        return sum(1 for row in self.rows if not row.matches)
