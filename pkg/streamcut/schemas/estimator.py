import math
from enum import Enum
from typing import Any, Dict, List, Optional

from pydantic import BaseModel, ConfigDict, Field, model_validator

from ..core.config import settings


def _ceil(x: float) -> int:
    # защита от 128.00000000000003 -> 129
    return max(1, math.ceil(x - 1e-9))


class EstimatorParams(BaseModel):
    """Параметры оценщиков и производные величины (c, θ, t, W, D, δ')"""
    model_config = ConfigDict(extra="forbid")

    eps: float = Field(gt=0.0, le=0.5)
    delta: float = Field(gt=0.0, lt=1.0)
    beta: float = Field(default=1.0, gt=0.0)
    sample_size_override: Optional[int] = Field(default=None, ge=1)
    cm_width_override: Optional[int] = Field(default=None, ge=1)
    cm_depth_override: Optional[int] = Field(default=None, ge=1)
    l0_copies_override: Optional[int] = Field(default=None, ge=1)
    # точность η для варианта с константным числом запросов (по умолчанию ε²/64)
    eta: Optional[float] = Field(default=None, gt=0.0, lt=1.0)
    query_sample_override: Optional[int] = Field(default=None, ge=1)
    sum_constant: float = Field(default_factory=lambda: settings.sum_constant, gt=0.0)
    edge_annotated: bool = False
    strict_cross_counter: bool = False

    @property
    def c(self) -> float:
        return 80.0 / self.delta

    def threshold(self, m: int) -> float:
        return self.eps ** 2 * m / self.c

    @property
    def sample_size(self) -> int:
        if self.sample_size_override is not None:
            return self.sample_size_override
        return _ceil(self.beta / (self.delta ** 3 * self.eps ** 4))

    @property
    def cm_width(self) -> int:
        if self.cm_width_override is not None:
            return self.cm_width_override
        return _ceil(math.e / (self.eps ** 7 * self.delta ** 3))

    @property
    def cm_depth(self) -> int:
        if self.cm_depth_override is not None:
            return self.cm_depth_override
        return _ceil(math.log(8 * self.beta / (self.eps ** 4 * self.delta ** 4)))

    @property
    def l0_failure(self) -> float:
        return self.delta ** 4 * self.eps ** 4 / (8 * self.beta)

    @property
    def l0_copies(self) -> int:
        if self.l0_copies_override is not None:
            return self.l0_copies_override
        return _ceil(math.log2(1.0 / self.l0_failure))

    @property
    def query_eta(self) -> float:
        return self.eta if self.eta is not None else self.eps ** 2 / 64

    @property
    def query_sample_size(self) -> int:
        if self.query_sample_override is not None:
            return self.query_sample_override
        return _ceil(self.sum_constant * self.query_eta ** -2 * math.log(1.0 / self.delta))

    def derived(self) -> Dict[str, Any]:
        return {
            "eps": self.eps,
            "delta": self.delta,
            "beta": self.beta,
            "c": self.c,
            "t": self.sample_size,
            "cm_width": self.cm_width,
            "cm_depth": self.cm_depth,
            "l0_failure": self.l0_failure,
        }

    def substitutions(self) -> List[str]:
        """Отступления практики от теоретических значений"""
        notes = []
        if self.beta == 1.0:
            notes.append("beta=1 вместо 'достаточно большой' универсальной константы")
        if self.sample_size_override is not None:
            notes.append(f"t={self.sample_size_override} вместо ceil(beta/(delta^3 eps^4))")
        if self.cm_width_override is not None:
            notes.append(f"W={self.cm_width_override} вместо ceil(e/(eps^7 delta^3))")
        if self.cm_depth_override is not None:
            notes.append(f"D={self.cm_depth_override} вместо ceil(ln(8beta/(eps^4 delta^4)))")
        if self.l0_copies_override is not None:
            notes.append(f"{self.l0_copies_override} копий l0 вместо ceil(log2(1/delta'))")
        if self.query_sample_override is not None:
            notes.append(f"резервуары запросов {self.query_sample_override} вместо ceil(C eta^-2 ln(1/delta))")
        if self.strict_cross_counter:
            notes.append("счётчик e(V+,V-) увеличивается на 1 и при удалениях")
        return notes


class HubCounters(BaseModel):
    """Счётчики кандидата v ∈ H̃: f_plus ≈ e(v, V⁺), f_minus ≈ e(v, V⁻)"""
    vertex: int
    label: Optional[int] = None
    f_plus: int = Field(ge=0)
    f_minus: int = Field(ge=0)
    e_to_outside: Optional[int] = None
    e_l_plus: Optional[int] = None
    e_l_minus: Optional[int] = None


class EstimateReport(BaseModel):
    algorithm: str
    alg1_value: int = Field(ge=0, serialization_alias="alg1")
    alg2_value: int = Field(ge=0, serialization_alias="alg2")
    estimate: int = Field(ge=0)
    h_tilde_size: int = Field(default=0, ge=0, serialization_alias="h_tilde")
    words_used: int = Field(default=0, ge=0, serialization_alias="words")
    oracle_queries: int = Field(default=0, ge=0, serialization_alias="queries")
    m_seen: int = 0
    # True только для ответа, найденного полным перебором
    exact: bool = False
    params: Dict[str, Any] = Field(default_factory=dict)
    seeds: Dict[str, Any] = Field(default_factory=dict)
    substitutions: List[str] = Field(default_factory=list)
    alpha: Optional[float] = None
    hubs: List[HubCounters] = Field(default_factory=list, exclude=True)
    h_tilde: List[int] = Field(default_factory=list, exclude=True)

    @model_validator(mode="after")
    def _check_estimate(self):
        if self.estimate != max(self.alg1_value, self.alg2_value):
            raise ValueError("estimate должна равняться max(alg1, alg2)")
        return self

    def to_json_dict(self) -> Dict[str, Any]:
        return self.model_dump(
            by_alias=True,
            include={"alg1_value", "alg2_value", "estimate", "h_tilde_size",
                     "words_used", "oracle_queries", "params", "seeds"},
        )


class SumEstimatorConfig(BaseModel):
    eta: float = Field(gt=0.0, lt=1.0)
    delta: float = Field(gt=0.0, lt=1.0)
    a: float = 0.0
    b: float = 1.0
    constant: float = Field(default=2.0, gt=0.0)

    @model_validator(mode="after")
    def _check_bounds(self):
        if not self.a < self.b:
            raise ValueError(f"требуется a < b, получено a={self.a}, b={self.b}")
        return self

    @property
    def t(self) -> int:
        return _ceil(self.constant * self.eta ** -2 * math.log(1.0 / self.delta))


class CutChoice(str, Enum):
    GREEDY = "greedy"
    H_VS_L = "H_vs_L"


class GreedyMode(str, Enum):
    SEQUENTIAL = "sequential"
    STATIC = "static"


class OfflineResult(BaseModel):
    value: int
    which: CutChoice
    # greedy_value относится к выбранному режиму; оба режима считаются всегда
    greedy_value: int
    sequential_greedy_value: int
    static_greedy_value: int
    h_vs_l_value: int
    high_degree: List[int] = Field(default_factory=list)
    assignment: List[int] = Field(default_factory=list, exclude=True)


class FallbackResult(BaseModel):
    """exact=False означает передачу потоковому оценщику"""
    exact: bool
    value: Optional[int] = None
    assignment: Optional[List[int]] = None
    diagnostic: Optional[str] = None
