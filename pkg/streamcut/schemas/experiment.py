from enum import Enum
from typing import List, Literal, Optional

from pydantic import BaseModel, ConfigDict, Field, field_validator, model_validator

from .estimator import EstimatorParams


class Algorithm(str, Enum):
    ALG1 = "alg1"
    ALG2 = "alg2"
    ALG3 = "alg3"
    ALG4 = "alg4"
    OFFLINE = "offline"
    ALG2_CQ = "alg2_cq"
    HALF = "half"


class TargetMode(str, Enum):
    ALG1 = "alg1"
    BEST_OF_TWO = "best_of_two"


class ReportFormat(str, Enum):
    CSV = "csv"
    JSON = "json"


_INSTANCE_KEYS = {
    "nl": "n_left",
    "nr": "n_right",
    "m": "m",
    "n": "n",
    "mlow": "m_low",
    "hubs": "hubs",
    "hubdeg": "hub_degree",
    "churn": "churn",
    "seed": "seed",
    "order": "order",
}


class InstanceSpec(BaseModel):
    """Описание генератора: bipartite:nl=..,nr=..,m=.. | hub:n=..,mlow=..,hubs=..,hubdeg=.. | random:n=..,m=.."""
    model_config = ConfigDict(extra="forbid")

    type: Literal["bipartite", "hub", "random"]
    n_left: Optional[int] = Field(default=None, ge=0)
    n_right: Optional[int] = Field(default=None, ge=0)
    n: Optional[int] = Field(default=None, ge=0)
    m: Optional[int] = Field(default=None, ge=0)
    m_low: Optional[int] = Field(default=None, ge=0)
    hubs: Optional[int] = Field(default=None, ge=0)
    hub_degree: Optional[int] = Field(default=None, ge=0)
    seed: int = 0
    order: Literal["ins", "rand"] = "ins"
    churn: int = Field(default=0, ge=0)

    @model_validator(mode="after")
    def _check_required(self):
        required = {
            "bipartite": ("n_left", "n_right", "m"),
            "hub": ("n", "m_low", "hubs", "hub_degree"),
            "random": ("n", "m"),
        }[self.type]
        missing = [name for name in required if getattr(self, name) is None]
        if missing:
            raise ValueError(f"для '{self.type}' не заданы параметры: {', '.join(missing)}")
        if self.order == "rand" and self.churn:
            raise ValueError("order=rand и churn несовместимы: динамический поток не бывает random-order")
        return self

    @classmethod
    def parse(cls, text: str) -> "InstanceSpec":
        kind, _, rest = text.partition(":")
        data = {"type": kind.strip()}
        for item in filter(None, (part.strip() for part in rest.split(","))):
            key, sep, value = item.partition("=")
            if not sep or key not in _INSTANCE_KEYS:
                raise ValueError(f"не удалось разобрать '{item}' в описании инстанса")
            name = _INSTANCE_KEYS[key]
            data[name] = value if name == "order" else int(value)
        return cls(**data)


class OutputSpec(BaseModel):
    path: str
    format: ReportFormat = ReportFormat.JSON


class ExperimentConfig(BaseModel):
    model_config = ConfigDict(extra="forbid")

    instance: Optional[InstanceSpec] = None
    # файл потока вместо генератора; OPT берётся из сайдкара <путь>.json
    instance_path: Optional[str] = None
    algorithm: Algorithm
    params: EstimatorParams
    trials: int = Field(default=1, ge=1)
    median_k: int = Field(default=1, ge=1)
    master_seed: int = 0
    output: Optional[OutputSpec] = None
    target_mode: Optional[TargetMode] = None
    target_ratio: Optional[float] = Field(default=None, gt=0.0)
    cap_at_m: bool = False
    include_timing: bool = False
    workers: int = Field(default=1, ge=1)

    @model_validator(mode="after")
    def _check_source(self):
        if (self.instance is None) == (self.instance_path is None):
            raise ValueError("нужно задать ровно одно из instance и instance_path")
        return self

    @field_validator("median_k")
    @classmethod
    def _odd_median(cls, value: int) -> int:
        if value % 2 == 0:
            raise ValueError("median_k должно быть нечётным")
        return value

    @property
    def resolved_target_mode(self) -> TargetMode:
        if self.target_mode is not None:
            return self.target_mode
        return TargetMode.ALG1 if self.algorithm in (Algorithm.ALG1, Algorithm.HALF) else TargetMode.BEST_OF_TWO


class TrialRecord(BaseModel):
    trial_index: int
    # сиды прогона, чья оценка попала в запись; при median_k > 1 это сиды
    # выбранного медианного прогона, а median_seed порождает сиды всех k прогонов
    oracle_seed: int
    estimator_seed: int
    median_seed: Optional[int] = None
    estimate: int
    alg1: int
    alg2: int
    opt_value: Optional[int] = None
    ratio: Optional[float] = None
    success: Optional[bool] = None
    words_used: int = 0
    oracle_queries: int = 0
    h_tilde: int = 0
    alpha: Optional[float] = None
    wall_time_ms: float = 0.0


class ExperimentSummary(BaseModel):
    algorithm: Algorithm
    trials: int
    n: int
    m: int
    opt_value: Optional[int] = None
    target_ratio: float
    mean_ratio: Optional[float] = None
    min_ratio: Optional[float] = None
    success_frequency: Optional[float] = None
    mean_estimate: float
    mean_words: float
    mean_queries: float
    m_bound_satisfied: bool
    diagnostics: List[str] = Field(default_factory=list)


class ExperimentResult(BaseModel):
    config: ExperimentConfig
    summary: ExperimentSummary
    records: List[TrialRecord]


class GeneratedInstanceResponse(BaseModel):
    stream: str
    metadata: dict


class ExactRequest(BaseModel):
    stream: str


class ExactResponse(BaseModel):
    n: int
    m: int
    opt_value: int
    assignment: List[int]
