import csv
import json
import logging
import time
from concurrent.futures import ThreadPoolExecutor, as_completed
from pathlib import Path
from typing import Dict, List, Optional

from ..core.config import settings
from ..core.errors import ConfigError, DomainError
from ..core.seeding import SeedRole, derive_seed
from ..schemas.estimator import EstimateReport, EstimatorParams
from ..schemas.experiment import (
    Algorithm, ExperimentConfig, ExperimentResult, ExperimentSummary,
    InstanceSpec, OutputSpec, ReportFormat, TargetMode, TrialRecord,
)
from ..schemas.graph import Graph, GraphStream, PlantedInstance
from .estimator_service import alg1_report, half_report, median_of_runs, offline_report
from .graph_service import (
    brute_force_maxcut, build_final_graph, gen_dynamic_stream, gen_hub_instance,
    gen_planted_bipartite, gen_random_instance, m_lower_bound, shuffle_to_random_order,
)
from .oracle_service import Oracle, make_oracle
from .random_order_service import alg2_constant_query_run, alg2_run
from .sketch_service import alg3_run, alg4_run
from .stream_io import read_instance

logger = logging.getLogger(__name__)

# порядок колонок CSV фиксирован
CSV_COLUMNS = [
    "trial_index", "oracle_seed", "estimator_seed", "median_seed", "estimate", "alg1", "alg2",
    "opt_value", "ratio", "success", "words_used", "oracle_queries", "h_tilde", "alpha",
]


def compute_target_ratio(eps: float, mode: TargetMode) -> float:
    if not 0.0 < eps <= 0.5:
        raise DomainError(f"eps должно лежать в (0, 1/2], получено {eps}")
    if TargetMode(mode) is TargetMode.ALG1:
        return 0.5 + eps ** 2
    return 0.5 + eps ** 2 / 16


def generate_instance(spec: InstanceSpec) -> PlantedInstance:
    if spec.type == "bipartite":
        instance = gen_planted_bipartite(spec.n_left, spec.n_right, spec.m, spec.seed)
    elif spec.type == "hub":
        instance = gen_hub_instance(spec.n, spec.m_low, spec.hubs, spec.hub_degree, spec.seed)
    else:
        instance = gen_random_instance(spec.n, spec.m, spec.seed)
    if spec.order == "rand":
        stream = shuffle_to_random_order(instance.stream, derive_seed(spec.seed, 0, SeedRole.INSTANCE))
        instance = instance.model_copy(update={"stream": stream})
    if spec.churn:
        instance = gen_dynamic_stream(instance, spec.churn, derive_seed(spec.seed, 1, SeedRole.INSTANCE))
    return instance


def run_estimator(
    algorithm: Algorithm,
    stream: GraphStream,
    oracle: Optional[Oracle],
    params: EstimatorParams,
    seed: int,
) -> EstimateReport:
    algorithm = Algorithm(algorithm)
    if algorithm is Algorithm.HALF:
        return half_report(stream, oracle, params)
    if oracle is None:
        raise ConfigError(f"для {algorithm.value} нужен оракул, а у инстанса нет эталонного разбиения",
                          field_path="instance")
    runners = {
        Algorithm.ALG1: lambda: alg1_report(stream, oracle, params),
        Algorithm.OFFLINE: lambda: offline_report(stream, oracle, params),
        Algorithm.ALG2: lambda: alg2_run(stream, oracle, params),
        Algorithm.ALG2_CQ: lambda: alg2_constant_query_run(stream, oracle, params, seed=seed),
        Algorithm.ALG3: lambda: alg3_run(stream, oracle, params, seed=seed),
        Algorithm.ALG4: lambda: alg4_run(stream, oracle, params, seed=seed),
    }
    return runners[algorithm]()


def high_low_ratio(g: Graph, params: EstimatorParams, opt_value: int) -> Optional[float]:
    """α = e(H, L)/OPT по точным степеням; только для диагностики"""
    if not opt_value:
        return None
    theta = params.threshold(g.m)
    degrees = g.degrees()
    high = {v for v in range(g.n) if degrees[v] >= theta}
    return sum(1 for u, v in g.edges if (u in high) != (v in high)) / opt_value


class ExperimentService:

    def __init__(self, config: ExperimentConfig):
        self.config = config
        self.params = config.params
        self.target = (
            config.target_ratio if config.target_ratio is not None
            else compute_target_ratio(self.params.eps, config.resolved_target_mode)
        )
        self.diagnostics: List[str] = []
        self.stream: Optional[GraphStream] = None
        self.graph: Optional[Graph] = None
        self.opt_value: Optional[int] = None
        self.x_star: Optional[List[int]] = None
        self.alpha: Optional[float] = None

    def _load(self) -> None:
        cfg = self.config
        if cfg.instance is not None:
            instance = generate_instance(cfg.instance)
            self.stream = instance.stream
            self.opt_value, self.x_star = instance.opt_value, instance.opt_assignment
            if not instance.opt_is_exact:
                self.diagnostics.append("OPT неизвестен точно: используется верхняя оценка m")
        else:
            self.stream, meta = read_instance(cfg.instance_path)
            if meta is not None:
                self.opt_value, self.x_star = meta.get("opt_value"), meta.get("opt_assignment")
                if not meta.get("opt_is_exact", True):
                    self.diagnostics.append("OPT в сайдкаре помечен как неточный")
            elif self.stream.n <= settings.n_exact:
                self.opt_value, self.x_star = brute_force_maxcut(build_final_graph(self.stream))
                self.diagnostics.append("сайдкара нет: OPT найден полным перебором")
            else:
                self.diagnostics.append("нет метаданных OPT: отношения не считаются")

        self.graph = build_final_graph(self.stream)
        if self.opt_value is not None:
            self.alpha = high_low_ratio(self.graph, self.params, self.opt_value)
        for note in self.params.substitutions():
            logger.info(f"Подстановка параметров: {note}")

    def _single(self, oracle_seed: int, estimator_seed: int) -> EstimateReport:
        oracle = make_oracle(self.x_star, self.params, oracle_seed) if self.x_star is not None else None
        report = run_estimator(self.config.algorithm, self.stream, oracle, self.params, estimator_seed)
        report.seeds = {"oracle": oracle_seed, "estimator": estimator_seed}
        report.alpha = self.alpha
        return report

    def _run_trial(self, index: int) -> TrialRecord:
        cfg = self.config
        started = time.perf_counter()
        oracle_seed = derive_seed(cfg.master_seed, index, SeedRole.ORACLE)
        estimator_seed = derive_seed(cfg.master_seed, index, SeedRole.ESTIMATOR)

        if cfg.median_k == 1:
            chosen = self._single(oracle_seed, estimator_seed)
            words, queries = chosen.words_used, chosen.oracle_queries
            median_seed = None
        else:
            reports: List[EstimateReport] = []

            def run(seed: int) -> int:
                report = self._single(
                    derive_seed(seed, 0, SeedRole.ORACLE), derive_seed(seed, 0, SeedRole.ESTIMATOR)
                )
                reports.append(report)
                return report.estimate

            median_seed = derive_seed(cfg.master_seed, index, SeedRole.MEDIAN)
            median = median_of_runs(run, cfg.median_k, median_seed)
            chosen = next(r for r in reports if r.estimate == median)
            oracle_seed, estimator_seed = chosen.seeds["oracle"], chosen.seeds["estimator"]
            words = sum(r.words_used for r in reports)
            queries = sum(r.oracle_queries for r in reports)

        estimate = chosen.estimate
        if cfg.cap_at_m:
            estimate = min(estimate, self.graph.m)
        ratio = success = None
        if self.opt_value is not None:
            ratio = estimate / self.opt_value if self.opt_value else 1.0
            success = ratio >= self.target
        return TrialRecord(
            trial_index=index,
            oracle_seed=oracle_seed,
            estimator_seed=estimator_seed,
            median_seed=median_seed,
            estimate=estimate,
            alg1=chosen.alg1_value,
            alg2=chosen.alg2_value,
            opt_value=self.opt_value,
            ratio=ratio,
            success=success,
            words_used=words,
            oracle_queries=queries,
            h_tilde=chosen.h_tilde_size,
            alpha=self.alpha,
            wall_time_ms=(time.perf_counter() - started) * 1000.0,
        )

    def _run_trials(self) -> List[TrialRecord]:
        indices = range(self.config.trials)
        if self.config.workers == 1:
            return [self._run_trial(i) for i in indices]
        records: Dict[int, TrialRecord] = {}
        with ThreadPoolExecutor(max_workers=self.config.workers) as executor:
            futures = {executor.submit(self._run_trial, i): i for i in indices}
            for future in as_completed(futures):
                records[futures[future]] = future.result()
        return [records[i] for i in indices]

    def _summarize(self, records: List[TrialRecord]) -> ExperimentSummary:
        count = len(records)
        ratios = [r.ratio for r in records if r.ratio is not None]
        m = self.graph.m
        bound = m_lower_bound(self.params.eps, self.params.delta)
        if m < bound:
            logger.warning(f"m={m} ниже границы анализа {bound:.3g}: гарантии формально не действуют")
        return ExperimentSummary(
            algorithm=self.config.algorithm,
            trials=count,
            n=self.graph.n,
            m=m,
            opt_value=self.opt_value,
            target_ratio=self.target,
            mean_ratio=sum(ratios) / len(ratios) if ratios else None,
            min_ratio=min(ratios) if ratios else None,
            success_frequency=sum(1 for r in records if r.success) / count if ratios else None,
            mean_estimate=sum(r.estimate for r in records) / count,
            mean_words=sum(r.words_used for r in records) / count,
            mean_queries=sum(r.oracle_queries for r in records) / count,
            m_bound_satisfied=m >= bound,
            diagnostics=list(self.diagnostics),
        )

    def run(self) -> ExperimentResult:
        try:
            self._load()
            logger.info(
                f"Эксперимент {self.config.algorithm.value}: n={self.graph.n}, m={self.graph.m}, "
                f"trials={self.config.trials}, median_k={self.config.median_k}"
            )
            records = self._run_trials()
            result = ExperimentResult(config=self.config, summary=self._summarize(records), records=records)
        except Exception as e:
            logger.error(f"Ошибка при выполнении эксперимента: {e}")
            raise
        if self.config.output is not None:
            write_report(result, self.config.output)
        logger.info(
            f"Эксперимент завершён: success={result.summary.success_frequency}, "
            f"mean_ratio={result.summary.mean_ratio}"
        )
        return result


def run_experiment(cfg: ExperimentConfig) -> ExperimentResult:
    return ExperimentService(cfg).run()


def report_payload(result: ExperimentResult) -> dict:
    exclude = None
    if not result.config.include_timing:
        exclude = {"records": {"__all__": {"wall_time_ms"}}}
    return result.model_dump(mode="json", exclude=exclude)


def write_report(result: ExperimentResult, output: OutputSpec) -> Path:
    path = Path(output.path)
    if output.format is ReportFormat.JSON:
        path.write_text(json.dumps(report_payload(result), indent=2, ensure_ascii=False) + "\n", encoding="utf-8")
    else:
        columns = CSV_COLUMNS + (["wall_time_ms"] if result.config.include_timing else [])
        with path.open("w", newline="", encoding="utf-8") as f:
            writer = csv.DictWriter(f, fieldnames=columns, extrasaction="ignore")
            writer.writeheader()
            for record in result.records:
                writer.writerow(record.model_dump())
    logger.info(f"Отчёт записан в {path}")
    return path
