from .graph import EdgeEvent, Graph, GraphStream, PlantedInstance, StreamKind
from .estimator import (
    EstimatorParams, EstimateReport, HubCounters, SumEstimatorConfig,
    CutChoice, GreedyMode, OfflineResult, FallbackResult
)
from .experiment import (
    Algorithm, TargetMode, ReportFormat, InstanceSpec, OutputSpec,
    ExperimentConfig, TrialRecord, ExperimentSummary, ExperimentResult,
    GeneratedInstanceResponse, ExactRequest, ExactResponse
)

__all__ = [
    "EdgeEvent", "Graph", "GraphStream", "PlantedInstance", "StreamKind",
    "EstimatorParams", "EstimateReport", "HubCounters", "SumEstimatorConfig",
    "CutChoice", "GreedyMode", "OfflineResult", "FallbackResult",
    "Algorithm", "TargetMode", "ReportFormat", "InstanceSpec", "OutputSpec",
    "ExperimentConfig", "TrialRecord", "ExperimentSummary", "ExperimentResult",
    "GeneratedInstanceResponse", "ExactRequest", "ExactResponse"
]
