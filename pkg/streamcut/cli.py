"""
Командная строка:

    python -m streamcut run --config exp.json
    python -m streamcut run --alg alg3 --instance bipartite:nl=500,nr=500,m=100000 \\
        --eps 0.4 --delta 0.33 --trials 100 --seed 7 --out report.json
    python -m streamcut gen --instance hub:n=1000,mlow=50000,hubs=3,hubdeg=2000 --seed 3 --out inst.stream
    python -m streamcut exact --in inst.stream

Коды выхода: 0 успех, 2 ошибка конфигурации, 3 некорректный поток, 4 превышение ёмкости.
"""
import argparse
import json
import logging
import sys
from pathlib import Path
from typing import List, Optional

from pydantic import ValidationError

from .core.config import Settings
from .core.errors import ConfigError, StreamcutError, config_error_from
from .schemas.experiment import Algorithm, ExperimentConfig, InstanceSpec, ReportFormat
from .services import (
    brute_force_maxcut, build_final_graph, generate_instance, read_stream, run_experiment, write_instance,
)

logger = logging.getLogger(__name__)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="streamcut", description="Потоковая оценка MAX-CUT с предсказаниями")
    commands = parser.add_subparsers(dest="command", required=True)

    run = commands.add_parser("run", help="запустить эксперимент")
    run.add_argument("--config", help="JSON с ExperimentConfig")
    run.add_argument("--alg", choices=[a.value for a in Algorithm])
    source = run.add_mutually_exclusive_group()
    source.add_argument("--instance", help="описание генератора, например bipartite:nl=50,nr=50,m=1000")
    source.add_argument("--in", dest="stream_path", help="файл потока (OPT из сайдкара <файл>.json)")
    run.add_argument("--eps", type=float)
    run.add_argument("--delta", type=float)
    run.add_argument("--beta", type=float)
    run.add_argument("--trials", type=int)
    run.add_argument("--seed", type=int)
    run.add_argument("--cm-width", type=int)
    run.add_argument("--cm-depth", type=int)
    run.add_argument("--sample-size", type=int)
    run.add_argument("--median-k", type=int)
    run.add_argument("--workers", type=int)
    run.add_argument("--edge-annotated", action="store_true")
    run.add_argument("--strict-cross-counter", action="store_true")
    run.add_argument("--cap-at-m", action="store_true")
    run.add_argument("--out")
    run.add_argument("--format", choices=[f.value for f in ReportFormat])

    gen = commands.add_parser("gen", help="сгенерировать инстанс в файл")
    gen.add_argument("--instance", required=True)
    gen.add_argument("--seed", type=int)
    gen.add_argument("--out", required=True)

    exact = commands.add_parser("exact", help="точный MAX-CUT полным перебором")
    exact.add_argument("--in", dest="stream_path", required=True)
    return parser


def _seed(args: argparse.Namespace, current: Optional[int]) -> Optional[int]:
    env_seed = Settings().seed
    if env_seed is not None:
        return env_seed
    return args.seed if args.seed is not None else current


def _parse_instance(text: str, seed: Optional[int]) -> InstanceSpec:
    try:
        spec = InstanceSpec.parse(text)
    except ValidationError as e:
        raise config_error_from(e)
    except ValueError as e:
        raise ConfigError(str(e), field_path="instance")
    if seed is not None:
        spec = spec.model_copy(update={"seed": seed})
    return spec


def _experiment_config(args: argparse.Namespace) -> ExperimentConfig:
    data: dict = {}
    if args.config:
        try:
            data = json.loads(Path(args.config).read_text(encoding="utf-8"))
        except (OSError, json.JSONDecodeError) as e:
            raise ConfigError(f"не удалось прочитать конфигурацию: {e}", field_path="config")

    if args.alg:
        data["algorithm"] = args.alg
    if args.instance:
        data["instance"] = _parse_instance(args.instance, None).model_dump()
        data.pop("instance_path", None)
    if args.stream_path:
        data["instance_path"] = args.stream_path
        data.pop("instance", None)

    params = dict(data.get("params") or {})
    for option, field in (
        ("eps", "eps"), ("delta", "delta"), ("beta", "beta"),
        ("cm_width", "cm_width_override"), ("cm_depth", "cm_depth_override"),
        ("sample_size", "sample_size_override"),
    ):
        value = getattr(args, option)
        if value is not None:
            params[field] = value
    if args.edge_annotated:
        params["edge_annotated"] = True
    if args.strict_cross_counter:
        params["strict_cross_counter"] = True
    data["params"] = params

    for option, field in (("trials", "trials"), ("median_k", "median_k"), ("workers", "workers")):
        value = getattr(args, option)
        if value is not None:
            data[field] = value
    if args.cap_at_m:
        data["cap_at_m"] = True
    seed = _seed(args, data.get("master_seed"))
    if seed is not None:
        data["master_seed"] = seed
    if args.out:
        fmt = args.format or (ReportFormat.CSV.value if args.out.endswith(".csv") else ReportFormat.JSON.value)
        data["output"] = {"path": args.out, "format": fmt}

    try:
        return ExperimentConfig(**data)
    except ValidationError as e:
        raise config_error_from(e)


def _cmd_run(args: argparse.Namespace) -> int:
    result = run_experiment(_experiment_config(args))
    print(json.dumps(result.summary.model_dump(mode="json"), indent=2, ensure_ascii=False))
    return 0


def _cmd_gen(args: argparse.Namespace) -> int:
    spec = _parse_instance(args.instance, _seed(args, None))
    instance = generate_instance(spec)
    path = write_instance(instance, args.out, comment=args.instance)
    print(json.dumps({"path": str(path), "n": instance.stream.n, "events": len(instance.stream),
                      "opt_value": instance.opt_value}, ensure_ascii=False))
    return 0


def _cmd_exact(args: argparse.Namespace) -> int:
    graph = build_final_graph(read_stream(args.stream_path))
    value, assignment = brute_force_maxcut(graph)
    print(json.dumps({"n": graph.n, "m": graph.m, "opt_value": value, "assignment": assignment}))
    return 0


COMMANDS = {"run": _cmd_run, "gen": _cmd_gen, "exact": _cmd_exact}


def main(argv: Optional[List[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=Settings().log_level.upper(), stream=sys.stderr)
    try:
        return COMMANDS[args.command](args)
    except StreamcutError as e:
        logger.error(f"{type(e).__name__}: {e}")
        return e.exit_code
    except OSError as e:
        logger.error(f"Ошибка ввода-вывода: {e}")
        return 2
