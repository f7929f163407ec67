"""
Текстовый формат потока:

    # комментарий
    n <число вершин> <ins|rand|dyn>
    e <u> <v> <+1|-1>

OPT и назначение лежат рядом в JSON-сайдкаре <путь>.json.
"""
import json
import logging
from pathlib import Path
from typing import List, Optional, Tuple, Union

from ..core.errors import MalformedEdgeError, StreamValidityError
from ..schemas.graph import EdgeEvent, GraphStream, PlantedInstance, StreamKind
from .graph_service import make_event

logger = logging.getLogger(__name__)

PathLike = Union[str, Path]

KIND_TOKENS = {
    StreamKind.INSERTION_ARBITRARY: "ins",
    StreamKind.INSERTION_RANDOM_ORDER: "rand",
    StreamKind.DYNAMIC: "dyn",
}
TOKEN_KINDS = {token: kind for kind, token in KIND_TOKENS.items()}


def format_stream(stream: GraphStream, comment: Optional[str] = None) -> str:
    lines = [f"# {comment}"] if comment else []
    lines.append(f"n {stream.n} {KIND_TOKENS[stream.kind]}")
    lines.extend(f"e {e.u} {e.v} {e.delta:+d}" for e in stream.events)
    return "\n".join(lines) + "\n"


def parse_stream(text: str) -> GraphStream:
    header: Optional[Tuple[int, StreamKind]] = None
    events: List[EdgeEvent] = []
    for line_number, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        parts = line.split()
        if header is None:
            if len(parts) != 3 or parts[0] != "n" or parts[2] not in TOKEN_KINDS:
                raise StreamValidityError(f"ожидался заголовок 'n <count> <ins|rand|dyn>', получено {line!r}",
                                          line_number=line_number)
            try:
                n = int(parts[1])
            except ValueError:
                raise StreamValidityError(f"некорректное число вершин {parts[1]!r}", line_number=line_number)
            if n < 0:
                raise StreamValidityError(f"число вершин отрицательно: {n}", line_number=line_number)
            header = (n, TOKEN_KINDS[parts[2]])
            continue
        if len(parts) != 4 or parts[0] != "e":
            raise StreamValidityError(f"ожидалось 'e u v +-1', получено {line!r}", line_number=line_number)
        try:
            u, v, delta = int(parts[1]), int(parts[2]), int(parts[3])
            events.append(make_event(u, v, delta, n=header[0]))
        except ValueError:
            raise StreamValidityError(f"некорректные числа в {line!r}", line_number=line_number)
        except MalformedEdgeError as e:
            raise MalformedEdgeError(str(e), line_number=line_number)
        if delta != 1 and header[1] is not StreamKind.DYNAMIC:
            raise StreamValidityError(
                f"удаление ({u}, {v}) в insertion-only потоке {KIND_TOKENS[header[1]]}",
                line_number=line_number,
            )
    if header is None:
        raise StreamValidityError("в файле нет заголовка потока")
    n, kind = header
    return GraphStream(n=n, events=events, kind=kind)


def sidecar_path(path: PathLike) -> Path:
    path = Path(path)
    return path.with_name(path.name + ".json")


def write_stream(stream: GraphStream, path: PathLike, comment: Optional[str] = None) -> Path:
    path = Path(path)
    path.write_text(format_stream(stream, comment), encoding="utf-8")
    logger.info(f"Поток записан в {path}: n={stream.n}, событий={len(stream)}")
    return path


def read_stream(path: PathLike) -> GraphStream:
    return parse_stream(Path(path).read_text(encoding="utf-8"))


def write_instance(instance: PlantedInstance, path: PathLike, comment: Optional[str] = None) -> Path:
    path = write_stream(instance.stream, path, comment)
    sidecar_path(path).write_text(json.dumps(instance.metadata(), indent=2), encoding="utf-8")
    return path


def read_instance(path: PathLike) -> Tuple[GraphStream, Optional[dict]]:
    """Поток и метаданные; метаданные None, если сайдкара нет"""
    stream = read_stream(path)
    meta = sidecar_path(path)
    if not meta.exists():
        logger.warning(f"Сайдкар {meta} не найден, OPT неизвестен")
        return stream, None
    return stream, json.loads(meta.read_text(encoding="utf-8"))
