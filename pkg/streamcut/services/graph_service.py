import logging
import math
import random
from typing import List, Optional, Set, Tuple

import networkx as nx
import numpy as np

from ..core.config import settings
from ..core.errors import (
    CapacityError, DomainError, MalformedEdgeError, StreamKindError, StreamValidityError
)
from ..schemas.graph import EdgeEvent, Graph, GraphStream, PlantedInstance, StreamKind

logger = logging.getLogger(__name__)


def canonicalize_edge(u: int, v: int) -> Tuple[int, int]:
    if u == v:
        raise MalformedEdgeError(f"петля ({u}, {v}) недопустима")
    return (u, v) if u < v else (v, u)


def make_event(u: int, v: int, delta: int = 1, n: Optional[int] = None) -> EdgeEvent:
    u, v = canonicalize_edge(u, v)
    if u < 0 or (n is not None and v >= n):
        raise MalformedEdgeError(f"ребро ({u}, {v}) вне диапазона вершин [0, {n})")
    if delta not in (1, -1):
        raise MalformedEdgeError(f"delta должна быть +1 или -1, получено {delta}")
    return EdgeEvent(u=u, v=v, delta=delta)


def build_final_graph(stream: GraphStream) -> Graph:
    """Граф в конце потока; проверяет, что кратность каждого ребра остаётся в {0, 1}"""
    present: Set[Tuple[int, int]] = set()
    for index, event in enumerate(stream.events):
        if event.v >= stream.n:
            raise StreamValidityError(
                f"вершина {event.v} вне [0, {stream.n})", event_index=index
            )
        edge = event.edge
        if event.delta == 1:
            if edge in present:
                raise StreamValidityError(f"повторная вставка ребра {edge}", event_index=index)
            present.add(edge)
        else:
            if edge not in present:
                raise StreamValidityError(f"удаление отсутствующего ребра {edge}", event_index=index)
            present.remove(edge)
    return Graph(n=stream.n, edges=frozenset(present))


def brute_force_maxcut(g: Graph, n_exact: Optional[int] = None) -> Tuple[int, List[int]]:
    """
    Полный перебор 2^(n-1) разбиений, вершина 0 всегда на стороне +1.

    Вершина i >= 1 кодируется битом (n-1-i) маски, бит 1 означает сторону -1,
    поэтому первая маска с максимальным разрезом даёт лексикографически
    наименьшее назначение.
    """
    cap = n_exact if n_exact is not None else settings.n_exact
    if g.n > cap:
        raise CapacityError(f"полный перебор ограничен n <= {cap}, получено n = {g.n}")
    n = g.n
    if n <= 1 or not g.edges:
        return 0, [1] * n

    free = n - 1
    total = 1 << free
    edges = sorted(g.edges)
    chunk = max(1, settings.brute_force_chunk)
    best_value, best_mask = -1, 0
    for start in range(0, total, chunk):
        masks = np.arange(start, min(total, start + chunk), dtype=np.int64)
        bits = {0: 0}
        cut = np.zeros(masks.shape[0], dtype=np.int32)
        for u, v in edges:
            for w in (u, v):
                if w not in bits:
                    bits[w] = ((masks >> (free - w)) & 1).astype(np.int8)
            cut += bits[u] ^ bits[v]
        position = int(np.argmax(cut))
        if int(cut[position]) > best_value:
            best_value, best_mask = int(cut[position]), start + position

    assignment = [1] + [-1 if (best_mask >> (free - i)) & 1 else 1 for i in range(1, n)]
    return best_value, assignment


def high_degree_threshold(eps: float, delta: float, m: int) -> float:
    """θ = ε²m/c при c = 80/δ"""
    if not 0.0 < eps <= 0.5:
        raise DomainError(f"eps должно лежать в (0, 1/2], получено {eps}")
    if not 0.0 < delta < 1.0:
        raise DomainError(f"delta должно лежать в (0, 1), получено {delta}")
    if m < 0:
        raise DomainError(f"m должно быть >= 0, получено {m}")
    c = 80.0 / delta
    return eps ** 2 * m / c


def m_lower_bound(eps: float, delta: float, constant: Optional[float] = None) -> float:
    """m >= C·ε⁻¹¹δ⁻⁷, при котором справедлив анализ; иначе можно хранить все рёбра"""
    constant = settings.small_m_constant if constant is None else constant
    return constant * eps ** -11 * delta ** -7


def _bipartite_events(
    rng: random.Random, left: range, n_left: int, n_right: int, m: int
) -> List[EdgeEvent]:
    cells = rng.sample(range(len(left) * n_right), m)
    return [
        EdgeEvent(u=left[c // n_right], v=n_left + c % n_right)
        for c in cells
    ]


def gen_planted_bipartite(n_left: int, n_right: int, m: int, rng_seed: int) -> PlantedInstance:
    capacity = n_left * n_right
    if m > capacity:
        raise CapacityError(f"m = {m} больше ёмкости двудольного графа {n_left}x{n_right} = {capacity}")
    rng = random.Random(rng_seed)
    events = _bipartite_events(rng, range(n_left), n_left, n_right, m)
    n = n_left + n_right
    logger.info(f"Сгенерирован двудольный инстанс n={n}, m={m}, seed={rng_seed}")
    return PlantedInstance(
        stream=GraphStream(n=n, events=events, kind=StreamKind.INSERTION_ARBITRARY),
        opt_value=m,
        opt_assignment=[1] * n_left + [-1] * n_right,
        opt_is_exact=True,
    )


def gen_hub_instance(
    n: int,
    m_low: int,
    hubs: int,
    hub_degree: int,
    rng_seed: int,
    eps: Optional[float] = None,
    delta: Optional[float] = None,
) -> PlantedInstance:
    """
    Двудольная низкостепенная основа из m_low рёбер плюс hubs вершин-хабов
    (вершины 0..hubs-1 левой доли), каждая соединена с hub_degree вершинами
    правой доли. Граф остаётся двудольным, поэтому OPT = m.
    """
    n_left = n // 2
    n_right = n - n_left
    if hubs == 0:
        return gen_planted_bipartite(n_left, n_right, m_low, rng_seed)
    if hubs > n_left:
        raise CapacityError(f"hubs = {hubs} не помещается в левую долю из {n_left} вершин")
    if not 1 <= hub_degree <= n_right:
        raise CapacityError(f"hub_degree = {hub_degree} вне [1, {n_right}]")
    if m_low > (n_left - hubs) * n_right:
        raise CapacityError(f"m_low = {m_low} больше ёмкости основы {(n_left - hubs) * n_right}")
    m = m_low + hubs * hub_degree
    if eps is not None and delta is not None:
        need = math.ceil(high_degree_threshold(eps, delta, m))
        if hub_degree < need:
            raise CapacityError(f"hub_degree = {hub_degree} ниже порога высокой степени {need}")

    rng = random.Random(rng_seed)
    events = _bipartite_events(rng, range(hubs, n_left), n_left, n_right, m_low)
    for hub in range(hubs):
        events.extend(EdgeEvent(u=hub, v=n_left + r) for r in rng.sample(range(n_right), hub_degree))
    rng.shuffle(events)
    logger.info(f"Сгенерирован инстанс с хабами n={n}, m={m}, hubs={hubs}, seed={rng_seed}")
    return PlantedInstance(
        stream=GraphStream(n=n, events=events, kind=StreamKind.INSERTION_ARBITRARY),
        opt_value=m,
        opt_assignment=[1] * n_left + [-1] * n_right,
        opt_is_exact=True,
    )


def local_search_cut(g: Graph) -> List[int]:
    """
    Жадная расстановка с последующими одиночными перебросками, пока разрез растёт.
    Результат режет не меньше m/2 рёбер; годится как эталон для оракула,
    когда полный перебор недоступен.
    """
    adjacency = g.adjacency()
    side = [1] * g.n
    for v in range(g.n):
        placed = [side[w] for w in adjacency.get(v, []) if w < v]
        side[v] = 1 if placed.count(-1) >= placed.count(1) else -1
    improved = True
    while improved:
        improved = False
        for v in range(g.n):
            same = sum(1 for w in adjacency.get(v, []) if side[w] == side[v])
            if 2 * same > len(adjacency.get(v, [])):
                side[v] = -side[v]
                improved = True
    return side


def gen_random_instance(n: int, m: int, rng_seed: int) -> PlantedInstance:
    """
    G(n, m). При n <= n_exact OPT и x* находятся перебором; иначе opt_value = m
    (верхняя оценка), а x* берётся из локального поиска.
    """
    capacity = n * (n - 1) // 2
    if m > capacity:
        raise CapacityError(f"m = {m} больше числа пар вершин {capacity}")
    g = nx.gnm_random_graph(n, m, seed=rng_seed)
    events = [EdgeEvent(u=min(a, b), v=max(a, b)) for a, b in sorted(g.edges())]
    random.Random(rng_seed).shuffle(events)
    stream = GraphStream(n=n, events=events, kind=StreamKind.INSERTION_ARBITRARY)
    if n <= settings.n_exact:
        opt_value, assignment = brute_force_maxcut(build_final_graph(stream))
        return PlantedInstance(stream=stream, opt_value=opt_value, opt_assignment=assignment, opt_is_exact=True)
    logger.warning(f"n={n} больше n_exact, OPT неизвестен; верхняя оценка m={m}, x* из локального поиска")
    assignment = local_search_cut(build_final_graph(stream))
    return PlantedInstance(stream=stream, opt_value=m, opt_assignment=assignment, opt_is_exact=False)


def shuffle_to_random_order(stream: GraphStream, rng_seed: int) -> GraphStream:
    if stream.kind is StreamKind.DYNAMIC:
        raise StreamKindError("динамический поток нельзя превратить в random-order")
    events = list(stream.events)
    random.Random(rng_seed).shuffle(events)
    return GraphStream(n=stream.n, events=events, kind=StreamKind.INSERTION_RANDOM_ORDER)


def _pick_churn_edges(n: int, used: Set[Tuple[int, int]], count: int, rng: random.Random) -> List[Tuple[int, int]]:
    capacity = n * (n - 1) // 2 - len(used)
    if count > capacity:
        raise CapacityError(f"churn_edges = {count} больше числа свободных пар {capacity}")
    if count == 0:
        return []
    if capacity < 4 * count:
        free = [(u, v) for u in range(n) for v in range(u + 1, n) if (u, v) not in used]
        return rng.sample(free, count)
    picked: List[Tuple[int, int]] = []
    taken = set(used)
    while len(picked) < count:
        u, v = rng.randrange(n), rng.randrange(n)
        if u == v:
            continue
        edge = (u, v) if u < v else (v, u)
        if edge in taken:
            continue
        taken.add(edge)
        picked.append(edge)
    return picked


def gen_dynamic_stream(base: PlantedInstance, churn_edges: int, rng_seed: int) -> PlantedInstance:
    """Вперемешку с базовыми вставками: churn_edges пар вставка-потом-удаление лишних рёбер"""
    stream = base.stream
    build_final_graph(stream)
    rng = random.Random(rng_seed)
    used = {event.edge for event in stream.events}
    extra = _pick_churn_edges(stream.n, used, churn_edges, rng)

    total = len(stream.events) + 2 * len(extra)
    slots = rng.sample(range(total), 2 * len(extra))
    placed = {}
    for i, (u, v) in enumerate(extra):
        first, second = sorted(slots[2 * i: 2 * i + 2])
        placed[first] = EdgeEvent(u=u, v=v, delta=1)
        placed[second] = EdgeEvent(u=u, v=v, delta=-1)
    base_events = iter(stream.events)
    events = [placed[i] if i in placed else next(base_events) for i in range(total)]

    logger.info(f"Динамический поток: {len(stream.events)} базовых событий, churn={len(extra)}")
    return PlantedInstance(
        stream=GraphStream(n=stream.n, events=events, kind=StreamKind.DYNAMIC),
        opt_value=base.opt_value,
        opt_assignment=base.opt_assignment,
        opt_is_exact=base.opt_is_exact,
    )
