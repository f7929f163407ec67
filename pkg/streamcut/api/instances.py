from fastapi import APIRouter, HTTPException

from ..core.errors import StreamcutError
from ..schemas.experiment import ExactRequest, ExactResponse, GeneratedInstanceResponse, InstanceSpec
from ..services import brute_force_maxcut, build_final_graph, format_stream, generate_instance, parse_stream

router = APIRouter(prefix="/instances", tags=["instances"])


#Сгенерировать инстанс: текст потока и метаданные OPT
@router.post("/generate", response_model=GeneratedInstanceResponse)
def generate(spec: InstanceSpec):
    try:
        instance = generate_instance(spec)
        return GeneratedInstanceResponse(stream=format_stream(instance.stream), metadata=instance.metadata())
    except StreamcutError as e:
        raise HTTPException(status_code=400, detail=str(e))
    except Exception as e:
        raise HTTPException(status_code=500, detail=f"Ошибка при генерации инстанса: {str(e)}")


#Точный MAX-CUT полным перебором (n <= n_exact)
@router.post("/exact", response_model=ExactResponse)
def exact(request: ExactRequest):
    try:
        graph = build_final_graph(parse_stream(request.stream))
        value, assignment = brute_force_maxcut(graph)
        return ExactResponse(n=graph.n, m=graph.m, opt_value=value, assignment=assignment)
    except StreamcutError as e:
        raise HTTPException(status_code=400, detail=str(e))
    except Exception as e:
        raise HTTPException(status_code=500, detail=f"Ошибка при точном подсчёте: {str(e)}")
