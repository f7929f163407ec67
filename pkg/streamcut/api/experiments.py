from fastapi import APIRouter, HTTPException

from ..core.errors import StreamcutError
from ..schemas.experiment import ExperimentConfig, ExperimentResult
from ..services import run_experiment

router = APIRouter(prefix="/experiments", tags=["experiments"])


#Запустить эксперимент и вернуть сводку с записями триалов
@router.post("/run", response_model=ExperimentResult)
def run(config: ExperimentConfig):
    try:
        return run_experiment(config)
    except StreamcutError as e:
        raise HTTPException(status_code=400, detail=str(e))
    except Exception as e:
        raise HTTPException(status_code=500, detail=f"Ошибка при выполнении эксперимента: {str(e)}")
