import logging

from fastapi import FastAPI

from . import __version__
from .api import experiments, instances
from .core.config import settings

logging.basicConfig(level=settings.log_level.upper())

# Создание FastAPI приложения
app = FastAPI(
    title="Streamcut API",
    description="Потоковая оценка MAX-CUT с ε-точными предсказаниями",
    version=__version__,
    debug=settings.debug,
)

app.include_router(experiments, prefix="/api")
app.include_router(instances, prefix="/api")


@app.get("/")
async def root():
    return {"message": "Streamcut API работает!"}


@app.get("/health")
async def health_check():
    return {"status": "healthy"}
