from pydantic_settings import BaseSettings
from typing import Optional


class Settings(BaseSettings):
    # Воспроизводимость: STREAMCUT_SEED перекрывает --seed
    seed: Optional[int] = None

    # Точный перебор
    n_exact: int = 24
    brute_force_chunk: int = 1 << 20

    # Скетчи
    max_sketch_words: int = 50_000_000
    l0_independence: int = 8

    # Константы, которые в теории "достаточно большие"
    small_m_constant: float = 1.0
    sum_constant: float = 2.0

    # App Settings
    debug: bool = False
    log_level: str = "INFO"

    # HTTP API
    api_host: str = "0.0.0.0"
    api_port: int = 8000

    class Config:
        env_file = ".env"
        env_prefix = "STREAMCUT_"
        case_sensitive = False


settings = Settings()
