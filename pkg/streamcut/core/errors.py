from typing import Optional


class StreamcutError(Exception):
    """Базовая ошибка streamcut; exit_code используется CLI"""
    exit_code = 1


class ConfigError(StreamcutError, ValueError):
    exit_code = 2

    def __init__(self, message: str, field_path: Optional[str] = None):
        self.field_path = field_path
        if field_path:
            message = f"{field_path}: {message}"
        super().__init__(message)


class DomainError(StreamcutError, ValueError):
    """Параметр вне допустимой области (ε, δ, вершина вне [0, n) и т.п.)"""
    exit_code = 2


class StreamKindError(DomainError):
    pass


class StreamValidityError(StreamcutError):
    exit_code = 3

    def __init__(
        self,
        message: str,
        event_index: Optional[int] = None,
        line_number: Optional[int] = None,
    ):
        self.event_index = event_index
        self.line_number = line_number
        if event_index is not None:
            message = f"событие #{event_index}: {message}"
        if line_number is not None:
            message = f"строка {line_number}: {message}"
        super().__init__(message)


class MalformedEdgeError(StreamValidityError):
    pass


class CapacityError(StreamcutError):
    exit_code = 4


class OracleAccessError(StreamcutError):
    """Запрос метки вершины, которая ещё не появлялась в потоке"""
    exit_code = 2


def config_error_from(exc: Exception) -> ConfigError:
    """ValidationError pydantic -> ConfigError с путём первого ошибочного поля"""
    errors = getattr(exc, "errors", None)
    if callable(errors):
        details = errors()
        if details:
            first = details[0]
            path = ".".join(str(part) for part in first.get("loc", ())) or None
            return ConfigError(first.get("msg", str(exc)), field_path=path)
    return ConfigError(str(exc))
