#!/usr/bin/env python3
"""
Запуск HTTP API streamcut
"""

import uvicorn
from streamcut.core.config import settings

if __name__ == "__main__":
    uvicorn.run(
        "streamcut.main:app",
        host=settings.api_host,
        port=settings.api_port,
        reload=settings.debug,  # Автоперезагрузка в режиме отладки
        log_level=settings.log_level.lower()
    )
