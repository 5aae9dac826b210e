"""
Configuración de logging

Todos los módulos registran con logging.getLogger(__name__); aquí se instala
el handler según la configuración: rich en consola (text) o JSON vía structlog.
"""

import logging
import sys
from typing import Optional

import structlog
from rich.console import Console
from rich.logging import RichHandler

from ..config import Config, get_config

_MARK = "_ortofree_handler"


def _json_formatter() -> logging.Formatter:
    return structlog.stdlib.ProcessorFormatter(
        processor=structlog.processors.JSONRenderer(sort_keys=True, ensure_ascii=False),
        foreign_pre_chain=[
            structlog.stdlib.add_log_level,
            structlog.stdlib.add_logger_name,
            structlog.processors.TimeStamper(fmt="iso", utc=True),
        ],
    )


def configure_logging(config: Optional[Config] = None) -> None:
    """
    Instala los handlers del toolkit en el logger raíz (idempotente)

    Args:
        config: Configuración; por defecto la global
    """
    config = config or get_config()
    root = logging.getLogger()
    for handler in list(root.handlers):
        if getattr(handler, _MARK, False):
            root.removeHandler(handler)
            handler.close()

    if config.log_format == "json":
        console_handler: logging.Handler = logging.StreamHandler(sys.stderr)
        console_handler.setFormatter(_json_formatter())
    else:
        console_handler = RichHandler(console=Console(stderr=True), show_path=False, rich_tracebacks=True)
    setattr(console_handler, _MARK, True)
    root.addHandler(console_handler)

    if config.log_file:
        file_handler = logging.FileHandler(config.log_file, encoding="utf-8")
        file_handler.setFormatter(_json_formatter())
        setattr(file_handler, _MARK, True)
        root.addHandler(file_handler)

    root.setLevel(config.log_level)
    logging.getLogger(__name__).debug(f"Logging configurado: {config.log_format} / {config.log_level}")
