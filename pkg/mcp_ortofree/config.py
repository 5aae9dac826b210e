"""
Configuración del toolkit MCP Ortofree

Este módulo maneja toda la configuración del servidor MCP y del CLI,
incluye validación de variables de entorno y configuración por defecto.
"""

from typing import Optional

from pydantic import Field, validator
from pydantic_settings import BaseSettings, SettingsConfigDict


class Config(BaseSettings):
    """Configuración principal del toolkit"""

    model_config = SettingsConfigDict(
        env_file=".env",
        env_file_encoding="utf-8",
        case_sensitive=False,
        extra="ignore"
    )

    # Configuración MCP Server
    server_name: str = Field(
        default="Ortofree Toolkit",
        description="Nombre del servidor MCP"
    )
    server_version: str = Field(
        default="1.0.0",
        description="Versión del toolkit (se registra en los manifiestos)"
    )

    # Logging
    log_level: str = Field(
        default="INFO",
        description="Nivel de logging"
    )
    log_format: str = Field(
        default="text",
        description="Formato de logs: text (rich) o json (structlog)"
    )
    log_file: Optional[str] = Field(
        default=None,
        description="Archivo de logs opcional"
    )

    # Paralelismo
    workers: int = Field(
        default=1,
        description="Procesos para escaneos exhaustivos (variable WORKERS)"
    )
    sequential: bool = Field(
        default=False,
        description="Fuerza ejecución secuencial en todos los módulos"
    )

    # Presupuestos
    search_budget: int = Field(
        default=5_000_000,
        description="Nodos máximos por búsqueda exacta"
    )
    scan_budget: int = Field(
        default=200_000_000,
        description="Tuplas máximas por escaneo"
    )
    triple_scan_cap: int = Field(
        default=300,
        description="Tamaño máximo de conjunto para escaneos de tríos en la rejilla de aceptación"
    )
    rank_bound_depth: int = Field(
        default=1,
        description="Profundidad máxima a la que la búsqueda evalúa la cota por rango"
    )

    # Salidas
    output_dir: str = Field(
        default="resultados",
        description="Directorio de salida de reproduce"
    )
    packing_seed: Optional[int] = Field(
        default=None,
        description="Semilla para el orden permutado del empaquetamiento voraz"
    )

    @validator('log_level')
    def validate_log_level(cls, v):
        """Validar nivel de logging"""
        valid_levels = ['DEBUG', 'INFO', 'WARNING', 'ERROR', 'CRITICAL']
        if v.upper() not in valid_levels:
            raise ValueError(f'Log level must be one of: {valid_levels}')
        return v.upper()

    @validator('log_format')
    def validate_log_format(cls, v):
        """Validar formato de logs"""
        if v.lower() not in ('text', 'json'):
            raise ValueError('Log format must be text or json')
        return v.lower()

    @validator('workers', 'search_budget', 'scan_budget', 'triple_scan_cap')
    def validate_positive(cls, v):
        """Validar enteros positivos"""
        if v < 1:
            raise ValueError('Value must be >= 1')
        return v

    @property
    def effective_workers(self) -> int:
        """Procesos efectivos: 1 en modo secuencial"""
        return 1 if self.sequential else self.workers

    @property
    def packing_order(self) -> str:
        """Orden del empaquetamiento voraz"""
        return "lex" if self.packing_seed is None else "shuffled"


# Instancia global de configuración
config = None


def get_config() -> Config:
    """Obtener la configuración global"""
    global config
    if config is None:
        config = Config()
    return config


def reload_config() -> Config:
    """Recargar la configuración desde variables de entorno"""
    global config
    config = Config()
    return config
