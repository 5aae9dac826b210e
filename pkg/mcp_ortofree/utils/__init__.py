"""
Módulo de utilidades para MCP Ortofree

Este módulo contiene utilidades compartidas: validaciones y errores,
formatos de salida y configuración de logging.
"""

from .validators import (
    DomainError,
    FieldArithmeticError,
    FormatError,
    ParameterValidator,
    UnsupportedFieldError,
    ValidationError,
    validate_dimension,
    validate_prime_modulus,
)

__all__ = [
    "ValidationError",
    "FieldArithmeticError",
    "UnsupportedFieldError",
    "DomainError",
    "FormatError",
    "ParameterValidator",
    "validate_prime_modulus",
    "validate_dimension",
]
