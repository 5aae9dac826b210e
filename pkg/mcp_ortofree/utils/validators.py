"""
Validadores para MCP Ortofree

Este módulo define la jerarquía de excepciones del toolkit y los validadores
de parámetros (módulo primo, dimensiones, nombres de construcciones) que usan
el CLI, el servidor MCP y los módulos de cálculo.
"""

import logging
from typing import Any, Dict, Iterable, Optional, Tuple

from sympy import isprime, perfect_power

logger = logging.getLogger(__name__)


class ValidationError(Exception):
    """Excepción base para errores de validación"""
    def __init__(self, message: str, field: str = None, code: str = None):
        self.message = message
        self.field = field
        self.code = code
        super().__init__(message)


class FieldArithmeticError(ValidationError):
    """Error de aritmética en F_q (inverso de cero, longitudes o cuerpos distintos)"""
    def __init__(self, message: str, field: str = None):
        super().__init__(message, field=field, code="field_arithmetic")


class UnsupportedFieldError(ValidationError):
    """El módulo pedido no es un primo impar soportado"""
    def __init__(self, message: str, field: str = "q"):
        super().__init__(message, field=field, code="unsupported_field")


class DomainError(ValidationError):
    """Se violó la precondición de una operación"""
    def __init__(self, message: str, field: str = None):
        super().__init__(message, field=field, code="domain")


class FormatError(ValidationError):
    """Texto de entrada mal formado (archivo de vectores o de familia de conjuntos)"""
    def __init__(self, message: str, field: str = None):
        super().__init__(message, field=field, code="format")


def validate_prime_modulus(q: Any) -> Tuple[bool, Optional[str]]:
    """
    Valida que q sea un primo impar

    Args:
        q: Módulo a validar

    Returns:
        Tuple (es_valido, mensaje_error)
    """
    if isinstance(q, bool) or not isinstance(q, int):
        return False, "q debe ser un entero"
    if q < 3:
        return False, f"q={q} debe ser un primo impar ≥ 3"
    if isprime(q):
        return True, None
    if perfect_power(q) and isprime(perfect_power(q)[0]):
        base, exp = perfect_power(q)
        return False, (
            f"q={q}={base}^{exp} es potencia de primo: los cuerpos extendidos "
            "no están soportados, use un primo"
        )
    return False, f"q={q} no es primo"


def validate_dimension(n: Any, minimum: int = 1, field: str = "n") -> Tuple[bool, Optional[str]]:
    """
    Valida una dimensión o tamaño entero

    Args:
        n: Valor a validar
        minimum: Mínimo permitido
        field: Nombre del parámetro para el mensaje

    Returns:
        Tuple (es_valido, mensaje_error)
    """
    if isinstance(n, bool) or not isinstance(n, int):
        return False, f"{field} debe ser un entero"
    if n < minimum:
        return False, f"{field}={n} debe ser ≥ {minimum}"
    return True, None


def require_prime(q: Any) -> int:
    """Lanza UnsupportedFieldError si q no es un primo impar"""
    ok, error = validate_prime_modulus(q)
    if not ok:
        raise UnsupportedFieldError(error)
    return q


def require_dimension(n: Any, minimum: int = 1, field: str = "n") -> int:
    """Lanza DomainError si la dimensión no es válida"""
    ok, error = validate_dimension(n, minimum, field)
    if not ok:
        raise DomainError(error, field=field)
    return n


def require(condition: bool, message: str, field: str = None) -> None:
    """Lanza DomainError con el texto de la precondición cuando no se cumple"""
    if not condition:
        raise DomainError(message, field=field)


class ParameterValidator:
    """Validador de peticiones de herramientas (servidor MCP y CLI)"""

    # parámetros requeridos por herramienta
    TOOL_SCHEMAS: Dict[str, Dict[str, Iterable[str]]] = {
        "construir_conjunto": {"required": ["nombre", "n"], "optional": ["q", "k"]},
        "verificar_conjunto": {"required": ["vectores", "propiedad"], "optional": ["k"]},
        "tabla_cotas": {"required": ["propiedad", "n_max", "q"], "optional": ["k", "formato"]},
        "certificar_conjunto": {"required": ["tipo", "vectores"], "optional": ["alpha", "R"]},
        "busqueda_exacta": {"required": ["cantidad", "n", "q"], "optional": ["k", "presupuesto"]},
        "reproducir_criterios": {"required": [], "optional": ["solo"]},
    }

    @staticmethod
    def validate_tool_request(tool_name: str, arguments: Dict[str, Any]) -> Dict[str, Any]:
        """
        Valida una petición de herramienta

        Args:
            tool_name: Nombre de la herramienta
            arguments: Argumentos recibidos

        Returns:
            Dict con resultado de validación
        """
        errors = []
        warnings = []

        schema = ParameterValidator.TOOL_SCHEMAS.get(tool_name)
        if not schema:
            errors.append(f"Herramienta desconocida: {tool_name}")
            return {"valid": False, "errors": errors, "warnings": warnings}

        for field in schema["required"]:
            if field not in arguments or arguments[field] is None:
                errors.append(f"Campo requerido faltante: {field}")

        known = set(schema["required"]) | set(schema["optional"])
        for field in arguments:
            if field not in known:
                warnings.append(f"Campo ignorado: {field}")

        if "q" in arguments and arguments["q"] is not None:
            ok, error = validate_prime_modulus(arguments["q"])
            if not ok:
                errors.append(error)

        for field in ("n", "n_max"):
            if field in arguments and arguments[field] is not None:
                ok, error = validate_dimension(arguments[field], 1, field)
                if not ok:
                    errors.append(error)

        if "k" in arguments and arguments["k"] is not None:
            ok, error = validate_dimension(arguments["k"], 2, "k")
            if not ok:
                errors.append(error)

        presupuesto = arguments.get("presupuesto")
        if presupuesto is not None and (not isinstance(presupuesto, int) or presupuesto < 1):
            errors.append("presupuesto debe ser un entero positivo")
        elif isinstance(presupuesto, int) and presupuesto > 50_000_000:
            warnings.append("presupuesto muy grande, la búsqueda puede tardar")

        return {
            "valid": len(errors) == 0,
            "errors": errors,
            "warnings": warnings
        }
