"""
Tipos de configuraciones prohibidas

Enumeración compartida por predicados, construcciones, certificados y búsqueda.
"""

from enum import Enum

from ..utils.validators import DomainError


class ConfigurationKind(Enum):
    """Configuraciones prohibidas que el toolkit sabe detectar"""

    RIGHT_ANGLE = "right-angle"
    K_RIGHT_CORNER = "k-right-corner"
    ALL_RIGHT_TRIANGLE = "all-right-triangle"
    SELF_ORTHOGONAL_DIFF = "self-orthogonal-diff"
    DIVISIBLE_HAMMING = "divisible-hamming"

    @property
    def is_pairwise(self) -> bool:
        """True si la configuración prohibida es un par de vectores"""
        return self in (ConfigurationKind.SELF_ORTHOGONAL_DIFF, ConfigurationKind.DIVISIBLE_HAMMING)

    def arity(self, k: int = 2) -> int:
        """Tamaño de la tupla prohibida (k+1 para k-esquinas)"""
        if self.is_pairwise:
            return 2
        if self is ConfigurationKind.K_RIGHT_CORNER:
            return k + 1
        return 3

    @classmethod
    def parse(cls, value) -> "ConfigurationKind":
        """Acepta el valor, el nombre o alias cortos del CLI"""
        if isinstance(value, cls):
            return value
        aliases = {
            "right-angle": cls.RIGHT_ANGLE,
            "corner": cls.K_RIGHT_CORNER,
            "k-right-corner": cls.K_RIGHT_CORNER,
            "all-right": cls.ALL_RIGHT_TRIANGLE,
            "all-right-triangle": cls.ALL_RIGHT_TRIANGLE,
            "self-orth": cls.SELF_ORTHOGONAL_DIFF,
            "self-orthogonal-diff": cls.SELF_ORTHOGONAL_DIFF,
            "hamming": cls.DIVISIBLE_HAMMING,
            "divisible-hamming": cls.DIVISIBLE_HAMMING,
        }
        key = str(value).strip().lower().replace("_", "-")
        if key in aliases:
            return aliases[key]
        raise DomainError(f"Propiedad desconocida: {value}", field="property")
