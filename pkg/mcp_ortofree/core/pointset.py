"""
Conjuntos de puntos de F_q^n con metadatos de procedencia

PointSet es el contenedor que intercambian construcciones, predicados,
certificados y búsqueda.
"""

import logging
from dataclasses import dataclass, field
from typing import Any, Dict, Iterable, List, Optional, Sequence

import numpy as np

from ..utils.validators import DomainError
from .fqlin import FieldSpec, FVec, dump_vectors, parse_vectors
from .kinds import ConfigurationKind

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class PointSet:
    """Lista de vectores distintos más la construcción que los produjo"""
    spec: FieldSpec
    n: int
    vectors: tuple
    provenance: Dict[str, Any] = field(default_factory=dict)
    claimed_property: Optional[ConfigurationKind] = None
    claimed_k: Optional[int] = None

    def __post_init__(self):
        object.__setattr__(self, "vectors", tuple(self.vectors))
        for v in self.vectors:
            if v.spec != self.spec or len(v) != self.n:
                raise DomainError(f"Vector {v.to_text()} no pertenece a F_{self.spec.q}^{self.n}")
        if len(set(self.vectors)) != len(self.vectors):
            raise DomainError("Los vectores de un PointSet deben ser distintos")

    def __len__(self) -> int:
        return len(self.vectors)

    def __iter__(self):
        return iter(self.vectors)

    def __getitem__(self, i: int) -> FVec:
        return self.vectors[i]

    @property
    def q(self) -> int:
        return self.spec.q

    def as_array(self) -> np.ndarray:
        """Matriz |A| x n de residuos (int64)"""
        if not self.vectors:
            return np.zeros((0, self.n), dtype=np.int64)
        return np.array([v.entries for v in self.vectors], dtype=np.int64)

    def to_text(self) -> str:
        return dump_vectors(self.vectors, self.spec, self.n)

    def provenance_json(self) -> Dict[str, Any]:
        """Metadatos para el archivo JSON que acompaña al archivo de vectores"""
        return {
            "construction": self.provenance.get("name", "manual"),
            "parameters": {k: str(v) for k, v in sorted(self.provenance.get("params", {}).items())},
            "claimed_property": self.claimed_property.value if self.claimed_property else None,
            "k": None if self.claimed_k is None else str(self.claimed_k),
            "q": str(self.spec.q),
            "n": str(self.n),
            "size": str(len(self)),
        }

    def with_vectors(self, vectors: Sequence[FVec], name: str = None) -> "PointSet":
        """Copia con otros vectores (p.ej. para plantar violaciones en tests)"""
        provenance = dict(self.provenance)
        if name:
            provenance["name"] = name
        return PointSet(self.spec, self.n, tuple(vectors), provenance,
                        self.claimed_property, self.claimed_k)


def point_set(
    rows: Iterable[Iterable[int]],
    q: int,
    n: int = None,
    name: str = "manual",
    params: Dict[str, Any] = None,
    claimed: Optional[ConfigurationKind] = None,
    k: Optional[int] = None,
) -> PointSet:
    """
    Construye un PointSet desde filas de enteros (se reducen mod q)

    Args:
        rows: Filas de enteros
        q: Módulo primo
        n: Longitud (obligatoria si no hay filas)
        name: Nombre de la construcción
        params: Parámetros de la construcción
        claimed: Propiedad que el conjunto dice evitar
        k: Parámetro k para k-esquinas

    Returns:
        PointSet
    """
    spec = FieldSpec(q)
    vectors: List[FVec] = [FVec(spec, tuple(int(v) % q for v in row)) for row in rows]
    if n is None:
        if not vectors:
            raise DomainError("n es obligatorio para un conjunto vacío", field="n")
        n = len(vectors[0])
    return PointSet(spec, n, tuple(vectors), {"name": name, "params": dict(params or {})}, claimed, k)


def read_point_set(text: str, name: str = "archivo") -> PointSet:
    """Lee un PointSet desde el formato de texto de vectores"""
    spec, n, vectors = parse_vectors(text)
    return PointSet(spec, n, tuple(vectors), {"name": name, "params": {}})
