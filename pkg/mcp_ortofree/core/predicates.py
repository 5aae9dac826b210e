"""
Predicados de configuraciones prohibidas y escaneo exhaustivo de conjuntos

Cada predicado exige vectores distintos (tuplas con repetidos devuelven False).
scan_set recorre las tuplas en orden lexicográfico de índices y se detiene en
la primera violación, de modo que los testigos son deterministas:

- pares (diferencia auto-ortogonal, Hamming divisible): orden (i, j), i < j
- ángulo recto y k-esquinas: orden (esquina, brazos ordenados)
- triángulo todo-recto: orden (i, j, l), i < j < l
"""

import logging
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from enum import Enum
from itertools import combinations
from typing import Any, Dict, List, Optional, Sequence, Tuple, Union

import numpy as np

from ..utils.validators import DomainError, FieldArithmeticError
from .fqlin import FVec, dot, vsub
from .kinds import ConfigurationKind
from .pointset import PointSet

logger = logging.getLogger(__name__)


def _distinct(*vectors: FVec) -> bool:
    return len(set(vectors)) == len(vectors)


def _check_same_space(*vectors: FVec) -> None:
    first = vectors[0]
    for v in vectors[1:]:
        if v.spec != first.spec or len(v) != len(first):
            raise FieldArithmeticError("Los vectores deben ser del mismo F_q^n")


def is_right_angle(x: FVec, y: FVec, z: FVec) -> bool:
    """x, y, z distintos con ⟨x−z, y−z⟩ = 0 (ángulo recto en z)"""
    _check_same_space(x, y, z)
    if not _distinct(x, y, z):
        return False
    return dot(vsub(x, z), vsub(y, z)) == 0


def is_k_right_corner(x0: FVec, rest: Sequence[FVec]) -> bool:
    """x0, x_1..x_k distintos con ⟨x_i−x0, x_j−x0⟩ = 0 para todo i < j"""
    if len(rest) < 2:
        raise DomainError("Una k-esquina requiere k ≥ 2", field="k")
    _check_same_space(x0, *rest)
    if not _distinct(x0, *rest):
        return False
    arms = [vsub(x, x0) for x in rest]
    return all(dot(a, b) == 0 for a, b in combinations(arms, 2))


def is_self_orthogonal(v: FVec) -> bool:
    return dot(v, v) == 0


def has_self_orth_diff(x: FVec, y: FVec) -> bool:
    """x ≠ y con ⟨x−y, x−y⟩ = 0"""
    _check_same_space(x, y)
    return x != y and is_self_orthogonal(vsub(x, y))


def is_all_right_triangle(x: FVec, y: FVec, z: FVec) -> bool:
    """Triángulo de lados ortogonales dos a dos"""
    _check_same_space(x, y, z)
    if not _distinct(x, y, z):
        return False
    a, b, c = vsub(x, y), vsub(y, z), vsub(z, x)
    return dot(a, b) == 0 and dot(b, c) == 0 and dot(c, a) == 0


def all_right_equiv_witness(x: FVec, y: FVec, z: FVec) -> bool:
    """
    Compara las dos caracterizaciones del triángulo todo-recto

    Returns:
        True si (lados ortogonales dos a dos) == (los tres lados auto-ortogonales);
        para q impar siempre es True
    """
    _check_same_space(x, y, z)
    a, b, c = vsub(x, y), vsub(y, z), vsub(z, x)
    pairwise = dot(a, b) == 0 and dot(b, c) == 0 and dot(c, a) == 0
    selfwise = dot(a, a) == 0 and dot(b, b) == 0 and dot(c, c) == 0
    return pairwise == selfwise


Word = Union[FVec, str, Sequence[Any]]


def hamming(x: Word, y: Word) -> int:
    """Distancia de Hamming (entero ordinario)"""
    xs = x.entries if isinstance(x, FVec) else x
    ys = y.entries if isinstance(y, FVec) else y
    if len(xs) != len(ys):
        raise FieldArithmeticError(f"Longitudes distintas: {len(xs)} y {len(ys)}")
    return sum(1 for a, b in zip(xs, ys) if a != b)


def has_divisible_hamming(x: FVec, y: FVec) -> bool:
    """x ≠ y con q | d(x, y)"""
    _check_same_space(x, y)
    return x != y and hamming(x, y) % x.spec.q == 0


class ScanStatus(Enum):
    OK = "ok"
    VIOLATION = "violation"
    BUDGET_EXCEEDED = "budget-exceeded"


@dataclass(frozen=True)
class Violation:
    """Tupla prohibida encontrada; los índices están en el orden de los argumentos del predicado"""
    kind: ConfigurationKind
    indices: Tuple[int, ...]
    vectors: Tuple[FVec, ...]

    def to_json(self) -> Dict[str, Any]:
        return {
            "kind": self.kind.value,
            "indices": [str(i) for i in self.indices],
            "vectors": [v.to_text() for v in self.vectors],
        }


@dataclass(frozen=True)
class ScanReport:
    """Resultado de scan_set"""
    status: ScanStatus
    kind: ConfigurationKind
    violation: Optional[Violation] = None
    tuples_checked: int = 0

    @property
    def ok(self) -> bool:
        return self.status is ScanStatus.OK

    def to_json(self) -> Dict[str, Any]:
        return {
            "schema": 1,
            "status": self.status.value,
            "kind": self.kind.value,
            "violation": self.violation.to_json() if self.violation else None,
            "tuples_checked": str(self.tuples_checked),
        }


def gram_matrix(V: np.ndarray, q: int) -> np.ndarray:
    """Matriz de productos escalares mod q"""
    return (V @ V.T) % q


def corner_matrix(G: np.ndarray, corner: int, q: int) -> np.ndarray:
    """D[i, j] = ⟨x_i − x_c, x_j − x_c⟩ mod q a partir de la matriz de Gram"""
    g = G[:, corner]
    return (G - g[:, None] - g[None, :] + G[corner, corner]) % q


def self_orth_matrix(G: np.ndarray, q: int) -> np.ndarray:
    """S[i, j] = ⟨x_i − x_j, x_i − x_j⟩ mod q"""
    d = np.diag(G)
    return (d[:, None] + d[None, :] - 2 * G) % q


class BudgetExhausted(Exception):
    """Se agotó el presupuesto de una búsqueda o escaneo"""


class ScanBudget:
    def __init__(self, limit: Optional[int]):
        self.limit = limit
        self.used = 0

    def spend(self, amount: int) -> bool:
        """False si el gasto supera el límite"""
        self.used += amount
        return self.limit is None or self.used <= self.limit


def first_clique(adj: np.ndarray, vertices: List[int], size: int, budget: ScanBudget) -> Optional[List[int]]:
    """
    Primera clique (orden lexicográfico) de `size` vértices dentro de `vertices`

    Returns:
        Lista ordenada de vértices, None si no existe; lanza BudgetExhausted
        cuando se agota el presupuesto
    """
    def extend(chosen: List[int], cands: List[int]) -> Optional[List[int]]:
        need = size - len(chosen)
        if need == 0:
            return chosen
        for pos, v in enumerate(cands):
            if len(cands) - pos < need:
                return None
            if not budget.spend(1):
                raise BudgetExhausted
            rest = [w for w in cands[pos + 1:] if adj[v, w]]
            if len(rest) >= need - 1:
                found = extend(chosen + [v], rest)
                if found is not None:
                    return found
        return None

    return extend([], list(vertices))


def _scan_pairs(kind, V, G, q, outer, budget):
    m = V.shape[0]
    diag = np.diag(G)
    for i in outer:
        row = m - i - 1
        if row <= 0:
            continue
        if not budget.spend(row):
            return None, True
        if kind is ConfigurationKind.SELF_ORTHOGONAL_DIFF:
            hits = ((diag[i] + diag[i + 1:] - 2 * G[i, i + 1:]) % q) == 0
        else:
            hits = ((V[i + 1:] != V[i]).sum(axis=1) % q) == 0
        found = np.flatnonzero(hits)
        if found.size:
            return (i, i + 1 + int(found[0])), False
    return None, False


def _scan_corners(kind, V, G, q, k, outer, budget):
    m = V.shape[0]
    for c in outer:
        zero = corner_matrix(G, c, q) == 0
        others = [i for i in range(m) if i != c]
        if k == 2:
            if not budget.spend(len(others) * (len(others) - 1) // 2):
                return None, True
            sub = np.triu(zero[np.ix_(others, others)], 1)
            hits = np.argwhere(sub)
            if hits.size:
                i, j = others[int(hits[0][0])], others[int(hits[0][1])]
                return (c, i, j), False
            continue
        try:
            arms = first_clique(zero, others, k, budget)
        except BudgetExhausted:
            return None, True
        if arms is not None:
            return (c, *arms), False
    return None, False


def _scan_triangles(kind, V, G, q, outer, budget):
    m = V.shape[0]
    edge = self_orth_matrix(G, q) == 0
    np.fill_diagonal(edge, False)
    for i in outer:
        nbrs = [j for j in range(i + 1, m) if edge[i, j]]
        if not budget.spend(max(1, len(nbrs) * (len(nbrs) - 1) // 2)):
            return None, True
        if len(nbrs) < 2:
            continue
        sub = np.triu(edge[np.ix_(nbrs, nbrs)], 1)
        hits = np.argwhere(sub)
        if hits.size:
            return (i, nbrs[int(hits[0][0])], nbrs[int(hits[0][1])]), False
    return None, False


def _scan_range(kind, V, q, k, start, stop, limit):
    """Escanea los índices externos [start, stop); función de nivel módulo para el pool"""
    G = gram_matrix(V, q)
    budget = ScanBudget(limit)
    outer = range(start, stop)
    if kind.is_pairwise:
        found, exceeded = _scan_pairs(kind, V, G, q, outer, budget)
    elif kind is ConfigurationKind.ALL_RIGHT_TRIANGLE:
        found, exceeded = _scan_triangles(kind, V, G, q, outer, budget)
    else:
        found, exceeded = _scan_corners(kind, V, G, q, k, outer, budget)
    return found, exceeded, budget.used


def _to_violation(A: PointSet, kind: ConfigurationKind, raw: Tuple[int, ...]) -> Violation:
    if kind is ConfigurationKind.RIGHT_ANGLE:
        c, i, j = raw
        indices = (i, j, c)
    else:
        indices = tuple(raw)
    return Violation(kind, indices, tuple(A[i] for i in indices))


def scan_set(
    A: PointSet,
    prop: Union[ConfigurationKind, str],
    k: Optional[int] = None,
    budget: Optional[int] = None,
    workers: int = 1,
) -> ScanReport:
    """
    Verifica exhaustivamente que A no contenga la configuración prohibida

    Args:
        A: Conjunto de vectores distintos
        prop: Configuración prohibida
        k: Número de brazos para k-esquinas (k ≥ 2)
        budget: Máximo de tuplas examinadas (None = sin límite)
        workers: Procesos para repartir los índices externos (solo sin presupuesto)

    Returns:
        ScanReport con la primera violación en orden lexicográfico
    """
    kind = ConfigurationKind.parse(prop)
    if kind is ConfigurationKind.K_RIGHT_CORNER:
        if k is None or k < 2:
            raise DomainError("La propiedad k-right-corner requiere k ≥ 2", field="k")
    elif kind is ConfigurationKind.RIGHT_ANGLE:
        k = 2

    m = len(A)
    q = A.q
    V = A.as_array()
    if m < 2:
        return ScanReport(ScanStatus.OK, kind, None, 0)

    if workers > 1 and budget is None and m >= 4 * workers:
        bounds = np.linspace(0, m, workers + 1).astype(int)
        with ProcessPoolExecutor(max_workers=workers) as pool:
            futures = [pool.submit(_scan_range, kind, V, q, k, int(a), int(b), None)
                       for a, b in zip(bounds[:-1], bounds[1:])]
            results = [f.result() for f in futures]
        used = sum(r[2] for r in results)
        for found, _, _ in results:
            if found is not None:
                violation = _to_violation(A, kind, found)
                logger.info(f"scan {kind.value}: violación {violation.indices} (|A|={m})")
                return ScanReport(ScanStatus.VIOLATION, kind, violation, used)
        logger.info(f"scan {kind.value}: OK (|A|={m}, {workers} procesos)")
        return ScanReport(ScanStatus.OK, kind, None, used)

    found, exceeded, used = _scan_range(kind, V, q, k, 0, m, budget)
    if exceeded:
        logger.warning(f"scan {kind.value}: presupuesto de {budget} tuplas agotado")
        return ScanReport(ScanStatus.BUDGET_EXCEEDED, kind, None, used)
    if found is not None:
        violation = _to_violation(A, kind, found)
        logger.info(f"scan {kind.value}: violación {violation.indices} (|A|={m})")
        return ScanReport(ScanStatus.VIOLATION, kind, violation, used)
    logger.info(f"scan {kind.value}: OK (|A|={m})")
    return ScanReport(ScanStatus.OK, kind, None, used)


def violation_replays(violation: Violation) -> bool:
    """Vuelve a evaluar el predicado sobre el testigo"""
    vs = violation.vectors
    kind = violation.kind
    if kind is ConfigurationKind.RIGHT_ANGLE:
        return is_right_angle(*vs)
    if kind is ConfigurationKind.K_RIGHT_CORNER:
        return is_k_right_corner(vs[0], list(vs[1:]))
    if kind is ConfigurationKind.ALL_RIGHT_TRIANGLE:
        return is_all_right_triangle(*vs)
    if kind is ConfigurationKind.SELF_ORTHOGONAL_DIFF:
        return has_self_orth_diff(*vs)
    return has_divisible_hamming(*vs)


def is_sum_free(B: Sequence[int], q: int) -> bool:
    """B ⊆ F_q sin soluciones de b1 + b2 = b3 (b1 = b2 permitido)"""
    members = {b % q for b in B}
    return all((a + b) % q not in members for a in members for b in members)


def sum_free_dot_certificate(A: PointSet, B: Sequence[int]) -> Dict[str, Any]:
    """
    Criterio de suma libre para ausencia de ángulos rectos

    Si ⟨x,x⟩ = 0 para todo x ∈ A, ⟨x,y⟩ ∈ B para x ≠ y y B es libre de sumas,
    entonces ⟨x−z, y−z⟩ = ⟨x,y⟩ − (⟨x,z⟩ + ⟨z,y⟩) ≠ 0 y A no tiene ángulos rectos.

    Returns:
        Dict con cláusulas {isotropic, dots_in_B, sum_free} y la conclusión
    """
    q = A.q
    members = {b % q for b in B}
    clauses = []

    V = A.as_array()
    G = gram_matrix(V, q) if len(A) else np.zeros((0, 0), dtype=np.int64)

    bad = np.flatnonzero(np.diag(G) != 0) if len(A) else np.array([])
    clauses.append({
        "clause": "isotropic",
        "passed": bad.size == 0,
        "counterexample": None if bad.size == 0 else [str(int(bad[0]))],
    })

    offending = None
    for i, j in combinations(range(len(A)), 2):
        if int(G[i, j]) not in members:
            offending = [str(i), str(j)]
            break
    clauses.append({"clause": "dots_in_B", "passed": offending is None, "counterexample": offending})
    clauses.append({"clause": "sum_free", "passed": is_sum_free(list(members), q), "counterexample": None})

    return {
        "schema": 1,
        "clauses": clauses,
        "right_angle_free": all(c["passed"] for c in clauses),
    }
