"""
Búsqueda exacta de conjuntos extremales

Los vértices del problema son todos los vectores de F_q^n (o de {0,1}^n para
T(n,q)), numerados por sus dígitos en base q (o 2), el más significativo
primero. Dos motores:

- exact_pairwise: clique máxima en el grafo de compatibilidad (conjuntos de
  bits como enteros, cota por coloración voraz) con una cota algebraica: el
  rango sobre F_q de la matriz identidad + conflictos restringida a los
  vértices aún disponibles.
- exact_tuplewise: backtracking en orden lexicográfico con comprobación hacia
  adelante de las tuplas prohibidas y un filtro por grados.

El presupuesto se mide en nodos expandidos. Con el mismo presupuesto y la misma
instancia el testigo es siempre el mismo.
"""

import logging
from dataclasses import dataclass
from enum import Enum
from itertools import product
from math import ceil
from typing import Any, Dict, List, Optional, Sequence, Tuple

import numpy as np

from ..utils.validators import DomainError, require, require_dimension, require_prime
from .certify import FqMatrix, rank_gf
from .fqlin import FieldSpec, FVec
from .kinds import ConfigurationKind
from .pointset import PointSet
from .predicates import ScanBudget, corner_matrix, first_clique, gram_matrix, self_orth_matrix

logger = logging.getLogger(__name__)

PAIRWISE_LIMIT = 1 << 16
TUPLEWISE_LIMIT = 3 ** 7
RANK_BOUND_LIMIT = 1024
DEGREE_FILTER_LIMIT = 256


def unrank(index: int, n: int, q: int) -> FVec:
    """Vector cuyos dígitos en base q (el más significativo primero) forman index"""
    require_prime(q)
    require_dimension(n, 1)
    require(0 <= index < q ** n, f"se requiere 0 ≤ index < q^n = {q ** n} (index={index})", field="index")
    digits = []
    for _ in range(n):
        index, digit = divmod(index, q)
        digits.append(digit)
    return FVec(FieldSpec(q), tuple(reversed(digits)))


def rank_vector(v: FVec) -> int:
    """Inversa de unrank"""
    index = 0
    for e in v.entries:
        index = index * v.spec.q + e
    return index


class SearchStatus(Enum):
    PROVEN_OPTIMAL = "proven-optimal"
    BUDGET_EXHAUSTED = "budget-exhausted"


@dataclass(frozen=True)
class ConflictInstance:
    """
    Problema extremal sobre un universo de vectores

    binary=True restringe el universo a {0,1}^n ⊂ F_q^n. coordinate_permutation
    reordena las coordenadas de cada vértice (mismo universo, otro orden de
    exploración).
    """
    quantity: str
    kind: ConfigurationKind
    n: int
    q: int
    k: int = 2
    binary: bool = False
    translation_invariant: bool = True
    coordinate_permutation: Optional[Tuple[int, ...]] = None

    def __post_init__(self):
        require_prime(self.q)
        require_dimension(self.n, 1)
        if self.kind is ConfigurationKind.K_RIGHT_CORNER:
            require_dimension(self.k, 2, "k")
        if self.coordinate_permutation is not None:
            require(sorted(self.coordinate_permutation) == list(range(self.n)),
                    "coordinate_permutation debe ser una permutación de 0..n−1", field="coordinate_permutation")

    @property
    def arity(self) -> int:
        return self.kind.arity(self.k)

    @property
    def base(self) -> int:
        return 2 if self.binary else self.q

    @property
    def size(self) -> int:
        return self.base ** self.n

    @property
    def spec(self) -> FieldSpec:
        return FieldSpec(self.q)

    def vectors(self) -> np.ndarray:
        """Matriz size x n con el vector de cada vértice"""
        V = np.array(list(product(range(self.base), repeat=self.n)), dtype=np.int64)
        if self.coordinate_permutation is not None:
            V = V[:, list(self.coordinate_permutation)]
        return V

    def to_point_set(self, indices: Sequence[int], V: np.ndarray) -> PointSet:
        vectors = tuple(FVec(self.spec, tuple(int(e) for e in V[i])) for i in sorted(indices))
        params = {"n": self.n, "q": self.q}
        if self.kind is ConfigurationKind.K_RIGHT_CORNER:
            params["k"] = self.k
        return PointSet(self.spec, self.n, vectors, {"name": f"search-{self.quantity}", "params": params},
                        self.kind, self.k if self.kind is ConfigurationKind.K_RIGHT_CORNER else None)


def s_instance(n: int, q: int) -> ConflictInstance:
    return ConflictInstance("S", ConfigurationKind.SELF_ORTHOGONAL_DIFF, n, q)


def t_instance(n: int, q: int) -> ConflictInstance:
    return ConflictInstance("T", ConfigurationKind.DIVISIBLE_HAMMING, n, q, binary=True)


def r_instance(n: int, q: int) -> ConflictInstance:
    return ConflictInstance("R", ConfigurationKind.RIGHT_ANGLE, n, q)


def all_right_instance(n: int, q: int) -> ConflictInstance:
    return ConflictInstance("all-right", ConfigurationKind.ALL_RIGHT_TRIANGLE, n, q)


def corner_instance(n: int, q: int, k: int) -> ConflictInstance:
    return ConflictInstance("corner", ConfigurationKind.K_RIGHT_CORNER, n, q, k=k)


@dataclass(frozen=True)
class SearchResult:
    """Óptimo (o mejor encontrado), testigo y estadísticas"""
    instance: ConflictInstance
    optimum: int
    witness: PointSet
    nodes_expanded: int
    status: SearchStatus
    root_bound: Optional[int] = None

    @property
    def proven(self) -> bool:
        return self.status is SearchStatus.PROVEN_OPTIMAL

    def to_json(self) -> Dict[str, Any]:
        inst = self.instance
        return {
            "schema": 1,
            "quantity": inst.quantity,
            "kind": inst.kind.value,
            "n": str(inst.n),
            "q": str(inst.q),
            "k": str(inst.k) if inst.kind is ConfigurationKind.K_RIGHT_CORNER else None,
            "optimum": str(self.optimum),
            "status": self.status.value,
            "nodes_expanded": str(self.nodes_expanded),
            "root_bound": None if self.root_bound is None else str(self.root_bound),
            "label": "derived",
            "witness": [v.to_text() for v in self.witness.vectors],
        }


class _Stop(Exception):
    def __init__(self, exhausted: bool):
        super().__init__()
        self.exhausted = exhausted


def _bitset(flags: np.ndarray) -> int:
    """Entero cuyo bit i es flags[i]"""
    packed = np.packbits(flags.astype(np.uint8), bitorder="little")
    return int.from_bytes(packed.tobytes(), "little")


def _bits(mask: int) -> List[int]:
    out = []
    while mask:
        low = mask & -mask
        out.append(low.bit_length() - 1)
        mask ^= low
    return out


def _color_sort(P: int, adj: List[int]) -> Tuple[List[int], List[int]]:
    """
    Coloración voraz de P en el grafo de compatibilidad

    Cada clase de color es un conjunto independiente (ningún par compatible);
    dentro de cada clase los vértices entran por índice creciente.
    """
    order: List[int] = []
    colors: List[int] = []
    uncolored = P
    color = 0
    while uncolored:
        color += 1
        available = uncolored
        while available:
            low = available & -available
            v = low.bit_length() - 1
            available &= ~adj[v] & ~low
            uncolored &= ~low
            order.append(v)
            colors.append(color)
    return order, colors


def conflict_row(kind: ConfigurationKind, V: np.ndarray, i: int, q: int) -> np.ndarray:
    """Vértices en conflicto con el vértice i (sin incluir i)"""
    if kind is ConfigurationKind.SELF_ORTHOGONAL_DIFF:
        d = (V - V[i]) % q
        row = ((d * d).sum(axis=1) % q) == 0
    elif kind is ConfigurationKind.DIVISIBLE_HAMMING:
        row = ((V != V[i]).sum(axis=1) % q) == 0
    else:
        raise DomainError(f"{kind.value} no es una configuración de pares", field="kind")
    row[i] = False
    return row


class PairwiseSolver:
    """Clique máxima en el grafo de compatibilidad con cota por coloración y por rango"""

    def __init__(
        self,
        instance: ConflictInstance,
        budget: Optional[int] = None,
        anchor: Optional[bool] = None,
        rank_bound_depth: int = 1,
    ):
        require(instance.arity == 2, f"{instance.kind.value} no es una instancia de pares", field="kind")
        require(instance.size <= PAIRWISE_LIMIT,
                f"universo de {instance.size} vértices; el máximo es {PAIRWISE_LIMIT}", field="n")
        self.instance = instance
        self.budget = budget
        self.anchor = instance.translation_invariant if anchor is None else anchor
        self.q = instance.q
        self.V = instance.vectors()
        self.N = len(self.V)

        self.rank_bound_depth = rank_bound_depth if self.N <= RANK_BOUND_LIMIT else -1
        keep_rows = self.rank_bound_depth >= 0
        full = (1 << self.N) - 1
        self.adj: List[int] = []
        rows = []
        for i in range(self.N):
            row = conflict_row(instance.kind, self.V, i, self.q)
            self.adj.append(full & ~_bitset(row) & ~(1 << i))
            if keep_rows:
                rows.append(row)

        # identidad + conflictos: su restricción a un conjunto válido es la identidad
        self.M: Optional[np.ndarray] = None
        if keep_rows:
            self.M = (np.array(rows, dtype=np.int64) + np.eye(self.N, dtype=np.int64)) % self.q

        self.nodes = 0
        self.best: List[int] = []
        self.root_bound: Optional[int] = None

    def _rank_bound(self, U: List[int]) -> int:
        sub = self.M[np.ix_(U, U)] % self.q
        return rank_gf(FqMatrix(self.instance.spec, sub))

    def _tick(self) -> None:
        self.nodes += 1
        if self.budget is not None and self.nodes > self.budget:
            raise _Stop(exhausted=True)

    def _record(self, R: List[int]) -> None:
        self.best = list(R)
        logger.debug(f"{self.instance.quantity}: nuevo incumbente {len(self.best)} (nodo {self.nodes})")
        if self.root_bound is not None and len(self.best) >= self.root_bound:
            raise _Stop(exhausted=False)

    def _greedy(self, R: List[int], P: int) -> List[int]:
        chosen = list(R)
        while P:
            low = P & -P
            v = low.bit_length() - 1
            chosen.append(v)
            P &= self.adj[v]
        return chosen

    def _expand(self, R: List[int], P: int, depth: int) -> None:
        self._tick()
        order, colors = _color_sort(P, self.adj)
        if not order or len(R) + colors[-1] <= len(self.best):
            return
        if self.M is not None and 0 < depth <= self.rank_bound_depth:
            if self._rank_bound(R + sorted(order)) <= len(self.best):
                return

        for idx in range(len(order) - 1, -1, -1):
            if len(R) + colors[idx] <= len(self.best):
                return
            v = order[idx]
            R.append(v)
            child = P & self.adj[v]
            if child:
                self._expand(R, child, depth + 1)
            elif len(R) > len(self.best):
                self._record(R)
            R.pop()
            P &= ~(1 << v)

    def solve(self) -> SearchResult:
        if self.anchor:
            R, P = [0], self.adj[0]
        else:
            R, P = [], (1 << self.N) - 1

        self.best = self._greedy(R, P)
        if self.M is not None:
            self.root_bound = self._rank_bound(sorted(R + _bits(P)))
        logger.debug(f"{self.instance.quantity}: incumbente voraz {len(self.best)}, cota raíz {self.root_bound}")

        status = SearchStatus.PROVEN_OPTIMAL
        if self.root_bound is None or len(self.best) < self.root_bound:
            try:
                self._expand(R, P, 0)
            except _Stop as stop:
                if stop.exhausted:
                    status = SearchStatus.BUDGET_EXHAUSTED

        return _finish(self.instance, self.V, self.best, self.nodes, status, self.root_bound)


class TuplewiseSolver:
    """Backtracking lexicográfico para configuraciones de 3 o más puntos"""

    def __init__(self, instance: ConflictInstance, budget: Optional[int] = None, anchor: Optional[bool] = None):
        require(instance.arity >= 3, f"{instance.kind.value} es una instancia de pares", field="kind")
        require(instance.size <= TUPLEWISE_LIMIT,
                f"universo de {instance.size} vértices; el máximo es {TUPLEWISE_LIMIT}", field="n")
        self.instance = instance
        self.kind = instance.kind
        self.budget = budget
        self.anchor = instance.translation_invariant if anchor is None else anchor
        self.q = instance.q
        self.V = instance.vectors()
        self.N = len(self.V)
        self.G = gram_matrix(self.V, self.q)
        self.E: Optional[np.ndarray] = None
        if self.kind is ConfigurationKind.ALL_RIGHT_TRIANGLE:
            self.E = self_orth_matrix(self.G, self.q) == 0
            np.fill_diagonal(self.E, False)
        self.nodes = 0
        self.best: List[int] = []

    def _tick(self) -> None:
        self.nodes += 1
        if self.budget is not None and self.nodes > self.budget:
            raise _Stop(exhausted=True)

    def _closes_corner(self, members: List[int], w: int) -> bool:
        """True si members + [w] contiene una k-esquina que usa w"""
        idx = members + [w]
        last = len(members)
        Gs = self.G[np.ix_(idx, idx)]
        k = self.instance.k
        unlimited = ScanBudget(None)
        zero = corner_matrix(Gs, last, self.q) == 0
        if first_clique(zero, list(range(last)), k, unlimited) is not None:
            return True
        for c in range(last):
            zero = corner_matrix(Gs, c, self.q) == 0
            nbrs = [x for x in range(last) if x != c and zero[last, x]]
            if len(nbrs) >= k - 1 and first_clique(zero, nbrs, k - 1, unlimited) is not None:
                return True
        return False

    def _filter(self, chosen: List[int], v: int, cands: np.ndarray) -> np.ndarray:
        """Candidatos que siguen siendo válidos tras añadir v"""
        if cands.size == 0:
            return cands
        G, q, W = self.G, self.q, cands
        keep = np.ones(len(W), dtype=bool)
        if self.kind is ConfigurationKind.RIGHT_ANGLE:
            for u in chosen:
                at_w = (G[u, v] - G[u, W] - G[v, W] + G[W, W]) % q
                at_u = (G[v, W] - G[v, u] - G[u, W] + G[u, u]) % q
                at_v = (G[u, W] - G[u, v] - G[v, W] + G[v, v]) % q
                keep &= (at_w != 0) & (at_u != 0) & (at_v != 0)
        elif self.kind is ConfigurationKind.ALL_RIGHT_TRIANGLE:
            for u in chosen:
                if self.E[u, v]:
                    keep &= ~(self.E[u, W] & self.E[v, W])
        else:
            members = chosen + [v]
            keep = np.array([not self._closes_corner(members, int(w)) for w in W], dtype=bool)
        return W[keep]

    def _degree_bound(self, chosen: List[int], cands: np.ndarray) -> int:
        """Cota α ≤ |W| − ceil(|E|/Δ) del grafo de pares de candidatos prohibidos con algún elegido"""
        w = len(cands)
        if w < 2 or w > DEGREE_FILTER_LIMIT or not chosen or self.kind is ConfigurationKind.K_RIGHT_CORNER:
            return w
        G, q = self.G, self.q
        Wc, Wr = cands[:, None], cands[None, :]
        H = np.zeros((w, w), dtype=bool)
        for u in chosen:
            if self.kind is ConfigurationKind.RIGHT_ANGLE:
                at_u = (G[Wc, Wr] - G[Wc, u] - G[Wr, u] + G[u, u]) % q == 0
                at_first = (G[u, Wr] - G[u, Wc] - G[Wc, Wr] + G[Wc, Wc]) % q == 0
                H |= at_u | at_first | at_first.T
            else:
                H |= self.E[u, Wc] & self.E[u, Wr] & self.E[Wc, Wr]
        np.fill_diagonal(H, False)
        degrees = H.sum(axis=1)
        edges = int(degrees.sum()) // 2
        if edges == 0:
            return w
        return w - ceil(edges / int(degrees.max()))

    def _extend(self, chosen: List[int], cands: np.ndarray) -> None:
        self._tick()
        if len(chosen) > len(self.best):
            self.best = list(chosen)
            logger.debug(f"{self.instance.quantity}: nuevo incumbente {len(self.best)} (nodo {self.nodes})")
        if len(chosen) + len(cands) <= len(self.best):
            return
        if len(chosen) + self._degree_bound(chosen, cands) <= len(self.best):
            return
        for i in range(len(cands)):
            if len(chosen) + len(cands) - i <= len(self.best):
                return
            v = int(cands[i])
            rest = self._filter(chosen, v, cands[i + 1:])
            chosen.append(v)
            self._extend(chosen, rest)
            chosen.pop()

    def solve(self) -> SearchResult:
        if self.anchor:
            chosen, cands = [0], np.arange(1, self.N, dtype=np.int64)
        else:
            chosen, cands = [], np.arange(self.N, dtype=np.int64)

        status = SearchStatus.PROVEN_OPTIMAL
        try:
            self._extend(chosen, cands)
        except _Stop:
            status = SearchStatus.BUDGET_EXHAUSTED
        return _finish(self.instance, self.V, self.best, self.nodes, status, None)


def _finish(instance, V, best, nodes, status, root_bound) -> SearchResult:
    witness = instance.to_point_set(best, V)
    logger.info(
        f"Búsqueda {instance.quantity}(n={instance.n}, q={instance.q}): {len(best)} "
        f"[{status.value}] en {nodes} nodos"
    )
    return SearchResult(instance, len(best), witness, nodes, status, root_bound)


def exact_pairwise(
    instance: ConflictInstance,
    budget: Optional[int] = None,
    anchor: Optional[bool] = None,
    rank_bound_depth: int = 1,
) -> SearchResult:
    """
    Conjunto máximo sin pares en conflicto

    Args:
        instance: Instancia de aridad 2
        budget: Máximo de nodos (None = sin límite)
        anchor: Fija el vértice 0 en la solución (por defecto si la instancia
            es invariante por traslaciones)
        rank_bound_depth: Profundidad máxima a la que se evalúa la cota por rango
            (−1 la desactiva)

    Returns:
        SearchResult
    """
    return PairwiseSolver(instance, budget, anchor, rank_bound_depth).solve()


def exact_tuplewise(
    instance: ConflictInstance,
    budget: Optional[int] = None,
    anchor: Optional[bool] = None,
) -> SearchResult:
    """Conjunto máximo sin tuplas prohibidas (ángulos rectos, triángulos, k-esquinas)"""
    return TuplewiseSolver(instance, budget, anchor).solve()


def exact_S(n: int, q: int, budget: Optional[int] = None, rank_bound_depth: int = 1) -> SearchResult:
    return exact_pairwise(s_instance(n, q), budget, rank_bound_depth=rank_bound_depth)


def exact_T(n: int, q: int, budget: Optional[int] = None, rank_bound_depth: int = 1) -> SearchResult:
    return exact_pairwise(t_instance(n, q), budget, rank_bound_depth=rank_bound_depth)


def exact_R(n: int, q: int, budget: Optional[int] = None) -> SearchResult:
    return exact_tuplewise(r_instance(n, q), budget)


def exact_all_right(n: int, q: int, budget: Optional[int] = None) -> SearchResult:
    return exact_tuplewise(all_right_instance(n, q), budget)


def exact_corner(n: int, q: int, k: int, budget: Optional[int] = None) -> SearchResult:
    """k-esquinas; experimental para k ≥ 3"""
    if k >= 3:
        logger.warning(f"Búsqueda de {k}-esquinas experimental: se espera agotar el presupuesto")
    if k == 2:
        return exact_R(n, q, budget)
    return exact_tuplewise(corner_instance(n, q, k), budget)


QUANTITIES = ("R", "S", "T", "all-right", "corner")


def exact_search(
    quantity: str,
    n: int,
    q: int,
    k: Optional[int] = None,
    budget: Optional[int] = None,
    rank_bound_depth: int = 1,
) -> SearchResult:
    """Despacha por cantidad: R, S, T, all-right o corner"""
    key = quantity.strip()
    if key in ("R", "r"):
        return exact_R(n, q, budget)
    if key in ("S", "s"):
        return exact_S(n, q, budget, rank_bound_depth)
    if key in ("T", "t"):
        return exact_T(n, q, budget, rank_bound_depth)
    if key.lower() in ("all-right", "all_right"):
        return exact_all_right(n, q, budget)
    if key.lower() == "corner":
        require(k is not None, "corner requiere k", field="k")
        return exact_corner(n, q, k, budget)
    raise DomainError(f"Cantidad desconocida: {quantity}", field="cantidad")
