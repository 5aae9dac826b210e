"""
Familias t-uniformes con intersecciones acotadas

Empaquetamiento voraz: se recorren todos los t-subconjuntos de {1..n} (orden
lexicográfico, u orden permutado con semilla) y se conserva cada bloque cuya
intersección con todos los bloques ya elegidos es < cap. El tamaño garantizado
que se comprueba es ceil(C(n,ℓ) / C(t,ℓ)²) con ℓ = ceil(cap).
"""

import logging
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from math import ceil, comb
from typing import List, Optional, Sequence, Tuple, Union

import networkx as nx
import numpy as np

from ..utils.validators import DomainError, FormatError, require
from .fqlin import FieldSpec, FVec
from .pointset import PointSet

logger = logging.getLogger(__name__)

Cap = Union[Fraction, int, str]


def parse_cap(cap: Cap) -> Fraction:
    """Acepta 3/2, "3/2", 2 o Fraction"""
    try:
        return Fraction(str(cap)) if not isinstance(cap, Fraction) else cap
    except ValueError:
        raise DomainError(f"cap inválido: {cap!r}", field="cap")


def intersection_ell(cap: Cap) -> int:
    """ℓ = ceil(cap): "|F∩G| < cap" equivale a "|F∩G| ≤ ℓ−1" """
    return ceil(parse_cap(cap))


def floor_guarantee(n: int, t: int, ell: int) -> int:
    """ceil(C(n,ℓ) / C(t,ℓ)²), en aritmética entera"""
    denominator = comb(t, ell) ** 2
    if denominator == 0:
        return 0
    return -(-comb(n, ell) // denominator)


@dataclass(frozen=True)
class SetSystem:
    """Familia t-uniforme de subconjuntos de {1..n} (bloques ordenados, base 1)"""
    n: int
    t: int
    cap: Fraction
    blocks: Tuple[Tuple[int, ...], ...]

    def __len__(self) -> int:
        return len(self.blocks)

    @property
    def ell(self) -> int:
        return intersection_ell(self.cap)

    @property
    def floor_guarantee(self) -> int:
        return floor_guarantee(self.n, self.t, self.ell)

    @property
    def meets_floor(self) -> bool:
        return len(self.blocks) >= self.floor_guarantee

    def to_text(self) -> str:
        lines = [f"n={self.n} t={self.t} cap={self.cap.numerator}/{self.cap.denominator}"]
        lines.extend(" ".join(str(e) for e in block) for block in self.blocks)
        return "\n".join(lines) + "\n"


def _validate(n: int, t: int, cap: Fraction) -> None:
    require(isinstance(n, int) and isinstance(t, int), "n y t deben ser enteros")
    require(1 <= t <= n, f"se requiere 1 ≤ t ≤ n (t={t}, n={n})", field="t")
    require(0 < cap <= t, f"se requiere 0 < cap ≤ t (cap={cap}, t={t})", field="cap")


def _mask(block: Sequence[int]) -> int:
    mask = 0
    for e in block:
        mask |= 1 << e
    return mask


def greedy_packing(n: int, t: int, cap: Cap, order: str = "lex", seed: Optional[int] = None) -> SetSystem:
    """
    Empaquetamiento voraz de t-subconjuntos con |F∩G| < cap

    Args:
        n: Tamaño del conjunto base
        t: Tamaño de los bloques
        cap: Cota racional (estricta) para las intersecciones
        order: "lex" (por defecto) o "shuffled" (permutación con semilla)
        seed: Semilla para order="shuffled"

    Returns:
        SetSystem con los bloques en el orden en que se eligieron
    """
    cap = parse_cap(cap)
    _validate(n, t, cap)
    limit = intersection_ell(cap) - 1

    candidates: List[Tuple[int, ...]] = list(combinations(range(1, n + 1), t))
    if order == "shuffled":
        rng = np.random.default_rng(seed)
        candidates = [candidates[i] for i in rng.permutation(len(candidates))]
    elif order != "lex":
        raise DomainError(f"Orden desconocido: {order}", field="order")

    kept: List[Tuple[int, ...]] = []
    masks: List[int] = []
    for block in candidates:
        m = _mask(block)
        if all((m & other).bit_count() <= limit for other in masks):
            kept.append(block)
            masks.append(m)

    system = SetSystem(n, t, cap, tuple(kept))
    if not system.meets_floor:
        logger.warning(
            f"greedy_packing(n={n}, t={t}, cap={cap}): {len(kept)} bloques, "
            f"por debajo de la garantía {system.floor_guarantee}"
        )
    else:
        logger.info(f"greedy_packing(n={n}, t={t}, cap={cap}): {len(kept)} bloques")
    return system


def verify_packing(system: SetSystem) -> Optional[Tuple[int, int]]:
    """Primer par de bloques (índices) que viola la cota o el tamaño; None si es válido"""
    limit = system.ell - 1
    masks = []
    for i, block in enumerate(system.blocks):
        if len(block) != system.t or len(set(block)) != system.t or \
                any(not 1 <= e <= system.n for e in block):
            return (i, i)
        masks.append(_mask(block))
    for i, j in combinations(range(len(masks)), 2):
        if (masks[i] & masks[j]).bit_count() > limit:
            return (i, j)
    return None


def max_packing_oracle(n: int, t: int, cap: Cap) -> int:
    """
    Tamaño máximo exacto de una familia con |F∩G| < cap (clique máxima en el
    grafo de compatibilidad; solo para n pequeño)
    """
    cap = parse_cap(cap)
    _validate(n, t, cap)
    limit = intersection_ell(cap) - 1
    blocks = list(combinations(range(1, n + 1), t))
    masks = [_mask(b) for b in blocks]

    graph = nx.Graph()
    graph.add_nodes_from(range(len(blocks)))
    for i, j in combinations(range(len(blocks)), 2):
        if (masks[i] & masks[j]).bit_count() <= limit:
            graph.add_edge(i, j)
    clique, size = nx.max_weight_clique(graph, weight=None)
    return int(size)


def char_vectors(system: SetSystem, q: int) -> PointSet:
    """Vectores característicos 0/1 de los bloques, leídos en F_q^n"""
    spec = FieldSpec(q)
    vectors = []
    for block in system.blocks:
        members = set(block)
        vectors.append(FVec(spec, tuple(1 if i in members else 0 for i in range(1, system.n + 1))))
    return PointSet(
        spec, system.n, tuple(vectors),
        {"name": "char_vectors", "params": {"n": system.n, "t": system.t, "cap": system.cap}},
    )


def parse_set_system(text: str) -> SetSystem:
    """Lee el formato `n=<n> t=<t> cap=<p>/<r>` seguido de un bloque por línea"""
    lines = [line.strip() for line in text.splitlines() if line.strip()]
    if not lines:
        raise FormatError("Familia vacía: falta la cabecera")
    header = dict(part.split("=", 1) for part in lines[0].split() if "=" in part)
    try:
        n, t, cap = int(header["n"]), int(header["t"]), Fraction(header["cap"])
    except (KeyError, ValueError):
        raise FormatError(f"Cabecera inválida: {lines[0]!r}")
    blocks = tuple(tuple(sorted(int(tok) for tok in line.split())) for line in lines[1:])
    return SetSystem(n, t, cap, blocks)
