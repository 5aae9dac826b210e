"""
Certificados algebraicos sobre F_q

Matrices de evaluación de los polinomios p_a y f_i, el tensor de productos
escalares de conjuntos con pocos productos distintos, el tensor de triángulos
todo-rectos, la descomposición en clases de conjuntos sin ángulos rectos y el
rango sobre F_q por eliminación gaussiana con pivote determinista.
"""

import hashlib
import logging
from collections import Counter
from dataclasses import dataclass, field
from itertools import combinations
from typing import Any, Dict, Iterable, List, Optional, Sequence

import numpy as np

from ..utils.validators import DomainError, require, require_dimension, require_prime
from .bounds import few_dot_products_bound, r_upper_main, right_angle_class_bound
from .fqlin import BoundValue, FieldSpec, binomial
from .pointset import PointSet
from .predicates import gram_matrix, self_orth_matrix

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class FqMatrix:
    """Matriz con entradas reducidas mod q"""
    spec: FieldSpec
    entries: np.ndarray

    def __post_init__(self):
        entries = np.asarray(self.entries, dtype=np.int64)
        if entries.ndim != 2:
            raise DomainError("FqMatrix requiere una matriz bidimensional")
        if entries.size and (entries.min() < 0 or entries.max() >= self.spec.q):
            raise DomainError(f"Entradas no reducidas mod {self.spec.q}")
        object.__setattr__(self, "entries", entries)

    @property
    def rows(self) -> int:
        return int(self.entries.shape[0])

    @property
    def cols(self) -> int:
        return int(self.entries.shape[1])

    def is_identity(self) -> bool:
        return self.rows == self.cols and bool(np.array_equal(self.entries, np.eye(self.rows, dtype=np.int64)))

    def first_off_diagonal(self) -> Optional[List[int]]:
        """Primera entrada no nula fuera de la diagonal (orden por filas)"""
        mask = self.entries != 0
        np.fill_diagonal(mask, False)
        hits = np.argwhere(mask)
        return None if hits.size == 0 else [int(hits[0][0]), int(hits[0][1])]

    def digest(self) -> str:
        """sha256 de la cabecera "rows x cols" y las entradas por filas"""
        h = hashlib.sha256(f"{self.rows}x{self.cols}\n".encode())
        for row in self.entries:
            h.update((",".join(str(int(e)) for e in row) + "\n").encode())
        return h.hexdigest()

    def to_lists(self) -> List[List[int]]:
        return [[int(e) for e in row] for row in self.entries]


@dataclass(frozen=True)
class Clause:
    name: str
    passed: bool
    counterexample: Optional[List[int]] = None
    detail: str = ""

    def to_json(self) -> Dict[str, Any]:
        return {
            "clause": self.name,
            "passed": self.passed,
            "counterexample": None if self.counterexample is None else [str(i) for i in self.counterexample],
            "detail": self.detail,
        }


@dataclass
class Certificate:
    """Resultado de un certificado: cláusulas, rango y matriz evaluada"""
    kind: str
    size: int
    clauses: List[Clause] = field(default_factory=list)
    rank: Optional[int] = None
    matrix: Optional[FqMatrix] = None
    notes: Dict[str, str] = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.clauses)

    def clause(self, name: str) -> Clause:
        for c in self.clauses:
            if c.name == name:
                return c
        raise KeyError(name)

    def to_json(self) -> Dict[str, Any]:
        return {
            "schema": 1,
            "certificate": self.kind,
            "size": str(self.size),
            "passed": self.passed,
            "clauses": [c.to_json() for c in self.clauses],
            "rank": None if self.rank is None else str(self.rank),
            "matrix_digest": None if self.matrix is None else self.matrix.digest(),
            "notes": dict(self.notes),
        }


def _power_table(q: int) -> np.ndarray:
    """t[s] = s^{q−1} mod q"""
    return np.array([pow(s, q - 1, q) for s in range(q)], dtype=np.int64)


def indicator_matrix(S: np.ndarray, q: int) -> np.ndarray:
    """1 − S^{q−1} mod q: 1 donde S ≡ 0, 0 en otro caso"""
    return (1 - _power_table(q)[S % q]) % q


def p_eval_matrix(A: PointSet) -> FqMatrix:
    """
    M[i][j] = p_{a_i}(a_j) = 1 − ⟨a_j−a_i, a_j−a_i⟩^{q−1}

    Es la identidad exactamente cuando A no tiene diferencias auto-ortogonales.
    """
    q = A.q
    if len(A) == 0:
        return FqMatrix(A.spec, np.zeros((0, 0), dtype=np.int64))
    G = gram_matrix(A.as_array(), q)
    return FqMatrix(A.spec, indicator_matrix(self_orth_matrix(G, q), q))


def rank_gf(M: FqMatrix) -> int:
    """
    Rango sobre F_q por eliminación gaussiana

    Pivote: en cada columna, de izquierda a derecha, la primera fila aún libre
    con entrada no nula.
    """
    q = M.spec.q
    if M.is_identity():
        return M.rows
    work = M.entries.copy() % q
    rows, cols = work.shape
    rank = 0
    for c in range(cols):
        if rank == rows:
            break
        nonzero = np.flatnonzero(work[rank:, c])
        if nonzero.size == 0:
            continue
        pivot = rank + int(nonzero[0])
        if pivot != rank:
            work[[rank, pivot]] = work[[pivot, rank]]
        work[rank] = (work[rank] * pow(int(work[rank, c]), -1, q)) % q
        factors = work[:, c].copy()
        factors[rank] = 0
        work = (work - np.outer(factors, work[rank])) % q
        rank += 1
    return rank


def lemma_diag_certificate(A: PointSet, alpha: int, R: Iterable[int]) -> Certificate:
    """
    Certificado para conjuntos con ⟨a,a⟩ = α y productos escalares en R

    Cláusulas:
        (i) diagonal: ⟨a,a⟩ = α para todo a
        (ii) dots_in_R: ⟨x,y⟩ ∈ R para x ≠ y
        (iii) tensor_diagonal: T(x,y) = ∏_{r∈R}(⟨x,y⟩ − r) es diagonal con diagonal no nula
        (iv) size_bound: |A| ≤ 2·C(n+|R|, |R|)

    Args:
        A: Conjunto de vectores
        alpha: Residuo α
        R: Conjunto de residuos (α ∉ R)

    Returns:
        Certificate con la matriz T evaluada
    """
    q = A.q
    alpha = alpha % q
    residues = sorted({r % q for r in R})
    if alpha in residues:
        raise DomainError(f"α = {alpha} no puede pertenecer a R = {residues}", field="alpha")

    m = len(A)
    bound = few_dot_products_bound(A.n, len(residues))
    cert = Certificate("lemma-diag", m, notes={"alpha": str(alpha), "R": ",".join(map(str, residues)),
                                               "bound": str(bound)})
    if m == 0:
        cert.clauses = [Clause("diagonal", True), Clause("dots_in_R", True),
                        Clause("tensor_diagonal", True), Clause("size_bound", True)]
        cert.matrix = FqMatrix(A.spec, np.zeros((0, 0), dtype=np.int64))
        return cert

    G = gram_matrix(A.as_array(), q)
    bad = np.flatnonzero(np.diag(G) != alpha)
    cert.clauses.append(Clause("diagonal", bad.size == 0, None if bad.size == 0 else [int(bad[0])]))

    allowed = np.isin(G, residues)
    np.fill_diagonal(allowed, True)
    outside = np.argwhere(np.triu(~allowed, 1))
    cert.clauses.append(Clause("dots_in_R", outside.size == 0,
                               None if outside.size == 0 else [int(outside[0][0]), int(outside[0][1])]))

    T = np.ones_like(G)
    for r in residues:
        T = (T * ((G - r) % q)) % q
    matrix = FqMatrix(A.spec, T)
    off = matrix.first_off_diagonal()
    zero_diag = np.flatnonzero(np.diag(T) == 0)
    if off is not None:
        cert.clauses.append(Clause("tensor_diagonal", False, off, "entrada no nula fuera de la diagonal"))
    elif zero_diag.size:
        cert.clauses.append(Clause("tensor_diagonal", False, [int(zero_diag[0])], "diagonal nula"))
    else:
        cert.clauses.append(Clause("tensor_diagonal", True))

    cert.clauses.append(Clause("size_bound", m <= bound.value, None, f"{m} ≤ {bound}"))
    cert.matrix = matrix
    logger.info(f"lemma-diag |A|={m}: {'OK' if cert.passed else 'FALLA'}")
    return cert


def t_code_certificate(A: PointSet) -> Certificate:
    """
    Matriz de f_i(x) = 1 − (2n − Σ_j 2a_ij x_j)^{q−1} sobre un conjunto de ±1

    Es la identidad exactamente cuando ninguna distancia de Hamming es
    divisible por q (⟨x−y, x−y⟩ = 4 d(x, y)).
    """
    q, n, m = A.q, A.n, len(A)
    V = A.as_array()
    if m and not np.isin(V, [1, q - 1]).all():
        row, col = (int(i) for i in np.argwhere(~np.isin(V, [1, q - 1]))[0])
        raise DomainError(f"entrada no ±1 en el vector {row}, coordenada {col}", field="vectors")

    cert = Certificate("t-code", m, notes={"embedding": "a->1,b->q-1"})
    if m == 0:
        cert.matrix = FqMatrix(A.spec, np.zeros((0, 0), dtype=np.int64))
        cert.rank = 0
        cert.clauses = [Clause("identity", True), Clause("full_rank", True)]
        return cert

    G = gram_matrix(V, q)
    matrix = FqMatrix(A.spec, indicator_matrix((2 * n - 2 * G) % q, q))
    cert.matrix = matrix
    cert.rank = rank_gf(matrix)
    cert.clauses.append(Clause("identity", matrix.is_identity(), matrix.first_off_diagonal()))
    cert.clauses.append(Clause("full_rank", cert.rank == m, None, f"rango {cert.rank} de {m}"))
    logger.info(f"t-code |A|={m}: rango {cert.rank}")
    return cert


def p_matrix_certificate(A: PointSet) -> Certificate:
    """p_eval_matrix con sus cláusulas identidad y rango completo"""
    matrix = p_eval_matrix(A)
    cert = Certificate("p-matrix", len(A), matrix=matrix)
    cert.rank = rank_gf(matrix) if len(A) else 0
    cert.clauses.append(Clause("identity", matrix.is_identity(), matrix.first_off_diagonal()))
    cert.clauses.append(Clause("full_rank", cert.rank == len(A), None, f"rango {cert.rank} de {len(A)}"))
    logger.info(f"p-matrix |A|={len(A)}: rango {cert.rank}")
    return cert


def multilinear_dimension(n: int, q: int, parity_filter: str = "all") -> BoundValue:
    """
    Número de monomios multilineales de grado ≤ q−1 (todos, o solo de grado par)

    Args:
        n: Número de variables
        q: Primo impar
        parity_filter: "all" o "even"

    Returns:
        BoundValue
    """
    require_prime(q)
    require_dimension(n, 1)
    if parity_filter not in ("all", "even"):
        raise DomainError(f"Filtro de paridad desconocido: {parity_filter}", field="parity_filter")
    step = 1 if parity_filter == "all" else 2
    total = sum(binomial(n, i).value for i in range(0, q, step))
    return BoundValue(total, f"multilinear_dimension_{parity_filter}")


def all_right_tensor_certificate(A: PointSet) -> Certificate:
    """
    Evalúa G(x,y,z) = F(x,y,z)·(1 − δ(x,y) − δ(y,z) − δ(z,x)) sobre A³

    F es el producto de los tres factores 1 − ⟨lado, lado⟩^{q−1}. G es diagonal
    con diagonal −2 exactamente cuando A no tiene triángulos todo-rectos.
    """
    q, m = A.q, len(A)
    cert = Certificate("all-right-tensor", m)
    if m == 0:
        cert.clauses = [Clause("diagonal", True), Clause("off_diagonal_zero", True)]
        return cert

    P = p_eval_matrix(A).entries
    minus_two = (-2) % q
    diagonal = (np.diag(P) ** 3 * minus_two) % q
    bad = np.flatnonzero(diagonal != minus_two)
    cert.clauses.append(Clause("diagonal", bad.size == 0, None if bad.size == 0 else [int(bad[0])] * 3,
                               f"G(x,x,x) = {minus_two}"))

    idx = np.arange(m)
    witness = None
    for i in range(m):
        slab = (P[i][:, None] * P * P[:, i][None, :]) % q
        delta = (1 - (idx[:, None] == i).astype(np.int64)
                 - (idx[:, None] == idx[None, :]).astype(np.int64)
                 - (idx[None, :] == i).astype(np.int64))
        values = (slab * delta) % q
        values[i, i] = 0
        hits = np.argwhere(values != 0)
        if hits.size:
            witness = [i, int(hits[0][0]), int(hits[0][1])]
            break

    cert.clauses.append(Clause("off_diagonal_zero", witness is None, witness))
    logger.info(f"all-right-tensor |A|={m}: {'OK' if cert.passed else 'FALLA'}")
    return cert


def _class_clauses(
    label: str,
    members: Sequence[int],
    G: np.ndarray,
    alpha: int,
    beta: int,
    q: int,
    class_bound: int,
) -> List[Clause]:
    forbidden = {alpha, (2 * beta - alpha) % q}
    offending = None
    for x, y in combinations(members, 2):
        if int(G[x, y]) in forbidden:
            offending = [x, y]
            break
    return [
        Clause(f"{label}_dots", offending is None, offending,
               f"productos fuera de {{{', '.join(map(str, sorted(forbidden)))}}}"),
        Clause(f"{label}_size", len(members) <= class_bound, None, f"{len(members)} ≤ {class_bound}"),
    ]


def right_angle_partition_certificate(A: PointSet) -> Certificate:
    """
    Descomposición en clases de un conjunto sin ángulos rectos

    α es el valor de ⟨x,x⟩ más frecuente (el menor en empates), A^α sus
    elementos y u el primero de ellos; A^α_β = {x ∈ A^α∖{u} : ⟨u,x⟩ = β}.
    Para β ≠ α los productos dentro de cada clase evitan {α, 2β−α} y la clase
    mide a lo sumo 2·C(n+q−2, q−2). A^α_α se vuelve a partir con v, su primer
    elemento, y A^α_{α,α} debe ser vacía.

    Returns:
        Certificate con una cláusula por clase y las cotas globales
    """
    q, n, m = A.q, A.n, len(A)
    cert = Certificate("right-angle-partition", m)
    if m == 0:
        cert.clauses.append(Clause("total", True))
        return cert

    G = gram_matrix(A.as_array(), q)
    norms = [int(G[i, i]) for i in range(m)]
    counts = Counter(norms)
    alpha = min(counts, key=lambda a: (-counts[a], a))
    A_alpha = [i for i in range(m) if norms[i] == alpha]
    u = A_alpha[0]
    class_bound = right_angle_class_bound(n, q).value
    cert.notes.update({"alpha": str(alpha), "u": str(u), "A_alpha": str(len(A_alpha))})

    classes: Dict[int, List[int]] = {beta: [] for beta in range(q)}
    for x in A_alpha[1:]:
        classes[int(G[u, x])].append(x)
    for beta in range(q):
        if beta != alpha:
            cert.clauses.extend(_class_clauses(f"A_{beta}", classes[beta], G, alpha, beta, q, class_bound))

    inner = classes[alpha]
    if inner:
        v = inner[0]
        cert.notes["v"] = str(v)
        subclasses: Dict[int, List[int]] = {beta: [] for beta in range(q)}
        for x in inner[1:]:
            subclasses[int(G[v, x])].append(x)
        cert.clauses.append(Clause("A_alpha_alpha_empty", not subclasses[alpha],
                                   subclasses[alpha][:1] or None))
        for beta in range(q):
            if beta != alpha:
                cert.clauses.extend(_class_clauses(f"A_alpha_{beta}", subclasses[beta], G, alpha, beta, q,
                                                   class_bound))

    main = r_upper_main(n, q).value
    cert.clauses.append(Clause("pigeonhole", m <= q * len(A_alpha), None, f"{m} ≤ {q}·{len(A_alpha)}"))
    cert.clauses.append(Clause("total", q * len(A_alpha) <= main, None, f"{q * len(A_alpha)} ≤ {main}"))
    logger.info(f"right-angle-partition |A|={m}, α={alpha}: {'OK' if cert.passed else 'FALLA'}")
    return cert


CERTIFICATES = {
    "p-matrix": p_matrix_certificate,
    "t-code": t_code_certificate,
    "all-right-tensor": all_right_tensor_certificate,
    "right-angle-partition": right_angle_partition_certificate,
}


def run_certificate(kind: str, A: PointSet, alpha: Optional[int] = None, R: Optional[Iterable[int]] = None) -> Certificate:
    """Despacha por nombre; lemma-diag requiere alpha y R"""
    key = kind.strip().lower()
    if key == "lemma-diag":
        require(alpha is not None and R is not None, "lemma-diag requiere alpha y R", field="alpha")
        return lemma_diag_certificate(A, alpha, R)
    if key not in CERTIFICATES:
        raise DomainError(f"Certificado desconocido: {kind}", field="tipo")
    return CERTIFICATES[key](A)
