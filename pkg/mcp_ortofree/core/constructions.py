"""
Construcciones explícitas de conjuntos sin configuraciones prohibidas

Cada constructor devuelve un PointSet con su procedencia y la propiedad que
afirma evitar. El orden de salida es determinista: clases en el orden de la
demostración correspondiente y, dentro de cada clase, orden lexicográfico de
las posiciones elegidas (itertools.combinations).
"""

import logging
from fractions import Fraction
from itertools import combinations, product
from typing import Any, Callable, Dict, Iterable, List, Optional, Sequence, Tuple

from ..utils.validators import DomainError, require, require_dimension, require_prime
from .fqlin import FieldSpec, FVec
from .kinds import ConfigurationKind
from .pointset import PointSet
from .setfamily import char_vectors, greedy_packing

logger = logging.getLogger(__name__)

DEFAULT_ALPHABET = (1, 0)


def _positions_vector(n: int, positions: Iterable[int], inside: int, outside: int, spec: FieldSpec) -> FVec:
    chosen = set(positions)
    return FVec(spec, tuple(inside if i in chosen else outside for i in range(n)))


def _finish(spec, n, vectors, name, params, claimed, k=None) -> PointSet:
    result = PointSet(spec, n, tuple(vectors), {"name": name, "params": params}, claimed, k)
    logger.info(f"Construcción {name} {params}: {len(result)} vectores")
    return result


def corner_parameters(q: int, k: int) -> Tuple[int, Fraction]:
    """t = floor(kq/(2k−1)) y cap = (k−1)t/k"""
    t = (k * q) // (2 * k - 1)
    return t, Fraction((k - 1) * t, k)


def corner_free_set(n: int, q: int, k: int, order: str = "lex", seed: Optional[int] = None) -> PointSet:
    """
    Conjunto sin k-esquinas: vectores característicos de una familia t-uniforme
    con intersecciones < (k−1)t/k

    Args:
        n: Dimensión
        q: Primo impar
        k: Número de brazos (k ≥ 2)
        order: Orden del empaquetamiento voraz
        seed: Semilla si order="shuffled"

    Returns:
        PointSet que afirma evitar k-esquinas
    """
    require_prime(q)
    require_dimension(k, 2, "k")
    require_dimension(n, 1)
    t, cap = corner_parameters(q, k)
    require(n >= t, f"se requiere n ≥ t = floor(kq/(2k−1)) = {t} (n={n})", field="n")
    system = greedy_packing(n, t, cap, order=order, seed=seed)
    vectors = char_vectors(system, q).vectors
    params = {"n": n, "q": q, "k": k, "t": t, "cap": cap}
    return _finish(FieldSpec(q), n, vectors, "corner-free", params, ConfigurationKind.K_RIGHT_CORNER, k)


def right_angle_free_set(n: int, q: int) -> PointSet:
    """corner_free_set con k = 2"""
    base = corner_free_set(n, q, 2)
    t, cap = corner_parameters(q, 2)
    return _finish(base.spec, n, base.vectors, "right-angle-free",
                   {"n": n, "q": q, "t": t, "cap": cap}, ConfigurationKind.RIGHT_ANGLE)


def standard_basis_set(n: int, q: int) -> PointSet:
    """{e_1, ..., e_n}"""
    require_dimension(n, 1)
    spec = FieldSpec(q)
    vectors = [_positions_vector(n, [i], 1, 0, spec) for i in range(n)]
    return _finish(spec, n, vectors, "standard-basis", {"n": n, "q": q}, ConfigurationKind.RIGHT_ANGLE)


def s_lower_basic(n: int, q: int) -> PointSet:
    """Todos los vectores 0/1 de peso exactamente q−1"""
    require_prime(q)
    require_dimension(n, 1)
    require(n >= q - 1, f"se requiere n ≥ q−1 = {q - 1} (n={n})", field="n")
    spec = FieldSpec(q)
    vectors = [_positions_vector(n, pos, 1, 0, spec) for pos in combinations(range(n), q - 1)]
    return _finish(spec, n, vectors, "s-lower-basic", {"n": n, "q": q},
                   ConfigurationKind.SELF_ORTHOGONAL_DIFF)


def solve_ab(n: int, q: int) -> Optional[Tuple[int, int]]:
    """
    Menor solución lexicográfica (a, b), a ≠ b, de (n+2)b² = 2a² − 2a + 1 en F_q

    Returns:
        (a, b) o None si no hay solución con a ≠ b
    """
    require_prime(q)
    for a, b in product(range(q), repeat=2):
        if a != b and ((n + 2) * b * b - (2 * a * a - 2 * a + 1)) % q == 0:
            return a, b
    return None


def s_lower_augmented(n: int, q: int) -> PointSet:
    """
    A_1 ∪ A_2: A_1 = pesos q−1 en {0,1}; A_2 = vectores con q−2 entradas a y
    n−q+2 entradas b, con (a, b) de solve_ab
    """
    require_prime(q)
    require(n >= q - 1, f"se requiere n ≥ q−1 = {q - 1} (n={n})", field="n")
    solution = solve_ab(n, q)
    if solution is None:
        raise DomainError(
            f"no existe solución (a,b) con a ≠ b de (n+2)b² = 2a²−2a+1 para n={n}, q={q}",
            field="n",
        )
    a, b = solution
    basic = s_lower_basic(n, q)
    spec = basic.spec
    second = [_positions_vector(n, pos, a, b, spec) for pos in combinations(range(n), q - 2)]

    overlap = set(basic.vectors) & set(second)
    if overlap:
        raise DomainError(
            f"A_1 y A_2 se solapan para n={n}, q={q}, (a,b)=({a},{b}): "
            f"{sorted(v.to_text() for v in overlap)[0]}",
            field="n",
        )
    return _finish(spec, n, list(basic.vectors) + second, "s-lower-augmented",
                   {"n": n, "q": q, "a": a, "b": b}, ConfigurationKind.SELF_ORTHOGONAL_DIFF)


def _s3_classes(n: int, spec: FieldSpec) -> List[FVec]:
    vectors = [_positions_vector(n, pos, 1, 0, spec) for pos in combinations(range(n), 2)]
    vectors += [_positions_vector(n, [i], 0, 2, spec) for i in range(n)]
    vectors += [_positions_vector(n, [i], 1, 2, spec) for i in range(n)]
    vectors += [_positions_vector(n, [i], 0, 1, spec) for i in range(n)]
    vectors.append(FVec(spec, (0,) * n))
    vectors.append(FVec(spec, (2,) * n))
    return vectors


def s3_exact(n: int) -> PointSet:
    """Conjunto de tamaño C(n+3,2)−1 en F_3^n para n ≡ 2 mod 3"""
    require_dimension(n, 2)
    require(n % 3 == 2, f"se requiere n ≡ 2 mod 3 (n={n})", field="n")
    spec = FieldSpec(3)
    return _finish(spec, n, _s3_classes(n, spec), "s3-exact", {"n": n, "q": 3},
                   ConfigurationKind.SELF_ORTHOGONAL_DIFF)


def s3_padded(n: int) -> PointSet:
    """s3_exact en las primeras n−1 (n ≡ 0) o n−2 (n ≡ 1) coordenadas, resto fijo en 0"""
    require_dimension(n, 3)
    require(n % 3 != 2, f"n ≡ 2 mod 3: use s3-exact (n={n})", field="n")
    core = n - 1 if n % 3 == 0 else n - 2
    spec = FieldSpec(3)
    pad = (0,) * (n - core)
    vectors = [FVec(spec, v.entries + pad) for v in _s3_classes(core, spec)]
    return _finish(spec, n, vectors, "s3-padded", {"n": n, "q": 3, "core": core},
                   ConfigurationKind.SELF_ORTHOGONAL_DIFF)


def binary_distance_code(n: int) -> PointSet:
    """Peso 2 más el cero en {0,1}^n ⊂ F_3^n: ninguna distancia divisible por 3"""
    require_dimension(n, 2)
    spec = FieldSpec(3)
    vectors = [FVec(spec, (0,) * n)]
    vectors += [_positions_vector(n, pos, 1, 0, spec) for pos in combinations(range(n), 2)]
    return _finish(spec, n, vectors, "binary-distance", {"n": n, "q": 3},
                   ConfigurationKind.DIVISIBLE_HAMMING)


def _check_alphabet(alphabet: Sequence[int], q: int) -> Tuple[int, int]:
    require(len(alphabet) == 2, "el alfabeto debe tener dos símbolos", field="alphabet")
    a, b = alphabet[0] % q, alphabet[1] % q
    require(a != b, f"los símbolos del alfabeto deben ser distintos mod {q}", field="alphabet")
    return a, b


def _words_with_count(n: int, count: int, symbol: int, other: int, spec: FieldSpec) -> List[FVec]:
    return [_positions_vector(n, pos, symbol, other, spec) for pos in combinations(range(n), count)]


def t_lower_even(n: int, q: int, alphabet: Sequence[int] = DEFAULT_ALPHABET) -> PointSet:
    """Palabras de {a,b}^n con número de a par y ≤ q−1"""
    require_prime(q)
    require_dimension(n, 1)
    a, b = _check_alphabet(alphabet, q)
    spec = FieldSpec(q)
    vectors: List[FVec] = []
    for count in range(0, min(q - 1, n) + 1, 2):
        vectors += _words_with_count(n, count, a, b, spec)
    return _finish(spec, n, vectors, "t-lower-even", {"n": n, "q": q, "a": a, "b": b},
                   ConfigurationKind.DIVISIBLE_HAMMING)


def t_lower_augmented(n: int, q: int, alphabet: Sequence[int] = DEFAULT_ALPHABET) -> PointSet:
    """t_lower_even más las palabras con número de b impar y ≤ q−2 (n ≡ −1 mod q)"""
    require_prime(q)
    require_dimension(n, 1)
    require((n + 1) % q == 0, f"se requiere n ≡ −1 mod q (n={n}, q={q})", field="n")
    base = t_lower_even(n, q, alphabet)
    a, b = _check_alphabet(alphabet, q)
    extra: List[FVec] = []
    for count in range(1, min(q - 2, n) + 1, 2):
        extra += _words_with_count(n, count, b, a, base.spec)
    if set(extra) & set(base.vectors):
        raise DomainError(f"las dos clases de palabras se solapan (n={n}, q={q})", field="n")
    return _finish(base.spec, n, list(base.vectors) + extra, "t-lower-augmented",
                   {"n": n, "q": q, "a": a, "b": b}, ConfigurationKind.DIVISIBLE_HAMMING)


def to_pm_one(A: PointSet, alphabet: Sequence[int] = DEFAULT_ALPHABET) -> PointSet:
    """Inmersión ±1: a ↦ +1, b ↦ −1 ≡ q−1"""
    q = A.q
    a, b = _check_alphabet(alphabet, q)
    mapping = {a: 1, b: q - 1}
    vectors = []
    for v in A.vectors:
        if any(e not in mapping for e in v.entries):
            raise DomainError(f"el vector {v.to_text()} no está en {{{a},{b}}}^n", field="alphabet")
        vectors.append(FVec(A.spec, tuple(mapping[e] for e in v.entries)))
    provenance = {"name": f"{A.provenance.get('name', 'manual')}+pm1",
                  "params": dict(A.provenance.get("params", {}))}
    return PointSet(A.spec, A.n, tuple(vectors), provenance, A.claimed_property, A.claimed_k)


# nombre CLI -> (constructor, parámetros requeridos)
CONSTRUCTIONS: Dict[str, Tuple[Callable[..., PointSet], Tuple[str, ...]]] = {
    "corner-free": (corner_free_set, ("n", "q", "k")),
    "right-angle-free": (right_angle_free_set, ("n", "q")),
    "standard-basis": (standard_basis_set, ("n", "q")),
    "s-lower-basic": (s_lower_basic, ("n", "q")),
    "s-lower-augmented": (s_lower_augmented, ("n", "q")),
    "s3-exact": (s3_exact, ("n",)),
    "s3-padded": (s3_padded, ("n",)),
    "binary-distance": (binary_distance_code, ("n",)),
    "t-lower-even": (t_lower_even, ("n", "q")),
    "t-lower-augmented": (t_lower_augmented, ("n", "q")),
}


def build_construction(name: str, **params: Any) -> PointSet:
    """
    Construye por nombre, con los parámetros que la construcción requiere

    Args:
        name: Nombre registrado en CONSTRUCTIONS
        **params: n, q, k (los sobrantes se ignoran)

    Returns:
        PointSet
    """
    key = name.strip().lower().replace("_", "-")
    if key not in CONSTRUCTIONS:
        raise DomainError(f"Construcción desconocida: {name}", field="name")
    builder, required = CONSTRUCTIONS[key]
    missing = [p for p in required if params.get(p) is None]
    if missing:
        raise DomainError(f"{key} requiere los parámetros: {', '.join(missing)}", field=missing[0])
    return builder(**{p: params[p] for p in required})
