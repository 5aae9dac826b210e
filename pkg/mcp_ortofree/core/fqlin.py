"""
Aritmética sobre F_q (q primo impar) y combinatoria exacta

Este módulo provee los tipos básicos del toolkit: FieldSpec, FVec y BoundValue,
las operaciones de cuerpo, el producto escalar, coeficientes binomiales exactos
y el formato de texto de vectores (cabecera `q=<q> n=<n>` y un vector por línea).
"""

import logging
from dataclasses import dataclass
from functools import total_ordering
from math import comb
from typing import Iterable, List, Sequence, Tuple

from ..utils.validators import FieldArithmeticError, FormatError, require_prime

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class FieldSpec:
    """Cuerpo primo F_q"""
    q: int

    def __post_init__(self):
        require_prime(self.q)

    def reduce(self, value: int) -> int:
        return value % self.q


FIELD_OPS = ("add", "sub", "mul", "neg", "inv", "pow")


def fe_arith(op: str, a: int, b: int, q: int) -> int:
    """
    Operación escalar en F_q

    Args:
        op: Una de add, sub, mul, neg, inv, pow (para neg/inv se ignora b;
            para pow, b es el exponente entero)
        a: Residuo reducido
        b: Residuo reducido o exponente
        q: Módulo primo

    Returns:
        Residuo reducido mod q
    """
    if op == "add":
        return (a + b) % q
    if op == "sub":
        return (a - b) % q
    if op == "mul":
        return (a * b) % q
    if op == "neg":
        return (-a) % q
    if op == "inv":
        if a % q == 0:
            raise FieldArithmeticError(f"El 0 no tiene inverso en F_{q}", field="a")
        return pow(a, -1, q)
    if op == "pow":
        if b < 0:
            return pow(fe_arith("inv", a, 0, q), -b, q)
        return pow(a, b, q)
    raise FieldArithmeticError(f"Operación desconocida: {op}", field="op")


@dataclass(frozen=True)
class FVec:
    """Vector de F_q^n con entradas reducidas"""
    spec: FieldSpec
    entries: Tuple[int, ...]

    def __post_init__(self):
        if len(self.entries) < 1:
            raise FieldArithmeticError("Un vector necesita al menos una coordenada", field="entries")
        q = self.spec.q
        if any(not 0 <= e < q for e in self.entries):
            raise FieldArithmeticError(f"Entradas no reducidas mod {q}: {self.entries}", field="entries")

    @property
    def n(self) -> int:
        return len(self.entries)

    def __len__(self) -> int:
        return len(self.entries)

    def __iter__(self):
        return iter(self.entries)

    def __getitem__(self, i: int) -> int:
        return self.entries[i]

    def __add__(self, other: "FVec") -> "FVec":
        return vadd(self, other)

    def __sub__(self, other: "FVec") -> "FVec":
        return vsub(self, other)

    def to_text(self) -> str:
        return ",".join(str(e) for e in self.entries)


def fvec(values: Iterable[int], spec: FieldSpec) -> FVec:
    """Construye un FVec reduciendo cada entrada mod q"""
    return FVec(spec, tuple(int(v) % spec.q for v in values))


def zero_vector(n: int, spec: FieldSpec) -> FVec:
    return FVec(spec, (0,) * n)


def basis_vector(i: int, n: int, spec: FieldSpec) -> FVec:
    """e_i con i en base 0"""
    return FVec(spec, tuple(1 if j == i else 0 for j in range(n)))


def _check_compatible(x: FVec, y: FVec) -> None:
    if x.spec != y.spec:
        raise FieldArithmeticError(f"Cuerpos distintos: F_{x.spec.q} y F_{y.spec.q}")
    if len(x) != len(y):
        raise FieldArithmeticError(f"Longitudes distintas: {len(x)} y {len(y)}")


def dot(x: FVec, y: FVec) -> int:
    """Producto escalar estándar ⟨x,y⟩ mod q"""
    _check_compatible(x, y)
    return sum(a * b for a, b in zip(x.entries, y.entries)) % x.spec.q


def vsub(x: FVec, y: FVec) -> FVec:
    _check_compatible(x, y)
    q = x.spec.q
    return FVec(x.spec, tuple((a - b) % q for a, b in zip(x.entries, y.entries)))


def vadd(x: FVec, y: FVec) -> FVec:
    _check_compatible(x, y)
    q = x.spec.q
    return FVec(x.spec, tuple((a + b) % q for a, b in zip(x.entries, y.entries)))


def scale(c: int, x: FVec) -> FVec:
    q = x.spec.q
    return FVec(x.spec, tuple((c * a) % q for a in x.entries))


def weight(x: FVec) -> int:
    """Número de coordenadas no nulas"""
    return sum(1 for e in x.entries if e)


@total_ordering
@dataclass(frozen=True)
class BoundValue:
    """Entero exacto no negativo producido por una fórmula con nombre"""
    value: int
    formula_id: str

    def __post_init__(self):
        if self.value < 0:
            raise FieldArithmeticError(f"{self.formula_id} produjo un valor negativo: {self.value}")

    def __int__(self) -> int:
        return self.value

    def __index__(self) -> int:
        return self.value

    def __eq__(self, other) -> bool:
        if isinstance(other, BoundValue):
            return self.value == other.value
        if isinstance(other, int):
            return self.value == other
        return NotImplemented

    def __lt__(self, other) -> bool:
        if isinstance(other, BoundValue):
            return self.value < other.value
        if isinstance(other, int):
            return self.value < other
        return NotImplemented

    def __hash__(self) -> int:
        return hash(self.value)

    def __str__(self) -> str:
        return str(self.value)


def binomial(n: int, k: int) -> BoundValue:
    """C(n,k) exacto; 0 fuera de rango"""
    if n < 0 or k < 0 or k > n:
        return BoundValue(0, "binomial")
    return BoundValue(comb(n, k), "binomial")


def monomial_count(n: int, d: int) -> BoundValue:
    """Número de monomios en n variables de grado total ≤ d: C(n+d, d)"""
    return BoundValue(binomial(n + d, d).value, "monomial_count")


def dump_vectors(vectors: Sequence[FVec], spec: FieldSpec, n: int) -> str:
    """
    Serializa vectores en el formato de texto del toolkit

    Args:
        vectors: Vectores a escribir (todos de longitud n)
        spec: Cuerpo
        n: Longitud

    Returns:
        Texto con cabecera `q=<q> n=<n>` y un vector por línea
    """
    lines = [f"q={spec.q} n={n}"]
    for v in vectors:
        if len(v) != n or v.spec != spec:
            raise FormatError(f"Vector incompatible con q={spec.q} n={n}: {v.to_text()}")
        lines.append(v.to_text())
    return "\n".join(lines) + "\n"


def parse_vectors(text: str) -> Tuple[FieldSpec, int, List[FVec]]:
    """
    Lee el formato de texto de vectores

    Args:
        text: Contenido del archivo

    Returns:
        Tuple (spec, n, vectores)
    """
    lines = [line.strip() for line in text.splitlines() if line.strip()]
    if not lines:
        raise FormatError("Archivo de vectores vacío: falta la cabecera q=<q> n=<n>")

    header = dict(part.split("=", 1) for part in lines[0].split() if "=" in part)
    try:
        q = int(header["q"])
        n = int(header["n"])
    except (KeyError, ValueError):
        raise FormatError(f"Cabecera inválida: {lines[0]!r}")
    spec = FieldSpec(q)

    vectors = []
    for lineno, line in enumerate(lines[1:], start=2):
        try:
            values = [int(tok) for tok in line.split(",")]
        except ValueError:
            raise FormatError(f"Línea {lineno}: entradas no numéricas: {line!r}")
        if len(values) != n:
            raise FormatError(f"Línea {lineno}: se esperaban {n} entradas, hay {len(values)}")
        if any(not 0 <= v < q for v in values):
            raise FormatError(f"Línea {lineno}: entradas fuera de [0, {q - 1}]")
        vectors.append(FVec(spec, tuple(values)))

    logger.debug(f"Leídos {len(vectors)} vectores de F_{q}^{n}")
    return spec, n, vectors
