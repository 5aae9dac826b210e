"""
Evaluación exacta de cotas superiores e inferiores

Todas las fórmulas se evalúan con enteros de precisión arbitraria y solo a
través de binomial(). Las cotas inferiores asintóticas se reportan como
"término principal" (el factor 1−o(1) nunca se interpreta numéricamente).
"""

import logging
from dataclasses import dataclass
from typing import Any, Callable, Dict, Iterable, List, Optional, Tuple

from ..utils.validators import DomainError, require, require_dimension, require_prime
from .constructions import corner_parameters, solve_ab
from .fqlin import BoundValue, binomial
from .kinds import ConfigurationKind
from .setfamily import intersection_ell

logger = logging.getLogger(__name__)

UPPER = "upper"
LOWER = "lower"


def _c(n: int, k: int) -> int:
    return binomial(n, k).value


def _check(n: int, q: int) -> None:
    require_prime(q)
    require_dimension(n, 1)


def r_upper_main(n: int, q: int) -> BoundValue:
    """4(q−1)q·C(n+q−2, q−2) + 2q"""
    _check(n, q)
    return BoundValue(4 * (q - 1) * q * _c(n + q - 2, q - 2) + 2 * q, "r_upper_main")


def r_upper_ge(n: int, q: int) -> BoundValue:
    """C(n+q, q−1) + 3"""
    _check(n, q)
    return BoundValue(_c(n + q, q - 1) + 3, "r_upper_ge")


def r_upper_naslund(n: int, q: int) -> BoundValue:
    """C(n+q, q−1) + 2 − C(n+q, q−3); solo donde el valor es no negativo"""
    _check(n, q)
    value = _c(n + q, q - 1) + 2 - _c(n + q, q - 3)
    if value < 0:
        raise DomainError(f"r_upper_naslund({n},{q}) = {value} < 0: la fórmula no aplica", field="n")
    return BoundValue(value, "r_upper_naslund")


def r_elementary_lower(n: int, q: int) -> int:
    """max(q, n): una recta {t·e_1} y la base estándar no tienen ángulos rectos"""
    return max(q, n)


def r_naslund_hypothesis(n: int, q: int) -> bool:
    """La cota de Naslund solo se usa donde supera a r_elementary_lower"""
    return r_upper_naslund(n, q).value >= r_elementary_lower(n, q)


def corner_upper_naslund(n: int, q: int, k: int) -> BoundValue:
    """C(n+(k−1)q, (k−1)(q−1))"""
    _check(n, q)
    require_dimension(k, 2, "k")
    return BoundValue(_c(n + (k - 1) * q, (k - 1) * (q - 1)), "corner_upper_naslund")


def corner_naslund_hypothesis(q: int, k: int) -> bool:
    """La cota de k-esquinas se enuncia para q > k"""
    return q > k


def corner_lower_main_term(n: int, q: int, k: int) -> BoundValue:
    """floor(C(n, ℓ) / C(t, ℓ)) con t = floor(kq/(2k−1)) y ℓ = ceil((k−1)t/k)"""
    _check(n, q)
    require_dimension(k, 2, "k")
    t, cap = corner_parameters(q, k)
    ell = intersection_ell(cap)
    denominator = _c(t, ell)
    require(denominator > 0, f"C(t, ℓ) = 0 para t={t}, ℓ={ell}", field="q")
    return BoundValue(_c(n, ell) // denominator, "corner_lower_main_term")


def allright_upper(n: int, q: int) -> BoundValue:
    """C(n+2q−1, 2q−2) + 2·C(n+q, q−1)"""
    _check(n, q)
    return BoundValue(_c(n + 2 * q - 1, 2 * q - 2) + 2 * _c(n + q, q - 1), "allright_upper")


def s_upper(n: int, q: int) -> BoundValue:
    """C(n+q, q−1) − C(n+q−2, q−3)"""
    _check(n, q)
    return BoundValue(_c(n + q, q - 1) - _c(n + q - 2, q - 3), "s_upper")


def s_lower_basic_term(n: int, q: int) -> BoundValue:
    """C(n, q−1): tamaño de s_lower_basic"""
    _check(n, q)
    require(n >= q - 1, f"se requiere n ≥ q−1 = {q - 1} (n={n})", field="n")
    return BoundValue(_c(n, q - 1), "s_lower_basic_term")


def s_lower_augmented_term(n: int, q: int) -> BoundValue:
    """C(n, q−1) + C(n, q−2), donde la ecuación en (a, b) tiene solución"""
    _check(n, q)
    require(n >= q - 1, f"se requiere n ≥ q−1 = {q - 1} (n={n})", field="n")
    require(solve_ab(n, q) is not None, f"sin solución (a,b) para n={n}, q={q}", field="n")
    return BoundValue(_c(n, q - 1) + _c(n, q - 2), "s_lower_augmented_term")


def s3_exact_term(n: int) -> BoundValue:
    """C(n+3, 2) − 1 para n ≡ 2 mod 3"""
    require_dimension(n, 2)
    require(n % 3 == 2, f"se requiere n ≡ 2 mod 3 (n={n})", field="n")
    return BoundValue(_c(n + 3, 2) - 1, "s3_exact_term")


def s3_padded_term(n: int) -> BoundValue:
    """C(n+2, 2) − 1 (n ≡ 0 mod 3) o C(n+1, 2) − 1 (n ≡ 1 mod 3)"""
    require_dimension(n, 3)
    require(n % 3 != 2, f"n ≡ 2 mod 3: use s3_exact_term (n={n})", field="n")
    top = n + 2 if n % 3 == 0 else n + 1
    return BoundValue(_c(top, 2) - 1, "s3_padded_term")


def _binomial_sum(n: int, indices: Iterable[int]) -> int:
    return sum(_c(n, i) for i in indices)


def t_upper_general(n: int, q: int) -> BoundValue:
    """Σ_{i=0}^{q−1} C(n, i)"""
    _check(n, q)
    return BoundValue(_binomial_sum(n, range(q)), "t_upper_general")


def t_upper_divisible(n: int, q: int) -> BoundValue:
    """Σ_{i par, i ≤ q−1} C(n, i), para q | n"""
    _check(n, q)
    require(n % q == 0, f"se requiere n ≡ 0 mod q (n={n}, q={q})", field="n")
    return BoundValue(_binomial_sum(n, range(0, q, 2)), "t_upper_divisible")


def t_lower_general(n: int, q: int) -> BoundValue:
    """Σ_{i par, i ≤ q−1} C(n, i)"""
    _check(n, q)
    return BoundValue(_binomial_sum(n, range(0, q, 2)), "t_lower_general")


def t_lower_special(n: int, q: int) -> BoundValue:
    """Σ_{i=0}^{q−1} C(n, i), para n ≡ −1 mod q"""
    _check(n, q)
    require((n + 1) % q == 0, f"se requiere n ≡ −1 mod q (n={n}, q={q})", field="n")
    return BoundValue(_binomial_sum(n, range(q)), "t_lower_special")


def few_dot_products_bound(n: int, r: int) -> BoundValue:
    """2·C(n+r, r): conjuntos con ⟨a,a⟩ = α y a lo sumo r productos escalares distintos"""
    require_dimension(n, 1)
    require_dimension(r, 0, "r")
    return BoundValue(2 * _c(n + r, r), "few_dot_products_bound")


def right_angle_class_bound(n: int, q: int) -> BoundValue:
    """2·C(n+q−2, q−2): cota de cada clase A^α_β en la descomposición por productos con u"""
    _check(n, q)
    return BoundValue(2 * _c(n + q - 2, q - 2), "right_angle_class_bound")


@dataclass(frozen=True)
class BoundReport:
    """Fila de una tabla de cotas"""
    formula_id: str
    prop: ConfigurationKind
    n: int
    q: int
    k: Optional[int]
    side: str
    value: BoundValue
    main_term: bool = False
    floor_division: bool = False
    exact: bool = False
    hypothesis: Optional[bool] = None

    def to_row(self) -> Dict[str, str]:
        """Fila con todas las celdas como texto"""
        return {
            "property": self.prop.value,
            "n": str(self.n),
            "q": str(self.q),
            "k": "" if self.k is None else str(self.k),
            "formula_id": self.formula_id,
            "side": self.side,
            "value": str(self.value),
            "main_term": str(self.main_term).lower(),
            "floor_division": str(self.floor_division).lower(),
            "exact": str(self.exact).lower(),
            "hypothesis": "" if self.hypothesis is None else str(self.hypothesis).lower(),
        }


TABLE_COLUMNS = (
    "property", "n", "q", "k", "formula_id", "side", "value",
    "main_term", "floor_division", "exact", "hypothesis",
)

Evaluator = Callable[[int, int, int], BoundValue]

# propiedad -> [(formula_id, lado, evaluador(n, q, k))]
FORMULAS: Dict[ConfigurationKind, List[Tuple[str, str, Evaluator]]] = {
    ConfigurationKind.RIGHT_ANGLE: [
        ("r_upper_main", UPPER, lambda n, q, k: r_upper_main(n, q)),
        ("r_upper_ge", UPPER, lambda n, q, k: r_upper_ge(n, q)),
        ("r_upper_naslund", UPPER, lambda n, q, k: r_upper_naslund(n, q)),
        ("corner_lower_main_term", LOWER, lambda n, q, k: corner_lower_main_term(n, q, 2)),
    ],
    ConfigurationKind.K_RIGHT_CORNER: [
        ("corner_upper_naslund", UPPER, corner_upper_naslund),
        ("corner_lower_main_term", LOWER, corner_lower_main_term),
    ],
    ConfigurationKind.ALL_RIGHT_TRIANGLE: [
        ("allright_upper", UPPER, lambda n, q, k: allright_upper(n, q)),
        ("s_lower_basic_term", LOWER, lambda n, q, k: s_lower_basic_term(n, q)),
    ],
    ConfigurationKind.SELF_ORTHOGONAL_DIFF: [
        ("s_upper", UPPER, lambda n, q, k: s_upper(n, q)),
        ("s_lower_basic_term", LOWER, lambda n, q, k: s_lower_basic_term(n, q)),
        ("s_lower_augmented_term", LOWER, lambda n, q, k: s_lower_augmented_term(n, q)),
        ("s3_exact_term", LOWER, lambda n, q, k: _only_q3(q, s3_exact_term, n)),
        ("s3_padded_term", LOWER, lambda n, q, k: _only_q3(q, s3_padded_term, n)),
    ],
    ConfigurationKind.DIVISIBLE_HAMMING: [
        ("t_upper_general", UPPER, lambda n, q, k: t_upper_general(n, q)),
        ("t_upper_divisible", UPPER, lambda n, q, k: t_upper_divisible(n, q)),
        ("t_lower_general", LOWER, lambda n, q, k: t_lower_general(n, q)),
        ("t_lower_special", LOWER, lambda n, q, k: t_lower_special(n, q)),
    ],
}


def _only_q3(q: int, evaluator: Callable[[int], BoundValue], n: int) -> BoundValue:
    require(q == 3, "fórmula válida solo para q = 3", field="q")
    return evaluator(n)


def upper_bound(prop: ConfigurationKind, n: int, q: int, k: int = 2) -> BoundValue:
    """Mínimo de las cotas superiores aplicables cuya hipótesis se cumple"""
    values = [
        v for _, side, v, hypothesis in _evaluate_all(ConfigurationKind.parse(prop), n, q, k)
        if side == UPPER and hypothesis is not False
    ]
    require(bool(values), f"ninguna cota superior aplica a {prop} (n={n}, q={q})")
    return min(values)


def lower_bound(prop: ConfigurationKind, n: int, q: int, k: int = 2) -> Optional[BoundValue]:
    """Máximo de las cotas inferiores aplicables que no son término principal; None si no hay"""
    values = [
        v for formula_id, side, v, _ in _evaluate_all(ConfigurationKind.parse(prop), n, q, k)
        if side == LOWER and formula_id != "corner_lower_main_term"
    ]
    return max(values) if values else None


def formula_hypothesis(formula_id: str, n: int, q: int, k: int) -> Optional[bool]:
    """None si la fórmula no tiene hipótesis adicional"""
    if formula_id == "corner_upper_naslund":
        return corner_naslund_hypothesis(q, k)
    if formula_id == "r_upper_naslund":
        return r_naslund_hypothesis(n, q)
    return None


def _evaluate_all(
    prop: ConfigurationKind, n: int, q: int, k: int,
) -> List[Tuple[str, str, BoundValue, Optional[bool]]]:
    results = []
    for formula_id, side, evaluator in FORMULAS[prop]:
        try:
            value = evaluator(n, q, k)
        except DomainError as e:
            logger.debug(f"{formula_id}(n={n}, q={q}, k={k}) omitida: {e.message}")
            continue
        hypothesis = formula_hypothesis(formula_id, n, q, k)
        if hypothesis is False:
            logger.debug(f"{formula_id}(n={n}, q={q}, k={k}) = {value}: hipótesis no satisfecha")
        results.append((formula_id, side, value, hypothesis))
    return results


def bounds_table(
    prop: Any,
    n_range: Iterable[int],
    q_list: Iterable[int],
    k: Optional[int] = None,
) -> List[BoundReport]:
    """
    Tabla de todas las fórmulas aplicables a una propiedad

    Args:
        prop: Propiedad (right-angle, corner, all-right, self-orth, hamming)
        n_range: Dimensiones
        q_list: Primos impares
        k: Brazos para k-esquinas (por defecto 2)

    Returns:
        Lista de BoundReport en orden (q, n, fórmula); las fórmulas cuya
        precondición no se cumple se omiten; las que tienen hipótesis la
        registran en "hypothesis" y no cuentan para la cota superior si falla.
        Una fila es "exact" cuando la mejor cota inferior exacta coincide con
        la mejor cota superior.
    """
    kind = ConfigurationKind.parse(prop)
    k_value = k if k is not None else 2
    if kind is ConfigurationKind.K_RIGHT_CORNER:
        require_dimension(k_value, 2, "k")
    report_k = k_value if kind is ConfigurationKind.K_RIGHT_CORNER else None
    q_values = [require_prime(q) for q in q_list]

    rows: List[BoundReport] = []
    for q in q_values:
        for n in n_range:
            require_dimension(n, 1)
            evaluated = _evaluate_all(kind, n, q, k_value)
            uppers = [v for _, side, v, hyp in evaluated if side == UPPER and hyp is not False]
            lowers = [v for fid, side, v, _ in evaluated if side == LOWER and fid != "corner_lower_main_term"]
            tight = bool(uppers) and bool(lowers) and max(lowers) == min(uppers)
            target = min(uppers) if tight else None

            for formula_id, side, value, hypothesis in evaluated:
                is_main = formula_id == "corner_lower_main_term"
                rows.append(BoundReport(
                    formula_id=formula_id,
                    prop=kind,
                    n=n,
                    q=q,
                    k=report_k,
                    side=side,
                    value=value,
                    main_term=is_main,
                    floor_division=is_main,
                    exact=tight and not is_main and value == target,
                    hypothesis=hypothesis,
                ))

    logger.info(f"bounds_table {kind.value}: {len(rows)} filas")
    return rows
