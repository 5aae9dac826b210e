"""
Criterios de aceptación reproducibles

AcceptanceRunner ejecuta cada criterio (valores exactos de S y T, rejilla de
construcciones, consistencia de cotas, certificados, identidades algebraicas
y empaquetamientos), escribe report.json y manifest.json, y devuelve los
tiempos por separado: los tiempos nunca se escriben en disco, de modo que dos
ejecuciones secuenciales producen archivos idénticos byte a byte.
"""

import logging
import time
from dataclasses import dataclass, field
from itertools import product
from pathlib import Path
from typing import Any, Callable, Dict, Iterable, List, Optional, Sequence, Tuple

import numpy as np

from ..core.bounds import (
    corner_naslund_hypothesis,
    lower_bound,
    s3_exact_term,
    s3_padded_term,
    s_lower_augmented_term,
    s_lower_basic_term,
    s_upper,
    t_lower_general,
    t_lower_special,
    upper_bound,
)
from ..core.certify import (
    all_right_tensor_certificate,
    lemma_diag_certificate,
    p_matrix_certificate,
    right_angle_partition_certificate,
    t_code_certificate,
)
from ..core.constructions import (
    CONSTRUCTIONS,
    build_construction,
    s3_exact,
    standard_basis_set,
    t_lower_augmented,
    to_pm_one,
)
from ..core.fqlin import FieldSpec, FVec, binomial
from ..core.kinds import ConfigurationKind
from ..core.pointset import PointSet
from ..core.predicates import all_right_equiv_witness, scan_set, violation_replays
from ..core.search import exact_all_right, exact_R, exact_S, exact_T
from ..core.setfamily import floor_guarantee, greedy_packing, intersection_ell, max_packing_oracle, verify_packing
from ..utils.formats import SCHEMA_VERSION, dumps_json, sha256_text
from ..utils.validators import DomainError

logger = logging.getLogger(__name__)

CRITERIA = ("S", "T", "grid", "bounds", "certificates", "identities", "packing")

GRID_Q = (3, 5, 7)
GRID_K = (2, 3)
GRID_N = range(1, 13)

EXACT_S = ((2, 9), (5, 27))
EXACT_T = ((3, 4), (4, 8), (5, 16), (6, 16))
PACKING_CASES = ((8, 2, 1), (10, 3, 2), (20, 3, 2), (15, 4, 2))

# tamaño exacto de cada construcción según su fórmula
SIZE_FORMULAS: Dict[str, Callable[[int, int], int]] = {
    "standard-basis": lambda n, q: n,
    "s-lower-basic": lambda n, q: s_lower_basic_term(n, q).value,
    "s-lower-augmented": lambda n, q: s_lower_augmented_term(n, q).value,
    "s3-exact": lambda n, q: s3_exact_term(n).value,
    "s3-padded": lambda n, q: s3_padded_term(n).value,
    "binary-distance": lambda n, q: binomial(n, 2).value + 1,
    "t-lower-even": lambda n, q: t_lower_general(n, q).value,
    "t-lower-augmented": lambda n, q: t_lower_special(n, q).value,
}

P_MATRIX_CONSTRUCTIONS = ("s-lower-basic", "s-lower-augmented", "s3-exact", "s3-padded")
T_CODE_CONSTRUCTIONS = ("t-lower-even", "t-lower-augmented")


@dataclass
class CriterionResult:
    """Resultado de un criterio: comprobaciones, omisiones y fallos"""
    id: str
    checks: int = 0
    skipped: int = 0
    failures: List[str] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return not self.failures

    def check(self, condition: bool, message: str) -> bool:
        self.checks += 1
        if not condition:
            self.failures.append(message)
            logger.warning(f"[{self.id}] FALLA: {message}")
        return condition

    def to_json(self) -> Dict[str, Any]:
        return {
            "id": self.id,
            "passed": self.passed,
            "checks": str(self.checks),
            "skipped": str(self.skipped),
            "failures": list(self.failures),
        }


@dataclass(frozen=True)
class GridPoint:
    name: str
    n: int
    q: int
    k: Optional[int]
    point_set: PointSet

    @property
    def label(self) -> str:
        k = "" if self.k is None else f", k={self.k}"
        return f"{self.name}(n={self.n}, q={self.q}{k})"


def select_criteria(only: Optional[Iterable[str]]) -> List[str]:
    """Criterios a ejecutar en el orden canónico; DomainError si alguno es desconocido"""
    if not only:
        return list(CRITERIA)
    requested = [c.strip() for c in only if c.strip()]
    unknown = [c for c in requested if c not in CRITERIA]
    if unknown:
        raise DomainError(
            f"Criterio desconocido: {', '.join(unknown)} (disponibles: {', '.join(CRITERIA)})",
            field="only",
        )
    return [c for c in CRITERIA if c in requested]


def _grid_parameters() -> Iterable[Tuple[str, int, int, Optional[int]]]:
    for name, (_, required) in CONSTRUCTIONS.items():
        q_values = GRID_Q if "q" in required else (3,)
        k_values = GRID_K if "k" in required else (None,)
        for q, k, n in product(q_values, k_values, GRID_N):
            yield name, n, q, k


def first_missing_vector(A: PointSet, alphabet: Sequence[int]) -> FVec:
    """Primer vector de alphabet^n (orden lexicográfico) que no está en A"""
    members = set(A.vectors)
    for entries in product(sorted(alphabet), repeat=A.n):
        v = FVec(A.spec, tuple(entries))
        if v not in members:
            return v
    raise DomainError("El conjunto ya contiene todo el espacio", field="vectors")


class AcceptanceRunner:
    """Ejecuta los criterios de aceptación con la configuración dada"""

    def __init__(self, config):
        self.config = config
        self._grid: Optional[List[GridPoint]] = None
        self.artifacts: Dict[str, str] = {}
        logger.info("AcceptanceRunner inicializado")

    @property
    def grid(self) -> List[GridPoint]:
        """Todas las construcciones válidas de la rejilla q ∈ {3,5,7}, k ∈ {2,3}, n ≤ 12"""
        if self._grid is None:
            points = []
            for name, n, q, k in _grid_parameters():
                try:
                    A = build_construction(name, n=n, q=q, k=k)
                except DomainError as e:
                    logger.debug(f"{name}(n={n}, q={q}, k={k}) fuera de rango: {e.message}")
                    continue
                points.append(GridPoint(name, n, q, k, A))
            logger.info(f"Rejilla de aceptación: {len(points)} conjuntos")
            self._grid = points
        return self._grid

    def run(self, only: Optional[Iterable[str]] = None) -> Tuple[Dict[str, Any], Dict[str, float]]:
        """
        Ejecuta los criterios seleccionados

        Args:
            only: Identificadores de criterio (None = todos)

        Returns:
            (reporte, tiempos en segundos por criterio)
        """
        selected = select_criteria(only)
        self.artifacts = {}
        results: List[CriterionResult] = []
        timings: Dict[str, float] = {}
        for criterion in selected:
            logger.info(f"Criterio {criterion}...")
            started = time.perf_counter()
            result = CriterionResult(criterion)
            getattr(self, f"_criterion_{criterion}")(result)
            timings[criterion] = time.perf_counter() - started
            logger.info(
                f"Criterio {criterion}: {'OK' if result.passed else 'FALLA'} "
                f"({result.checks} comprobaciones, {timings[criterion]:.2f} s)"
            )
            results.append(result)

        report = {
            "schema": SCHEMA_VERSION,
            "version": self.config.server_version,
            "passed": all(r.passed for r in results),
            "criteria": [r.to_json() for r in results],
        }
        return report, timings

    def parameters(self, only: Optional[Iterable[str]] = None) -> Dict[str, Any]:
        return {
            "only": select_criteria(only),
            "search_budget": str(self.config.search_budget),
            "scan_budget": str(self.config.scan_budget),
            "triple_scan_cap": str(self.config.triple_scan_cap),
            "rank_bound_depth": str(self.config.rank_bound_depth),
            "workers": str(self.config.effective_workers),
            "packing_seed": None if self.config.packing_seed is None else str(self.config.packing_seed),
        }

    def write(
        self,
        report: Dict[str, Any],
        output_dir: Path,
        command: Sequence[str],
        only: Optional[Iterable[str]] = None,
    ) -> Dict[str, Path]:
        """
        Escribe report.json, los testigos de búsqueda y manifest.json

        Returns:
            Dict nombre -> ruta escrita
        """
        output_dir = Path(output_dir)
        output_dir.mkdir(parents=True, exist_ok=True)
        files = {"report.json": dumps_json(report)}
        files.update(sorted(self.artifacts.items()))

        written: Dict[str, Path] = {}
        for name, text in files.items():
            path = output_dir / name
            path.write_text(text, encoding="utf-8")
            written[name] = path

        manifest = {
            "schema": SCHEMA_VERSION,
            "command": list(command),
            "parameters": self.parameters(only),
            "version": self.config.server_version,
            "outputs": {name: sha256_text(text) for name, text in sorted(files.items())},
        }
        path = output_dir / "manifest.json"
        path.write_text(dumps_json(manifest), encoding="utf-8")
        written["manifest.json"] = path
        logger.info(f"Resultados escritos en {output_dir}")
        return written

    # Criterios

    def _scan(self, A: PointSet, kind: ConfigurationKind, k: Optional[int] = None):
        workers = self.config.effective_workers
        budget = self.config.scan_budget if workers == 1 else None
        return scan_set(A, kind, k, budget, workers)

    def _criterion_S(self, result: CriterionResult) -> None:
        for n, expected in EXACT_S:
            search = exact_S(n, 3, self.config.search_budget, self.config.rank_bound_depth)
            self.artifacts[f"S_{n}_3.txt"] = search.witness.to_text()
            label = f"S({n},3)"
            result.check(search.proven, f"{label}: presupuesto agotado con {search.optimum}")
            result.check(search.optimum == expected, f"{label} = {search.optimum}, se esperaba {expected}")
            result.check(s_upper(n, 3) == expected, f"s_upper({n},3) = {s_upper(n, 3)} ≠ {expected}")
            result.check(self._scan(search.witness, ConfigurationKind.SELF_ORTHOGONAL_DIFF).ok,
                         f"{label}: el testigo tiene una diferencia auto-ortogonal")
            A = s3_exact(n)
            result.check(len(A) == expected, f"|s3_exact({n})| = {len(A)} ≠ {expected}")
            result.check(self._scan(A, ConfigurationKind.SELF_ORTHOGONAL_DIFF).ok,
                         f"s3_exact({n}) no pasa la verificación")

    def _criterion_T(self, result: CriterionResult) -> None:
        for n, expected in EXACT_T:
            search = exact_T(n, 3, self.config.search_budget, self.config.rank_bound_depth)
            self.artifacts[f"T_{n}_3.txt"] = search.witness.to_text()
            label = f"T({n},3)"
            result.check(search.proven, f"{label}: presupuesto agotado con {search.optimum}")
            result.check(search.optimum == expected, f"{label} = {search.optimum}, se esperaba {expected}")
            result.check(self._scan(search.witness, ConfigurationKind.DIVISIBLE_HAMMING).ok,
                         f"{label}: el testigo tiene una distancia divisible por 3")

    def _criterion_grid(self, result: CriterionResult) -> None:
        cap = self.config.triple_scan_cap
        for point in self.grid:
            A = point.point_set
            kind = A.claimed_property
            if not kind.is_pairwise and len(A) > cap:
                result.skipped += 1
                continue
            report = self._scan(A, kind, A.claimed_k)
            if report.violation is not None:
                result.check(violation_replays(report.violation),
                             f"{point.label}: el testigo {report.violation.indices} no se reproduce")
            result.check(report.ok, f"{point.label}: {report.status.value} {kind.value}")

    def _criterion_bounds(self, result: CriterionResult) -> None:
        for point in self.grid:
            A, n, q = point.point_set, point.n, point.q
            kind = A.claimed_property
            k = A.claimed_k or 2
            if kind is ConfigurationKind.K_RIGHT_CORNER and not corner_naslund_hypothesis(q, k):
                result.skipped += 1
            else:
                upper = upper_bound(kind, n, q, k)
                result.check(len(A) <= upper.value,
                             f"{point.label}: |A| = {len(A)} > {upper.formula_id} = {upper}")
            if point.name in SIZE_FORMULAS:
                expected = SIZE_FORMULAS[point.name](n, q)
                result.check(len(A) == expected, f"{point.label}: |A| = {len(A)} ≠ {expected}")
            if point.name in ("corner-free", "right-angle-free"):
                t, cap = A.provenance["params"]["t"], A.provenance["params"]["cap"]
                floor = floor_guarantee(n, t, intersection_ell(cap))
                result.check(len(A) >= floor, f"{point.label}: |A| = {len(A)} < garantía {floor}")

        searches = [
            (ConfigurationKind.RIGHT_ANGLE, exact_R, ((1, 3), (2, 3), (1, 5))),
            (ConfigurationKind.ALL_RIGHT_TRIANGLE, exact_all_right, ((1, 3), (2, 3))),
            (ConfigurationKind.SELF_ORTHOGONAL_DIFF, exact_S, ((2, 3), (3, 3), (2, 5))),
            (ConfigurationKind.DIVISIBLE_HAMMING, exact_T, ((3, 3), (4, 3), (5, 3), (6, 3), (3, 5))),
        ]
        for kind, solver, cases in searches:
            for n, q in cases:
                search = solver(n, q, self.config.search_budget)
                label = f"{search.instance.quantity}({n},{q})"
                if not search.proven:
                    result.skipped += 1
                    continue
                upper = upper_bound(kind, n, q)
                result.check(search.optimum <= upper.value, f"{label} = {search.optimum} > {upper}")
                lower = lower_bound(kind, n, q)
                if lower is not None:
                    result.check(search.optimum >= lower.value,
                                 f"{label} = {search.optimum} < {lower.formula_id} = {lower}")

    def _criterion_certificates(self, result: CriterionResult) -> None:
        for point in self.grid:
            if point.name in P_MATRIX_CONSTRUCTIONS:
                cert = p_matrix_certificate(point.point_set)
            elif point.name in T_CODE_CONSTRUCTIONS:
                cert = t_code_certificate(to_pm_one(point.point_set))
            else:
                continue
            result.check(cert.passed, f"{cert.kind} {point.label}: rango {cert.rank} de {cert.size}")

        A = s3_exact(5)
        planted = A.with_vectors(list(A.vectors) + [first_missing_vector(A, range(3))], "s3-exact+1")
        cert = p_matrix_certificate(planted)
        result.check(not cert.clause("identity").passed, "p-matrix: la violación plantada conserva la identidad")

        B = to_pm_one(t_lower_augmented(5, 3))
        planted = B.with_vectors(list(B.vectors) + [first_missing_vector(B, (1, 2))], "t-lower-augmented+1")
        cert = t_code_certificate(planted)
        result.check(not cert.clause("identity").passed, "t-code: la violación plantada conserva la identidad")

        for n in (2, 5, 8):
            cert = all_right_tensor_certificate(s3_exact(n))
            result.check(cert.passed, f"all-right-tensor s3_exact({n}) falla")
        for n in range(1, 9):
            cert = lemma_diag_certificate(standard_basis_set(n, 3), 1, [0])
            result.check(cert.passed, f"lemma-diag base estándar n={n} falla")
        for point in self.grid:
            if point.name == "right-angle-free":
                cert = right_angle_partition_certificate(point.point_set)
                result.check(cert.passed, f"right-angle-partition {point.label} falla")

    def _criterion_identities(self, result: CriterionResult) -> None:
        spec = FieldSpec(3)
        plane = [FVec(spec, v) for v in product(range(3), repeat=2)]
        bad = [(x, y, z) for x, y, z in product(plane, repeat=3) if not all_right_equiv_witness(x, y, z)]
        result.check(not bad, f"equivalencia todo-recto falla en F_3^2: {bad[:1]}")

        rng = np.random.default_rng(0)
        for q in (5, 7):
            spec = FieldSpec(q)
            samples = rng.integers(0, q, size=(10_000, 3, 3))
            misses = sum(
                1 for triple in samples
                if not all_right_equiv_witness(*(FVec(spec, tuple(int(e) for e in row)) for row in triple))
            )
            result.check(misses == 0, f"equivalencia todo-recto falla en {misses} tríos aleatorios (q={q})")

        for n in range(1, 9):
            W = np.array(list(product((0, 1), repeat=n)), dtype=np.int64)
            D = W[:, None, :] - W[None, :, :]
            distance = (D != 0).sum(axis=-1)
            result.check(bool(((D * D).sum(axis=-1) % 3 == distance % 3).all()),
                         f"⟨x−y,x−y⟩ ≢ d(x,y) mod 3 en {{0,1}}^{n}")
            P = 1 - 2 * W
            E = P[:, None, :] - P[None, :, :]
            squared = (E * E).sum(axis=-1)
            for q in GRID_Q:
                result.check(bool((squared % q == (4 * distance) % q).all()),
                             f"⟨x−y,x−y⟩ ≢ 4d(x,y) mod {q} en {{±1}}^{n}")

    def _criterion_packing(self, result: CriterionResult) -> None:
        order, seed = self.config.packing_order, self.config.packing_seed
        for n, t, ell in PACKING_CASES:
            system = greedy_packing(n, t, ell, order=order, seed=seed)
            result.check(verify_packing(system) is None, f"packing({n},{t},{ell}) inválido")
            result.check(system.meets_floor,
                         f"packing({n},{t},{ell}) = {len(system)} < {system.floor_guarantee}")
        fano = greedy_packing(7, 3, 2)
        result.check(len(fano) == max_packing_oracle(7, 3, 2) == 7,
                     f"packing(7,3,2) = {len(fano)}, se esperaba 7")
