"""
Gestor de análisis para MCP Ortofree

Este módulo implementa las herramientas de cotas, certificados y búsqueda
exacta. Los cálculos pesados se ejecutan en un hilo aparte para no bloquear
el bucle del servidor.
"""

import asyncio
import logging
from typing import Any, Dict, List, Optional

from ..core.bounds import TABLE_COLUMNS, bounds_table
from ..core.certify import run_certificate
from ..core.pointset import read_point_set
from ..core.search import exact_search
from ..utils.formats import render_table
from ..utils.validators import ValidationError, require_dimension

logger = logging.getLogger(__name__)


class AnalysisManager:
    """Gestor de cotas, certificados y búsquedas"""

    def __init__(self, config):
        self.config = config
        logger.info("AnalysisManager inicializado")

    async def tabla_cotas(
        self,
        propiedad: str,
        n_max: int,
        q: int,
        k: Optional[int] = None,
        formato: str = "json",
        n_min: int = 1,
    ) -> Dict[str, Any]:
        """
        Tabla de cotas para n_min..n_max

        Args:
            propiedad: right-angle, corner, all-right, self-orth o hamming
            n_max: Dimensión máxima
            q: Primo impar
            k: Brazos para corner
            formato: csv, json o text
            n_min: Dimensión mínima

        Returns:
            Dict con las filas y la tabla renderizada
        """
        try:
            require_dimension(n_max, 1, "n_max")
            require_dimension(n_min, 1, "n_min")
            rows = bounds_table(propiedad, range(n_min, n_max + 1), [q], k)
            table_rows = [r.to_row() for r in rows]
            logger.info(f"Tabla de cotas {propiedad}: {len(table_rows)} filas")
            return {
                "success": True,
                "filas": table_rows,
                "tabla": render_table(table_rows, TABLE_COLUMNS, formato, title=f"Cotas {propiedad}"),
            }
        except ValidationError as e:
            logger.warning(f"Tabla de cotas rechazada: {e.message}")
            return {"success": False, "error": e.message, "campo": e.field}
        except Exception as e:
            logger.error(f"Error generando tabla de cotas: {e}")
            return {"success": False, "error": str(e)}

    async def certificar_conjunto(
        self,
        tipo: str,
        vectores: str,
        alpha: Optional[int] = None,
        R: Optional[List[int]] = None,
    ) -> Dict[str, Any]:
        """
        Ejecuta un certificado algebraico sobre un conjunto

        Args:
            tipo: p-matrix, lemma-diag, t-code, all-right-tensor o right-angle-partition
            vectores: Texto en formato de vectores
            alpha: Valor diagonal para lemma-diag
            R: Conjunto de productos permitidos para lemma-diag

        Returns:
            Dict con el certificado serializado
        """
        try:
            A = read_point_set(vectores)
            cert = await asyncio.to_thread(run_certificate, tipo, A, alpha, R)
            return {"success": True, "ok": cert.passed, "certificado": cert.to_json()}
        except ValidationError as e:
            logger.warning(f"Certificado {tipo} rechazado: {e.message}")
            return {"success": False, "error": e.message, "campo": e.field}
        except Exception as e:
            logger.error(f"Error certificando conjunto: {e}")
            return {"success": False, "error": str(e)}

    async def busqueda_exacta(
        self,
        cantidad: str,
        n: int,
        q: int,
        k: Optional[int] = None,
        presupuesto: Optional[int] = None,
    ) -> Dict[str, Any]:
        """
        Calcula un óptimo exacto por ramificación y poda

        Args:
            cantidad: R, S, T, all-right o corner
            n: Dimensión
            q: Primo impar
            k: Brazos para corner
            presupuesto: Nodos máximos (por defecto search_budget)

        Returns:
            Dict con el SearchResult serializado
        """
        try:
            budget = presupuesto if presupuesto is not None else self.config.search_budget
            logger.info(f"Búsqueda exacta {cantidad}(n={n}, q={q}) con presupuesto {budget}")
            result = await asyncio.to_thread(
                exact_search, cantidad, n, q, k, budget, self.config.rank_bound_depth
            )
            return {"success": True, "demostrado": result.proven, "resultado": result.to_json()}
        except ValidationError as e:
            logger.warning(f"Búsqueda {cantidad} rechazada: {e.message}")
            return {"success": False, "error": e.message, "campo": e.field}
        except Exception as e:
            logger.error(f"Error en búsqueda exacta: {e}")
            return {"success": False, "error": str(e)}
