"""
Gestor de construcciones y verificación para MCP Ortofree

Este módulo expone las construcciones explícitas y el escaneo exhaustivo
como herramientas asíncronas que nunca lanzan excepciones: devuelven
{"success": False, "error": ...} ante cualquier error de validación.
"""

import asyncio
import logging
from typing import Any, Dict, Optional

from ..core.constructions import CONSTRUCTIONS, build_construction, corner_free_set
from ..core.pointset import read_point_set
from ..core.predicates import scan_set
from ..utils.validators import ValidationError

logger = logging.getLogger(__name__)


class ConstructionManager:
    """Gestor de construcciones y verificaciones"""

    def __init__(self, config):
        self.config = config
        logger.info("ConstructionManager inicializado")

    def build(self, nombre: str, n: int, q: Optional[int] = None, k: Optional[int] = None):
        """Construcción síncrona; respeta packing_seed para corner-free"""
        key = nombre.strip().lower().replace("_", "-")
        if key == "corner-free" and self.config.packing_seed is not None:
            return corner_free_set(n, q, k, order="shuffled", seed=self.config.packing_seed)
        return build_construction(key, n=n, q=q, k=k)

    async def construir_conjunto(
        self,
        nombre: str,
        n: int,
        q: Optional[int] = None,
        k: Optional[int] = None,
    ) -> Dict[str, Any]:
        """
        Construye un conjunto por nombre

        Args:
            nombre: Nombre de la construcción (ver CONSTRUCTIONS)
            n: Dimensión
            q: Primo impar (si la construcción lo requiere)
            k: Brazos para corner-free

        Returns:
            Dict con el archivo de vectores y la procedencia
        """
        try:
            logger.info(f"Construyendo {nombre} (n={n}, q={q}, k={k})")
            A = await asyncio.to_thread(self.build, nombre, n, q, k)
            return {
                "success": True,
                "nombre": nombre,
                "tamano": str(len(A)),
                "vectores": A.to_text(),
                "procedencia": A.provenance_json(),
            }
        except ValidationError as e:
            logger.warning(f"Construcción {nombre} rechazada: {e.message}")
            return {"success": False, "error": e.message, "campo": e.field,
                    "disponibles": sorted(CONSTRUCTIONS)}
        except Exception as e:
            logger.error(f"Error construyendo {nombre}: {e}")
            return {"success": False, "error": str(e)}

    async def verificar_conjunto(
        self,
        vectores: str,
        propiedad: str,
        k: Optional[int] = None,
    ) -> Dict[str, Any]:
        """
        Verifica exhaustivamente que un conjunto evite una configuración

        Args:
            vectores: Texto en formato de vectores (cabecera q=<q> n=<n>)
            propiedad: right-angle, corner, all-right, self-orth o hamming
            k: Brazos para corner

        Returns:
            Dict con el ScanReport serializado
        """
        try:
            A = read_point_set(vectores)
            workers = self.config.effective_workers
            budget = self.config.scan_budget if workers == 1 else None
            report = await asyncio.to_thread(scan_set, A, propiedad, k, budget, workers)
            return {"success": True, "ok": report.ok, "reporte": report.to_json()}
        except ValidationError as e:
            logger.warning(f"Verificación rechazada: {e.message}")
            return {"success": False, "error": e.message, "campo": e.field}
        except Exception as e:
            logger.error(f"Error verificando conjunto: {e}")
            return {"success": False, "error": str(e)}
