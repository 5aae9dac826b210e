"""
Módulo de herramientas MCP para Ortofree

Este módulo contiene las herramientas expuestas por el servidor MCP y el CLI,
organizadas por funcionalidad: construcción y verificación, análisis
(cotas, certificados, búsqueda) y criterios de aceptación.
"""

from .analysis_manager import AnalysisManager
from .construction_manager import ConstructionManager
from .reproduce import CRITERIA, AcceptanceRunner

__all__ = [
    "ConstructionManager",
    "AnalysisManager",
    "AcceptanceRunner",
    "CRITERIA",
]
