"""
MCP Ortofree - Conjuntos libres de configuraciones en F_q^n

Este paquete proporciona construcciones explícitas, verificación exhaustiva,
tablas de cotas, certificados algebraicos y búsqueda exacta para conjuntos
sin ángulos rectos, sin diferencias auto-ortogonales o sin distancias de
Hamming divisibles por q; todo expuesto como CLI y como servidor MCP.

Versión: 1.0.0
Licencia: MIT
"""

__version__ = "1.0.0"
__description__ = "Configuration-free subsets of F_q^n: constructions, bounds, certificates and exact search"

# Importar clases principales para fácil acceso
try:
    from .server import MCPOrtofreeServer
    from .config import Config
except ImportError:
    # Durante la instalación, las dependencias pueden no estar disponibles
    pass

__all__ = [
    "MCPOrtofreeServer",
    "Config",
    "__version__",
    "__description__",
]

import logging

logging.getLogger(__name__).addHandler(logging.NullHandler())
