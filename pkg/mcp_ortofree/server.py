"""
Servidor MCP principal para Ortofree

Este módulo implementa el servidor MCP que expone el toolkit de conjuntos
libres de configuraciones en F_q^n: construcciones, verificación exhaustiva,
tablas de cotas, certificados algebraicos y búsqueda exacta.
"""

import asyncio
import json
import logging
from typing import Any, Dict, List

try:
    from mcp.server import Server
    from mcp.types import TextContent, Tool
except ImportError:
    # Para casos donde MCP no está instalado
    Server = None
    Tool = None
    TextContent = None

from .config import get_config
from .tools import CRITERIA, AcceptanceRunner, AnalysisManager, ConstructionManager
from .utils.logging_setup import configure_logging
from .utils.validators import ParameterValidator, ValidationError

logger = logging.getLogger(__name__)

PROPERTIES = ["right-angle", "corner", "all-right", "self-orth", "hamming"]

TOOL_DEFINITIONS: List[Dict[str, Any]] = [
    {
        "name": "construir_conjunto",
        "description": "Construye un conjunto explícito libre de una configuración en F_q^n",
        "inputSchema": {
            "type": "object",
            "properties": {
                "nombre": {"type": "string", "description": "Nombre de la construcción (p.ej. s3-exact)"},
                "n": {"type": "integer", "minimum": 1},
                "q": {"type": "integer", "description": "Primo impar"},
                "k": {"type": "integer", "minimum": 2, "description": "Brazos para corner-free"},
            },
            "required": ["nombre", "n"],
        },
    },
    {
        "name": "verificar_conjunto",
        "description": "Verifica exhaustivamente que un conjunto evite una configuración",
        "inputSchema": {
            "type": "object",
            "properties": {
                "vectores": {"type": "string", "description": "Archivo de vectores (cabecera q=<q> n=<n>)"},
                "propiedad": {"type": "string", "enum": PROPERTIES},
                "k": {"type": "integer", "minimum": 2},
            },
            "required": ["vectores", "propiedad"],
        },
    },
    {
        "name": "tabla_cotas",
        "description": "Tabla de cotas superiores e inferiores para n = 1..n_max",
        "inputSchema": {
            "type": "object",
            "properties": {
                "propiedad": {"type": "string", "enum": PROPERTIES},
                "n_max": {"type": "integer", "minimum": 1},
                "q": {"type": "integer"},
                "k": {"type": "integer", "minimum": 2},
                "formato": {"type": "string", "enum": ["csv", "json", "text"]},
            },
            "required": ["propiedad", "n_max", "q"],
        },
    },
    {
        "name": "certificar_conjunto",
        "description": "Certificado algebraico (matriz de evaluación, rango, descomposición)",
        "inputSchema": {
            "type": "object",
            "properties": {
                "tipo": {
                    "type": "string",
                    "enum": ["p-matrix", "lemma-diag", "t-code", "all-right-tensor", "right-angle-partition"],
                },
                "vectores": {"type": "string"},
                "alpha": {"type": "integer"},
                "R": {"type": "array", "items": {"type": "integer"}},
            },
            "required": ["tipo", "vectores"],
        },
    },
    {
        "name": "busqueda_exacta",
        "description": "Valor exacto de R, S, T, all-right o corner por ramificación y poda",
        "inputSchema": {
            "type": "object",
            "properties": {
                "cantidad": {"type": "string", "enum": ["R", "S", "T", "all-right", "corner"]},
                "n": {"type": "integer", "minimum": 1},
                "q": {"type": "integer"},
                "k": {"type": "integer", "minimum": 2},
                "presupuesto": {"type": "integer", "minimum": 1},
            },
            "required": ["cantidad", "n", "q"],
        },
    },
    {
        "name": "reproducir_criterios",
        "description": "Ejecuta los criterios de aceptación y devuelve el reporte",
        "inputSchema": {
            "type": "object",
            "properties": {
                "solo": {"type": "array", "items": {"type": "string", "enum": list(CRITERIA)}},
            },
        },
    },
]


class MCPOrtofreeServer:
    """Servidor MCP principal para Ortofree"""

    def __init__(self):
        self.config = get_config()

        # Verificar si MCP está disponible
        if Server is None:
            logger.warning("MCP no disponible, usando modo demo")
            self.demo_mode = True
            self.server = None
        else:
            self.demo_mode = False
            self.server = Server(self.config.server_name)

        self.construction_manager = ConstructionManager(self.config)
        self.analysis_manager = AnalysisManager(self.config)

        if not self.demo_mode:
            self._register_handlers()

        logger.info(f"Servidor MCP Ortofree inicializado - v{self.config.server_version}")
        logger.info(f"Modo demo: {self.demo_mode}")

    async def reproducir_criterios(self, solo: List[str] = None) -> Dict[str, Any]:
        """Ejecuta los criterios de aceptación sin escribir archivos"""
        try:
            runner = AcceptanceRunner(self.config)
            report, timings = await asyncio.to_thread(runner.run, solo)
            return {"success": True, "reporte": report, "tiempos": {k: round(v, 3) for k, v in timings.items()}}
        except ValidationError as e:
            return {"success": False, "error": e.message, "campo": e.field}
        except Exception as e:
            logger.error(f"Error reproduciendo criterios: {e}")
            return {"success": False, "error": str(e)}

    async def dispatch(self, name: str, arguments: Dict[str, Any]) -> Dict[str, Any]:
        """Valida y enruta una llamada a herramienta"""
        logger.info(f"Ejecutando herramienta: {name}")
        validation = ParameterValidator.validate_tool_request(name, arguments)
        if not validation["valid"]:
            return {"success": False, "errores": validation["errors"]}
        for warning in validation["warnings"]:
            logger.warning(f"{name}: {warning}")
        schema = ParameterValidator.TOOL_SCHEMAS[name]
        known = set(schema["required"]) | set(schema["optional"])
        arguments = {key: value for key, value in arguments.items() if key in known}

        if name == "construir_conjunto":
            return await self.construction_manager.construir_conjunto(**arguments)
        elif name == "verificar_conjunto":
            return await self.construction_manager.verificar_conjunto(**arguments)
        elif name == "tabla_cotas":
            return await self.analysis_manager.tabla_cotas(**arguments)
        elif name == "certificar_conjunto":
            return await self.analysis_manager.certificar_conjunto(**arguments)
        elif name == "busqueda_exacta":
            return await self.analysis_manager.busqueda_exacta(**arguments)
        else:
            return await self.reproducir_criterios(**arguments)

    def _register_handlers(self):
        """Registrar todos los manejadores MCP"""
        if self.demo_mode or self.server is None:
            return

        @self.server.list_tools()
        async def list_tools() -> List[Tool]:
            """Listar todas las herramientas disponibles"""
            return [Tool(**definition) for definition in TOOL_DEFINITIONS]

        @self.server.call_tool()
        async def call_tool(name: str, arguments: Dict[str, Any]) -> List[TextContent]:
            """Manejar llamadas a herramientas"""
            try:
                result = await self.dispatch(name, arguments or {})
                return [TextContent(type="text", text=json.dumps(result, indent=2, ensure_ascii=False))]
            except Exception as e:
                logger.error(f"Error ejecutando {name}: {e}")
                return [TextContent(type="text", text=f"Error: {str(e)}")]

    async def demo_call_tool(self, name: str, arguments: Dict[str, Any]) -> Dict[str, Any]:
        """Llamada de herramienta en modo demo"""
        logger.info(f"Demo: Ejecutando herramienta {name}")
        return await self.dispatch(name, arguments)

    async def run(self, transport_type: str = "stdio"):
        """Ejecutar el servidor MCP"""
        if self.demo_mode:
            logger.info("Modo demo: MCP no disponible, no hay transporte que abrir")
            return

        logger.info(f"Iniciando servidor MCP Ortofree en modo {transport_type}")

        if transport_type == "stdio":
            from mcp.server.stdio import stdio_server
            async with stdio_server() as (read_stream, write_stream):
                await self.server.run(read_stream, write_stream, self.server.create_initialization_options())
        else:
            raise ValueError(f"Tipo de transporte no soportado: {transport_type}")


async def serve(transport_type: str = "stdio"):
    """Crea y ejecuta el servidor; en modo demo muestra ejemplos"""
    server = MCPOrtofreeServer()

    if server.demo_mode:
        logger.info("=== MODO DEMO ===")
        logger.info("Para instalar MCP completo: pip install mcp")

        ejemplos = [
            ("construir_conjunto", {"nombre": "s3-exact", "n": 2}),
            ("tabla_cotas", {"propiedad": "self-orth", "n_max": 5, "q": 3, "formato": "text"}),
            ("busqueda_exacta", {"cantidad": "T", "n": 4, "q": 3}),
        ]
        for herramienta, argumentos in ejemplos:
            logger.info(f"--- Ejemplo: {herramienta} ---")
            resultado = await server.demo_call_tool(herramienta, argumentos)
            print(json.dumps(resultado, indent=2, ensure_ascii=False))

    await server.run(transport_type)


def main():
    """Punto de entrada de ortofree-server"""
    import sys

    configure_logging()
    transport_type = sys.argv[1] if len(sys.argv) > 1 else "stdio"
    try:
        asyncio.run(serve(transport_type))
    except KeyboardInterrupt:
        logger.info("Servidor detenido por el usuario")
    except Exception as e:
        logger.error(f"Error fatal: {e}", exc_info=True)


if __name__ == "__main__":
    main()
