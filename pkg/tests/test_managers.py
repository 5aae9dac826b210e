import pytest

from mcp_ortofree.core.constructions import s3_exact
from mcp_ortofree.server import TOOL_DEFINITIONS, MCPOrtofreeServer
from mcp_ortofree.tools import AnalysisManager, ConstructionManager
from mcp_ortofree.utils.validators import ParameterValidator

PLANTED = "q=3 n=3\n0,0,0\n1,1,1\n"


@pytest.fixture
def construction_manager(config):
    return ConstructionManager(config)


@pytest.fixture
def analysis_manager(config):
    return AnalysisManager(config)


async def test_construir_conjunto(construction_manager):
    result = await construction_manager.construir_conjunto("s3-exact", 5)
    assert result["success"]
    assert result["tamano"] == "27"
    assert result["vectores"].startswith("q=3 n=5\n")
    assert result["procedencia"]["construction"] == "s3-exact"


async def test_construir_conjunto_errors(construction_manager):
    result = await construction_manager.construir_conjunto("plano-proyectivo", 5)
    assert not result["success"]
    assert "s3-exact" in result["disponibles"]

    result = await construction_manager.construir_conjunto("s-lower-basic", 5, q=9)
    assert not result["success"]
    assert result["campo"] == "q"


async def test_packing_seed_is_honoured(config):
    config.packing_seed = 11
    seeded = await ConstructionManager(config).construir_conjunto("corner-free", 10, q=5, k=2)
    config.packing_seed = None
    lex = await ConstructionManager(config).construir_conjunto("corner-free", 10, q=5, k=2)
    assert seeded["success"] and lex["success"]
    assert seeded["procedencia"]["parameters"]["t"] == lex["procedencia"]["parameters"]["t"] == "3"


async def test_verificar_conjunto(construction_manager):
    result = await construction_manager.verificar_conjunto(PLANTED, "self-orth")
    assert result["success"]
    assert not result["ok"]
    assert result["reporte"]["violation"]["indices"] == ["0", "1"]

    result = await construction_manager.verificar_conjunto(s3_exact(5).to_text(), "self-orth")
    assert result["ok"]

    result = await construction_manager.verificar_conjunto("q=3\n0,0\n", "self-orth")
    assert not result["success"]


async def test_tabla_cotas(analysis_manager):
    result = await analysis_manager.tabla_cotas("self-orth", 2, 3, formato="csv")
    assert result["success"]
    assert result["tabla"].splitlines()[0].startswith("property,n,q,k")
    assert any(r["formula_id"] == "s_upper" and r["value"] == "9" for r in result["filas"])

    result = await analysis_manager.tabla_cotas("self-orth", 2, 3, formato="xml")
    assert not result["success"]
    assert result["campo"] == "format"


async def test_certificar_conjunto(analysis_manager):
    result = await analysis_manager.certificar_conjunto("p-matrix", PLANTED)
    assert result["success"]
    assert not result["ok"]
    assert result["certificado"]["rank"] == "1"

    result = await analysis_manager.certificar_conjunto("lemma-diag", "q=3 n=2\n1,0\n0,1\n", alpha=1, R=[0])
    assert result["ok"]


async def test_busqueda_exacta(analysis_manager):
    result = await analysis_manager.busqueda_exacta("T", 4, 3)
    assert result["success"]
    assert result["demostrado"]
    assert result["resultado"]["optimum"] == "8"

    result = await analysis_manager.busqueda_exacta("R", 2, 5, presupuesto=5)
    assert result["success"]
    assert not result["demostrado"]


def test_tool_definitions_match_validator():
    names = [t["name"] for t in TOOL_DEFINITIONS]
    assert names == list(ParameterValidator.TOOL_SCHEMAS)
    for tool in TOOL_DEFINITIONS:
        schema = ParameterValidator.TOOL_SCHEMAS[tool["name"]]
        assert set(tool["inputSchema"].get("required", [])) == set(schema["required"])


async def test_server_dispatch(config):
    server = MCPOrtofreeServer()
    result = await server.dispatch("construir_conjunto", {"nombre": "s3-exact", "n": 2, "extra": 1})
    assert result["success"]
    assert result["tamano"] == "9"

    result = await server.dispatch("busqueda_exacta", {"cantidad": "S", "n": 2})
    assert not result["success"]
    assert "Campo requerido faltante: q" in result["errores"]

    result = await server.dispatch("tabla_cotas", {"propiedad": "hamming", "n_max": 3, "q": 4})
    assert not result["success"]

    result = await server.dispatch("desconocida", {})
    assert not result["success"]


async def test_server_reproduce(config):
    server = MCPOrtofreeServer()
    result = await server.dispatch("reproducir_criterios", {"solo": ["packing"]})
    assert result["success"]
    assert result["reporte"]["passed"]
    assert set(result["tiempos"]) == {"packing"}

    result = await server.reproducir_criterios(["nada"])
    assert not result["success"]
    assert result["campo"] == "only"
