import pytest
from click.testing import CliRunner

from mcp_ortofree.config import reload_config
from mcp_ortofree.core.fqlin import FieldSpec, FVec
from mcp_ortofree.core.pointset import point_set


@pytest.fixture
def config(monkeypatch, tmp_path):
    """Configuración secuencial y silenciosa, aislada del entorno"""
    monkeypatch.chdir(tmp_path)
    monkeypatch.setenv("SEQUENTIAL", "true")
    monkeypatch.setenv("LOG_LEVEL", "ERROR")
    monkeypatch.setenv("OUTPUT_DIR", str(tmp_path / "resultados"))
    return reload_config()


@pytest.fixture
def runner():
    return CliRunner()


@pytest.fixture
def f3():
    return FieldSpec(3)


def vec(values, q=3):
    return FVec(FieldSpec(q), tuple(v % q for v in values))


def vectors_file(tmp_path, rows, q=3, name="A.txt"):
    """Escribe un archivo de vectores y devuelve su ruta"""
    path = tmp_path / name
    path.write_text(point_set(rows, q).to_text(), encoding="utf-8")
    return path
