import re
from pathlib import Path

ROOT = Path(__file__).resolve().parent.parent
TEST_ONLY = {"jsonschema", "pytest", "pytest-asyncio", "black", "flake8", "mypy", "coverage"}


def _names(filename):
    names = set()
    for line in (ROOT / filename).read_text(encoding="utf-8").splitlines():
        line = line.strip()
        if line and not line.startswith(("#", "-r")):
            names.add(re.split(r"[<>=!~\[]", line, maxsplit=1)[0].strip().lower())
    return names


def test_runtime_requirements_exclude_test_tools():
    runtime = _names("requirements.txt")
    assert not runtime & TEST_ONLY
    assert {"mcp", "numpy", "sympy", "networkx", "click", "rich", "structlog"} <= runtime


def test_dev_requirements_carry_test_tools():
    assert TEST_ONLY <= _names("requirements-dev.txt")


def test_package_does_not_import_jsonschema():
    for path in (ROOT / "mcp_ortofree").rglob("*.py"):
        source = path.read_text(encoding="utf-8")
        assert not re.search(r"^\s*(import|from)\s+jsonschema", source, re.M), path
