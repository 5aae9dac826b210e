import pytest
from pydantic import ValidationError as SettingsError

from mcp_ortofree.config import Config, get_config, reload_config
from mcp_ortofree.utils.validators import (
    DomainError,
    ParameterValidator,
    UnsupportedFieldError,
    ValidationError,
    require_prime,
    validate_dimension,
    validate_prime_modulus,
)


def test_defaults(config):
    assert config.sequential is True
    assert config.effective_workers == 1
    assert config.log_level == "ERROR"
    assert config.search_budget == 5_000_000
    assert config.rank_bound_depth == 1
    assert config.packing_order == "lex"


def test_environment_overrides(monkeypatch, config):
    monkeypatch.setenv("WORKERS", "4")
    monkeypatch.setenv("SEQUENTIAL", "false")
    monkeypatch.setenv("PACKING_SEED", "9")
    monkeypatch.setenv("LOG_FORMAT", "JSON")
    cfg = reload_config()
    assert cfg.effective_workers == 4
    assert cfg.packing_order == "shuffled"
    assert cfg.log_format == "json"
    assert get_config() is cfg


def test_invalid_settings(monkeypatch, config):
    with pytest.raises(SettingsError):
        Config(log_level="verbose")
    with pytest.raises(SettingsError):
        Config(workers=0)
    with pytest.raises(SettingsError):
        Config(log_format="xml")


@pytest.mark.parametrize("q", [3, 5, 7, 101])
def test_prime_modulus_accepted(q):
    assert validate_prime_modulus(q) == (True, None)


@pytest.mark.parametrize("q,fragment", [(9, "potencia de primo"), (2, "primo impar"), (15, "no es primo"), ("3", "entero")])
def test_prime_modulus_rejected(q, fragment):
    ok, message = validate_prime_modulus(q)
    assert not ok
    assert fragment in message


def test_require_prime_raises():
    with pytest.raises(UnsupportedFieldError) as exc:
        require_prime(25)
    assert exc.value.field == "q"
    assert isinstance(exc.value, ValidationError)


def test_validate_dimension():
    assert validate_dimension(3) == (True, None)
    assert not validate_dimension(True)[0]
    assert not validate_dimension(1, 2, "k")[0]


def test_domain_error_carries_field():
    error = DomainError("mal", field="n")
    assert error.field == "n"
    assert error.message == "mal"


def test_tool_request_validation():
    ok = ParameterValidator.validate_tool_request("busqueda_exacta", {"cantidad": "T", "n": 3, "q": 3})
    assert ok["valid"]

    bad = ParameterValidator.validate_tool_request("busqueda_exacta", {"cantidad": "T", "n": 0, "q": 9, "k": 1})
    assert not bad["valid"]
    assert len(bad["errors"]) == 3

    noisy = ParameterValidator.validate_tool_request("reproducir_criterios", {"otro": 1})
    assert noisy["valid"]
    assert noisy["warnings"] == ["Campo ignorado: otro"]

    big = ParameterValidator.validate_tool_request(
        "busqueda_exacta", {"cantidad": "T", "n": 3, "q": 3, "presupuesto": 10 ** 9}
    )
    assert big["valid"] and big["warnings"]
