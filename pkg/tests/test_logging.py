import json
import logging

from mcp_ortofree.config import reload_config
from mcp_ortofree.utils.logging_setup import configure_logging


def _ours(root):
    return [h for h in root.handlers if getattr(h, "_ortofree_handler", False)]


def test_configure_logging_is_idempotent(config):
    configure_logging(config)
    configure_logging(config)
    assert len(_ours(logging.getLogger())) == 1
    assert logging.getLogger().level == logging.ERROR


def test_json_log_file(monkeypatch, config, tmp_path):
    log_file = tmp_path / "ortofree.log"
    monkeypatch.setenv("LOG_FORMAT", "json")
    monkeypatch.setenv("LOG_LEVEL", "INFO")
    monkeypatch.setenv("LOG_FILE", str(log_file))
    cfg = reload_config()
    configure_logging(cfg)
    try:
        assert len(_ours(logging.getLogger())) == 2
        logging.getLogger("mcp_ortofree.test").info("mensaje de prueba")
        for handler in _ours(logging.getLogger()):
            handler.flush()
        entry = json.loads(log_file.read_text(encoding="utf-8").strip().splitlines()[-1])
        assert entry["event"] == "mensaje de prueba"
        assert entry["level"] == "info"
        assert entry["logger"] == "mcp_ortofree.test"
    finally:
        monkeypatch.delenv("LOG_FILE")
        configure_logging(reload_config())
