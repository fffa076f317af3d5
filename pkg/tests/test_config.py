"""test_config.py — verify.toml loading and environment overrides."""

from dataclasses import fields

from execution.linetrees.config import (
    DEFAULT_CONFIG_PATH,
    FuzzDefaults,
    Limits,
    load_verify_config,
)
from execution.linetrees.reports import (
    REPORT_SCHEMA_VERSION,
    InstanceDescriptor,
    VerificationReport,
)


def test_repo_config_matches_defaults():
    """The committed verify.toml spells out the built-in defaults."""
    cfg = load_verify_config(DEFAULT_CONFIG_PATH)
    assert cfg.limits == Limits()
    assert cfg.fuzz == FuzzDefaults()
    assert cfg.include_timing is True


def test_missing_file_uses_defaults(tmp_path):
    """A missing file falls back to the dataclass defaults."""
    cfg = load_verify_config(tmp_path / "absent.toml")
    assert cfg.limits.enumeration_cap == 200_000
    assert cfg.include_timing is True


def test_partial_file(tmp_path, monkeypatch):
    """Keys that are present override; the rest keep their defaults."""
    monkeypatch.delenv("LINETREES_LOG_LEVEL", raising=False)
    path = tmp_path / "verify.toml"
    path.write_text(
        "[limits]\nenumeration_cap = 10\n[fuzz]\nr_values = [0, 3]\n"
        "[report]\ninclude_timing = false\n[logging]\nlevel = \"debug\"\n",
        encoding="utf-8",
    )
    cfg = load_verify_config(path)
    assert cfg.limits.enumeration_cap == 10
    assert cfg.limits.gamma_max_edges == 30
    assert cfg.fuzz.r_values == (0, 3)
    assert cfg.include_timing is False
    assert cfg.log_level == "DEBUG"


def test_env_overrides(tmp_path, monkeypatch):
    """LINETREES_CONFIG picks the file and LINETREES_LOG_LEVEL the level."""
    path = tmp_path / "other.toml"
    path.write_text("[fuzz]\nmax_n = 5\n", encoding="utf-8")
    monkeypatch.setenv("LINETREES_CONFIG", str(path))
    monkeypatch.setenv("LINETREES_LOG_LEVEL", "warning")
    cfg = load_verify_config()
    assert cfg.fuzz.max_n == 5
    assert cfg.log_level == "WARNING"


def test_report_schema_is_not_configurable(tmp_path):
    """A stray [report] schema key is ignored; reports carry the fixed version."""
    path = tmp_path / "verify.toml"
    path.write_text("[report]\nschema = 7\n", encoding="utf-8")
    cfg = load_verify_config(path)
    assert "schema" not in {f.name for f in fields(cfg)}
    instance = InstanceDescriptor(generator="test", n=2, m=1, graph_class="general")
    assert VerificationReport(instance=instance).schema_version == REPORT_SCHEMA_VERSION == 1
