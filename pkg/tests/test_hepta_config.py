import pytest

from errors import ConfigError
from hepta_config import HeptaConfig


class TestLoadConfig:
    def test_defaults(self):
        config = HeptaConfig.load_config()
        assert config.max_exact_n == 30
        assert config.minor_audit_full_n == 4
        assert config.seed == 2019

    def test_environment(self, monkeypatch):
        monkeypatch.setenv("HEPTASPEC_MAX_EXACT_N", "12")
        monkeypatch.setenv("HEPTASPEC_SEED", "7")
        config = HeptaConfig.load_config()
        assert config.max_exact_n == 12
        assert config.seed == 7

    def test_override_beats_environment(self, monkeypatch):
        monkeypatch.setenv("HEPTASPEC_MAX_EXACT_N", "12")
        assert HeptaConfig.load_config(max_exact_n=3).max_exact_n == 3
        assert HeptaConfig.load_config(max_exact_n=None).max_exact_n == 12

    def test_blank_environment_ignored(self, monkeypatch):
        monkeypatch.setenv("HEPTASPEC_MAX_EXACT_N", " ")
        assert HeptaConfig.load_config().max_exact_n == 30

    @pytest.mark.parametrize("raw", ["abc", "0"])
    def test_invalid(self, monkeypatch, raw):
        monkeypatch.setenv("HEPTASPEC_MAX_EXACT_N", raw)
        with pytest.raises(ConfigError):
            HeptaConfig.load_config()
