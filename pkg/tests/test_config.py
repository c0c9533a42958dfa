import pytest

from arithlab_toolkit import config as lab_config
from arithlab_toolkit.config import LabConfig, get_config, key_for, load_config
from arithlab_toolkit.errors import BudgetExceeded, ConfigError


def test_defaults_without_file(tmp_path, monkeypatch):
    monkeypatch.chdir(tmp_path)
    assert load_config() == LabConfig()


def test_env_file_and_override(tmp_path, monkeypatch):
    env = tmp_path / ".lab_env"
    env.write_text("ARITHLAB_ENUM_BUDGET=1_000\nARITHLAB_NUM_THREADS=2\n"
                   "ARITHLAB_LOG_LEVEL=info\n", encoding="utf-8")
    cfg = load_config(str(env))
    assert cfg.enum_budget == 1000
    assert cfg.num_threads == 2
    assert cfg.log_level == "INFO"
    assert cfg.bfs_budget == LabConfig().bfs_budget

    monkeypatch.setenv("ARITHLAB_ENUM_BUDGET", "77")
    assert load_config(str(env)).enum_budget == 77


@pytest.mark.parametrize("line", [
    "ARITHLAB_ENUM_BUDGET=many",
    "ARITHLAB_NUM_THREADS=0",
    "ARITHLAB_LOG_LEVEL=chatty",
])
def test_bad_values(tmp_path, line):
    env = tmp_path / ".lab_env"
    env.write_text(line + "\n", encoding="utf-8")
    with pytest.raises(ConfigError):
        load_config(str(env))


def test_missing_explicit_file(tmp_path):
    with pytest.raises(ConfigError):
        load_config(str(tmp_path / "absent.env"))


def test_budget_message_names_key():
    err = BudgetExceeded("too many points", bound=10, key=key_for("point_count_max"))
    assert "ARITHLAB_POINT_COUNT_MAX" in str(err)
    assert err.bound == 10


def test_get_config_is_lazy(monkeypatch, tmp_path):
    monkeypatch.chdir(tmp_path)
    monkeypatch.setattr(lab_config, "_active", None)
    monkeypatch.setenv("ARITHLAB_QUAT_DISC_MAX", "50")
    assert get_config().quat_disc_max == 50
    assert get_config() is get_config()
