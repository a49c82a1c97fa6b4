from pytest import raises

from pinczon_algebra import ConfigNotFoundError, load_config


def test_hydra_defaults():
    cfg = load_config()
    assert cfg.size_cap == 20000
    assert cfg.max_arity == 6
    assert cfg.trials == 25
    assert cfg.seed is None


def test_hydra_config():
    cfg = load_config("config", overrides=["+engine=small"])
    assert cfg.size_cap == 100
    assert cfg.trials == 3
    assert cfg.seed == 7
    assert cfg.max_arity == 6


def test_hydra_config_name():
    cfg = load_config("config", "tiny")
    assert cfg.max_arity == 3
    assert cfg.size_cap == 20000


def test_hydra_config_missing():
    with raises(ConfigNotFoundError):
        load_config("no-such-config-directory")
