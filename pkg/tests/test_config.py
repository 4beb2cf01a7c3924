import pytest
import settings
from core.config import DEFAULT_CONFIG_PATH, load_config, load_experiment_config, parse_key_values
from core.errors import ConfigValidationError, UsageError
from core.policies import PolicyKind


@pytest.fixture(autouse=True)
def restore_debug():
    yield
    settings.DEBUG = False


def _write(tmp_path, name, text):
    path = tmp_path / name
    path.write_text(text)
    return path


def test_yaml_grid(tmp_path):
    path = _write(tmp_path, "exp.yaml", "dimensions: [1, 2]\nmus: [1, 10]\nn: 50\nT: 100\nm: 4\npolicies: [mtf, ff]\n")
    grid = load_experiment_config(path)
    assert grid.dimensions == (1, 2)
    assert grid.mus == (1, 10)
    assert grid.template.n == 50
    assert grid.template.m == 4
    assert grid.template.policies == (PolicyKind.MoveToFront, PolicyKind.FirstFit)
    assert [(c.d, c.mu) for c in grid.configs()] == [(1, 1), (1, 10), (2, 1), (2, 10)]


def test_key_value_file(tmp_path):
    text = "# desk run\nd=5\nmu=200\nn=10\nT=1000\nB=100\nbase_seed=7\npolicies=nf, wf\nworkers=2\n"
    grid = load_experiment_config(_write(tmp_path, "exp.txt", text))
    assert grid.dimensions == (5,)
    assert grid.mus == (200,)
    template = grid.template
    assert (template.n, template.base_seed, template.workers) == (10, 7, 2)
    assert template.policies == (PolicyKind.NextFit, PolicyKind.WorstFit)


def test_defaults_follow_the_desk_profile(tmp_path):
    grid = load_experiment_config(_write(tmp_path, "exp.yaml", "d: 2\n"))
    template = grid.template
    assert (template.n, template.mu, template.T, template.B, template.m) == (1000, 10, 1000, 100, 100)
    assert template.policies == tuple(PolicyKind)
    assert template.workers == 1


def test_full_profile(tmp_path):
    grid = load_experiment_config(_write(tmp_path, "exp.txt", "profile=full\n"))
    assert grid.template.m == 1000


def test_debug_flag(tmp_path):
    config = load_config(_write(tmp_path, "exp.txt", "debug=true\n"))
    assert config['debug'] is True
    assert settings.DEBUG


@pytest.mark.parametrize("text", [
    "d: 0\n",
    "policies: [ff, best]\n",
    "profile: huge\n",
    "n: lots\n",
    "colour: blue\n",
])
def test_validation_errors(tmp_path, text):
    with pytest.raises(ConfigValidationError) as info:
        load_config(_write(tmp_path, "exp.yaml", text))
    assert info.value.filetype == "yaml"
    assert info.value.errors


def test_mu_above_horizon(tmp_path):
    with pytest.raises(UsageError):
        load_experiment_config(_write(tmp_path, "exp.yaml", "mus: [5, 50]\nT: 20\n"))


def test_garbage_text():
    with pytest.raises(ConfigValidationError):
        parse_key_values("d 2\n")


def test_missing_file(tmp_path):
    with pytest.raises(UsageError):
        load_config(tmp_path / "missing.yaml")


def test_default_config_points_at_the_shipped_file():
    assert DEFAULT_CONFIG_PATH.endswith(settings.DEFAULT_CONFIG_FILENAME)
