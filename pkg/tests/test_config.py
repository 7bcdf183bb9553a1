import pytest

from utils.config_utils import DEFAULT_CONFIG, default_config, load_config


def test_repository_config_matches_defaults():
    config = load_config()
    assert config['repro']['seed'] == 20240607
    assert config['probability']['exact_limit'] == 5000
    assert config['property']['work_budget'] == DEFAULT_CONFIG['property']['work_budget']


def test_partial_file_is_merged_with_defaults(write_file):
    path = write_file("partial.yaml", "property:\n  jobs: 4\nrepro:\n  instances: 7\n")
    config = load_config(path)
    assert config['property']['jobs'] == 4
    assert config['property']['sample_trials'] == 10000
    assert config['repro'] == {'seed': 20240607, 'instances': 7}


def test_environment_variable_selects_the_file(write_file, monkeypatch):
    path = write_file("env.yaml", "find_target:\n  max_trials: 3\n")
    monkeypatch.setenv('MIXCOL_CONFIG', path)
    assert load_config()['find_target']['max_trials'] == 3


def test_missing_explicit_path_raises(tmp_path):
    with pytest.raises(FileNotFoundError):
        load_config(str(tmp_path / "absent.yaml"))


def test_default_config_is_a_copy():
    config = default_config()
    config['solver']['oracle_max_vertices'] = 1
    assert DEFAULT_CONFIG['solver']['oracle_max_vertices'] == 6
