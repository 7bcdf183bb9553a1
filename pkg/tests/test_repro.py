import pytest

from scripts.repro import ExperimentResult, ReproRunner


@pytest.fixture
def runner(config):
    config['repro']['instances'] = 40
    return ReproRunner(config)


@pytest.mark.parametrize("name", ["p5", "inequalities", "union-bound", "delta-one", "proposition"])
def test_light_experiments_pass(runner, name):
    result = runner.run(name)
    assert result.ok, result.to_text()
    assert result.to_text().endswith("verdict PASS\n")


def test_p5_reports_both_facts(runner):
    lines = runner.run('p5').lines
    assert lines[0] == "max chi over orientations of P_5: 3"
    assert lines[1] != "2-edge-colouring of P_5 with chi 4: none"


def test_properties_experiment_uses_configured_instances(runner):
    result = runner.run('properties')
    assert result.ok
    assert all(line.endswith("0 violations in 40 instances") for line in result.lines)


def test_universal_experiment_on_few_instances(runner):
    result = runner.universal(instances=10)
    assert result.ok
    assert "10/10 valid into 12 vertices" in result.lines[0]


def test_unknown_experiment(runner):
    with pytest.raises(KeyError):
        runner.run('everything')


def test_failed_verdict_text():
    assert ExperimentResult('x', False, ("a",)).to_text() == "a\nverdict FAIL\n"
