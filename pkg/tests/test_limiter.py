""" Test the different scenarios of limiter.py
"""
import pytest

from sft_lift.exceptions import ResourceLimit
from sft_lift.limiter import DEFAULT_NODE_BUDGET, Budget, Limiter


def test_defaults():
    """ Test the limits applied when nothing is configured
    """
    limiter = Limiter()
    assert limiter.node_budget == DEFAULT_NODE_BUDGET
    assert limiter.time_limit is None
    assert limiter.threads == 1
    assert limiter.describe() == {'node_budget': DEFAULT_NODE_BUDGET, 'time_limit': None}


def test_environment(monkeypatch):
    """ Test that the limits are read from the environment
    """
    monkeypatch.setenv('SFTLIFT_NODE_BUDGET', '1000')
    monkeypatch.setenv('SFTLIFT_TIME_LIMIT', '2.5')
    monkeypatch.setenv('SFTLIFT_THREADS', '3')
    limiter = Limiter()
    assert limiter.node_budget == 1000
    assert limiter.time_limit == 2.5
    assert limiter.threads == 3


def test_malformed_environment(monkeypatch, caplog):
    monkeypatch.setenv('SFTLIFT_NODE_BUDGET', 'lots')
    assert Limiter().node_budget == DEFAULT_NODE_BUDGET
    assert 'SFTLIFT_NODE_BUDGET' in caplog.text


def test_explicit_values_win(monkeypatch):
    """ Test that arguments override both the config dict and the environment
    """
    monkeypatch.setenv('SFTLIFT_NODE_BUDGET', '1000')
    limiter = Limiter(node_budget=50, threads=0, config={'SFTLIFT_NODE_BUDGET': 10, 'SFTLIFT_PROOF_LIMIT': 7})
    assert limiter.node_budget == 50
    assert limiter.proof_limit == 7
    # at least one thread
    assert limiter.threads == 1
    assert Limiter(config={'SFTLIFT_NODE_BUDGET': 10}).node_budget == 10


def test_non_positive_budget(caplog):
    Limiter(node_budget=0)
    assert 'must be positive' in caplog.text


def test_budget_nodes():
    """ Test that a budget raises once it has counted more nodes than allowed
    """
    budget = Limiter(node_budget=3).budget()
    budget.hit(3)
    assert budget.nodes == 3
    with pytest.raises(ResourceLimit) as e:
        budget.hit()
    assert e.value.reason == 'node budget'
    assert e.value.nodes == 4

    # every search gets a fresh budget
    assert Limiter(node_budget=3).budget().nodes == 0


def test_budget_time():
    budget = Budget(10_000, 0.5)
    budget.started -= 1
    assert budget.elapsed > 0.5
    # the clock is read every 256 nodes only
    budget.hit(255)
    with pytest.raises(ResourceLimit) as e:
        budget.hit()
    assert e.value.reason == 'time limit'
