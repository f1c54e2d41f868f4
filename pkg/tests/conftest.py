import pytest

from sft_lift import zoo
from sft_lift.groups import FreeAbelian, FreeGroup, cyclic_group
from sft_lift.limiter import Limiter


@pytest.fixture()
def f2():
    """ The free group on a, b
    """
    return FreeGroup(2, ('a', 'b'))


@pytest.fixture()
def z2():
    """ ℤ² on a, b
    """
    return FreeAbelian(2, ('a', 'b'))


@pytest.fixture()
def z():
    """ ℤ on t
    """
    return FreeAbelian(1, ('t',))


@pytest.fixture()
def c3():
    return cyclic_group(3)


@pytest.fixture()
def limiter():
    """ Create a limiter with a budget small enough to catch a runaway search
    """
    return Limiter(node_budget=500_000, config={})


@pytest.fixture()
def piantadosi_z2():
    return zoo.lookup('piantadosi-z2', 'sft')


@pytest.fixture()
def piantadosi_f2():
    return zoo.lookup('piantadosi-f2', 'sft')


@pytest.fixture()
def mod3_z():
    return zoo.lookup('mod3-z', 'sft')


@pytest.fixture()
def mod3_lift():
    return zoo.lookup('mod3-lift-z2', 'sft')


@pytest.fixture()
def paradoxical():
    return zoo.lookup('paradoxical-f2', 'sft')


@pytest.fixture()
def golden_mean():
    return zoo.lookup('golden-mean-z', 'sft')


@pytest.fixture(autouse=True)
def clean_environment(monkeypatch):
    """ Make sure the budgets of the tests never come from the calling shell
    """
    for name in ('SFTLIFT_NODE_BUDGET', 'SFTLIFT_TIME_LIMIT', 'SFTLIFT_THREADS'):
        monkeypatch.delenv(name, raising=False)
