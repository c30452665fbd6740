import pytest
from hypothesis import HealthCheck, settings

from grassauto import cyclo
from grassauto.field import field_from_spec
from grassauto.pgeom import PG

settings.register_profile("default", deadline=None, suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("default")


@pytest.fixture(scope="session")
def f2_3():
    return field_from_spec("f2_3")


@pytest.fixture(scope="session")
def f2_7():
    return field_from_spec("f2_7")


@pytest.fixture(scope="session")
def f2_13():
    return field_from_spec("f2_13")


@pytest.fixture(scope="session")
def f3_5():
    return field_from_spec("f3_5")


@pytest.fixture(scope="session")
def pg53(f3_5):
    return PG(f3_5)


@pytest.fixture(scope="session")
def pg32(f2_3):
    return PG(f2_3)


@pytest.fixture(scope="session")
def lines53(pg53):
    return pg53.all_lines()


@pytest.fixture(scope="session")
def groups13(f2_13):
    return cyclo.build_group_table(f2_13, cyclo.build_coset_table(f2_13))


ACCEPTANCE_LINES: list[str] = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
