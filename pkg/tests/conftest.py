import pytest

from dynir.ffield import build_field, extend_field

ACCEPTANCE_RESULTS = []


@pytest.fixture(scope="session")
def F2():
    return build_field(2)


@pytest.fixture(scope="session")
def F3():
    return build_field(3)


@pytest.fixture(scope="session")
def F4():
    return build_field(2, [2])


@pytest.fixture(scope="session")
def F5():
    return build_field(5)


@pytest.fixture(scope="session")
def F7():
    return build_field(7)


@pytest.fixture(scope="session")
def F9():
    return build_field(3, [2])


@pytest.fixture(scope="session")
def F13():
    return build_field(13)


@pytest.fixture(scope="session")
def F19():
    return build_field(19)


@pytest.fixture(scope="session")
def F25():
    return build_field(5, [2])


@pytest.fixture(scope="session")
def F343():
    return build_field(7, [3])


@pytest.fixture(scope="session")
def F343_cubic(F7):
    # the tower defined by x^3 + 6x + 2 rather than the scanned modulus
    return extend_field(F7, [2, 6, 0, 1])


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE_RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for num, desc, passed, elapsed in sorted(ACCEPTANCE_RESULTS):
        status = "PASS" if passed else "FAIL"
        terminalreporter.write_line(
            f"ACCEPTANCE {num:>2}: {status}  ({elapsed:6.2f}s)  {desc}")
