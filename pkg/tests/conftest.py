import pytest

from planestego.imageio import synth_image


@pytest.fixture(scope="session")
def uniform_cover_128():
    return synth_image("uniform", 128, 128, seed=3)


@pytest.fixture(scope="session")
def uniform_set_512():
    return {f"uniform_{s}": synth_image("uniform", 512, 512, seed=s) for s in range(1, 11)}


def pytest_terminal_summary(terminalreporter):
    from test_acceptance import RESULTS

    if RESULTS:
        terminalreporter.section("acceptance criteria")
        for key in sorted(RESULTS, key=lambda k: int(k.split()[0][1:])):
            terminalreporter.write_line(RESULTS[key])
