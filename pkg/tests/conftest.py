import warnings

import pytest

from vkerr import RegimeAdvisory, SystemParams

# Acceptance tests register one line each here; the terminal summary prints
# them even when pytest captures stdout.
ACCEPTANCE_LOG = []


def record_criterion(number: int, description: str, passed: bool, detail: str = ""):
    status = "PASS" if passed else "FAIL"
    line = f"criterion {number}: {status} - {description}"
    if detail:
        line += f" ({detail})"
    ACCEPTANCE_LOG.append(line)
    return passed


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    if ACCEPTANCE_LOG:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE_LOG):
            terminalreporter.write_line(line)


@pytest.fixture(scope="session")
def sideband_params():
    """The published operating point: cavity tuned to the Rabi sideband."""
    with warnings.catch_warnings():
        warnings.simplefilter("ignore", RegimeAdvisory)
        return SystemParams(gamma1=0.1, gamma2=0.1, g1=5.0, g2=15.0,
                            kappa=100.0, omega21=200.0, omega_L_rabi=200.0,
                            delta=0.0, delta_c=200.0)


@pytest.fixture(scope="session")
def gentle_params():
    """Deep bad-cavity parameters where the elimination error is tiny."""
    return SystemParams(gamma1=0.02, gamma2=0.02, g1=1.0, g2=3.0,
                        kappa=100.0, omega21=40.0, omega_L_rabi=40.0,
                        delta=0.0, delta_c=40.0)


@pytest.fixture(autouse=True)
def _silence_regime_advisory():
    with warnings.catch_warnings():
        warnings.simplefilter("ignore", RegimeAdvisory)
        yield
