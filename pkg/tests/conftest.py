import numpy as np
import pytest

from elastinv.harmonic import HarmonicParts
from elastinv.tensor import harm2, harm4


def random_parts(rng, scale=1.0) -> HarmonicParts:
    """Harmonic parts with independent Gaussian components."""
    lam, mu = rng.standard_normal(2)
    return HarmonicParts(float(lam), float(mu), harm2(rng.standard_normal(5) * scale),
                         harm2(rng.standard_normal(5) * scale), harm4(rng.standard_normal(9) * scale))


def family1(alpha, beta, gamma):
    """Nine stored components of the 4-fold in-plane family."""
    return np.array([beta, 0, gamma, alpha, 0, 0, 0, -2 * alpha, 0], dtype=float)


def family2(alpha, beta, gamma):
    """Nine stored components of the 3-fold in-plane family."""
    return np.array([-0.75 * alpha, beta, 0, alpha, gamma, 0, 0, -2 * alpha, 0], dtype=float)


def rel_err(x, y):
    x, y = np.asarray(x, float), np.asarray(y, float)
    return float(np.abs(x - y).max() / max(1.0, np.abs(y).max()))


@pytest.fixture
def rng():
    return np.random.default_rng(20240611)


def pytest_terminal_summary(terminalreporter):
    import sys

    module = sys.modules.get("test_acceptance")
    if module is None or not module.RESULTS:
        return
    terminalreporter.section("acceptance")
    for criterion in sorted(module.RESULTS):
        entries = module.RESULTS[criterion]
        verdict = "PASS" if all(ok for ok, _ in entries) else "FAIL"
        terminalreporter.write_line(f"criterion {criterion}: {verdict}  " + "; ".join(d for _, d in entries))
