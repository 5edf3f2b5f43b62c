import math

import pytest

ecsim = pytest.importorskip("ecsim")


def test_w_closed_form():
    assert ecsim.bm_w_closed(0.0) == pytest.approx(2.0, abs=1e-12)
    assert ecsim.bm_w_generic(1.5) == pytest.approx(ecsim.bm_w_closed(1.5), abs=1e-10)


def test_zero_settings():
    zeros = [0.0] * 12
    assert ecsim.bm_parity(0.7, ecsim.GhzSign.Minus, zeros) == pytest.approx(2.0)
    with pytest.raises(Exception):
        ecsim.bm_parity(0.7, ecsim.GhzSign.Minus, [0.0] * 3)


def test_w_circuit():
    p = ecsim.w_branch_probabilities(6.0, 0.6)
    assert sum(p.values()) == pytest.approx(1.0, abs=1e-12)
    assert p["A"] == pytest.approx(0.4, abs=0.01)
    alpha = ecsim.w_effective_alpha(2.0, 0.5)
    assert alpha == pytest.approx(complex(math.cos(0.5) - 1.0, math.sin(0.5)))


def test_ghz_and_optimizer():
    assert ecsim.ghz_fidelity(1.0, ecsim.GhzSign.Minus) == pytest.approx(1.0, abs=1e-12)
    value, params = ecsim.maximize_bell("parity", 1.0, restarts=4, seed=3)
    assert len(params) == 12
    assert value > 2.0
    assert ecsim.maximize_bell("parity", 1.0, restarts=4, seed=3)[0] == value
