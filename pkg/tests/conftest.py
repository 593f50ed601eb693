import numpy as np
import pytest

import l1crossed as L
from l1crossed.acceptance import heisenberg_inner_system


def naive_convolve(x, y):
    """(xy)(g) = sum_k x_k alpha_k(y_{k^-1 g}), summed over every pair of support points."""
    system = x.system
    G, ctx, action = system.group, system.ctx, system.action
    out = {}
    for k, xk in x.support.items():
        for h, yh in y.support.items():
            g = G.mul(k, h)
            term = ctx.mul(xk, action.apply(k, yh))
            out[g] = out[g] + term if g in out else term
    return system.element(out)


@pytest.fixture(scope="session")
def systems():
    out = dict(L.standard_systems())
    out["H2_M2_inner"] = heisenberg_inner_system()
    out["Z6_C5_dyn"] = L.from_dynamical_system(5, [1, 0, 3, 4, 2], "cyclic")
    return out


@pytest.fixture
def rng():
    return np.random.default_rng(12345)
