from math import pi, sqrt

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from oracles import adam_scalar, bandit_probs, qie_probs
from qagentlab.errors import OptimizerError
from qagentlab.qsim import StatevectorSimulator
from qagentlab.variational import (BanditPolicy, PolicyParams, QiePolicy, adam_step,
                                   policy_grad, policy_probs)

angles = st.lists(st.floats(-2 * pi, 2 * pi), min_size=4, max_size=4)
features = st.tuples(st.floats(0, pi), st.floats(0, pi))


def central_diff(spec, theta, k, h=1e-6):
    g = np.empty(4)
    for j in range(4):
        e = np.zeros(4)
        e[j] = h
        g[j] = (policy_probs(spec, theta + e)[k] - policy_probs(spec, theta - e)[k]) / (2 * h)
    return g


def test_bandit_probs_frozen_at_initial_angles():
    # closed form of the oracle at theta = pi/4 everywhere
    want = [5 / 16 + sqrt(2) / 8, 7 / 16 - sqrt(2) / 8, 3 / 16, 1 / 16]
    assert np.allclose(bandit_probs([pi / 4] * 4), want, atol=1e-15)
    got = policy_probs(BanditPolicy(), PolicyParams.initial())
    assert np.allclose(got, want, atol=1e-12)


def test_qie_probs_frozen_at_half_pi_feature():
    want = [0.1875, 0.1357233, 0.0625, 0.6142767]
    got = policy_probs(QiePolicy((pi / 2, pi / 2)), PolicyParams.initial())
    assert np.allclose(got, want, atol=1e-7)
    assert np.allclose(got, qie_probs((pi / 2, pi / 2), [pi / 4] * 4), atol=1e-12)


@settings(max_examples=50, deadline=None)
@given(angles)
def test_bandit_probs_match_oracle(theta):
    assert np.allclose(policy_probs(BanditPolicy(), theta), bandit_probs(theta), atol=1e-12)


@settings(max_examples=50, deadline=None)
@given(features, angles)
def test_qie_probs_match_oracle(x, theta):
    assert np.allclose(policy_probs(QiePolicy(x), theta), qie_probs(x, theta), atol=1e-12)


@settings(max_examples=200, deadline=None)
@given(features, angles)
def test_probs_form_a_distribution(x, theta):
    for spec in (BanditPolicy(), QiePolicy(x)):
        p = policy_probs(spec, theta)
        assert np.all(p >= -1e-15) and np.all(p <= 1 + 1e-12)
        assert abs(p.sum() - 1) < 1e-12


@settings(max_examples=30, deadline=None)
@given(features, angles, st.integers(0, 3))
def test_parameter_shift_matches_finite_difference(x, theta, k):
    theta = np.array(theta)
    for spec in (BanditPolicy(), QiePolicy(x)):
        assert np.allclose(policy_grad(spec, theta, k), central_diff(spec, theta, k, 1e-6), atol=1e-5)


@settings(max_examples=30, deadline=None)
@given(features, angles)
def test_gradients_sum_to_zero(x, theta):
    for spec in (BanditPolicy(), QiePolicy(x)):
        total = sum(policy_grad(spec, theta, k) for k in range(4))
        assert np.max(np.abs(total)) < 1e-12


def test_policy_probs_uses_given_simulator():
    sim = StatevectorSimulator()
    policy_probs(BanditPolicy(), PolicyParams.initial(), sim)
    assert sim.executions == 1


# -- Adam -------------------------------------------------------------------

def test_adam_first_step_moves_by_lr():
    # bias correction makes the first step lr * sign(g) up to eps
    p = adam_step(PolicyParams.initial(0.0), [0.3, -2.0, 1e-3, 5.0], lr=0.1)
    assert np.allclose(p.theta, [-0.1, 0.1, -0.1, -0.1], atol=1e-6)
    assert p.step_count == 1


def test_adam_zero_gradient_keeps_theta():
    p0 = PolicyParams.initial()
    p = adam_step(p0, np.zeros(4))
    assert np.array_equal(p.theta, p0.theta)
    assert p.step_count == 1


@settings(max_examples=50, deadline=None)
@given(st.lists(st.lists(st.floats(-5, 5), min_size=4, max_size=4), min_size=1, max_size=20),
       st.floats(1e-3, 0.5))
def test_adam_matches_scalar_oracle(grads, lr):
    p = PolicyParams.initial(0.0)
    for g in grads:
        p = adam_step(p, g, lr)
    for j in range(4):
        want = adam_scalar([g[j] for g in grads], lr)
        assert abs(p.theta[j] - want) < 1e-12


def test_adam_is_pure_and_deterministic():
    p0 = PolicyParams.initial()
    a = adam_step(p0, [0.1, 0.2, 0.3, 0.4])
    b = adam_step(p0, [0.1, 0.2, 0.3, 0.4])
    assert np.array_equal(a.theta, b.theta) and np.array_equal(a.adam_v, b.adam_v)
    assert np.all(p0.theta == pi / 4) and p0.step_count == 0
    with pytest.raises(ValueError):
        p0.theta[0] = 1.0


@pytest.mark.parametrize("bad", [[np.nan, 0, 0, 0], [0, np.inf, 0, 0]])
def test_adam_rejects_non_finite(bad):
    with pytest.raises(OptimizerError):
        adam_step(PolicyParams.initial(), bad)


def test_adam_rejects_wrong_shape():
    with pytest.raises(OptimizerError):
        adam_step(PolicyParams.initial(), [0.0, 1.0])


def test_params_shape_checked():
    with pytest.raises(ValueError):
        PolicyParams(np.zeros(3))
