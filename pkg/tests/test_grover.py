from math import sqrt

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from qagentlab.grover import (ACTIONS, GroverAgent, GroverTask, build_diffuser, build_oracle,
                              grover_circuit, select_action)
from qagentlab.qsim import Circuit, StatevectorSimulator, circuit_unitary, probabilities, run


@pytest.mark.parametrize("target", ACTIONS)
def test_oracle_is_phase_flip_of_target(target):
    want = np.eye(4)
    want[int(target, 2), int(target, 2)] = -1
    assert np.allclose(circuit_unitary(build_oracle(target)), want, atol=1e-12)


def test_diffuser_is_inversion_about_mean():
    s = np.full(4, 0.5)
    want = 2 * np.outer(s, s) - np.eye(4)
    u = circuit_unitary(build_diffuser())
    # equal up to a global phase
    phase = u[0, 0] / want[0, 0]
    assert abs(abs(phase) - 1) < 1e-12
    assert np.allclose(u, phase * want, atol=1e-12)


@pytest.mark.parametrize("target", ACTIONS)
def test_single_iteration_is_exact(target):
    p = probabilities(run(grover_circuit(target)))
    assert p[int(target, 2)] >= 1 - 1e-10


@settings(max_examples=40, deadline=None)
@given(st.sampled_from(ACTIONS), st.integers(0, 2**32 - 1), st.integers(1, 5000))
def test_select_action_returns_target(target, seed, shots):
    chosen, hist = select_action(GroverTask(target, shots), np.random.default_rng(seed))
    assert chosen == target
    assert hist.counts == {target: shots}


def test_select_action_counts_simulator_runs():
    sim = StatevectorSimulator()
    select_action(GroverTask(), np.random.default_rng(0), sim)
    assert sim.executions == 1


def test_agent_keeps_probabilities_and_memory():
    agent = GroverAgent(shots=16, rng=np.random.default_rng(3))
    chosen, _ = agent.step("01")
    assert chosen == "01"
    assert len(agent.memory) == 1
    assert abs(agent.last_probabilities.sum() - 1) < 1e-12


def test_uniform_prep_amplitude():
    amps = run(Circuit(2).h(0).h(1)).amplitudes
    assert np.allclose(amps, [1 / sqrt(4)] * 4)


@pytest.mark.parametrize("bad", [dict(target="2"), dict(target="100"), dict(shots=0)])
def test_task_validation(bad):
    with pytest.raises(ValueError):
        GroverTask(**bad)
