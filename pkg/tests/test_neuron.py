
import numpy as np
import pytest
from hypothesis import assume, given, settings, strategies as st

from neurochaos.errors import DomainError, NonConvergenceError
from neurochaos.neuron import (
    ChaosConfig,
    MapKind,
    NeuralTrace,
    ONE_BELOW,
    extract_features,
    fire,
    iterate_map,
)

from oracles import naive_features, naive_fire


def config(q=0.1, b=0.5, epsilon=0.05, map_kind=MapKind.SKEW_TENT, max_iterations=100_000):
    return ChaosConfig(q=q, b=b, epsilon=epsilon, map_kind=map_kind, max_iterations=max_iterations)


class TestChaosConfig:
    @pytest.mark.parametrize(
        "kwargs",
        [
            {"q": 0.0},
            {"q": 1.0},
            {"b": 0.0},
            {"b": 1.0},
            {"epsilon": 0.0},
            {"epsilon": 0.51},
            {"max_iterations": 0},
            {"q": float("nan")},
            {"b": float("inf")},
        ],
    )
    def test_rejects_out_of_domain(self, kwargs):
        with pytest.raises(DomainError):
            config(**kwargs)

    def test_accepts_boundary_epsilon(self):
        assert config(epsilon=0.5).epsilon == 0.5


class TestIterateMap:
    def test_tent_left_branch_doubles(self):
        assert iterate_map(0.25, config(b=0.5)) == 0.5

    def test_tent_right_branch_symmetry(self):
        assert iterate_map(0.75, config(b=0.5)) == 0.5

    def test_binary_right_branch(self):
        got = iterate_map(0.6, config(b=0.25, map_kind=MapKind.SKEW_BINARY))
        assert got == (0.6 - 0.25) / 0.75
        assert abs(got - 0.466667) < 1e-6

    def test_result_stays_below_one(self):
        # tent maps its breakpoint to exactly 1.0, which is folded back
        assert iterate_map(0.5, config(b=0.5)) == ONE_BELOW

    @pytest.mark.parametrize("z", [-0.1, 1.0, 1.5])
    def test_rejects_state_outside_domain(self, z):
        with pytest.raises(DomainError):
            iterate_map(z, config())

    @given(
        z=st.floats(0.0, 1.0, exclude_max=True),
        b=st.floats(0.01, 0.99),
        kind=st.sampled_from(list(MapKind)),
    )
    @settings(max_examples=200, deadline=None)
    def test_codomain(self, z, b, kind):
        out = iterate_map(z, config(b=b, map_kind=kind))
        assert 0.0 <= out < 1.0


class TestFire:
    def test_hand_trace_doubling(self):
        trace = fire(0.4, config(q=0.1, b=0.5, epsilon=0.05))
        assert trace.firing_time == 2
        assert trace.values.tolist() == [0.2, 0.4]

    def test_hand_trace_reflection(self):
        trace = fire(0.85, config(q=0.3, b=0.5, epsilon=0.1))
        assert trace.firing_time == 2
        assert trace.values.tolist() == [0.6, 0.8]

    def test_immediate_recognition(self):
        trace = fire(0.14, config(q=0.141, b=0.499, epsilon=0.147))
        assert trace.firing_time == 0
        assert trace.values.size == 0

    def test_recognition_state_is_last_and_unique(self):
        cfg = config(q=0.23, b=0.47, epsilon=0.02)
        trace = fire(0.81, cfg)
        assert abs(trace.values[-1] - 0.81) < cfg.epsilon
        assert abs(cfg.q - 0.81) >= cfg.epsilon
        for v in trace.values[:-1]:
            assert abs(v - 0.81) >= cfg.epsilon

    def test_stimulus_one_is_accepted(self):
        trace = fire(1.0, config(q=0.3, b=0.5, epsilon=0.25))
        assert trace.firing_time == 2
        assert abs(trace.values[-1] - 1.0) < 0.25

    @pytest.mark.parametrize("stimulus", [-0.01, 1.01, float("nan")])
    def test_rejects_stimulus_outside_domain(self, stimulus):
        with pytest.raises(DomainError):
            fire(stimulus, config())

    def test_nonconvergence_on_dead_orbit(self):
        # skew binary sends b to 0, and 0 is a fixed point
        cfg = config(q=0.5, b=0.5, epsilon=0.01,
                     map_kind=MapKind.SKEW_BINARY, max_iterations=1000)
        with pytest.raises(NonConvergenceError):
            fire(0.9, cfg)

    def test_deterministic(self):
        cfg = config(q=0.37, b=0.61, epsilon=0.004)
        a = fire(0.52, cfg)
        b = fire(0.52, cfg)
        assert np.array_equal(a.values, b.values)


class TestExtractFeatures:
    def test_hand_trace_doubling_features(self):
        cfg = config(q=0.1, b=0.5, epsilon=0.05)
        feats = extract_features(fire(0.4, cfg), cfg)
        assert feats.firing_time == 2
        assert feats.firing_rate == 0.0
        assert abs(feats.energy - 0.05) < 1e-12  # 0.1^2 + 0.2^2
        assert feats.entropy == 0.0

    def test_hand_trace_reflection_features(self):
        cfg = config(q=0.3, b=0.5, epsilon=0.1)
        feats = extract_features(fire(0.85, cfg), cfg)
        assert feats.firing_time == 2
        assert feats.firing_rate == 0.5   # window 0.3, 0.6 straddles b
        assert abs(feats.energy - 0.45) < 1e-12  # 0.3^2 + 0.6^2
        assert feats.entropy == 1.0

    def test_immediate_recognition_is_all_zero(self):
        cfg = config(q=0.141, b=0.499, epsilon=0.147)
        feats = extract_features(fire(0.14, cfg), cfg)
        assert (feats.firing_time, feats.firing_rate, feats.energy, feats.entropy) == (0, 0.0, 0.0, 0.0)

    def test_equiprobable_symbols_maximize_entropy(self):
        # window q, 0.2, 0.6, 0.3 with q=0.7 alternates symbols 1,0,1,0
        cfg = config(q=0.7, b=0.5, epsilon=0.05)
        trace = NeuralTrace(stimulus=0.68, values=np.array([0.2, 0.6, 0.3, 0.7]))
        feats = extract_features(trace, cfg)
        assert feats.firing_rate == 0.5
        assert feats.entropy == 1.0

    def test_as_array_layout(self):
        cfg = config(q=0.3, b=0.5, epsilon=0.1)
        arr = extract_features(fire(0.85, cfg), cfg).as_array()
        assert arr.tolist() == [2.0, 0.5, pytest.approx(0.45), 1.0]


# epsilon's lower bound keeps firing times short enough for pure-python loops
finite_tuples = st.tuples(
    st.floats(0.0, 1.0),          # stimulus
    st.floats(0.01, 0.99),        # q
    st.floats(0.05, 0.95),        # b
    st.floats(0.05, 0.5),         # epsilon
    st.sampled_from(list(MapKind)),
)


def fire_or_discard(stimulus, cfg):
    """Dead floating-point orbits (e.g. q == b under the binary map) are a
    designed NonConvergence outcome, not a property violation; discard them."""
    try:
        return fire(stimulus, cfg)
    except NonConvergenceError:
        assume(False)


class TestOracleAgreement:
    @given(finite_tuples)
    @settings(max_examples=100, deadline=None)
    def test_matches_naive_reference(self, tup):
        stimulus, q, b, eps, kind = tup
        cfg = config(q=q, b=b, epsilon=eps, map_kind=kind, max_iterations=5000)
        trace = fire_or_discard(stimulus, cfg)
        assert trace.values.tolist() == naive_fire(stimulus, q, b, eps, kind.value)
        feats = extract_features(trace, cfg)
        n, r, e, h = naive_features(stimulus, q, b, eps, kind.value)
        assert feats.firing_time == n
        assert abs(feats.firing_rate - r) <= 1e-12
        assert abs(feats.energy - e) <= 1e-12
        assert abs(feats.entropy - h) <= 1e-12


class TestInvariants:
    @given(finite_tuples)
    @settings(max_examples=100, deadline=None)
    def test_feature_bounds(self, tup):
        stimulus, q, b, eps, kind = tup
        cfg = config(q=q, b=b, epsilon=eps, map_kind=kind, max_iterations=5000)
        feats = extract_features(fire_or_discard(stimulus, cfg), cfg)
        n = feats.firing_time
        assert n >= 0
        assert 0.0 <= feats.firing_rate <= 1.0
        assert 0.0 <= feats.energy <= n
        assert 0.0 <= feats.entropy <= 1.0
        if n == 0:
            assert feats.firing_rate == feats.energy == feats.entropy == 0.0

    @given(finite_tuples)
    @settings(max_examples=100, deadline=None)
    def test_entropy_extremes(self, tup):
        stimulus, q, b, eps, kind = tup
        cfg = config(q=q, b=b, epsilon=eps, map_kind=kind, max_iterations=5000)
        trace = fire_or_discard(stimulus, cfg)
        feats = extract_features(trace, cfg)
        n = feats.firing_time
        if n == 0:
            return
        window = [cfg.q] + trace.values[:-1].tolist()
        ones = sum(1 for v in window if v >= cfg.b)
        if feats.entropy == 0.0:
            assert ones in (0, n)
        if ones in (0, n):
            assert feats.entropy == 0.0
        if 2 * ones == n:
            assert feats.entropy == 1.0
