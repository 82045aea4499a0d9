from __future__ import annotations

import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from seedclust.anomaly import classify, expectation, expectation_many, fit
from seedclust.core import deviations


def scan_oracle(values):
    """Independent tail scan over sorted 1-D deviations.

    Applies E(g) = n*(1 - g/support)^(n-1) < 1 to the suffix spacings
    directly: a spacing of zero expectation (g >= support) puts everything
    above it in the tail; from the retained top, spacings with E < 1 peel
    points one at a time. Pure Python, no shared code with fit().
    """
    values = sorted(float(v) for v in values)
    n = len(values)
    med = (
        values[n // 2]
        if n % 2
        else (values[n // 2 - 1] + values[n // 2]) / 2
    )
    dev = sorted(abs(v - med) for v in values)
    mu = sum(dev) / n
    support = 2 * mu

    def e_of_gap(g):
        if support == 0:
            return float(n) if g <= 0 else 0.0
        if g >= support:
            return 0.0
        return n * (1 - g / support) ** (n - 1)

    gap_star = 0.0 if (n == 1 or support == 0) else support * (1 - n ** (-1 / (n - 1)))
    top = n - 1
    for j in range(1, n):
        g = dev[j] - dev[j - 1]
        if g > 0 and e_of_gap(g) == 0.0:
            top = j - 1
            break
    while top > 0 and dev[top] - dev[top - 1] > gap_star:
        top -= 1
    cutoff = dev[top] + gap_star
    return {i for i, d in enumerate(dev) if d > cutoff}, dev, cutoff


class TestFitExamples:
    def test_six_point_hand_computation(self):
        m = fit([[1], [2], [3], [4], [5], [50]])
        assert m.median[0] == pytest.approx(3.5)
        assert m.mu == pytest.approx(53 / 6)
        assert m.support == pytest.approx(53 / 3)
        assert m.gap_star == pytest.approx((53 / 3) * (1 - 6 ** (-1 / 5)), rel=1e-12)
        assert m.gap_star == pytest.approx(5.3207, abs=1e-4)
        assert m.edge == pytest.approx(2.5)
        assert m.cutoff == pytest.approx(7.8207, abs=1e-4)
        # tail is exactly the far point
        dev = deviations(np.array([[1], [2], [3], [4], [5], [50]], float), m.median)
        assert list(dev > m.cutoff) == [False] * 5 + [True]

    def test_identical_points_degenerate(self):
        m = fit([[3.0]] * 7)
        assert m.mu == 0.0 and m.support == 0.0 and m.gap_star == 0.0
        assert m.edge == 0.0 and m.cutoff == 0.0
        assert classify(m, [3.0]) == ("member", 7.0)
        verdict, score = classify(m, [3.0000001])
        assert verdict == "anomaly" and score == 0.0

    def test_eight_evenly_spaced(self):
        pts = [[v] for v in np.arange(0.1, 0.85, 0.1)]
        m = fit(pts)
        assert m.median[0] == pytest.approx(0.45)
        assert m.mu == pytest.approx(0.2)
        assert m.support == pytest.approx(0.4)
        assert m.gap_star == pytest.approx(0.4 * (1 - 8 ** (-1 / 7)), rel=1e-12)
        assert m.gap_star == pytest.approx(0.1028, abs=1e-4)
        assert m.edge == pytest.approx(0.35)
        assert m.cutoff == pytest.approx(0.4528, abs=1e-4)
        dev = deviations(np.asarray(pts), m.median)
        assert not (dev > m.cutoff).any()  # no tail

    def test_single_point(self):
        m = fit([[5.0, 5.0]])
        assert m.n == 1 and m.cutoff == 0.0

    def test_empty_errors(self):
        with pytest.raises(ValueError, match="empty cluster"):
            fit(np.empty((0, 2)))

    def test_colocated_far_group_is_ejected(self):
        # two identical far points. Their mutual spacing is 0 but the gap
        # below them has zero expectation, so both land in the tail.
        pts = [[v] for v in [0.0, 0.2, 0.4, 0.6, 0.8, 1.0, 50.0, 50.0]]
        m = fit(pts)
        dev = deviations(np.asarray(pts), m.median)
        assert list(dev > m.cutoff) == [False] * 6 + [True, True]


class TestExpectation:
    @pytest.fixture
    def model6(self):
        return fit([[1], [2], [3], [4], [5], [50]])

    def test_full_expectation_inside_edge(self, model6):
        assert expectation(model6, 2.0) == 6.0
        assert expectation(model6, model6.edge) == 6.0

    def test_hand_values(self, model6):
        assert expectation(model6, 6.0) == pytest.approx(6 * (1 - 3.5 / (53 / 3)) ** 5, rel=1e-12)
        assert expectation(model6, 6.0) == pytest.approx(1.9894, abs=1e-4)
        assert expectation(model6, 9.0) == pytest.approx(0.6053, abs=1e-4)

    def test_negative_deviation_errors(self, model6):
        with pytest.raises(ValueError, match="non-negative"):
            expectation(model6, -0.1)

    def test_at_cutoff_is_one(self, model6):
        assert expectation(model6, model6.cutoff) == pytest.approx(1.0, rel=1e-12)
        assert expectation(model6, model6.cutoff) >= 1.0  # member side, exactly

    def test_beyond_support_is_zero(self, model6):
        assert expectation(model6, model6.edge + model6.support) == 0.0
        assert expectation(model6, 1e9) == 0.0

    def test_vectorized_matches_scalar(self, model6):
        ds = np.linspace(0, 2 * model6.cutoff, 1001)
        many = expectation_many(model6, ds)
        for d, e in zip(ds, many):
            assert e == expectation(model6, d)


class TestClassify:
    def test_anomalous_far_point(self):
        m = fit([[1], [2], [3], [4], [5], [50]])
        assert classify(m, [50]) == ("anomaly", 0.0)

    def test_boundary_of_retained_mass(self):
        m = fit([[1], [2], [3], [4], [5], [50]])
        verdict, score = classify(m, [6])  # d = 2.5 = edge
        assert verdict == "member" and score == 6.0

    def test_median_scores_n(self):
        m = fit([[0.0, 1.0], [2.0, 3.0], [4.0, -1.0]])
        verdict, score = classify(m, m.median)
        assert verdict == "member" and score == float(m.n)

    def test_dimension_mismatch(self):
        m = fit([[0.0, 1.0], [2.0, 3.0]])
        with pytest.raises(ValueError, match="dimension mismatch"):
            classify(m, [1.0])


values_1d = st.lists(
    st.floats(-100, 100, allow_nan=False, allow_infinity=False), min_size=1, max_size=12
)


class TestProperties:
    @given(values_1d)
    def test_verdict_score_cutoff_agree_exactly(self, vals):
        m = fit([[v] for v in vals])
        sweep = np.linspace(0.0, 2 * m.cutoff if m.cutoff > 0 else 1.0, 101)
        sweep = np.append(sweep, [m.cutoff, m.edge])
        for d in sweep:
            e = expectation(m, float(d))
            assert (e < 1.0) == (d > m.cutoff)

    @given(values_1d)
    def test_expectation_monotone_non_increasing(self, vals):
        m = fit([[v] for v in vals])
        hi = 2 * m.cutoff + m.support + 1.0
        es = [expectation(m, d) for d in np.linspace(0, hi, 200)]
        for a, b in zip(es, es[1:]):
            assert b <= a * (1 + 1e-12) + 1e-12

    @given(values_1d)
    def test_expectation_range(self, vals):
        m = fit([[v] for v in vals])
        if m.support > 0:
            assert expectation(m, 0.0) == float(m.n)
            assert expectation(m, m.edge + m.support) == pytest.approx(0.0, abs=1e-12)
        else:
            # degenerate zero-spread model: n at the median, 0 elsewhere
            assert expectation(m, 0.0) == float(m.n)
            assert expectation(m, 1e-300) == 0.0

    # grid-valued inputs: s*v + t must not wipe out the spread in float64
    grid_1d = st.lists(
        st.integers(-10000, 10000).map(lambda k: k / 100), min_size=1, max_size=12
    )

    @given(grid_1d, st.floats(1e-3, 1e3), st.floats(-50, 50))
    def test_equivariance(self, vals, s, t):
        pts = [[v] for v in vals]
        m1 = fit(pts)
        m2 = fit([[s * v + t] for v in vals])
        assert m2.median[0] == pytest.approx(s * m1.median[0] + t, rel=1e-9, abs=1e-9)
        assert m2.mu == pytest.approx(s * m1.mu, rel=1e-9, abs=1e-12)
        assert m2.cutoff == pytest.approx(s * m1.cutoff, rel=1e-9, abs=1e-12)
        for v in vals:
            assert classify(m1, [v])[0] == classify(m2, [s * v + t])[0]

    @pytest.mark.parametrize("n", [8, 9, 12, 20, 50, 200])
    def test_no_self_erosion_on_evenly_spaced(self, n):
        pts = [[0.3 + 0.05 * i] for i in range(n)]
        m = fit(pts)
        dev = deviations(np.asarray(pts, float), m.median)
        assert not (dev > m.cutoff).any()

    @given(values_1d)
    @settings(max_examples=200)
    def test_tail_matches_independent_oracle(self, vals):
        m = fit([[v] for v in vals])
        oracle_tail, dev_sorted, oracle_cutoff = scan_oracle(vals)
        fit_tail = {i for i, d in enumerate(dev_sorted) if d > m.cutoff}
        assert fit_tail == oracle_tail
        assert m.cutoff == pytest.approx(oracle_cutoff, rel=1e-9, abs=1e-12)

    @given(values_1d)
    def test_model_field_invariants(self, vals):
        m = fit([[v] for v in vals])
        assert m.n == len(vals) >= 1
        assert m.mu >= 0.0
        assert m.support == 2.0 * m.mu
        assert 0.0 <= m.gap_star <= m.support
        assert m.cutoff >= m.edge >= 0.0
        assert m.cutoff == m.edge + m.gap_star

    def test_fitted_points_beyond_cutoff_are_a_suffix(self):
        rng = np.random.default_rng(3)
        for _ in range(50):
            vals = rng.normal(0, 10, rng.integers(2, 40))
            m = fit([[v] for v in vals])
            dev = np.sort(deviations(vals.reshape(-1, 1), m.median))
            flags = dev > m.cutoff
            # anomalous deviations form a suffix of the sorted order
            if flags.any():
                first = int(np.argmax(flags))
                assert flags[first:].all()
            assert not flags[0]  # smallest deviation always retained
