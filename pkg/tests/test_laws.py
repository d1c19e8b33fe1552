"""Correlation laws, angle canonicalization, and the induced joint law."""

import math

import numpy as np
import pytest
from hypothesis import given, strategies as st

from corrwork.laws import (
    Angle,
    CorrelationLaw,
    JointDistribution,
    canonicalize_angle,
    eval_classical,
    eval_quantum,
    eval_superquantum,
    joint_distribution,
    sample_pair,
    sample_pairs,
    tabulated_from_csv,
)
from corrwork.rng import RandomStream

ALL_LAWS = [
    CorrelationLaw.classical(),
    CorrelationLaw.quantum(),
    CorrelationLaw.superquantum(),
]


class TestAngle:
    def test_identity_case(self):
        assert canonicalize_angle(0.0).radians == 0.0

    def test_reflection_of_three_half_pi(self):
        assert canonicalize_angle(3.0 * math.pi / 2.0).radians == math.pi / 2.0

    def test_evenness(self):
        assert canonicalize_angle(-math.pi / 4.0).radians == math.pi / 4.0

    @pytest.mark.parametrize("bad", [math.nan, math.inf, -math.inf])
    def test_non_finite_rejected(self, bad):
        with pytest.raises(ValueError):
            Angle(bad)

    @given(st.floats(min_value=-50.0, max_value=50.0))
    def test_canonical_range_and_idempotence(self, raw):
        first = Angle(raw)
        assert 0.0 <= first.radians <= math.pi
        assert Angle(first.radians).radians == first.radians

    @given(st.floats(min_value=-50.0, max_value=50.0))
    def test_cosine_agrees_at_raw_and_canonical(self, raw):
        assert math.cos(raw) == pytest.approx(
            math.cos(Angle(raw).radians), abs=1e-12
        )


class TestClassicalLaw:
    def test_quarter_pi(self):
        assert eval_classical(Angle(math.pi / 4.0)) == -0.5

    def test_zero_endpoint(self):
        assert eval_classical(Angle(0.0)) == -1.0

    def test_three_quarter_pi(self):
        assert eval_classical(Angle(3.0 * math.pi / 4.0)) == 0.5


class TestQuantumLaw:
    def test_quarter_pi(self):
        assert eval_quantum(Angle(math.pi / 4.0)) == pytest.approx(
            -math.sqrt(2.0) / 2.0, abs=1e-15
        )

    def test_half_pi(self):
        assert eval_quantum(Angle(math.pi / 2.0)) == pytest.approx(0.0, abs=1e-15)

    def test_pi_endpoint(self):
        assert eval_quantum(Angle(math.pi)) == 1.0


class TestSuperquantumLaw:
    def test_quarter_pi(self):
        assert eval_superquantum(Angle(math.pi / 4.0)) == -1.0

    def test_three_quarter_pi(self):
        assert eval_superquantum(Angle(3.0 * math.pi / 4.0)) == 1.0

    def test_half_pi_is_zero(self):
        assert eval_superquantum(Angle(math.pi / 2.0)) == 0.0


@pytest.mark.parametrize("law", ALL_LAWS, ids=lambda law: law.name)
def test_values_bounded_by_one(law):
    for i in range(2001):
        theta = math.pi * i / 2000
        assert abs(law.evaluate(Angle(theta))) <= 1.0


@pytest.mark.parametrize("law", ALL_LAWS, ids=lambda law: law.name)
@given(theta=st.floats(min_value=0.0, max_value=math.pi))
def test_antisymmetry_about_half_pi(law, theta):
    left = law.evaluate(Angle(math.pi - theta))
    right = -law.evaluate(Angle(theta))
    assert left == pytest.approx(right, abs=1e-12)


class TestJointDistribution:
    def test_uncorrelated(self):
        d = joint_distribution(0.0)
        assert d.cells() == (0.25, 0.25, 0.25, 0.25)

    def test_perfect_anticorrelation(self):
        d = joint_distribution(-1.0)
        assert d.cells() == (0.0, 0.5, 0.5, 0.0)

    def test_half_anticorrelated(self):
        # direct substitution into the quarter formula
        expected = tuple((1.0 + x * y * -0.5) / 4.0
                         for x, y in ((1, 1), (1, -1), (-1, 1), (-1, -1)))
        assert expected == (0.125, 0.375, 0.375, 0.125)
        assert joint_distribution(-0.5).cells() == expected

    @given(e=st.floats(min_value=-1.0, max_value=1.0))
    def test_invariants_and_round_trip(self, e):
        d = joint_distribution(e)
        cells = d.cells()
        assert all(0.0 <= p <= 1.0 for p in cells)
        assert sum(cells) == pytest.approx(1.0, abs=1e-12)
        assert cells[0] + cells[1] == pytest.approx(0.5, abs=1e-12)
        assert cells[0] + cells[2] == pytest.approx(0.5, abs=1e-12)
        assert d.correlation() == pytest.approx(e, abs=1e-12)

    def test_out_of_range_rejected(self):
        with pytest.raises(ValueError):
            joint_distribution(1.5)

    def test_invalid_cells_rejected(self):
        with pytest.raises(ValueError):
            JointDistribution(0.5, 0.5, 0.0, 0.0)  # marginals not uniform


class TestSampling:
    def test_anticorrelated_draws_are_opposite(self):
        d = joint_distribution(-1.0)
        stream = RandomStream(3)
        for _ in range(1000):
            x, y = sample_pair(d, stream)
            assert x == -y

    def test_fixed_seed_first_draw_is_stable(self):
        d = joint_distribution(0.3)
        assert sample_pair(d, RandomStream(42)) == sample_pair(d, RandomStream(42))

    def test_block_sampling_matches_scalar(self):
        d = joint_distribution(0.42)
        s1, s2 = RandomStream(11), RandomStream(11)
        block = sample_pairs(d, s1, 500)
        scalar = np.array([sample_pair(d, s2) for _ in range(500)])
        assert np.array_equal(block, scalar)

    @pytest.mark.parametrize("e,seed", [(-0.8, 1), (-0.3, 2), (0.0, 3), (0.5, 4)])
    def test_cell_frequencies_within_four_sigma(self, e, seed):
        n = 100_000
        d = joint_distribution(e)
        pairs = sample_pairs(d, RandomStream(seed), n)
        counts = {
            (1, 1): 0, (1, -1): 0, (-1, 1): 0, (-1, -1): 0,
        }
        for x, y in ((1, 1), (1, -1), (-1, 1), (-1, -1)):
            counts[(x, y)] = int(np.count_nonzero((pairs[:, 0] == x) & (pairs[:, 1] == y)))
        for p, key in zip(d.cells(), ((1, 1), (1, -1), (-1, 1), (-1, -1))):
            sigma = math.sqrt(p * (1.0 - p) / n)
            assert abs(counts[key] / n - p) <= 4.0 * sigma + 1e-12

    def test_uncorrelated_empirical_correlation_small(self):
        n = 1_000_000
        pairs = sample_pairs(joint_distribution(0.0), RandomStream(5), n)
        emp = float(np.mean(pairs[:, 0] * pairs[:, 1]))
        assert abs(emp) <= 3.0 / math.sqrt(n)


class TestTabulatedLaw:
    def test_interpolates_between_knots(self):
        law = CorrelationLaw.tabulated([(0.0, -1.0), (math.pi / 2.0, 0.0), (math.pi, 1.0)])
        assert law.evaluate(Angle(math.pi / 4.0)) == pytest.approx(-0.5, abs=1e-15)

    def test_clamps_outside_knot_range(self):
        law = CorrelationLaw.tabulated([(1.0, -0.5), (2.0, 0.5)])
        assert law.evaluate(Angle(0.5)) == -0.5
        assert law.evaluate(Angle(2.5)) == 0.5
        assert law.evaluate(Angle(1.5)) == pytest.approx(0.0, abs=1e-15)

    def test_empty_table_rejected(self):
        with pytest.raises(ValueError):
            CorrelationLaw.tabulated([])

    def test_non_increasing_rejected(self):
        with pytest.raises(ValueError):
            CorrelationLaw.tabulated([(0.5, 0.0), (0.5, 0.1)])

    def test_out_of_range_correlation_rejected(self):
        with pytest.raises(ValueError):
            CorrelationLaw.tabulated([(0.0, -2.0)])

    def test_table_forbidden_for_named_kinds(self):
        with pytest.raises(ValueError):
            CorrelationLaw(CorrelationLaw.classical().kind, table=((0.0, 0.0),))

    def test_unknown_name_rejected(self):
        with pytest.raises(ValueError, match="valid names"):
            CorrelationLaw.from_name("bogus")


class TestTabulatedCsv:
    def _write(self, tmp_path, text):
        path = tmp_path / "law.csv"
        path.write_text(text, encoding="utf-8")
        return str(path)

    def test_round_trip(self, tmp_path):
        path = self._write(
            tmp_path, "theta_radians,e\n0.0,-1.0\n1.5707963,0.0\n3.14159,1.0\n"
        )
        law = tabulated_from_csv(path)
        assert law.evaluate(Angle(0.0)) == -1.0
        assert law.evaluate(Angle(3.0)) == pytest.approx(0.90985, abs=1e-4)

    def test_bad_header_names_line_one(self, tmp_path):
        path = self._write(tmp_path, "angle,corr\n0.0,0.0\n")
        with pytest.raises(ValueError, match="line 1"):
            tabulated_from_csv(path)

    def test_non_numeric_field_names_line(self, tmp_path):
        path = self._write(tmp_path, "theta_radians,e\n0.0,-1.0\nfoo,0.0\n")
        with pytest.raises(ValueError, match="line 3"):
            tabulated_from_csv(path)

    def test_non_increasing_names_line(self, tmp_path):
        path = self._write(tmp_path, "theta_radians,e\n1.0,-1.0\n0.5,0.0\n")
        with pytest.raises(ValueError, match="line 3"):
            tabulated_from_csv(path)

    def test_out_of_range_angle_names_line(self, tmp_path):
        path = self._write(tmp_path, "theta_radians,e\n0.0,-1.0\n9.0,0.0\n")
        with pytest.raises(ValueError, match="line 3"):
            tabulated_from_csv(path)

    def test_empty_file_rejected(self, tmp_path):
        path = self._write(tmp_path, "")
        with pytest.raises(ValueError, match="line 1"):
            tabulated_from_csv(path)
