"""Membership functions, rule bases, inference and defuzzification."""
import math

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from fdes.fuzzy import (
    CUMULATIVE_DOMINANT,
    RECENT_DOMINANT,
    DefuzzifyError,
    FuzzyOutput,
    LinguisticTerm,
    LinguisticVariable,
    RuleBase4x4,
    TermLabel,
    UniverseSpec,
    defuzzify_center_average,
    defuzzify_centroid,
    infer_mamdani_product,
    membership,
    standard_variable,
)

VAR = standard_variable(UniverseSpec(10.0, 20.0))
C = VAR.centers

# Independent re-implementation used as the inference oracle: same math,
# written from scratch against the rule grid as plain strings.
_GRID = [
    ["NME", "NME", "AE", "G"],
    ["AE", "AE", "AE", "G"],
    ["AE", "G", "G", "G"],
    ["G", "G", "VG", "VG"],
]
_SIGMA = (10.0 / 3.0) / (2.0 * math.sqrt(2.0 * math.log(2.0)))


def oracle_weights(x_m: float, x_m1: float) -> dict[str, float]:
    x_m = min(max(x_m, 10.0), 20.0)
    x_m1 = min(max(x_m1, 10.0), 20.0)
    mu = lambda x, c: math.exp(-((x - c) ** 2) / (2.0 * _SIGMA**2))
    centers = [10.0 + 10.0 * i / 3.0 for i in range(4)]
    w = {"NME": 0.0, "AE": 0.0, "G": 0.0, "VG": 0.0}
    for j in range(4):
        for i in range(4):
            w[_GRID[j][i]] = max(w[_GRID[j][i]], mu(x_m, centers[i]) * mu(x_m1, centers[j]))
    return w


in_universe = st.floats(min_value=10.0, max_value=20.0, allow_nan=False)


class TestTermLabel:
    def test_total_order(self):
        assert TermLabel.NME < TermLabel.AE < TermLabel.G < TermLabel.VG
        assert len(TermLabel) == 4

    @pytest.mark.parametrize("text,expected", [
        ("G", TermLabel.G), ("vg", TermLabel.VG), (" nme ", TermLabel.NME), ("AE", TermLabel.AE),
    ])
    def test_parse(self, text, expected):
        assert TermLabel.parse(text) is expected

    def test_parse_rejects_garbage(self):
        with pytest.raises(ValueError, match="unknown term label"):
            TermLabel.parse("excellent")


class TestUniverseSpec:
    def test_degenerate_rejected(self):
        with pytest.raises(ValueError, match="degenerate"):
            UniverseSpec(20.0, 10.0)
        with pytest.raises(ValueError):
            UniverseSpec(10.0, 10.0)

    def test_resolution_floor(self):
        with pytest.raises(ValueError, match="resolution"):
            UniverseSpec(10.0, 20.0, resolution=50)

    def test_clamp(self):
        u = UniverseSpec(10.0, 20.0)
        assert u.clamp(25.0) == 20.0
        assert u.clamp(3.0) == 10.0
        assert u.clamp(14.5) == 14.5
        with pytest.raises(ValueError, match="finite"):
            u.clamp(float("nan"))


class TestMembership:
    def test_peak_at_center(self):
        assert membership(C[TermLabel.G], VAR.term(TermLabel.G)) == 1.0

    def test_half_at_adjacent_midpoint(self):
        # sigma is constructed so adjacent terms cross at exactly one half
        assert membership(15.0, VAR.term(TermLabel.G)) == pytest.approx(0.5, abs=1e-9)
        assert membership(15.0, VAR.term(TermLabel.AE)) == pytest.approx(0.5, abs=1e-9)

    def test_two_sigma_value(self):
        t = VAR.term(TermLabel.AE)
        assert membership(t.center + 2 * t.sigma, t) == pytest.approx(math.exp(-2), abs=1e-12)

    def test_rejects_non_finite(self):
        with pytest.raises(ValueError):
            membership(float("inf"), VAR.term(TermLabel.G))

    @given(st.integers(min_value=0, max_value=8 * 2**20))
    def test_exact_symmetry_about_center(self, k):
        # dyadic offsets make c + d and c - d exact, so the two memberships
        # must be bitwise identical
        d = k / 2**20
        t = VAR.term(TermLabel.G)
        assert membership(t.center + d, t) == membership(t.center - d, t)

    @given(in_universe)
    def test_bounded(self, x):
        for t in VAR.terms:
            assert 0.0 <= membership(x, t) <= 1.0

    def test_sigma_must_be_positive(self):
        with pytest.raises(ValueError, match="sigma"):
            LinguisticTerm(TermLabel.G, 16.0, 0.0)


class TestStandardVariable:
    def test_centers_on_default_universe(self):
        assert C == pytest.approx((10.0, 13.333333, 16.666667, 20.0), abs=1e-5)

    def test_sigma_solves_half_crossover(self):
        # independent oracle: bisect exp(-(spacing/2)^2 / (2 s^2)) = 1/2
        spacing = 10.0 / 3.0
        f = lambda s: math.exp(-((spacing / 2) ** 2) / (2 * s * s)) - 0.5
        lo, hi = 0.5, 5.0
        for _ in range(200):
            mid = (lo + hi) / 2
            if f(mid) < 0:
                lo = mid
            else:
                hi = mid
        assert VAR.terms[0].sigma == pytest.approx((lo + hi) / 2, abs=1e-9)
        assert VAR.terms[0].sigma == pytest.approx(1.415536, abs=1e-5)

    def test_unit_universe(self):
        v = standard_variable(UniverseSpec(0.0, 1.0))
        assert v.centers == pytest.approx((0.0, 1 / 3, 2 / 3, 1.0), abs=1e-12)

    def test_all_terms_share_sigma(self):
        assert len({t.sigma for t in VAR.terms}) == 1

    def test_variable_validation(self):
        u = UniverseSpec(10.0, 20.0)
        bad_order = tuple(
            LinguisticTerm(label, c, 1.4)
            for label, c in zip(TermLabel, [10.0, 16.0, 13.0, 20.0])
        )
        with pytest.raises(ValueError, match="strictly increasing"):
            LinguisticVariable(u, bad_order)
        uneven = tuple(
            LinguisticTerm(label, c, 1.4)
            for label, c in zip(TermLabel, [10.0, 12.0, 16.0, 20.0])
        )
        with pytest.raises(ValueError, match="equally spaced"):
            LinguisticVariable(u, uneven)


class TestFuzzify:
    def test_at_low_end(self):
        # adjacent centers are 4*sqrt(2 ln 2) sigmas apart times 1/2 ... the
        # closed forms collapse to powers of two: 2^-4, 2^-16, 2^-36
        got = VAR.fuzzify(10.0)
        assert got[0] == 1.0
        assert got[1] == pytest.approx(0.0625, abs=1e-12)
        assert got[2] == pytest.approx(2.0**-16, rel=1e-9)
        assert got[3] == pytest.approx(2.0**-36, rel=1e-6)

    def test_at_high_end(self):
        assert VAR.fuzzify(20.0)[TermLabel.VG] == 1.0

    def test_crossover_midpoint(self):
        got = VAR.fuzzify(35.0 / 3.0)
        assert got[0] == pytest.approx(0.5, abs=1e-9)
        assert got[1] == pytest.approx(0.5, abs=1e-9)

    def test_out_of_range_is_clamped(self):
        assert VAR.fuzzify(25.0) == VAR.fuzzify(20.0)
        assert VAR.fuzzify(-3.0) == VAR.fuzzify(10.0)

    @pytest.mark.parametrize("label", list(TermLabel))
    def test_center_is_maximal(self, label):
        got = VAR.fuzzify(C[label])
        assert got[label] == 1.0
        assert max(range(4), key=lambda i: got[i]) == label

    @given(in_universe)
    def test_components_in_unit_interval(self, x):
        assert all(0.0 <= g <= 1.0 for g in VAR.fuzzify(x))


class TestRuleBase:
    def test_standard_grid(self):
        expected = [
            ["NME", "NME", "AE", "G"],
            ["AE", "AE", "AE", "G"],
            ["AE", "G", "G", "G"],
            ["G", "G", "VG", "VG"],
        ]
        for j, row in enumerate(expected):
            for i, name in enumerate(row):
                assert RECENT_DOMINANT.table[j][i] is TermLabel[name]

    def test_monotone_rows_and_columns(self):
        t = RECENT_DOMINANT.table
        for j in range(4):
            for i in range(3):
                assert t[j][i] <= t[j][i + 1]
                assert t[i][j] <= t[i + 1][j]

    def test_transpose_round_trip(self):
        assert CUMULATIVE_DOMINANT.transpose() == RECENT_DOMINANT
        # old AE + fresh NME: the recent table follows the fresh value, the
        # cumulative table keeps the old one
        assert RECENT_DOMINANT.consequent(TermLabel.AE, TermLabel.NME) == TermLabel.NME
        assert CUMULATIVE_DOMINANT.consequent(TermLabel.AE, TermLabel.NME) == TermLabel.AE

    def test_non_monotone_rejected(self):
        rows = [
            ["NME", "NME", "AE", "G"],
            ["AE", "AE", "AE", "G"],
            ["AE", "G", "G", "G"],
            ["G", "G", "VG", "AE"],  # drop at the end of the last row
        ]
        with pytest.raises(ValueError, match="nondecreasing"):
            RuleBase4x4.from_rows(rows)

    def test_consequent_orientation(self):
        # older VG with a fresh NME falls to G; older NME with a fresh VG
        # also lands on G
        assert RECENT_DOMINANT.consequent(TermLabel.VG, TermLabel.NME) == TermLabel.G
        assert RECENT_DOMINANT.consequent(TermLabel.NME, TermLabel.VG) == TermLabel.G
        assert RECENT_DOMINANT.consequent(TermLabel.AE, TermLabel.NME) == TermLabel.NME


class TestInference:
    def test_fresh_nme_dominates(self):
        out = infer_mamdani_product(RECENT_DOMINANT, C[TermLabel.AE], C[TermLabel.NME], VAR)
        assert out.argmax() == TermLabel.NME
        assert out.weight(TermLabel.NME) == pytest.approx(1.0, abs=1e-12)

    def test_g_diagonal(self):
        out = infer_mamdani_product(RECENT_DOMINANT, C[TermLabel.G], C[TermLabel.G], VAR)
        assert out.weight(TermLabel.G) == pytest.approx(1.0, abs=1e-12)
        for label in (TermLabel.NME, TermLabel.AE, TermLabel.VG):
            assert out.weight(label) < 0.07

    def test_vg_diagonal(self):
        out = infer_mamdani_product(RECENT_DOMINANT, C[TermLabel.VG], C[TermLabel.VG], VAR)
        assert out.argmax() == TermLabel.VG
        assert out.weight(TermLabel.VG) == pytest.approx(1.0, abs=1e-12)

    @pytest.mark.parametrize("first", list(TermLabel))
    @pytest.mark.parametrize("second", list(TermLabel))
    def test_argmax_matches_table_cell(self, first, second):
        out = infer_mamdani_product(RECENT_DOMINANT, C[first], C[second], VAR)
        assert out.argmax() == RECENT_DOMINANT.consequent(first, second)

    @given(in_universe, in_universe)
    @settings(max_examples=200)
    def test_matches_independent_oracle(self, x_m, x_m1):
        out = infer_mamdani_product(RECENT_DOMINANT, x_m, x_m1, VAR)
        expect = oracle_weights(x_m, x_m1)
        for label in TermLabel:
            assert out.weight(label) == pytest.approx(expect[label.name], rel=1e-12, abs=1e-300)

    @given(in_universe, in_universe)
    def test_weights_bounded_and_alive(self, x_m, x_m1):
        out = infer_mamdani_product(RECENT_DOMINANT, x_m, x_m1, VAR)
        assert all(0.0 <= out.weight(L) <= 1.0 for L in TermLabel)
        assert out.total() > 0.0  # no inference dead zones anywhere in range


class TestCenterAverage:
    def test_single_term(self):
        out = FuzzyOutput({TermLabel.G: 1.0})
        assert defuzzify_center_average(out, VAR) == pytest.approx(C[TermLabel.G], abs=1e-12)

    def test_equal_pair(self):
        out = FuzzyOutput({TermLabel.NME: 0.5, TermLabel.AE: 0.5})
        assert defuzzify_center_average(out, VAR) == pytest.approx(35.0 / 3.0, abs=1e-9)

    def test_weighted_mean_arithmetic(self):
        # frozen from an independent recomputation of the weighted mean
        out = FuzzyOutput({TermLabel.NME: 1.0625, TermLabel.AE: 0.1328, TermLabel.G: 1.5e-5})
        assert defuzzify_center_average(out, VAR) == pytest.approx(10.370418, abs=1e-5)

    def test_all_zero_rejected(self):
        with pytest.raises(DefuzzifyError):
            defuzzify_center_average(FuzzyOutput({}), VAR)

    @given(in_universe, in_universe)
    def test_result_between_outer_centers(self, x_m, x_m1):
        out = infer_mamdani_product(RECENT_DOMINANT, x_m, x_m1, VAR)
        v = defuzzify_center_average(out, VAR)
        assert C[TermLabel.NME] <= v <= C[TermLabel.VG]


class TestCentroid:
    def test_single_interior_terms(self):
        g = defuzzify_centroid(FuzzyOutput({TermLabel.G: 1.0}), VAR)
        assert g == pytest.approx(16.666667, abs=0.15)
        ae = defuzzify_centroid(FuzzyOutput({TermLabel.AE: 1.0}), VAR)
        assert ae == pytest.approx(13.333333, abs=0.05)

    @pytest.mark.parametrize("w", [0.3, 0.7, 1.0])
    def test_symmetric_pair_centers_on_15(self, w):
        out = FuzzyOutput({TermLabel.AE: w, TermLabel.G: w})
        assert defuzzify_centroid(out, VAR) == pytest.approx(15.0, abs=0.05)

    def test_all_zero_rejected(self):
        with pytest.raises(DefuzzifyError):
            defuzzify_centroid(FuzzyOutput({}), VAR)

    @pytest.mark.parametrize("first", list(TermLabel))
    @pytest.mark.parametrize("second", list(TermLabel))
    def test_agrees_with_center_average(self, first, second):
        # the two defuzzifiers act as mutual oracles at all 16 center pairs
        out = infer_mamdani_product(RECENT_DOMINANT, C[first], C[second], VAR)
        ca = defuzzify_center_average(out, VAR)
        cen = defuzzify_centroid(out, VAR)
        assert abs(ca - cen) <= 0.3


class TestRounding:
    @pytest.mark.parametrize("label", list(TermLabel))
    def test_idempotent_at_centers(self, label):
        assert VAR.round_to_term(C[label]) == label

    def test_partition_boundaries(self):
        assert VAR.round_to_term(14.9) == TermLabel.AE
        assert VAR.round_to_term(15.0) == TermLabel.G  # exact tie rounds up
        assert VAR.round_to_term(20.0) == TermLabel.VG
        assert VAR.round_to_term(11.6) == TermLabel.NME
        assert VAR.round_to_term(18.34) == TermLabel.VG

    def test_preimages_tile_the_universe(self):
        # the four preimage intervals meet exactly at the three midpoints,
        # each boundary belonging to the upper interval
        boundaries = [(a + b) / 2.0 for a, b in zip(C, C[1:])]
        assert boundaries == pytest.approx([11.666667, 15.0, 18.333333], abs=1e-5)
        for k, b in enumerate(boundaries):
            assert VAR.round_to_term(b) == TermLabel(k + 1)
            assert VAR.round_to_term(math.nextafter(b, -math.inf)) == TermLabel(k)

    @given(in_universe)
    def test_nearest_center_wins(self, x):
        label = VAR.round_to_term(x)
        best = min(TermLabel, key=lambda L: abs(x - C[L]))
        # away from exact ties the rounded term is simply the nearest center
        if abs(abs(x - C[label]) - abs(x - C[best])) > 1e-9:
            assert label == best
