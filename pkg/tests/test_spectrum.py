"""Detrending, normalization, and landmark selection."""

import random
import statistics

import pytest

from pcs.errors import NoPositivePeakError
from pcs.spectrum import (
    MODE_PCS,
    MODE_RPYS,
    build_spectrum,
    chance_odds,
    detrend,
    normalize,
    select_landmark,
)

from helpers import make_year_bins, random_corpus_bins, scaled_bins


def oracle_detrend(series):
    """Brute-force windowed-median reference, coded independently."""
    out = []
    for t in range(len(series)):
        window = [series[u] for u in range(t - 2, t + 3) if 0 <= u < len(series)]
        out.append(series[t] - statistics.median(window))
    return out


class TestDetrend:
    def test_constant_series_is_flat(self):
        assert detrend([5, 5, 5, 5, 5]) == [0, 0, 0, 0, 0]

    def test_interior_spike(self):
        # median(1,2,10,3,2) = 2, so the middle deviation is 8
        f = detrend([1, 2, 10, 3, 2])
        assert f[2] == 8.0
        assert f == [-1.0, -0.5, 8.0, 0.5, -1.0]

    def test_boundary_window_truncates(self):
        # first window is {4,9,2}, median 4
        assert detrend([4, 9, 2]) == [0.0, 5.0, -2.0]

    def test_empty_series_rejected(self):
        with pytest.raises(ValueError):
            detrend([])

    def test_matches_oracle_on_random_series(self):
        rng = random.Random(20210)
        for _ in range(300):
            series = [rng.randint(0, 20) for _ in range(rng.randint(1, 12))]
            assert detrend(series) == oracle_detrend(series)


class TestNormalize:
    def test_hand_computed_share(self):
        bins = make_year_bins({2000: {"1000001": 4, "1000002": 3, "1000003": 3}})
        # f=8 with share 4/10 gives 3.2 exactly
        assert normalize([8.0], {2000: bins[0]}, [2000]) == [3.2]

    def test_share_one_is_identity(self):
        bins = make_year_bins({2000: {"1000001": 7}})
        f = [2.5]
        assert normalize(f, {2000: bins[0]}, [2000]) == f

    def test_years_without_bin_are_zero(self):
        assert normalize([4.0, -1.0], {}, [1999, 2000]) == [0.0, 0.0]


class TestBuildSpectrum:
    def test_materializes_gap_years_as_zero(self):
        bins = make_year_bins({2000: {"1000001": 3}, 2003: {"1000002": 5}})
        spectrum = build_spectrum(bins)
        assert list(spectrum.years) == [2000, 2001, 2002, 2003]
        assert spectrum.c == (3, 0, 0, 5)
        assert spectrum.pcs[1] == 0.0 and spectrum.pcs[2] == 0.0

    def test_pcs_bounded_by_f_with_matching_sign(self):
        rng = random.Random(7)
        for _ in range(50):
            spectrum = build_spectrum(random_corpus_bins(rng))
            for idx, year in enumerate(spectrum.years):
                if spectrum.c[idx] > 0:
                    assert abs(spectrum.pcs_exact[idx]) <= abs(spectrum.f_exact[idx])
                    if spectrum.f_exact[idx] != 0:
                        assert (spectrum.pcs_exact[idx] > 0) == (spectrum.f_exact[idx] > 0) or \
                            spectrum.pcs_exact[idx] == 0
                else:
                    assert spectrum.pcs_exact[idx] == 0

    def test_range_cannot_shrink(self):
        bins = make_year_bins({2000: {"1000001": 3}, 2003: {"1000002": 5}})
        with pytest.raises(ValueError):
            build_spectrum(bins, start_year=2001)

    def test_bad_mode_rejected(self):
        bins = make_year_bins({2000: {"1000001": 3}})
        with pytest.raises(ValueError):
            build_spectrum(bins, mode="absolute")


class TestSelectLandmark:
    def test_picks_highest_positive_normalized_year(self):
        bins = make_year_bins(
            {
                2000: {"5000001": 2},
                2001: {"5000002": 2},
                2002: {"5100000": 18, "5100001": 2},  # spike owned by one patent
                2003: {"5000003": 2},
                2004: {"5000004": 2},
            }
        )
        spectrum = build_spectrum(bins)
        landmark = select_landmark(spectrum, unique_cited_count=6)
        assert landmark.patent == "5100000"
        assert landmark.year == 2002
        assert landmark.odds == 1 / 6

    def test_tie_breaks_to_earliest_year(self):
        bins = make_year_bins(
            {
                2000: {"5000001": 9},
                2001: {"5000002": 1},
                2002: {"5000003": 1},
                2003: {"5000004": 1},
                2004: {"5000005": 9},
            }
        )
        spectrum = build_spectrum(bins)
        idx_first, idx_last = 0, 4
        assert spectrum.pcs_exact[idx_first] == spectrum.pcs_exact[idx_last] > 0
        assert select_landmark(spectrum, unique_cited_count=5).year == 2000

    def test_runner_ups_ranked_by_score(self):
        # three isolated spikes: 2002 (29), 2006 (11), 2010 (5); flat years detrend to 0
        bins = make_year_bins(
            {
                2000: {"5000001": 1},
                2001: {"5000002": 1},
                2002: {"5200000": 30},
                2003: {"5000003": 1},
                2004: {"5000004": 1},
                2005: {"5000005": 1},
                2006: {"5300000": 12},
                2007: {"5000006": 1},
                2008: {"5000007": 1},
                2009: {"5000008": 1},
                2010: {"5400000": 6},
                2011: {"5000009": 1},
                2012: {"5000010": 1},
            }
        )
        spectrum = build_spectrum(bins)
        landmark = select_landmark(spectrum, unique_cited_count=13, top_k=2)
        assert landmark.patent == "5200000"
        assert landmark.score == 29.0
        assert [(p.year, p.patent, p.score) for p in landmark.runner_up_years] == [
            (2006, "5300000", 11.0),
            (2010, "5400000", 5.0),
        ]

    def test_runner_ups_never_pad_beyond_positive_years(self):
        bins = make_year_bins(
            {
                2000: {"5000001": 1},
                2001: {"5000002": 1},
                2002: {"5200000": 30},
                2003: {"5000003": 1},
                2004: {"5000004": 1},
            }
        )
        landmark = select_landmark(build_spectrum(bins), unique_cited_count=5, top_k=5)
        assert landmark.runner_up_years == ()

    def test_all_nonpositive_raises(self):
        # constant series detrends to zero everywhere
        bins = make_year_bins({y: {f"{5000000 + y}": 4} for y in range(2000, 2006)})
        spectrum = build_spectrum(bins)
        with pytest.raises(NoPositivePeakError):
            select_landmark(spectrum, unique_cited_count=6)

    def test_single_year_corpus_has_no_peak(self):
        # a one-year window degenerates to the point itself, so f == 0
        bins = make_year_bins({2003: {"6506559": 7}})
        spectrum = build_spectrum(bins)
        assert spectrum.f == (0.0,)
        with pytest.raises(NoPositivePeakError):
            select_landmark(spectrum, unique_cited_count=1)

    def test_rpys_and_pcs_agree_when_every_share_is_one(self):
        rng = random.Random(99)
        for _ in range(30):
            start = rng.randint(1990, 2000)
            counts = {
                start + i: {f"{6000000 + i}": rng.randint(1, 20)}
                for i in range(rng.randint(3, 10))
            }
            bins = make_year_bins(counts)
            pcs_spectrum = build_spectrum(bins, mode=MODE_PCS)
            rpys_spectrum = build_spectrum(bins, mode=MODE_RPYS)
            try:
                pcs_pick = select_landmark(pcs_spectrum, unique_cited_count=10)
            except NoPositivePeakError:
                with pytest.raises(NoPositivePeakError):
                    select_landmark(rpys_spectrum, unique_cited_count=10)
                continue
            rpys_pick = select_landmark(rpys_spectrum, unique_cited_count=10)
            assert (pcs_pick.year, pcs_pick.patent) == (rpys_pick.year, rpys_pick.patent)


class TestScalingInvariance:
    def test_scaling_counts_scales_scores_and_keeps_selection(self):
        rng = random.Random(4242)
        checked = 0
        for _ in range(60):
            bins = random_corpus_bins(rng)
            spectrum = build_spectrum(bins)
            for k in (2, 7, 100):
                scaled = build_spectrum(scaled_bins(bins, k))
                assert scaled.f_exact == tuple(k * x for x in spectrum.f_exact)
                assert scaled.pcs_exact == tuple(k * x for x in spectrum.pcs_exact)
                try:
                    original = select_landmark(spectrum, unique_cited_count=50)
                except NoPositivePeakError:
                    with pytest.raises(NoPositivePeakError):
                        select_landmark(scaled, unique_cited_count=50)
                    continue
                after = select_landmark(scaled, unique_cited_count=50)
                assert (after.year, after.patent) == (original.year, original.patent)
                # the float score is the correctly rounded view of the scaled exact score
                idx = spectrum.index(after.year)
                assert after.score == float(k * spectrum.pcs_exact[idx])
                checked += 1
        assert checked > 50


class TestZeroPadding:
    def test_padding_preserves_selection_for_dominant_interior_peaks(self):
        rng = random.Random(31337)
        for _ in range(40):
            start = rng.randint(1980, 2000)
            n_years = rng.randint(7, 12)
            counts = {}
            for i in range(n_years):
                counts[start + i] = {f"{7000000 + i}": rng.randint(1, 6)}
            spike_offset = rng.randint(3, n_years - 4)
            counts[start + spike_offset] = {f"{7100000}": 200}
            bins = make_year_bins(counts)
            spectrum = build_spectrum(bins)
            padded = build_spectrum(
                bins, start_year=start - 5, end_year=start + n_years + 4
            )
            before = select_landmark(spectrum, unique_cited_count=10)
            after = select_landmark(padded, unique_cited_count=10)
            assert (before.year, before.patent) == (after.year, after.patent)


class TestChanceOdds:
    def test_certainty(self):
        assert chance_odds(1) == 1.0

    def test_reported_rnai_odds_round_to_two_significant_figures(self):
        assert chance_odds(4065) == 1 / 4065
        assert f"{chance_odds(4065):.2g}" == "0.00025"

    def test_large_corpus(self):
        assert chance_odds(11326) == 1 / 11326
        assert f"{chance_odds(11326):.4g}" == "8.829e-05"

    def test_rejects_nonpositive(self):
        with pytest.raises(ValueError):
            chance_odds(0)
