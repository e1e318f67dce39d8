
import numpy as np
import pytest

from rankseg import ModelSpec, generate, list_models, parse_model

EXPECTED_SHAPES = {
    "NC": (500, ()),
    "M1": (200, (100,)),
    "V1": (500, (250,)),
    "D1": (1000, (500,)),
    "MM_GAUSS": (400, (100, 200, 300)),
    "MM_GAUSS_TR": (400, (100, 200, 300)),
    "MM_STUDENT_T3": (400, (100, 200, 300)),
    "MM_GAUSS2": (1600, tuple(range(80, 1600, 80))),
    "MM_POIS": (400, (100, 200, 300)),
    "MM_POIS_TR": (400, (100, 200, 300)),
    "MV_GAUSS": (600, (150, 350, 500)),
    "MV_GAUSS2": (1000, (200, 350, 550, 700, 900)),
    "MD1": (750, (250, 500)),
    "MD2": (500, (100, 250, 350)),
    "MD3": (1000, (200, 500, 750)),
}


class TestCatalogue:
    def test_all_models_listed(self):
        models = list_models()
        for name in EXPECTED_SHAPES:
            assert name in models
        for name in ("T1", "T2", "NOCHANGE_GAUSS", "NOCHANGE_CAUCHY", "NOCHANGE_POIS"):
            assert name in models

    @pytest.mark.parametrize("model", sorted(EXPECTED_SHAPES))
    def test_lengths_and_truths(self, model):
        length, truth = EXPECTED_SHAPES[model]
        series = generate(ModelSpec(model, 0))
        assert len(series) == length
        assert series.truth == truth

    def test_mm_gauss2_has_19_changes(self):
        series = generate(ModelSpec("MM_GAUSS2", 0))
        assert len(series.truth) == 19
        assert series.truth[0] == 80 and series.truth[-1] == 1520

    def test_timing_models(self):
        t1 = generate(ModelSpec("T1", 0, length=3000))
        assert len(t1) == 3000
        assert t1.truth == tuple(range(30, 3000, 30))
        assert len(t1.truth) == 99
        t2 = generate(ModelSpec("T2", 0, length=6000))
        assert len(t2) == 6000
        assert t2.truth == tuple(range(250, 6000, 250))

    def test_nochange_families(self):
        for model in ("NOCHANGE_GAUSS", "NOCHANGE_CAUCHY"):
            series = generate(ModelSpec(model, 1, length=75))
            assert len(series) == 75 and series.truth == ()
        pois = generate(ModelSpec("NOCHANGE_POIS", 1, length=60, rate=0.3))
        assert len(pois) == 60
        assert np.all(pois.values == np.round(pois.values))

    def test_unknown_model(self):
        with pytest.raises(ValueError):
            generate(ModelSpec("M7", 0))


class TestDeterminism:
    @pytest.mark.parametrize("model", ["NC", "MM_POIS", "MD2", "T2"])
    def test_same_seed_bitwise_equal(self, model):
        a = generate(ModelSpec(model, 123))
        b = generate(ModelSpec(model, 123))
        assert np.array_equal(a.values, b.values)

    def test_different_seeds_differ(self):
        a = generate(ModelSpec("NC", 1))
        b = generate(ModelSpec("NC", 2))
        assert not np.array_equal(a.values, b.values)

    @pytest.mark.parametrize("pair", [("MM_GAUSS_TR", "MM_GAUSS"), ("MM_POIS_TR", "MM_POIS")])
    def test_transformed_twins_share_draws(self, pair):
        transformed, base = pair
        for seed in (0, 9, 42):
            t = generate(ModelSpec(transformed, seed))
            b = generate(ModelSpec(base, seed))
            assert np.array_equal(t.values, np.exp(b.values))
            assert t.truth == b.truth

    def test_truth_strictly_interior(self):
        for model in EXPECTED_SHAPES:
            series = generate(ModelSpec(model, 0))
            assert all(1 <= r <= len(series) - 1 for r in series.truth)


class TestDistributionSanity:
    def test_v1_variance_doubles(self):
        series = generate(ModelSpec("V1", 3))
        assert np.std(series.values[:250]) == pytest.approx(1.0, abs=0.25)
        assert np.std(series.values[250:]) == pytest.approx(2.0, abs=0.4)

    def test_mm_gauss_segment_means(self):
        series = generate(ModelSpec("MM_GAUSS", 3))
        x = series.values
        for (a, b), mean in zip(((0, 100), (100, 200), (200, 300), (300, 400)),
                                (0.0, 1.0, -0.2, -1.3)):
            assert np.mean(x[a:b]) == pytest.approx(mean, abs=0.45)

    def test_d1_first_segment_bounded(self):
        series = generate(ModelSpec("D1", 5))
        first = series.values[:500]
        assert first.min() >= -3.0 and first.max() <= 3.0

    def test_md1_middle_segment_integer(self):
        series = generate(ModelSpec("MD1", 5))
        mid = series.values[250:500]
        assert np.all(mid == np.round(mid))
        assert np.mean(mid) == pytest.approx(1.0, abs=0.3)

    def test_t1_signal_alternates(self):
        series = generate(ModelSpec("T1", 2, length=3000))
        x = series.values
        assert np.mean(x[:30]) == pytest.approx(0.0, abs=0.5)
        assert np.mean(x[30:60]) == pytest.approx(4.0, abs=0.5)

    def test_md1_shared_moments(self):
        # all three segments target mean 1 and variance 1
        series = generate(ModelSpec("MD1", 11))
        for a, b in ((0, 250), (250, 500), (500, 750)):
            seg = series.values[a:b]
            assert np.mean(seg) == pytest.approx(1.0, abs=0.35)
            assert np.var(seg) == pytest.approx(1.0, abs=0.45)


class TestParseModel:
    def test_bare_id(self):
        assert parse_model("M1") == ("M1", {})
        assert parse_model("mm_gauss") == ("MM_GAUSS", {})

    def test_length_argument(self):
        assert parse_model("T1(6000)") == ("T1", {"length": 6000})
        assert parse_model("NOCHANGE_GAUSS(200)") == ("NOCHANGE_GAUSS", {"length": 200})

    def test_rate_and_length(self):
        assert parse_model("NOCHANGE_POIS(0.3, 75)") == (
            "NOCHANGE_POIS",
            {"rate": 0.3, "length": 75},
        )
        assert parse_model("NOCHANGE_POIS(3)") == ("NOCHANGE_POIS", {"rate": 3.0})

    def test_rejects_garbage(self):
        with pytest.raises(ValueError):
            parse_model("NOPE")
        with pytest.raises(ValueError):
            parse_model("T1(abc)")
        with pytest.raises(ValueError):
            parse_model("M1(100,200,300)")
