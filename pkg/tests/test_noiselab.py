import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from spdenoise import (
    AggregateRow,
    EvalReport,
    NoiseSpec,
    Xorshift64Star,
    default_methods,
    derive_seed,
    inject,
    median_filter,
    mse,
    psnr,
    splitmix64,
    sweep,
)


def small_images(max_side=8):
    return st.integers(1, max_side).flatmap(
        lambda h: st.integers(1, max_side).flatmap(
            lambda w: st.lists(
                st.integers(0, 255), min_size=h * w, max_size=h * w
            ).map(lambda vals: np.array(vals, dtype=np.uint8).reshape(h, w))
        )
    )


class TestPrng:
    def test_splitmix_is_pure(self):
        assert splitmix64(12345) == splitmix64(12345)
        assert splitmix64(1) != splitmix64(2)

    def test_stream_is_deterministic(self):
        a = Xorshift64Star(99)
        b = Xorshift64Star(99)
        assert [a.next() for _ in range(10)] == [b.next() for _ in range(10)]

    def test_zero_seed_is_usable(self):
        rng = Xorshift64Star(0)
        outs = {rng.next() for _ in range(8)}
        assert len(outs) == 8

    def test_outputs_fill_64_bits(self):
        rng = Xorshift64Star(7)
        outs = [rng.next() for _ in range(200)]
        assert all(0 <= o <= (1 << 64) - 1 for o in outs)
        assert max(outs) > 1 << 62

    def test_decision_field_is_roughly_uniform(self):
        rng = Xorshift64Star(42)
        mean = sum((rng.next() >> 40) / 2**24 for _ in range(20000)) / 20000
        assert abs(mean - 0.5) < 0.01

    def test_derive_seed_mixes_all_parts(self):
        assert derive_seed(1, 2, 3) != derive_seed(1, 3, 2)
        assert derive_seed(1, 2, 3) == derive_seed(1, 2, 3)


class TestNoiseSpec:
    def test_defaults(self):
        spec = NoiseSpec(density=0.2)
        assert spec.salt_ratio == 0.5 and spec.seed == 0

    @pytest.mark.parametrize("bad", [-0.1, 1.1])
    def test_density_range(self, bad):
        with pytest.raises(ValueError):
            NoiseSpec(density=bad)

    @pytest.mark.parametrize("bad", [-0.1, 1.0001])
    def test_salt_ratio_range(self, bad):
        with pytest.raises(ValueError):
            NoiseSpec(density=0.5, salt_ratio=bad)


class TestInject:
    def test_density_zero_is_identity(self):
        img = np.arange(64, dtype=np.uint8).reshape(8, 8)
        noisy, mask = inject(img, NoiseSpec(density=0.0, seed=3))
        assert np.array_equal(noisy, img)
        assert not mask.any()

    def test_density_one_all_salt(self):
        img = np.arange(64, dtype=np.uint8).reshape(8, 8)
        noisy, mask = inject(img, NoiseSpec(density=1.0, salt_ratio=1.0, seed=3))
        assert (noisy == 255).all()
        assert mask.all()

    def test_density_one_all_pepper(self):
        img = np.full((8, 8), 77, dtype=np.uint8)
        noisy, mask = inject(img, NoiseSpec(density=1.0, salt_ratio=0.0, seed=3))
        assert (noisy == 0).all()
        assert mask.all()

    def test_deterministic(self):
        img = np.arange(256, dtype=np.uint8).reshape(16, 16)
        spec = NoiseSpec(density=0.3, seed=123)
        n1, m1 = inject(img, spec)
        n2, m2 = inject(img, spec)
        assert np.array_equal(n1, n2) and np.array_equal(m1, m2)

    def test_different_seeds_differ(self):
        img = np.full((16, 16), 90, dtype=np.uint8)
        n1, _ = inject(img, NoiseSpec(density=0.3, seed=1))
        n2, _ = inject(img, NoiseSpec(density=0.3, seed=2))
        assert not np.array_equal(n1, n2)

    @given(small_images(), st.integers(0, 2**32))
    @settings(max_examples=40, deadline=None)
    def test_mask_consistency(self, img, seed):
        noisy, mask = inject(img, NoiseSpec(density=0.4, seed=seed))
        assert np.array_equal(noisy[~mask], img[~mask])
        assert np.isin(noisy[mask], (0, 255)).all()
        assert noisy.dtype == np.uint8

    def test_binomial_count_at_20_percent(self):
        img = np.full((256, 256), 100, dtype=np.uint8)
        _, mask = inject(img, NoiseSpec(density=0.2, seed=777))
        # binomial n=65536 p=0.2: mean 13107.2, sigma ~102.4
        assert 12800 < mask.sum() < 13415

    def test_input_not_mutated(self):
        img = np.full((8, 8), 9, dtype=np.uint8)
        inject(img, NoiseSpec(density=1.0, seed=0))
        assert (img == 9).all()


class TestMetrics:
    def test_mse_identical(self):
        img = np.arange(100, dtype=np.uint8).reshape(10, 10)
        assert mse(img, img) == 0.0

    def test_mse_uniform_offset(self):
        a = np.full((4, 4), 10, dtype=np.uint8)
        b = np.full((4, 4), 11, dtype=np.uint8)
        assert mse(a, b) == 1.0

    def test_mse_single_pixel_extremes(self):
        assert mse(np.array([[0]], np.uint8), np.array([[255]], np.uint8)) == 65025.0

    @given(small_images(), st.integers(0, 50))
    @settings(max_examples=30, deadline=None)
    def test_mse_symmetric(self, img, seed):
        other, _ = inject(img, NoiseSpec(density=0.5, seed=seed))
        assert mse(img, other) == mse(other, img)

    def test_mse_dimension_mismatch(self):
        with pytest.raises(ValueError):
            mse(np.zeros((2, 2), np.uint8), np.zeros((2, 3), np.uint8))

    def test_psnr_identical_is_infinite(self):
        img = np.arange(16, dtype=np.uint8).reshape(4, 4)
        assert psnr(img, img) == math.inf

    def test_psnr_unit_mse(self):
        a = np.full((8, 8), 10, dtype=np.uint8)
        b = np.full((8, 8), 11, dtype=np.uint8)
        assert psnr(a, b) == pytest.approx(48.1308, abs=1e-3)

    def test_psnr_zero_db_at_peak_mse(self):
        assert psnr(np.array([[0]], np.uint8), np.array([[255]], np.uint8)) == 0.0


def brute_median(img, k):
    h, w = img.shape
    out = np.empty_like(img)
    r = k // 2
    for y in range(h):
        for x in range(w):
            vals = [
                int(img[min(max(y + dy, 0), h - 1), min(max(x + dx, 0), w - 1)])
                for dy in range(-r, r + 1)
                for dx in range(-r, r + 1)
            ]
            out[y, x] = sorted(vals)[(k * k) // 2]
    return out


class TestMedianFilter:
    def test_constant_unchanged(self):
        img = np.full((6, 6), 42, dtype=np.uint8)
        assert np.array_equal(median_filter(img, 3), img)

    def test_spike_removed(self):
        img = np.zeros((5, 5), dtype=np.uint8)
        img[2, 2] = 255
        assert median_filter(img, 3)[2, 2] == 0

    def test_center_of_ramp(self):
        img = np.arange(1, 10, dtype=np.uint8).reshape(3, 3)
        assert median_filter(img, 3)[1, 1] == 5

    @pytest.mark.parametrize("bad", [1, 2, 4, 7])
    def test_unsupported_window(self, bad):
        with pytest.raises(ValueError):
            median_filter(np.zeros((4, 4), np.uint8), bad)

    @given(small_images(), st.sampled_from([3, 5]))
    @settings(max_examples=40, deadline=None)
    def test_matches_brute_force(self, img, k):
        assert np.array_equal(median_filter(img, k), brute_median(img, k))


@pytest.fixture(scope="module")
def corpus():
    rng = np.random.default_rng(5)
    return {
        f"img{i}": rng.integers(20, 230, (24, 24)).astype(np.uint8)
        for i in range(3)
    }


class TestSweep:
    def test_density_zero_gives_infinite_psnr(self, corpus):
        one = {"only": next(iter(corpus.values()))}
        report = sweep(one, [0.0], methods=["proposed"], seed=1)
        assert report.rows[0].psnr_db == math.inf
        assert report.aggregates[0].mean_psnr_db == math.inf

    def test_grid_shape(self, corpus):
        densities = [0.05, 0.10, 0.15, 0.20]
        report = sweep(corpus, densities, seed=1)
        assert len(report.rows) == 4 * len(corpus) * 3
        assert len(report.aggregates) == 4 * 3
        seen = {(a.density, a.method) for a in report.aggregates}
        assert seen == {(d, m) for d in densities for m in ("median3", "median5", "proposed")}

    def test_same_seed_identical(self, corpus):
        r1 = sweep(corpus, [0.1, 0.2], seed=7)
        r2 = sweep(corpus, [0.1, 0.2], seed=7)
        assert r1 == r2
        assert r1.to_csv() == r2.to_csv()

    def test_different_seed_differs(self, corpus):
        r1 = sweep(corpus, [0.2], methods=["proposed"], seed=7)
        r2 = sweep(corpus, [0.2], methods=["proposed"], seed=8)
        assert r1 != r2

    def test_methods_share_the_same_noisy_input(self, corpus):
        # a do-nothing method recovers the exact injected corruption,
        # regardless of which other methods run alongside
        ident = {"identity": lambda img: img}
        both = dict(ident)
        both["median3"] = default_methods()["median3"]
        r1 = sweep(corpus, [0.2], methods=ident, seed=3)
        r2 = sweep(corpus, [0.2], methods=both, seed=3)
        ident_rows_1 = [r for r in r1.rows if r.method == "identity"]
        ident_rows_2 = [r for r in r2.rows if r.method == "identity"]
        assert ident_rows_1 == ident_rows_2

    def test_psnr_mse_identity_on_rows(self, corpus):
        report = sweep(corpus, [0.1], seed=2)
        for row in report.rows:
            assert math.isfinite(row.psnr_db)
            expected = 10.0 * math.log10(65025.0 / row.mse)
            assert row.psnr_db == pytest.approx(expected, rel=1e-12)

    def test_empty_corpus_rejected(self):
        with pytest.raises(ValueError):
            sweep({}, [0.1])

    def test_empty_densities_rejected(self, corpus):
        with pytest.raises(ValueError):
            sweep(corpus, [])

    def test_unknown_method_rejected(self, corpus):
        with pytest.raises(ValueError):
            sweep(corpus, [0.1], methods=["sharpen"])

    def test_csv_layout(self, corpus):
        report = sweep(corpus, [0.05], methods=["median3", "proposed"], seed=1)
        lines = report.to_csv().splitlines()
        assert lines[0] == "image,density,method,psnr_db,mse"
        n_rows = len(report.rows)
        assert lines[1 + n_rows] == "density,method,mean_psnr_db"
        for line in lines[1:1 + n_rows]:
            name, dens, method, p, m = line.split(",")
            assert dens == "5.0"
            assert method in ("median3", "proposed")
            float(p), float(m)  # parseable
        assert len(lines) == 1 + n_rows + 1 + len(report.aggregates)

    def test_csv_serializes_infinity(self):
        report = EvalReport()
        report.aggregates.append(AggregateRow(0.05, "proposed", math.inf))
        assert report.to_csv().splitlines()[-1] == "5.0,proposed,inf"

    def test_sequence_corpus_preserves_order(self, corpus):
        pairs = list(corpus.items())[::-1]
        report = sweep(pairs, [0.1], methods=["proposed"], seed=1)
        assert [r.image for r in report.rows] == [name for name, _ in pairs]
