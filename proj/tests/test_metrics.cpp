#include <doctest.h>

#include <cmath>

#include "glow/errors.hpp"
#include "glow/image.hpp"
#include "glow/metrics.hpp"
#include "glow/rng.hpp"

using namespace glow;

TEST_CASE("dynamic range basics") {
    std::vector<float> span;
    for (int k = -4; k <= 11; ++k) span.push_back(std::exp2(static_cast<float>(k)));
    CHECK(dynamic_range(span) == doctest::Approx(15.0).epsilon(1e-9));

    CHECK(dynamic_range({0.5f, 0.5f}) == doctest::Approx(0.0));
    CHECK_THROWS_AS(dynamic_range(std::vector<float>(4, 0.0f)), invalid_input);

    // full-range 8-bit content tops out near log2(255)
    std::vector<float> ldr{1.0f / 255.0f, 0.5f, 1.0f};
    CHECK(dynamic_range(ldr, kLdrFloor) == doctest::Approx(std::log2(255.0)).epsilon(1e-6));
}

TEST_CASE("dynamic range floors zeros") {
    CHECK(dynamic_range({0.0f, 1.0f}) == doctest::Approx(16.0).epsilon(1e-9));
    CHECK(dynamic_range({0.0f, 1.0f}, kLdrFloor) == doctest::Approx(std::log2(255.0)).epsilon(1e-9));
}

TEST_CASE("dynamic range invariant to scaling while floors stay disengaged") {
    Rng rng(3);
    std::vector<float> vals;
    for (int i = 0; i < 64; ++i) vals.push_back(static_cast<float>(rng.log_uniform(0.01, 10.0)));
    const double base = dynamic_range(vals);
    std::vector<float> scaled = vals;
    for (float& v : scaled) v *= 4.0f;
    CHECK(dynamic_range(scaled) == doctest::Approx(base).epsilon(1e-6));
}

TEST_CASE("percentiles interpolate order statistics") {
    std::vector<double> drs{1, 2, 3, 4, 5, 6, 7, 8, 9, 10};
    DrStats s = dr_percentiles(drs);
    CHECK(s.dr50 == doctest::Approx(5.5));
    CHECK(s.dr90 == doctest::Approx(9.1));
    CHECK(s.per_image.size() == 10);

    DrStats same = dr_percentiles(std::vector<double>(5, 3.0));
    CHECK(same.dr50 == 3.0);
    CHECK(same.dr90 == 3.0);

    CHECK(percentile({7.0}, 0.9) == 7.0);
    CHECK_THROWS_AS(percentile({}, 0.5), invalid_input);
}

TEST_CASE("psnr") {
    LdrImage a(4, 4, 3, 0.5f);
    LdrImage b = a;
    CHECK(psnr(a, b) == 99.0);

    for (float& v : b.data) v += 0.1f;
    CHECK(psnr(a, b) == doctest::Approx(20.0).epsilon(1e-5));

    LdrImage c(2, 2, 3, 0.5f);
    CHECK_THROWS_AS(psnr(a, c), invalid_input);
}

TEST_CASE("hist chi2") {
    Histogram a = histogram_range({0.1f, 0.2f, 0.3f}, HistScale::Linear, 4, 0.0, 1.0);
    CHECK(hist_chi2(a, a) == doctest::Approx(0.0));

    // disjoint supports score the maximum 2
    Histogram lo = histogram_range(std::vector<float>(8, 0.1f), HistScale::Linear, 2, 0.0, 1.0);
    Histogram hi = histogram_range(std::vector<float>(8, 0.9f), HistScale::Linear, 2, 0.0, 1.0);
    CHECK(hist_chi2(lo, hi) == doctest::Approx(2.0));

    Histogram other = histogram_range({0.1f}, HistScale::Linear, 5, 0.0, 1.0);
    CHECK_THROWS_AS(hist_chi2(a, other), invalid_input);
}
