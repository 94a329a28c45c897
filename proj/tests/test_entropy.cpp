#include "doctest.h"

#include <cmath>
#include <limits>
#include <random>
#include <vector>

#include "morrey/embeddings.hpp"
#include "morrey/entropy.hpp"
#include "morrey/norms.hpp"
#include "morrey/sequence.hpp"

using namespace morrey;

namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();
}

TEST_CASE("scalar case: halving the interval at every k") {
    const NormFn abs1 = lp_section_norm(1.0, 1);
    const double delta = 1e-3;
    const auto profile = entropy_profile(abs1, abs1, 1, 1, 4, delta);
    REQUIRE(profile.size() == 4);
    for (int k = 1; k <= 4; ++k) {
        const EntropyEstimate& est = profile[std::size_t(k - 1)];
        const double expect = std::pow(2.0, 1.0 - k);
        CHECK(est.lower_certified);
        CHECK(std::abs(est.upper - expect) <= 2 * delta + 1e-9);
        CHECK(std::abs(est.lower - expect) <= 2 * delta + 1e-9);
        CHECK(est.lower <= est.upper * (1.0 + 1e-12));
    }
    // monotone in k by construction
    for (std::size_t i = 1; i < profile.size(); ++i) {
        CHECK(profile[i].upper <= profile[i - 1].upper * (1.0 + 1e-12));
        CHECK(profile[i].lower <= profile[i - 1].lower * (1.0 + 1e-12));
    }
}

TEST_CASE("first entropy number matches the identity norm") {
    const auto est = entropy_estimate(lp_section_norm(1.0, 2), lp_section_norm(kInf, 2), 2, 1, 5e-3);
    CHECK(std::abs(est.upper - 1.0) <= 0.01 + 1e-9);
    CHECK(std::abs(est.lower - 1.0) <= 0.01 + 1e-9);
}

TEST_CASE("certificates re-verify from scratch") {
    const NormFn src = lp_section_norm(1.0, 2);
    const NormFn tgt = lp_section_norm(kInf, 2);
    EntropyEstimate est = entropy_estimate(src, tgt, 2, 3, 0.01);
    const CertificateCheck check = entropy_verify(est, src, tgt);
    CHECK(check.covering_ok);
    CHECK(check.packing_ok);

    // tampering in either direction must be caught
    EntropyEstimate inflated = est;
    inflated.lower *= 1.5;
    CHECK_FALSE(entropy_verify(inflated, src, tgt).packing_ok);
    EntropyEstimate deflated = est;
    deflated.upper *= 0.25;
    deflated.covering_radius *= 0.25;
    CHECK_FALSE(entropy_verify(deflated, src, tgt).covering_ok);
}

TEST_CASE("reference asymptotic: regime boundaries and frozen values") {
    CHECK(entropy_schuett(2, 1.0, kInf, 8) == doctest::Approx(0.125).epsilon(1e-13));
    CHECK(entropy_schuett(2, 1.0, kInf, 1) == doctest::Approx(1.0));
    CHECK(entropy_schuett(2, 1.0, kInf, 2) == doctest::Approx(1.0)); // k = log2(2n)
    const double mid = std::log2(1.0 + 2.0 / 3.0) / 3.0;
    CHECK(entropy_schuett(2, 1.0, kInf, 3) == doctest::Approx(mid).epsilon(1e-13));
    // p2 < p1: the tail rate holds for every k
    CHECK(entropy_schuett(2, 2.0, 1.0, 5) == doctest::Approx(std::pow(2.0, -0.75)).epsilon(1e-13));
}

TEST_CASE("exact scale equivariance for power-of-two target scaling") {
    const NormFn src = lp_section_norm(1.0, 2);
    const NormFn tgt = lp_section_norm(kInf, 2);
    const NormFn tgt4 = [tgt](std::span<const double> v) { return 4.0 * tgt(v); };
    const auto base = entropy_estimate(src, tgt, 2, 3, 0.02);
    const auto scaled = entropy_estimate(src, tgt4, 2, 3, 0.02);
    CHECK(scaled.upper == 4.0 * base.upper);
    CHECK(scaled.lower == 4.0 * base.lower);
    CHECK(scaled.covering_radius == 4.0 * base.covering_radius);
}

TEST_CASE("submultiplicativity across a factorization") {
    // e_{k1+k2-1}(l1 -> linf) <= e_{k1}(l1 -> l2) * e_{k2}(l2 -> linf)
    const double delta = 5e-3;
    const auto a = entropy_estimate(lp_section_norm(1.0, 2), lp_section_norm(2.0, 2), 2, 3, delta);
    const auto b = entropy_estimate(lp_section_norm(2.0, 2), lp_section_norm(kInf, 2), 2, 3, delta);
    const auto c = entropy_estimate(lp_section_norm(1.0, 2), lp_section_norm(kInf, 2), 2, 5, delta);
    CHECK(c.lower <= a.upper * b.upper * (1.0 + 1e-9));
}

TEST_CASE("Morrey section norm agrees with the sequence norm") {
    std::mt19937 rng(808u);
    std::uniform_real_distribution<double> mag(-2.0, 2.0);
    const SpaceParams prm(2.0, 1.0);
    const NormFn fn = morrey_section_norm(prm, 1, 1);
    for (int trial = 0; trial < 20; ++trial) {
        const std::vector<double> v{mag(rng), mag(rng)};
        const FiniteSequence seq(1, 1, {std::abs(v[0]), std::abs(v[1])});
        CHECK(fn(v) == doctest::Approx(morrey_norm(seq, prm)).epsilon(1e-13));
    }
}

TEST_CASE("sandwich rows stay mutually consistent") {
    const EmbeddingCase c{SpaceParams(2, 1), SpaceParams(4, 1), 1, 1};
    const auto rows = entropy_morrey_sandwich(c, 4, 5, 0.05);
    REQUIRE(rows.size() == 2);
    for (const MorreySandwichRow& row : rows) {
        CHECK(row.factor_up == doctest::Approx(std::sqrt(2.0)).epsilon(1e-13));
        CHECK(row.factor_down == doctest::Approx(std::pow(2.0, 0.75)).epsilon(1e-13));
        CHECK(row.direct_lower <= row.direct_upper * (1.0 + 1e-12));
        CHECK(row.sandwich_lower <= row.sandwich_upper * (1.0 + 1e-12));
        CHECK(row.direct_lower <= row.sandwich_upper * (1.0 + 1e-9));
        CHECK(row.direct_upper >= row.sandwich_lower * (1.0 - 1e-9));
    }
}

TEST_CASE("estimator guards") {
    const NormFn abs1 = lp_section_norm(1.0, 1);
    CHECK_THROWS_AS((void)entropy_estimate(abs1, abs1, 1, 1, 1.5), std::invalid_argument);
    CHECK_THROWS_AS((void)entropy_estimate(lp_section_norm(1.0, 5), lp_section_norm(1.0, 5), 5, 1, 0.1),
                    std::invalid_argument);
    const EmbeddingCase c{SpaceParams(2, 1), SpaceParams(4, 1), 1, 1};
    CHECK_THROWS_AS((void)entropy_morrey_sandwich(c, 2, 5, 0.05), std::domain_error);
}
