#include "doctest.h"

#include <cmath>
#include <random>

#include "morrey/duality.hpp"
#include "morrey/dyadic.hpp"
#include "morrey/norms.hpp"

using namespace morrey;

namespace {

SupportedSequence random_supported(std::mt19937& rng, int dim, int max_entries,
                                   std::int64_t box) {
    SupportedSequence seq(dim);
    std::uniform_int_distribution<std::int64_t> coord(-box, box);
    std::uniform_real_distribution<double> mag(0.05, 3.0);
    const int n = 1 + int(rng() % unsigned(max_entries));
    for (int i = 0; i < n; ++i) {
        Lattice k(dim);
        for (int a = 0; a < dim; ++a) k[a] = coord(rng);
        seq.set(k, mag(rng));
    }
    return seq;
}

} // namespace

TEST_CASE("pairing sums over the common support") {
    SupportedSequence a(1), b(1);
    a.set({0}, 2.0);
    a.set({1}, 3.0);
    b.set({1}, 5.0);
    b.set({2}, 7.0);
    CHECK(pairing(a, b) == doctest::Approx(15.0));
    CHECK(pairing(a, SupportedSequence(1)) == 0.0);
}

TEST_CASE("l1 equivalence constants on a single cube") {
    const L1Equivalence eq = l1_equivalence_constants(SpaceParams(2.0, 4.0 / 3.0), 1, 2);
    CHECK(eq.lower_factor == doctest::Approx(0.5).epsilon(1e-13));
    CHECK(eq.upper_factor == doctest::Approx(std::sqrt(2.0)).epsilon(1e-13));

    std::mt19937 rng(99u);
    std::uniform_real_distribution<double> mag(0.0, 2.0);
    const SpaceParams prm(2.0, 4.0 / 3.0);
    for (int trial = 0; trial < 40; ++trial) {
        SupportedSequence seq(1);
        for (const Lattice& k : cells_in(DyadicCube{2, {std::int64_t(trial % 5) - 2}})) {
            const double v = mag(rng);
            if (v > 0.2) seq.set(k, v);
        }
        if (seq.empty()) continue;
        const double l1 = lp_norm(seq, 1.0);
        const double nj = predual_level_norm(seq, prm, 2);
        CHECK(nj >= eq.lower_factor * l1 * (1.0 - 1e-12));
        CHECK(nj <= eq.upper_factor * l1 * (1.0 + 1e-12));
    }
}

TEST_CASE("dual extremal sequence is unit in both readings") {
    const SpaceParams prm(2.0, 4.0 / 3.0);
    const SupportedSequence seq = dual_extremal(prm, 1, 1);
    REQUIRE(seq.support_size() == 2);
    CHECK(seq.at({0}) == doctest::Approx(std::pow(2.0, -0.5)).epsilon(1e-13));
    CHECK(lp_norm(seq, prm.conjugate_u()) == doctest::Approx(1.0).epsilon(1e-13));
    CHECK(predual_level_norm(seq, prm, 1) == doctest::Approx(1.0).epsilon(1e-13));

    // pairing with itself pins the decomposition norm at 1 from both sides
    const double upper = predual_norm_upper(seq, prm).value;
    const double lower = predual_norm_lower(seq, prm);
    CHECK(lower >= 1.0 - 1e-12);
    CHECK(upper <= 1.0 + 1e-9);
    CHECK(lower <= upper * (1.0 + 1e-12));
}

TEST_CASE("point mass has decomposition norm exactly 1") {
    const SpaceParams prm(2.0, 1.0);
    SupportedSequence delta(1);
    delta.set({0}, 1.0);
    const PredualBound bound = predual_norm_upper(delta, prm);
    CHECK(bound.converged);
    CHECK(bound.value == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(predual_norm_lower(delta, prm) == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("upper bound brackets: conjugate-exponent sum below, l1 above") {
    std::mt19937 rng(2718u);
    const SpaceParams prm(2.0, 1.5);
    for (int trial = 0; trial < 30; ++trial) {
        const SupportedSequence seq = random_supported(rng, 1, 10, 16);
        const PredualBound bound = predual_norm_upper(seq, prm);
        CHECK(bound.value <= lp_norm(seq, 1.0) * (1.0 + 1e-12));
        CHECK(bound.value >= lp_norm(seq, prm.conjugate_u()) * (1.0 - 1e-12));
        CHECK(predual_norm_lower(seq, prm) <= bound.value * (1.0 + 1e-10));
    }
}

TEST_CASE("pairing inequality against the Morrey norm") {
    std::mt19937 rng(1618u);
    const SpaceParams prm(2.0, 1.5);
    for (int trial = 0; trial < 30; ++trial) {
        const SupportedSequence lam = random_supported(rng, 1, 10, 8);
        const SupportedSequence mu = random_supported(rng, 1, 10, 8);
        const double upper = predual_norm_upper(lam, prm).value;
        CHECK(std::abs(pairing(lam, mu)) <= upper * morrey_norm(mu, prm) * (1.0 + 1e-10));
    }
}

TEST_CASE("iteration cap reports non-convergence but still a valid bound") {
    const SpaceParams prm(2.0, 1.0);
    SupportedSequence seq(1);
    for (std::int64_t k = 0; k < 8; ++k) seq.set({k}, 1.0 + double(k % 3));
    PredualOptions opts;
    opts.max_iters = 3;
    const PredualBound bound = predual_norm_upper(seq, prm, opts);
    CHECK_FALSE(bound.converged);
    CHECK(bound.iterations == 3);
    CHECK(bound.value >= predual_norm_lower(seq, prm) * (1.0 - 1e-10));
}

TEST_CASE("predual machinery rejects p < 1 and p = u") {
    SupportedSequence seq(1);
    seq.set({0}, 1.0);
    CHECK_THROWS_AS((void)predual_norm_upper(seq, SpaceParams(2.0, 0.5)), std::domain_error);
    CHECK_THROWS_AS((void)predual_norm_lower(seq, SpaceParams(2.0, 2.0)), std::domain_error);
    CHECK_THROWS_AS((void)dual_extremal(SpaceParams(1.0, 1.0), 1, 1), std::domain_error);
}
