// Acceptance gate: one pass/fail line per criterion, nonzero exit when any
// fail.  argv[1] must be the path to the command-line binary (criterion 9).

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <limits>
#include <random>
#include <set>
#include <string>
#include <sys/wait.h>
#include <vector>

#include "morrey/duality.hpp"
#include "morrey/embeddings.hpp"
#include "morrey/entropy.hpp"
#include "morrey/io.hpp"
#include "morrey/norms.hpp"
#include "morrey/params.hpp"
#include "morrey/sequence.hpp"
#include "oracle.hpp"

using namespace morrey;
namespace fs = std::filesystem;

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

double seconds_since(std::chrono::steady_clock::time_point start) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

bool close_rel(double a, double b, double tol) {
    if (b == 0.0) return a == 0.0;
    return std::abs(a - b) <= tol * std::abs(b);
}

SupportedSequence random_supported(std::mt19937& rng, int dim, int max_entries, std::int64_t box) {
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

// --- criterion 1: library norm vs definition-direct oracle -----------------

bool criterion1() {
    const auto start = std::chrono::steady_clock::now();
    std::mt19937 rng(1u);
    std::uniform_real_distribution<double> mag(0.0, 4.0);
    const std::vector<SpaceParams> params{{2.0, 1.0}, {2.0, 2.0}, {4.0, 1.0},
                                          {4.0, 3.0}, {3.0, 0.5}};
    bool ok = true;
    for (int i = 0; i < 500; ++i) {
        const int d = 1 + (i % 2);
        const SpaceParams& prm = params[std::size_t(i) % params.size()];
        double lib = 0.0, expect = 0.0;
        if (i % 2 == 0) {
            const int level = 1 + int(rng() % 4u);
            FiniteSequence seq = FiniteSequence::zeros(d, level);
            for (std::size_t c = 0; c < seq.size(); ++c)
                if (rng() % 4u != 0u) seq.set(c, mag(rng));
            lib = morrey_norm(seq, prm);
            expect = testutil::naive_morrey_norm(testutil::entry_list(seq), prm.u(), prm.p());
        } else {
            SupportedSequence seq(d);
            std::uniform_int_distribution<std::int64_t> coord(-1000, 1000);
            const int n = 1 + int(rng() % 48u);
            for (int e = 0; e < n; ++e) {
                Lattice k(d);
                for (int a = 0; a < d; ++a) k[a] = coord(rng);
                seq.set(k, mag(rng) + 1e-3);
            }
            lib = morrey_norm(seq, prm);
            expect = testutil::naive_morrey_norm(testutil::entry_list(seq), prm.u(), prm.p());
        }
        if (!close_rel(lib, expect, 1e-12)) {
            std::fprintf(stderr, "criterion 1: case %d: lib %.17g vs oracle %.17g\n", i, lib,
                         expect);
            ok = false;
        }
    }
    const double elapsed = seconds_since(start);
    if (elapsed >= 10.0) {
        std::fprintf(stderr, "criterion 1: took %.2fs (limit 10s)\n", elapsed);
        ok = false;
    }
    return ok;
}

// --- criterion 2: brute-force oracle vs closed forms ------------------------

bool criterion2() {
    const std::vector<SpaceParams> params{{1.0, 1.0}, {2.0, 1.0}, {2.0, 2.0},
                                          {4.0, 1.0}, {4.0, 3.0}, {3.0, 1.5}};
    bool ok = true;
    for (const SpaceParams& src : params) {
        for (const SpaceParams& tgt : params) {
            for (int j = 1; j <= 3; ++j) {
                const EmbeddingCase c{src, tgt, 1, j};
                const EmbeddingNorm closed = embedding_norm_closed_form(c);
                const BruteForceNorm brute = embedding_norm_bruteforce(c);
                bool pass = true;
                if (closed.exact) {
                    pass = std::abs(brute.value - closed.value) <= 1e-6 * closed.value &&
                           brute.value <= closed.value * (1.0 + 1e-9);
                } else {
                    pass = brute.value >= closed.lower * (1.0 - 1e-9) &&
                           brute.value <= closed.upper * (1.0 + 1e-9);
                }
                if (!pass) {
                    std::fprintf(stderr,
                                 "criterion 2: (%g,%g)->(%g,%g) j=%d: brute %.17g vs closed "
                                 "[%.17g, %.17g] exact=%d\n",
                                 src.u(), src.p(), tgt.u(), tgt.p(), j, brute.value,
                                 closed.exact ? closed.value : closed.lower,
                                 closed.exact ? closed.value : closed.upper, int(closed.exact));
                    ok = false;
                }
            }
        }
    }
    return ok;
}

// --- criterion 3: admissible embeddings contract, witnesses ----------------

bool criterion3() {
    std::mt19937 rng(3u);
    std::uniform_real_distribution<double> unif(0.0, 1.0);
    bool ok = true;

    int tested = 0;
    for (int draw = 0; draw < 200000 && tested < 10000; ++draw) {
        const double u1 = 0.3 + 5.7 * unif(rng);
        const double p1 = u1 * (0.02 + 0.98 * unif(rng));
        const double u2 = 0.3 + 5.7 * unif(rng);
        const double p2 = u2 * (0.02 + 0.98 * unif(rng));
        const SpaceParams src(u1, p1), tgt(u2, p2);
        if (!embedding_admissible(src, tgt)) continue;
        const SupportedSequence seq = random_supported(rng, 1 + (draw % 2), 8, 20);
        const double sn = morrey_norm(seq, src), tn = morrey_norm(seq, tgt);
        if (!(tn <= sn * (1.0 + 1e-10))) {
            std::fprintf(stderr,
                         "criterion 3: admissible (%g,%g)->(%g,%g) but target %.17g > source "
                         "%.17g\n",
                         u1, p1, u2, p2, tn, sn);
            ok = false;
        }
        ++tested;
    }
    if (tested < 10000) {
        std::fprintf(stderr, "criterion 3: only %d admissible draws\n", tested);
        ok = false;
    }

    struct Case {
        double u1, u2;
        int j, d;
    };
    for (const Case& w : {Case{4.0, 2.0, 3, 1}, Case{3.0, 1.5, 2, 1}, Case{2.0, 1.0, 2, 2}}) {
        const SpaceParams src(w.u1, std::min(1.0, w.u1));
        const SpaceParams tgt(w.u2, std::min(1.0, w.u2));
        const SupportedSequence seq = witness_u_decrease(src, w.d, w.j);
        const double ratio = morrey_norm(seq, tgt) / morrey_norm(seq, src);
        const double expect = std::exp2(double(w.j) * w.d * (1.0 / w.u2 - 1.0 / w.u1));
        if (!close_rel(ratio, expect, 1e-12)) {
            std::fprintf(stderr, "criterion 3: u-decrease ratio %.17g vs %.17g\n", ratio, expect);
            ok = false;
        }
    }

    const RatioBlowup rb = witness_ratio_blowup(SpaceParams(2, 1), SpaceParams(2, 2), 1, 8.0);
    if (!(rb.ratio >= 8.0 * (1.0 - 1e-12))) {
        std::fprintf(stderr, "criterion 3: blowup ratio %.17g below 8\n", rb.ratio);
        ok = false;
    }
    return ok;
}

// --- criterion 4: predual machinery -----------------------------------------

bool criterion4() {
    std::mt19937 rng(4u);
    std::uniform_real_distribution<double> mag(0.05, 3.0);
    const std::vector<SpaceParams> params{{2.0, 1.0}, {2.0, 1.5}, {4.0, 2.0}, {3.0, 1.0}};
    bool ok = true;

    for (const SpaceParams& prm : params) {
        for (int j = 0; j <= 3; ++j) {
            const L1Equivalence eq = l1_equivalence_constants(prm, 1, j);
            for (int trial = 0; trial < 65; ++trial) {
                SupportedSequence seq(1);
                const std::int64_t origin = std::int64_t(rng() % 13u) - 6;
                for (const Lattice& k : cells_in(DyadicCube{j, {origin}}))
                    if (rng() % 3u != 0u) seq.set(k, mag(rng));
                if (seq.empty()) continue;
                const double l1 = lp_norm(seq, 1.0);
                const double nj = predual_level_norm(seq, prm, j);
                if (!(nj >= eq.lower_factor * l1 * (1.0 - 1e-12) &&
                      nj <= eq.upper_factor * l1 * (1.0 + 1e-12))) {
                    std::fprintf(stderr,
                                 "criterion 4: level norm %.17g outside [%.17g, %.17g] "
                                 "(u=%g p=%g j=%d)\n",
                                 nj, eq.lower_factor * l1, eq.upper_factor * l1, prm.u(), prm.p(),
                                 j);
                    ok = false;
                }
            }

            const SupportedSequence extremal = dual_extremal(prm, 1, j);
            if (!close_rel(lp_norm(extremal, prm.conjugate_u()), 1.0, 1e-12) ||
                !close_rel(predual_level_norm(extremal, prm, j), 1.0, 1e-12)) {
                std::fprintf(stderr, "criterion 4: dual extremal not unit (u=%g p=%g j=%d)\n",
                             prm.u(), prm.p(), j);
                ok = false;
            }
        }

        for (int trial = 0; trial < 125; ++trial) {
            const SupportedSequence lam = random_supported(rng, 1, 10, 16);
            const SupportedSequence mu = random_supported(rng, 1, 10, 16);
            const double upper = predual_norm_upper(lam, prm).value;
            const double lower = predual_norm_lower(lam, prm);
            bool pass = std::abs(pairing(lam, mu)) <= upper * morrey_norm(mu, prm) * (1.0 + 1e-10);
            pass = pass && lp_norm(lam, prm.conjugate_u()) <= upper * (1.0 + 1e-12);
            pass = pass && upper <= lp_norm(lam, 1.0) * (1.0 + 1e-12);
            pass = pass && lower <= upper * (1.0 + 1e-10);
            if (!pass) {
                std::fprintf(stderr, "criterion 4: pairing/sandwich failed (u=%g p=%g trial %d)\n",
                             prm.u(), prm.p(), trial);
                ok = false;
            }
        }

        SupportedSequence delta(1);
        delta.set({0}, 1.0);
        const PredualBound bound = predual_norm_upper(delta, prm);
        const double lower = predual_norm_lower(delta, prm);
        if (!bound.converged || std::abs(bound.value - 1.0) > 1e-9 || lower < 1.0 - 1e-12 ||
            bound.value - lower > 1e-9) {
            std::fprintf(stderr, "criterion 4: point mass bracket [%.17g, %.17g] (u=%g p=%g)\n",
                         lower, bound.value, prm.u(), prm.p());
            ok = false;
        }
    }
    return ok;
}

// --- criterion 5: power identity and Holder inequality ----------------------

bool criterion5() {
    std::mt19937 rng(5u);
    std::uniform_real_distribution<double> unif(0.0, 1.0);
    bool ok = true;

    const std::vector<SpaceParams> params{{2.0, 1.0}, {4.0, 3.0}, {3.0, 0.5}, {2.0, 2.0}};
    const double exponents[4] = {0.5, 1.7, 2.0, 3.0};
    for (int i = 0; i < 1000; ++i) {
        const SpaceParams& prm = params[std::size_t(i) % params.size()];
        const double r = exponents[(i / 4) % 4];
        const SupportedSequence seq = random_supported(rng, 1 + (i % 2), 12, 30);
        const double lhs = morrey_norm(power(seq, r), SpaceParams(prm.u() / r, prm.p() / r));
        const double rhs = std::pow(morrey_norm(seq, prm), r);
        if (!close_rel(lhs, rhs, 1e-12)) {
            std::fprintf(stderr, "criterion 5: power identity %.17g vs %.17g (r=%g)\n", lhs, rhs,
                         r);
            ok = false;
        }
    }

    for (int i = 0; i < 1000; ++i) {
        const double u1 = 0.8 + 3.2 * unif(rng), p1 = u1 * (0.3 + 0.7 * unif(rng));
        const double u2 = 0.8 + 3.2 * unif(rng), p2 = u2 * (0.3 + 0.7 * unif(rng));
        const SpaceParams prm1(u1, p1), prm2(u2, p2);
        const SpaceParams composite(1.0 / (1.0 / u1 + 1.0 / u2), 1.0 / (1.0 / p1 + 1.0 / p2));
        const int d = 1 + (i % 2);
        const std::vector<SupportedSequence> factors{random_supported(rng, d, 10, 4),
                                                     random_supported(rng, d, 10, 4)};
        const SupportedSequence prod = product(factors);
        const double lhs = morrey_norm(prod, composite);
        const double rhs = morrey_norm(factors[0], prm1) * morrey_norm(factors[1], prm2);
        if (!(lhs <= rhs * (1.0 + 1e-10))) {
            std::fprintf(stderr, "criterion 5: Holder %.17g > %.17g\n", lhs, rhs);
            ok = false;
        }
    }
    return ok;
}

// --- criterion 6: separation family -----------------------------------------

bool criterion6() {
    const std::vector<int> levels{1, 3};
    const auto signs = default_sign_vectors(16, 10, 0);
    const SeparationFamily family = separation_family(levels, 1, 2.0, signs);
    const SpaceParams prm(2.0, 1.0);
    bool ok = family.members.size() == 16;

    const double gap = 2.0 * std::exp2(-3.0 / 2.0);
    const double cap = separation_norm_bound(prm, 1);
    for (std::size_t a = 0; a < family.members.size(); ++a) {
        if (!(morrey_norm(family.members[a].magnitudes, prm) <= cap * (1.0 + 1e-12))) {
            std::fprintf(stderr, "criterion 6: member %zu above the norm cap\n", a);
            ok = false;
        }
        for (std::size_t b = a + 1; b < family.members.size(); ++b) {
            if (!(separation_distance(family, a, b, prm) >= gap * (1.0 - 1e-12))) {
                std::fprintf(stderr, "criterion 6: members %zu,%zu too close\n", a, b);
                ok = false;
            }
        }
    }
    return ok;
}

// --- criterion 7: entropy estimator on l_p pairs -----------------------------

bool criterion7() {
    const auto start = std::chrono::steady_clock::now();
    struct Pair {
        const char* name;
        double p1, p2;
    };
    const Pair pairs[3] = {{"l1->linf", 1.0, kInf}, {"l2->l2", 2.0, 2.0}, {"l1->l2", 1.0, 2.0}};
    bool ok = true;

    for (const Pair& pair : pairs) {
        for (int n = 1; n <= 2; ++n) {
            const double delta = n == 1 ? 1e-3 : 5e-3;
            const int k_max = 2 + 4 * n;
            const NormFn src = lp_section_norm(pair.p1, n);
            const NormFn tgt = lp_section_norm(pair.p2, n);
            const auto profile = entropy_profile(src, tgt, n, 1, k_max, delta);
            const double tol = 2.0 * delta + 1e-9;

            for (const EntropyEstimate& est : profile) {
                if (!est.lower_certified || est.lower > est.upper * (1.0 + 1e-12)) {
                    std::fprintf(stderr, "criterion 7: %s n=%d k=%d bad bracket [%.17g, %.17g]\n",
                                 pair.name, n, est.k, est.lower, est.upper);
                    ok = false;
                }
            }
            if (std::abs(profile[0].upper - 1.0) > tol || std::abs(profile[0].lower - 1.0) > tol) {
                std::fprintf(stderr, "criterion 7: %s n=%d e_1 in [%.17g, %.17g], expect 1\n",
                             pair.name, n, profile[0].lower, profile[0].upper);
                ok = false;
            }
            if (n == 1) {
                for (const EntropyEstimate& est : profile) {
                    const double expect = std::exp2(1.0 - est.k);
                    if (std::abs(est.upper - expect) > tol || std::abs(est.lower - expect) > tol) {
                        std::fprintf(stderr,
                                     "criterion 7: %s k=%d bounds [%.17g, %.17g], expect %.17g\n",
                                     pair.name, est.k, est.lower, est.upper, expect);
                        ok = false;
                    }
                }
            }
            for (int k = 2 * n; k + 2 * n <= k_max; ++k) {
                const double head = profile[std::size_t(k - 1)].upper;
                const double tail = profile[std::size_t(k - 1 + 2 * n)].upper;
                if (!(tail <= 0.55 * head)) {
                    std::fprintf(stderr, "criterion 7: %s n=%d decay %.17g !<= 0.55*%.17g (k=%d)\n",
                                 pair.name, n, tail, head, k);
                    ok = false;
                }
            }
            for (int k : {1, 2 * n, std::min(2 * n + 2, k_max)}) {
                const CertificateCheck check = entropy_verify(profile[std::size_t(k - 1)], src, tgt);
                if (!check.covering_ok || !check.packing_ok) {
                    std::fprintf(stderr, "criterion 7: %s n=%d k=%d certificates failed\n",
                                 pair.name, n, k);
                    ok = false;
                }
            }
        }
    }
    const double elapsed = seconds_since(start);
    if (elapsed >= 300.0) {
        std::fprintf(stderr, "criterion 7: took %.1fs (limit 300s)\n", elapsed);
        ok = false;
    }
    return ok;
}

// --- criterion 8: Morrey entropy sandwich ------------------------------------

bool criterion8() {
    const auto start = std::chrono::steady_clock::now();
    bool ok = true;
    std::vector<MorreySandwichRow> rows;
    try {
        rows = entropy_morrey_sandwich({SpaceParams(2, 1), SpaceParams(4, 1), 1, 1}, 4, 10, 0.01);
    } catch (const std::exception& e) {
        std::fprintf(stderr, "criterion 8: %s\n", e.what());
        return false;
    }
    if (rows.size() != 7) {
        std::fprintf(stderr, "criterion 8: expected 7 rows, got %zu\n", rows.size());
        ok = false;
    }
    for (const MorreySandwichRow& row : rows) {
        bool pass = row.direct_lower <= row.sandwich_upper * (1.0 + 1e-9);
        pass = pass && row.direct_upper >= row.sandwich_lower * (1.0 - 1e-9);
        pass = pass && row.sandwich_lower > 0.0;
        pass = pass && row.sandwich_upper / row.sandwich_lower <=
                           row.factor_up * row.factor_down * row.scalar_width_product *
                               (1.0 + 1e-9);
        if (!pass) {
            std::fprintf(stderr,
                         "criterion 8: k=%d direct [%.17g, %.17g] sandwich [%.17g, %.17g] "
                         "width %.17g\n",
                         row.k, row.direct_lower, row.direct_upper, row.sandwich_lower,
                         row.sandwich_upper, row.scalar_width_product);
            ok = false;
        }
    }
    const double elapsed = seconds_since(start);
    if (elapsed >= 600.0) {
        std::fprintf(stderr, "criterion 8: took %.1fs (limit 600s)\n", elapsed);
        ok = false;
    }
    return ok;
}

// --- criterion 9: CLI determinism battery ------------------------------------

struct CliRun {
    int status = -1;
    std::string digest;
};

CliRun run_command(const fs::path& dir, const std::string& cli, const std::string& args,
                   int threads, const std::set<std::string>& keep) {
    for (const auto& entry : fs::directory_iterator(dir))
        if (keep.find(entry.path().filename().string()) == keep.end())
            fs::remove(entry.path());

    const std::string cmd = "cd '" + dir.string() + "' && env MORREY_THREADS=" +
                            std::to_string(threads) + " '" + cli + "' " + args +
                            " > stdout.txt 2> stderr.txt";
    const int raw = std::system(cmd.c_str());
    CliRun run;
    if (WIFEXITED(raw)) run.status = WEXITSTATUS(raw);

    std::vector<std::string> names;
    for (const auto& entry : fs::directory_iterator(dir)) {
        const std::string name = entry.path().filename().string();
        if (name == "stderr.txt" || keep.count(name)) continue;
        names.push_back(name);
    }
    std::sort(names.begin(), names.end());
    for (const std::string& name : names) {
        std::ifstream file(dir / name, std::ios::binary);
        std::string body((std::istreambuf_iterator<char>(file)), std::istreambuf_iterator<char>());
        run.digest += name + "\n" + body + "\x1f";
    }
    return run;
}

bool criterion9(const std::string& cli) {
    if (cli.empty()) {
        std::fprintf(stderr, "criterion 9: pass the CLI path as argv[1]\n");
        return false;
    }
    const fs::path dir = fs::temp_directory_path() / "morrey_acceptance_cli";
    fs::remove_all(dir);
    fs::create_directories(dir);

    write_sequence_file((dir / "finite.json").string(),
                        FiniteSequence(1, 2, {1.0, 0.5, 2.0, 1.0}));
    SupportedSequence sparse(1);
    sparse.set({-5}, 1.5);
    sparse.set({-4}, 0.5);
    sparse.set({2}, 2.0);
    sparse.set({3}, 1.0);
    write_sequence_file((dir / "sparse.json").string(), sparse);
    const std::set<std::string> keep{"finite.json", "sparse.json"};

    const std::vector<std::string> commands{
        "norm finite.json --u 2 --p 1",
        "norm finite.json --u 2 --p 1 --variant arb1",
        "norm finite.json --u 2 --p 1 --variant arb2",
        "norm finite.json --u 2 --p 1 --variant lorentz",
        "norm sparse.json --u 3 --p 1.5 --variant lp",
        "norm sparse.json --u 3 --p 1.5 --variant linf",
        "norm sparse.json --u 2 --p 1 --variant predual-level --level 1",
        "norm sparse.json --u 2 --p 1 --variant predual-upper",
        "norm sparse.json --u 2 --p 1 --variant predual-lower",
        "embed --u1 2 --p1 1 --u2 4 --p2 1 --j 2 --d 1 --oracle --budget 500",
        "embed --u1 4 --p1 1 --u2 2 --p2 2 --j 1 --d 1 --oracle",
        "witness u-decrease --u1 4 --u2 2 --j 2 --d 1 --out w1.json",
        "witness ratio-blowup --u1 2 --p1 1 --u2 2 --p2 2 --d 1 --target 4 --out w2.json",
        "witness separation --levels 1,3 --d 1 --u 2 --p 1 --count 4 --seed 0 --out-prefix fam",
        "entropy --pair l1:linf --dim 2 --k-range 1:4 --delta 0.02 --out t1.tsv",
        "entropy --morrey 2,1:4,1 --j 1 --d 1 --k-range 4:6 --delta 0.05 --out t2.tsv",
    };

    bool ok = true;
    for (const std::string& args : commands) {
        std::vector<CliRun> runs;
        for (int threads : {1, 4, 1, 4}) runs.push_back(run_command(dir, cli, args, threads, keep));
        for (const CliRun& run : runs) {
            if (run.status != 0) {
                std::fprintf(stderr, "criterion 9: '%s' exited %d\n", args.c_str(), run.status);
                ok = false;
            }
        }
        for (std::size_t i = 1; i < runs.size(); ++i) {
            if (runs[i].digest != runs[0].digest) {
                std::fprintf(stderr, "criterion 9: '%s' not deterministic (run %zu)\n",
                             args.c_str(), i);
                ok = false;
            }
        }
    }

    const CliRun missing = run_command(dir, cli, "norm no_such.json --u 2 --p 1", 1, keep);
    const CliRun domain = run_command(dir, cli, "norm finite.json --u 2 --p 3", 1, keep);
    if (missing.status != 2 || domain.status != 3) {
        std::fprintf(stderr, "criterion 9: exit codes %d/%d, expected 2/3\n", missing.status,
                     domain.status);
        ok = false;
    }
    fs::remove_all(dir);
    return ok;
}

} // namespace

int main(int argc, char** argv) {
    const std::string cli = argc > 1 ? argv[1] : "";
    int failures = 0;
    const auto report = [&](int id, bool pass) {
        std::printf("criterion %d: %s\n", id, pass ? "pass" : "fail");
        std::fflush(stdout);
        if (!pass) ++failures;
    };

    report(1, criterion1());
    report(2, criterion2());
    report(3, criterion3());
    report(4, criterion4());
    report(5, criterion5());
    report(6, criterion6());
    report(7, criterion7());
    report(8, criterion8());
    report(9, criterion9(cli));

    return failures == 0 ? 0 : 1;
}
