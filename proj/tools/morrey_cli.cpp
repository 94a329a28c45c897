// Command-line front end: sequence file norms, embedding reports, witness
// generation, predual bounds, and entropy tables.
//
// Exit codes: 0 success, 2 file/schema error, 3 domain error (bad
// parameters), 4 solver non-convergence.

#include <cinttypes>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <string>
#include <variant>
#include <vector>

#include "CLI11.hpp"

#include "morrey/duality.hpp"
#include "morrey/embeddings.hpp"
#include "morrey/entropy.hpp"
#include "morrey/io.hpp"
#include "morrey/norms.hpp"

namespace {

using namespace morrey;

std::string fmt(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

std::string fmt_origin(const Lattice& m) {
    std::string out = "(";
    for (std::size_t i = 0; i < m.size(); ++i) {
        if (i) out += ",";
        char buf[32];
        std::snprintf(buf, sizeof buf, "%" PRId64, m[i]);
        out += buf;
    }
    return out + ")";
}

double parse_lp_token(const std::string& token) {
    if (token.size() < 2 || token[0] != 'l')
        throw std::invalid_argument("norm token must look like l1, l2.5 or linf");
    const std::string rest = token.substr(1);
    if (rest == "inf") return std::numeric_limits<double>::infinity();
    double v = 0.0;
    try {
        std::size_t used = 0;
        v = std::stod(rest, &used);
        if (used != rest.size()) throw std::invalid_argument("");
    } catch (...) {
        throw std::invalid_argument("norm token must look like l1, l2.5 or linf");
    }
    if (!(v > 0.0)) throw std::invalid_argument("norm exponent must be positive");
    return v;
}

std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> parts;
    std::size_t start = 0;
    while (true) {
        const std::size_t pos = s.find(sep, start);
        parts.push_back(s.substr(start, pos - start));
        if (pos == std::string::npos) break;
        start = pos + 1;
    }
    return parts;
}

double parse_double(const std::string& s, const char* what) {
    try {
        std::size_t used = 0;
        const double v = std::stod(s, &used);
        if (used != s.size()) throw std::invalid_argument("");
        return v;
    } catch (...) {
        throw std::invalid_argument(std::string("cannot parse ") + what + ": " + s);
    }
}

int parse_int(const std::string& s, const char* what) {
    try {
        std::size_t used = 0;
        const int v = std::stoi(s, &used);
        if (used != s.size()) throw std::invalid_argument("");
        return v;
    } catch (...) {
        throw std::invalid_argument(std::string("cannot parse ") + what + ": " + s);
    }
}

struct NormArgs {
    std::string file;
    double u = 0.0, p = 0.0;
    std::string variant = "dyadic";
    int level = 0;
};

int run_norm(const NormArgs& a) {
    const SpaceParams prm(a.u, a.p);
    const AnySequence seq = read_sequence_file(a.file);

    if (a.variant == "dyadic") {
        const double v = std::visit([&](const auto& s) { return morrey_norm(s, prm); }, seq);
        std::printf("%s\n", fmt(v).c_str());
        const bool zero =
            std::visit([](const auto& s) {
                if constexpr (std::is_same_v<std::decay_t<decltype(s)>, FiniteSequence>)
                    return s.is_zero();
                else
                    return s.empty();
            }, seq);
        if (prm.p() < prm.u() && !zero) {
            const DyadicCube q =
                std::visit([&](const auto& s) { return attaining_cube(s, prm); }, seq);
            std::printf("attaining cube: level %d origin %s\n", q.level,
                        fmt_origin(q.origin).c_str());
        }
        return 0;
    }
    if (a.variant == "arb1" || a.variant == "arb2") {
        const auto variant =
            a.variant == "arb1" ? ArbitraryVariant::Contained : ArbitraryVariant::Intersecting;
        std::printf("%s\n", fmt(equiv_norm_arbitrary(as_supported(seq), prm, variant)).c_str());
        return 0;
    }
    if (a.variant == "lorentz") {
        const double v =
            std::visit([&](const auto& s) { return lorentz_quasinorm(s, prm.u()); }, seq);
        std::printf("%s\n", fmt(v).c_str());
        return 0;
    }
    if (a.variant == "lp") {
        const double v = std::visit([&](const auto& s) { return lp_norm(s, prm.p()); }, seq);
        std::printf("%s\n", fmt(v).c_str());
        return 0;
    }
    if (a.variant == "linf") {
        const double v = std::visit([](const auto& s) { return linf_norm(s); }, seq);
        std::printf("%s\n", fmt(v).c_str());
        return 0;
    }
    if (a.variant == "predual-level") {
        const double v = std::visit(
            [&](const auto& s) { return predual_level_norm(s, prm, a.level); }, seq);
        std::printf("%s\n", fmt(v).c_str());
        return 0;
    }
    if (a.variant == "predual-upper") {
        const PredualBound bound = predual_norm_upper(as_supported(seq), prm);
        std::printf("%s\n", fmt(bound.value).c_str());
        std::printf("converged: %s\n", bound.converged ? "yes" : "no");
        return bound.converged ? 0 : 4;
    }
    if (a.variant == "predual-lower") {
        std::printf("%s\n", fmt(predual_norm_lower(as_supported(seq), prm)).c_str());
        return 0;
    }
    throw std::invalid_argument("unknown variant: " + a.variant);
}

struct EmbedArgs {
    double u1 = 0.0, p1 = 0.0, u2 = 0.0, p2 = 0.0;
    int dim = 1, level = 1;
    bool oracle = false;
    int budget = 4000;
};

int run_embed(const EmbedArgs& a) {
    const SpaceParams src(a.u1, a.p1), tgt(a.u2, a.p2);
    const EmbeddingCase c{src, tgt, a.dim, a.level};
    const bool ok = embedding_admissible(src, tgt);
    std::printf("admissible: %s\n", ok ? "yes" : "no");
    const EmbeddingNorm norm = embedding_norm_closed_form(c);
    if (norm.exact)
        std::printf("norm = %s\n", fmt(norm.value).c_str());
    else
        std::printf("norm in [%s, %s]\n", fmt(norm.lower).c_str(), fmt(norm.upper).c_str());
    if (!ok) {
        if (tgt.u() < src.u())
            std::printf("hint: u-decrease witness applies (ratio 2^{jd(1/u2-1/u1)})\n");
        else
            std::printf("hint: ratio-blowup witness applies (unbounded ratio)\n");
    }
    if (a.oracle) {
        const BruteForceNorm oracle = embedding_norm_bruteforce(c, a.budget);
        std::printf("oracle = %s\n", fmt(oracle.value).c_str());
        std::printf("oracle pattern stage = %s\n", fmt(oracle.pattern_value).c_str());
        std::string maximizer;
        for (double v : oracle.maximizer.values()) {
            if (!maximizer.empty()) maximizer += " ";
            maximizer += fmt(v);
        }
        std::printf("oracle maximizer = %s\n", maximizer.c_str());
    }
    return 0;
}

struct WitnessArgs {
    std::string kind;
    double u1 = 0.0, p1 = -1.0, u2 = 0.0, p2 = -1.0;
    int dim = 1, level = 1;
    double target = 4.0;
    double u = 2.0, p = 1.0;
    std::string levels = "1,3";
    int count = 4;
    std::uint64_t seed = 0;
    std::string out = "witness.json";
    std::string out_prefix = "member";
};

int run_witness(const WitnessArgs& a) {
    if (a.kind == "u-decrease") {
        const SpaceParams src(a.u1, a.p1 > 0 ? a.p1 : std::min(1.0, a.u1));
        const SpaceParams tgt(a.u2, a.p2 > 0 ? a.p2 : std::min(1.0, a.u2));
        const SupportedSequence seq = witness_u_decrease(src, a.dim, a.level);
        const double sn = morrey_norm(seq, src), tn = morrey_norm(seq, tgt);
        write_sequence_file(a.out, seq);
        std::printf("source norm = %s\n", fmt(sn).c_str());
        std::printf("target norm = %s\n", fmt(tn).c_str());
        std::printf("ratio = %s\n", fmt(tn / sn).c_str());
        std::printf("wrote %s\n", a.out.c_str());
        return 0;
    }
    if (a.kind == "ratio-blowup") {
        const SpaceParams src(a.u1, a.p1 > 0 ? a.p1 : std::min(1.0, a.u1));
        const SpaceParams tgt(a.u2, a.p2 > 0 ? a.p2 : std::min(1.0, a.u2));
        const RatioBlowup blowup = witness_ratio_blowup(src, tgt, a.dim, a.target);
        write_sequence_file(a.out, blowup.sequence);
        std::printf("level = %d\n", blowup.level);
        std::printf("ratio = %s\n", fmt(blowup.ratio).c_str());
        std::printf("wrote %s\n", a.out.c_str());
        return 0;
    }
    if (a.kind == "separation") {
        std::vector<int> levels;
        std::size_t cells = 0;
        for (const std::string& token : split(a.levels, ','))
            levels.push_back(parse_int(token, "--levels"));
        for (int j : levels) {
            if (j < 0 || j * a.dim > 20) throw std::invalid_argument("level out of range");
            cells += std::size_t{1} << (std::size_t(j) * a.dim);
        }
        const auto signs = default_sign_vectors(std::size_t(a.count), cells, a.seed);
        const SeparationFamily family = separation_family(levels, a.dim, a.u, signs);
        const SpaceParams prm(a.u, a.p);

        double min_dist = std::numeric_limits<double>::infinity();
        for (std::size_t i = 0; i < family.members.size(); ++i)
            for (std::size_t j = i + 1; j < family.members.size(); ++j)
                min_dist = std::min(min_dist, separation_distance(family, i, j, prm));
        double max_norm = 0.0;
        for (const SeparationMember& member : family.members)
            max_norm = std::max(max_norm, morrey_norm(member.magnitudes, prm));

        for (std::size_t i = 0; i < family.members.size(); ++i) {
            std::vector<std::pair<Lattice, double>> entries;
            for (std::size_t c = 0; c < family.cells.size(); ++c)
                entries.emplace_back(family.cells[c],
                                     family.members[i].signs[c] * family.cell_magnitude[c]);
            char suffix[32];
            std::snprintf(suffix, sizeof suffix, "%02zu.json", i);
            write_signed_sequence_file(a.out_prefix + suffix, a.dim, entries);
        }
        std::printf("members = %zu\n", family.members.size());
        std::printf("min pairwise distance = %s\n", fmt(min_dist).c_str());
        std::printf("max member norm = %s\n", fmt(max_norm).c_str());
        std::printf("norm bound = %s\n", fmt(separation_norm_bound(prm, a.dim)).c_str());
        std::printf("wrote %s00.json .. %s%02zu.json\n", a.out_prefix.c_str(),
                    a.out_prefix.c_str(), family.members.size() - 1);
        return 0;
    }
    throw std::invalid_argument("unknown witness kind: " + a.kind);
}

struct EntropyArgs {
    std::string pair;
    std::string morrey;
    int dim = 1, level = 1, d = 1;
    std::string k_range = "1:4";
    double delta = 0.01;
    std::string out;
};

int run_entropy(const EntropyArgs& a) {
    const auto range = split(a.k_range, ':');
    if (range.size() != 2) throw std::invalid_argument("--k-range must be min:max");
    const int k_min = parse_int(range[0], "--k-range");
    const int k_max = parse_int(range[1], "--k-range");

    std::string tsv;
    if (!a.pair.empty() && a.morrey.empty()) {
        const auto tokens = split(a.pair, ':');
        if (tokens.size() != 2) throw std::invalid_argument("--pair must be lP:lQ");
        const double p1 = parse_lp_token(tokens[0]);
        const double p2 = parse_lp_token(tokens[1]);
        const auto profile = entropy_profile(lp_section_norm(p1, a.dim),
                                             lp_section_norm(p2, a.dim), a.dim, k_min, k_max,
                                             a.delta);
        tsv = "k\tlower\tupper\tschuett_reference\n";
        for (const EntropyEstimate& est : profile)
            tsv += std::to_string(est.k) + "\t" + fmt(est.lower) + "\t" + fmt(est.upper) + "\t" +
                   fmt(entropy_schuett(a.dim, p1, p2, est.k)) + "\n";
    } else if (!a.morrey.empty() && a.pair.empty()) {
        const auto sides = split(a.morrey, ':');
        if (sides.size() != 2) throw std::invalid_argument("--morrey must be u1,p1:u2,p2");
        const auto lhs = split(sides[0], ','), rhs = split(sides[1], ',');
        if (lhs.size() != 2 || rhs.size() != 2)
            throw std::invalid_argument("--morrey must be u1,p1:u2,p2");
        const SpaceParams src(parse_double(lhs[0], "--morrey"), parse_double(lhs[1], "--morrey"));
        const SpaceParams tgt(parse_double(rhs[0], "--morrey"), parse_double(rhs[1], "--morrey"));
        const EmbeddingCase c{src, tgt, a.d, a.level};
        const auto rows = entropy_morrey_sandwich(c, k_min, k_max, a.delta);
        tsv = "k\tlower\tupper\tsandwich_lower\tsandwich_upper\n";
        for (const MorreySandwichRow& row : rows)
            tsv += std::to_string(row.k) + "\t" + fmt(row.direct_lower) + "\t" +
                   fmt(row.direct_upper) + "\t" + fmt(row.sandwich_lower) + "\t" +
                   fmt(row.sandwich_upper) + "\n";
    } else {
        throw std::invalid_argument("exactly one of --pair or --morrey is required");
    }

    std::fputs(tsv.c_str(), stdout);
    if (!a.out.empty()) {
        std::ofstream file(a.out);
        if (!file) throw SchemaError("cannot write " + a.out);
        file << tsv;
    }
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Morrey sequence-space toolkit"};
    app.require_subcommand(1);

    NormArgs norm_args;
    auto* norm_cmd = app.add_subcommand("norm", "norms of a sequence file");
    norm_cmd->add_option("file", norm_args.file, "sequence file")->required();
    norm_cmd->add_option("--u", norm_args.u, "exponent u")->required();
    norm_cmd->add_option("--p", norm_args.p, "exponent p")->required();
    norm_cmd->add_option("--variant", norm_args.variant,
                         "dyadic|arb1|arb2|lorentz|lp|linf|predual-level|predual-upper|predual-lower");
    norm_cmd->add_option("--level", norm_args.level, "level for predual-level");

    EmbedArgs embed_args;
    auto* embed_cmd = app.add_subcommand("embed", "finite-section embedding report");
    embed_cmd->add_option("--u1", embed_args.u1)->required();
    embed_cmd->add_option("--p1", embed_args.p1)->required();
    embed_cmd->add_option("--u2", embed_args.u2)->required();
    embed_cmd->add_option("--p2", embed_args.p2)->required();
    embed_cmd->add_option("--d", embed_args.dim, "lattice dimension");
    embed_cmd->add_option("--j", embed_args.level, "section level");
    embed_cmd->add_flag("--oracle", embed_args.oracle, "run the brute-force oracle");
    embed_cmd->add_option("--budget", embed_args.budget, "oracle ascent evaluation budget");

    WitnessArgs witness_args;
    auto* witness_cmd = app.add_subcommand("witness", "write witness sequences");
    witness_cmd->add_option("kind", witness_args.kind, "u-decrease|ratio-blowup|separation")
        ->required();
    witness_cmd->add_option("--u1", witness_args.u1);
    witness_cmd->add_option("--p1", witness_args.p1);
    witness_cmd->add_option("--u2", witness_args.u2);
    witness_cmd->add_option("--p2", witness_args.p2);
    witness_cmd->add_option("--d", witness_args.dim);
    witness_cmd->add_option("--j", witness_args.level);
    witness_cmd->add_option("--target", witness_args.target, "ratio target for ratio-blowup");
    witness_cmd->add_option("--u", witness_args.u, "u for separation");
    witness_cmd->add_option("--p", witness_args.p, "p for separation distances");
    witness_cmd->add_option("--levels", witness_args.levels, "separation cube levels, e.g. 1,3");
    witness_cmd->add_option("--count", witness_args.count, "separation member count");
    witness_cmd->add_option("--seed", witness_args.seed, "sign-vector seed");
    witness_cmd->add_option("--out", witness_args.out, "output file");
    witness_cmd->add_option("--out-prefix", witness_args.out_prefix, "separation file prefix");

    EntropyArgs entropy_args;
    auto* entropy_cmd = app.add_subcommand("entropy", "entropy-number report (TSV)");
    entropy_cmd->add_option("--pair", entropy_args.pair, "norm pair, e.g. l1:linf");
    entropy_cmd->add_option("--dim", entropy_args.dim, "real dimension for --pair");
    entropy_cmd->add_option("--morrey", entropy_args.morrey, "u1,p1:u2,p2");
    entropy_cmd->add_option("--j", entropy_args.level, "section level for --morrey");
    entropy_cmd->add_option("--d", entropy_args.d, "lattice dimension for --morrey");
    entropy_cmd->add_option("--k-range", entropy_args.k_range, "min:max")->required();
    entropy_cmd->add_option("--delta", entropy_args.delta, "net pitch");
    entropy_cmd->add_option("--out", entropy_args.out, "also write the TSV here");

    int rc = 0;
    norm_cmd->callback([&] { rc = run_norm(norm_args); });
    embed_cmd->callback([&] { rc = run_embed(embed_args); });
    witness_cmd->callback([&] { rc = run_witness(witness_args); });
    entropy_cmd->callback([&] { rc = run_entropy(entropy_args); });

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 3;
    } catch (const morrey::SchemaError& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 2;
    } catch (const std::domain_error& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 3;
    } catch (const std::invalid_argument& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 3;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "internal error: %s\n", e.what());
        return 1;
    }
    return rc;
}
