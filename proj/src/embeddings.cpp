#include "morrey/embeddings.hpp"

#include <algorithm>
#include <cassert>
#include <cmath>
#include <random>
#include <set>
#include <stdexcept>
#include <utility>

#include "morrey/norms.hpp"
#include "morrey/parallel.hpp"

namespace morrey {

bool embedding_admissible(const SpaceParams& source, const SpaceParams& target) {
    return source.u() <= target.u() &&
           target.p() / target.u() <= source.p() / source.u();
}

EmbeddingNorm embedding_norm_closed_form(const EmbeddingCase& c) {
    if (c.dim < 1 || c.level < 0) throw std::invalid_argument("invalid embedding shape");
    const double u1 = c.source.u(), p1 = c.source.p();
    const double u2 = c.target.u(), p2 = c.target.p();
    const double jd = double(c.level) * c.dim;

    EmbeddingNorm out;
    if (p1 >= p2 && u2 >= u1) {
        out.value = 1.0;
    } else if (p1 < p2 && p2 / u2 <= p1 / u1) {
        out.value = 1.0;
    } else if (p1 >= p2 && u2 < u1) {
        out.value = std::exp2(jd * (1.0 / u2 - 1.0 / u1));
    } else {
        // p1 < p2 and p2/u2 > p1/u1: two-sided estimate.  The upper end is
        // the proven bound; the lower end is the certified ratio of the
        // spread pattern at this level, so the true norm lies in between.
        out.exact = false;
        out.upper = std::exp2(jd * (1.0 / u2 - p1 / (u1 * p2)));
        const FiniteSequence pattern = spread_pattern(c.level, c.dim, c.source);
        const double src = morrey_norm(pattern, c.source);
        const double tgt = morrey_norm(pattern, c.target);
        out.lower = std::min(tgt / src, out.upper);
        return out;
    }
    out.lower = out.upper = out.value;
    return out;
}

namespace {

double ratio_of(const EmbeddingCase& c, const FiniteSequence& seq) {
    const double src = morrey_norm(seq, c.source);
    if (src == 0.0) return 0.0;
    return morrey_norm(seq, c.target) / src;
}

} // namespace

BruteForceNorm embedding_norm_bruteforce(const EmbeddingCase& c, int budget) {
    if (c.dim < 1 || c.level < 0) throw std::invalid_argument("invalid embedding shape");
    const std::uint64_t cells = std::uint64_t{1} << (std::uint64_t(c.level) * c.dim);
    if (cells > 16) throw std::invalid_argument("brute force requires 2^(level*dim) <= 16");
    const std::size_t n = static_cast<std::size_t>(cells);
    const std::uint64_t patterns = (std::uint64_t{1} << n) - 1;

    // exhaustive 0/1 pattern stage, deterministically reduced over fixed blocks
    constexpr std::size_t kBlock = 1024;
    const std::size_t blocks = block_count(static_cast<std::size_t>(patterns), kBlock);
    std::vector<std::pair<double, std::uint64_t>> best_per_block(blocks, {0.0, 0});
    for_each_block(static_cast<std::size_t>(patterns), kBlock,
                   [&](std::size_t begin, std::size_t end, std::size_t blk) {
                       double best = 0.0;
                       std::uint64_t best_mask = 0;
                       std::vector<double> vals(n);
                       for (std::size_t i = begin; i < end; ++i) {
                           const std::uint64_t mask = i + 1;
                           for (std::size_t b = 0; b < n; ++b)
                               vals[b] = (mask >> b) & 1 ? 1.0 : 0.0;
                           const double r =
                               ratio_of(c, FiniteSequence(c.dim, c.level, vals));
                           if (r > best) {
                               best = r;
                               best_mask = mask;
                           }
                       }
                       best_per_block[blk] = {best, best_mask};
                   });
    double pattern_best = 0.0;
    std::uint64_t pattern_mask = 1;
    for (const auto& [value, mask] : best_per_block) {
        if (value > pattern_best || (value == pattern_best && mask != 0 && mask < pattern_mask)) {
            pattern_best = value;
            pattern_mask = mask;
        }
    }

    // coordinate ascent on general magnitudes, seeded with the best pattern
    std::vector<double> x(n);
    for (std::size_t b = 0; b < n; ++b) x[b] = (pattern_mask >> b) & 1 ? 1.0 : 0.0;
    double value = pattern_best;
    int evals = 0;
    const double steps[] = {0.5, 0.25, 0.1, 0.04, 0.015, 0.005, 0.002, 0.0008};
    for (double eta : steps) {
        bool improved = true;
        while (improved && evals < budget) {
            improved = false;
            for (std::size_t i = 0; i < n && evals < budget; ++i) {
                const double base = x[i];
                const double trials[] = {base * (1.0 + eta),
                                         base * (1.0 - eta),
                                         base == 0.0 ? eta : 0.0};
                for (double t : trials) {
                    if (t < 0.0 || t == base) continue;
                    x[i] = t;
                    const double r = ratio_of(c, FiniteSequence(c.dim, c.level, x));
                    ++evals;
                    if (r > value * (1.0 + 1e-14)) {
                        value = r;
                        improved = true;
                    } else {
                        x[i] = base;
                    }
                    if (evals >= budget) break;
                }
            }
        }
    }

    BruteForceNorm out{value, pattern_best, value > pattern_best * (1.0 + 1e-9),
                       FiniteSequence(c.dim, c.level, x)};
    // report the maximizer at unit source norm
    const double src = morrey_norm(out.maximizer, c.source);
    if (src > 0.0) {
        std::vector<double> scaled(out.maximizer.values().begin(), out.maximizer.values().end());
        for (double& v : scaled) v /= src;
        out.maximizer = FiniteSequence(c.dim, c.level, std::move(scaled));
    }
    return out;
}

SupportedSequence witness_u_decrease(const SpaceParams& source, int dim, int level) {
    if (dim < 1 || level < 0 || std::uint64_t(level) * dim > 24)
        throw std::invalid_argument("invalid witness shape");
    if (level > 20) throw std::invalid_argument("witness level too large");
    DyadicCube cube;
    cube.level = level;
    cube.origin.assign(dim, 0);
    cube.origin[0] = std::int64_t{1} << (2 * level); // far from the origin, positive orthant
    const double magnitude = std::exp2(-double(level) * dim / source.u());
    SupportedSequence out(dim);
    for (const Lattice& k : cells_in(cube)) out.set(k, magnitude);
    return out;
}

namespace {

// ones are handed down the tree: an even split per child, remainders to the
// lexicographically first children, all loads clipped by the per-level caps
void place_ones(FiniteSequence& seq, int nu, const Lattice& corner, std::int64_t count,
                const std::vector<std::int64_t>& capacity) {
    if (count <= 0) return;
    if (nu == 0) {
        assert(count == 1);
        seq.set(seq.index_of(corner), 1.0);
        return;
    }
    const int d = seq.dim();
    const std::int64_t children = std::int64_t{1} << d;
    const std::int64_t base = count / children;
    const std::int64_t rem = count % children;
    const std::int64_t half = std::int64_t{1} << (nu - 1);
    for (std::int64_t b = 0; b < children; ++b) {
        const std::int64_t load = base + (b < rem ? 1 : 0);
        if (load == 0) continue;
        if (load > capacity[nu - 1])
            throw std::logic_error("spread pattern cap infeasible (internal error)");
        Lattice child = corner;
        for (int i = 0; i < d; ++i)
            if ((b >> (d - 1 - i)) & 1) child[i] += half;
        place_ones(seq, nu - 1, child, load, capacity);
    }
}

} // namespace

FiniteSequence spread_pattern(int level, int dim, const SpaceParams& source) {
    if (dim < 1 || level < 0 || std::uint64_t(level) * dim > 24)
        throw std::invalid_argument("invalid spread pattern shape");
    if (!(source.p() < source.u()))
        throw std::domain_error("spread pattern requires p < u");

    const double alpha = 1.0 - source.p() / source.u();
    std::vector<std::int64_t> cap(level + 1), capacity(level + 1);
    for (int nu = 0; nu <= level; ++nu)
        cap[nu] = std::max<std::int64_t>(
            1, static_cast<std::int64_t>(std::floor(std::exp2(double(dim) * nu * alpha))));
    capacity[0] = 1;
    for (int nu = 1; nu <= level; ++nu)
        capacity[nu] = std::min(cap[nu], (std::int64_t{1} << dim) * capacity[nu - 1]);

    FiniteSequence seq = FiniteSequence::zeros(dim, level);
    place_ones(seq, level, Lattice(dim, 0), capacity[level], capacity);
    return seq;
}

RatioBlowup witness_ratio_blowup(const SpaceParams& source, const SpaceParams& target, int dim,
                                 double target_ratio) {
    if (dim < 1) throw std::invalid_argument("dimension must be >= 1");
    if (!(target_ratio >= 1.0) || !std::isfinite(target_ratio))
        throw std::domain_error("target ratio must be finite and >= 1");
    const bool blows_up = source.u() <= target.u() &&
                          source.p() / source.u() < target.p() / target.u();
    if (!blows_up)
        throw std::domain_error("ratio blow-up requires u1 <= u2 and p1/u1 < p2/u2");

    for (int level = 1; std::uint64_t(level) * dim <= 24; ++level) {
        FiniteSequence pattern = spread_pattern(level, dim, source);
        const double src = morrey_norm(pattern, source);
        const double tgt = morrey_norm(pattern, target);
        const double ratio = tgt / src;
        if (ratio >= target_ratio) return RatioBlowup{std::move(pattern), level, ratio};
    }
    throw std::runtime_error("ratio target not reached within the size limit");
}

SeparationFamily separation_family(const std::vector<int>& levels, int dim, double u,
                                   const std::vector<std::vector<int>>& signs) {
    if (levels.empty()) throw std::invalid_argument("separation family needs at least one level");
    for (std::size_t i = 0; i < levels.size(); ++i) {
        if (levels[i] < 0) throw std::invalid_argument("separation levels must be >= 0");
        if (i > 0 && levels[i] <= levels[i - 1])
            throw std::invalid_argument("separation levels must be strictly increasing");
    }
    if (dim < 1) throw std::invalid_argument("dimension must be >= 1");
    if (!(u > 0.0) || !std::isfinite(u)) throw std::domain_error("u must be positive and finite");
    if (levels.size() > 15 || std::uint64_t(levels.back()) * dim > 20)
        throw std::invalid_argument("separation family too large");

    SeparationFamily family;
    family.levels = levels;
    family.dim = dim;
    family.u = u;
    const int jL = levels.back();
    for (std::size_t l = 0; l < levels.size(); ++l) {
        DyadicCube cube;
        cube.level = levels[l];
        cube.origin.assign(dim, 0);
        cube.origin[0] = (std::int64_t{1} << (2 * (l + 1))) << jL; // 4^{l+1} * 2^{jL}
        const double magnitude = std::exp2(-double(levels[l]) * dim / u);
        for (Lattice& k : cells_in(cube)) {
            family.cells.push_back(std::move(k));
            family.cell_magnitude.push_back(magnitude);
        }
    }

    for (const std::vector<int>& sv : signs) {
        if (sv.size() != family.cells.size())
            throw std::invalid_argument("sign vector length must match the family cell count");
        SeparationMember member{SupportedSequence(dim), sv};
        for (std::size_t i = 0; i < family.cells.size(); ++i) {
            if (sv[i] != 1 && sv[i] != -1)
                throw std::invalid_argument("sign vectors must consist of +1/-1");
            member.magnitudes.set(family.cells[i], family.cell_magnitude[i]);
        }
        if (member.magnitudes.support_size() != family.cells.size())
            throw std::logic_error("separation cubes overlap (internal error)");
        family.members.push_back(std::move(member));
    }
    return family;
}

double separation_distance(const SeparationFamily& family, std::size_t a, std::size_t b,
                           const SpaceParams& prm) {
    const auto& sa = family.members.at(a).signs;
    const auto& sb = family.members.at(b).signs;
    SupportedSequence diff(family.dim);
    for (std::size_t i = 0; i < family.cells.size(); ++i)
        if (sa[i] != sb[i]) diff.set(family.cells[i], 2.0 * family.cell_magnitude[i]);
    return morrey_norm(diff, prm);
}

double separation_norm_bound(const SpaceParams& prm, int dim) {
    if (!(prm.p() < prm.u()))
        throw std::domain_error("separation norm bound requires p < u");
    const double decay = std::exp2(-double(dim) * (1.0 - prm.p() / prm.u()));
    return std::pow(1.0 / (1.0 - decay), 1.0 / prm.p());
}

std::vector<std::vector<int>> default_sign_vectors(std::size_t count, std::size_t length,
                                                   std::uint64_t seed) {
    if (length == 0) throw std::invalid_argument("sign vectors need positive length");
    if (length < 63 && count > (std::uint64_t{1} << length))
        throw std::invalid_argument("more sign vectors requested than exist");
    std::mt19937_64 rng(seed);
    std::set<std::vector<int>> seen;
    std::vector<std::vector<int>> out;
    while (out.size() < count) {
        std::vector<int> sv(length);
        for (std::size_t i = 0; i < length; ++i) sv[i] = (rng() & 1) ? 1 : -1;
        if (seen.insert(sv).second) out.push_back(std::move(sv));
    }
    return out;
}

} // namespace morrey
