#include "morrey/entropy.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <stdexcept>

#include "morrey/embeddings.hpp"
#include "morrey/parallel.hpp"

namespace morrey {

NormFn lp_section_norm(double p, int dim) {
    if (dim < 1) throw std::invalid_argument("dimension must be >= 1");
    if (!(p > 0.0)) throw std::domain_error("exponent must be positive");
    if (std::isinf(p))
        return [](std::span<const double> x) {
            double m = 0.0;
            for (double v : x) m = std::max(m, std::abs(v));
            return m;
        };
    return [p](std::span<const double> x) {
        double s = 0.0;
        for (double v : x) s += std::pow(std::abs(v), p);
        return s == 0.0 ? 0.0 : std::pow(s, 1.0 / p);
    };
}

NormFn morrey_section_norm(const SpaceParams& prm, int dim, int level) {
    if (dim < 1 || level < 0 || level * dim > 12)
        throw std::invalid_argument("section too large");
    // Every dyadic cube meeting the section with a nonzero sum and level
    // above `level` sees the full coordinate set at a smaller weight, so the
    // supremum is attained among the subcubes enumerated here.
    struct Cube {
        double weight;
        std::vector<std::size_t> members;
    };
    std::vector<Cube> cubes;
    const auto cell_index = [dim, level](const std::vector<std::int64_t>& k) {
        std::size_t idx = 0;
        for (int i = 0; i < dim; ++i) idx = (idx << level) | std::size_t(k[i]);
        return idx;
    };
    for (int nu = 0; nu <= level; ++nu) {
        const std::int64_t cubes_per_axis = std::int64_t{1} << (level - nu);
        const std::int64_t cells_per_axis = std::int64_t{1} << nu;
        std::vector<std::int64_t> origin(dim, 0);
        while (true) {
            Cube cube;
            cube.weight = std::exp2(double(nu) * dim * prm.weight_exponent());
            std::vector<std::int64_t> off(dim, 0), cell(dim);
            while (true) {
                for (int i = 0; i < dim; ++i) cell[i] = origin[i] * cells_per_axis + off[i];
                cube.members.push_back(cell_index(cell));
                int axis = dim - 1;
                while (axis >= 0 && ++off[axis] == cells_per_axis) off[axis--] = 0;
                if (axis < 0) break;
            }
            cubes.push_back(std::move(cube));
            int axis = dim - 1;
            while (axis >= 0 && ++origin[axis] == cubes_per_axis) origin[axis--] = 0;
            if (axis < 0) break;
        }
    }
    const double p = prm.p();
    return [cubes = std::move(cubes), p](std::span<const double> x) {
        double best = 0.0;
        for (const auto& cube : cubes) {
            double s = 0.0;
            for (std::size_t m : cube.members) s += std::pow(std::abs(x[m]), p);
            if (s > 0.0) best = std::max(best, cube.weight * std::pow(s, 1.0 / p));
        }
        return best;
    };
}

namespace {

constexpr std::size_t kBlock = 4096;
constexpr std::uint64_t kMaxRawGrid = 16'000'000;

struct Net {
    int dim = 0;
    double delta = 0.0;
    std::size_t count = 0;
    std::vector<double> pts;       // count * dim, lexicographic grid order
    std::vector<double> tgt_basis; // tgt(e_i)
    double slack = 0.0;            // delta * sum tgt_basis
    std::vector<double> axis_max;  // largest grid coordinate per axis
    std::size_t origin_index = 0;
};

const double* net_point(const Net& net, std::size_t i) { return net.pts.data() + i * net.dim; }

double distance(const NormFn& tgt, const double* a, const double* b, int dim) {
    double diff[4];
    for (int i = 0; i < dim; ++i) diff[i] = a[i] - b[i];
    return tgt(std::span<const double>(diff, std::size_t(dim)));
}

Net build_net(const NormFn& src, const NormFn& tgt, int dim, double delta) {
    if (dim < 1 || dim > 4) throw std::invalid_argument("entropy nets support dimensions 1..4");
    if (!(delta > 0.0) || !std::isfinite(delta))
        throw std::invalid_argument("resolution must be positive");

    Net net;
    net.dim = dim;
    net.delta = delta;
    std::vector<std::int64_t> half(dim);
    std::uint64_t raw = 1;
    for (int i = 0; i < dim; ++i) {
        std::vector<double> e(dim, 0.0);
        e[i] = 1.0;
        const double s = src(e);
        if (!(s > 0.0) || !std::isfinite(s))
            throw std::invalid_argument("source norm degenerate on a basis vector");
        net.tgt_basis.push_back(tgt(e));
        half[i] = std::int64_t(std::floor(1.0 / (s * delta) + 1e-9));
        if (half[i] < 1) throw std::invalid_argument("resolution coarser than the unit ball");
        net.axis_max.push_back(double(half[i]) * delta);
        raw *= std::uint64_t(2 * half[i] + 1);
        if (raw > kMaxRawGrid) throw std::invalid_argument("resolution too fine for this dimension");
    }
    net.slack = 0.0;
    for (double b : net.tgt_basis) net.slack += b;
    net.slack *= delta;

    // grid points inside the unit ball, generated per block and concatenated
    // in block order so the net is identical for any worker count
    const std::size_t blocks = block_count(std::size_t(raw), kBlock);
    std::vector<std::vector<double>> accepted(blocks);
    for_each_block(std::size_t(raw), kBlock, [&](std::size_t begin, std::size_t end, std::size_t blk) {
        std::vector<double> local;
        std::vector<double> x(dim);
        for (std::size_t r = begin; r < end; ++r) {
            std::size_t rest = r;
            for (int i = dim - 1; i >= 0; --i) {
                const std::size_t radix = std::size_t(2 * half[i] + 1);
                x[i] = double(std::int64_t(rest % radix) - half[i]) * delta;
                rest /= radix;
            }
            if (src(x) <= 1.0)
                for (int i = 0; i < dim; ++i) local.push_back(x[i]);
        }
        accepted[blk] = std::move(local);
    });
    for (auto& local : accepted)
        net.pts.insert(net.pts.end(), local.begin(), local.end());
    net.count = net.pts.size() / std::size_t(dim);

    for (std::size_t i = 0; i < net.count; ++i) {
        bool zero = true;
        for (int d = 0; d < dim; ++d) zero = zero && net_point(net, i)[d] == 0.0;
        if (zero) {
            net.origin_index = i;
            break;
        }
    }
    return net;
}

// deterministic parallel argmax: per-block (value, lowest index), blocks
// combined in order with strict-greater wins
std::size_t argmax_reduce(const std::vector<double>& v) {
    const std::size_t blocks = block_count(v.size(), kBlock);
    std::vector<std::pair<double, std::size_t>> best(blocks, {-1.0, 0});
    for_each_block(v.size(), kBlock, [&](std::size_t begin, std::size_t end, std::size_t blk) {
        double bv = -std::numeric_limits<double>::infinity();
        std::size_t bi = begin;
        for (std::size_t i = begin; i < end; ++i)
            if (v[i] > bv) {
                bv = v[i];
                bi = i;
            }
        best[blk] = {bv, bi};
    });
    double bv = -std::numeric_limits<double>::infinity();
    std::size_t bi = 0;
    for (const auto& [value, index] : best)
        if (value > bv) {
            bv = value;
            bi = index;
        }
    return bi;
}

double max_reduce(const std::vector<double>& v) {
    const std::size_t blocks = block_count(v.size(), kBlock);
    std::vector<double> best(blocks, 0.0);
    for_each_block(v.size(), kBlock, [&](std::size_t begin, std::size_t end, std::size_t blk) {
        double m = 0.0;
        for (std::size_t i = begin; i < end; ++i) m = std::max(m, v[i]);
        best[blk] = m;
    });
    double m = 0.0;
    for (double b : best) m = std::max(m, b);
    return m;
}

void update_min_dists(const Net& net, const NormFn& tgt, std::size_t center,
                      std::vector<double>& mind) {
    const double* c = net_point(net, center);
    for_each_block(net.count, kBlock, [&](std::size_t begin, std::size_t end, std::size_t) {
        for (std::size_t i = begin; i < end; ++i)
            mind[i] = std::min(mind[i], distance(tgt, net_point(net, i), c, net.dim));
    });
}

struct CoverChain {
    std::vector<std::size_t> order;   // first = origin
    std::vector<double> radius_after; // radius with order[0..i] as centers
};

CoverChain build_cover_chain(const Net& net, const NormFn& tgt, std::size_t max_centers) {
    max_centers = std::min(max_centers, net.count);
    CoverChain chain;
    std::vector<double> mind(net.count, std::numeric_limits<double>::infinity());
    chain.order.push_back(net.origin_index);
    update_min_dists(net, tgt, net.origin_index, mind);
    chain.radius_after.push_back(max_reduce(mind));
    while (chain.order.size() < max_centers) {
        const std::size_t next = argmax_reduce(mind);
        chain.order.push_back(next);
        update_min_dists(net, tgt, next, mind);
        chain.radius_after.push_back(max_reduce(mind));
    }
    return chain;
}

struct PackChain {
    std::vector<std::size_t> order;
    std::vector<double> insert_dist; // [i] = distance of order[i] to order[0..i-1]
};

PackChain build_pack_chain(const Net& net, const NormFn& tgt, std::size_t max_points) {
    max_points = std::min(max_points, net.count);
    PackChain chain;
    std::vector<double> norms(net.count);
    for_each_block(net.count, kBlock, [&](std::size_t begin, std::size_t end, std::size_t) {
        for (std::size_t i = begin; i < end; ++i)
            norms[i] = tgt(std::span<const double>(net_point(net, i), std::size_t(net.dim)));
    });
    const std::size_t first = argmax_reduce(norms);
    chain.order.push_back(first);
    chain.insert_dist.push_back(std::numeric_limits<double>::infinity());
    std::vector<double> mind(net.count, std::numeric_limits<double>::infinity());
    update_min_dists(net, tgt, first, mind);
    while (chain.order.size() < max_points) {
        const std::size_t next = argmax_reduce(mind);
        chain.order.push_back(next);
        chain.insert_dist.push_back(mind[next]);
        update_min_dists(net, tgt, next, mind);
    }
    return chain;
}

std::vector<std::vector<double>> chain_coords(const Net& net, const std::vector<std::size_t>& order,
                                              std::size_t count) {
    std::vector<std::vector<double>> out;
    for (std::size_t i = 0; i < count; ++i) {
        const double* p = net_point(net, order[i]);
        out.emplace_back(p, p + net.dim);
    }
    return out;
}

double covering_radius_of(const Net& net, const NormFn& tgt,
                          const std::vector<std::vector<double>>& centers) {
    const std::size_t blocks = block_count(net.count, kBlock);
    std::vector<double> block_max(blocks, 0.0);
    for_each_block(net.count, kBlock, [&](std::size_t begin, std::size_t end, std::size_t blk) {
        double m = 0.0;
        for (std::size_t i = begin; i < end; ++i) {
            double d = std::numeric_limits<double>::infinity();
            for (const auto& c : centers)
                d = std::min(d, distance(tgt, net_point(net, i), c.data(), net.dim));
            m = std::max(m, d);
        }
        block_max[blk] = m;
    });
    double m = 0.0;
    for (double b : block_max) m = std::max(m, b);
    return m;
}

struct PolishResult {
    double radius = std::numeric_limits<double>::infinity();
    std::vector<std::vector<double>> centers;
};

// alternate nearest-center assignment (ties to the lowest center index) and
// bounding-box midpoint recentering; the best realized radius is kept, so
// the result never degrades the start
PolishResult polish_centers(const Net& net, const NormFn& tgt,
                            std::vector<std::vector<double>> centers, int max_iters) {
    const std::size_t K = centers.size();
    const int dim = net.dim;
    const std::size_t blocks = block_count(net.count, kBlock);
    PolishResult best;
    std::vector<int> assign(net.count, -1), prev_assign;
    std::vector<double> lo(K * dim), hi(K * dim);
    std::vector<double> block_lo(blocks * K * dim), block_hi(blocks * K * dim);
    std::vector<double> block_max(blocks);
    for (int iter = 0; iter < max_iters; ++iter) {
        std::fill(block_lo.begin(), block_lo.end(), std::numeric_limits<double>::infinity());
        std::fill(block_hi.begin(), block_hi.end(), -std::numeric_limits<double>::infinity());
        for_each_block(net.count, kBlock, [&](std::size_t begin, std::size_t end, std::size_t blk) {
            double m = 0.0;
            double* blo = block_lo.data() + blk * K * dim;
            double* bhi = block_hi.data() + blk * K * dim;
            for (std::size_t i = begin; i < end; ++i) {
                const double* p = net_point(net, i);
                double bd = std::numeric_limits<double>::infinity();
                std::size_t bc = 0;
                for (std::size_t c = 0; c < K; ++c) {
                    const double d = distance(tgt, p, centers[c].data(), dim);
                    if (d < bd) {
                        bd = d;
                        bc = c;
                    }
                }
                assign[i] = int(bc);
                m = std::max(m, bd);
                for (int d2 = 0; d2 < dim; ++d2) {
                    blo[bc * dim + d2] = std::min(blo[bc * dim + d2], p[d2]);
                    bhi[bc * dim + d2] = std::max(bhi[bc * dim + d2], p[d2]);
                }
            }
            block_max[blk] = m;
        });
        double radius = 0.0;
        for (std::size_t blk = 0; blk < blocks; ++blk) radius = std::max(radius, block_max[blk]);
        if (radius < best.radius) {
            best.radius = radius;
            best.centers = centers;
        }
        if (assign == prev_assign) break;
        prev_assign = assign;

        std::fill(lo.begin(), lo.end(), std::numeric_limits<double>::infinity());
        std::fill(hi.begin(), hi.end(), -std::numeric_limits<double>::infinity());
        for (std::size_t blk = 0; blk < blocks; ++blk)
            for (std::size_t j = 0; j < K * dim; ++j) {
                lo[j] = std::min(lo[j], block_lo[blk * K * dim + j]);
                hi[j] = std::max(hi[j], block_hi[blk * K * dim + j]);
            }
        for (std::size_t c = 0; c < K; ++c)
            for (int d2 = 0; d2 < dim; ++d2)
                if (lo[c * dim + d2] <= hi[c * dim + d2]) // empty cluster keeps its center
                    centers[c][d2] = 0.5 * (lo[c * dim + d2] + hi[c * dim + d2]);
    }
    return best;
}

std::vector<std::vector<double>> even_centers_1d(const Net& net, std::size_t K) {
    const double a = net.axis_max[0];
    std::vector<std::vector<double>> centers;
    for (std::size_t i = 0; i < K; ++i)
        centers.push_back({-a + (2.0 * double(i) + 1.0) * a / double(K)});
    return centers;
}

std::uint64_t centers_for(int k) { return k >= 63 ? std::uint64_t(-1) : std::uint64_t{1} << (k - 1); }

} // namespace

std::vector<EntropyEstimate> entropy_profile(const NormFn& source_norm, const NormFn& target_norm,
                                             int dim, int k_min, int k_max, double resolution) {
    if (k_min < 1 || k_max < k_min || k_max > 40) throw std::invalid_argument("invalid k range");
    const Net net = build_net(source_norm, target_norm, dim, resolution);

    const std::size_t max_K =
        std::size_t(std::min<std::uint64_t>(centers_for(k_max), net.count));
    const CoverChain cover = build_cover_chain(net, target_norm, max_K);
    const std::size_t max_m =
        std::size_t(std::min<std::uint64_t>(centers_for(k_max) + 1, net.count));
    const PackChain pack = build_pack_chain(net, target_norm, max_m);

    std::vector<EntropyEstimate> out;
    double carried_radius = std::numeric_limits<double>::infinity();
    std::vector<std::vector<double>> carried_centers;
    for (int k = k_min; k <= k_max; ++k) {
        const std::size_t K = std::size_t(std::min<std::uint64_t>(centers_for(k), net.count));
        double radius = cover.radius_after[K - 1];
        std::vector<std::vector<double>> centers = chain_coords(net, cover.order, K);
        if (dim == 1) {
            auto even = even_centers_1d(net, K);
            const double even_radius = covering_radius_of(net, target_norm, even);
            if (even_radius < radius) {
                radius = even_radius;
                centers = std::move(even);
            }
        }
        if (K <= 64) {
            PolishResult polished = polish_centers(net, target_norm, centers, 100);
            if (polished.radius < radius) {
                radius = polished.radius;
                centers = std::move(polished.centers);
            }
        }
        if (radius < carried_radius) {
            carried_radius = radius;
            carried_centers = std::move(centers);
        }

        EntropyEstimate est;
        est.k = k;
        est.dim = dim;
        est.resolution = resolution;
        est.covering_radius = carried_radius;
        est.covering_slack = net.slack;
        est.upper = carried_radius + net.slack;
        est.centers = carried_centers;
        const std::uint64_t m = centers_for(k) + 1;
        if (m <= net.count) {
            const double sep = pack.insert_dist[std::size_t(m) - 1];
            est.lower = 0.5 * sep;
            est.lower_certified = sep > 0.0;
            est.packing = chain_coords(net, pack.order, std::size_t(m));
        }
        out.push_back(std::move(est));
    }
    return out;
}

EntropyEstimate entropy_estimate(const NormFn& source_norm, const NormFn& target_norm, int dim,
                                 int k, double resolution) {
    return entropy_profile(source_norm, target_norm, dim, k, k, resolution).front();
}

CertificateCheck entropy_verify(const EntropyEstimate& est, const NormFn& source_norm,
                                const NormFn& target_norm) {
    const Net net = build_net(source_norm, target_norm, est.dim, est.resolution);
    CertificateCheck check;

    check.covering_ok = !est.centers.empty() &&
                        std::uint64_t(est.centers.size()) <= centers_for(est.k) &&
                        std::abs(est.upper - (est.covering_radius + est.covering_slack)) <=
                            1e-12 * (1.0 + est.upper);
    if (check.covering_ok) {
        const double budget = est.covering_radius * (1.0 + 1e-12) + 1e-15;
        const double realized = covering_radius_of(net, target_norm, est.centers);
        check.covering_ok = realized <= budget;
    }

    if (!est.lower_certified) {
        check.packing_ok = est.lower == 0.0;
        return check;
    }
    check.packing_ok = std::uint64_t(est.packing.size()) == centers_for(est.k) + 1;
    for (const auto& p : est.packing)
        if (check.packing_ok)
            check.packing_ok = source_norm(p) <= 1.0 + 1e-12;
    const double need = 2.0 * est.lower * (1.0 - 1e-12);
    for (std::size_t a = 0; a < est.packing.size() && check.packing_ok; ++a)
        for (std::size_t b = a + 1; b < est.packing.size() && check.packing_ok; ++b)
            check.packing_ok =
                distance(target_norm, est.packing[a].data(), est.packing[b].data(), est.dim) >= need;
    return check;
}

double entropy_schuett(int n, double p1, double p2, int k) {
    if (n < 1 || k < 1) throw std::invalid_argument("requires n >= 1 and k >= 1");
    if (!(p1 > 0.0) || !(p2 > 0.0)) throw std::domain_error("exponents must be positive");
    const double inv = 1.0 / p1 - 1.0 / p2; // 1/infinity = 0
    const double tail = std::exp2(-double(k) / (2.0 * n)) * std::pow(double(n), -inv);
    if (p2 < p1) return tail;
    if (double(k) <= std::log2(2.0 * n) + 1e-12) return 1.0;
    if (k < 2 * n) return std::pow(std::log2(1.0 + double(n) / double(k)) / double(k), inv);
    return tail;
}

std::vector<MorreySandwichRow> entropy_morrey_sandwich(const EmbeddingCase& c, int k_min,
                                                       int k_max, double resolution) {
    if (c.dim < 1 || c.level < 0 || c.level * c.dim > 2)
        throw std::invalid_argument("sandwich sections support 2^{jd} <= 4");
    const int n = 1 << (c.level * c.dim);
    if (k_min < 2 * n) throw std::domain_error("sandwich certified only for k >= 2 * 2^{jd}");

    const double jd = double(c.level) * c.dim;
    const double factor_up = std::exp2(jd * (1.0 / c.source.p() - 1.0 / c.source.u()));
    const double factor_down = std::exp2(jd * (1.0 / c.target.p() - 1.0 / c.target.u()));

    const auto direct = entropy_profile(morrey_section_norm(c.source, c.dim, c.level),
                                        morrey_section_norm(c.target, c.dim, c.level), n, k_min,
                                        k_max, resolution);
    const auto up = entropy_profile(lp_section_norm(c.source.p(), n),
                                    lp_section_norm(c.target.u(), n), n, k_min, k_max, resolution);
    const auto down = entropy_profile(lp_section_norm(c.source.u(), n),
                                      lp_section_norm(c.target.p(), n), n, k_min, k_max, resolution);

    std::vector<MorreySandwichRow> rows;
    for (std::size_t i = 0; i < direct.size(); ++i) {
        MorreySandwichRow row;
        row.k = direct[i].k;
        row.direct_lower = direct[i].lower;
        row.direct_upper = direct[i].upper;
        row.sandwich_upper = factor_up * up[i].upper;
        row.sandwich_lower = down[i].lower / factor_down;
        row.factor_up = factor_up;
        row.factor_down = factor_down;
        const double width_up = up[i].lower > 0.0
                                    ? up[i].upper / up[i].lower
                                    : std::numeric_limits<double>::infinity();
        const double width_down = down[i].lower > 0.0
                                      ? down[i].upper / down[i].lower
                                      : std::numeric_limits<double>::infinity();
        row.scalar_width_product = width_up * width_down;
        // both intervals contain the true entropy number, so they intersect
        if (row.direct_lower > row.sandwich_upper * (1.0 + 1e-9) ||
            row.direct_upper < row.sandwich_lower * (1.0 - 1e-9))
            throw std::logic_error("entropy sandwich inconsistent (internal error)");
        rows.push_back(row);
    }
    return rows;
}

} // namespace morrey
