#include "morrey/norms.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <stdexcept>

namespace morrey {

namespace {

struct CubeValue {
    double value = 0.0;
    DyadicCube cube;
    bool found = false;
};

// Bottom-up pass over the dyadic tree rooted at the level-J cube at the
// origin: level-0 power sums are aggregated into parents, and every node
// contributes weight(level) * sum^{1/p}.  Candidate scan order is level
// ascending, origin lexicographic, with strict improvement, which realizes
// the documented tie-break.
CubeValue scan_finite(const FiniteSequence& seq, const SpaceParams& prm) {
    const int d = seq.dim();
    const int J = seq.level();
    const double p = prm.p();
    const double we = prm.weight_exponent();

    std::vector<double> sums(seq.size());
    for (std::size_t i = 0; i < seq.size(); ++i)
        sums[i] = seq[i] == 0.0 ? 0.0 : std::pow(seq[i], p);

    CubeValue best;
    for (int nu = 0; nu <= J; ++nu) {
        const double factor = std::exp2(double(nu) * d * we);
        const std::size_t side = std::size_t{1} << (J - nu);
        const std::size_t count = sums.size();
        for (std::size_t idx = 0; idx < count; ++idx) {
            if (sums[idx] == 0.0) continue;
            const double value = factor * std::pow(sums[idx], 1.0 / p);
            if (!best.found || value > best.value) {
                best.found = true;
                best.value = value;
                best.cube.level = nu;
                best.cube.origin.assign(d, 0);
                std::size_t rest = idx;
                for (int i = d - 1; i >= 0; --i) {
                    best.cube.origin[i] = static_cast<std::int64_t>(rest % side);
                    rest /= side;
                }
            }
        }
        if (nu == J) break;

        // merge 2^d children into each parent node
        const std::size_t parent_side = side >> 1;
        std::size_t parent_count = 1;
        for (int i = 0; i < d; ++i) parent_count *= parent_side;
        std::vector<double> parents(parent_count, 0.0);
        for (std::size_t idx = 0; idx < count; ++idx) {
            if (sums[idx] == 0.0) continue;
            std::size_t rest = idx;
            std::size_t pidx = 0;
            // child origin digit o maps to parent digit o >> 1
            std::size_t stride = 1;
            for (int i = d - 1; i >= 0; --i) {
                pidx += ((rest % side) >> 1) * stride;
                rest /= side;
                stride *= parent_side;
            }
            parents[pidx] += sums[idx];
        }
        sums = std::move(parents);
    }
    return best;
}

CubeValue scan_supported(const SupportedSequence& seq, const SpaceParams& prm) {
    CubeValue best;
    if (seq.empty()) return best;

    const int d = seq.dim();
    const double p = prm.p();
    const double we = prm.weight_exponent();

    std::vector<Lattice> keys = seq.support();
    std::vector<double> powers;
    powers.reserve(keys.size());
    for (const auto& [k, v] : seq.entries()) powers.push_back(std::pow(v, p));

    const int top = covering_level(keys);
    for (int j = 0; j <= top; ++j) {
        std::map<Lattice, double> groups;
        for (std::size_t i = 0; i < keys.size(); ++i) {
            Lattice origin(d);
            for (int c = 0; c < d; ++c) origin[c] = floor_div_pow2(keys[i][c], j);
            groups[origin] += powers[i];
        }
        const double factor = std::exp2(double(j) * d * we);
        for (const auto& [origin, sum] : groups) {
            const double value = factor * std::pow(sum, 1.0 / p);
            if (!best.found || value > best.value) {
                best.found = true;
                best.value = value;
                best.cube = DyadicCube{j, origin};
            }
        }
    }
    return best;
}

double window_sum_powers(const SupportedSequence& seq, double p, const Lattice& anchor,
                         std::int64_t extent) {
    double sum = 0.0;
    for (const auto& [k, v] : seq.entries()) {
        bool inside = true;
        for (std::size_t i = 0; i < k.size(); ++i) {
            if (k[i] < anchor[i] || k[i] >= anchor[i] + extent) {
                inside = false;
                break;
            }
        }
        if (inside) sum += std::pow(v, p);
    }
    return sum;
}

// Supremum over axis-aligned cubes Q with |Q| >= 1 of
// |Q|^{1/u-1/p} (sum over the selected cells)^{1/p}.
//
// Contained: a closed cube [a, a+r]^d contains the cells of the integer
// window [ceil(a), floor(a+r)-1]^d, so shrinking Q onto that window never
// lowers the value; integer anchors with integer sides 1..span are exact.
//
// Intersecting: a closed cube meets an integer window of t cells per axis
// iff its side exceeds t-2 (t <= 2 needs only the floor side 1), and the
// value is maximized in the limit r -> max(t-2, 1), which may not be
// attained; the supremum over windows with that limiting weight is exact.
double arbitrary_scan(const SupportedSequence& seq, const SpaceParams& prm,
                      ArbitraryVariant variant) {
    if (seq.empty()) return 0.0;
    const int d = seq.dim();
    const double p = prm.p();
    const double we = prm.weight_exponent();

    Lattice lo = seq.entries().begin()->first;
    Lattice hi = lo;
    for (const auto& [k, v] : seq.entries())
        for (int i = 0; i < d; ++i) {
            lo[i] = std::min(lo[i], k[i]);
            hi[i] = std::max(hi[i], k[i]);
        }
    std::int64_t span = 1;
    for (int i = 0; i < d; ++i) span = std::max(span, hi[i] - lo[i] + 1);

    double best = 0.0;
    for (std::int64_t t = 1; t <= span; ++t) {
        const double side = variant == ArbitraryVariant::Contained
                                ? static_cast<double>(t)
                                : static_cast<double>(std::max<std::int64_t>(t - 2, 1));
        const double factor = std::pow(side, double(d) * we);
        Lattice anchor(d);
        for (int i = 0; i < d; ++i) anchor[i] = lo[i] - t + 1;
        for (;;) {
            const double sum = window_sum_powers(seq, p, anchor, t);
            if (sum > 0.0) best = std::max(best, factor * std::pow(sum, 1.0 / p));
            int i = d - 1;
            while (i >= 0 && ++anchor[i] > hi[i]) anchor[i--] = lo[i] - t + 1;
            if (i < 0) break;
        }
    }
    return best;
}

} // namespace

double morrey_norm(const FiniteSequence& seq, const SpaceParams& prm) {
    return scan_finite(seq, prm).value;
}

double morrey_norm(const SupportedSequence& seq, const SpaceParams& prm) {
    return scan_supported(seq, prm).value;
}

DyadicCube attaining_cube(const FiniteSequence& seq, const SpaceParams& prm) {
    if (!(prm.p() < prm.u()))
        throw std::domain_error("attaining cube requires p < u");
    CubeValue best = scan_finite(seq, prm);
    if (!best.found) throw std::invalid_argument("attaining cube requires a nonzero sequence");
    return best.cube;
}

DyadicCube attaining_cube(const SupportedSequence& seq, const SpaceParams& prm) {
    if (!(prm.p() < prm.u()))
        throw std::domain_error("attaining cube requires p < u");
    CubeValue best = scan_supported(seq, prm);
    if (!best.found) throw std::invalid_argument("attaining cube requires a nonzero sequence");
    return best.cube;
}

double lp_norm(const FiniteSequence& seq, double p) {
    if (!(p > 0.0)) throw std::domain_error("lp norm requires p > 0");
    double sum = 0.0;
    for (double v : seq.values())
        if (v != 0.0) sum += std::pow(v, p);
    return std::pow(sum, 1.0 / p);
}

double lp_norm(const SupportedSequence& seq, double p) {
    if (!(p > 0.0)) throw std::domain_error("lp norm requires p > 0");
    double sum = 0.0;
    for (const auto& [k, v] : seq.entries()) sum += std::pow(v, p);
    return sum == 0.0 ? 0.0 : std::pow(sum, 1.0 / p);
}

double linf_norm(const FiniteSequence& seq) {
    double m = 0.0;
    for (double v : seq.values()) m = std::max(m, v);
    return m;
}

double linf_norm(const SupportedSequence& seq) {
    double m = 0.0;
    for (const auto& [k, v] : seq.entries()) m = std::max(m, v);
    return m;
}

namespace {

double lorentz_of_sorted(std::vector<double>& vals, double u) {
    if (!(u > 0.0)) throw std::domain_error("lorentz quasinorm requires u > 0");
    std::sort(vals.begin(), vals.end(), std::greater<>());
    double best = 0.0;
    for (std::size_t r = 0; r < vals.size() && vals[r] > 0.0; ++r)
        best = std::max(best, std::pow(double(r + 1), 1.0 / u) * vals[r]);
    return best;
}

} // namespace

double lorentz_quasinorm(const FiniteSequence& seq, double u) {
    std::vector<double> vals(seq.values().begin(), seq.values().end());
    return lorentz_of_sorted(vals, u);
}

double lorentz_quasinorm(const SupportedSequence& seq, double u) {
    std::vector<double> vals;
    vals.reserve(seq.support_size());
    for (const auto& [k, v] : seq.entries()) vals.push_back(v);
    return lorentz_of_sorted(vals, u);
}

double lorentz_embedding_constant(const SpaceParams& prm, int dim, int max_level) {
    if (dim < 1 || max_level < 0 || std::uint64_t(max_level) * dim > 26)
        throw std::invalid_argument("invalid shape for lorentz embedding constant");
    const double ratio = -prm.p() / prm.u();
    double partial = 0.0;
    std::uint64_t covered = 0;
    double best = 0.0;
    for (int nu = 0; nu <= max_level; ++nu) {
        const std::uint64_t cells = std::uint64_t{1} << (std::uint64_t(nu) * dim);
        for (std::uint64_t i = covered + 1; i <= cells; ++i) partial += std::pow(double(i), ratio);
        covered = cells;
        const double value =
            std::exp2(double(nu) * dim * prm.weight_exponent()) * std::pow(partial, 1.0 / prm.p());
        best = std::max(best, value);
    }
    return best;
}

double equiv_norm_arbitrary(const SupportedSequence& seq, const SpaceParams& prm,
                            ArbitraryVariant variant) {
    const double dyadic = morrey_norm(seq, prm);
    const double contained = arbitrary_scan(seq, prm, ArbitraryVariant::Contained);
    const double intersecting = arbitrary_scan(seq, prm, ArbitraryVariant::Intersecting);
    const double slack = 1.0 + 1e-10;
    if (contained * slack < dyadic || intersecting * slack < contained)
        throw std::logic_error("arbitrary-cube norm chain violated (internal error)");
    return variant == ArbitraryVariant::Contained ? contained : intersecting;
}

double predual_level_norm(const SupportedSequence& seq, const SpaceParams& prm, int level) {
    if (prm.p() < 1.0 || !(prm.p() < prm.u()))
        throw std::domain_error("predual level norm requires 1 <= p < u");
    if (level < 0) throw std::invalid_argument("predual level must be >= 0");
    const int d = seq.dim();
    const double pp = prm.conjugate_p();

    std::map<Lattice, std::vector<double>> groups;
    for (const auto& [k, v] : seq.entries()) {
        Lattice origin(d);
        for (int c = 0; c < d; ++c) origin[c] = floor_div_pow2(k[c], level);
        groups[origin].push_back(v);
    }

    double total = 0.0;
    for (const auto& [origin, vals] : groups) {
        if (std::isinf(pp)) {
            double m = 0.0;
            for (double v : vals) m = std::max(m, v);
            total += m;
        } else {
            double s = 0.0;
            for (double v : vals) s += std::pow(v, pp);
            total += std::pow(s, 1.0 / pp);
        }
    }
    return std::exp2(double(level) * d * (1.0 / prm.p() - 1.0 / prm.u())) * total;
}

double predual_level_norm(const FiniteSequence& seq, const SpaceParams& prm, int level) {
    return predual_level_norm(to_supported(seq), prm, level);
}

} // namespace morrey
