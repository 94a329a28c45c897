#include "morrey/duality.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>
#include <stdexcept>
#include <vector>

#include "morrey/dyadic.hpp"
#include "morrey/norms.hpp"

namespace morrey {

namespace {

void require_predual_params(const SpaceParams& prm) {
    if (!(prm.p() >= 1.0) || !(prm.p() < prm.u()))
        throw std::domain_error("predual machinery requires 1 <= p < u");
}

} // namespace

double pairing(const SupportedSequence& a, const SupportedSequence& b) {
    if (a.dim() != b.dim()) throw std::invalid_argument("pairing requires equal dimensions");
    const auto& small = a.support_size() <= b.support_size() ? a : b;
    const auto& large = a.support_size() <= b.support_size() ? b : a;
    double sum = 0.0;
    for (const auto& [cell, value] : small.entries()) sum += value * large.at(cell);
    return sum;
}

L1Equivalence l1_equivalence_constants(const SpaceParams& prm, int dim, int level) {
    require_predual_params(prm);
    if (dim < 1 || level < 0) throw std::invalid_argument("invalid shape");
    const double jd = double(level) * dim;
    return {std::exp2(-jd / prm.u()), std::exp2(jd * (1.0 / prm.p() - 1.0 / prm.u()))};
}

SupportedSequence dual_extremal(const SpaceParams& prm, int dim, int level) {
    require_predual_params(prm);
    if (dim < 1 || level < 0 || std::uint64_t(level) * dim > 24)
        throw std::invalid_argument("invalid shape");
    const double value = std::exp2(-double(level) * dim / prm.conjugate_u());
    DyadicCube cube;
    cube.level = level;
    cube.origin.assign(dim, 0);
    SupportedSequence out(dim);
    for (const Lattice& k : cells_in(cube)) out.set(k, value);
    return out;
}

namespace {

// cost and subgradient of one level term; `members` indexes into w
struct LevelGroups {
    double factor = 1.0;
    std::vector<std::vector<std::size_t>> members;
};

double level_cost(const LevelGroups& lg, const std::vector<double>& w, double pprime,
                  std::vector<double>* grad) {
    double cost = 0.0;
    for (const auto& g : lg.members) {
        if (std::isinf(pprime)) {
            double mx = 0.0;
            std::size_t arg = g.front();
            for (std::size_t i : g)
                if (w[i] > mx) {
                    mx = w[i];
                    arg = i;
                }
            cost += lg.factor * mx;
            if (grad && mx > 0.0) (*grad)[arg] += lg.factor;
        } else {
            double s = 0.0;
            for (std::size_t i : g) s += std::pow(w[i], pprime);
            if (s == 0.0) continue;
            const double norm_g = std::pow(s, 1.0 / pprime);
            cost += lg.factor * norm_g;
            if (grad)
                for (std::size_t i : g)
                    if (w[i] > 0.0)
                        (*grad)[i] += lg.factor * std::pow(w[i], pprime - 1.0) *
                                      std::pow(s, 1.0 / pprime - 1.0);
        }
    }
    return cost;
}

// Euclidean projection of y onto {x >= 0, sum x = total}
void project_simplex(std::vector<double>& y, double total) {
    std::vector<double> sorted(y);
    std::sort(sorted.begin(), sorted.end(), std::greater<>());
    double cum = 0.0, tau = 0.0;
    for (std::size_t r = 0; r < sorted.size(); ++r) {
        cum += sorted[r];
        const double t = (cum - total) / double(r + 1);
        if (sorted[r] - t > 0.0) tau = t;
    }
    for (double& v : y) v = std::max(0.0, v - tau);
}

} // namespace

PredualBound predual_norm_upper(const SupportedSequence& seq, const SpaceParams& prm,
                                const PredualOptions& opts) {
    require_predual_params(prm);
    if (seq.empty()) return {0.0, true, 0};

    const std::vector<Lattice> cells = seq.support();
    const std::size_t n = cells.size();
    std::vector<double> target(n);
    for (std::size_t i = 0; i < n; ++i) target[i] = seq.at(cells[i]);

    const int top = covering_level(cells);
    const int levels = top + 1;
    const double pprime = prm.conjugate_p();

    std::vector<LevelGroups> structure(levels);
    for (int j = 0; j < levels; ++j) {
        structure[j].factor = std::exp2(double(j) * seq.dim() * (1.0 / prm.p() - 1.0 / prm.u()));
        std::map<Lattice, std::vector<std::size_t>> by_cube;
        for (std::size_t i = 0; i < n; ++i) by_cube[ancestor(cells[i], j).origin].push_back(i);
        for (auto& [origin, members] : by_cube)
            structure[j].members.push_back(std::move(members));
    }

    // weights w[j*n + i], all mass at level 0 initially (cost = l1 norm)
    std::vector<std::vector<double>> w(levels, std::vector<double>(n, 0.0));
    w[0] = target;

    const double step_scale = linf_norm(seq);
    auto total_cost = [&](std::vector<std::vector<double>>* grad) {
        double cost = 0.0;
        for (int j = 0; j < levels; ++j)
            cost += level_cost(structure[j], w[j], pprime, grad ? &(*grad)[j] : nullptr);
        return cost;
    };

    double best = total_cost(nullptr);
    bool converged = levels == 1; // nothing to optimize over a single level
    int iterations = 0;
    int since_improvement = 0;
    std::vector<std::vector<double>> grad(levels, std::vector<double>(n));
    std::vector<double> column(levels);
    for (int t = 1; !converged && t <= opts.max_iters; ++t) {
        iterations = t;
        for (auto& g : grad) std::fill(g.begin(), g.end(), 0.0);
        const double cost = total_cost(&grad);
        if (cost < best - opts.plateau_tol)
            since_improvement = 0;
        else if (++since_improvement >= opts.plateau_window) {
            converged = true;
            best = std::min(best, cost);
            break;
        }
        best = std::min(best, cost);

        const double step = step_scale / std::sqrt(double(t));
        for (int j = 0; j < levels; ++j)
            for (std::size_t i = 0; i < n; ++i) w[j][i] -= step * grad[j][i];
        for (std::size_t i = 0; i < n; ++i) {
            for (int j = 0; j < levels; ++j) column[j] = w[j][i];
            project_simplex(column, target[i]);
            for (int j = 0; j < levels; ++j) w[j][i] = column[j];
        }
    }

    // single-level decompositions are often optimal and cost nothing to check
    for (int j = 0; j < levels; ++j)
        best = std::min(best, predual_level_norm(seq, prm, j));
    return {best, converged, iterations};
}

double predual_norm_lower(const SupportedSequence& seq, const SpaceParams& prm) {
    require_predual_params(prm);
    if (seq.empty()) return 0.0;

    double best = linf_norm(seq); // unit deltas
    best = std::max(best, pairing(seq, seq) / morrey_norm(seq, prm));

    const std::vector<Lattice> cells = seq.support();
    const int top = covering_level(cells);
    for (int j = 0; j <= top; ++j) {
        std::map<Lattice, std::vector<std::size_t>> by_cube;
        for (std::size_t i = 0; i < cells.size(); ++i)
            by_cube[ancestor(cells[i], j).origin].push_back(i);
        for (const auto& [origin, members] : by_cube) {
            SupportedSequence indicator(seq.dim());
            double inner = 0.0;
            for (std::size_t i : members) {
                indicator.set(cells[i], 1.0);
                inner += seq.at(cells[i]);
            }
            best = std::max(best, inner / morrey_norm(indicator, prm));
        }
    }
    return best;
}

} // namespace morrey
