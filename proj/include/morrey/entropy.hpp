#pragma once

// Two-sided entropy-number estimation for identity maps between small real
// normed spaces, with machine-checkable certificates.
//
// e_k(id) is the smallest radius at which 2^{k-1} target-norm balls cover
// the source unit ball.  The estimator works on a symmetric grid net of
// pitch delta inside the source ball (grid points g with src(g) <= 1).
// Rounding any ball point toward zero coordinate-wise lands on such a grid
// point and moves it by at most delta per axis, so
//
//   upper:  realized covering radius of the net + delta * sum_i tgt(e_i)
//           is a true upper bound; centers come from farthest-point greedy
//           (k-center) refined by Lloyd-style reassignment for small center
//           counts, plus an even-partition candidate in dimension 1.
//   lower:  2^{k-1}+1 net points pairwise >= 2 eps apart in the target norm
//           force e_k >= eps; the points come from farthest-point packing.
//
// Both norm callables must be absolute norms: invariant under sign flips
// and monotone in coordinate magnitudes (every norm in this library is).
// All selections break ties toward the lowest net index and parallel
// reductions run over fixed-size blocks, so results are bit-identical for
// any worker count.

#include <functional>
#include <span>
#include <vector>

#include "morrey/params.hpp"

namespace morrey {

using NormFn = std::function<double(std::span<const double>)>;

/// l_p norm on R^dim, p in (0, infinity]; infinity gives the max norm.
NormFn lp_section_norm(double p, int dim);

/// Norm of the Morrey section spanned by the cells of the level-`level`
/// cube at the origin (coordinates in the dense lexicographic cell order).
NormFn morrey_section_norm(const SpaceParams& prm, int dim, int level);

struct EntropyEstimate {
    int k = 1;
    int dim = 1;
    double resolution = 0.0; // net pitch delta

    double lower = 0.0; // certified by `packing` (0 when not certified)
    double upper = 0.0; // certified: covering_radius + covering_slack

    double covering_radius = 0.0; // realized max net distance to `centers`
    double covering_slack = 0.0;  // delta * sum_i tgt(e_i)
    bool lower_certified = false; // net too coarse when false

    std::vector<std::vector<double>> centers; // size <= 2^{k-1}
    std::vector<std::vector<double>> packing; // 2^{k-1}+1 separated points
};

/// Estimates for every k in [k_min, k_max] sharing one net and one greedy
/// chain; uppers and lowers are nonincreasing in k by construction.
std::vector<EntropyEstimate> entropy_profile(const NormFn& source_norm, const NormFn& target_norm,
                                             int dim, int k_min, int k_max, double resolution);

EntropyEstimate entropy_estimate(const NormFn& source_norm, const NormFn& target_norm, int dim,
                                 int k, double resolution);

/// Independent re-check of both certificates (the net is rebuilt from
/// dim/resolution): every net point must lie within covering_radius of a
/// center, and the packing must sit in the source ball pairwise >= 2*lower
/// apart.
struct CertificateCheck {
    bool covering_ok = false;
    bool packing_ok = false;
};
CertificateCheck entropy_verify(const EntropyEstimate& est, const NormFn& source_norm,
                                const NormFn& target_norm);

/// Reference asymptotic value for e_k(id: l_{p1}^N -> l_{p2}^N), by regime:
/// p2 < p1 gives 2^{-k/(2N)} N^{1/p2-1/p1} for all k; otherwise 1 while
/// k <= log2(2N), then (log2(1+N/k)/k)^{1/p1-1/p2} while k < 2N, then
/// 2^{-k/(2N)} N^{1/p2-1/p1}.  An equivalent up to unspecified constants,
/// never an exact value.
double entropy_schuett(int n, double p1, double p2, int k);

// ---------------------------------------------------------------------------
// Sandwich for Morrey sections: factor the identity through l_p spaces.
// With N = 2^{jd} coordinates,
//
//   id: m_src -> l_{p1} -> l_{u2} -> m_tgt   gives
//       e_k(direct) <= 2^{jd(1/p1 - 1/u1)} * e_k(l_{p1} -> l_{u2}),
//   id: l_{u1} -> m_src -> m_tgt -> l_{p2}   gives
//       e_k(direct) >= e_k(l_{u1} -> l_{p2}) / 2^{jd(1/p2 - 1/u2)},
//
// since the outer identities have norm exactly 2^{jd(1/p1-1/u1)}, 1, 1 and
// 2^{jd(1/p2-1/u2)}.  A direct estimate with the two Morrey norms is also
// computed; its interval must be consistent with the sandwich (both contain
// the true value, so they must intersect; violation is an internal error).

struct EmbeddingCase;

struct MorreySandwichRow {
    int k = 1;
    double direct_lower = 0.0;
    double direct_upper = 0.0;
    double sandwich_lower = 0.0;
    double sandwich_upper = 0.0;
    double factor_up = 1.0;   // 2^{jd(1/p1 - 1/u1)}
    double factor_down = 1.0; // 2^{jd(1/p2 - 1/u2)}
    // certificate width (upper/lower) of the two scalar estimates, multiplied;
    // the sandwich width never exceeds factor_up * factor_down * this value
    double scalar_width_product = 0.0;
};

/// Requires 2^{jd} <= 4 and k_min >= 2 * 2^{jd} (the certified regime).
std::vector<MorreySandwichRow> entropy_morrey_sandwich(const EmbeddingCase& c, int k_min,
                                                       int k_max, double resolution);

} // namespace morrey
