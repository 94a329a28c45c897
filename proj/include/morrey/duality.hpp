#pragma once

// Predual-side machinery.
//
// For 1 <= p < u the level-j norm N_j splits a sequence over the level-j
// cubes, takes the conjugate-exponent sum inside each cube and the plain sum
// across cubes, and scales by 2^{jd(1/p - 1/u)}.  The decomposition norm
//
//   |||lambda||| = inf { sum_j N_j(lambda_j) : lambda = sum_j lambda_j }
//
// pairs against m_{u,p}: |<lambda, mu>| <= |||lambda||| * ||mu||_{u,p}.  The
// two bounds computed here bracket it from both sides:
//
//   upper  any explicit decomposition is feasible, so its cost is an upper
//          bound; a projected-subgradient pass over nonnegative on-support
//          decompositions (which lose nothing) tightens the trivial all-at-
//          level-0 start, and single-level candidates are folded in at the
//          end.
//   lower  |<lambda, mu>| / ||mu||_{u,p} for any test sequence mu; the
//          candidates are unit deltas, on-support indicators of ancestor
//          cubes, and lambda itself.

#include <cstdint>

#include "morrey/params.hpp"
#include "morrey/sequence.hpp"

namespace morrey {

/// Bilinear pairing sum_k a_k b_k over the common support.
double pairing(const SupportedSequence& a, const SupportedSequence& b);

/// For sequences supported on a single level-j cube the level norm N_j is
/// equivalent to ell_1:  lower_factor * ||.||_1 <= N_j <= upper_factor * ||.||_1
/// with lower_factor = 2^{-jd/u} and upper_factor = 2^{jd(1/p - 1/u)}.
struct L1Equivalence {
    double lower_factor = 0.0;
    double upper_factor = 0.0;
};
L1Equivalence l1_equivalence_constants(const SpaceParams& prm, int dim, int level);

/// Constant value 2^{-jd/u'} on the level-j cube at the origin (u' the
/// conjugate exponent of u).  Its level-j norm is exactly 1, and the pairing
/// with itself certifies a decomposition-norm lower bound of exactly 1.
SupportedSequence dual_extremal(const SpaceParams& prm, int dim, int level);

struct PredualOptions {
    int max_iters = 4000;
    double plateau_tol = 1e-9; // minimum improvement expected per window
    int plateau_window = 100;  // iterations without improvement before stopping
};

struct PredualBound {
    double value = 0.0;
    bool converged = false; // solver reached its plateau before max_iters
    int iterations = 0;
};

/// Upper bound on the decomposition norm.  Levels above the covering level
/// of the support are never useful (the same split costs less at the
/// covering level), so the search space is levels 0..covering_level.
PredualBound predual_norm_upper(const SupportedSequence& seq, const SpaceParams& prm,
                                const PredualOptions& opts = {});

/// Certified lower bound via the pairing inequality.
double predual_norm_lower(const SupportedSequence& seq, const SpaceParams& prm);

} // namespace morrey
