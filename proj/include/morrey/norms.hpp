#pragma once

// Norm engine.
//
// The central quantity is
//
//   ||lambda||_{u,p} = sup_{j >= 0, m in Z^d} 2^{jd(1/u - 1/p)}
//                      ( sum_{cells k of the level-j cube at m} |lambda_k|^p )^{1/p},
//
// the supremum of volume-weighted local l_p sums over all dyadic cubes.
// For finitely supported input the supremum is attained within levels
// 0..covering_level(support): above that level every cube with nonzero sum
// holds the complete entry set of one orthant group, so its value is the
// level-j weight times a constant, which is nonincreasing in j.  The
// evaluation is therefore exact, not truncated.

#include <utility>

#include "morrey/dyadic.hpp"
#include "morrey/params.hpp"
#include "morrey/sequence.hpp"

namespace morrey {

double morrey_norm(const FiniteSequence& seq, const SpaceParams& prm);
double morrey_norm(const SupportedSequence& seq, const SpaceParams& prm);

/// Maximizing cube of the supremum; requires p < u and a nonzero sequence.
/// Ties resolve to the smallest level, then the lexicographically least origin.
DyadicCube attaining_cube(const FiniteSequence& seq, const SpaceParams& prm);
DyadicCube attaining_cube(const SupportedSequence& seq, const SpaceParams& prm);

double lp_norm(const FiniteSequence& seq, double p);
double lp_norm(const SupportedSequence& seq, double p);
double linf_norm(const FiniteSequence& seq);
double linf_norm(const SupportedSequence& seq);

/// sup_r r^{1/u} lambda*_r over the nonincreasing rearrangement lambda*.
double lorentz_quasinorm(const FiniteSequence& seq, double u);
double lorentz_quasinorm(const SupportedSequence& seq, double u);

/// Constant C with ||.||_{u,p} <= C * lorentz_quasinorm on sequences whose
/// support sits inside one level-maxLevel cube:
///   C = max_{nu <= maxLevel} 2^{nu d (1/u - 1/p)} (sum_{i<=2^{nu d}} i^{-p/u})^{1/p}.
double lorentz_embedding_constant(const SpaceParams& prm, int dim, int max_level);

/// Norm variants ranging over arbitrary axis-aligned cubes Q with |Q| >= 1
/// instead of dyadic ones: Contained sums cells lying inside Q, Intersecting
/// sums cells merely meeting Q.  Both are equivalent to the dyadic norm and
/// the chain  dyadic <= Contained <= Intersecting  is asserted on each call.
enum class ArbitraryVariant { Contained, Intersecting };

double equiv_norm_arbitrary(const SupportedSequence& seq, const SpaceParams& prm,
                            ArbitraryVariant variant);

/// Level-j predual building block, 1 <= p < u:
///   2^{jd(1/p - 1/u)} sum_m ( sum_{cells k of the level-j cube at m} |lambda_k|^{p'} )^{1/p'}
/// with p' the conjugate exponent (max over the cube at p = 1).
double predual_level_norm(const FiniteSequence& seq, const SpaceParams& prm, int level);
double predual_level_norm(const SupportedSequence& seq, const SpaceParams& prm, int level);

} // namespace morrey
