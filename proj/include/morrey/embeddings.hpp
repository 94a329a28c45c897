#pragma once

// Embedding analysis between finite sections m^{2^{jd}}_{u,p} supported on
// the level-j cube at the origin.
//
// The identity m_{u1,p1} -> m_{u2,p2} on whole sequence spaces is continuous
// exactly when u1 <= u2 and p2/u2 <= p1/u1, and then with constant 1.  On
// finite sections the identity norm has closed forms in three parameter
// regions and a two-sided estimate in the fourth:
//
//   p1 >= p2, u2 >= u1                ->  1
//   p1 <  p2, p2/u2 <= p1/u1          ->  1
//   p1 >= p2, u2 <  u1                ->  2^{jd(1/u2 - 1/u1)}
//   p1 <  p2, p2/u2 >  p1/u1          ->  [c, 1] * 2^{jd(1/u2 - p1/(u1 p2))}
//
// In the last region only the upper end is proven sharp up to a constant;
// the reported lower end is the certified ratio of a concrete spread-out
// 0/1 pattern, never a claim of equality.

#include <cstdint>
#include <vector>

#include "morrey/params.hpp"
#include "morrey/sequence.hpp"

namespace morrey {

struct EmbeddingCase {
    SpaceParams source;
    SpaceParams target;
    int dim = 1;
    int level = 1;
};

/// Continuity test for the full-space identity m_{u1,p1} -> m_{u2,p2}.
bool embedding_admissible(const SpaceParams& source, const SpaceParams& target);

struct EmbeddingNorm {
    bool exact = true;
    double value = 0.0; // meaningful when exact
    double lower = 0.0;
    double upper = 0.0;
};

EmbeddingNorm embedding_norm_closed_form(const EmbeddingCase& c);

struct BruteForceNorm {
    double value = 0.0;         // certified lower bound on the identity norm
    double pattern_value = 0.0; // best over all 0/1 patterns
    bool ascent_improved = false; // true if ascent beat the patterns by > 1e-9
    FiniteSequence maximizer;
};

/// Exhaustive 0/1 pattern scan (requires 2^{jd} <= 16) followed by a
/// deterministic coordinate-ascent refinement with `budget` evaluations.
BruteForceNorm embedding_norm_bruteforce(const EmbeddingCase& c, int budget = 4000);

/// Constant sequence 2^{-jd/u1} on one far-out level-j cube: source norm is
/// exactly 1 and the m_{u2,p2} norm is exactly 2^{jd(1/u2 - 1/u1)} for every
/// u2 < u1, p2 <= u2.
SupportedSequence witness_u_decrease(const SpaceParams& source, int dim, int level);

/// 0/1 pattern on the level-j cube at the origin with floor(2^{jd(1 - p1/u1)})
/// ones (fewer when the per-level caps force it), distributed so that every
/// level-nu subcube holds at most floor(2^{nu d(1 - p1/u1)}) ones.  The even
/// split hands remainders to the lexicographically first children.  The
/// m_{u1,p1} norm of the result is <= 1 exactly.
FiniteSequence spread_pattern(int level, int dim, const SpaceParams& source);

struct RatioBlowup {
    FiniteSequence sequence;
    int level = 0;
    double ratio = 0.0; // target norm / source norm of `sequence`
};

/// Searches ascending levels for a spread pattern whose target/source norm
/// ratio reaches `target_ratio`; requires u1 <= u2 and p1/u1 < p2/u2 (the
/// regime where the ratio grows without bound).
RatioBlowup witness_ratio_blowup(const SpaceParams& source, const SpaceParams& target, int dim,
                                 double target_ratio);

// ---------------------------------------------------------------------------
// Separation family: an uncountable-antichain gadget at sequence scale.  One
// member per sign vector, valued s * 2^{-j_l d / u} on the cells of disjoint
// level-j_l cubes placed far apart along the first axis.  Distinct members
// are at pairwise m_{u,p} distance >= 2 * 2^{-j_L d / u}, while every member
// has norm <= separation_norm_bound(u, p, d).

struct SeparationMember {
    SupportedSequence magnitudes;
    std::vector<int> signs; // one per family cell, +1 or -1
};

struct SeparationFamily {
    std::vector<int> levels;
    int dim = 1;
    double u = 1.0;
    std::vector<Lattice> cells;        // concatenated cube cells, fixed order
    std::vector<double> cell_magnitude; // magnitude per cell
    std::vector<SeparationMember> members;
};

SeparationFamily separation_family(const std::vector<int>& levels, int dim, double u,
                                   const std::vector<std::vector<int>>& signs);

/// m_{u,p} norm of the difference of two members.
double separation_distance(const SeparationFamily& family, std::size_t a, std::size_t b,
                           const SpaceParams& prm);

/// Norm cap for family members: (1 - 2^{-d(1 - p/u)})^{-1/p}, from summing
/// the geometric tail of per-cube contributions; requires p < u.
double separation_norm_bound(const SpaceParams& prm, int dim);

/// Deterministic distinct sign vectors (seeded), for building families.
std::vector<std::vector<int>> default_sign_vectors(std::size_t count, std::size_t length,
                                                   std::uint64_t seed);

} // namespace morrey
