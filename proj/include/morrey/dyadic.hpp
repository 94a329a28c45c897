#pragma once

// Dyadic cube geometry on the integer lattice.
//
// A cube at level j >= 0 with origin m in Z^d covers the half-open box
// 2^j * (m + [0,1)^d); its unit cells are the lattice points
// 2^j * m + {0,...,2^j - 1}^d.  Cubes of one level tile Z^d, levels are
// nested, and the level-j cube through a given cell is obtained by floor
// division of its coordinates by 2^j (floor toward -infinity, so negative
// coordinates behave like positive ones).

#include <cstdint>
#include <span>
#include <vector>

namespace morrey {

using Lattice = std::vector<std::int64_t>;

struct DyadicCube {
    int level = 0;
    Lattice origin;

    int dim() const { return static_cast<int>(origin.size()); }
    std::int64_t side() const { return std::int64_t{1} << level; }
    std::uint64_t cell_count() const { return std::uint64_t{1} << (std::uint64_t(level) * origin.size()); }
    bool contains_cell(const Lattice& k) const;

    bool operator==(const DyadicCube&) const = default;
};

/// floor(a / 2^j); arithmetic shift, exact for negative a.
inline std::int64_t floor_div_pow2(std::int64_t a, int j) { return a >> j; }

/// All unit cells of `cube`, in lexicographic order.
std::vector<Lattice> cells_in(const DyadicCube& cube);

/// The unique level-`level` cube whose cells include k.
DyadicCube ancestor(const Lattice& k, int level);

/// Smallest level at which the points collapse into single cubes.
///
/// Points are grouped by coordinate sign pattern (the dyadic grids of the
/// 2^d closed orthants never merge); the result is the least j such that
/// each group lies in one level-j cube.  For a group contained in a single
/// orthant this is exactly the least level whose grid covers the group.
int covering_level(std::span<const Lattice> points);

} // namespace morrey
