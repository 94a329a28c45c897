#include "morrey/dyadic.hpp"

#include <map>
#include <stdexcept>

namespace morrey {

bool DyadicCube::contains_cell(const Lattice& k) const {
    if (k.size() != origin.size()) return false;
    for (std::size_t i = 0; i < k.size(); ++i)
        if (floor_div_pow2(k[i], level) != origin[i]) return false;
    return true;
}

std::vector<Lattice> cells_in(const DyadicCube& cube) {
    const int d = cube.dim();
    if (d < 1) throw std::invalid_argument("cube dimension must be >= 1");
    if (cube.level < 0) throw std::invalid_argument("cube level must be >= 0");
    if (std::uint64_t(cube.level) * d > 24)
        throw std::invalid_argument("cube too large to enumerate");

    const std::int64_t side = cube.side();
    Lattice base(d);
    for (int i = 0; i < d; ++i) base[i] = cube.origin[i] * side;

    std::vector<Lattice> cells;
    cells.reserve(static_cast<std::size_t>(cube.cell_count()));
    Lattice offset(d, 0);
    for (;;) {
        Lattice k(d);
        for (int i = 0; i < d; ++i) k[i] = base[i] + offset[i];
        cells.push_back(std::move(k));
        int i = d - 1;
        while (i >= 0 && ++offset[i] == side) offset[i--] = 0;
        if (i < 0) break;
    }
    return cells;
}

DyadicCube ancestor(const Lattice& k, int level) {
    if (level < 0) throw std::invalid_argument("ancestor level must be >= 0");
    if (level > 62) throw std::invalid_argument("ancestor level out of range");
    DyadicCube cube;
    cube.level = level;
    cube.origin.resize(k.size());
    for (std::size_t i = 0; i < k.size(); ++i) cube.origin[i] = floor_div_pow2(k[i], level);
    return cube;
}

namespace {

// least j with floor(a/2^j) == floor(b/2^j); finite because at j = 63 both
// collapse to 0 or -1 depending on sign, and groups share signs per axis
int merge_level(std::int64_t a, std::int64_t b) {
    for (int j = 0; j <= 63; ++j)
        if ((a >> j) == (b >> j)) return j;
    return 63;
}

} // namespace

int covering_level(std::span<const Lattice> points) {
    if (points.empty()) throw std::invalid_argument("covering_level requires at least one point");
    const std::size_t d = points.front().size();
    if (d == 0) throw std::invalid_argument("points must have dimension >= 1");

    // per sign-pattern group, running min/max per coordinate
    std::map<std::vector<bool>, std::pair<Lattice, Lattice>> groups;
    for (const Lattice& k : points) {
        if (k.size() != d) throw std::invalid_argument("points must share one dimension");
        std::vector<bool> pattern(d);
        for (std::size_t i = 0; i < d; ++i) pattern[i] = k[i] < 0;
        auto [it, inserted] = groups.try_emplace(pattern, k, k);
        if (!inserted) {
            for (std::size_t i = 0; i < d; ++i) {
                it->second.first[i] = std::min(it->second.first[i], k[i]);
                it->second.second[i] = std::max(it->second.second[i], k[i]);
            }
        }
    }

    int level = 0;
    for (const auto& [pattern, box] : groups)
        for (std::size_t i = 0; i < d; ++i)
            level = std::max(level, merge_level(box.first[i], box.second[i]));
    return level;
}

} // namespace morrey
