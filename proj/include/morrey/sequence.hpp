#pragma once

// Sequence containers.
//
// Both containers store nonnegative magnitudes only; sign and phase never
// influence any norm in this library, so they are dropped at construction
// (file ingestion reduces complex entries to their modulus).

#include <cstdint>
#include <map>
#include <span>
#include <vector>

#include "morrey/dyadic.hpp"

namespace morrey {

/// Dense values on the cells of the level-J cube at the origin,
/// K_J = {k : 0 <= k_i < 2^J}, in lexicographic order (k[0] varies slowest).
class FiniteSequence {
public:
    FiniteSequence(int dim, int level, std::vector<double> values);

    static FiniteSequence zeros(int dim, int level);

    int dim() const { return dim_; }
    int level() const { return level_; }
    std::size_t size() const { return values_.size(); }
    std::span<const double> values() const { return values_; }

    double operator[](std::size_t i) const { return values_[i]; }
    void set(std::size_t i, double magnitude);

    std::size_t index_of(const Lattice& k) const;
    Lattice cell_at(std::size_t index) const;
    double at(const Lattice& k) const { return values_[index_of(k)]; }

    bool is_zero() const;

private:
    int dim_;
    int level_;
    std::vector<double> values_;
};

/// Sparse finitely supported values on Z^d; zero entries are never stored.
class SupportedSequence {
public:
    explicit SupportedSequence(int dim);

    int dim() const { return dim_; }
    std::size_t support_size() const { return entries_.size(); }
    bool empty() const { return entries_.empty(); }
    const std::map<Lattice, double>& entries() const { return entries_; }

    /// Stores a magnitude > 0; 0 erases the cell.
    void set(const Lattice& k, double magnitude);
    double at(const Lattice& k) const;

    std::vector<Lattice> support() const;

private:
    int dim_;
    std::map<Lattice, double> entries_;
};

SupportedSequence to_supported(const FiniteSequence& seq);

FiniteSequence product(std::span<const FiniteSequence> factors);
SupportedSequence product(std::span<const SupportedSequence> factors);

/// Pointwise r-th power of the magnitudes, r > 0.
FiniteSequence power(const FiniteSequence& seq, double r);
SupportedSequence power(const SupportedSequence& seq, double r);

} // namespace morrey
