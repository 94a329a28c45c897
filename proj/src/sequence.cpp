#include "morrey/sequence.hpp"

#include <cmath>
#include <stdexcept>

namespace morrey {

namespace {

void check_magnitude(double v) {
    if (!std::isfinite(v) || v < 0.0)
        throw std::invalid_argument("sequence entries must be finite magnitudes >= 0");
}

} // namespace

FiniteSequence::FiniteSequence(int dim, int level, std::vector<double> values)
    : dim_(dim), level_(level), values_(std::move(values)) {
    if (dim < 1) throw std::invalid_argument("finite sequence dimension must be >= 1");
    if (level < 0) throw std::invalid_argument("finite sequence level must be >= 0");
    if (std::uint64_t(level) * dim > 26)
        throw std::invalid_argument("finite sequence too large (level*dim > 26)");
    const std::size_t expected = std::size_t{1} << (std::size_t(level) * dim);
    if (values_.size() != expected)
        throw std::invalid_argument("finite sequence needs exactly 2^(level*dim) values");
    for (double v : values_) check_magnitude(v);
}

FiniteSequence FiniteSequence::zeros(int dim, int level) {
    if (dim < 1 || level < 0 || std::uint64_t(level) * dim > 26)
        throw std::invalid_argument("invalid finite sequence shape");
    return FiniteSequence(dim, level, std::vector<double>(std::size_t{1} << (std::size_t(level) * dim), 0.0));
}

void FiniteSequence::set(std::size_t i, double magnitude) {
    check_magnitude(magnitude);
    values_.at(i) = magnitude;
}

std::size_t FiniteSequence::index_of(const Lattice& k) const {
    if (static_cast<int>(k.size()) != dim_)
        throw std::invalid_argument("cell dimension mismatch");
    const std::int64_t side = std::int64_t{1} << level_;
    std::size_t idx = 0;
    for (int i = 0; i < dim_; ++i) {
        if (k[i] < 0 || k[i] >= side) throw std::out_of_range("cell outside the root cube");
        idx = idx * static_cast<std::size_t>(side) + static_cast<std::size_t>(k[i]);
    }
    return idx;
}

Lattice FiniteSequence::cell_at(std::size_t index) const {
    if (index >= values_.size()) throw std::out_of_range("cell index out of range");
    const std::size_t side = std::size_t{1} << level_;
    Lattice k(dim_);
    for (int i = dim_ - 1; i >= 0; --i) {
        k[i] = static_cast<std::int64_t>(index % side);
        index /= side;
    }
    return k;
}

bool FiniteSequence::is_zero() const {
    for (double v : values_)
        if (v != 0.0) return false;
    return true;
}

SupportedSequence::SupportedSequence(int dim) : dim_(dim) {
    if (dim < 1) throw std::invalid_argument("supported sequence dimension must be >= 1");
}

void SupportedSequence::set(const Lattice& k, double magnitude) {
    if (static_cast<int>(k.size()) != dim_)
        throw std::invalid_argument("cell dimension mismatch");
    check_magnitude(magnitude);
    if (magnitude == 0.0)
        entries_.erase(k);
    else
        entries_[k] = magnitude;
}

double SupportedSequence::at(const Lattice& k) const {
    auto it = entries_.find(k);
    return it == entries_.end() ? 0.0 : it->second;
}

std::vector<Lattice> SupportedSequence::support() const {
    std::vector<Lattice> keys;
    keys.reserve(entries_.size());
    for (const auto& [k, v] : entries_) keys.push_back(k);
    return keys;
}

SupportedSequence to_supported(const FiniteSequence& seq) {
    SupportedSequence out(seq.dim());
    for (std::size_t i = 0; i < seq.size(); ++i)
        if (seq[i] != 0.0) out.set(seq.cell_at(i), seq[i]);
    return out;
}

FiniteSequence product(std::span<const FiniteSequence> factors) {
    if (factors.empty()) throw std::invalid_argument("product needs at least one factor");
    FiniteSequence out = factors.front();
    std::vector<double> vals(out.values().begin(), out.values().end());
    for (std::size_t f = 1; f < factors.size(); ++f) {
        const FiniteSequence& s = factors[f];
        if (s.dim() != out.dim() || s.level() != out.level())
            throw std::invalid_argument("product factors must share shape");
        for (std::size_t i = 0; i < vals.size(); ++i) vals[i] *= s[i];
    }
    return FiniteSequence(out.dim(), out.level(), std::move(vals));
}

SupportedSequence product(std::span<const SupportedSequence> factors) {
    if (factors.empty()) throw std::invalid_argument("product needs at least one factor");
    SupportedSequence out = factors.front();
    for (std::size_t f = 1; f < factors.size(); ++f) {
        const SupportedSequence& s = factors[f];
        if (s.dim() != out.dim())
            throw std::invalid_argument("product factors must share dimension");
        SupportedSequence next(out.dim());
        for (const auto& [k, v] : out.entries()) {
            const double w = s.at(k);
            if (w != 0.0) next.set(k, v * w);
        }
        out = std::move(next);
    }
    return out;
}

FiniteSequence power(const FiniteSequence& seq, double r) {
    if (!(r > 0.0)) throw std::domain_error("power exponent must be > 0");
    std::vector<double> vals(seq.values().begin(), seq.values().end());
    for (double& v : vals) v = v == 0.0 ? 0.0 : std::pow(v, r);
    return FiniteSequence(seq.dim(), seq.level(), std::move(vals));
}

SupportedSequence power(const SupportedSequence& seq, double r) {
    if (!(r > 0.0)) throw std::domain_error("power exponent must be > 0");
    SupportedSequence out(seq.dim());
    for (const auto& [k, v] : seq.entries()) out.set(k, std::pow(v, r));
    return out;
}

} // namespace morrey
