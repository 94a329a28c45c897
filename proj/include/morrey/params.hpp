#pragma once

#include <cmath>
#include <limits>
#include <stdexcept>

namespace morrey {

/// p/(p-1) for p > 1, +infinity at p = 1.  Requires p >= 1.
inline double conjugate_exponent(double p) {
    if (!(p >= 1.0)) throw std::domain_error("conjugate exponent requires p >= 1");
    if (p == 1.0) return std::numeric_limits<double>::infinity();
    return p / (p - 1.0);
}

/// Exponent pair (u, p) with 0 < p <= u < infinity.
///
/// The pair fixes the weight |Q|^{1/u - 1/p} applied to local l_p sums over
/// cubes Q.  The case p = u recovers the plain l_p (quasi-)norm; p > u is
/// rejected because the resulting space would contain only the zero sequence.
class SpaceParams {
public:
    SpaceParams(double u, double p) : u_(u), p_(p) {
        if (!(std::isfinite(u) && std::isfinite(p)) || !(p > 0.0) || !(u > 0.0))
            throw std::domain_error("space parameters require 0 < p <= u < infinity");
        if (p > u)
            throw std::domain_error("space parameters require p <= u");
    }

    double u() const { return u_; }
    double p() const { return p_; }

    /// True when p = u, i.e. the norm degenerates to l_p.
    bool lebesgue() const { return p_ == u_; }

    double conjugate_p() const { return conjugate_exponent(p_); }
    double conjugate_u() const { return conjugate_exponent(u_); }

    /// Exponent of the cube-volume weight: 1/u - 1/p (<= 0).
    double weight_exponent() const { return 1.0 / u_ - 1.0 / p_; }

private:
    double u_;
    double p_;
};

} // namespace morrey
