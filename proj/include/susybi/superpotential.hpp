#pragma once

// Superpotential U(z) = sum_{k=1}^{K} upsilon_k z^k and the partner
// potentials V_± = -U^2 ± z dU/dz.

#include <stdexcept>
#include <vector>

#include "susybi/laurent.hpp"
#include "susybi/scalars.hpp"
#include "susybi/sector.hpp"

namespace susybi {

template <class Scalar>
struct Superpotential {
    /// upsilon[k-1] is the coefficient of z^k; U(0) = 0 always.
    std::vector<Scalar> upsilon;
    /// True when these are the first K coefficients of a longer series
    /// (e.g. z/(1-z) cut at order K); false for an exact polynomial.
    bool truncated = false;

    Superpotential() = default;
    Superpotential(std::vector<Scalar> coefficients, bool is_truncation = false)
        : upsilon(std::move(coefficients)), truncated(is_truncation) {
        if (upsilon.empty())
            throw std::invalid_argument("Superpotential: at least one coefficient required");
    }

    int max_power() const { return static_cast<int>(upsilon.size()); }

    /// upsilon_k with the convention upsilon_k = 0 outside 1..K.
    Scalar coefficient(int k) const {
        if (k < 1 || k > max_power()) return Scalar(0);
        return upsilon[static_cast<std::size_t>(k - 1)];
    }

    LaurentSeries<Scalar> series() const {
        return LaurentSeries<Scalar>(1, upsilon, /*exact=*/!truncated);
    }
};

/// V_± = -U^2 ± z dU/dz, known through order K for a truncated U and exact
/// for a polynomial U.
template <class Scalar>
LaurentSeries<Scalar> potential_series(const Superpotential<Scalar>& U, Sector sector) {
    const LaurentSeries<Scalar> u = U.series();
    const LaurentSeries<Scalar> zu_prime = euler_derivative(u);
    if (sector == Sector::plus) return zu_prime - u * u;
    return -(u * u) - zu_prime;
}

}  // namespace susybi
