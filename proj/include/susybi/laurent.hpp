#pragma once

// Truncated Laurent series over an abstract coefficient ring.
//
// A series stores a dense run of coefficients for the exponents
// min_exp()..max_stored(). Exponents below min_exp() are known to be zero.
// Exponents above max_stored() are UNKNOWN — not zero — unless the series is
// exact, in which case every unstored coefficient is known zero. Every
// operation propagates the largest provably-correct truncation order and
// never claims knowledge of a coefficient it cannot determine.
//
// pairing(f, g) returns the z^0 coefficient of f*g, which for Laurent series
// on a circle around the origin is the contour integral (1/2pi i) of
// f(z) g(z) dz/z.

#include <algorithm>
#include <cstdint>
#include <limits>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "susybi/scalars.hpp"

namespace susybi {

using Exponent = std::int64_t;

// Finite exponents are kept well inside int64 so exponent sums cannot wrap.
inline constexpr Exponent kMaxExponent = Exponent{1} << 40;

// trunc_order() of a series that is known at every order.
inline constexpr Exponent kExactOrder = std::numeric_limits<Exponent>::max();

namespace detail {
inline Exponent order_add(Exponent a, Exponent b) {
    if (a == kExactOrder || b == kExactOrder) return kExactOrder;
    return a + b;
}
inline void check_exponent(Exponent e) {
    if (e > kMaxExponent || e < -kMaxExponent)
        throw std::overflow_error("LaurentSeries: exponent " + std::to_string(e) +
                                  " exceeds the supported range");
}
}  // namespace detail

template <class Scalar>
class LaurentSeries {
public:
    /// The exact zero series.
    LaurentSeries() : min_exp_(0), exact_(true) {}

    /// Coefficients for exponents min_exp..min_exp+coeffs.size()-1. With
    /// exact=false that window is the entire knowledge window; with
    /// exact=true every exponent outside it is known zero.
    LaurentSeries(Exponent min_exp, std::vector<Scalar> coeffs, bool exact)
        : min_exp_(min_exp), coeffs_(std::move(coeffs)), exact_(exact) {
        detail::check_exponent(min_exp_);
        detail::check_exponent(min_exp_ + static_cast<Exponent>(coeffs_.size()));
        if (exact_) trim();
    }

    /// All-zero series known through the given order and unknown beyond it.
    static LaurentSeries zero_through(Exponent trunc_order) {
        detail::check_exponent(trunc_order);
        LaurentSeries s;
        s.exact_ = false;
        s.min_exp_ = trunc_order + 1;
        return s;
    }

    /// The exact monomial c * z^e.
    static LaurentSeries monomial(Scalar c, Exponent e) {
        return LaurentSeries(e, std::vector<Scalar>{std::move(c)}, true);
    }

    Exponent min_exp() const { return min_exp_; }
    Exponent max_stored() const { return min_exp_ + static_cast<Exponent>(coeffs_.size()) - 1; }
    Exponent trunc_order() const { return exact_ ? kExactOrder : max_stored(); }
    bool is_exact() const { return exact_; }
    std::size_t stored_count() const { return coeffs_.size(); }
    const std::vector<Scalar>& stored() const { return coeffs_; }

    bool is_known(Exponent e) const { return exact_ || e <= max_stored(); }

    /// Coefficient of z^e; throws if e lies beyond the known range.
    Scalar coeff(Exponent e) const {
        if (!is_known(e))
            throw std::domain_error("LaurentSeries::coeff: coefficient of z^" + std::to_string(e) +
                                    " is beyond the truncation order " + std::to_string(max_stored()));
        if (e < min_exp_ || e > max_stored()) return Scalar(0);
        return coeffs_[static_cast<std::size_t>(e - min_exp_)];
    }

    /// Lowest exponent at which the series could be nonzero: the first
    /// stored nonzero, else the first unknown position, else kExactOrder
    /// for a series that is exactly zero.
    Exponent support_min() const {
        for (std::size_t i = 0; i < coeffs_.size(); ++i)
            if (coeffs_[i] != 0) return min_exp_ + static_cast<Exponent>(i);
        return exact_ ? kExactOrder : max_stored() + 1;
    }

    /// True when every known coefficient vanishes.
    bool known_coefficients_all_zero() const {
        for (const Scalar& c : coeffs_)
            if (c != 0) return false;
        return true;
    }

    /// Same stored window, same knowledge claim, same values.
    friend bool operator==(const LaurentSeries& a, const LaurentSeries& b) {
        return a.exact_ == b.exact_ && a.min_exp_ == b.min_exp_ && a.coeffs_ == b.coeffs_;
    }

private:
    void trim() {
        std::size_t lo = 0, hi = coeffs_.size();
        while (lo < hi && coeffs_[lo] == 0) ++lo;
        while (hi > lo && coeffs_[hi - 1] == 0) --hi;
        if (lo == hi) {
            coeffs_.clear();
            min_exp_ = 0;
        } else if (lo > 0 || hi < coeffs_.size()) {
            coeffs_ = std::vector<Scalar>(coeffs_.begin() + lo, coeffs_.begin() + hi);
            min_exp_ += static_cast<Exponent>(lo);
        }
    }

    Exponent min_exp_;
    std::vector<Scalar> coeffs_;
    bool exact_;
};

namespace detail {

template <class Scalar>
LaurentSeries<Scalar> add_like(const LaurentSeries<Scalar>& a, const LaurentSeries<Scalar>& b, int sign_b) {
    const Exponent trunc = std::min(a.trunc_order(), b.trunc_order());
    const bool exact = trunc == kExactOrder;
    Exponent lo = std::min(a.min_exp(), b.min_exp());
    Exponent hi;
    if (exact) {
        hi = std::max(a.max_stored(), b.max_stored());
        if (a.stored_count() == 0 && b.stored_count() == 0) return LaurentSeries<Scalar>();
    } else {
        hi = trunc;
    }
    if (hi < lo) return LaurentSeries<Scalar>::zero_through(trunc);
    std::vector<Scalar> out(static_cast<std::size_t>(hi - lo + 1), Scalar(0));
    for (Exponent e = lo; e <= hi; ++e) {
        Scalar v(0);
        if (e >= a.min_exp() && e <= a.max_stored()) v += a.coeff(e);
        if (e >= b.min_exp() && e <= b.max_stored()) {
            if (sign_b > 0)
                v += b.coeff(e);
            else
                v -= b.coeff(e);
        }
        out[static_cast<std::size_t>(e - lo)] = std::move(v);
    }
    return LaurentSeries<Scalar>(lo, std::move(out), exact);
}

}  // namespace detail

template <class Scalar>
LaurentSeries<Scalar> operator+(const LaurentSeries<Scalar>& a, const LaurentSeries<Scalar>& b) {
    return detail::add_like(a, b, +1);
}

template <class Scalar>
LaurentSeries<Scalar> operator-(const LaurentSeries<Scalar>& a, const LaurentSeries<Scalar>& b) {
    return detail::add_like(a, b, -1);
}

template <class Scalar>
LaurentSeries<Scalar> operator-(const LaurentSeries<Scalar>& a) {
    std::vector<Scalar> out(a.stored().size());
    for (std::size_t i = 0; i < out.size(); ++i) out[i] = -a.stored()[i];
    return LaurentSeries<Scalar>(a.min_exp(), std::move(out), a.is_exact());
}

/// Scaling keeps the truncation order, even when c == 0.
template <class Scalar>
LaurentSeries<Scalar> operator*(const Scalar& c, const LaurentSeries<Scalar>& a) {
    std::vector<Scalar> out(a.stored().size());
    for (std::size_t i = 0; i < out.size(); ++i) out[i] = c * a.stored()[i];
    return LaurentSeries<Scalar>(a.min_exp(), std::move(out), a.is_exact());
}

template <class Scalar>
LaurentSeries<Scalar> operator*(const LaurentSeries<Scalar>& a, const Scalar& c) {
    return c * a;
}

/// Product with the pessimistic truncation rule: the result is known exactly
/// up to min(trunc(a) + support_min(b), trunc(b) + support_min(a)).
template <class Scalar>
LaurentSeries<Scalar> operator*(const LaurentSeries<Scalar>& a, const LaurentSeries<Scalar>& b) {
    const Exponent sa = a.support_min();
    const Exponent sb = b.support_min();
    // An exactly-zero factor annihilates regardless of the other side.
    if (a.is_exact() && sa == kExactOrder) return LaurentSeries<Scalar>();
    if (b.is_exact() && sb == kExactOrder) return LaurentSeries<Scalar>();

    const Exponent trunc =
        std::min(detail::order_add(a.trunc_order(), sb), detail::order_add(b.trunc_order(), sa));
    const bool exact = trunc == kExactOrder;
    const Exponent lo = sa + sb;  // both finite here
    const Exponent hi = exact ? a.max_stored() + b.max_stored() : trunc;
    if (hi < lo) return LaurentSeries<Scalar>::zero_through(trunc);

    std::vector<Scalar> out(static_cast<std::size_t>(hi - lo + 1), Scalar(0));
    const Exponent a_lo = std::max(a.min_exp(), sa);
    for (Exponent i = a_lo; i <= a.max_stored(); ++i) {
        const Scalar& ai = a.stored()[static_cast<std::size_t>(i - a.min_exp())];
        if (ai == 0) continue;
        const Exponent j_lo = std::max(b.min_exp(), lo - i);
        const Exponent j_hi = std::min(b.max_stored(), hi - i);
        for (Exponent j = j_lo; j <= j_hi; ++j) {
            out[static_cast<std::size_t>(i + j - lo)] +=
                ai * b.stored()[static_cast<std::size_t>(j - b.min_exp())];
        }
    }
    return LaurentSeries<Scalar>(lo, std::move(out), exact);
}

/// z d/dz: the coefficient of z^e maps f_e -> e*f_e. Truncation unchanged.
template <class Scalar>
LaurentSeries<Scalar> euler_derivative(const LaurentSeries<Scalar>& f) {
    std::vector<Scalar> out(f.stored().size());
    for (std::size_t i = 0; i < out.size(); ++i) {
        const Exponent e = f.min_exp() + static_cast<Exponent>(i);
        out[i] = Scalar(static_cast<long long>(e)) * f.stored()[i];
    }
    return LaurentSeries<Scalar>(f.min_exp(), std::move(out), f.is_exact());
}

/// The z^0 coefficient of f*g, i.e. sum_e f_e g_{-e}. Throws when that
/// coefficient is not fully determined by the known ranges, naming the
/// missing exponents.
template <class Scalar>
Scalar pairing(const LaurentSeries<Scalar>& f, const LaurentSeries<Scalar>& g) {
    const auto require_determined = [](const LaurentSeries<Scalar>& known_side,
                                       const LaurentSeries<Scalar>& unknown_side, const char* which) {
        // Unknown coefficients of `unknown_side` at exponents > trunc pair
        // with exponents <= -trunc-1 of `known_side`; all of those must be
        // known zero.
        if (unknown_side.is_exact()) return;
        const Exponent s = known_side.support_min();
        if (s == kExactOrder) return;  // exactly zero, nothing pairs
        if (s < -unknown_side.trunc_order()) {
            std::ostringstream msg;
            msg << "pairing: z^0 coefficient of the product is undetermined; the " << which
                << " series is unknown at exponents [" << unknown_side.trunc_order() + 1 << ", " << -s
                << "] which pair with stored support of the other factor";
            throw std::domain_error(msg.str());
        }
    };
    require_determined(f, g, "second");
    require_determined(g, f, "first");

    Scalar acc(0);
    const Exponent lo = std::max(f.min_exp(), -g.max_stored());
    const Exponent hi = std::min(f.max_stored(), -g.min_exp());
    for (Exponent e = lo; e <= hi; ++e) acc += f.coeff(e) * g.coeff(-e);
    return acc;
}

/// (f(1), f'(1)) for a finite exact series: sum f_e and sum e*f_e. Throws if
/// the truncation could hide nonzero terms.
template <class Scalar>
std::pair<Scalar, Scalar> boundary_values(const LaurentSeries<Scalar>& f) {
    if (!f.is_exact())
        throw std::domain_error(
            "boundary_values: series is truncated at order " + std::to_string(f.trunc_order()) +
            "; terms beyond it are unknown and could contribute at z=1");
    Scalar value(0), derivative(0);
    for (std::size_t i = 0; i < f.stored().size(); ++i) {
        const Exponent e = f.min_exp() + static_cast<Exponent>(i);
        value += f.stored()[i];
        derivative += Scalar(static_cast<long long>(e)) * f.stored()[i];
    }
    return {std::move(value), std::move(derivative)};
}

/// Both inputs must agree wherever both are known; the result carries the
/// union of their knowledge. Used to fuse two independently derived forms of
/// the same quantity.
template <class Scalar>
LaurentSeries<Scalar> merge_checked(const LaurentSeries<Scalar>& a, const LaurentSeries<Scalar>& b) {
    const Exponent common_hi = std::min(a.trunc_order(), b.trunc_order());
    const Exponent lo = std::min(a.min_exp(), b.min_exp());
    for (Exponent e = lo; e <= std::min(common_hi, std::max(a.max_stored(), b.max_stored())); ++e) {
        if (a.coeff(e) != b.coeff(e))
            throw std::logic_error("merge_checked: the two routes disagree at exponent " +
                                   std::to_string(e));
    }
    const Exponent trunc = std::max(a.trunc_order(), b.trunc_order());
    const bool exact = trunc == kExactOrder;
    const Exponent hi = exact ? std::max(a.max_stored(), b.max_stored()) : trunc;
    if (hi < lo) return exact ? LaurentSeries<Scalar>() : LaurentSeries<Scalar>::zero_through(trunc);
    std::vector<Scalar> out(static_cast<std::size_t>(hi - lo + 1), Scalar(0));
    for (Exponent e = lo; e <= hi; ++e)
        out[static_cast<std::size_t>(e - lo)] = a.is_known(e) ? a.coeff(e) : b.coeff(e);
    return LaurentSeries<Scalar>(lo, std::move(out), exact);
}

/// Restricts knowledge to exponents <= hi (a deliberate forget).
template <class Scalar>
LaurentSeries<Scalar> truncated_to(const LaurentSeries<Scalar>& a, Exponent hi) {
    if (a.trunc_order() <= hi) return a;
    if (hi < a.min_exp()) return LaurentSeries<Scalar>::zero_through(hi);
    std::vector<Scalar> out(a.stored().begin(),
                            a.stored().begin() + static_cast<std::size_t>(hi - a.min_exp() + 1));
    return LaurentSeries<Scalar>(a.min_exp(), std::move(out), false);
}

template <class Scalar>
std::string to_string(const LaurentSeries<Scalar>& f) {
    std::ostringstream os;
    bool first = true;
    for (std::size_t i = 0; i < f.stored().size(); ++i) {
        const Scalar& c = f.stored()[i];
        if (c == 0) continue;
        const Exponent e = f.min_exp() + static_cast<Exponent>(i);
        os << (first ? "" : " + ") << RingTraits<Scalar>::to_string(c);
        if (e != 0) os << "*z^" << e;
        first = false;
    }
    if (first) os << "0";
    if (!f.is_exact()) os << " + O(z^" << f.trunc_order() + 1 << ")";
    return os.str();
}

}  // namespace susybi
