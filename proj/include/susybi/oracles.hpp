#pragma once

// Independent cross-checks for the recursion builders: the series inversion
// of the unit-triangular biorthogonality equations written as explicit
// minors.
//
//   coefficient of z^{n+j} in psi_n:  (-1)^j det M,  M(r,l) = c_{n+1+r, r-l+1}
//   coefficient of z^{j-n} in chi_n:  (-1)^j det A,  A(r,l) = a_{n-1-r, r-l+1}
//
// with the conventions x_{m,0} = 1 and x_{m,i} = 0 for i < 0. These are used
// only as oracles against the recursion output, never as the primary
// construction path.

#include <Eigen/Dense>
#include <boost/multiprecision/eigen.hpp>

#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "susybi/builder.hpp"

namespace susybi {

namespace detail {

template <class Scalar, class Entry>
Scalar signed_minor(int j, Entry entry) {
    if (j == 0) return Scalar(1);
    Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic> m(j, j);
    for (int r = 0; r < j; ++r)
        for (int l = 0; l < j; ++l) m(r, l) = entry(r, l);
    const Scalar det = m.determinant();
    return j % 2 == 0 ? det : Scalar(-det);
}

}  // namespace detail

/// a_{n,j} from the dual coefficients c_{n+1..n+j} of one sector.
template <class Scalar>
Scalar psi_coefficient_via_minors(int n, int j, std::span<const DualPolynomial<Scalar>> duals) {
    if (static_cast<int>(duals.size()) < j)
        throw std::invalid_argument("psi_coefficient_via_minors: need duals for levels " +
                                    std::to_string(n + 1) + ".." + std::to_string(n + j));
    return detail::signed_minor<Scalar>(j, [&](int r, int l) -> Scalar {
        const auto& c = duals[static_cast<std::size_t>(r)].c;  // level n+1+r
        const int idx = r - l + 1;
        if (idx < 0) return Scalar(0);
        return c[static_cast<std::size_t>(idx)];
    });
}

/// c_{n,j} from the eigenfunction coefficients a_{0..n-1} of one sector.
template <class Scalar>
Scalar chi_coefficient_via_minors(int n, int j, std::span<const Eigenfunction<Scalar>> eigenfunctions) {
    if (j > n)
        throw std::invalid_argument("chi_coefficient_via_minors: j must be <= n");
    if (static_cast<int>(eigenfunctions.size()) < n)
        throw std::invalid_argument("chi_coefficient_via_minors: need eigenfunctions for levels 0.." +
                                    std::to_string(n - 1));
    return detail::signed_minor<Scalar>(j, [&](int r, int l) -> Scalar {
        const int idx = r - l + 1;
        if (idx < 0) return Scalar(0);
        const auto& a = eigenfunctions[static_cast<std::size_t>(n - 1 - r)].a;  // level n-1-r
        if (idx >= static_cast<int>(a.size()))
            throw std::invalid_argument("chi_coefficient_via_minors: eigenfunction at level " +
                                        std::to_string(n - 1 - r) + " is too shallow");
        return a[static_cast<std::size_t>(idx)];
    });
}

/// psi_n as a series, every coefficient from a minor determinant.
template <class Scalar>
LaurentSeries<Scalar> psi_series_via_minors(int n, int depth,
                                            std::span<const DualPolynomial<Scalar>> duals) {
    std::vector<Scalar> a(static_cast<std::size_t>(depth) + 1);
    for (int j = 0; j <= depth; ++j) a[static_cast<std::size_t>(j)] = psi_coefficient_via_minors(n, j, duals);
    return LaurentSeries<Scalar>(n, std::move(a), /*exact=*/false);
}

/// chi_n as a series, every coefficient from a minor determinant.
template <class Scalar>
LaurentSeries<Scalar> chi_series_via_minors(int n, std::span<const Eigenfunction<Scalar>> eigenfunctions) {
    std::vector<Scalar> c(static_cast<std::size_t>(n) + 1);
    for (int j = 0; j <= n; ++j) c[static_cast<std::size_t>(j)] = chi_coefficient_via_minors(n, j, eigenfunctions);
    return LaurentSeries<Scalar>(-n, std::move(c), /*exact=*/true);
}

}  // namespace susybi
