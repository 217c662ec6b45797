#pragma once

// Construction of the supersymmetric biorthogonal system attached to a
// superpotential U and magnetic parameter nu:
//
//   chi_n^±(z)    = z^{-n} (c_{n,0} + c_{n,1} z + ... + c_{n,n} z^n), c_{n,0}=1,
//   Lambda_n^±(z) = sum_{k>=1} lambda_n^±(k) z^k,
//   psi_n^±(z)    = z^n (1 + a_{n,1} z + a_{n,2} z^2 + ...),
//
// coupled by the first-order relations
//
//   (z d/dz - nu ± U) chi_n^± + (n+nu) chi_n^∓ = Lambda_n^±,
//   (z d/dz + nu ± U) psi_n^±                  = (n+nu) psi_n^∓,
//
// with partner Hamiltonians H_± = (z d/dz + nu)^2 + V_± acting as
// H_± psi_n^± = (n+nu)^2 psi_n^±. Matching powers of z turns the first-order
// relations into exact 2x2 recursions with determinants j(2n+2nu-j) for the
// dual side and j(2n+2nu+j) for the eigenfunction side; the builders refuse
// to run when one of those determinants vanishes.

#include <algorithm>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "susybi/laurent.hpp"
#include "susybi/scalars.hpp"
#include "susybi/sector.hpp"
#include "susybi/superpotential.hpp"

namespace susybi {

/// A recursion determinant j(2n + 2nu ∓ j) vanished.
class DegeneracyError : public std::domain_error {
public:
    DegeneracyError(const std::string& where, int level, int step, const std::string& nu_text)
        : std::domain_error("degenerate " + where + " recursion: determinant vanishes at n=" +
                            std::to_string(level) + ", j=" + std::to_string(step) + ", nu=" + nu_text),
          level_(level), step_(step) {}
    explicit DegeneracyError(const std::string& message)
        : std::domain_error(message), level_(-1), step_(-1) {}

    int level() const { return level_; }
    int step() const { return step_; }

private:
    int level_;
    int step_;
};

/// Dual polynomial chi_n: degree-n polynomial in 1/z with unit leading
/// (most negative power) coefficient.
template <class Scalar>
struct DualPolynomial {
    int level = 0;
    Sector sector = Sector::plus;
    std::vector<Scalar> c;  // c[j] multiplies z^{j-level}, j = 0..level

    LaurentSeries<Scalar> series() const {
        return LaurentSeries<Scalar>(-level, c, /*exact=*/true);
    }
};

/// Inhomogeneity Lambda_n: analytic about the origin, vanishing there.
/// For a truncated U only the coefficients k <= K - n are determined.
template <class Scalar>
struct Inhomogeneity {
    int level = 0;
    Sector sector = Sector::plus;
    std::vector<Scalar> lambda;  // lambda[k-1] multiplies z^k, k = 1..
    bool exact = true;

    LaurentSeries<Scalar> series() const {
        return LaurentSeries<Scalar>(1, lambda, exact);
    }
};

/// Eigenfunction psi_n to depth J: coefficients of z^{n+j}, a_{n,0} = 1.
template <class Scalar>
struct Eigenfunction {
    int level = 0;
    Sector sector = Sector::plus;
    std::vector<Scalar> a;  // a[j] multiplies z^{level+j}, j = 0..J

    int depth() const { return static_cast<int>(a.size()) - 1; }
    LaurentSeries<Scalar> series() const {
        return LaurentSeries<Scalar>(level, a, /*exact=*/false);
    }
};

/// c_{n,j}^± = (±1)/(j(2n+2nu-j)) sum_{k=1}^{j} upsilon_k
///             ((j-n-nu) c_{n,j-k}^± + (n+nu) c_{n,j-k}^∓)
template <class Scalar>
SectorPair<DualPolynomial<Scalar>> build_dual_polynomials(int n, const Superpotential<Scalar>& U,
                                                          const Scalar& nu) {
    if (n < 0) throw std::invalid_argument("build_dual_polynomials: level must be >= 0");
    std::vector<Scalar> cp(static_cast<std::size_t>(n) + 1, Scalar(0));
    std::vector<Scalar> cm(static_cast<std::size_t>(n) + 1, Scalar(0));
    cp[0] = Scalar(1);
    cm[0] = Scalar(1);
    const Scalar level_shift = Scalar(n) + nu;  // n + nu
    for (int j = 1; j <= n; ++j) {
        const Scalar det = Scalar(j) * (Scalar(2 * n) + nu + nu - Scalar(j));
        if (det == 0)
            throw DegeneracyError("dual-polynomial", n, j, RingTraits<Scalar>::to_string(nu));
        Scalar sp(0), sm(0);
        for (int k = 1; k <= std::min(j, U.max_power()); ++k) {
            sp += U.upsilon[static_cast<std::size_t>(k - 1)] * cp[static_cast<std::size_t>(j - k)];
            sm += U.upsilon[static_cast<std::size_t>(k - 1)] * cm[static_cast<std::size_t>(j - k)];
        }
        const Scalar depth_shift = Scalar(j) - level_shift;  // j - n - nu
        cp[static_cast<std::size_t>(j)] = (depth_shift * sp + level_shift * sm) / det;
        cm[static_cast<std::size_t>(j)] = -(depth_shift * sm + level_shift * sp) / det;
    }
    return {DualPolynomial<Scalar>{n, Sector::plus, std::move(cp)},
            DualPolynomial<Scalar>{n, Sector::minus, std::move(cm)}};
}

/// lambda_n^±(k) = ± sum_{j=0}^{n} upsilon_{k+n-j} c_{n,j}^±. For a truncated
/// U the values for k > K - n would need unknown upsilons; they are omitted.
template <class Scalar>
SectorPair<Inhomogeneity<Scalar>> build_inhomogeneity(int n,
                                                      const SectorPair<DualPolynomial<Scalar>>& chi,
                                                      const Superpotential<Scalar>& U) {
    if (chi.plus.level != n || chi.minus.level != n)
        throw std::invalid_argument("build_inhomogeneity: dual polynomials are for level " +
                                    std::to_string(chi.plus.level) + ", expected " + std::to_string(n));
    const int K = U.max_power();
    const int k_max = U.truncated ? std::max(0, K - n) : K;
    SectorPair<Inhomogeneity<Scalar>> out{Inhomogeneity<Scalar>{n, Sector::plus, {}, !U.truncated},
                                          Inhomogeneity<Scalar>{n, Sector::minus, {}, !U.truncated}};
    for (Sector s : kBothSectors) {
        const auto& c = chi[s].c;
        std::vector<Scalar> lambda(static_cast<std::size_t>(k_max), Scalar(0));
        for (int k = 1; k <= k_max; ++k) {
            Scalar acc(0);
            for (int j = 0; j <= n; ++j) acc += U.coefficient(k + n - j) * c[static_cast<std::size_t>(j)];
            lambda[static_cast<std::size_t>(k - 1)] = sector_sign(s) > 0 ? acc : -acc;
        }
        out[s].lambda = std::move(lambda);
    }
    return out;
}

/// a_{n,j}^± = (∓1)/(j(2n+2nu+j)) sum_{k=1}^{min(j,K)} upsilon_k
///             ((n+j+nu) a_{n,j-k}^± - (n+nu) a_{n,j-k}^∓)
template <class Scalar>
SectorPair<Eigenfunction<Scalar>> build_eigenfunction(int n, const Superpotential<Scalar>& U,
                                                      const Scalar& nu, int depth) {
    if (n < 0) throw std::invalid_argument("build_eigenfunction: level must be >= 0");
    if (depth < 0) throw std::invalid_argument("build_eigenfunction: depth must be >= 0");
    std::vector<Scalar> ap(static_cast<std::size_t>(depth) + 1, Scalar(0));
    std::vector<Scalar> am(static_cast<std::size_t>(depth) + 1, Scalar(0));
    ap[0] = Scalar(1);
    am[0] = Scalar(1);
    const Scalar level_shift = Scalar(n) + nu;
    for (int j = 1; j <= depth; ++j) {
        const Scalar det = Scalar(j) * (Scalar(2 * n) + nu + nu + Scalar(j));
        if (det == 0)
            throw DegeneracyError("eigenfunction", n, j, RingTraits<Scalar>::to_string(nu));
        Scalar sp(0), sm(0);
        for (int k = 1; k <= std::min(j, U.max_power()); ++k) {
            sp += U.upsilon[static_cast<std::size_t>(k - 1)] * ap[static_cast<std::size_t>(j - k)];
            sm += U.upsilon[static_cast<std::size_t>(k - 1)] * am[static_cast<std::size_t>(j - k)];
        }
        const Scalar total_shift = level_shift + Scalar(j);  // n + j + nu
        ap[static_cast<std::size_t>(j)] = -(total_shift * sp - level_shift * sm) / det;
        am[static_cast<std::size_t>(j)] = (total_shift * sm - level_shift * sp) / det;
    }
    return {Eigenfunction<Scalar>{n, Sector::plus, std::move(ap)},
            Eigenfunction<Scalar>{n, Sector::minus, std::move(am)}};
}

/// Forward substitution of the unit-diagonal triangular system
/// sum_{j=0}^{k-n} c_{k,k-n-j} a_{n,j} = 0 (k > n): the biorthogonality
/// route to psi_n from the duals at levels n+1..n+J.
template <class Scalar>
Eigenfunction<Scalar> psi_from_duals_triangular(int n,
                                                std::span<const DualPolynomial<Scalar>> duals,
                                                int depth) {
    if (static_cast<int>(duals.size()) < depth)
        throw std::invalid_argument("psi_from_duals_triangular: need duals for levels " +
                                    std::to_string(n + 1) + ".." + std::to_string(n + depth));
    Sector sector = depth > 0 ? duals[0].sector : Sector::plus;
    for (int m = 1; m <= depth; ++m) {
        const auto& d = duals[static_cast<std::size_t>(m - 1)];
        if (d.level != n + m)
            throw std::invalid_argument("psi_from_duals_triangular: expected dual for level " +
                                        std::to_string(n + m) + ", got " + std::to_string(d.level));
        if (d.sector != sector)
            throw std::invalid_argument("psi_from_duals_triangular: mixed sectors in dual list");
    }
    std::vector<Scalar> a(static_cast<std::size_t>(depth) + 1, Scalar(0));
    a[0] = Scalar(1);
    for (int m = 1; m <= depth; ++m) {
        const auto& c = duals[static_cast<std::size_t>(m - 1)].c;  // level n+m
        Scalar acc(0);
        for (int j = 0; j < m; ++j) acc += c[static_cast<std::size_t>(m - j)] * a[static_cast<std::size_t>(j)];
        a[static_cast<std::size_t>(m)] = -acc;
    }
    return Eigenfunction<Scalar>{n, sector, std::move(a)};
}

/// (z d/dz + shift + sign(sector) U) f
template <class Scalar>
LaurentSeries<Scalar> first_order_apply(const LaurentSeries<Scalar>& f, const Superpotential<Scalar>& U,
                                        const Scalar& shift, Sector sector) {
    LaurentSeries<Scalar> out = euler_derivative(f) + shift * f;
    const LaurentSeries<Scalar> uf = U.series() * f;
    return sector == Sector::plus ? out + uf : out - uf;
}

/// H_± f (dual=false) or H~_± f (dual=true), where H_± = (z d/dz + nu)^2 + V_±
/// and H~_±[nu] = H_±[-nu]. Computed both through the factored form
/// (z d/dz + s ∓ U)(z d/dz + s ± U) and the expanded form; the two routes are
/// checked against each other and their knowledge is merged.
template <class Scalar>
LaurentSeries<Scalar> hamiltonian_apply(const LaurentSeries<Scalar>& f, const Superpotential<Scalar>& U,
                                        const Scalar& nu, Sector sector, bool dual = false) {
    const Scalar shift = dual ? Scalar(-nu) : nu;
    const LaurentSeries<Scalar> inner = first_order_apply(f, U, shift, sector);
    const LaurentSeries<Scalar> factored = first_order_apply(inner, U, shift, flip(sector));

    const LaurentSeries<Scalar> df = euler_derivative(f);
    const LaurentSeries<Scalar> expanded =
        euler_derivative(df) + (shift + shift) * df + (shift * shift) * f + potential_series(U, sector) * f;

    return merge_checked(factored, expanded);
}

/// The complete system for levels 0..N, both sectors, psi to depth J.
template <class Scalar>
struct BiorthogonalSystem {
    Scalar nu = Scalar(0);
    Superpotential<Scalar> U;
    int max_level = 0;  // N
    int depth = 0;      // J
    std::vector<SectorPair<DualPolynomial<Scalar>>> chi;     // index n = 0..N
    std::vector<SectorPair<Inhomogeneity<Scalar>>> lambda;   // index n = 0..N
    std::vector<SectorPair<Eigenfunction<Scalar>>> psi;      // index n = 0..N
};

/// Rejects any nu for which some recursion determinant j(2n+2nu∓j) with
/// n <= N, j <= max(n, J) vanishes, i.e. 2nu a negative integer >= -(2N+J).
template <class Scalar>
void check_nondegenerate(const Scalar& nu, int max_level, int depth) {
    const Scalar two_nu = nu + nu;
    bool integral;
    if constexpr (RingTraits<Scalar>::is_exact) {
        integral = denominator(two_nu) == 1;
    } else {
        integral = floor(two_nu) == two_nu;
    }
    if (!integral) return;
    if (two_nu < 0 && two_nu >= Scalar(-(2 * max_level + depth)))
        throw DegeneracyError("2*nu = " + RingTraits<Scalar>::to_string(two_nu) +
                              " is a negative integer >= -(2N+J) = " +
                              std::to_string(-(2 * max_level + depth)) +
                              "; some recursion determinant vanishes");
}

template <class Scalar>
BiorthogonalSystem<Scalar> build_system(const Superpotential<Scalar>& U, const Scalar& nu,
                                        int max_level, int depth) {
    if (max_level < 0) throw std::invalid_argument("build_system: N must be >= 0");
    check_nondegenerate(nu, max_level, depth);
    BiorthogonalSystem<Scalar> sys;
    sys.nu = nu;
    sys.U = U;
    sys.max_level = max_level;
    sys.depth = depth;
    sys.chi.reserve(static_cast<std::size_t>(max_level) + 1);
    sys.lambda.reserve(static_cast<std::size_t>(max_level) + 1);
    sys.psi.reserve(static_cast<std::size_t>(max_level) + 1);
    for (int n = 0; n <= max_level; ++n) {
        sys.chi.push_back(build_dual_polynomials(n, U, nu));
        sys.lambda.push_back(build_inhomogeneity(n, sys.chi.back(), U));
        sys.psi.push_back(build_eigenfunction(n, U, nu, depth));
    }
    return sys;
}

}  // namespace susybi
