#pragma once

// Executable form of the structural identities of a biorthogonal system:
//
//   biorthonormality   pairing(chi_k^±, psi_n^±) = delta_{kn}
//   completeness       [z^p w^{-q}] sum_n chi_n^±(w) psi_n^±(z) = delta_{pq}
//   eigen-residual     H_± psi_n^± - (n+nu)^2 psi_n^± = 0
//   dual second order  (H~_± - (n+nu)^2) chi_n^± =
//                          (z d/dz - nu ∓ U) Lambda_n^± - (n+nu) Lambda_n^∓
//   b-expansion        pairing(chi_k^∓, (z d/dz + nu ± U) psi_n^±) =
//                          (n+nu) delta_{kn}
//
// In the rational ring every comparison is pass/fail on exact equality; in
// the float ring the threshold is 1e-12 relative.

#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "susybi/builder.hpp"
#include "susybi/laurent.hpp"
#include "susybi/scalars.hpp"
#include "susybi/sector.hpp"

namespace susybi {

struct CheckFailure {
    std::string location;
    std::string expected;
    std::string actual;
};

struct VerificationReport {
    std::string check_name;
    std::string scope;
    bool passed = true;
    std::string worst_defect = "0";
    std::vector<CheckFailure> failures;
};

namespace detail {

template <class Scalar>
Scalar scalar_abs(const Scalar& v) {
    return v < 0 ? Scalar(-v) : v;
}

/// Accumulates expected/actual comparisons under the ring's equality policy.
template <class Scalar>
class ReportBuilder {
public:
    ReportBuilder(std::string check_name, std::string scope) {
        report_.check_name = std::move(check_name);
        report_.scope = std::move(scope);
    }

    void expect(const std::string& location, const Scalar& expected, const Scalar& actual) {
        const Scalar defect = scalar_abs(Scalar(actual - expected));
        bool ok;
        if constexpr (RingTraits<Scalar>::is_exact) {
            ok = defect == 0;
        } else {
            Scalar scale = scalar_abs(expected);
            if (scale < 1) scale = Scalar(1);
            ok = defect <= Scalar("1e-12") * scale;
        }
        if (defect > worst_) worst_ = defect;
        if (!ok)
            report_.failures.push_back({location, RingTraits<Scalar>::to_string(expected),
                                        RingTraits<Scalar>::to_string(actual)});
    }

    /// Every known coefficient of `s` must vanish; the window must not be empty.
    void expect_zero_series(const std::string& location, const LaurentSeries<Scalar>& s) {
        if (!s.is_exact() && s.trunc_order() < s.min_exp() && s.stored_count() == 0 &&
            s.trunc_order() < 0) {
            report_.failures.push_back({location, "determined window", "empty"});
            return;
        }
        for (std::size_t i = 0; i < s.stored().size(); ++i) {
            const Exponent e = s.min_exp() + static_cast<Exponent>(i);
            expect(location + " [z^" + std::to_string(e) + "]", Scalar(0), s.stored()[i]);
        }
    }

    VerificationReport finish() {
        report_.passed = report_.failures.empty();
        report_.worst_defect = RingTraits<Scalar>::to_string(worst_);
        return std::move(report_);
    }

private:
    VerificationReport report_;
    Scalar worst_ = Scalar(0);
};

template <class Scalar>
std::string scope_string(const BiorthogonalSystem<Scalar>& sys) {
    std::ostringstream os;
    os << "N=" << sys.max_level << " J=" << sys.depth << " nu=" << RingTraits<Scalar>::to_string(sys.nu)
       << " K=" << sys.U.max_power() << (sys.U.truncated ? " (truncated U)" : "") << " ring="
       << RingTraits<Scalar>::name;
    return os.str();
}

}  // namespace detail

/// pairing(chi_k^s, psi_n^s) = delta_{kn} for all 0 <= k, n <= N, both
/// sectors. Requires J >= N so every pairing is determined.
template <class Scalar>
VerificationReport check_biorthonormality(const BiorthogonalSystem<Scalar>& sys) {
    detail::ReportBuilder<Scalar> rb("biorthonormality", detail::scope_string(sys));
    for (Sector s : kBothSectors)
        for (int k = 0; k <= sys.max_level; ++k)
            for (int n = 0; n <= sys.max_level; ++n) {
                const Scalar value = pairing(sys.chi[static_cast<std::size_t>(k)][s].series(),
                                             sys.psi[static_cast<std::size_t>(n)][s].series());
                std::ostringstream loc;
                loc << "k=" << k << " n=" << n << " sector=" << sector_name(s);
                rb.expect(loc.str(), Scalar(k == n ? 1 : 0), value);
            }
    return rb.finish();
}

/// Coefficient of z^p w^{-q} in sum_{n=0}^{N} chi_n^±(w) psi_n^±(z),
/// namely sum_{n=q}^{min(p,N)} c_{n,n-q} a_{n,p-n}, equals delta_{pq} for
/// all 0 <= p, q <= P. The sum over n is finite and complete for p, q <= N.
template <class Scalar>
VerificationReport check_completeness(const BiorthogonalSystem<Scalar>& sys, int window) {
    if (window > sys.max_level || window > sys.depth || window < 0)
        throw std::invalid_argument("check_completeness: window must satisfy 0 <= P <= min(N, J)");
    detail::ReportBuilder<Scalar> rb("completeness", detail::scope_string(sys));
    for (Sector s : kBothSectors)
        for (int p = 0; p <= window; ++p)
            for (int q = 0; q <= window; ++q) {
                Scalar acc(0);
                for (int n = q; n <= std::min(p, sys.max_level); ++n) {
                    const auto& chi_n = sys.chi[static_cast<std::size_t>(n)][s].c;
                    const auto& psi_n = sys.psi[static_cast<std::size_t>(n)][s].a;
                    acc += chi_n[static_cast<std::size_t>(n - q)] * psi_n[static_cast<std::size_t>(p - n)];
                }
                std::ostringstream loc;
                loc << "p=" << p << " q=" << q << " sector=" << sector_name(s);
                rb.expect(loc.str(), Scalar(p == q ? 1 : 0), acc);
            }
    return rb.finish();
}

/// H_± psi_n^± - (n+nu)^2 psi_n^± vanishes on its determined window.
template <class Scalar>
VerificationReport check_eigen_residual(const BiorthogonalSystem<Scalar>& sys) {
    detail::ReportBuilder<Scalar> rb("eigen-residual", detail::scope_string(sys));
    for (Sector s : kBothSectors)
        for (int n = 0; n <= sys.max_level; ++n) {
            const LaurentSeries<Scalar> psi = sys.psi[static_cast<std::size_t>(n)][s].series();
            const Scalar energy_root = Scalar(n) + sys.nu;
            const LaurentSeries<Scalar> residual =
                hamiltonian_apply(psi, sys.U, sys.nu, s) - (energy_root * energy_root) * psi;
            std::ostringstream loc;
            loc << "n=" << n << " sector=" << sector_name(s);
            rb.expect_zero_series(loc.str(), residual);
        }
    return rb.finish();
}

/// (H~_± - (n+nu)^2) chi_n^± - [(z d/dz - nu ∓ U) Lambda_n^± - (n+nu) Lambda_n^∓]
/// vanishes, and the right-hand side involves only positive powers of z.
template <class Scalar>
VerificationReport check_dual_second_order(const BiorthogonalSystem<Scalar>& sys) {
    detail::ReportBuilder<Scalar> rb("dual-second-order", detail::scope_string(sys));
    for (Sector s : kBothSectors)
        for (int n = 0; n <= sys.max_level; ++n) {
            const LaurentSeries<Scalar> chi = sys.chi[static_cast<std::size_t>(n)][s].series();
            const Scalar energy_root = Scalar(n) + sys.nu;
            const LaurentSeries<Scalar> lhs =
                hamiltonian_apply(chi, sys.U, sys.nu, s, /*dual=*/true) - (energy_root * energy_root) * chi;
            const LaurentSeries<Scalar> rhs =
                first_order_apply(sys.lambda[static_cast<std::size_t>(n)][s].series(), sys.U,
                                  Scalar(-sys.nu), flip(s)) -
                energy_root * sys.lambda[static_cast<std::size_t>(n)][flip(s)].series();
            std::ostringstream loc;
            loc << "n=" << n << " sector=" << sector_name(s);
            rb.expect_zero_series(loc.str(), lhs - rhs);
            if (rhs.support_min() < 1 && rhs.support_min() != kExactOrder)
                rb.expect(loc.str() + " [rhs support]", Scalar(0),
                          rhs.coeff(rhs.support_min()));
        }
    return rb.finish();
}

/// pairing(chi_k^∓, (z d/dz + nu ± U) psi_n^±) = (n+nu) delta_{kn}.
template <class Scalar>
VerificationReport check_b_expansion(const BiorthogonalSystem<Scalar>& sys) {
    detail::ReportBuilder<Scalar> rb("b-expansion", detail::scope_string(sys));
    for (Sector s : kBothSectors)
        for (int n = 0; n <= sys.max_level; ++n) {
            const LaurentSeries<Scalar> lifted =
                first_order_apply(sys.psi[static_cast<std::size_t>(n)][s].series(), sys.U, sys.nu, s);
            for (int k = 0; k <= sys.max_level; ++k) {
                const Scalar value =
                    pairing(sys.chi[static_cast<std::size_t>(k)][flip(s)].series(), lifted);
                std::ostringstream loc;
                loc << "k=" << k << " n=" << n << " sector=" << sector_name(s);
                rb.expect(loc.str(), k == n ? Scalar(Scalar(n) + sys.nu) : Scalar(0), value);
            }
        }
    return rb.finish();
}

/// All five checks, in the order they are usually quoted.
template <class Scalar>
std::vector<VerificationReport> run_all_checks(const BiorthogonalSystem<Scalar>& sys) {
    const int window = std::min(sys.max_level, sys.depth);
    return {check_biorthonormality(sys), check_completeness(sys, window), check_eigen_residual(sys),
            check_dual_second_order(sys), check_b_expansion(sys)};
}

inline bool all_passed(const std::vector<VerificationReport>& reports) {
    for (const auto& r : reports)
        if (!r.passed) return false;
    return true;
}

}  // namespace susybi
