#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdint>
#include <numbers>
#include <vector>

#include <gmpxx.h>

#include "collatz/bounds.hpp"
#include "collatz/errors.hpp"
#include "collatz/polynomial.hpp"

namespace collatz {

struct RootFindingOptions {
    double correction_tol = 1e-13;  // stop when every Aberth step is this small (relative)
    double residual_tol = 1e-9;     // scaled residual each root must meet
    std::int64_t max_sweeps = 1000;
};

/// All roots of one polynomial, sorted by (modulus, argument), plus the
/// per-root scaled residuals |p(z)| / sum |a_j||z|^j that certify them.
struct RootSet {
    std::vector<std::complex<double>> roots;
    std::vector<double> residuals;
    std::int64_t iterations = 0;
    bool converged = false;
    double max_modulus = 0.0;
    double min_modulus = 0.0;
};

namespace detail {

using cld = std::complex<long double>;

/// p(z) and p'(z) by one Horner pass over long-double coefficient images.
inline void eval_with_derivative(const std::vector<cld>& c, cld z, cld& p, cld& dp) {
    p = c.back();
    dp = 0.0L;
    for (std::size_t i = c.size() - 1; i-- > 0;) {
        dp = dp * z + p;
        p = p * z + c[i];
    }
}

/// Scale-invariant residual: |p(z)| relative to the largest the terms could
/// be, so certification is meaningful for huge coefficients.
inline double scaled_residual(const std::vector<cld>& c, cld z) {
    cld p = c.back();
    long double denom = std::abs(c.back());
    long double az = std::abs(z);
    for (std::size_t i = c.size() - 1; i-- > 0;) {
        p = p * z + c[i];
        denom = denom * az + std::abs(c[i]);
    }
    if (denom == 0.0L) return 0.0;
    return static_cast<double>(std::abs(p) / denom);
}

}  // namespace detail

/// Simultaneous root iteration (Aberth–Ehrlich, Gauss–Seidel ordering) from a
/// circle of radius fujiwara-classical with golden-angle phases.  Residuals
/// are certified against residual_tol after the sweep loop.
inline RootSet find_roots(const CollatzPolynomial& p, RootFindingOptions opts = {}) {
    const std::int64_t n = p.degree();
    if (n < 1) throw DegreeTooSmall("find_roots: degree must be >= 1");

    std::vector<detail::cld> c(p.coeffs.size());
    for (std::size_t i = 0; i < p.coeffs.size(); ++i)
        c[i] = detail::cld(static_cast<long double>(detail::to_long_double(p.coeffs[i])), 0.0L);

    const double radius = std::max(fujiwara(p.coeffs, FujiwaraMode::Classical), 1e-3);
    constexpr double golden_angle = 2.399963229728653;  // pi * (3 - sqrt 5)
    std::vector<detail::cld> z(static_cast<std::size_t>(n));
    for (std::int64_t i = 0; i < n; ++i) {
        double theta = 0.5 + golden_angle * static_cast<double>(i);
        z[static_cast<std::size_t>(i)] =
            detail::cld(static_cast<long double>(radius * std::cos(theta)),
                        static_cast<long double>(radius * std::sin(theta)));
    }

    RootSet out;
    bool settled = false;
    for (std::int64_t sweep = 0; sweep < opts.max_sweeps && !settled; ++sweep) {
        out.iterations = sweep + 1;
        long double worst = 0.0L;
        for (std::size_t i = 0; i < z.size(); ++i) {
            detail::cld pv, dv;
            detail::eval_with_derivative(c, z[i], pv, dv);
            if (std::abs(pv) == 0.0L) continue;
            detail::cld newton = dv == detail::cld(0.0L) ? detail::cld(0.0L) : pv / dv;
            detail::cld repel(0.0L);
            for (std::size_t j = 0; j < z.size(); ++j) {
                if (j == i) continue;
                detail::cld diff = z[i] - z[j];
                if (std::abs(diff) < 1e-300L)
                    diff = detail::cld(1e-12L, 1e-12L);  // split coincident guesses
                repel += detail::cld(1.0L) / diff;
            }
            detail::cld denom = detail::cld(1.0L) - newton * repel;
            detail::cld delta = std::abs(denom) == 0.0L ? newton : newton / denom;
            if (std::isnan(static_cast<double>(delta.real())) ||
                std::isnan(static_cast<double>(delta.imag())))
                delta = detail::cld(0.0L);
            z[i] -= delta;
            long double scale = std::max(std::abs(z[i]), 1e-30L);
            worst = std::max(worst, std::abs(delta) / scale);
        }
        settled = worst < static_cast<long double>(opts.correction_tol);
    }

    std::vector<std::complex<double>> roots(z.size());
    std::vector<double> residuals(z.size());
    bool certified = true;
    for (std::size_t i = 0; i < z.size(); ++i) {
        roots[i] = std::complex<double>(static_cast<double>(z[i].real()),
                                        static_cast<double>(z[i].imag()));
        residuals[i] = detail::scaled_residual(c, z[i]);
        if (!(residuals[i] <= opts.residual_tol)) certified = false;
    }
    std::vector<std::size_t> order(roots.size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        double ma = std::abs(roots[a]), mb = std::abs(roots[b]);
        if (ma != mb) return ma < mb;
        return std::arg(roots[a]) < std::arg(roots[b]);
    });
    out.roots.resize(roots.size());
    out.residuals.resize(roots.size());
    for (std::size_t i = 0; i < order.size(); ++i) {
        out.roots[i] = roots[order[i]];
        out.residuals[i] = residuals[order[i]];
    }
    out.converged = settled && certified;
    out.max_modulus = std::abs(out.roots.back());
    out.min_modulus = std::abs(out.roots.front());
    return out;
}

/// Sum and product of the computed roots against -a_(n-1)/a_n and
/// (-1)^n a_0/a_n, as relative deviations.
struct VietaDiagnostic {
    double sum_deviation = 0.0;
    double product_deviation = 0.0;
    bool ok = false;

    void raise_if_failed() const {
        if (!ok) throw VietaMismatch("root set fails the coefficient identities");
    }
};

inline VietaDiagnostic vieta_check(const CollatzPolynomial& p, const RootSet& rs,
                                   double tol = 1e-6) {
    const std::int64_t n = p.degree();
    VietaDiagnostic d;
    if (n < 1 || static_cast<std::int64_t>(rs.roots.size()) != n) return d;

    std::complex<long double> sum(0.0L), prod(1.0L);
    for (const auto& r : rs.roots) {
        sum += std::complex<long double>(r.real(), r.imag());
        prod *= std::complex<long double>(r.real(), r.imag());
    }
    long double an = detail::to_long_double(p.coeffs.back());
    long double expect_sum = -detail::to_long_double(p.coeffs[p.coeffs.size() - 2]) / an;
    long double expect_prod_mag = std::fabs(detail::to_long_double(p.coeffs.front()) / an);

    long double sum_scale = std::max<long double>(std::fabs(expect_sum), 1.0L);
    d.sum_deviation = static_cast<double>(
        std::abs(sum - std::complex<long double>(expect_sum, 0.0L)) / sum_scale);

    // compare product magnitudes in log space: the product of ~n moduli can
    // drift multiplicatively, and magnitude is what the containment story uses
    long double got_mag = std::abs(prod);
    if (expect_prod_mag == 0.0L || got_mag == 0.0L) {
        d.product_deviation = (expect_prod_mag == got_mag) ? 0.0 : 1.0;
    } else {
        d.product_deviation =
            static_cast<double>(std::fabs(std::log(got_mag / expect_prod_mag)));
    }
    d.ok = d.sum_deviation <= tol && d.product_deviation <= tol * static_cast<long double>(n);
    return d;
}

/// True when some root sits off the real axis by more than tol.
inline bool has_nonreal_root(const RootSet& rs, double tol = 1e-7) {
    for (const auto& r : rs.roots)
        if (std::fabs(r.imag()) > tol) return true;
    return false;
}

}  // namespace collatz
