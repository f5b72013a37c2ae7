#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <gmpxx.h>

#include "collatz/errors.hpp"
#include "collatz/polynomial.hpp"
#include "collatz/trajectory.hpp"

namespace collatz {

namespace detail {

/// log2 |x| for x != 0, robust far beyond double range.
inline double log2_abs(const mpz_class& x) {
    long e = 0;
    double d = mpz_get_d_2exp(&e, x.get_mpz_t());
    return std::log2(std::fabs(d)) + static_cast<double>(e);
}

}  // namespace detail

/// The root of x^(m-1) + x - 1 in [1/2, 1), solved to full double precision.
struct RmValue {
    std::int64_t m = 0;
    double value = 0.0;
};

/// Bisection on [1/2, 1] to width 1e-15, then guarded Newton polishing.
/// The root is 1/2 exactly at m = 2 and increases monotonically toward 1.
inline RmValue solve_r_m(std::int64_t m) {
    if (m < 2) throw InvalidM("solve_r_m: m must be >= 2");
    const double e = static_cast<double>(m - 1);
    auto f = [e](double x) { return std::pow(x, e) + x - 1.0; };
    double lo = 0.5, hi = 1.0;
    if (f(lo) == 0.0) return {m, lo};
    while (hi - lo > 1e-15) {
        double mid = 0.5 * (lo + hi);
        (f(mid) <= 0.0 ? lo : hi) = mid;
    }
    double r = 0.5 * (lo + hi);
    for (int i = 0; i < 2; ++i) {
        double deriv = e * std::pow(r, e - 1.0) + 1.0;
        double next = r - f(r) / deriv;
        if (next > 0.5 && next < 1.0) r = next;
    }
    return {m, r};
}

/// Closed-form modulus bound keyed to the base t:
///   h(t) = (2 / r_(t+3)) * (75/32 + 2^-(t+2))^(1/(t+2)).
/// Strictly decreasing in t with limit 2.
inline double h_upper(std::int64_t t) {
    if (t < 0) throw Error("h_upper: t must be >= 0");
    double r = solve_r_m(t + 3).value;
    double td = static_cast<double>(t);
    return (2.0 / r) * std::pow(75.0 / 32.0 + std::exp2(-(td + 2.0)), 1.0 / (td + 2.0));
}

/// The derivation behind h_upper assumes t >= 3; smaller bases still get a
/// value but reports flag them.
inline bool h_in_proven_range(std::int64_t t) { return t >= 3; }

/// Alternative-variant analogue, with r_6 held fixed:
///   (2 / r_6) * (521/96 + 2 * 2^-(t+2))^(1/(t+2)), largest at t = 3.
inline double alt_upper(std::int64_t t) {
    if (t < 0) throw Error("alt_upper: t must be >= 0");
    static const double r6 = solve_r_m(6).value;
    double td = static_cast<double>(t);
    return (2.0 / r6) * std::pow(521.0 / 96.0 + 2.0 * std::exp2(-(td + 2.0)), 1.0 / (td + 2.0));
}

/// Supremum of alt_upper over t >= 3 (attained at t = 3).
inline constexpr double kAlternativeModulusCap = 3.72444268658138218;

/// Minimum root modulus, closed form:
///   standard 2/(3(1+1/N)), alternative 1/(3(1+1/N)).
inline double lower_bound(const mpz_class& N, Variant variant = Variant::Standard) {
    if (N < 1) throw Error("lower_bound: N must be >= 1");
    double x = N.get_d();
    double scale = variant == Variant::Standard ? 2.0 : 1.0;
    return scale / (3.0 * (1.0 + 1.0 / x));
}

/// Coefficient-ratio modulus bound.  Modified keeps the constant term as
/// |a_0/(2 a_n)|; Classical raises it to the 1/n.  Neither applies an outer
/// factor 2, so at degree 1 the value can undershoot the root (see README).
enum class FujiwaraMode { Modified, Classical };

inline double fujiwara(const std::vector<mpz_class>& coeffs, FujiwaraMode mode) {
    std::int64_t n = static_cast<std::int64_t>(coeffs.size()) - 1;
    if (n < 1) throw DegreeTooSmall("fujiwara: degree must be >= 1");
    if (coeffs.back() == 0) throw Error("fujiwara: leading coefficient must be nonzero");
    const double lan = detail::log2_abs(coeffs.back());
    double best = -std::numeric_limits<double>::infinity();
    for (std::int64_t i = 1; i < n; ++i) {
        const mpz_class& c = coeffs[n - i];
        if (c != 0) best = std::max(best, (detail::log2_abs(c) - lan) / static_cast<double>(i));
    }
    if (coeffs[0] != 0) {
        double last = detail::log2_abs(coeffs[0]) - lan - 1.0;  // log2 |a_0 / (2 a_n)|
        if (mode == FujiwaraMode::Classical) last /= static_cast<double>(n);
        best = std::max(best, last);
    }
    return std::isinf(best) ? 0.0 : std::exp2(best);
}

/// Unique positive root of x^3 + (2-b)x^2 + (1-b-c)x - maxabs, found by
/// bracketing + bisection to absolute width 1e-12.
inline double sun_hsieh_cubic_root(double b, double c, double maxabs) {
    auto g = [&](double x) { return ((x + (2.0 - b)) * x + (1.0 - b - c)) * x - maxabs; };
    double lo = 0.0, hi = 1.0;
    while (g(hi) <= 0.0) hi *= 2.0;
    while (hi - lo > 1e-12) {
        double mid = 0.5 * (lo + hi);
        (g(mid) <= 0.0 ? lo : hi) = mid;
    }
    return 0.5 * (lo + hi);
}

/// Modulus bound 1 + d from the cubic in the top two coefficient magnitudes
/// and the largest coefficient magnitude.  Monic input of degree >= 2 only.
inline double sun_hsieh(const std::vector<mpz_class>& coeffs) {
    std::int64_t n = static_cast<std::int64_t>(coeffs.size()) - 1;
    if (n < 2) throw DegreeTooSmall("sun_hsieh: degree must be >= 2");
    if (coeffs.back() != 1) throw NotMonic("sun_hsieh: leading coefficient must be 1");
    mpz_class maxabs = 0;
    for (const mpz_class& c : coeffs) {
        mpz_class a = abs(c);
        if (a > maxabs) maxabs = a;
    }
    double b = std::fabs(coeffs[n - 1].get_d());
    double c = std::fabs(coeffs[n - 2].get_d());
    double M = maxabs.get_d();
    if (!std::isfinite(M)) {
        // beyond double range the cubic is dominated by its constant term
        return 1.0 + std::exp2(detail::log2_abs(maxabs) / 3.0);
    }
    return 1.0 + sun_hsieh_cubic_root(b, c, M);
}

/// Dense square integer matrix, row-major.
struct IntMatrix {
    std::int64_t size = 0;
    std::vector<mpz_class> a;

    explicit IntMatrix(std::int64_t s = 0) : size(s), a(static_cast<std::size_t>(s * s)) {}
    mpz_class& at(std::int64_t i, std::int64_t j) { return a[static_cast<std::size_t>(i * size + j)]; }
    const mpz_class& at(std::int64_t i, std::int64_t j) const { return a[static_cast<std::size_t>(i * size + j)]; }
};

/// The (m-1)x(m-1) banded matrix whose determinants feed kalantari_U:
/// band entry (i,j) = a_(n-1-j+i) for j < m-2 (a_n on the subdiagonal, zeros
/// below), last column (i) = a_(n-k+1+i); indices outside [0, n] contribute 0.
inline IntMatrix kalantari_matrix(const std::vector<mpz_class>& coeffs, std::int64_t m,
                                  std::int64_t k) {
    std::int64_t n = static_cast<std::int64_t>(coeffs.size()) - 1;
    if (m < 2) throw InvalidM("kalantari_matrix: m must be >= 2");
    if (n < 1) throw DegreeTooSmall("kalantari_matrix: degree must be >= 1");
    if (k < m || k > m + n - 1)
        throw IndexOutOfRange("kalantari_matrix: k must lie in [m, m+n-1]");
    auto coef = [&](std::int64_t idx) -> mpz_class {
        return (idx >= 0 && idx <= n) ? coeffs[static_cast<std::size_t>(idx)] : mpz_class(0);
    };
    const std::int64_t size = m - 1;
    IntMatrix mat(size);
    for (std::int64_t i = 0; i < size; ++i) {
        for (std::int64_t j = 0; j + 1 < size; ++j) mat.at(i, j) = coef(n - 1 - j + i);
        mat.at(i, size - 1) = coef(n - k + 1 + i);
    }
    return mat;
}

/// Exact determinant by fraction-free (Bareiss) elimination with row-swap
/// pivoting; every intermediate division is exact.
inline mpz_class det_exact(IntMatrix mat) {
    const std::int64_t n = mat.size;
    if (n == 0) return 1;
    int sign = 1;
    mpz_class prev = 1;
    for (std::int64_t k = 0; k + 1 < n; ++k) {
        if (mat.at(k, k) == 0) {
            std::int64_t pivot = -1;
            for (std::int64_t i = k + 1; i < n; ++i)
                if (mat.at(i, k) != 0) { pivot = i; break; }
            if (pivot < 0) return 0;
            for (std::int64_t j = 0; j < n; ++j) std::swap(mat.at(k, j), mat.at(pivot, j));
            sign = -sign;
        }
        for (std::int64_t i = k + 1; i < n; ++i) {
            for (std::int64_t j = k + 1; j < n; ++j) {
                mpz_class num = mat.at(i, j) * mat.at(k, k) - mat.at(i, k) * mat.at(k, j);
                mpz_divexact(mat.at(i, j).get_mpz_t(), num.get_mpz_t(), prev.get_mpz_t());
            }
            mat.at(i, k) = 0;
        }
        prev = mat.at(k, k);
    }
    mpz_class det = mat.at(n - 1, n - 1);
    if (sign < 0) det = -det;
    return det;
}

/// Determinantal modulus bound:
///   U_m = (1/r_m) * max over k in [m, m+n-1] of |det A_(m,k)|^(1/(k-1)).
/// Exact determinants; the fractional power is taken in log2 space so huge
/// determinants cannot overflow.
inline double kalantari_U(const CollatzPolynomial& p, std::int64_t m) {
    if (m < 2) throw InvalidM("kalantari_U: m must be >= 2");
    const std::int64_t n = p.degree();
    if (n < 1) throw DegreeTooSmall("kalantari_U: degree must be >= 1");
    double best = -std::numeric_limits<double>::infinity();
    for (std::int64_t k = m; k <= m + n - 1; ++k) {
        mpz_class d = det_exact(kalantari_matrix(p.coeffs, m, k));
        if (d != 0) best = std::max(best, detail::log2_abs(d) / static_cast<double>(k - 1));
    }
    double r = solve_r_m(m).value;
    return std::isinf(best) ? 0.0 : std::exp2(best) / r;
}

/// Every bound for one polynomial in one place, plus (optionally) the
/// observed extremal root moduli for containment checking.
struct BoundReport {
    mpz_class number;
    Variant variant = Variant::Standard;
    std::int64_t degree = 0;
    std::int64_t base = 0;
    std::optional<double> h_t;             // standard variant
    bool h_proven = true;                  // base >= 3
    std::optional<double> alt_bound;       // alternative variant: alt_upper(base)
    std::map<std::int64_t, double> u_m;    // determinantal bounds, keyed by m
    double fujiwara_modified = 0.0;
    double fujiwara_classical = 0.0;
    std::optional<double> sun_hsieh_bound; // degree >= 2 only
    double lower = 0.0;
    std::optional<double> empirical_max_modulus;
    std::optional<double> empirical_min_modulus;
};

/// Compute every applicable bound for P_N.  Root moduli are attached
/// separately (attach_root_moduli) by callers that ran the root finder.
inline BoundReport bound_report(const mpz_class& N, Variant variant = Variant::Standard,
                                std::int64_t max_steps = kDefaultMaxSteps) {
    if (N < 2) throw Error("bound_report: N must be >= 2");
    CollatzPolynomial p = build(N, variant, max_steps);
    Trajectory traj = trajectory(N, variant, max_steps);
    BoundReport rep;
    rep.number = N;
    rep.variant = variant;
    rep.degree = p.degree();
    rep.base = traj.base;
    rep.h_proven = h_in_proven_range(traj.base);
    if (variant == Variant::Standard) rep.h_t = h_upper(traj.base);
    else rep.alt_bound = alt_upper(traj.base);
    for (std::int64_t m : {std::int64_t{2}, std::int64_t{3}, std::int64_t{4}, traj.base + 3})
        rep.u_m[m] = kalantari_U(p, m);
    rep.fujiwara_modified = fujiwara(p.coeffs, FujiwaraMode::Modified);
    rep.fujiwara_classical = fujiwara(p.coeffs, FujiwaraMode::Classical);
    if (p.degree() >= 2) rep.sun_hsieh_bound = sun_hsieh(p.coeffs);
    rep.lower = lower_bound(N, variant);
    return rep;
}

inline void attach_root_moduli(BoundReport& rep, double max_modulus, double min_modulus) {
    rep.empirical_max_modulus = max_modulus;
    rep.empirical_min_modulus = min_modulus;
}

/// Check every proven bound against the observed root moduli (1e-9 relative
/// slack above, 1e-9 absolute below).  The fujiwara values are informational
/// and not gated here.  Empty result = all containments hold.
inline std::vector<std::string> containment_violations(const BoundReport& rep) {
    std::vector<std::string> out;
    if (!rep.empirical_max_modulus || !rep.empirical_min_modulus) return out;
    const double mx = *rep.empirical_max_modulus;
    const double mn = *rep.empirical_min_modulus;
    auto check_upper = [&](const char* name, double bound) {
        if (mx > bound * (1.0 + 1e-9))
            out.push_back(std::string(name) + " = " + std::to_string(bound) +
                          " < max root modulus " + std::to_string(mx));
    };
    if (rep.h_t) check_upper("h_t", *rep.h_t);
    if (rep.alt_bound) check_upper("alt_bound", *rep.alt_bound);
    for (const auto& [m, u] : rep.u_m)
        check_upper(("u_" + std::to_string(m)).c_str(), u);
    if (rep.sun_hsieh_bound) check_upper("sun_hsieh", *rep.sun_hsieh_bound);
    if (mn < rep.lower - 1e-9)
        out.push_back("lower = " + std::to_string(rep.lower) + " > min root modulus " +
                      std::to_string(mn));
    return out;
}

}  // namespace collatz
