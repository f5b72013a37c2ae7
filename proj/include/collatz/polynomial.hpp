#pragma once

#include <cmath>
#include <complex>
#include <cstdint>
#include <vector>

#include <gmpxx.h>

#include "collatz/errors.hpp"
#include "collatz/trajectory.hpp"

namespace collatz {

/// Monic integer polynomial whose ascending coefficients are the iterates of N:
/// P_N(z) = sum_k c^k(N) z^k, degree = total stopping time.
struct CollatzPolynomial {
    mpz_class number;
    Variant variant = Variant::Standard;
    std::vector<mpz_class> coeffs;  // ascending: a_0 = N, ..., a_n = 1

    std::int64_t degree() const { return static_cast<std::int64_t>(coeffs.size()) - 1; }
};

/// Construct P_N from the trajectory of N.
inline CollatzPolynomial build(const mpz_class& N, Variant variant = Variant::Standard,
                               std::int64_t max_steps = kDefaultMaxSteps) {
    Trajectory traj = trajectory(N, variant, max_steps);
    return CollatzPolynomial{N, variant, std::move(traj.iterates)};
}

/// Exact Horner evaluation at an arbitrary integer point.
inline mpz_class evaluate_exact(const CollatzPolynomial& p, const mpz_class& x) {
    mpz_class acc = 0;
    for (auto it = p.coeffs.rbegin(); it != p.coeffs.rend(); ++it) acc = acc * x + *it;
    return acc;
}

namespace detail {

inline long double to_long_double(const mpz_class& x) {
    long e = 0;
    double d = mpz_get_d_2exp(&e, x.get_mpz_t());
    return std::ldexp(static_cast<long double>(d), static_cast<int>(e));
}

}  // namespace detail

/// Horner evaluation with extended-precision accumulation, so the result is
/// faithful at double precision even for large degrees and coefficients.
inline std::complex<double> evaluate_complex(const CollatzPolynomial& p, std::complex<double> z) {
    std::complex<long double> zl(z.real(), z.imag());
    std::complex<long double> acc = 0.0L;
    for (auto it = p.coeffs.rbegin(); it != p.coeffs.rend(); ++it)
        acc = acc * zl + detail::to_long_double(*it);
    return {static_cast<double>(acc.real()), static_cast<double>(acc.imag())};
}

/// Evaluate P_N through its halving-run decomposition:
///   P_N(z) = sum_k 2^(l_k) N_k z^(l_1+...+l_(k-1)) * (1/2) * sum_{j<l_k} (z/2)^j.
/// The inner geometric sum keeps z = 2 perfectly regular.  Standard variant only.
inline std::complex<double> segment_evaluate(const Trajectory& traj, std::complex<double> z) {
    const std::vector<Segment>& segs = segments_of(traj);
    const std::complex<long double> w(z.real() / 2.0L, z.imag() / 2.0L);
    std::complex<long double> total = 0.0L;
    std::complex<long double> prefix = 1.0L;  // z^(sum of preceding lengths)
    for (const Segment& s : segs) {
        std::complex<long double> gsum = 1.0L;  // sum_{j=0}^{l-1} w^j
        std::complex<long double> wpow = 1.0L;
        for (std::int64_t j = 1; j < s.length; ++j) {
            wpow *= w;
            gsum += wpow;
        }
        // 2^l * N_k
        long double lead = std::ldexp(detail::to_long_double(s.odd_value),
                                      static_cast<int>(s.length));
        total += 0.5L * lead * prefix * gsum;
        prefix *= std::ldexp(1.0L, static_cast<int>(s.length)) * wpow * w;  // z^l = 2^l w^l
    }
    return {static_cast<double>(total.real()), static_cast<double>(total.imag())};
}

/// Coefficients of z^n * p(1/z) (the coefficient list reversed).
inline std::vector<mpz_class> reciprocal(const CollatzPolynomial& p) {
    if (p.degree() < 1) throw DegreeTooSmall("reciprocal: degree must be >= 1");
    return std::vector<mpz_class>(p.coeffs.rbegin(), p.coeffs.rend());
}

}  // namespace collatz
