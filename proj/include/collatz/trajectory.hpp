#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include <gmpxx.h>

#include "collatz/errors.hpp"

namespace collatz {

/// Which accelerated map drives the iteration.
///   Standard:    odd x -> (3x+1)/2, even x -> x/2
///   Alternative: odd x -> 3x+1,     even x -> x/2
enum class Variant { Standard, Alternative };

inline constexpr std::int64_t kDefaultMaxSteps = 1'000'000;

/// One maximal halving run ending at an odd value: 2^(length-1)*odd_value, ..., 2*odd_value, odd_value.
struct Segment {
    mpz_class odd_value;
    std::int64_t length = 0;

    bool operator==(const Segment&) const = default;
};

/// The full iterate list N, c(N), ..., 1 together with its summary statistics.
struct Trajectory {
    mpz_class start;
    Variant variant = Variant::Standard;
    std::vector<mpz_class> iterates;      // [N, ..., 1], ascending index = iteration count
    std::int64_t total_stopping_time = 0; // n: number of steps to reach 1
    std::int64_t base = 0;                // t: log2 of the first iterate that is a power of two
    std::int64_t odd_count = 0;           // m: odd iterates, the final 1 included
    std::vector<Segment> segments;        // standard variant only; empty otherwise
};

inline bool is_power_of_two(const mpz_class& x) {
    return x > 0 && mpz_popcount(x.get_mpz_t()) == 1;
}

inline bool is_odd(const mpz_class& x) {
    return mpz_odd_p(x.get_mpz_t()) != 0;
}

/// floor(log2 x) for x >= 1; exact exponent when x is a power of two.
inline std::int64_t floor_log2(const mpz_class& x) {
    return static_cast<std::int64_t>(mpz_sizeinbase(x.get_mpz_t(), 2)) - 1;
}

/// One application of the chosen map to x >= 1.
template <typename Int>
inline Int step(const Int& x, Variant variant) {
    if (x % 2 != 0) {
        Int y = 3 * x + 1;
        return variant == Variant::Standard ? Int(y / 2) : y;
    }
    return Int(x / 2);
}

/// Iterate N down to 1 and record everything.  Throws BudgetExceeded if 1 is
/// not reached within max_steps applications.
inline Trajectory trajectory(const mpz_class& N, Variant variant = Variant::Standard,
                             std::int64_t max_steps = kDefaultMaxSteps) {
    if (N < 1) throw Error("trajectory: N must be >= 1");
    Trajectory traj;
    traj.start = N;
    traj.variant = variant;
    traj.iterates.push_back(N);

    mpz_class x = N;
    std::int64_t steps = 0;
    while (x != 1) {
        if (steps >= max_steps)
            throw BudgetExceeded("trajectory: step budget " + std::to_string(max_steps) +
                                 " exhausted starting from " + N.get_str());
        x = step(x, variant);
        traj.iterates.push_back(x);
        ++steps;
    }
    traj.total_stopping_time = steps;

    traj.base = 0;
    for (const mpz_class& v : traj.iterates) {
        if (is_power_of_two(v)) {
            traj.base = floor_log2(v);
            break;
        }
    }

    for (const mpz_class& v : traj.iterates)
        if (is_odd(v)) ++traj.odd_count;

    if (variant == Variant::Standard) {
        // Every segment ends at an odd iterate; consecutive evens are exact halvings.
        std::int64_t run = 0;
        for (const mpz_class& v : traj.iterates) {
            ++run;
            if (is_odd(v)) {
                traj.segments.push_back(Segment{v, run});
                run = 0;
            }
        }
    }
    return traj;
}

/// t: log2 of the first power of two among the iterates (N itself counts).
inline std::int64_t base_of(const Trajectory& traj) { return traj.base; }

/// The halving-run decomposition; defined for the standard variant only.
inline const std::vector<Segment>& segments_of(const Trajectory& traj) {
    if (traj.variant != Variant::Standard)
        throw VariantUnsupported("segments_of: defined for the standard variant only");
    return traj.segments;
}

/// The unique odd x with step(x, Standard) == N, when it exists
/// (exactly when N == 2 mod 3; the value (2N-1)/3 is then automatically odd).
inline std::optional<mpz_class> odd_preimage(const mpz_class& N) {
    if (N % 3 != 2) return std::nullopt;
    return mpz_class((2 * N - 1) / 3);
}

}  // namespace collatz
