#pragma once

#include <algorithm>
#include <atomic>
#include <cstdint>
#include <functional>
#include <optional>
#include <thread>
#include <vector>

#include <gmpxx.h>

#include "collatz/errors.hpp"
#include "collatz/polynomial.hpp"
#include "collatz/trajectory.hpp"

namespace collatz {

/// Exact structural facts about P_N tied to its integer roots.
struct IntegerRootFlags {
    mpz_class number;
    bool root_at_minus_one = false;  // P_N(-1) == 0
    bool root_at_minus_two = false;  // P_N(-2) == 0
    std::int64_t odd_count = 0;      // odd iterates, final 1 included
    bool all_segments_even = false;  // every segment length even
    bool is_preimage_of_power_of_two = false;  // N odd, N > 1, c(N) a power of two
};

inline IntegerRootFlags integer_root_flags(const mpz_class& N,
                                           std::int64_t max_steps = kDefaultMaxSteps) {
    Trajectory traj = trajectory(N, Variant::Standard, max_steps);
    CollatzPolynomial p;
    p.number = N;
    p.variant = Variant::Standard;
    p.coeffs = traj.iterates;

    IntegerRootFlags f;
    f.number = N;
    f.root_at_minus_one = evaluate_exact(p, mpz_class(-1)) == 0;
    f.root_at_minus_two = evaluate_exact(p, mpz_class(-2)) == 0;
    f.odd_count = traj.odd_count;
    f.all_segments_even = true;
    for (const Segment& s : traj.segments)
        if (s.length % 2 != 0) { f.all_segments_even = false; break; }
    if (N > 1 && is_odd(N)) {
        mpz_class next = step(N, Variant::Standard);
        f.is_preimage_of_power_of_two = is_power_of_two(next);
    }
    return f;
}

/// The preimage value N(t) = (2^(t+1) - 1)/3 for odd t >= 3 (the degenerate
/// power-of-two case t < 3 is excluded).
inline mpz_class negoneroot_candidate(std::int64_t t) {
    if (t < 3 || t % 2 == 0)
        throw InvalidT("negoneroot_candidate: t must be odd and >= 3");
    return ((mpz_class(1) << static_cast<unsigned long>(t + 1)) - 1) / 3;
}

/// True iff P_N(-1) == 0 exactly for N = (2^(t+1) - 1)/3; the claim under
/// test is that this holds for every odd t >= 3.
inline bool verify_negoneroot(std::int64_t t, std::int64_t max_steps = kDefaultMaxSteps) {
    mpz_class N = negoneroot_candidate(t);
    CollatzPolynomial p = build(N, Variant::Standard, max_steps);
    return evaluate_exact(p, mpz_class(-1)) == 0;
}

/// Claim under test: if the odd preimage M = (2N-1)/3 of N satisfies
/// P_M(-1) == 0, then the odd preimage of 4N does too.  Throws NoOddPreimage
/// when N has no odd preimage (N mod 3 != 2) and PremiseFailed when
/// P_M(-1) != 0; otherwise returns whether the conclusion holds exactly.
inline bool verify_fourn(const mpz_class& N, std::int64_t max_steps = kDefaultMaxSteps) {
    std::optional<mpz_class> M = odd_preimage(N);
    if (!M) throw NoOddPreimage("verify_fourn: N has no odd preimage (N mod 3 != 2)");
    CollatzPolynomial p = build(*M, Variant::Standard, max_steps);
    if (evaluate_exact(p, mpz_class(-1)) != 0)
        throw PremiseFailed("verify_fourn: P at the odd preimage of N has no root -1");
    std::optional<mpz_class> M4 = odd_preimage(4 * N);
    if (!M4) throw NoOddPreimage("verify_fourn: 4N has no odd preimage");
    CollatzPolynomial q = build(*M4, Variant::Standard, max_steps);
    return evaluate_exact(q, mpz_class(-1)) == 0;
}

enum class SearchPredicate {
    MinusOneRoot,          // P_N(-1) == 0
    MinusTwoRoot,          // P_N(-2) == 0
    EvenWithMinusOneRoot,  // N even and P_N(-1) == 0
};

struct SearchResult {
    std::vector<std::uint64_t> hits;    // ascending
    std::vector<std::uint64_t> skipped; // budget-exceeded starts, ascending
    std::uint64_t scanned = 0;
};

namespace detail {

/// P_N(-1) as the alternating sum of iterates, computed on 64-bit values with
/// an __int128 accumulator and a peak guard.  Falls back (returns nullopt)
/// when an iterate could leave the guarded range.
inline std::optional<bool> alternating_sum_is_zero_fast(std::uint64_t N,
                                                        std::int64_t max_steps) {
    constexpr std::uint64_t guard = (std::uint64_t{1} << 62);
    unsigned __int128 x = N;
    __int128 sum = 0;
    int sign = 1;
    std::int64_t steps = 0;
    while (true) {
        sum += sign * static_cast<__int128>(x);
        sign = -sign;
        if ((x & (x - 1)) == 0) {  // power of two: the rest alternates down to 1
            while (x > 1) {
                x >>= 1;
                sum += sign * static_cast<__int128>(x);
                sign = -sign;
            }
            return sum == 0;
        }
        if (++steps > max_steps) throw BudgetExceeded("trajectory exceeded max_steps");
        if (x & 1) {
            if (x > guard) return std::nullopt;  // 3x+1 could overflow the guard
            x = (3 * x + 1) >> 1;
        } else {
            x >>= 1;
        }
    }
}

inline bool predicate_holds(std::uint64_t N, SearchPredicate pred, std::int64_t max_steps) {
    if (pred == SearchPredicate::EvenWithMinusOneRoot && (N % 2) != 0) return false;
    if (pred == SearchPredicate::MinusTwoRoot) {
        CollatzPolynomial p = build(mpz_class(static_cast<unsigned long>(N)),
                                    Variant::Standard, max_steps);
        return evaluate_exact(p, mpz_class(-2)) == 0;
    }
    std::optional<bool> fast = alternating_sum_is_zero_fast(N, max_steps);
    if (fast) return *fast;
    CollatzPolynomial p = build(mpz_class(static_cast<unsigned long>(N)),
                                Variant::Standard, max_steps);
    return evaluate_exact(p, mpz_class(-1)) == 0;
}

}  // namespace detail

/// Scan [lo, hi] for numbers whose standard polynomial passes the predicate.
/// Work is handed out in fixed chunks so the hit order (and every hit
/// callback) is identical for any worker count.  Hits are re-verified with
/// the full exact polynomial before being reported.  Numbers whose
/// trajectory exceeds max_steps are recorded in `skipped`, never guessed.
inline SearchResult search(std::uint64_t lo, std::uint64_t hi, SearchPredicate pred,
                           std::int64_t workers = 1,
                           std::int64_t max_steps = kDefaultMaxSteps,
                           const std::function<void(std::uint64_t)>& on_hit = {}) {
    if (lo < 1) throw Error("search: range must start at 1 or above");
    if (hi < lo) throw Error("search: empty range (hi < lo)");
    if (workers < 1) throw Error("search: workers must be >= 1");

    constexpr std::uint64_t chunk_size = std::uint64_t{1} << 15;
    const std::uint64_t total = hi - lo + 1;
    const std::uint64_t chunks = (total + chunk_size - 1) / chunk_size;

    struct ChunkOut {
        std::vector<std::uint64_t> hits;
        std::vector<std::uint64_t> skipped;
    };
    std::vector<ChunkOut> results(static_cast<std::size_t>(chunks));
    std::atomic<std::uint64_t> next_chunk{0};

    auto run = [&]() {
        while (true) {
            std::uint64_t c = next_chunk.fetch_add(1);
            if (c >= chunks) break;
            std::uint64_t begin = lo + c * chunk_size;
            std::uint64_t end = std::min(hi, begin + chunk_size - 1);
            ChunkOut& out = results[static_cast<std::size_t>(c)];
            for (std::uint64_t N = begin; N <= end; ++N) {
                try {
                    if (detail::predicate_holds(N, pred, max_steps)) {
                        // confirm with the full exact polynomial
                        CollatzPolynomial p = build(mpz_class(static_cast<unsigned long>(N)),
                                                    Variant::Standard, max_steps);
                        mpz_class at = pred == SearchPredicate::MinusTwoRoot
                                           ? evaluate_exact(p, mpz_class(-2))
                                           : evaluate_exact(p, mpz_class(-1));
                        if (at == 0) out.hits.push_back(N);
                    }
                } catch (const BudgetExceeded&) {
                    out.skipped.push_back(N);
                }
            }
        }
    };

    if (workers == 1) {
        run();
    } else {
        std::vector<std::thread> pool;
        pool.reserve(static_cast<std::size_t>(workers));
        for (std::int64_t w = 0; w < workers; ++w) pool.emplace_back(run);
        for (std::thread& t : pool) t.join();
    }

    SearchResult res;
    res.scanned = total;
    for (const ChunkOut& c : results) {
        for (std::uint64_t h : c.hits) {
            res.hits.push_back(h);
            if (on_hit) on_hit(h);
        }
        res.skipped.insert(res.skipped.end(), c.skipped.begin(), c.skipped.end());
    }
    return res;
}

}  // namespace collatz
