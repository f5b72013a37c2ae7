// Acceptance gate: nine go/no-go checks, one line of output each.
// Run with no arguments to execute all nine, or `--criterion k` for one.
#include <algorithm>
#include <chrono>
#include <cmath>
#include <complex>
#include <cstdint>
#include <cstdlib>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "collatz/collatz.hpp"

namespace {

using collatz::Variant;

struct Outcome {
    bool pass = false;
    std::string detail;
};

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
    return std::chrono::duration<double>(Clock::now() - t0).count();
}

std::string fmt(double v, int digits = 6) {
    std::ostringstream os;
    os.precision(digits);
    os << v;
    return os.str();
}

collatz::CollatzPolynomial from_trajectory(const collatz::Trajectory& traj) {
    collatz::CollatzPolynomial p;
    p.number = traj.start;
    p.variant = traj.variant;
    p.coeffs = traj.iterates;
    return p;
}

// ---------------------------------------------------------------- criterion 1
Outcome criterion_h_table() {
    auto t0 = Clock::now();
    const double h3 = collatz::h_upper(3);
    const double h10 = collatz::h_upper(10);
    const double h1e3 = collatz::h_upper(1000);
    const double h1e5 = collatz::h_upper(100000);
    const double h1e7 = collatz::h_upper(10000000);
    const double elapsed = seconds_since(t0);

    bool ok = true;
    std::string note;
    const struct { double got, shown; } rows4[] = {
        {h3, 3.1498}, {h10, 2.5185}, {h1e3, 2.0122}, {h1e5, 2.0002}};
    for (const auto& r : rows4)
        if (std::abs(r.got - r.shown) > 5e-5) {
            ok = false;
            note += " four-decimal row off: " + fmt(r.got, 17);
        }
    // The final displayed value 2.000002 is a truncation at six decimals of
    // h(10^7) = 2.0000028732...; check the truncation window plus the pinned
    // high-precision value rather than a rounded-display tolerance.
    if (!(h1e7 >= 2.000002 && h1e7 < 2.000003)) {
        ok = false;
        note += " h(10^7) outside [2.000002, 2.000003): " + fmt(h1e7, 17);
    }
    if (std::abs(h1e7 - 2.0000028732208964889) > 1e-9) {
        ok = false;
        note += " h(10^7) drifted from pinned value: " + fmt(h1e7, 17);
    }
    if (elapsed >= 1.0) {
        ok = false;
        note += " too slow";
    }
    return {ok, "h(3)=" + fmt(h3, 8) + " h(10)=" + fmt(h10, 8) + " h(10^3)=" +
                    fmt(h1e3, 8) + " h(10^5)=" + fmt(h1e5, 8) + " h(10^7)=" +
                    fmt(h1e7, 8) + " in " + fmt(elapsed * 1e3, 3) + " ms" + note};
}

// ---------------------------------------------------------------- criterion 2
Outcome criterion_standard_sweep() {
    auto t0 = Clock::now();
    std::int64_t violations = 0, unconverged = 0, max_degree = 0;
    double worst_upper_gap = 1e300, worst_lower_gap = 1e300;
    std::string first;
    for (std::int64_t N = 2; N <= 5000; ++N) {
        collatz::Trajectory traj = collatz::trajectory(N);
        collatz::CollatzPolynomial p = from_trajectory(traj);
        max_degree = std::max(max_degree, p.degree());
        collatz::RootSet rs = collatz::find_roots(p);
        if (!rs.converged) {
            ++unconverged;
            if (first.empty()) first = " first: N=" + std::to_string(N) + " not converged";
            continue;
        }
        const double h = collatz::h_upper(traj.base);
        const double u = collatz::kalantari_U(p, traj.base + 3) * (1.0 + 1e-9);
        const double lo = collatz::lower_bound(mpz_class(N)) - 1e-9;
        double cap = std::min(h, u);
        if (p.degree() >= 2) cap = std::min(cap, collatz::sun_hsieh(p.coeffs));
        worst_upper_gap = std::min(worst_upper_gap, cap - rs.max_modulus);
        worst_lower_gap = std::min(worst_lower_gap, rs.min_modulus - lo);
        if (rs.max_modulus > cap || rs.min_modulus < lo) {
            ++violations;
            if (first.empty())
                first = " first: N=" + std::to_string(N) + " max=" + fmt(rs.max_modulus, 17) +
                        " cap=" + fmt(cap, 17) + " min=" + fmt(rs.min_modulus, 17) +
                        " floor=" + fmt(lo, 17);
        }
    }
    const bool ok = violations == 0 && unconverged == 0;
    return {ok, "4999 polynomials, max degree " + std::to_string(max_degree) +
                    ", tightest upper slack " + fmt(worst_upper_gap, 6) +
                    ", tightest lower slack " + fmt(worst_lower_gap, 6) + ", " +
                    std::to_string(violations) + " violations, " +
                    std::to_string(unconverged) + " convergence failures, " +
                    fmt(seconds_since(t0), 4) + " s" + first};
}

// ---------------------------------------------------------------- criterion 3
Outcome criterion_alternative_sweep() {
    auto t0 = Clock::now();
    std::int64_t violations = 0, unconverged = 0, max_degree = 0;
    double largest = 0.0, worst_lower_gap = 1e300;
    std::string first;
    for (std::int64_t N = 2; N <= 5000; ++N) {
        collatz::CollatzPolynomial p = collatz::build(N, Variant::Alternative);
        max_degree = std::max(max_degree, p.degree());
        collatz::RootSet rs = collatz::find_roots(p);
        if (!rs.converged) {
            ++unconverged;
            if (first.empty()) first = " first: N=" + std::to_string(N) + " not converged";
            continue;
        }
        const double lo = collatz::lower_bound(mpz_class(N), Variant::Alternative) - 1e-9;
        largest = std::max(largest, rs.max_modulus);
        worst_lower_gap = std::min(worst_lower_gap, rs.min_modulus - lo);
        if (rs.max_modulus > collatz::kAlternativeModulusCap || rs.min_modulus < lo) {
            ++violations;
            if (first.empty())
                first = " first: N=" + std::to_string(N) + " max=" + fmt(rs.max_modulus, 17) +
                        " min=" + fmt(rs.min_modulus, 17);
        }
    }
    const bool ok = violations == 0 && unconverged == 0;
    return {ok, "4999 polynomials, max degree " + std::to_string(max_degree) +
                    ", largest modulus " + fmt(largest, 10) + " vs cap " +
                    fmt(collatz::kAlternativeModulusCap, 18) + ", tightest lower slack " +
                    fmt(worst_lower_gap, 6) + ", " + std::to_string(violations) +
                    " violations, " + std::to_string(unconverged) + " convergence failures, " +
                    fmt(seconds_since(t0), 4) + " s" + first};
}

// ---------------------------------------------------------------- criterion 4
Outcome criterion_cubic_dominates() {
    auto t0 = Clock::now();
    const double h3 = collatz::h_upper(3);
    std::int64_t violations = 0;
    double smallest = 1e300;
    std::int64_t arg_smallest = 0;
    for (std::int64_t N = 3; N <= 2000; ++N) {
        const double s = collatz::sun_hsieh(collatz::build(N).coeffs);
        if (s < smallest) {
            smallest = s;
            arg_smallest = N;
        }
        if (!(s > h3)) ++violations;
    }
    return {violations == 0, "min 1+d = " + fmt(smallest, 12) + " at N=" +
                                 std::to_string(arg_smallest) + " vs h(3) = " + fmt(h3, 12) +
                                 ", " + std::to_string(violations) + " violations, " +
                                 fmt(seconds_since(t0), 4) + " s"};
}

// ---------------------------------------------------------------- criterion 5
Outcome criterion_even_witness() {
    auto t0 = Clock::now();
    const bool seed_ok =
        collatz::evaluate_exact(collatz::build(820569), mpz_class(-1)) == 0;
    collatz::SearchResult sr =
        collatz::search(2, 7000000, collatz::SearchPredicate::EvenWithMinusOneRoot, 4);
    const bool first_ok = !sr.hits.empty() && sr.hits.front() == 6094358;
    const bool follow_ok =
        collatz::evaluate_exact(collatz::build(46507804), mpz_class(-1)) == 0;
    const bool ok = seed_ok && first_ok && follow_ok && sr.skipped.empty();
    std::string hits = "{";
    for (std::size_t i = 0; i < sr.hits.size(); ++i)
        hits += (i ? ", " : "") + std::to_string(sr.hits[i]);
    hits += "}";
    return {ok, "P_820569(-1)=0: " + std::string(seed_ok ? "yes" : "NO") +
                    ", even hits in [2, 7e6]: " + hits + ", P_46507804(-1)=0: " +
                    std::string(follow_ok ? "yes" : "NO") + ", " +
                    std::to_string(sr.skipped.size()) + " skipped, " +
                    fmt(seconds_since(t0), 4) + " s"};
}

// ---------------------------------------------------------------- criterion 6
Outcome criterion_integer_root_suites() {
    auto t0 = Clock::now();
    std::int64_t equiv_viol = 0, parity_viol = 0, powbnd_viol = 0;
    for (std::int64_t N = 2; N <= 100000; ++N) {
        collatz::Trajectory traj = collatz::trajectory(N);
        collatz::CollatzPolynomial p = from_trajectory(traj);
        const bool minus_two = collatz::evaluate_exact(p, mpz_class(-2)) == 0;
        bool all_even = true;
        for (const collatz::Segment& s : traj.segments)
            if (s.length % 2 != 0) { all_even = false; break; }
        if (minus_two != all_even) ++equiv_viol;
        if (collatz::evaluate_exact(p, mpz_class(-1)) == 0 && traj.odd_count % 2 != 0)
            ++parity_viol;
        mpz_class pw = mpz_class(1) << static_cast<unsigned long>(p.degree());
        for (const mpz_class& it : traj.iterates) {
            if (it > pw) { ++powbnd_viol; break; }
            pw >>= 1;
        }
    }
    std::int64_t nonreal_viol = 0, unconverged = 0;
    for (std::int64_t N = 3; N <= 2000; ++N) {
        collatz::RootSet rs = collatz::find_roots(collatz::build(N));
        if (!rs.converged) ++unconverged;
        else if (!collatz::has_nonreal_root(rs)) ++nonreal_viol;
    }
    const bool ok = equiv_viol == 0 && parity_viol == 0 && powbnd_viol == 0 &&
                    nonreal_viol == 0 && unconverged == 0;
    return {ok, "N <= 1e5: equivalence " + std::to_string(equiv_viol) + ", parity " +
                    std::to_string(parity_viol) + ", coefficient bound " +
                    std::to_string(powbnd_viol) + "; non-real root check to 2000: " +
                    std::to_string(nonreal_viol) + " violations, " +
                    std::to_string(unconverged) + " convergence failures, " +
                    fmt(seconds_since(t0), 4) + " s"};
}

// ---------------------------------------------------------------- criterion 7
Outcome criterion_segment_identity() {
    auto t0 = Clock::now();
    std::mt19937_64 rng(1618033988);
    std::uniform_real_distribution<double> unif(0.0, 1.0);
    double worst = 0.0;
    std::int64_t worst_n = 0;
    for (std::int64_t N = 2; N <= 1000; ++N) {
        collatz::Trajectory traj = collatz::trajectory(N);
        collatz::CollatzPolynomial p = from_trajectory(traj);
        for (int i = 0; i < 20; ++i) {
            const double r = 3.0 * std::sqrt(unif(rng));
            const double th = 2.0 * M_PI * unif(rng);
            const std::complex<double> z = std::polar(r, th);
            const std::complex<double> a = collatz::segment_evaluate(traj, z);
            const std::complex<double> b = collatz::evaluate_complex(p, z);
            const double scale = std::max({std::abs(a), std::abs(b), 1e-300});
            const double dev = std::abs(a - b) / scale;
            if (dev > worst) {
                worst = dev;
                worst_n = N;
            }
        }
    }
    return {worst <= 1e-10, "20 samples per N over [2, 1000] (seed 1618033988), worst "
                            "relative deviation " +
                                fmt(worst, 6) + " at N=" + std::to_string(worst_n) +
                                " (tolerance 1e-10), " + fmt(seconds_since(t0), 4) + " s"};
}

// ---------------------------------------------------------------- criterion 8
Outcome criterion_oracle_equivalences() {
    auto t0 = Clock::now();
    std::string note;

    const double golden = (std::sqrt(5.0) - 1.0) / 2.0;
    const double r3 = collatz::solve_r_m(3).value;
    bool ok = std::abs(r3 - golden) <= 1e-12;
    if (!ok) note += " r_3 off: " + fmt(r3, 17);

    std::mt19937_64 rng(24601);
    std::uniform_int_distribution<int> coef(-50, 50);
    int quad_done = 0;
    double worst_quad = 0.0;
    while (quad_done < 100) {
        const int b = coef(rng), c = coef(rng);
        if (b * b == 4 * c) continue;  // repeated root: no stable closed form target
        ++quad_done;
        collatz::CollatzPolynomial p;
        p.number = 0;
        p.coeffs = {mpz_class(c), mpz_class(b), mpz_class(1)};
        collatz::RootSet rs = collatz::find_roots(p);
        const std::complex<double> disc =
            std::sqrt(std::complex<double>(double(b) * b - 4.0 * c, 0.0));
        std::vector<std::complex<double>> expect = {(-double(b) - disc) / 2.0,
                                                    (-double(b) + disc) / 2.0};
        std::sort(expect.begin(), expect.end(),
                  [](const std::complex<double>& x, const std::complex<double>& y) {
                      const double mx = std::abs(x), my = std::abs(y);
                      if (mx != my) return mx < my;
                      return std::arg(x) < std::arg(y);
                  });
        for (int i = 0; i < 2; ++i) {
            const double dev = std::abs(rs.roots[i] - expect[i]) /
                               std::max(1.0, std::abs(expect[i]));
            worst_quad = std::max(worst_quad, dev);
        }
        if (!rs.converged) {
            ok = false;
            note += " quadratic not converged";
        }
    }
    if (worst_quad > 1e-9) {
        ok = false;
        note += " quadratic deviation " + fmt(worst_quad, 6);
    }

    // cofactor-expansion determinant oracle, exact integers throughout
    std::function<mpz_class(const collatz::IntMatrix&, std::vector<int>&)> cof =
        [&](const collatz::IntMatrix& m, std::vector<int>& cols) -> mpz_class {
        const std::int64_t row = m.size - static_cast<std::int64_t>(cols.size());
        if (cols.size() == 1) return m.at(row, cols[0]);
        mpz_class acc = 0;
        for (std::size_t i = 0; i < cols.size(); ++i) {
            std::vector<int> rest;
            for (std::size_t j = 0; j < cols.size(); ++j)
                if (j != i) rest.push_back(cols[j]);
            mpz_class term = m.at(row, cols[i]) * cof(m, rest);
            if (i % 2 == 0) acc += term;
            else acc -= term;
        }
        return acc;
    };
    std::mt19937_64 rng2(8675309);
    std::uniform_int_distribution<int> entry(-9, 9);
    int det_mismatches = 0;
    for (int t = 0; t < 100; ++t) {
        collatz::IntMatrix m(5);
        for (mpz_class& v : m.a) v = entry(rng2);
        std::vector<int> cols = {0, 1, 2, 3, 4};
        if (collatz::det_exact(m) != cof(m, cols)) ++det_mismatches;
    }
    if (det_mismatches != 0) {
        ok = false;
        note += " determinant mismatches: " + std::to_string(det_mismatches);
    }
    return {ok, "r_3 - (sqrt(5)-1)/2 = " + fmt(r3 - golden, 3) +
                    ", worst quadratic deviation " + fmt(worst_quad, 6) + " over 100 cases, " +
                    std::to_string(det_mismatches) + "/100 determinant mismatches, " +
                    fmt(seconds_since(t0), 4) + " s" + note};
}

// ---------------------------------------------------------------- criterion 9
Outcome criterion_determinantal_behavior() {
    auto t0 = Clock::now();
    collatz::CollatzPolynomial p5 = collatz::build(5);
    collatz::RootSet rs = collatz::find_roots(p5);
    const double rho = rs.max_modulus;
    double umin = 1e300;
    std::int64_t arg_min = 0, below = 0;
    for (std::int64_t m = 2; m <= 50; ++m) {
        const double u = collatz::kalantari_U(p5, m);
        if (u < rho) ++below;
        if (u < umin) {
            umin = u;
            arg_min = m;
        }
    }
    const bool ok = rs.converged && below == 0 && umin <= 1.05 * rho;
    return {ok, "rho = " + fmt(rho, 12) + ", min U_m = " + fmt(umin, 12) + " at m=" +
                    std::to_string(arg_min) + ", ratio " + fmt(umin / rho, 8) +
                    " (need <= 1.05), " + std::to_string(below) +
                    " values below rho, " + fmt(seconds_since(t0), 4) + " s"};
}

struct Criterion {
    const char* name;
    Outcome (*run)();
};

const Criterion kCriteria[] = {
    {"h-table values", criterion_h_table},
    {"standard containment sweep", criterion_standard_sweep},
    {"alternative containment sweep", criterion_alternative_sweep},
    {"cubic bound dominates h(3)", criterion_cubic_dominates},
    {"even witness search", criterion_even_witness},
    {"integer-root suites", criterion_integer_root_suites},
    {"segment evaluation identity", criterion_segment_identity},
    {"oracle equivalences", criterion_oracle_equivalences},
    {"determinantal bound behavior", criterion_determinantal_behavior},
};

}  // namespace

int main(int argc, char** argv) {
    int only = 0;
    for (int i = 1; i < argc; ++i) {
        std::string arg = argv[i];
        if (arg == "--criterion" && i + 1 < argc) {
            only = std::atoi(argv[++i]);
        } else if (arg.rfind("--criterion=", 0) == 0) {
            only = std::atoi(arg.c_str() + 12);
        } else {
            std::cerr << "usage: acceptance [--criterion k]\n";
            return 2;
        }
    }
    if (only < 0 || only > 9) {
        std::cerr << "criterion must be between 1 and 9\n";
        return 2;
    }
    bool all_pass = true;
    for (int k = 1; k <= 9; ++k) {
        if (only != 0 && k != only) continue;
        Outcome out;
        try {
            out = kCriteria[k - 1].run();
        } catch (const std::exception& e) {
            out = {false, std::string("exception: ") + e.what()};
        }
        std::cout << (out.pass ? "[PASS]" : "[FAIL]") << " criterion " << k << " ("
                  << kCriteria[k - 1].name << "): " << out.detail << std::endl;
        if (!out.pass) all_pass = false;
    }
    return all_pass ? 0 : 1;
}
