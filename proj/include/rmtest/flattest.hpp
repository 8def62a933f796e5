#pragma once

// The k-flat test T_{d,k}, the Gowers-style derivative test, exact and
// Monte-Carlo rejection probabilities, the amplified and tolerant testing
// wrappers, the dimension-relation checks and the exhaustive small-n
// verification engine.

#include "rmtest/boolfn.hpp"
#include "rmtest/common.hpp"
#include "rmtest/f2.hpp"
#include "rmtest/rmcode.hpp"

#include <optional>
#include <vector>

namespace rmtest {

// Constant bundle behind the main rejection bound.  The defaults are the
// values the source analysis proves to work; eps1 = eps0 * 2^-(c-1).
// An "empirical" bundle may carry measured small-n constants instead, and
// must then be labeled as a measurement wherever it is reported.
struct ThmConstants {
    Rational beta = Rational(1, 25);
    Rational eps0 = Rational(1, 16);
    Rational gamma = 72;
    int c = 10;

    Rational eps1() const { return eps0 / (BigInt(1) << (c - 1)); }
};

struct TestOutcome {
    bool rejected = false;
    Flat flat;  // the sampled flat, kept for audit
};

struct RejEstimate {
    enum class Kind { exact, montecarlo } kind = Kind::exact;
    Rational value;               // exact: (#rejecting flats)/(#flats); mc: rejected/trials
    BigInt rejecting = 0;
    BigInt total = 0;
    std::uint64_t trials = 0;     // montecarlo only
    std::uint64_t seed = 0;       // montecarlo only
};

// One run of T_{d,k}: samples a uniform k-flat and rejects iff the
// restriction has degree above d.  Queries exactly 2^k points.
// Requires d+1 <= k <= n (below d+1 the test loses perfect completeness).
TestOutcome run_flat_test(const BooleanFunction& f, int d, int k, Rng& rng);

// Exact Rej_{d,k}(f) over all k-flats.  Functions of Hamming weight at most
// 4 take a closed-form path (flats counted by how they meet the support);
// everything else enumerates flats.  Both paths are exact and are checked
// against each other in the tests.
RejEstimate rej_exact(const BooleanFunction& f, int d, int k,
                      std::uint64_t flat_budget = Budgets().flats);

namespace detail {
RejEstimate rej_exact_enumerated(const BooleanFunction& f, int d, int k,
                                 std::uint64_t flat_budget);
RejEstimate rej_exact_sparse(const BooleanFunction& f, int d, int k);
}  // namespace detail

// Prebuilt canonical flat list, for exact sweeps that evaluate many
// functions against the same (n, k).
struct FlatList {
    int n = 0;
    int k = 0;
    std::vector<std::uint64_t> rows;   // k entries per flat
    std::vector<std::uint64_t> bases;  // one entry per flat

    std::size_t size() const { return bases.size(); }
};

FlatList build_flat_list(int n, int k, std::uint64_t budget = Budgets().flats);

// counts[dd] = number of flats on which the restriction has degree > dd,
// for every dd in [0, k]; Rej_{d,k}(f) = counts[d] / flats.size().
std::vector<std::uint64_t> rejection_counts_by_degree(const BooleanFunction& f,
                                                      const FlatList& flats);

RejEstimate rej_montecarlo(const BooleanFunction& f, int d, int k, std::uint64_t trials,
                           std::uint64_t seed);

// One run of the order-k derivative test: picks x0 and k directions
// uniformly and independently (NOT necessarily linearly independent) and
// rejects iff the 2^k-term derivative sum is 1.
struct GnOutcome {
    bool rejected = false;
    std::uint64_t x0 = 0;
    F2Mat dirs;  // k rows of length n
};

GnOutcome run_gn_test(const BooleanFunction& f, int k, Rng& rng);

// Exact rejection probability of the order-k derivative test over all
// (x0, a_1..a_k) tuples; denominator 2^{n(k+1)}.
RejEstimate rej_gn_exact(const BooleanFunction& f, int k,
                         std::uint64_t tuple_budget = Budgets().tuples);

// Amplified one-sided tester: repeats T_{d,d+1} r = ceil(2 / min{2^d*delta,
// eps1}) times and accepts iff every run accepts.  Accepts codewords with
// probability 1; rejects anything delta-far with probability >= 2/3.
struct AmplifiedVerdict {
    bool accepted = false;
    std::uint64_t repetitions = 0;
    std::uint64_t query_budget = 0;  // repetitions * 2^(d+1)
};

AmplifiedVerdict amplified_test(const BooleanFunction& f, int d, const Rational& delta, Rng& rng,
                                const ThmConstants& constants = ThmConstants());

// Tolerant tester: N = C*2^d single-shot flat tests, accept iff the
// empirical rejection rate is at most t0, the midpoint of the guaranteed
// rates at distance c1*2^-d (union bound 2*c1) and at distance c2*2^-d
// (min{c2, eps1}).  C is sized by Chebyshev for 2/3 confidence.
struct TolerantVerdict {
    bool accepted = false;
    std::uint64_t tests = 0;
    std::uint64_t rejecting = 0;
    Rational threshold;
};

TolerantVerdict tolerant_test(const BooleanFunction& f, int d, Rng& rng, const Rational& c1,
                              const Rational& c2, const ThmConstants& constants = ThmConstants());

// Rej_{d,k}(f) >= 2^l * delta * (1 - (2^l - 1) * delta) for every
// l in [d+1, k], plus the derived form min{1/8, 2^(k-1)*delta} when
// delta <= 2^-(d+2).  All comparisons exact.
struct PwReport {
    Rational delta;
    Rational rej;
    struct Row {
        int l;
        Rational bound;
        bool ok;
    };
    std::vector<Row> rows;
    bool derived_applicable = false;
    Rational derived_bound;
    bool derived_ok = true;
    bool all_ok = true;
};

PwReport check_pw_bound(const BooleanFunction& f, int d, int k,
                        const Budgets& budgets = Budgets());

// Rej_{d,k'}(f) >= Rej_{d,k}(f) * 2^-(k-k'), plus Rej >= 1/2 when n = k+1
// and deg f > d, and Rej >= 2^(k-n) when deg f > d.
struct KtodReport {
    Rational rej_k;
    Rational rej_k2;
    bool ktod_ok = true;
    std::optional<bool> basecase_ok;  // set when n == k+1 and deg f > d
    std::optional<bool> exp_ok;       // set when deg f > d
    bool all_ok = true;
};

KtodReport check_ktod(const BooleanFunction& f, int d, int k, int k2,
                      const Budgets& budgets = Budgets());

// Exhaustive verification over every function on n <= 4 variables:
// perfect completeness for all k in [d+1, n], the main bound
// Rej_{d,d+1} >= min{2^d*delta, eps1}, the pointwise bound of
// check_pw_bound, and the dimension relations of check_ktod.  The distance
// oracle runs when dim(RM(d,n)) <= delta_dim_limit; otherwise the
// delta-based checks are reported as skipped.
struct ExhaustiveDStat {
    int d = 0;
    bool delta_checked = false;
    std::uint64_t functions = 0;
    std::uint64_t t1_violations = 0;
    std::uint64_t completeness_violations = 0;
    std::uint64_t pw_violations = 0;
    std::uint64_t ktod_violations = 0;
    std::uint64_t basecase_violations = 0;
    std::uint64_t exp_violations = 0;
    // min over functions with delta > 0 of Rej_{d,d+1}/min{2^d*delta, eps1};
    // a measurement, not a theorem.
    Rational empirical_min_ratio = -1;
    std::uint64_t empirical_min_function = 0;
};

struct ExhaustiveReport {
    int n = 0;
    std::vector<ExhaustiveDStat> per_d;
    bool all_ok() const;
    std::uint64_t total_violations() const;
};

ExhaustiveReport run_exhaustive_verify(int n, const std::vector<int>& d_list,
                                       const ThmConstants& constants = ThmConstants(),
                                       int delta_dim_limit = 12);

}  // namespace rmtest
