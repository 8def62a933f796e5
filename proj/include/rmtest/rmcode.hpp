#pragma once

// The Reed-Muller code RM(d,n) = { f : F2^n -> F2 | deg(f) <= d }:
// dimension, membership, codeword streaming and the exact distance
// delta_d(f) with a deterministic nearest codeword.

#include "rmtest/boolfn.hpp"
#include "rmtest/common.hpp"

#include <functional>

namespace rmtest {

struct RmCode {
    int d = 0;
    int n = 0;

    RmCode(int d_, int n_);

    // sum_{i<=d} binom(n,i); the code has 2^dim codewords and minimum
    // relative distance 2^-d.
    std::int64_t dim() const;
    Rational min_distance() const { return Rational(1, BigInt(1) << d); }
};

bool contains(const RmCode& code, const BooleanFunction& f);

// Streams all 2^dim codewords exactly once, in lexicographic order of the
// ANF coefficient vector (coefficients supported on masks of popcount <= d,
// masks ordered as integers).
void codewords(const RmCode& code, const std::function<void(const BooleanFunction&)>& fn,
               int dim_budget = Budgets().dim);

struct DeltaResult {
    Rational delta;
    BooleanFunction nearest;  // lexicographically smallest minimizer
};

// Exact distance to RM(d,n) by scanning every codeword with an incremental
// word-parallel inner loop.  Throws ResourceError (suggesting delta_sampled)
// when dim exceeds the budget.
DeltaResult delta_exact(const RmCode& code, const BooleanFunction& f,
                        int dim_budget = Budgets().dim);

// Sampling fallback for dimensions beyond the exact budget: the minimum
// distance to `trials` seeded random codewords (plus the two constants).
// This is an UPPER bound on delta_d(f), never an estimate of it.
DeltaResult delta_sampled(const RmCode& code, const BooleanFunction& f, std::uint64_t trials,
                          std::uint64_t seed);

// delta_exact of f restricted to the flat, against RM(d, a.k), together
// with the minimizer (a polynomial on the flat's k coordinates).
DeltaResult nearest_on_flat(const BooleanFunction& f, const Flat& a, int d,
                            int dim_budget = Budgets().dim);

}  // namespace rmtest
