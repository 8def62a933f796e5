#pragma once

// Shared error taxonomy, exact arithmetic aliases and seeded RNG helpers
// used across the library.

#include <boost/multiprecision/cpp_int.hpp>
#include <cstdint>
#include <random>
#include <stdexcept>
#include <string>

namespace rmtest {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

// All randomized operations take an explicit engine; mt19937_64 has a
// fully specified output sequence, so seeded runs reproduce bit-exactly
// across platforms.
using Rng = std::mt19937_64;

// A caller passed an argument outside an operation's contract.
struct ParameterError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

// An exact computation would exceed its configured budget.
struct ResourceError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// An internal invariant that should be unconditionally true failed.
struct InvariantError : std::logic_error {
    using std::logic_error::logic_error;
};

// Input data contradicts a hypothesis it claimed to satisfy
// (e.g. sewing witnesses whose local polynomials disagree).
struct InconsistencyError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Work budgets for the exact paths.  Defaults keep everything desk-scale;
// every field can be overridden per call site or via the CLI --budget flag.
struct Budgets {
    std::uint64_t flats = std::uint64_t(1) << 28;       // max flats enumerated
    int dim = 28;                                       // max log2(#codewords) for exact delta
    std::uint64_t table_bits = std::uint64_t(1) << 26;  // max truth-table size
    std::uint64_t tuples = std::uint64_t(1) << 26;      // max direction tuples for exact Gowers sums
};

// Renders an exact rational as "num/den" (always with the denominator,
// so a zero probability prints as "0/1").  Used for goldens and CSV/JSON.
inline std::string rat_str(const Rational& r) {
    return numerator(r).str() + "/" + denominator(r).str();
}

// Uniform word, and uniform value in [0, 2^nbits).
inline std::uint64_t rand_u64(Rng& rng) { return rng(); }

inline std::uint64_t rand_bits(Rng& rng, int nbits) {
    if (nbits == 0) return 0;
    if (nbits >= 64) return rng();
    return rng() & ((std::uint64_t(1) << nbits) - 1);
}

// Unbiased uniform value in [0, m) by masked rejection.  Avoids
// std::uniform_int_distribution, whose output sequence is not pinned by
// the standard.
inline std::uint64_t rand_below(Rng& rng, std::uint64_t m) {
    if (m == 0) throw ParameterError("rand_below: empty range");
    if ((m & (m - 1)) == 0) return rng() & (m - 1);
    int bits = 64 - __builtin_clzll(m);
    std::uint64_t mask = (bits >= 64) ? ~std::uint64_t(0) : ((std::uint64_t(1) << bits) - 1);
    for (;;) {
        std::uint64_t v = rng() & mask;
        if (v < m) return v;
    }
}

}  // namespace rmtest
