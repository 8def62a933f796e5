#pragma once

// Truth-table Boolean functions over F2^n: algebraic normal form, degree,
// distance, restriction to flats, affine composition, XOR powers and the
// elementary symmetric polynomials.
//
// Conventions, fixed globally and shared by every file format:
//   * table index x has coordinate i at bit i of x (the paper's x_1 is
//     coordinate 0);
//   * ANF coefficient at mask S is the coefficient of prod_{i in S} x_i.

#include "rmtest/bits.hpp"
#include "rmtest/common.hpp"
#include "rmtest/f2.hpp"

#include <iosfwd>
#include <string>

namespace rmtest {

struct BooleanFunction {
    int n = 0;
    Table table;  // 2^n bits

    BooleanFunction() : table(1, 0) {}
    explicit BooleanFunction(int n_) : n(n_), table(table_words(n_), 0) {}

    bool eval(std::uint64_t x) const { return get_bit(table, x); }
    void set(std::uint64_t x, bool v) { set_bit(table, x, v); }
    std::uint64_t domain_size() const { return std::uint64_t(1) << n; }
    int weight() const { return popcount_table(table); }

    friend bool operator==(const BooleanFunction& a, const BooleanFunction& b) {
        return a.n == b.n && a.table == b.table;
    }
};

// Multilinear coefficient vector; degree is the largest popcount among set
// coefficient masks, -1 for the zero function.
struct Anf {
    int n = 0;
    Table coeffs;
    int degree = -1;
};

BooleanFunction bf_constant(int n, bool v);
BooleanFunction bf_from_bits(int n, std::uint64_t bits);  // n <= 6
// Function with the given ANF monomials (each mask below 2^n).
BooleanFunction bf_from_monomials(int n, const std::vector<std::uint64_t>& masks);
BooleanFunction bf_random(int n, Rng& rng);

// Moebius transform of the truth table; evaluating the result reproduces f.
// The transform is an involution, so it also maps ANF back to tables.
Anf anf_of(const BooleanFunction& f);
BooleanFunction bf_from_anf(const Anf& a);

int degree(const BooleanFunction& f);

// Pr_x[f(x) != g(x)] as an exact rational.
Rational distance(const BooleanFunction& f, const BooleanFunction& g);

BooleanFunction bf_xor(const BooleanFunction& f, const BooleanFunction& g);

// g(x) = f(base + x^T basis) on the flat's k variables; index bit i of the
// argument selects basis row i.
BooleanFunction restrict_to_flat(const BooleanFunction& f, const Flat& a);

// g(x) = f(t(x)); invertible t preserves the degree.
BooleanFunction compose_affine(const BooleanFunction& f, const AffineMap& t);

// t-wise XOR on disjoint variable blocks; block i occupies coordinates
// [i*n, (i+1)*n).
BooleanFunction xor_power(const BooleanFunction& f, int t,
                          std::uint64_t table_bits_budget = Budgets().table_bits);

// Elementary symmetric polynomial S_{d,n}; entry x is binom(popcount(x), d)
// mod 2 by Lucas' theorem.
BooleanFunction symmetric_poly(int d, int n);

// Truth-table file format (bit-exact): line 1 "n=<int>", line 2 the table
// as ceil(2^n / 4) hex digits, four indices per digit, index 0 at the least
// significant bit of the first digit, most significant digit last.
std::string bf_to_string(const BooleanFunction& f);
BooleanFunction bf_from_string(const std::string& text);
void bf_write_file(const BooleanFunction& f, const std::string& path);
BooleanFunction bf_read_file(const std::string& path);

}  // namespace rmtest
