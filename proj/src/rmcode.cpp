#include "rmtest/rmcode.hpp"

#include <string>

namespace rmtest {

namespace {

// Masks of popcount <= d below 2^n, ascending.  This is the coefficient
// order behind "lexicographic order of the coefficient vector".
std::vector<std::uint64_t> monomial_masks(int d, int n) {
    std::vector<std::uint64_t> masks;
    for (std::uint64_t m = 0; m < (std::uint64_t(1) << n); ++m)
        if (__builtin_popcountll(m) <= d) masks.push_back(m);
    return masks;
}

// Truth table of the monomial prod_{i in mask} x_i.
Table monomial_table(std::uint64_t mask, int n) {
    Table t(table_words(n), 0);
    for (std::uint64_t x = 0; x < (std::uint64_t(1) << n); ++x)
        if ((x & mask) == mask) set_bit(t, x, true);
    return t;
}

}  // namespace

RmCode::RmCode(int d_, int n_) : d(d_), n(n_) {
    if (d < 0 || n < 0) throw ParameterError("RmCode: d and n must be nonnegative");
}

std::int64_t RmCode::dim() const {
    std::int64_t s = 0, c = 1;
    for (int i = 0; i <= d && i <= n; ++i) {
        if (i > 0) c = c * (n - i + 1) / i;
        s += c;
    }
    return s;
}

bool contains(const RmCode& code, const BooleanFunction& f) {
    if (f.n != code.n) throw ParameterError("contains: function on a different dimension");
    return degree(f) <= code.d;
}

void codewords(const RmCode& code, const std::function<void(const BooleanFunction&)>& fn,
               int dim_budget) {
    const std::int64_t dim = code.dim();
    if (dim > dim_budget)
        throw ResourceError("codewords: dim " + std::to_string(dim) + " exceeds budget " +
                            std::to_string(dim_budget));
    auto masks = monomial_masks(code.d, code.n);
    std::vector<Table> mono;
    mono.reserve(masks.size());
    for (auto m : masks) mono.push_back(monomial_table(m, code.n));

    BooleanFunction cw(code.n);
    fn(cw);
    const int nw = table_words(code.n);
    for (std::uint64_t c = 1; c < (std::uint64_t(1) << dim); ++c) {
        // Coefficients flipped when stepping from c-1 to c.
        std::uint64_t flips = c ^ (c - 1);
        while (flips) {
            int b = __builtin_ctzll(flips);
            flips &= flips - 1;
            for (int w = 0; w < nw; ++w) cw.table[w] ^= mono[b][w];
        }
        fn(cw);
    }
}

DeltaResult delta_exact(const RmCode& code, const BooleanFunction& f, int dim_budget) {
    if (f.n != code.n) throw ParameterError("delta_exact: function on a different dimension");
    const std::int64_t dim = code.dim();
    if (dim > dim_budget)
        throw ResourceError("delta_exact: dim " + std::to_string(dim) + " exceeds budget " +
                            std::to_string(dim_budget) + "; use delta_sampled for an upper bound");
    auto masks = monomial_masks(code.d, code.n);
    std::vector<Table> mono;
    mono.reserve(masks.size());
    for (auto m : masks) mono.push_back(monomial_table(m, code.n));

    // err = f xor codeword, walked in lexicographic coefficient order; the
    // first strict improvement therefore yields the lex-smallest minimizer.
    Table err = f.table;
    const int nw = table_words(code.n);
    auto weight_of = [&](const Table& t) {
        int s = 0;
        for (int w = 0; w < nw; ++w) s += __builtin_popcountll(t[w]);
        return s;
    };
    int best = weight_of(err);
    Table best_err = err;
    for (std::uint64_t c = 1; c < (std::uint64_t(1) << dim); ++c) {
        std::uint64_t flips = c ^ (c - 1);
        while (flips) {
            int b = __builtin_ctzll(flips);
            flips &= flips - 1;
            for (int w = 0; w < nw; ++w) err[w] ^= mono[b][w];
        }
        int wgt = weight_of(err);
        if (wgt < best) {
            best = wgt;
            best_err = err;
            if (best == 0) break;
        }
    }
    DeltaResult r;
    r.delta = Rational(best, BigInt(1) << code.n);
    r.nearest = BooleanFunction(code.n);
    for (int w = 0; w < nw; ++w) r.nearest.table[w] = f.table[w] ^ best_err[w];
    return r;
}

DeltaResult delta_sampled(const RmCode& code, const BooleanFunction& f, std::uint64_t trials,
                          std::uint64_t seed) {
    if (f.n != code.n) throw ParameterError("delta_sampled: function on a different dimension");
    Rng rng(seed);
    auto masks = monomial_masks(code.d, code.n);
    DeltaResult best;
    best.nearest = bf_constant(code.n, false);
    best.delta = distance(f, best.nearest);
    auto consider = [&](const BooleanFunction& g) {
        Rational dist = distance(f, g);
        if (dist < best.delta) {
            best.delta = dist;
            best.nearest = g;
        }
    };
    consider(bf_constant(code.n, true));
    for (std::uint64_t t = 0; t < trials; ++t) {
        std::vector<std::uint64_t> chosen;
        for (auto m : masks)
            if (rand_bits(rng, 1)) chosen.push_back(m);
        consider(bf_from_monomials(code.n, chosen));
    }
    return best;
}

DeltaResult nearest_on_flat(const BooleanFunction& f, const Flat& a, int d, int dim_budget) {
    return delta_exact(RmCode(d, a.k), restrict_to_flat(f, a), dim_budget);
}

}  // namespace rmtest
