#include "rmtest/boolfn.hpp"

#include <cctype>
#include <fstream>
#include <sstream>

namespace rmtest {

BooleanFunction bf_constant(int n, bool v) {
    BooleanFunction f(n);
    if (v) {
        for (auto& w : f.table) w = ~Word(0);
        if (n < 6) f.table[0] = word_mask(n);
    }
    return f;
}

BooleanFunction bf_from_bits(int n, std::uint64_t bits) {
    if (n > 6) throw ParameterError("bf_from_bits: n must be at most 6");
    BooleanFunction f(n);
    f.table[0] = bits & word_mask(n);
    return f;
}

BooleanFunction bf_from_monomials(int n, const std::vector<std::uint64_t>& masks) {
    Anf a;
    a.n = n;
    a.coeffs.assign(table_words(n), 0);
    for (std::uint64_t m : masks) {
        if (m >> n) throw ParameterError("bf_from_monomials: mask out of range");
        set_bit(a.coeffs, m, !get_bit(a.coeffs, m));
    }
    return bf_from_anf(a);
}

BooleanFunction bf_random(int n, Rng& rng) {
    BooleanFunction f(n);
    for (auto& w : f.table) w = rand_u64(rng);
    if (n < 6) f.table[0] &= word_mask(n);
    return f;
}

Anf anf_of(const BooleanFunction& f) {
    Anf a;
    a.n = f.n;
    a.coeffs = f.table;
    moebius_inplace(a.coeffs, f.n);
    a.degree = -1;
    for (std::size_t j = 0; j < a.coeffs.size(); ++j) {
        Word w = a.coeffs[j];
        while (w) {
            int b = __builtin_ctzll(w);
            w &= w - 1;
            int pc = __builtin_popcountll((std::uint64_t(j) << 6) | unsigned(b));
            if (pc > a.degree) a.degree = pc;
        }
    }
    return a;
}

BooleanFunction bf_from_anf(const Anf& a) {
    BooleanFunction f(a.n);
    f.table = a.coeffs;
    moebius_inplace(f.table, a.n);
    return f;
}

int degree(const BooleanFunction& f) { return table_degree(f.table, f.n); }

Rational distance(const BooleanFunction& f, const BooleanFunction& g) {
    if (f.n != g.n) throw ParameterError("distance: functions on different dimensions");
    int diff = 0;
    for (std::size_t j = 0; j < f.table.size(); ++j)
        diff += __builtin_popcountll(f.table[j] ^ g.table[j]);
    return Rational(diff, BigInt(1) << f.n);
}

BooleanFunction bf_xor(const BooleanFunction& f, const BooleanFunction& g) {
    if (f.n != g.n) throw ParameterError("bf_xor: functions on different dimensions");
    BooleanFunction h(f.n);
    for (std::size_t j = 0; j < f.table.size(); ++j) h.table[j] = f.table[j] ^ g.table[j];
    return h;
}

BooleanFunction restrict_to_flat(const BooleanFunction& f, const Flat& a) {
    if (a.n != f.n) throw ParameterError("restrict_to_flat: flat lives in a different space");
    BooleanFunction g(a.k);
    // Gray-code walk over the flat: one basis-row XOR per point.
    std::uint64_t p = a.base;
    std::uint64_t prev_gray = 0;
    for (std::uint64_t j = 0;; ++j) {
        std::uint64_t gray = j ^ (j >> 1);
        if (std::uint64_t diff = prev_gray ^ gray)
            p ^= a.basis.rows[__builtin_ctzll(diff)];
        prev_gray = gray;
        if (f.eval(p)) g.set(gray, true);
        if (j + 1 == (std::uint64_t(1) << a.k)) break;
    }
    return g;
}

BooleanFunction compose_affine(const BooleanFunction& f, const AffineMap& t) {
    if (t.n != f.n) throw ParameterError("compose_affine: map on a different dimension");
    BooleanFunction g(f.n);
    std::vector<std::uint64_t> cols = t.columns();
    std::uint64_t y = t.trans;
    std::uint64_t prev_gray = 0;
    for (std::uint64_t j = 0;; ++j) {
        std::uint64_t gray = j ^ (j >> 1);
        if (std::uint64_t diff = prev_gray ^ gray)
            y ^= cols[__builtin_ctzll(diff)];
        prev_gray = gray;
        if (f.eval(y)) g.set(gray, true);
        if (j + 1 == (std::uint64_t(1) << f.n)) break;
    }
    return g;
}

BooleanFunction xor_power(const BooleanFunction& f, int t, std::uint64_t table_bits_budget) {
    if (t < 1) throw ParameterError("xor_power: t must be positive");
    if (std::uint64_t(t) * f.n > 63 || (std::uint64_t(1) << (t * f.n)) > table_bits_budget)
        throw ResourceError("xor_power: table of 2^" + std::to_string(t * f.n) +
                            " bits exceeds budget");
    BooleanFunction cur = f;
    for (int j = 1; j < t; ++j) {
        int newn = cur.n + f.n;
        BooleanFunction nxt(newn);
        if (cur.n >= 6) {
            const int cw = table_words(cur.n);
            for (std::uint64_t y = 0; y < f.domain_size(); ++y) {
                Word fill = f.eval(y) ? ~Word(0) : 0;
                for (int w = 0; w < cw; ++w) nxt.table[y * cw + w] = cur.table[w] ^ fill;
            }
        } else {
            for (std::uint64_t x = 0; x < (std::uint64_t(1) << newn); ++x)
                nxt.set(x, cur.eval(x & n_mask(cur.n)) ^ f.eval(x >> cur.n));
        }
        cur = std::move(nxt);
    }
    return cur;
}

BooleanFunction symmetric_poly(int d, int n) {
    if (d < 0 || d > n) throw ParameterError("symmetric_poly: need 0 <= d <= n");
    BooleanFunction f(n);
    for (std::uint64_t x = 0; x < f.domain_size(); ++x) {
        int pc = __builtin_popcountll(x);
        // binom(pc, d) mod 2 by Lucas: odd iff d's bits are a subset of pc's.
        if ((pc & d) == d) f.set(x, true);
    }
    return f;
}

std::string bf_to_string(const BooleanFunction& f) {
    std::uint64_t nbits = f.domain_size();
    std::uint64_t ndigits = (nbits + 3) / 4;
    std::string out = "n=" + std::to_string(f.n) + "\n";
    static const char* hex = "0123456789abcdef";
    for (std::uint64_t j = 0; j < ndigits; ++j) {
        int v = 0;
        for (int b = 0; b < 4; ++b) {
            std::uint64_t idx = 4 * j + b;
            if (idx < nbits && f.eval(idx)) v |= 1 << b;
        }
        out += hex[v];
    }
    out += "\n";
    return out;
}

BooleanFunction bf_from_string(const std::string& text) {
    std::istringstream in(text);
    std::string line1, line2;
    if (!std::getline(in, line1) || line1.rfind("n=", 0) != 0)
        throw ParameterError("truth table: first line must be n=<int>");
    int n = std::stoi(line1.substr(2));
    if (n < 0 || n > 26) throw ParameterError("truth table: n out of range");
    if (!std::getline(in, line2)) throw ParameterError("truth table: missing digits line");
    std::uint64_t nbits = std::uint64_t(1) << n;
    std::uint64_t ndigits = (nbits + 3) / 4;
    if (line2.size() != ndigits)
        throw ParameterError("truth table: expected " + std::to_string(ndigits) + " hex digits");
    BooleanFunction f(n);
    for (std::uint64_t j = 0; j < ndigits; ++j) {
        char c = line2[j];
        int v;
        if (c >= '0' && c <= '9') v = c - '0';
        else if (c >= 'a' && c <= 'f') v = c - 'a' + 10;
        else if (c >= 'A' && c <= 'F') v = c - 'A' + 10;
        else throw ParameterError("truth table: invalid hex digit");
        for (int b = 0; b < 4; ++b) {
            std::uint64_t idx = 4 * j + b;
            if (idx < nbits && ((v >> b) & 1)) f.set(idx, true);
        }
    }
    return f;
}

void bf_write_file(const BooleanFunction& f, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw ParameterError("cannot open for writing: " + path);
    out << bf_to_string(f);
}

BooleanFunction bf_read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ParameterError("cannot open: " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    return bf_from_string(ss.str());
}

}  // namespace rmtest
