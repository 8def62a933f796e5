#pragma once

// Bit-packed truth-table kernels.  A function f : F2^n -> F2 is stored as
// 2^n bits, index x has coordinate i at bit i of x, bit x of the table
// lives at word x/64, bit x%64.  For n < 6 only the low 2^n bits of the
// single word are meaningful and all higher bits are kept at zero.

#include <cstdint>
#include <vector>

namespace rmtest {

using Word = std::uint64_t;
using Table = std::vector<Word>;

inline int table_words(int n) { return n <= 6 ? 1 : 1 << (n - 6); }

// Mask of the valid bits in a (possibly partial) single word.
inline Word word_mask(int n) {
    return n >= 6 ? ~Word(0) : ((Word(1) << (1 << n)) - 1);
}

inline bool get_bit(const Table& t, std::uint64_t x) {
    return (t[x >> 6] >> (x & 63)) & 1;
}

inline void set_bit(Table& t, std::uint64_t x, bool v) {
    Word m = Word(1) << (x & 63);
    if (v) t[x >> 6] |= m; else t[x >> 6] &= ~m;
}

inline int popcount_table(const Table& t) {
    int c = 0;
    for (Word w : t) c += __builtin_popcountll(w);
    return c;
}

// Bits of a word whose index has coordinate i equal to 0, for i < 6.
inline constexpr Word kLowHalf[6] = {
    0x5555555555555555ull, 0x3333333333333333ull, 0x0f0f0f0f0f0f0f0full,
    0x00ff00ff00ff00ffull, 0x0000ffff0000ffffull, 0x00000000ffffffffull,
};

// In-word Moebius transform over the subset lattice (self-inverse over F2).
// After the call, bit S holds XOR_{T subset of S} of the original bits.
inline Word moebius_word(Word w, int n) {
    for (int i = 0; i < n && i < 6; ++i)
        w ^= (w & kLowHalf[i]) << (1 << i);
    return w;
}

inline void moebius_inplace(Table& t, int n) {
    t[0] = moebius_word(t[0], n);
    if (n <= 6) return;
    const int nw = table_words(n);
    for (int j = 1; j < nw; ++j) t[j] = moebius_word(t[j], 6);
    for (int i = 6; i < n; ++i) {
        const int half = 1 << (i - 6);
        for (int j = 0; j < nw; ++j)
            if (j & half) t[j] ^= t[j ^ half];
    }
}

// Translate within a word: result bit x = input bit (x ^ c), c < 64.
inline Word translate_word(Word w, int n, unsigned c) {
    for (int i = 0; i < n && i < 6; ++i)
        if ((c >> i) & 1) {
            int s = 1 << i;
            w = ((w & ~kLowHalf[i]) >> s) | ((w & kLowHalf[i]) << s);
        }
    return w;
}

// General translate: out(x) = t(x ^ c).
inline Table translate_table(const Table& t, int n, std::uint64_t c) {
    const int nw = table_words(n);
    Table out(nw);
    const std::uint64_t chigh = c >> 6;
    const unsigned clow = unsigned(c & 63);
    for (int j = 0; j < nw; ++j)
        out[j] = translate_word(t[std::uint64_t(j) ^ chigh], n, clow);
    return out;
}

// Degree of the function behind a truth table: max popcount of a set ANF
// coefficient, -1 for the zero function.  Clobbers nothing (works on a copy).
inline int table_degree(const Table& t, int n) {
    Table a = t;
    moebius_inplace(a, n);
    int deg = -1;
    const int nw = table_words(n);
    for (int j = 0; j < nw; ++j) {
        Word w = a[j];
        while (w) {
            int b = __builtin_ctzll(w);
            w &= w - 1;
            int pc = __builtin_popcountll((std::uint64_t(j) << 6) | unsigned(b));
            if (pc > deg) deg = pc;
        }
    }
    return deg;
}

// Mask of in-word positions whose index has popcount > d (for n <= 6).
inline Word popcount_gt_mask(int n, int d) {
    Word m = 0;
    for (int x = 0; x < (1 << n); ++x)
        if (__builtin_popcount(unsigned(x)) > d) m |= Word(1) << x;
    return m;
}

// Fast path: does the single-word table (k <= 6 variables) have degree > d?
inline bool word_degree_exceeds(Word w, int k, int d, Word gt_mask) {
    return (moebius_word(w, k) & gt_mask) != 0;
}

inline bool degree_exceeds(const Table& t, int n, int d) {
    if (n <= 6) return word_degree_exceeds(t[0], n, d, popcount_gt_mask(n, d));
    return table_degree(t, n) > d;
}

}  // namespace rmtest
