#include "rmtest/f2.hpp"

#include <algorithm>
#include <set>
#include <string>

namespace rmtest {

int rank_rows(std::vector<std::uint64_t> rows) {
    // Forward elimination, pivot on the lowest set bit of each new row.
    int r = 0;
    std::vector<std::uint64_t> basis;
    for (std::uint64_t v : rows) {
        for (std::uint64_t b : basis) {
            std::uint64_t low = b & -b;
            if (v & low) v ^= b;
        }
        if (v) {
            basis.push_back(v);
            ++r;
        }
    }
    return r;
}

int rank(const F2Mat& m) { return rank_rows(m.rows); }

std::vector<int> rref(std::vector<std::uint64_t>& rows) {
    std::vector<int> pivots;
    std::size_t next = 0;
    const int ncols = 64;
    for (int c = 0; c < ncols && next < rows.size(); ++c) {
        std::size_t sel = next;
        while (sel < rows.size() && !((rows[sel] >> c) & 1)) ++sel;
        if (sel == rows.size()) continue;
        std::swap(rows[next], rows[sel]);
        for (std::size_t i = 0; i < rows.size(); ++i)
            if (i != next && ((rows[i] >> c) & 1)) rows[i] ^= rows[next];
        pivots.push_back(c);
        ++next;
    }
    rows.resize(next);
    return pivots;
}

F2Mat gram_matrix(const F2Mat& m) {
    F2Mat g;
    g.ncols = m.nrows();
    g.rows.resize(m.nrows());
    for (int i = 0; i < m.nrows(); ++i)
        for (int j = 0; j < m.nrows(); ++j)
            if (parity64(m.rows[i] & m.rows[j]))
                g.rows[i] |= std::uint64_t(1) << j;
    return g;
}

Rational full_rank_probability(int k, int n) {
    Rational p = 1;
    BigInt space = BigInt(1) << n;
    for (int i = 0; i < k; ++i)
        p *= Rational(space - (BigInt(1) << i), space);
    return p;
}

Flat::Flat(F2Mat basis_, std::uint64_t base_, int n_)
    : basis(std::move(basis_)), base(base_ & n_mask(n_)), n(n_), k(basis.nrows()) {
    if (basis.ncols != n) throw ParameterError("Flat: basis column count != n");
    if (k > n) throw ParameterError("Flat: more basis rows than ambient dimension");
    for (std::uint64_t r : basis.rows)
        if (r & ~n_mask(n)) throw ParameterError("Flat: basis row has bits beyond n");
    if (rank(basis) != k) throw ParameterError("Flat: basis is not full row rank");
}

bool Flat::contains(std::uint64_t p) const {
    // p on the flat iff p - base lies in the row space.
    std::uint64_t v = (p ^ base) & n_mask(n);
    std::vector<std::uint64_t> rows = basis.rows;
    std::vector<int> piv = rref(rows);
    for (std::size_t i = 0; i < rows.size(); ++i)
        if ((v >> piv[i]) & 1) v ^= rows[i];
    return v == 0;
}

Flat canonical_flat(const Flat& f) {
    std::vector<std::uint64_t> rows = f.basis.rows;
    std::vector<int> piv = rref(rows);
    std::uint64_t b = f.base;
    for (std::size_t i = 0; i < rows.size(); ++i)
        if ((b >> piv[i]) & 1) b ^= rows[i];
    return Flat(F2Mat{f.n, rows}, b, f.n);
}

FlatCoords::FlatCoords(const Flat& f) : base_(f.base), k_(f.k) {
    reduced_ = f.basis.rows;
    track_.assign(f.k, 0);
    for (int i = 0; i < f.k; ++i) track_[i] = std::uint64_t(1) << i;
    // Row reduce while tracking which original rows were combined.
    std::size_t next = 0;
    for (int c = 0; c < 64 && next < reduced_.size(); ++c) {
        std::size_t sel = next;
        while (sel < reduced_.size() && !((reduced_[sel] >> c) & 1)) ++sel;
        if (sel == reduced_.size()) continue;
        std::swap(reduced_[next], reduced_[sel]);
        std::swap(track_[next], track_[sel]);
        for (std::size_t i = 0; i < reduced_.size(); ++i)
            if (i != next && ((reduced_[i] >> c) & 1)) {
                reduced_[i] ^= reduced_[next];
                track_[i] ^= track_[next];
            }
        pivot_.push_back(c);
        ++next;
    }
}

std::optional<std::uint64_t> FlatCoords::coords(std::uint64_t p) const {
    std::uint64_t v = p ^ base_;
    std::uint64_t u = 0;
    for (std::size_t i = 0; i < reduced_.size(); ++i)
        if ((v >> pivot_[i]) & 1) {
            v ^= reduced_[i];
            u ^= track_[i];
        }
    if (v != 0) return std::nullopt;
    return u;
}

BigInt gaussian_binomial2(int n, int k) {
    if (k < 0 || k > n) return 0;
    BigInt num = 1, den = 1;
    for (int i = 0; i < k; ++i) {
        num *= (BigInt(1) << (n - i)) - 1;
        den *= (BigInt(1) << (i + 1)) - 1;
    }
    return num / den;  // exact: Gaussian binomials are integers
}

BigInt count_flats(int n, int k) {
    if (k < 0 || n < 0 || k > n)
        throw ParameterError("count_flats: need 0 <= k <= n");
    return (BigInt(1) << (n - k)) * gaussian_binomial2(n, k);
}

void enumerate_flats_raw(int n, int k,
                         const std::function<void(const std::uint64_t*, std::uint64_t)>& fn,
                         std::uint64_t budget) {
    BigInt total = count_flats(n, k);
    if (total > budget)
        throw ResourceError("enumerate_flats: " + total.str() + " flats exceed budget " +
                            std::to_string(budget));

    if (k == 0) {
        for (std::uint64_t b = 0; b < (std::uint64_t(1) << n); ++b) fn(nullptr, b);
        return;
    }

    // Pivot columns in lexicographically increasing order; for each pivot
    // set, all free basis entries, then all reduced base points.
    std::vector<int> piv(k);
    for (int i = 0; i < k; ++i) piv[i] = i;

    std::vector<std::pair<int, int>> free_pos;  // (row, column)
    std::vector<int> nonpiv;
    std::vector<std::uint64_t> rows(k);

    for (;;) {
        std::uint64_t pivmask = 0;
        for (int i = 0; i < k; ++i) pivmask |= std::uint64_t(1) << piv[i];

        // Free positions: in row i, columns beyond piv[i] that are not pivots.
        free_pos.clear();
        for (int i = 0; i < k; ++i)
            for (int c = piv[i] + 1; c < n; ++c)
                if (!((pivmask >> c) & 1)) free_pos.emplace_back(i, c);
        nonpiv.clear();
        for (int c = 0; c < n; ++c)
            if (!((pivmask >> c) & 1)) nonpiv.push_back(c);

        const int m = int(free_pos.size());
        const int nb = n - k;
        for (std::uint64_t fbits = 0; fbits < (std::uint64_t(1) << m); ++fbits) {
            for (int i = 0; i < k; ++i) rows[i] = std::uint64_t(1) << piv[i];
            for (int j = 0; j < m; ++j)
                if ((fbits >> j) & 1)
                    rows[free_pos[j].first] |= std::uint64_t(1) << free_pos[j].second;
            // Base point supported off the pivot columns.
            for (std::uint64_t bbits = 0; bbits < (std::uint64_t(1) << nb); ++bbits) {
                std::uint64_t base = 0;
                for (int j = 0; j < nb; ++j)
                    if ((bbits >> j) & 1) base |= std::uint64_t(1) << nonpiv[j];
                fn(rows.data(), base);
            }
        }

        int i = k - 1;
        while (i >= 0 && piv[i] == n - k + i) --i;
        if (i < 0) break;
        ++piv[i];
        for (int j = i + 1; j < k; ++j) piv[j] = piv[j - 1] + 1;
    }
}

void enumerate_flats(int n, int k, const std::function<void(const Flat&)>& fn,
                     std::uint64_t budget) {
    enumerate_flats_raw(
        n, k,
        [&](const std::uint64_t* rows, std::uint64_t base) {
            F2Mat m;
            m.ncols = n;
            m.rows.assign(rows, rows + k);
            fn(Flat(std::move(m), base, n));
        },
        budget);
}

Flat sample_flat(int n, int k, Rng& rng) {
    if (k > n || k < 0) throw ParameterError("sample_flat: need 0 <= k <= n");
    // Acceptance probability is > 0.288 for every k <= n, so the expected
    // number of draws is below 4.
    F2Mat m;
    m.ncols = n;
    m.rows.resize(k);
    for (;;) {
        for (int i = 0; i < k; ++i) m.rows[i] = rand_bits(rng, n);
        if (rank(m) == k) break;
    }
    std::uint64_t base = rand_bits(rng, n);
    return Flat(std::move(m), base, n);
}

Hyperplane::Hyperplane(std::uint64_t linear_, int offset_, int n_)
    : linear(linear_ & n_mask(n_)), offset(offset_ & 1), n(n_) {
    if (linear == 0) throw ParameterError("Hyperplane: linear part must be nonzero");
}

Flat Hyperplane::to_flat() const {
    // Nullspace of the linear part, then the canonical form fixes the rest.
    int p = __builtin_ctzll(linear);
    std::vector<std::uint64_t> rows;
    rows.reserve(n - 1);
    for (int c = 0; c < n; ++c) {
        if (c == p) continue;
        std::uint64_t v = std::uint64_t(1) << c;
        if ((linear >> c) & 1) v |= std::uint64_t(1) << p;
        rows.push_back(v);
    }
    std::uint64_t base = offset ? (std::uint64_t(1) << p) : 0;
    return canonical_flat(Flat(F2Mat{n, rows}, base, n));
}

std::vector<Hyperplane> all_hyperplanes(int n) {
    std::vector<Hyperplane> hs;
    hs.reserve((std::size_t(1) << (n + 1)) - 2);
    for (std::uint64_t l = 1; l < (std::uint64_t(1) << n); ++l)
        for (int b = 0; b < 2; ++b) hs.emplace_back(l, b, n);
    return hs;
}

std::vector<int> independent_hyperplanes(const std::vector<Hyperplane>& hs, int want) {
    {
        std::set<std::pair<std::uint64_t, int>> seen;
        for (const auto& h : hs)
            if (!seen.insert({h.linear, h.offset}).second)
                throw ParameterError("independent_hyperplanes: hyperplanes must be distinct");
    }
    if (want > 0 && BigInt(hs.size()) < (BigInt(1) << want) - 1)
        throw ParameterError("independent_hyperplanes: need at least 2^want - 1 hyperplanes");

    std::vector<std::uint64_t> basis;
    std::vector<int> picked;
    for (std::size_t i = 0; i < hs.size() && int(picked.size()) < want; ++i) {
        std::uint64_t v = hs[i].linear;
        for (std::uint64_t b : basis) {
            std::uint64_t low = b & -b;
            if (v & low) v ^= b;
        }
        if (v) {
            basis.push_back(v);
            picked.push_back(int(i));
        }
    }
    if (int(picked.size()) < want)
        throw InvariantError(
            "independent_hyperplanes: fewer independent hyperplanes than guaranteed");
    return picked;
}

std::vector<std::uint64_t> AffineMap::columns() const {
    std::vector<std::uint64_t> cols(n, 0);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            if ((rows.rows[i] >> j) & 1) cols[j] |= std::uint64_t(1) << i;
    return cols;
}

AffineMap AffineMap::identity(int n) {
    AffineMap t;
    t.n = n;
    t.rows.ncols = n;
    t.rows.rows.resize(n);
    for (int i = 0; i < n; ++i) t.rows.rows[i] = std::uint64_t(1) << i;
    return t;
}

AffineMap AffineMap::inverse() const {
    // Invert R by augmented elimination; then x = R^{-1}(y + s).
    std::vector<std::uint64_t> a = rows.rows;
    std::vector<std::uint64_t> inv(n);
    for (int i = 0; i < n; ++i) inv[i] = std::uint64_t(1) << i;
    for (int c = 0; c < n; ++c) {
        int sel = -1;
        for (int i = c; i < n; ++i)
            if ((a[i] >> c) & 1) {
                sel = i;
                break;
            }
        if (sel < 0) throw ParameterError("AffineMap::inverse: matrix is singular");
        std::swap(a[c], a[sel]);
        std::swap(inv[c], inv[sel]);
        for (int i = 0; i < n; ++i)
            if (i != c && ((a[i] >> c) & 1)) {
                a[i] ^= a[c];
                inv[i] ^= inv[c];
            }
    }
    AffineMap t;
    t.n = n;
    t.rows.ncols = n;
    t.rows.rows = inv;
    t.trans = 0;
    for (int i = 0; i < n; ++i)
        t.trans |= std::uint64_t(parity64(inv[i] & trans)) << i;
    return t;
}

AffineMap normalize_to_coordinates(const std::vector<Hyperplane>& hs, int n) {
    const int l = int(hs.size());
    if (l > n) throw ParameterError("normalize_to_coordinates: more hyperplanes than dimensions");
    std::vector<std::uint64_t> rows;
    rows.reserve(n);
    for (const auto& h : hs) rows.push_back(h.linear);
    if (rank_rows(rows) != l)
        throw ParameterError("normalize_to_coordinates: linear parts are dependent");
    // Extend to a basis with standard vectors.
    for (int j = 0; j < n && int(rows.size()) < n; ++j) {
        rows.push_back(std::uint64_t(1) << j);
        if (rank_rows(rows) != int(rows.size())) rows.pop_back();
    }
    AffineMap t;
    t.n = n;
    t.rows.ncols = n;
    t.rows.rows = rows;
    t.trans = 0;
    for (int i = 0; i < l; ++i) t.trans |= std::uint64_t(hs[i].offset) << i;
    return t;
}

}  // namespace rmtest
