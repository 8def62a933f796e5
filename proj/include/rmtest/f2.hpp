#pragma once

// Linear algebra over F2 with rows packed into single 64-bit words
// (every dimension used in this project satisfies n <= 63), plus affine
// subspaces (flats), their exact enumeration and uniform sampling.

#include "rmtest/common.hpp"

#include <cstdint>
#include <functional>
#include <optional>
#include <vector>

namespace rmtest {

// A vector in F2^n.  Coordinate i is bit i; bits at or above position
// `len` must be zero.
struct F2Vec {
    std::uint64_t bits = 0;
    int len = 0;
};

inline int parity64(std::uint64_t x) { return __builtin_parityll(x); }

inline std::uint64_t n_mask(int n) {
    return n >= 64 ? ~std::uint64_t(0) : ((std::uint64_t(1) << n) - 1);
}

// Row-major matrix over F2; all rows share `ncols`.
struct F2Mat {
    int ncols = 0;
    std::vector<std::uint64_t> rows;

    int nrows() const { return int(rows.size()); }
};

// Row rank via Gaussian elimination; the input is left unchanged.
int rank(const F2Mat& m);
int rank_rows(std::vector<std::uint64_t> rows);

// Reduced row echelon form in place.  Returns the pivot columns in
// ascending order; rows beyond the rank are removed.
std::vector<int> rref(std::vector<std::uint64_t>& rows);

// M * M^T for a k x n matrix: entry (i,j) = <row_i, row_j>.
F2Mat gram_matrix(const F2Mat& m);

// Probability that a k x n matrix with iid uniform entries has full row
// rank k: prod_{i<k} (2^n - 2^i) / 2^n.
Rational full_rank_probability(int k, int n);

// A k-dimensional affine subspace of F2^n: { base + x^T basis : x in F2^k }.
// The basis must have full row rank k; the point set then has exactly 2^k
// distinct points.
struct Flat {
    F2Mat basis;             // k rows of length n
    std::uint64_t base = 0;  // base point
    int n = 0;
    int k = 0;

    Flat() = default;
    Flat(F2Mat basis_, std::uint64_t base_, int n_);  // validates rank

    bool contains(std::uint64_t p) const;
};

// Canonical representative: reduced-row-echelon basis, base point with
// zeros at all pivot coordinates.  Two Flats describe the same point set
// iff their canonical forms are identical.
Flat canonical_flat(const Flat& f);

// Solves u . basis = p - base for points of a fixed flat.  Built once,
// then answers membership/coordinate queries in O(k).
class FlatCoords {
  public:
    explicit FlatCoords(const Flat& f);
    // Coordinates of p in the flat's stored basis order, or nullopt if
    // p is not on the flat.
    std::optional<std::uint64_t> coords(std::uint64_t p) const;

  private:
    std::vector<std::uint64_t> reduced_;  // row-reduced basis
    std::vector<std::uint64_t> track_;    // combination of original rows
    std::vector<int> pivot_;
    std::uint64_t base_;
    int k_;
};

// Number of k-flats in F2^n: 2^(n-k) * gaussian_binomial(n, k).
// For k = n-1 this equals 2^(n+1) - 2.
BigInt gaussian_binomial2(int n, int k);
BigInt count_flats(int n, int k);

// Yields every k-flat of F2^n exactly once, each in canonical form, in a
// fixed deterministic order: lexicographic on (pivot columns, remaining
// basis entries, base point) of the canonical form.  Throws ResourceError
// (naming the count) if count_flats(n, k) exceeds the budget.
void enumerate_flats(int n, int k, const std::function<void(const Flat&)>& fn,
                     std::uint64_t budget = Budgets().flats);

// Same enumeration without constructing Flat objects: fn receives the k
// canonical basis rows and the reduced base point.  Used by the exact
// counters, where per-flat allocation would dominate.
void enumerate_flats_raw(int n, int k,
                         const std::function<void(const std::uint64_t* rows, std::uint64_t base)>& fn,
                         std::uint64_t budget = Budgets().flats);

// Uniform over all k-flats: rejection-samples a full-rank k x n matrix and
// a uniform base point.  Every flat has the same number of (matrix, base)
// representations, so the result is exactly uniform.
Flat sample_flat(int n, int k, Rng& rng);

// Hyperplane { x : <linear, x> = offset } with linear != 0; an (n-1)-flat.
struct Hyperplane {
    std::uint64_t linear = 0;
    int offset = 0;
    int n = 0;

    Hyperplane() = default;
    Hyperplane(std::uint64_t linear_, int offset_, int n_);

    bool contains(std::uint64_t p) const { return parity64(linear & p) == offset; }
    Flat to_flat() const;  // canonical (n-1)-flat with the same point set

    friend bool operator==(const Hyperplane& a, const Hyperplane& b) {
        return a.linear == b.linear && a.offset == b.offset && a.n == b.n;
    }
};

// All 2^(n+1) - 2 hyperplanes, ordered by (linear part, offset).
std::vector<Hyperplane> all_hyperplanes(int n);

// Indices of `want` hyperplanes with linearly independent linear parts,
// chosen by a greedy scan in input order.  The input must consist of
// distinct hyperplanes; among any 2^want - 1 of those at least `want`
// independent ones exist, so failure is an internal invariant violation.
std::vector<int> independent_hyperplanes(const std::vector<Hyperplane>& hs, int want);

// Invertible affine map y = Rx + s on F2^n.  apply() costs O(n).
struct AffineMap {
    F2Mat rows;                 // R, row i gives y_i = <row_i, x> + s_i
    std::uint64_t trans = 0;    // s
    int n = 0;

    std::uint64_t apply(std::uint64_t x) const {
        std::uint64_t y = trans;
        for (int i = 0; i < n; ++i)
            y ^= std::uint64_t(parity64(rows.rows[i] & x)) << i;
        return y;
    }
    // Columns R e_0 .. R e_{n-1}; with these, y over consecutive inputs can
    // be maintained by Gray-code walks.
    std::vector<std::uint64_t> columns() const;
    AffineMap inverse() const;

    static AffineMap identity(int n);
};

// Invertible affine T with T(A_i) = { x : x_i = 0 } for each input
// hyperplane A_i (in order).  The linear parts must be independent.
AffineMap normalize_to_coordinates(const std::vector<Hyperplane>& hs, int n);

}  // namespace rmtest
