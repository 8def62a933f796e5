#include "rmtest/flattest.hpp"

#include <array>
#include <string>

namespace rmtest {

namespace {

// Restriction of a packed table to the flat (rows, base), k <= 6, as a word.
inline Word restrict_word(const Table& f, const std::uint64_t* rows, int k, std::uint64_t base) {
    Word out = 0;
    std::uint64_t p = base;
    std::uint64_t prev_gray = 0;
    const std::uint64_t end = std::uint64_t(1) << k;
    for (std::uint64_t j = 0;; ++j) {
        std::uint64_t gray = j ^ (j >> 1);
        if (std::uint64_t diff = prev_gray ^ gray) p ^= rows[__builtin_ctzll(diff)];
        prev_gray = gray;
        out |= Word(get_bit(f, p)) << gray;
        if (j + 1 == end) break;
    }
    return out;
}

// Same for a function whose whole table fits in one word (n <= 6).
inline Word restrict_word1(Word f, const std::uint64_t* rows, int k, std::uint64_t base) {
    Word out = 0;
    std::uint64_t p = base;
    std::uint64_t prev_gray = 0;
    const std::uint64_t end = std::uint64_t(1) << k;
    for (std::uint64_t j = 0;; ++j) {
        std::uint64_t gray = j ^ (j >> 1);
        if (std::uint64_t diff = prev_gray ^ gray) p ^= rows[__builtin_ctzll(diff)];
        prev_gray = gray;
        out |= ((f >> p) & 1) << gray;
        if (j + 1 == end) break;
    }
    return out;
}

inline int word_restriction_degree(Word w, int k) {
    Word a = moebius_word(w, k);
    int deg = -1;
    while (a) {
        int b = __builtin_ctzll(a);
        a &= a - 1;
        int pc = __builtin_popcount(unsigned(b));
        if (pc > deg) deg = pc;
    }
    return deg;
}

}  // namespace

TestOutcome run_flat_test(const BooleanFunction& f, int d, int k, Rng& rng) {
    if (k < d + 1) throw ParameterError("run_flat_test: k < d+1 loses perfect completeness");
    if (k > f.n) throw ParameterError("run_flat_test: k exceeds the ambient dimension");
    TestOutcome out;
    out.flat = sample_flat(f.n, k, rng);
    out.rejected = degree_exceeds(restrict_to_flat(f, out.flat).table, k, d);
    return out;
}

namespace detail {

RejEstimate rej_exact_enumerated(const BooleanFunction& f, int d, int k,
                                 std::uint64_t flat_budget) {
    std::uint64_t rejecting = 0, total = 0;
    if (k <= 6) {
        const Word gt = popcount_gt_mask(k, d);
        enumerate_flats_raw(
            f.n, k,
            [&](const std::uint64_t* rows, std::uint64_t base) {
                ++total;
                Word r = restrict_word(f.table, rows, k, base);
                if (moebius_word(r, k) & gt) ++rejecting;
            },
            flat_budget);
    } else {
        enumerate_flats(
            f.n, k,
            [&](const Flat& a) {
                ++total;
                if (degree_exceeds(restrict_to_flat(f, a).table, k, d)) ++rejecting;
            },
            flat_budget);
    }
    RejEstimate e;
    e.kind = RejEstimate::Kind::exact;
    e.rejecting = rejecting;
    e.total = total;
    e.value = Rational(BigInt(rejecting), BigInt(total));
    return e;
}

RejEstimate rej_exact_sparse(const BooleanFunction& f, int d, int k) {
    // Rej_{d,k} of a function with support S, |S| <= 4, in closed form.
    // The restriction to a flat A is the indicator of A∩S, whose degree
    // depends only on |A∩S| (and, for four points, on whether they sum to
    // zero): sizes 1 and 3 give degree k, size 2 gives k-1, size 4 gives
    // k-1 unless the points form a 2-flat (then k-2).  Flats are counted
    // per exact intersection by Moebius inversion over subsets of S,
    // using  #{k-flats containing a fixed t-flat} = gauss2(n-t, k-t).
    std::vector<std::uint64_t> support;
    for (std::uint64_t x = 0; x < f.domain_size(); ++x)
        if (f.eval(x)) support.push_back(x);
    const int s = int(support.size());
    if (s > 4) throw ParameterError("rej_exact_sparse: support larger than 4");
    const int n = f.n;

    auto affine_dim = [&](unsigned sub) {
        std::vector<std::uint64_t> diffs;
        std::uint64_t first = 0;
        bool have = false;
        for (int i = 0; i < s; ++i)
            if ((sub >> i) & 1) {
                if (!have) {
                    first = support[i];
                    have = true;
                } else {
                    diffs.push_back(support[i] ^ first);
                }
            }
        return have ? rank_rows(diffs) : -1;  // -1 marks the empty set
    };

    BigInt total = count_flats(n, k);
    std::array<BigInt, 16> contains_cnt;  // flats containing all of subset
    for (unsigned sub = 0; sub < (1u << s); ++sub) {
        int a = affine_dim(sub);
        if (a < 0) contains_cnt[sub] = total;
        else if (a > k) contains_cnt[sub] = 0;
        else contains_cnt[sub] = gaussian_binomial2(n - a, k - a);
    }

    BigInt rejecting = 0;
    for (unsigned sub = 0; sub < (1u << s); ++sub) {
        int m = __builtin_popcount(sub);
        int deg;
        if (m == 0) deg = -1;
        else if (m == 1 || m == 3) deg = k;
        else if (m == 2) deg = k - 1;
        else {
            std::uint64_t sum = 0;
            for (int i = 0; i < s; ++i)
                if ((sub >> i) & 1) sum ^= support[i];
            deg = (sum == 0) ? k - 2 : k - 1;
        }
        if (deg <= d) continue;
        // Exact-intersection count by inclusion-exclusion over supersets.
        BigInt exact = 0;
        unsigned rest = ~sub & ((1u << s) - 1);
        for (unsigned add = rest;; add = (add - 1) & rest) {
            int sign = (__builtin_popcount(add) & 1) ? -1 : 1;
            exact += sign * contains_cnt[sub | add];
            if (add == 0) break;
        }
        rejecting += exact;
    }
    if (rejecting < 0 || rejecting > total)
        throw InvariantError("rej_exact_sparse: inconsistent inclusion-exclusion");

    RejEstimate e;
    e.kind = RejEstimate::Kind::exact;
    e.rejecting = rejecting;
    e.total = total;
    e.value = Rational(rejecting, total);
    return e;
}

}  // namespace detail

RejEstimate rej_exact(const BooleanFunction& f, int d, int k, std::uint64_t flat_budget) {
    if (k < 0 || k > f.n) throw ParameterError("rej_exact: need 0 <= k <= n");
    if (d < 0) throw ParameterError("rej_exact: d must be nonnegative");
    BigInt total = count_flats(f.n, k);
    if (total > flat_budget)
        throw ResourceError("rej_exact: " + total.str() + " flats exceed budget " +
                            std::to_string(flat_budget) + "; use rej_montecarlo");
    if (f.weight() <= 4) return detail::rej_exact_sparse(f, d, k);
    return detail::rej_exact_enumerated(f, d, k, flat_budget);
}

FlatList build_flat_list(int n, int k, std::uint64_t budget) {
    FlatList fl;
    fl.n = n;
    fl.k = k;
    enumerate_flats_raw(
        n, k,
        [&](const std::uint64_t* rows, std::uint64_t base) {
            for (int i = 0; i < k; ++i) fl.rows.push_back(rows[i]);
            fl.bases.push_back(base);
        },
        budget);
    return fl;
}

std::vector<std::uint64_t> rejection_counts_by_degree(const BooleanFunction& f,
                                                      const FlatList& flats) {
    if (f.n != flats.n) throw ParameterError("rejection_counts_by_degree: dimension mismatch");
    const int k = flats.k;
    std::vector<std::uint64_t> counts(k + 1, 0);
    for (std::size_t i = 0; i < flats.size(); ++i) {
        int rd;
        if (k <= 6) {
            Word r = restrict_word(f.table, &flats.rows[i * k], k, flats.bases[i]);
            rd = word_restriction_degree(r, k);
        } else {
            F2Mat m;
            m.ncols = flats.n;
            m.rows.assign(&flats.rows[i * k], &flats.rows[i * k] + k);
            rd = degree(restrict_to_flat(f, Flat(std::move(m), flats.bases[i], flats.n)));
        }
        for (int dd = 0; dd < rd; ++dd) ++counts[dd];
    }
    return counts;
}

RejEstimate rej_montecarlo(const BooleanFunction& f, int d, int k, std::uint64_t trials,
                           std::uint64_t seed) {
    if (trials == 0) throw ParameterError("rej_montecarlo: trials must be positive");
    Rng rng(seed);
    std::uint64_t rejecting = 0;
    for (std::uint64_t t = 0; t < trials; ++t)
        if (run_flat_test(f, d, k, rng).rejected) ++rejecting;
    RejEstimate e;
    e.kind = RejEstimate::Kind::montecarlo;
    e.rejecting = rejecting;
    e.total = trials;
    e.trials = trials;
    e.seed = seed;
    e.value = Rational(rejecting, trials);
    return e;
}

GnOutcome run_gn_test(const BooleanFunction& f, int k, Rng& rng) {
    if (k < 1) throw ParameterError("run_gn_test: k must be positive");
    GnOutcome out;
    out.x0 = rand_bits(rng, f.n);
    out.dirs.ncols = f.n;
    out.dirs.rows.resize(k);
    for (int i = 0; i < k; ++i) out.dirs.rows[i] = rand_bits(rng, f.n);
    // 2^k-term derivative sum over the combination points x0 + sum_{j in J} a_j.
    int sum = 0;
    std::uint64_t p = out.x0;
    std::uint64_t prev_gray = 0;
    for (std::uint64_t j = 0;; ++j) {
        std::uint64_t gray = j ^ (j >> 1);
        if (std::uint64_t diff = prev_gray ^ gray) p ^= out.dirs.rows[__builtin_ctzll(diff)];
        prev_gray = gray;
        sum ^= int(f.eval(p));
        if (j + 1 == (std::uint64_t(1) << k)) break;
    }
    out.rejected = (sum == 1);
    return out;
}

RejEstimate rej_gn_exact(const BooleanFunction& f, int k, std::uint64_t tuple_budget) {
    if (k < 1) throw ParameterError("rej_gn_exact: k must be positive");
    const int n = f.n;
    if (std::uint64_t(n) * k > 60 || (std::uint64_t(1) << (std::uint64_t(n) * k)) > tuple_budget ||
        std::uint64_t(n) * (k + 1) > 62)
        throw ResourceError("rej_gn_exact: 2^" + std::to_string(n * k) +
                            " direction tuples exceed budget; use gowers_sampled");

    std::uint64_t rejecting_points = 0;
    if (n <= 6) {
        const Word mask = word_mask(n);
        const std::uint64_t dom = std::uint64_t(1) << n;
        // Derivative tables nested one direction at a time; the innermost
        // level adds the number of rejecting base points per tuple.
        auto rec = [&](auto&& self, Word t, int level) -> void {
            if (level == k) {
                rejecting_points += __builtin_popcountll(t & mask);
                return;
            }
            for (std::uint64_t a = 0; a < dom; ++a)
                self(self, t ^ translate_word(t, n, unsigned(a)), level + 1);
        };
        rec(rec, f.table[0], 0);
    } else {
        const std::uint64_t dom = std::uint64_t(1) << n;
        auto rec = [&](auto&& self, const Table& t, int level) -> void {
            if (level == k) {
                for (Word w : t) rejecting_points += __builtin_popcountll(w);
                return;
            }
            for (std::uint64_t a = 0; a < dom; ++a) {
                Table dt = translate_table(t, n, a);
                for (std::size_t w = 0; w < dt.size(); ++w) dt[w] ^= t[w];
                self(self, dt, level + 1);
            }
        };
        rec(rec, f.table, 0);
    }

    RejEstimate e;
    e.kind = RejEstimate::Kind::exact;
    e.rejecting = rejecting_points;
    e.total = BigInt(1) << (n * (k + 1));
    e.value = Rational(BigInt(rejecting_points), e.total);
    return e;
}

AmplifiedVerdict amplified_test(const BooleanFunction& f, int d, const Rational& delta, Rng& rng,
                                const ThmConstants& constants) {
    if (delta <= 0 || delta > 1) throw ParameterError("amplified_test: need 0 < delta <= 1");
    if (d + 1 > f.n) throw ParameterError("amplified_test: need d+1 <= n");
    Rational m = (BigInt(1) << d) * delta;
    if (constants.eps1() < m) m = constants.eps1();
    // r = ceil(2/m); a union bound then gives >= 2/3 soundness from the
    // main rejection bound.
    BigInt r_big = (2 * denominator(m) + numerator(m) - 1) / numerator(m);
    if (r_big > (BigInt(1) << 32))
        throw ResourceError("amplified_test: repetition count " + r_big.str() + " is impractical");
    std::uint64_t r = r_big.convert_to<std::uint64_t>();
    AmplifiedVerdict v;
    v.repetitions = r;
    v.query_budget = r << (d + 1);
    v.accepted = true;
    for (std::uint64_t i = 0; i < r; ++i)
        if (run_flat_test(f, d, d + 1, rng).rejected) {
            v.accepted = false;
            break;
        }
    return v;
}

TolerantVerdict tolerant_test(const BooleanFunction& f, int d, Rng& rng, const Rational& c1,
                              const Rational& c2, const ThmConstants& constants) {
    if (c1 <= 0 || c2 <= c1) throw ParameterError("tolerant_test: need 0 < c1 < c2");
    // Guaranteed rejection rates: at most 2*c1 for anything c1*2^-d-close
    // (union bound over the 2^(d+1) uniformly distributed queried points),
    // at least min{c2, eps1} for anything c2*2^-d-far (main bound).
    Rational accept_rate = 2 * c1;
    Rational reject_rate = c2 < constants.eps1() ? c2 : constants.eps1();
    if (accept_rate >= reject_rate)
        throw ParameterError("tolerant_test: no decision gap, need 2*c1 < min{c2, eps1}");
    Rational gap = reject_rate - accept_rate;
    Rational t0 = (accept_rate + reject_rate) / 2;
    // N >= 3/gap^2 tests give two-sided 2/3 confidence by Chebyshev;
    // rounded up to a multiple of 2^d, so N = C * 2^d.
    Rational need = 3 / (gap * gap * (BigInt(1) << d));
    BigInt c_big = (numerator(need) + denominator(need) - 1) / denominator(need);
    BigInt n_big = c_big << d;
    if (n_big > (BigInt(1) << 32))
        throw ResourceError("tolerant_test: sample budget " + n_big.str() + " is impractical");
    TolerantVerdict v;
    v.tests = n_big.convert_to<std::uint64_t>();
    v.threshold = t0;
    for (std::uint64_t i = 0; i < v.tests; ++i)
        if (run_flat_test(f, d, d + 1, rng).rejected) ++v.rejecting;
    v.accepted = Rational(v.rejecting, v.tests) <= t0;
    return v;
}

PwReport check_pw_bound(const BooleanFunction& f, int d, int k, const Budgets& budgets) {
    if (k < d + 1 || k > f.n) throw ParameterError("check_pw_bound: need d+1 <= k <= n");
    PwReport rep;
    rep.delta = delta_exact(RmCode(d, f.n), f, budgets.dim).delta;
    rep.rej = rej_exact(f, d, k, budgets.flats).value;
    for (int l = d + 1; l <= k; ++l) {
        Rational p2l = BigInt(1) << l;
        Rational bound = p2l * rep.delta * (1 - (p2l - 1) * rep.delta);
        bool ok = rep.rej >= bound;
        rep.rows.push_back({l, bound, ok});
        if (!ok) rep.all_ok = false;
    }
    if (rep.delta <= Rational(1, BigInt(1) << (d + 2))) {
        rep.derived_applicable = true;
        Rational half_flat = Rational(BigInt(1) << (k - 1)) * rep.delta;
        rep.derived_bound = half_flat < Rational(1, 8) ? half_flat : Rational(1, 8);
        rep.derived_ok = rep.rej >= rep.derived_bound;
        if (!rep.derived_ok) rep.all_ok = false;
    }
    return rep;
}

KtodReport check_ktod(const BooleanFunction& f, int d, int k, int k2, const Budgets& budgets) {
    if (!(d + 1 <= k2 && k2 <= k && k <= f.n))
        throw ParameterError("check_ktod: need d+1 <= k' <= k <= n");
    KtodReport rep;
    rep.rej_k = rej_exact(f, d, k, budgets.flats).value;
    rep.rej_k2 = rej_exact(f, d, k2, budgets.flats).value;
    rep.ktod_ok = rep.rej_k2 >= rep.rej_k / (BigInt(1) << (k - k2));
    rep.all_ok = rep.ktod_ok;
    if (degree(f) > d) {
        rep.exp_ok = rep.rej_k >= Rational(1, BigInt(1) << (f.n - k));
        if (!*rep.exp_ok) rep.all_ok = false;
        if (f.n == k + 1) {
            rep.basecase_ok = rep.rej_k >= Rational(1, 2);
            if (!*rep.basecase_ok) rep.all_ok = false;
        }
    }
    return rep;
}

bool ExhaustiveReport::all_ok() const { return total_violations() == 0; }

std::uint64_t ExhaustiveReport::total_violations() const {
    std::uint64_t v = 0;
    for (const auto& s : per_d)
        v += s.t1_violations + s.completeness_violations + s.pw_violations + s.ktod_violations +
             s.basecase_violations + s.exp_violations;
    return v;
}

ExhaustiveReport run_exhaustive_verify(int n, const std::vector<int>& d_list,
                                       const ThmConstants& constants, int delta_dim_limit) {
    if (n < 1 || n > 4)
        throw ParameterError("run_exhaustive_verify: exhaustive sweep is limited to n <= 4");
    for (int d : d_list)
        if (d < 0 || d + 1 > n)
            throw ParameterError("run_exhaustive_verify: each d needs d+1 <= n");

    // Canonical flats for every k, flattened for the inner loop.
    struct FlatData {
        std::vector<std::uint64_t> rows;  // k entries per flat
        std::vector<std::uint64_t> bases;
        int count = 0;
    };
    std::vector<FlatData> flats(n + 1);
    for (int k = 1; k <= n; ++k) {
        enumerate_flats_raw(n, k, [&](const std::uint64_t* rows, std::uint64_t base) {
            for (int i = 0; i < k; ++i) flats[k].rows.push_back(rows[i]);
            flats[k].bases.push_back(base);
        });
        flats[k].count = int(flats[k].bases.size());
    }

    // Codeword tables for the distance oracle, where the dimension allows.
    struct CodeData {
        bool enabled = false;
        std::vector<Word> tables;
    };
    std::vector<CodeData> codes;
    for (int d : d_list) {
        CodeData cd;
        RmCode code(d, n);
        if (code.dim() <= delta_dim_limit) {
            cd.enabled = true;
            cd.tables.reserve(std::size_t(1) << code.dim());
            codewords(code, [&](const BooleanFunction& g) { cd.tables.push_back(g.table[0]); });
        }
        codes.push_back(std::move(cd));
    }

    ExhaustiveReport rep;
    rep.n = n;
    rep.per_d.resize(d_list.size());
    for (std::size_t di = 0; di < d_list.size(); ++di) {
        rep.per_d[di].d = d_list[di];
        rep.per_d[di].delta_checked = codes[di].enabled;
        rep.per_d[di].functions = std::uint64_t(1) << (1 << n);
    }

    const Rational eps1 = constants.eps1();
    // Track the minimum ratio as an unreduced fraction; only a handful of
    // updates ever happen, so exact Rational compares are cheap.
    std::vector<Rational> min_ratio(d_list.size(), Rational(-1));
    std::vector<std::uint64_t> min_fn(d_list.size(), 0);

    const std::uint64_t nfuncs = std::uint64_t(1) << (1 << n);
    std::vector<std::array<int, 8>> exceed(n + 1);  // exceed[k][dd] = #flats with deg(f|A) > dd

    for (std::uint64_t fbits = 0; fbits < nfuncs; ++fbits) {
        const Word table = fbits;
        // Global degree.
        int fdeg = -1;
        {
            Word a = moebius_word(table, n);
            while (a) {
                int b = __builtin_ctzll(a);
                a &= a - 1;
                fdeg = std::max(fdeg, __builtin_popcount(unsigned(b)));
            }
        }
        // Restriction-degree histogram per k.
        for (int k = 1; k <= n; ++k) {
            exceed[k].fill(0);
            const auto& fd = flats[k];
            for (int i = 0; i < fd.count; ++i) {
                Word r = restrict_word1(table, &fd.rows[std::size_t(i) * k], k, fd.bases[i]);
                int rd = word_restriction_degree(r, k);
                for (int dd = 0; dd < rd; ++dd) ++exceed[k][dd];
            }
        }

        for (std::size_t di = 0; di < d_list.size(); ++di) {
            const int d = d_list[di];
            auto& stat = rep.per_d[di];

            // Perfect completeness: Rej_{d,k} = 0 iff deg f <= d.
            for (int k = d + 1; k <= n; ++k)
                if ((fdeg <= d) != (exceed[k][d] == 0)) ++stat.completeness_violations;

            // Dimension relations (integer cross-multiplication throughout).
            for (int k = d + 1; k <= n; ++k) {
                const std::int64_t a_k = exceed[k][d], N_k = flats[k].count;
                for (int k2 = d + 1; k2 <= k; ++k2) {
                    const std::int64_t a_k2 = exceed[k2][d], N_k2 = flats[k2].count;
                    if (a_k2 * N_k * (std::int64_t(1) << (k - k2)) < a_k * N_k2)
                        ++stat.ktod_violations;
                }
                if (fdeg > d) {
                    if (a_k * (std::int64_t(1) << (n - k)) < N_k) ++stat.exp_violations;
                    if (k == n - 1 && 2 * a_k < N_k) ++stat.basecase_violations;
                }
            }

            if (!codes[di].enabled) continue;

            // Exact distance by scanning the codeword tables.
            int werr = 1 << n;
            for (Word cw : codes[di].tables)
                werr = std::min(werr, __builtin_popcountll(table ^ cw));
            const Rational delta(werr, std::int64_t(1) << n);

            // Main bound at k = d+1 and the pointwise bound for all l, k.
            const std::int64_t N1 = flats[d + 1].count, a1 = exceed[d + 1][d];
            Rational m = (BigInt(1) << d) * delta;
            if (eps1 < m) m = eps1;
            Rational rej(a1, N1);
            if (rej < m) ++stat.t1_violations;
            if (werr > 0) {
                Rational ratio = rej / m;
                if (min_ratio[di] < 0 || ratio < min_ratio[di]) {
                    min_ratio[di] = ratio;
                    min_fn[di] = fbits;
                }
            }

            for (int k = d + 1; k <= n; ++k) {
                const std::int64_t a_k = exceed[k][d], N_k = flats[k].count;
                for (int l = d + 1; l <= k; ++l) {
                    // Rej >= 2^l * delta * (1 - (2^l - 1) delta), cleared of
                    // denominators: a*2^(2n) >= N * 2^l * w * (2^n - (2^l-1) w).
                    const std::int64_t w = werr, two_l = std::int64_t(1) << l;
                    const std::int64_t lhs = a_k << (2 * n);
                    const std::int64_t rhs = N_k * two_l * w * ((std::int64_t(1) << n) - (two_l - 1) * w);
                    if (lhs < rhs) ++stat.pw_violations;
                }
            }
        }
    }

    for (std::size_t di = 0; di < d_list.size(); ++di) {
        rep.per_d[di].empirical_min_ratio = min_ratio[di];
        rep.per_d[di].empirical_min_function = min_fn[di];
    }
    return rep;
}

}  // namespace rmtest
