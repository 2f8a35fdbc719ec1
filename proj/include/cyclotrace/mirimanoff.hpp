#pragma once

/// Mirimanoff polynomials M_k(X) = sum_{j=1}^{p-1} j^{k-1} X^j over Z/p,
/// the r_p statistics and the p < 1000 scan, circulant matrices C(x) with
/// spectra and ranks, the dim V(x) logarithm oracle, Bernoulli numbers mod p,
/// the irregularity index, and Kummer's congruences (K).

#include <atomic>
#include <cstdint>
#include <thread>
#include <vector>

#include "cyclotrace/audit.hpp"
#include "cyclotrace/errors.hpp"
#include "cyclotrace/linalg.hpp"
#include "cyclotrace/modp.hpp"
#include "cyclotrace/rings.hpp"

namespace cyclo {

/// M_k(t), 1 <= k <= p, t != 0. Direct evaluation from the definition.
inline uint32_t mirimanoff_eval(const Prime& pr, uint32_t k, uint32_t t) {
    uint32_t p = pr.value();
    t %= p;
    if (t == 0) throw bad_input("M_k(0) is excluded (t must be nonzero)");
    if (k < 1 || k > p) throw index_range("Mirimanoff index k must lie in [1,p]");
    uint64_t acc = 0;
    uint32_t tj = 1;
    for (uint32_t j = 1; j < p; ++j) {
        tj = mod_mul(tj, t, p);
        acc += mod_mul(mod_pow(j, k - 1, p), tj, p);
    }
    return static_cast<uint32_t>(acc % p);
}

namespace detail {

/// All odd-index values M_{2k+1}(t), k = 1..(p-1)/2, via incremental powers:
/// M_{2k+1}(t) = sum_{j=1}^{h} j^{2k} (t^j + t^{p-j}).
inline std::vector<uint32_t> odd_values_incremental(uint32_t p, uint32_t t) {
    uint32_t h = (p - 1) / 2;
    std::vector<uint32_t> tp(p, 1);
    for (uint32_t j = 1; j < p; ++j) tp[j] = mod_mul(tp[j - 1], t, p);
    std::vector<uint32_t> w(h + 1), q(h + 1);
    for (uint32_t j = 1; j <= h; ++j) {
        w[j] = mod_add(tp[j], tp[p - j], p);
        q[j] = mod_mul(j, j, p);
    }
    std::vector<uint32_t> out(h);
    for (uint32_t k = 1; k <= h; ++k) {
        uint64_t sum = 0;
        for (uint32_t j = 1; j <= h; ++j) {
            w[j] = mod_mul(w[j], q[j], p);
            sum += w[j];
        }
        out[k - 1] = static_cast<uint32_t>(sum % p);
    }
    return out;
}

} // namespace detail

struct mirimanoff_record {
    uint32_t p = 0;
    uint32_t t = 0;
    std::vector<uint32_t> values;  // M_{2k+1}(t), k = 1..(p-1)/2
    uint32_t r_p_of_t = 0;
};

inline mirimanoff_record make_mirimanoff_record(const Prime& pr, uint32_t t) {
    uint32_t p = pr.value();
    t %= p;
    if (t == 0 || t == 1 || t == p - 1) throw excluded_t("t must avoid {0,1,-1}");
    mirimanoff_record rec{p, t, detail::odd_values_incremental(p, t), 0};
    for (uint32_t v : rec.values)
        if (v) ++rec.r_p_of_t;
    return rec;
}

inline uint32_t r_p_of_t(const Prime& pr, uint32_t t) { return make_mirimanoff_record(pr, t).r_p_of_t; }

struct rp_scan_record {
    uint32_t p = 0;
    uint32_t r_p = 0;
    uint32_t argmin_t = 0;        // smallest admissible t achieving the minimum
    uint32_t max_zero_count = 0;  // max over t of #{k : M_{2k+1}(t) = 0}
    bool above_threshold = false; // r_p > (p+11)/4

    double threshold() const { return (p + 11) / 4.0; }
};

/// r_p = min over t in Z/p \ {0,1,-1}; Montgomery inner loop, one pass per
/// orbit of t <-> t^{-1} (M_{2k+1} is invariant under t -> 1/t).
inline rp_scan_record r_p(const Prime& pr) {
    uint32_t p = pr.value();
    if (p < 5) throw bad_input("r_p needs p >= 5");
    uint32_t h = (p - 1) / 2;
    Mont32 mt(p);
    std::vector<uint32_t> q(h + 1);
    for (uint32_t j = 1; j <= h; ++j) q[j] = mt.to(mod_mul(j, j, p));

    std::vector<uint32_t> tp(p), w(h + 1);
    std::vector<int64_t> cache(p, -1);
    uint32_t best_r = h + 1, best_t = 0, check_m3_t2 = 0;
    for (uint32_t t = 2; t <= p - 2; ++t) {
        uint32_t r;
        uint32_t ti = mod_inv(t, p);
        if (ti < t && cache[ti] >= 0) {
            r = static_cast<uint32_t>(cache[ti]);
        } else {
            tp[0] = 1;
            for (uint32_t j = 1; j < p; ++j) tp[j] = mod_mul(tp[j - 1], t, p);
            for (uint32_t j = 1; j <= h; ++j) w[j] = mt.to(mod_add(tp[j], tp[p - j], p));
            uint32_t zeros = 0;
            for (uint32_t k = 1; k <= h; ++k) {
                uint64_t sum = 0;
                for (uint32_t j = 1; j <= h; ++j) {
                    w[j] = mt.mul(w[j], q[j]);
                    sum += w[j];
                }
                uint32_t value = static_cast<uint32_t>(sum % p);
                if (value == 0) ++zeros;
                if (t == 2 && k == 1) check_m3_t2 = mt.from(value);
            }
            r = h - zeros;
        }
        cache[t] = r;
        if (r < best_r) { best_r = r; best_t = t; }
    }
    // incremental evaluation must agree with the naive definition
    if (check_m3_t2 != mirimanoff_eval(pr, 3, 2))
        throw error("incremental Mirimanoff evaluation disagrees with naive evaluation at p=" +
                    std::to_string(p));
    rp_scan_record rec;
    rec.p = p;
    rec.r_p = best_r;
    rec.argmin_t = best_t;
    rec.max_zero_count = h - best_r;
    rec.above_threshold = 4ull * best_r > p + 11ull;
    return rec;
}

/// One record per odd prime 5 <= p < p_max; deterministic output independent
/// of the worker count (results are indexed by the sorted prime list).
inline std::vector<rp_scan_record> scan_rp(uint32_t p_max, unsigned workers = 1) {
    if (workers < 1) throw bad_input("worker count must be >= 1");
    auto primes = odd_primes_in(5, p_max);
    std::vector<rp_scan_record> out(primes.size());
    std::atomic<size_t> next{0};
    auto body = [&] {
        for (size_t i = next.fetch_add(1); i < primes.size(); i = next.fetch_add(1))
            out[i] = r_p(Prime(primes[i]));
    };
    if (workers == 1) {
        body();
    } else {
        std::vector<std::thread> pool;
        for (unsigned w = 0; w < workers; ++w) pool.emplace_back(body);
        for (auto& th : pool) th.join();
    }
    return out;
}

// ---------------------------------------------------------------------------
// Circulant matrices C(x) (Prop 54) and their spectra (Prop 57).
// ---------------------------------------------------------------------------

struct circulant {
    uint32_t p = 0;
    uint32_t x = 0;
    uint32_t s = 0;
    std::vector<uint32_t> first_row;  // alpha_1 .. alpha_{(p-1)/2}

    /// Row i (1-based): cyclic right-shift of row 1 by i-1.
    std::vector<uint32_t> row(uint32_t i) const {
        uint32_t n = static_cast<uint32_t>(first_row.size());
        std::vector<uint32_t> r(n);
        for (uint32_t j = 0; j < n; ++j) r[j] = first_row[(j + n - (i - 1) % n) % n];
        return r;
    }
    fp_matrix matrix() const {
        fp_matrix m;
        for (uint32_t i = 1; i <= first_row.size(); ++i) m.push_back(row(i));
        return m;
    }
};

/// Literal-convention circulant (the convention the audit weighs).
inline circulant make_circulant(const Prime& pr, uint32_t x) {
    uint32_t p = pr.value(), s = primitive_root(pr);
    return {p, x % p, s, alpha_row_literal(p, s, x % p)};
}

inline circulant make_circulant_pm(const Prime& pr, uint32_t x) {
    uint32_t p = pr.value(), s = primitive_root(pr);
    return {p, x % p, s, alpha_row_pm(p, s, x % p)};
}

struct spectrum_result {
    std::vector<uint32_t> eigenvalues;  // lambda_k, k = 1..(p-1)/2
    size_t rank = 0;
};

/// Eigenvalues via the character sums lambda_k = sum_j alpha_j (v^k)^{j-1}
/// with v = s^2 of order (p-1)/2; X^{(p-1)/2} - 1 is separable, so C
/// diagonalizes and the rank is the number of nonzero eigenvalues. The rank
/// is cross-checked against Gaussian elimination.
inline spectrum_result circulant_spectrum(const circulant& c) {
    uint32_t p = c.p, n = static_cast<uint32_t>(c.first_row.size());
    uint32_t v = mod_mul(c.s, c.s, p);
    spectrum_result res;
    res.eigenvalues.resize(n);
    for (uint32_t k = 1; k <= n; ++k) {
        uint32_t vk = mod_pow(v, k, p);
        uint64_t acc = 0;
        uint32_t pw = 1;
        for (uint32_t j = 1; j <= n; ++j) {
            acc += mod_mul(c.first_row[j - 1], pw, p);
            pw = mod_mul(pw, vk, p);
        }
        res.eigenvalues[k - 1] = static_cast<uint32_t>(acc % p);
    }
    for (uint32_t e : res.eigenvalues)
        if (e) ++res.rank;
    size_t gauss = fp_rank(c.matrix(), p);
    if (gauss != res.rank)
        throw error("circulant rank from eigenvalues disagrees with Gaussian elimination");
    return res;
}

/// dim V(x) = dim span(z_k(x), 1 <= k <= (p-1)/2) inside K_1(R;Z/p).
/// K_1(R;Z/p) = 1 + uZ/p[u] is elementary abelian ((1+uf)^p = 1 since
/// u^p = 0), so the truncated logarithm linearizes it and the dimension is
/// the rank of the log vectors.
inline size_t dim_V(const Prime& pr, uint32_t x) {
    r_ring r(pr);
    uint32_t p = r.p();
    x %= p;
    if (x == 0 || x == 1) throw degenerate_x("dim V(x) needs x outside {0,1}");
    fp_matrix logs;
    for (uint32_t k = 1; k <= r.half(); ++k) {
        auto l = r.log(r.z_k(x, k));
        logs.emplace_back(l.c.begin() + 1, l.c.end());
    }
    return fp_rank(std::move(logs), p);
}

/// Prop 57 / Prop 54 / Thm 58 audit for one (p, x):
///  (i)  spectrum of C(x) vs {M_{2k+1}(x/y)}, literal and p-m conventions;
///  (ii) sum alpha_k vs -1 (the proof step of Prop 54);
///  (iii) rank C(x) vs r_p(x/y);
///  (iv) dim V(x) against rank C(x), rank of the exact trace matrix, and
///       r_p(x/y).
inline void prop57_audit(audit_report& rep, const Prime& pr, uint32_t x) {
    uint32_t p = pr.value();
    x %= p;
    uint32_t inv2 = mod_inv(2, p);
    if (x == 0 || x == 1 || x == mod_mul(1, inv2, p))
        throw degenerate_x("prop57 audit needs x outside {0,1,1/2}");
    uint32_t y = mod_sub(x, 1, p);
    uint32_t xy = mod_mul(x, mod_inv(y, p), p);
    std::string in = "p=" + std::to_string(p) + ",x=" + std::to_string(x);

    auto lit = make_circulant(pr, x);
    auto pm = make_circulant_pm(pr, x);
    auto spec_lit = circulant_spectrum(lit);
    auto spec_pm = circulant_spectrum(pm);

    auto mrec = make_mirimanoff_record(pr, xy);  // x/y avoids {0,1,-1} iff x avoids {0,1,1/2}
    auto sorted = [](std::vector<uint32_t> v) {
        std::sort(v.begin(), v.end());
        return v;
    };
    auto mvals = sorted(mrec.values);

    rep.check("prop57.spectrum_literal",
              "§4.3 Prop 57, \"Les valeurs propres de la matrice C(x) sont M_{2k+1}(x/y)\"", in,
              detail::vec_str(mvals), detail::vec_str(sorted(spec_lit.eigenvalues)),
              sorted(spec_lit.eigenvalues) == mvals, "literal alpha convention");
    rep.check("prop57.spectrum_pm", "§4.3 Prop 57 under alpha_k = (x/y)^m + (x/y)^{p-m}", in,
              detail::vec_str(mvals), detail::vec_str(sorted(spec_pm.eigenvalues)),
              sorted(spec_pm.eigenvalues) == mvals, "p-m alpha convention");

    uint64_t sum_lit = 0, sum_pm = 0;
    for (uint32_t a : lit.first_row) sum_lit += a;
    for (uint32_t a : pm.first_row) sum_pm += a;
    uint32_t sl = static_cast<uint32_t>(sum_lit % p), sp = static_cast<uint32_t>(sum_pm % p);
    rep.check("prop57.sum_alpha", "§4.3 Prop 54 proof, \"Puisque sum alpha_k = -1\"", in,
              std::to_string(p - 1), std::to_string(sl), sl == p - 1,
              "p-m convention gives " + std::to_string(sp));

    rep.check("prop57.rank_literal", "§4.3 Prop 57, \"Le rang de la matrice C(x) est r_p(x/y)\"", in,
              std::to_string(mrec.r_p_of_t), std::to_string(spec_lit.rank),
              spec_lit.rank == mrec.r_p_of_t, "literal alpha convention");
    rep.check("prop57.rank_pm", "§4.3 Prop 57 rank under the p-m convention", in,
              std::to_string(mrec.r_p_of_t), std::to_string(spec_pm.rank),
              spec_pm.rank == mrec.r_p_of_t, "p-m alpha convention");

    size_t dv = dim_V(pr, x);
    rep.check("prop54.literal", "§4.3 Prop 54, \"dim V(x) >= rg(C(x))\"", in,
              "dim V >= " + std::to_string(spec_lit.rank), "dim V = " + std::to_string(dv),
              dv >= spec_lit.rank, "literal alpha convention");

    r_ring r(pr);
    fp_matrix trace_rows;
    for (uint32_t k = 1; k <= r.half(); ++k)
        trace_rows.push_back(r.to_f_basis(r.dennis_trace(r.z_k(x, k))).minus);
    size_t trank = fp_rank(std::move(trace_rows), p);
    rep.check("prop54.trace_rank_le_dimv",
              "§2.5 trace is a homomorphism, so image rank bounds source dimension", in,
              "rank(trace matrix) <= dim V",
              "rank=" + std::to_string(trank) + ", dim V=" + std::to_string(dv), trank <= dv);

    rep.check("thm58.dimv_ge_rp", "§4.3 Thm 58, \"dim V(x) >= r_p(x/y)\"", in,
              "dim V >= " + std::to_string(mrec.r_p_of_t), "dim V = " + std::to_string(dv),
              dv >= mrec.r_p_of_t);
}

// ---------------------------------------------------------------------------
// Bernoulli numbers mod p and Kummer's congruences.
// ---------------------------------------------------------------------------

struct bernoulli_table {
    uint32_t p = 0;
    std::vector<uint32_t> residues;   // B_k mod p, k = 0..p-3
    std::vector<uint32_t> irregular;  // even indices 2k <= p-3 with B_{2k} = 0
};

/// Residues of B_0..B_{p-3} via sum_{j=0}^{k} C(k+1,j) B_j = 0; all the
/// denominators k+1 <= p-2 are invertible mod p.
inline bernoulli_table bernoulli_mod_p(const Prime& pr) {
    uint32_t p = pr.value();
    if (p < 5) throw bad_input("bernoulli_mod_p needs p >= 5");
    uint32_t n = p - 2;  // indices 0..p-3
    std::vector<uint32_t> fact(p, 1), ifact(p, 1);
    for (uint32_t i = 1; i < p; ++i) fact[i] = mod_mul(fact[i - 1], i, p);
    ifact[p - 1] = mod_inv(fact[p - 1], p);
    for (uint32_t i = p - 1; i > 0; --i) ifact[i - 1] = mod_mul(ifact[i], i, p);
    auto binom = [&](uint32_t a, uint32_t b) {
        return mod_mul(fact[a], mod_mul(ifact[b], ifact[a - b], p), p);
    };
    bernoulli_table tab;
    tab.p = p;
    tab.residues.assign(n, 0);
    tab.residues[0] = 1;
    tab.residues[1] = mod_neg(mod_inv(2, p), p);
    for (uint32_t k = 2; k < n; ++k) {
        uint64_t acc = 0;
        for (uint32_t j = 0; j < k; ++j)
            acc += mod_mul(binom(k + 1, j), tab.residues[j], p);
        uint32_t v = mod_mul(static_cast<uint32_t>(acc % p), mod_inv(k + 1, p), p);
        tab.residues[k] = mod_neg(v, p);
    }
    for (uint32_t k = 1; 2 * k <= p - 3; ++k)
        if (tab.residues[2 * k] == 0) tab.irregular.push_back(2 * k);
    return tab;
}

struct irregularity {
    uint32_t count = 0;
    std::vector<uint32_t> witnesses;
};

/// i(p) = #{k, 1 <= k <= (p-3)/2, p | B_{2k}}.
inline irregularity irregular_index(const Prime& pr) {
    auto tab = bernoulli_mod_p(pr);
    return {static_cast<uint32_t>(tab.irregular.size()), tab.irregular};
}

/// All t in Z/p \ {0,1} satisfying (K): B_{p-(2k+1)} M_{2k+1}(t) = 0 for
/// every 1 <= k <= (p-3)/2. t = -1 always qualifies.
inline std::vector<uint32_t> kummer_congruence_solutions(const Prime& pr) {
    uint32_t p = pr.value();
    if (p < 5) throw bad_input("kummer congruences need p >= 5");
    auto tab = bernoulli_mod_p(pr);
    std::vector<uint32_t> out;
    for (uint32_t t = 2; t < p; ++t) {
        auto vals = detail::odd_values_incremental(p, t);
        bool ok = true;
        for (uint32_t k = 1; 2 * k + 1 <= p - 2 && ok; ++k) {
            uint32_t b = tab.residues[p - (2 * k + 1)];
            if (mod_mul(b, vals[k - 1], p) != 0) ok = false;
        }
        if (ok) out.push_back(t);
    }
    return out;
}

} // namespace cyclo
