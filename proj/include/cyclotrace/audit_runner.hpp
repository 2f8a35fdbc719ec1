#pragma once

/// Drives every registered claim check and collects the verdicts in one
/// audit_report. Cyclotomic claims run for all primes 5 <= p <= pmax; the
/// Scholie threshold assertions for 43 <= p < scan_pmax only run when a scan
/// bound is given (the p < 1000 scan is the expensive part).

#include <cstdint>
#include <numeric>
#include <string>

#include "cyclotrace/audit.hpp"
#include "cyclotrace/kummer.hpp"
#include "cyclotrace/mirimanoff.hpp"
#include "cyclotrace/modp.hpp"
#include "cyclotrace/quadratic.hpp"
#include "cyclotrace/rings.hpp"

namespace cyclo {

/// gamma identity, Prop 47 leading coefficients and non-colinearity, per p.
inline void audit_gamma_prop47(audit_report& rep, const Prime& pr) {
    uint32_t p = pr.value();
    std::string in = "p=" + std::to_string(p);
    lambda_ring lr(pr);

    bool gamma_ok = gamma_series_check(pr);
    rep.check("gamma.closed_form", "§4.4, \"gamma_0(x) = 2y et\" (full coefficient identity)", in,
              "trace coefficients equal gamma_k for all x, k", gamma_ok ? "verified" : "violated",
              gamma_ok);

    bool leading = true, noncol = true;
    uint32_t inv2 = mod_inv(2, p);
    auto tr1ml = lr.dennis_trace(lr.one_minus_lambda());
    for (uint32_t x = 2; x < p; ++x) {
        uint32_t y = mod_sub(x, 1, p);
        auto tr = lr.dennis_trace(lr.z_prime(x));
        uint32_t g2 = mod_add(mod_mul(3, y, p),
                              mod_add(mod_mul(3, mod_mul(y, y, p), p),
                                      mod_mul(2, mod_pow(y, 3, p), p), p), p);
        if (tr.c[0] != mod_mul(2, y, p) || tr.c[1] != mod_mul(2, y, p)) leading = false;
        if (p >= 7 && tr.c[2] != g2) leading = false;
        if (x != inv2) {
            fp_matrix m{tr.c, tr1ml.c};
            if (fp_rank(std::move(m), p) != 2) noncol = false;
        }
    }
    rep.check("prop47.leading", "§4.2 Prop 47 proof, \"2ydlambda + 2ylambda dlambda + (3y+3y^2+2y^3)...\"",
              in, "(2y, 2y, 3y+3y^2+2y^3)", leading ? "verified" : "violated", leading);
    rep.check("prop47.noncolinear", "§4.2 Prop 47, \"pas colineaire a l'element 1-lambda\"", in,
              "independent for x outside {0,1,1/2}", noncol ? "verified" : "violated", noncol);
}

inline void audit_mirimanoff_basics(audit_report& rep, const Prime& pr) {
    uint32_t p = pr.value();
    std::string in = "p=" + std::to_string(p);
    bool m1 = true, mm1 = true;
    for (uint32_t t = 2; t < p; ++t)
        if (mirimanoff_eval(pr, 1, t) != 0) m1 = false;
    for (uint32_t k = 1; k <= (p - 1) / 2; ++k)
        if (mirimanoff_eval(pr, 2 * k + 1, p - 1) != 0) mm1 = false;
    rep.check("mirimanoff.m1_zero", "§4.3 geometric sum: M_1(t) = 0 for t outside {0,1}", in,
              "0", m1 ? "verified" : "violated", m1);
    rep.check("mirimanoff.m_at_minus_one", "§4.3 pairing j <-> p-j: M_{2k+1}(-1) = 0", in, "0",
              mm1 ? "verified" : "violated", mm1);
}

inline void audit_scholie_small_p(audit_report& rep) {
    for (uint32_t p : odd_primes_in(5, 43)) {
        auto rec = r_p(Prime(p));
        rep.check("scholie.small_p", "§4.5, \"Pour p<1000 ... toujours l'inegalite r_p>(p+11)/4\"",
                  "p=" + std::to_string(p), "r_p > (p+11)/4",
                  "r_p=" + std::to_string(rec.r_p) + ", threshold=" + std::to_string(rec.threshold()),
                  rec.above_threshold);
    }
}

/// Scholie + max-zeros assertions over a full scan (5 <= p < scan_pmax).
inline void audit_scholie_scan(audit_report& rep, const std::vector<rp_scan_record>& recs) {
    bool large_ok = true;
    uint32_t worst_p = 0;
    uint32_t max_zeros = 0, max_zero_p = 0;
    for (auto& r : recs) {
        if (r.p >= 43 && !r.above_threshold) { large_ok = false; worst_p = r.p; }
        if (r.max_zero_count > max_zeros) { max_zeros = r.max_zero_count; max_zero_p = r.p; }
    }
    rep.check("scholie.large_p", "§4.5, \"r_p>(p+11)/4\" asserted for 43 <= p", "scan",
              "all above threshold",
              large_ok ? "verified" : "violated at p=" + std::to_string(worst_p), large_ok);
    rep.check("scan.max_zeros", "§4.5, \"le nombre maximal de valeurs nulles pour M_{2k+1}(t) est 7\"",
              "scan", "<= 7",
              "max zeros = " + std::to_string(max_zeros) + " at p=" + std::to_string(max_zero_p),
              max_zeros <= 7);
}

inline void audit_bernoulli(audit_report& rep) {
    static const std::vector<uint32_t> expected = {37, 59, 67, 101, 103, 131, 149,
                                                   157, 233, 257, 263, 271, 283, 293};
    std::vector<uint32_t> got;
    for (uint32_t p : odd_primes_in(5, 300))
        if (irregular_index(Prime(p)).count > 0) got.push_back(p);
    rep.check("bernoulli.irregular_below_300", "§4.6, \"i(p) = #{k ... p | B_{2k}}\"", "p<300",
              detail::vec_str(expected), detail::vec_str(got), got == expected);
}

inline void audit_kummer_congruences(audit_report& rep, uint32_t pmax) {
    bool minus_one_ok = true;
    for (uint32_t p : odd_primes_in(5, pmax + 1)) {
        auto sols = kummer_congruence_solutions(Prime(p));
        if (std::find(sols.begin(), sols.end(), p - 1) == sols.end()) minus_one_ok = false;
    }
    rep.check("kummer_congruence.minus_one", "§4.6 (K): M_{2k+1}(-1) = 0 kills every product",
              "p<=" + std::to_string(pmax), "-1 always a solution",
              minus_one_ok ? "verified" : "violated", minus_one_ok);
    auto s5 = kummer_congruence_solutions(Prime(5));
    auto s7 = kummer_congruence_solutions(Prime(7));
    rep.check("kummer_congruence.small_p", "§4.6 (K) desk values", "p=5,7", "{4} and {6}",
              detail::vec_str(s5) + " and " + detail::vec_str(s7),
              s5 == std::vector<uint32_t>{4} && s7 == std::vector<uint32_t>{6});
}

inline void audit_triangular(audit_report& rep, uint32_t pmax) {
    for (uint32_t p : odd_primes_in(5, pmax + 1)) {
        auto res = triangular_relation(Prime(p));
        std::string in = "p=" + std::to_string(p);
        std::string computed = std::string(res.lower_solvable ? "lower-triangular A exists" : "no solution") +
                               (res.invertible ? ", invertible" : ", singular");
        if (p <= 13) {
            rep.check("triangular.small_p", "§4.4, \"Pour p <= 13, on constate qu'il existe une matrice "
                      "triangulaire A\"", in, "triangular invertible A", computed,
                      res.lower_solvable && res.invertible);
        } else {
            rep.check("triangular.large_p", "§4.4, \"si cette observation se generalise\" (open)", in,
                      "(recorded)", computed, res.lower_solvable && res.invertible);
        }
    }
}

inline void audit_quadratic_tables(audit_report& rep) {
    struct row { long delta; unsigned long n; long alpha, b; uint64_t expect_order; bool exact; };
    static const row rows[] = {
        {-104, 3, 2, 3, 3, true},
        {-127, 5, 1, 2, 5, true},
        {-511, 7, 1, 2, 7, false},  // paper asserts nontrivial 7-torsion; order reported verbatim
    };
    for (auto& r : rows) {
        auto cert = certify_table_entry(mpz_from_ll(r.delta), r.n, mpz_from_ll(r.alpha), mpz_from_ll(r.b));
        bool ok = r.exact ? (cert.order == r.expect_order) : (cert.order % r.n == 0);
        rep.check("quad.certify", "§3.3 Prop 39, \"Alors Cl(A)_{(n)} != 0\"",
                  "delta=" + std::to_string(r.delta) + ",n=" + std::to_string(r.n),
                  r.exact ? "order " + std::to_string(r.expect_order)
                          : std::to_string(r.n) + " | order",
                  "order " + std::to_string(cert.order), ok);
    }
    struct hrow { long delta; uint64_t h; };
    static const hrow hs[] = {{-104, 6}, {-127, 5}, {-231, 12}};
    for (auto& r : hs) {
        uint64_t h = class_number(quad_disc(mpz_from_ll(r.delta)));
        rep.check("quad.class_number", "§3.3-3.4 table discriminants (reduced-form enumeration)",
                  "delta=" + std::to_string(r.delta), "h=" + std::to_string(r.h),
                  "h=" + std::to_string(h), h == r.h);
    }

    // n=3 search recovers the published imaginary table rows
    auto found = torsion_search(3, 20, 25);
    auto has_delta = [&](long d) {
        for (auto& w : found)
            if (w.delta == d) return true;
        return false;
    };
    bool recovered = has_delta(-104) && has_delta(-5320) && has_delta(-48664);
    rep.check("quad.search_recovers", "§3.3, \"delta=-104=2^2-4*3^3\", \"-5320\", \"-48664\"",
              "n=3,alpha<=20,b<=25", "{-104,-5320,-48664} recovered",
              recovered ? "recovered" : "missing entries", recovered);

    // real-quadratic pipeline: the printed delta=231 is 321
    auto eps = fundamental_unit(quad_disc(mpz(321)));
    bool unit_ok = (eps.alpha == 430 && eps.beta == 24 && quad_norm(eps) == 1);
    bool cond_ok = unit_condition(quad_disc(mpz(321)), 3);
    unsigned long tr = dennis_trace_quad(quad_int(mpz(321), mpz(17), mpz(1)), 3);
    rep.check("quad.unit_321", "§3.4, \"d'unite fondamentale (430+24 sqrt(delta))/2\"", "delta=321",
              "eps=(430+24 sqrt(321))/2, N=+1, 3 | eps_2, trace != 0",
              "eps=(" + eps.alpha.get_str() + "+" + eps.beta.get_str() + " sqrt(321))/2, trace=" +
                  std::to_string(tr),
              unit_ok && cond_ok && tr != 0);
    rep.check("quad.erratum_321", "§3.4 table, \"delta=231=17^2-4*(-2)^3=3*107\"", "printed 231",
              "231", "17^2+32 = 321 = 3*107 (and h listing under 231 is inconsistent)", false,
              "printed discriminant contradicts its own defining equation");
}

struct audit_options {
    uint32_t pmax = 31;       // grid bound for the per-(p,x) cyclotomic audits
    uint32_t scan_pmax = 0;   // 0 = skip the r_p scan claims
    unsigned workers = 1;
    bool assert_all = false;  // promote report-only claims to assertions
};

inline audit_report run_all_audits(const audit_options& opt = {}) {
    audit_report rep;
    rep.assert_all(opt.assert_all);
    for (uint32_t p : odd_primes_in(5, opt.pmax + 1)) {
        Prime pr(p);
        audit_gamma_prop47(rep, pr);
        audit_mirimanoff_basics(rep, pr);
        fbasis_audit(rep, pr);
        uint32_t inv2 = mod_inv(2, p);
        for (uint32_t x = 2; x < p; ++x) {
            trace_audit_prop52(rep, pr, x);
            if (x != inv2) prop57_audit(rep, pr, x);
        }
        mirimanoff_identity_audit(rep, pr);
    }
    audit_triangular(rep, opt.pmax);
    audit_scholie_small_p(rep);
    if (opt.scan_pmax >= 43) audit_scholie_scan(rep, scan_rp(opt.scan_pmax, opt.workers));
    audit_bernoulli(rep);
    audit_kummer_congruences(rep, std::min<uint32_t>(opt.pmax, 101));
    audit_quadratic_tables(rep);
    return rep;
}

} // namespace cyclo
