// Acceptance suite: one line per criterion, PASS or FAIL with detail.
// Exits nonzero if any criterion fails. argv[1] (optional) is the path to
// the cyclotrace binary, used by the determinism criterion.

#include <array>
#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "cyclotrace/audit_runner.hpp"
#include "cyclotrace/kummer.hpp"
#include "cyclotrace/mirimanoff.hpp"
#include "cyclotrace/quadratic.hpp"
#include "cyclotrace/rings.hpp"
#include "oracles.hpp"

using namespace cyclo;

namespace {

std::string g_cli_path;

double seconds_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

std::string run_cli(const std::string& args, int& status) {
    std::string cmd = g_cli_path + " " + args + " 2>/dev/null";
    FILE* pipe = popen(cmd.c_str(), "r");
    if (!pipe) { status = -1; return ""; }
    std::string out;
    std::array<char, 4096> buf;
    size_t n;
    while ((n = fread(buf.data(), 1, buf.size(), pipe)) > 0) out.append(buf.data(), n);
    int rc = pclose(pipe);
    status = WIFEXITED(rc) ? WEXITSTATUS(rc) : -1;
    return out;
}

struct harness {
    int failures = 0;

    void criterion(int id, const std::string& name, const std::function<bool(std::string&)>& body) {
        std::string detail;
        bool ok = false;
        try {
            ok = body(detail);
        } catch (const std::exception& e) {
            detail = std::string("exception: ") + e.what();
        }
        std::printf("[%s] %2d %s%s%s\n", ok ? "PASS" : "FAIL", id, name.c_str(),
                    detail.empty() ? "" : " -- ", detail.c_str());
        std::fflush(stdout);
        if (!ok) ++failures;
    }
};

} // namespace

int main(int argc, char** argv) {
    if (argc > 1) g_cli_path = argv[1];
    harness h;

    // 1. gamma identity, exact, 5 <= p <= 101, all x, < 30 s single-threaded
    h.criterion(1, "gamma identity for 5 <= p <= 101", [](std::string& detail) {
        auto t0 = std::chrono::steady_clock::now();
        for (uint32_t p : odd_primes_in(5, 102))
            if (!gamma_series_check(Prime(p))) {
                detail = "failed at p=" + std::to_string(p);
                return false;
            }
        double el = seconds_since(t0);
        detail = "elapsed " + std::to_string(el) + "s";
        return el < 30.0;
    });

    // 2. Prop 47 leading trace coefficients for all p >= 7, x outside {0,1}
    h.criterion(2, "leading trace coefficients (2y, 2y, 3y+3y^2+2y^3)", [](std::string& detail) {
        for (uint32_t p : odd_primes_in(7, 102)) {
            lambda_ring lr((Prime(p)));
            for (uint32_t x = 2; x < p; ++x) {
                uint32_t y = mod_sub(x, 1, p);
                auto tr = lr.dennis_trace(lr.z_prime(x));
                uint32_t g2 = mod_add(mod_mul(3, y, p),
                                      mod_add(mod_mul(3, mod_mul(y, y, p), p),
                                              mod_mul(2, mod_pow(y, 3, p), p), p), p);
                if (tr.c[0] != mod_mul(2, y, p) || tr.c[1] != mod_mul(2, y, p) || tr.c[2] != g2) {
                    detail = "p=" + std::to_string(p) + ", x=" + std::to_string(x);
                    return false;
                }
            }
        }
        return true;
    });

    // 3. non-colinearity of trace(z'(x)) and trace(1-lambda)
    h.criterion(3, "trace(z'(x)) independent of trace(1-lambda), p <= 101", [](std::string& detail) {
        for (uint32_t p : odd_primes_in(5, 102)) {
            lambda_ring lr((Prime(p)));
            auto tref = lr.dennis_trace(lr.one_minus_lambda());
            uint32_t inv2 = mod_inv(2, p);
            for (uint32_t x = 2; x < p; ++x) {
                if (x == inv2) continue;
                fp_matrix m{lr.dennis_trace(lr.z_prime(x)).c, tref.c};
                if (fp_rank(std::move(m), p) != 2) {
                    detail = "p=" + std::to_string(p) + ", x=" + std::to_string(x);
                    return false;
                }
            }
        }
        return true;
    });

    // 4. Mirimanoff basics
    h.criterion(4, "M_1 = 0, M_{2k+1}(-1) = 0 (p <= 101); M_3(2), M_5(2) mod 5", [](std::string& detail) {
        for (uint32_t p : odd_primes_in(5, 102)) {
            for (uint32_t t = 2; t < p; ++t)
                if (mirimanoff_eval(Prime(p), 1, t) != 0) { detail = "M_1"; return false; }
            for (uint32_t k = 1; k <= (p - 1) / 2; ++k)
                if (mirimanoff_eval(Prime(p), 2 * k + 1, p - 1) != 0) { detail = "M(-1)"; return false; }
        }
        return mirimanoff_eval(Prime(5), 3, 2) == 1 && mirimanoff_eval(Prime(5), 5, 2) == 0;
    });

    // 5. circulant spectra vs char-poly roots; ranks vs Gaussian elimination
    h.criterion(5, "circulant spectrum and rank cross-checks, p <= 61", [](std::string& detail) {
        for (uint32_t p : odd_primes_in(5, 62)) {
            for (uint32_t x = 2; x < p; ++x) {
                auto c = make_circulant(Prime(p), x);
                auto spec = circulant_spectrum(c);
                auto roots = oracle::poly_roots_with_multiplicity(oracle::charpoly(c.matrix(), p), p);
                auto eig = spec.eigenvalues;
                std::sort(eig.begin(), eig.end());
                if (roots != eig || spec.rank != fp_rank(c.matrix(), p)) {
                    detail = "p=" + std::to_string(p) + ", x=" + std::to_string(x);
                    return false;
                }
            }
        }
        return true;
    });

    // 6. prop57/sum-alpha/prop52 audit for p <= 31
    h.criterion(6, "audit p <= 31: desk mismatches REPORT_ONLY, rank <= dim V PASS", [](std::string& detail) {
        audit_options opt;
        opt.pmax = 31;
        auto rep = run_all_audits(opt);
        bool spectrum_desk = false, sum_desk = false;
        size_t rank_pass = 0, rank_total = 0;
        for (auto& e : rep.entries()) {
            if (e.claim_id == "prop57.spectrum_literal" && e.inputs == "p=5,x=2" &&
                e.v == verdict::report_only && e.computed_value == "(2,3)" && e.paper_value == "(0,1)")
                spectrum_desk = true;
            if (e.claim_id == "prop57.sum_alpha" && e.inputs == "p=5,x=2" &&
                e.v == verdict::report_only && e.computed_value == "3" && e.paper_value == "4")
                sum_desk = true;
            if (e.claim_id == "prop54.trace_rank_le_dimv") {
                ++rank_total;
                if (e.v == verdict::pass) ++rank_pass;
            }
        }
        std::ostringstream os;
        os << rep.summarize().total() << " entries, " << rank_pass << "/" << rank_total
           << " rank inequalities";
        detail = os.str();
        return spectrum_desk && sum_desk && rank_total > 0 && rank_pass == rank_total &&
               rep.strict_ok();
    });

    // 7. the p < 1000 scan: runtime, threshold for 43 <= p, max zeros <= 7,
    //    r_5 and r_7 as REPORT_ONLY exceptions
    h.criterion(7, "r_p scan p < 1000 (threshold, max zeros <= 7, small-p exceptions)",
                [](std::string& detail) {
        auto t0 = std::chrono::steady_clock::now();
        auto recs = scan_rp(1000, 8);
        double el = seconds_since(t0);
        bool time_ok = el < 300.0;

        bool threshold_ok = true;
        uint32_t max_zeros = 0, max_zero_p = 0, max_zero_t = 0;
        uint32_t r5 = 0, r7 = 0;
        for (auto& r : recs) {
            if (r.p == 5) r5 = r.r_p;
            if (r.p == 7) r7 = r.r_p;
            if (r.p >= 43 && !r.above_threshold) threshold_ok = false;
            if (r.max_zero_count > max_zeros) {
                max_zeros = r.max_zero_count;
                max_zero_p = r.p;
                max_zero_t = r.argmin_t;
            }
        }
        bool zeros_ok = max_zeros <= 7;

        audit_report rep;
        audit_scholie_small_p(rep);
        bool small_p_filed = false, r5_seen = false, r7_seen = false;
        for (auto& e : rep.entries()) {
            if (e.claim_id != "scholie.small_p" || e.v != verdict::report_only) continue;
            small_p_filed = true;
            if (e.inputs == "p=5" && e.computed_value.find("r_p=1") != std::string::npos) r5_seen = true;
            if (e.inputs == "p=7" && e.computed_value.find("r_p=2") != std::string::npos) r7_seen = true;
        }

        bool small_ok = small_p_filed && r5 == 1 && r7 == 2 && r5_seen && r7_seen;
        std::ostringstream os;
        os << recs.size() << " primes in " << el << "s [" << (time_ok ? "ok" : "FAIL") << "]; "
           << "threshold for 43 <= p [" << (threshold_ok ? "ok" : "FAIL") << "]; "
           << "r5=1, r7=2 filed REPORT_ONLY [" << (small_ok ? "ok" : "FAIL") << "]; "
           << "max zeros " << max_zeros << " at p=" << max_zero_p << ", t=" << max_zero_t << " ["
           << (zeros_ok ? "ok" : "FAIL: published bound is 7; counterexample confirmed by an "
                                 "independent evaluation")
           << "]";
        detail = os.str();
        return time_ok && threshold_ok && zeros_ok && small_ok;
    });

    // 8. Bernoulli / irregularity
    h.criterion(8, "irregular primes below 300; rational cross-check p <= 37", [](std::string& detail) {
        auto t0 = std::chrono::steady_clock::now();
        static const std::vector<uint32_t> expected = {37, 59, 67, 101, 103, 131, 149,
                                                       157, 233, 257, 263, 271, 283, 293};
        std::vector<uint32_t> got;
        for (uint32_t p : odd_primes_in(5, 300))
            if (irregular_index(Prime(p)).count > 0) got.push_back(p);
        if (got != expected) { detail = "wrong irregular list"; return false; }
        for (uint32_t p : odd_primes_in(5, 38)) {
            auto tab = bernoulli_mod_p(Prime(p));
            auto exact = oracle::rational_bernoulli(p - 3);
            for (uint32_t k = 0; k + 3 <= p; ++k)
                if (tab.residues[k] != oracle::rational_mod_p(exact[k], p)) {
                    detail = "rational mismatch at p=" + std::to_string(p);
                    return false;
                }
        }
        double el = seconds_since(t0);
        detail = "elapsed " + std::to_string(el) + "s";
        return el < 10.0;
    });

    // 9. Kummer congruences
    h.criterion(9, "congruence solutions: {4} at p=5, {6} at p=7, -1 always (p <= 101)",
                [](std::string& detail) {
        if (kummer_congruence_solutions(Prime(5)) != std::vector<uint32_t>{4}) return false;
        if (kummer_congruence_solutions(Prime(7)) != std::vector<uint32_t>{6}) return false;
        for (uint32_t p : odd_primes_in(5, 102)) {
            auto sols = kummer_congruence_solutions(Prime(p));
            if (std::find(sols.begin(), sols.end(), p - 1) == sols.end()) {
                detail = "-1 missing at p=" + std::to_string(p);
                return false;
            }
        }
        return true;
    });

    // 10. Kummer l: homomorphism, desk value, parity and doubling
    h.criterion(10, "l homomorphism (200 pairs per p <= 31); l_3(2-zeta) = 4; parity/doubling",
                [](std::string& detail) {
        std::mt19937 rng(20240817);
        for (uint32_t p : odd_primes_in(5, 32)) {
            Prime pr(p);
            for (int i = 0; i < 200; ++i) {
                auto rand_elem = [&]() {
                    for (;;) {
                        std::vector<uint32_t> a(p);
                        for (auto& v : a) v = rng() % p;
                        auto z = make_cyclo(pr, a);
                        if (z.augmentation() != 0) return z;
                    }
                };
                if (!ell_homomorphism_check(rand_elem(), rand_elem())) {
                    detail = "homomorphism failed at p=" + std::to_string(p);
                    return false;
                }
            }
            audit_report rep;
            auto res = mirimanoff_identity_audit(rep, pr);
            if (!res.parity_ok || !res.doubling_ok) {
                detail = "parity/doubling failed at p=" + std::to_string(p);
                return false;
            }
        }
        return log_derivatives(x_minus_y_zeta(Prime(5), 2)).at(3) == 4;
    });

    // 11. Mirimanoff identity: one uniform candidate; literal mismatches REPORT_ONLY
    h.criterion(11, "identity variant -x M(y/x) uniform for p <= 31; literal REPORT_ONLY",
                [](std::string& detail) {
        for (uint32_t p : odd_primes_in(5, 32)) {
            audit_report rep;
            auto res = mirimanoff_identity_audit(rep, Prime(p));
            if (!res.uniform_match[1]) {
                detail = "-x M(y/x) failed at p=" + std::to_string(p);
                return false;
            }
            if (p == 5) {
                if (res.uniform_match[0]) { detail = "literal unexpectedly holds"; return false; }
                bool filed = false;
                for (auto& e : rep.entries())
                    if (e.claim_id == "miri_identity.literal" && e.v == verdict::report_only)
                        filed = true;
                if (!filed) { detail = "literal mismatch not filed"; return false; }
            }
        }
        detail = "(-x M(y/x) and the pointwise-equal -y M(x/y) both match)";
        return true;
    });

    // 12. triangular relation
    h.criterion(12, "triangular invertible A for p in {5,7,11,13}; recorded to 31", [](std::string& detail) {
        for (uint32_t p : {5u, 7u, 11u, 13u}) {
            auto res = triangular_relation(Prime(p));
            if (!res.lower_solvable || !res.invertible) {
                detail = "failed at p=" + std::to_string(p);
                return false;
            }
        }
        std::ostringstream os;
        os << "recorded:";
        for (uint32_t p : odd_primes_in(17, 32)) {
            auto res = triangular_relation(Prime(p));
            os << " p=" << p << (res.lower_solvable && res.invertible ? ":ok" : ":no");
        }
        detail = os.str();
        return true;
    });

    // 13. quadratic tables
    h.criterion(13, "form certification, class numbers, torsion search recovery", [](std::string& detail) {
        auto t0 = std::chrono::steady_clock::now();
        auto c104 = certify_table_entry(mpz(-104), 3, mpz(2), mpz(3));
        auto c127 = certify_table_entry(mpz(-127), 5, mpz(1), mpz(2));
        auto c511 = certify_table_entry(mpz(-511), 7, mpz(1), mpz(2));
        if (!(c104.pass && c104.order == 3)) { detail = "-104"; return false; }
        if (!(c127.pass && c127.order == 5)) { detail = "-127"; return false; }
        if (c511.order % 7 != 0) { detail = "-511"; return false; }
        if (class_number(quad_disc(mpz(-104))) != 6) { detail = "h(-104)"; return false; }
        if (class_number(quad_disc(mpz(-127))) != 5) { detail = "h(-127)"; return false; }
        if (class_number(quad_disc(mpz(-231))) != 12) { detail = "h(-231)"; return false; }
        auto ws = torsion_search(3, 20, 25);
        std::set<long> deltas;
        for (auto& w : ws)
            if (w.delta.fits_slong_p()) deltas.insert(mpz_get_si(w.delta.get_mpz_t()));
        if (!deltas.count(-104) || !deltas.count(-5320) || !deltas.count(-48664)) {
            detail = "search recovery";
            return false;
        }
        double el = seconds_since(t0);
        detail = "order(-511 witness) = " + std::to_string(c511.order) + ", elapsed " +
                 std::to_string(el) + "s";
        return el < 60.0;
    });

    // 14. real-quadratic pipeline
    h.criterion(14, "delta=321: unit (430+24 sqrt)/2, N=+1, 3 | eps2, trace != 0, erratum filed",
                [](std::string& detail) {
        auto eps = fundamental_unit(quad_disc(mpz(321)));
        if (!(eps.alpha == 430 && eps.beta == 24 && quad_norm(eps) == 1)) {
            detail = "unit mismatch";
            return false;
        }
        if (!unit_condition(quad_disc(mpz(321)), 3)) { detail = "unit condition"; return false; }
        if (dennis_trace_quad(quad_int(mpz(321), mpz(17), mpz(1)), 3) == 0) {
            detail = "trace vanished";
            return false;
        }
        audit_report rep;
        audit_quadratic_tables(rep);
        for (auto& e : rep.entries())
            if (e.claim_id == "quad.erratum_321" && e.v == verdict::report_only) return true;
        detail = "erratum entry missing";
        return false;
    });

    // 15. CLI determinism across worker counts
    h.criterion(15, "scan/search output byte-identical for --jobs 1, 4, 8", [](std::string& detail) {
        if (g_cli_path.empty()) {
            detail = "cyclotrace binary path not supplied";
            return false;
        }
        int s1 = 0, s4 = 0, s8 = 0;
        auto a = run_cli("scan-rp --pmax 300 --jobs 1 --json", s1);
        auto b = run_cli("scan-rp --pmax 300 --jobs 4 --json", s4);
        auto c = run_cli("scan-rp --pmax 300 --jobs 8 --json", s8);
        if (s1 || s4 || s8 || a.empty() || a != b || a != c) { detail = "scan-rp differs"; return false; }
        auto d = run_cli("quad-search --n 3 --alpha-max 8 --b-max 8 --jobs 1 --json", s1);
        auto e = run_cli("quad-search --n 3 --alpha-max 8 --b-max 8 --jobs 4 --json", s4);
        auto f = run_cli("quad-search --n 3 --alpha-max 8 --b-max 8 --jobs 8 --json", s8);
        if (s1 || s4 || s8 || d.empty() || d != e || d != f) { detail = "quad-search differs"; return false; }
        return true;
    });

    if (h.failures == 0) {
        std::printf("acceptance: all 15 criteria passed\n");
    } else {
        std::printf("acceptance: %d criterion(s) failed\n", h.failures);
    }
    return h.failures == 0 ? 0 : 1;
}
