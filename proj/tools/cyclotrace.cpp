// cyclotrace: exact-arithmetic pipelines for Mirimanoff scans, Dennis traces
// in truncated cyclotomic rings, Kummer logarithmic derivatives, Bernoulli
// tables, quadratic class-group torsion certification, and the claim audit.
//
// One subcommand per pipeline; outputs as aligned table, JSON lines, or CSV.
// Exit codes: 0 success, 1 strict-mode audit failure, 2 usage error.

#include <cstdlib>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "cyclotrace/audit_runner.hpp"
#include "cyclotrace/kummer.hpp"
#include "cyclotrace/mirimanoff.hpp"
#include "cyclotrace/modp.hpp"
#include "cyclotrace/quadratic.hpp"
#include "cyclotrace/rings.hpp"

namespace {

using record = nlohmann::ordered_json;

std::string cell_str(const record& v) {
    if (v.is_string()) return v.get<std::string>();
    return v.dump();
}

void emit_records(std::ostream& os, const std::vector<record>& rows, const std::string& format) {
    if (format == "json") {
        for (auto& r : rows) os << r.dump() << "\n";
        return;
    }
    if (rows.empty()) return;
    std::vector<std::string> keys;
    for (auto it = rows[0].begin(); it != rows[0].end(); ++it) keys.push_back(it.key());
    if (format == "csv") {
        for (size_t i = 0; i < keys.size(); ++i) os << (i ? "," : "") << keys[i];
        os << "\n";
        for (auto& r : rows) {
            for (size_t i = 0; i < keys.size(); ++i) os << (i ? "," : "") << cell_str(r.at(keys[i]));
            os << "\n";
        }
        return;
    }
    // aligned table
    std::vector<size_t> w(keys.size());
    for (size_t i = 0; i < keys.size(); ++i) w[i] = keys[i].size();
    std::vector<std::vector<std::string>> cells;
    for (auto& r : rows) {
        std::vector<std::string> row;
        for (size_t i = 0; i < keys.size(); ++i) {
            row.push_back(cell_str(r.at(keys[i])));
            w[i] = std::max(w[i], row.back().size());
        }
        cells.push_back(std::move(row));
    }
    for (size_t i = 0; i < keys.size(); ++i)
        os << (i ? "  " : "") << std::string(w[i] - keys[i].size(), ' ') << keys[i];
    os << "\n";
    for (auto& row : cells) {
        for (size_t i = 0; i < keys.size(); ++i)
            os << (i ? "  " : "") << std::string(w[i] - row[i].size(), ' ') << row[i];
        os << "\n";
    }
}

record mpz_field(const cyclo::mpz& v) {
    if (v.fits_slong_p()) return record(mpz_get_si(v.get_mpz_t()));
    return record(v.get_str());
}

std::string fixed2(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.2f", v);
    return buf;
}

std::string join_semicolon(const std::vector<uint32_t>& v) {
    if (v.empty()) return "-";
    std::string s;
    for (size_t i = 0; i < v.size(); ++i) s += (i ? ";" : "") + std::to_string(v[i]);
    return s;
}

unsigned default_jobs() {
    if (const char* e = std::getenv("CYCLOTRACE_JOBS")) {
        long v = std::atol(e);
        if (v >= 1) return static_cast<unsigned>(v);
    }
    return 1;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"exact arithmetic for Mirimanoff scans, truncated-ring Dennis traces, "
                 "Kummer derivatives, and quadratic class-group torsion"};
    app.require_subcommand(1);

    std::string format = "table";
    bool json_flag = false, strict = false;
    unsigned jobs = default_jobs();
    auto add_common = [&](CLI::App* sub) {
        sub->add_option("--format", format, "output format: table, json, csv")
            ->check(CLI::IsMember({"table", "json", "csv"}));
        sub->add_flag("--json", json_flag, "shorthand for --format json");
        sub->add_flag("--strict", strict, "exit 1 if any asserted audit claim fails");
        sub->add_option("--jobs", jobs, "worker count for scans (env CYCLOTRACE_JOBS)");
        return sub;
    };
    auto fmt = [&]() -> std::string { return json_flag ? "json" : format; };

    std::ostringstream out;
    int exit_code = 0;

    // ---- scan-rp ----------------------------------------------------------
    auto* c_scan = add_common(app.add_subcommand("scan-rp", "r_p records for odd primes 5 <= p < pmax"));
    uint32_t scan_pmax = 1000;
    c_scan->add_option("--pmax", scan_pmax, "scan bound (exclusive)")->required();
    c_scan->callback([&] {
        auto recs = cyclo::scan_rp(scan_pmax, jobs);
        std::vector<record> rows;
        for (auto& r : recs)
            rows.push_back({{"p", r.p},
                            {"r_p", r.r_p},
                            {"argmin_t", r.argmin_t},
                            {"max_zeros", r.max_zero_count},
                            {"threshold", fixed2(r.threshold())},
                            {"verdict", r.above_threshold ? "ABOVE" : "BELOW"}});
        emit_records(out, rows, fmt());
    });

    // ---- mirimanoff -------------------------------------------------------
    auto* c_miri = add_common(app.add_subcommand("mirimanoff", "M_{2k+1}(t) values and r_p(t)"));
    uint32_t mp = 0, mt = 0;
    bool msummary = false;
    c_miri->add_option("--p", mp, "odd prime")->required();
    c_miri->add_option("--t", mt, "evaluation point, t outside {0,1,-1}")->required();
    c_miri->add_flag("--summary", msummary, "one summary record instead of per-k rows");
    c_miri->callback([&] {
        auto rec = cyclo::make_mirimanoff_record(cyclo::Prime(mp), mt);
        std::vector<record> rows;
        if (msummary) {
            rows.push_back({{"p", rec.p},
                            {"t", rec.t},
                            {"r_p_of_t", rec.r_p_of_t},
                            {"zeros", (mp - 1) / 2 - rec.r_p_of_t}});
        } else {
            for (size_t k = 1; k <= rec.values.size(); ++k)
                rows.push_back({{"p", rec.p},
                                {"t", rec.t},
                                {"k", k},
                                {"index", 2 * k + 1},
                                {"value", rec.values[k - 1]}});
        }
        emit_records(out, rows, fmt());
    });

    // ---- circulant --------------------------------------------------------
    auto* c_circ = add_common(app.add_subcommand("circulant", "first row, spectrum and rank of C(x)"));
    uint32_t cp = 0, cx = 0;
    c_circ->add_option("--p", cp, "odd prime")->required();
    c_circ->add_option("--x", cx, "x outside {0,1}")->required();
    c_circ->callback([&] {
        auto c = cyclo::make_circulant(cyclo::Prime(cp), cx);
        auto spec = cyclo::circulant_spectrum(c);
        std::vector<record> rows;
        for (size_t k = 1; k <= c.first_row.size(); ++k)
            rows.push_back({{"p", c.p},
                            {"x", c.x},
                            {"k", k},
                            {"alpha", c.first_row[k - 1]},
                            {"eigenvalue", spec.eigenvalues[k - 1]},
                            {"rank", spec.rank}});
        emit_records(out, rows, fmt());
    });

    // ---- dimv --------------------------------------------------------------
    auto* c_dimv = add_common(app.add_subcommand("dimv", "dim V(x) from the truncated-logarithm rank"));
    uint32_t dp = 0;
    int dx = -1;
    c_dimv->add_option("--p", dp, "odd prime")->required();
    c_dimv->add_option("--x", dx, "single x (default: all x outside {0,1})");
    c_dimv->callback([&] {
        cyclo::Prime pr(dp);
        std::vector<record> rows;
        auto one = [&](uint32_t x) {
            uint32_t y = cyclo::mod_sub(x, 1, dp);
            uint32_t xy = cyclo::mod_mul(x, cyclo::mod_inv(y, dp), dp);
            long rp_xy = (xy == dp - 1) ? -1 : static_cast<long>(cyclo::r_p_of_t(pr, xy));
            rows.push_back({{"p", dp},
                            {"x", x},
                            {"dim_v", cyclo::dim_V(pr, x)},
                            {"r_p_of_xy", rp_xy}});
        };
        if (dx >= 0) one(static_cast<uint32_t>(dx));
        else
            for (uint32_t x = 2; x < dp; ++x) one(x);
        emit_records(out, rows, fmt());
    });

    // ---- bernoulli ---------------------------------------------------------
    auto* c_bern = add_common(app.add_subcommand("bernoulli", "Bernoulli residues mod p / irregular primes"));
    uint32_t bp = 0, bpmax = 0;
    c_bern->add_option("--p", bp, "single prime: residues B_0..B_{p-3}");
    c_bern->add_option("--pmax", bpmax, "scan primes 5 <= p < pmax for irregular indices");
    c_bern->callback([&] {
        std::vector<record> rows;
        if (bp) {
            auto tab = cyclo::bernoulli_mod_p(cyclo::Prime(bp));
            auto& irr = tab.irregular;
            for (uint32_t k = 0; k < tab.residues.size(); ++k) {
                if (k > 1 && k % 2 == 1) continue;  // odd Bernoulli numbers vanish
                bool is_irr = std::find(irr.begin(), irr.end(), k) != irr.end();
                rows.push_back({{"p", bp}, {"k", k}, {"b_k", tab.residues[k]}, {"irregular", is_irr}});
            }
        } else if (bpmax) {
            for (uint32_t q : cyclo::odd_primes_in(5, bpmax)) {
                auto ir = cyclo::irregular_index(cyclo::Prime(q));
                rows.push_back({{"p", q}, {"i_p", ir.count}, {"witnesses", join_semicolon(ir.witnesses)}});
            }
        } else {
            throw cyclo::bad_input("bernoulli: one of --p or --pmax is required");
        }
        emit_records(out, rows, fmt());
    });

    // ---- kummer-solutions --------------------------------------------------
    auto* c_ksol = add_common(app.add_subcommand("kummer-solutions", "all t satisfying the congruences (K)"));
    uint32_t kp = 0;
    c_ksol->add_option("--p", kp, "odd prime >= 5")->required();
    c_ksol->callback([&] {
        auto sols = cyclo::kummer_congruence_solutions(cyclo::Prime(kp));
        std::vector<record> rows;
        for (uint32_t t : sols)
            rows.push_back({{"p", kp}, {"t", t}, {"count", sols.size()}});
        emit_records(out, rows, fmt());
    });

    // ---- logderiv ----------------------------------------------------------
    auto* c_log = add_common(app.add_subcommand("logderiv", "Kummer logarithmic derivatives l_1..l_{p-2}"));
    uint32_t lp = 0;
    int lx = -1;
    std::string lcoeffs;
    c_log->add_option("--p", lp, "odd prime")->required();
    c_log->add_option("--x", lx, "shorthand for z = x - (x-1) zeta");
    c_log->add_option("--coeffs", lcoeffs, "comma-separated a_0,a_1,... of z = sum a_i zeta^i");
    c_log->callback([&] {
        cyclo::Prime pr(lp);
        cyclo::cyclo_element z;
        if (!lcoeffs.empty()) {
            std::vector<uint32_t> a;
            std::stringstream ss(lcoeffs);
            std::string item;
            while (std::getline(ss, item, ','))
                a.push_back(cyclo::mod_of_ll(std::stoll(item), lp));
            z = cyclo::make_cyclo(pr, a);
        } else if (lx >= 0) {
            z = cyclo::x_minus_y_zeta(pr, static_cast<uint32_t>(lx));
        } else {
            throw cyclo::bad_input("logderiv: one of --x or --coeffs is required");
        }
        auto ell = cyclo::log_derivatives(z);
        std::vector<record> rows;
        for (uint32_t k = 1; k <= lp - 2; ++k)
            rows.push_back({{"p", lp}, {"k", k}, {"ell", ell.at(k)}});
        emit_records(out, rows, fmt());
    });

    // ---- gamma-check -------------------------------------------------------
    auto* c_gam = add_common(app.add_subcommand("gamma-check", "trace(z'(x)) == gamma coefficients, all x"));
    uint32_t gp = 0;
    c_gam->add_option("--p", gp, "odd prime >= 5")->required();
    c_gam->callback([&] {
        bool ok = cyclo::gamma_series_check(cyclo::Prime(gp));
        if (fmt() == "table") out << (ok ? "true" : "false") << "\n";
        else emit_records(out, {{{"p", gp}, {"ok", ok}}}, fmt());
    });

    // ---- miri-identity -----------------------------------------------------
    auto* c_mid = add_common(app.add_subcommand("miri-identity", "audit the l_{2k+1}(x-y zeta) closed forms"));
    uint32_t mip = 0;
    c_mid->add_option("--p", mip, "odd prime >= 5")->required();
    c_mid->callback([&] {
        if (fmt() == "csv") throw cyclo::bad_input("miri-identity: audit output supports table/json");
        cyclo::audit_report rep;
        cyclo::mirimanoff_identity_audit(rep, cyclo::Prime(mip));
        out << rep.render(fmt() == "json" ? "json" : "text");
        if (strict && !rep.strict_ok()) exit_code = 1;
    });

    // ---- triangular --------------------------------------------------------
    auto* c_tri = add_common(app.add_subcommand("triangular", "solve l(x) = A D(x), lower-triangular A"));
    uint32_t tp = 0;
    c_tri->add_option("--p", tp, "odd prime >= 5")->required();
    c_tri->callback([&] {
        auto res = cyclo::triangular_relation(cyclo::Prime(tp));
        std::vector<record> rows;
        for (uint32_t i = 0; i < res.m; ++i)
            for (uint32_t j = 0; j < res.m; ++j)
                rows.push_back({{"p", res.p},
                                {"i", i},
                                {"j", j},
                                {"value", res.A[i][j]},
                                {"solvable", res.lower_solvable},
                                {"invertible", res.invertible}});
        emit_records(out, rows, fmt());
    });

    // ---- trace-cyclo -------------------------------------------------------
    auto* c_tc = add_common(app.add_subcommand("trace-cyclo", "Dennis trace of z'(x) (lambda) or z_k(x) (r)"));
    uint32_t tcp = 0, tcx = 0, tck = 1;
    std::string tcring = "lambda";
    c_tc->add_option("--p", tcp, "odd prime")->required();
    c_tc->add_option("--x", tcx, "x outside {0,1}")->required();
    c_tc->add_option("--ring", tcring, "lambda (z'(x)) or r (z_k(x) in the f-basis)")
        ->check(CLI::IsMember({"lambda", "r"}));
    c_tc->add_option("--k", tck, "Galois index for --ring r (default 1)");
    c_tc->callback([&] {
        cyclo::Prime pr(tcp);
        std::vector<record> rows;
        if (tcring == "lambda") {
            cyclo::lambda_ring lr(pr);
            auto tr = lr.dennis_trace(lr.z_prime(tcx));
            for (uint32_t k = 0; k < tr.c.size(); ++k)
                rows.push_back({{"p", tcp}, {"x", tcx}, {"k", k}, {"coeff", tr.c[k]}});
        } else {
            cyclo::r_ring r(pr);
            auto fb = r.to_f_basis(r.dennis_trace(r.z_k(tcx, tck)));
            for (uint32_t i = 0; i < fb.minus.size(); ++i)
                rows.push_back({{"p", tcp}, {"x", tcx}, {"series_k", tck},
                                {"block", "minus"}, {"index", i}, {"coeff", fb.minus[i]}});
            for (uint32_t i = 0; i < fb.plus.size(); ++i)
                rows.push_back({{"p", tcp}, {"x", tcx}, {"series_k", tck},
                                {"block", "plus"}, {"index", i + 1}, {"coeff", fb.plus[i]}});
        }
        emit_records(out, rows, fmt());
    });

    // ---- quad-search -------------------------------------------------------
    auto* c_qs = add_common(app.add_subcommand("quad-search", "torsion witnesses delta = alpha^2 - 4 b^n"));
    unsigned long qn = 3;
    long qamax = 20, qbmax = 25;
    bool qnoneg = false;
    c_qs->add_option("--n", qn, "odd n >= 3")->required();
    c_qs->add_option("--alpha-max", qamax, "alpha bound (default 20)");
    c_qs->add_option("--b-max", qbmax, "|b| bound (default 25)");
    c_qs->add_flag("--no-negative-b", qnoneg, "restrict to b >= 1");
    c_qs->callback([&] {
        auto ws = cyclo::torsion_search(qn, qamax, qbmax, !qnoneg);
        std::vector<record> rows;
        for (auto& w : ws)
            rows.push_back({{"delta", mpz_field(w.delta)},
                            {"n", w.n},
                            {"alpha", w.alpha},
                            {"b", w.b},
                            {"nn1", w.nn1},
                            {"nonsquare_ok", w.nonsquare_proper_ok},
                            {"ramified", w.ramified_ok},
                            {"real", w.real_case},
                            {"unit_cond", w.unit_cond},
                            {"trace_mod_n", w.trace_mod_n},
                            {"order", w.order},
                            {"certified", w.certified}});
        emit_records(out, rows, fmt());
    });

    // ---- quad-certify ------------------------------------------------------
    auto* c_qc = add_common(app.add_subcommand("quad-certify", "order of the witness form (b, alpha, b^{n-1})"));
    long qcd = 0, qca = 0, qcb = 0;
    unsigned long qcn = 3;
    c_qc->add_option("--delta", qcd, "fundamental discriminant < 0")->required();
    c_qc->add_option("--n", qcn, "odd n >= 3")->required();
    c_qc->add_option("--alpha", qca, "alpha with alpha^2 - 4 b^n = delta")->required();
    c_qc->add_option("--b", qcb, "b >= 1")->required();
    c_qc->callback([&] {
        auto res = cyclo::certify_table_entry(cyclo::mpz_from_ll(qcd), qcn, cyclo::mpz_from_ll(qca),
                                              cyclo::mpz_from_ll(qcb));
        emit_records(out,
                     {{{"delta", qcd},
                       {"n", qcn},
                       {"alpha", qca},
                       {"b", qcb},
                       {"reduced_a", mpz_field(res.reduced.a)},
                       {"reduced_b", mpz_field(res.reduced.b)},
                       {"reduced_c", mpz_field(res.reduced.c)},
                       {"order", res.order},
                       {"verdict", res.pass ? "PASS" : "FAIL"}}},
                     fmt());
    });

    // ---- fundamental-unit --------------------------------------------------
    auto* c_fu = add_common(app.add_subcommand("fundamental-unit",
                                               "(eps1 + eps2 sqrt(delta))/2 by continued fractions"));
    long fud = 0;
    c_fu->add_option("--delta", fud, "fundamental discriminant > 0")->required();
    c_fu->callback([&] {
        auto eps = cyclo::fundamental_unit(cyclo::quad_disc(cyclo::mpz_from_ll(fud)));
        emit_records(out,
                     {{{"delta", fud},
                       {"eps1", mpz_field(eps.alpha)},
                       {"eps2", mpz_field(eps.beta)},
                       {"norm", mpz_field(cyclo::quad_norm(eps))}}},
                     fmt());
    });

    // ---- audit-all ---------------------------------------------------------
    auto* c_all = add_common(app.add_subcommand("audit-all", "run every registered claim check"));
    cyclo::audit_options aopt;
    c_all->add_option("--pmax", aopt.pmax, "cyclotomic grid bound (default 31)");
    c_all->add_option("--scan-pmax", aopt.scan_pmax, "include the r_p scan claims up to this bound");
    c_all->add_flag("--assert-all", aopt.assert_all, "treat report-only claims as assertions");
    c_all->callback([&] {
        if (fmt() == "csv") throw cyclo::bad_input("audit-all: audit output supports table/json");
        aopt.workers = jobs;
        auto rep = cyclo::run_all_audits(aopt);
        out << rep.render(fmt() == "json" ? "json" : "text");
        if (strict && !rep.strict_ok()) exit_code = 1;
    });

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        std::cerr << e.what() << "\n";
        return 2;
    } catch (const cyclo::error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }

    std::cout << out.str();
    return exit_code;
}
