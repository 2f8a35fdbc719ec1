#pragma once

/// Quadratic fields: integers (alpha + beta sqrt(delta))/2, norms and traces,
/// the (N,N1) membership criterion, the Omega^1_dR(A)/(n) model and the
/// 2beta/alpha Dennis trace, fundamental units by continued fractions,
/// Yamamoto's conditions, the torsion-witness search, and a binary quadratic
/// form class-group oracle (Gauss reduction + Dirichlet composition) that
/// certifies the n-torsion table entries independently.

#include <algorithm>
#include <cstdint>
#include <cstdlib>
#include <map>
#include <numeric>
#include <string>
#include <vector>

#include <gmpxx.h>

#include "cyclotrace/errors.hpp"
#include "cyclotrace/modp.hpp"

namespace cyclo {

using mpz = mpz_class;

inline mpz mpz_from_ll(long long v) {
    mpz r;
    mpz_set_si(r.get_mpz_t(), v);
    return r;
}

inline uint64_t mpz_to_u64(const mpz& v) {
    if (!v.fits_ulong_p()) throw bad_input("value does not fit a machine word");
    return mpz_get_ui(v.get_mpz_t());
}

/// delta = 1 mod 4 squarefree, or 4m with m = 2,3 mod 4 squarefree.
/// Squarefreeness goes through trial-division factorization, so |delta| must
/// fit 63 bits (the table discriminants stop at |delta| = 4294967295).
inline bool is_fundamental_discriminant(const mpz& d) {
    if (d == 0 || d == 1) return false;
    mpz ad = abs(d);
    if (mpz_sizeinbase(ad.get_mpz_t(), 2) > 62)
        throw bad_input("fundamentality check limited to |delta| < 2^62");
    unsigned long r4 = mpz_fdiv_ui(d.get_mpz_t(), 4);
    if (r4 == 1) return is_squarefree(mpz_to_u64(ad));
    if (r4 == 0) {
        mpz m = d / 4;
        unsigned long m4 = mpz_fdiv_ui(m.get_mpz_t(), 4);
        if (m4 != 2 && m4 != 3) return false;
        return is_squarefree(mpz_to_u64(abs(m)));
    }
    return false;
}

/// A fundamental discriminant; the trivial-class-group cases delta = -3, -4
/// (extra roots of unity) are excluded throughout.
struct quad_disc {
    mpz delta;

    explicit quad_disc(const mpz& d) : delta(d) {
        if (d == -3 || d == -4) throw bad_input("delta = -3 and -4 are excluded");
        if (!is_fundamental_discriminant(d))
            throw bad_input("not a fundamental discriminant: " + d.get_str());
    }
    bool imaginary() const { return delta < 0; }
};

/// z = (alpha + beta sqrt(delta))/2 with the integrality congruence
/// alpha = beta*delta mod 2.
struct quad_int {
    mpz delta, alpha, beta;

    quad_int(const mpz& d, const mpz& a, const mpz& b) : delta(d), alpha(a), beta(b) {
        if (mpz_odd_p(mpz((alpha - beta * delta)).get_mpz_t()))
            throw bad_input("(alpha + beta sqrt(delta))/2 is not an algebraic integer");
    }
    bool operator==(const quad_int&) const = default;
};

inline mpz quad_norm(const quad_int& z) {
    mpz num = z.alpha * z.alpha - z.delta * z.beta * z.beta;
    return num / 4;
}
inline mpz quad_trace(const quad_int& z) { return z.alpha; }

inline quad_int quad_mul(const quad_int& z, const quad_int& w) {
    if (z.delta != w.delta) throw bad_input("mixed discriminants");
    mpz a = (z.alpha * w.alpha + z.beta * w.beta * z.delta) / 2;
    mpz b = (z.alpha * w.beta + z.beta * w.alpha) / 2;
    return {z.delta, a, b};
}

struct nn1_detail {
    bool norm_is_nth_power = false;  // |N(u)| an exact n-th power
    mpz norm, trace, g;              // g = gcd(N, N1)
    bool ok = false;
};

/// The (N-N1) lemma test: N(u) an n-th power up to rational units and
/// gcd(N(u), N1(u)) = 1. True certifies [u] in U(A;Z/n) = K_1(A;Z/n).
inline nn1_detail nn1_check(const quad_int& u, unsigned n) {
    if (n < 2) throw bad_input("nn1_check needs n >= 2");
    if (u.alpha == 0 && u.beta == 0) throw bad_input("nn1_check needs u != 0");
    nn1_detail d;
    d.norm = quad_norm(u);
    d.trace = quad_trace(u);
    mpz a = abs(d.norm);
    mpz root;
    d.norm_is_nth_power = (a != 0) && mpz_root(root.get_mpz_t(), a.get_mpz_t(), n) != 0;
    mpz_gcd(d.g.get_mpz_t(), d.norm.get_mpz_t(), d.trace.get_mpz_t());
    d.ok = d.norm_is_nth_power && d.g == 1;
    return d;
}

// ---------------------------------------------------------------------------
// Omega^1_dR(A) and the Dennis trace 2beta/alpha (Props 41-42, §3.4).
// ---------------------------------------------------------------------------

struct omega_module_desc {
    mpz d_omega_modulus;        // Z/modulus on d_omega (modulus 1 = trivial)
    mpz omega_d_omega_modulus;  // Z/modulus on omega*d_omega as a direct summand (1 = none)
    bool omega_is_half;         // omega d_omega = (1/2) d_omega (delta odd case)

    std::string text() const {
        std::string s = "Z/" + d_omega_modulus.get_str() + " d_omega";
        if (omega_d_omega_modulus != 1) s += " (+) Z/" + omega_d_omega_modulus.get_str() + " omega*d_omega";
        else if (omega_is_half) s += " with omega*d_omega = (1/2) d_omega";
        else s += " with omega*d_omega = 0";
        return s;
    }
};

/// n = 0 describes the whole module; otherwise the reduction mod n.
/// delta odd:  Z/gcd(n,|delta|) d_omega, omega d_omega = (1/2) d_omega.
/// delta even: Z/gcd(n,|delta|/2) d_omega (+) Z/gcd(n,2) omega d_omega.
inline omega_module_desc omega_module(const quad_disc& d, unsigned long n = 0) {
    omega_module_desc out;
    mpz nn(static_cast<unsigned long>(n));
    if (mpz_odd_p(d.delta.get_mpz_t())) {
        mpz_gcd(out.d_omega_modulus.get_mpz_t(), nn.get_mpz_t(), d.delta.get_mpz_t());
        out.d_omega_modulus = abs(out.d_omega_modulus);
        out.omega_d_omega_modulus = 1;
        out.omega_is_half = true;
    } else {
        mpz half = d.delta / 2;
        mpz_gcd(out.d_omega_modulus.get_mpz_t(), nn.get_mpz_t(), half.get_mpz_t());
        out.d_omega_modulus = abs(out.d_omega_modulus);
        mpz two(2);
        mpz_gcd(out.omega_d_omega_modulus.get_mpz_t(), nn.get_mpz_t(), two.get_mpz_t());
        out.omega_is_half = false;
    }
    return out;
}

/// z^{-1}dz = (2 beta / alpha) d_omega mod n Omega^1, for odd n | delta with
/// gcd(N(z), n) = 1. A nonzero value certifies a nontrivial secondary class.
inline unsigned long dennis_trace_quad(const quad_int& z, unsigned long n) {
    if (n < 3 || n % 2 == 0) throw bad_input("dennis_trace_quad needs odd n >= 3");
    if (!mpz_divisible_ui_p(z.delta.get_mpz_t(), n)) throw bad_input("n must divide delta");
    mpz nz = quad_norm(z), g, nn(n);
    mpz_gcd(g.get_mpz_t(), nz.get_mpz_t(), nn.get_mpz_t());
    if (g != 1) throw non_coprime_norm();
    mpz am = z.alpha % nn;
    mpz ainv;
    if (mpz_invert(ainv.get_mpz_t(), am.get_mpz_t(), nn.get_mpz_t()) == 0)
        throw non_coprime_norm();  // cannot happen: N = alpha^2/4 mod n
    mpz r = (2 * z.beta * ainv) % nn;
    if (r < 0) r += nn;
    return mpz_get_ui(r.get_mpz_t());
}

// ---------------------------------------------------------------------------
// Fundamental unit by the continued fraction of omega.
// ---------------------------------------------------------------------------

/// Smallest unit > 1 of the maximal order of discriminant delta > 0,
/// returned as (eps1 + eps2 sqrt(delta))/2 with eps1, eps2 > 0 and
/// eps1^2 - delta eps2^2 = +/-4.
///
/// Expands omega = (1 + sqrt(delta))/2 or sqrt(delta)/2 by the standard
/// (P,Q) recursion; once a complete-quotient state repeats, the period's
/// convergent matrix T fixes omega, and eps = c*omega + d from the bottom
/// row of T is the fundamental automorphism.
inline quad_int fundamental_unit(const quad_disc& dd) {
    if (dd.delta <= 0) throw bad_input("fundamental_unit needs delta > 0");
    const mpz D = dd.delta;
    mpz sq;
    mpz_sqrt(sq.get_mpz_t(), D.get_mpz_t());

    bool odd_disc = mpz_odd_p(D.get_mpz_t());
    mpz P = odd_disc ? 1 : 0, Q = 2;

    std::map<std::pair<mpz, mpz>, size_t> seen;
    std::vector<mpz> pc, qc;  // convergent numerators/denominators p_k, q_k
    mpz p1 = 1, p2 = 0, q1 = 0, q2 = 1;  // p_{k-1}, p_{k-2}, q_{k-1}, q_{k-2}
    size_t k = 0;
    size_t j = 0;
    for (;; ++k) {
        if (k > 2000000) throw error("continued fraction period exceeds iteration cap");
        auto it = seen.find({P, Q});
        if (it != seen.end()) { j = it->second; break; }
        seen.emplace(std::make_pair(P, Q), k);
        pc.push_back(p1); qc.push_back(q1);  // stores p_{k-1}, q_{k-1}
        if (Q <= 0) throw error("continued fraction state left the reduced zone");
        mpz a = (P + sq) / Q;
        mpz Pn = a * Q - P;
        mpz Qn = (D - Pn * Pn) / Q;
        mpz pk = a * p1 + p2, qk = a * q1 + q2;
        p2 = p1; p1 = pk; q2 = q1; q1 = qk;
        P = Pn; Q = Qn;
    }
    // pc[i] = p_{i-1}, qc[i] = q_{i-1}; after the loop (p1,p2,q1,q2) hold
    // p_{k-1}, p_{k-2}, q_{k-1}, q_{k-2}.
    mpz qk1 = q1, qk2 = q2;
    mpz pj1 = pc[j], qj1 = qc[j];
    mpz pjm2 = (j >= 1) ? pc[j - 1] : mpz(0);
    mpz qjm2 = (j >= 1) ? qc[j - 1] : mpz(1);
    // T = M_k * adj(M_j), M_i = [[p_{i-1}, p_{i-2}], [q_{i-1}, q_{i-2}]],
    // adj(M_j) = [[q_{j-2}, -p_{j-2}], [-q_{j-1}, p_{j-1}]]; bottom row of T:
    mpz c = qk1 * qjm2 - qk2 * qj1;
    mpz dcoef = -qk1 * pjm2 + qk2 * pj1;

    mpz e1 = odd_disc ? mpz(c + 2 * dcoef) : mpz(2 * dcoef);
    mpz e2 = c;
    e1 = abs(e1);
    e2 = abs(e2);
    mpz check = e1 * e1 - D * e2 * e2;
    if (!(check == 4 || check == -4))
        throw error("continued fraction produced a non-unit (internal error)");
    return {D, e1, e2};
}

/// Imaginary delta: vacuously true. Real delta: n | eps2.
inline bool unit_condition(const quad_disc& d, unsigned long n) {
    if (d.imaginary()) return true;
    auto eps = fundamental_unit(d);
    return mpz_divisible_ui_p(eps.beta.get_mpz_t(), n) != 0;
}

// ---------------------------------------------------------------------------
// Yamamoto's conditions (§3.1).
// ---------------------------------------------------------------------------

/// Exhaustive p-th-power test modulo b, prime-power factor by factor (CRT).
inline bool is_pth_power_mod(const mpz& x, unsigned long pprime, const mpz& b) {
    if (b <= 0) throw bad_input("modulus must be positive");
    if (b == 1) return true;
    if (b > 10000000) throw bad_input("p-th power test limited to moduli <= 10^7");
    uint64_t bu = mpz_to_u64(b);
    for (auto& [q, e] : factorize(bu)) {
        uint64_t qe = 1;
        for (int i = 0; i < e; ++i) qe *= q;
        uint64_t target = mpz_fdiv_ui(x.get_mpz_t(), qe);
        bool found = false;
        for (uint64_t r = 0; r < qe && !found; ++r)
            if (powmod_u64(r, pprime, qe) == target) found = true;
        if (!found) return false;
    }
    return true;
}

struct yamamoto_prime_check {
    uint64_t q = 0;
    bool a_first = false, a_second = false;  // condition a): alpha NOT a q-th power mod b (resp ')
    bool b_first = false, b_second = false;  // condition b): (alpha+alpha')/2 IS a q-th power mod b, b'
    bool ok() const { return a_first && a_second && b_first && b_second; }
};

struct yamamoto_result {
    mpz delta;
    bool same_pair = false;
    std::vector<yamamoto_prime_check> primes;
    bool all_ok() const {
        if (same_pair) return false;
        for (auto& c : primes)
            if (!c.ok()) return false;
        return true;
    }
};

inline yamamoto_result yamamoto_check(const mpz& alpha, const mpz& b, const mpz& alpha2,
                                      const mpz& b2, unsigned long n) {
    if (n < 3 || n % 2 == 0) throw bad_input("yamamoto_check needs odd n >= 3");
    mpz g1, g2;
    mpz_gcd(g1.get_mpz_t(), alpha.get_mpz_t(), b.get_mpz_t());
    mpz_gcd(g2.get_mpz_t(), alpha2.get_mpz_t(), b2.get_mpz_t());
    if (g1 != 1 || g2 != 1) throw bad_input("yamamoto_check needs gcd(alpha, b) = 1 for both pairs");
    mpz bn, b2n;
    mpz_pow_ui(bn.get_mpz_t(), b.get_mpz_t(), n);
    mpz_pow_ui(b2n.get_mpz_t(), b2.get_mpz_t(), n);
    mpz d1 = alpha * alpha - 4 * bn, d2 = alpha2 * alpha2 - 4 * b2n;
    if (d1 != d2) throw bad_input("discriminants disagree");

    yamamoto_result res;
    res.delta = d1;
    res.same_pair = (alpha == alpha2 && b == b2);
    if (res.same_pair) return res;

    mpz mid = (alpha + alpha2) / 2;
    for (auto& [q, e] : factorize(n)) {
        yamamoto_prime_check c;
        c.q = q;
        c.a_first = !is_pth_power_mod(alpha, q, abs(b));
        c.a_second = !is_pth_power_mod(alpha2, q, abs(b2));
        c.b_first = is_pth_power_mod(mid, q, abs(b));
        c.b_second = is_pth_power_mod(mid, q, abs(b2));
        res.primes.push_back(c);
    }
    return res;
}

// ---------------------------------------------------------------------------
// Binary quadratic forms: Gauss reduction, Dirichlet composition, orders,
// and the reduced-forms class number (definite case only).
// ---------------------------------------------------------------------------

struct quad_form {
    mpz a, b, c;

    mpz disc() const { return b * b - 4 * a * c; }
    bool operator==(const quad_form&) const = default;
    bool is_principal() const { return a == 1; }
};

namespace detail {

inline void form_normalize(quad_form& f) {
    // bring b into (-a, a]
    mpz q, r;
    mpz twoa = 2 * f.a;
    mpz_fdiv_qr(q.get_mpz_t(), r.get_mpz_t(), mpz(f.b + f.a).get_mpz_t(), twoa.get_mpz_t());
    // r in [0, 2a); new b = r - a in [-a, a)
    mpz nb = r - f.a;
    if (nb == -f.a) { nb += twoa; q -= 1; }
    f.c = f.a * q * q - f.b * q + f.c;
    f.b = nb;
}

} // namespace detail

/// Gauss reduction to |b| <= a <= c with b >= 0 when |b| = a or a = c.
inline quad_form form_reduce(quad_form f) {
    if (f.disc() >= 0) throw indefinite_unsupported();
    if (f.a <= 0) throw bad_input("definite form needs a > 0");
    detail::form_normalize(f);
    while (f.a > f.c) {
        f = {f.c, -f.b, f.a};
        detail::form_normalize(f);
    }
    if (f.a == f.c && f.b < 0) f.b = -f.b;
    return f;
}

inline quad_form principal_form(const mpz& delta) {
    if (delta >= 0) throw indefinite_unsupported();
    if (mpz_fdiv_ui(delta.get_mpz_t(), 4) == 0) return {1, 0, -delta / 4};
    return {1, 1, (1 - delta) / 4};
}

/// Dirichlet composition followed by reduction.
inline quad_form form_compose(const quad_form& f1, const quad_form& f2) {
    if (f1.disc() != f2.disc()) throw bad_input("composition needs equal discriminants");
    if (f1.disc() >= 0) throw indefinite_unsupported();
    mpz s = (f1.b + f2.b) / 2;
    mpz g, u0, v0, d, v1, w;
    mpz_gcdext(g.get_mpz_t(), u0.get_mpz_t(), v0.get_mpz_t(), f1.a.get_mpz_t(), f2.a.get_mpz_t());
    mpz_gcdext(d.get_mpz_t(), v1.get_mpz_t(), w.get_mpz_t(), g.get_mpz_t(), s.get_mpz_t());
    mpz v = v0 * v1;
    mpz a2d = f2.a / d;
    mpz A = (f1.a / d) * a2d;
    mpz t = ((s - f2.b) * v - w * f2.c) * a2d * 2;
    mpz B = f2.b + t;
    mpz C4 = B * B - f1.disc();
    mpz fourA = 4 * A;
    if (!mpz_divisible_p(C4.get_mpz_t(), fourA.get_mpz_t()))
        throw error("composition produced an inconsistent form (internal error)");
    quad_form r{A, B, C4 / fourA};
    return form_reduce(r);
}

inline quad_form form_inverse(const quad_form& f) { return form_reduce({f.a, -f.b, f.c}); }

inline uint64_t form_order(const quad_form& f) {
    if (f.disc() >= 0) throw indefinite_unsupported();
    quad_form e = form_reduce(principal_form(f.disc()));
    quad_form g = form_reduce(f);
    uint64_t k = 1;
    while (!(g == e)) {
        g = form_compose(g, f);
        if (++k > 10000000) throw error("form order exceeds iteration cap");
    }
    return k;
}

/// All reduced forms of a fundamental imaginary discriminant
/// (-a < b <= a <= c, b >= 0 when a = c; fundamental => primitive).
inline std::vector<quad_form> reduced_forms(const quad_disc& d) {
    if (!d.imaginary()) throw indefinite_unsupported();
    std::vector<quad_form> out;
    mpz bound;  // a <= sqrt(|delta|/3)
    mpz ad = -d.delta;
    mpz_sqrt(bound.get_mpz_t(), mpz(ad / 3).get_mpz_t());
    for (mpz a = 1; a <= bound + 1; ++a) {
        for (mpz b = -a + 1; b <= a; ++b) {
            mpz num = b * b + ad;  // b^2 - delta
            if (!mpz_divisible_p(num.get_mpz_t(), mpz(4 * a).get_mpz_t())) continue;
            mpz c = num / (4 * a);
            if (c < a) continue;
            if (a == c && b < 0) continue;
            out.push_back({a, b, c});
        }
    }
    return out;
}

inline uint64_t class_number(const quad_disc& d) { return reduced_forms(d).size(); }

struct certify_result {
    quad_form witness, reduced;
    uint64_t order = 0;
    bool pass = false;
};

/// Witness form (b, alpha, b^{n-1}) of discriminant alpha^2 - 4 b^n = delta;
/// PASS iff the class order is exactly n (prime n), or each prime of n
/// divides the order (composite n); the order is reported verbatim.
inline certify_result certify_table_entry(const mpz& delta, unsigned long n, const mpz& alpha,
                                          const mpz& b) {
    if (b < 1) throw bad_input("witness form needs b >= 1");
    mpz bn;
    mpz_pow_ui(bn.get_mpz_t(), b.get_mpz_t(), n);
    if (alpha * alpha - 4 * bn != delta) throw bad_input("delta != alpha^2 - 4 b^n");
    if (delta >= 0) throw indefinite_unsupported();
    mpz bnm1;
    mpz_pow_ui(bnm1.get_mpz_t(), b.get_mpz_t(), n - 1);
    certify_result res;
    res.witness = {b, alpha, bnm1};
    res.reduced = form_reduce(res.witness);
    res.order = form_order(res.witness);
    if (is_prime_u64(n)) {
        res.pass = (res.order == n);
    } else {
        res.pass = true;
        for (auto& [q, e] : factorize(n))
            if (res.order % q != 0) res.pass = false;
    }
    return res;
}

// ---------------------------------------------------------------------------
// Torsion-witness search (Props 39, 43, 44).
// ---------------------------------------------------------------------------

struct torsion_witness {
    mpz delta;
    unsigned long n = 0;
    long alpha = 0, b = 0;
    bool nn1 = false;
    bool nonsquare_proper_ok = false;  // delta + 4 b^m nonsquare for proper divisors m | n
    bool literal_display_square = false;  // delta + 4 b^n is a square (it always is: alpha^2)
    bool ramified_ok = false;             // n | delta and gcd(alpha, n) = 1
    bool real_case = false;
    bool unit_cond = false;
    long trace_mod_n = -1;  // 2/alpha mod n when defined
    long order = -1;        // witness form order, delta < 0 only
    bool certified = false;
};

/// Enumerates coprime (alpha, b) with 0 <= alpha <= alpha_max,
/// 1 <= |b| <= b_max (negative b gives the ramified real-discriminant rows),
/// keeps fundamental delta = alpha^2 - 4 b^n, and attaches every check the
/// table rows need. Deterministic order: by |delta|, delta, alpha, b.
inline std::vector<torsion_witness> torsion_search(unsigned long n, long alpha_max, long b_max,
                                                   bool include_negative_b = true) {
    if (n < 3 || n % 2 == 0) throw bad_input("torsion_search needs odd n >= 3");
    if (alpha_max < 0 || b_max < 1) throw bad_input("bounds must be positive");
    std::vector<torsion_witness> out;
    for (long alpha = 0; alpha <= alpha_max; ++alpha) {
        for (long b = include_negative_b ? -b_max : 1; b <= b_max; ++b) {
            if (b == 0) continue;
            mpz am = mpz_from_ll(alpha), bm = mpz_from_ll(b), g;
            mpz_gcd(g.get_mpz_t(), am.get_mpz_t(), bm.get_mpz_t());
            if (g != 1) continue;
            mpz bn;
            mpz_pow_ui(bn.get_mpz_t(), bm.get_mpz_t(), n);
            mpz delta = am * am - 4 * bn;
            if (delta == 0 || delta == 1 || delta == -3 || delta == -4) continue;
            if (!is_fundamental_discriminant(delta)) continue;
            quad_disc dd(delta);

            torsion_witness tw;
            tw.delta = delta;
            tw.n = n;
            tw.alpha = alpha;
            tw.b = b;
            tw.real_case = delta > 0;
            quad_int u(delta, am, 1);
            tw.nn1 = nn1_check(u, static_cast<unsigned>(n)).ok;

            tw.nonsquare_proper_ok = true;
            for (unsigned long m = 1; m < n; ++m) {
                if (n % m != 0) continue;
                mpz bmp;
                mpz_pow_ui(bmp.get_mpz_t(), bm.get_mpz_t(), m);
                mpz val = delta + 4 * bmp;
                if (val >= 0 && mpz_perfect_square_p(val.get_mpz_t()))
                    tw.nonsquare_proper_ok = false;
            }
            mpz lit = delta + 4 * bn;
            tw.literal_display_square = lit >= 0 && mpz_perfect_square_p(lit.get_mpz_t());

            tw.ramified_ok = mpz_divisible_ui_p(delta.get_mpz_t(), n) &&
                             (alpha == 0 ? false : std::gcd(static_cast<unsigned long>(std::abs(alpha)), n) == 1);
            tw.unit_cond = unit_condition(dd, n);
            if (tw.ramified_ok) {
                mpz nrm = quad_norm(u), gg, nn_(n);
                mpz_gcd(gg.get_mpz_t(), nrm.get_mpz_t(), nn_.get_mpz_t());
                if (gg == 1) tw.trace_mod_n = static_cast<long>(dennis_trace_quad(u, n));
            }
            if (delta < 0 && b >= 1) {
                auto cert = certify_table_entry(delta, n, am, bm);
                tw.order = static_cast<long>(cert.order);
                tw.certified = cert.pass;
            }
            out.push_back(std::move(tw));
        }
    }
    std::sort(out.begin(), out.end(), [](const torsion_witness& x, const torsion_witness& y) {
        mpz ax = abs(x.delta), ay = abs(y.delta);
        if (ax != ay) return ax < ay;
        if (x.delta != y.delta) return x.delta < y.delta;
        if (x.alpha != y.alpha) return x.alpha < y.alpha;
        return x.b < y.b;
    });
    return out;
}

} // namespace cyclo
