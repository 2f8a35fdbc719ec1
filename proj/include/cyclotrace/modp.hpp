#pragma once

/// Prime-field and small-integer utilities underpinning every other module:
/// validated odd primes, canonical residues, modular exponentiation with
/// signed exponents, smallest primitive roots, trial-division factorization,
/// and a Montgomery context for the hot scan loops.

#include <cstdint>
#include <utility>
#include <vector>

#include "cyclotrace/errors.hpp"

namespace cyclo {

inline uint64_t mulmod_u64(uint64_t a, uint64_t b, uint64_t m) {
    return static_cast<uint64_t>((static_cast<__uint128_t>(a) * b) % m);
}

inline uint64_t powmod_u64(uint64_t a, uint64_t e, uint64_t m) {
    uint64_t r = 1 % m;
    a %= m;
    while (e) {
        if (e & 1) r = mulmod_u64(r, a, m);
        a = mulmod_u64(a, a, m);
        e >>= 1;
    }
    return r;
}

// Deterministic Miller-Rabin, valid for all n < 2^64.
inline bool is_prime_u64(uint64_t n) {
    if (n < 2) return false;
    for (uint64_t q : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
        if (n % q == 0) return n == q;
    }
    uint64_t d = n - 1;
    int s = 0;
    while ((d & 1) == 0) { d >>= 1; ++s; }
    for (uint64_t a : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
        uint64_t x = powmod_u64(a, d, n);
        if (x == 1 || x == n - 1) continue;
        bool composite = true;
        for (int i = 0; i < s - 1; ++i) {
            x = mulmod_u64(x, x, n);
            if (x == n - 1) { composite = false; break; }
        }
        if (composite) return false;
    }
    return true;
}

/// An odd prime 3 <= p < 2^31, checked at construction.
class Prime {
  public:
    explicit Prime(uint32_t p) : p_(p) {
        if (p < 3 || p % 2 == 0 || p >= (1u << 31) || !is_prime_u64(p))
            throw bad_input("not an odd machine-word prime: " + std::to_string(p));
    }
    uint32_t value() const { return p_; }

    bool operator==(const Prime&) const = default;

  private:
    uint32_t p_;
};

// Residue arithmetic on canonical representatives in [0, p).
inline uint32_t mod_add(uint32_t a, uint32_t b, uint32_t p) {
    uint64_t s = static_cast<uint64_t>(a) + b;
    return static_cast<uint32_t>(s >= p ? s - p : s);
}
inline uint32_t mod_sub(uint32_t a, uint32_t b, uint32_t p) {
    return a >= b ? a - b : a + p - b;
}
inline uint32_t mod_neg(uint32_t a, uint32_t p) { return a ? p - a : 0; }
inline uint32_t mod_mul(uint32_t a, uint32_t b, uint32_t p) {
    return static_cast<uint32_t>(static_cast<uint64_t>(a) * b % p);
}
inline uint32_t mod_of_ll(long long v, uint32_t p) {
    long long r = v % static_cast<long long>(p);
    if (r < 0) r += p;
    return static_cast<uint32_t>(r);
}

inline uint32_t mod_pow(uint32_t a, uint64_t e, uint32_t p) {
    return static_cast<uint32_t>(powmod_u64(a, e, p));
}

// Extended-gcd inverse; works for any modulus with gcd(a, m) = 1.
inline uint32_t mod_inv(uint32_t a, uint32_t p) {
    if (a == 0) throw zero_inverse();
    int64_t t = 0, newt = 1;
    int64_t r = p, newr = a % p;
    while (newr != 0) {
        int64_t q = r / newr;
        t = std::exchange(newt, t - q * newt);
        r = std::exchange(newr, r - q * newr);
    }
    if (r != 1) throw zero_inverse();
    return static_cast<uint32_t>(t < 0 ? t + p : t);
}

/// Canonical residue in [0, p-1] tagged with its modulus.
struct Fp {
    uint32_t value;
    uint32_t p;

    Fp(uint32_t v, const Prime& pr) : value(v % pr.value()), p(pr.value()) {}
    Fp(uint32_t v, uint32_t modulus) : value(v % modulus), p(modulus) {}

    bool operator==(const Fp&) const = default;

    Fp operator+(Fp o) const { return {mod_add(value, o.value, p), p}; }
    Fp operator-(Fp o) const { return {mod_sub(value, o.value, p), p}; }
    Fp operator*(Fp o) const { return {mod_mul(value, o.value, p), p}; }
    Fp operator-() const { return {mod_neg(value, p), p}; }
};

inline Fp inv(Fp a) {
    if (a.value == 0) throw zero_inverse();
    return {mod_inv(a.value, a.p), a.p};
}

// a^e with e interpreted in Z; negative exponents go through the inverse.
inline Fp pow_mod(Fp a, int64_t e) {
    if (e < 0) {
        if (a.value == 0) throw zero_inverse();
        return {mod_pow(mod_inv(a.value, a.p), static_cast<uint64_t>(-e), a.p), a.p};
    }
    return {mod_pow(a.value, static_cast<uint64_t>(e), a.p), a.p};
}

inline std::vector<std::pair<uint64_t, int>> factorize(uint64_t m) {
    if (m < 1 || m >= (1ull << 63)) throw bad_input("factorize expects 1 <= m < 2^63");
    std::vector<std::pair<uint64_t, int>> out;
    for (uint64_t d = 2; d * d <= m; d += (d == 2 ? 1 : 2)) {
        if (m % d) continue;
        int e = 0;
        while (m % d == 0) { m /= d; ++e; }
        out.emplace_back(d, e);
    }
    if (m > 1) out.emplace_back(m, 1);
    return out;
}

inline bool is_squarefree(uint64_t m) {
    for (auto& [q, e] : factorize(m))
        if (e > 1) return false;
    return true;
}

/// Smallest positive generator of (Z/p)^x. Deterministic so that every
/// Galois-indexed quantity is reproducible across runs.
inline uint32_t primitive_root(const Prime& pr) {
    uint32_t p = pr.value();
    auto fac = factorize(p - 1);
    for (uint32_t s = 2; s < p; ++s) {
        bool gen = true;
        for (auto& [q, e] : fac) {
            if (mod_pow(s, (p - 1) / q, p) == 1) { gen = false; break; }
        }
        if (gen) return s;
    }
    throw bad_input("no primitive root found (impossible for prime modulus)");
}

inline std::vector<uint32_t> odd_primes_in(uint32_t lo, uint32_t hi) {
    // sieve of [0, hi), keep odd primes in [lo, hi)
    std::vector<bool> comp(hi, false);
    std::vector<uint32_t> out;
    for (uint32_t i = 2; i < hi; ++i) {
        if (comp[i]) continue;
        if (i >= lo && i % 2 == 1) out.push_back(i);
        for (uint64_t j = static_cast<uint64_t>(i) * i; j < hi; j += i) comp[j] = true;
    }
    return out;
}

/// Montgomery arithmetic for odd p < 2^31; the r_p scan's inner loop lives here.
struct Mont32 {
    uint32_t p;
    uint32_t ninv;  // -p^{-1} mod 2^32
    uint32_t r2;    // 2^64 mod p

    explicit Mont32(uint32_t p_) : p(p_) {
        uint32_t x = p;  // Newton: x *= 2 - p*x doubles correct bits
        for (int i = 0; i < 5; ++i) x *= 2 - p * x;
        ninv = ~x + 1;
        r2 = static_cast<uint32_t>(((static_cast<__uint128_t>(1) << 64) % p));
    }

    uint32_t mul(uint32_t a, uint32_t b) const {
        uint64_t t = static_cast<uint64_t>(a) * b;
        uint32_t m = static_cast<uint32_t>(t) * ninv;
        uint32_t r = static_cast<uint32_t>((t + static_cast<uint64_t>(m) * p) >> 32);
        return r >= p ? r - p : r;
    }
    uint32_t to(uint32_t a) const { return mul(a % p, r2); }
    uint32_t from(uint32_t a) const { return mul(a, 1); }
};

/// Binomial coefficients C(n, k) mod p for 0 <= k <= n <= nmax (< p required
/// only when inverses are taken; the addition recurrence is always valid).
class BinomTable {
  public:
    BinomTable(uint32_t p, uint32_t nmax) : p_(p), n_(nmax + 1), c_((nmax + 1) * (nmax + 2) / 2, 0) {
        for (uint32_t n = 0; n <= nmax; ++n) {
            at(n, 0) = 1;
            for (uint32_t k = 1; k <= n; ++k)
                at(n, k) = mod_add(get(n - 1, k - 1), k <= n - 1 ? get(n - 1, k) : 0, p_);
        }
    }
    uint32_t get(uint32_t n, uint32_t k) const { return k > n ? 0 : c_[n * (n + 1) / 2 + k]; }

  private:
    uint32_t& at(uint32_t n, uint32_t k) { return c_[n * (n + 1) / 2 + k]; }
    uint32_t p_, n_;
    std::vector<uint32_t> c_;
};

} // namespace cyclo
