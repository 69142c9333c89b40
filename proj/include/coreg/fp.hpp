#pragma once

#include <cstdint>
#include <stdexcept>

namespace coreg::gf {

// Prime-field context. Residues are plain uint32_t in [0, p); every element
// value is interpreted relative to one Fp instance, which is passed explicitly
// to all arithmetic. Supports any prime p < 2^31.
struct Fp {
    uint32_t p;

    explicit Fp(uint32_t prime) : p(prime) {
        if (!is_prime(prime))
            throw std::invalid_argument("Fp: modulus " + std::to_string(prime) + " is not prime");
    }

    uint32_t reduce_int(long long v) const {
        long long r = v % static_cast<long long>(p);
        if (r < 0) r += p;
        return static_cast<uint32_t>(r);
    }

    uint32_t add(uint32_t a, uint32_t b) const {
        uint32_t s = a + b;
        return s >= p ? s - p : s;
    }
    uint32_t sub(uint32_t a, uint32_t b) const {
        return a >= b ? a - b : a + p - b;
    }
    uint32_t neg(uint32_t a) const { return a == 0 ? 0 : p - a; }
    uint32_t mul(uint32_t a, uint32_t b) const {
        return static_cast<uint32_t>(static_cast<uint64_t>(a) * b % p);
    }
    uint32_t pow(uint32_t a, uint64_t e) const {
        uint32_t r = 1 % p;
        uint32_t base = a % p;
        while (e) {
            if (e & 1) r = mul(r, base);
            base = mul(base, base);
            e >>= 1;
        }
        return r;
    }
    uint32_t inv(uint32_t a) const {
        if (a % p == 0) throw std::domain_error("Fp::inv: inversion of zero");
        // extended Euclid on (a, p)
        int64_t t = 0, newt = 1;
        int64_t r = p, newr = a % p;
        while (newr != 0) {
            int64_t q = r / newr;
            int64_t tmp = t - q * newt;
            t = newt; newt = tmp;
            tmp = r - q * newr;
            r = newr; newr = tmp;
        }
        if (t < 0) t += p;
        return static_cast<uint32_t>(t);
    }
    uint32_t div(uint32_t a, uint32_t b) const { return mul(a, inv(b)); }

    // Multiplicative order of a nonzero residue.
    uint32_t mult_order(uint32_t a) const {
        if (a % p == 0) throw std::domain_error("Fp::mult_order: zero has no order");
        uint32_t x = a % p, k = 1;
        while (x != 1 % p) { x = mul(x, a); ++k; }
        return k;
    }

    static bool is_prime(uint32_t v) {
        if (v < 2) return false;
        for (uint64_t d = 2; d * d <= v; ++d)
            if (v % d == 0) return false;
        return true;
    }
};

}  // namespace coreg::gf
