#pragma once

#include <gmpxx.h>
#include <cstdint>
#include <stdexcept>
#include <string>

namespace hopfext {

// Exact scalar: a rational number.  F_p elements are stored as the residue
// in [0,p) with denominator 1; Z_(p) elements are fractions whose denominator
// is coprime to p.  No floating point anywhere.
using Rat = mpq_class;

enum class RingKind { PrimeField, PLocal, Rational };

struct CoefficientRing {
    RingKind kind = RingKind::Rational;
    int p = 0;  // prime, or 0 for the rationals

    static CoefficientRing Fp(int p) { return {RingKind::PrimeField, p}; }
    static CoefficientRing Zp(int p) { return {RingKind::PLocal, p}; }
    static CoefficientRing Q() { return {RingKind::Rational, 0}; }

    bool operator==(const CoefficientRing&) const = default;

    bool is_field() const { return kind != RingKind::PLocal; }

    // Bring a raw rational into canonical form for this ring.
    // Throws if the value does not belong to the ring (denominator divisible
    // by p in the p-local case).
    Rat normalize(const Rat& x) const {
        Rat v = x;
        v.canonicalize();
        switch (kind) {
        case RingKind::Rational:
            return v;
        case RingKind::PLocal: {
            if (mpz_divisible_ui_p(v.get_den().get_mpz_t(), (unsigned long)p))
                throw std::domain_error("denominator divisible by p in Z_(p)");
            return v;
        }
        case RingKind::PrimeField: {
            // residue of num * den^{-1} mod p
            mpz_class num = v.get_num(), den = v.get_den();
            mpz_class pz(p), dinv;
            if (mpz_invert(dinv.get_mpz_t(), den.get_mpz_t(), pz.get_mpz_t()) == 0)
                throw std::domain_error("denominator divisible by p in F_p");
            mpz_class r = ((num % pz) * dinv) % pz;
            if (r < 0) r += pz;
            return Rat(r);
        }
        }
        return v;
    }

    // Assumes x is in canonical form for this ring.
    bool is_zero(const Rat& x) const { return sgn(x) == 0; }

    bool is_unit(const Rat& x) const {
        Rat v = normalize(x);
        if (sgn(v) == 0) return false;
        if (kind == RingKind::PLocal)
            return !mpz_divisible_ui_p(v.get_num().get_mpz_t(), (unsigned long)p);
        return true;
    }
};

// p-adic valuation of a nonzero rational (may be negative for rationals with
// p in the denominator; Z_(p) values always give >= 0).
inline long p_valuation(const Rat& x, int p) {
    if (sgn(x) == 0) throw std::domain_error("valuation of zero");
    long v = 0;
    mpz_class n = x.get_num();
    while (mpz_divisible_ui_p(n.get_mpz_t(), (unsigned long)p)) {
        mpz_divexact_ui(n.get_mpz_t(), n.get_mpz_t(), (unsigned long)p);
        ++v;
    }
    mpz_class d = x.get_den();
    while (mpz_divisible_ui_p(d.get_mpz_t(), (unsigned long)p)) {
        mpz_divexact_ui(d.get_mpz_t(), d.get_mpz_t(), (unsigned long)p);
        --v;
    }
    return v;
}

inline std::string rat_to_string(const Rat& x) {
    return x.get_str();
}

}  // namespace hopfext
