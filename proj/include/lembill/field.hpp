#pragma once
#include <gmpxx.h>

#include <cstdint>
#include <memory>
#include <vector>

#include "lembill/common.hpp"

namespace lembill::field {

using Fe = mpz_class;  // residue in [0, q)

// Bit-length bound for signed plaintexts: |x| < 2^L and 2^(L+1) < q,
// so the centered lift is injective on the plaintext range.
struct SignedBound {
    unsigned L;
};

// Prime field Z_q. All Fe values are canonical residues; the context owns
// the modulus and performs every operation.
class FieldCtx {
public:
    explicit FieldCtx(const mpz_class& q);

    const mpz_class& q() const { return q_; }
    unsigned bits() const { return bits_; }
    unsigned bytes() const { return (bits_ + 7) / 8; }

    Fe from_int(long v) const;
    Fe from_signed(const mpz_class& v) const;  // reduce a signed integer mod q

    Fe add(const Fe& a, const Fe& b) const;
    Fe sub(const Fe& a, const Fe& b) const;
    Fe mul(const Fe& a, const Fe& b) const;
    Fe neg(const Fe& a) const;
    Fe inv(const Fe& a) const;  // a != 0
    Fe pow(const Fe& a, const mpz_class& e) const;
    Fe sqrt(const Fe& a) const;  // a must be a quadratic residue (Tonelli-Shanks)
    bool is_qr(const Fe& a) const;

    // y in (-q/2, q/2] with y === x (mod q); throws if |y| >= 2^L
    mpz_class centered_lift(const Fe& x, SignedBound bound) const;
    // unchecked centered representative
    mpz_class centered(const Fe& x) const;

    Fe sample_uniform(Rng& rng) const;

    bool bound_fits(SignedBound bound) const;  // 2^(L+1) < q

private:
    mpz_class q_;
    unsigned bits_;
};

// 128-bit default modulus used for protocol runs (2^128 + 51, prime).
const mpz_class& default_modulus();
// small prime used by exhaustive test profiles
inline mpz_class test_modulus() { return mpz_class(101); }

int64_t to_int64(const mpz_class& v);  // checked narrowing

}  // namespace lembill::field
