#pragma once
#include <vector>

#include "lembill/group.hpp"

namespace lembill::ipe {

// Function-hiding inner-product encryption with zero-test decryption.
// msk is an invertible n x n matrix B over Z_r together with
// B* = det(B) * (B^{-1})^T, so that (xB) . (yB*) = det(B) * <x, y>.
//   left ciphertext:  K1 = g^{a det B},  K2_i = g^{a (xB)_i}
//   right ciphertext: C1 = g^b,          C2_i = g^{b (yB*)_i}
// Zero-test checks prod_i e(K2_i, C2_i) == 1, i.e. <x, y> == 0 mod r.
// Decryption never extracts the inner product itself.

struct IpeParams {
    unsigned n = 0;
    group::Gt base;  // e(g, g)
};

struct IpeMasterKey {
    unsigned n = 0;
    uint64_t det = 0;                 // det(B) mod r, nonzero
    std::vector<uint64_t> B, Bstar;   // row-major, plain scalars mod r
};

struct LeftCiphertext {
    group::Affine k1;
    std::vector<group::Affine> k2;
};

struct RightCiphertext {
    group::Affine c1;
    std::vector<group::Affine> c2;
};

class IpeCtx {
public:
    explicit IpeCtx(const group::Curve& curve) : curve_(&curve) {}

    std::pair<IpeParams, IpeMasterKey> setup(unsigned n, Rng& rng) const;

    uint64_t sample_nonzero_scalar(Rng& rng) const;

    LeftCiphertext left_encrypt(const IpeMasterKey& msk, uint64_t alpha,
                                const std::vector<uint64_t>& x) const;
    RightCiphertext right_encrypt(const IpeMasterKey& msk, uint64_t beta,
                                  const std::vector<uint64_t>& y) const;

    bool zero_test(const LeftCiphertext& ctx, const RightCiphertext& cty) const;

    // layout: version byte, n, then compressed points (K1/C1 first)
    std::vector<uint8_t> serialize_left(const LeftCiphertext& ct) const;
    std::vector<uint8_t> serialize_right(const RightCiphertext& ct) const;
    LeftCiphertext deserialize_left(const std::vector<uint8_t>& buf) const;
    RightCiphertext deserialize_right(const std::vector<uint8_t>& buf) const;

    const group::Curve& curve() const { return *curve_; }

private:
    std::vector<uint64_t> mat_vec(const std::vector<uint64_t>& m, unsigned n,
                                  const std::vector<uint64_t>& v, bool transpose) const;
    const group::Curve* curve_;
};

}  // namespace lembill::ipe
