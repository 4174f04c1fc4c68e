#pragma once
#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "lembill/common.hpp"

namespace lembill::group {

// Montgomery arithmetic modulo a fixed odd prime < 2^63.
class Mont64 {
public:
    explicit Mont64(uint64_t p);

    uint64_t p() const { return p_; }
    unsigned bits() const { return bits_; }

    uint64_t to_mont(uint64_t a) const { return mul(a % p_, r2_); }
    uint64_t from_mont(uint64_t a) const { return redc(static_cast<unsigned __int128>(a)); }

    uint64_t add(uint64_t a, uint64_t b) const {
        uint64_t s = a + b;
        if (s >= p_ || s < a) s -= p_;
        return s;
    }
    uint64_t sub(uint64_t a, uint64_t b) const { return a >= b ? a - b : a + p_ - b; }
    uint64_t neg(uint64_t a) const { return a ? p_ - a : 0; }
    uint64_t mul(uint64_t a, uint64_t b) const {
        return redc(static_cast<unsigned __int128>(a) * b);
    }
    uint64_t sqr(uint64_t a) const { return mul(a, a); }
    uint64_t pow(uint64_t a, uint64_t e) const;  // a in Montgomery form, e plain
    uint64_t inv(uint64_t a) const { return pow(a, p_ - 2); }
    uint64_t one() const { return one_; }

    // plain-value helpers
    uint64_t mulp(uint64_t a, uint64_t b) const {
        return static_cast<uint64_t>(static_cast<unsigned __int128>(a % p_) * (b % p_) % p_);
    }

private:
    uint64_t redc(unsigned __int128 t) const {
        uint64_t m = static_cast<uint64_t>(t) * ninv_;
        unsigned __int128 u = t + static_cast<unsigned __int128>(m) * p_;
        uint64_t r = static_cast<uint64_t>(u >> 64);
        if (r >= p_) r -= p_;
        return r;
    }
    uint64_t p_, ninv_, r2_, one_;
    unsigned bits_;
};

struct Fp2 {  // a + b*i with i^2 = -1, coordinates in Montgomery form
    uint64_t a = 0, b = 0;
};

struct Affine {  // Montgomery-form coordinates
    uint64_t x = 0, y = 0;
    bool inf = true;
};

struct Jacobian {
    uint64_t X = 0, Y = 0, Z = 0;
    bool inf = true;
};

struct CurveProfile {
    uint64_t p;   // base field prime, p = 4r - 1, p === 3 (mod 4)
    uint64_t r;   // prime subgroup order
    uint64_t gx, gy;  // generator of the order-r subgroup (plain form)
    const char* name;
};

CurveProfile desk_profile();  // small, fast parameters for simulation runs
CurveProfile wide_profile();  // 63-bit parameters
CurveProfile micro_profile();  // tiny parameters for pairing-heavy inner loops

class Curve;

// element of the order-r subgroup of F_p2^* (pairing target)
class Gt {
public:
    Fp2 v;
    bool is_identity(const Curve& c) const;
};

// Product-of-pairings accumulator: shared final exponentiation.
class MillerAcc {
public:
    explicit MillerAcc(const Curve& c);
    void accumulate(const Affine& P, const Affine& Q);
    Gt finalize();

private:
    const Curve& c_;
    Fp2 f_;
};

// Supersingular curve y^2 = x^3 + x over F_p with the order-r subgroup and
// the modified Tate pairing e(P, psi(Q)), psi(x, y) = (-x, i*y).
class Curve {
public:
    explicit Curve(const CurveProfile& prof);

    const CurveProfile& profile() const { return prof_; }
    const Mont64& fp() const { return fp_; }
    const Mont64& fr() const { return fr_; }  // scalar ring Z_r
    const Affine& g() const { return g_; }

    bool on_curve(const Affine& P) const;
    bool eq(const Affine& P, const Affine& Q) const;
    Affine neg(const Affine& P) const;
    Affine add(const Affine& P, const Affine& Q) const;
    Affine scalar_mul(const Affine& P, uint64_t k) const;  // k plain, any base
    Affine mul_g(uint64_t k) const;                        // fixed-base window on g
    Jacobian mul_g_jac(uint64_t k) const;                  // same, normalization deferred

    Affine to_affine(const Jacobian& J) const;
    // shared-inversion normalization (Montgomery's trick)
    std::vector<Affine> batch_to_affine(const std::vector<Jacobian>& js) const;

    // deterministic point with unknown discrete log relative to g
    Affine hash_to_point(const std::string& tag) const;

    // 9-byte compressed encoding: big-endian x (plain form) then parity of y
    static constexpr size_t kPointBytes = 9;
    std::array<uint8_t, kPointBytes> compress(const Affine& P) const;
    Affine decompress(const std::array<uint8_t, kPointBytes>& buf) const;

    Gt pair(const Affine& P, const Affine& Q) const;
    Gt gt_identity() const;
    Gt gt_mul(const Gt& a, const Gt& b) const;
    Gt gt_pow(const Gt& a, uint64_t e) const;
    bool gt_eq(const Gt& a, const Gt& b) const { return a.v.a == b.v.a && a.v.b == b.v.b; }

    // Fp2 helpers (used by the Miller accumulator)
    Fp2 fp2_mul(const Fp2& x, const Fp2& y) const;
    Fp2 fp2_sqr(const Fp2& x) const;
    Fp2 fp2_inv(const Fp2& x) const;
    Fp2 fp2_conj(const Fp2& x) const { return {x.a, fp_.neg(x.b)}; }
    Fp2 fp2_one() const { return {fp_.one(), 0}; }
    Fp2 miller(const Affine& P, const Affine& Q) const;  // un-exponentiated value
    Gt final_exp(const Fp2& f) const;

    // precomputed fixed-base context for an arbitrary base (Pedersen H etc.)
    class FixedBase {
    public:
        FixedBase() = default;
        FixedBase(const Curve& c, const Affine& base);
        Affine mul(const Curve& c, uint64_t k) const;
        Jacobian mul_jac(const Curve& c, uint64_t k) const;

    private:
        std::vector<std::array<Affine, 16>> windows_;  // 4-bit windows
    };

private:
    friend class MillerAcc;
    Jacobian jac(const Affine& P) const;
    void jac_dbl(Jacobian& V) const;
    void jac_add_mixed(Jacobian& V, const Affine& P) const;
    // Miller step helpers evaluating the line at psi(Q)
    void miller_loop(Fp2& f, const Affine& P, const Affine& Q) const;

    CurveProfile prof_;
    Mont64 fp_;
    Mont64 fr_;
    Affine g_;
    FixedBase g_table_;
};

}  // namespace lembill::group
