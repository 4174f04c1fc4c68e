#include "lembill/field.hpp"

namespace lembill::field {

FieldCtx::FieldCtx(const mpz_class& q) : q_(q) {
    if (q_ < 2 || mpz_probab_prime_p(q_.get_mpz_t(), 30) == 0)
        throw Error("FieldCtx: modulus must be prime");
    bits_ = static_cast<unsigned>(mpz_sizeinbase(q_.get_mpz_t(), 2));
}

Fe FieldCtx::from_int(long v) const {
    mpz_class r(v);
    mpz_mod(r.get_mpz_t(), r.get_mpz_t(), q_.get_mpz_t());
    return r;
}

Fe FieldCtx::from_signed(const mpz_class& v) const {
    mpz_class r;
    mpz_mod(r.get_mpz_t(), v.get_mpz_t(), q_.get_mpz_t());
    return r;
}

Fe FieldCtx::add(const Fe& a, const Fe& b) const {
    mpz_class r = a + b;
    if (r >= q_) r -= q_;
    return r;
}

Fe FieldCtx::sub(const Fe& a, const Fe& b) const {
    mpz_class r = a - b;
    if (r < 0) r += q_;
    return r;
}

Fe FieldCtx::mul(const Fe& a, const Fe& b) const {
    mpz_class r = a * b;
    mpz_mod(r.get_mpz_t(), r.get_mpz_t(), q_.get_mpz_t());
    return r;
}

Fe FieldCtx::neg(const Fe& a) const {
    if (a == 0) return a;
    return q_ - a;
}

Fe FieldCtx::inv(const Fe& a) const {
    if (a == 0) throw Error("FieldCtx::inv: zero");
    mpz_class r;
    mpz_invert(r.get_mpz_t(), a.get_mpz_t(), q_.get_mpz_t());
    return r;
}

Fe FieldCtx::pow(const Fe& a, const mpz_class& e) const {
    mpz_class r;
    mpz_powm(r.get_mpz_t(), a.get_mpz_t(), e.get_mpz_t(), q_.get_mpz_t());
    return r;
}

bool FieldCtx::is_qr(const Fe& a) const {
    if (a == 0) return true;
    return mpz_legendre(a.get_mpz_t(), q_.get_mpz_t()) == 1;
}

Fe FieldCtx::sqrt(const Fe& a) const {
    if (a == 0) return a;
    if (mpz_legendre(a.get_mpz_t(), q_.get_mpz_t()) != 1)
        throw Error("FieldCtx::sqrt: non-residue");
    if (mpz_tstbit(q_.get_mpz_t(), 0) && mpz_tstbit(q_.get_mpz_t(), 1)) {
        // q === 3 (mod 4)
        return pow(a, (q_ + 1) / 4);
    }
    // Tonelli-Shanks
    mpz_class s = q_ - 1;
    unsigned long e = mpz_scan1(s.get_mpz_t(), 0);
    mpz_fdiv_q_2exp(s.get_mpz_t(), s.get_mpz_t(), e);
    mpz_class n(2);
    while (mpz_legendre(n.get_mpz_t(), q_.get_mpz_t()) != -1) ++n;
    mpz_class x = pow(a, (s + 1) / 2);
    mpz_class b = pow(a, s);
    mpz_class g = pow(n, s);
    unsigned long r = e;
    for (;;) {
        mpz_class t = b;
        unsigned long m = 0;
        while (t != 1 && m < r) {
            t = mul(t, t);
            ++m;
        }
        if (m == 0) return x;
        mpz_class gs = g;
        for (unsigned long i = 0; i + 1 < r - m; ++i) gs = mul(gs, gs);
        g = mul(gs, gs);
        x = mul(x, gs);
        b = mul(b, g);
        r = m;
    }
}

mpz_class FieldCtx::centered(const Fe& x) const {
    if (2 * x > q_) return x - q_;
    return x;
}

mpz_class FieldCtx::centered_lift(const Fe& x, SignedBound bound) const {
    mpz_class y = centered(x);
    mpz_class lim(1);
    lim <<= bound.L;
    if (abs(y) >= lim) throw Error("centered_lift: value outside signed bound");
    return y;
}

bool FieldCtx::bound_fits(SignedBound bound) const {
    mpz_class lim(1);
    lim <<= (bound.L + 1);
    return lim < q_;
}

Fe FieldCtx::sample_uniform(Rng& rng) const {
    if (bits_ <= 64) {
        // same mask-and-reject stream as the general path, minus the limb plumbing
        const uint64_t qw = mpz_get_ui(q_.get_mpz_t());
        const uint64_t mask = bits_ >= 64 ? ~0ULL : ((1ULL << bits_) - 1);
        for (;;) {
            uint64_t r = rng.next_u64() & mask;
            if (r < qw) return Fe(static_cast<unsigned long>(r));
        }
    }
    const unsigned words = (bits_ + 63) / 64;
    const unsigned top_bits = bits_ - 64 * (words - 1);
    const uint64_t top_mask = (top_bits >= 64) ? ~0ULL : ((1ULL << top_bits) - 1);
    mpz_class r;
    for (;;) {
        r = 0;
        for (unsigned w = 0; w < words; ++w) {
            uint64_t chunk = rng.next_u64();
            if (w == words - 1) chunk &= top_mask;
            mpz_class c(static_cast<unsigned long>(chunk >> 32));
            c <<= 32;
            c |= static_cast<unsigned long>(chunk & 0xffffffffULL);
            c <<= 64 * w;
            r |= c;
        }
        if (r < q_) return r;
    }
}

const mpz_class& default_modulus() {
    static const mpz_class q = []() {
        mpz_class v(1);
        v <<= 128;
        v += 51;
        return v;
    }();
    return q;
}

int64_t to_int64(const mpz_class& v) {
    if (!v.fits_slong_p()) throw Error("to_int64: out of range");
    return static_cast<int64_t>(v.get_si());
}

}  // namespace lembill::field
