#include "lembill/group.hpp"

#include <openssl/sha.h>

#include <cstring>

namespace lembill::group {

Mont64::Mont64(uint64_t p) : p_(p) {
    if (p < 3 || (p & 1) == 0) throw Error("Mont64: modulus must be odd and > 2");
    // ninv = -p^{-1} mod 2^64 via Newton iteration
    uint64_t inv = p;
    for (int i = 0; i < 5; ++i) inv *= 2 - p * inv;
    ninv_ = ~inv + 1;
    uint64_t r = static_cast<uint64_t>((static_cast<unsigned __int128>(1) << 64) % p);
    r2_ = static_cast<uint64_t>(static_cast<unsigned __int128>(r) * r % p);
    one_ = r;
    bits_ = 64;
    while (bits_ > 1 && (p >> (bits_ - 1)) == 0) --bits_;
}

uint64_t Mont64::pow(uint64_t a, uint64_t e) const {
    uint64_t acc = one_;
    uint64_t base = a;
    while (e) {
        if (e & 1) acc = mul(acc, base);
        base = mul(base, base);
        e >>= 1;
    }
    return acc;
}

CurveProfile desk_profile() {
    return {8589935251ULL, 2147483813ULL, 3561120144ULL, 218257407ULL, "desk"};
}

CurveProfile wide_profile() {
    return {4611686018427420187ULL, 1152921504606855047ULL, 3501662810996902895ULL,
            3467470961206420805ULL, "wide"};
}

CurveProfile micro_profile() {
    // low-weight subgroup order keeps the Miller loop at 7 doublings
    return {523ULL, 131ULL, 397ULL, 160ULL, "micro"};
}

Curve::Curve(const CurveProfile& prof) : prof_(prof), fp_(prof.p), fr_(prof.r) {
    if (prof.p != 4 * prof.r - 1) throw Error("Curve: need p = 4r - 1");
    g_ = {fp_.to_mont(prof.gx), fp_.to_mont(prof.gy), false};
    if (!on_curve(g_)) throw Error("Curve: generator not on curve");
    if (!scalar_mul(g_, prof.r).inf) throw Error("Curve: generator order mismatch");
    g_table_ = FixedBase(*this, g_);
}

bool Curve::on_curve(const Affine& P) const {
    if (P.inf) return true;
    uint64_t x2 = fp_.sqr(P.x);
    uint64_t rhs = fp_.add(fp_.mul(x2, P.x), P.x);  // x^3 + x
    return fp_.sqr(P.y) == rhs;
}

bool Curve::eq(const Affine& P, const Affine& Q) const {
    if (P.inf || Q.inf) return P.inf == Q.inf;
    return P.x == Q.x && P.y == Q.y;
}

Affine Curve::neg(const Affine& P) const {
    if (P.inf) return P;
    return {P.x, fp_.neg(P.y), false};
}

Affine Curve::add(const Affine& P, const Affine& Q) const {
    if (P.inf) return Q;
    if (Q.inf) return P;
    uint64_t lam;
    if (P.x == Q.x) {
        if (P.y != Q.y || P.y == 0) return {};  // P + (-P)
        uint64_t x2 = fp_.sqr(P.x);
        uint64_t num = fp_.add(fp_.add(x2, x2), fp_.add(x2, fp_.one()));  // 3x^2 + 1
        lam = fp_.mul(num, fp_.inv(fp_.add(P.y, P.y)));
    } else {
        lam = fp_.mul(fp_.sub(Q.y, P.y), fp_.inv(fp_.sub(Q.x, P.x)));
    }
    uint64_t x3 = fp_.sub(fp_.sub(fp_.sqr(lam), P.x), Q.x);
    uint64_t y3 = fp_.sub(fp_.mul(lam, fp_.sub(P.x, x3)), P.y);
    return {x3, y3, false};
}

Jacobian Curve::jac(const Affine& P) const {
    if (P.inf) return {};
    return {P.x, P.y, fp_.one(), false};
}

void Curve::jac_dbl(Jacobian& V) const {
    if (V.inf) return;
    if (V.Y == 0) {
        V.inf = true;
        return;
    }
    uint64_t XX = fp_.sqr(V.X);
    uint64_t YY = fp_.sqr(V.Y);
    uint64_t ZZ = fp_.sqr(V.Z);
    uint64_t S = fp_.mul(V.X, YY);
    S = fp_.add(S, S);
    S = fp_.add(S, S);
    uint64_t M = fp_.add(fp_.add(XX, fp_.add(XX, XX)), fp_.sqr(ZZ));  // a = 1
    uint64_t Xn = fp_.sub(fp_.sqr(M), fp_.add(S, S));
    uint64_t YYYY = fp_.sqr(YY);
    uint64_t t = fp_.add(YYYY, YYYY);
    t = fp_.add(t, t);
    t = fp_.add(t, t);
    uint64_t Yn = fp_.sub(fp_.mul(M, fp_.sub(S, Xn)), t);
    uint64_t Zn = fp_.mul(V.Y, V.Z);
    Zn = fp_.add(Zn, Zn);
    V = {Xn, Yn, Zn, false};
}

void Curve::jac_add_mixed(Jacobian& V, const Affine& P) const {
    if (P.inf) return;
    if (V.inf) {
        V = jac(P);
        return;
    }
    uint64_t ZZ = fp_.sqr(V.Z);
    uint64_t U2 = fp_.mul(P.x, ZZ);
    uint64_t S2 = fp_.mul(P.y, fp_.mul(ZZ, V.Z));
    uint64_t H = fp_.sub(U2, V.X);
    uint64_t R = fp_.sub(S2, V.Y);
    if (H == 0) {
        if (R == 0)
            jac_dbl(V);
        else
            V.inf = true;
        return;
    }
    uint64_t HH = fp_.sqr(H);
    uint64_t HHH = fp_.mul(H, HH);
    uint64_t V2 = fp_.mul(V.X, HH);
    uint64_t Xn = fp_.sub(fp_.sub(fp_.sqr(R), HHH), fp_.add(V2, V2));
    uint64_t Yn = fp_.sub(fp_.mul(R, fp_.sub(V2, Xn)), fp_.mul(V.Y, HHH));
    uint64_t Zn = fp_.mul(V.Z, H);
    V = {Xn, Yn, Zn, false};
}

Affine Curve::to_affine(const Jacobian& J) const {
    if (J.inf) return {};
    uint64_t zi = fp_.inv(J.Z);
    uint64_t zi2 = fp_.sqr(zi);
    return {fp_.mul(J.X, zi2), fp_.mul(J.Y, fp_.mul(zi2, zi)), false};
}

Affine Curve::scalar_mul(const Affine& P, uint64_t k) const {
    if (P.inf || k == 0) return {};
    Jacobian V;
    int top = 63;
    while (top > 0 && (k >> top) == 0) --top;
    for (int i = top; i >= 0; --i) {
        jac_dbl(V);
        if ((k >> i) & 1) jac_add_mixed(V, P);
    }
    return to_affine(V);
}

Affine Curve::mul_g(uint64_t k) const { return g_table_.mul(*this, k % prof_.r); }

Jacobian Curve::mul_g_jac(uint64_t k) const { return g_table_.mul_jac(*this, k % prof_.r); }

std::vector<Affine> Curve::batch_to_affine(const std::vector<Jacobian>& js) const {
    std::vector<Affine> out(js.size());
    std::vector<size_t> idx;
    std::vector<uint64_t> pref;
    uint64_t acc = fp_.one();
    for (size_t i = 0; i < js.size(); ++i) {
        if (js[i].inf) continue;
        idx.push_back(i);
        pref.push_back(acc);
        acc = fp_.mul(acc, js[i].Z);
    }
    uint64_t inv_acc = idx.empty() ? fp_.one() : fp_.inv(acc);
    for (size_t t = idx.size(); t-- > 0;) {
        size_t i = idx[t];
        uint64_t zi = fp_.mul(inv_acc, pref[t]);
        inv_acc = fp_.mul(inv_acc, js[i].Z);
        uint64_t zi2 = fp_.sqr(zi);
        out[i] = {fp_.mul(js[i].X, zi2), fp_.mul(js[i].Y, fp_.mul(zi2, zi)), false};
    }
    return out;
}

Curve::FixedBase::FixedBase(const Curve& c, const Affine& base) {
    unsigned nwin = (c.fr_.bits() + 3) / 4;
    windows_.resize(nwin);
    Affine cur = base;
    for (unsigned w = 0; w < nwin; ++w) {
        windows_[w][0] = {};
        for (unsigned d = 1; d < 16; ++d) windows_[w][d] = c.add(windows_[w][d - 1], cur);
        cur = c.add(windows_[w][15], cur);  // 16 * cur
    }
}

Jacobian Curve::FixedBase::mul_jac(const Curve& c, uint64_t k) const {
    Jacobian V;
    for (size_t w = 0; w < windows_.size(); ++w) {
        unsigned d = (k >> (4 * w)) & 0xf;
        if (d) c.jac_add_mixed(V, windows_[w][d]);
    }
    return V;
}

Affine Curve::FixedBase::mul(const Curve& c, uint64_t k) const { return c.to_affine(mul_jac(c, k)); }

Affine Curve::hash_to_point(const std::string& tag) const {
    for (uint64_t ctr = 0;; ++ctr) {
        std::string msg = tag + ":" + std::to_string(ctr);
        uint8_t digest[SHA256_DIGEST_LENGTH];
        SHA256(reinterpret_cast<const uint8_t*>(msg.data()), msg.size(), digest);
        uint64_t xv = 0;
        for (int i = 0; i < 8; ++i) xv = (xv << 8) | digest[i];
        xv %= prof_.p;
        uint64_t x = fp_.to_mont(xv);
        uint64_t rhs = fp_.add(fp_.mul(fp_.sqr(x), x), x);
        if (rhs == 0) continue;
        uint64_t y = fp_.pow(rhs, (prof_.p + 1) / 4);  // p === 3 (mod 4)
        if (fp_.sqr(y) != rhs) continue;               // non-residue
        Affine P{x, y, false};
        Affine Q = scalar_mul(P, 4);  // clear the cofactor
        if (Q.inf) continue;
        if (!scalar_mul(Q, prof_.r).inf) throw Error("hash_to_point: order check failed");
        return Q;
    }
}

std::array<uint8_t, Curve::kPointBytes> Curve::compress(const Affine& P) const {
    std::array<uint8_t, kPointBytes> out{};
    if (P.inf) {
        out.fill(0xff);
        out[8] = 0;
        return out;
    }
    uint64_t x = fp_.from_mont(P.x);
    uint64_t y = fp_.from_mont(P.y);
    for (int i = 0; i < 8; ++i) out[i] = static_cast<uint8_t>(x >> (56 - 8 * i));
    out[8] = static_cast<uint8_t>(y & 1);
    return out;
}

Affine Curve::decompress(const std::array<uint8_t, kPointBytes>& buf) const {
    bool allff = true;
    for (int i = 0; i < 8; ++i)
        if (buf[i] != 0xff) allff = false;
    if (allff && buf[8] == 0) return {};
    uint64_t xv = 0;
    for (int i = 0; i < 8; ++i) xv = (xv << 8) | buf[i];
    if (xv >= prof_.p || buf[8] > 1) throw Error("decompress: malformed point");
    uint64_t x = fp_.to_mont(xv);
    uint64_t rhs = fp_.add(fp_.mul(fp_.sqr(x), x), x);
    uint64_t y = fp_.pow(rhs, (prof_.p + 1) / 4);
    if (fp_.sqr(y) != rhs) throw Error("decompress: x not on curve");
    if ((fp_.from_mont(y) & 1) != buf[8]) y = fp_.neg(y);
    Affine P{x, y, false};
    if (!on_curve(P)) throw Error("decompress: invalid point");
    return P;
}

Fp2 Curve::fp2_mul(const Fp2& x, const Fp2& y) const {
    uint64_t ac = fp_.mul(x.a, y.a);
    uint64_t bd = fp_.mul(x.b, y.b);
    uint64_t ad = fp_.mul(x.a, y.b);
    uint64_t bc = fp_.mul(x.b, y.a);
    return {fp_.sub(ac, bd), fp_.add(ad, bc)};
}

Fp2 Curve::fp2_sqr(const Fp2& x) const {
    uint64_t aa = fp_.sqr(x.a);
    uint64_t bb = fp_.sqr(x.b);
    uint64_t ab = fp_.mul(x.a, x.b);
    return {fp_.sub(aa, bb), fp_.add(ab, ab)};
}

Fp2 Curve::fp2_inv(const Fp2& x) const {
    uint64_t n = fp_.add(fp_.sqr(x.a), fp_.sqr(x.b));
    if (n == 0) throw Error("fp2_inv: zero");
    uint64_t ni = fp_.inv(n);
    return {fp_.mul(x.a, ni), fp_.mul(fp_.neg(x.b), ni)};
}

// Miller loop for the modified Tate pairing: lines through multiples of P
// are evaluated at psi(Q) = (-xq, i*yq).  Vertical lines and per-step F_p
// scaling factors are omitted -- they lie in F_p and die in the final
// exponentiation f^((p^2-1)/r) = f^(4(p-1)).
Fp2 Curve::miller(const Affine& P, const Affine& Q) const {
    if (P.inf || Q.inf) return fp2_one();
    const uint64_t xq = Q.x, yq = Q.y;
    Fp2 f = fp2_one();
    Jacobian V = jac(P);
    int top = static_cast<int>(fr_.bits()) - 2;
    for (int i = top; i >= 0; --i) {
        // doubling step with tangent line
        uint64_t XX = fp_.sqr(V.X);
        uint64_t YY = fp_.sqr(V.Y);
        uint64_t ZZ = fp_.sqr(V.Z);
        uint64_t M = fp_.add(fp_.add(XX, fp_.add(XX, XX)), fp_.sqr(ZZ));
        uint64_t S = fp_.mul(V.X, YY);
        S = fp_.add(S, S);
        S = fp_.add(S, S);
        uint64_t Xn = fp_.sub(fp_.sqr(M), fp_.add(S, S));
        uint64_t YYYY = fp_.sqr(YY);
        uint64_t t8 = fp_.add(YYYY, YYYY);
        t8 = fp_.add(t8, t8);
        t8 = fp_.add(t8, t8);
        uint64_t Yn = fp_.sub(fp_.mul(M, fp_.sub(S, Xn)), t8);
        uint64_t Zn = fp_.mul(V.Y, V.Z);
        Zn = fp_.add(Zn, Zn);
        Fp2 line;
        line.a = fp_.sub(fp_.mul(M, fp_.add(V.X, fp_.mul(ZZ, xq))), fp_.add(YY, YY));
        line.b = fp_.mul(fp_.mul(Zn, ZZ), yq);
        f = fp2_mul(fp2_sqr(f), line);
        V = {Xn, Yn, Zn, false};
        if ((prof_.r >> i) & 1) {
            // mixed addition step with chord line through P
            uint64_t zz = fp_.sqr(V.Z);
            uint64_t U2 = fp_.mul(P.x, zz);
            uint64_t S2 = fp_.mul(P.y, fp_.mul(zz, V.Z));
            uint64_t H = fp_.sub(U2, V.X);
            uint64_t R = fp_.sub(S2, V.Y);
            if (H == 0) {
                // vertical line x - xp: purely F_p at psi(Q), skip
                V.inf = true;
                continue;
            }
            uint64_t HH = fp_.sqr(H);
            uint64_t HHH = fp_.mul(H, HH);
            uint64_t V2 = fp_.mul(V.X, HH);
            uint64_t Xa = fp_.sub(fp_.sub(fp_.sqr(R), HHH), fp_.add(V2, V2));
            uint64_t Ya = fp_.sub(fp_.mul(R, fp_.sub(V2, Xa)), fp_.mul(V.Y, HHH));
            uint64_t Za = fp_.mul(V.Z, H);
            Fp2 line2;
            line2.a = fp_.sub(fp_.mul(R, fp_.add(xq, P.x)), fp_.mul(Za, P.y));
            line2.b = fp_.mul(Za, yq);
            f = fp2_mul(f, line2);
            V = {Xa, Ya, Za, false};
        }
    }
    return f;
}

Gt Curve::final_exp(const Fp2& f) const {
    if (f.a == 0 && f.b == 0) throw Error("final_exp: zero");
    // f^(4(p-1)); f^(p-1) = conj(f) * f^{-1}
    Fp2 g = fp2_mul(fp2_conj(f), fp2_inv(f));
    g = fp2_sqr(fp2_sqr(g));
    return Gt{g};
}

Gt Curve::pair(const Affine& P, const Affine& Q) const { return final_exp(miller(P, Q)); }

Gt Curve::gt_identity() const { return Gt{fp2_one()}; }

Gt Curve::gt_mul(const Gt& a, const Gt& b) const { return Gt{fp2_mul(a.v, b.v)}; }

Gt Curve::gt_pow(const Gt& a, uint64_t e) const {
    Gt acc = gt_identity();
    Gt base = a;
    e %= prof_.r;
    while (e) {
        if (e & 1) acc = gt_mul(acc, base);
        base = Gt{fp2_sqr(base.v)};
        e >>= 1;
    }
    return acc;
}

bool Gt::is_identity(const Curve& c) const {
    return v.a == c.fp().one() && v.b == 0;
}

MillerAcc::MillerAcc(const Curve& c) : c_(c), f_(c.fp2_one()) {}

void MillerAcc::accumulate(const Affine& P, const Affine& Q) {
    f_ = c_.fp2_mul(f_, c_.miller(P, Q));
}

Gt MillerAcc::finalize() { return c_.final_exp(f_); }

}  // namespace lembill::group
