#include "lembill/ipe.hpp"

namespace lembill::ipe {

namespace {
constexpr uint8_t kLayoutVersion = 1;
}

uint64_t IpeCtx::sample_nonzero_scalar(Rng& rng) const {
    return 1 + rng.next_below(curve_->profile().r - 1);
}

std::pair<IpeParams, IpeMasterKey> IpeCtx::setup(unsigned n, Rng& rng) const {
    if (n < 1) throw Error("ipe::setup: dimension must be >= 1");
    const auto& fr = curve_->fr();
    const uint64_t r = curve_->profile().r;
    IpeMasterKey msk;
    msk.n = n;
    for (;;) {
        std::vector<uint64_t> B(n * n);
        for (auto& e : B) e = fr.to_mont(rng.next_below(r));
        // Gauss-Jordan over Z_r: reduce [B | I] and accumulate the determinant
        std::vector<uint64_t> M = B;
        std::vector<uint64_t> inv(n * n, 0);
        for (unsigned i = 0; i < n; ++i) inv[i * n + i] = fr.one();
        uint64_t det = fr.one();
        bool singular = false;
        for (unsigned col = 0; col < n && !singular; ++col) {
            unsigned piv = col;
            while (piv < n && M[piv * n + col] == 0) ++piv;
            if (piv == n) {
                singular = true;
                break;
            }
            if (piv != col) {
                for (unsigned j = 0; j < n; ++j) {
                    std::swap(M[piv * n + j], M[col * n + j]);
                    std::swap(inv[piv * n + j], inv[col * n + j]);
                }
                det = fr.neg(det);
            }
            uint64_t p = M[col * n + col];
            det = fr.mul(det, p);
            uint64_t pi = fr.inv(p);
            for (unsigned j = 0; j < n; ++j) {
                M[col * n + j] = fr.mul(M[col * n + j], pi);
                inv[col * n + j] = fr.mul(inv[col * n + j], pi);
            }
            for (unsigned row = 0; row < n; ++row) {
                if (row == col) continue;
                uint64_t f = M[row * n + col];
                if (f == 0) continue;
                for (unsigned j = 0; j < n; ++j) {
                    M[row * n + j] = fr.sub(M[row * n + j], fr.mul(f, M[col * n + j]));
                    inv[row * n + j] = fr.sub(inv[row * n + j], fr.mul(f, inv[col * n + j]));
                }
            }
        }
        if (singular) continue;
        msk.det = fr.from_mont(det);
        msk.B.resize(n * n);
        msk.Bstar.resize(n * n);
        for (unsigned i = 0; i < n; ++i)
            for (unsigned j = 0; j < n; ++j) {
                msk.B[i * n + j] = fr.from_mont(B[i * n + j]);
                // B* = det * (B^{-1})^T
                msk.Bstar[i * n + j] = fr.from_mont(fr.mul(det, inv[j * n + i]));
            }
        break;
    }
    IpeParams pp;
    pp.n = n;
    pp.base = curve_->pair(curve_->g(), curve_->g());
    return {pp, msk};
}

std::vector<uint64_t> IpeCtx::mat_vec(const std::vector<uint64_t>& m, unsigned n,
                                      const std::vector<uint64_t>& v, bool) const {
    // row vector times matrix: out_i = sum_j v_j * m[j][i]; one reduction
    // per output coordinate (n * r^2 stays far below 2^128)
    const uint64_t r = curve_->profile().r;
    std::vector<uint64_t> vm(n);
    for (unsigned j = 0; j < n; ++j) vm[j] = v[j] % r;
    std::vector<uint64_t> out(n);
    for (unsigned i = 0; i < n; ++i) {
        unsigned __int128 acc = 0;
        for (unsigned j = 0; j < n; ++j)
            acc += static_cast<unsigned __int128>(vm[j]) * (m[j * n + i] % r);
        out[i] = static_cast<uint64_t>(acc % r);
    }
    return out;
}

LeftCiphertext IpeCtx::left_encrypt(const IpeMasterKey& msk, uint64_t alpha,
                                    const std::vector<uint64_t>& x) const {
    if (x.size() != msk.n) throw Error("ipe::left_encrypt: dimension mismatch");
    if (alpha % curve_->profile().r == 0) throw Error("ipe::left_encrypt: alpha must be nonzero");
    const auto& fr = curve_->fr();
    auto xb = mat_vec(msk.B, msk.n, x, false);
    std::vector<group::Jacobian> js;
    js.reserve(msk.n + 1);
    js.push_back(curve_->mul_g_jac(fr.mulp(alpha, msk.det)));
    for (unsigned i = 0; i < msk.n; ++i) js.push_back(curve_->mul_g_jac(fr.mulp(alpha, xb[i])));
    auto pts = curve_->batch_to_affine(js);
    LeftCiphertext ct;
    ct.k1 = pts[0];
    ct.k2.assign(pts.begin() + 1, pts.end());
    return ct;
}

RightCiphertext IpeCtx::right_encrypt(const IpeMasterKey& msk, uint64_t beta,
                                      const std::vector<uint64_t>& y) const {
    if (y.size() != msk.n) throw Error("ipe::right_encrypt: dimension mismatch");
    if (beta % curve_->profile().r == 0) throw Error("ipe::right_encrypt: beta must be nonzero");
    const auto& fr = curve_->fr();
    auto yb = mat_vec(msk.Bstar, msk.n, y, false);
    std::vector<group::Jacobian> js;
    js.reserve(msk.n + 1);
    js.push_back(curve_->mul_g_jac(beta));
    for (unsigned i = 0; i < msk.n; ++i) js.push_back(curve_->mul_g_jac(fr.mulp(beta, yb[i])));
    auto pts = curve_->batch_to_affine(js);
    RightCiphertext ct;
    ct.c1 = pts[0];
    ct.c2.assign(pts.begin() + 1, pts.end());
    return ct;
}

bool IpeCtx::zero_test(const LeftCiphertext& ctx, const RightCiphertext& cty) const {
    if (ctx.k2.size() != cty.c2.size()) throw Error("ipe::zero_test: dimension mismatch");
    group::MillerAcc acc(*curve_);
    for (size_t i = 0; i < ctx.k2.size(); ++i) acc.accumulate(ctx.k2[i], cty.c2[i]);
    return acc.finalize().is_identity(*curve_);
}

namespace {

void put_point(std::vector<uint8_t>& out, const group::Curve& c, const group::Affine& p) {
    auto b = c.compress(p);
    out.insert(out.end(), b.begin(), b.end());
}

group::Affine get_point(const std::vector<uint8_t>& buf, size_t& off, const group::Curve& c) {
    if (off + group::Curve::kPointBytes > buf.size()) throw Error("ipe: truncated ciphertext");
    std::array<uint8_t, group::Curve::kPointBytes> b{};
    std::copy(buf.begin() + off, buf.begin() + off + b.size(), b.begin());
    off += b.size();
    return c.decompress(b);
}

}  // namespace

std::vector<uint8_t> IpeCtx::serialize_left(const LeftCiphertext& ct) const {
    std::vector<uint8_t> out{kLayoutVersion, static_cast<uint8_t>(ct.k2.size())};
    put_point(out, *curve_, ct.k1);
    for (const auto& p : ct.k2) put_point(out, *curve_, p);
    return out;
}

std::vector<uint8_t> IpeCtx::serialize_right(const RightCiphertext& ct) const {
    std::vector<uint8_t> out{kLayoutVersion, static_cast<uint8_t>(ct.c2.size())};
    put_point(out, *curve_, ct.c1);
    for (const auto& p : ct.c2) put_point(out, *curve_, p);
    return out;
}

LeftCiphertext IpeCtx::deserialize_left(const std::vector<uint8_t>& buf) const {
    if (buf.size() < 2 || buf[0] != kLayoutVersion) throw Error("ipe: bad layout version");
    size_t off = 2;
    LeftCiphertext ct;
    ct.k1 = get_point(buf, off, *curve_);
    for (unsigned i = 0; i < buf[1]; ++i) ct.k2.push_back(get_point(buf, off, *curve_));
    return ct;
}

RightCiphertext IpeCtx::deserialize_right(const std::vector<uint8_t>& buf) const {
    if (buf.size() < 2 || buf[0] != kLayoutVersion) throw Error("ipe: bad layout version");
    size_t off = 2;
    RightCiphertext ct;
    ct.c1 = get_point(buf, off, *curve_);
    for (unsigned i = 0; i < buf[1]; ++i) ct.c2.push_back(get_point(buf, off, *curve_));
    return ct;
}

}  // namespace lembill::ipe
