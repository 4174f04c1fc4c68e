#include "lembill/pedersen.hpp"

namespace lembill::pedersen {

CommitCtx::CommitCtx(const group::Curve& curve)
    : curve_(&curve),
      h_(curve.hash_to_point("lembill/pedersen/h/v1")),
      h_table_(curve, h_) {}

uint64_t CommitCtx::sample_r(Rng& rng) const {
    return rng.next_below(curve_->profile().r);
}

uint64_t CommitCtx::scalar_of(int64_t m) const {
    uint64_t r = curve_->profile().r;
    if (m >= 0) return static_cast<uint64_t>(m) % r;
    uint64_t a = static_cast<uint64_t>(-(m + 1)) + 1;  // |m| without overflow
    a %= r;
    return a ? r - a : 0;
}

Commitment CommitCtx::commit(int64_t m, uint64_t r) const {
    group::Affine mg = curve_->mul_g(scalar_of(m));
    group::Affine rh = h_table_.mul(*curve_, r % curve_->profile().r);
    return {curve_->add(mg, rh)};
}

bool CommitCtx::open(const Commitment& c, int64_t m, uint64_t r) const {
    return curve_->eq(c.point, commit(m, r).point);
}

Commitment CommitCtx::combine(const Commitment& a, const Commitment& b) const {
    return {curve_->add(a.point, b.point)};
}

bool CommitCtx::eq(const Commitment& a, const Commitment& b) const {
    return curve_->eq(a.point, b.point);
}

std::array<uint8_t, group::Curve::kPointBytes> CommitCtx::serialize(const Commitment& c) const {
    return curve_->compress(c.point);
}

Commitment CommitCtx::deserialize(
    const std::array<uint8_t, group::Curve::kPointBytes>& buf) const {
    return {curve_->decompress(buf)};
}

}  // namespace lembill::pedersen
