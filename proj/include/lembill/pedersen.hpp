#pragma once
#include "lembill/group.hpp"

namespace lembill::pedersen {

struct Commitment {
    group::Affine point;
};

// Pedersen commitments c = m*G + r*H over the order-r subgroup; H is derived
// by hashing to the group so no party knows log_G(H).
class CommitCtx {
public:
    explicit CommitCtx(const group::Curve& curve);

    const group::Curve& curve() const { return *curve_; }
    const group::Affine& h() const { return h_; }

    uint64_t sample_r(Rng& rng) const;        // uniform scalar in [0, r)
    uint64_t scalar_of(int64_t m) const;      // signed message -> canonical scalar

    Commitment commit(int64_t m, uint64_t r) const;
    bool open(const Commitment& c, int64_t m, uint64_t r) const;
    Commitment combine(const Commitment& a, const Commitment& b) const;
    Commitment identity() const { return {{}}; }
    bool eq(const Commitment& a, const Commitment& b) const;

    std::array<uint8_t, group::Curve::kPointBytes> serialize(const Commitment& c) const;
    Commitment deserialize(const std::array<uint8_t, group::Curve::kPointBytes>& buf) const;

private:
    const group::Curve* curve_;
    group::Affine h_;
    group::Curve::FixedBase h_table_;
};

}  // namespace lembill::pedersen
