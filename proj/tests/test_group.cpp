#include <doctest.h>

#include "lembill/group.hpp"

using namespace lembill;
using group::Curve;

static void check_profile(const group::CurveProfile& prof) {
    Curve c(prof);
    const uint64_t r = prof.r;
    Rng rng(5);

    SUBCASE("generator and arithmetic") {
        CHECK(c.on_curve(c.g()));
        CHECK(c.scalar_mul(c.g(), r).inf);
        auto p = c.mul_g(123456 % r);
        CHECK(c.eq(p, c.scalar_mul(c.g(), 123456 % r)));
        CHECK(c.eq(c.add(p, c.neg(p)), group::Affine{}));
    }

    SUBCASE("pairing bilinearity and non-degeneracy") {
        auto e = c.pair(c.g(), c.g());
        CHECK_FALSE(e.is_identity(c));
        for (int i = 0; i < 8; ++i) {
            uint64_t a = 1 + rng.next_below(r - 1), b = 1 + rng.next_below(r - 1);
            auto lhs = c.pair(c.mul_g(a), c.mul_g(b));
            auto rhs = c.gt_pow(e, c.fr().mulp(a, b));
            CHECK(c.gt_eq(lhs, rhs));
        }
    }

    SUBCASE("hash to point lands in the subgroup") {
        auto h = c.hash_to_point("test/tag");
        CHECK(c.on_curve(h));
        CHECK(c.scalar_mul(h, r).inf);
        CHECK_FALSE(c.eq(h, c.hash_to_point("test/tag2")));
    }

    SUBCASE("compressed encoding round-trips") {
        auto p = c.mul_g(987 % r);
        CHECK(c.eq(c.decompress(c.compress(p)), p));
        CHECK(c.decompress(c.compress(group::Affine{})).inf);
    }
}

TEST_CASE("desk profile") { check_profile(group::desk_profile()); }
TEST_CASE("wide profile") { check_profile(group::wide_profile()); }
TEST_CASE("micro profile") { check_profile(group::micro_profile()); }

TEST_CASE("miller accumulator matches pairing products") {
    Curve c(group::desk_profile());
    auto p1 = c.mul_g(17), q1 = c.mul_g(29), p2 = c.mul_g(31), q2 = c.mul_g(41);
    group::MillerAcc acc(c);
    acc.accumulate(p1, q1);
    acc.accumulate(p2, q2);
    auto prod = c.gt_mul(c.pair(p1, q1), c.pair(p2, q2));
    CHECK(c.gt_eq(acc.finalize(), prod));
}
