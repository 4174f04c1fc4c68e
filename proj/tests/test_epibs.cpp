#include <doctest.h>

#include <set>

#include "lembill/maskedbill.hpp"

using namespace lembill;
using field::Fe;
using field::FieldCtx;

namespace {

const FieldCtx& big() {
    static FieldCtx f(field::default_modulus());
    return f;
}

market::DeviationCosts costs_of(int64_t sp, int64_t sc, const market::Prices& p) {
    market::DeviationCosts c;
    c.share_p = sp;
    c.share_c = sc;
    c.dev_p = sp * (p.FiT - p.TP);
    c.dev_c = sc * (p.RP - p.TP);
    return c;
}

market::BillContext ctx_of(bool cp, bool cc) {
    market::BillContext c;
    c.C_p = cp;
    c.C_c = cc;
    c.s = cp || cc;
    return c;
}

}  // namespace

TEST_CASE("masking") {
    FieldCtx f(field::test_modulus());
    CHECK(epibs::mask(f, 5, 7) == 12);
    CHECK(epibs::mask(f, 5, 0) == 5);
    CHECK(epibs::mask(f, 100, 3) == 2);
}

TEST_CASE("one-time-pad bijection at small q") {
    FieldCtx f(field::test_modulus());
    std::set<mpz_class> seen;
    for (long sk = 0; sk < 101; ++sk) seen.insert(epibs::mask(f, 42, sk));
    CHECK(seen.size() == 101);
}

TEST_CASE("bill step formula") {
    market::Prices p;
    CHECK(epibs::bill_step(big(), 12, 0, 200, costs_of(0, 0, p), ctx_of(false, false)) == 2400);
    auto c = costs_of(1, 0, p);  // dev_p = -100
    CHECK(epibs::bill_step(big(), 12, 9, 200, c, ctx_of(true, false)) ==
          big().from_signed(2400 - 900));
}

TEST_CASE("period key formula") {
    market::Prices p;
    CHECK(epibs::period_key(big(), 7, 8, 200, costs_of(0, 0, p), ctx_of(false, false)) == 1400);
    CHECK(epibs::period_key(big(), 7, 8, 200, costs_of(1, 0, p), ctx_of(true, false)) ==
          big().from_signed(1400 - 800));
}

TEST_CASE("single-period pipeline decrypts to the clear bill") {
    market::Prices p;
    auto c = costs_of(1, 0, p);  // dev_p = -100
    auto ctx = ctx_of(true, false);
    Fe mc = epibs::mask(big(), 10, 7);   // m=10, sk=7
    Fe dc = epibs::mask(big(), 1, 8);    // d=1, sk_t=8
    Fe bc = epibs::bill_step(big(), mc, dc, 200, c, ctx);
    Fe dk = epibs::period_key(big(), 7, 8, 200, c, ctx);
    CHECK(epibs::decrypt(big(), bc, dk, {40}) == 10 * 200 + 1 * (-100));
    CHECK(epibs::decrypt(big(), bc, dk, {40}) == 1900);
}

TEST_CASE("bill minus key equals the clear formula on random inputs") {
    market::Prices p;
    Rng rng(3);
    for (int i = 0; i < 1000; ++i) {
        int64_t m = rng.next_in(0, 4095), d = rng.next_in(0, 1);
        Fe sk = big().sample_uniform(rng), sk_t = big().sample_uniform(rng);
        auto c = costs_of(rng.next_in(0, 50), rng.next_in(0, 50), p);
        int branch = rng.next_in(0, 2);
        auto ctx = ctx_of(branch == 1, branch == 2);
        Fe mc = epibs::mask(big(), big().from_signed(m), sk);
        Fe dc = epibs::mask(big(), big().from_signed(d), sk_t);
        Fe bc = epibs::bill_step(big(), mc, dc, p.TP, c, ctx);
        Fe dk = epibs::period_key(big(), sk, sk_t, p.TP, c, ctx);
        int64_t clear = m * p.TP + (ctx.C_p ? d * c.dev_p : 0) + (ctx.C_c ? (1 - d) * c.dev_c : 0);
        REQUIRE(epibs::decrypt(big(), bc, dk, {40}) == clear);
    }
}

TEST_CASE("aggregate over periods") {
    market::Prices p;
    auto quiet = [&](int64_t m, Fe sk, Fe sk_t) {
        Fe mc = epibs::mask(big(), big().from_signed(m), sk);
        Fe dc = epibs::mask(big(), 0, sk_t);
        return std::pair{epibs::bill_step(big(), mc, dc, 200, costs_of(0, 0, p), ctx_of(false, false)),
                         epibs::period_key(big(), sk, sk_t, 200, costs_of(0, 0, p), ctx_of(false, false))};
    };
    auto [b1, k1] = quiet(10, 3, 4);
    CHECK(epibs::decrypt(big(), b1, k1, {40}) == 2000);
    auto [b2, k2] = quiet(20, 5, 6);
    Fe blc = epibs::aggregate(big(), {b1, b2});
    Fe dk = epibs::aggregate(big(), {k1, k2});
    CHECK(epibs::decrypt(big(), blc, dk, {40}) == 6000);
}

TEST_CASE("supplier balance key") {
    market::Prices p;
    // nobody in a deviation branch -> zero key
    CHECK(epibs::supplier_key_term(big(), 8, costs_of(2, 0, p), ctx_of(false, false), p) == 0);

    // one producer, sk_t=8, share_p=2, FiT=100, C_p=1.
    // Magnitude 8*2*100 = 1600; the sign is positive in the decryption-exact
    // convention (masked SBal carries +dc*share_p*FiT, so the key removes
    // +sk_t*share_p*FiT).
    auto c = costs_of(2, 0, p);
    auto ctx = ctx_of(true, false);
    Fe dkj = epibs::supplier_key_term(big(), 8, c, ctx, p);
    CHECK(dkj == 1600);
    int64_t d = 1;
    Fe dc = epibs::mask(big(), big().from_signed(d), 8);
    Fe masked = epibs::sbal_step(big(), dc, c, ctx, p);
    CHECK(big().centered_lift(big().sub(masked, dkj), {40}) ==
          market::clear_sbal_term(d, c, ctx, p));
}

TEST_CASE("masked balance minus key equals clear balance for random users") {
    market::Prices p;
    Rng rng(4);
    for (int trial = 0; trial < 100; ++trial) {
        Fe masked = 0, key = 0;
        mpz_class clear = 0;
        for (int i = 0; i < 20; ++i) {
            int64_t d = rng.next_in(0, 1);
            Fe sk_t = big().sample_uniform(rng);
            auto c = costs_of(rng.next_in(0, 20), rng.next_in(0, 20), p);
            int branch = rng.next_in(0, 2);
            auto ctx = ctx_of(branch == 1, branch == 2);
            Fe dc = epibs::mask(big(), big().from_signed(d), sk_t);
            masked = big().add(masked, epibs::sbal_step(big(), dc, c, ctx, p));
            key = big().add(key, epibs::supplier_key_term(big(), sk_t, c, ctx, p));
            clear += market::clear_sbal_term(d, c, ctx, p);
        }
        REQUIRE(big().centered_lift(big().sub(masked, key), {50}) == clear);
    }
}

TEST_CASE("key generation freshness") {
    FieldCtx f(field::default_modulus());
    Rng rng(5);
    auto k1 = epibs::gen_keys(f, 0, 0, 48, rng);
    auto k2 = epibs::gen_keys(f, 0, 1, 48, rng);
    REQUIRE(k1.sk.size() == 48);
    REQUIRE(k1.sk_t.size() == 48);
    CHECK(k1.sk != k2.sk);
    CHECK(k1.sk_t != k2.sk_t);
}
