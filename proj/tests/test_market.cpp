#include <doctest.h>

#include "lembill/market.hpp"

using namespace lembill;
using namespace lembill::market;

namespace {

ZoneAggregate zone(int64_t t, int64_t np, int64_t nc) {
    ZoneAggregate z;
    z.t_z = t;
    z.np_z = np;
    z.nc_z = nc;
    return z;
}

}  // namespace

TEST_CASE("market summary and zonal weight") {
    auto s = market_summary({zone(4, 1, 1), zone(-1, 1, 1)});
    CHECK(s.T == 3);
    CHECK(s.W == mpq_class(3, 4));

    s = market_summary({zone(2, 1, 1), zone(-2, 1, 1)});
    CHECK(s.T == 0);
    CHECK(s.W == 0);

    s = market_summary({zone(4, 1, 1)});
    CHECK(s.T == 4);
    CHECK(s.W == 1);
}

TEST_CASE("eligible zones absorb exactly T") {
    Rng rng(3);
    for (int trial = 0; trial < 200; ++trial) {
        std::vector<ZoneAggregate> zones;
        for (int z = 0; z < 4; ++z) zones.push_back(zone(rng.next_in(-500, 500), 2, 2));
        auto s = market_summary(zones);
        if (s.W == 0) continue;
        mpq_class mass = 0;
        for (const auto& z : zones)
            if ((s.T > 0 && z.t_z > 0) || (s.T < 0 && z.t_z < 0)) mass += mpq_class(z.t_z) * s.W;
        CHECK(mass == s.T);
    }
}

TEST_CASE("round half to even") {
    CHECK(round_half_even(mpq_class(1, 2)) == 0);
    CHECK(round_half_even(mpq_class(3, 2)) == 2);
    CHECK(round_half_even(mpq_class(5, 2)) == 2);
    CHECK(round_half_even(mpq_class(-1, 2)) == 0);
    CHECK(round_half_even(mpq_class(-3, 2)) == -2);
    CHECK(round_half_even(mpq_class(3, 4)) == 1);
    CHECK(round_half_even(7) == 7);
}

TEST_CASE("deviation costs") {
    Prices p;  // TP=200, FiT=100, RP=300
    MarketSummary s;
    s.T = 4;
    s.W = 1;
    auto c = deviation_costs(zone(4, 2, 3), s, p);
    CHECK(c.share_p == 2);
    CHECK(c.dev_p == -200);  // 2 * (FiT - TP)

    s.W = 0;
    c = deviation_costs(zone(4, 2, 3), s, p);
    CHECK(c.dev_p == 0);
    CHECK(c.dev_c == 0);

    s.T = 3;
    s.W = mpq_class(3, 4);
    c = deviation_costs(zone(3, 1, 3), s, p);
    CHECK(c.share_c == 1);  // 3*(3/4)/3 = 0.75 -> 1 Wh
    CHECK(c.dev_c == 100);  // 1 * (RP - TP)
}

TEST_CASE("empty charged class drops the cost with a warning") {
    Prices p;
    MarketSummary s;
    s.T = 4;
    s.W = 1;
    auto c = deviation_costs(zone(4, 0, 3), s, p);
    CHECK(c.dev_p == 0);
    CHECK(c.warn_p);
}

TEST_CASE("s rule and bill context") {
    CHECK(s_rule(4, 2, 1));
    CHECK_FALSE(s_rule(4, 2, -1));
    CHECK_FALSE(s_rule(0, 2, 1));
    CHECK(s_rule(-4, -2, -1));
    CHECK_FALSE(s_rule(4, -2, 1));

    auto ctx = bill_context(4, true);
    CHECK(ctx.C_p);
    CHECK_FALSE(ctx.C_c);
    ctx = bill_context(-4, true);
    CHECK(ctx.C_c);
    ctx = bill_context(4, false);
    CHECK_FALSE(ctx.C_p);
    CHECK_FALSE(ctx.C_c);
    CHECK_FALSE(bill_context(0, true).C_p);
}

namespace {

PeriodView quiet_period(int64_t m, int64_t d) {
    PeriodView pv;
    pv.m = m;
    pv.b = m;
    pv.d = d;
    pv.zone = zone(0, 1, 1);
    pv.summary.T = 0;
    pv.summary.W = 0;
    return pv;
}

}  // namespace

TEST_CASE("clear bill oracle") {
    // no deviations: BL = BL_LEM = sum m * TP
    auto bill = user_clear_bill({quiet_period(10, 0), quiet_period(10, 0)});
    CHECK(bill.BL == 4000);
    CHECK(bill.BL_LEM == 4000);

    // one producer-deviation period: share_p = 2 Wh
    PeriodView pv;
    pv.m = 10;
    pv.b = 8;  // v = +2, sign-matching
    pv.d = 1;
    pv.zone = zone(4, 2, 2);
    pv.summary.T = 4;
    pv.summary.W = 1;
    auto dev = user_clear_bill({pv});
    // BL_LEM = 10*200 - 200*2; BL = BL_LEM + 100*2
    CHECK(dev.BL_LEM == 1600);
    CHECK(dev.BL == 1800);
}

TEST_CASE("supplier settlement") {
    UserSettleRecord consumer;
    consumer.d = 0;
    consumer.BL = 2000;
    CHECK(settle_supplier({consumer}, {0}) == -2000);

    UserSettleRecord producer;
    producer.d = 1;
    producer.BL = 500;
    CHECK(settle_supplier({producer}, {0}) == 500);
    CHECK(settle_supplier({consumer, producer}, {100, -40}) == -1560);
}

TEST_CASE("dso audit") {
    UserSettleRecord c;
    c.user_id = 0;
    c.supplier_id = 0;
    c.d = 0;
    c.BL = 2000;
    c.BL_LEM = 2000;
    UserSettleRecord p;
    p.user_id = 1;
    p.supplier_id = 1;
    p.d = 1;
    p.BL = 500;
    p.BL_LEM = 500;

    std::map<uint32_t, mpz_class> scaps{{0, -2000}, {1, 500}};
    auto v = dso_audit({c, p}, scaps);
    CHECK(v.at(0).ok);
    CHECK(v.at(1).ok);

    scaps[1] += 1;  // tampered supplier named, others unaffected
    v = dso_audit({c, p}, scaps);
    CHECK(v.at(0).ok);
    CHECK_FALSE(v.at(1).ok);
    CHECK(v.at(1).reported == 501);
    CHECK(v.at(1).expected == 500);

    // supplier with a report but no user data -> inconclusive
    std::map<uint32_t, mpz_class> extra{{0, -2000}, {7, 3}};
    auto v2 = dso_audit({c}, extra);
    CHECK(v2.at(7).inconclusive);
}
