#include "lembill/market.hpp"

namespace lembill::market {

void validate(const Prices& p) {
    if (!(p.FiT <= p.TP && p.TP <= p.RP)) throw Error("prices: need FiT <= TP <= RP");
    if (p.FiT < 0) throw Error("prices: negative FiT");
}

MarketSummary market_summary(const std::vector<ZoneAggregate>& zones) {
    MarketSummary s;
    for (const auto& z : zones) s.T += z.t_z;
    if (s.T == 0) return s;
    mpz_class denom = 0;
    for (const auto& z : zones)
        if ((s.T > 0 && z.t_z > 0) || (s.T < 0 && z.t_z < 0)) denom += z.t_z;
    if (denom == 0) return s;  // unreachable when T != 0, kept as a guard
    s.W = mpq_class(mpz_class(s.T), denom);
    s.W.canonicalize();
    return s;
}

int64_t round_half_even(const mpq_class& q) {
    mpz_class fl;
    mpz_fdiv_q(fl.get_mpz_t(), q.get_num().get_mpz_t(), q.get_den().get_mpz_t());
    mpq_class frac = q - mpq_class(fl);
    mpz_class result;
    if (frac < mpq_class(1, 2))
        result = fl;
    else if (frac > mpq_class(1, 2))
        result = fl + 1;
    else
        result = mpz_even_p(fl.get_mpz_t()) ? fl : fl + 1;
    if (!result.fits_slong_p()) throw Error("round_half_even: out of range");
    return result.get_si();
}

DeviationCosts deviation_costs(const ZoneAggregate& z, const MarketSummary& s,
                               const Prices& p) {
    DeviationCosts c;
    if (s.W == 0) return c;
    mpq_class mass = mpq_class(mpz_class(z.t_z)) * s.W;
    if (z.np_z > 0) {
        c.share_p = round_half_even(mass / mpq_class(mpz_class(z.np_z)));
        c.dev_p = c.share_p * (p.FiT - p.TP);
    } else if (mass != 0) {
        c.warn_p = true;
    }
    if (z.nc_z > 0) {
        c.share_c = round_half_even(mass / mpq_class(mpz_class(z.nc_z)));
        c.dev_c = c.share_c * (p.RP - p.TP);
    } else if (mass != 0) {
        c.warn_c = true;
    }
    return c;
}

bool s_rule(int64_t T, int64_t t_z, int64_t v) {
    return (T > 0 && t_z > 0 && v > 0) || (T < 0 && t_z < 0 && v < 0);
}

BillContext bill_context(int64_t T, bool s) {
    BillContext c;
    c.s = s;
    c.C_p = (T > 0) && s;
    c.C_c = (T < 0) && s;
    return c;
}

ClearBill user_clear_bill(const std::vector<PeriodView>& history) {
    ClearBill out;
    for (const auto& pv : history) {
        const int64_t v = pv.m - pv.b;
        const bool s = s_rule(pv.summary.T, pv.zone.t_z, v);
        const BillContext ctx = bill_context(pv.summary.T, s);
        const DeviationCosts costs = deviation_costs(pv.zone, pv.summary, pv.prices);
        out.BL += pv.m * pv.prices.TP;
        out.BL_LEM += pv.m * pv.prices.TP;
        if (ctx.C_p && pv.d == 1) {
            out.BL_LEM -= pv.prices.TP * costs.share_p;
            out.BL -= pv.prices.TP * costs.share_p;
            out.BL += pv.prices.FiT * costs.share_p;
        }
        if (ctx.C_c && pv.d == 0) {
            out.BL_LEM -= pv.prices.TP * costs.share_c;
            out.BL -= pv.prices.TP * costs.share_c;
            out.BL += pv.prices.RP * costs.share_c;
        }
    }
    return out;
}

mpz_class clear_sbal_term(int64_t d, const DeviationCosts& costs, const BillContext& ctx,
                          const Prices& prices) {
    mpz_class t = 0;
    if (ctx.C_p && d == 1) t += mpz_class(costs.share_p) * prices.FiT;
    if (ctx.C_c && d == 0) t -= mpz_class(costs.share_c) * prices.RP;
    return t;
}

mpz_class settle_supplier(const std::vector<UserSettleRecord>& users,
                          const std::vector<mpz_class>& sbal_per_period) {
    mpz_class scap = 0;
    for (const auto& u : users) scap -= (1 - 2 * u.d) * u.BL;
    for (const auto& s : sbal_per_period) scap -= s;
    return scap;
}

std::map<uint32_t, AuditVerdict> dso_audit(
    const std::vector<UserSettleRecord>& user_reports,
    const std::map<uint32_t, mpz_class>& supplier_scaps) {
    std::map<uint32_t, mpz_class> expected;
    std::map<uint32_t, size_t> counts;
    for (const auto& u : user_reports) {
        expected[u.supplier_id] -= (1 - 2 * u.d) * u.BL_LEM;
        ++counts[u.supplier_id];
    }
    std::map<uint32_t, AuditVerdict> out;
    for (const auto& [sid, scap] : supplier_scaps) {
        AuditVerdict v;
        v.reported = scap;
        if (!counts.count(sid)) {
            v.inconclusive = true;
        } else {
            v.expected = expected[sid];
            v.ok = (v.expected == scap);
        }
        out[sid] = v;
    }
    return out;
}

}  // namespace lembill::market
