#pragma once
#include <gmpxx.h>

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "lembill/common.hpp"

namespace lembill::market {

struct Prices {
    int64_t TP = 200, FiT = 100, RP = 300;  // milli-currency per Wh
};
void validate(const Prices& p);  // FiT <= TP <= RP

struct ZoneAggregate {
    uint32_t zone_id = 0;
    int64_t t_z = 0;   // Wh, signed
    int64_t np_z = 0;  // producers in zone
    int64_t nc_z = 0;  // consumers in zone
};

struct MarketSummary {
    int64_t T = 0;
    mpq_class W = 0;  // zonal deviation weight; 0 when T=0 or no eligible zone
};

MarketSummary market_summary(const std::vector<ZoneAggregate>& zones);

int64_t round_half_even(const mpq_class& q);

struct DeviationCosts {
    int64_t share_p = 0, share_c = 0;  // Wh per user of the class
    int64_t dev_p = 0, dev_c = 0;      // milli-currency, signed
    bool warn_p = false, warn_c = false;  // class empty while cost was due
};

DeviationCosts deviation_costs(const ZoneAggregate& z, const MarketSummary& s,
                               const Prices& p);

// s = 1 iff user's deviation sign matches both the zonal and global signs
bool s_rule(int64_t T, int64_t t_z, int64_t v);

struct BillContext {
    bool C_p = false, C_c = false, s = false;
};
BillContext bill_context(int64_t T, bool s);

// ---- Algorithm 5: user-side clear bill oracle ----

struct PeriodView {
    int64_t m = 0, b = 0;  // Wh
    int64_t d = 0;         // 1 producer, 0 consumer
    ZoneAggregate zone;
    MarketSummary summary;
    Prices prices;
};

struct ClearBill {
    mpz_class BL = 0;      // role-relative amount
    mpz_class BL_LEM = 0;  // LEM-only portion
};

ClearBill user_clear_bill(const std::vector<PeriodView>& history);

// clear supplier balance contribution for one user-period
// (positive FiT term: the supplier resells the extra injection; negative RP
// term: the supplier buys the extra consumption)
mpz_class clear_sbal_term(int64_t d, const DeviationCosts& costs, const BillContext& ctx,
                          const Prices& prices);

// ---- Step 5: settlement and DSO audit ----

struct UserSettleRecord {
    uint32_t user_id = 0, supplier_id = 0;
    int64_t d = 0;
    mpz_class BL = 0, BL_LEM = 0;
};

// SCap_j = -sum_i (1-2d_i) BL_i - sum_k SBal_{j,k}
mpz_class settle_supplier(const std::vector<UserSettleRecord>& users,
                          const std::vector<mpz_class>& sbal_per_period);

struct AuditVerdict {
    bool ok = false;
    bool inconclusive = false;
    mpz_class expected = 0, reported = 0;
};

// DSO recomputes SCap_j from user-reported signed BL_LEM values
std::map<uint32_t, AuditVerdict> dso_audit(
    const std::vector<UserSettleRecord>& user_reports,
    const std::map<uint32_t, mpz_class>& supplier_scaps);

}  // namespace lembill::market
