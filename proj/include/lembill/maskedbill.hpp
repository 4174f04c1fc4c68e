#pragma once
#include "lembill/field.hpp"
#include "lembill/market.hpp"

namespace lembill::epibs {

// One-time masking keys for one user and one billing period of N_k trading
// periods.  sk masks meter readings, sk_t masks the participation type.
struct KeySet {
    uint32_t user_id = 0;
    uint32_t billing_period = 0;
    std::vector<field::Fe> sk, sk_t;
};

KeySet gen_keys(const field::FieldCtx& f, uint32_t user_id, uint32_t billing_period,
                size_t n_k, Rng& rng);

// mc = m + sk ; dc = d + sk_t
field::Fe mask(const field::FieldCtx& f, const field::Fe& x, const field::Fe& key);

// bc = mc*TP + C_p(dc*dev_p) + C_c((1-dc)*dev_c)
field::Fe bill_step(const field::FieldCtx& f, const field::Fe& mc, const field::Fe& dc,
                    int64_t TP, const market::DeviationCosts& costs,
                    const market::BillContext& ctx);

// dk = sk*TP + C_p(sk_t*dev_p) - C_c(sk_t*dev_c)
field::Fe period_key(const field::FieldCtx& f, const field::Fe& sk, const field::Fe& sk_t,
                     int64_t TP, const market::DeviationCosts& costs,
                     const market::BillContext& ctx);

field::Fe aggregate(const field::FieldCtx& f, const std::vector<field::Fe>& parts);

// BL = centered(BLc - DK); throws if outside the signed bound
mpz_class decrypt(const field::FieldCtx& f, const field::Fe& blc, const field::Fe& dk,
                  field::SignedBound bound);

// masked supplier balance contribution accumulated during Alg. 4:
//   +C_p * dc * share_p * FiT  -  C_c * (1-dc) * share_c * RP
field::Fe sbal_step(const field::FieldCtx& f, const field::Fe& dc,
                    const market::DeviationCosts& costs, const market::BillContext& ctx,
                    const market::Prices& prices);

// matching key term so that masked SBal minus the summed key terms equals the
// clear balance:  C_p * sk_t * share_p * FiT  +  C_c * sk_t * share_c * RP
field::Fe supplier_key_term(const field::FieldCtx& f, const field::Fe& sk_t,
                            const market::DeviationCosts& costs,
                            const market::BillContext& ctx, const market::Prices& prices);

}  // namespace lembill::epibs
