#include "lembill/maskedbill.hpp"

namespace lembill::epibs {

using field::Fe;

KeySet gen_keys(const field::FieldCtx& f, uint32_t user_id, uint32_t billing_period,
                size_t n_k, Rng& rng) {
    KeySet ks;
    ks.user_id = user_id;
    ks.billing_period = billing_period;
    ks.sk.reserve(n_k);
    ks.sk_t.reserve(n_k);
    for (size_t k = 0; k < n_k; ++k) {
        ks.sk.push_back(f.sample_uniform(rng));
        ks.sk_t.push_back(f.sample_uniform(rng));
    }
    return ks;
}

Fe mask(const field::FieldCtx& f, const Fe& x, const Fe& key) { return f.add(x, key); }

Fe bill_step(const field::FieldCtx& f, const Fe& mc, const Fe& dc, int64_t TP,
             const market::DeviationCosts& costs, const market::BillContext& ctx) {
    Fe bc = f.mul(mc, f.from_signed(TP));
    if (ctx.C_p) bc = f.add(bc, f.mul(dc, f.from_signed(costs.dev_p)));
    if (ctx.C_c) {
        Fe one_minus_dc = f.sub(f.from_int(1), dc);
        bc = f.add(bc, f.mul(one_minus_dc, f.from_signed(costs.dev_c)));
    }
    return bc;
}

Fe period_key(const field::FieldCtx& f, const Fe& sk, const Fe& sk_t, int64_t TP,
              const market::DeviationCosts& costs, const market::BillContext& ctx) {
    Fe dk = f.mul(sk, f.from_signed(TP));
    if (ctx.C_p) dk = f.add(dk, f.mul(sk_t, f.from_signed(costs.dev_p)));
    if (ctx.C_c) dk = f.sub(dk, f.mul(sk_t, f.from_signed(costs.dev_c)));
    return dk;
}

Fe aggregate(const field::FieldCtx& f, const std::vector<Fe>& parts) {
    Fe acc = f.from_int(0);
    for (const auto& p : parts) acc = f.add(acc, p);
    return acc;
}

mpz_class decrypt(const field::FieldCtx& f, const Fe& blc, const Fe& dk,
                  field::SignedBound bound) {
    return f.centered_lift(f.sub(blc, dk), bound);
}

Fe sbal_step(const field::FieldCtx& f, const Fe& dc, const market::DeviationCosts& costs,
             const market::BillContext& ctx, const market::Prices& prices) {
    Fe t = f.from_int(0);
    if (ctx.C_p)
        t = f.add(t, f.mul(dc, f.from_signed(mpz_class(costs.share_p) * prices.FiT)));
    if (ctx.C_c) {
        Fe one_minus_dc = f.sub(f.from_int(1), dc);
        t = f.sub(t, f.mul(one_minus_dc, f.from_signed(mpz_class(costs.share_c) * prices.RP)));
    }
    return t;
}

Fe supplier_key_term(const field::FieldCtx& f, const Fe& sk_t,
                     const market::DeviationCosts& costs, const market::BillContext& ctx,
                     const market::Prices& prices) {
    Fe t = f.from_int(0);
    if (ctx.C_p)
        t = f.add(t, f.mul(sk_t, f.from_signed(mpz_class(costs.share_p) * prices.FiT)));
    if (ctx.C_c)
        t = f.add(t, f.mul(sk_t, f.from_signed(mpz_class(costs.share_c) * prices.RP)));
    return t;
}

}  // namespace lembill::epibs
