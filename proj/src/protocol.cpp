#include "lembill/protocol.hpp"

#include <openssl/sha.h>

#include <algorithm>
#include <chrono>
#include <fstream>
#include <set>

#include "lembill/compare_encoding.hpp"

namespace lembill::protocol {

using field::Fe;

const char* party_name(PartyKind k) {
    switch (k) {
        case PartyKind::User: return "user";
        case PartyKind::SM: return "sm";
        case PartyKind::LEMO: return "lemo";
        case PartyKind::Supplier: return "supplier";
        case PartyKind::CS: return "cs";
        case PartyKind::KA: return "ka";
        case PartyKind::DSO: return "dso";
    }
    return "?";
}

const char* payload_name(PayloadKind k) {
    switch (k) {
        case PayloadKind::ClearMeter: return "clear-meter";
        case PayloadKind::ClearBid: return "clear-bid";
        case PayloadKind::ClearRole: return "clear-role";
        case PayloadKind::ClearDeviation: return "clear-deviation";
        case PayloadKind::MaskedReading: return "masked-reading";
        case PayloadKind::MaskedRole: return "masked-role";
        case PayloadKind::MeterCommitment: return "meter-commitment";
        case PayloadKind::BidCommitment: return "bid-commitment";
        case PayloadKind::FhipeLeft: return "fhipe-left";
        case PayloadKind::FhipeRight: return "fhipe-right";
        case PayloadKind::ShareV: return "share-v";
        case PayloadKind::ShareD: return "share-d";
        case PayloadKind::SFlagShare: return "s-flag-share";
        case PayloadKind::ZonePublication: return "zone-publication";
        case PayloadKind::MarketPublication: return "market-publication";
        case PayloadKind::CFlags: return "c-flags";
        case PayloadKind::KeyMaterial: return "key-material";
        case PayloadKind::IpeParamsMsg: return "ipe-params";
        case PayloadKind::BillKey: return "bill-key";
        case PayloadKind::BillTotal: return "bill-total";
        case PayloadKind::DeviationTotal: return "deviation-total";
        case PayloadKind::OpeningRandomness: return "opening-randomness";
        case PayloadKind::SupplierBalanceKey: return "supplier-balance-key";
        case PayloadKind::ScapReport: return "scap-report";
        case PayloadKind::LemBillReport: return "lem-bill-report";
    }
    return "?";
}

namespace {

std::string sha256_hex(const std::string& s) {
    uint8_t d[SHA256_DIGEST_LENGTH];
    SHA256(reinterpret_cast<const uint8_t*>(s.data()), s.size(), d);
    static const char* hex = "0123456789abcdef";
    std::string out;
    out.reserve(64);
    for (auto b : d) {
        out.push_back(hex[b >> 4]);
        out.push_back(hex[b & 0xf]);
    }
    return out;
}

}  // namespace

void Transcript::log(PartyId from, PartyId to, const std::string& step, PayloadKind kind,
                     uint64_t bits, const std::string& payload_desc) {
    TranscriptEntry e;
    e.from = from;
    e.to = to;
    e.step = step;
    e.kind = kind;
    e.bits = bits;
    e.hash = sha256_hex(std::string(party_name(from.kind)) + std::to_string(from.index) + "|" +
                        party_name(to.kind) + std::to_string(to.index) + "|" + step + "|" +
                        payload_name(kind) + "|" + payload_desc);
    entries.push_back(std::move(e));
}

void Transcript::save(const std::string& path) const {
    std::ofstream out(path);
    if (!out) throw Error("transcript: cannot write " + path);
    for (const auto& e : entries)
        out << party_name(e.from.kind) << e.from.index << " -> " << party_name(e.to.kind)
            << e.to.index << " step=" << e.step << " kind=" << payload_name(e.kind)
            << " bits=" << e.bits << " sha256=" << e.hash << "\n";
    for (const auto& f : fault_log) out << "# fault: " << f << "\n";
}

namespace {

const field::FieldCtx& run_field(bool small) {
    static const field::FieldCtx big(field::default_modulus());
    static const field::FieldCtx tiny([] {
        mpz_class q;
        mpz_class base = mpz_class(1) << 61;
        mpz_nextprime(q.get_mpz_t(), base.get_mpz_t());
        return q;
    }());
    return small ? tiny : big;
}

struct UserState {
    scenario::UserSpec spec;
    epibs::KeySet keys;
    std::optional<ipe::IpeMasterKey> msk;
    std::vector<uint64_t> r_m, r_b;  // commitment randomness per period
    std::vector<pedersen::Commitment> cm, cb;
    mpc::Share v_sum{};  // running sum of shared deviations
    bool v_sum_init = false;
    Fe blc, sm_dk;  // supplier-side bill accumulator / KA-side key accumulator
    std::vector<market::PeriodView> history;
    mpz_class true_v_sum = 0;
};

}  // namespace

RunResult run_billing_period(const scenario::Scenario& sc, const ApproachConfig& cfg,
                             const std::vector<FaultSpec>& faults) {
    auto t_start = std::chrono::steady_clock::now();
    scenario::validate(sc);
    if (cfg.approach < 1 || cfg.approach > 3) throw Error("run: approach must be 1..3");
    if (cfg.n_v != sc.n_v) throw Error("run: N_v mismatch between config and scenario");

    const field::FieldCtx& f = run_field(cfg.small_field);
    // shares only ever carry v/d/bit values, so the engine runs over the
    // smaller prime regardless of the EPIBS modulus
    const field::FieldCtx& fm = run_field(true);
    const field::SignedBound vb{sc.n_v};
    const unsigned span =
        64 - static_cast<unsigned>(__builtin_clzll(std::max<uint64_t>(
                 {sc.n_users, sc.n_periods, 2})));
    const field::SignedBound vsumb{sc.n_v + span + 1};
    const field::SignedBound moneyb{std::min(80u, f.bits() - 3)};
    const market::Prices& prices = sc.prices;

    group::Curve curve(group::desk_profile());
    pedersen::CommitCtx ped(curve);
    // comparisons only need the subgroup order to exceed the encoding inner
    // products (<= dim), so the pairing-heavy FHIPE runs on the micro curve
    group::Curve ipe_curve(group::micro_profile());
    ipe::IpeCtx ipectx(ipe_curve);
    const unsigned dim = encoding::dimension(sc.n_v);

    Rng root(cfg.seed);
    Rng ka_rng = root.derive(1);
    Rng user_rng = root.derive(2);
    Rng engine_rng = root.derive(3);

    std::unique_ptr<mpc::Engine> eng;
    if (cfg.replicated)
        eng = std::make_unique<mpc::ReplicatedEngine>(fm, engine_rng);
    else
        eng = std::make_unique<mpc::IdealEngine>(fm, engine_rng);

    RunResult res;
    Transcript& tr = res.transcript;
    auto& ops = res.ops;

    const PartyId lemo{PartyKind::LEMO, 0}, ka{PartyKind::KA, 0}, dso{PartyKind::DSO, 0};
    const PartyId cs0{PartyKind::CS, 0};
    auto user_id = [](uint32_t i) { return PartyId{PartyKind::User, i}; };
    auto sm_id = [](uint32_t i) { return PartyId{PartyKind::SM, i}; };
    auto sup_id = [](uint32_t j) { return PartyId{PartyKind::Supplier, j}; };

    // ---- prerequisites: KA key distribution ----
    std::vector<UserState> users(sc.n_users);
    std::set<std::pair<uint32_t, uint32_t>> registered;
    for (uint32_t i = 0; i < sc.n_users; ++i) {
        auto& u = users[i];
        u.spec = sc.users[i];
        if (!registered.insert({i, 0u}).second)
            throw Error("key_setup: duplicate registration");
        u.keys = epibs::gen_keys(f, i, 0, sc.n_periods, ka_rng);
        uint64_t key_bits = 2ull * sc.n_periods * SizeTable{}.K;
        std::string kdesc = "keys:" + std::to_string(i);
        if (cfg.approach == 1) {
            auto [pp, msk] = ipectx.setup(dim, ka_rng);
            u.msk = std::move(msk);
            key_bits += SizeTable{}.msk_bits(sc.n_v);
            tr.log(ka, sup_id(u.spec.supplier), "prereq", PayloadKind::IpeParamsMsg,
                   SizeTable{}.X, "pp:" + std::to_string(i));
        }
        tr.log(ka, user_id(i), "prereq", PayloadKind::KeyMaterial, key_bits, kdesc);
        tr.log(ka, sm_id(i), "prereq", PayloadKind::KeyMaterial, key_bits, kdesc);
        u.blc = f.from_int(0);
        u.sm_dk = f.from_int(0);
    }

    std::map<uint32_t, std::vector<Fe>> sbal_fe, dkj_fe;
    for (uint32_t j = 0; j < sc.n_suppliers; ++j) {
        sbal_fe[j].assign(sc.n_periods, f.from_int(0));
        dkj_fe[j].assign(sc.n_periods, f.from_int(0));
    }

    auto fault_for = [&](FaultSpec::Target t, uint32_t party, uint32_t period) -> const FaultSpec* {
        for (const auto& fs : faults)
            if (fs.target == t && fs.party == party &&
                (t == FaultSpec::Target::SupplierScap || fs.period == period))
                return &fs;
        return nullptr;
    };
    auto fault_cancel = [&](uint32_t party, uint32_t period, int64_t& delta) {
        for (const auto& fs : faults) {
            if (fs.target != FaultSpec::Target::UserShareVCancel || fs.party != party) continue;
            if (fs.period == period) { delta = fs.delta; return true; }
            if (fs.period + 1 == period) { delta = -fs.delta; return true; }
        }
        return false;
    };

    const SizeTable sz;

    // ---- trading periods: Steps 1 and 2 ----
    for (uint32_t k = 0; k < sc.n_periods; ++k) {
        const std::string step1 = "1/tp" + std::to_string(k);
        const std::string step2 = "2/tp" + std::to_string(k);

        // Step 1: sharing and encrypted artifacts
        std::vector<mpc::SharedTuple> tuples(sc.n_users);
        std::vector<Fe> mc(sc.n_users), dc(sc.n_users);
        std::vector<ipe::RightCiphertext> bc_vl, bc_vg;  // per user, flattened arrays
        std::vector<ipe::LeftCiphertext> mcs;
        std::vector<unsigned> ct_base(sc.n_users, 0);
        for (uint32_t i = 0; i < sc.n_users; ++i) {
            auto& u = users[i];
            const int64_t m = sc.meters[k][i], b = sc.bids[k][i];
            int64_t v = m - b;
            int64_t lie = 0;
            if (auto* fs = fault_for(FaultSpec::Target::UserShareV, i, k)) lie = fs->delta;
            int64_t cdelta = 0;
            if (fault_cancel(i, k, cdelta)) lie += cdelta;
            if (lie != 0)
                tr.fault_log.push_back("user " + std::to_string(i) + " misreports v by " +
                                       std::to_string(lie) + " at tp " + std::to_string(k));

            tuples[i].user_id = i;
            tuples[i].supplier_id = u.spec.supplier;
            tuples[i].zone_id = u.spec.zone;
            tuples[i].v = eng->input(fm.from_signed(v + lie));
            tuples[i].d = eng->input(fm.from_int(u.spec.d));
            u.true_v_sum += v + lie;
            tr.log(user_id(i), cs0, step1, PayloadKind::ShareV, 3 * sz.SH,
                   "v-share:" + std::to_string(i) + ":" + std::to_string(k));
            tr.log(user_id(i), cs0, step1, PayloadKind::ShareD, 3 * sz.SH,
                   "d-share:" + std::to_string(i) + ":" + std::to_string(k));
            if (u.v_sum_init)
                u.v_sum = eng->add(u.v_sum, tuples[i].v);
            else {
                u.v_sum = tuples[i].v;
                u.v_sum_init = true;
            }

            // SM side: masked reading + meter commitment
            Fe mval = f.from_signed(m);
            mc[i] = epibs::mask(f, mval, u.keys.sk[k]);
            ops["sm"].mask_ops++;
            if (auto* fs = fault_for(FaultSpec::Target::SmMaskedReading, i, k)) {
                mc[i] = f.add(mc[i], f.from_signed(fs->delta));
                tr.fault_log.push_back("sm " + std::to_string(i) + " misreports mc at tp " +
                                       std::to_string(k));
            }
            uint64_t r_m = ped.sample_r(user_rng);
            u.r_m.push_back(r_m);
            u.cm.push_back(ped.commit(m, r_m));
            ops["sm"].commit++;
            // user side: role mask, bid commitment, forwarded randomness
            dc[i] = epibs::mask(f, f.from_int(u.spec.d), u.keys.sk_t[k]);
            ops["user"].mask_ops++;
            uint64_t r_b = ped.sample_r(user_rng);
            u.r_b.push_back(r_b);
            u.cb.push_back(ped.commit(-b, r_b));
            ops["user"].commit++;
            tr.log(user_id(i), sm_id(i), step1, PayloadKind::OpeningRandomness, sz.R,
                   "rb:" + std::to_string(i) + ":" + std::to_string(k));

            uint64_t sm_bits = sz.K + sz.COMMIT;
            uint64_t lemo_bits = sz.K + sz.COMMIT;
            if (cfg.approach == 1) {
                ct_base[i] = static_cast<unsigned>(mcs.size());
                auto ym = encoding::encode_y(static_cast<uint64_t>(m), sc.n_v);
                auto xb = encoding::encode_x(static_cast<uint64_t>(b), sc.n_v);
                for (unsigned jj = 0; jj < sc.n_v; ++jj) {
                    mcs.push_back(ipectx.left_encrypt(*u.msk, ipectx.sample_nonzero_scalar(user_rng),
                                                      ym.vecs[jj]));
                    bc_vl.push_back(ipectx.right_encrypt(
                        *u.msk, ipectx.sample_nonzero_scalar(user_rng), xb.less[jj]));
                    bc_vg.push_back(ipectx.right_encrypt(
                        *u.msk, ipectx.sample_nonzero_scalar(user_rng), xb.greater[jj]));
                }
                ops["sm"].left_enc += sc.n_v;
                ops["user"].right_enc += 2ull * sc.n_v;
                sm_bits += sc.n_v * sz.CT_L;
                lemo_bits += 2ull * sc.n_v * sz.CT_R;
            }
            tr.log(sm_id(i), sup_id(u.spec.supplier), step1, PayloadKind::MaskedReading, sm_bits,
                   "sm-tuple:" + std::to_string(i) + ":" + std::to_string(k) + ":" +
                       f.centered(mc[i]).get_str());
            tr.log(user_id(i), lemo, step1, PayloadKind::MaskedRole, lemo_bits,
                   "bid-artifacts:" + std::to_string(i) + ":" + std::to_string(k));
            tr.log(lemo, sup_id(u.spec.supplier), step1, PayloadKind::MaskedRole, lemo_bits,
                   "bid-artifacts:" + std::to_string(i) + ":" + std::to_string(k));
        }

        // Step 2: CS zone aggregation and publication
        std::vector<market::ZoneAggregate> zones(sc.n_zones);
        for (uint32_t z = 0; z < sc.n_zones; ++z) {
            std::vector<mpc::SharedTuple> zt;
            for (auto& t : tuples)
                if (t.zone_id == z) zt.push_back(t);
            auto zs = mpc::aggregate_zone(*eng, zt);
            zones[z].zone_id = z;
            zones[z].t_z = field::to_int64(fm.centered_lift(eng->reconstruct(zs.t_z), vsumb));
            zones[z].np_z = field::to_int64(eng->reconstruct(zs.np_z));
            zones[z].nc_z = field::to_int64(eng->reconstruct(zs.nc_z));
        }
        auto summary = market::market_summary(zones);
        std::string pubdesc = "zn+T:" + std::to_string(k) + ":" + std::to_string(summary.T);
        uint64_t pub_bits = sc.n_zones * 3 * sz.X + 2 * sz.X;
        for (uint32_t j = 0; j < sc.n_suppliers; ++j)
            tr.log(cs0, sup_id(j), step2, PayloadKind::ZonePublication, pub_bits, pubdesc);
        for (uint32_t i = 0; i < sc.n_users; ++i)
            tr.log(cs0, user_id(i), step2, PayloadKind::ZonePublication, pub_bits, pubdesc);
        tr.log(cs0, ka, step2, PayloadKind::ZonePublication, pub_bits, pubdesc);

        std::vector<market::DeviationCosts> costs(sc.n_zones);
        for (uint32_t z = 0; z < sc.n_zones; ++z)
            costs[z] = market::deviation_costs(zones[z], summary, prices);

        // s identification + supplier-side bill accumulation + KA keys
        for (uint32_t i = 0; i < sc.n_users; ++i) {
            auto& u = users[i];
            const auto& zone = zones[u.spec.zone];
            const int64_t m = sc.meters[k][i], b = sc.bids[k][i];
            bool s = false;
            if (cfg.approach == 1) {
                // Algorithm 2 at the supplier, early exit on first hit
                int cmpres = 0;
                for (unsigned jj = 0; jj < sc.n_v && cmpres == 0; ++jj) {
                    ops["supplier"].zero_tests++;
                    if (ipectx.zero_test(mcs[ct_base[i] + jj], bc_vl[ct_base[i] + jj])) {
                        cmpres = +1;  // b < m, v > 0
                        break;
                    }
                    ops["supplier"].zero_tests++;
                    if (ipectx.zero_test(mcs[ct_base[i] + jj], bc_vg[ct_base[i] + jj])) {
                        cmpres = -1;  // b > m, v < 0
                        break;
                    }
                }
                if (cmpres > 0) s = summary.T > 0 && zone.t_z > 0;
                if (cmpres < 0) s = summary.T < 0 && zone.t_z < 0;
            } else if (cfg.approach == 2) {
                auto s_sh = mpc::identify_s_cs(*eng, tuples[i].v, summary.T, zone.t_z, vb);
                tr.log(cs0, sup_id(u.spec.supplier), step2, PayloadKind::SFlagShare, 3 * sz.SH,
                       "s-share:" + std::to_string(i) + ":" + std::to_string(k));
                s = eng->reconstruct(s_sh) == 1;
            } else {
                int64_t v = m - b;
                tr.log(user_id(i), sup_id(u.spec.supplier), step2, PayloadKind::ClearDeviation,
                       sz.X, "v:" + std::to_string(i) + ":" + std::to_string(k) + ":" +
                                 std::to_string(v));
                s = market::s_rule(summary.T, zone.t_z, v);
            }
            auto ctx = market::bill_context(summary.T, s);
            // Algorithm 4 at the supplier (masked domain)
            u.blc = f.add(u.blc, epibs::bill_step(f, mc[i], dc[i], prices.TP,
                                                  costs[u.spec.zone], ctx));
            sbal_fe[u.spec.supplier][k] = f.add(
                sbal_fe[u.spec.supplier][k],
                epibs::sbal_step(f, dc[i], costs[u.spec.zone], ctx, prices));
            tr.log(sup_id(u.spec.supplier), ka, step2, PayloadKind::CFlags, 2 * sz.CN,
                   "cflags:" + std::to_string(i) + ":" + std::to_string(k) + ":" +
                       std::to_string(ctx.C_p) + std::to_string(ctx.C_c));
            // KA: per-user decryption key and supplier balance key
            u.sm_dk = f.add(u.sm_dk, epibs::period_key(f, u.keys.sk[k], u.keys.sk_t[k],
                                                       prices.TP, costs[u.spec.zone], ctx));
            dkj_fe[u.spec.supplier][k] = f.add(
                dkj_fe[u.spec.supplier][k],
                epibs::supplier_key_term(f, u.keys.sk_t[k], costs[u.spec.zone], ctx, prices));

            market::PeriodView pv;
            pv.m = m;
            pv.b = b;
            pv.d = u.spec.d;
            pv.zone = zone;
            pv.summary = summary;
            pv.prices = prices;
            u.history.push_back(pv);
        }

        // drop per-period shares, keep only the running deviation sums
        std::vector<mpc::Share*> keep;
        for (auto& u : users)
            if (u.v_sum_init) keep.push_back(&u.v_sum);
        eng->compact(std::move(keep));
    }

    // ---- Step 3: bill decryption and user acceptance ----
    res.users.resize(sc.n_users);
    for (uint32_t i = 0; i < sc.n_users; ++i) {
        auto& u = users[i];
        auto& ur = res.users[i];
        ur.id = i;
        ur.supplier = u.spec.supplier;
        ur.zone = u.spec.zone;
        ur.d = u.spec.d;
        tr.log(ka, sup_id(u.spec.supplier), "3", PayloadKind::BillKey, sz.K,
               "dk:" + std::to_string(i));
        ur.BL = epibs::decrypt(f, u.blc, u.sm_dk, moneyb);
        ops["supplier"].decrypts++;
        tr.log(sup_id(u.spec.supplier), user_id(i), "3", PayloadKind::BillTotal, sz.X,
               "bl:" + std::to_string(i) + ":" + ur.BL.get_str());
        auto oracle = market::user_clear_bill(u.history);
        ur.oracle_BL = oracle.BL;
        ur.BL_LEM = oracle.BL_LEM;
        ur.accepted = (ur.BL == oracle.BL);
    }

    // ---- Step 4: deviation verification ----
    for (uint32_t i = 0; i < sc.n_users; ++i) {
        auto& u = users[i];
        mpz_class V = mpc::aggregate_user_deviation(*eng, {u.v_sum}, vsumb);
        tr.log(cs0, sup_id(u.spec.supplier), "4", PayloadKind::DeviationTotal, sz.X,
               "V:" + std::to_string(i) + ":" + V.get_str());
        uint64_t R = 0;
        for (uint32_t k = 0; k < sc.n_periods; ++k)
            R = (R + u.r_m[k] + u.r_b[k]) % curve.profile().r;
        tr.log(sm_id(i), sup_id(u.spec.supplier), "4", PayloadKind::OpeningRandomness, sz.R,
               "R:" + std::to_string(i));
        pedersen::Commitment prod = ped.identity();
        for (uint32_t k = 0; k < sc.n_periods; ++k) {
            prod = ped.combine(prod, ped.combine(u.cm[k], u.cb[k]));
            ops["supplier"].homo_add += 2;
        }
        ops["supplier"].open++;
        res.users[i].step4_ok = ped.open(prod, field::to_int64(V), R);
    }

    // ---- Step 5: settlement and DSO audit ----
    std::map<uint32_t, std::vector<market::UserSettleRecord>> by_supplier;
    for (uint32_t i = 0; i < sc.n_users; ++i) {
        market::UserSettleRecord rec;
        rec.user_id = i;
        rec.supplier_id = users[i].spec.supplier;
        rec.d = users[i].spec.d;
        rec.BL = res.users[i].BL;
        rec.BL_LEM = res.users[i].BL_LEM;
        by_supplier[rec.supplier_id].push_back(rec);
    }
    std::vector<market::UserSettleRecord> all_reports;
    std::map<uint32_t, mpz_class> reported_scaps;
    for (uint32_t j = 0; j < sc.n_suppliers; ++j) {
        auto& sr = res.suppliers[j];
        sr.id = j;
        sr.sbal.resize(sc.n_periods);
        for (uint32_t k = 0; k < sc.n_periods; ++k) {
            tr.log(ka, sup_id(j), "5", PayloadKind::SupplierBalanceKey, sz.K,
                   "dkj:" + std::to_string(j) + ":" + std::to_string(k));
            sr.sbal[k] = f.centered_lift(f.sub(sbal_fe[j][k], dkj_fe[j][k]), moneyb);
        }
        sr.scap = market::settle_supplier(by_supplier[j], sr.sbal);
        sr.scap_reported = sr.scap;
        if (auto* fs = fault_for(FaultSpec::Target::SupplierScap, j, 0)) {
            sr.scap_reported += fs->delta;
            tr.fault_log.push_back("supplier " + std::to_string(j) + " perturbs SCap by " +
                                   std::to_string(fs->delta));
        }
        reported_scaps[j] = sr.scap_reported;
        res.scap_sum += sr.scap_reported;
        tr.log(sup_id(j), dso, "5", PayloadKind::ScapReport, sz.X,
               "scap:" + std::to_string(j) + ":" + sr.scap_reported.get_str());
    }
    for (uint32_t i = 0; i < sc.n_users; ++i) {
        all_reports.push_back({i, users[i].spec.supplier, users[i].spec.d, res.users[i].BL,
                               res.users[i].BL_LEM});
        tr.log(user_id(i), dso, "5", PayloadKind::LemBillReport, sz.X,
               "bllem:" + std::to_string(i) + ":" + res.users[i].BL_LEM.get_str());
    }
    res.audit = market::dso_audit(all_reports, reported_scaps);

    res.all_accepted = res.all_step4_ok = true;
    for (const auto& ur : res.users) {
        res.all_accepted = res.all_accepted && ur.accepted;
        res.all_step4_ok = res.all_step4_ok && ur.step4_ok;
    }
    res.all_audit_ok = true;
    for (const auto& [j, v] : res.audit) res.all_audit_ok = res.all_audit_ok && v.ok;
    res.mpc_stats = eng->stats();
    res.seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t_start).count();
    return res;
}

std::vector<std::string> info_flow_violations(const Transcript& t, int approach) {
    std::vector<std::string> out;
    for (const auto& e : t.entries) {
        auto bad = [&](const std::string& why) {
            out.push_back(std::string(party_name(e.from.kind)) + std::to_string(e.from.index) +
                          " -> " + party_name(e.to.kind) + std::to_string(e.to.index) + " [" +
                          payload_name(e.kind) + "]: " + why);
        };
        const bool to_supplier = e.to.kind == PartyKind::Supplier;
        const bool to_cs = e.to.kind == PartyKind::CS;
        const bool to_ka = e.to.kind == PartyKind::KA;
        switch (e.kind) {
            case PayloadKind::ClearMeter:
            case PayloadKind::ClearBid:
            case PayloadKind::ClearRole:
                if (to_supplier) bad("cleartext meter/bid/role reaches a supplier");
                if (to_cs) bad("cleartext meter/bid/role reaches a CS");
                break;
            case PayloadKind::ClearDeviation:
                if (to_supplier && approach != 3)
                    bad("cleartext deviation reaches a supplier outside approach 3");
                if (to_cs) bad("cleartext deviation reaches a CS");
                break;
            case PayloadKind::ShareV:
            case PayloadKind::ShareD:
                break;  // shares may go to CS
            case PayloadKind::BillTotal:
                if (to_ka) bad("a bill reaches the KA");
                if (to_cs) bad("a bill reaches a CS");
                break;
            case PayloadKind::LemBillReport:
                if (to_ka) bad("a bill reaches the KA");
                break;
            default:
                if (to_cs && e.kind != PayloadKind::ShareV && e.kind != PayloadKind::ShareD)
                    bad("CS received a non-share payload");
                break;
        }
    }
    return out;
}

}  // namespace lembill::protocol
