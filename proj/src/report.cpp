#include "lembill/report.hpp"

#include <fstream>

#include <json.hpp>

namespace lembill::report {

using protocol::SizeTable;

Traffic expected_traffic(const scenario::Scenario& sc, const protocol::ApproachConfig& cfg) {
    const SizeTable sz;
    const uint64_t N = sc.n_users, K = sc.n_periods, Z = sc.n_zones, J = sc.n_suppliers;
    const uint64_t pub = (3 * Z + 2) * sz.X;
    uint64_t key_bits = 2 * K * sz.K;
    if (cfg.approach == 1) key_bits += sz.msk_bits(sc.n_v);

    Traffic t;
    // prerequisites
    t["ka>user"] = N * key_bits;
    t["ka>sm"] = N * key_bits;
    if (cfg.approach == 1) t["ka>supplier"] = N * sz.X;
    // Step 1
    t["user>cs"] = N * K * 6 * sz.SH;
    t["user>sm"] = N * K * sz.R;
    uint64_t sm_tuple = sz.K + sz.COMMIT;
    uint64_t lemo_tuple = sz.K + sz.COMMIT;
    if (cfg.approach == 1) {
        sm_tuple += sc.n_v * sz.CT_L;
        lemo_tuple += 2ull * sc.n_v * sz.CT_R;
    }
    t["sm>supplier"] = N * K * sm_tuple;
    t["user>lemo"] = N * K * lemo_tuple;
    t["lemo>supplier"] = N * K * lemo_tuple;
    // Step 2
    t["cs>supplier"] = K * J * pub;
    t["cs>user"] = K * N * pub;
    t["cs>ka"] = K * pub;
    if (cfg.approach == 2) t["cs>supplier"] += N * K * 3 * sz.SH;
    if (cfg.approach == 3) t["user>supplier"] = N * K * sz.X;
    t["supplier>ka"] = N * K * 2 * sz.CN;
    // Step 3
    t["ka>supplier"] += N * sz.K;
    t["supplier>user"] = N * sz.X;
    // Step 4
    t["cs>supplier"] += N * sz.X;
    t["sm>supplier"] += N * sz.R;
    // Step 5
    t["ka>supplier"] += J * K * sz.K;
    t["supplier>dso"] = J * sz.X;
    t["user>dso"] = N * sz.X;
    return t;
}

Traffic observed_traffic(const protocol::Transcript& tr) {
    Traffic t;
    for (const auto& e : tr.entries)
        t[std::string(protocol::party_name(e.from.kind)) + ">" +
          protocol::party_name(e.to.kind)] += e.bits;
    return t;
}

uint64_t total_bits(const Traffic& t) {
    uint64_t s = 0;
    for (const auto& [k, v] : t) s += v;
    return s;
}

ExpectedOps expected_ops(const scenario::Scenario& sc, const protocol::ApproachConfig& cfg) {
    ExpectedOps e;
    const uint64_t N = sc.n_users, K = sc.n_periods;
    if (cfg.approach == 1) e.zero_tests_max = N * K * 2 * sc.n_v;
    e.commits = 2 * N * K;
    e.opens = N;
    e.mask_ops = 2 * N * K;
    e.decrypts = N;
    return e;
}

void write_report_csv(const std::string& path, const std::vector<BenchRow>& rows) {
    std::ofstream out(path);
    if (!out) throw Error("report: cannot write " + path);
    out << "users,approach,engine,seconds,mpc_bytes,transcript_bits,ok\n";
    for (const auto& r : rows)
        out << r.n_users << "," << r.approach << "," << r.engine << "," << r.seconds << ","
            << r.mpc_bytes << "," << r.transcript_bits << "," << (r.ok ? 1 : 0) << "\n";
}

LinearFit fit_runtime(const std::vector<BenchRow>& rows) {
    LinearFit fit;
    const size_t n = rows.size();
    if (n < 2) return fit;
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (const auto& r : rows) {
        double x = r.n_users, y = r.seconds;
        sx += x;
        sy += y;
        sxx += x * x;
        sxy += x * y;
    }
    double den = n * sxx - sx * sx;
    if (den == 0) return fit;
    fit.b = (n * sxy - sx * sy) / den;
    fit.a = (sy - fit.b * sx) / n;
    double ss_res = 0, ss_tot = 0, ybar = sy / n;
    for (const auto& r : rows) {
        double x = r.n_users, y = r.seconds;
        double yhat = fit.a + fit.b * x;
        ss_res += (y - yhat) * (y - yhat);
        ss_tot += (y - ybar) * (y - ybar);
    }
    fit.r2 = ss_tot > 0 ? 1.0 - ss_res / ss_tot : 1.0;
    return fit;
}

void write_ledger_json(const std::string& path, const scenario::Scenario& sc,
                       const protocol::ApproachConfig& cfg, const protocol::RunResult& r) {
    nlohmann::json j;
    j["schema_version"] = 1;
    j["config"] = {{"approach", cfg.approach},
                   {"engine", cfg.replicated ? "replicated" : "ideal"},
                   {"seed", cfg.seed},
                   {"n_v", cfg.n_v}};
    j["scenario"] = {{"seed", sc.seed},
                     {"n_users", sc.n_users},
                     {"n_periods", sc.n_periods},
                     {"n_suppliers", sc.n_suppliers},
                     {"n_zones", sc.n_zones}};
    j["verdicts"] = {{"all_accepted", r.all_accepted},
                     {"all_step4_ok", r.all_step4_ok},
                     {"all_audit_ok", r.all_audit_ok},
                     {"scap_sum", r.scap_sum.get_str()}};
    for (const auto& [sid, v] : r.audit)
        j["audit"][std::to_string(sid)] = {{"ok", v.ok},
                                           {"expected", v.expected.get_str()},
                                           {"reported", v.reported.get_str()}};
    for (const auto& ur : r.users)
        if (!ur.accepted || !ur.step4_ok)
            j["flagged_users"].push_back({{"id", ur.id},
                                          {"accepted", ur.accepted},
                                          {"step4_ok", ur.step4_ok},
                                          {"bill", ur.BL.get_str()},
                                          {"oracle", ur.oracle_BL.get_str()}});
    j["mpc"] = {{"total_bytes", r.mpc_stats.total_bytes()},
                {"rounds", r.mpc_stats.rounds},
                {"mults", r.mpc_stats.mults},
                {"comparisons", r.mpc_stats.comparisons},
                {"opens", r.mpc_stats.opens}};
    for (const auto& [who, oc] : r.ops)
        j["ops"][who] = {{"commit", oc.commit},     {"open", oc.open},
                         {"homo_add", oc.homo_add}, {"left_enc", oc.left_enc},
                         {"right_enc", oc.right_enc}, {"zero_tests", oc.zero_tests},
                         {"mask_ops", oc.mask_ops}, {"decrypts", oc.decrypts}};
    auto exp = expected_traffic(sc, cfg);
    auto obs = observed_traffic(r.transcript);
    for (const auto& [ch, bits] : exp) j["traffic"]["expected"][ch] = bits;
    for (const auto& [ch, bits] : obs) j["traffic"]["observed"][ch] = bits;
    j["traffic"]["match"] = (exp == obs);
    j["traffic"]["total_bits"] = total_bits(obs);
    auto viol = protocol::info_flow_violations(r.transcript, cfg.approach);
    j["info_flow_violations"] = viol;
    j["fault_log"] = r.transcript.fault_log;
    j["seconds"] = r.seconds;
    std::ofstream out(path);
    if (!out) throw Error("report: cannot write " + path);
    out << j.dump(1) << "\n";
}

}  // namespace lembill::report
