#include <cstdlib>
#include <iostream>

#include <CLI11.hpp>

#include "lembill/report.hpp"

using namespace lembill;

namespace {

uint64_t effective_seed(uint64_t cli_seed) {
    // LEMBILL_SEED overrides whatever the command line says
    if (const char* env = std::getenv("LEMBILL_SEED")) return std::strtoull(env, nullptr, 10);
    return cli_seed;
}

protocol::ApproachConfig make_config(int approach, const std::string& engine, unsigned n_v,
                                     uint64_t seed) {
    protocol::ApproachConfig cfg;
    cfg.approach = approach;
    cfg.replicated = (engine == "replicated");
    cfg.n_v = n_v;
    cfg.seed = seed;
    return cfg;
}

int report_run(const scenario::Scenario& sc, const protocol::ApproachConfig& cfg,
               const protocol::RunResult& r, const std::string& ledger,
               const std::string& transcript) {
    report::write_ledger_json(ledger, sc, cfg, r);
    r.transcript.save(transcript);
    auto viol = protocol::info_flow_violations(r.transcript, cfg.approach);
    std::cout << "users=" << sc.n_users << " periods=" << sc.n_periods
              << " approach=" << cfg.approach
              << " engine=" << (cfg.replicated ? "replicated" : "ideal") << "\n"
              << "acceptance=" << (r.all_accepted ? "ok" : "FAIL")
              << " step4=" << (r.all_step4_ok ? "ok" : "FAIL")
              << " audit=" << (r.all_audit_ok ? "ok" : "FAIL")
              << " info-flow=" << (viol.empty() ? "clean" : "VIOLATED")
              << " scap_sum=" << r.scap_sum << " seconds=" << r.seconds << "\n";
    for (const auto& u : r.users) {
        if (!u.accepted)
            std::cout << "user " << u.id << ": bill " << u.BL << " != oracle " << u.oracle_BL
                      << " (acceptance failed)\n";
        if (!u.step4_ok)
            std::cout << "user " << u.id << ": deviation verification failed (Step 4)\n";
    }
    for (const auto& [sid, v] : r.audit)
        if (!v.ok)
            std::cout << "supplier " << sid << ": audit mismatch, reported " << v.reported
                      << " expected " << v.expected << "\n";
    for (const auto& msg : viol) std::cout << "info-flow: " << msg << "\n";
    bool ok = r.all_accepted && r.all_step4_ok && r.all_audit_ok && viol.empty();
    return ok ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"PBP-LEM billing protocol simulator"};
    app.require_subcommand(1);

    // gen-scenario
    auto* gen = app.add_subcommand("gen-scenario", "generate a seeded scenario file");
    scenario::GenParams gp;
    uint64_t seed = 1;
    std::string out_scenario = "scenario.json";
    gen->add_option("--users", gp.n_users, "number of users");
    gen->add_option("--periods", gp.n_periods, "trading periods per billing period");
    gen->add_option("--suppliers", gp.n_suppliers, "supplier count");
    gen->add_option("--zones", gp.n_zones, "zone count");
    gen->add_option("--nv", gp.n_v, "value domain bits");
    gen->add_option("--bid-max", gp.bid_max, "max bid volume (Wh)");
    gen->add_option("--noise", gp.deviation_noise, "deviation noise bound (0 = exact)");
    gen->add_option("--seed", seed, "generator seed (env LEMBILL_SEED overrides)");
    gen->add_option("--out", out_scenario, "output path");

    // run
    auto* run = app.add_subcommand("run", "run one full billing period");
    std::string scenario_path = "scenario.json", ledger_path = "ledger.json";
    std::string transcript_path = "transcript.log", engine = "ideal";
    int approach = 1;
    run->add_option("--scenario", scenario_path, "scenario file");
    run->add_option("--approach", approach, "1 FHIPE, 2 MPC, 3 clear deviation")
        ->check(CLI::Range(1, 3));
    run->add_option("--engine", engine, "ideal | replicated")
        ->check(CLI::IsMember({"ideal", "replicated"}));
    run->add_option("--seed", seed, "protocol seed (env LEMBILL_SEED overrides)");
    run->add_option("--ledger", ledger_path, "ledger output");
    run->add_option("--transcript", transcript_path, "transcript output");

    // bench
    auto* bench = app.add_subcommand("bench", "sweep user counts, emit report.csv");
    unsigned users_min = 1000, users_max = 4000, step = 1000, bench_periods = 1;
    std::string csv_path = "report.csv";
    bench->add_option("--users", users_min, "sweep start");
    bench->add_option("--users-max", users_max, "sweep end (inclusive)");
    bench->add_option("--step", step, "sweep step");
    bench->add_option("--periods", bench_periods, "trading periods per run");
    bench->add_option("--approach", approach, "approach to sweep")->check(CLI::Range(1, 3));
    bench->add_option("--engine", engine, "ideal | replicated")
        ->check(CLI::IsMember({"ideal", "replicated"}));
    bench->add_option("--seed", seed, "seed (env LEMBILL_SEED overrides)");
    bench->add_option("--out", csv_path, "CSV output");

    // audit
    auto* audit = app.add_subcommand("audit", "re-run the DSO audit from a scenario");
    audit->add_option("--scenario", scenario_path, "scenario file");
    audit->add_option("--approach", approach, "approach")->check(CLI::Range(1, 3));
    audit->add_option("--engine", engine, "ideal | replicated")
        ->check(CLI::IsMember({"ideal", "replicated"}));
    audit->add_option("--seed", seed, "seed (env LEMBILL_SEED overrides)");

    // tamper
    auto* tamper = app.add_subcommand("tamper", "inject a fault and report detection");
    std::string target = "user-share-v";
    uint32_t party = 0, period = 0;
    int64_t delta = 1;
    tamper->add_option("--target", target, "fault target")
        ->check(CLI::IsMember(
            {"user-share-v", "user-share-v-cancel", "supplier-scap", "sm-masked-reading"}));
    tamper->add_option("--party", party, "party index");
    tamper->add_option("--period", period, "trading period");
    tamper->add_option("--delta", delta, "perturbation");
    tamper->add_option("--scenario", scenario_path, "scenario file");
    tamper->add_option("--approach", approach, "approach")->check(CLI::Range(1, 3));
    tamper->add_option("--engine", engine, "ideal | replicated")
        ->check(CLI::IsMember({"ideal", "replicated"}));
    tamper->add_option("--seed", seed, "seed (env LEMBILL_SEED overrides)");
    tamper->add_option("--ledger", ledger_path, "ledger output");
    tamper->add_option("--transcript", transcript_path, "transcript output");

    CLI11_PARSE(app, argc, argv);
    seed = effective_seed(seed);

    try {
        if (gen->parsed()) {
            auto sc = scenario::gen_scenario(gp, seed);
            scenario::save(sc, out_scenario);
            std::cout << "wrote " << out_scenario << " (" << sc.n_users << " users, "
                      << sc.n_periods << " periods, seed " << seed << ")\n";
            return 0;
        }
        if (run->parsed()) {
            auto sc = scenario::load(scenario_path);
            auto cfg = make_config(approach, engine, sc.n_v, seed);
            auto r = protocol::run_billing_period(sc, cfg);
            return report_run(sc, cfg, r, ledger_path, transcript_path);
        }
        if (bench->parsed()) {
            std::vector<report::BenchRow> rows;
            for (unsigned n = users_min; n <= users_max; n += step) {
                scenario::GenParams p;
                p.n_users = n;
                p.n_periods = bench_periods;
                auto sc = scenario::gen_scenario(p, seed);
                auto cfg = make_config(approach, engine, sc.n_v, seed);
                auto r = protocol::run_billing_period(sc, cfg);
                report::BenchRow row;
                row.n_users = n;
                row.approach = approach;
                row.engine = engine;
                row.seconds = r.seconds;
                row.mpc_bytes = r.mpc_stats.total_bytes();
                row.transcript_bits = report::total_bits(report::observed_traffic(r.transcript));
                row.ok = r.all_accepted && r.all_step4_ok && r.all_audit_ok;
                rows.push_back(row);
                std::cout << "users=" << n << " seconds=" << r.seconds
                          << " bits=" << row.transcript_bits << " ok=" << row.ok
                          << " threads=1\n";
            }
            report::write_report_csv(csv_path, rows);
            auto fit = report::fit_runtime(rows);
            std::cout << "wrote " << csv_path << "; fit seconds ~ " << fit.a << " + " << fit.b
                      << " * users, R2=" << fit.r2 << "\n";
            return 0;
        }
        if (audit->parsed()) {
            auto sc = scenario::load(scenario_path);
            auto cfg = make_config(approach, engine, sc.n_v, seed);
            auto r = protocol::run_billing_period(sc, cfg);
            bool ok = true;
            for (const auto& [sid, v] : r.audit) {
                std::cout << "supplier " << sid << ": reported=" << v.reported
                          << " expected=" << v.expected << " -> " << (v.ok ? "ok" : "MISMATCH")
                          << "\n";
                ok = ok && v.ok;
            }
            std::cout << "scap_sum=" << r.scap_sum << "\n";
            return ok ? 0 : 1;
        }
        if (tamper->parsed()) {
            auto sc = scenario::load(scenario_path);
            auto cfg = make_config(approach, engine, sc.n_v, seed);
            protocol::FaultSpec fs;
            fs.party = party;
            fs.period = period;
            fs.delta = delta;
            bool expect_detected = true;
            if (target == "user-share-v") fs.target = protocol::FaultSpec::Target::UserShareV;
            if (target == "user-share-v-cancel") {
                fs.target = protocol::FaultSpec::Target::UserShareVCancel;
                expect_detected = false;  // sum-preserving lies pass Step 4 by design
            }
            if (target == "supplier-scap") fs.target = protocol::FaultSpec::Target::SupplierScap;
            if (target == "sm-masked-reading")
                fs.target = protocol::FaultSpec::Target::SmMaskedReading;
            auto r = protocol::run_billing_period(sc, cfg, {fs});
            report::write_ledger_json(ledger_path, sc, cfg, r);
            r.transcript.save(transcript_path);
            bool detected = !(r.all_accepted && r.all_step4_ok && r.all_audit_ok);
            std::string culprit;
            for (const auto& u : r.users)
                if (!u.accepted || !u.step4_ok) culprit = "user " + std::to_string(u.id);
            for (const auto& [sid, v] : r.audit)
                if (!v.ok) culprit = "supplier " + std::to_string(sid);
            std::cout << "fault=" << target << " party=" << party << " delta=" << delta
                      << " detected=" << (detected ? "yes" : "no")
                      << (culprit.empty() ? "" : " culprit=" + culprit) << "\n";
            if (detected != expect_detected) {
                std::cout << (expect_detected ? "fault went undetected\n"
                                              : "sum-preserving fault unexpectedly detected\n");
                return 1;
            }
            return detected ? 1 : 0;  // detection means the run is bad: nonzero exit
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 0;
}
