#include <doctest.h>

#include <cstdio>
#include <set>

#include "lembill/report.hpp"

using namespace lembill;

namespace {

scenario::Scenario small_scenario(uint64_t seed, int64_t noise = 8) {
    scenario::GenParams p;
    p.n_users = 12;
    p.n_periods = 4;
    p.n_suppliers = 2;
    p.n_zones = 2;
    p.n_v = 6;
    p.bid_max = 50;
    p.deviation_noise = noise;
    return scenario::gen_scenario(p, seed);
}

protocol::ApproachConfig config(int approach, bool replicated, const scenario::Scenario& sc,
                                uint64_t seed = 7) {
    protocol::ApproachConfig cfg;
    cfg.approach = approach;
    cfg.replicated = replicated;
    cfg.n_v = sc.n_v;
    cfg.seed = seed;
    return cfg;
}

}  // namespace

TEST_CASE("honest run passes every check in every configuration") {
    auto sc = small_scenario(7);
    std::vector<mpz_class> ref_bills;
    mpz_class ref_scap_sum;
    bool first = true;
    for (int a = 1; a <= 3; ++a)
        for (bool rep : {false, true}) {
            auto r = protocol::run_billing_period(sc, config(a, rep, sc));
            CHECK(r.all_accepted);
            CHECK(r.all_step4_ok);
            CHECK(r.all_audit_ok);
            CHECK(protocol::info_flow_violations(r.transcript, a).empty());
            CHECK(r.transcript.fault_log.empty());
            std::vector<mpz_class> bills;
            for (const auto& u : r.users) {
                CHECK(u.BL == u.oracle_BL);
                bills.push_back(u.BL);
            }
            if (first) {
                ref_bills = bills;
                ref_scap_sum = r.scap_sum;
                first = false;
            } else {
                CHECK(bills == ref_bills);  // approach equivalence
                CHECK(r.scap_sum == ref_scap_sum);
            }
        }
}

TEST_CASE("approaches produce identical supplier balances") {
    auto sc = small_scenario(19);
    auto r1 = protocol::run_billing_period(sc, config(1, false, sc));
    auto r2 = protocol::run_billing_period(sc, config(2, true, sc));
    auto r3 = protocol::run_billing_period(sc, config(3, false, sc));
    for (uint32_t j = 0; j < sc.n_suppliers; ++j) {
        CHECK(r1.suppliers.at(j).sbal == r2.suppliers.at(j).sbal);
        CHECK(r2.suppliers.at(j).sbal == r3.suppliers.at(j).sbal);
        CHECK(r1.suppliers.at(j).scap == r3.suppliers.at(j).scap);
    }
}

TEST_CASE("zero-deviation scenario settles to zero") {
    auto sc = small_scenario(9, 0);
    auto r = protocol::run_billing_period(sc, config(3, false, sc, 9));
    CHECK(r.scap_sum == 0);
    CHECK(r.all_audit_ok);
}

TEST_CASE("sm misreport breaks only that user's acceptance") {
    auto sc = small_scenario(7);
    protocol::FaultSpec fs;
    fs.target = protocol::FaultSpec::Target::SmMaskedReading;
    fs.party = 2;
    fs.period = 0;
    fs.delta = 3;
    auto r = protocol::run_billing_period(sc, config(2, true, sc), {fs});
    CHECK_FALSE(r.users[2].accepted);
    for (const auto& u : r.users)
        if (u.id != 2) CHECK(u.accepted);
    CHECK_FALSE(r.transcript.fault_log.empty());
}

TEST_CASE("single-period v inflation is caught by step 4") {
    auto sc = small_scenario(7);
    for (int a : {2, 3}) {
        protocol::FaultSpec fs;
        fs.target = protocol::FaultSpec::Target::UserShareV;
        fs.party = 3;
        fs.period = 1;
        fs.delta = 1;
        auto r = protocol::run_billing_period(sc, config(a, a == 2, sc), {fs});
        CHECK_FALSE(r.users[3].step4_ok);
        for (const auto& u : r.users)
            if (u.id != 3) CHECK(u.step4_ok);
    }
}

TEST_CASE("sum-preserving lies pass step 4 (documented limit)") {
    auto sc = small_scenario(7);
    protocol::FaultSpec fs;
    fs.target = protocol::FaultSpec::Target::UserShareVCancel;
    fs.party = 5;
    fs.period = 1;
    fs.delta = 4;
    auto r = protocol::run_billing_period(sc, config(2, false, sc), {fs});
    CHECK(r.users[5].step4_ok);
    CHECK_FALSE(r.transcript.fault_log.empty());
}

TEST_CASE("scap corruption is caught and named by the dso") {
    auto sc = small_scenario(7);
    protocol::FaultSpec fs;
    fs.target = protocol::FaultSpec::Target::SupplierScap;
    fs.party = 1;
    fs.delta = 1;
    auto r = protocol::run_billing_period(sc, config(1, false, sc), {fs});
    CHECK_FALSE(r.audit.at(1).ok);
    CHECK(r.audit.at(0).ok);
    CHECK_FALSE(r.all_audit_ok);
}

TEST_CASE("identical inputs give identical transcripts") {
    auto sc = small_scenario(7);
    for (int a = 1; a <= 3; ++a) {
        auto r1 = protocol::run_billing_period(sc, config(a, true, sc));
        auto r2 = protocol::run_billing_period(sc, config(a, true, sc));
        REQUIRE(r1.transcript.entries.size() == r2.transcript.entries.size());
        for (size_t i = 0; i < r1.transcript.entries.size(); ++i) {
            REQUIRE(r1.transcript.entries[i].hash == r2.transcript.entries[i].hash);
            REQUIRE(r1.transcript.entries[i].bits == r2.transcript.entries[i].bits);
        }
    }
}

TEST_CASE("step-2 publication reaches all suppliers, all users, and the ka") {
    auto sc = small_scenario(7);
    auto r = protocol::run_billing_period(sc, config(3, false, sc));
    std::set<std::pair<int, uint32_t>> recipients;
    for (const auto& e : r.transcript.entries)
        if (e.kind == protocol::PayloadKind::ZonePublication && e.step == "2/tp0")
            recipients.insert({static_cast<int>(e.to.kind), e.to.index});
    CHECK(recipients.size() == sc.n_suppliers + sc.n_users + 1);
    CHECK(recipients.count({static_cast<int>(protocol::PartyKind::KA), 0}) == 1);
    for (uint32_t j = 0; j < sc.n_suppliers; ++j)
        CHECK(recipients.count({static_cast<int>(protocol::PartyKind::Supplier), j}) == 1);
}

TEST_CASE("traffic accounting matches the closed forms") {
    auto sc = small_scenario(7);
    for (int a = 1; a <= 3; ++a) {
        auto cfg = config(a, a == 2, sc);
        auto r = protocol::run_billing_period(sc, cfg);
        auto expected = report::expected_traffic(sc, cfg);
        auto observed = report::observed_traffic(r.transcript);
        REQUIRE(expected == observed);
        // the headline formula: users-to-CS bits per trading period = 6 N |[X]|
        CHECK(observed.at("user>cs") ==
              6ull * sc.n_users * sc.n_periods * protocol::SizeTable{}.SH);
        auto eo = report::expected_ops(sc, cfg);
        CHECK(r.ops["supplier"].zero_tests <= eo.zero_tests_max);
        CHECK(r.ops["sm"].commit + r.ops["user"].commit == eo.commits);
        CHECK(r.ops["supplier"].open == eo.opens);
        CHECK(r.ops["supplier"].decrypts == eo.decrypts);
        CHECK(r.ops["sm"].mask_ops + r.ops["user"].mask_ops == eo.mask_ops);
    }
}

TEST_CASE("clear values never reach the wrong parties") {
    auto sc = small_scenario(7);
    // approach 3 legitimately sends clear deviations to suppliers
    auto r3 = protocol::run_billing_period(sc, config(3, false, sc));
    CHECK(protocol::info_flow_violations(r3.transcript, 3).empty());
    // ...but the same transcript is a violation under approaches 1 and 2
    CHECK_FALSE(protocol::info_flow_violations(r3.transcript, 1).empty());
}

TEST_CASE("runtime fit on synthetic data") {
    std::vector<report::BenchRow> rows;
    for (unsigned n = 1000; n <= 4000; n += 1000) {
        report::BenchRow row;
        row.n_users = n;
        row.seconds = 0.5 + 0.001 * n;
        rows.push_back(row);
    }
    auto fit = report::fit_runtime(rows);
    CHECK(fit.r2 > 0.999);
    CHECK(fit.b == doctest::Approx(0.001));
    CHECK(fit.a == doctest::Approx(0.5));
}

TEST_CASE("ledger and report files are written") {
    auto sc = small_scenario(7);
    auto cfg = config(2, false, sc);
    auto r = protocol::run_billing_period(sc, cfg);
    report::write_ledger_json("test_ledger.json", sc, cfg, r);
    r.transcript.save("test_transcript.log");
    report::write_report_csv("test_report.csv", {});
    for (const char* p : {"test_ledger.json", "test_transcript.log", "test_report.csv"}) {
        FILE* fp = std::fopen(p, "r");
        REQUIRE(fp != nullptr);
        std::fclose(fp);
        std::remove(p);
    }
}
