#pragma once
#include <map>
#include <string>
#include <vector>

#include "lembill/protocol.hpp"

namespace lembill::report {

// channel key: "<from>><to>" aggregated over party indices, bits transferred
using Traffic = std::map<std::string, uint64_t>;

// closed-form per-channel bit counts for one full billing period, derived
// from the message schedule (the communication-cost oracle)
Traffic expected_traffic(const scenario::Scenario& sc, const protocol::ApproachConfig& cfg);

// instrumented counts from an actual transcript
Traffic observed_traffic(const protocol::Transcript& t);

uint64_t total_bits(const Traffic& t);

// closed-form operation bounds (zero tests, commitments, maskings, ...)
struct ExpectedOps {
    uint64_t zero_tests_max = 0;  // <= N * 2 * N_v, approach 1 only
    uint64_t commits = 0;         // SM meter + user bid commitments
    uint64_t opens = 0;           // one fold-and-open per user
    uint64_t mask_ops = 0;        // reading + role masks
    uint64_t decrypts = 0;        // one bill decryption per user
};
ExpectedOps expected_ops(const scenario::Scenario& sc, const protocol::ApproachConfig& cfg);

struct BenchRow {
    unsigned n_users = 0;
    int approach = 1;
    std::string engine;
    double seconds = 0;
    uint64_t mpc_bytes = 0;
    uint64_t transcript_bits = 0;
    bool ok = false;
};

void write_report_csv(const std::string& path, const std::vector<BenchRow>& rows);

// least-squares fit seconds ~ a + b * users; returns (a, b, r2)
struct LinearFit {
    double a = 0, b = 0, r2 = 0;
};
LinearFit fit_runtime(const std::vector<BenchRow>& rows);

// machine-readable run summary for `run` / `audit` / `tamper`
void write_ledger_json(const std::string& path, const scenario::Scenario& sc,
                       const protocol::ApproachConfig& cfg, const protocol::RunResult& r);

}  // namespace lembill::report
