#pragma once
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "lembill/ipe.hpp"
#include "lembill/maskedbill.hpp"
#include "lembill/mpc.hpp"
#include "lembill/pedersen.hpp"
#include "lembill/scenario.hpp"

namespace lembill::protocol {

enum class PartyKind { User, SM, LEMO, Supplier, CS, KA, DSO };
const char* party_name(PartyKind k);

struct PartyId {
    PartyKind kind;
    uint32_t index = 0;
};

// payload classification used by the information-flow assertions
enum class PayloadKind {
    ClearMeter,
    ClearBid,
    ClearRole,
    ClearDeviation,
    MaskedReading,
    MaskedRole,
    MeterCommitment,
    BidCommitment,
    FhipeLeft,
    FhipeRight,
    ShareV,
    ShareD,
    SFlagShare,
    ZonePublication,
    MarketPublication,
    CFlags,
    KeyMaterial,
    IpeParamsMsg,
    BillKey,
    BillTotal,
    DeviationTotal,
    OpeningRandomness,
    SupplierBalanceKey,
    ScapReport,
    LemBillReport
};
const char* payload_name(PayloadKind k);

struct TranscriptEntry {
    PartyId from, to;
    std::string step;
    PayloadKind kind;
    uint64_t bits = 0;
    std::string hash;  // SHA-256 of the canonical payload description
};

struct Transcript {
    std::vector<TranscriptEntry> entries;
    std::vector<std::string> fault_log;
    void log(PartyId from, PartyId to, const std::string& step, PayloadKind kind,
             uint64_t bits, const std::string& payload_desc);
    void save(const std::string& path) const;
};

// §7.2 accounting constants, in bits
struct SizeTable {
    uint64_t SH = 64;        // |[X]|  share element
    uint64_t COMMIT = 256;   // |<X>| commitment
    uint64_t R = 256;        // |R|   commitment randomness sum
    uint64_t K = 128;        // |K|   mask key / masked value
    uint64_t X = 32;         // |X|   public value
    uint64_t CN = 1;         // |CN|  condition bit
    uint64_t CT_L = 550 * 8;   // |CT_l| FHIPE left ciphertext
    uint64_t CT_R = 1650 * 8;  // |CT_r| FHIPE right ciphertext
    uint64_t msk_bits(unsigned n_v) const {  // documented own constant |MK|
        uint64_t n = 2ull * n_v + 2;
        return 2 * n * n * 64;
    }
};

struct ApproachConfig {
    int approach = 1;            // 1 FHIPE, 2 MPC s-identification, 3 clear v
    bool replicated = false;     // false: ideal engine
    unsigned n_v = 12;
    uint64_t seed = 1;
    bool small_field = false;    // test profile q=101-scale fields
};

struct FaultSpec {
    enum class Target {
        None,
        UserShareV,        // user misreports [v] by delta in one period
        UserShareVCancel,  // +delta in `period`, -delta in the next (sum-preserving)
        SupplierScap,      // supplier perturbs reported SCap by delta
        SmMaskedReading    // SM misreports mc by delta in one period
    };
    Target target = Target::None;
    uint32_t party = 0;
    uint32_t period = 0;
    int64_t delta = 1;
};

struct OpCounts {
    uint64_t commit = 0, open = 0, homo_add = 0;
    uint64_t left_enc = 0, right_enc = 0, zero_tests = 0;
    uint64_t mask_ops = 0, decrypts = 0;
};

struct UserResult {
    uint32_t id = 0, supplier = 0, zone = 0;
    int64_t d = 0;
    mpz_class BL = 0, BL_LEM = 0, oracle_BL = 0;
    bool accepted = false;  // Step-3 user acceptance
    bool step4_ok = false;  // deviation verification
};

struct SupplierResult {
    uint32_t id = 0;
    std::vector<mpz_class> sbal;  // corrected, per trading period
    mpz_class scap = 0;           // honest value
    mpz_class scap_reported = 0;  // possibly tampered
};

struct RunResult {
    std::vector<UserResult> users;
    std::map<uint32_t, SupplierResult> suppliers;
    std::map<uint32_t, market::AuditVerdict> audit;
    mpz_class scap_sum = 0;
    bool all_accepted = false, all_step4_ok = false, all_audit_ok = false;
    mpc::EngineStats mpc_stats;
    Transcript transcript;
    std::map<std::string, OpCounts> ops;  // per entity kind
    double seconds = 0;
};

// full billing period: prerequisites + Steps 1-5
RunResult run_billing_period(const scenario::Scenario& sc, const ApproachConfig& cfg,
                             const std::vector<FaultSpec>& faults = {});

// transcript checks; returns human-readable violations (empty = clean)
std::vector<std::string> info_flow_violations(const Transcript& t, int approach);

}  // namespace lembill::protocol
