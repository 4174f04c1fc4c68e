#pragma once
#include <string>
#include <vector>

#include "lembill/market.hpp"

namespace lembill::scenario {

struct UserSpec {
    uint32_t id = 0, zone = 0, supplier = 0;
    int64_t d = 0;  // 1 producer, 0 consumer; fixed per billing period
};

struct Scenario {
    uint64_t seed = 0;
    unsigned n_users = 0, n_periods = 0, n_suppliers = 0, n_zones = 0, n_v = 12;
    market::Prices prices;  // constant across periods in generated scenarios
    std::vector<UserSpec> users;
    std::vector<std::vector<int64_t>> bids;    // [period][user], Wh
    std::vector<std::vector<int64_t>> meters;  // [period][user], Wh
};

struct GenParams {
    unsigned n_users = 100, n_periods = 48, n_suppliers = 6, n_zones = 4, n_v = 12;
    int64_t bid_max = 2000;        // bids uniform in [1, bid_max]
    int64_t deviation_noise = 200;  // m = clamp(b + U[-noise, noise], domain); 0 = exact
    market::Prices prices;
};

// deterministic per seed; per-period bids rebalanced so total sell = total buy
Scenario gen_scenario(const GenParams& p, uint64_t seed);

void validate(const Scenario& s);

void save(const Scenario& s, const std::string& path);
Scenario load(const std::string& path);

}  // namespace lembill::scenario
