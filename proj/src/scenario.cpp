#include "lembill/scenario.hpp"

#include <fstream>

#include <json.hpp>

namespace lembill::scenario {

namespace {
constexpr unsigned kSchemaVersion = 1;
}

Scenario gen_scenario(const GenParams& p, uint64_t seed) {
    if (p.n_users < 2 || p.n_periods < 1 || p.n_suppliers < 1 || p.n_zones < 1 ||
        p.n_v < 1 || p.n_v > 31 || p.bid_max < 1 || p.bid_max >= (1LL << p.n_v))
        throw Error("gen_scenario: invalid params");
    market::validate(p.prices);

    Scenario s;
    s.seed = seed;
    s.n_users = p.n_users;
    s.n_periods = p.n_periods;
    s.n_suppliers = p.n_suppliers;
    s.n_zones = p.n_zones;
    s.n_v = p.n_v;
    s.prices = p.prices;

    // equal prosumer/consumer split; zones and suppliers filled round-robin
    for (uint32_t i = 0; i < p.n_users; ++i) {
        UserSpec u;
        u.id = i;
        u.zone = i % p.n_zones;
        u.supplier = i % p.n_suppliers;
        u.d = (i < p.n_users / 2) ? 1 : 0;
        s.users.push_back(u);
    }

    const int64_t dom_max = (1LL << p.n_v) - 1;
    Rng rng = Rng(seed).derive(0x5ce0);
    s.bids.assign(p.n_periods, {});
    s.meters.assign(p.n_periods, {});
    for (unsigned k = 0; k < p.n_periods; ++k) {
        auto& bid = s.bids[k];
        bid.resize(p.n_users);
        int64_t sell = 0, buy = 0;
        for (uint32_t i = 0; i < p.n_users; ++i) {
            bid[i] = rng.next_in(1, p.bid_max);
            (s.users[i].d ? sell : buy) += bid[i];
        }
        // clear the market: shrink the heavier side until totals match
        int64_t diff = sell - buy;
        for (uint32_t i = 0; diff != 0 && i < p.n_users; ++i) {
            bool heavy = diff > 0 ? s.users[i].d == 1 : s.users[i].d == 0;
            if (!heavy) continue;
            int64_t room = bid[i] - 1;
            int64_t take = std::min(room, diff > 0 ? diff : -diff);
            bid[i] -= take;
            diff += diff > 0 ? -take : take;
        }
        if (diff != 0) throw Error("gen_scenario: could not clear market");

        auto& met = s.meters[k];
        met.resize(p.n_users);
        for (uint32_t i = 0; i < p.n_users; ++i) {
            int64_t noise =
                p.deviation_noise ? rng.next_in(-p.deviation_noise, p.deviation_noise) : 0;
            met[i] = std::clamp<int64_t>(bid[i] + noise, 0, dom_max);
        }
    }
    validate(s);
    return s;
}

void validate(const Scenario& s) {
    market::validate(s.prices);
    if (s.users.size() != s.n_users) throw Error("scenario: user count mismatch");
    if (s.bids.size() != s.n_periods || s.meters.size() != s.n_periods)
        throw Error("scenario: period count mismatch");
    const int64_t dom_max = (1LL << s.n_v) - 1;
    for (const auto& u : s.users)
        if (u.zone >= s.n_zones || u.supplier >= s.n_suppliers || (u.d != 0 && u.d != 1))
            throw Error("scenario: bad user record");
    for (unsigned k = 0; k < s.n_periods; ++k) {
        if (s.bids[k].size() != s.n_users || s.meters[k].size() != s.n_users)
            throw Error("scenario: ragged period data");
        int64_t sell = 0, buy = 0;
        for (uint32_t i = 0; i < s.n_users; ++i) {
            if (s.bids[k][i] < 0 || s.bids[k][i] > dom_max || s.meters[k][i] < 0 ||
                s.meters[k][i] > dom_max)
                throw Error("scenario: value outside domain");
            (s.users[i].d ? sell : buy) += s.bids[k][i];
        }
        if (sell != buy) throw Error("scenario: market not cleared");
    }
}

void save(const Scenario& s, const std::string& path) {
    nlohmann::json j;
    j["schema_version"] = kSchemaVersion;
    j["seed"] = s.seed;
    j["n_users"] = s.n_users;
    j["n_periods"] = s.n_periods;
    j["n_suppliers"] = s.n_suppliers;
    j["n_zones"] = s.n_zones;
    j["n_v"] = s.n_v;
    j["prices"] = {{"TP", s.prices.TP}, {"FiT", s.prices.FiT}, {"RP", s.prices.RP}};
    for (const auto& u : s.users)
        j["users"].push_back({{"id", u.id}, {"zone", u.zone}, {"supplier", u.supplier}, {"d", u.d}});
    j["bids"] = s.bids;
    j["meters"] = s.meters;
    std::ofstream out(path);
    if (!out) throw Error("scenario: cannot write " + path);
    out << j.dump(1) << "\n";
}

Scenario load(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error("scenario: cannot read " + path);
    nlohmann::json j;
    in >> j;
    if (j.value("schema_version", 0u) != kSchemaVersion)
        throw Error("scenario: unsupported schema version");
    Scenario s;
    s.seed = j["seed"];
    s.n_users = j["n_users"];
    s.n_periods = j["n_periods"];
    s.n_suppliers = j["n_suppliers"];
    s.n_zones = j["n_zones"];
    s.n_v = j["n_v"];
    s.prices.TP = j["prices"]["TP"];
    s.prices.FiT = j["prices"]["FiT"];
    s.prices.RP = j["prices"]["RP"];
    for (const auto& ju : j["users"]) {
        UserSpec u;
        u.id = ju["id"];
        u.zone = ju["zone"];
        u.supplier = ju["supplier"];
        u.d = ju["d"];
        s.users.push_back(u);
    }
    s.bids = j["bids"].get<std::vector<std::vector<int64_t>>>();
    s.meters = j["meters"].get<std::vector<std::vector<int64_t>>>();
    validate(s);
    return s;
}

}  // namespace lembill::scenario
