#pragma once
#include <array>
#include <memory>
#include <vector>

#include "lembill/field.hpp"

namespace lembill::mpc {

struct EngineStats {
    uint64_t bytes[3][3] = {};  // bytes[i][j]: sent from CS_i to CS_j
    uint64_t rounds = 0;
    uint64_t mults = 0;
    uint64_t comparisons = 0;
    uint64_t opens = 0;

    uint64_t total_bytes() const {
        uint64_t t = 0;
        for (auto& row : bytes)
            for (auto b : row) t += b;
        return t;
    }
};

struct Share {
    uint32_t id = 0;
};

// Three-party arithmetic black box over Z_q.  Two engines share the
// interface: a clear-text ideal engine (correctness oracle) and a
// semi-honest replicated-sharing engine (Araki-style: x = x0+x1+x2,
// party i holds (x_i, x_{i+1}); one element sent per party per
// multiplication gate).
class Engine {
public:
    virtual ~Engine() = default;

    virtual const field::FieldCtx& field() const = 0;
    virtual const char* name() const = 0;

    virtual Share input(const field::Fe& x) = 0;  // dealer-provided secret
    virtual Share constant(const field::Fe& c) = 0;
    virtual field::Fe reconstruct(Share s) = 0;  // open to all, consistency-checked

    virtual Share add(Share a, Share b) = 0;
    virtual Share sub(Share a, Share b) = 0;
    virtual Share add_public(Share a, const field::Fe& c) = 0;
    virtual Share mul_public(Share a, const field::Fe& c) = 0;
    virtual Share mul(Share a, Share b) = 0;
    virtual std::vector<Share> mul_vec(const std::vector<Share>& a,
                                       const std::vector<Share>& b) = 0;  // one round
    virtual std::vector<field::Fe> reconstruct_vec(const std::vector<Share>& s) = 0;

    virtual std::vector<Share> rand_bits(size_t n) = 0;  // uniform shared bits

    // (is_pos, is_neg) as shared bits for the centered value of v, |v| < 2^L
    virtual std::pair<Share, Share> sign_test(Share v, field::SignedBound bound);

    // drop every share except the listed ones (handles are rewritten in place)
    virtual void compact(std::vector<Share*> keep) = 0;

    const EngineStats& stats() const { return stats_; }

protected:
    EngineStats stats_;
};

// statistical masking parameter for the mask-open comparison, clamped so
// the masked opening never wraps mod q
unsigned sigma_for(const field::FieldCtx& f, field::SignedBound bound);

class IdealEngine : public Engine {
public:
    IdealEngine(const field::FieldCtx& f, Rng rng) : f_(&f), rng_(rng) {}

    const field::FieldCtx& field() const override { return *f_; }
    const char* name() const override { return "ideal"; }

    Share input(const field::Fe& x) override;
    Share constant(const field::Fe& c) override { return input(c); }
    field::Fe reconstruct(Share s) override;
    Share add(Share a, Share b) override;
    Share sub(Share a, Share b) override;
    Share add_public(Share a, const field::Fe& c) override;
    Share mul_public(Share a, const field::Fe& c) override;
    Share mul(Share a, Share b) override;
    std::vector<Share> mul_vec(const std::vector<Share>& a,
                               const std::vector<Share>& b) override;
    std::vector<field::Fe> reconstruct_vec(const std::vector<Share>& s) override;
    std::vector<Share> rand_bits(size_t n) override;
    std::pair<Share, Share> sign_test(Share v, field::SignedBound bound) override;
    void compact(std::vector<Share*> keep) override;

private:
    Share push(field::Fe v);
    const field::FieldCtx* f_;
    Rng rng_;
    std::vector<field::Fe> vals_;
};

class ReplicatedEngine : public Engine {
public:
    // rng drives the dealer and the three pairwise zero-sharing PRG streams
    ReplicatedEngine(const field::FieldCtx& f, Rng rng);

    const field::FieldCtx& field() const override { return *f_; }
    const char* name() const override { return "replicated"; }

    Share input(const field::Fe& x) override;
    Share constant(const field::Fe& c) override;
    field::Fe reconstruct(Share s) override;
    Share add(Share a, Share b) override;
    Share sub(Share a, Share b) override;
    Share add_public(Share a, const field::Fe& c) override;
    Share mul_public(Share a, const field::Fe& c) override;
    Share mul(Share a, Share b) override;
    std::vector<Share> mul_vec(const std::vector<Share>& a,
                               const std::vector<Share>& b) override;
    std::vector<field::Fe> reconstruct_vec(const std::vector<Share>& s) override;
    std::vector<Share> rand_bits(size_t n) override;
    std::pair<Share, Share> sign_test(Share v, field::SignedBound bound) override;
    void compact(std::vector<Share*> keep) override;

    // test hooks
    std::pair<field::Fe, field::Fe> party_view(Share s, unsigned party) const;
    void corrupt_component(Share s, unsigned party, unsigned slot, const field::Fe& delta);

private:
    // the engine fields are word-sized primes, so shares live as uint64_t;
    // party p holds (row[p][0], row[p][1]) = (x_p, x_{p+1})
    using Row = std::array<std::array<uint64_t, 2>, 3>;
    Share push(Row r);
    Row& row(Share s);
    void przs(uint64_t alpha[3]);  // pairwise zero sharing, sums to zero

    uint64_t addw(uint64_t a, uint64_t b) const {
        uint64_t s = a + b;
        if (s >= q_ || s < a) s -= q_;
        return s;
    }
    uint64_t subw(uint64_t a, uint64_t b) const { return a >= b ? a - b : a + q_ - b; }
    uint64_t mulw(uint64_t a, uint64_t b) const {
        return static_cast<uint64_t>(static_cast<unsigned __int128>(a) * b % q_);
    }
    uint64_t to_word(const field::Fe& x) const;
    uint64_t sample_w(Rng& rng) const;

    const field::FieldCtx* f_;
    uint64_t q_ = 0, mask_ = 0;
    Rng dealer_;
    std::array<Rng, 3> pair_rng_;  // stream k shared by parties k and k+1
    std::vector<Row> rows_;
};

// ---- protocol-level helpers (Algorithms 1 and 3, Step-4 aggregation) ----

struct SharedTuple {
    uint32_t user_id = 0, supplier_id = 0, zone_id = 0;
    Share v, d;
};

struct ZoneShares {
    Share t_z, np_z, nc_z;
};

// Algorithm 1: zone aggregation; pure additions, no communication
ZoneShares aggregate_zone(Engine& e, const std::vector<SharedTuple>& tuples);

// Algorithm 3: [s] = 1 iff (T>0 and t_z>0 and v>0) or (T<0 and t_z<0 and v<0)
Share identify_s_cs(Engine& e, Share v, const mpz_class& T, const mpz_class& t_z,
                    field::SignedBound bound);

// Step 4: V_i = sum of per-period deviations, reconstructed as centered value
mpz_class aggregate_user_deviation(Engine& e, const std::vector<Share>& per_period,
                                   field::SignedBound bound);

}  // namespace lembill::mpc
