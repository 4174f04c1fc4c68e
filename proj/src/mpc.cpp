#include "lembill/mpc.hpp"

#include <algorithm>

namespace lembill::mpc {

using field::Fe;

unsigned sigma_for(const field::FieldCtx& f, field::SignedBound bound) {
    // need w + r < q with w < 2^(L+1), r < 2^m, m = L+1+sigma, so m+1 <= bits(q)-1
    if (f.bits() < bound.L + 3) throw Error("sign_test: field too small for bound");
    unsigned maxm = f.bits() - 2;
    unsigned room = maxm - (bound.L + 1);
    return std::min(40u, room);
}

std::pair<Share, Share> Engine::sign_test(Share v, field::SignedBound bound) {
    ++stats_.comparisons;
    const auto& f = field();
    const unsigned L = bound.L;
    const unsigned m = L + 1 + sigma_for(f, bound);
    const mpz_class twoL = mpz_class(1) << L;

    Share w = add_public(v, f.from_signed(twoL));
    auto bits = rand_bits(m);
    Share r = bits[0];
    for (unsigned i = 1; i < m; ++i)
        r = add(r, mul_public(bits[i], f.from_signed(mpz_class(1) << i)));
    // open c = w + r; integers never wrap: w + r < 2^(m+1) < q
    mpz_class c = reconstruct(add(w, r));
    mpz_class t = c - twoL;  // v > 0 iff r < t;  v < 0 iff r > t

    if (t < 0) return {constant(f.from_int(0)), constant(f.from_int(1))};
    if (t >= (mpz_class(1) << m)) return {constant(f.from_int(1)), constant(f.from_int(0))};

    // bitwise comparison of shared bits r against public t
    // e_i = [r_i == t_i]; f_i = prod_{k>i} e_k; LT = sum_{t_i=1} f_i(1-b_i), GT = sum_{t_i=0} f_i b_i
    std::vector<Share> pref(m);
    pref[m - 1] = constant(f.from_int(1));
    auto eq_at = [&](unsigned i) {
        if (mpz_tstbit(t.get_mpz_t(), i)) return bits[i];
        return add_public(mul_public(bits[i], f.from_int(-1)), f.from_int(1));
    };
    for (int i = static_cast<int>(m) - 2; i >= 0; --i)
        pref[i] = mul(pref[i + 1], eq_at(i + 1));
    std::vector<Share> fb = mul_vec(pref, bits);
    Share lt = constant(f.from_int(0));
    Share gt = constant(f.from_int(0));
    for (unsigned i = 0; i < m; ++i) {
        if (mpz_tstbit(t.get_mpz_t(), i))
            lt = add(lt, sub(pref[i], fb[i]));
        else
            gt = add(gt, fb[i]);
    }
    return {lt, gt};
}

// ---------------- ideal engine ----------------

Share IdealEngine::push(Fe v) {
    vals_.push_back(std::move(v));
    return {static_cast<uint32_t>(vals_.size() - 1)};
}

Share IdealEngine::input(const Fe& x) { return push(x); }

Fe IdealEngine::reconstruct(Share s) {
    ++stats_.opens;
    return vals_.at(s.id);
}

Share IdealEngine::add(Share a, Share b) { return push(f_->add(vals_.at(a.id), vals_.at(b.id))); }
Share IdealEngine::sub(Share a, Share b) { return push(f_->sub(vals_.at(a.id), vals_.at(b.id))); }
Share IdealEngine::add_public(Share a, const Fe& c) { return push(f_->add(vals_.at(a.id), c)); }
Share IdealEngine::mul_public(Share a, const Fe& c) { return push(f_->mul(vals_.at(a.id), c)); }

Share IdealEngine::mul(Share a, Share b) {
    ++stats_.mults;
    ++stats_.rounds;
    return push(f_->mul(vals_.at(a.id), vals_.at(b.id)));
}

std::vector<Share> IdealEngine::mul_vec(const std::vector<Share>& a, const std::vector<Share>& b) {
    if (a.size() != b.size()) throw Error("mul_vec: length mismatch");
    stats_.mults += a.size();
    ++stats_.rounds;
    std::vector<Share> out;
    out.reserve(a.size());
    for (size_t i = 0; i < a.size(); ++i) out.push_back(push(f_->mul(vals_.at(a[i].id), vals_.at(b[i].id))));
    return out;
}

std::vector<Fe> IdealEngine::reconstruct_vec(const std::vector<Share>& s) {
    stats_.opens += s.size();
    std::vector<Fe> out;
    out.reserve(s.size());
    for (auto sh : s) out.push_back(vals_.at(sh.id));
    return out;
}

std::vector<Share> IdealEngine::rand_bits(size_t n) {
    std::vector<Share> out;
    out.reserve(n);
    for (size_t i = 0; i < n; ++i) out.push_back(push(f_->from_int(static_cast<long>(rng_.next_u64() & 1))));
    return out;
}

std::pair<Share, Share> IdealEngine::sign_test(Share v, field::SignedBound bound) {
    ++stats_.comparisons;
    mpz_class c = f_->centered_lift(vals_.at(v.id), bound);
    return {push(f_->from_int(c > 0 ? 1 : 0)), push(f_->from_int(c < 0 ? 1 : 0))};
}

void IdealEngine::compact(std::vector<Share*> keep) {
    std::vector<Fe> nv;
    nv.reserve(keep.size());
    for (auto* s : keep) {
        nv.push_back(vals_.at(s->id));
        s->id = static_cast<uint32_t>(nv.size() - 1);
    }
    vals_ = std::move(nv);
}

// ---------------- replicated engine ----------------

ReplicatedEngine::ReplicatedEngine(const field::FieldCtx& f, Rng rng)
    : f_(&f), dealer_(rng.derive(0)), pair_rng_{rng.derive(1), rng.derive(2), rng.derive(3)} {
    if (f.bits() > 64) throw Error("ReplicatedEngine: field must fit a machine word");
    q_ = mpz_get_ui(f.q().get_mpz_t());
    mask_ = f.bits() >= 64 ? ~0ULL : ((1ULL << f.bits()) - 1);
}

uint64_t ReplicatedEngine::to_word(const Fe& x) const {
    mpz_class r;
    mpz_mod(r.get_mpz_t(), x.get_mpz_t(), f_->q().get_mpz_t());
    return mpz_get_ui(r.get_mpz_t());
}

uint64_t ReplicatedEngine::sample_w(Rng& rng) const {
    for (;;) {
        uint64_t r = rng.next_u64() & mask_;
        if (r < q_) return r;
    }
}

Share ReplicatedEngine::push(Row r) {
    rows_.push_back(std::move(r));
    return {static_cast<uint32_t>(rows_.size() - 1)};
}

ReplicatedEngine::Row& ReplicatedEngine::row(Share s) { return rows_.at(s.id); }

Share ReplicatedEngine::input(const Fe& x) {
    uint64_t x0 = sample_w(dealer_);
    uint64_t x1 = sample_w(dealer_);
    uint64_t x2 = subw(subw(to_word(x), x0), x1);
    return push(Row{{{x0, x1}, {x1, x2}, {x2, x0}}});
}

Share ReplicatedEngine::constant(const Fe& c) {
    uint64_t w = to_word(c);
    return push(Row{{{w, 0}, {0, 0}, {0, w}}});
}

Fe ReplicatedEngine::reconstruct(Share s) {
    return reconstruct_vec({s})[0];
}

std::vector<Fe> ReplicatedEngine::reconstruct_vec(const std::vector<Share>& s) {
    const uint64_t B = f_->bytes();
    std::vector<Fe> out;
    out.reserve(s.size());
    ++stats_.rounds;
    for (auto sh : s) {
        ++stats_.opens;
        const Row& r = rows_.at(sh.id);
        uint64_t result[3];
        for (unsigned j = 0; j < 3; ++j) {
            // party j misses x_{j+2}; both holders send their copy
            uint64_t from_next = r[(j + 1) % 3][1];  // party j+1 second slot = x_{j+2}
            uint64_t from_prev = r[(j + 2) % 3][0];  // party j+2 first slot  = x_{j+2}
            stats_.bytes[(j + 1) % 3][j] += B;
            stats_.bytes[(j + 2) % 3][j] += B;
            if (from_next != from_prev) throw Error("mpc: replicated share inconsistency, abort");
            result[j] = addw(addw(r[j][0], r[j][1]), from_next);
        }
        if (result[0] != result[1] || result[1] != result[2])
            throw Error("mpc: replicated share inconsistency, abort");
        out.push_back(Fe(static_cast<unsigned long>(result[0])));
    }
    return out;
}

Share ReplicatedEngine::add(Share a, Share b) {
    const Row& x = rows_.at(a.id);
    const Row& y = rows_.at(b.id);
    Row z;
    for (unsigned p = 0; p < 3; ++p)
        for (unsigned k = 0; k < 2; ++k) z[p][k] = addw(x[p][k], y[p][k]);
    return push(z);
}

Share ReplicatedEngine::sub(Share a, Share b) {
    const Row& x = rows_.at(a.id);
    const Row& y = rows_.at(b.id);
    Row z;
    for (unsigned p = 0; p < 3; ++p)
        for (unsigned k = 0; k < 2; ++k) z[p][k] = subw(x[p][k], y[p][k]);
    return push(z);
}

Share ReplicatedEngine::add_public(Share a, const Fe& c) {
    // convention: component x_0 absorbs the constant (parties 0 and 2 hold it)
    Row z = rows_.at(a.id);
    uint64_t w = to_word(c);
    z[0][0] = addw(z[0][0], w);
    z[2][1] = addw(z[2][1], w);
    return push(z);
}

Share ReplicatedEngine::mul_public(Share a, const Fe& c) {
    Row z = rows_.at(a.id);
    uint64_t w = to_word(c);
    for (unsigned p = 0; p < 3; ++p)
        for (unsigned k = 0; k < 2; ++k) z[p][k] = mulw(z[p][k], w);
    return push(z);
}

void ReplicatedEngine::przs(uint64_t alpha[3]) {
    uint64_t s[3];
    for (unsigned k = 0; k < 3; ++k) s[k] = sample_w(pair_rng_[k]);
    for (unsigned k = 0; k < 3; ++k) alpha[k] = subw(s[k], s[(k + 1) % 3]);
}

Share ReplicatedEngine::mul(Share a, Share b) {
    return mul_vec({a}, {b})[0];
}

std::vector<Share> ReplicatedEngine::mul_vec(const std::vector<Share>& a,
                                             const std::vector<Share>& b) {
    if (a.size() != b.size()) throw Error("mul_vec: length mismatch");
    const uint64_t B = f_->bytes();
    ++stats_.rounds;
    std::vector<Share> out;
    out.reserve(a.size());
    for (size_t i = 0; i < a.size(); ++i) {
        ++stats_.mults;
        const Row& x = rows_.at(a[i].id);
        const Row& y = rows_.at(b[i].id);
        uint64_t alpha[3], z[3];
        przs(alpha);
        for (unsigned p = 0; p < 3; ++p) {
            uint64_t t = mulw(x[p][0], y[p][0]);
            t = addw(t, mulw(x[p][0], y[p][1]));
            t = addw(t, mulw(x[p][1], y[p][0]));
            z[p] = addw(t, alpha[p]);
            // party p sends z_p to party p-1: exactly one element per gate
            stats_.bytes[p][(p + 2) % 3] += B;
        }
        out.push_back(push(Row{{{z[0], z[1]}, {z[1], z[2]}, {z[2], z[0]}}}));
    }
    return out;
}

std::vector<Share> ReplicatedEngine::rand_bits(size_t n) {
    // a bit drawn from pairwise stream k is known to exactly the two holders
    // of component k, so both can write the single-component sharing locally;
    // xor of one bit per stream is then a uniform bit hidden from each party
    const Fe two = f_->from_int(2);
    std::vector<Share> b0, b1, b2;
    b0.reserve(n);
    b1.reserve(n);
    b2.reserve(n);
    for (size_t i = 0; i < n; ++i) {
        uint64_t u0 = pair_rng_[0].next_u64() & 1;
        uint64_t u1 = pair_rng_[1].next_u64() & 1;
        uint64_t u2 = pair_rng_[2].next_u64() & 1;
        b0.push_back(push(Row{{{u0, 0}, {0, 0}, {0, u0}}}));
        b1.push_back(push(Row{{{0, u1}, {u1, 0}, {0, 0}}}));
        b2.push_back(push(Row{{{0, 0}, {0, u2}, {u2, 0}}}));
    }
    // x xor y = x + y - 2xy, one multiplication gate per xor
    auto p = mul_vec(b0, b1);
    std::vector<Share> t;
    t.reserve(n);
    for (size_t i = 0; i < n; ++i) t.push_back(sub(add(b0[i], b1[i]), mul_public(p[i], two)));
    auto q = mul_vec(t, b2);
    std::vector<Share> out;
    out.reserve(n);
    for (size_t i = 0; i < n; ++i) out.push_back(sub(add(t[i], b2[i]), mul_public(q[i], two)));
    return out;
}

std::pair<Share, Share> ReplicatedEngine::sign_test(Share v, field::SignedBound bound) {
    return Engine::sign_test(v, bound);
}

void ReplicatedEngine::compact(std::vector<Share*> keep) {
    std::vector<Row> nr;
    nr.reserve(keep.size());
    for (auto* s : keep) {
        nr.push_back(rows_.at(s->id));
        s->id = static_cast<uint32_t>(nr.size() - 1);
    }
    rows_ = std::move(nr);
}

std::pair<Fe, Fe> ReplicatedEngine::party_view(Share s, unsigned party) const {
    const Row& r = rows_.at(s.id);
    return {Fe(static_cast<unsigned long>(r[party % 3][0])),
            Fe(static_cast<unsigned long>(r[party % 3][1]))};
}

void ReplicatedEngine::corrupt_component(Share s, unsigned party, unsigned slot, const Fe& delta) {
    Row& r = rows_.at(s.id);
    r[party % 3][slot % 2] = addw(r[party % 3][slot % 2], to_word(delta));
}

// ---------------- protocol-level helpers ----------------

ZoneShares aggregate_zone(Engine& e, const std::vector<SharedTuple>& tuples) {
    const auto& f = e.field();
    ZoneShares z{e.constant(f.from_int(0)), e.constant(f.from_int(0)), e.constant(f.from_int(0))};
    for (const auto& t : tuples) {
        z.t_z = e.add(z.t_z, t.v);
        z.np_z = e.add(z.np_z, t.d);
    }
    // nc_z = count - np_z
    z.nc_z = e.add_public(e.mul_public(z.np_z, f.from_int(-1)),
                          f.from_int(static_cast<long>(tuples.size())));
    return z;
}

Share identify_s_cs(Engine& e, Share v, const mpz_class& T, const mpz_class& t_z,
                    field::SignedBound bound) {
    if (T > 0 && t_z > 0) return e.sign_test(v, bound).first;
    if (T < 0 && t_z < 0) return e.sign_test(v, bound).second;
    return e.constant(e.field().from_int(0));
}

mpz_class aggregate_user_deviation(Engine& e, const std::vector<Share>& per_period,
                                   field::SignedBound bound) {
    if (per_period.empty()) return 0;
    Share acc = per_period[0];
    for (size_t i = 1; i < per_period.size(); ++i) acc = e.add(acc, per_period[i]);
    return e.field().centered_lift(e.reconstruct(acc), bound);
}

}  // namespace lembill::mpc
