#pragma once
#include <cstdint>
#include <stdexcept>
#include <string>

namespace lembill {

struct Error : std::runtime_error {
    explicit Error(const std::string& what) : std::runtime_error(what) {}
};

// Deterministic splittable RNG. splitmix64 core; derive() gives an
// independent substream so per-user randomness does not depend on
// iteration order.
class Rng {
public:
    explicit Rng(uint64_t seed) : state_(seed) {}

    uint64_t next_u64() {
        uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    // value in [0, bound), bound > 0, rejection-sampled (no modulo bias)
    uint64_t next_below(uint64_t bound) {
        if (bound == 0) throw Error("Rng::next_below: zero bound");
        uint64_t mask = ~0ULL;
        if (bound & (bound - 1)) {
            unsigned bits = 64;
            while (bits > 1 && (bound - 1) >> (bits - 1) == 0) --bits;
            mask = (bits == 64) ? ~0ULL : ((1ULL << bits) - 1);
        } else {
            return next_u64() & (bound - 1);
        }
        for (;;) {
            uint64_t v = next_u64() & mask;
            if (v < bound) return v;
        }
    }

    int64_t next_in(int64_t lo, int64_t hi) {  // inclusive range
        return lo + static_cast<int64_t>(next_below(static_cast<uint64_t>(hi - lo + 1)));
    }

    Rng derive(uint64_t tag) {
        uint64_t z = state_ ^ (0x243f6a8885a308d3ULL + tag * 0x452821e638d01377ULL);
        Rng child(z);
        child.next_u64();
        return child;
    }

private:
    uint64_t state_;
};

}  // namespace lembill
