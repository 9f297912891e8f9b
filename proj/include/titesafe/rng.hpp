// rng.hpp — deterministic, platform-independent RNG with per-replication streams.
#pragma once
#include <cstdint>

namespace titesafe {

inline uint64_t splitmix64(uint64_t& state) {
    uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

// xoshiro256++ seeded via splitmix64.
class Rng {
public:
    explicit Rng(uint64_t seed) {
        uint64_t sm = seed;
        for (auto& w : s_) w = splitmix64(sm);
    }
    // stream for replication `rep` under a master seed
    static Rng stream(uint64_t master_seed, uint64_t rep) {
        uint64_t sm = master_seed;
        uint64_t base = splitmix64(sm);
        return Rng(base ^ (0x9e3779b97f4a7c15ULL * (rep + 1)));
    }
    uint64_t next_u64() {
        auto rotl = [](uint64_t x, int k) { return (x << k) | (x >> (64 - k)); };
        uint64_t result = rotl(s_[0] + s_[3], 23) + s_[0];
        uint64_t t = s_[1] << 17;
        s_[2] ^= s_[0];
        s_[3] ^= s_[1];
        s_[1] ^= s_[2];
        s_[0] ^= s_[3];
        s_[2] ^= t;
        s_[3] = rotl(s_[3], 45);
        return result;
    }
    // uniform in [0,1)
    double next_double() { return (next_u64() >> 11) * 0x1.0p-53; }

private:
    uint64_t s_[4];
};

}  // namespace titesafe
