#pragma once

// Deterministic RNG with platform-independent draws. std::*_distribution is
// implementation-defined, so the integer/real mappings live here; a given
// seed must reproduce runs bit-for-bit everywhere.

#include <cstdint>
#include <vector>

#include "bw/scalar.hpp"

namespace bw {

inline std::uint64_t splitmix64(std::uint64_t& state) {
    std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

class Rng {
  public:
    explicit Rng(std::uint64_t seed) : state_(seed ^ 0xa5a5a5a5deadbeefULL) {
        // warm up so nearby seeds decorrelate
        for (int i = 0; i < 4; ++i) splitmix64(state_);
    }

    std::uint64_t next() { return splitmix64(state_); }

    // uniform in [0, 1)
    double uniform() { return double(next() >> 11) * 0x1.0p-53; }

    // uniform integer in [lo, hi] inclusive
    long uniform_int(long lo, long hi) {
        std::uint64_t span = std::uint64_t(hi - lo) + 1;
        return lo + long(next() % span);
    }

    Cplx disk(double radius) {
        // rejection-free: sqrt for uniform area density
        double r = radius * std::sqrt(uniform());
        double a = 2.0 * 3.14159265358979323846 * uniform();
        return Cplx(r * std::cos(a), r * std::sin(a));
    }

    // n distinct integers in [lo, hi]
    std::vector<long> distinct_ints(int n, long lo, long hi) {
        std::vector<long> out;
        while ((int)out.size() < n) {
            long v = uniform_int(lo, hi);
            bool dup = false;
            for (long u : out) dup = dup || (u == v);
            if (!dup) out.push_back(v);
        }
        return out;
    }

    // derive an independent stream, e.g. one per solver start
    Rng derive(std::uint64_t salt) const {
        std::uint64_t s = state_ ^ 0x9604962bf34ad219ULL;
        return Rng(s + 0x9e3779b97f4a7c15ULL * (salt + 1));
    }

  private:
    std::uint64_t state_;
};

} // namespace bw
