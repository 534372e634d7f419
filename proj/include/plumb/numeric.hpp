#pragma once

#include <gmpxx.h>

#include <string>
#include <vector>

namespace plumb {

using Int = mpz_class;
using Rat = mpq_class;

// Smallest s >= 0 with s*s >= x.  Requires x >= 0.
inline Int isqrt_ceil(const Int& x) {
    Int r;
    mpz_sqrt(r.get_mpz_t(), x.get_mpz_t());
    if (r * r < x) r += 1;
    return r;
}

// ceil(x) for a rational x.
inline Int rat_ceil(const Rat& x) {
    Int q;
    mpz_cdiv_q(q.get_mpz_t(), x.get_num().get_mpz_t(), x.get_den().get_mpz_t());
    return q;
}

// floor(x) for a rational x.
inline Int rat_floor(const Rat& x) {
    Int q;
    mpz_fdiv_q(q.get_mpz_t(), x.get_num().get_mpz_t(), x.get_den().get_mpz_t());
    return q;
}

// Upper bound on sqrt(x) as a rational: isqrt on numerator*denominator,
// exact when x is a perfect square of a rational with the same denominator.
inline Rat sqrt_upper(const Rat& x) {
    Rat r(isqrt_ceil(x.get_num() * x.get_den()), x.get_den());
    r.canonicalize();
    return r;
}

inline std::string to_string(const Int& x) { return x.get_str(); }

// "p/q" with q > 0 reduced, plain "p" when q == 1.
inline std::string to_string(const Rat& x) { return x.get_str(); }

using CycleVec = std::vector<Int>;     // integral cycle, dense in vertex order
using RatCycleVec = std::vector<Rat>;  // rational cycle, dense in vertex order

inline RatCycleVec to_rat(const CycleVec& l) {
    RatCycleVec r(l.size());
    for (size_t i = 0; i < l.size(); ++i) r[i] = Rat(l[i]);
    return r;
}

inline bool is_zero(const CycleVec& l) {
    for (const auto& c : l)
        if (c != 0) return false;
    return true;
}

inline bool is_zero(const RatCycleVec& l) {
    for (const auto& c : l)
        if (c != 0) return false;
    return true;
}

// Deterministic splitmix64; used wherever reproducible pseudo-randomness is
// needed (generator, property tests).  Not a crypto RNG.
struct SplitMix64 {
    unsigned long long state;
    explicit SplitMix64(unsigned long long seed) : state(seed) {}
    unsigned long long next() {
        unsigned long long z = (state += 0x9E3779B97F4A7C15ULL);
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
        return z ^ (z >> 31);
    }
    // Uniform in [0, n).  n > 0.
    unsigned long long below(unsigned long long n) { return next() % n; }
};

}  // namespace plumb
