#pragma once

// Small deterministic generator for property-style tests.

#include <cstdint>

#include "sailkit/field.hpp"

struct TestRng {
    uint64_t s;
    explicit TestRng(uint64_t seed) : s(seed ? seed : 0x9e3779b97f4a7c15ull) {}
    uint64_t next() {
        s ^= s << 13;
        s ^= s >> 7;
        s ^= s << 17;
        return s;
    }
    long range(long lo, long hi) {  // inclusive
        return lo + static_cast<long>(next() % static_cast<uint64_t>(hi - lo + 1));
    }
};

inline sailkit::Rat random_rat(TestRng& rng, long mag) {
    long num = rng.range(-mag, mag);
    long den = rng.range(1, 4);
    sailkit::Rat r(num, den);
    r.canonicalize();
    return r;
}

inline sailkit::FieldElement random_element(TestRng& rng, const sailkit::Field& K,
                                            long mag) {
    std::vector<sailkit::Rat> c;
    for (unsigned i = 0; i < K.degree(); ++i) c.push_back(random_rat(rng, mag));
    return K.element(std::move(c));
}
