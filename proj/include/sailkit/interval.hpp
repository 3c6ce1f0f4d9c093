#pragma once

#include <algorithm>
#include <optional>

#include "sailkit/numeric.hpp"

namespace sailkit {

// Closed rational interval [lo, hi]. Endpoints are exact, so interval
// arithmetic here is itself exact; "precision" only controls how tightly
// irrational quantities (square roots, cubic roots, logarithms) are enclosed.
struct RatIv {
    Rat lo, hi;

    RatIv() : lo(0), hi(0) {}
    RatIv(const Rat& x) : lo(x), hi(x) {}
    RatIv(const Rat& l, const Rat& h) : lo(l), hi(h) {}

    Rat width() const { return hi - lo; }
    Rat mid() const { return (lo + hi) / 2; }
    bool contains_zero() const { return lo <= 0 && hi >= 0; }

    // +1 / -1 when the interval is strictly one-signed, nullopt otherwise.
    std::optional<int> sign() const {
        if (lo > 0) return 1;
        if (hi < 0) return -1;
        return std::nullopt;
    }

    RatIv operator+(const RatIv& o) const { return {lo + o.lo, hi + o.hi}; }
    RatIv operator-(const RatIv& o) const { return {lo - o.hi, hi - o.lo}; }
    RatIv operator-() const { return {-hi, -lo}; }

    RatIv operator*(const RatIv& o) const {
        Rat a = lo * o.lo, b = lo * o.hi, c = hi * o.lo, d = hi * o.hi;
        return {std::min(std::min(a, b), std::min(c, d)),
                std::max(std::max(a, b), std::max(c, d))};
    }

    RatIv operator*(const Rat& s) const {
        if (s >= 0) return {lo * s, hi * s};
        return {hi * s, lo * s};
    }

    RatIv operator+(const Rat& s) const { return {lo + s, hi + s}; }
};

inline RatIv operator*(const Rat& s, const RatIv& iv) { return iv * s; }

unsigned default_precision_bits();  // SAILKIT_PRECISION_BITS, default 128

// Encloses sqrt(r) for r >= 0 with width <= 2^-bits * max(1, sqrt(r)).
RatIv sqrt_enclosure(const Rat& r, unsigned bits);

// Encloses log(x) for an interval with lo > 0. Outward rounded.
RatIv log_enclosure(const RatIv& x, unsigned bits);

RatIv log_point(const Rat& x, unsigned bits);

}  // namespace sailkit
