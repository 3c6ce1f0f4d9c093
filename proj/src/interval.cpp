#include "sailkit/interval.hpp"

#include <cstdlib>

#include "sailkit/error.hpp"

namespace sailkit {

unsigned default_precision_bits() {
    static unsigned bits = [] {
        if (const char* env = std::getenv("SAILKIT_PRECISION_BITS")) {
            long v = std::atol(env);
            if (v >= 16 && v <= 1 << 20) return static_cast<unsigned>(v);
        }
        return 128u;
    }();
    return bits;
}

RatIv sqrt_enclosure(const Rat& r, unsigned bits) {
    if (r < 0) throw SailError(Err::InvalidArgument, "sqrt of negative rational");
    if (r == 0) return RatIv(Rat(0));
    // sqrt(p/q) = sqrt(p*q)/q; enclose sqrt of the integer p*q by scaled isqrt.
    Int pq = r.get_num() * r.get_den();
    Int scale = Int(1) << bits;
    Int t = isqrt(pq * scale * scale);  // t <= sqrt(pq)*2^bits < t+1
    Rat lo(t, scale * r.get_den());
    Rat hi(t + 1, scale * r.get_den());
    lo.canonicalize();
    hi.canonicalize();
    return {lo, hi};
}

namespace {

// log of x in [1, 2) via 2*atanh(z), z = (x-1)/(x+1) in [0, 1/3); the series
// tail after k terms is bounded by z^(2k+1)/((2k+1)(1-z^2)).
RatIv log_mantissa(const Rat& x, unsigned bits) {
    Rat z = (x - 1) / (x + 1);
    Rat z2 = z * z;
    Rat term = z;
    Rat sum = 0;
    Rat eps(Int(1), Int(1) << (bits + 2));
    unsigned k = 0;
    while (true) {
        sum += term / (2 * k + 1);
        Rat tail = term * z2 / ((2 * k + 3) * (1 - z2));
        if (tail < eps) {
            return {2 * sum, 2 * (sum + tail)};
        }
        term *= z2;
        ++k;
        if (k > 4 * bits + 64)
            throw SailError(Err::InvalidArgument, "log series failed to converge");
    }
}

RatIv log2_enclosure(unsigned bits) {
    // log 2 = 2 atanh(1/3)
    return log_mantissa(Rat(2), bits);
}

RatIv log_point_impl(const Rat& x, unsigned bits) {
    if (x <= 0) throw SailError(Err::InvalidArgument, "log of nonpositive value");
    // Write x = m * 2^e with m in [1, 2).
    long e = 0;
    Rat m = x;
    while (m >= 2) {
        m /= 2;
        ++e;
    }
    while (m < 1) {
        m *= 2;
        --e;
    }
    RatIv lm = log_mantissa(m, bits);
    if (e == 0) return lm;
    RatIv l2 = log2_enclosure(bits);
    return lm + l2 * Rat(e);
}

}  // namespace

RatIv log_point(const Rat& x, unsigned bits) { return log_point_impl(x, bits); }

RatIv log_enclosure(const RatIv& x, unsigned bits) {
    if (x.lo <= 0) throw SailError(Err::InvalidArgument, "log of interval touching 0");
    RatIv a = log_point_impl(x.lo, bits);
    RatIv b = log_point_impl(x.hi, bits);
    return {a.lo, b.hi};
}

}  // namespace sailkit
