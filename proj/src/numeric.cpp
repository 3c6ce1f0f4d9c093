#include "sailkit/numeric.hpp"

#include <stdexcept>

namespace sailkit {

std::optional<std::vector<std::pair<Int, unsigned>>> trial_division_factor(
    const Int& n, const Int& limit) {
    if (n <= 0) return std::nullopt;
    std::vector<std::pair<Int, unsigned>> out;
    Int m = n;
    auto strip = [&](const Int& p) {
        unsigned e = 0;
        while (m % p == 0) {
            m /= p;
            ++e;
        }
        if (e) out.emplace_back(p, e);
    };
    strip(2);
    strip(3);
    Int p = 5;
    while (p * p <= m) {
        if (p > limit) return std::nullopt;  // unfactored part too large
        strip(p);
        p += 2;
        if (p * p > m) break;
        strip(p);
        p += 4;
    }
    if (m > 1) out.emplace_back(m, 1);
    return out;
}

std::optional<Int> squarefree_part(const Int& n, const Factorizer& f) {
    if (n <= 0) return std::nullopt;
    auto fac = f ? f(n) : trial_division_factor(n);
    if (!fac) return std::nullopt;
    Int d = 1;
    for (const auto& [p, e] : *fac)
        if (e % 2) d *= p;
    return d;
}

std::optional<bool> is_squarefree(const Int& n, const Factorizer& f) {
    if (n <= 0) return std::optional<bool>(false);
    auto fac = f ? f(n) : trial_division_factor(n);
    if (!fac) return std::nullopt;
    for (const auto& [p, e] : *fac)
        if (e > 1) return false;
    return true;
}

std::string rat_to_string(const Rat& r) {
    if (r.get_den() == 1) return r.get_num().get_str();
    return r.get_num().get_str() + "/" + r.get_den().get_str();
}

Rat rat_from_string(const std::string& s) {
    Rat r;
    if (r.set_str(s, 10) != 0)
        throw std::invalid_argument("bad rational literal: " + s);
    r.canonicalize();
    return r;
}

}  // namespace sailkit
