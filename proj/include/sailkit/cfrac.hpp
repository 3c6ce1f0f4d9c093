#pragma once

#include <vector>

#include "sailkit/field.hpp"

namespace sailkit {

// State (P + sqrt(D))/Q of the surd iteration; Q divides D - P^2.
struct QuadraticSurd {
    Int P, Q, D;
};

// Periodic continued fraction of -conj(omega_D) = [u0; u1..us].
struct Expansion {
    Int d;
    Int u0;
    std::vector<Int> period;

    size_t s() const { return period.size(); }
    // u_i with the periodic extension, i >= 0
    Int u(size_t i) const { return i == 0 ? u0 : period[(i - 1) % period.size()]; }
    Int max_partial_quotient() const;
};

Expansion expand(const Int& D);

struct Convergent {
    long i;  // index >= -1
    Int s, t;
    FieldElement beta;  // s + t * omega_D
};

// Continued-fraction data of one real quadratic field, with the convergents,
// semiconvergents, codifferent elements delta_i and the unit and
// indecomposable structure derived from them.
class ContinuedFraction {
  public:
    explicit ContinuedFraction(const Int& D);
    ContinuedFraction(FieldPtr field);

    const Expansion& expansion() const { return exp_; }
    const Field& field() const { return *field_; }
    FieldPtr field_ptr() const { return field_; }

    FieldElement omega() const;       // omega_D
    FieldElement omega_conj() const;  // its conjugate

    Convergent convergent(long i) const;  // i >= -1
    std::vector<Convergent> convergents(long count) const;  // indices -1..count-2
    FieldElement semiconvergent(long i, const Int& l) const;  // beta_{i,l}

    // delta_i = (-1)^(i+1) (s_i + t_i conj(omega)) / (2 sqrt D)   (D = 2,3 mod 4)
    //         = (-1)^(i+1) (s_i + t_i conj(omega)) / (sqrt D)     (D = 1 mod 4)
    // normalized so that Tr(delta_{i+1} beta_{i,l}) = 1 and
    // sgn(delta_{i+1}) = sgn(beta_{i,l}).
    FieldElement delta(long i) const;

    FieldElement fundamental_unit() const;  // beta_{s-1}, the unit > 1
    int fundamental_unit_norm() const;      // (-1)^s
    // generator of the totally positive units: eps if N(eps) = 1, else eps^2
    FieldElement totally_positive_unit() const;

    Int max_partial_quotient() const { return exp_.max_partial_quotient(); }

    // Canonical representative of alpha modulo totally positive units
    // (unique associate with tau1/tau2 in [1, tau1(eps+)/tau2(eps+))).
    FieldElement canonical_associate(const FieldElement& alpha) const;
    bool same_unit_class(const FieldElement& a, const FieldElement& b) const;

    struct IndecomposableSet {
        std::vector<FieldElement> reps;  // totally positive, one per class
        // class index of the conjugate of each representative
        std::vector<int> conjugate_class;
    };
    // Upper semiconvergents over one period of the totally positive unit
    // action, together with their conjugates, deduplicated modulo totally
    // positive units.
    IndecomposableSet indecomposables() const;

  private:
    FieldPtr field_;
    Expansion exp_;
    mutable std::vector<Convergent> conv_;  // cache from index -1
    mutable std::mutex mu_;
    void ensure_convergents(long i) const;
};

}  // namespace sailkit
