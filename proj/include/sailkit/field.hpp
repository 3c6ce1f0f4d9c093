#pragma once

#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

#include "sailkit/error.hpp"
#include "sailkit/interval.hpp"
#include "sailkit/numeric.hpp"

namespace sailkit {

enum class FieldKind { Quadratic, Biquadratic, SimplestCubic };

// Which number field: Quadratic(D), Biquadratic(D1, D2) with the radical
// basis ordered (1, sqrt(D1), sqrt(D2), sqrt(D3)), or SimplestCubic(a) for
// x^3 - a x^2 - (a+3) x - 1. The biquadratic pair is kept in the given order;
// it fixes the basis and the embedding convention.
struct FieldDescriptor {
    FieldKind kind;
    Int d1;  // D, D1, or a
    Int d2;  // D2 (biquadratic only)

    static FieldDescriptor quadratic(const Int& d) {
        return {FieldKind::Quadratic, d, 0};
    }
    static FieldDescriptor biquadratic(const Int& d1, const Int& d2) {
        return {FieldKind::Biquadratic, d1, d2};
    }
    static FieldDescriptor simplest_cubic(const Int& a) {
        return {FieldKind::SimplestCubic, a, 0};
    }

    bool operator==(const FieldDescriptor& o) const {
        return kind == o.kind && d1 == o.d1 && d2 == o.d2;
    }
    std::string str() const;
};

class Field;

// Exact element of K, stored as rational coordinates in the Q-radical basis:
// (1, sqrt(D)) / (1, sqrt(D1), sqrt(D2), sqrt(D3)) / (1, rho, rho^2).
class FieldElement {
  public:
    FieldElement() : field_(nullptr) {}
    FieldElement(const Field* f, std::vector<Rat> coords)
        : field_(f), c_(std::move(coords)) {}

    const Field& field() const { return *field_; }
    const std::vector<Rat>& coords() const { return c_; }
    const Rat& coord(size_t i) const { return c_[i]; }
    bool is_zero() const;

    FieldElement operator+(const FieldElement& o) const;
    FieldElement operator-(const FieldElement& o) const;
    FieldElement operator-() const;
    FieldElement operator*(const FieldElement& o) const;
    FieldElement operator+(const Rat& r) const;
    FieldElement operator-(const Rat& r) const;
    FieldElement operator*(const Rat& r) const;
    FieldElement inverse() const;
    FieldElement operator/(const FieldElement& o) const { return *this * o.inverse(); }
    FieldElement pow(long e) const;

    bool operator==(const FieldElement& o) const;
    bool operator!=(const FieldElement& o) const { return !(*this == o); }
    bool operator<(const FieldElement& o) const;  // lexicographic on coords

    std::string str() const;

  private:
    const Field* field_;
    std::vector<Rat> c_;
};

using SignatureVector = std::vector<uint8_t>;  // F_2 bits, 0 <=> positive

inline SignatureVector sig_add(const SignatureVector& a, const SignatureVector& b) {
    SignatureVector r(a.size());
    for (size_t i = 0; i < a.size(); ++i) r[i] = a[i] ^ b[i];
    return r;
}

struct Box {
    std::vector<Rat> lo, hi;
};

class Field {
  public:
    // Constructs the field with its integral basis, discriminant and
    // embedding data. The returned object owns all derived tables; elements
    // keep a plain pointer to it, so keep the shared_ptr alive.
    static std::shared_ptr<const Field> make(const FieldDescriptor& desc,
                                             bool assume_monogenic = false,
                                             const Factorizer& factorizer = nullptr);

    const FieldDescriptor& descriptor() const { return desc_; }
    FieldKind kind() const { return desc_.kind; }
    unsigned degree() const { return n_; }
    const Int& discriminant() const { return disc_; }
    const Int& d3() const { return d3_; }  // biquadratic only
    bool monogenic_certified() const { return monogenic_certified_; }

    // Integral basis, as elements in the radical basis. For Biquadratic(5, p)
    // family fields this reproduces the Williams basis
    // {1, (1+sqrt 5)/2, sqrt p, (sqrt p + sqrt r)/2}.
    const std::vector<FieldElement>& integral_basis() const { return basis_; }
    // Trace-dual of the integral basis; spans the codifferent.
    const std::vector<FieldElement>& codifferent_basis() const { return dual_basis_; }

    FieldElement zero() const;
    FieldElement one() const;
    FieldElement from_rational(const Rat& r) const;
    FieldElement element(std::vector<Rat> radical_coords) const;
    // Element with the given coordinates in the *integral* basis.
    FieldElement from_integral_coords(const std::vector<Int>& c) const;
    // sqrt(D_j) as an element; j in 1..3 for biquadratic, j = 1 quadratic.
    FieldElement radical(unsigned j) const;

    // --- arithmetic backends (operators on FieldElement forward here) ---
    FieldElement add(const FieldElement& a, const FieldElement& b) const;
    FieldElement sub(const FieldElement& a, const FieldElement& b) const;
    FieldElement neg(const FieldElement& a) const;
    FieldElement mul(const FieldElement& a, const FieldElement& b) const;
    FieldElement inv(const FieldElement& a) const;

    Rat trace(const FieldElement& a) const;
    Rat norm(const FieldElement& a) const;

    // Coordinates of a in the integral basis (exact rationals).
    std::vector<Rat> integral_coords(const FieldElement& a) const;
    bool is_integral(const FieldElement& a) const;
    bool is_in_codifferent(const FieldElement& a) const;
    bool is_unit(const FieldElement& a) const;

    // Exact sign of the i-th embedding (0-based, paper order). Decided by
    // adaptive rational interval refinement; termination is guaranteed by the
    // exact zero predicate, so the result is precision-independent.
    int sign_at_embedding(const FieldElement& a, unsigned i) const;
    // Independent algebraic route (nested squaring / coordinate tests),
    // used as a cross-check oracle in tests.
    int exact_sign_oracle(const FieldElement& a, unsigned i) const;

    SignatureVector signature(const FieldElement& a) const;
    bool totally_positive(const FieldElement& a) const;

    // Rational enclosure of the i-th embedding at the given precision.
    RatIv embedding_iv(const FieldElement& a, unsigned i, unsigned bits) const;

    // Galois conjugation. Biquadratic: sigma_i fixes sqrt(D_i) (i in 1..3).
    // Quadratic: i = 1 is the nontrivial conjugation.
    FieldElement galois_conjugate(const FieldElement& a, unsigned i) const;

    // Exact square root in K if one exists.
    std::optional<FieldElement> sqrt(const FieldElement& a) const;

    // All alpha in O_K with lo_i < tau_i(alpha) < hi_i (strict).
    std::vector<FieldElement> enumerate_integers_in_box(
        const Box& box, const Int& cap = Int(100000000)) const;

    // Multiplication constants of the radical basis (biquadratic):
    // sqrt(D1)sqrt(D2) = g sqrt(D3), sqrt(D1)sqrt(D3) = a sqrt(D2),
    // sqrt(D2)sqrt(D3) = b sqrt(D1).
    const Int& radical_g() const { return g_; }
    const Int& radical_a() const { return ra_; }
    const Int& radical_b() const { return rb_; }

    ~Field();

  private:
    Field() = default;
    void init_quadratic();
    void init_biquadratic(const Factorizer& factorizer);
    void init_cubic(bool assume_monogenic, const Factorizer& factorizer);
    void finish_init();  // dual basis, discriminant, checks

    RatIv radical_iv(unsigned j, unsigned bits) const;  // sqrt(D_j) or rho^j
    RatIv root_power_iv(unsigned emb, unsigned power, unsigned bits) const;
    bool exact_zero(const FieldElement& a) const;

    FieldDescriptor desc_;
    unsigned n_ = 0;
    Int disc_;
    Int d3_ = 0;
    Int g_ = 1, ra_ = 1, rb_ = 1;
    bool monogenic_certified_ = true;
    std::vector<FieldElement> basis_;
    std::vector<FieldElement> dual_basis_;
    std::vector<std::vector<Rat>> basis_mat_inv_;  // radical -> integral coords
    // Embedding sign of each radical at each embedding (quadratic/biquadratic).
    std::vector<std::vector<int>> emb_sign_;
    // Cubic root enclosures per embedding, by precision (cache).
    mutable std::mutex cache_mu_;
    mutable std::vector<std::pair<unsigned, std::vector<RatIv>>> root_cache_;
    mutable std::vector<std::pair<unsigned, std::vector<RatIv>>> radical_cache_;
};

using FieldPtr = std::shared_ptr<const Field>;

}  // namespace sailkit
