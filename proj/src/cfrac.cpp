#include "sailkit/cfrac.hpp"

#include <map>

#include "sailkit/error.hpp"

namespace sailkit {

Int Expansion::max_partial_quotient() const {
    Int m = 0;
    for (const auto& q : period)
        if (q > m) m = q;
    return m;
}

Expansion expand(const Int& D) {
    auto sf = is_squarefree(D);
    if (D <= 1 || !sf || !*sf)
        throw SailError(Err::NonSquarefree, "need squarefree D > 1");
    Int r = isqrt(D);
    QuadraticSurd st{0, 1, D};
    if (D % 4 == 1) st = {-1, 2, D};  // -conj(omega) = (-1 + sqrt D)/2
    Expansion e;
    e.d = D;

    auto step = [&](QuadraticSurd& s) {
        if (s.Q <= 0) throw SailError(Err::DegenerateInput, "surd iteration left Q > 0");
        Int u = floor_div(s.P + r, s.Q);
        Int P2 = u * s.Q - s.P;
        Int Q2 = (D - P2 * P2) / s.Q;
        s = {P2, Q2, D};
        return u;
    };

    e.u0 = step(st);
    QuadraticSurd first = st;
    while (true) {
        Int u = step(st);
        e.period.push_back(u);
        if (st.P == first.P && st.Q == first.Q) break;
        if (e.period.size() > 1u << 24)
            throw SailError(Err::DegenerateInput, "period detection failed");
    }
    // eq:us sanity: u_s = 2u0 (D = 2,3 mod 4) or 2u0+1 (D = 1 mod 4)
    Int want = D % 4 == 1 ? Int(2 * e.u0 + 1) : Int(2 * e.u0);
    if (e.period.back() != want)
        throw SailError(Err::DegenerateInput, "last partial quotient violates 2u0 rule");
    return e;
}

ContinuedFraction::ContinuedFraction(const Int& D)
    : ContinuedFraction(Field::make(FieldDescriptor::quadratic(D))) {}

ContinuedFraction::ContinuedFraction(FieldPtr field) : field_(std::move(field)) {
    if (field_->kind() != FieldKind::Quadratic)
        throw SailError(Err::WrongFieldKind, "continued fractions need a quadratic field");
    exp_ = expand(field_->descriptor().d1);
    conv_.push_back({-1, 1, 0, field_->one()});  // beta_{-1} = 1
}

FieldElement ContinuedFraction::omega() const { return field_->integral_basis()[1]; }

FieldElement ContinuedFraction::omega_conj() const {
    return field_->galois_conjugate(omega(), 1);
}

void ContinuedFraction::ensure_convergents(long i) const {
    std::lock_guard<std::mutex> lk(mu_);
    while (static_cast<long>(conv_.size()) - 2 < i) {
        long next = static_cast<long>(conv_.size()) - 1;  // index being built
        Int u = exp_.u(static_cast<size_t>(next));
        Int s = next == 0 ? u : Int(u * conv_.back().s + conv_[conv_.size() - 2].s);
        Int t = next == 0 ? Int(1) : Int(u * conv_.back().t + conv_[conv_.size() - 2].t);
        FieldElement beta = field_->from_rational(Rat(s)) + omega() * Rat(t);
        conv_.push_back({next, s, t, beta});
    }
}

Convergent ContinuedFraction::convergent(long i) const {
    if (i < -1) throw SailError(Err::IndexOutOfRange, "convergent index >= -1");
    ensure_convergents(i);
    std::lock_guard<std::mutex> lk(mu_);
    return conv_[static_cast<size_t>(i + 1)];
}

std::vector<Convergent> ContinuedFraction::convergents(long count) const {
    std::vector<Convergent> out;
    for (long i = -1; i < count - 1; ++i) out.push_back(convergent(i));
    return out;
}

FieldElement ContinuedFraction::semiconvergent(long i, const Int& l) const {
    if (i < -1) throw SailError(Err::IndexOutOfRange, "semiconvergent index >= -1");
    if (l < 0 || l > exp_.u(static_cast<size_t>(i + 2)))
        throw SailError(Err::IndexOutOfRange, "semiconvergent step 0 <= l <= u_{i+2}");
    Convergent a = convergent(i), b = convergent(i + 1);
    Int s = a.s + l * b.s, t = a.t + l * b.t;
    return field_->from_rational(Rat(s)) + omega() * Rat(t);
}

FieldElement ContinuedFraction::delta(long i) const {
    Convergent c = convergent(i);
    // (s_i + t_i conj(omega)) divided by 2 sqrt(D) or sqrt(D)
    FieldElement num = field_->from_rational(Rat(c.s)) + omega_conj() * Rat(c.t);
    Rat scale = field_->descriptor().d1 % 4 == 1 ? Rat(1) : Rat(2);
    FieldElement denom = field_->radical(1) * scale;
    FieldElement d = num * denom.inverse();
    if ((i % 2 + 2) % 2 == 0) d = -d;  // (-1)^(i+1)
    return d;
}

FieldElement ContinuedFraction::fundamental_unit() const {
    FieldElement eps = convergent(static_cast<long>(exp_.s()) - 1).beta;
    Rat n = field_->norm(eps);
    int want = exp_.s() % 2 ? -1 : 1;
    if (n != want)
        throw SailError(Err::DegenerateInput, "fundamental unit norm mismatch");
    return eps;
}

int ContinuedFraction::fundamental_unit_norm() const { return exp_.s() % 2 ? -1 : 1; }

FieldElement ContinuedFraction::totally_positive_unit() const {
    FieldElement eps = fundamental_unit();
    if (fundamental_unit_norm() == 1) return eps;
    return eps * eps;
}

FieldElement ContinuedFraction::canonical_associate(const FieldElement& a) const {
    if (!field_->totally_positive(a))
        throw SailError(Err::InvalidArgument, "canonical associate needs alpha >> 0");
    FieldElement eps = totally_positive_unit();
    FieldElement eps_conj = field_->galois_conjugate(eps, 1);
    FieldElement x = a;
    // window tau1/tau2 in [1, tau1(eps)/tau2(eps)); tau1 - tau2 has the sign
    // of the sqrt(D) coordinate
    while (x.coord(1) < 0) x = x * eps;
    while ((x * eps_conj).coord(1) >= 0) x = x * eps_conj;
    return x;
}

bool ContinuedFraction::same_unit_class(const FieldElement& a,
                                        const FieldElement& b) const {
    return canonical_associate(a) == canonical_associate(b);
}

ContinuedFraction::IndecomposableSet ContinuedFraction::indecomposables() const {
    long s = static_cast<long>(exp_.s());
    long window = s % 2 ? 2 * s : s;  // index shift of the totally positive unit
    std::vector<FieldElement> raw;
    for (long i = -1; i <= window - 3; i += 2) {
        Int top = exp_.u(static_cast<size_t>(i + 2));
        for (Int l = 1; l <= top; ++l) raw.push_back(semiconvergent(i, l));
    }
    if (raw.empty()) raw.push_back(field_->one());
    // conjugates of upper semiconvergents are again totally positive
    size_t base = raw.size();
    for (size_t k = 0; k < base; ++k) raw.push_back(field_->galois_conjugate(raw[k], 1));

    IndecomposableSet out;
    std::map<std::vector<Rat>, int> seen;
    auto cls = [&](const FieldElement& e) {
        FieldElement c = canonical_associate(e);
        auto it = seen.find(c.coords());
        if (it != seen.end()) return it->second;
        int id = static_cast<int>(out.reps.size());
        seen.emplace(c.coords(), id);
        out.reps.push_back(c);
        return id;
    };
    for (size_t k = 0; k < raw.size(); ++k) cls(raw[k]);
    for (size_t k = 0; k < out.reps.size(); ++k)
        out.conjugate_class.push_back(cls(field_->galois_conjugate(out.reps[k], 1)));
    return out;
}

}  // namespace sailkit
