#include "sailkit/field.hpp"

#include <algorithm>
#include <array>
#include <cassert>
#include <functional>
#include <sstream>

namespace sailkit {

namespace {

using Mat = std::vector<std::vector<Rat>>;

Mat mat_mul(const Mat& a, const Mat& b) {
    size_t n = a.size(), m = b[0].size(), k = b.size();
    Mat c(n, std::vector<Rat>(m, Rat(0)));
    for (size_t i = 0; i < n; ++i)
        for (size_t l = 0; l < k; ++l) {
            if (a[i][l] == 0) continue;
            for (size_t j = 0; j < m; ++j) c[i][j] += a[i][l] * b[l][j];
        }
    return c;
}

Rat mat_trace(const Mat& a) {
    Rat t(0);
    for (size_t i = 0; i < a.size(); ++i) t += a[i][i];
    return t;
}

Rat mat_det(Mat a) {
    size_t n = a.size();
    Rat det(1);
    for (size_t col = 0; col < n; ++col) {
        size_t piv = col;
        while (piv < n && a[piv][col] == 0) ++piv;
        if (piv == n) return Rat(0);
        if (piv != col) {
            std::swap(a[piv], a[col]);
            det = -det;
        }
        det *= a[col][col];
        Rat inv_p = 1 / a[col][col];
        for (size_t r = col + 1; r < n; ++r) {
            if (a[r][col] == 0) continue;
            Rat f = a[r][col] * inv_p;
            for (size_t c = col; c < n; ++c) a[r][c] -= f * a[col][c];
        }
    }
    return det;
}

// Solves a * x = rhs for square nonsingular a.
std::vector<Rat> mat_solve(Mat a, std::vector<Rat> rhs) {
    size_t n = a.size();
    for (size_t col = 0; col < n; ++col) {
        size_t piv = col;
        while (piv < n && a[piv][col] == 0) ++piv;
        if (piv == n) throw SailError(Err::DegenerateInput, "singular system");
        std::swap(a[piv], a[col]);
        std::swap(rhs[piv], rhs[col]);
        Rat inv_p = 1 / a[col][col];
        for (size_t c = col; c < n; ++c) a[col][c] *= inv_p;
        rhs[col] *= inv_p;
        for (size_t r = 0; r < n; ++r) {
            if (r == col || a[r][col] == 0) continue;
            Rat f = a[r][col];
            for (size_t c = col; c < n; ++c) a[r][c] -= f * a[col][c];
            rhs[r] -= f * rhs[col];
        }
    }
    return rhs;
}

Mat mat_inverse(const Mat& a) {
    size_t n = a.size();
    Mat inv(n, std::vector<Rat>(n, Rat(0)));
    for (size_t i = 0; i < n; ++i) {
        std::vector<Rat> e(n, Rat(0));
        e[i] = 1;
        auto col = mat_solve(a, e);
        for (size_t r = 0; r < n; ++r) inv[r][i] = col[r];
    }
    return inv;
}

// Characteristic polynomial coefficients e_1..e_n (x^n - e1 x^{n-1} + ...)
// via power sums and Newton's identities.
std::vector<Rat> char_poly_elementary(const Mat& m) {
    size_t n = m.size();
    std::vector<Rat> t(n + 1, Rat(0));
    Mat p = m;
    for (size_t k = 1; k <= n; ++k) {
        t[k] = mat_trace(p);
        if (k < n) p = mat_mul(p, m);
    }
    std::vector<Rat> e(n + 1, Rat(0));
    e[0] = 1;
    for (size_t k = 1; k <= n; ++k) {
        Rat acc(0);
        for (size_t i = 1; i <= k; ++i) {
            Rat term = e[k - i] * t[i];
            if (i % 2 == 0)
                acc -= term;
            else
                acc += term;
        }
        e[k] = acc / Rat(static_cast<long>(k));
    }
    return e;
}

int rat_sign(const Rat& r) { return sgn(r); }

// Exact sign of x + y*sqrt(D), D > 1 not a square.
int sign_quad(const Rat& x, const Rat& y, const Int& D) {
    int sx = rat_sign(x), sy = rat_sign(y);
    if (sy == 0) return sx;
    if (sx == 0) return sy;
    if (sx == sy) return sx;
    return sx * rat_sign(x * x - Rat(D) * y * y);
}

struct QuadPair {  // x + y*sqrt(D) with rational x, y
    Rat x, y;
};

QuadPair qp_mul(const QuadPair& a, const QuadPair& b, const Int& D) {
    return {a.x * b.x + Rat(D) * a.y * b.y, a.x * b.y + a.y * b.x};
}

QuadPair qp_sub(const QuadPair& a, const QuadPair& b) { return {a.x - b.x, a.y - b.y}; }

std::optional<Rat> rat_sqrt(const Rat& r) {
    if (r < 0) return std::nullopt;
    if (!is_square(r.get_num()) || !is_square(r.get_den())) return std::nullopt;
    return Rat(isqrt(r.get_num()), isqrt(r.get_den()));
}

// Square root of x + y*sqrt(D) inside Q(sqrt(D)), if it exists.
std::optional<QuadPair> qp_sqrt(const QuadPair& a, const Int& D) {
    if (a.y == 0) {
        if (auto u = rat_sqrt(a.x)) return QuadPair{*u, Rat(0)};
        if (auto v = rat_sqrt(a.x / Rat(D))) return QuadPair{Rat(0), *v};
        return std::nullopt;
    }
    Rat nrm = a.x * a.x - Rat(D) * a.y * a.y;
    auto m = rat_sqrt(nrm);
    if (!m) return std::nullopt;
    const Rat roots[2] = {Rat((a.x + *m) / 2), Rat((a.x - *m) / 2)};
    for (const Rat& root : roots) {
        if (auto u = rat_sqrt(root)) {
            if (*u == 0) continue;
            QuadPair cand{*u, a.y / (2 * *u)};
            QuadPair sq = qp_mul(cand, cand, D);
            if (sq.x == a.x && sq.y == a.y) return cand;
        }
    }
    return std::nullopt;
}

// Cubic polynomial helpers for x^3 - a x^2 - (a+3) x - 1.
Rat cubic_eval(const Int& a, const Rat& x) {
    return ((x - Rat(a)) * x - Rat(a + 3)) * x - 1;
}

// Number of sign changes of the Sturm chain at x.
struct SturmChain {
    // chains stored as coefficient vectors, low degree first
    std::vector<std::vector<Rat>> p;

    static SturmChain build(const Int& a) {
        SturmChain s;
        std::vector<Rat> f = {Rat(-1), Rat(-(a + 3)), Rat(-a), Rat(1)};
        std::vector<Rat> df = {Rat(-(a + 3)), Rat(-2 * a), Rat(3)};
        s.p.push_back(f);
        s.p.push_back(df);
        auto rem = [](std::vector<Rat> num, const std::vector<Rat>& den) {
            while (num.size() >= den.size() && !(num.size() == 1 && num[0] == 0)) {
                Rat f0 = num.back() / den.back();
                size_t off = num.size() - den.size();
                for (size_t i = 0; i < den.size(); ++i) num[off + i] -= f0 * den[i];
                while (num.size() > 1 && num.back() == 0) num.pop_back();
                if (num.size() < den.size()) break;
            }
            return num;
        };
        while (s.p.back().size() > 1) {
            auto r = rem(s.p[s.p.size() - 2], s.p.back());
            for (auto& c : r) c = -c;
            if (r.size() == 1 && r[0] == 0) break;
            s.p.push_back(r);
        }
        return s;
    }

    int changes(const Rat& x) const {
        int cnt = 0, last = 0;
        for (const auto& poly : p) {
            Rat v(0);
            for (size_t i = poly.size(); i-- > 0;) v = v * x + poly[i];
            int sv = rat_sign(v);
            if (sv == 0) continue;
            if (last != 0 && sv != last) ++cnt;
            last = sv;
        }
        return cnt;
    }

    int roots_in(const Rat& lo, const Rat& hi) const { return changes(lo) - changes(hi); }
};

}  // namespace

// ---------------------------------------------------------------------------
// FieldDescriptor / FieldElement
// ---------------------------------------------------------------------------

std::string FieldDescriptor::str() const {
    std::ostringstream os;
    switch (kind) {
        case FieldKind::Quadratic: os << "Q(sqrt(" << d1 << "))"; break;
        case FieldKind::Biquadratic:
            os << "Q(sqrt(" << d1 << "),sqrt(" << d2 << "))";
            break;
        case FieldKind::SimplestCubic: os << "SimplestCubic(a=" << d1 << ")"; break;
    }
    return os.str();
}

bool FieldElement::is_zero() const {
    for (const auto& c : c_)
        if (c != 0) return false;
    return true;
}

FieldElement FieldElement::operator+(const FieldElement& o) const {
    return field_->add(*this, o);
}
FieldElement FieldElement::operator-(const FieldElement& o) const {
    return field_->sub(*this, o);
}
FieldElement FieldElement::operator-() const { return field_->neg(*this); }
FieldElement FieldElement::operator*(const FieldElement& o) const {
    return field_->mul(*this, o);
}
FieldElement FieldElement::operator+(const Rat& r) const {
    auto c = c_;
    c[0] += r;
    return {field_, std::move(c)};
}
FieldElement FieldElement::operator-(const Rat& r) const { return *this + (-r); }
FieldElement FieldElement::operator*(const Rat& r) const {
    auto c = c_;
    for (auto& x : c) x *= r;
    return {field_, std::move(c)};
}
FieldElement FieldElement::inverse() const { return field_->inv(*this); }

FieldElement FieldElement::pow(long e) const {
    FieldElement base = e < 0 ? inverse() : *this;
    unsigned long k = e < 0 ? -static_cast<unsigned long>(e) : e;
    FieldElement acc = field_->one();
    while (k) {
        if (k & 1) acc = acc * base;
        base = base * base;
        k >>= 1;
    }
    return acc;
}

bool FieldElement::operator==(const FieldElement& o) const {
    return field_->descriptor() == o.field_->descriptor() && c_ == o.c_;
}

bool FieldElement::operator<(const FieldElement& o) const {
    for (size_t i = 0; i < c_.size(); ++i) {
        int c = cmp(c_[i], o.c_[i]);
        if (c != 0) return c < 0;
    }
    return false;
}

std::string FieldElement::str() const {
    std::ostringstream os;
    os << "[";
    for (size_t i = 0; i < c_.size(); ++i) {
        if (i) os << ", ";
        os << rat_to_string(c_[i]);
    }
    os << "]";
    return os.str();
}

// ---------------------------------------------------------------------------
// Field construction
// ---------------------------------------------------------------------------

Field::~Field() = default;

std::shared_ptr<const Field> Field::make(const FieldDescriptor& desc,
                                         bool assume_monogenic,
                                         const Factorizer& factorizer) {
    auto f = std::shared_ptr<Field>(new Field());
    f->desc_ = desc;
    switch (desc.kind) {
        case FieldKind::Quadratic: f->init_quadratic(); break;
        case FieldKind::Biquadratic: f->init_biquadratic(factorizer); break;
        case FieldKind::SimplestCubic: f->init_cubic(assume_monogenic, factorizer); break;
    }
    f->finish_init();
    return f;
}

void Field::init_quadratic() {
    const Int& D = desc_.d1;
    if (D <= 1) throw SailError(Err::NonSquarefree, "need D > 1, got " + D.get_str());
    auto sf = is_squarefree(D);
    if (!sf || !*sf)
        throw SailError(Err::NonSquarefree, "D = " + D.get_str() + " is not squarefree");
    n_ = 2;
    emb_sign_ = {{1}, {-1}};
    if (D % 4 == 1)
        basis_ = {one(), element({Rat(1, 2), Rat(1, 2)})};  // 1, (1+sqrt D)/2
    else
        basis_ = {one(), element({Rat(0), Rat(1)})};
}

void Field::init_biquadratic(const Factorizer& factorizer) {
    const Int &D1 = desc_.d1, &D2 = desc_.d2;
    if (D1 <= 1 || D2 <= 1)
        throw SailError(Err::NonSquarefree, "radicands must exceed 1");
    for (const Int& d : {D1, D2}) {
        auto sf = is_squarefree(d, factorizer);
        if (!sf)
            throw SailError(Err::NonSquarefree,
                            "cannot certify squarefreeness of " + d.get_str());
        if (!*sf)
            throw SailError(Err::NonSquarefree, d.get_str() + " is not squarefree");
    }
    if (D1 == D2)
        throw SailError(Err::DegenerateBiquadratic, "equal radicands");
    n_ = 4;
    g_ = gcd(D1, D2);
    ra_ = D1 / g_;
    rb_ = D2 / g_;
    d3_ = ra_ * rb_;
    if (d3_ <= 1 || d3_ == D1 || d3_ == D2)
        throw SailError(Err::DegenerateBiquadratic,
                        "sqrt(" + D1.get_str() + "), sqrt(" + D2.get_str() +
                            ") do not generate a quartic field");
    // Embedding order fixed as in the element notation a+b*sqrt(D1)+c*sqrt(D2)
    // +d*sqrt(D3): tau_1 = (+,+,+), tau_2 = (-,+,-), tau_3 = (+,-,-),
    // tau_4 = (-,-,+).
    emb_sign_ = {{1, 1, 1}, {-1, 1, -1}, {1, -1, -1}, {-1, -1, 1}};

    // Integral basis by closure: an element (x + y sqrt(D1) + z sqrt(D2) +
    // w sqrt(D3))/4 is integral iff its characteristic polynomial has integer
    // coefficients; O_K lies inside the 1/4-lattice, so scanning the 256
    // residues and taking the HNF span is exhaustive.
    std::vector<std::array<Int, 4>> rows;
    for (int i = 0; i < 4; ++i) {
        std::array<Int, 4> r{0, 0, 0, 0};
        r[i] = 4;
        rows.push_back(r);
    }
    for (int x = 0; x < 4; ++x)
        for (int y = 0; y < 4; ++y)
            for (int z = 0; z < 4; ++z)
                for (int w = 0; w < 4; ++w) {
                    if (!x && !y && !z && !w) continue;
                    FieldElement cand = element(
                        {ratq(x, 4), ratq(y, 4), ratq(z, 4), ratq(w, 4)});
                    Mat m(4, std::vector<Rat>(4));
                    // multiplication matrix on the radical basis
                    for (int j = 0; j < 4; ++j) {
                        std::vector<Rat> ej(4, Rat(0));
                        ej[j] = 1;
                        auto col = mul(cand, element(ej)).coords();
                        for (int r = 0; r < 4; ++r) m[r][j] = col[r];
                    }
                    auto e = char_poly_elementary(m);
                    bool integral = true;
                    for (size_t k = 1; k < e.size(); ++k)
                        if (e[k].get_den() != 1) {
                            integral = false;
                            break;
                        }
                    if (integral) rows.push_back({Int(x), Int(y), Int(z), Int(w)});
                }

    // Row HNF with pivots taken from the last column backwards; this yields
    // the basis in the order (1, quadratic part, sqrt(D2) part, mixed) and
    // reproduces the Williams basis for the Q(sqrt 5, sqrt p) family.
    auto reduce = [&](std::vector<std::array<Int, 4>>& basis_rows) {
        std::vector<std::array<Int, 4>> result;
        std::vector<std::array<Int, 4>> work = basis_rows;
        for (int col = 3; col >= 0; --col) {
            // gcd of column entries via repeated combination
            int best = -1;
            for (size_t r = 0; r < work.size(); ++r) {
                if (work[r][col] == 0) continue;
                if (best < 0 || abs(work[r][col]) < abs(work[best][col])) best = r;
            }
            if (best < 0) continue;
            bool changed = true;
            while (changed) {
                changed = false;
                for (size_t r = 0; r < work.size(); ++r) {
                    if (static_cast<int>(r) == best || work[r][col] == 0) continue;
                    Int q = floor_div(work[r][col], work[best][col]);
                    for (int c = 0; c < 4; ++c) work[r][c] -= q * work[best][c];
                    if (work[r][col] != 0) {
                        best = r;
                        changed = true;
                    }
                }
            }
            auto piv = work[best];
            if (piv[col] < 0)
                for (auto& v : piv) v = -v;
            result.push_back(piv);
            work.erase(work.begin() + best);
        }
        // reduce entries below each pivot column against later pivots
        std::reverse(result.begin(), result.end());  // pivot cols ascending
        for (size_t i = 0; i < result.size(); ++i) {
            for (size_t j = 0; j < i; ++j) {
                // pivot of row j is column j here (square triangular shape)
                const Int& p = result[j][j];
                Int q = floor_div(result[i][j], p);
                for (int c = 0; c < 4; ++c) result[i][c] -= q * result[j][c];
            }
        }
        return result;
    };
    auto hnf = reduce(rows);
    if (hnf.size() != 4)
        throw SailError(Err::DegenerateBiquadratic, "integral basis rank defect");
    basis_.clear();
    for (const auto& r : hnf)
        basis_.push_back(element({ratq(r[0], 4), ratq(r[1], 4), ratq(r[2], 4), ratq(r[3], 4)}));
}

void Field::init_cubic(bool assume_monogenic, const Factorizer& factorizer) {
    const Int& a = desc_.d1;
    if (a < -1)
        throw SailError(Err::InvalidArgument, "simplest cubic needs a >= -1");
    Int m = a * a + 3 * a + 9;
    auto sf = is_squarefree(m, factorizer);
    monogenic_certified_ = sf && *sf;
    if (!monogenic_certified_ && !assume_monogenic)
        throw SailError(Err::MonogenicityUnknown,
                        "a^2+3a+9 = " + m.get_str() +
                            " is not certified squarefree; pass assume_monogenic "
                            "to proceed with O_K = Z[rho]");
    n_ = 3;
    basis_ = {one(), element({Rat(0), Rat(1), Rat(0)}), element({Rat(0), Rat(0), Rat(1)})};
}

void Field::finish_init() {
    // radical -> integral coordinate change
    Mat b(n_, std::vector<Rat>(n_));
    for (unsigned j = 0; j < n_; ++j)
        for (unsigned i = 0; i < n_; ++i) b[i][j] = basis_[j].coord(i);
    basis_mat_inv_ = mat_inverse(b);

    // trace-dual basis: solve Tr(x * b_j) = delta_ij over radical coords
    Mat tr(n_, std::vector<Rat>(n_));
    for (unsigned j = 0; j < n_; ++j) {
        std::vector<Rat> ek(n_, Rat(0));
        for (unsigned k = 0; k < n_; ++k) {
            ek.assign(n_, Rat(0));
            ek[k] = 1;
            tr[j][k] = trace(mul(element(ek), basis_[j]));
        }
    }
    dual_basis_.clear();
    for (unsigned i = 0; i < n_; ++i) {
        std::vector<Rat> e(n_, Rat(0));
        e[i] = 1;
        dual_basis_.push_back(element(mat_solve(tr, e)));
    }

    // discriminant = det of the trace form of the integral basis; this equals
    // the squared determinant of the embedded basis matrix, computed here by
    // exact symbolic expansion.
    Mat gram(n_, std::vector<Rat>(n_));
    for (unsigned i = 0; i < n_; ++i)
        for (unsigned j = 0; j < n_; ++j) gram[i][j] = trace(mul(basis_[i], basis_[j]));
    Rat det = mat_det(gram);
    if (det.get_den() != 1 || det == 0)
        throw SailError(Err::DegenerateInput, "bad discriminant " + rat_to_string(det));
    disc_ = det.get_num();

    // ring closure sanity: products of basis elements stay integral
    for (unsigned i = 0; i < n_; ++i)
        for (unsigned j = i; j < n_; ++j)
            if (!is_integral(mul(basis_[i], basis_[j])))
                throw SailError(Err::DegenerateInput, "integral basis not a ring");
}

// ---------------------------------------------------------------------------
// element factories
// ---------------------------------------------------------------------------

FieldElement Field::zero() const { return {this, std::vector<Rat>(n_ ? n_ : 4, Rat(0))}; }

FieldElement Field::one() const {
    std::vector<Rat> c(n_ ? n_ : 4, Rat(0));
    c[0] = 1;
    return {this, std::move(c)};
}

FieldElement Field::from_rational(const Rat& r) const {
    std::vector<Rat> c(n_, Rat(0));
    c[0] = r;
    return {this, std::move(c)};
}

FieldElement Field::element(std::vector<Rat> radical_coords) const {
    if (n_ && radical_coords.size() != n_)
        throw SailError(Err::InvalidArgument, "coordinate count mismatch");
    return {this, std::move(radical_coords)};
}

FieldElement Field::from_integral_coords(const std::vector<Int>& c) const {
    if (c.size() != n_) throw SailError(Err::InvalidArgument, "coordinate count mismatch");
    FieldElement acc = zero();
    for (unsigned i = 0; i < n_; ++i) acc = add(acc, basis_[i] * Rat(c[i]));
    return acc;
}

FieldElement Field::radical(unsigned j) const {
    std::vector<Rat> c(n_, Rat(0));
    if (kind() == FieldKind::Quadratic) {
        if (j != 1) throw SailError(Err::IndexOutOfRange, "radical index");
        c[1] = 1;
    } else if (kind() == FieldKind::Biquadratic) {
        if (j < 1 || j > 3) throw SailError(Err::IndexOutOfRange, "radical index");
        c[j] = 1;
    } else {
        throw SailError(Err::WrongFieldKind, "no radical in cubic field");
    }
    return {this, std::move(c)};
}

// ---------------------------------------------------------------------------
// arithmetic
// ---------------------------------------------------------------------------

FieldElement Field::add(const FieldElement& a, const FieldElement& b) const {
    std::vector<Rat> c(n_);
    for (unsigned i = 0; i < n_; ++i) c[i] = a.coord(i) + b.coord(i);
    return {this, std::move(c)};
}

FieldElement Field::sub(const FieldElement& a, const FieldElement& b) const {
    std::vector<Rat> c(n_);
    for (unsigned i = 0; i < n_; ++i) c[i] = a.coord(i) - b.coord(i);
    return {this, std::move(c)};
}

FieldElement Field::neg(const FieldElement& a) const {
    std::vector<Rat> c(n_);
    for (unsigned i = 0; i < n_; ++i) c[i] = -a.coord(i);
    return {this, std::move(c)};
}

FieldElement Field::mul(const FieldElement& a, const FieldElement& b) const {
    const auto& x = a.coords();
    const auto& y = b.coords();
    switch (kind()) {
        case FieldKind::Quadratic: {
            return {this,
                    {x[0] * y[0] + Rat(desc_.d1) * x[1] * y[1], x[0] * y[1] + x[1] * y[0]}};
        }
        case FieldKind::Biquadratic: {
            Rat D1(desc_.d1), D2(desc_.d2), D3(d3_);
            Rat g(g_), aa(ra_), bb(rb_);
            std::vector<Rat> c(4);
            c[0] = x[0] * y[0] + D1 * x[1] * y[1] + D2 * x[2] * y[2] + D3 * x[3] * y[3];
            c[1] = x[0] * y[1] + x[1] * y[0] + bb * (x[2] * y[3] + x[3] * y[2]);
            c[2] = x[0] * y[2] + x[2] * y[0] + aa * (x[1] * y[3] + x[3] * y[1]);
            c[3] = x[0] * y[3] + x[3] * y[0] + g * (x[1] * y[2] + x[2] * y[1]);
            return {this, std::move(c)};
        }
        case FieldKind::SimplestCubic: {
            // multiply as polynomials in rho, reduce with
            // rho^3 = a rho^2 + (a+3) rho + 1
            const Int& a0 = desc_.d1;
            std::array<Rat, 5> p{};
            for (int i = 0; i < 3; ++i)
                for (int j = 0; j < 3; ++j) p[i + j] += x[i] * y[j];
            // rho^4 = (a^2+a+3) rho^2 + (a^2+3a+1) rho + a
            p[2] += Rat(a0) * p[3] + Rat(a0 * a0 + a0 + 3) * p[4];
            p[1] += Rat(a0 + 3) * p[3] + Rat(a0 * a0 + 3 * a0 + 1) * p[4];
            p[0] += p[3] + Rat(a0) * p[4];
            return {this, {p[0], p[1], p[2]}};
        }
    }
    throw SailError(Err::WrongFieldKind, "unreachable");
}

FieldElement Field::inv(const FieldElement& a) const {
    if (a.is_zero()) throw SailError(Err::DivisionByZero, "inverse of zero");
    switch (kind()) {
        case FieldKind::Quadratic: {
            Rat nrm = norm(a);
            return {this, {a.coord(0) / nrm, -a.coord(1) / nrm}};
        }
        case FieldKind::Biquadratic: {
            // product of the three nontrivial conjugates over the norm
            FieldElement p = mul(mul(galois_conjugate(a, 1), galois_conjugate(a, 2)),
                                 galois_conjugate(a, 3));
            Rat nrm = norm(a);
            std::vector<Rat> c(4);
            for (int i = 0; i < 4; ++i) c[i] = p.coord(i) / nrm;
            return {this, std::move(c)};
        }
        case FieldKind::SimplestCubic: {
            Mat m(3, std::vector<Rat>(3));
            for (int j = 0; j < 3; ++j) {
                std::vector<Rat> ej(3, Rat(0));
                ej[j] = 1;
                auto col = mul(a, element(ej)).coords();
                for (int r = 0; r < 3; ++r) m[r][j] = col[r];
            }
            std::vector<Rat> e0 = {Rat(1), Rat(0), Rat(0)};
            return {this, mat_solve(m, e0)};
        }
    }
    throw SailError(Err::WrongFieldKind, "unreachable");
}

Rat Field::trace(const FieldElement& a) const {
    switch (kind()) {
        case FieldKind::Quadratic: return 2 * a.coord(0);
        case FieldKind::Biquadratic: return 4 * a.coord(0);
        case FieldKind::SimplestCubic: {
            const Int& t = desc_.d1;
            // Tr(rho) = a, Tr(rho^2) = a^2 + 2a + 6
            return 3 * a.coord(0) + Rat(t) * a.coord(1) +
                   Rat(t * t + 2 * t + 6) * a.coord(2);
        }
    }
    throw SailError(Err::WrongFieldKind, "unreachable");
}

Rat Field::norm(const FieldElement& a) const {
    switch (kind()) {
        case FieldKind::Quadratic:
            return a.coord(0) * a.coord(0) - Rat(desc_.d1) * a.coord(1) * a.coord(1);
        case FieldKind::Biquadratic: {
            // alpha = A + B sqrt(D2) with A = a0 + a1 sqrt(D1) and, since
            // sqrt(D3) = sqrt(D1) sqrt(D2) / g, B = a2 + (a3/g) sqrt(D1);
            // N = N_{Q(sqrt D1)/Q}(A^2 - D2 B^2).
            QuadPair A{a.coord(0), a.coord(1)};
            QuadPair B{a.coord(2), a.coord(3) / Rat(g_)};
            QuadPair n2 = qp_sub(qp_mul(A, A, desc_.d1),
                                 qp_mul(qp_mul(B, B, desc_.d1), {Rat(desc_.d2), Rat(0)},
                                        desc_.d1));
            return n2.x * n2.x - Rat(desc_.d1) * n2.y * n2.y;
        }
        case FieldKind::SimplestCubic: {
            Mat m(3, std::vector<Rat>(3));
            for (int j = 0; j < 3; ++j) {
                std::vector<Rat> ej(3, Rat(0));
                ej[j] = 1;
                auto col = mul(a, element(ej)).coords();
                for (int r = 0; r < 3; ++r) m[r][j] = col[r];
            }
            return mat_det(m);
        }
    }
    throw SailError(Err::WrongFieldKind, "unreachable");
}

std::vector<Rat> Field::integral_coords(const FieldElement& a) const {
    std::vector<Rat> out(n_, Rat(0));
    for (unsigned i = 0; i < n_; ++i)
        for (unsigned j = 0; j < n_; ++j) out[i] += basis_mat_inv_[i][j] * a.coord(j);
    return out;
}

bool Field::is_integral(const FieldElement& a) const {
    for (const auto& c : integral_coords(a))
        if (c.get_den() != 1) return false;
    return true;
}

bool Field::is_in_codifferent(const FieldElement& a) const {
    for (const auto& b : basis_)
        if (trace(mul(a, b)).get_den() != 1) return false;
    return true;
}

bool Field::is_unit(const FieldElement& a) const {
    if (!is_integral(a)) return false;
    Rat n = norm(a);
    return n == 1 || n == -1;
}

// ---------------------------------------------------------------------------
// embeddings and signs
// ---------------------------------------------------------------------------

RatIv Field::radical_iv(unsigned j, unsigned bits) const {
    std::lock_guard<std::mutex> lk(cache_mu_);
    for (auto& [b, ivs] : radical_cache_)
        if (b == bits) return ivs[j - 1];
    std::vector<RatIv> ivs;
    if (kind() == FieldKind::Quadratic) {
        ivs = {sqrt_enclosure(Rat(desc_.d1), bits)};
    } else {
        ivs = {sqrt_enclosure(Rat(desc_.d1), bits), sqrt_enclosure(Rat(desc_.d2), bits),
               sqrt_enclosure(Rat(d3_), bits)};
    }
    radical_cache_.emplace_back(bits, ivs);
    return ivs[j - 1];
}

RatIv Field::root_power_iv(unsigned emb, unsigned power, unsigned bits) const {
    std::vector<RatIv> roots;
    {
        std::lock_guard<std::mutex> lk(cache_mu_);
        for (auto& [b, ivs] : root_cache_)
            if (b == bits) roots = ivs;
    }
    if (roots.empty()) {
        const Int& a = desc_.d1;
        SturmChain chain = SturmChain::build(a);
        Rat M = Rat(abs(a) + a + 4 + 4);  // crude root bound
        if (M < 4) M = 4;
        // isolate three roots by repeated bisection on Sturm counts
        std::vector<std::pair<Rat, Rat>> segs = {{-M, M}};
        std::vector<std::pair<Rat, Rat>> iso;
        while (!segs.empty()) {
            auto [lo, hi] = segs.back();
            segs.pop_back();
            int k = chain.roots_in(lo, hi);
            if (k == 0) continue;
            if (k == 1) {
                iso.emplace_back(lo, hi);
                continue;
            }
            Rat mid = (lo + hi) / 2;
            if (cubic_eval(a, mid) == 0)
                throw SailError(Err::DegenerateInput, "rational root in cubic");
            segs.emplace_back(lo, mid);
            segs.emplace_back(mid, hi);
        }
        if (iso.size() != 3)
            throw SailError(Err::DegenerateInput, "root isolation failed");
        // refine by bisection until width <= 2^-bits
        Rat eps(Int(1), Int(1) << bits);
        for (auto& [lo, hi] : iso) {
            int slo = rat_sign(cubic_eval(a, lo));
            while (hi - lo > eps) {
                Rat mid = (lo + hi) / 2;
                int sm = rat_sign(cubic_eval(a, mid));
                if (sm == 0) throw SailError(Err::DegenerateInput, "rational root");
                if (sm == slo)
                    lo = mid;
                else
                    hi = mid;
            }
        }
        std::sort(iso.begin(), iso.end(),
                  [](const auto& p, const auto& q) { return p.first > q.first; });
        for (auto& [lo, hi] : iso) roots.push_back(RatIv{lo, hi});
        std::lock_guard<std::mutex> lk(cache_mu_);
        root_cache_.emplace_back(bits, roots);
    }
    RatIv r = roots[emb];
    if (power == 0) return RatIv(Rat(1));
    if (power == 1) return r;
    return r * r;
}

RatIv Field::embedding_iv(const FieldElement& a, unsigned i, unsigned bits) const {
    if (i >= n_) throw SailError(Err::IndexOutOfRange, "embedding index");
    RatIv acc{a.coord(0), a.coord(0)};
    if (kind() == FieldKind::SimplestCubic) {
        for (unsigned p = 1; p < 3; ++p) acc = acc + root_power_iv(i, p, bits) * a.coord(p);
        return acc;
    }
    for (unsigned j = 1; j < n_; ++j) {
        if (a.coord(j) == 0) continue;
        RatIv rad = radical_iv(j, bits);
        Rat coeff = a.coord(j) * Rat(emb_sign_[i][j - 1]);
        acc = acc + rad * coeff;
    }
    return acc;
}

int Field::sign_at_embedding(const FieldElement& a, unsigned i) const {
    if (a.is_zero()) return 0;  // the radical basis is a Q-basis, so zero
                                // coordinates are the exact zero predicate
    unsigned bits = 32;
    while (true) {
        auto s = embedding_iv(a, i, bits).sign();
        if (s) return *s;
        bits *= 2;
        if (bits > (1u << 24))
            throw SailError(Err::DegenerateInput, "sign refinement stalled");
    }
}

int Field::exact_sign_oracle(const FieldElement& a, unsigned i) const {
    switch (kind()) {
        case FieldKind::Quadratic:
            return sign_quad(a.coord(0), a.coord(1) * Rat(emb_sign_[i][0]), desc_.d1);
        case FieldKind::Biquadratic: {
            int s1 = emb_sign_[i][0], s2 = emb_sign_[i][1];
            QuadPair A{a.coord(0), a.coord(1) * Rat(s1)};
            QuadPair B{a.coord(2) * Rat(s2), a.coord(3) * Rat(s1 * s2) / Rat(g_)};
            auto qsgn = [&](const QuadPair& q) { return sign_quad(q.x, q.y, desc_.d1); };
            int sA = qsgn(A), sB = qsgn(B);
            if (sB == 0) return sA;
            if (sA == 0) return sB;
            if (sA == sB) return sA;
            QuadPair diff = qp_sub(qp_mul(A, A, desc_.d1),
                                   qp_mul(qp_mul(B, B, desc_.d1),
                                          {Rat(desc_.d2), Rat(0)}, desc_.d1));
            return sA * qsgn(diff);
        }
        case FieldKind::SimplestCubic: {
            if (a.is_zero()) return 0;
            unsigned bits = 24;
            while (true) {
                auto s = embedding_iv(a, i, bits).sign();
                if (s) return *s;
                bits *= 2;
            }
        }
    }
    throw SailError(Err::WrongFieldKind, "unreachable");
}

SignatureVector Field::signature(const FieldElement& a) const {
    if (a.is_zero()) throw SailError(Err::InvalidArgument, "signature of zero");
    SignatureVector s(n_);
    for (unsigned i = 0; i < n_; ++i) s[i] = sign_at_embedding(a, i) < 0 ? 1 : 0;
    return s;
}

bool Field::totally_positive(const FieldElement& a) const {
    if (a.is_zero()) return false;
    for (unsigned i = 0; i < n_; ++i)
        if (sign_at_embedding(a, i) <= 0) return false;
    return true;
}

FieldElement Field::galois_conjugate(const FieldElement& a, unsigned i) const {
    if (kind() == FieldKind::Quadratic) {
        if (i != 1) throw SailError(Err::IndexOutOfRange, "conjugation index");
        return {this, {a.coord(0), -a.coord(1)}};
    }
    if (kind() != FieldKind::Biquadratic)
        throw SailError(Err::WrongFieldKind, "galois_conjugate needs a biquadratic field");
    if (i < 1 || i > 3) throw SailError(Err::IndexOutOfRange, "conjugation index");
    std::vector<Rat> c(4);
    c[0] = a.coord(0);
    for (unsigned j = 1; j <= 3; ++j) c[j] = (j == i) ? a.coord(j) : -a.coord(j);
    return {this, std::move(c)};
}

std::optional<FieldElement> Field::sqrt(const FieldElement& a) const {
    if (a.is_zero()) return zero();
    if (kind() == FieldKind::Quadratic) {
        auto r = qp_sqrt({a.coord(0), a.coord(1)}, desc_.d1);
        if (!r) return std::nullopt;
        FieldElement x = element({r->x, r->y});
        if (sign_at_embedding(x, 0) < 0) x = neg(x);
        return x;
    }
    if (kind() != FieldKind::Biquadratic)
        throw SailError(Err::WrongFieldKind, "sqrt implemented for quadratic/biquadratic");
    // tower descent: alpha = A + B sqrt(D2), A, B in Q(sqrt(D1))
    QuadPair A{a.coord(0), a.coord(1)};
    QuadPair B{a.coord(2), a.coord(3) / Rat(g_)};
    auto from_pairs = [&](const QuadPair& u, const QuadPair& v) {
        // u + v sqrt(D2), with v = v.x + v.y sqrt(D1):
        // v.y sqrt(D1) sqrt(D2) = v.y * g sqrt(D3)
        return element({u.x, u.y, v.x, v.y * Rat(g_)});
    };
    auto verify = [&](const FieldElement& x) { return mul(x, x) == a; };
    if (B.x == 0 && B.y == 0) {
        if (auto u = qp_sqrt(A, desc_.d1)) {
            FieldElement x = from_pairs(*u, {Rat(0), Rat(0)});
            if (verify(x)) return x;
        }
        QuadPair AD2{A.x / Rat(desc_.d2), A.y / Rat(desc_.d2)};
        if (auto v = qp_sqrt(AD2, desc_.d1)) {
            FieldElement x = from_pairs({Rat(0), Rat(0)}, *v);
            if (verify(x)) return x;
        }
        return std::nullopt;
    }
    // u^2 + D2 v^2 = A, 2uv = B  =>  u^2 solves t^2 - A t + D2 B^2/4 = 0
    QuadPair A2 = qp_mul(A, A, desc_.d1);
    QuadPair B2 = qp_mul(B, B, desc_.d1);
    QuadPair disc = qp_sub(A2, qp_mul(B2, {Rat(desc_.d2), Rat(0)}, desc_.d1));
    auto s = qp_sqrt(disc, desc_.d1);
    if (!s) return std::nullopt;
    for (int sign : {1, -1}) {
        QuadPair t{(A.x + Rat(sign) * s->x) / 2, (A.y + Rat(sign) * s->y) / 2};
        auto u = qp_sqrt(t, desc_.d1);
        if (!u || (u->x == 0 && u->y == 0)) continue;
        // v = B / (2u)
        Rat un = u->x * u->x - Rat(desc_.d1) * u->y * u->y;
        QuadPair uinv{u->x / un, -u->y / un};
        QuadPair v = qp_mul(B, uinv, desc_.d1);
        v = {v.x / 2, v.y / 2};
        FieldElement x = from_pairs(*u, v);
        if (verify(x)) return x;
    }
    return std::nullopt;
}

// ---------------------------------------------------------------------------
// box enumeration
// ---------------------------------------------------------------------------

std::vector<FieldElement> Field::enumerate_integers_in_box(const Box& box,
                                                           const Int& cap) const {
    if (box.lo.size() != n_ || box.hi.size() != n_)
        throw SailError(Err::InvalidArgument, "box dimension mismatch");
    for (unsigned i = 0; i < n_; ++i)
        if (!(box.lo[i] < box.hi[i]))
            throw SailError(Err::InvalidArgument, "empty box side");

    const unsigned bits = 96;
    // embedding enclosures of integral and dual basis elements
    std::vector<std::vector<RatIv>> E(n_, std::vector<RatIv>(n_));
    std::vector<std::vector<RatIv>> Dv(n_, std::vector<RatIv>(n_));
    for (unsigned j = 0; j < n_; ++j)
        for (unsigned i = 0; i < n_; ++i) {
            E[i][j] = embedding_iv(basis_[j], i, bits);
            Dv[i][j] = embedding_iv(dual_basis_[j], i, bits);
        }

    // coordinate ranges: c_j = Tr(dual_j * alpha) = sum_i tau_i(dual_j) tau_i(alpha)
    std::vector<Int> cmin(n_), cmax(n_);
    Int predicted = 1;
    for (unsigned j = 0; j < n_; ++j) {
        RatIv acc(Rat(0));
        for (unsigned i = 0; i < n_; ++i)
            acc = acc + Dv[i][j] * RatIv{box.lo[i], box.hi[i]};
        cmin[j] = rat_ceil(acc.lo);
        cmax[j] = rat_floor(acc.hi);
        Int w = cmax[j] - cmin[j] + 1;
        if (w < 0) w = 0;
        predicted *= w;
        if (predicted > cap)
            throw SailError(Err::BoxTooLarge,
                            "predicted candidate count exceeds cap " + cap.get_str());
    }

    // suffix contribution hulls for pruning
    std::vector<std::vector<RatIv>> suffix(n_ + 1, std::vector<RatIv>(n_, RatIv(Rat(0))));
    for (int j = static_cast<int>(n_) - 1; j >= 0; --j)
        for (unsigned i = 0; i < n_; ++i) {
            RatIv contrib = E[i][j] * RatIv{Rat(cmin[j]), Rat(cmax[j])};
            suffix[j][i] = suffix[j + 1][i] + contrib;
        }

    std::vector<FieldElement> out;
    std::vector<Int> c(n_);
    std::vector<RatIv> partial(n_, RatIv(Rat(0)));

    auto emit = [&]() {
        FieldElement alpha = from_integral_coords(c);
        for (unsigned i = 0; i < n_; ++i) {
            if (sign_at_embedding(sub(alpha, from_rational(box.lo[i])), i) <= 0) return;
            if (sign_at_embedding(sub(from_rational(box.hi[i]), alpha), i) <= 0) return;
        }
        out.push_back(std::move(alpha));
    };

    std::function<void(unsigned, const std::vector<RatIv>&)> rec =
        [&](unsigned j, const std::vector<RatIv>& part) {
            if (j == n_) {
                emit();
                return;
            }
            for (Int v = cmin[j]; v <= cmax[j]; ++v) {
                std::vector<RatIv> p2 = part;
                bool feasible = true;
                for (unsigned i = 0; i < n_; ++i) {
                    p2[i] = part[i] + E[i][j] * Rat(v);
                    RatIv reach = p2[i] + suffix[j + 1][i];
                    if (reach.hi <= box.lo[i] || reach.lo >= box.hi[i]) {
                        feasible = false;
                        break;
                    }
                }
                if (!feasible) continue;
                c[j] = v;
                rec(j + 1, p2);
            }
        };
    rec(0, partial);
    return out;
}

}  // namespace sailkit
