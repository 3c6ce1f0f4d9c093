#include "sailkit/intlinalg.hpp"

#include "sailkit/error.hpp"

namespace sailkit {

IMat imat_transpose(const IMat& m) {
    if (m.empty()) return {};
    IMat t(m[0].size(), std::vector<Int>(m.size()));
    for (size_t i = 0; i < m.size(); ++i)
        for (size_t j = 0; j < m[i].size(); ++j) t[j][i] = m[i][j];
    return t;
}

Int imat_det(IMat m) {
    size_t n = m.size();
    // Bareiss fraction-free elimination
    Int prev = 1;
    int sign = 1;
    for (size_t k = 0; k + 1 < n; ++k) {
        if (m[k][k] == 0) {
            size_t p = k + 1;
            while (p < n && m[p][k] == 0) ++p;
            if (p == n) return 0;
            std::swap(m[p], m[k]);
            sign = -sign;
        }
        for (size_t i = k + 1; i < n; ++i)
            for (size_t j = k + 1; j < n; ++j) {
                m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) / prev;
            }
        prev = m[k][k];
    }
    return n ? Int(sign * m[n - 1][n - 1]) : Int(1);
}

IMat hnf_rows(const IMat& rows) {
    IMat w = rows;
    size_t nrows = w.size();
    if (nrows == 0) return {};
    size_t ncols = w[0].size();
    IMat out;
    size_t done = 0;  // rows already fixed at the top of w
    for (size_t col = 0; col < ncols && done < nrows; ++col) {
        // find a pivot: reduce entries in this column below `done` to one
        int best = -1;
        bool again = true;
        while (again) {
            again = false;
            best = -1;
            for (size_t r = done; r < nrows; ++r) {
                if (w[r][col] == 0) continue;
                if (best < 0 || cmp(abs(w[r][col]), abs(w[best][col])) < 0)
                    best = static_cast<int>(r);
            }
            if (best < 0) break;
            for (size_t r = done; r < nrows; ++r) {
                if (static_cast<int>(r) == best || w[r][col] == 0) continue;
                Int q = floor_div(w[r][col], w[best][col]);
                for (size_t c = 0; c < ncols; ++c) w[r][c] -= q * w[best][c];
                if (w[r][col] != 0) again = true;
            }
        }
        if (best < 0) continue;
        std::swap(w[done], w[best]);
        if (w[done][col] < 0)
            for (auto& v : w[done]) v = -v;
        // reduce the fixed rows above against this pivot
        for (size_t r = 0; r < done; ++r) {
            Int q = floor_div(w[r][col], w[done][col]);
            if (q != 0)
                for (size_t c = 0; c < ncols; ++c) w[r][c] -= q * w[done][c];
        }
        ++done;
    }
    for (size_t r = 0; r < done; ++r) out.push_back(w[r]);
    return out;
}

unsigned imat_rank(IMat m) { return static_cast<unsigned>(hnf_rows(m).size()); }

IMat integer_kernel(const IMat& m) {
    if (m.empty()) return {};
    size_t rows = m.size(), cols = m[0].size();
    // Column-style HNF on the transpose with a unimodular transform: run row
    // HNF on [m^T | I]; rows whose m^T-part vanished carry kernel vectors.
    IMat aug(cols, std::vector<Int>(rows + cols, 0));
    for (size_t i = 0; i < cols; ++i) {
        for (size_t j = 0; j < rows; ++j) aug[i][j] = m[j][i];
        aug[i][rows + i] = 1;
    }
    // eliminate left block
    size_t done = 0;
    for (size_t col = 0; col < rows && done < cols; ++col) {
        bool again = true;
        int best = -1;
        while (again) {
            again = false;
            best = -1;
            for (size_t r = done; r < cols; ++r) {
                if (aug[r][col] == 0) continue;
                if (best < 0 || cmp(abs(aug[r][col]), abs(aug[best][col])) < 0)
                    best = static_cast<int>(r);
            }
            if (best < 0) break;
            for (size_t r = done; r < cols; ++r) {
                if (static_cast<int>(r) == best || aug[r][col] == 0) continue;
                Int q = floor_div(aug[r][col], aug[best][col]);
                for (size_t c = 0; c < rows + cols; ++c) aug[r][c] -= q * aug[best][c];
                if (aug[r][col] != 0) again = true;
            }
        }
        if (best < 0) continue;
        std::swap(aug[done], aug[best]);
        ++done;
    }
    IMat kernel;
    for (size_t r = done; r < cols; ++r) {
        bool zero = true;
        for (size_t c = 0; c < rows; ++c)
            if (aug[r][c] != 0) {
                zero = false;
                break;
            }
        if (!zero) throw SailError(Err::DegenerateInput, "kernel elimination failed");
        kernel.emplace_back(aug[r].begin() + rows, aug[r].end());
    }
    return kernel;
}

IMat saturate_rows(const IMat& rows) {
    if (rows.empty()) return {};
    // row space of `rows` = { y : y x = 0 for all x in ker(rows) }, and the
    // integer kernel of an integer matrix is saturated, so two kernel passes
    // produce the saturation.
    IMat kerR = integer_kernel(rows);  // {x : rows x = 0}
    if (kerR.empty()) {
        // rows span full Q^n: saturation is Z^n
        size_t n = rows[0].size();
        IMat id(n, std::vector<Int>(n, 0));
        for (size_t i = 0; i < n; ++i) id[i][i] = 1;
        return id;
    }
    // saturation = { y : kerR y = 0 } = integer kernel of kerR
    return integer_kernel(kerR);
}

IMat express_in_basis(const IMat& rows, const IMat& basis) {
    // solve x * basis = row over Q for each row; verify integrality
    size_t k = basis.size();
    if (k == 0) {
        if (!rows.empty()) throw SailError(Err::DegenerateInput, "empty basis");
        return {};
    }
    size_t n = basis[0].size();
    // build a rational solver on basis^T (n x k); least-structure: pick k
    // independent columns via elimination on a rational copy each call.
    IMat out;
    for (const auto& row : rows) {
        // Gaussian elimination over Q on augmented [basis^T | row^T]
        std::vector<std::vector<Rat>> a(n, std::vector<Rat>(k + 1));
        for (size_t i = 0; i < n; ++i) {
            for (size_t j = 0; j < k; ++j) a[i][j] = Rat(basis[j][i]);
            a[i][k] = Rat(row[i]);
        }
        size_t done = 0;
        std::vector<int> pivot_col(k, -1);
        for (size_t col = 0; col < k && done < n; ++col) {
            size_t piv = done;
            while (piv < n && a[piv][col] == 0) ++piv;
            if (piv == n) continue;
            std::swap(a[piv], a[done]);
            Rat ip = 1 / a[done][col];
            for (size_t c = col; c <= k; ++c) a[done][c] *= ip;
            for (size_t r = 0; r < n; ++r) {
                if (r == done || a[r][col] == 0) continue;
                Rat f = a[r][col];
                for (size_t c = col; c <= k; ++c) a[r][c] -= f * a[done][c];
            }
            pivot_col[col] = static_cast<int>(done);
            ++done;
        }
        std::vector<Int> sol(k, 0);
        for (size_t col = 0; col < k; ++col) {
            if (pivot_col[col] < 0)
                throw SailError(Err::DegenerateInput, "basis is rank deficient");
            Rat v = a[pivot_col[col]][k];
            if (v.get_den() != 1)
                throw SailError(Err::DegenerateInput, "row not in basis lattice");
            sol[col] = v.get_num();
        }
        // consistency: residual rows must vanish
        for (size_t r = done; r < n; ++r)
            if (a[r][k] != 0)
                throw SailError(Err::DegenerateInput, "row not in basis span");
        out.push_back(sol);
    }
    return out;
}

Int lattice_index_in_saturation(const IMat& rows) {
    IMat h = hnf_rows(rows);
    if (h.empty()) return 1;
    IMat sat = saturate_rows(h);
    if (sat.size() != h.size())
        throw SailError(Err::DegenerateInput, "rank mismatch in saturation");
    IMat coords = express_in_basis(h, sat);
    Int d = imat_det(coords);
    return abs(d);
}

}  // namespace sailkit
