#include "csp/int_matrix.hpp"

#include <algorithm>
#include <sstream>

#include "csp/errors.hpp"

namespace csp::zlinalg {

IntMatrix IntMatrix::identity(std::size_t n) {
    IntMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m.at(i, i) = 1;
    return m;
}

IntMatrix IntMatrix::from_rows(const std::vector<std::vector<Int>>& rows) {
    if (rows.empty()) return IntMatrix(0, 0);
    IntMatrix m(rows.size(), rows[0].size());
    for (std::size_t i = 0; i < rows.size(); ++i) {
        if (rows[i].size() != m.cols())
            throw InternalError("from_rows: ragged rows");
        for (std::size_t j = 0; j < m.cols(); ++j) m.at(i, j) = rows[i][j];
    }
    return m;
}

std::vector<Int> IntMatrix::row(std::size_t r) const {
    std::vector<Int> v(cols_);
    for (std::size_t j = 0; j < cols_; ++j) v[j] = at(r, j);
    return v;
}

void IntMatrix::set_row(std::size_t r, const std::vector<Int>& v) {
    for (std::size_t j = 0; j < cols_; ++j) at(r, j) = v[j];
}

IntMatrix IntMatrix::transpose() const {
    IntMatrix t(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = 0; j < cols_; ++j) t.at(j, i) = at(i, j);
    return t;
}

IntMatrix IntMatrix::operator*(const IntMatrix& rhs) const {
    if (cols_ != rhs.rows_) throw InternalError("matrix product shape mismatch");
    IntMatrix p(rows_, rhs.cols_);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t k = 0; k < cols_; ++k) {
            const Int& a = at(i, k);
            if (a == 0) continue;
            for (std::size_t j = 0; j < rhs.cols_; ++j)
                p.at(i, j) += a * rhs.at(k, j);
        }
    return p;
}

bool IntMatrix::is_zero() const {
    return std::all_of(e_.begin(), e_.end(), [](const Int& x) { return x == 0; });
}

std::string IntMatrix::to_string() const {
    std::ostringstream os;
    for (std::size_t i = 0; i < rows_; ++i) {
        os << (i ? "; " : "[");
        for (std::size_t j = 0; j < cols_; ++j) os << (j ? " " : "") << at(i, j).get_str();
    }
    os << "]";
    return os.str();
}

std::vector<Int> mul_row(const std::vector<Int>& x, const IntMatrix& m) {
    if (x.size() != m.rows()) throw InternalError("mul_row shape mismatch");
    std::vector<Int> out(m.cols(), Int(0));
    for (std::size_t i = 0; i < x.size(); ++i) {
        if (x[i] == 0) continue;
        for (std::size_t j = 0; j < m.cols(); ++j) out[j] += x[i] * m.at(i, j);
    }
    return out;
}

namespace {

void add_row_multiple(IntMatrix& m, std::size_t dst, std::size_t src, const Int& q) {
    if (q == 0) return;
    for (std::size_t j = 0; j < m.cols(); ++j) m.at(dst, j) += q * m.at(src, j);
}

void swap_rows(IntMatrix& m, std::size_t a, std::size_t b) {
    if (a == b) return;
    for (std::size_t j = 0; j < m.cols(); ++j) std::swap(m.at(a, j), m.at(b, j));
}

void negate_row(IntMatrix& m, std::size_t r) {
    for (std::size_t j = 0; j < m.cols(); ++j) m.at(r, j) = -m.at(r, j);
}

// floor division
Int fdiv(const Int& a, const Int& b) {
    Int q;
    mpz_fdiv_q(q.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return q;
}

} // namespace

HnfResult hnf(const IntMatrix& a) {
    HnfResult res{a, IntMatrix::identity(a.rows()), {}, 0};
    IntMatrix& h = res.h;
    IntMatrix& u = res.u;
    std::size_t r = 0;
    for (std::size_t c = 0; c < a.cols() && r < a.rows(); ++c) {
        // gcd-reduce column c among rows >= r
        while (true) {
            std::size_t best = h.rows();
            for (std::size_t i = r; i < h.rows(); ++i) {
                if (h.at(i, c) == 0) continue;
                if (best == h.rows() || cmp(abs(h.at(i, c)), abs(h.at(best, c))) < 0)
                    best = i;
            }
            if (best == h.rows()) break;  // column zero below r
            swap_rows(h, r, best);
            swap_rows(u, r, best);
            bool cleared = true;
            for (std::size_t i = r + 1; i < h.rows(); ++i) {
                if (h.at(i, c) == 0) continue;
                Int q = fdiv(h.at(i, c), h.at(r, c));
                add_row_multiple(h, i, r, -q);
                add_row_multiple(u, i, r, -q);
                if (h.at(i, c) != 0) cleared = false;
            }
            if (cleared) break;
        }
        if (h.at(r, c) == 0) continue;
        if (h.at(r, c) < 0) {
            negate_row(h, r);
            negate_row(u, r);
        }
        for (std::size_t i = 0; i < r; ++i) {
            Int q = fdiv(h.at(i, c), h.at(r, c));
            add_row_multiple(h, i, r, -q);
            add_row_multiple(u, i, r, -q);
        }
        res.pivots.push_back(c);
        ++r;
    }
    res.rank = r;
    return res;
}

SnfResult snf(const IntMatrix& a) {
    SnfResult res{a, IntMatrix::identity(a.rows()), IntMatrix::identity(a.cols()), {}};
    IntMatrix& s = res.s;
    IntMatrix& u = res.u;
    IntMatrix& v = res.v;

    auto add_col_multiple = [&](IntMatrix& m, std::size_t dst, std::size_t src, const Int& q) {
        if (q == 0) return;
        for (std::size_t i = 0; i < m.rows(); ++i) m.at(i, dst) += q * m.at(i, src);
    };
    auto swap_cols = [&](IntMatrix& m, std::size_t x, std::size_t y) {
        if (x == y) return;
        for (std::size_t i = 0; i < m.rows(); ++i) std::swap(m.at(i, x), m.at(i, y));
    };

    std::size_t n = std::min(s.rows(), s.cols());
    for (std::size_t t = 0; t < n; ++t) {
        while (true) {
            // locate entry of minimal absolute value in the trailing block
            std::size_t pi = s.rows(), pj = s.cols();
            for (std::size_t i = t; i < s.rows(); ++i)
                for (std::size_t j = t; j < s.cols(); ++j) {
                    if (s.at(i, j) == 0) continue;
                    if (pi == s.rows() || cmp(abs(s.at(i, j)), abs(s.at(pi, pj))) < 0) {
                        pi = i;
                        pj = j;
                    }
                }
            if (pi == s.rows()) { n = t; break; }  // trailing block zero
            swap_rows(s, t, pi);
            swap_rows(u, t, pi);
            swap_cols(s, t, pj);
            swap_cols(v, t, pj);
            bool again = false;
            for (std::size_t i = t + 1; i < s.rows(); ++i) {
                if (s.at(i, t) == 0) continue;
                Int q = fdiv(s.at(i, t), s.at(t, t));
                add_row_multiple(s, i, t, -q);
                add_row_multiple(u, i, t, -q);
                if (s.at(i, t) != 0) again = true;
            }
            for (std::size_t j = t + 1; j < s.cols(); ++j) {
                if (s.at(t, j) == 0) continue;
                Int q = fdiv(s.at(t, j), s.at(t, t));
                add_col_multiple(s, j, t, -q);
                add_col_multiple(v, j, t, -q);
                if (s.at(t, j) != 0) again = true;
            }
            if (again) continue;
            // entry (t,t) divides the rest of its row/column; check the block
            bool fixed = true;
            for (std::size_t i = t + 1; i < s.rows() && fixed; ++i)
                for (std::size_t j = t + 1; j < s.cols() && fixed; ++j)
                    if (s.at(i, j) % s.at(t, t) != 0) {
                        add_row_multiple(s, t, i, Int(1));
                        add_row_multiple(u, t, i, Int(1));
                        fixed = false;
                    }
            if (fixed) break;
        }
        if (t >= n) break;
        if (s.at(t, t) < 0) {
            negate_row(s, t);
            negate_row(u, t);
        }
    }
    for (std::size_t t = 0; t < n; ++t) res.divisors.push_back(s.at(t, t));
    return res;
}

IntMatrix left_nullspace(const IntMatrix& a) {
    // u*a = h with h of rank r; the bottom rows of u span {x : x*a = 0}.
    HnfResult hr = hnf(a);
    std::vector<std::vector<Int>> rows;
    for (std::size_t i = hr.rank; i < a.rows(); ++i) rows.push_back(hr.u.row(i));
    if (rows.empty()) return IntMatrix(0, a.rows());
    return IntMatrix::from_rows(rows);
}

std::optional<std::vector<Int>> solve_left(const IntMatrix& a, const std::vector<Int>& b) {
    if (b.size() != a.cols()) throw InternalError("solve_left shape mismatch");
    HnfResult hr = hnf(a);
    // solve y * h = b by back-substitution over the pivot structure
    std::vector<Int> y(a.rows(), Int(0));
    std::vector<Int> rem = b;
    for (std::size_t t = 0; t < hr.rank; ++t) {
        std::size_t c = hr.pivots[t];
        if (rem[c] % hr.h.at(t, c) != 0) return std::nullopt;
        Int q = rem[c] / hr.h.at(t, c);
        y[t] = q;
        if (q != 0)
            for (std::size_t j = 0; j < a.cols(); ++j) rem[j] -= q * hr.h.at(t, j);
    }
    for (std::size_t j = 0; j < a.cols(); ++j)
        if (rem[j] != 0) return std::nullopt;
    return mul_row(y, hr.u);
}

IntMatrix invert_unimodular(const IntMatrix& m) {
    if (m.rows() != m.cols()) throw InternalError("invert_unimodular: not square");
    HnfResult hr = hnf(m);
    if (hr.h != IntMatrix::identity(m.rows()))
        throw InternalError("invert_unimodular: matrix not unimodular");
    return hr.u;
}

Int det(const IntMatrix& a) {
    if (a.rows() != a.cols()) throw InternalError("det: not square");
    // fraction-free Gaussian elimination (Bareiss)
    IntMatrix m = a;
    Int sign = 1, prev = 1;
    std::size_t n = m.rows();
    for (std::size_t k = 0; k + 1 < n; ++k) {
        if (m.at(k, k) == 0) {
            std::size_t p = k + 1;
            while (p < n && m.at(p, k) == 0) ++p;
            if (p == n) return 0;
            swap_rows(m, k, p);
            sign = -sign;
        }
        for (std::size_t i = k + 1; i < n; ++i)
            for (std::size_t j = k + 1; j < n; ++j) {
                Int t = m.at(i, j) * m.at(k, k) - m.at(i, k) * m.at(k, j);
                m.at(i, j) = t / prev;
            }
        prev = m.at(k, k);
    }
    return n == 0 ? Int(1) : sign * m.at(n - 1, n - 1);
}

IntMatrix lattice_intersection(const IntMatrix& a, const IntMatrix& b) {
    if (a.cols() != b.cols()) throw InternalError("lattice_intersection shape mismatch");
    std::size_t n = a.cols();
    // rows [a_i | a_i], [b_j | 0]; HNF; rows with zero left half have right
    // half in both row lattices.
    IntMatrix m(a.rows() + b.rows(), 2 * n);
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < n; ++j) {
            m.at(i, j) = a.at(i, j);
            m.at(i, n + j) = a.at(i, j);
        }
    for (std::size_t i = 0; i < b.rows(); ++i)
        for (std::size_t j = 0; j < n; ++j) m.at(a.rows() + i, j) = b.at(i, j);
    HnfResult hr = hnf(m);
    std::vector<std::vector<Int>> rows;
    for (std::size_t i = 0; i < m.rows(); ++i) {
        bool left_zero = true;
        for (std::size_t j = 0; j < n && left_zero; ++j)
            if (hr.h.at(i, j) != 0) left_zero = false;
        if (!left_zero) continue;
        std::vector<Int> r(n);
        bool nonzero = false;
        for (std::size_t j = 0; j < n; ++j) {
            r[j] = hr.h.at(i, n + j);
            if (r[j] != 0) nonzero = true;
        }
        if (nonzero) rows.push_back(std::move(r));
    }
    if (rows.empty()) return IntMatrix(0, n);
    return hnf(IntMatrix::from_rows(rows)).h;
}

} // namespace csp::zlinalg
