#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include <gmpxx.h>

namespace csp::zlinalg {

using Int = mpz_class;

// Dense integer matrix, row-major, exact arithmetic throughout.
class IntMatrix {
public:
    IntMatrix() : rows_(0), cols_(0) {}
    IntMatrix(std::size_t rows, std::size_t cols)
        : rows_(rows), cols_(cols), e_(rows * cols, Int(0)) {}

    static IntMatrix identity(std::size_t n);
    static IntMatrix from_rows(const std::vector<std::vector<Int>>& rows);

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }

    Int& at(std::size_t r, std::size_t c) { return e_[r * cols_ + c]; }
    const Int& at(std::size_t r, std::size_t c) const { return e_[r * cols_ + c]; }

    std::vector<Int> row(std::size_t r) const;
    void set_row(std::size_t r, const std::vector<Int>& v);

    IntMatrix transpose() const;
    IntMatrix operator*(const IntMatrix& rhs) const;
    bool operator==(const IntMatrix& rhs) const = default;

    bool is_zero() const;
    std::string to_string() const;

private:
    std::size_t rows_, cols_;
    std::vector<Int> e_;
};

std::vector<Int> mul_row(const std::vector<Int>& x, const IntMatrix& m);

struct HnfResult {
    IntMatrix h;                      // row Hermite normal form
    IntMatrix u;                      // unimodular, u * a = h
    std::vector<std::size_t> pivots;  // pivot column per nonzero row
    std::size_t rank = 0;
};

// Row HNF with positive pivots and entries above each pivot reduced into
// [0, pivot). Deterministic.
HnfResult hnf(const IntMatrix& a);

struct SnfResult {
    IntMatrix s;  // diagonal, divisibility chain, nonnegative
    IntMatrix u;  // u * a * v = s, both unimodular
    IntMatrix v;
    std::vector<Int> divisors;  // nonzero diagonal entries d1 | d2 | ...
};

SnfResult snf(const IntMatrix& a);

// Rows spanning {x : x * a = 0}.
IntMatrix left_nullspace(const IntMatrix& a);

// One solution of x * a = b over the integers, if any.
std::optional<std::vector<Int>> solve_left(const IntMatrix& a, const std::vector<Int>& b);

// Inverse of a unimodular matrix (throws InternalError otherwise).
IntMatrix invert_unimodular(const IntMatrix& m);

Int det(const IntMatrix& a);

// Basis (HNF rows) of the intersection of the row lattices of a and b.
IntMatrix lattice_intersection(const IntMatrix& a, const IntMatrix& b);

} // namespace csp::zlinalg
