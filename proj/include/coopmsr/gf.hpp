#pragma once

#include <cstdint>
#include <vector>

#include "coopmsr/errors.hpp"

namespace coopmsr {

/// One residue of GF(p). Carries its modulus so that mixing elements of
/// different fields is caught at runtime instead of silently wrapping.
struct FieldElement {
    std::uint32_t value = 0;
    std::uint32_t mod = 0;

    friend bool operator==(const FieldElement&, const FieldElement&) = default;
};

namespace detail {
inline void require_same_field(const FieldElement& x, const FieldElement& y) {
    if (x.mod != y.mod)
        throw FieldMismatchError("field elements have different moduli");
}
}  // namespace detail

inline FieldElement operator+(FieldElement x, FieldElement y) {
    detail::require_same_field(x, y);
    std::uint32_t s = x.value + y.value;
    if (s >= x.mod) s -= x.mod;
    return {s, x.mod};
}

inline FieldElement operator-(FieldElement x, FieldElement y) {
    detail::require_same_field(x, y);
    std::uint32_t s = x.value >= y.value ? x.value - y.value : x.value + x.mod - y.value;
    return {s, x.mod};
}

inline FieldElement operator-(FieldElement x) {
    return {x.value == 0 ? 0 : x.mod - x.value, x.mod};
}

inline FieldElement operator*(FieldElement x, FieldElement y) {
    detail::require_same_field(x, y);
    return {static_cast<std::uint32_t>(std::uint64_t{x.value} * y.value % x.mod), x.mod};
}

inline FieldElement& operator+=(FieldElement& x, FieldElement y) { return x = x + y; }
inline FieldElement& operator-=(FieldElement& x, FieldElement y) { return x = x - y; }
inline FieldElement& operator*=(FieldElement& x, FieldElement y) { return x = x * y; }

/// x^e by square-and-multiply; pow(x, 0) == 1 for every x, including 0.
FieldElement pow(FieldElement x, std::uint64_t e);

/// Multiplicative inverse. Throws DivisionByZeroError on 0.
FieldElement inv(FieldElement x);

/// A prime field GF(p). Primality is checked by trial division at
/// construction; moduli are limited to p < 2^31.
class Field {
public:
    explicit Field(std::uint64_t p);

    std::uint32_t modulus() const { return p_; }
    FieldElement elt(std::uint64_t v) const { return {static_cast<std::uint32_t>(v % p_), p_}; }
    FieldElement zero() const { return {0, p_}; }
    FieldElement one() const { return {1, p_}; }

    friend bool operator==(const Field&, const Field&) = default;

private:
    std::uint32_t p_;
};

using Vec = std::vector<FieldElement>;

/// Row-major dense matrix over one field.
class Matrix {
public:
    Matrix(std::size_t rows, std::size_t cols, FieldElement fill)
        : rows_(rows), cols_(cols), data_(rows * cols, fill) {}

    static Matrix zero(std::size_t rows, std::size_t cols, const Field& f) {
        return Matrix(rows, cols, f.zero());
    }
    static Matrix identity(std::size_t n, const Field& f);

    FieldElement& at(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
    const FieldElement& at(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }

    friend bool operator==(const Matrix&, const Matrix&) = default;

private:
    std::size_t rows_, cols_;
    Vec data_;
};

inline constexpr std::size_t kSolveDenseMaxDim = 64;

/// Solves A x = b for square A by exact Gaussian elimination with
/// first-nonzero pivot search. Throws SingularSystemError (carrying the rank
/// found) if A is singular, GuardLimitError if A exceeds max_dim.
Vec solve_dense(const Matrix& a, const Vec& b, std::size_t max_dim = kSolveDenseMaxDim);

/// Exact rank by forward elimination. Takes its argument by value (scratch).
std::size_t matrix_rank(Matrix a);

/// Factors a (rows x cols, rows >= cols) matrix of full column rank once and
/// then solves A x = rhs for many right-hand sides. For rows > cols the extra
/// equations are checked for consistency on every solve.
class EchelonSolver {
public:
    explicit EchelonSolver(const Matrix& a);

    Vec solve(const Vec& rhs) const;

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }

private:
    std::size_t rows_, cols_;
    Matrix transform_;  // transform_ * A == [I; 0]
};

}  // namespace coopmsr
