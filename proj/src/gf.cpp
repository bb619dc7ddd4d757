#include "coopmsr/gf.hpp"

#include <string>
#include <utility>

namespace coopmsr {

namespace {

bool is_prime(std::uint64_t p) {
    if (p < 2) return false;
    if (p % 2 == 0) return p == 2;
    for (std::uint64_t d = 3; d * d <= p; d += 2)
        if (p % d == 0) return false;
    return true;
}

}  // namespace

Field::Field(std::uint64_t p) {
    if (p < 3 || p >= (std::uint64_t{1} << 31))
        throw std::invalid_argument("field modulus must satisfy 3 <= p < 2^31, got " +
                                    std::to_string(p));
    if (!is_prime(p)) throw NotPrimeError("field modulus is not prime: " + std::to_string(p));
    p_ = static_cast<std::uint32_t>(p);
}

FieldElement pow(FieldElement x, std::uint64_t e) {
    FieldElement acc{1 % x.mod, x.mod};
    FieldElement base = x;
    while (e > 0) {
        if (e & 1) acc *= base;
        base *= base;
        e >>= 1;
    }
    return acc;
}

FieldElement inv(FieldElement x) {
    if (x.value == 0) throw DivisionByZeroError("inverse of zero");
    return pow(x, x.mod - 2);
}

Matrix Matrix::identity(std::size_t n, const Field& f) {
    Matrix m = zero(n, n, f);
    for (std::size_t i = 0; i < n; ++i) m.at(i, i) = f.one();
    return m;
}

Vec solve_dense(const Matrix& a, const Vec& b, std::size_t max_dim) {
    const std::size_t q = a.rows();
    if (a.cols() != q || b.size() != q)
        throw std::invalid_argument("solve_dense needs a square system");
    if (q > max_dim)
        throw GuardLimitError("solve_dense dimension " + std::to_string(q) + " exceeds bound " +
                              std::to_string(max_dim));
    if (q == 0) return {};

    Matrix m = a;
    Vec rhs = b;
    for (std::size_t col = 0; col < q; ++col) {
        std::size_t piv = col;
        while (piv < q && m.at(piv, col).value == 0) ++piv;
        if (piv == q) throw SingularSystemError("singular system (rank " + std::to_string(col) + ")", col);
        if (piv != col) {
            for (std::size_t c = col; c < q; ++c) std::swap(m.at(piv, c), m.at(col, c));
            std::swap(rhs[piv], rhs[col]);
        }
        const FieldElement pinv = inv(m.at(col, col));
        for (std::size_t c = col; c < q; ++c) m.at(col, c) *= pinv;
        rhs[col] *= pinv;
        for (std::size_t row = 0; row < q; ++row) {
            if (row == col) continue;
            const FieldElement factor = m.at(row, col);
            if (factor.value == 0) continue;
            for (std::size_t c = col; c < q; ++c) m.at(row, c) -= factor * m.at(col, c);
            rhs[row] -= factor * rhs[col];
        }
    }
    return rhs;
}

std::size_t matrix_rank(Matrix a) {
    const std::size_t rows = a.rows(), cols = a.cols();
    std::size_t rank = 0;
    for (std::size_t col = 0; col < cols && rank < rows; ++col) {
        std::size_t piv = rank;
        while (piv < rows && a.at(piv, col).value == 0) ++piv;
        if (piv == rows) continue;
        if (piv != rank)
            for (std::size_t c = col; c < cols; ++c) std::swap(a.at(piv, c), a.at(rank, c));
        const FieldElement pinv = inv(a.at(rank, col));
        for (std::size_t c = col; c < cols; ++c) a.at(rank, c) *= pinv;
        for (std::size_t row = rank + 1; row < rows; ++row) {
            const FieldElement factor = a.at(row, col);
            if (factor.value == 0) continue;
            for (std::size_t c = col; c < cols; ++c) a.at(row, c) -= factor * a.at(rank, c);
        }
        ++rank;
    }
    return rank;
}

EchelonSolver::EchelonSolver(const Matrix& a)
    : rows_(a.rows()), cols_(a.cols()), transform_(Matrix(0, 0, FieldElement{})) {
    if (rows_ == 0 || cols_ == 0 || rows_ < cols_)
        throw std::invalid_argument("EchelonSolver needs rows >= cols > 0");
    const std::uint32_t mod = a.at(0, 0).mod;
    if (mod == 0) throw std::invalid_argument("EchelonSolver matrix has no field attached");
    Matrix m = a;
    Matrix t(rows_, rows_, FieldElement{0, mod});
    for (std::size_t i = 0; i < rows_; ++i) t.at(i, i) = FieldElement{1, mod};

    std::size_t rank = 0;
    for (std::size_t col = 0; col < cols_; ++col) {
        std::size_t piv = rank;
        while (piv < rows_ && m.at(piv, col).value == 0) ++piv;
        if (piv == rows_)
            throw SingularSystemError("column-rank-deficient system (rank " + std::to_string(rank) + ")",
                                      rank);
        if (piv != rank) {
            for (std::size_t c = 0; c < cols_; ++c) std::swap(m.at(piv, c), m.at(rank, c));
            for (std::size_t c = 0; c < rows_; ++c) std::swap(t.at(piv, c), t.at(rank, c));
        }
        const FieldElement pinv = inv(m.at(rank, col));
        for (std::size_t c = 0; c < cols_; ++c) m.at(rank, c) *= pinv;
        for (std::size_t c = 0; c < rows_; ++c) t.at(rank, c) *= pinv;
        for (std::size_t row = 0; row < rows_; ++row) {
            if (row == rank) continue;
            const FieldElement factor = m.at(row, col);
            if (factor.value == 0) continue;
            for (std::size_t c = 0; c < cols_; ++c) m.at(row, c) -= factor * m.at(rank, c);
            for (std::size_t c = 0; c < rows_; ++c) t.at(row, c) -= factor * t.at(rank, c);
        }
        ++rank;
    }
    transform_ = std::move(t);
}

Vec EchelonSolver::solve(const Vec& rhs) const {
    if (rhs.size() != rows_) throw std::invalid_argument("EchelonSolver rhs size mismatch");
    Vec x;
    x.reserve(cols_);
    for (std::size_t row = 0; row < rows_; ++row) {
        FieldElement acc = transform_.at(row, 0) * rhs[0];
        for (std::size_t c = 1; c < rows_; ++c) acc += transform_.at(row, c) * rhs[c];
        if (row < cols_) {
            x.push_back(acc);
        } else if (acc.value != 0) {
            throw InconsistentDataError("overdetermined system is inconsistent");
        }
    }
    return x;
}

}  // namespace coopmsr
