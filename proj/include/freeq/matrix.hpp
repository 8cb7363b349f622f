#ifndef FREEQ_MATRIX_HPP
#define FREEQ_MATRIX_HPP

#include <freeq/rational.hpp>

#include <cstddef>
#include <initializer_list>
#include <optional>
#include <string>
#include <vector>

namespace freeq {

/*
 * Dense matrix over Q. Row-major storage; a 0 x n or n x 0 matrix is valid
 * and behaves like the zero map between the corresponding spaces.
 */
class Matrix {
public:
    Matrix() = default;
    Matrix(std::size_t rows, std::size_t cols) : m_rows(rows), m_cols(cols), m_data(rows * cols) {}
    Matrix(std::initializer_list<std::initializer_list<Rational>> rows);

    static Matrix identity(std::size_t n);
    static Matrix from_columns(std::size_t rows, const std::vector<Vector>& columns);
    static Matrix from_rows(std::size_t cols, const std::vector<Vector>& rows);

    std::size_t rows() const { return m_rows; }
    std::size_t cols() const { return m_cols; }

    Rational& operator()(std::size_t i, std::size_t j) { return m_data[i * m_cols + j]; }
    const Rational& operator()(std::size_t i, std::size_t j) const { return m_data[i * m_cols + j]; }

    Vector column(std::size_t j) const;
    Vector row(std::size_t i) const;
    void set_column(std::size_t j, const Vector& v);

    Matrix transpose() const;
    bool is_zero() const;
    bool is_identity() const;

    // Columns [first, first + count).
    Matrix columns(std::size_t first, std::size_t count) const;
    Matrix hstack(const Matrix& right) const;
    Matrix vstack(const Matrix& below) const;

    Matrix operator*(const Matrix& rhs) const;
    Vector operator*(const Vector& v) const;
    Matrix operator+(const Matrix& rhs) const;
    Matrix operator-(const Matrix& rhs) const;
    Matrix& operator+=(const Matrix& rhs);
    Matrix& operator*=(const Rational& s);
    bool operator==(const Matrix& rhs) const;

    std::string to_string() const;

private:
    std::size_t m_rows = 0;
    std::size_t m_cols = 0;
    std::vector<Rational> m_data;
};

Matrix kronecker(const Matrix& a, const Matrix& b);

struct RrefResult {
    Matrix reduced;
    std::vector<std::size_t> pivots;  // strictly increasing column indices
    std::size_t rank = 0;
};

RrefResult rref(Matrix a);
std::size_t rank(const Matrix& a);

/*
 * A subspace of Q^ambient, stored as the columns of an ambient x dim matrix.
 * Producers in this library always return linearly independent columns.
 */
struct Subspace {
    std::size_t ambient = 0;
    Matrix basis;

    std::size_t dim() const { return basis.cols(); }
    static Subspace zero(std::size_t ambient) { return {ambient, Matrix(ambient, 0)}; }
    static Subspace full(std::size_t ambient) { return {ambient, Matrix::identity(ambient)}; }
};

Subspace kernel_basis(const Matrix& a);
// Linearly independent subset of the columns of a (pivot columns).
Subspace column_space(const Matrix& a);
Subspace intersect(const Subspace& a, const Subspace& b);
bool contains(const Subspace& space, const Vector& v);

// Particular solution of A x = b with free variables set to zero, or
// nullopt when the system is inconsistent. Throws DimensionError when
// b.size() != rows(A).
std::optional<Vector> solve(const Matrix& a, const Vector& b);
// Column-wise solve of A X = B.
std::optional<Matrix> solve(const Matrix& a, const Matrix& b);

std::optional<Matrix> inverse(const Matrix& a);
Rational determinant(const Matrix& a);

/*
 * Homology at the middle of  . --d_in--> V --d_out--> .  where V = Q^n,
 * n = cols(d_out) = rows(d_in). Representatives are kernel vectors of d_out
 * independent modulo the image of d_in. Throws InvariantError when
 * d_out * d_in != 0.
 */
struct HomologyResult {
    std::size_t dim = 0;
    Matrix representatives;  // n x dim
};

HomologyResult homology(const Matrix& d_out, const Matrix& d_in);
std::size_t homology_dim(const Matrix& d_out, const Matrix& d_in);

/*
 * Coordinates on V / K for a subspace K of V = Q^n. Quotient coordinates
 * are the non-pivot coordinates after reducing against the rref of K, so
 * the basis of V/K is the image of the corresponding standard vectors.
 */
class QuotientMap {
public:
    QuotientMap() = default;
    QuotientMap(std::size_t ambient, const Matrix& spanning_columns);

    std::size_t ambient() const { return m_ambient; }
    std::size_t dim() const { return m_free.size(); }
    // Indices of the standard basis vectors forming the quotient basis.
    const std::vector<std::size_t>& lifts() const { return m_free; }

    Vector project(const Vector& v) const;
    // dim x ambient matrix of the projection.
    Matrix matrix() const;
    // ambient x dim matrix sending quotient coordinates to the chosen lifts.
    Matrix lift_matrix() const;

private:
    std::size_t m_ambient = 0;
    Matrix m_rows;  // reduced rows of K (rank x ambient)
    std::vector<std::size_t> m_pivots;
    std::vector<std::size_t> m_free;
};

}  // namespace freeq

#endif
