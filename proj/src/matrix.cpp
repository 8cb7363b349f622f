#include <freeq/errors.hpp>
#include <freeq/matrix.hpp>

#include <algorithm>
#include <cctype>
#include <sstream>

namespace freeq {

Rational parse_rational(std::string_view text)
{
    std::string s(text);
    s.erase(std::remove_if(s.begin(), s.end(), [](unsigned char c) { return std::isspace(c); }), s.end());
    if (s.empty())
        throw ValidationError("empty rational literal");
    std::size_t slash = s.find('/');
    auto valid_int = [](const std::string& part, bool allow_sign) {
        std::size_t i = 0;
        if (allow_sign && !part.empty() && (part[0] == '-' || part[0] == '+'))
            i = 1;
        if (i == part.size())
            return false;
        for (; i < part.size(); ++i)
            if (!std::isdigit(static_cast<unsigned char>(part[i])))
                return false;
        return true;
    };
    std::string num = s.substr(0, slash);
    std::string den = slash == std::string::npos ? "1" : s.substr(slash + 1);
    if (!valid_int(num, true) || !valid_int(den, false))
        throw ValidationError("malformed rational literal '" + s + "'");
    if (num[0] == '+')
        num.erase(0, 1);
    mpz_class n(num, 10), d(den, 10);
    if (d == 0)
        throw ValidationError("zero denominator in '" + s + "'");
    Rational q(n, d);
    q.canonicalize();
    return q;
}

std::string to_string(const Rational& q)
{
    return q.get_str(10);
}

bool is_zero(const Vector& v)
{
    return std::all_of(v.begin(), v.end(), [](const Rational& x) { return x == 0; });
}

Matrix::Matrix(std::initializer_list<std::initializer_list<Rational>> rows)
    : m_rows(rows.size()), m_cols(rows.size() ? rows.begin()->size() : 0)
{
    m_data.reserve(m_rows * m_cols);
    for (const auto& r : rows) {
        if (r.size() != m_cols)
            throw DimensionError("ragged matrix literal");
        m_data.insert(m_data.end(), r.begin(), r.end());
    }
}

Matrix Matrix::identity(std::size_t n)
{
    Matrix m(n, n);
    for (std::size_t i = 0; i < n; ++i)
        m(i, i) = 1;
    return m;
}

Matrix Matrix::from_columns(std::size_t rows, const std::vector<Vector>& columns)
{
    Matrix m(rows, columns.size());
    for (std::size_t j = 0; j < columns.size(); ++j)
        m.set_column(j, columns[j]);
    return m;
}

Matrix Matrix::from_rows(std::size_t cols, const std::vector<Vector>& rows)
{
    Matrix m(rows.size(), cols);
    for (std::size_t i = 0; i < rows.size(); ++i) {
        if (rows[i].size() != cols)
            throw DimensionError("row length mismatch");
        for (std::size_t j = 0; j < cols; ++j)
            m(i, j) = rows[i][j];
    }
    return m;
}

Vector Matrix::column(std::size_t j) const
{
    Vector v(m_rows);
    for (std::size_t i = 0; i < m_rows; ++i)
        v[i] = (*this)(i, j);
    return v;
}

Vector Matrix::row(std::size_t i) const
{
    return Vector(m_data.begin() + i * m_cols, m_data.begin() + (i + 1) * m_cols);
}

void Matrix::set_column(std::size_t j, const Vector& v)
{
    if (v.size() != m_rows)
        throw DimensionError("column length mismatch");
    for (std::size_t i = 0; i < m_rows; ++i)
        (*this)(i, j) = v[i];
}

Matrix Matrix::transpose() const
{
    Matrix t(m_cols, m_rows);
    for (std::size_t i = 0; i < m_rows; ++i)
        for (std::size_t j = 0; j < m_cols; ++j)
            t(j, i) = (*this)(i, j);
    return t;
}

bool Matrix::is_zero() const
{
    return std::all_of(m_data.begin(), m_data.end(), [](const Rational& x) { return x == 0; });
}

bool Matrix::is_identity() const
{
    return m_rows == m_cols && *this == identity(m_rows);
}

Matrix Matrix::columns(std::size_t first, std::size_t count) const
{
    Matrix m(m_rows, count);
    for (std::size_t i = 0; i < m_rows; ++i)
        for (std::size_t j = 0; j < count; ++j)
            m(i, j) = (*this)(i, first + j);
    return m;
}

Matrix Matrix::hstack(const Matrix& right) const
{
    if (right.m_rows != m_rows)
        throw DimensionError("hstack row mismatch");
    Matrix m(m_rows, m_cols + right.m_cols);
    for (std::size_t i = 0; i < m_rows; ++i) {
        for (std::size_t j = 0; j < m_cols; ++j)
            m(i, j) = (*this)(i, j);
        for (std::size_t j = 0; j < right.m_cols; ++j)
            m(i, m_cols + j) = right(i, j);
    }
    return m;
}

Matrix Matrix::vstack(const Matrix& below) const
{
    if (below.m_cols != m_cols)
        throw DimensionError("vstack column mismatch");
    Matrix m(m_rows + below.m_rows, m_cols);
    std::copy(m_data.begin(), m_data.end(), m.m_data.begin());
    std::copy(below.m_data.begin(), below.m_data.end(), m.m_data.begin() + m_data.size());
    return m;
}

Matrix Matrix::operator*(const Matrix& rhs) const
{
    if (m_cols != rhs.m_rows)
        throw DimensionError("matrix product shape mismatch: " + std::to_string(m_rows) + "x" +
                             std::to_string(m_cols) + " * " + std::to_string(rhs.m_rows) + "x" +
                             std::to_string(rhs.m_cols));
    Matrix out(m_rows, rhs.m_cols);
    for (std::size_t i = 0; i < m_rows; ++i)
        for (std::size_t k = 0; k < m_cols; ++k) {
            const Rational& a = (*this)(i, k);
            if (a == 0)
                continue;
            for (std::size_t j = 0; j < rhs.m_cols; ++j)
                if (rhs(k, j) != 0)
                    out(i, j) += a * rhs(k, j);
        }
    return out;
}

Vector Matrix::operator*(const Vector& v) const
{
    if (v.size() != m_cols)
        throw DimensionError("matrix-vector shape mismatch");
    Vector out(m_rows);
    for (std::size_t i = 0; i < m_rows; ++i)
        for (std::size_t k = 0; k < m_cols; ++k)
            if ((*this)(i, k) != 0 && v[k] != 0)
                out[i] += (*this)(i, k) * v[k];
    return out;
}

Matrix Matrix::operator+(const Matrix& rhs) const
{
    Matrix out = *this;
    out += rhs;
    return out;
}

Matrix Matrix::operator-(const Matrix& rhs) const
{
    if (rhs.m_rows != m_rows || rhs.m_cols != m_cols)
        throw DimensionError("matrix difference shape mismatch");
    Matrix out = *this;
    for (std::size_t k = 0; k < m_data.size(); ++k)
        out.m_data[k] -= rhs.m_data[k];
    return out;
}

Matrix& Matrix::operator+=(const Matrix& rhs)
{
    if (rhs.m_rows != m_rows || rhs.m_cols != m_cols)
        throw DimensionError("matrix sum shape mismatch");
    for (std::size_t k = 0; k < m_data.size(); ++k)
        m_data[k] += rhs.m_data[k];
    return *this;
}

Matrix& Matrix::operator*=(const Rational& s)
{
    for (auto& x : m_data)
        x *= s;
    return *this;
}

bool Matrix::operator==(const Matrix& rhs) const
{
    return m_rows == rhs.m_rows && m_cols == rhs.m_cols && m_data == rhs.m_data;
}

std::string Matrix::to_string() const
{
    std::ostringstream os;
    os << '[';
    for (std::size_t i = 0; i < m_rows; ++i) {
        os << (i ? ", [" : "[");
        for (std::size_t j = 0; j < m_cols; ++j)
            os << (j ? ", " : "") << freeq::to_string((*this)(i, j));
        os << ']';
    }
    os << ']';
    return os.str();
}

Matrix kronecker(const Matrix& a, const Matrix& b)
{
    Matrix out(a.rows() * b.rows(), a.cols() * b.cols());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j) {
            if (a(i, j) == 0)
                continue;
            for (std::size_t k = 0; k < b.rows(); ++k)
                for (std::size_t l = 0; l < b.cols(); ++l)
                    out(i * b.rows() + k, j * b.cols() + l) = a(i, j) * b(k, l);
        }
    return out;
}

RrefResult rref(Matrix a)
{
    RrefResult res;
    const std::size_t m = a.rows(), n = a.cols();
    std::size_t row = 0;
    for (std::size_t col = 0; col < n && row < m; ++col) {
        std::size_t piv = row;
        while (piv < m && a(piv, col) == 0)
            ++piv;
        if (piv == m)
            continue;
        if (piv != row)
            for (std::size_t j = col; j < n; ++j)
                std::swap(a(piv, j), a(row, j));
        const Rational inv = 1 / a(row, col);
        for (std::size_t j = col; j < n; ++j)
            a(row, j) *= inv;
        for (std::size_t i = 0; i < m; ++i) {
            if (i == row || a(i, col) == 0)
                continue;
            const Rational f = a(i, col);
            for (std::size_t j = col; j < n; ++j)
                if (a(row, j) != 0)
                    a(i, j) -= f * a(row, j);
        }
        res.pivots.push_back(col);
        ++row;
    }
    res.rank = row;
    res.reduced = std::move(a);
    return res;
}

std::size_t rank(const Matrix& a)
{
    return rref(a).rank;
}

Subspace kernel_basis(const Matrix& a)
{
    const std::size_t n = a.cols();
    RrefResult r = rref(a);
    std::vector<bool> is_pivot(n, false);
    for (auto p : r.pivots)
        is_pivot[p] = true;
    std::vector<Vector> cols;
    for (std::size_t f = 0; f < n; ++f) {
        if (is_pivot[f])
            continue;
        Vector v(n);
        v[f] = 1;
        for (std::size_t k = 0; k < r.rank; ++k)
            v[r.pivots[k]] = -r.reduced(k, f);
        cols.push_back(std::move(v));
    }
    return {n, Matrix::from_columns(n, cols)};
}

Subspace column_space(const Matrix& a)
{
    RrefResult r = rref(a);
    std::vector<Vector> cols;
    for (auto p : r.pivots)
        cols.push_back(a.column(p));
    return {a.rows(), Matrix::from_columns(a.rows(), cols)};
}

Subspace intersect(const Subspace& a, const Subspace& b)
{
    if (a.ambient != b.ambient)
        throw DimensionError("intersecting subspaces of different ambient spaces");
    // x = A u = B v  <=>  [A | -B] (u, v) = 0
    Matrix neg_b = b.basis;
    neg_b *= Rational(-1);
    Subspace k = kernel_basis(a.basis.hstack(neg_b));
    Matrix u(a.dim(), k.dim());
    for (std::size_t i = 0; i < a.dim(); ++i)
        for (std::size_t j = 0; j < k.dim(); ++j)
            u(i, j) = k.basis(i, j);
    return column_space(a.basis * u);
}

bool contains(const Subspace& space, const Vector& v)
{
    return solve(space.basis, v).has_value();
}

std::optional<Vector> solve(const Matrix& a, const Vector& b)
{
    if (b.size() != a.rows())
        throw DimensionError("solve: right-hand side has length " + std::to_string(b.size()) + ", expected " +
                             std::to_string(a.rows()));
    Matrix rhs(b.size(), 1);
    rhs.set_column(0, b);
    auto x = solve(a, rhs);
    if (!x)
        return std::nullopt;
    return x->column(0);
}

std::optional<Matrix> solve(const Matrix& a, const Matrix& b)
{
    if (b.rows() != a.rows())
        throw DimensionError("solve: right-hand side row count mismatch");
    const std::size_t n = a.cols();
    RrefResult r = rref(a.hstack(b));
    Matrix x(n, b.cols());
    for (std::size_t k = 0; k < r.rank; ++k) {
        std::size_t p = r.pivots[k];
        if (p >= n)
            return std::nullopt;  // pivot in the augmented block
        for (std::size_t j = 0; j < b.cols(); ++j)
            x(p, j) = r.reduced(k, n + j);
    }
    return x;
}

std::optional<Matrix> inverse(const Matrix& a)
{
    if (a.rows() != a.cols())
        return std::nullopt;
    if (rank(a) != a.rows())
        return std::nullopt;
    return solve(a, Matrix::identity(a.rows()));
}

Rational determinant(const Matrix& a)
{
    if (a.rows() != a.cols())
        throw DimensionError("determinant of a non-square matrix");
    Matrix m = a;
    const std::size_t n = m.rows();
    Rational det = 1;
    for (std::size_t col = 0; col < n; ++col) {
        std::size_t piv = col;
        while (piv < n && m(piv, col) == 0)
            ++piv;
        if (piv == n)
            return 0;
        if (piv != col) {
            for (std::size_t j = col; j < n; ++j)
                std::swap(m(piv, j), m(col, j));
            det = -det;
        }
        det *= m(col, col);
        for (std::size_t i = col + 1; i < n; ++i) {
            if (m(i, col) == 0)
                continue;
            const Rational f = m(i, col) / m(col, col);
            for (std::size_t j = col; j < n; ++j)
                m(i, j) -= f * m(col, j);
        }
    }
    return det;
}

HomologyResult homology(const Matrix& d_out, const Matrix& d_in)
{
    if (d_out.cols() != d_in.rows())
        throw DimensionError("homology: differentials are not composable");
    if (!(d_out * d_in).is_zero())
        throw InvariantError("homology: composite of differentials is nonzero");
    const std::size_t n = d_out.cols();
    Subspace z = kernel_basis(d_out);
    // Reduce kernel vectors modulo the image: rref of [im | ker] and keep the
    // kernel columns that become pivots.
    Matrix combined = d_in.hstack(z.basis);
    RrefResult r = rref(combined);
    std::vector<Vector> reps;
    for (auto p : r.pivots)
        if (p >= d_in.cols())
            reps.push_back(z.basis.column(p - d_in.cols()));
    return {reps.size(), Matrix::from_columns(n, reps)};
}

std::size_t homology_dim(const Matrix& d_out, const Matrix& d_in)
{
    if (d_out.cols() != d_in.rows())
        throw DimensionError("homology_dim: differentials are not composable");
    if (!(d_out * d_in).is_zero())
        throw InvariantError("homology_dim: composite of differentials is nonzero");
    return d_out.cols() - rank(d_out) - rank(d_in);
}

QuotientMap::QuotientMap(std::size_t ambient, const Matrix& spanning_columns) : m_ambient(ambient)
{
    if (spanning_columns.rows() != ambient)
        throw DimensionError("quotient: spanning set lives in the wrong space");
    RrefResult r = rref(spanning_columns.transpose());
    Matrix trimmed(r.rank, ambient);
    for (std::size_t i = 0; i < r.rank; ++i)
        for (std::size_t j = 0; j < ambient; ++j)
            trimmed(i, j) = r.reduced(i, j);
    m_rows = std::move(trimmed);
    m_pivots = r.pivots;
    std::vector<bool> is_pivot(ambient, false);
    for (auto p : m_pivots)
        is_pivot[p] = true;
    for (std::size_t j = 0; j < ambient; ++j)
        if (!is_pivot[j])
            m_free.push_back(j);
}

Vector QuotientMap::project(const Vector& v) const
{
    if (v.size() != m_ambient)
        throw DimensionError("quotient: vector has the wrong length");
    Vector w = v;
    for (std::size_t k = 0; k < m_pivots.size(); ++k) {
        const Rational f = w[m_pivots[k]];
        if (f == 0)
            continue;
        for (std::size_t j = 0; j < m_ambient; ++j)
            if (m_rows(k, j) != 0)
                w[j] -= f * m_rows(k, j);
    }
    Vector out(m_free.size());
    for (std::size_t i = 0; i < m_free.size(); ++i)
        out[i] = w[m_free[i]];
    return out;
}

Matrix QuotientMap::matrix() const
{
    Matrix m(dim(), m_ambient);
    for (std::size_t j = 0; j < m_ambient; ++j) {
        Vector e(m_ambient);
        e[j] = 1;
        Vector p = project(e);
        for (std::size_t i = 0; i < dim(); ++i)
            m(i, j) = p[i];
    }
    return m;
}

Matrix QuotientMap::lift_matrix() const
{
    Matrix m(m_ambient, dim());
    for (std::size_t i = 0; i < m_free.size(); ++i)
        m(m_free[i], i) = 1;
    return m;
}

}  // namespace freeq
