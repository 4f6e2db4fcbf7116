#include "rank_arrange/exactmath.hpp"

#include "rank_arrange/errors.hpp"

#include <algorithm>
#include <sstream>

namespace rank_arrange {

Rational make_rational(const BigInt& num, const BigInt& den)
{
    if (den == 0) throw Error("rational with zero denominator");
    Rational r(num, den);
    r.canonicalize();
    return r;
}

Rational parse_rational(const std::string& text)
{
    const auto slash = text.find('/');
    try {
        if (slash == std::string::npos) return Rational(BigInt(text));
        return make_rational(BigInt(text.substr(0, slash)), BigInt(text.substr(slash + 1)));
    } catch (const std::invalid_argument&) {
        throw Error("malformed rational '" + text + "'");
    }
}

std::string to_string(const Rational& r)
{
    if (r.get_den() == 1) return r.get_num().get_str();
    return r.get_num().get_str() + "/" + r.get_den().get_str();
}

std::string to_string(const BigInt& z) { return z.get_str(); }

BigInt factorial(unsigned n)
{
    BigInt f;
    mpz_fac_ui(f.get_mpz_t(), n);
    return f;
}

BigInt binomial(unsigned n, unsigned k)
{
    BigInt b;
    mpz_bin_uiui(b.get_mpz_t(), n, k);
    return b;
}

BigInt floor_of(const Rational& r)
{
    BigInt q;
    mpz_fdiv_q(q.get_mpz_t(), r.get_num_mpz_t(), r.get_den_mpz_t());
    return q;
}

BigInt ceil_of(const Rational& r)
{
    BigInt q;
    mpz_cdiv_q(q.get_mpz_t(), r.get_num_mpz_t(), r.get_den_mpz_t());
    return q;
}

// ---------------------------------------------------------------------------

IntPolynomial::IntPolynomial(std::vector<BigInt> coefficients) : coeffs_(std::move(coefficients))
{
    trim();
}

void IntPolynomial::trim()
{
    while (!coeffs_.empty() && coeffs_.back() == 0) coeffs_.pop_back();
}

IntPolynomial IntPolynomial::monomial(const BigInt& c, std::size_t degree)
{
    std::vector<BigInt> cs(degree + 1, 0);
    cs[degree] = c;
    return IntPolynomial(std::move(cs));
}

IntPolynomial IntPolynomial::from_roots(const std::vector<long>& roots)
{
    IntPolynomial p({BigInt(1)});
    for (long r : roots) p = p * IntPolynomial({BigInt(-r), BigInt(1)});
    return p;
}

BigInt IntPolynomial::coefficient(std::size_t k) const
{
    return k < coeffs_.size() ? coeffs_[k] : BigInt(0);
}

BigInt IntPolynomial::evaluate(const BigInt& t) const
{
    BigInt acc = 0;
    for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * t + *it;
    return acc;
}

Rational IntPolynomial::evaluate(const Rational& t) const
{
    Rational acc = 0;
    for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * t + Rational(*it);
    return acc;
}

std::size_t IntPolynomial::t_adic_valuation() const
{
    std::size_t k = 0;
    while (k < coeffs_.size() && coeffs_[k] == 0) ++k;
    return coeffs_.empty() ? 0 : k;
}

IntPolynomial IntPolynomial::divide_by_t_power(std::size_t k) const
{
    if (t_adic_valuation() < k && !is_zero()) throw Error("polynomial not divisible by t^k");
    if (is_zero()) return {};
    return IntPolynomial(std::vector<BigInt>(coeffs_.begin() + static_cast<long>(k), coeffs_.end()));
}

std::optional<IntPolynomial> IntPolynomial::exact_divide(const IntPolynomial& divisor) const
{
    if (!divisor.is_monic()) throw Error("exact_divide requires a monic divisor");
    if (is_zero()) return IntPolynomial{};
    if (degree() < divisor.degree()) return std::nullopt;
    std::vector<BigInt> rem = coeffs_;
    const std::size_t dd = static_cast<std::size_t>(divisor.degree());
    std::vector<BigInt> quot(rem.size() - dd, 0);
    for (std::size_t i = quot.size(); i-- > 0;) {
        const BigInt c = rem[i + dd];
        quot[i] = c;
        for (std::size_t j = 0; j <= dd; ++j) rem[i + j] -= c * divisor.coeffs_[j];
    }
    for (const auto& r : rem)
        if (r != 0) return std::nullopt;
    return IntPolynomial(std::move(quot));
}

IntPolynomial operator+(const IntPolynomial& a, const IntPolynomial& b)
{
    std::vector<BigInt> cs(std::max(a.coeffs_.size(), b.coeffs_.size()), 0);
    for (std::size_t i = 0; i < a.coeffs_.size(); ++i) cs[i] += a.coeffs_[i];
    for (std::size_t i = 0; i < b.coeffs_.size(); ++i) cs[i] += b.coeffs_[i];
    return IntPolynomial(std::move(cs));
}

IntPolynomial operator-(const IntPolynomial& a, const IntPolynomial& b)
{
    std::vector<BigInt> cs(std::max(a.coeffs_.size(), b.coeffs_.size()), 0);
    for (std::size_t i = 0; i < a.coeffs_.size(); ++i) cs[i] += a.coeffs_[i];
    for (std::size_t i = 0; i < b.coeffs_.size(); ++i) cs[i] -= b.coeffs_[i];
    return IntPolynomial(std::move(cs));
}

IntPolynomial operator*(const IntPolynomial& a, const IntPolynomial& b)
{
    if (a.is_zero() || b.is_zero()) return {};
    std::vector<BigInt> cs(a.coeffs_.size() + b.coeffs_.size() - 1, 0);
    for (std::size_t i = 0; i < a.coeffs_.size(); ++i)
        for (std::size_t j = 0; j < b.coeffs_.size(); ++j) cs[i + j] += a.coeffs_[i] * b.coeffs_[j];
    return IntPolynomial(std::move(cs));
}

std::string IntPolynomial::to_string() const
{
    if (is_zero()) return "0";
    std::ostringstream out;
    bool first = true;
    for (std::size_t k = coeffs_.size(); k-- > 0;) {
        const BigInt& c = coeffs_[k];
        if (c == 0) continue;
        BigInt mag = abs(c);
        if (first) {
            if (c < 0) out << "-";
        } else {
            out << (c < 0 ? " - " : " + ");
        }
        first = false;
        if (k == 0) {
            out << mag;
            continue;
        }
        if (mag != 1) out << mag << "*";
        out << "t";
        if (k > 1) out << "^" << k;
    }
    return out.str();
}

// ---------------------------------------------------------------------------

BigInt stirling_first_signless(unsigned m, long k)
{
    if (k <= 0 || k > static_cast<long>(m)) return 0;
    // row[k] holds the coefficient of t^k in t(t+1)...(t+j-1)
    std::vector<BigInt> row{0, 1};
    for (unsigned j = 2; j <= m; ++j) {
        std::vector<BigInt> next(j + 1, 0);
        for (unsigned i = 1; i <= j; ++i) {
            if (i - 1 < row.size()) next[i] += row[i - 1];
            if (i < row.size()) next[i] += BigInt(j - 1) * row[i];
        }
        row = std::move(next);
    }
    return row[static_cast<std::size_t>(k)];
}

IntPolynomial interpolate_integer_polynomial(const std::vector<IntSample>& samples,
                                             std::size_t degree)
{
    const std::size_t n = degree + 1;
    if (samples.size() < n) throw InsufficientPoints("need at least degree+1 samples");
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j)
            if (samples[i].q == samples[j].q) throw InsufficientPoints("sample abscissae are not distinct");

    std::vector<Rational> result(n, 0);
    for (std::size_t i = 0; i < n; ++i) {
        // basis polynomial prod_{j != i} (t - q_j), accumulated in ascending order
        std::vector<Rational> basis{Rational(1)};
        Rational denom = 1;
        for (std::size_t j = 0; j < n; ++j) {
            if (j == i) continue;
            std::vector<Rational> next(basis.size() + 1, 0);
            for (std::size_t k = 0; k < basis.size(); ++k) {
                next[k + 1] += basis[k];
                next[k] -= basis[k] * Rational(samples[j].q);
            }
            basis = std::move(next);
            denom *= Rational(samples[i].q - samples[j].q);
        }
        const Rational scale = Rational(samples[i].value) / denom;
        for (std::size_t k = 0; k < basis.size(); ++k) result[k] += basis[k] * scale;
    }
    std::vector<BigInt> coeffs;
    coeffs.reserve(n);
    for (std::size_t k = 0; k < n; ++k) {
        if (result[k].get_den() != 1)
            throw NonIntegralCoefficient("coefficient of t^" + std::to_string(k) + " is " +
                                         rank_arrange::to_string(result[k]));
        coeffs.push_back(result[k].get_num());
    }
    IntPolynomial poly(std::move(coeffs));
    for (std::size_t i = n; i < samples.size(); ++i)
        if (poly.evaluate(samples[i].q) != samples[i].value)
            throw ConsistencyFailure("sample at t=" + samples[i].q.get_str() + " is off the interpolant");
    return poly;
}

// ---------------------------------------------------------------------------

RationalMatrix::RationalMatrix(std::size_t rows, std::size_t cols)
    : rows_(rows), cols_(cols), data_(rows * cols, Rational(0))
{
}

RationalMatrix RationalMatrix::identity(std::size_t n)
{
    RationalMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
    return m;
}

RationalMatrix RationalMatrix::from_rows(const std::vector<RationalVector>& rows)
{
    if (rows.empty()) return {};
    RationalMatrix m(rows.size(), rows.front().size());
    for (std::size_t r = 0; r < rows.size(); ++r) {
        if (rows[r].size() != m.cols_) throw DimensionMismatch("ragged rows");
        for (std::size_t c = 0; c < m.cols_; ++c) m(r, c) = rows[r][c];
    }
    return m;
}

RationalVector RationalMatrix::row(std::size_t r) const
{
    return RationalVector(data_.begin() + static_cast<long>(r * cols_),
                          data_.begin() + static_cast<long>((r + 1) * cols_));
}

RationalVector RationalMatrix::column(std::size_t c) const
{
    RationalVector v(rows_);
    for (std::size_t r = 0; r < rows_; ++r) v[r] = (*this)(r, c);
    return v;
}

RationalMatrix RationalMatrix::transposed() const
{
    RationalMatrix t(cols_, rows_);
    for (std::size_t r = 0; r < rows_; ++r)
        for (std::size_t c = 0; c < cols_; ++c) t(c, r) = (*this)(r, c);
    return t;
}

RationalVector RationalMatrix::operator*(const RationalVector& v) const
{
    if (v.size() != cols_) throw DimensionMismatch("matrix-vector size mismatch");
    RationalVector out(rows_, Rational(0));
    for (std::size_t r = 0; r < rows_; ++r)
        for (std::size_t c = 0; c < cols_; ++c) out[r] += (*this)(r, c) * v[c];
    return out;
}

RationalMatrix RationalMatrix::operator*(const RationalMatrix& other) const
{
    if (other.rows_ != cols_) throw DimensionMismatch("matrix product size mismatch");
    RationalMatrix out(rows_, other.cols_);
    for (std::size_t r = 0; r < rows_; ++r)
        for (std::size_t k = 0; k < cols_; ++k) {
            const Rational& a = (*this)(r, k);
            if (a == 0) continue;
            for (std::size_t c = 0; c < other.cols_; ++c) out(r, c) += a * other(k, c);
        }
    return out;
}

EchelonForm reduced_row_echelon(RationalMatrix m)
{
    EchelonForm ef;
    std::size_t pivot_row = 0;
    for (std::size_t c = 0; c < m.cols() && pivot_row < m.rows(); ++c) {
        std::size_t sel = pivot_row;
        while (sel < m.rows() && m(sel, c) == 0) ++sel;
        if (sel == m.rows()) continue;
        if (sel != pivot_row)
            for (std::size_t k = 0; k < m.cols(); ++k) std::swap(m(sel, k), m(pivot_row, k));
        const Rational inv = 1 / m(pivot_row, c);
        for (std::size_t k = c; k < m.cols(); ++k) m(pivot_row, k) *= inv;
        for (std::size_t r = 0; r < m.rows(); ++r) {
            if (r == pivot_row || m(r, c) == 0) continue;
            const Rational f = m(r, c);
            for (std::size_t k = c; k < m.cols(); ++k) m(r, k) -= f * m(pivot_row, k);
        }
        ef.pivots.push_back(c);
        ++pivot_row;
    }
    ef.reduced = std::move(m);
    return ef;
}

std::size_t rank(const RationalMatrix& m) { return reduced_row_echelon(m).rank(); }

RationalVector solve(const RationalMatrix& m, const RationalVector& b)
{
    if (b.size() != m.rows()) throw DimensionMismatch("solve: right-hand side size mismatch");
    RationalMatrix aug(m.rows(), m.cols() + 1);
    for (std::size_t r = 0; r < m.rows(); ++r) {
        for (std::size_t c = 0; c < m.cols(); ++c) aug(r, c) = m(r, c);
        aug(r, m.cols()) = b[r];
    }
    const EchelonForm ef = reduced_row_echelon(std::move(aug));
    if (!ef.pivots.empty() && ef.pivots.back() == m.cols()) throw NoSolution("inconsistent linear system");
    RationalVector x(m.cols(), Rational(0));
    for (std::size_t i = 0; i < ef.pivots.size(); ++i) x[ef.pivots[i]] = ef.reduced(i, m.cols());
    return x;
}

std::vector<RationalVector> null_space(const RationalMatrix& m)
{
    const EchelonForm ef = reduced_row_echelon(m);
    std::vector<bool> is_pivot(m.cols(), false);
    for (auto p : ef.pivots) is_pivot[p] = true;
    std::vector<RationalVector> basis;
    for (std::size_t f = 0; f < m.cols(); ++f) {
        if (is_pivot[f]) continue;
        RationalVector v(m.cols(), Rational(0));
        v[f] = 1;
        for (std::size_t i = 0; i < ef.pivots.size(); ++i) v[ef.pivots[i]] = -ef.reduced(i, f);
        basis.push_back(std::move(v));
    }
    return basis;
}

RationalVector project_onto_column_space(const RationalMatrix& m, const RationalVector& u)
{
    if (u.size() != m.rows()) throw DimensionMismatch("projection: vector size mismatch");
    // Normal equations restricted to an independent set of columns.
    const EchelonForm ef = reduced_row_echelon(m);
    RationalMatrix basis(m.rows(), ef.rank());
    for (std::size_t j = 0; j < ef.rank(); ++j)
        for (std::size_t r = 0; r < m.rows(); ++r) basis(r, j) = m(r, ef.pivots[j]);
    if (ef.rank() == 0) return RationalVector(u.size(), Rational(0));
    const RationalMatrix bt = basis.transposed();
    const RationalVector coeffs = solve(bt * basis, bt * u);
    return basis * coeffs;
}

Rational dot(const RationalVector& a, const RationalVector& b)
{
    if (a.size() != b.size()) throw DimensionMismatch("dot: size mismatch");
    Rational s = 0;
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

}  // namespace rank_arrange
