#pragma once

#include <gmpxx.h>

#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace rank_arrange {

using BigInt = mpz_class;
/// Always canonical: reduced, positive denominator.
using Rational = mpq_class;

using RationalVector = std::vector<Rational>;

/// Builds a canonical rational from numerator and denominator (den != 0).
Rational make_rational(const BigInt& num, const BigInt& den);
/// Parses "p/q" or "p"; throws Error on malformed text.
Rational parse_rational(const std::string& text);
/// "p/q", or "p" when the denominator is one.
std::string to_string(const Rational& r);
std::string to_string(const BigInt& z);

BigInt factorial(unsigned n);
BigInt binomial(unsigned n, unsigned k);
BigInt floor_of(const Rational& r);
BigInt ceil_of(const Rational& r);

// ---------------------------------------------------------------------------
// Integer polynomials in one variable t.

class IntPolynomial {
public:
    IntPolynomial() = default;
    /// Coefficients in ascending degree; trailing zeros are stripped.
    explicit IntPolynomial(std::vector<BigInt> coefficients);

    static IntPolynomial monomial(const BigInt& c, std::size_t degree);
    /// Product (t - r_1)(t - r_2)...
    static IntPolynomial from_roots(const std::vector<long>& roots);

    bool is_zero() const { return coeffs_.empty(); }
    /// Degree; -1 for the zero polynomial.
    long degree() const { return static_cast<long>(coeffs_.size()) - 1; }
    const std::vector<BigInt>& coefficients() const { return coeffs_; }
    BigInt coefficient(std::size_t k) const;
    const BigInt& leading() const { return coeffs_.back(); }
    bool is_monic() const { return !is_zero() && leading() == 1; }

    BigInt evaluate(const BigInt& t) const;
    Rational evaluate(const Rational& t) const;

    /// Largest k with t^k dividing this polynomial (0 for the zero polynomial).
    std::size_t t_adic_valuation() const;
    /// Exact division by t^k; requires t_adic_valuation() >= k.
    IntPolynomial divide_by_t_power(std::size_t k) const;
    /// Divides by a monic divisor; nullopt when the remainder is nonzero.
    std::optional<IntPolynomial> exact_divide(const IntPolynomial& divisor) const;

    friend IntPolynomial operator+(const IntPolynomial& a, const IntPolynomial& b);
    friend IntPolynomial operator-(const IntPolynomial& a, const IntPolynomial& b);
    friend IntPolynomial operator*(const IntPolynomial& a, const IntPolynomial& b);
    friend bool operator==(const IntPolynomial& a, const IntPolynomial& b) = default;

    /// Human-readable form, highest degree first, e.g. "t^3 - 3*t^2 + 2*t".
    std::string to_string() const;

private:
    void trim();
    std::vector<BigInt> coeffs_;
};

/// Signless Stirling number of the first kind: coefficient of t^k in t(t+1)...(t+m-1).
/// Zero for k <= 0 or k > m.
BigInt stirling_first_signless(unsigned m, long k);

/// A sample (q, value) of an integer polynomial.
struct IntSample {
    BigInt q;
    BigInt value;
};

/// Lagrange interpolation over the rationals through the first `degree + 1`
/// samples. Throws InsufficientPoints when fewer distinct abscissae are given,
/// NonIntegralCoefficient if the interpolant is not in Z[t], and
/// ConsistencyFailure if a further sample lies off it.
IntPolynomial interpolate_integer_polynomial(const std::vector<IntSample>& samples,
                                             std::size_t degree);

// ---------------------------------------------------------------------------
// Exact rational linear algebra.

class RationalMatrix {
public:
    RationalMatrix() = default;
    RationalMatrix(std::size_t rows, std::size_t cols);
    static RationalMatrix identity(std::size_t n);
    /// From row vectors; all rows must have equal length.
    static RationalMatrix from_rows(const std::vector<RationalVector>& rows);

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    Rational& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
    const Rational& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

    RationalVector row(std::size_t r) const;
    RationalVector column(std::size_t c) const;
    RationalMatrix transposed() const;
    RationalVector operator*(const RationalVector& v) const;
    RationalMatrix operator*(const RationalMatrix& other) const;

    friend bool operator==(const RationalMatrix&, const RationalMatrix&) = default;

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<Rational> data_;
};

/// Reduced row-echelon form together with its pivot columns.
struct EchelonForm {
    RationalMatrix reduced;
    std::vector<std::size_t> pivots;
    std::size_t rank() const { return pivots.size(); }
};

EchelonForm reduced_row_echelon(RationalMatrix m);
std::size_t rank(const RationalMatrix& m);
/// One solution of m x = b, or NoSolution. Free variables are set to zero.
RationalVector solve(const RationalMatrix& m, const RationalVector& b);
/// Basis of {x : m x = 0}, as columns of the returned vector list.
std::vector<RationalVector> null_space(const RationalMatrix& m);
/// Orthogonal projection of u onto the column space of m.
RationalVector project_onto_column_space(const RationalMatrix& m, const RationalVector& u);

Rational dot(const RationalVector& a, const RationalVector& b);

}  // namespace rank_arrange
