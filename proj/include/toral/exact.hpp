#ifndef TORAL_EXACT_HPP
#define TORAL_EXACT_HPP

#include <cstddef>
#include <ostream>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <gmpxx.h>

#include "toral/errors.hpp"

namespace toral {

using Integer = mpz_class;

/*
 * Exact rational number. Always reduced with a positive denominator;
 * zero is 0/1. Backed by GMP's mpq_t.
 */
class Rational
{
    mpq_class v_;

public:
    Rational() = default;
    Rational(long n) : v_(n) {}
    Rational(int n) : v_(n) {}
    Rational(const Integer& n) : v_(n) {}
    template <class T>
    Rational(const __gmp_expr<mpz_t, T>& e) : v_(Integer(e))
    {
    }
    Rational(const Integer& num, const Integer& den);
    explicit Rational(const mpq_class& q) : v_(q) { v_.canonicalize(); }

    /// Parses "n", "-n" or "n/d" (d nonzero).
    static Rational parse(std::string_view text);

    Integer num() const { return v_.get_num(); }
    Integer den() const { return v_.get_den(); }
    const mpq_class& raw() const { return v_; }

    int sign() const { return sgn(v_); }
    bool is_zero() const { return sgn(v_) == 0; }
    bool is_integer() const { return v_.get_den() == 1; }

    /// Always "num/den", including for integers.
    std::string to_string() const;

    Rational operator-() const { return Rational(mpq_class(-v_)); }
    Rational& operator+=(const Rational& o) { v_ += o.v_; return *this; }
    Rational& operator-=(const Rational& o) { v_ -= o.v_; return *this; }
    Rational& operator*=(const Rational& o) { v_ *= o.v_; return *this; }
    Rational& operator/=(const Rational& o);

    friend Rational operator+(Rational a, const Rational& b) { return a += b; }
    friend Rational operator-(Rational a, const Rational& b) { return a -= b; }
    friend Rational operator*(Rational a, const Rational& b) { return a *= b; }
    friend Rational operator/(Rational a, const Rational& b) { return a /= b; }

    friend bool operator==(const Rational& a, const Rational& b) { return a.v_ == b.v_; }
    friend bool operator<(const Rational& a, const Rational& b) { return a.v_ < b.v_; }
    friend bool operator>(const Rational& a, const Rational& b) { return a.v_ > b.v_; }
    friend bool operator<=(const Rational& a, const Rational& b) { return a.v_ <= b.v_; }
    friend bool operator>=(const Rational& a, const Rational& b) { return a.v_ >= b.v_; }

    friend std::ostream& operator<<(std::ostream& os, const Rational& q) { return os << q.to_string(); }
};

Integer parse_integer(std::string_view text);

/// Dense row-major matrix over an exact ring.
template <typename T>
class Matrix
{
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<T> data_;

public:
    Matrix() = default;
    Matrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}
    Matrix(std::size_t rows, std::size_t cols, std::vector<T> entries)
        : rows_(rows), cols_(cols), data_(std::move(entries))
    {
        if (data_.size() != rows_ * cols_)
            throw PreconditionError("Matrix: entry count does not match rows * cols");
    }

    static Matrix identity(std::size_t n)
    {
        Matrix m(n, n);
        for (std::size_t i = 0; i < n; ++i)
            m(i, i) = T(1);
        return m;
    }

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    std::span<const T> entries() const { return data_; }

    T& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
    const T& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

    friend bool operator==(const Matrix& a, const Matrix& b)
    {
        return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
    }
};

using IntMatrix = Matrix<Integer>;
using RatMatrix = Matrix<Rational>;

/// Nonnegative gcd; the gcd of an empty or all-zero list is 0.
Integer gcd_all(std::span<const Integer> values);

/// Determinant of [[a, b], [c, d]], i.e. ad - bc.
Integer det2(const Integer& a, const Integer& b, const Integer& c, const Integer& d);

/// Rank over Q by fraction-free (Bareiss) elimination; pivots are chosen
/// by smallest bit length.
std::size_t rank_rational(const RatMatrix& m);
std::size_t rank_rational(const IntMatrix& m);

/*
 * Completes a primitive row (m, n) to [[m, n], [r, s]] with ms - nr = 1.
 * Among all solutions the one with smallest |r| is returned, ties broken
 * by smallest |s|. Throws PreconditionError unless gcd(m, n) = 1.
 */
IntMatrix unimodular_complement(const Integer& m, const Integer& n);

/// Exact integer square root test; negative values are never squares.
bool is_perfect_square(const Integer& z);

/// True iff q = c^2 for some rational c (0 counts).
bool is_rational_square(const Rational& q);

} // namespace toral

#endif
