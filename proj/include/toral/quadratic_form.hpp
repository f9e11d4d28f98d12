#ifndef TORAL_QUADRATIC_FORM_HPP
#define TORAL_QUADRATIC_FORM_HPP

#include <array>
#include <string>

#include "toral/exact.hpp"

namespace toral {

/// Linear form c1*s1 + c2*s2 in the degree-2 generators of H*(BT^2).
struct LinearForm
{
    Rational c1;
    Rational c2;

    friend bool operator==(const LinearForm&, const LinearForm&) = default;
};

/// A*s1^2 + B*s1*s2 + C*s2^2 over Q.
struct BinaryQuadraticForm
{
    Rational A;
    Rational B;
    Rational C;

    static BinaryQuadraticForm product(const LinearForm& x, const LinearForm& y);
    static BinaryQuadraticForm square(const LinearForm& x) { return product(x, x); }

    Rational discriminant() const { return B * B - Rational(4) * A * C; }
    bool is_zero() const { return A.is_zero() && B.is_zero() && C.is_zero(); }
    std::array<Rational, 3> coefficients() const { return {A, B, C}; }

    /// f(M s): the form in (s1, s2) obtained by setting t = M s, M a 2x2 matrix.
    BinaryQuadraticForm substitute(const RatMatrix& m) const;

    BinaryQuadraticForm& operator+=(const BinaryQuadraticForm& o);
    BinaryQuadraticForm& operator*=(const Rational& c);
    friend BinaryQuadraticForm operator+(BinaryQuadraticForm a, const BinaryQuadraticForm& b) { return a += b; }
    friend BinaryQuadraticForm operator*(const Rational& c, BinaryQuadraticForm f) { return f *= c; }

    friend bool operator==(const BinaryQuadraticForm&, const BinaryQuadraticForm&) = default;

    std::string to_string() const;
};

/// Isotropy class of a binary quadratic form over Q.
enum class IsotropyClass
{
    zero,        // form is identically zero
    degenerate,  // discriminant 0
    isotropic,   // discriminant a nonzero square
    anisotropic_minus_one, // -discriminant a square: similar to x^2 + y^2
    anisotropic_other,
};

IsotropyClass isotropy_class(const BinaryQuadraticForm& f);
const char* to_string(IsotropyClass c);

RatMatrix to_rational(const IntMatrix& m);

} // namespace toral

#endif
