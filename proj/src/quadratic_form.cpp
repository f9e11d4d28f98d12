#include "toral/quadratic_form.hpp"

namespace toral {

BinaryQuadraticForm BinaryQuadraticForm::product(const LinearForm& x, const LinearForm& y)
{
    return {x.c1 * y.c1, x.c1 * y.c2 + x.c2 * y.c1, x.c2 * y.c2};
}

BinaryQuadraticForm BinaryQuadraticForm::substitute(const RatMatrix& m) const
{
    if (m.rows() != 2 || m.cols() != 2)
        throw PreconditionError("substitute: expected a 2x2 matrix");
    const LinearForm t1{m(0, 0), m(0, 1)};
    const LinearForm t2{m(1, 0), m(1, 1)};
    BinaryQuadraticForm out = A * square(t1);
    out += B * product(t1, t2);
    out += C * square(t2);
    return out;
}

BinaryQuadraticForm& BinaryQuadraticForm::operator+=(const BinaryQuadraticForm& o)
{
    A += o.A;
    B += o.B;
    C += o.C;
    return *this;
}

BinaryQuadraticForm& BinaryQuadraticForm::operator*=(const Rational& c)
{
    A *= c;
    B *= c;
    C *= c;
    return *this;
}

std::string BinaryQuadraticForm::to_string() const
{
    return "(" + A.to_string() + ", " + B.to_string() + ", " + C.to_string() + ")";
}

IsotropyClass isotropy_class(const BinaryQuadraticForm& f)
{
    if (f.is_zero())
        return IsotropyClass::zero;
    const Rational disc = f.discriminant();
    if (disc.is_zero())
        return IsotropyClass::degenerate;
    if (is_rational_square(disc))
        return IsotropyClass::isotropic;
    if (is_rational_square(-disc))
        return IsotropyClass::anisotropic_minus_one;
    return IsotropyClass::anisotropic_other;
}

const char* to_string(IsotropyClass c)
{
    switch (c) {
    case IsotropyClass::zero: return "zero";
    case IsotropyClass::degenerate: return "degenerate";
    case IsotropyClass::isotropic: return "isotropic";
    case IsotropyClass::anisotropic_minus_one: return "anisotropic(-1)";
    case IsotropyClass::anisotropic_other: return "anisotropic(other)";
    }
    return "?";
}

RatMatrix to_rational(const IntMatrix& m)
{
    RatMatrix out(m.rows(), m.cols());
    for (std::size_t r = 0; r < m.rows(); ++r)
        for (std::size_t c = 0; c < m.cols(); ++c)
            out(r, c) = Rational(m(r, c));
    return out;
}

} // namespace toral
