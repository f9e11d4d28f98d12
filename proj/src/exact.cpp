#include "toral/exact.hpp"

#include <algorithm>
#include <cctype>
#include <utility>

namespace toral {

Rational::Rational(const Integer& num, const Integer& den)
{
    if (den == 0)
        throw PreconditionError("Rational: zero denominator");
    v_ = mpq_class(num, den);
    v_.canonicalize();
}

Rational& Rational::operator/=(const Rational& o)
{
    if (o.is_zero())
        throw PreconditionError("Rational: division by zero");
    v_ /= o.v_;
    return *this;
}

std::string Rational::to_string() const
{
    return v_.get_num().get_str() + "/" + v_.get_den().get_str();
}

Integer parse_integer(std::string_view text)
{
    std::string_view digits = text;
    if (!digits.empty() && (digits.front() == '-' || digits.front() == '+'))
        digits.remove_prefix(1);
    if (digits.empty() || !std::all_of(digits.begin(), digits.end(), [](unsigned char c) { return std::isdigit(c); }))
        throw ParseError("not a decimal integer: '" + std::string(text) + "'");
    std::string s(text.front() == '+' ? text.substr(1) : text);
    return Integer(s, 10);
}

Rational Rational::parse(std::string_view text)
{
    auto slash = text.find('/');
    if (slash == std::string_view::npos)
        return Rational(parse_integer(text));
    Integer num = parse_integer(text.substr(0, slash));
    Integer den = parse_integer(text.substr(slash + 1));
    if (den == 0)
        throw ParseError("zero denominator in '" + std::string(text) + "'");
    return Rational(num, den);
}

Integer gcd_all(std::span<const Integer> values)
{
    Integer g = 0;
    for (const auto& v : values) {
        mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), v.get_mpz_t());
        if (g == 1)
            break;
    }
    return g;
}

Integer det2(const Integer& a, const Integer& b, const Integer& c, const Integer& d)
{
    return a * d - b * c;
}

namespace {

std::size_t bareiss_rank(IntMatrix m)
{
    const std::size_t rows = m.rows();
    const std::size_t cols = m.cols();
    std::vector<std::size_t> col_of(cols);
    for (std::size_t c = 0; c < cols; ++c)
        col_of[c] = c;

    Integer prev = 1;
    std::size_t rank = 0;
    for (std::size_t k = 0; k < std::min(rows, cols); ++k) {
        // smallest bit length among the remaining submatrix
        std::size_t best_r = rows, best_c = cols, best_bits = 0;
        for (std::size_t r = k; r < rows; ++r) {
            for (std::size_t c = k; c < cols; ++c) {
                const Integer& e = m(r, col_of[c]);
                if (e == 0)
                    continue;
                std::size_t bits = mpz_sizeinbase(e.get_mpz_t(), 2);
                if (best_r == rows || bits < best_bits) {
                    best_r = r;
                    best_c = c;
                    best_bits = bits;
                }
            }
        }
        if (best_r == rows)
            break;
        if (best_r != k)
            for (std::size_t c = 0; c < cols; ++c)
                std::swap(m(k, c), m(best_r, c));
        std::swap(col_of[k], col_of[best_c]);

        const Integer pivot = m(k, col_of[k]);
        for (std::size_t r = k + 1; r < rows; ++r) {
            const Integer factor = m(r, col_of[k]);
            for (std::size_t c = k + 1; c < cols; ++c) {
                Integer& e = m(r, col_of[c]);
                e = pivot * e - factor * m(k, col_of[c]);
                mpz_divexact(e.get_mpz_t(), e.get_mpz_t(), prev.get_mpz_t());
            }
            m(r, col_of[k]) = 0;
        }
        prev = pivot;
        ++rank;
    }
    return rank;
}

} // namespace

std::size_t rank_rational(const IntMatrix& m)
{
    return bareiss_rank(m);
}

std::size_t rank_rational(const RatMatrix& m)
{
    // Clearing denominators row by row does not change the rank.
    IntMatrix scaled(m.rows(), m.cols());
    for (std::size_t r = 0; r < m.rows(); ++r) {
        Integer l = 1;
        for (std::size_t c = 0; c < m.cols(); ++c)
            mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), m(r, c).den().get_mpz_t());
        for (std::size_t c = 0; c < m.cols(); ++c)
            scaled(r, c) = m(r, c).num() * (l / m(r, c).den());
    }
    return bareiss_rank(std::move(scaled));
}

IntMatrix unimodular_complement(const Integer& m, const Integer& n)
{
    Integer g, x, y;
    mpz_gcdext(g.get_mpz_t(), x.get_mpz_t(), y.get_mpz_t(), m.get_mpz_t(), n.get_mpz_t());
    if (g != 1)
        throw PreconditionError("unimodular_complement: gcd(" + m.get_str() + ", " + n.get_str() + ") != 1");

    // m*x + n*y = 1, so (r, s) = (-y, x) solves ms - nr = 1. All solutions
    // are (r + t*m, s + t*n).
    Integer r0 = -y;
    Integer s0 = x;
    auto better = [](const Integer& r1, const Integer& s1, const Integer& r2, const Integer& s2) {
        Integer ar1 = abs(r1), ar2 = abs(r2);
        if (ar1 != ar2)
            return ar1 < ar2;
        return abs(s1) < abs(s2);
    };

    Integer best_r, best_s;
    if (m == 0) {
        // n = +-1: r is forced, s is free; smallest |s| is 0.
        best_r = -n;
        best_s = 0;
    } else {
        Integer t;
        mpz_fdiv_q(t.get_mpz_t(), Integer(-r0).get_mpz_t(), m.get_mpz_t());
        best_r = r0 + t * m;
        best_s = s0 + t * n;
        for (int step = -1; step <= 2; ++step) {
            Integer tt = t + step;
            Integer r = r0 + tt * m;
            Integer s = s0 + tt * n;
            if (better(r, s, best_r, best_s)) {
                best_r = r;
                best_s = s;
            }
        }
    }
    return IntMatrix(2, 2, {m, n, best_r, best_s});
}

bool is_perfect_square(const Integer& z)
{
    if (z < 0)
        return false;
    return mpz_perfect_square_p(z.get_mpz_t()) != 0;
}

bool is_rational_square(const Rational& q)
{
    if (q.is_zero())
        return true;
    return is_perfect_square(q.num()) && is_perfect_square(q.den());
}

} // namespace toral
