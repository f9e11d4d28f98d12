#ifndef TORAL_CDGA_HPP
#define TORAL_CDGA_HPP

#include <compare>
#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "toral/exact.hpp"

namespace toral {

struct Generator
{
    std::string name;
    int degree = 0;
};

/*
 * A product of generators, stored as (generator index, exponent) pairs in
 * ascending index order with positive exponents. The empty monomial is 1.
 * Exponents of odd generators are kept at 1 by FreeAlgebra::multiply; a
 * Monomial itself does not know generator degrees.
 */
class Monomial
{
public:
    using Factor = std::pair<std::uint32_t, std::uint32_t>;

    Monomial() = default;
    explicit Monomial(std::vector<Factor> factors);

    static Monomial generator(std::uint32_t index) { return Monomial({{index, 1}}); }

    std::span<const Factor> factors() const { return factors_; }
    std::uint32_t exponent(std::uint32_t index) const;
    std::uint32_t word_length() const;
    bool is_one() const { return factors_.empty(); }

    auto operator<=>(const Monomial&) const = default;

private:
    std::vector<Factor> factors_;
};

/// Finite sum of monomials with nonzero rational coefficients.
class Polynomial
{
public:
    using Terms = std::map<Monomial, Rational>;

    Polynomial() = default;
    Polynomial(const Monomial& m, const Rational& c) { add_term(m, c); }

    static Polynomial constant(const Rational& c) { return Polynomial(Monomial(), c); }

    void add_term(const Monomial& m, const Rational& c);
    const Terms& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    Rational coefficient(const Monomial& m) const;

    Polynomial& operator+=(const Polynomial& o);
    Polynomial& operator-=(const Polynomial& o);
    Polynomial& operator*=(const Rational& c);
    friend Polynomial operator+(Polynomial a, const Polynomial& b) { return a += b; }
    friend Polynomial operator-(Polynomial a, const Polynomial& b) { return a -= b; }
    friend Polynomial operator*(Polynomial a, const Rational& c) { return a *= c; }
    friend Polynomial operator*(const Rational& c, Polynomial a) { return a *= c; }

    friend bool operator==(const Polynomial&, const Polynomial&) = default;

private:
    Terms terms_;
};

/*
 * Free graded-commutative algebra on named generators of degree >= 2.
 * Products follow the Koszul rule v*w = (-1)^{|v||w|} w*v, so odd
 * generators square to zero.
 */
class FreeAlgebra
{
public:
    FreeAlgebra() = default;
    explicit FreeAlgebra(std::vector<Generator> generators);

    std::span<const Generator> generators() const { return generators_; }
    std::size_t size() const { return generators_.size(); }
    std::optional<std::uint32_t> find(std::string_view name) const;

    int degree(const Monomial& m) const;
    /// Common degree of all terms, or nullopt for a non-homogeneous (or zero) polynomial.
    std::optional<int> homogeneous_degree(const Polynomial& p) const;

    Polynomial gen(std::uint32_t index) const { return Polynomial(Monomial::generator(index), Rational(1)); }

    /// Product of two monomials as (sign, monomial); sign 0 when an odd generator repeats.
    std::pair<int, Monomial> multiply(const Monomial& a, const Monomial& b) const;
    Polynomial multiply(const Polynomial& p, const Polynomial& q) const;

    /// All monomials of the given degree, in ascending order.
    std::vector<Monomial> basis(int degree) const;

    std::string format(const Polynomial& p) const;

    friend bool operator==(const FreeAlgebra& a, const FreeAlgebra& b);

private:
    std::vector<Generator> generators_;
};

enum class ModelKind
{
    minimal,  // differential image must be decomposable
    relative, // decomposability not enforced
};

/*
 * Free CDGA (ΛV, d). The differential is given on generators and extended
 * as a degree +1 derivation. Construction rejects non-homogeneous images,
 * d∘d != 0 on a generator, and (for minimal models) linear terms in d.
 * Equality is structural: degrees and differential coefficients only.
 */
class FreeCDGA
{
public:
    FreeCDGA(FreeAlgebra algebra, std::vector<Polynomial> differential, ModelKind kind = ModelKind::minimal);

    const FreeAlgebra& algebra() const { return algebra_; }
    ModelKind kind() const { return kind_; }
    const Polynomial& d(std::uint32_t generator) const { return differential_[generator]; }

    Polynomial apply(const Polynomial& p) const;
    Polynomial apply(const Monomial& m) const;

    friend bool operator==(const FreeCDGA& a, const FreeCDGA& b);

private:
    FreeAlgebra algebra_;
    std::vector<Polynomial> differential_;
    ModelKind kind_;
};

Polynomial multiply(const FreeAlgebra& algebra, const Polynomial& p, const Polynomial& q);
Polynomial apply_differential(const FreeCDGA& a, const Polynomial& p);

/// b_0..b_max of H*(ΛV, d), computed degree by degree with exact ranks.
std::vector<std::size_t> betti_numbers(const FreeCDGA& a, int max_degree);

/// Coefficients of prod (1 + t^{n_i}).
std::vector<Integer> poincare_polynomial_spheres(std::span<const int> dims);

/// Cohomological dimension n together with the rational homotopy ranks d_j.
struct HomotopyProfile
{
    int n = 0;
    std::map<int, int> d; // j -> d_j, zero entries omitted

    int at(int j) const
    {
        auto it = d.find(j);
        return it == d.end() ? 0 : it->second;
    }
    void set(int j, int value);

    friend bool operator==(const HomotopyProfile&, const HomotopyProfile&) = default;
    friend auto operator<=>(const HomotopyProfile&, const HomotopyProfile&) = default;
};

HomotopyProfile make_profile(int n, std::initializer_list<std::pair<const int, int>> d);

/// Alternating sum Σ (-1)^j d_j.
int chi_pi(const HomotopyProfile& p);

struct EllipticReport
{
    bool even_bound = false;   // n >= Σ 2j d_{2j}
    int even_slack = 0;        // n - Σ 2j d_{2j}
    bool dimension_formula = false; // n == Σ (2j+1) d_{2j+1} - Σ (2j-1) d_{2j}
    int dimension_rhs = 0;
    bool torus_bound = false;  // k <= -χ_π
    int torus_slack = 0;       // -χ_π - k

    bool all() const { return even_bound && dimension_formula && torus_bound; }
};

EllipticReport check_elliptic_constraints(const HomotopyProfile& p, int torus_rank);

std::string to_string(const HomotopyProfile& p);

} // namespace toral

#endif
