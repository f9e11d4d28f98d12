#include "toral/models.hpp"

namespace toral {

namespace {

Polynomial quadratic(const BinaryQuadraticForm& f)
{
    Polynomial p;
    p.add_term(Monomial({{0, 2}}), f.A);
    p.add_term(Monomial({{0, 1}, {1, 1}}), f.B);
    p.add_term(Monomial({{1, 2}}), f.C);
    return p;
}

FreeCDGA two_variable_model(std::span<const BinaryQuadraticForm> forms, std::size_t n_odd)
{
    std::vector<Generator> gens{{"s1", 2}, {"s2", 2}};
    for (std::size_t i = 1; i <= n_odd; ++i)
        gens.push_back({"x" + std::to_string(i), 3});
    FreeAlgebra alg(std::move(gens));
    std::vector<Polynomial> d(alg.size());
    for (std::size_t i = 0; i < forms.size() && i < n_odd; ++i)
        d[2 + i] = quadratic(forms[i]);
    return FreeCDGA(std::move(alg), std::move(d));
}

} // namespace

FreeCDGA quotient_model(const TorusActionS3& act)
{
    const auto forms = differential_rows(act);
    return two_variable_model(forms, forms.size());
}

FreeCDGA canonical_t2_model(Kind kind, std::size_t n_factors)
{
    const Rational z(0), o(1);
    std::vector<BinaryQuadraticForm> forms;
    switch (kind) {
    case Kind::S2xS2_PRODUCT:
        forms = {{o, z, z}, {z, z, o}};
        break;
    case Kind::CP2_CONNSUM_PRODUCT:
        forms = {{z, o, z}, {o, z, Rational(-1)}};
        break;
    case Kind::T1_S2xS2_PRODUCT:
        forms = {{o, z, z}, {z, o, z}, {z, z, o}};
        break;
    default:
        throw PreconditionError(std::string("canonical_t2_model: not a T^2 quotient kind: ") + to_string(kind));
    }
    if (n_factors < forms.size())
        throw PreconditionError("canonical_t2_model: too few factors for " + std::string(to_string(kind)));
    return two_variable_model(forms, n_factors);
}

FreeCDGA circle_quotient_model(std::span<const Integer> lambda, const Integer& alpha)
{
    std::vector<Generator> gens{{"u", 2}};
    for (std::size_t i = 1; i <= lambda.size(); ++i)
        gens.push_back({"x" + std::to_string(i), 3});
    gens.push_back({"y", 5});
    FreeAlgebra alg(std::move(gens));
    std::vector<Polynomial> d(alg.size());
    for (std::size_t i = 0; i < lambda.size(); ++i)
        d[1 + i] = Polynomial(Monomial({{0, 2}}), Rational(lambda[i]));
    d.back() = Polynomial(Monomial({{0, 3}}), Rational(alpha));
    return FreeCDGA(std::move(alg), std::move(d));
}

FreeCDGA canonical_circle_model(Kind kind, std::size_t m)
{
    std::vector<Integer> lambda(m, 0);
    Integer alpha = 1;
    if (kind == Kind::S2xS5_PRODUCT) {
        if (m == 0)
            throw PreconditionError("canonical_circle_model: S2xS5_PRODUCT needs m >= 1");
        lambda[0] = 1;
        alpha = 0;
    } else if (kind != Kind::CP2_PRODUCT) {
        throw PreconditionError(std::string("canonical_circle_model: not a circle quotient kind: ") + to_string(kind));
    }
    return circle_quotient_model(lambda, alpha);
}

int formal_dimension(const FreeCDGA& model)
{
    int n = 0;
    for (const auto& g : model.algebra().generators())
        n += g.degree % 2 ? g.degree : -(g.degree - 1);
    return n;
}

std::optional<BinaryQuadraticForm> degree_four_square_map(std::span<const BinaryQuadraticForm> relations)
{
    std::vector<std::array<Rational, 3>> basis;
    for (const auto& f : relations) {
        if (basis.empty()) {
            if (!f.is_zero())
                basis.push_back(f.coefficients());
            continue;
        }
        const auto& w = basis[0];
        const auto v = f.coefficients();
        std::array<Rational, 3> n{w[1] * v[2] - w[2] * v[1], w[2] * v[0] - w[0] * v[2], w[0] * v[1] - w[1] * v[0]};
        if (n[0].is_zero() && n[1].is_zero() && n[2].is_zero())
            continue;
        if (basis.size() == 1) {
            basis.push_back(v);
            continue;
        }
        // a third independent relation means the quotient is zero
        const auto& u = basis[1];
        std::array<Rational, 3> m{w[1] * u[2] - w[2] * u[1], w[2] * u[0] - w[0] * u[2], w[0] * u[1] - w[1] * u[0]};
        if (!(m[0] * v[0] + m[1] * v[1] + m[2] * v[2]).is_zero())
            return std::nullopt;
    }
    if (basis.size() != 2)
        return std::nullopt;
    const auto& w = basis[0];
    const auto& u = basis[1];
    // (α s1 + β s2)^2 = α^2 s1^2 + 2αβ s1s2 + β^2 s2^2, paired with the normal vector
    const Rational n1 = w[1] * u[2] - w[2] * u[1];
    const Rational n2 = w[2] * u[0] - w[0] * u[2];
    const Rational n3 = w[0] * u[1] - w[1] * u[0];
    return BinaryQuadraticForm{n1, Rational(2) * n2, n3};
}

} // namespace toral
