#include "toral/cdga.hpp"

#include <algorithm>
#include <functional>
#include <set>
#include <sstream>

namespace toral {

// ---------------------------------------------------------------- Monomial

Monomial::Monomial(std::vector<Factor> factors) : factors_(std::move(factors))
{
    std::sort(factors_.begin(), factors_.end());
    std::vector<Factor> merged;
    for (const auto& [idx, e] : factors_) {
        if (e == 0)
            continue;
        if (!merged.empty() && merged.back().first == idx)
            merged.back().second += e;
        else
            merged.emplace_back(idx, e);
    }
    factors_ = std::move(merged);
}

std::uint32_t Monomial::exponent(std::uint32_t index) const
{
    for (const auto& [idx, e] : factors_)
        if (idx == index)
            return e;
    return 0;
}

std::uint32_t Monomial::word_length() const
{
    std::uint32_t len = 0;
    for (const auto& f : factors_)
        len += f.second;
    return len;
}

// -------------------------------------------------------------- Polynomial

void Polynomial::add_term(const Monomial& m, const Rational& c)
{
    if (c.is_zero())
        return;
    auto [it, inserted] = terms_.try_emplace(m, c);
    if (!inserted) {
        it->second += c;
        if (it->second.is_zero())
            terms_.erase(it);
    }
}

Rational Polynomial::coefficient(const Monomial& m) const
{
    auto it = terms_.find(m);
    return it == terms_.end() ? Rational(0) : it->second;
}

Polynomial& Polynomial::operator+=(const Polynomial& o)
{
    for (const auto& [m, c] : o.terms_)
        add_term(m, c);
    return *this;
}

Polynomial& Polynomial::operator-=(const Polynomial& o)
{
    for (const auto& [m, c] : o.terms_)
        add_term(m, -c);
    return *this;
}

Polynomial& Polynomial::operator*=(const Rational& c)
{
    if (c.is_zero()) {
        terms_.clear();
        return *this;
    }
    for (auto& [m, coeff] : terms_)
        coeff *= c;
    return *this;
}

// ------------------------------------------------------------- FreeAlgebra

FreeAlgebra::FreeAlgebra(std::vector<Generator> generators) : generators_(std::move(generators))
{
    std::set<std::string> names;
    for (const auto& g : generators_) {
        if (g.degree < 2)
            throw PreconditionError("generator '" + g.name + "' has degree " + std::to_string(g.degree) +
                                    "; only simply connected models (degree >= 2) are supported");
        if (!names.insert(g.name).second)
            throw PreconditionError("duplicate generator name '" + g.name + "'");
    }
}

std::optional<std::uint32_t> FreeAlgebra::find(std::string_view name) const
{
    for (std::uint32_t i = 0; i < generators_.size(); ++i)
        if (generators_[i].name == name)
            return i;
    return std::nullopt;
}

int FreeAlgebra::degree(const Monomial& m) const
{
    int deg = 0;
    for (const auto& [idx, e] : m.factors())
        deg += generators_.at(idx).degree * static_cast<int>(e);
    return deg;
}

std::optional<int> FreeAlgebra::homogeneous_degree(const Polynomial& p) const
{
    std::optional<int> deg;
    for (const auto& [m, c] : p.terms()) {
        int d = degree(m);
        if (deg && *deg != d)
            return std::nullopt;
        deg = d;
    }
    return deg;
}

std::pair<int, Monomial> FreeAlgebra::multiply(const Monomial& a, const Monomial& b) const
{
    auto is_odd = [this](std::uint32_t idx) { return generators_.at(idx).degree % 2 != 0; };

    // Moving each odd factor of b left past the odd factors of a with larger
    // index costs one sign flip per pair.
    std::vector<std::uint32_t> odd_a;
    for (const auto& [idx, e] : a.factors())
        if (is_odd(idx))
            odd_a.push_back(idx);

    int sign = 1;
    for (const auto& [idx, e] : b.factors()) {
        if (!is_odd(idx))
            continue;
        if (e > 1)
            return {0, Monomial()};
        auto pos = std::lower_bound(odd_a.begin(), odd_a.end(), idx);
        if (pos != odd_a.end() && *pos == idx)
            return {0, Monomial()};
        if ((odd_a.end() - pos) % 2 != 0)
            sign = -sign;
    }

    std::vector<Monomial::Factor> factors(a.factors().begin(), a.factors().end());
    factors.insert(factors.end(), b.factors().begin(), b.factors().end());
    return {sign, Monomial(std::move(factors))};
}

Polynomial FreeAlgebra::multiply(const Polynomial& p, const Polynomial& q) const
{
    Polynomial out;
    for (const auto& [ma, ca] : p.terms()) {
        for (const auto& [mb, cb] : q.terms()) {
            auto [sign, m] = multiply(ma, mb);
            if (sign == 0)
                continue;
            Rational c = ca * cb;
            out.add_term(m, sign > 0 ? c : -c);
        }
    }
    return out;
}

std::vector<Monomial> FreeAlgebra::basis(int degree) const
{
    std::vector<Monomial> out;
    if (degree < 0)
        return out;
    std::vector<Monomial::Factor> current;
    std::function<void(std::size_t, int)> rec = [&](std::size_t idx, int remaining) {
        if (remaining == 0) {
            out.emplace_back(current);
            return;
        }
        if (idx == generators_.size())
            return;
        const int gdeg = generators_[idx].degree;
        const int max_exp = gdeg % 2 != 0 ? 1 : remaining / gdeg;
        for (int e = std::min(max_exp, remaining / gdeg); e >= 0; --e) {
            if (e > 0)
                current.emplace_back(static_cast<std::uint32_t>(idx), static_cast<std::uint32_t>(e));
            rec(idx + 1, remaining - e * gdeg);
            if (e > 0)
                current.pop_back();
        }
    };
    rec(0, degree);
    std::sort(out.begin(), out.end());
    return out;
}

std::string FreeAlgebra::format(const Polynomial& p) const
{
    if (p.is_zero())
        return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [m, c] : p.terms()) {
        Rational mag = c.sign() < 0 ? -c : c;
        if (first)
            os << (c.sign() < 0 ? "-" : "");
        else
            os << (c.sign() < 0 ? " - " : " + ");
        first = false;
        bool unit = mag == Rational(1);
        if (!unit || m.is_one()) {
            os << (mag.is_integer() ? mag.num().get_str() : mag.to_string());
            if (!m.is_one())
                os << "*";
        }
        bool first_factor = true;
        for (const auto& [idx, e] : m.factors()) {
            if (!first_factor)
                os << "*";
            first_factor = false;
            os << generators_.at(idx).name;
            if (e > 1)
                os << "^" << e;
        }
    }
    return os.str();
}

bool operator==(const FreeAlgebra& a, const FreeAlgebra& b)
{
    return std::equal(a.generators_.begin(), a.generators_.end(), b.generators_.begin(), b.generators_.end(),
                      [](const Generator& x, const Generator& y) { return x.degree == y.degree; });
}

// ---------------------------------------------------------------- FreeCDGA

FreeCDGA::FreeCDGA(FreeAlgebra algebra, std::vector<Polynomial> differential, ModelKind kind)
    : algebra_(std::move(algebra)), differential_(std::move(differential)), kind_(kind)
{
    const auto gens = algebra_.generators();
    if (differential_.size() != gens.size())
        throw PreconditionError("differential must be given on every generator");
    for (std::uint32_t i = 0; i < gens.size(); ++i) {
        const Polynomial& di = differential_[i];
        if (di.is_zero())
            continue;
        auto deg = algebra_.homogeneous_degree(di);
        if (!deg || *deg != gens[i].degree + 1)
            throw PreconditionError("d(" + gens[i].name + ") = " + algebra_.format(di) +
                                    " is not homogeneous of degree " + std::to_string(gens[i].degree + 1));
        if (kind_ == ModelKind::minimal)
            for (const auto& [m, c] : di.terms())
                if (m.word_length() < 2)
                    throw PreconditionError("d(" + gens[i].name + ") has a linear term; not a minimal model");
    }
    for (std::uint32_t i = 0; i < gens.size(); ++i) {
        Polynomial dd = apply(differential_[i]);
        if (!dd.is_zero())
            throw PreconditionError("d(d(" + gens[i].name + ")) = " + algebra_.format(dd) + " != 0");
    }
}

Polynomial FreeCDGA::apply(const Monomial& m) const
{
    const auto factors = m.factors();
    Polynomial out;
    Monomial prefix;
    int prefix_degree = 0;
    for (std::size_t i = 0; i < factors.size(); ++i) {
        const auto [idx, e] = factors[i];
        const Polynomial& dg = differential_[idx];
        if (!dg.is_zero()) {
            // d(g^e) = e g^{e-1} dg; only even generators have e > 1
            Polynomial middle = algebra_.multiply(
                Polynomial(Monomial({{idx, e - 1}}), Rational(static_cast<long>(e))), dg);
            std::vector<Monomial::Factor> suffix(factors.begin() + static_cast<std::ptrdiff_t>(i) + 1, factors.end());
            Polynomial term = algebra_.multiply(algebra_.multiply(Polynomial(prefix, Rational(1)), middle),
                                                Polynomial(Monomial(std::move(suffix)), Rational(1)));
            if (prefix_degree % 2 != 0)
                term *= Rational(-1);
            out += term;
        }
        std::vector<Monomial::Factor> grown(prefix.factors().begin(), prefix.factors().end());
        grown.emplace_back(idx, e);
        prefix = Monomial(std::move(grown));
        prefix_degree += algebra_.generators()[idx].degree * static_cast<int>(e);
    }
    return out;
}

Polynomial FreeCDGA::apply(const Polynomial& p) const
{
    Polynomial out;
    for (const auto& [m, c] : p.terms())
        out += apply(m) * c;
    return out;
}

bool operator==(const FreeCDGA& a, const FreeCDGA& b)
{
    return a.algebra_ == b.algebra_ && a.differential_ == b.differential_;
}

Polynomial multiply(const FreeAlgebra& algebra, const Polynomial& p, const Polynomial& q)
{
    return algebra.multiply(p, q);
}

Polynomial apply_differential(const FreeCDGA& a, const Polynomial& p)
{
    return a.apply(p);
}

namespace {

std::size_t differential_rank(const FreeCDGA& a, const std::vector<Monomial>& source, const std::vector<Monomial>& target)
{
    if (source.empty() || target.empty())
        return 0;
    std::map<Monomial, std::size_t> column;
    for (std::size_t i = 0; i < target.size(); ++i)
        column.emplace(target[i], i);
    RatMatrix m(source.size(), target.size());
    for (std::size_t r = 0; r < source.size(); ++r) {
        const Polynomial image = a.apply(source[r]);
        for (const auto& [mono, c] : image.terms())
            m(r, column.at(mono)) = c;
    }
    return rank_rational(m);
}

} // namespace

std::vector<std::size_t> betti_numbers(const FreeCDGA& a, int max_degree)
{
    if (max_degree < 0)
        throw PreconditionError("betti_numbers: max_degree must be >= 0");
    std::vector<std::vector<Monomial>> bases;
    for (int q = 0; q <= max_degree + 1; ++q)
        bases.push_back(a.algebra().basis(q));

    std::vector<std::size_t> rank(static_cast<std::size_t>(max_degree) + 1);
    for (std::size_t q = 0; q < rank.size(); ++q)
        rank[q] = differential_rank(a, bases[q], bases[q + 1]);

    std::vector<std::size_t> betti(rank.size());
    for (std::size_t q = 0; q < rank.size(); ++q) {
        std::size_t kernel = bases[q].size() - rank[q];
        betti[q] = kernel - (q > 0 ? rank[q - 1] : 0);
    }
    return betti;
}

std::vector<Integer> poincare_polynomial_spheres(std::span<const int> dims)
{
    std::vector<Integer> poly{1};
    for (int n : dims) {
        if (n < 2)
            throw PreconditionError("poincare_polynomial_spheres: sphere dimension must be >= 2");
        std::vector<Integer> next(poly.size() + static_cast<std::size_t>(n));
        for (std::size_t i = 0; i < poly.size(); ++i) {
            next[i] += poly[i];
            next[i + static_cast<std::size_t>(n)] += poly[i];
        }
        poly = std::move(next);
    }
    return poly;
}

// ---------------------------------------------------------- HomotopyProfile

void HomotopyProfile::set(int j, int value)
{
    if (value < 0)
        throw PreconditionError("homotopy rank d_" + std::to_string(j) + " must be >= 0");
    if (j < 1)
        throw PreconditionError("homotopy degree must be >= 1");
    if (j == 1 && value != 0)
        throw PreconditionError("d_1 must be 0 (simply connected)");
    if (value == 0)
        d.erase(j);
    else
        d[j] = value;
}

HomotopyProfile make_profile(int n, std::initializer_list<std::pair<const int, int>> d)
{
    HomotopyProfile p;
    p.n = n;
    for (const auto& [j, v] : d)
        p.set(j, v);
    return p;
}

int chi_pi(const HomotopyProfile& p)
{
    int chi = 0;
    for (const auto& [j, v] : p.d)
        chi += (j % 2 == 0) ? v : -v;
    return chi;
}

EllipticReport check_elliptic_constraints(const HomotopyProfile& p, int torus_rank)
{
    int even_weight = 0;
    int odd_sum = 0;
    int even_sum = 0;
    for (const auto& [j, v] : p.d) {
        if (j % 2 == 0) {
            even_weight += j * v;
            even_sum += (j - 1) * v;
        } else {
            odd_sum += j * v;
        }
    }
    EllipticReport r;
    r.even_slack = p.n - even_weight;
    r.even_bound = r.even_slack >= 0;
    r.dimension_rhs = odd_sum - even_sum;
    r.dimension_formula = r.dimension_rhs == p.n;
    r.torus_slack = -chi_pi(p) - torus_rank;
    r.torus_bound = r.torus_slack >= 0;
    return r;
}

std::string to_string(const HomotopyProfile& p)
{
    std::ostringstream os;
    os << "n=" << p.n;
    for (const auto& [j, v] : p.d)
        os << " d" << j << "=" << v;
    return os.str();
}

} // namespace toral
