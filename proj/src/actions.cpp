#include "toral/actions.hpp"

#include <numeric>
#include <sstream>

namespace toral {

TorusActionS3::TorusActionS3(std::vector<ExponentRow> rows) : rows_(std::move(rows))
{
    if (rows_.empty())
        throw PreconditionError("a torus action needs at least one S^3 factor");
}

std::string TorusActionS3::to_string() const
{
    std::ostringstream os;
    os << "[";
    for (std::size_t i = 0; i < rows_.size(); ++i) {
        const auto& r = rows_[i];
        os << (i ? ", " : "") << "(" << r.a << "," << r.b << "," << r.k << "," << r.l << ")";
    }
    os << "]";
    return os.str();
}

bool is_effective(const TorusActionS3& act)
{
    std::vector<Integer> z_exps, w_exps;
    for (const auto& r : act.rows()) {
        z_exps.push_back(r.a);
        z_exps.push_back(r.b);
        w_exps.push_back(r.k);
        w_exps.push_back(r.l);
    }
    return gcd_all(z_exps) == 1 && gcd_all(w_exps) == 1;
}

FreenessReport check_freeness(const TorusActionS3& act)
{
    FreenessReport report;
    const std::size_t n = act.factors();
    if (n < 2) {
        report.diagnostic = "a rank-2 torus cannot act freely on a single S^3";
        return report;
    }
    if (n >= 64)
        throw PreconditionError("check_freeness: at most 63 factors supported");

    std::vector<const Integer*> c(n), m(n);
    std::vector<Integer> minors;
    minors.reserve(n * (n - 1) / 2);
    for (std::uint64_t sel = 0; sel < (std::uint64_t{1} << n); ++sel) {
        for (std::size_t i = 0; i < n; ++i) {
            const auto& r = act.row(i);
            bool second = (sel >> i) & 1U;
            c[i] = second ? &r.b : &r.a;
            m[i] = second ? &r.l : &r.k;
        }
        Integer g = 0;
        for (std::size_t i = 0; i < n && g != 1; ++i)
            for (std::size_t j = i + 1; j < n && g != 1; ++j) {
                Integer minor = det2(*c[i], *c[j], *m[i], *m[j]);
                mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), minor.get_mpz_t());
            }
        if (g != 1) {
            report.violating_selection = sel;
            report.violating_gcd = g;
            report.diagnostic = g == 0 ? "selection has a circle in its isotropy"
                                       : "selection has finite isotropy of order " + g.get_str();
            return report;
        }
    }
    report.free = true;
    return report;
}

bool is_free(const TorusActionS3& act)
{
    return check_freeness(act).free;
}

NormalizedActionS3 NormalizedActionS3::from_normal_form(TorusActionS3 act, NormalizationWitness witness)
{
    if (act.factors() < 2)
        throw PreconditionError("normal form needs at least two factors");
    const auto& r1 = act.row(0);
    const auto& r2 = act.row(1);
    if (r1.a == 0 || r1.k != 0 || (r1.b == 0 && r1.l == 0) || r2.k * r2.l == 0)
        throw PreconditionError("not in normal form (need a1 != 0, k1 = 0, (b1,l1) != 0, k2*l2 != 0): " +
                                act.to_string());
    if (witness.permutation.empty()) {
        witness.permutation.resize(act.factors());
        std::iota(witness.permutation.begin(), witness.permutation.end(), std::size_t{0});
    }
    return NormalizedActionS3(std::move(act), std::move(witness));
}

TorusActionS3 reparametrize(const TorusActionS3& act, const IntMatrix& u)
{
    if (u.rows() != 2 || u.cols() != 2)
        throw PreconditionError("reparametrize: expected a 2x2 matrix");
    const Integer& m = u(0, 0);
    const Integer& n = u(0, 1);
    const Integer& r = u(1, 0);
    const Integer& s = u(1, 1);
    const Integer det = det2(m, n, r, s);
    if (det != 1 && det != -1)
        throw PreconditionError("reparametrize: matrix is not unimodular");

    // (c, e) = c'(m, n) + e'(r, s)  =>  (c', e') = (c, e) U^{-1}
    auto map = [&](const Integer& c, const Integer& e) {
        return std::pair<Integer, Integer>{(c * s - e * r) * det, (-c * n + e * m) * det};
    };
    std::vector<ExponentRow> rows;
    rows.reserve(act.factors());
    for (const auto& row : act.rows()) {
        auto [a, k] = map(row.a, row.k);
        auto [b, l] = map(row.b, row.l);
        rows.push_back({a, b, k, l});
    }
    return TorusActionS3(std::move(rows));
}

RatMatrix induced_substitution(const IntMatrix& u)
{
    return to_rational(u);
}

std::vector<BinaryQuadraticForm> differential_rows(const TorusActionS3& act)
{
    std::vector<BinaryQuadraticForm> out;
    out.reserve(act.factors());
    for (const auto& r : act.rows())
        out.push_back({Rational(r.a * r.b), Rational(r.a * r.l + r.b * r.k), Rational(r.k * r.l)});
    return out;
}

NormalizedActionS3 normalize(const TorusActionS3& act)
{
    if (!is_effective(act))
        throw PreconditionError("normalize: action is not effective: " + act.to_string());
    const std::size_t n = act.factors();

    NormalizationWitness witness;
    witness.permutation.resize(n);
    std::iota(witness.permutation.begin(), witness.permutation.end(), std::size_t{0});

    std::vector<ExponentRow> rows = act.rows();

    // (i)
    std::size_t first = n;
    for (std::size_t i = 0; i < n; ++i)
        if (rows[i].a * rows[i].b != 0) {
            first = i;
            break;
        }
    if (first == n)
        throw FreenessViolation("normalize: no factor has a_i b_i != 0, so the action is not free: " +
                                act.to_string());
    std::swap(rows[0], rows[first]);
    std::swap(witness.permutation[0], witness.permutation[first]);

    // (ii)
    Integer d = gcd_all(std::vector<Integer>{rows[0].a, rows[0].k});
    witness.reparametrization = unimodular_complement(rows[0].a / d, rows[0].k / d);
    TorusActionS3 moved = reparametrize(TorusActionS3(std::move(rows)), witness.reparametrization);
    rows = moved.rows();

    // (iii)
    std::size_t second = n;
    for (std::size_t i = 1; i < n; ++i)
        if (rows[i].k * rows[i].l != 0) {
            second = i;
            break;
        }
    if (second == n)
        throw FreenessViolation("normalize: no factor i >= 2 has k_i l_i != 0 after reparametrization, "
                                "so the action is not free: " + act.to_string());
    std::swap(rows[1], rows[second]);
    std::swap(witness.permutation[1], witness.permutation[second]);

    TorusActionS3 result(std::move(rows));
    if (!is_effective(result) || !is_free(result))
        throw FreenessViolation("normalize: transformed action lost effectiveness or freeness: " + act.to_string());

    const auto before = differential_rows(act);
    const auto after = differential_rows(result);
    const RatMatrix sub = induced_substitution(witness.reparametrization);
    for (std::size_t i = 0; i < n; ++i)
        if (after[i].substitute(sub) != before[witness.permutation[i]])
            throw PreconditionError("normalize: differential rows do not match under the induced substitution");

    return NormalizedActionS3::from_normal_form(std::move(result), std::move(witness));
}

// ----------------------------------------------------------- circle actions

CircleActionSpheres::CircleActionSpheres(std::vector<SphereFactor> factors) : factors_(std::move(factors))
{
    if (factors_.empty())
        throw PreconditionError("a circle action needs at least one sphere factor");
    for (const auto& f : factors_) {
        if (f.sphere_dim < 2)
            throw PreconditionError("sphere dimension must be >= 2, got " + std::to_string(f.sphere_dim));
        const std::size_t expected = static_cast<std::size_t>((f.sphere_dim + 1) / 2);
        if (f.weights.size() != expected)
            throw PreconditionError("S^" + std::to_string(f.sphere_dim) + " needs " + std::to_string(expected) +
                                    " weights, got " + std::to_string(f.weights.size()));
    }
}

std::string CircleActionSpheres::to_string() const
{
    std::ostringstream os;
    for (std::size_t i = 0; i < factors_.size(); ++i) {
        os << (i ? " x " : "") << "S^" << factors_[i].sphere_dim << "(";
        for (std::size_t j = 0; j < factors_[i].weights.size(); ++j)
            os << (j ? "," : "") << factors_[i].weights[j];
        os << ")";
    }
    return os.str();
}

bool is_free_circle(const CircleActionSpheres& act)
{
    std::vector<std::vector<Integer>> choices;
    for (const auto& f : act.factors()) {
        auto w = f.weights;
        if (f.sphere_dim % 2 == 0)
            w.emplace_back(0);
        choices.push_back(std::move(w));
    }
    // odometer over one weight per factor
    std::vector<std::size_t> pick(choices.size(), 0);
    while (true) {
        Integer g = 0;
        for (std::size_t i = 0; i < choices.size(); ++i)
            mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), choices[i][pick[i]].get_mpz_t());
        if (g != 1)
            return false;
        std::size_t i = 0;
        while (i < pick.size() && ++pick[i] == choices[i].size())
            pick[i++] = 0;
        if (i == pick.size())
            return true;
    }
}

CircleEulerData circle_euler_data(const CircleActionSpheres& act)
{
    CircleEulerData out;
    for (const auto& f : act.factors()) {
        Integer product = 1;
        for (const auto& w : f.weights)
            product *= w;
        if (f.sphere_dim == 3)
            out.lambda.push_back(product);
        else if (f.sphere_dim == 5)
            out.alpha.push_back(product);
        else
            throw PreconditionError("circle_euler_data: only S^3 and S^5 factors are supported, got S^" +
                                    std::to_string(f.sphere_dim));
    }
    return out;
}

} // namespace toral
