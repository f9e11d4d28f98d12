#include "toral/classify.hpp"

#include <algorithm>
#include <functional>
#include <sstream>

#include "toral/models.hpp"

namespace toral {

const char* to_string(Kind k)
{
    switch (k) {
    case Kind::S2xS2_PRODUCT: return "S2xS2_PRODUCT";
    case Kind::CP2_CONNSUM_PRODUCT: return "CP2_CONNSUM_PRODUCT";
    case Kind::T1_S2xS2_PRODUCT: return "T1_S2xS2_PRODUCT";
    case Kind::S2xS5_PRODUCT: return "S2xS5_PRODUCT";
    case Kind::CP2_PRODUCT: return "CP2_PRODUCT";
    }
    return "?";
}

std::optional<Kind> parse_kind(std::string_view s)
{
    for (Kind k : {Kind::S2xS2_PRODUCT, Kind::CP2_CONNSUM_PRODUCT, Kind::T1_S2xS2_PRODUCT, Kind::S2xS5_PRODUCT,
                   Kind::CP2_PRODUCT})
        if (s == to_string(k))
            return k;
    return std::nullopt;
}

// ------------------------------------------------------------- rank bounds

int max_effective_rank(int n)
{
    if (n < 1)
        throw PreconditionError("dimension must be >= 1");
    return 2 * n / 3;
}

AlmostFreeRank max_almost_free_rank(int n)
{
    if (n < 1)
        throw PreconditionError("dimension must be >= 1");
    return {n / 3, n % 3 != 1};
}

SliceInvariants slice_invariants(int n)
{
    if (n < 3)
        throw PreconditionError("slice_invariants: n must be >= 3");
    SliceInvariants si;
    si.k = 2 * n / 3;
    si.s = n - si.k;
    si.almost_free_subrank = 2 * si.k - n;
    const int a = 2 * n - 3 * si.k;
    if (a < 0 || a > 2 || si.k != 2 * si.s - a || n != 3 * si.s - a)
        throw ClassificationViolation("slice arithmetic inconsistent at n = " + std::to_string(n));
    return si;
}

// ------------------------------------------------------------ profiles

int SphereFactorization::quotient_dimension() const
{
    int total = 0;
    for (int d : spheres)
        total += d;
    return total - circle_rank;
}

HomotopyProfile SphereFactorization::profile() const
{
    HomotopyProfile p;
    p.n = quotient_dimension();
    std::map<int, int> d;
    if (circle_rank > 0)
        d[2] += circle_rank;
    for (int dim : spheres) {
        d[dim] += 1;
        if (dim % 2 == 0)
            d[2 * dim - 1] += 1;
    }
    for (const auto& [j, v] : d)
        p.set(j, v);
    return p;
}

std::string SphereFactorization::to_string() const
{
    std::ostringstream os;
    os << "{";
    for (std::size_t i = 0; i < spheres.size(); ++i)
        os << (i ? "," : "") << "S" << spheres[i];
    os << "; l=" << circle_rank << "}";
    return os.str();
}

std::vector<SphereFactorization> profile_to_models(const HomotopyProfile& p)
{
    if (!check_elliptic_constraints(p, 0).all())
        throw PreconditionError("profile_to_models: profile violates the elliptic constraints: " + to_string(p));

    SphereFactorization f;
    f.circle_rank = p.at(2);
    std::map<int, int> remaining = p.d;
    remaining.erase(2);
    // even spheres first; each S^{2m} also accounts for one unit of d_{4m-1}
    for (const auto& [j, v] : p.d) {
        if (j % 2 != 0 || j == 2)
            continue;
        remaining.erase(j);
        int& odd = remaining[2 * j - 1];
        odd -= v;
        if (odd < 0)
            return {};
        for (int i = 0; i < v; ++i)
            f.spheres.push_back(j);
    }
    for (const auto& [j, v] : remaining)
        for (int i = 0; i < v; ++i)
            f.spheres.push_back(j);
    std::sort(f.spheres.begin(), f.spheres.end());
    if (f.quotient_dimension() != p.n)
        return {};
    return {f};
}

std::vector<HomotopyProfile> enumerate_profiles(int n, int k, ProfileMode mode)
{
    if (n < 3 || k < 1)
        throw PreconditionError("enumerate_profiles: need n >= 3 and k >= 1");
    const int k_af = mode == ProfileMode::almost_free ? k : std::max(0, 2 * k - n);

    // Σ_{j>=1} 2j d_{2j} <= n - 3k' from the Borel bound, and <= n directly.
    const int even_budget = std::min(n, n - 3 * k_af);
    std::vector<HomotopyProfile> out;
    if (even_budget < 0)
        return out;

    HomotopyProfile current;
    current.n = n;

    std::function<void(int, int)> odd_parts = [&](int part, int remaining) {
        if (remaining == 0) {
            if (check_elliptic_constraints(current, k_af).all())
                if (mode == ProfileMode::almost_free || !profile_to_models(current).empty())
                    out.push_back(current);
            return;
        }
        if (part > remaining)
            return;
        for (int count = remaining / part; count >= 0; --count) {
            current.set(part, count);
            odd_parts(part + 2, remaining - count * part);
        }
        current.set(part, 0);
    };

    std::function<void(int, int, int)> even_parts = [&](int part, int budget, int odd_target) {
        if (part > budget) {
            odd_parts(3, odd_target);
            return;
        }
        for (int count = budget / part; count >= 0; --count) {
            current.set(part, count);
            even_parts(part + 2, budget - count * part, odd_target + count * (part - 1));
        }
        current.set(part, 0);
    };

    even_parts(2, even_budget, n);
    std::sort(out.begin(), out.end());
    return out;
}

// ----------------------------------------------------- T^2 quotients of ∏S^3

namespace {

using Vec3 = std::array<Rational, 3>;

/// Reduced row echelon basis of the span of the given forms.
std::vector<BinaryQuadraticForm> reduced_pencil(std::span<const BinaryQuadraticForm> forms)
{
    std::vector<Vec3> rows;
    for (const auto& f : forms)
        rows.push_back(f.coefficients());
    std::size_t rank = 0;
    for (std::size_t col = 0; col < 3 && rank < rows.size(); ++col) {
        std::size_t pivot = rank;
        while (pivot < rows.size() && rows[pivot][col].is_zero())
            ++pivot;
        if (pivot == rows.size())
            continue;
        std::swap(rows[rank], rows[pivot]);
        const Rational inv = Rational(1) / rows[rank][col];
        for (auto& e : rows[rank])
            e *= inv;
        for (std::size_t r = 0; r < rows.size(); ++r) {
            if (r == rank || rows[r][col].is_zero())
                continue;
            const Rational f = rows[r][col];
            for (std::size_t c = 0; c < 3; ++c)
                rows[r][c] -= f * rows[rank][c];
        }
        ++rank;
    }
    std::vector<BinaryQuadraticForm> out;
    for (std::size_t r = 0; r < rank; ++r)
        out.push_back({rows[r][0], rows[r][1], rows[r][2]});
    return out;
}

[[noreturn]] void violation(const TorusActionS3& act, const std::string& what)
{
    throw ClassificationViolation(what + " for action " + act.to_string());
}

/// Runs the normal-form reduction and returns the kind it arrives at.
Kind proof_path_kind(const TorusActionS3& act, std::size_t rank, ClassificationResult& result)
{
    const NormalizedActionS3 norm = normalize(act);
    const auto& rows = norm.action().rows();

    if (rank_rational(relation_matrix(norm)) != rank)
        violation(act, "relation matrix rank differs from the rank of the differential span");
    if (rank == 3) {
        result.proof_path = "rank 3: unique model";
        return Kind::T1_S2xS2_PRODUCT;
    }

    const auto& r1 = rows[0];
    const Integer g = gcd_all(std::vector<Integer>{r1.b, r1.l});
    const Integer b1 = r1.b / g;
    const Integer l1 = r1.l / g;
    const auto forms = differential_rows(norm.action());

    if (l1 == 0) {
        // b1 = ±1 and D(x1) = b1 s1^2 after rescaling; clear the s1^2 term of D(x2).
        const BinaryQuadraticForm d1{Rational(b1), Rational(0), Rational(0)};
        BinaryQuadraticForm d2 = forms[1];
        d2 += Rational(-1) * (d2.A / Rational(b1)) * d1;
        square_pair_substitution(d1, d2);
        result.proof_path = "l1 = 0: pair (b1 s1^2, beta s1 s2 + gamma s2^2) reduced to squares";
        return Kind::S2xS2_PRODUCT;
    }

    const int eps = epsilon_invariant(norm);
    result.epsilon = eps;

    // In the variables (s1, t) with t = b1 s1 + l1 s2, D(x1) = s1 t after rescaling, and
    // x~_j = l1^2 x_j + (l_j det[b1 a_j; l1 k_j] + k_j det[b1 b_j; l1 l_j]) x1
    // has D(x~_j) = det[b1 a_j; l1 k_j] det[b1 b_j; l1 l_j] s1^2 + k_j l_j t^2.
    const Rational b1q(b1), l1q(l1);
    const RatMatrix old_in_new(2, 2, {Rational(1), Rational(0), -b1q / l1q, Rational(1) / l1q});
    const BinaryQuadraticForm s1t{Rational(0), Rational(1), Rational(0)};
    for (std::size_t j = 1; j < rows.size(); ++j) {
        const auto& r = rows[j];
        const Integer det_a = det2(b1, r.a, l1, r.k);
        const Integer det_b = det2(b1, r.b, l1, r.l);
        BinaryQuadraticForm reduced = (l1q * l1q) * forms[j].substitute(old_in_new);
        reduced += Rational(r.l * det_a + r.k * det_b) * s1t;
        const BinaryQuadraticForm expected{Rational(det_a * det_b), Rational(0), Rational(r.k * r.l)};
        if (reduced != expected)
            violation(act, "reduced differential of factor " + std::to_string(j + 1) + " is " + reduced.to_string() +
                               ", expected " + expected.to_string());
    }

    if (eps == 1) {
        square_pair_substitution(s1t, {Rational(1), Rational(0), Rational(1)});
        result.proof_path = "l1 != 0, epsilon = +1: pair (s1 t, s1^2 + t^2) reduced to squares";
        return Kind::S2xS2_PRODUCT;
    }
    result.proof_path = "l1 != 0, epsilon = -1: pair (s1 t, s1^2 - t^2)";
    return Kind::CP2_CONNSUM_PRODUCT;
}

} // namespace

IntMatrix relation_matrix(const NormalizedActionS3& act)
{
    const auto& rows = act.action().rows();
    const Integer g = gcd_all(std::vector<Integer>{rows[0].b, rows[0].l});
    IntMatrix m(3, rows.size());
    m(0, 0) = rows[0].b / g;
    m(1, 0) = rows[0].l / g;
    m(2, 0) = 0;
    for (std::size_t j = 1; j < rows.size(); ++j) {
        const auto& r = rows[j];
        m(0, j) = r.a * r.b;
        m(1, j) = r.a * r.l + r.b * r.k;
        m(2, j) = r.k * r.l;
    }
    return m;
}

int epsilon_invariant(const NormalizedActionS3& act)
{
    const auto& rows = act.action().rows();
    const Integer g = gcd_all(std::vector<Integer>{rows[0].b, rows[0].l});
    const Integer b1 = rows[0].b / g;
    const Integer l1 = rows[0].l / g;
    if (l1 == 0)
        throw PreconditionError("epsilon_invariant: requires l1 != 0");
    if (rank_rational(relation_matrix(act)) != 2)
        throw PreconditionError("epsilon_invariant: relation matrix must have rank exactly 2");

    const auto& r2 = rows[1];
    const Integer x2 = det2(b1, r2.a, l1, r2.k) * det2(b1, r2.b, l1, r2.l);
    const Integer y2 = r2.k * r2.l;
    int eps = 0;
    if (x2 == y2)
        eps = 1;
    else if (x2 == -y2)
        eps = -1;
    else
        throw ClassificationViolation("epsilon_invariant: ratio " + x2.get_str() + "/" + y2.get_str() +
                                      " is not +-1 for action " + act.action().to_string());
    for (std::size_t j = 1; j < rows.size(); ++j) {
        const auto& r = rows[j];
        if (det2(b1, r.a, l1, r.k) * det2(b1, r.b, l1, r.l) != eps * r.k * r.l)
            throw ClassificationViolation("epsilon_invariant: identity fails at factor " + std::to_string(j + 1) +
                                          " for action " + act.action().to_string());
    }
    return eps;
}

SquarePairSubstitution square_pair_substitution(const BinaryQuadraticForm& d1, const BinaryQuadraticForm& d2)
{
    const Rational zero(0), one(1);
    SquarePairSubstitution w;
    if (!d1.A.is_zero() && d1.B.is_zero() && d1.C.is_zero() && d2.A.is_zero() && !d2.C.is_zero()) {
        w.shape = 1;
        const Rational& alpha = d1.A;
        const Rational& beta = d2.B;
        const Rational& gamma = d2.C;
        if (beta.is_zero()) {
            w.s_tilde = RatMatrix::identity(2);
            w.x_tilde = RatMatrix(2, 2, {one / alpha, zero, zero, one / gamma});
        } else {
            const Rational c = beta / (Rational(2) * gamma);
            const Rational x1 = beta * beta / (Rational(4) * alpha * gamma * gamma);
            w.s_tilde = RatMatrix(2, 2, {c, zero, c, one});
            w.x_tilde = RatMatrix(2, 2, {x1, zero, x1, one / gamma});
        }
    } else if (d1 == BinaryQuadraticForm{zero, one, zero} && d2 == BinaryQuadraticForm{one, zero, one}) {
        w.shape = 2;
        w.s_tilde = RatMatrix(2, 2, {one, Rational(-1), one, one});
        w.x_tilde = RatMatrix(2, 2, {Rational(-2), one, Rational(2), one});
    } else {
        throw PreconditionError("square_pair_substitution: unsupported pair " + d1.to_string() + ", " +
                                d2.to_string());
    }

    for (std::size_t i = 0; i < 2; ++i) {
        BinaryQuadraticForm image = w.x_tilde(i, 0) * d1;
        image += w.x_tilde(i, 1) * d2;
        const auto target = BinaryQuadraticForm::square({w.s_tilde(i, 0), w.s_tilde(i, 1)});
        if (image != target)
            throw ClassificationViolation("square_pair_substitution: re-expansion failed for " + d1.to_string() +
                                          ", " + d2.to_string());
    }
    return w;
}

ClassificationResult classify_t2_quotient(const TorusActionS3& act)
{
    if (act.factors() < 2)
        throw PreconditionError("classify_t2_quotient: need at least 2 factors");
    if (!is_effective(act))
        throw PreconditionError("classify_t2_quotient: action is not effective: " + act.to_string());
    const FreenessReport fr = check_freeness(act);
    if (!fr.free)
        throw FreenessViolation("classify_t2_quotient: action is not free (" + fr.diagnostic + "): " +
                                act.to_string());

    const auto forms = differential_rows(act);
    ClassificationResult result;
    result.pencil = reduced_pencil(forms);
    result.rank_d3 = result.pencil.size();

    if (result.rank_d3 <= 1)
        violation(act, "degree-4 relation span has rank " + std::to_string(result.rank_d3));

    if (result.rank_d3 == 3) {
        result.kind = Kind::T1_S2xS2_PRODUCT;
        result.trailing_s3 = act.factors() - 3;
    } else {
        result.quotient_form = degree_four_square_map(result.pencil);
        switch (isotropy_class(*result.quotient_form)) {
        case IsotropyClass::isotropic:
            result.kind = Kind::S2xS2_PRODUCT;
            break;
        case IsotropyClass::anisotropic_minus_one:
            result.kind = Kind::CP2_CONNSUM_PRODUCT;
            break;
        default:
            violation(act, std::string("quotient square map ") + result.quotient_form->to_string() + " is " +
                               to_string(isotropy_class(*result.quotient_form)));
        }
        result.trailing_s3 = act.factors() - 2;
    }

    const Kind via_proof = proof_path_kind(act, result.rank_d3, result);
    if (via_proof != result.kind)
        violation(act, std::string("normal-form reduction gives ") + to_string(via_proof) + " but the invariant gives " +
                           to_string(result.kind));
    return result;
}

// ------------------------------------------------- circle quotients, d_α models

Kind classify_s1_quotient(std::span<const Integer> lambda, const Integer& alpha)
{
    for (const auto& l : lambda)
        if (l != 0)
            return Kind::S2xS5_PRODUCT;
    if (alpha != 0)
        return Kind::CP2_PRODUCT;
    throw FreenessViolation("classify_s1_quotient: all lambda and alpha vanish, so the quotient has infinite "
                            "cohomological dimension and the action cannot be free");
}

bool square_class_isomorphic(const Rational& alpha, const Rational& beta)
{
    if (alpha.is_zero() || beta.is_zero())
        throw PreconditionError("square_class_isomorphic: arguments must be nonzero");
    return is_rational_square(beta / alpha);
}

FreeCDGA build_d_alpha_model(const Rational& alpha, int m)
{
    if (alpha.is_zero())
        throw PreconditionError("build_d_alpha_model: alpha must be nonzero");
    if (m < 0)
        throw PreconditionError("build_d_alpha_model: m must be >= 0");
    std::vector<Generator> gens{{"u1", 2}, {"u2", 2}};
    for (int j = 1; j <= m + 2; ++j)
        gens.push_back({"x" + std::to_string(j), 3});
    FreeAlgebra alg(std::move(gens));
    std::vector<Polynomial> d(alg.size());
    d[2] = Polynomial(Monomial({{0, 1}, {1, 1}}), Rational(1));
    d[3] = Polynomial(Monomial({{0, 2}}), Rational(1)) + Polynomial(Monomial({{1, 2}}), alpha);
    return FreeCDGA(std::move(alg), std::move(d));
}

} // namespace toral
