#ifndef TORAL_CLASSIFY_HPP
#define TORAL_CLASSIFY_HPP

#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "toral/actions.hpp"
#include "toral/cdga.hpp"
#include "toral/quadratic_form.hpp"

namespace toral {

/// Rational homotopy types produced by the quotient classifiers.
enum class Kind
{
    S2xS2_PRODUCT,       // (S^2 x S^2) x prod S^3
    CP2_CONNSUM_PRODUCT, // (CP^2 # CP^2) x prod S^3
    T1_S2xS2_PRODUCT,    // T^1(S^2 x S^2) x prod S^3
    S2xS5_PRODUCT,       // S^2 x S^5 x prod S^3
    CP2_PRODUCT,         // CP^2 x prod S^3
};

const char* to_string(Kind k);
std::optional<Kind> parse_kind(std::string_view s);

// ------------------------------------------------------------- rank bounds

/// floor(2n/3).
int max_effective_rank(int n);

struct AlmostFreeRank
{
    int rank = 0;            // floor(n/3)
    bool attainable = false; // false when n ≡ 1 (mod 3)
};

AlmostFreeRank max_almost_free_rank(int n);

struct SliceInvariants
{
    int k = 0;                   // floor(2n/3)
    int s = 0;                   // n - k, the maximal isotropy dimension
    int almost_free_subrank = 0; // 2k - n
};

/// Throws PreconditionError for n < 3.
SliceInvariants slice_invariants(int n);

// ------------------------------------------------------------ profiles

enum class ProfileMode
{
    almost_free,   // T^k acts almost freely
    effective_max, // T^k acts effectively; 2k - n of it almost freely
};

/// Product of spheres (all of dimension >= 3) divided by a free T^l.
struct SphereFactorization
{
    std::vector<int> spheres; // ascending
    int circle_rank = 0;

    int quotient_dimension() const;
    HomotopyProfile profile() const;
    std::string to_string() const;

    friend bool operator==(const SphereFactorization&, const SphereFactorization&) = default;
};

/*
 * All profiles satisfying the elliptic constraints for the effective
 * almost-free rank k' (k in almost_free mode, max(0, 2k - n) in
 * effective_max mode) together with the Borel-construction bound
 *     n - k' >= 2 (d_2 + k') + Σ_{j>=2} 2j d_{2j}.
 * In effective_max mode only profiles realized by a SphereFactorization
 * are kept. Results are sorted.
 */
std::vector<HomotopyProfile> enumerate_profiles(int n, int k, ProfileMode mode);

/// Every sphere/circle factorization with the given homotopy ranks; at most
/// one, since even spheres are pinned by d_{2m} and absorb d_{4m-1}.
std::vector<SphereFactorization> profile_to_models(const HomotopyProfile& p);

// ----------------------------------------------------- T^2 quotients of ∏S^3

struct ClassificationResult
{
    Kind kind = Kind::S2xS2_PRODUCT;
    std::size_t trailing_s3 = 0;
    std::size_t rank_d3 = 0;
    std::optional<int> epsilon;
    std::vector<BinaryQuadraticForm> pencil; // reduced basis of the span of D(x_i)
    std::optional<BinaryQuadraticForm> quotient_form; // rank 2 only, up to scalar
    std::string proof_path;
    std::vector<std::string> violations;
};

/*
 * Classifies the quotient of a free, effective T^2 action on N >= 2 copies
 * of S^3. The normative answer comes from the rank of the span of the D(x_i)
 * and, in rank 2, from the isotropy of the induced square map
 * (α, β) -> [(α s1 + β s2)^2] into the one-dimensional quotient. The
 * normal-form reduction is run alongside and must agree.
 *
 * Throws PreconditionError (FreenessViolation) for invalid input and
 * ClassificationViolation if the instance contradicts the classification.
 */
ClassificationResult classify_t2_quotient(const TorusActionS3& act);

/// Degree-4 relation matrix of a normalized action after rescaling x_1 so
/// that a_1 = 1 and gcd(b_1, l_1) = 1: columns (b_1, l_1, 0) and
/// (a_j b_j, a_j l_j + b_j k_j, k_j l_j) for j >= 2.
IntMatrix relation_matrix(const NormalizedActionS3& act);

/*
 * The sign ε with
 *     det[b1 a_j; l1 k_j] * det[b1 b_j; l1 l_j] = ε k_j l_j  for all j >= 2,
 * (b1, l1) taken after dividing by their gcd. Requires l1 != 0 and a
 * relation matrix of rank exactly 2 (PreconditionError otherwise). A
 * non-unit ratio or a failing j raises ClassificationViolation.
 *
 * Convention: ε = +1 for S2xS2_PRODUCT, ε = -1 for CP2_CONNSUM_PRODUCT.
 */
int epsilon_invariant(const NormalizedActionS3& act);

/*
 * Change of variables carrying a pair of differentials (d1, d2) to
 * (s̃1^2, s̃2^2). Two input shapes are accepted:
 *   case 1: d1 = α s1^2,  d2 = β s1 s2 + γ s2^2  with α, γ != 0
 *   case 2: d1 = s1 s2,   d2 = s1^2 + s2^2
 * `s_tilde` gives s̃ = M s; `x_tilde` gives x̃_i = Σ_j X(i, j) x_j.
 */
struct SquarePairSubstitution
{
    int shape = 0;
    RatMatrix s_tilde;
    RatMatrix x_tilde;
};

/// Verifies by re-expansion; throws PreconditionError for other shapes.
SquarePairSubstitution square_pair_substitution(const BinaryQuadraticForm& d1, const BinaryQuadraticForm& d2);

// ------------------------------------------------- circle quotients, d_α models

/// λ_i from the S^3 factors and α from the S^5 factor. Throws
/// FreenessViolation when everything is zero.
Kind classify_s1_quotient(std::span<const Integer> lambda, const Integer& alpha);

/// True iff beta/alpha is a rational square. Zero input is rejected.
bool square_class_isomorphic(const Rational& alpha, const Rational& beta);

/// (Λ(u1, u2, x1..x_{m+2}), d): d x1 = u1 u2, d x2 = u1^2 + α u2^2, d x_j = 0 otherwise.
FreeCDGA build_d_alpha_model(const Rational& alpha, int m);

} // namespace toral

#endif
