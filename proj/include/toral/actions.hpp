#ifndef TORAL_ACTIONS_HPP
#define TORAL_ACTIONS_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "toral/exact.hpp"
#include "toral/quadratic_form.hpp"

namespace toral {

/*
 * Exponents of one S^3 factor under (z, w) ∈ T^2:
 *     (z, w) * (u + v j) = z^a w^k u + z^b w^l v j
 */
struct ExponentRow
{
    Integer a, b, k, l;

    friend bool operator==(const ExponentRow&, const ExponentRow&) = default;
};

/// Linear T^2 action on a product of N copies of S^3.
class TorusActionS3
{
public:
    explicit TorusActionS3(std::vector<ExponentRow> rows);

    std::size_t factors() const { return rows_.size(); }
    const std::vector<ExponentRow>& rows() const { return rows_; }
    const ExponentRow& row(std::size_t i) const { return rows_.at(i); }

    std::string to_string() const;

    friend bool operator==(const TorusActionS3&, const TorusActionS3&) = default;

private:
    std::vector<ExponentRow> rows_;
};

bool is_effective(const TorusActionS3& act);

/// Outcome of the selection test, with the first failing selection when not free.
struct FreenessReport
{
    bool free = false;
    /// bit i set: factor i contributes (b_i, l_i), otherwise (a_i, k_i)
    std::optional<std::uint64_t> violating_selection;
    Integer violating_gcd = 0;
    std::string diagnostic;
};

/// Checks every one of the 2^N selections; N < 2 is reported as not free.
FreenessReport check_freeness(const TorusActionS3& act);
bool is_free(const TorusActionS3& act);

/// Steps applied by normalize(). Factor i of the result is factor
/// permutation[i] of the input; exponent pairs were mapped by p -> p * U^{-1}.
struct NormalizationWitness
{
    std::vector<std::size_t> permutation;
    IntMatrix reparametrization = IntMatrix::identity(2); // U = [[m, n], [r, s]], det 1
};

/// Action with a_1 != 0, k_1 = 0, (b_1, l_1) != (0, 0) and k_2 l_2 != 0.
class NormalizedActionS3
{
public:
    /// Validates the normal-form conditions on already-normalized data.
    static NormalizedActionS3 from_normal_form(TorusActionS3 act, NormalizationWitness witness = {});

    const TorusActionS3& action() const { return action_; }
    const NormalizationWitness& witness() const { return witness_; }

private:
    NormalizedActionS3(TorusActionS3 act, NormalizationWitness witness)
        : action_(std::move(act)), witness_(std::move(witness))
    {
    }

    TorusActionS3 action_;
    NormalizationWitness witness_;
};

/// New exponents of an action after reparametrizing T^2 by the det-1 matrix U.
TorusActionS3 reparametrize(const TorusActionS3& act, const IntMatrix& u);

/*
 * Brings a free, effective action into normal form by
 *  (i)   swapping the lowest-index factor with a_i b_i != 0 into slot 1,
 *  (ii)  reparametrizing T^2 with unimodular_complement(a_1/d, k_1/d),
 *        d = gcd(a_1, k_1), so the first pair becomes (d, 0),
 *  (iii) swapping the lowest-index factor i >= 2 with k_i l_i != 0 into slot 2.
 * The result is re-checked for effectiveness and freeness, and its
 * differential rows are checked against the originals under the induced
 * substitution of (s1, s2). Throws FreenessViolation if a required factor
 * is missing, PreconditionError if the input is not effective.
 */
NormalizedActionS3 normalize(const TorusActionS3& act);

/// Row i maps to (a_i b_i, a_i l_i + b_i k_i, k_i l_i), i.e. D(x_i).
std::vector<BinaryQuadraticForm> differential_rows(const TorusActionS3& act);

/// The substitution t = U s relating forms of the reparametrized action
/// (in t) to forms of the original action (in s).
RatMatrix induced_substitution(const IntMatrix& u);

// ----------------------------------------------------------- circle actions

/// Weights of a circle acting linearly on S^{2m-1} ⊂ C^m or S^{2m} ⊂ C^m ⊕ R.
struct SphereFactor
{
    int sphere_dim = 0;
    std::vector<Integer> weights;

    friend bool operator==(const SphereFactor&, const SphereFactor&) = default;
};

class CircleActionSpheres
{
public:
    explicit CircleActionSpheres(std::vector<SphereFactor> factors);

    const std::vector<SphereFactor>& factors() const { return factors_; }
    std::string to_string() const;

private:
    std::vector<SphereFactor> factors_;
};

/// Free iff every choice of one weight per factor has gcd 1. An even sphere
/// also offers the fixed real coordinate, i.e. weight 0.
bool is_free_circle(const CircleActionSpheres& act);

struct CircleEulerData
{
    std::vector<Integer> lambda; // one per S^3 factor: product of its 2 weights
    std::vector<Integer> alpha;  // one per S^5 factor: product of its 3 weights
};

/// Only S^3 and S^5 factors are accepted.
CircleEulerData circle_euler_data(const CircleActionSpheres& act);

} // namespace toral

#endif
