#ifndef TORAL_MODELS_HPP
#define TORAL_MODELS_HPP

#include <span>

#include "toral/actions.hpp"
#include "toral/cdga.hpp"
#include "toral/classify.hpp"

namespace toral {

// Models used as cohomological ground truth for the classifiers.

/// (Q[s1, s2] ⊗ Λ(x1..xN), D) with D x_i = (a_i s1 + k_i s2)(b_i s1 + l_i s2).
FreeCDGA quotient_model(const TorusActionS3& act);

/// Canonical model of a T^2-quotient kind with N odd generators.
FreeCDGA canonical_t2_model(Kind kind, std::size_t n_factors);

/// (Q[u] ⊗ Λ(x1..xm, y), D) with D x_i = λ_i u^2 and D y = α u^3.
FreeCDGA circle_quotient_model(std::span<const Integer> lambda, const Integer& alpha);

/// Canonical model of S2xS5_PRODUCT or CP2_PRODUCT with m S^3-generators in the source.
FreeCDGA canonical_circle_model(Kind kind, std::size_t m);

/// Formal dimension of a model whose cohomology is finite: Σ odd degrees - Σ (even degree - 1).
int formal_dimension(const FreeCDGA& model);

/// The degree-4 quotient square map of a model on two degree-2 generators
/// whose degree-3 generators kill a 2-dimensional span of quadratics.
std::optional<BinaryQuadraticForm> degree_four_square_map(std::span<const BinaryQuadraticForm> relations);

} // namespace toral

#endif
