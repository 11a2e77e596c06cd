#pragma once

#include <vector>

#include "pscli/types.hpp"

namespace pscli::detail {

/// Collapses numerically multiple eigenvalues/roots onto their centroid.
///
/// A root of multiplicity m perturbed by relative rounding ε splits into a
/// ring of radius ~ε^{1/m}; the ring's centroid is accurate to O(ε). Groups
/// are built agglomeratively in order of pairwise distance. A merge is taken
/// when the merged spread stays below (1e4·ε)^{1/m}·scale and the two groups
/// are not separated by a gap much larger than their own spread.
std::vector<Complex> collapse_clusters(std::vector<Complex> values, double scale);

/// Parlett–Reinsch balancing (power-of-two diagonal similarity). Eigenvalues
/// are preserved exactly.
void balance(Matrix& M);

/// Eigenvalues of a general real matrix, balanced, with cluster refinement.
std::vector<Complex> refined_eigenvalues(Matrix M);

}  // namespace pscli::detail
