#pragma once

#include <vector>

#include "qreset/model.hpp"

namespace qreset {

// Hilbert-Schmidt-orthonormal basis of a real Lie algebra of anti-Hermitian
// matrices.
struct AlgebraBasis {
  std::vector<Mat> elements;
  int dim() const { return static_cast<int>(elements.size()); }
};

// Closure of the generators under commutators; throws NotAntiHermitian.
AlgebraBasis lie_closure(const std::vector<Mat>& generators,
                         double tol = 1e-9);

// Split along the involution theta(x) = -x^T in the product Pauli basis:
// k = span{i sigma_j x 1, i 1 x sigma_j}, p = span{i sigma_j x sigma_l}.
// Throws DecompositionFailure when the algebra is not theta-invariant.
struct CartanSplit {
  AlgebraBasis k_part;
  AlgebraBasis p_part;
};
CartanSplit cartan_split(const AlgebraBasis& l);

// Maximal abelian subalgebra of p: centralizer of a regular element,
// certified abelian and maximal. Deterministic (fixed internal seed).
AlgebraBasis cartan_subalgebra(const AlgebraBasis& p_part);

struct CartanReport {
  AlgebraBasis l_basis;
  AlgebraBasis k_basis;
  AlgebraBasis p_basis;
  AlgebraBasis a_basis;
  int dim_l = 0, dim_k = 0, dim_p = 0, dim_a = 0;
};
CartanReport cartan_report(const std::vector<Mat>& generators);

struct ClassifyRow {
  int o_s, o_b, o_c;
  int dim_l, dim_k, dim_p, dim_a;
  bool purifiable;  // dim_a == 2
};

// All 27 Pauli interaction/control combinations at generic parameters.
std::vector<ClassifyRow> classify_all_27();
std::string classify_csv(const std::vector<ClassifyRow>& rows);

}
