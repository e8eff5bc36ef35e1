// Search for a form-preserving matrix inside a linear span.
//
// Writing g = sum_u y_u C_u with y_u in F_p (C_u runs over e_l * B_i for a
// power basis e_l), the condition t(sigma(g)) J g = J becomes a system of
// homogeneous quadratics in y over F_p. Fixing the variables of a vertex
// cover of the monomial graph leaves a linear system, so a depth-first walk
// over cover assignments with incremental elimination decides the system
// exactly when it runs to completion.
#pragma once

#include "cgw/search.hpp"

#include <optional>
#include <vector>

namespace cgw {

struct FormSolverStats {
  int variables = 0;
  int equations = 0;
  int cover = 0;
  std::uint64_t nodes = 0;
};

/// Finds g in span(basis) with t(sigma(g)) J g = J, sigma = x -> x^base_q
/// when base_q is given and the identity otherwise. Every such g is
/// invertible. Found carries the member; NotFound is exhaustive; Unknown
/// means the node budget ran out.
SearchResult solve_form_preserving(const std::vector<Matrix>& basis, const Matrix& form,
                                   std::optional<std::uint64_t> base_q, const SearchOptions& opts,
                                   FormSolverStats* stats = nullptr);

}  // namespace cgw
