#pragma once

#include "mutkit/core.hpp"
#include "mutkit/law.hpp"
#include "mutkit/rational.hpp"

namespace mutkit {

struct MatrixOptions {
  std::size_t max_dimension = 4096;  // cap on d^k (and d^(2k-1) downstream)
};

// Exact k-tuple substitution matrix M: column v holds the expected count
// contribution to each tuple u from one mutation hitting a window of v.
// Columns of any law with nonempty replacements sum to tau + k - 1.
RatMatrix build_substitution_matrix(const MutationLaw& law, int k,
                                    const MatrixOptions& opts = {});

// Strong connectivity of the digraph with an edge v -> u whenever entry (u,v)
// is nonzero.
bool is_irreducible(const RatMatrix& m);

// Exact conditional expectation E[ct(next) - ct(word) | word]: direct
// enumeration over positions and replacement outcomes with cyclic splicing.
// Independent implementation of the identity (M - k I) * fr(word).
RatVector expected_increment(const Word& word, const MutationLaw& law, int k);

}  // namespace mutkit
