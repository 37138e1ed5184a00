#include "mutkit/substitution_matrix.hpp"

#include "mutkit/error.hpp"

#include <string>
#include <vector>

namespace mutkit {

namespace {

// first k symbols of the concatenation of two words (total length >= k)
std::size_t head_tuple_index(const Word& a, const Word& b, int k, int d) {
  std::size_t idx = 0;
  int taken = 0;
  for (std::size_t i = 0; i < a.size() && taken < k; ++i, ++taken)
    idx = idx * static_cast<std::size_t>(d) + a[i];
  for (std::size_t i = 0; i < b.size() && taken < k; ++i, ++taken)
    idx = idx * static_cast<std::size_t>(d) + b[i];
  return idx;
}

}  // namespace

RatMatrix build_substitution_matrix(const MutationLaw& law, int k,
                                    const MatrixOptions& opts) {
  if (k < 1) throw Error(errc::validation, "k must be >= 1");
  const int d = law.alphabet.d();
  const auto dim = checked_dim(d, k, opts.max_dimension);
  if (!dim)
    throw Error(errc::size_limit,
                "d^k exceeds the configured cap of " +
                    std::to_string(opts.max_dimension) + " tuples");

  RatMatrix m = RatMatrix::Zero(static_cast<Eigen::Index>(*dim),
                                static_cast<Eigen::Index>(*dim));

  Word prefix, suffix;
  for (std::size_t vi = 0; vi < *dim; ++vi) {
    const Word v = word_of_index(vi, d, k);
    // mutation lands on v_j for j >= 1: the window keeps its start
    for (int j = 1; j < k; ++j) {
      const Symbol a = v[static_cast<std::size_t>(j)];
      prefix.assign(v.begin(), v.begin() + j);
      for (const Replacement& rep : law.rules[a]) {
        if (prefix.size() + rep.word.size() +
                (static_cast<std::size_t>(k) - 1 - static_cast<std::size_t>(j)) <
            static_cast<std::size_t>(k))
          continue;  // window shrank below k (empty replacements only)
        Word mid = prefix;
        mid.insert(mid.end(), rep.word.begin(), rep.word.end());
        suffix.assign(v.begin() + j + 1, v.end());
        const std::size_t u = head_tuple_index(mid, suffix, k, d);
        m(static_cast<Eigen::Index>(u), static_cast<Eigen::Index>(vi)) +=
            rep.prob;
      }
    }
    // mutation lands on v_0: one window per offset into the replacement
    {
      const Symbol a = v[0];
      suffix.assign(v.begin() + 1, v.end());
      for (const Replacement& rep : law.rules[a]) {
        for (std::size_t off = 0; off < rep.word.size(); ++off) {
          Word tail(rep.word.begin() + static_cast<std::ptrdiff_t>(off),
                    rep.word.end());
          const std::size_t u = head_tuple_index(tail, suffix, k, d);
          m(static_cast<Eigen::Index>(u), static_cast<Eigen::Index>(vi)) +=
              rep.prob;
        }
      }
    }
  }
  return m;
}

bool is_irreducible(const RatMatrix& m) {
  const Eigen::Index n = m.rows();
  if (n == 0) return false;
  // BFS over columns (v -> u when m(u,v) != 0), then over rows (reverse graph)
  auto reaches_all = [&](bool forward) {
    std::vector<char> seen(static_cast<std::size_t>(n), 0);
    std::vector<Eigen::Index> stack{0};
    seen[0] = 1;
    Eigen::Index count = 1;
    while (!stack.empty()) {
      const Eigen::Index v = stack.back();
      stack.pop_back();
      for (Eigen::Index u = 0; u < n; ++u) {
        const Rat& entry = forward ? m(u, v) : m(v, u);
        if (entry != 0 && !seen[static_cast<std::size_t>(u)]) {
          seen[static_cast<std::size_t>(u)] = 1;
          ++count;
          stack.push_back(u);
        }
      }
    }
    return count == n;
  };
  return reaches_all(true) && reaches_all(false);
}

RatVector expected_increment(const Word& word, const MutationLaw& law, int k) {
  const int d = law.alphabet.d();
  const std::size_t n = word.size();
  if (n < static_cast<std::size_t>(k))
    throw Error(errc::underflow, "word shorter than k");
  std::size_t dim = 1;
  for (int i = 0; i < k; ++i) dim *= static_cast<std::size_t>(d);

  const CountVec base = count_vector(word, k, d);
  RatVector acc = RatVector::Zero(static_cast<Eigen::Index>(dim));
  const Rat inv_n = Rat(1, static_cast<long>(n));

  Word scratch;
  for (std::size_t pos = 0; pos < n; ++pos) {
    for (const Replacement& rep : law.rules[word[pos]]) {
      scratch = word;
      CountVec ct = base;
      splice_and_update(scratch, pos, rep.word, ct, k, d);
      const Rat w = inv_n * rep.prob;
      for (Eigen::Index u = 0; u < acc.size(); ++u) {
        const std::int64_t diff = ct(u) - base(u);
        if (diff != 0) acc(u) += w * Rat(static_cast<long>(diff));
      }
    }
  }
  return acc;
}

}  // namespace mutkit
