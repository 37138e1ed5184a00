#include "mutkit/core.hpp"

#include "mutkit/error.hpp"

#include <string>

namespace mutkit {

std::optional<std::size_t> checked_dim(int d, int k, std::size_t limit) {
  std::size_t dim = 1;
  for (int i = 0; i < k; ++i) {
    if (dim > limit / static_cast<std::size_t>(d)) return std::nullopt;
    dim *= static_cast<std::size_t>(d);
  }
  if (dim > limit) return std::nullopt;
  return dim;
}

std::size_t tuple_index(const Word& tuple, int d) {
  std::size_t idx = 0;
  for (Symbol s : tuple) {
    if (s >= d)
      throw Error(errc::invalid_symbol,
                  "symbol index " + std::to_string(int(s)) + " outside alphabet");
    idx = idx * static_cast<std::size_t>(d) + s;
  }
  return idx;
}

Word word_of_index(std::size_t index, int d, int k) {
  Word w(static_cast<std::size_t>(k));
  for (int i = k - 1; i >= 0; --i) {
    w[static_cast<std::size_t>(i)] = static_cast<Symbol>(index % d);
    index /= static_cast<std::size_t>(d);
  }
  return w;
}

namespace {

// index of the k-window of `w` starting at `start` (cyclic)
std::size_t cyclic_window_index(const Word& w, std::size_t start, int k, int d) {
  const std::size_t n = w.size();
  std::size_t idx = 0;
  for (int j = 0; j < k; ++j) {
    std::size_t pos = start + static_cast<std::size_t>(j);
    if (pos >= n) pos -= n;  // k <= n, so one wrap at most
    idx = idx * static_cast<std::size_t>(d) + w[pos];
  }
  return idx;
}

void check_symbols(const Word& w, int d) {
  for (Symbol s : w)
    if (s >= d)
      throw Error(errc::invalid_symbol,
                  "symbol index " + std::to_string(int(s)) + " outside alphabet");
}

}  // namespace

CountVec count_vector(const Word& word, int k, int d) {
  if (word.empty()) throw Error(errc::empty_word, "cannot count an empty word");
  if (k < 1) throw Error(errc::validation, "k must be >= 1");
  check_symbols(word, d);
  std::size_t size = 1;
  for (int i = 0; i < k; ++i) size *= static_cast<std::size_t>(d);
  CountVec ct = CountVec::Zero(static_cast<Eigen::Index>(size));
  const std::size_t n = word.size();
  if (n < static_cast<std::size_t>(k)) {
    // windows wrap more than once; read modulo |word| literally
    for (std::size_t s = 0; s < n; ++s) {
      std::size_t idx = 0;
      for (int j = 0; j < k; ++j)
        idx = idx * static_cast<std::size_t>(d) +
              word[(s + static_cast<std::size_t>(j)) % n];
      ++ct(static_cast<Eigen::Index>(idx));
    }
    return ct;
  }
  for (std::size_t s = 0; s < n; ++s)
    ++ct(static_cast<Eigen::Index>(cyclic_window_index(word, s, k, d)));
  return ct;
}

CountVec linear_count_vector(const Word& word, int k, int d) {
  if (k < 1) throw Error(errc::validation, "k must be >= 1");
  check_symbols(word, d);
  std::size_t size = 1;
  for (int i = 0; i < k; ++i) size *= static_cast<std::size_t>(d);
  CountVec ct = CountVec::Zero(static_cast<Eigen::Index>(size));
  if (word.size() < static_cast<std::size_t>(k)) return ct;
  std::size_t idx = 0;
  std::size_t msd = 1;  // d^(k-1)
  for (int i = 0; i < k - 1; ++i) msd *= static_cast<std::size_t>(d);
  for (std::size_t i = 0; i < static_cast<std::size_t>(k); ++i)
    idx = idx * static_cast<std::size_t>(d) + word[i];
  ++ct(static_cast<Eigen::Index>(idx));
  for (std::size_t s = 1; s + static_cast<std::size_t>(k) <= word.size(); ++s) {
    idx = (idx - word[s - 1] * msd) * static_cast<std::size_t>(d) +
          word[s + static_cast<std::size_t>(k) - 1];
    ++ct(static_cast<Eigen::Index>(idx));
  }
  return ct;
}

Eigen::VectorXd frequency_vector(const CountVec& ct) {
  const std::int64_t total = ct.sum();
  if (total <= 0)
    throw Error(errc::division_guard, "frequency of a zero-length word");
  return ct.cast<double>() / static_cast<double>(total);
}

void splice_and_update(Word& word, std::size_t position, const Word& replacement,
                       CountVec& ct, int k, int d) {
  const std::size_t n = word.size();
  if (position >= n)
    throw Error(errc::validation, "splice position past end of word");
  if (n < static_cast<std::size_t>(k))
    throw Error(errc::underflow, "word shorter than k before splice");
  check_symbols(replacement, d);
  const std::size_t l = replacement.size();
  const std::size_t n2 = n - 1 + l;
  if (n2 < static_cast<std::size_t>(k))
    throw Error(errc::underflow, "post-splice word shorter than k");

  // remove the k cyclic windows covering position
  for (int j = 0; j < k; ++j) {
    const std::size_t s =
        (position + n - static_cast<std::size_t>(j)) % n;  // position - j mod n
    --ct(static_cast<Eigen::Index>(cyclic_window_index(word, s, k, d)));
  }

  if (l == 0) {
    word.erase(word.begin() + static_cast<std::ptrdiff_t>(position));
  } else {
    // overwrite in place, then shift the tail once for the overhang
    word[position] = replacement[0];
    if (l > 1)
      word.insert(word.begin() + static_cast<std::ptrdiff_t>(position) + 1,
                  replacement.begin() + 1, replacement.end());
  }

  // add the k + l - 1 cyclic windows covering the replacement
  const std::size_t first = position + n2 - (static_cast<std::size_t>(k) - 1);
  for (std::size_t j = 0; j < static_cast<std::size_t>(k) + l - 1; ++j) {
    const std::size_t s = (first + j) % n2;
    ++ct(static_cast<Eigen::Index>(cyclic_window_index(word, s, k, d)));
  }
}

}  // namespace mutkit
