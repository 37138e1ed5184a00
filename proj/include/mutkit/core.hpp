#pragma once

#include <Eigen/Dense>

#include <cstdint>
#include <optional>
#include <vector>

namespace mutkit {

// Words are sequences of symbol indices into the alphabet (0..d-1).
using Symbol = std::uint8_t;
using Word = std::vector<Symbol>;
using CountVec = Eigen::Matrix<std::int64_t, Eigen::Dynamic, 1>;

// d^k if it fits in the limit, nullopt otherwise.
std::optional<std::size_t> checked_dim(int d, int k, std::size_t limit);

// Base-d positional value of a tuple; leftmost symbol is most significant.
std::size_t tuple_index(const Word& tuple, int d);

// Inverse of tuple_index for length-k tuples.
Word word_of_index(std::size_t index, int d, int k);

// Cyclic window counts: one window starts at each of the |word| positions, read
// modulo |word|. Entries sum to |word|.
CountVec count_vector(const Word& word, int k, int d);

// Plain (non-wrapping) window counts: |word|-k+1 windows, none if |word| < k.
CountVec linear_count_vector(const Word& word, int k, int d);

Eigen::VectorXd frequency_vector(const CountVec& ct);

// Replaces word[position] by `replacement` and incrementally updates the cyclic
// counts; the result always equals a full recount. Refuses the edit (throws,
// word and counts untouched) if the post-splice length would drop below k.
void splice_and_update(Word& word, std::size_t position, const Word& replacement,
                       CountVec& ct, int k, int d);

}  // namespace mutkit
