#pragma once

#include "mutkit/core.hpp"
#include "mutkit/rational.hpp"
#include "mutkit/rng.hpp"

#include <nlohmann/json.hpp>

#include <optional>
#include <string>
#include <vector>

namespace mutkit {

struct Alphabet {
  std::vector<char> symbols;  // single-character symbols, distinct

  int d() const { return static_cast<int>(symbols.size()); }
  int index_of(char c) const;              // -1 if absent
  Word parse_word(const std::string& s) const;  // throws invalid-symbol
  std::string to_string(const Word& w) const;
};

struct Replacement {
  Word word;
  Rat prob;
};

struct MutationLaw {
  Alphabet alphabet;
  std::vector<std::vector<Replacement>> rules;  // indexed by symbol
  std::optional<Word> start;
  Rat tau;  // common expected replacement length

  // Exact sampling tables: per symbol, probabilities as cum[i]/denom.
  std::vector<std::uint64_t> sample_denom;
  std::vector<std::vector<std::uint64_t>> sample_cum;
};

struct ParseOptions {
  bool allow_empty_replacements = false;  // default: reject ε-replacements
  bool require_growth = true;             // default: reject tau <= 1
};

struct ParsedLaw {
  MutationLaw law;
  std::vector<std::string> warnings;  // e.g. point-mass replacement distributions
};

ParsedLaw parse_law(const nlohmann::json& doc, const ParseOptions& opts = {});
ParsedLaw parse_law_file(const std::string& path, const ParseOptions& opts = {});

nlohmann::ordered_json law_to_json(const MutationLaw& law);

// Draws from the replacement distribution of `symbol` using exact cumulative
// numerators over a common denominator (one bounded-rejection uniform draw).
const Word& sample_replacement(const MutationLaw& law, Symbol symbol,
                               SplitMix64& rng);

}  // namespace mutkit
