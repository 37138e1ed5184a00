#include "mutkit/law.hpp"

#include "mutkit/error.hpp"

#include <boost/multiprecision/gmp.hpp>

#include <fstream>
#include <limits>
#include <set>
#include <string>

namespace mutkit {

namespace {
using Int = boost::multiprecision::mpz_int;
}

int Alphabet::index_of(char c) const {
  for (std::size_t i = 0; i < symbols.size(); ++i)
    if (symbols[i] == c) return static_cast<int>(i);
  return -1;
}

Word Alphabet::parse_word(const std::string& s) const {
  Word w;
  w.reserve(s.size());
  for (char c : s) {
    const int idx = index_of(c);
    if (idx < 0)
      throw Error(errc::invalid_symbol,
                  std::string("symbol '") + c + "' not in alphabet");
    w.push_back(static_cast<Symbol>(idx));
  }
  return w;
}

std::string Alphabet::to_string(const Word& w) const {
  std::string s;
  s.reserve(w.size());
  for (Symbol x : w) s.push_back(symbols.at(x));
  return s;
}

namespace {

Rat prob_from_json(const nlohmann::json& v) {
  if (v.is_string()) return rat_from_string(v.get<std::string>());
  if (v.is_number_integer()) return Rat(v.get<long long>());
  if (v.is_number_float()) {
    // decimals arrive exactly via their literal text only when given as
    // strings; for JSON numbers, re-render shortest round-trip and expand
    const double d = v.get<double>();
    nlohmann::json j = d;
    return rat_from_string(j.dump());
  }
  throw Error(errc::validation, "probability must be a number or string");
}

void build_sampling_tables(MutationLaw& law) {
  const std::size_t d = law.rules.size();
  law.sample_denom.assign(d, 1);
  law.sample_cum.assign(d, {});
  for (std::size_t a = 0; a < d; ++a) {
    Int denom = 1;
    for (const Replacement& rep : law.rules[a])
      denom = lcm(denom, Int(denominator(rep.prob)));
    if (denom > Int(std::numeric_limits<std::int64_t>::max()))
      throw Error(errc::validation,
                  "probability denominators too large for exact sampling");
    const std::uint64_t D = denom.convert_to<std::uint64_t>();
    law.sample_denom[a] = D;
    std::uint64_t cum = 0;
    for (const Replacement& rep : law.rules[a]) {
      const Int scaled = Int(numerator(rep.prob)) * (denom / Int(denominator(rep.prob)));
      cum += scaled.convert_to<std::uint64_t>();
      law.sample_cum[a].push_back(cum);
    }
    // probabilities sum to exactly 1, so the last cumulative equals D
    if (!law.sample_cum[a].empty() && law.sample_cum[a].back() != D)
      throw Error(errc::validation, "internal: sampling table mismatch");
  }
}

}  // namespace

ParsedLaw parse_law(const nlohmann::json& doc, const ParseOptions& opts) {
  if (!doc.is_object())
    throw Error(errc::validation, "law document must be a JSON object");
  if (!doc.contains("alphabet") || !doc["alphabet"].is_array())
    throw Error(errc::validation, "law document needs an \"alphabet\" array");
  if (!doc.contains("rules") || !doc["rules"].is_object())
    throw Error(errc::validation, "law document needs a \"rules\" object");

  ParsedLaw out;
  MutationLaw& law = out.law;

  std::set<char> seen;
  for (const auto& entry : doc["alphabet"]) {
    if (!entry.is_string() || entry.get<std::string>().size() != 1)
      throw Error(errc::validation,
                  "alphabet entries must be single-character strings");
    const char c = entry.get<std::string>()[0];
    if (!seen.insert(c).second)
      throw Error(errc::validation, "duplicate alphabet symbol");
    law.alphabet.symbols.push_back(c);
  }
  if (law.alphabet.symbols.empty())
    throw Error(errc::validation, "alphabet must be nonempty");
  if (law.alphabet.symbols.size() > 255)
    throw Error(errc::validation, "alphabet too large");

  const int d = law.alphabet.d();
  law.rules.resize(static_cast<std::size_t>(d));
  std::vector<bool> have_rule(static_cast<std::size_t>(d), false);

  for (const auto& [key, value] : doc["rules"].items()) {
    if (key.size() != 1 || law.alphabet.index_of(key[0]) < 0)
      throw Error(errc::invalid_symbol,
                  "rule key '" + key + "' not in alphabet");
    const int a = law.alphabet.index_of(key[0]);
    if (have_rule[static_cast<std::size_t>(a)])
      throw Error(errc::validation, "duplicate rule for symbol '" + key + "'");
    have_rule[static_cast<std::size_t>(a)] = true;
    if (!value.is_array() || value.empty())
      throw Error(errc::validation,
                  "rule for '" + key + "' must be a nonempty array");
    for (const auto& item : value) {
      if (!item.is_object() || !item.contains("word") || !item.contains("prob"))
        throw Error(errc::validation,
                    "replacement entries need \"word\" and \"prob\"");
      Replacement rep;
      rep.word = law.alphabet.parse_word(item["word"].get<std::string>());
      rep.prob = prob_from_json(item["prob"]);
      if (rep.prob <= 0)
        throw Error(errc::validation, "probabilities must be positive");
      if (rep.word.empty() && !opts.allow_empty_replacements)
        throw Error(errc::validation,
                    "empty replacement words are disabled by default");
      law.rules[static_cast<std::size_t>(a)].push_back(std::move(rep));
    }
  }
  for (int a = 0; a < d; ++a)
    if (!have_rule[static_cast<std::size_t>(a)])
      throw Error(errc::validation,
                  std::string("missing rule for symbol '") +
                      law.alphabet.symbols[static_cast<std::size_t>(a)] + "'");

  // per-symbol probability sums and expected lengths, all exact
  std::vector<Rat> expected(static_cast<std::size_t>(d));
  for (int a = 0; a < d; ++a) {
    Rat sum = 0, mean_len = 0;
    for (const Replacement& rep : law.rules[static_cast<std::size_t>(a)]) {
      sum += rep.prob;
      mean_len += rep.prob * Rat(static_cast<long>(rep.word.size()));
    }
    if (sum != 1)
      throw Error(errc::validation,
                  std::string("probabilities for '") +
                      law.alphabet.symbols[static_cast<std::size_t>(a)] +
                      "' sum to " + rat_to_string(sum) + ", not 1");
    expected[static_cast<std::size_t>(a)] = mean_len;
    if (law.rules[static_cast<std::size_t>(a)].size() == 1)
      out.warnings.push_back(std::string("replacement distribution for '") +
                             law.alphabet.symbols[static_cast<std::size_t>(a)] +
                             "' is a point mass");
  }
  for (int a = 1; a < d; ++a)
    if (expected[static_cast<std::size_t>(a)] != expected[0])
      throw Error(errc::not_average_tau,
                  "expected replacement lengths differ across symbols (" +
                      rat_to_string(expected[0]) + " vs " +
                      rat_to_string(expected[static_cast<std::size_t>(a)]) + ")");
  law.tau = expected[0];
  if (opts.require_growth && law.tau <= 1)
    throw Error(errc::growth_violation,
                "average replacement length tau = " + rat_to_string(law.tau) +
                    " must exceed 1");

  if (doc.contains("start")) {
    if (!doc["start"].is_string())
      throw Error(errc::validation, "\"start\" must be a string");
    law.start = law.alphabet.parse_word(doc["start"].get<std::string>());
    if (law.start->empty())
      throw Error(errc::empty_word, "start word must be nonempty");
  }

  build_sampling_tables(law);
  return out;
}

ParsedLaw parse_law_file(const std::string& path, const ParseOptions& opts) {
  std::ifstream in(path);
  if (!in) throw Error(errc::io, "cannot open law file '" + path + "'");
  nlohmann::json doc;
  try {
    in >> doc;
  } catch (const nlohmann::json::exception& e) {
    throw Error(errc::io, "cannot parse law file '" + path + "': " + e.what());
  }
  return parse_law(doc, opts);
}

nlohmann::ordered_json law_to_json(const MutationLaw& law) {
  nlohmann::ordered_json doc;
  doc["alphabet"] = nlohmann::ordered_json::array();
  for (char c : law.alphabet.symbols) doc["alphabet"].push_back(std::string(1, c));
  if (law.start) doc["start"] = law.alphabet.to_string(*law.start);
  doc["rules"] = nlohmann::ordered_json::object();
  for (std::size_t a = 0; a < law.rules.size(); ++a) {
    nlohmann::ordered_json arr = nlohmann::ordered_json::array();
    for (const Replacement& rep : law.rules[a]) {
      arr.push_back({{"word", law.alphabet.to_string(rep.word)},
                     {"prob", rat_to_string(rep.prob)}});
    }
    doc["rules"][std::string(1, law.alphabet.symbols[a])] = std::move(arr);
  }
  return doc;
}

const Word& sample_replacement(const MutationLaw& law, Symbol symbol,
                               SplitMix64& rng) {
  const auto& cum = law.sample_cum.at(symbol);
  const std::uint64_t draw = uniform_below(rng, law.sample_denom.at(symbol));
  for (std::size_t i = 0; i < cum.size(); ++i)
    if (draw < cum[i]) return law.rules[symbol][i].word;
  return law.rules[symbol].back().word;  // unreachable: cum.back() == denom
}

}  // namespace mutkit
