#pragma once

#include <stdexcept>
#include <string>

namespace mutkit {

// Every failure carries a stable machine-readable code (used by the CLI to pick
// exit codes) plus a human message.
class Error : public std::runtime_error {
public:
  Error(std::string code, const std::string& message)
      : std::runtime_error(code + ": " + message), code_(std::move(code)) {}

  const std::string& code() const noexcept { return code_; }

private:
  std::string code_;
};

namespace errc {
inline constexpr const char* invalid_symbol = "invalid-symbol";
inline constexpr const char* empty_word = "empty-word";
inline constexpr const char* division_guard = "division-guard";
inline constexpr const char* underflow = "underflow";
inline constexpr const char* validation = "validation";
inline constexpr const char* not_average_tau = "not-average-tau";
inline constexpr const char* growth_violation = "growth-violation";
inline constexpr const char* size_limit = "size-limit";
inline constexpr const char* irreducibility_violation = "irreducibility-violation";
inline constexpr const char* divergence = "divergence";
inline constexpr const char* unsupported = "unsupported";
inline constexpr const char* empty_ensemble = "empty-ensemble";
inline constexpr const char* io = "io";
}  // namespace errc

}  // namespace mutkit
