#pragma once

// Command layer behind the matroot CLI and the Python module. Each command
// returns its JSON report and the process exit status it maps to.

#include <cstdint>
#include <optional>
#include <string>

#include "matroot/json_io.hpp"

namespace matroot::commands {

inline constexpr int kExitHolds = 0;
inline constexpr int kExitUsage = 2;
inline constexpr int kExitRefuted = 3;
inline constexpr int kExitQuarantined = 4;

struct Result {
  json output;
  int exit_code = kExitHolds;
};

/// Default tolerance, with the absolute part taken from MATROOT_TOL when set.
/// Throws ArgumentError if the variable is not a nonnegative number.
Tolerance default_tolerance();

int verdict_exit_code(const Verdict& v);

Result decide(int k, int n, const std::string& a, const Tolerance& tol);

struct ConstructRequest {
  std::string tag;
  int k = 0;
  int n = 0;
  std::optional<std::string> a;
  std::optional<std::string> a_imag;  // complex-ce only
  std::optional<std::uint64_t> conjugate_seed;
};
Result construct(const ConstructRequest& req);

/// `matrix` may be a Matrix JSON or a Witness JSON (its "matrix" is used).
Result verify(const json& matrix, int k, int n, const std::string& a, const Tolerance& tol,
              std::optional<std::string> variant = std::nullopt);

Result search(int k, int n, const std::string& a, std::uint64_t budget, std::uint64_t seed,
              const Tolerance& tol);

Result factor(const json& matrix, int n, const std::string& a, std::optional<std::string> variant,
              const Tolerance& tol);

}  // namespace matroot::commands
