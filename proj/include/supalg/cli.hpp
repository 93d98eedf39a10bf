#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace supalg::cli {

enum class Format { Text, Csv, Json };

// Everything a subcommand reads. Defaults are listed in README.md.
struct RunConfig {
  std::string command;
  std::uint32_t p = 3;
  int r = 1;
  int s = 1;
  int m = 1, n = 1;
  std::string f;                 // empty: T^{p^s}
  std::uint32_t eta = 0;
  int max_degree = -1;           // -1: per-command default
  int max_t = 3;
  std::uint64_t budget = 0;      // 0: SUPALG_BUDGET or the built-in cap
  bool force = false;
  bool exhaustive = false;
  bool sweep = false;            // boundary-check --all
  std::string algebra = "both";  // verify-hopf: coordinate|group|both
  std::string relation = "all";
  std::uint64_t seed = 1;
  int samples = 0;
  Format format = Format::Text;
};

// Exit codes: 0 all checks pass, 1 a check failed, 2 usage error.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);
// Same, with args not including the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace supalg::cli
