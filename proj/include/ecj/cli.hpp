#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace ecj {

struct CommandRequest {
  std::string subcommand;
  std::vector<std::string> inputs;
  unsigned nmax = 5;
  long bound = 3;
  long order = 32;
  std::optional<std::string> base;    // overrides the base of an input variety
  std::optional<std::string> output;  // file for the produced witness, certificate or variety
  // reduction and series arguments
  std::size_t block = 0;
  std::size_t partner = 0;
  unsigned level = 0;
  std::optional<std::string> point;  // "a,b,b',b''"
};

extern const std::vector<std::string> kSubcommands;

// Exit codes.
inline constexpr int kExitHolds = 0;
inline constexpr int kExitFails = 1;
inline constexpr int kExitInput = 2;
inline constexpr int kExitResource = 3;

// Runs one request. Report lines are "# prose" or space separated key=value
// tokens; values never contain spaces.
int run(const CommandRequest& request, std::ostream& out);

}  // namespace ecj
