// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <iosfwd>
#include <map>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

namespace vh::cli {

enum ExitCode : int {
  kOk = 0,
  kUsage = 1,
  kInvalid = 2,
  kNegative = 3,
  kBound = 4,
  kInternal = 5,
};

/// 64-bit FNV-1a of a byte string, as 16 hex digits.
std::string fnv1a_hex(const std::string& bytes);

/// What was run and on which inputs. Contains no timestamps, so equal runs
/// give equal manifests.
struct RunManifest {
  std::string command;
  std::vector<std::pair<std::string, std::string>> inputs;  // path, digest
  std::map<std::string, nlohmann::json> parameters;
  std::string version;
  int exit_code = 0;
  std::string summary;

  nlohmann::json to_json() const;
};

/// Runs one command line. JSON goes to `out`, human summaries and errors
/// to `err`.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace vh::cli
