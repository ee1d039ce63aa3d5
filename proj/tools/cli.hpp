#pragma once

#include "amc/serialize.hpp"

#include <string>
#include <vector>

namespace amc::cli {

enum Exit : int {
  decided = 0,
  invalid = 1,  // a certificate failed replay, or a fixture failed
  inconclusive = 2,
  resource_cap = 3,
  usage = 64,
};

struct Outcome {
  int code = decided;
  Json json;
  std::string text;
};

/// Runs one command without touching stdout or files. args excludes the
/// program name.
Outcome execute(const std::vector<std::string>& args);

/// Entry point: parses, runs, writes JSON or text to stdout or --out.
int main(int argc, char** argv);

}  // namespace amc::cli
