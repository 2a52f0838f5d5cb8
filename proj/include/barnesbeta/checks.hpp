#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace barnesbeta {

// One verification record; residual and threshold are on the scale the
// check naturally lives on (relative gap, absolute gap, or stderr units).
struct CheckRecord {
  std::string name;
  std::string paper_ref;
  double lhs = 0.0;
  double rhs = 0.0;
  double residual = 0.0;
  double threshold = 0.0;
  bool pass = false;
};

struct ChecksConfig {
  std::uint64_t seed = 0xB41215;
  double tol_override = 0.0;  // 0 keeps the per-check pinned thresholds
  bool quick = false;         // smoke mode: Monte-Carlo sizes cut by ~100x
};

std::vector<std::string> suite_names();  // gamma, beta, selberg, critical, xi

// Runs one suite ("all" concatenates every suite in order).
std::vector<CheckRecord> run_suite(const std::string& suite, const ChecksConfig& cfg = {});

}  // namespace barnesbeta
