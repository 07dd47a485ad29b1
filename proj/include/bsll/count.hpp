#pragma once

#include <functional>
#include <map>
#include <string>
#include <vector>

#include "bsll/covering.hpp"

namespace bsll {

inline constexpr const char* kToolVersion = "0.1.0";

// All p^{k(k-1)/2} lower-triangular matrices in lexicographic order of
// (a_11, a_21, a_22, a_31, ...).
std::vector<MatrixA> enumerate_matrices(int p, int k, long long max_count = 1'000'000);

struct CountOptions {
  int max_order = 512;
  int jobs = 1;
  std::string cache_dir; // empty disables caching (CLI layer only)
};

struct CountReport {
  int p = 0;
  int k = 0;
  long long n = 0; // p^k
  long long matrices_total = 0;
  long long consistent_count = 0;
  long long faithful_count = 0;
  long long covering_count = 0; // valid (A, u) pairs
  long long classes_sufficient = 0;
  long long classes_necessary = 0;
  long long paper_lower = 0; // p^{k(k-3)/2} for k >= 3, else 1
  long long paper_upper = 0; // p^{(k^2+k+2)/2}
  bool lower_ok = false;
  bool upper_ok = false;
  bool bracket_ok = false;
  std::vector<LoopCovering> reps_necessary;
  std::vector<LoopCovering> reps_sufficient;
  std::map<std::string, double> timings_ms;
  std::string tool_version;
  std::string input_hash;
};

// The full pipeline: enumerate matrices, keep consistent builds, keep
// faithful shift data, enumerate valid u candidates, then partition the
// coverings under each predicate. The class interval
// [classes_necessary, classes_sufficient] contains the true count of
// covering classes (hence of overlattices of index p^k).
CountReport count_overlattices(int p, int k, const CountOptions& opts = {});

struct FamilyReport {
  int p = 0;
  int k = 0;
  long long members_total = 0;
  long long members_valid = 0;
  long long classes_necessary = 0;
  long long paper_lower = 0;
  bool bound_ok = false;
  std::vector<LoopCovering> representatives;
  std::map<std::string, double> timings_ms;
  std::string tool_version;
  std::string input_hash;
};

// The explicit family: all matrices with zero last row, u = g_0 g_k. Every
// member must validate (anything else is a hard StructureError); the
// necessary-classes count must reach p^{k(k-3)/2}.
FamilyReport lower_bound_family(int p, int k, const CountOptions& opts = {});

long long paper_lower_bound(int p, int k);
long long paper_upper_bound(int p, int k);

// The cache key and report hash for a count run.
std::string count_input_hash(int p, int k, int max_order);

// Deterministic partition of coverings under a symmetric, transitive
// predicate: each covering joins the first matching representative class.
// Returns the representative index for each covering.
std::vector<int> partition_classes(
    const std::vector<LoopCovering>& coverings,
    const std::function<bool(const LoopCovering&, const LoopCovering&)>& related);

int run_cli(int argc, const char* const* argv);

} // namespace bsll
