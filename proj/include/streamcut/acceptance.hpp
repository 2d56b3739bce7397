#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "streamcut/generators.hpp"

namespace streamcut {

inline constexpr int kCriteriaCount = 9;

struct AcceptOptions {
  std::uint64_t seed = 1;
  std::vector<int> only;  // empty runs every criterion
  // Receives one line per finished sub-step; may be empty.
  std::function<void(const std::string&)> progress;
};

struct CriterionResult {
  int id = 0;
  std::string name;
  bool pass = false;
  std::string summary;
  std::string metrics_json;
  double seconds = 0.0;
};

const char* criterion_name(int id);

// Graphs shared by the min-cut and cycle-decomposition checks.
std::vector<CorpusEntry> acceptance_corpus(std::uint64_t seed);

CriterionResult run_criterion(int id, const AcceptOptions& opts);
std::vector<CriterionResult> run_acceptance(const AcceptOptions& opts);

// "PASS  3  space-scaling  <summary>"
std::string format_line(const CriterionResult& r);
std::string to_json(const std::vector<CriterionResult>& results);

}  // namespace streamcut
