#pragma once

#include <optional>
#include <string>
#include <vector>

#include "io.hpp"

namespace dca {

// One embedded end-to-end pipeline: fixed inputs, the checks run on them,
// and a pinned expected outcome for every sub-assertion.
struct ExampleOutcome {
  std::string id;
  std::string title;
  bool matches = false;
  std::vector<std::string> detail;  // one line per sub-assertion
  std::vector<Json> reports;        // serialized CheckReports, replay-verified
};

struct CorpusOptions {
  std::optional<std::string> only;  // run a single example by id
  // Deliberately corrupts one pinned expectation so the harness itself can
  // be seen to flag mismatches.
  bool negative_control = false;
};

std::vector<std::string> corpus_ids();

// Runs the embedded pipelines in id order. Unknown `only` ids raise
// std::invalid_argument.
std::vector<ExampleOutcome> run_examples(const CorpusOptions& options);

Json example_outcome_to_json(const ExampleOutcome& outcome);

}  // namespace dca
