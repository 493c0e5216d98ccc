#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include "mwe/corpus_composer.hpp"
#include "mwe/mwe_aligner.hpp"

namespace mwe {

struct PipelineConfig {
  std::string src_tagged;    // CoNLL-U, source side of the training corpus
  std::string trg_tagged;
  std::string src_text;      // parallel plain text, same sentence order
  std::string trg_text;
  std::string src_patterns;
  std::string trg_patterns;
  std::string dev_src;       // optional: devset for MWE-subset extraction
  std::string dev_trg;
  std::string out_dir;

  std::size_t min_freq = 2;
  AlignWeights weights;
  double threshold = 0.5;
  LayoutMode mode = LayoutMode::phrases;
  std::optional<std::size_t> baseline_limit;
  std::string layout_file;   // optional; default_layout(mode) otherwise
  std::uint64_t seed = 1;
};

// Flat key=value file, `#` comments. Unknown keys are an error.
PipelineConfig parse_config(std::string_view text, const std::string& base_dir);

// Throws if any referenced input path does not exist.
void validate_config(const PipelineConfig& config);

// extract -> align -> compose -> mwe-devset; writes outputs plus
// manifest.json under out_dir. Any failure removes partial outputs.
// Returns the manifest JSON.
std::string run_pipeline(const PipelineConfig& config);

}  // namespace mwe
