#pragma once

#include <array>
#include <set>
#include <string>
#include <vector>

#include "mwe/corpus_io.hpp"

namespace mwe {

struct BleuReport {
  double bleu = 0.0;  // [0, 100]
  std::array<double, 4> precisions{};
  double brevity_penalty = 1.0;
  std::size_t hyp_length = 0;
  std::size_t ref_length = 0;
};

struct HighlightSpan {
  std::size_t sentence = 0;
  std::size_t start = 0;  // token indices, end inclusive
  std::size_t end = 0;
};

struct NgramDiff {
  std::set<std::string> improving;  // n-grams joined by space
  std::set<std::string> worsening;
  std::vector<HighlightSpan> improving_spans;  // over new_hyp tokens
  std::vector<HighlightSpan> worsening_spans;  // over baseline_hyp tokens
};

using TokenLines = std::vector<std::vector<std::string>>;

// Classic corpus BLEU, n = 1..4, single reference, no smoothing unless
// requested (add-one on the clipped counts).
BleuReport corpus_bleu(const TokenLines& hyps, const TokenLines& refs,
                       bool smooth = false);

struct DevsetSubset {
  ParallelCorpus corpus;
  std::vector<std::size_t> indices;  // kept line indices, strictly increasing
};

// Keeps pairs whose lowercased source contains any lexicon src surface as a
// contiguous token subsequence.
DevsetSubset extract_mwe_devset(const ParallelCorpus& dev,
                                const std::vector<MwePair>& lexicon);

NgramDiff ngram_diff(const TokenLines& baseline_hyp, const TokenLines& new_hyp,
                     const TokenLines& ref, int max_n = 4);

// Side-by-side HTML with improving n-grams green and worsening red.
std::string render_diff_html(const TokenLines& baseline_hyp,
                             const TokenLines& new_hyp, const TokenLines& ref,
                             const NgramDiff& diff);

}  // namespace mwe
