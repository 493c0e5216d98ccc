#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "mwe/corpus_io.hpp"

namespace mwe {

// (start, end) word indices, end inclusive.
using WordSpan = std::pair<std::size_t, std::size_t>;

struct WordAttention {
  std::vector<std::string> src_words;
  std::vector<std::string> trg_words;
  std::vector<std::vector<double>> matrix;  // |trg_words| x |src_words|
  std::vector<WordSpan> src_map;  // subword index range each word came from
  std::vector<WordSpan> trg_map;
};

struct SpanReport {
  WordSpan src_span;
  WordSpan trg_span;
  double concentration = 0.0;   // [0,1]
  double mean_entropy_bits = 0.0;
};

enum class RenderFormat { text, svg, html };

// Merge `@@`-continued BPE units into words: source columns summed, target
// rows averaged (rows stay stochastic). Throws on a dangling trailing `@@`.
WordAttention merge_bpe(const AttentionRecord& record);

// Shannon entropy in bits per target row, 0*log0 = 0.
std::vector<double> row_entropy(const std::vector<std::vector<double>>& matrix);

SpanReport span_concentration(const WordAttention& wa, WordSpan src_span,
                              WordSpan trg_span);

// Case-folded contiguous search for the pair's surfaces in the word lists.
std::optional<std::pair<WordSpan, WordSpan>> locate_mwe_spans(
    const WordAttention& wa, const MwePair& pair);

std::string render_matrix(const std::vector<std::string>& src_words,
                          const std::vector<std::string>& trg_words,
                          const std::vector<std::vector<double>>& matrix,
                          RenderFormat format);
std::string render_matrix(const WordAttention& wa, RenderFormat format);
std::string render_matrix(const AttentionRecord& record, RenderFormat format);

struct MweComparison {
  std::string record_id;
  std::string src_surface;
  std::string trg_surface;
  SpanReport a;
  SpanReport b;
};

struct CompareResult {
  std::vector<MweComparison> rows;  // ordered by record id
  std::size_t unmatched_ids = 0;
};

CompareResult compare_systems(const std::vector<AttentionRecord>& records_a,
                              const std::vector<AttentionRecord>& records_b,
                              const std::vector<MwePair>& lexicon);

}  // namespace mwe
