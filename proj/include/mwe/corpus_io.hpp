#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace mwe {

struct Token {
  std::string form;
  std::string lemma;
  std::string pos;    // UPOS, uppercase
  int index = 0;      // 1-based position within the sentence
};

struct TaggedSentence {
  std::string id;
  std::vector<Token> tokens;
};

struct ParallelCorpus {
  std::vector<std::string> source;
  std::vector<std::string> target;

  std::size_t size() const { return source.size(); }
};

// One sentence's attention dump: rows are target subword units, columns
// source subword units, every row a probability distribution.
struct AttentionRecord {
  std::string id;
  std::vector<std::string> src_units;
  std::vector<std::string> trg_units;
  std::vector<std::vector<double>> matrix;
};

struct Occurrence {
  std::size_t sent_index = 0;  // 0-based position in the tagged corpus
  std::string sent_id;
  int start = 0;  // token indices, 0-based, end inclusive
  int end = 0;
};

struct MweCandidate {
  std::vector<std::string> lemma_key;  // lowercased lemmas
  std::vector<std::string> surface;    // surface forms of first occurrence
  std::string pattern_name;
  std::size_t freq = 0;
  std::vector<Occurrence> occurrences;
};

struct MwePair {
  std::string src_surface;  // tokens joined by space
  std::string trg_surface;
  double score = 0.0;
  std::size_t src_freq = 0;
  std::size_t trg_freq = 0;
  std::size_t cooc_freq = 0;

  bool operator==(const MwePair&) const = default;
};

// Throws std::runtime_error with the offending line number on malformed input.
std::vector<TaggedSentence> parse_conllu(std::string_view text);

ParallelCorpus read_parallel(std::string_view src_text, std::string_view trg_text);

// Validates row-stochasticity (tolerance 1e-4) and matrix dimensions.
std::vector<AttentionRecord> read_attention_jsonl(std::string_view text);

std::string write_mwe_lexicon(const std::vector<MwePair>& pairs);
std::vector<MwePair> read_mwe_lexicon(std::string_view text);

std::string write_candidates(const std::vector<MweCandidate>& cands);
std::vector<MweCandidate> read_candidates(std::string_view text);

}  // namespace mwe
