#pragma once

#include <map>
#include <string>
#include <vector>

#include "mwe/corpus_io.hpp"

namespace mwe {

struct AlignWeights {
  double dice = 0.7;
  double sim = 0.3;
};

// For each (src candidate, trg candidate) pair, the number of corpus lines
// where both occur; zero-cooc pairs are absent. Keys are candidate indices.
std::map<std::pair<std::size_t, std::size_t>, std::size_t> cooccurrence_counts(
    const std::vector<MweCandidate>& src_cands,
    const std::vector<MweCandidate>& trg_cands, std::size_t corpus_lines);

// 1 - levenshtein(fold(a), fold(b)) / max(|fold(a)|, |fold(b)|);
// 1.0 when both fold to empty.
double string_similarity(const std::string& a, const std::string& b);

// score = w.dice * dice + w.sim * string_similarity of the joined surfaces.
// Keeps pairs scoring >= threshold, one best target per source (ties: higher
// cooc, then lexicographic trg lemma_key), sorted by score descending.
std::vector<MwePair> align_pairs(const std::vector<MweCandidate>& src_cands,
                                 const std::vector<MweCandidate>& trg_cands,
                                 std::size_t corpus_lines, AlignWeights weights,
                                 double threshold);

// Re-attach occurrence line sets to candidates loaded from a TSV by scanning
// the tagged corpus for each lemma_key as a contiguous lemma subsequence.
void locate_occurrences(std::vector<MweCandidate>& cands,
                        const std::vector<TaggedSentence>& corpus);

}  // namespace mwe
