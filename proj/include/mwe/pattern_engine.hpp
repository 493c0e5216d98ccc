#pragma once

#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "mwe/corpus_io.hpp"

namespace mwe {

struct Literal {
  std::string tag;
};
struct Alternation {
  std::set<std::string> tags;
};
struct Wildcard {};
struct Repeat;  // recursive via PatternItem

using PatternAtom = std::variant<Literal, Alternation, Wildcard>;

struct Repeat {
  PatternAtom item;
  int min = 0;
  int max = 0;
};

using PatternItem = std::variant<Literal, Alternation, Wildcard, Repeat>;

struct Pattern {
  std::string name;
  std::vector<PatternItem> items;
};

struct Match {
  std::string pattern_name;
  int start = 0;  // 0-based token index
  int end = 0;    // inclusive
};

// The 17 UPOS tags.
const std::set<std::string>& upos_tags();

// Grammar: `name: ITEM+` with ITEM = TAG | (TAG|TAG|...) | * | ITEM{m,n}.
// Throws on unknown tags, unbalanced parentheses, or a pattern whose
// minimum match length is below 2.
Pattern parse_pattern(std::string_view line);

// Whole pattern file: one pattern per line, `#` comments, names unique.
std::vector<Pattern> parse_pattern_file(std::string_view text);

// Greedy longest match per start position per pattern; overlapping matches
// of the same pattern keep only the longest (earliest on ties); matches of
// different patterns may overlap freely. Output ordered by
// (pattern order, start).
std::vector<Match> match_patterns(const std::vector<Pattern>& patterns,
                                  const TaggedSentence& sentence);

std::vector<MweCandidate> extract_candidates(
    const std::vector<Pattern>& patterns,
    const std::vector<TaggedSentence>& corpus, std::size_t min_freq);

// 2*cooc / (freq_a + freq_b). Preconditions: freq_a, freq_b >= 1 and
// cooc <= min(freq_a, freq_b).
double dice_score(std::size_t freq_a, std::size_t freq_b, std::size_t cooc);

}  // namespace mwe
