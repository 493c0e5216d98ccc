#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "mwe/corpus_io.hpp"

namespace mwe {

class SplitMix64 {
 public:
  explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next() {
    std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ULL);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
  }

 private:
  std::uint64_t state_;
};

enum class LayoutMode { phrases, sentences };

struct BaselineSegment {
  double fraction = 0.0;
};
struct MweBlockSegment {
  int copies = 1;
};
using Segment = std::variant<BaselineSegment, MweBlockSegment>;

struct LayoutSpec {
  LayoutMode mode = LayoutMode::sentences;
  std::optional<std::size_t> baseline_limit;
  std::vector<Segment> segments;
  std::uint64_t seed = 1;
};

// Fisher-Yates permutation of 0..n-1 driven by SplitMix64(seed).
std::vector<std::size_t> seeded_shuffle(std::size_t n, std::uint64_t seed);

// Four baseline quarters interleaved with 1x/2x/1x/1x MWE blocks (five
// copies total).
LayoutSpec default_layout(LayoutMode mode);

int total_copies(const LayoutSpec& layout);

// Output line count for a given layout without materializing anything.
std::uint64_t composed_size(std::uint64_t baseline_lines,
                            std::uint64_t mwe_lines, const LayoutSpec& layout);

ParallelCorpus compose(const ParallelCorpus& baseline,
                       const ParallelCorpus& mwe_units,
                       const LayoutSpec& layout);

// Layout file: one segment per line, `base FRACTION` or `mwe COPIES`.
std::vector<Segment> parse_layout_file(std::string_view text);

}  // namespace mwe
