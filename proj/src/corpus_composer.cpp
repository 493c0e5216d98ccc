#include "mwe/corpus_composer.hpp"

#include <cmath>
#include <numeric>
#include <stdexcept>

#include "mwe/text.hpp"

namespace mwe {

std::vector<std::size_t> seeded_shuffle(std::size_t n, std::uint64_t seed) {
  std::vector<std::size_t> perm(n);
  std::iota(perm.begin(), perm.end(), std::size_t{0});
  SplitMix64 rng(seed);
  for (std::size_t i = n; i > 1; --i) {
    std::size_t j = static_cast<std::size_t>(rng.next() % i);
    std::swap(perm[i - 1], perm[j]);
  }
  return perm;
}

LayoutSpec default_layout(LayoutMode mode) {
  LayoutSpec layout;
  layout.mode = mode;
  layout.segments = {BaselineSegment{0.25}, MweBlockSegment{1},
                     BaselineSegment{0.25}, MweBlockSegment{2},
                     BaselineSegment{0.25}, MweBlockSegment{1},
                     BaselineSegment{0.25}, MweBlockSegment{1}};
  return layout;
}

int total_copies(const LayoutSpec& layout) {
  int copies = 0;
  for (const auto& seg : layout.segments)
    if (const auto* b = std::get_if<MweBlockSegment>(&seg)) copies += b->copies;
  return copies;
}

namespace {

void validate_layout(const LayoutSpec& layout) {
  double frac_sum = 0.0;
  int copies = 0;
  for (const auto& seg : layout.segments) {
    if (const auto* b = std::get_if<BaselineSegment>(&seg)) {
      if (b->fraction < 0.0)
        throw std::runtime_error("negative baseline fraction");
      frac_sum += b->fraction;
    } else {
      const auto& m = std::get<MweBlockSegment>(seg);
      if (m.copies < 1) throw std::runtime_error("MWE block needs copies >= 1");
      copies += m.copies;
    }
  }
  if (std::abs(frac_sum - 1.0) > 1e-9)
    throw std::runtime_error("baseline fractions must sum to 1, got " +
                             std::to_string(frac_sum));
  if (copies < 1)
    throw std::runtime_error("layout must contain at least one MWE block");
}

std::size_t last_baseline_index(const std::vector<Segment>& segments) {
  std::size_t last = segments.size();
  for (std::size_t i = 0; i < segments.size(); ++i)
    if (std::holds_alternative<BaselineSegment>(segments[i])) last = i;
  return last;
}

}  // namespace

std::uint64_t composed_size(std::uint64_t baseline_lines,
                            std::uint64_t mwe_lines, const LayoutSpec& layout) {
  validate_layout(layout);
  std::uint64_t n = baseline_lines;
  if (layout.baseline_limit) n = std::min<std::uint64_t>(n, *layout.baseline_limit);
  return n + static_cast<std::uint64_t>(total_copies(layout)) * mwe_lines;
}

ParallelCorpus compose(const ParallelCorpus& baseline,
                       const ParallelCorpus& mwe_units,
                       const LayoutSpec& layout) {
  validate_layout(layout);
  if (mwe_units.size() == 0)
    throw std::runtime_error("layout has MWE blocks but no MWE units given");
  std::size_t n = baseline.size();
  if (layout.baseline_limit) {
    if (*layout.baseline_limit > n)
      throw std::runtime_error("baseline_limit " +
                               std::to_string(*layout.baseline_limit) +
                               " exceeds baseline size " + std::to_string(n));
    n = *layout.baseline_limit;
  }

  // Baseline order: shuffled for sentences mode, left as-is for phrases
  // mode (the global shuffle below erases any layout anyway).
  std::vector<std::size_t> base_order;
  if (layout.mode == LayoutMode::sentences) {
    base_order = seeded_shuffle(n, layout.seed);
  } else {
    base_order.resize(n);
    std::iota(base_order.begin(), base_order.end(), std::size_t{0});
  }

  ParallelCorpus out;
  std::size_t base_cursor = 0;
  int copy_ordinal = 0;
  const std::size_t last_base = last_baseline_index(layout.segments);

  for (std::size_t si = 0; si < layout.segments.size(); ++si) {
    const auto& seg = layout.segments[si];
    if (const auto* b = std::get_if<BaselineSegment>(&seg)) {
      std::size_t take =
          si == last_base
              ? n - base_cursor
              : static_cast<std::size_t>(std::floor(b->fraction * static_cast<double>(n)));
      take = std::min(take, n - base_cursor);
      for (std::size_t k = 0; k < take; ++k) {
        std::size_t idx = base_order[base_cursor + k];
        out.source.push_back(baseline.source[idx]);
        out.target.push_back(baseline.target[idx]);
      }
      base_cursor += take;
    } else {
      const auto& m = std::get<MweBlockSegment>(seg);
      for (int c = 0; c < m.copies; ++c) {
        ++copy_ordinal;
        std::vector<std::size_t> order;
        if (layout.mode == LayoutMode::sentences) {
          order = seeded_shuffle(mwe_units.size(),
                                 layout.seed + static_cast<std::uint64_t>(copy_ordinal));
        } else {
          order.resize(mwe_units.size());
          std::iota(order.begin(), order.end(), std::size_t{0});
        }
        for (std::size_t idx : order) {
          out.source.push_back(mwe_units.source[idx]);
          out.target.push_back(mwe_units.target[idx]);
        }
      }
    }
  }
  // Leftover baseline lines when no Baseline segment exists.
  for (std::size_t k = base_cursor; k < n; ++k) {
    std::size_t idx = base_order[k];
    out.source.push_back(baseline.source[idx]);
    out.target.push_back(baseline.target[idx]);
  }

  if (layout.mode == LayoutMode::phrases) {
    // Interleaving raw phrase pairs unshuffled degrades training badly, so
    // phrases mode always shuffles the whole composed corpus.
    auto perm = seeded_shuffle(out.size(), layout.seed);
    ParallelCorpus shuffled;
    shuffled.source.reserve(out.size());
    shuffled.target.reserve(out.size());
    for (std::size_t idx : perm) {
      shuffled.source.push_back(out.source[idx]);
      shuffled.target.push_back(out.target[idx]);
    }
    return shuffled;
  }
  return out;
}

std::vector<Segment> parse_layout_file(std::string_view input) {
  std::vector<Segment> segments;
  for (const auto& raw : text::split_lines(input)) {
    std::string line = raw;
    auto hash = line.find('#');
    if (hash != std::string::npos) line = line.substr(0, hash);
    auto parts = text::split_ws(line);
    if (parts.empty()) continue;
    if (parts.size() != 2)
      throw std::runtime_error("layout line needs two fields: " + raw);
    if (parts[0] == "base")
      segments.push_back(BaselineSegment{std::stod(parts[1])});
    else if (parts[0] == "mwe")
      segments.push_back(MweBlockSegment{std::stoi(parts[1])});
    else
      throw std::runtime_error("layout segment must be 'base' or 'mwe': " + raw);
  }
  return segments;
}

}  // namespace mwe
