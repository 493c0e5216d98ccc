#include "mwe/corpus_io.hpp"

#include <cmath>
#include <cstdio>
#include <stdexcept>

#include "mwe/text.hpp"
#include "json.hpp"

namespace mwe {

namespace {

using text::split_lines;

std::vector<std::string> split_tabs(std::string_view line) {
  std::vector<std::string> cols;
  std::size_t start = 0;
  while (true) {
    std::size_t tab = line.find('\t', start);
    if (tab == std::string_view::npos) {
      cols.emplace_back(line.substr(start));
      break;
    }
    cols.emplace_back(line.substr(start, tab - start));
    start = tab + 1;
  }
  return cols;
}

bool is_simple_id(const std::string& id) {
  if (id.empty()) return false;
  for (char c : id)
    if (!std::isdigit(static_cast<unsigned char>(c))) return false;
  return true;
}

constexpr double kRowSumTol = 1e-4;

}  // namespace

std::vector<TaggedSentence> parse_conllu(std::string_view raw) {
  std::string normalized = text::nfc(raw);
  std::vector<TaggedSentence> sentences;
  TaggedSentence cur;
  std::size_t block_ordinal = 0;
  bool in_block = false;

  auto flush = [&] {
    if (!in_block) return;
    ++block_ordinal;
    if (cur.id.empty()) cur.id = std::to_string(block_ordinal);
    sentences.push_back(std::move(cur));
    cur = TaggedSentence{};
    in_block = false;
  };

  auto lines = split_lines(normalized);
  for (std::size_t ln = 0; ln < lines.size(); ++ln) {
    const std::string& line = lines[ln];
    if (line.empty()) {
      flush();
      continue;
    }
    in_block = true;
    if (line[0] == '#') {
      auto eq = line.find('=');
      if (line.rfind("# sent_id", 0) == 0 && eq != std::string::npos) {
        std::size_t v = eq + 1;
        while (v < line.size() && line[v] == ' ') ++v;
        cur.id = line.substr(v);
      }
      continue;
    }
    auto cols = split_tabs(line);
    if (cols.size() < 4)
      throw std::runtime_error("conllu line " + std::to_string(ln + 1) +
                               ": expected >= 4 tab-separated columns, got " +
                               std::to_string(cols.size()));
    const std::string& id = cols[0];
    // Multiword-token ranges (1-2) and empty nodes (1.1) carry no POS of
    // their own.
    if (id.find('-') != std::string::npos || id.find('.') != std::string::npos)
      continue;
    if (!is_simple_id(id))
      throw std::runtime_error("conllu line " + std::to_string(ln + 1) +
                               ": non-integer token ID '" + id + "'");
    Token tok;
    tok.index = std::stoi(id);
    tok.form = cols[1];
    tok.lemma = cols[2];
    tok.pos = cols[3];
    cur.tokens.push_back(std::move(tok));
  }
  flush();
  return sentences;
}

ParallelCorpus read_parallel(std::string_view src_text, std::string_view trg_text) {
  ParallelCorpus corpus;
  corpus.source = split_lines(src_text);
  corpus.target = split_lines(trg_text);
  if (corpus.source.size() != corpus.target.size())
    throw std::runtime_error(
        "parallel corpus line count mismatch: source has " +
        std::to_string(corpus.source.size()) + " lines, target has " +
        std::to_string(corpus.target.size()));
  return corpus;
}

std::vector<AttentionRecord> read_attention_jsonl(std::string_view input) {
  std::vector<AttentionRecord> records;
  auto lines = split_lines(input);
  for (std::size_t ln = 0; ln < lines.size(); ++ln) {
    if (lines[ln].empty()) continue;
    nlohmann::json j;
    try {
      j = nlohmann::json::parse(lines[ln]);
    } catch (const nlohmann::json::exception& e) {
      throw std::runtime_error("attention jsonl line " + std::to_string(ln + 1) +
                               ": " + e.what());
    }
    AttentionRecord rec;
    rec.id = j.at("id").get<std::string>();
    rec.src_units = j.at("src").get<std::vector<std::string>>();
    rec.trg_units = j.at("trg").get<std::vector<std::string>>();
    rec.matrix = j.at("attn").get<std::vector<std::vector<double>>>();

    if (rec.matrix.size() != rec.trg_units.size())
      throw std::runtime_error("record '" + rec.id + "': matrix has " +
                               std::to_string(rec.matrix.size()) +
                               " rows but trg has " +
                               std::to_string(rec.trg_units.size()) + " units");
    for (std::size_t r = 0; r < rec.matrix.size(); ++r) {
      const auto& row = rec.matrix[r];
      if (row.size() != rec.src_units.size())
        throw std::runtime_error("record '" + rec.id + "': row " +
                                 std::to_string(r) + " has " +
                                 std::to_string(row.size()) +
                                 " entries but src has " +
                                 std::to_string(rec.src_units.size()) + " units");
      double sum = 0.0;
      for (double p : row) {
        if (p < 0.0 || p > 1.0)
          throw std::runtime_error("record '" + rec.id + "': row " +
                                   std::to_string(r) +
                                   " has entry outside [0,1]");
        sum += p;
      }
      if (std::abs(sum - 1.0) > kRowSumTol)
        throw std::runtime_error("record '" + rec.id + "': row " +
                                 std::to_string(r) + " sums to " +
                                 std::to_string(sum));
    }
    records.push_back(std::move(rec));
  }
  return records;
}

std::string write_mwe_lexicon(const std::vector<MwePair>& pairs) {
  std::string out;
  char buf[32];
  for (const auto& p : pairs) {
    std::snprintf(buf, sizeof(buf), "%.6f", p.score);
    out += p.src_surface;
    out += '\t';
    out += p.trg_surface;
    out += '\t';
    out += buf;
    out += '\t';
    out += std::to_string(p.src_freq);
    out += '\t';
    out += std::to_string(p.trg_freq);
    out += '\t';
    out += std::to_string(p.cooc_freq);
    out += '\n';
  }
  return out;
}

std::vector<MwePair> read_mwe_lexicon(std::string_view input) {
  std::vector<MwePair> pairs;
  auto lines = split_lines(input);
  for (std::size_t ln = 0; ln < lines.size(); ++ln) {
    if (lines[ln].empty()) continue;
    auto cols = split_tabs(lines[ln]);
    if (cols.size() != 6)
      throw std::runtime_error("lexicon line " + std::to_string(ln + 1) +
                               ": expected 6 columns, got " +
                               std::to_string(cols.size()));
    MwePair p;
    p.src_surface = cols[0];
    p.trg_surface = cols[1];
    p.score = std::stod(cols[2]);
    p.src_freq = std::stoull(cols[3]);
    p.trg_freq = std::stoull(cols[4]);
    p.cooc_freq = std::stoull(cols[5]);
    pairs.push_back(std::move(p));
  }
  return pairs;
}

std::string write_candidates(const std::vector<MweCandidate>& cands) {
  std::string out;
  for (const auto& c : cands) {
    out += text::join(c.lemma_key, "|");
    out += '\t';
    out += text::join(c.surface, " ");
    out += '\t';
    out += c.pattern_name;
    out += '\t';
    out += std::to_string(c.freq);
    out += '\n';
  }
  return out;
}

std::vector<MweCandidate> read_candidates(std::string_view input) {
  std::vector<MweCandidate> cands;
  auto lines = split_lines(input);
  for (std::size_t ln = 0; ln < lines.size(); ++ln) {
    if (lines[ln].empty()) continue;
    auto cols = split_tabs(lines[ln]);
    if (cols.size() != 4)
      throw std::runtime_error("candidate line " + std::to_string(ln + 1) +
                               ": expected 4 columns, got " +
                               std::to_string(cols.size()));
    MweCandidate c;
    std::size_t start = 0;
    const std::string& key = cols[0];
    while (true) {
      std::size_t bar = key.find('|', start);
      if (bar == std::string::npos) {
        c.lemma_key.push_back(key.substr(start));
        break;
      }
      c.lemma_key.push_back(key.substr(start, bar - start));
      start = bar + 1;
    }
    c.surface = text::split_ws(cols[1]);
    c.pattern_name = cols[2];
    c.freq = std::stoull(cols[3]);
    cands.push_back(std::move(c));
  }
  return cands;
}

}  // namespace mwe
