// Acceptance suite: one printed pass/fail line per criterion, exit code 0
// only when every criterion holds at its stated tolerance.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <set>
#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "json.hpp"
#include "mwe/attention_analysis.hpp"
#include "mwe/corpus_composer.hpp"
#include "mwe/corpus_io.hpp"
#include "mwe/evaluation.hpp"
#include "mwe/mwe_aligner.hpp"
#include "mwe/pattern_engine.hpp"
#include "mwe/text.hpp"
#include "oracle.hpp"

namespace fs = std::filesystem;
using namespace mwe;

namespace {

int g_failures = 0;

void report(int n, const std::string& label, bool ok,
            const std::string& detail = "") {
  std::cout << "criterion " << n << " (" << label << "): "
            << (ok ? "PASS" : "FAIL");
  if (!ok && !detail.empty()) std::cout << " -- " << detail;
  std::cout << "\n";
  if (!ok) ++g_failures;
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
      .count();
}

TokenLines lines(const std::vector<std::string>& sents) {
  TokenLines out;
  for (const auto& s : sents) out.push_back(text::split_ws(s));
  return out;
}

// --- criterion 1 -----------------------------------------------------------

void criterion_bleu() {
  std::ostringstream why;
  bool ok = true;

  auto rep = corpus_bleu(lines({"the quick brown fox jumps"}),
                         lines({"the quick brown fox"}));
  if (std::abs(rep.bleu - 66.87) > 0.01) {
    ok = false;
    why << "hand oracle gave " << rep.bleu << "; ";
  }
  if (corpus_bleu(lines({"a b c d e"}), lines({"a b c d e"})).bleu != 100.0) {
    ok = false;
    why << "identity != 100; ";
  }
  if (corpus_bleu(lines({"a b c d"}), lines({"w x y z"})).bleu != 0.0) {
    ok = false;
    why << "disjoint != 0; ";
  }

  std::mt19937_64 rng(7);
  const std::vector<std::string> vocab = {"a", "b", "c", "d", "e",
                                          "f", "g", "h", "i", "j"};
  TokenLines hyps, refs;
  for (int i = 0; i < 10000; ++i) {
    std::vector<std::string> h(20), r(20);
    for (auto& t : h) t = vocab[rng() % vocab.size()];
    r = h;
    r[rng() % r.size()] = vocab[rng() % vocab.size()];
    hyps.push_back(std::move(h));
    refs.push_back(std::move(r));
  }
  auto t0 = std::chrono::steady_clock::now();
  auto big = corpus_bleu(hyps, refs);
  double dt = seconds_since(t0);
  if (!(big.bleu > 0.0 && big.bleu <= 100.0)) {
    ok = false;
    why << "10k-corpus BLEU out of range; ";
  }
  if (dt >= 1.0) {
    ok = false;
    why << "10k-sentence BLEU took " << dt << "s; ";
  }
  report(1, "BLEU oracle and 10k-sentence runtime < 1s", ok, why.str());
}

// --- criterion 2 -----------------------------------------------------------

void criterion_matcher() {
  std::ostringstream why;
  bool ok = true;
  std::mt19937_64 rng(20240817);
  auto t0 = std::chrono::steady_clock::now();
  int checked = 0;
  while (checked < 1000) {
    auto rc = test_oracle::random_case(rng);
    Pattern pat;
    try {
      pat = parse_pattern(rc.pattern_line);
    } catch (const std::runtime_error&) {
      continue;  // min length < 2; not a valid pattern
    }
    auto got = match_patterns({pat}, test_oracle::sentence(rc.tags));
    auto want = test_oracle::match({pat}, rc.tags);
    if (!test_oracle::same_matches(got, want)) {
      ok = false;
      why << "mismatch for pattern '" << rc.pattern_line << "'; ";
      break;
    }
    ++checked;
  }
  double dt = seconds_since(t0);
  if (dt >= 10.0) {
    ok = false;
    why << "1000 cases took " << dt << "s; ";
  }
  report(2, "matcher equals brute-force oracle, 1000 cases < 10s", ok,
         why.str());
}

// --- criterion 3 -----------------------------------------------------------

void criterion_composer() {
  std::ostringstream why;
  bool ok = true;

  ParallelCorpus base, units;
  for (int i = 0; i < 20; ++i) {
    base.source.push_back("s" + std::to_string(i));
    base.target.push_back("t" + std::to_string(i));
  }
  for (int i = 0; i < 5; ++i) {
    units.source.push_back("ms" + std::to_string(i));
    units.target.push_back("mt" + std::to_string(i));
  }
  for (LayoutMode mode : {LayoutMode::phrases, LayoutMode::sentences}) {
    for (std::uint64_t seed = 0; seed < 50 && ok; ++seed) {
      LayoutSpec layout = default_layout(mode);
      layout.seed = seed;
      auto out = compose(base, units, layout);
      std::multiset<std::pair<std::string, std::string>> got, want;
      for (std::size_t i = 0; i < out.size(); ++i)
        got.insert({out.source[i], out.target[i]});
      for (std::size_t i = 0; i < base.size(); ++i)
        want.insert({base.source[i], base.target[i]});
      for (int c = 0; c < total_copies(layout); ++c)
        for (std::size_t i = 0; i < units.size(); ++i)
          want.insert({units.source[i], units.target[i]});
      if (got != want) {
        ok = false;
        why << "conservation broken (mode "
            << (mode == LayoutMode::phrases ? "phrases" : "sentences")
            << ", seed " << seed << "); ";
      }
    }
  }

  if (total_copies(default_layout(LayoutMode::phrases)) != 5) {
    ok = false;
    why << "default layout is not 5 copies; ";
  }
  std::uint64_t big = composed_size(15'000'000ULL, 400'000ULL,
                                    default_layout(LayoutMode::phrases));
  if (big != 17'000'000ULL) {
    ok = false;
    why << "15M + 5x400K gave " << big << "; ";
  }
  std::uint64_t small = composed_size(4'500'000ULL, 60'000ULL,
                                      default_layout(LayoutMode::sentences));
  if (small != 4'800'000ULL) {
    ok = false;
    why << "4.5M + 5x60K gave " << small << "; ";
  }
  report(3, "composer conservation (2 modes x 50 seeds) and scale arithmetic",
         ok, why.str());
}

// --- criterion 4 -----------------------------------------------------------

void criterion_determinism() {
  std::ostringstream why;
  bool ok = true;

  ParallelCorpus base, units;
  for (int i = 0; i < 33; ++i) {
    base.source.push_back("s" + std::to_string(i));
    base.target.push_back("t" + std::to_string(i));
  }
  for (int i = 0; i < 4; ++i) {
    units.source.push_back("ms" + std::to_string(i));
    units.target.push_back("mt" + std::to_string(i));
  }
  for (LayoutMode mode : {LayoutMode::phrases, LayoutMode::sentences}) {
    LayoutSpec layout = default_layout(mode);
    layout.seed = 99;
    auto a = compose(base, units, layout);
    auto b = compose(base, units, layout);
    std::string sa = text::join(a.source, "\n") + "\n" +
                     text::join(a.target, "\n");
    std::string sb = text::join(b.source, "\n") + "\n" +
                     text::join(b.target, "\n");
    if (sa != sb) {
      ok = false;
      why << "compose not byte-identical across runs; ";
    }
  }

  std::vector<std::string> src = {"city", "bus"};
  std::vector<std::string> trg = {"městském", "autobuse"};
  std::vector<std::vector<double>> m = {{0.95, 0.05}, {0.3, 0.7}};
  for (RenderFormat fmt : {RenderFormat::text, RenderFormat::svg,
                           RenderFormat::html}) {
    if (render_matrix(src, trg, m, fmt) != render_matrix(src, trg, m, fmt)) {
      ok = false;
      why << "render_matrix not byte-identical; ";
    }
  }
  report(4, "compose and render_matrix are byte-identical across runs", ok,
         why.str());
}

// --- criterion 5 -----------------------------------------------------------

void criterion_attention() {
  std::ostringstream why;
  bool ok = true;
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> uni(0.05, 1.0);

  auto make_units = [&](std::size_t n) {
    std::vector<std::string> units(n);
    for (std::size_t i = 0; i < n; ++i) {
      units[i] = "u" + std::to_string(i);
      // continuation mark, never on the final unit (that would dangle)
      if (i + 1 < n && rng() % 3 == 0) units[i] += "@@";
    }
    return units;
  };

  for (int it = 0; it < 1000 && ok; ++it) {
    std::size_t ns = 1 + rng() % 6, nt = 1 + rng() % 6;
    nlohmann::json rec;
    rec["id"] = "r" + std::to_string(it);
    rec["src"] = make_units(ns);
    rec["trg"] = make_units(nt);
    nlohmann::json rows = nlohmann::json::array();
    for (std::size_t r = 0; r < nt; ++r) {
      std::vector<double> row(ns);
      double sum = 0.0;
      for (auto& v : row) sum += (v = uni(rng));
      for (auto& v : row) v /= sum;
      rows.push_back(row);
    }
    rec["attn"] = rows;

    auto records = read_attention_jsonl(rec.dump() + "\n");
    if (records.size() != 1) {
      ok = false;
      why << "read-validate rejected a stochastic matrix; ";
      break;
    }
    auto wa = merge_bpe(records[0]);
    for (const auto& row : wa.matrix) {
      double sum = 0.0;
      for (double v : row) sum += v;
      if (std::abs(sum - 1.0) > 1e-4) {
        ok = false;
        why << "post-merge row sum " << sum << "; ";
        break;
      }
    }
    double logn = std::log2(static_cast<double>(wa.src_words.size()));
    for (double h : row_entropy(wa.matrix))
      if (h < -1e-9 || h > logn + 1e-9) {
        ok = false;
        why << "entropy " << h << " outside [0, log2 n]; ";
        break;
      }
    auto full = span_concentration(wa, {0, wa.src_words.size() - 1},
                                   {0, wa.trg_words.size() - 1});
    if (std::abs(full.concentration - 1.0) > 1e-4) {
      ok = false;
      why << "full-span concentration " << full.concentration << "; ";
    }
  }

  // entropy equality cases
  auto h_uniform = row_entropy({{0.25, 0.25, 0.25, 0.25}});
  if (std::abs(h_uniform[0] - 2.0) > 1e-9) {
    ok = false;
    why << "uniform-row entropy != log2 n; ";
  }
  auto h_delta = row_entropy({{0.0, 1.0, 0.0}});
  if (std::abs(h_delta[0]) > 1e-9) {
    ok = false;
    why << "one-hot row entropy != 0; ";
  }
  report(5, "attention read-validate-merge invariants on 1000 random matrices",
         ok, why.str());
}

// --- criterion 6 -----------------------------------------------------------

void criterion_aligner() {
  std::ostringstream why;
  bool ok = true;

  auto src_corpus = parse_conllu(text::read_file(FIXTURE_DIR "/toy.src.conllu"));
  auto trg_corpus = parse_conllu(text::read_file(FIXTURE_DIR "/toy.trg.conllu"));
  auto pats = parse_pattern_file(text::read_file(FIXTURE_DIR "/patterns.pat"));
  auto src_cands = extract_candidates(pats, src_corpus, 2);
  auto trg_cands = extract_candidates(pats, trg_corpus, 2);
  std::size_t n = src_corpus.size();

  AlignWeights w;
  auto got = align_pairs(src_cands, trg_cands, n, w, 0.5);

  // brute-force enumeration of every pair, same tie and sort rules
  std::vector<MwePair> want;
  for (const auto& s : src_cands) {
    bool have = false;
    MwePair best;
    std::size_t best_cooc = 0;
    std::vector<std::string> best_key;
    for (const auto& t : trg_cands) {
      std::set<std::size_t> sl, tl;
      for (const auto& o : s.occurrences) sl.insert(o.sent_index);
      for (const auto& o : t.occurrences) tl.insert(o.sent_index);
      std::size_t cooc = 0;
      for (auto x : sl) cooc += tl.count(x);
      if (cooc == 0) continue;
      double score = w.dice * dice_score(s.freq, t.freq, cooc) +
                     w.sim * string_similarity(text::join(s.surface, " "),
                                               text::join(t.surface, " "));
      if (score < 0.5) continue;
      bool better = !have || score > best.score ||
                    (score == best.score &&
                     (cooc > best_cooc ||
                      (cooc == best_cooc && t.lemma_key < best_key)));
      if (better) {
        best = {text::join(s.surface, " "), text::join(t.surface, " "), score,
                s.freq, t.freq, cooc};
        best_cooc = cooc;
        best_key = t.lemma_key;
        have = true;
      }
    }
    if (have) want.push_back(best);
  }
  std::stable_sort(want.begin(), want.end(),
                   [](const MwePair& a, const MwePair& b) {
                     if (a.score != b.score) return a.score > b.score;
                     if (a.src_surface != b.src_surface)
                       return a.src_surface < b.src_surface;
                     return a.trg_surface < b.trg_surface;
                   });
  if (got != want) {
    ok = false;
    why << "align_pairs differs from brute-force enumeration (" << got.size()
        << " vs " << want.size() << " pairs); ";
  }

  if (got.empty() || got[0].src_surface != "New York" ||
      got[0].trg_surface != "New York" ||
      std::abs(got[0].score - 1.0) > 1e-9) {
    ok = false;
    why << "planted identical pair does not rank first at score 1.0; ";
  }
  report(6, "aligner equals brute-force oracle; planted pair scores 1.0 first",
         ok, why.str());
}

// --- criterion 7 -----------------------------------------------------------

void criterion_diff() {
  auto base = lines({"Jako ve městé autobuse nebo tramvaji ."});
  auto newer = lines({"Jen jako v městském autobuse nebo tramvaji ."});
  auto ref = lines({"Stejně jako v městském autobuse či tramvaji ."});
  auto d = ngram_diff(base, newer, ref);
  bool ok = d.improving.count("městském") > 0 && d.worsening.count("městé") > 0;
  report(7, "Czech city-bus diff: 'městském' improving, 'městé' worsening", ok);
}

// --- criterion 8 -----------------------------------------------------------

void criterion_pipeline() {
  std::ostringstream why;
  bool ok = true;

  fs::path work = fs::temp_directory_path() / "mwe_acceptance";
  fs::remove_all(work);
  fs::create_directories(work);
  std::ostringstream cfg;
  cfg << "src_tagged = " << FIXTURE_DIR "/toy.src.conllu" << "\n"
      << "trg_tagged = " << FIXTURE_DIR "/toy.trg.conllu" << "\n"
      << "src_text = " << FIXTURE_DIR "/toy.src.txt" << "\n"
      << "trg_text = " << FIXTURE_DIR "/toy.trg.txt" << "\n"
      << "src_patterns = " << FIXTURE_DIR "/patterns.pat" << "\n"
      << "trg_patterns = " << FIXTURE_DIR "/patterns.pat" << "\n"
      << "dev_src = " << FIXTURE_DIR "/dev.src.txt" << "\n"
      << "dev_trg = " << FIXTURE_DIR "/dev.trg.txt" << "\n"
      << "out_dir = " << (work / "out").string() << "\n"
      << "min_freq = 2\nw_dice = 0.7\nw_sim = 0.3\nthreshold = 0.5\n"
      << "mode = phrases\nseed = 1\n";
  text::write_file((work / "pipeline.cfg").string(), cfg.str());

  std::string cmd = std::string(CLI_PATH) + " all --config " +
                    (work / "pipeline.cfg").string() + " > " +
                    (work / "stdout.txt").string();
  auto t0 = std::chrono::steady_clock::now();
  int rc = std::system(cmd.c_str());
  double dt = seconds_since(t0);
  if (rc != 0) {
    ok = false;
    why << "CLI exited with " << rc << "; ";
  }
  if (dt >= 5.0) {
    ok = false;
    why << "end-to-end run took " << dt << "s; ";
  }

  if (ok) {
    auto manifest = nlohmann::json::parse(
        text::read_file((work / "out" / "manifest.json").string()));
    const auto& counts = manifest.at("counts");
    // frozen oracle values for the bundled toy fixture
    const std::vector<std::pair<std::string, std::size_t>> expect = {
        {"src_candidates", 5}, {"trg_candidates", 4}, {"lexicon_pairs", 5},
        {"mwe_units", 5},      {"composed_lines", 45}, {"mwe_devset", 3}};
    for (const auto& [key, val] : expect)
      if (counts.at(key).get<std::size_t>() != val) {
        ok = false;
        why << key << " = " << counts.at(key).get<std::size_t>()
            << ", expected " << val << "; ";
      }
  }
  report(8, "end-to-end 'all' on the toy fixture < 5s with frozen counts", ok,
         why.str());
}

}  // namespace

int main() {
  criterion_bleu();
  criterion_matcher();
  criterion_composer();
  criterion_determinism();
  criterion_attention();
  criterion_aligner();
  criterion_diff();
  criterion_pipeline();
  if (g_failures) {
    std::cout << g_failures << " criterion(s) failed\n";
    return 1;
  }
  std::cout << "all acceptance criteria passed\n";
  return 0;
}
