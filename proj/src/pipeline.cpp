#include "mwe/pipeline.hpp"

#include <filesystem>
#include <stdexcept>
#include <vector>

#include "mwe/evaluation.hpp"
#include "mwe/pattern_engine.hpp"
#include "mwe/text.hpp"
#include "json.hpp"

namespace fs = std::filesystem;

namespace mwe {

PipelineConfig parse_config(std::string_view input, const std::string& base_dir) {
  PipelineConfig cfg;
  auto resolve = [&](const std::string& p) {
    if (p.empty() || fs::path(p).is_absolute() || base_dir.empty()) return p;
    return (fs::path(base_dir) / p).string();
  };
  for (const auto& raw : text::split_lines(input)) {
    std::string line = raw;
    auto hash = line.find('#');
    if (hash != std::string::npos) line = line.substr(0, hash);
    auto eq = line.find('=');
    if (eq == std::string::npos) {
      if (line.find_first_not_of(" \t") != std::string::npos)
        throw std::runtime_error("config line is not key=value: " + raw);
      continue;
    }
    auto trim = [](std::string s) {
      while (!s.empty() && (s.back() == ' ' || s.back() == '\t')) s.pop_back();
      std::size_t i = s.find_first_not_of(" \t");
      return i == std::string::npos ? std::string{} : s.substr(i);
    };
    std::string key = trim(line.substr(0, eq));
    std::string val = trim(line.substr(eq + 1));
    if (key == "src_tagged") cfg.src_tagged = resolve(val);
    else if (key == "trg_tagged") cfg.trg_tagged = resolve(val);
    else if (key == "src_text") cfg.src_text = resolve(val);
    else if (key == "trg_text") cfg.trg_text = resolve(val);
    else if (key == "src_patterns") cfg.src_patterns = resolve(val);
    else if (key == "trg_patterns") cfg.trg_patterns = resolve(val);
    else if (key == "dev_src") cfg.dev_src = resolve(val);
    else if (key == "dev_trg") cfg.dev_trg = resolve(val);
    else if (key == "out_dir") cfg.out_dir = resolve(val);
    else if (key == "min_freq") cfg.min_freq = std::stoull(val);
    else if (key == "w_dice") cfg.weights.dice = std::stod(val);
    else if (key == "w_sim") cfg.weights.sim = std::stod(val);
    else if (key == "threshold") cfg.threshold = std::stod(val);
    else if (key == "seed") cfg.seed = std::stoull(val);
    else if (key == "baseline_limit") cfg.baseline_limit = std::stoull(val);
    else if (key == "layout") cfg.layout_file = resolve(val);
    else if (key == "mode") {
      if (val == "phrases") cfg.mode = LayoutMode::phrases;
      else if (val == "sentences") cfg.mode = LayoutMode::sentences;
      else throw std::runtime_error("mode must be 'phrases' or 'sentences'");
    } else {
      throw std::runtime_error("unknown config key '" + key + "'");
    }
  }
  return cfg;
}

void validate_config(const PipelineConfig& cfg) {
  std::vector<std::pair<std::string, std::string>> required = {
      {"src_tagged", cfg.src_tagged}, {"trg_tagged", cfg.trg_tagged},
      {"src_text", cfg.src_text},     {"trg_text", cfg.trg_text},
      {"src_patterns", cfg.src_patterns}, {"trg_patterns", cfg.trg_patterns}};
  for (const auto& [key, path] : required) {
    if (path.empty())
      throw std::runtime_error("config is missing required key '" + key + "'");
    if (!fs::exists(path))
      throw std::runtime_error(key + " path does not exist: " + path);
  }
  for (const auto& path : {cfg.dev_src, cfg.dev_trg, cfg.layout_file})
    if (!path.empty() && !fs::exists(path))
      throw std::runtime_error("path does not exist: " + path);
  if (cfg.dev_src.empty() != cfg.dev_trg.empty())
    throw std::runtime_error("dev_src and dev_trg must be given together");
  if (cfg.out_dir.empty())
    throw std::runtime_error("config is missing required key 'out_dir'");
}

std::string run_pipeline(const PipelineConfig& cfg) {
  validate_config(cfg);
  fs::create_directories(cfg.out_dir);
  std::vector<std::string> written;
  auto emit = [&](const std::string& name, std::string_view content) {
    std::string path = (fs::path(cfg.out_dir) / name).string();
    text::write_file(path, content);
    written.push_back(path);
    return path;
  };

  try {
    nlohmann::json manifest;
    auto hash_input = [&](const std::string& key, const std::string& path) {
      if (path.empty()) return std::string{};
      std::string content = text::read_file(path);
      manifest["inputs"][key] = {{"path", path},
                                 {"hash", text::fnv1a_hex(content)}};
      return content;
    };

    // Stage 1: extract.
    std::vector<TaggedSentence> src_corpus, trg_corpus;
    std::vector<MweCandidate> src_cands, trg_cands;
    try {
      src_corpus = parse_conllu(hash_input("src_tagged", cfg.src_tagged));
      trg_corpus = parse_conllu(hash_input("trg_tagged", cfg.trg_tagged));
      auto src_pats = parse_pattern_file(hash_input("src_patterns", cfg.src_patterns));
      auto trg_pats = parse_pattern_file(hash_input("trg_patterns", cfg.trg_patterns));
      src_cands = extract_candidates(src_pats, src_corpus, cfg.min_freq);
      trg_cands = extract_candidates(trg_pats, trg_corpus, cfg.min_freq);
      emit("candidates.src.tsv", write_candidates(src_cands));
      emit("candidates.trg.tsv", write_candidates(trg_cands));
    } catch (const std::exception& e) {
      throw std::runtime_error(std::string("extract: ") + e.what());
    }

    // Stage 2: align.
    std::vector<MwePair> lexicon;
    ParallelCorpus training;
    try {
      training = read_parallel(hash_input("src_text", cfg.src_text),
                               hash_input("trg_text", cfg.trg_text));
      if (training.size() != src_corpus.size() ||
          training.size() != trg_corpus.size())
        throw std::runtime_error(
            "tagged corpora and parallel corpus must have the same number of "
            "sentences");
      lexicon = align_pairs(src_cands, trg_cands, training.size(), cfg.weights,
                            cfg.threshold);
      emit("lexicon.tsv", write_mwe_lexicon(lexicon));
    } catch (const std::exception& e) {
      throw std::runtime_error(std::string("align: ") + e.what());
    }

    // Stage 3: compose.
    ParallelCorpus composed;
    try {
      LayoutSpec layout = default_layout(cfg.mode);
      if (!cfg.layout_file.empty())
        layout.segments = parse_layout_file(hash_input("layout", cfg.layout_file));
      layout.seed = cfg.seed;
      layout.baseline_limit = cfg.baseline_limit;

      ParallelCorpus units;
      if (cfg.mode == LayoutMode::phrases) {
        for (const auto& p : lexicon) {
          units.source.push_back(p.src_surface);
          units.target.push_back(p.trg_surface);
        }
      } else {
        units = extract_mwe_devset(training, lexicon).corpus;
      }
      composed = compose(training, units, layout);
      emit("composed.src.txt", text::join(composed.source, "\n") + "\n");
      emit("composed.trg.txt", text::join(composed.target, "\n") + "\n");
      manifest["counts"]["mwe_units"] = units.size();
    } catch (const std::exception& e) {
      throw std::runtime_error(std::string("compose: ") + e.what());
    }

    // Stage 4: MWE devset.
    std::size_t devset_size = 0;
    if (!cfg.dev_src.empty()) {
      try {
        auto dev = read_parallel(hash_input("dev_src", cfg.dev_src),
                                 hash_input("dev_trg", cfg.dev_trg));
        auto subset = extract_mwe_devset(dev, lexicon);
        devset_size = subset.indices.size();
        emit("devset.mwe.src.txt", text::join(subset.corpus.source, "\n") + "\n");
        emit("devset.mwe.trg.txt", text::join(subset.corpus.target, "\n") + "\n");
        std::string idx;
        for (auto i : subset.indices) idx += std::to_string(i) + "\n";
        emit("devset.mwe.idx", idx);
      } catch (const std::exception& e) {
        throw std::runtime_error(std::string("mwe-devset: ") + e.what());
      }
    }

    manifest["params"] = {
        {"min_freq", cfg.min_freq},  {"w_dice", cfg.weights.dice},
        {"w_sim", cfg.weights.sim},  {"threshold", cfg.threshold},
        {"mode", cfg.mode == LayoutMode::phrases ? "phrases" : "sentences"},
        {"seed", cfg.seed}};
    if (cfg.baseline_limit) manifest["params"]["baseline_limit"] = *cfg.baseline_limit;
    manifest["counts"]["src_candidates"] = src_cands.size();
    manifest["counts"]["trg_candidates"] = trg_cands.size();
    manifest["counts"]["lexicon_pairs"] = lexicon.size();
    manifest["counts"]["composed_lines"] = composed.size();
    if (!cfg.dev_src.empty()) manifest["counts"]["mwe_devset"] = devset_size;
    for (const auto& path : written)
      manifest["outputs"].push_back(path);

    std::string manifest_text = manifest.dump(2) + "\n";
    emit("manifest.json", manifest_text);
    return manifest_text;
  } catch (...) {
    for (const auto& path : written) fs::remove(path);
    throw;
  }
}

}  // namespace mwe
