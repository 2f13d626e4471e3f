#include "kwx/extractor.hpp"

#include <algorithm>
#include <atomic>
#include <fstream>

#include "json.hpp"

#include "kwx/error.hpp"
#include "kwx/graph_extract.hpp"
#include "kwx/stat_extract.hpp"

namespace kwx {
namespace {

class YakeExtractor final : public Extractor {
 public:
  explicit YakeExtractor(std::size_t k) { options_.k = k; }
  std::string_view name() const override { return "yake"; }
  std::vector<ScoredKeyword> extract(const Document& doc, const Normalizer& normalizer) const override {
    YakeResult result = yake_extract(doc, normalizer, options_);
    if (result.casing_neutralized) neutralized_.fetch_add(1, std::memory_order_relaxed);
    return std::move(result.keywords);
  }
  std::vector<std::string> notes() const override {
    const std::size_t n = neutralized_.load();
    if (n == 0) return {};
    return {"yake: casing feature fixed to 1 for " + std::to_string(n) + " document(s) without uppercase letters"};
  }

 private:
  YakeOptions options_;
  mutable std::atomic<std::size_t> neutralized_{0};
};

class KpMinerExtractor final : public Extractor {
 public:
  explicit KpMinerExtractor(std::size_t k) { options_.k = k; }
  std::string_view name() const override { return "kpminer"; }
  std::vector<ScoredKeyword> extract(const Document& doc, const Normalizer& normalizer) const override {
    return kpminer(doc, normalizer, options_);
  }

 private:
  KpMinerOptions options_;
};

class TextRankExtractor final : public Extractor {
 public:
  explicit TextRankExtractor(std::size_t k) { options_.k = k; }
  std::string_view name() const override { return "textrank"; }
  std::vector<ScoredKeyword> extract(const Document& doc, const Normalizer& normalizer) const override {
    return textrank(doc, normalizer, options_);
  }

 private:
  TextRankOptions options_;
};

class MultipartiteExtractor final : public Extractor {
 public:
  MultipartiteExtractor(std::size_t k, std::shared_ptr<const PosSidecar> pos) : pos_(std::move(pos)) {
    options_.k = k;
  }
  std::string_view name() const override { return "multipartite"; }
  std::vector<ScoredKeyword> extract(const Document& doc, const Normalizer& normalizer) const override {
    const std::vector<std::string>* tags = nullptr;
    if (pos_) {
      const auto it = pos_->find(doc.id);
      if (it != pos_->end()) {
        tags = &it->second;
      } else {
        untagged_.fetch_add(1, std::memory_order_relaxed);
      }
    }
    return multipartite_rank(doc, normalizer, options_, tags);
  }
  std::vector<std::string> notes() const override {
    const std::size_t n = untagged_.load();
    if (n == 0) return {};
    return {"multipartite: no POS tags for " + std::to_string(n) + " document(s); used chunk candidates"};
  }

 private:
  MultipartiteOptions options_;
  std::shared_ptr<const PosSidecar> pos_;
  mutable std::atomic<std::size_t> untagged_{0};
};

class RakunExtractor final : public Extractor {
 public:
  explicit RakunExtractor(std::size_t k) { options_.k = k; }
  std::string_view name() const override { return "rakun"; }
  std::vector<ScoredKeyword> extract(const Document& doc, const Normalizer& normalizer) const override {
    return rakun(doc, normalizer, options_);
  }

 private:
  RakunOptions options_;
};

class KeyBertExtractor final : public Extractor {
 public:
  KeyBertExtractor(std::size_t k, int max_ngram, std::shared_ptr<const EmbeddingProvider> provider)
      : provider_(std::move(provider)) {
    options_.k = k;
    options_.max_ngram = max_ngram;
  }
  std::string_view name() const override { return "keybert"; }
  std::vector<ScoredKeyword> extract(const Document& doc, const Normalizer& normalizer) const override {
    return keybert_rank(doc, normalizer, *provider_, options_);
  }

 private:
  KeyBertOptions options_;
  std::shared_ptr<const EmbeddingProvider> provider_;
};

}  // namespace

PosSidecar load_pos_sidecar(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open POS file '" + path.string() + "'");
  PosSidecar sidecar;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    const std::string at = path.string() + ": line " + std::to_string(line_no);
    try {
      const auto obj = nlohmann::json::parse(line);
      auto id = obj.at("id").get<std::string>();
      auto tags = obj.at("pos").get<std::vector<std::string>>();
      if (!sidecar.emplace(std::move(id), std::move(tags)).second) throw DataError("duplicate id at " + at);
    } catch (const nlohmann::json::exception& e) {
      throw DataError("bad POS line at " + at + ": " + e.what());
    }
  }
  return sidecar;
}

const std::vector<std::string>& extractor_names() {
  static const std::vector<std::string> names = {"yake", "kpminer", "textrank", "multipartite", "rakun", "keybert"};
  return names;
}

bool is_known_extractor(std::string_view name) {
  const auto& names = extractor_names();
  return std::find(names.begin(), names.end(), name) != names.end();
}

std::unique_ptr<Extractor> make_extractor(std::string_view name, const ExtractorSettings& settings) {
  if (name == "yake") return std::make_unique<YakeExtractor>(settings.k);
  if (name == "kpminer") return std::make_unique<KpMinerExtractor>(settings.k);
  if (name == "textrank") return std::make_unique<TextRankExtractor>(settings.k);
  if (name == "multipartite") return std::make_unique<MultipartiteExtractor>(settings.k, settings.pos_tags);
  if (name == "rakun") return std::make_unique<RakunExtractor>(settings.k);
  if (name == "keybert") {
    if (!settings.provider) throw UsageError("provider required: keybert needs an embedding file or service URL");
    if (settings.keybert_max_ngram < 1 || settings.keybert_max_ngram > 3) {
      throw UsageError("keybert n-gram size must be within 1..3");
    }
    return std::make_unique<KeyBertExtractor>(settings.k, settings.keybert_max_ngram, settings.provider);
  }
  std::string known;
  for (const std::string& n : extractor_names()) known += (known.empty() ? "" : ", ") + n;
  throw UsageError("unknown extractor '" + std::string(name) + "' (known: " + known + ")");
}

}  // namespace kwx
