#pragma once

#include <filesystem>
#include <memory>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "kwx/corpus.hpp"
#include "kwx/embed.hpp"
#include "kwx/normalize.hpp"
#include "kwx/ranking.hpp"

namespace kwx {

// Document id -> POS tag per tokenizer token.
using PosSidecar = std::unordered_map<std::string, std::vector<std::string>>;

// `{"id": str, "pos": [str, ...]}` per line.
PosSidecar load_pos_sidecar(const std::filesystem::path& path);

class Extractor {
 public:
  virtual ~Extractor() = default;
  virtual std::string_view name() const = 0;
  // Safe to call concurrently for different documents.
  virtual std::vector<ScoredKeyword> extract(const Document& doc, const Normalizer& normalizer) const = 0;
  // Per-run remarks worth logging once extraction is over.
  virtual std::vector<std::string> notes() const { return {}; }
};

struct ExtractorSettings {
  std::size_t k = 10;
  std::shared_ptr<const EmbeddingProvider> provider;  // keybert only
  int keybert_max_ngram = 1;
  std::shared_ptr<const PosSidecar> pos_tags;          // multipartite only
};

// yake, kpminer, textrank, multipartite, rakun, keybert
const std::vector<std::string>& extractor_names();
bool is_known_extractor(std::string_view name);

// Throws UsageError "unknown extractor ..." or "provider required ...".
std::unique_ptr<Extractor> make_extractor(std::string_view name, const ExtractorSettings& settings);

}  // namespace kwx
