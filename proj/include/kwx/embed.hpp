#pragma once

#include <chrono>
#include <filesystem>
#include <istream>
#include <memory>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "kwx/corpus.hpp"
#include "kwx/normalize.hpp"
#include "kwx/ranking.hpp"

namespace kwx {

using EmbeddingVector = std::vector<double>;

// dot(a, b) / (|a| |b|). Throws UsageError on a dimension mismatch or a zero
// vector.
double cosine(const EmbeddingVector& a, const EmbeddingVector& b);

// "fnv1a64:<16 hex digits>" of the UTF-8 bytes; the alternative key form of
// embedding files.
std::string embedding_key(std::string_view text);

class EmbeddingProvider {
 public:
  virtual ~EmbeddingProvider() = default;

  // One vector per input text, in input order. Throws ProviderError.
  virtual std::vector<EmbeddingVector> embed(const std::vector<std::string>& texts) const = 0;
  virtual std::string_view kind() const = 0;
  // Declared dimension, 0 when not yet known.
  virtual std::size_t dim() const = 0;
};

// Exact-match lookup over `<key>\t<v1 v2 ...>` lines, where key is the
// literal text or its embedding_key(). Immutable after loading, so embed()
// may be called concurrently.
class FileEmbeddingProvider final : public EmbeddingProvider {
 public:
  static FileEmbeddingProvider load(const std::filesystem::path& path);
  static FileEmbeddingProvider parse(std::istream& in, std::string_view source = "<stream>");

  std::vector<EmbeddingVector> embed(const std::vector<std::string>& texts) const override;
  std::string_view kind() const override { return "file_backed"; }
  std::size_t dim() const override { return dim_; }
  std::size_t size() const { return vectors_.size(); }

 private:
  std::size_t dim_ = 0;
  std::unordered_map<std::string, EmbeddingVector> vectors_;
};

// POSTs {"texts": [...]} to `url` and expects {"vectors": [[...], ...]}.
// Each call opens its own connection.
class HttpEmbeddingProvider final : public EmbeddingProvider {
 public:
  explicit HttpEmbeddingProvider(std::string url, std::chrono::seconds timeout = std::chrono::seconds(60));

  std::vector<EmbeddingVector> embed(const std::vector<std::string>& texts) const override;
  std::string_view kind() const override { return "http_service"; }
  std::size_t dim() const override { return 0; }

 private:
  std::string origin_;  // scheme://host[:port]
  std::string path_;
  std::chrono::seconds timeout_;
};

struct KeyBertOptions {
  std::size_t k = 10;
  int max_ngram = 1;  // the n-gram variant (up to 3) is kept for ablations
};

// Candidates are embedded by surface form together with the document text in
// a single provider call and ranked by cosine to the document.
std::vector<ScoredKeyword> keybert_rank(const Document& doc, const Normalizer& normalizer,
                                        const EmbeddingProvider& provider, const KeyBertOptions& options = {});

}  // namespace kwx
