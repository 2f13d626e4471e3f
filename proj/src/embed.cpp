#include "kwx/embed.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "httplib.h"
#include "json.hpp"

#include "kwx/candidates.hpp"
#include "kwx/error.hpp"

namespace kwx {
namespace {

std::string preview(std::string_view text) {
  constexpr std::size_t kMax = 60;
  if (text.size() <= kMax) return std::string(text);
  return std::string(text.substr(0, kMax)) + "...";
}

}  // namespace

double cosine(const EmbeddingVector& a, const EmbeddingVector& b) {
  if (a.size() != b.size()) {
    throw UsageError("cosine of vectors with different dimensions (" + std::to_string(a.size()) + " vs " +
                     std::to_string(b.size()) + ")");
  }
  double dot = 0.0, na = 0.0, nb = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    dot += a[i] * b[i];
    na += a[i] * a[i];
    nb += b[i] * b[i];
  }
  if (na == 0.0 || nb == 0.0) throw UsageError("cosine of a zero vector");
  const double c = dot / (std::sqrt(na) * std::sqrt(nb));
  return std::clamp(c, -1.0, 1.0);
}

std::string embedding_key(std::string_view text) {
  std::uint64_t h = 14695981039346656037ULL;
  for (unsigned char c : text) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  char buf[32];
  std::snprintf(buf, sizeof buf, "fnv1a64:%016llx", static_cast<unsigned long long>(h));
  return buf;
}

// ------------------------------------------------------------ file provider

FileEmbeddingProvider FileEmbeddingProvider::load(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open embedding file '" + path.string() + "'");
  return parse(in, path.string());
}

FileEmbeddingProvider FileEmbeddingProvider::parse(std::istream& in, std::string_view source) {
  FileEmbeddingProvider provider;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    const auto where = std::string(source) + ": line " + std::to_string(line_no);
    const auto tab = line.rfind('\t');
    if (tab == std::string::npos) throw DataError("missing tab separator at " + where);

    EmbeddingVector values;
    std::istringstream fields(line.substr(tab + 1));
    std::string field;
    while (fields >> field) {
      char* end = nullptr;
      const double v = std::strtod(field.c_str(), &end);
      if (end != field.c_str() + field.size() || !std::isfinite(v)) {
        throw DataError("bad vector entry '" + field + "' at " + where);
      }
      values.push_back(v);
    }
    if (values.empty()) throw DataError("empty vector at " + where);
    if (provider.dim_ == 0) {
      provider.dim_ = values.size();
    } else if (values.size() != provider.dim_) {
      throw DataError("vector of dimension " + std::to_string(values.size()) + " at " + where + ", expected " +
                      std::to_string(provider.dim_));
    }
    provider.vectors_.insert_or_assign(line.substr(0, tab), std::move(values));
  }
  return provider;
}

std::vector<EmbeddingVector> FileEmbeddingProvider::embed(const std::vector<std::string>& texts) const {
  std::vector<EmbeddingVector> out;
  out.reserve(texts.size());
  for (const std::string& text : texts) {
    auto it = vectors_.find(text);
    if (it == vectors_.end()) it = vectors_.find(embedding_key(text));
    if (it == vectors_.end()) {
      throw ProviderError("missing embedding for '" + preview(text) + "' (key " + embedding_key(text) + ")");
    }
    out.push_back(it->second);
  }
  return out;
}

// ------------------------------------------------------------ HTTP provider

HttpEmbeddingProvider::HttpEmbeddingProvider(std::string url, std::chrono::seconds timeout) : timeout_(timeout) {
  const auto scheme = url.find("://");
  if (scheme == std::string::npos) throw UsageError("provider URL needs a scheme: '" + url + "'");
  const auto slash = url.find('/', scheme + 3);
  origin_ = url.substr(0, slash);
  path_ = slash == std::string::npos ? "/" : url.substr(slash);
}

std::vector<EmbeddingVector> HttpEmbeddingProvider::embed(const std::vector<std::string>& texts) const {
  using nlohmann::json;
  httplib::Client client(origin_);
  client.set_connection_timeout(timeout_);
  client.set_read_timeout(timeout_);
  client.set_write_timeout(timeout_);

  const json request = {{"texts", texts}};
  const auto res = client.Post(path_, request.dump(), "application/json");
  if (!res) {
    throw ProviderError("embedding request to " + origin_ + path_ + " failed: " + httplib::to_string(res.error()));
  }
  if (res->status != 200) {
    throw ProviderError("embedding service returned HTTP " + std::to_string(res->status) + ": " +
                        preview(res->body));
  }
  json body;
  try {
    body = json::parse(res->body);
  } catch (const json::parse_error& e) {
    throw ProviderError(std::string("embedding service sent malformed JSON: ") + e.what());
  }
  const auto vectors = body.find("vectors");
  if (vectors == body.end() || !vectors->is_array()) {
    throw ProviderError("embedding service response lacks a 'vectors' array");
  }
  if (vectors->size() != texts.size()) {
    throw ProviderError("embedding service returned " + std::to_string(vectors->size()) + " vectors for " +
                        std::to_string(texts.size()) + " texts");
  }
  std::vector<EmbeddingVector> out;
  std::size_t dim = 0;
  for (const json& v : *vectors) {
    if (!v.is_array() || v.empty()) throw ProviderError("embedding service returned a non-vector entry");
    EmbeddingVector values;
    for (const json& x : v) {
      if (!x.is_number()) throw ProviderError("embedding service returned a non-numeric entry");
      values.push_back(x.get<double>());
      if (!std::isfinite(values.back())) throw ProviderError("embedding service returned a non-finite entry");
    }
    if (dim == 0) dim = values.size();
    if (values.size() != dim) throw ProviderError("embedding service returned vectors of mixed dimensions");
    out.push_back(std::move(values));
  }
  return out;
}

// ---------------------------------------------------------------- KeyBERT

std::vector<ScoredKeyword> keybert_rank(const Document& doc, const Normalizer& normalizer,
                                        const EmbeddingProvider& provider, const KeyBertOptions& options) {
  const std::vector<Token> tokens = normalizer.analyze(doc.text);
  const std::vector<Candidate> candidates = generate_candidates(tokens, options.max_ngram, false);
  if (candidates.empty()) return {};

  std::vector<std::string> texts;
  texts.reserve(candidates.size() + 1);
  texts.push_back(doc.text);
  for (const Candidate& c : candidates) texts.push_back(c.surface);
  const std::vector<EmbeddingVector> vectors = provider.embed(texts);
  if (vectors.size() != texts.size()) {
    throw ProviderError("provider returned " + std::to_string(vectors.size()) + " vectors for " +
                        std::to_string(texts.size()) + " texts");
  }

  std::vector<RankedPhrase> ranked;
  ranked.reserve(candidates.size());
  for (std::size_t i = 0; i < candidates.size(); ++i) {
    double score = 0.0;
    try {
      score = cosine(vectors[i + 1], vectors[0]);
    } catch (const UsageError& e) {
      throw ProviderError("unusable embedding for '" + candidates[i].surface + "': " + e.what());
    }
    ranked.push_back({candidates[i].surface, candidates[i].norm, score, candidates[i].first_pos()});
  }
  return finalize_ranking(std::move(ranked), ScoreOrder::higher_is_better, options.k);
}

}  // namespace kwx
