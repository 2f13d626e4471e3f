#include <gtest/gtest.h>

#include <atomic>
#include <cmath>
#include <map>
#include <random>
#include <set>
#include <sstream>
#include <thread>

#include "httplib.h"
#include "json.hpp"

#include "kwx/candidates.hpp"
#include "kwx/embed.hpp"
#include "kwx/error.hpp"

using namespace kwx;

namespace {

Document doc(std::string text) { return Document{"d", "en", std::move(text), {}, Split::test}; }

// Returns a fixed vector per text; unknown texts get `fallback`.
class MapProvider final : public EmbeddingProvider {
 public:
  std::map<std::string, EmbeddingVector> vectors;
  EmbeddingVector fallback{1.0, 0.0};
  double scale = 1.0;
  mutable int calls = 0;

  std::vector<EmbeddingVector> embed(const std::vector<std::string>& texts) const override {
    ++calls;
    std::vector<EmbeddingVector> out;
    for (const auto& t : texts) {
      const auto it = vectors.find(t);
      EmbeddingVector v = it == vectors.end() ? fallback : it->second;
      for (double& x : v) x *= scale;
      out.push_back(v);
    }
    return out;
  }
  std::string_view kind() const override { return "test"; }
  std::size_t dim() const override { return 2; }
};

// Unit vector at angle acos(c) from (1, 0): cosine with the document is c.
EmbeddingVector at_cosine(double c) { return {c, std::sqrt(1.0 - c * c)}; }

FileEmbeddingProvider parse(const std::string& text) {
  std::istringstream in(text);
  return FileEmbeddingProvider::parse(in, "mem");
}

}  // namespace

TEST(Cosine, Examples) {
  EXPECT_NEAR(cosine({0.3, -2.0, 5.0}, {0.3, -2.0, 5.0}), 1.0, 1e-12);
  EXPECT_NEAR(cosine({1.0, 0.0}, {0.0, 1.0}), 0.0, 1e-12);
  // 32 / (sqrt(14) * sqrt(77))
  EXPECT_NEAR(cosine({1, 2, 3}, {4, 5, 6}), 32.0 / std::sqrt(14.0 * 77.0), 1e-12);
  EXPECT_NEAR(cosine({1, 2, 3}, {4, 5, 6}), 0.974631, 1e-6);
}

TEST(Cosine, Errors) {
  EXPECT_THROW(cosine({1, 2}, {1, 2, 3}), UsageError);
  EXPECT_THROW(cosine({0, 0}, {1, 2}), UsageError);
}

TEST(Cosine, Symmetric) {
  std::mt19937_64 rng(12);
  std::normal_distribution<double> g;
  for (int i = 0; i < 200; ++i) {
    EmbeddingVector a(16), b(16);
    for (auto& x : a) x = g(rng);
    for (auto& x : b) x = g(rng);
    EXPECT_NEAR(cosine(a, b), cosine(b, a), 1e-12);
  }
}

TEST(EmbeddingKey, Fnv1a64) {
  EXPECT_EQ(embedding_key(""), "fnv1a64:cbf29ce484222325");
  EXPECT_EQ(embedding_key("a"), "fnv1a64:af63dc4c8601ec8c");
}

TEST(FileProvider, LoadsAndLooksUpByTextOrHash) {
  const auto p = parse("river\t1 0 0\n" + embedding_key("long document") + "\t0 1 0\n\n");
  EXPECT_EQ(p.dim(), 3u);
  EXPECT_EQ(p.size(), 2u);
  const auto v = p.embed({"river", "long document"});
  EXPECT_EQ(v[0], (EmbeddingVector{1, 0, 0}));
  EXPECT_EQ(v[1], (EmbeddingVector{0, 1, 0}));
}

TEST(FileProvider, RaggedDimensionsNameTheLine) {
  std::string v512, v300;
  for (int i = 0; i < 512; ++i) v512 += "0.1 ";
  for (int i = 0; i < 300; ++i) v300 += "0.1 ";
  EXPECT_EQ(parse("a\t" + v512 + "\nb\t" + v512 + "\n").dim(), 512u);
  try {
    parse("a\t" + v512 + "\nb\t" + v300 + "\n");
    FAIL();
  } catch (const DataError& e) {
    EXPECT_NE(std::string(e.what()).find("line 2"), std::string::npos) << e.what();
  }
}

TEST(FileProvider, MissingEmbedding) {
  const auto p = parse("river\t1 0\n");
  try {
    p.embed({"lake"});
    FAIL();
  } catch (const ProviderError& e) {
    EXPECT_NE(std::string(e.what()).find("missing embedding"), std::string::npos);
  }
}

TEST(FileProvider, RejectsMalformedEntries) {
  EXPECT_THROW(parse("river 1 0\n"), DataError);
  EXPECT_THROW(parse("river\t1 x\n"), DataError);
  EXPECT_THROW(parse("river\t\n"), DataError);
}

TEST(KeyBert, ConstantProviderKeepsFirstOccurrenceOrder) {
  MapProvider p;
  const auto out = keybert_rank(doc("delta alpha charlie"), Normalizer::identity(), p);
  ASSERT_EQ(out.size(), 3u);
  EXPECT_EQ(out[0].phrase, "delta");
  EXPECT_EQ(out[1].phrase, "alpha");
  EXPECT_EQ(out[2].phrase, "charlie");
  for (const auto& kw : out) EXPECT_NEAR(kw.score, 1.0, 1e-12);
  EXPECT_EQ(p.calls, 1);
}

TEST(KeyBert, SortsByCosine) {
  MapProvider p;
  p.vectors = {{"one", at_cosine(0.9)}, {"two", at_cosine(0.1)}, {"three", at_cosine(0.5)}};
  const auto out = keybert_rank(doc("one two three"), Normalizer::identity(), p);
  ASSERT_EQ(out.size(), 3u);
  EXPECT_EQ(out[0].phrase, "one");
  EXPECT_EQ(out[1].phrase, "three");
  EXPECT_EQ(out[2].phrase, "two");
  EXPECT_NEAR(out[0].score, 0.9, 1e-12);

  KeyBertOptions two;
  two.k = 2;
  EXPECT_EQ(keybert_rank(doc("one two three"), Normalizer::identity(), p, two).size(), 2u);
}

TEST(KeyBert, ScaleInvariantOrder) {
  std::mt19937_64 rng(13);
  std::normal_distribution<double> g;
  MapProvider p;
  const std::string text = "solar wind grid storage price market";
  p.vectors[text] = {g(rng), g(rng)};
  for (const char* w : {"solar", "wind", "grid", "storage", "price", "market"}) p.vectors[w] = {g(rng), g(rng)};
  const auto a = keybert_rank(doc(text), Normalizer::identity(), p);
  p.scale = 37.5;
  const auto b = keybert_rank(doc(text), Normalizer::identity(), p);
  ASSERT_EQ(a.size(), b.size());
  for (std::size_t i = 0; i < a.size(); ++i) EXPECT_EQ(a[i].phrase, b[i].phrase);
}

TEST(KeyBert, OnlyReturnsUnigramCandidates) {
  MapProvider p;
  const Normalizer n = Normalizer::for_language("en");
  const Document d = doc("The solar panels of the city, and 2024 prices.");
  std::set<std::string> allowed;
  for (const Candidate& c : generate_candidates(n.analyze(d.text), 1, false)) allowed.insert(c.surface);
  for (const auto& kw : keybert_rank(d, n, p)) EXPECT_TRUE(allowed.count(kw.phrase)) << kw.phrase;
}

TEST(KeyBert, NgramVariantBehindOption) {
  MapProvider p;
  KeyBertOptions opts;
  opts.max_ngram = 3;
  opts.k = 50;
  const auto out = keybert_rank(doc("solar panel"), Normalizer::identity(), p, opts);
  EXPECT_EQ(out.size(), 3u);
}

TEST(KeyBert, ZeroVectorIsProviderError) {
  MapProvider p;
  p.vectors["bad"] = {0.0, 0.0};
  EXPECT_THROW(keybert_rank(doc("bad good"), Normalizer::identity(), p), ProviderError);
}

TEST(KeyBert, NoCandidates) {
  MapProvider p;
  EXPECT_TRUE(keybert_rank(doc("2024 , ."), Normalizer::identity(), p).empty());
  EXPECT_EQ(p.calls, 0);
}

class HttpProviderTest : public ::testing::Test {
 protected:
  void SetUp() override {
    server_.Post("/embed", [this](const httplib::Request& req, httplib::Response& res) {
      ++requests_;
      const auto body = nlohmann::json::parse(req.body);
      nlohmann::json vectors = nlohmann::json::array();
      for (const auto& t : body.at("texts")) {
        const std::string s = t.get<std::string>();
        vectors.push_back({static_cast<double>(s.size()), 1.0});
      }
      res.set_content(nlohmann::json{{"vectors", vectors}}.dump(), "application/json");
    });
    server_.Post("/broken", [](const httplib::Request&, httplib::Response& res) {
      res.status = 500;
      res.set_content("model not loaded", "text/plain");
    });
    server_.Post("/short", [](const httplib::Request&, httplib::Response& res) {
      res.set_content(R"({"vectors": [[1.0, 2.0]]})", "application/json");
    });
    port_ = server_.bind_to_any_port("127.0.0.1");
    thread_ = std::thread([this] { server_.listen_after_bind(); });
    server_.wait_until_ready();
  }
  void TearDown() override {
    server_.stop();
    thread_.join();
  }
  std::string url(const std::string& path) const { return "http://127.0.0.1:" + std::to_string(port_) + path; }

  httplib::Server server_;
  std::thread thread_;
  int port_ = 0;
  std::atomic<int> requests_{0};
};

TEST_F(HttpProviderTest, PostsTextsAndReadsVectors) {
  HttpEmbeddingProvider p(url("/embed"));
  const auto v = p.embed({"ab", "abcd"});
  ASSERT_EQ(v.size(), 2u);
  EXPECT_EQ(v[0], (EmbeddingVector{2.0, 1.0}));
  EXPECT_EQ(v[1], (EmbeddingVector{4.0, 1.0}));
}

TEST_F(HttpProviderTest, KeyBertBatchesOneCallPerDocument) {
  HttpEmbeddingProvider p(url("/embed"));
  const auto out = keybert_rank(doc("tiny enormous"), Normalizer::identity(), p);
  EXPECT_EQ(requests_.load(), 1);
  ASSERT_EQ(out.size(), 2u);
}

TEST_F(HttpProviderTest, ServerErrorCarriesDiagnostics) {
  HttpEmbeddingProvider p(url("/broken"));
  try {
    p.embed({"x"});
    FAIL();
  } catch (const ProviderError& e) {
    EXPECT_NE(std::string(e.what()).find("500"), std::string::npos);
    EXPECT_NE(std::string(e.what()).find("model not loaded"), std::string::npos);
  }
}

TEST_F(HttpProviderTest, CountMismatch) {
  HttpEmbeddingProvider p(url("/short"));
  EXPECT_THROW(p.embed({"x", "y"}), ProviderError);
}

TEST(HttpProvider, UnreachableService) {
  HttpEmbeddingProvider p("http://127.0.0.1:1/embed", std::chrono::seconds(2));
  EXPECT_THROW(p.embed({"x"}), ProviderError);
  EXPECT_THROW(HttpEmbeddingProvider("localhost:8080"), UsageError);
}
