#include <doctest.h>

#include <random>

#include "mre/textnorm.hpp"

using namespace mre;

TEST_CASE("normalize lowercases, strips punctuation, splits on whitespace") {
  CHECK(normalize("What are some renewable energy sources?") ==
        TokenSequence{"what", "are", "some", "renewable", "energy", "sources"});
  CHECK(normalize("") == TokenSequence{});
  CHECK(normalize("  Hello,  WORLD! ") == TokenSequence{"hello", "world"});
}

TEST_CASE("punctuation can be preserved behind the flag") {
  NormalizeOptions keep;
  keep.strip_punctuation = false;
  CHECK(normalize("Hello, world!", keep) == TokenSequence{"hello,", "world!"});
}

TEST_CASE("curly quotes and dashes are treated as punctuation") {
  CHECK(normalize("it’s a “test” — ok") ==
        TokenSequence{"its", "a", "test", "ok"});
}

TEST_CASE("normalize is idempotent and whitespace-insensitive") {
  std::mt19937 rng(7);
  std::vector<std::string> words = {"What", "ENERGY", "is,", "good?", "a-b",
                                    "it's", "42", "..."};
  for (int trial = 0; trial < 200; ++trial) {
    std::string text;
    int len = static_cast<int>(rng() % 8);
    for (int i = 0; i < len; ++i) {
      text += std::string(1 + rng() % 3, ' ');
      text += words[rng() % words.size()];
    }
    text += std::string(rng() % 3, ' ');
    auto once = normalize(text);
    CHECK(normalize(join(once)) == once);
    // repeated internal whitespace collapses
    std::string doubled;
    for (char c : text) {
      doubled += c;
      if (c == ' ') doubled += ' ';
    }
    CHECK(normalize(doubled) == once);
  }
}

TEST_CASE("tokens never contain whitespace or ASCII punctuation") {
  auto toks = normalize("a.b,c;d:e (f) [g] \"h\" 'i' j-k l/m");
  for (const auto& t : toks) {
    for (char c : t) {
      CHECK(!std::isspace(static_cast<unsigned char>(c)));
      CHECK(!std::ispunct(static_cast<unsigned char>(c)));
    }
    CHECK(!t.empty());
  }
}
