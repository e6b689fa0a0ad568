#include "mre/textnorm.hpp"

#include <array>
#include <cctype>
#include <string_view>

namespace mre {

namespace {

// Multi-byte punctuation that shows up in LLM output and web text.
constexpr std::array<std::string_view, 12> kUnicodePunct = {
    "‘", "’", "“", "”", "–", "—",
    "…", "«", "»", "¡", "¿", "′",
};

bool eat_unicode_punct(std::string_view rest, std::size_t& len) {
  for (auto p : kUnicodePunct) {
    if (rest.substr(0, p.size()) == p) {
      len = p.size();
      return true;
    }
  }
  return false;
}

}  // namespace

TokenSequence normalize(const std::string& text, const NormalizeOptions& opts) {
  TokenSequence out;
  std::string current;
  std::size_t i = 0;
  while (i < text.size()) {
    unsigned char c = text[i];
    std::size_t punct_len = 0;
    if (std::isspace(c)) {
      if (!current.empty()) {
        out.push_back(current);
        current.clear();
      }
      ++i;
    } else if (opts.strip_punctuation && c < 0x80 && std::ispunct(c)) {
      ++i;
    } else if (opts.strip_punctuation &&
               eat_unicode_punct(std::string_view(text).substr(i), punct_len)) {
      i += punct_len;
    } else {
      current.push_back(c < 0x80 ? static_cast<char>(std::tolower(c))
                                 : static_cast<char>(c));
      ++i;
    }
  }
  if (!current.empty()) out.push_back(current);
  return out;
}

std::string join(const TokenSequence& tokens) {
  std::string out;
  for (std::size_t i = 0; i < tokens.size(); ++i) {
    if (i) out.push_back(' ');
    out += tokens[i];
  }
  return out;
}

std::string normalized_key(const std::string& text) {
  return join(normalize(text));
}

}  // namespace mre
