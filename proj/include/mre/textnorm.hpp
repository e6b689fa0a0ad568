#pragma once

#include <string>
#include <vector>

namespace mre {

using TokenSequence = std::vector<std::string>;

struct NormalizeOptions {
  bool strip_punctuation = true;
};

/// Lowercase, strip punctuation, split on whitespace. Deterministic; the
/// shared front end for every lexical metric.
TokenSequence normalize(const std::string& text,
                        const NormalizeOptions& opts = {});

/// Tokens joined by single spaces; normalize(join(normalize(t))) == normalize(t).
std::string join(const TokenSequence& tokens);

/// Canonical lookup key for a piece of text: join of its normalization.
std::string normalized_key(const std::string& text);

}  // namespace mre
