#pragma once

#include <string>
#include <vector>

#include "svqa/caption.hpp"

namespace svqa {

// Closed token vocabulary of the caption grammar. Index 0 is the padding
// token; ordering is fixed so ids are stable across runs and languages.
class Vocabulary {
 public:
  static constexpr int pad_id = 0;

  // The canonical vocabulary covering every realizable word.
  static const Vocabulary& builtin();

  // Rebuild from a serialized word list (dataset manifests). Throws DataError
  // if the list has duplicates or no padding token at index 0.
  explicit Vocabulary(std::vector<std::string> words);

  int id(const std::string& word) const;  // DataError on unknown word
  const std::string& word(int id) const;  // DataError on out-of-range id
  bool contains(const std::string& word) const;
  int size() const { return static_cast<int>(words_.size()); }
  const std::vector<std::string>& words() const { return words_; }

 private:
  std::vector<std::string> words_;
};

// Deterministic surface realization; lower-case tokens terminated by ".".
// Throws ConfigError when the caption violates its AST invariants.
std::vector<std::string> realize(const Caption& caption);

// Inverse of realize. Throws ParseError (with token position) on sequences
// not derivable from the grammar.
Caption parse(const std::vector<std::string>& tokens);

struct Encoded {
  std::vector<int> ids;  // padded/truncated to max_len, trailing pad ids
  int length = 0;        // true token count before padding
};

Encoded encode(const std::vector<std::string>& tokens, const Vocabulary& vocab, int max_len);
std::vector<std::string> decode(const std::vector<int>& ids, const Vocabulary& vocab);

}  // namespace svqa
