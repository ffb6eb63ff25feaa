#include "svqa/grammar.hpp"

#include <algorithm>
#include <array>
#include <unordered_map>

namespace svqa {

namespace {

const std::array<std::string, kRelationKindCount> kRelationNames = {
    "left", "right", "above", "below", "closer", "farther", "behind", "front"};

const std::array<std::string, 3> kCaptionTypeNames = {"explicit", "comparative", "superlative"};

// comparative / superlative adjective forms of the directional kinds
const char* comparative_word(RelationKind k) {
  switch (k) {
    case RelationKind::left: return "left";
    case RelationKind::right: return "right";
    case RelationKind::above: return "upper";
    case RelationKind::below: return "lower";
    default: return nullptr;
  }
}

const char* superlative_word(RelationKind k) {
  switch (k) {
    case RelationKind::left: return "leftmost";
    case RelationKind::right: return "rightmost";
    case RelationKind::above: return "uppermost";
    case RelationKind::below: return "lowermost";
    default: return nullptr;
  }
}

bool starts_with_vowel(const std::string& word) {
  if (word.empty()) return false;
  char c = word[0];
  return c == 'a' || c == 'e' || c == 'i' || c == 'o' || c == 'u';
}

}  // namespace

const std::string& to_string(RelationKind k) { return kRelationNames[static_cast<int>(k)]; }

RelationKind relation_kind_from_string(const std::string& word) {
  for (int i = 0; i < kRelationKindCount; ++i)
    if (kRelationNames[i] == word) return static_cast<RelationKind>(i);
  throw ConfigError("unknown relation kind: " + word);
}

const std::string& to_string(CaptionType t) { return kCaptionTypeNames[static_cast<int>(t)]; }

CaptionType caption_type_from_string(const std::string& name) {
  for (int i = 0; i < 3; ++i)
    if (kCaptionTypeNames[i] == name) return static_cast<CaptionType>(i);
  throw ConfigError("unknown caption type: " + name);
}

CaptionType type_of(const Caption& c) {
  if (std::holds_alternative<ExplicitCaption>(c)) return CaptionType::explicit_rel;
  return std::get<ImplicitCaption>(c).degree == Degree::comparative ? CaptionType::comparative
                                                                    : CaptionType::superlative;
}

std::optional<std::string> validate(const Caption& c) {
  auto np_ok = [](const NounPhrase& np) { return np.color.has_value() || np.shape.has_value(); };
  auto rel_ok = [](const Relation& r) {
    return r.reference.has_value() == is_proximity(r.kind);
  };
  if (const auto* e = std::get_if<ExplicitCaption>(&c)) {
    if (!np_ok(e->subject) || !np_ok(e->object)) return "noun phrase without color or shape";
    if (e->subject.definite || e->object.definite) return "explicit subject/object must be indefinite";
    if (!rel_ok(e->relation)) return "reference NP present iff proximity kind";
    if (e->relation.reference) {
      const auto& ref = *e->relation.reference;
      if (!np_ok(ref)) return "noun phrase without color or shape";
      if (!ref.definite) return "proximity reference must be definite";
      if (ref.same_description(e->subject) || ref.same_description(e->object))
        return "proximity reference must differ from subject and object descriptions";
    }
    return std::nullopt;
  }
  const auto& i = std::get<ImplicitCaption>(c);
  if (is_depth(i.selector.kind)) return "behind/front cannot be a selector";
  if (!rel_ok(i.selector)) return "reference NP present iff proximity kind";
  if (!np_ok(i.restrictor) || !np_ok(i.predicate)) return "noun phrase without color or shape";
  if (!i.restrictor.definite) return "restrictor must be definite";
  if (i.predicate.definite) return "predicate must be indefinite";
  if (i.selector.reference) {
    const auto& ref = *i.selector.reference;
    if (!np_ok(ref)) return "noun phrase without color or shape";
    if (!ref.definite) return "proximity reference must be definite";
    if (ref.same_description(i.restrictor)) return "proximity reference must differ from restrictor";
  }
  return std::nullopt;
}

Vocabulary::Vocabulary(std::vector<std::string> words) : words_(std::move(words)) {
  if (words_.empty() || words_[0] != "<pad>")
    throw DataError("vocabulary must start with the <pad> token");
  std::vector<std::string> sorted = words_;
  std::sort(sorted.begin(), sorted.end());
  if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
    throw DataError("vocabulary contains duplicate words");
}

const Vocabulary& Vocabulary::builtin() {
  static const Vocabulary vocab([] {
    std::vector<std::string> w = {
        "<pad>", ".", "a", "an", "the", "is", "to", "of", "than", "from", "in", "front",
        "left", "right", "above", "below", "behind",
        "upper", "lower", "closer", "farther",
        "leftmost", "rightmost", "uppermost", "lowermost", "closest", "farthest",
        "shape",
    };
    for (int i = 0; i < kShapeCount; ++i) w.push_back(to_string(static_cast<Shape>(i)));
    for (int i = 0; i < kColorCount; ++i) w.push_back(to_string(static_cast<Color>(i)));
    return w;
  }());
  return vocab;
}

int Vocabulary::id(const std::string& word) const {
  for (int i = 0; i < size(); ++i)
    if (words_[i] == word) return i;
  throw DataError("word not in vocabulary: " + word);
}

const std::string& Vocabulary::word(int id) const {
  if (id < 0 || id >= size()) throw DataError("token id out of range: " + std::to_string(id));
  return words_[id];
}

bool Vocabulary::contains(const std::string& word) const {
  return std::find(words_.begin(), words_.end(), word) != words_.end();
}

namespace {

void realize_np_core(const NounPhrase& np, std::vector<std::string>& out) {
  if (np.color) out.push_back(to_string(*np.color));
  out.push_back(np.shape ? to_string(*np.shape) : "shape");
}

void realize_np(const NounPhrase& np, std::vector<std::string>& out) {
  if (np.definite) {
    out.push_back("the");
  } else {
    std::string head = np.color ? to_string(*np.color) : to_string(*np.shape);
    out.push_back(starts_with_vowel(head) ? "an" : "a");
  }
  realize_np_core(np, out);
}

void realize_predicate(const NounPhrase& np, std::vector<std::string>& out) {
  if (np.shape) {
    realize_np(np, out);
  } else {
    out.push_back(to_string(*np.color));  // bare adjective: "... is green ."
  }
}

}  // namespace

std::vector<std::string> realize(const Caption& caption) {
  if (auto problem = validate(caption))
    throw ConfigError("realize: invalid caption: " + *problem);

  std::vector<std::string> out;
  if (const auto* e = std::get_if<ExplicitCaption>(&caption)) {
    realize_np(e->subject, out);
    out.push_back("is");
    switch (e->relation.kind) {
      case RelationKind::left:
        out.insert(out.end(), {"to", "the", "left", "of"});
        break;
      case RelationKind::right:
        out.insert(out.end(), {"to", "the", "right", "of"});
        break;
      case RelationKind::above:
        out.push_back("above");
        break;
      case RelationKind::below:
        out.push_back("below");
        break;
      case RelationKind::behind:
        out.push_back("behind");
        break;
      case RelationKind::front:
        out.insert(out.end(), {"in", "front", "of"});
        break;
      case RelationKind::closer:
        out.insert(out.end(), {"closer", "to"});
        realize_np(*e->relation.reference, out);
        out.push_back("than");
        break;
      case RelationKind::farther:
        out.insert(out.end(), {"farther", "from"});
        realize_np(*e->relation.reference, out);
        out.push_back("than");
        break;
    }
    realize_np(e->object, out);
  } else {
    const auto& i = std::get<ImplicitCaption>(caption);
    out.push_back("the");
    if (is_proximity(i.selector.kind)) {
      realize_np_core(i.restrictor, out);
      bool closer = i.selector.kind == RelationKind::closer;
      if (i.degree == Degree::comparative)
        out.push_back(closer ? "closer" : "farther");
      else
        out.push_back(closer ? "closest" : "farthest");
      out.push_back(closer ? "to" : "from");
      realize_np(*i.selector.reference, out);
    } else {
      out.push_back(i.degree == Degree::comparative ? comparative_word(i.selector.kind)
                                                    : superlative_word(i.selector.kind));
      realize_np_core(i.restrictor, out);
    }
    out.push_back("is");
    realize_predicate(i.predicate, out);
  }
  out.push_back(".");
  return out;
}

namespace {

// Recursive-descent parser over the closed grammar.
class Parser {
 public:
  explicit Parser(const std::vector<std::string>& tokens) : toks_(tokens) {}

  Caption run() {
    Caption c = sentence();
    if (pos_ != toks_.size()) fail("trailing tokens after sentence");
    return c;
  }

 private:
  [[noreturn]] void fail(const std::string& why) const {
    throw ParseError(pos_, "parse error at token " + std::to_string(pos_ + 1) + ": " + why);
  }

  const std::string& peek() const {
    if (pos_ >= toks_.size()) {
      throw ParseError(pos_, "parse error at token " + std::to_string(pos_ + 1) +
                                 ": unexpected end of sentence");
    }
    return toks_[pos_];
  }

  std::string take() {
    const std::string& t = peek();
    ++pos_;
    return t;
  }

  void expect(const std::string& word) {
    if (peek() != word) fail("expected '" + word + "', got '" + peek() + "'");
    ++pos_;
  }

  static std::optional<Color> as_color(const std::string& w) {
    for (int i = 0; i < kColorCount; ++i)
      if (to_string(static_cast<Color>(i)) == w) return static_cast<Color>(i);
    return std::nullopt;
  }

  static std::optional<Shape> as_shape(const std::string& w) {
    for (int i = 0; i < kShapeCount; ++i)
      if (to_string(static_cast<Shape>(i)) == w) return static_cast<Shape>(i);
    return std::nullopt;
  }

  // [color] (shape | "shape"); at least one informative attribute
  NounPhrase np_core(bool definite) {
    NounPhrase np;
    np.definite = definite;
    np.color = as_color(peek());
    if (np.color) ++pos_;
    if (peek() == "shape") {
      if (!np.color) fail("bare hypernym noun phrase");
      ++pos_;
    } else if (auto s = as_shape(peek())) {
      np.shape = s;
      ++pos_;
    } else {
      fail("expected a shape noun");
    }
    return np;
  }

  NounPhrase indefinite_np() {
    const std::string& art = peek();
    if (art != "a" && art != "an") fail("expected indefinite article");
    ++pos_;
    std::size_t head_pos = pos_;
    NounPhrase np = np_core(false);
    const std::string& head = toks_[head_pos];
    if ((art == "an") != starts_with_vowel(head)) {
      pos_ = head_pos - 1;
      fail("article does not agree with noun phrase");
    }
    return np;
  }

  NounPhrase definite_np() {
    expect("the");
    return np_core(true);
  }

  Relation rel_phrase() {
    Relation rel;
    const std::string& w = peek();
    if (w == "to") {
      ++pos_;
      expect("the");
      const std::string& dir = take();
      if (dir == "left")
        rel.kind = RelationKind::left;
      else if (dir == "right")
        rel.kind = RelationKind::right;
      else {
        --pos_;
        fail("expected 'left' or 'right'");
      }
      expect("of");
    } else if (w == "above") {
      ++pos_;
      rel.kind = RelationKind::above;
    } else if (w == "below") {
      ++pos_;
      rel.kind = RelationKind::below;
    } else if (w == "behind") {
      ++pos_;
      rel.kind = RelationKind::behind;
    } else if (w == "in") {
      ++pos_;
      expect("front");
      expect("of");
      rel.kind = RelationKind::front;
    } else if (w == "closer" || w == "farther") {
      bool closer = w == "closer";
      ++pos_;
      expect(closer ? "to" : "from");
      rel.kind = closer ? RelationKind::closer : RelationKind::farther;
      rel.reference = definite_np();
      expect("than");
    } else {
      fail("expected a relation phrase");
    }
    return rel;
  }

  Caption sentence() {
    const std::string& first = peek();
    if (first == "a" || first == "an") {
      ExplicitCaption e;
      e.subject = indefinite_np();
      expect("is");
      e.relation = rel_phrase();
      e.object = indefinite_np();
      expect(".");
      return e;
    }
    if (first != "the") fail("sentence must start with an article");
    ++pos_;

    ImplicitCaption i;
    const std::string& w = peek();
    bool positional = false;
    for (RelationKind k : {RelationKind::left, RelationKind::right, RelationKind::above,
                           RelationKind::below}) {
      if (w == comparative_word(k)) {
        i.degree = Degree::comparative;
        i.selector.kind = k;
        positional = true;
        break;
      }
      if (w == superlative_word(k)) {
        i.degree = Degree::superlative;
        i.selector.kind = k;
        positional = true;
        break;
      }
    }
    if (positional) {
      ++pos_;
      i.restrictor = np_core(true);
    } else {
      i.restrictor = np_core(true);
      const std::string& prox = take();
      if (prox == "closer" || prox == "closest") {
        i.selector.kind = RelationKind::closer;
        i.degree = prox == "closer" ? Degree::comparative : Degree::superlative;
        expect("to");
      } else if (prox == "farther" || prox == "farthest") {
        i.selector.kind = RelationKind::farther;
        i.degree = prox == "farther" ? Degree::comparative : Degree::superlative;
        expect("from");
      } else {
        --pos_;
        fail("expected a proximity selector");
      }
      i.selector.reference = definite_np();
    }
    expect("is");
    // predicate: bare color adjective or an indefinite NP
    if (auto col = as_color(peek())) {
      std::size_t at = pos_;
      ++pos_;
      if (peek() == ".") {
        i.predicate = NounPhrase{col, std::nullopt, false};
      } else {
        pos_ = at;  // "red circle ." would be missing its article
        fail("expected '.' after bare color predicate");
      }
    } else {
      i.predicate = indefinite_np();
    }
    expect(".");
    return i;
  }

  const std::vector<std::string>& toks_;
  std::size_t pos_ = 0;
};

}  // namespace

Caption parse(const std::vector<std::string>& tokens) {
  Caption c = Parser(tokens).run();
  if (auto problem = validate(c))
    throw ParseError(0, "parse error: caption violates invariants: " + *problem);
  return c;
}

Encoded encode(const std::vector<std::string>& tokens, const Vocabulary& vocab, int max_len) {
  Encoded enc;
  enc.ids.assign(max_len, Vocabulary::pad_id);
  enc.length = std::min<int>(static_cast<int>(tokens.size()), max_len);
  for (int i = 0; i < enc.length; ++i) enc.ids[i] = vocab.id(tokens[i]);
  return enc;
}

std::vector<std::string> decode(const std::vector<int>& ids, const Vocabulary& vocab) {
  int len = static_cast<int>(ids.size());
  while (len > 0 && ids[len - 1] == Vocabulary::pad_id) --len;
  std::vector<std::string> tokens;
  tokens.reserve(len);
  for (int i = 0; i < len; ++i) tokens.push_back(vocab.word(ids[i]));
  return tokens;
}

}  // namespace svqa
