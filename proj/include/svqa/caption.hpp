#pragma once

#include <optional>
#include <variant>

#include "svqa/scene.hpp"

namespace svqa {

enum class RelationKind : std::uint8_t {
  left,
  right,
  above,  // smaller y, i.e. smaller row index
  below,
  closer,
  farther,
  behind,
  front,
};
inline constexpr int kRelationKindCount = 8;

const std::string& to_string(RelationKind k);
RelationKind relation_kind_from_string(const std::string& word);

inline bool is_proximity(RelationKind k) {
  return k == RelationKind::closer || k == RelationKind::farther;
}
inline bool is_depth(RelationKind k) {
  return k == RelationKind::behind || k == RelationKind::front;
}

// "a red circle", "the triangle", "a red shape" (absent shape realizes as
// the hypernym noun). At least one of color/shape must be present.
struct NounPhrase {
  std::optional<Color> color;
  std::optional<Shape> shape;
  bool definite = false;

  bool operator==(const NounPhrase&) const = default;
  bool same_description(const NounPhrase& o) const {
    return color == o.color && shape == o.shape;
  }
};

struct Relation {
  RelationKind kind = RelationKind::left;
  std::optional<NounPhrase> reference;  // present exactly for closer/farther

  bool operator==(const Relation&) const = default;
};

enum class Degree : std::uint8_t { comparative, superlative };

// "X is <relation> Y."
struct ExplicitCaption {
  NounPhrase subject;
  Relation relation;
  NounPhrase object;

  bool operator==(const ExplicitCaption&) const = default;
};

// "the lower X is Y." / "the X closest to Z is Y."
struct ImplicitCaption {
  Degree degree = Degree::comparative;
  Relation selector;  // kind never behind/front
  NounPhrase restrictor;
  NounPhrase predicate;

  bool operator==(const ImplicitCaption&) const = default;
};

using Caption = std::variant<ExplicitCaption, ImplicitCaption>;

enum class CaptionType : std::uint8_t { explicit_rel, comparative, superlative };
const std::string& to_string(CaptionType t);
CaptionType caption_type_from_string(const std::string& name);

CaptionType type_of(const Caption& c);

// Structural well-formedness (the AST invariants). Returns a diagnostic for
// the first violated rule, or nullopt when the caption is valid.
std::optional<std::string> validate(const Caption& c);

}  // namespace svqa
