#include "ast_random.hpp"

namespace testsupport {

using namespace svqa;

namespace {

NounPhrase random_np(Rng& rng, bool definite) {
  // color only / shape only / both
  int form = rng.uniform_index(3);
  NounPhrase np;
  np.definite = definite;
  if (form != 1) np.color = static_cast<Color>(rng.uniform_index(kColorCount));
  if (form != 0) np.shape = static_cast<Shape>(rng.uniform_index(kShapeCount));
  return np;
}

}  // namespace

Caption random_caption(Rng& rng, CaptionType type) {
  if (type == CaptionType::explicit_rel) {
    ExplicitCaption e;
    e.relation.kind = static_cast<RelationKind>(rng.uniform_index(kRelationKindCount));
    e.subject = random_np(rng, false);
    e.object = random_np(rng, false);
    if (is_proximity(e.relation.kind)) {
      NounPhrase ref = random_np(rng, true);
      while (ref.same_description(e.subject) || ref.same_description(e.object))
        ref = random_np(rng, true);
      e.relation.reference = ref;
    }
    return e;
  }
  ImplicitCaption i;
  i.degree = type == CaptionType::comparative ? Degree::comparative : Degree::superlative;
  i.selector.kind = static_cast<RelationKind>(rng.uniform_index(6));
  i.restrictor = random_np(rng, true);
  i.predicate = random_np(rng, false);
  if (is_proximity(i.selector.kind)) {
    NounPhrase ref = random_np(rng, true);
    while (ref.same_description(i.restrictor)) ref = random_np(rng, true);
    i.selector.reference = ref;
  }
  return i;
}

Caption random_caption(Rng& rng) {
  return random_caption(rng, static_cast<CaptionType>(rng.uniform_index(3)));
}

}  // namespace testsupport
