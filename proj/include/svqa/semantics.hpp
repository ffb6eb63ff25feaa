#pragma once

#include "svqa/caption.hpp"
#include "svqa/scene.hpp"

namespace svqa {

// Three-valued agreement. `inapplicable` marks presupposition failure:
// empty denotations, non-unique references, wrong restrictor cardinality,
// depth relations in overlap-free scenes, or ties within the margin.
enum class Verdict : std::uint8_t { yes, no, inapplicable };

const std::string& to_string(Verdict v);

struct SemanticsConfig {
  // Comparisons must clear this margin (unit coordinates); anything closer
  // counts as a tie so labels stay robust to rasterization.
  double margin = 0.02;
};

// Entities matching every stated attribute, in scene order. The hypernym
// (absent shape) matches every entity.
std::vector<int> denote(const Scene& scene, const NounPhrase& np);

bool matches(const Entity& e, const NounPhrase& np);

// Euclidean center distance in unit coordinates.
double center_distance(const Entity& a, const Entity& b);

// Strict relation test between two concrete entities. `ref` must point to
// the resolved unique reference entity for proximity kinds and may be null
// otherwise. Margin failures are not errors here; they surface as
// `inapplicable` at the caption level.
bool relation_holds(const Scene& scene, const Entity& e1, RelationKind kind, const Entity& e2,
                    const Entity* ref, double margin);

// The member of `group` that is extreme along the selector axis, or nullopt
// when a presupposition fails: non-unique reference, reference inside the
// group, or a within-margin race for the extreme.
std::optional<int> select_extreme(const Scene& scene, const Relation& selector,
                                  const std::vector<int>& group, const SemanticsConfig& cfg);

Verdict evaluate(const Scene& scene, const Caption& caption, const SemanticsConfig& cfg = {});

}  // namespace svqa
