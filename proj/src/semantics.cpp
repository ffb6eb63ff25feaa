#include "svqa/semantics.hpp"

#include <array>
#include <cmath>

namespace svqa {

namespace {

const std::array<std::string, 3> kVerdictNames = {"true", "false", "inapplicable"};

enum class Tri { holds, tie, anti };

Tri axis_state(double v1, double v2, bool smaller_wins, double margin) {
  double lo = smaller_wins ? v1 : v2;
  double hi = smaller_wins ? v2 : v1;
  if (lo < hi - margin) return Tri::holds;
  if (lo > hi + margin) return Tri::anti;
  return Tri::tie;
}

bool any_overlap_in_scene(const Scene& scene) {
  for (std::size_t i = 0; i < scene.entities.size(); ++i)
    for (std::size_t j = i + 1; j < scene.entities.size(); ++j)
      if (entities_overlap(scene.entities[i], scene.entities[j], scene.canvas)) return true;
  return false;
}

// Tri-state for non-depth kinds; depth kinds have no tie (z is unique and
// overlap is boolean).
Tri relation_state(const Scene& scene, const Entity& e1, RelationKind kind, const Entity& e2,
                   const Entity* ref, double margin) {
  switch (kind) {
    case RelationKind::left:
      return axis_state(e1.cx, e2.cx, true, margin);
    case RelationKind::right:
      return axis_state(e1.cx, e2.cx, false, margin);
    case RelationKind::above:
      return axis_state(e1.cy, e2.cy, true, margin);
    case RelationKind::below:
      return axis_state(e1.cy, e2.cy, false, margin);
    case RelationKind::closer:
      return axis_state(center_distance(e1, *ref), center_distance(e2, *ref), true, margin);
    case RelationKind::farther:
      return axis_state(center_distance(e1, *ref), center_distance(e2, *ref), false, margin);
    case RelationKind::behind:
      return entities_overlap(e1, e2, scene.canvas) && e1.z < e2.z ? Tri::holds : Tri::anti;
    case RelationKind::front:
      return entities_overlap(e1, e2, scene.canvas) && e1.z > e2.z ? Tri::holds : Tri::anti;
  }
  return Tri::anti;
}

// Selector key along the relation axis; smaller is "more so" for left/above/
// closer, larger for the mirrored kinds.
double selector_key(const Entity& e, RelationKind kind, const Entity* ref) {
  switch (kind) {
    case RelationKind::left:
    case RelationKind::right:
      return e.cx;
    case RelationKind::above:
    case RelationKind::below:
      return e.cy;
    default:
      return center_distance(e, *ref);
  }
}

bool smaller_wins(RelationKind kind) {
  return kind == RelationKind::left || kind == RelationKind::above ||
         kind == RelationKind::closer;
}

}  // namespace

const std::string& to_string(Verdict v) { return kVerdictNames[static_cast<int>(v)]; }

bool matches(const Entity& e, const NounPhrase& np) {
  if (np.color && e.color != *np.color) return false;
  if (np.shape && e.shape != *np.shape) return false;
  return true;
}

std::vector<int> denote(const Scene& scene, const NounPhrase& np) {
  std::vector<int> out;
  for (int i = 0; i < static_cast<int>(scene.entities.size()); ++i)
    if (matches(scene.entities[i], np)) out.push_back(i);
  return out;
}

double center_distance(const Entity& a, const Entity& b) {
  double dx = a.cx - b.cx;
  double dy = a.cy - b.cy;
  return std::sqrt(dx * dx + dy * dy);
}

bool relation_holds(const Scene& scene, const Entity& e1, RelationKind kind, const Entity& e2,
                    const Entity* ref, double margin) {
  return relation_state(scene, e1, kind, e2, ref, margin) == Tri::holds;
}

namespace {

Verdict evaluate_explicit(const Scene& scene, const ExplicitCaption& e,
                          const SemanticsConfig& cfg) {
  std::vector<int> subj = denote(scene, e.subject);
  std::vector<int> obj = denote(scene, e.object);
  if (subj.empty() || obj.empty()) return Verdict::inapplicable;

  const Entity* ref = nullptr;
  int ref_index = -1;
  if (is_proximity(e.relation.kind)) {
    std::vector<int> refs = denote(scene, *e.relation.reference);
    if (refs.size() != 1) return Verdict::inapplicable;
    ref_index = refs[0];
    ref = &scene.entities[ref_index];
  }
  if (is_depth(e.relation.kind) && !any_overlap_in_scene(scene)) return Verdict::inapplicable;

  bool any_pair = false;
  bool any_tie = false;
  for (int i : subj) {
    for (int j : obj) {
      if (i == j || i == ref_index || j == ref_index) continue;
      any_pair = true;
      Tri state = relation_state(scene, scene.entities[i], e.relation.kind, scene.entities[j],
                                 ref, cfg.margin);
      if (state == Tri::holds) return Verdict::yes;
      if (state == Tri::tie) any_tie = true;
    }
  }
  if (!any_pair) return Verdict::inapplicable;
  return any_tie ? Verdict::inapplicable : Verdict::no;
}

Verdict evaluate_implicit(const Scene& scene, const ImplicitCaption& c,
                          const SemanticsConfig& cfg) {
  std::vector<int> group = denote(scene, c.restrictor);
  if (c.degree == Degree::comparative ? group.size() != 2 : group.size() < 2)
    return Verdict::inapplicable;
  std::optional<int> best = select_extreme(scene, c.selector, group, cfg);
  if (!best) return Verdict::inapplicable;
  return matches(scene.entities[*best], c.predicate) ? Verdict::yes : Verdict::no;
}

}  // namespace

std::optional<int> select_extreme(const Scene& scene, const Relation& selector,
                                  const std::vector<int>& group, const SemanticsConfig& cfg) {
  const Entity* ref = nullptr;
  if (is_proximity(selector.kind)) {
    std::vector<int> refs = denote(scene, *selector.reference);
    if (refs.size() != 1) return std::nullopt;
    for (int i : group)
      if (i == refs[0]) return std::nullopt;  // degenerate: self-distance
    ref = &scene.entities[refs[0]];
  }

  // Pick the selector-extreme member; a within-margin race is a tie.
  bool min_wins = smaller_wins(selector.kind);
  int best = group[0];
  double best_key = selector_key(scene.entities[best], selector.kind, ref);
  for (std::size_t k = 1; k < group.size(); ++k) {
    double key = selector_key(scene.entities[group[k]], selector.kind, ref);
    if (min_wins ? key < best_key : key > best_key) {
      best = group[k];
      best_key = key;
    }
  }
  for (int i : group) {
    if (i == best) continue;
    double key = selector_key(scene.entities[i], selector.kind, ref);
    if (std::abs(key - best_key) <= cfg.margin) return std::nullopt;
  }
  return best;
}

Verdict evaluate(const Scene& scene, const Caption& caption, const SemanticsConfig& cfg) {
  if (auto problem = validate(caption))
    throw ConfigError("evaluate: invalid caption: " + *problem);
  if (const auto* e = std::get_if<ExplicitCaption>(&caption))
    return evaluate_explicit(scene, *e, cfg);
  return evaluate_implicit(scene, std::get<ImplicitCaption>(caption), cfg);
}

}  // namespace svqa
