#include "svqa/generator.hpp"

#include <algorithm>

#include "svqa/rng.hpp"

namespace svqa {

std::vector<NounPhrase> entity_descriptions(const Entity& e, bool definite) {
  return {
      NounPhrase{e.color, e.shape, definite},
      NounPhrase{e.color, std::nullopt, definite},
      NounPhrase{std::nullopt, e.shape, definite},
  };
}

namespace {

struct DenotedNp {
  NounPhrase np;
  std::vector<int> entities;
};

// Every describable noun phrase with a non-empty denotation in the scene.
std::vector<DenotedNp> scene_noun_phrases(const Scene& scene, bool definite) {
  std::vector<DenotedNp> out;
  for (int c = -1; c < kColorCount; ++c) {
    for (int s = -1; s < kShapeCount; ++s) {
      if (c < 0 && s < 0) continue;
      NounPhrase np;
      np.definite = definite;
      if (c >= 0) np.color = static_cast<Color>(c);
      if (s >= 0) np.shape = static_cast<Shape>(s);
      auto members = denote(scene, np);
      if (!members.empty()) out.push_back({np, std::move(members)});
    }
  }
  return out;
}

template <typename T>
const T& pick(Rng& rng, const std::vector<T>& items) {
  return items[rng.uniform_index(static_cast<int>(items.size()))];
}

// Reference NPs that denote exactly one entity and avoid the excluded
// indices/descriptions (proximity references must be unique and distinct).
std::vector<DenotedNp> unique_references(const std::vector<DenotedNp>& all,
                                         const std::vector<int>& excluded_entities,
                                         const std::vector<NounPhrase>& excluded_descriptions) {
  std::vector<DenotedNp> out;
  for (const auto& cand : all) {
    if (cand.entities.size() != 1) continue;
    if (std::find(excluded_entities.begin(), excluded_entities.end(), cand.entities[0]) !=
        excluded_entities.end())
      continue;
    bool clash = false;
    for (const auto& d : excluded_descriptions)
      if (cand.np.same_description(d)) {
        clash = true;
        break;
      }
    if (!clash) out.push_back(cand);
  }
  return out;
}

// Predicate candidates that are false of `selected`: descriptions borrowed
// from the other group members where possible, plus a flipped attribute.
std::vector<NounPhrase> false_predicates(const Scene& scene, int selected,
                                         const std::vector<int>& group, Rng& rng) {
  const Entity& sel = scene.entities[selected];
  std::vector<NounPhrase> out;
  for (int i : group) {
    if (i == selected) continue;
    for (auto& np : entity_descriptions(scene.entities[i], false))
      if (!matches(sel, np)) out.push_back(np);
  }
  int wrong_color =
      (static_cast<int>(sel.color) + 1 + rng.uniform_index(kColorCount - 1)) % kColorCount;
  int wrong_shape =
      (static_cast<int>(sel.shape) + 1 + rng.uniform_index(kShapeCount - 1)) % kShapeCount;
  out.push_back(NounPhrase{static_cast<Color>(wrong_color), std::nullopt, false});
  out.push_back(NounPhrase{std::nullopt, static_cast<Shape>(wrong_shape), false});
  return out;
}

std::vector<std::pair<int, int>> overlapping_pairs(const Scene& scene) {
  std::vector<std::pair<int, int>> pairs;
  int n = static_cast<int>(scene.entities.size());
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      if (entities_overlap(scene.entities[i], scene.entities[j], scene.canvas))
        pairs.emplace_back(i, j);
  return pairs;
}

[[noreturn]] void give_up(RelationKind kind, bool target) {
  throw GenerationError("generate_caption: scene admits no '" + to_string(kind) +
                        "' caption with label " + (target ? "true" : "false"));
}

std::pair<Caption, bool> generate_explicit(const Scene& scene, bool target, Rng& rng,
                                           const GeneratorConfig& cfg) {
  auto kind = static_cast<RelationKind>(rng.uniform_index(kRelationKindCount));
  int n = static_cast<int>(scene.entities.size());
  auto all_definite = scene_noun_phrases(scene, true);

  std::vector<std::pair<int, int>> overlaps;
  if (is_depth(kind)) {
    overlaps = overlapping_pairs(scene);
    if (overlaps.empty()) give_up(kind, target);  // depth needs visible occlusion
  }

  for (int attempt = 0; attempt < cfg.attempts; ++attempt) {
    int i, j;
    if (is_depth(kind) && target) {
      // start from an actually occluding pair, oriented to match the kind
      auto [back, front] = pick(rng, overlaps);
      if (scene.entities[back].z > scene.entities[front].z) std::swap(back, front);
      i = kind == RelationKind::behind ? back : front;
      j = kind == RelationKind::behind ? front : back;
    } else {
      i = rng.uniform_index(n);
      j = rng.uniform_index(n - 1);
      if (j >= i) ++j;
    }

    ExplicitCaption cap;
    cap.subject = pick(rng, entity_descriptions(scene.entities[i], false));
    cap.object = pick(rng, entity_descriptions(scene.entities[j], false));
    cap.relation.kind = kind;
    if (is_proximity(kind)) {
      auto refs = unique_references(all_definite, {i, j}, {cap.subject, cap.object});
      if (refs.empty()) continue;
      cap.relation.reference = pick(rng, refs).np;
    }
    Caption caption = cap;
    if (evaluate(scene, caption, cfg.semantics) == (target ? Verdict::yes : Verdict::no))
      return {caption, target};
  }
  give_up(kind, target);
}

std::pair<Caption, bool> generate_implicit(const Scene& scene, Degree degree, bool target,
                                           Rng& rng, const GeneratorConfig& cfg) {
  // behind/front are never selectors
  auto kind = static_cast<RelationKind>(rng.uniform_index(6));
  auto all_definite = scene_noun_phrases(scene, true);

  std::vector<DenotedNp> restrictors;
  for (const auto& cand : all_definite) {
    std::size_t card = cand.entities.size();
    if (degree == Degree::comparative ? card == 2 : card >= 2) restrictors.push_back(cand);
  }
  if (restrictors.empty()) give_up(kind, target);

  for (int attempt = 0; attempt < cfg.attempts; ++attempt) {
    const DenotedNp& restrictor = pick(rng, restrictors);

    ImplicitCaption cap;
    cap.degree = degree;
    cap.selector.kind = kind;
    cap.restrictor = restrictor.np;
    if (is_proximity(kind)) {
      auto refs = unique_references(all_definite, restrictor.entities, {restrictor.np});
      if (refs.empty()) continue;
      cap.selector.reference = pick(rng, refs).np;
    }

    auto selected = select_extreme(scene, cap.selector, restrictor.entities, cfg.semantics);
    if (!selected) continue;  // margin tie or reference failure

    if (target) {
      cap.predicate = pick(rng, entity_descriptions(scene.entities[*selected], false));
    } else {
      cap.predicate = pick(rng, false_predicates(scene, *selected, restrictor.entities, rng));
    }
    Caption caption = cap;
    if (evaluate(scene, caption, cfg.semantics) == (target ? Verdict::yes : Verdict::no))
      return {caption, target};
  }
  give_up(kind, target);
}

}  // namespace

std::pair<Caption, bool> generate_caption(const Scene& scene, CaptionType type,
                                          bool target_label, std::uint32_t seed,
                                          const GeneratorConfig& cfg) {
  if (scene.entities.empty()) throw GenerationError("generate_caption: empty scene");
  Rng rng(mix_seed(seed, 0xca9710));
  switch (type) {
    case CaptionType::explicit_rel:
      return generate_explicit(scene, target_label, rng, cfg);
    case CaptionType::comparative:
      return generate_implicit(scene, Degree::comparative, target_label, rng, cfg);
    case CaptionType::superlative:
      return generate_implicit(scene, Degree::superlative, target_label, rng, cfg);
  }
  throw ConfigError("generate_caption: unknown caption type");
}

}  // namespace svqa
