#pragma once

#include <utility>

#include "svqa/semantics.hpp"

namespace svqa {

struct GeneratorConfig {
  SemanticsConfig semantics;
  // Rejection budget for the relation kind drawn for this caption. When it
  // runs out the scene simply does not support the requested caption; the
  // caller resamples the scene.
  int attempts = 160;
};

// Searches for a caption of the requested type whose oracle verdict equals
// `target_label` (never inapplicable). Fully deterministic in `seed`.
// Negatives are well-formed captions that happen to be false, never
// token-level corruptions. Throws GenerationError when the budget runs out.
std::pair<Caption, bool> generate_caption(const Scene& scene, CaptionType type,
                                          bool target_label, std::uint32_t seed,
                                          const GeneratorConfig& cfg = {});

// The three ways to describe one entity: color+shape, color+hypernym,
// bare shape.
std::vector<NounPhrase> entity_descriptions(const Entity& e, bool definite);

}  // namespace svqa
