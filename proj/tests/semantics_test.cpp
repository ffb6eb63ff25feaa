#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "brute_oracle.hpp"
#include "svqa/generator.hpp"
#include "svqa/rng.hpp"
#include "svqa/semantics.hpp"

using namespace svqa;

namespace {

Entity ent(Shape s, Color c, double x, double y, int z = 0, double size = 0.12) {
  return Entity{s, c, x, y, size, size, 0.0, z};
}

}  // namespace

TEST_CASE("denotation filters by every stated attribute") {
  Scene scene;
  scene.entities = {
      ent(Shape::circle, Color::red, 0.2, 0.2, 0),
      ent(Shape::circle, Color::blue, 0.4, 0.2, 1),
      ent(Shape::circle, Color::red, 0.6, 0.2, 2),
      ent(Shape::square, Color::red, 0.2, 0.6, 3),
      ent(Shape::square, Color::green, 0.6, 0.6, 4),
  };
  CHECK(denote(scene, {std::nullopt, Shape::circle, false}) == std::vector<int>{0, 1, 2});
  CHECK(denote(scene, {Color::red, Shape::circle, false}) == std::vector<int>{0, 2});
  // intersectivity: color-and-shape equals the intersection of the two filters
  auto circles = denote(scene, {std::nullopt, Shape::circle, false});
  auto reds = denote(scene, {Color::red, std::nullopt, false});
  std::vector<int> both;
  for (int i : circles)
    if (std::find(reds.begin(), reds.end(), i) != reds.end()) both.push_back(i);
  CHECK(denote(scene, {Color::red, Shape::circle, false}) == both);
  // hypernym matches everything
  CHECK(denote(scene, {std::nullopt, std::nullopt, false}).size() == 5);
}

TEST_CASE("directional and proximity relations follow the coordinate conventions") {
  Scene scene;
  scene.canvas = 64;
  Entity a = ent(Shape::circle, Color::red, 0.2, 0.5, 0);
  Entity b = ent(Shape::square, Color::blue, 0.8, 0.5, 1);
  scene.entities = {a, b};
  CHECK(relation_holds(scene, a, RelationKind::left, b, nullptr, 0.02));
  CHECK_FALSE(relation_holds(scene, a, RelationKind::right, b, nullptr, 0.02));
  CHECK(relation_holds(scene, b, RelationKind::right, a, nullptr, 0.02));

  // above means the smaller row index
  Entity top = ent(Shape::cross, Color::green, 0.5, 0.2, 2);
  Entity bottom = ent(Shape::cross, Color::green, 0.5, 0.8, 3);
  CHECK(relation_holds(scene, top, RelationKind::above, bottom, nullptr, 0.02));
  CHECK(relation_holds(scene, bottom, RelationKind::below, top, nullptr, 0.02));

  Entity e1 = ent(Shape::circle, Color::red, 0.1, 0.1, 4);
  Entity e2 = ent(Shape::circle, Color::blue, 0.9, 0.9, 5);
  Entity ref = ent(Shape::triangle, Color::gray, 0.0, 0.0, 6);
  // dist(e1,ref) ~ 0.141, dist(e2,ref) ~ 1.273
  CHECK(center_distance(e1, ref) == doctest::Approx(std::sqrt(0.02)));
  CHECK(center_distance(e2, ref) == doctest::Approx(std::sqrt(1.62)));
  CHECK(relation_holds(scene, e1, RelationKind::closer, e2, &ref, 0.02));
  CHECK(relation_holds(scene, e2, RelationKind::farther, e1, &ref, 0.02));
}

TEST_CASE("behind requires actual pixel overlap") {
  Scene scene;
  scene.canvas = 64;
  Entity back = ent(Shape::square, Color::red, 0.3, 0.3, 0, 0.2);
  Entity front = ent(Shape::square, Color::blue, 0.7, 0.7, 1, 0.2);
  scene.entities = {back, front};
  CHECK_FALSE(relation_holds(scene, back, RelationKind::behind, front, nullptr, 0.02));

  front.cx = 0.38;
  front.cy = 0.38;
  scene.entities[1] = front;
  CHECK(relation_holds(scene, back, RelationKind::behind, front, nullptr, 0.02));
  CHECK(relation_holds(scene, front, RelationKind::front, back, nullptr, 0.02));
  CHECK_FALSE(relation_holds(scene, front, RelationKind::behind, back, nullptr, 0.02));
}

TEST_CASE("the lower cross is green") {
  Scene scene;
  scene.canvas = 64;
  scene.entities = {
      ent(Shape::cross, Color::red, 0.4, 0.3, 0),
      ent(Shape::cross, Color::green, 0.6, 0.7, 1),
      ent(Shape::circle, Color::gray, 0.2, 0.5, 2),
  };
  ImplicitCaption cap;
  cap.degree = Degree::comparative;
  cap.selector.kind = RelationKind::below;
  cap.restrictor = {std::nullopt, Shape::cross, true};
  cap.predicate = {Color::green, std::nullopt, false};
  CHECK(evaluate(scene, cap) == Verdict::yes);

  cap.predicate = {Color::red, std::nullopt, false};
  CHECK(evaluate(scene, cap) == Verdict::no);
}

TEST_CASE("presupposition failures are inapplicable, not false") {
  Scene scene;
  scene.canvas = 64;
  scene.entities = {
      ent(Shape::cross, Color::red, 0.2, 0.2, 0),
      ent(Shape::cross, Color::green, 0.5, 0.5, 1),
      ent(Shape::cross, Color::blue, 0.8, 0.8, 2),
  };
  ImplicitCaption cap;
  cap.degree = Degree::comparative;
  cap.selector.kind = RelationKind::left;
  cap.restrictor = {std::nullopt, Shape::cross, true};
  cap.predicate = {Color::red, std::nullopt, false};
  // three crosses: comparative needs exactly two
  CHECK(evaluate(scene, cap) == Verdict::inapplicable);
  cap.degree = Degree::superlative;
  CHECK(evaluate(scene, cap) == Verdict::yes);

  // empty denotation
  ExplicitCaption ex;
  ex.subject = {std::nullopt, Shape::pentagon, false};
  ex.relation.kind = RelationKind::left;
  ex.object = {std::nullopt, Shape::cross, false};
  CHECK(evaluate(scene, ex) == Verdict::inapplicable);

  // behind without any overlap in the scene
  ex.subject = {Color::red, std::nullopt, false};
  ex.relation.kind = RelationKind::behind;
  CHECK(evaluate(scene, ex) == Verdict::inapplicable);

  // margin tie
  ImplicitCaption tie;
  tie.degree = Degree::comparative;
  tie.selector.kind = RelationKind::above;
  tie.restrictor = {std::nullopt, Shape::cross, true};
  tie.predicate = {Color::red, std::nullopt, false};
  Scene tied = scene;
  tied.entities = {ent(Shape::cross, Color::red, 0.3, 0.5, 0),
                   ent(Shape::cross, Color::green, 0.7, 0.51, 1)};
  CHECK(evaluate(tied, tie) == Verdict::inapplicable);
}

TEST_CASE("duality and irreflexivity of the directional relations") {
  Rng rng(42);
  SceneConfig cfg;
  for (int trial = 0; trial < 200; ++trial) {
    Scene scene = sample_scene(static_cast<std::uint32_t>(trial), cfg);
    int n = static_cast<int>(scene.entities.size());
    int i = rng.uniform_index(n);
    int j = rng.uniform_index(n);
    const Entity& a = scene.entities[i];
    const Entity& b = scene.entities[j];
    const Entity& ref = scene.entities[rng.uniform_index(n)];
    for (auto [kind, dual] : {std::pair{RelationKind::left, RelationKind::right},
                              {RelationKind::above, RelationKind::below},
                              {RelationKind::closer, RelationKind::farther},
                              {RelationKind::behind, RelationKind::front}}) {
      const Entity* r = is_proximity(kind) ? &ref : nullptr;
      CHECK(relation_holds(scene, a, kind, b, r, 0.02) ==
            relation_holds(scene, b, dual, a, r, 0.02));
      if (i == j) {
        CHECK_FALSE(relation_holds(scene, a, kind, b, r, 0.02));
        CHECK_FALSE(relation_holds(scene, a, dual, b, r, 0.02));
      }
    }
  }
}

TEST_CASE("verdicts ignore a rigid translation of the whole scene") {
  SceneConfig cfg;
  GeneratorConfig gen;
  Rng rng(7);
  int checked = 0;
  for (std::uint32_t seed = 0; checked < 150; ++seed) {
    Scene scene = sample_scene(seed, cfg);
    Caption caption;
    bool label = seed % 2 == 0;
    try {
      caption = generate_caption(scene, seed % 2 ? CaptionType::comparative
                                                 : CaptionType::superlative,
                                 label, seed, gen).first;
    } catch (const GenerationError&) {
      continue;
    }
    double dx = rng.uniform(-0.05, 0.05);
    double dy = rng.uniform(-0.05, 0.05);
    Scene moved = scene;
    bool inside = true;
    for (auto& e : moved.entities) {
      e.cx += dx;
      e.cy += dy;
      auto hull = entity_hull(e);
      inside = inside && e.cx + hull[0] >= 0 && e.cy + hull[1] >= 0 && e.cx + hull[2] <= 1 &&
               e.cy + hull[3] <= 1;
    }
    if (!inside) continue;
    CHECK(evaluate(moved, caption) == evaluate(scene, caption));
    ++checked;
  }
}

TEST_CASE("superlative over a two-element group agrees with the comparative") {
  SceneConfig cfg;
  int checked = 0;
  for (std::uint32_t seed = 100; checked < 100; ++seed) {
    Scene scene = sample_scene(seed, cfg);
    // find a shape noun realized by exactly two entities
    for (int s = 0; s < kShapeCount; ++s) {
      NounPhrase np{std::nullopt, static_cast<Shape>(s), true};
      auto group = denote(scene, np);
      if (group.size() != 2) continue;
      for (int k = 0; k < 4; ++k) {
        Relation sel{static_cast<RelationKind>(k), std::nullopt};
        ImplicitCaption sup{Degree::superlative, sel, np,
                            NounPhrase{scene.entities[group[0]].color, std::nullopt, false}};
        ImplicitCaption cmp = sup;
        cmp.degree = Degree::comparative;
        CHECK(evaluate(scene, sup) == evaluate(scene, cmp));
        ++checked;
      }
      break;
    }
  }
}

TEST_CASE("semantics agrees with the brute-force evaluator on generated data") {
  SceneConfig implicit_cfg;
  SceneConfig explicit_cfg;
  explicit_cfg.overlap_pair = true;
  GeneratorConfig gen;

  for (CaptionType type :
       {CaptionType::explicit_rel, CaptionType::comparative, CaptionType::superlative}) {
    const SceneConfig& cfg =
        type == CaptionType::explicit_rel ? explicit_cfg : implicit_cfg;
    int produced = 0;
    std::uint32_t seed = 1;
    while (produced < 400) {
      ++seed;
      Scene scene;
      Caption caption;
      bool label = produced % 2 == 0;
      try {
        scene = sample_scene(seed, cfg);
        caption = generate_caption(scene, type, label, seed ^ 0x9e3779b9u, gen).first;
      } catch (const PlacementError&) {
        continue;
      } catch (const GenerationError&) {
        continue;
      }
      Verdict ours = evaluate(scene, caption);
      CHECK(ours == (label ? Verdict::yes : Verdict::no));
      CHECK(brute::evaluate(scene, caption) == ours);
      ++produced;
    }
  }
}
