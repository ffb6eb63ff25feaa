#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "svqa/errors.hpp"

namespace svqa {

enum class Shape : std::uint8_t {
  square,
  rectangle,
  triangle,
  pentagon,
  cross,
  circle,
  semicircle,
  ellipse,
};
inline constexpr int kShapeCount = 8;

enum class Color : std::uint8_t {
  red,
  green,
  blue,
  yellow,
  magenta,
  cyan,
  gray,
};
inline constexpr int kColorCount = 7;

const std::string& to_string(Shape s);
const std::string& to_string(Color c);
Shape shape_from_string(const std::string& word);
Color color_from_string(const std::string& word);
std::array<std::uint8_t, 3> rgb(Color c);

// One colored 2-D shape on the unit canvas. `center` is the area centroid of
// the drawn region; x grows rightward, y grows downward. `size` is the full
// extent of the nominal bounding box as a canvas fraction. `rotation` is a
// fraction of a full turn. `z` is the draw-order index: higher z draws later
// and therefore appears in front.
struct Entity {
  Shape shape = Shape::square;
  Color color = Color::red;
  double cx = 0.5, cy = 0.5;
  double sx = 0.2, sy = 0.2;
  double rotation = 0.0;
  int z = 0;

  bool operator==(const Entity&) const = default;
};

struct Scene {
  std::vector<Entity> entities;
  int canvas = 64;

  bool operator==(const Scene&) const = default;
};

// Raw 8-bit RGB image, row-major, y downward.
struct Image {
  int height = 0;
  int width = 0;
  std::vector<std::uint8_t> rgb;  // height*width*3

  bool operator==(const Image&) const = default;
};

struct SceneConfig {
  int canvas = 64;
  int count_min = 4;
  int count_max = 10;
  double size_min = 0.10;  // full extent, canvas fraction
  double size_max = 0.25;
  // When set, entities 0 and 1 are placed as an occluding pair (entity 1 in
  // front); only then can behind/front relations hold in the scene.
  bool overlap_pair = false;
  double overlap_min = 0.05;  // occluded fraction of the back entity's area
  double overlap_max = 0.25;
  int entity_attempts = 300;

  bool operator==(const SceneConfig&) const = default;
};

// Point-in-shape test at a canvas-coordinate point.
bool entity_contains(const Entity& e, double px, double py);

// Axis-aligned hull of the entity's (rotated) shape bounding box, relative to
// its center, in canvas units: {min_dx, min_dy, max_dx, max_dy}.
std::array<double, 4> entity_hull(const Entity& e);

// Bitmap of the pixels whose centers fall inside the entity, clipped to the
// canvas. Empty (count == 0) masks are possible for degenerate entities.
struct EntityMask {
  int x0 = 0, y0 = 0, w = 0, h = 0;
  std::vector<std::uint8_t> bits;
  int count = 0;

  bool test(int x, int y) const {
    if (x < x0 || y < y0 || x >= x0 + w || y >= y0 + h) return false;
    return bits[static_cast<std::size_t>(y - y0) * w + (x - x0)] != 0;
  }
};

EntityMask rasterize_entity(const Entity& e, int canvas);
int overlap_pixels(const EntityMask& a, const EntityMask& b);
// True when any pixel of `a` is within Chebyshev distance 1 of a pixel of
// `b`. The sampler keeps non-paired entities at least this far apart so that
// overlap verdicts never hinge on a single boundary pixel.
bool masks_touch(const EntityMask& a, const EntityMask& b);

// Convenience for the semantics layer: do the two entities share any pixel?
bool entities_overlap(const Entity& a, const Entity& b, int canvas);

// Deterministic in (seed, config). Throws PlacementError when the rejection
// budget runs out.
Scene sample_scene(std::uint32_t seed, const SceneConfig& config);

// Paints entities in ascending z order onto black; hard-edged membership at
// pixel centers, no anti-aliasing.
Image render(const Scene& scene);

// Two channels, channel-last layout (h*w*2): channel 0 ramps along x from -1
// to 1, channel 1 along y. A singleton axis maps to 0.
std::vector<float> coordinate_map(int height, int width);

}  // namespace svqa
