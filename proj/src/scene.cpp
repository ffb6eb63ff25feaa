#include "svqa/scene.hpp"

#include <algorithm>
#include <cmath>

#include "svqa/rng.hpp"

namespace svqa {

namespace {

constexpr double kPi = 3.14159265358979323846;

// Canonical shapes live in local (u, v) coordinates, v downward, scaled so
// the region fits in [-1,1]^2 with its area centroid at the origin. Keeping
// the centroid at the origin is what makes Entity::center track the visual
// mass of the shape for every kind.

// Triangle: apex up at (0,-1), base corners (+-1, 0.5).
inline bool in_triangle(double u, double v) {
  return v <= 0.5 && v >= 1.5 * std::abs(u) - 1.0;
}

// Regular pentagon, apex up, u stretched so the span is exactly [-1,1].
struct PentagonTable {
  std::array<std::array<double, 2>, 5> verts;
  PentagonTable() {
    const double stretch = 1.0 / std::cos(kPi / 10.0);  // 1/cos(18deg)
    for (int k = 0; k < 5; ++k) {
      double a = kPi / 2.0 + 2.0 * kPi * k / 5.0;
      verts[k] = {std::cos(a) * stretch, -std::sin(a)};
    }
  }
};
const PentagonTable kPentagon;

inline bool in_pentagon(double u, double v) {
  // Convex polygon: point must be on the same side of every edge.
  for (int k = 0; k < 5; ++k) {
    const auto& a = kPentagon.verts[k];
    const auto& b = kPentagon.verts[(k + 1) % 5];
    double cross = (b[0] - a[0]) * (v - a[1]) - (b[1] - a[1]) * (u - a[0]);
    if (cross > 0.0) return false;
  }
  return true;
}

// Semicircle (half ellipse): flat edge at v = kSemiFlat, arc reaching v = -1.
// Constants solve centroid-at-origin: flat - 4*b/(3*pi) = 0, flat - b = -1.
const double kSemiB = 1.0 / (1.0 - 4.0 / (3.0 * kPi));
const double kSemiFlat = kSemiB - 1.0;

inline bool in_semicircle(double u, double v) {
  if (v > kSemiFlat) return false;
  double t = (v - kSemiFlat) / kSemiB;
  return u * u + t * t <= 1.0;
}

inline bool in_canonical(Shape shape, double u, double v) {
  switch (shape) {
    case Shape::square:
    case Shape::rectangle:
      return std::abs(u) <= 1.0 && std::abs(v) <= 1.0;
    case Shape::circle:
    case Shape::ellipse:
      return u * u + v * v <= 1.0;
    case Shape::triangle:
      return in_triangle(u, v);
    case Shape::pentagon:
      return in_pentagon(u, v);
    case Shape::cross:
      return (std::abs(u) <= 1.0 / 3.0 && std::abs(v) <= 1.0) ||
             (std::abs(u) <= 1.0 && std::abs(v) <= 1.0 / 3.0);
    case Shape::semicircle:
      return in_semicircle(u, v);
  }
  return false;
}

// Tight canonical bounding box {umin, vmin, umax, vmax}.
std::array<double, 4> canonical_box(Shape shape) {
  switch (shape) {
    case Shape::triangle:
      return {-1.0, -1.0, 1.0, 0.5};
    case Shape::pentagon:
      return {-1.0, -1.0, 1.0, kPentagon.verts[2][1]};
    case Shape::semicircle:
      return {-1.0, -1.0, 1.0, kSemiFlat};
    default:
      return {-1.0, -1.0, 1.0, 1.0};
  }
}

const std::array<std::string, kShapeCount> kShapeNames = {
    "square", "rectangle", "triangle", "pentagon", "cross", "circle", "semicircle", "ellipse"};
const std::array<std::string, kColorCount> kColorNames = {"red",     "green", "blue", "yellow",
                                                          "magenta", "cyan",  "gray"};

}  // namespace

const std::string& to_string(Shape s) { return kShapeNames[static_cast<int>(s)]; }
const std::string& to_string(Color c) { return kColorNames[static_cast<int>(c)]; }

Shape shape_from_string(const std::string& word) {
  for (int i = 0; i < kShapeCount; ++i)
    if (kShapeNames[i] == word) return static_cast<Shape>(i);
  throw ConfigError("unknown shape name: " + word);
}

Color color_from_string(const std::string& word) {
  for (int i = 0; i < kColorCount; ++i)
    if (kColorNames[i] == word) return static_cast<Color>(i);
  throw ConfigError("unknown color name: " + word);
}

std::array<std::uint8_t, 3> rgb(Color c) {
  switch (c) {
    case Color::red: return {255, 0, 0};
    case Color::green: return {0, 255, 0};
    case Color::blue: return {0, 0, 255};
    case Color::yellow: return {255, 255, 0};
    case Color::magenta: return {255, 0, 255};
    case Color::cyan: return {0, 255, 255};
    case Color::gray: return {128, 128, 128};
  }
  return {0, 0, 0};
}

bool entity_contains(const Entity& e, double px, double py) {
  double dx = px - e.cx;
  double dy = py - e.cy;
  double theta = 2.0 * kPi * e.rotation;
  double c = std::cos(theta), s = std::sin(theta);
  double u = (dx * c + dy * s) / (0.5 * e.sx);
  double v = (-dx * s + dy * c) / (0.5 * e.sy);
  return in_canonical(e.shape, u, v);
}

std::array<double, 4> entity_hull(const Entity& e) {
  auto box = canonical_box(e.shape);
  double hx = 0.5 * e.sx, hy = 0.5 * e.sy;
  double theta = 2.0 * kPi * e.rotation;
  double c = std::cos(theta), s = std::sin(theta);
  std::array<double, 4> hull = {0.0, 0.0, 0.0, 0.0};
  bool first = true;
  for (int i = 0; i < 4; ++i) {
    double u = (i & 1 ? box[2] : box[0]) * hx;
    double v = (i & 2 ? box[3] : box[1]) * hy;
    double x = u * c - v * s;
    double y = u * s + v * c;
    if (first || x < hull[0]) hull[0] = x;
    if (first || y < hull[1]) hull[1] = y;
    if (first || x > hull[2]) hull[2] = x;
    if (first || y > hull[3]) hull[3] = y;
    first = false;
  }
  return hull;
}

EntityMask rasterize_entity(const Entity& e, int canvas) {
  auto hull = entity_hull(e);
  int x0 = std::max(0, static_cast<int>(std::floor((e.cx + hull[0]) * canvas)));
  int y0 = std::max(0, static_cast<int>(std::floor((e.cy + hull[1]) * canvas)));
  int x1 = std::min(canvas - 1, static_cast<int>(std::ceil((e.cx + hull[2]) * canvas)));
  int y1 = std::min(canvas - 1, static_cast<int>(std::ceil((e.cy + hull[3]) * canvas)));
  EntityMask m;
  if (x1 < x0 || y1 < y0) return m;
  m.x0 = x0;
  m.y0 = y0;
  m.w = x1 - x0 + 1;
  m.h = y1 - y0 + 1;
  m.bits.assign(static_cast<std::size_t>(m.w) * m.h, 0);
  double inv = 1.0 / canvas;
  for (int y = y0; y <= y1; ++y) {
    double py = (y + 0.5) * inv;
    for (int x = x0; x <= x1; ++x) {
      if (entity_contains(e, (x + 0.5) * inv, py)) {
        m.bits[static_cast<std::size_t>(y - y0) * m.w + (x - x0)] = 1;
        ++m.count;
      }
    }
  }
  return m;
}

int overlap_pixels(const EntityMask& a, const EntityMask& b) {
  int x0 = std::max(a.x0, b.x0), y0 = std::max(a.y0, b.y0);
  int x1 = std::min(a.x0 + a.w, b.x0 + b.w), y1 = std::min(a.y0 + a.h, b.y0 + b.h);
  int n = 0;
  for (int y = y0; y < y1; ++y)
    for (int x = x0; x < x1; ++x)
      if (a.test(x, y) && b.test(x, y)) ++n;
  return n;
}

bool masks_touch(const EntityMask& a, const EntityMask& b) {
  int x0 = std::max(a.x0, b.x0 - 1), y0 = std::max(a.y0, b.y0 - 1);
  int x1 = std::min(a.x0 + a.w, b.x0 + b.w + 1), y1 = std::min(a.y0 + a.h, b.y0 + b.h + 1);
  for (int y = y0; y < y1; ++y) {
    for (int x = x0; x < x1; ++x) {
      if (!a.test(x, y)) continue;
      for (int dy = -1; dy <= 1; ++dy)
        for (int dx = -1; dx <= 1; ++dx)
          if (b.test(x + dx, y + dy)) return true;
    }
  }
  return false;
}

bool entities_overlap(const Entity& a, const Entity& b, int canvas) {
  auto ha = entity_hull(a), hb = entity_hull(b);
  if (a.cx + ha[2] < b.cx + hb[0] || b.cx + hb[2] < a.cx + ha[0] ||
      a.cy + ha[3] < b.cy + hb[1] || b.cy + hb[3] < a.cy + ha[1])
    return false;
  return overlap_pixels(rasterize_entity(a, canvas), rasterize_entity(b, canvas)) > 0;
}

namespace {

Entity sample_attributes(Rng& rng, const SceneConfig& cfg) {
  Entity e;
  e.shape = static_cast<Shape>(rng.uniform_index(kShapeCount));
  e.color = static_cast<Color>(rng.uniform_index(kColorCount));
  bool symmetric = e.shape == Shape::square || e.shape == Shape::circle;
  bool distorted = e.shape == Shape::rectangle || e.shape == Shape::ellipse;
  if (symmetric) {
    e.sx = e.sy = rng.uniform(cfg.size_min, cfg.size_max);
    e.rotation = 0.0;  // unidentifiable
  } else {
    e.sx = rng.uniform(cfg.size_min, cfg.size_max);
    e.sy = rng.uniform(cfg.size_min, cfg.size_max);
    if (distorted) {
      // keep rectangles/ellipses visually distinct from squares/circles
      for (int i = 0; i < 64 && std::max(e.sx, e.sy) < 1.4 * std::min(e.sx, e.sy); ++i) {
        e.sx = rng.uniform(cfg.size_min, cfg.size_max);
        e.sy = rng.uniform(cfg.size_min, cfg.size_max);
      }
      if (std::max(e.sx, e.sy) < 1.4 * std::min(e.sx, e.sy)) {
        e.sx = cfg.size_max;
        e.sy = cfg.size_min;
      }
    }
    e.rotation = rng.uniform();
  }
  return e;
}

// Center range that keeps the rotated hull at least one pixel inside the
// canvas. Returns false when the entity cannot fit.
bool center_range(const Entity& e, int canvas, std::array<double, 4>& range) {
  auto hull = entity_hull(e);
  double pad = 1.0 / canvas;
  range = {pad - hull[0], pad - hull[1], 1.0 - pad - hull[2], 1.0 - pad - hull[3]};
  return range[0] <= range[2] && range[1] <= range[3];
}

}  // namespace

Scene sample_scene(std::uint32_t seed, const SceneConfig& config) {
  if (config.count_min < 1 || config.count_min > config.count_max)
    throw ConfigError("scene config: invalid entity count range");
  if (config.size_min <= 0.0 || config.size_max >= 1.0 || config.size_min > config.size_max)
    throw ConfigError("scene config: size extents must lie in (0,1)");

  Rng rng(mix_seed(seed, 0x5ce2e));
  Scene scene;
  scene.canvas = config.canvas;
  int n = config.count_min + rng.uniform_index(config.count_max - config.count_min + 1);

  std::vector<EntityMask> masks;
  for (int k = 0; k < n; ++k) {
    bool is_front_of_pair = config.overlap_pair && k == 1;
    bool placed = false;
    for (int attempt = 0; attempt < config.entity_attempts && !placed; ++attempt) {
      Entity e = sample_attributes(rng, config);
      e.z = k;
      std::array<double, 4> range;
      if (!center_range(e, config.canvas, range)) continue;
      if (is_front_of_pair) {
        // stay in the back entity's neighbourhood so overlap is likely
        const Entity& back = scene.entities[0];
        auto hb = entity_hull(back);
        auto hf = entity_hull(e);
        double rx = (hb[2] - hb[0] + hf[2] - hf[0]) * 0.5;
        double ry = (hb[3] - hb[1] + hf[3] - hf[1]) * 0.5;
        e.cx = std::clamp(back.cx + rng.uniform(-rx, rx), range[0], range[2]);
        e.cy = std::clamp(back.cy + rng.uniform(-ry, ry), range[1], range[3]);
      } else {
        e.cx = rng.uniform(range[0], range[2]);
        e.cy = rng.uniform(range[1], range[3]);
      }

      EntityMask m = rasterize_entity(e, config.canvas);
      if (m.count < 1) continue;

      if (is_front_of_pair) {
        int shared = overlap_pixels(masks[0], m);
        double ratio = static_cast<double>(shared) / masks[0].count;
        if (shared < 3 || ratio < config.overlap_min || ratio > config.overlap_max) continue;
      } else {
        bool clear = true;
        for (const auto& other : masks)
          if (masks_touch(other, m)) {
            clear = false;
            break;
          }
        if (!clear) continue;
      }
      scene.entities.push_back(e);
      masks.push_back(std::move(m));
      placed = true;
    }
    if (!placed)
      throw PlacementError("sample_scene: could not place entity " + std::to_string(k) +
                           " within budget");
  }
  return scene;
}

Image render(const Scene& scene) {
  Image img;
  img.height = img.width = scene.canvas;
  img.rgb.assign(static_cast<std::size_t>(scene.canvas) * scene.canvas * 3, 0);

  std::vector<const Entity*> order;
  order.reserve(scene.entities.size());
  for (const auto& e : scene.entities) order.push_back(&e);
  std::sort(order.begin(), order.end(),
            [](const Entity* a, const Entity* b) { return a->z < b->z; });

  double inv = 1.0 / scene.canvas;
  for (const Entity* e : order) {
    auto hull = entity_hull(*e);
    int x0 = std::max(0, static_cast<int>(std::floor((e->cx + hull[0]) * scene.canvas)));
    int y0 = std::max(0, static_cast<int>(std::floor((e->cy + hull[1]) * scene.canvas)));
    int x1 = std::min(scene.canvas - 1, static_cast<int>(std::ceil((e->cx + hull[2]) * scene.canvas)));
    int y1 = std::min(scene.canvas - 1, static_cast<int>(std::ceil((e->cy + hull[3]) * scene.canvas)));
    auto col = rgb(e->color);
    for (int y = y0; y <= y1; ++y) {
      double py = (y + 0.5) * inv;
      for (int x = x0; x <= x1; ++x) {
        if (entity_contains(*e, (x + 0.5) * inv, py)) {
          std::size_t at = (static_cast<std::size_t>(y) * scene.canvas + x) * 3;
          img.rgb[at] = col[0];
          img.rgb[at + 1] = col[1];
          img.rgb[at + 2] = col[2];
        }
      }
    }
  }
  return img;
}

std::vector<float> coordinate_map(int height, int width) {
  if (height < 1 || width < 1) throw ConfigError("coordinate_map: empty grid");
  std::vector<float> map(static_cast<std::size_t>(height) * width * 2);
  for (int y = 0; y < height; ++y) {
    float vy = height > 1 ? -1.0f + 2.0f * y / (height - 1) : 0.0f;
    for (int x = 0; x < width; ++x) {
      float vx = width > 1 ? -1.0f + 2.0f * x / (width - 1) : 0.0f;
      std::size_t at = (static_cast<std::size_t>(y) * width + x) * 2;
      map[at] = vx;
      map[at + 1] = vy;
    }
  }
  return map;
}

}  // namespace svqa
