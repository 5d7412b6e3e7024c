#pragma once

#include <cstdint>
#include <map>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace flp {

enum class Axis { X, Y };
constexpr Axis kAxes[2] = {Axis::X, Axis::Y};
inline const char* axis_name(Axis s) { return s == Axis::X ? "x" : "y"; }
inline Axis other_axis(Axis s) { return s == Axis::X ? Axis::Y : Axis::X; }

struct BoxSpec {
  int id = 0;       // 1-based, consecutive
  double area = 0;  // > 0
  double aspect = 1;  // >= 1
};

// Floor dimensions, per-box area/aspect data and pairwise communication
// costs. Immutable after construction; absent cost pairs mean cost 0.
struct FlpInstance {
  std::string name;
  double floor_x = 0;
  double floor_y = 0;
  std::vector<BoxSpec> boxes;
  std::map<std::pair<int, int>, double> costs;  // keys (i,j), i < j, 1-based

  int num_boxes() const { return static_cast<int>(boxes.size()); }
  double floor(Axis s) const { return s == Axis::X ? floor_x : floor_y; }
  double cost(int i, int j) const;
  // All (i,j), i < j, 1-based.
  std::vector<std::pair<int, int>> pairs() const;
  void validate() const;  // throws InstanceError on broken invariants
};

// Per-box, per-axis width bounds derived from area/aspect/floor data.
struct BoxBounds {
  struct Entry {
    double lb = 0, ub = 0;
  };
  std::vector<Entry> x, y;  // indexed by box id - 1

  const Entry& at(int box_id, Axis s) const {
    return (s == Axis::X ? x : y).at(box_id - 1);
  }
  double lb(int box_id, Axis s) const { return at(box_id, s).lb; }
  double ub(int box_id, Axis s) const { return at(box_id, s).ub; }
};

// Continuous decision values: centers and widths, plus optional
// per-pair objective auxiliaries.
struct Layout {
  struct BoxPlacement {
    double cx = 0, cy = 0, lx = 0, ly = 0;
    double center(Axis s) const { return s == Axis::X ? cx : cy; }
    double width(Axis s) const { return s == Axis::X ? lx : ly; }
  };
  std::vector<BoxPlacement> boxes;  // indexed by box id - 1
  std::map<std::pair<int, int>, std::pair<double, double>> d;  // (dx, dy) >= 0
};

class InstanceError : public std::runtime_error {
 public:
  explicit InstanceError(const std::string& what) : std::runtime_error(what) {}
};

// ub = min{sqrt(area*aspect), L}, lb = area/ub. Throws InstanceError naming
// box and axis when a box cannot fit (lb > ub).
BoxBounds derive_bounds(const FlpInstance& instance);

// Scales every nonzero area and cost by (1 + gamma*t), t drawn from a
// seeded standard-normal stream (redrawn until 1 + gamma*t >= 0.05), and
// replaces all aspect ratios by alpha_ratio. The result is named
// "<name>-<gamma>(<alpha_ratio>)" and is bit-identical for identical inputs.
FlpInstance perturb_instance(const FlpInstance& instance, double gamma,
                             double alpha_ratio, std::uint64_t seed);

// Text format: one record per line, '#' starts a comment.
//   floor <Lx> <Ly>
//   box <id> <area> <aspect>
//   cost <i> <j> <p>
FlpInstance parse_instance(const std::string& text);
std::string write_instance(const FlpInstance& instance);

FlpInstance load_instance(const std::string& path);
void save_instance(const FlpInstance& instance, const std::string& path);

// Layout file: `center <id> <cx> <cy>` and `width <id> <lx> <ly>` records.
Layout parse_layout(const std::string& text, int num_boxes);
std::string write_layout(const Layout& layout);

// Shortest decimal literal that parses back to exactly the same double.
std::string format_number(double v);

}  // namespace flp
