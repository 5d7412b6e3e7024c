#include "flp/instance.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <random>
#include <sstream>

namespace flp {

double FlpInstance::cost(int i, int j) const {
  if (i > j) std::swap(i, j);
  auto it = costs.find({i, j});
  return it == costs.end() ? 0.0 : it->second;
}

std::vector<std::pair<int, int>> FlpInstance::pairs() const {
  std::vector<std::pair<int, int>> out;
  for (int i = 1; i <= num_boxes(); ++i)
    for (int j = i + 1; j <= num_boxes(); ++j) out.push_back({i, j});
  return out;
}

void FlpInstance::validate() const {
  if (floor_x <= 0 || floor_y <= 0)
    throw InstanceError("floor dimensions must be positive");
  for (int i = 0; i < num_boxes(); ++i) {
    const BoxSpec& b = boxes[i];
    if (b.id != i + 1)
      throw InstanceError("box ids must be consecutive 1..N (got id " +
                          std::to_string(b.id) + " at position " +
                          std::to_string(i + 1) + ")");
    if (b.area <= 0)
      throw InstanceError("box " + std::to_string(b.id) +
                          " must have positive area");
    if (b.aspect < 1.0)
      throw InstanceError("box " + std::to_string(b.id) +
                          " must have aspect ratio >= 1");
  }
  for (const auto& [key, p] : costs) {
    auto [i, j] = key;
    if (i < 1 || j > num_boxes() || i >= j)
      throw InstanceError("cost pair (" + std::to_string(i) + "," +
                          std::to_string(j) + ") must satisfy 1 <= i < j <= N");
    if (p < 0) throw InstanceError("costs must be nonnegative");
  }
}

BoxBounds derive_bounds(const FlpInstance& instance) {
  instance.validate();
  BoxBounds out;
  for (const BoxSpec& b : instance.boxes) {
    for (Axis s : kAxes) {
      double L = instance.floor(s);
      double ub = std::min(std::sqrt(b.area * b.aspect), L);
      double lb = b.area / ub;
      if (lb > ub + 1e-9)
        throw InstanceError("box " + std::to_string(b.id) +
                            " cannot fit on axis " + axis_name(s) +
                            " (width lower bound " + format_number(lb) +
                            " exceeds upper bound " + format_number(ub) + ")");
      (s == Axis::X ? out.x : out.y).push_back({lb, ub});
    }
  }
  return out;
}

namespace {

// Marsaglia polar standard normals from a mt19937_64 stream. Kept local so
// perturbation output is bit-identical across platforms, unlike
// std::normal_distribution.
class NormalStream {
 public:
  explicit NormalStream(std::uint64_t seed) : rng_(seed) {}

  double next() {
    if (have_spare_) {
      have_spare_ = false;
      return spare_;
    }
    double u, v, s;
    do {
      u = 2.0 * uniform() - 1.0;
      v = 2.0 * uniform() - 1.0;
      s = u * u + v * v;
    } while (s >= 1.0 || s == 0.0);
    double mul = std::sqrt(-2.0 * std::log(s) / s);
    spare_ = v * mul;
    have_spare_ = true;
    return u * mul;
  }

 private:
  double uniform() {
    // 53-bit mantissa from the top bits, uniform in [0,1).
    return (rng_() >> 11) * 0x1.0p-53;
  }
  std::mt19937_64 rng_;
  bool have_spare_ = false;
  double spare_ = 0.0;
};

std::string gamma_label(double gamma) {
  if (std::abs(gamma * 10.0 - std::round(gamma * 10.0)) < 1e-12) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.1f", gamma);
    return buf;
  }
  return format_number(gamma);
}

std::string alpha_label(double alpha) {
  if (std::abs(alpha - std::round(alpha)) < 1e-12)
    return std::to_string(static_cast<long long>(std::round(alpha)));
  return format_number(alpha);
}

}  // namespace

FlpInstance perturb_instance(const FlpInstance& instance, double gamma,
                             double alpha_ratio, std::uint64_t seed) {
  if (gamma < 0) throw InstanceError("perturbation gamma must be >= 0");
  instance.validate();
  NormalStream normals(seed);
  auto scale = [&](double x) {
    if (x == 0.0) return 0.0;
    double factor;
    do {
      factor = 1.0 + gamma * normals.next();
    } while (factor < 0.05);  // keep areas and costs strictly positive
    return x * factor;
  };
  FlpInstance out = instance;
  out.name = instance.name + "-" + gamma_label(gamma) + "(" +
             alpha_label(alpha_ratio) + ")";
  for (BoxSpec& b : out.boxes) {
    b.area = scale(b.area);
    b.aspect = alpha_ratio;
  }
  for (auto& [key, p] : out.costs) p = scale(p);
  return out;
}

std::string format_number(double v) {
  char buf[64];
  for (int prec = 1; prec <= 17; ++prec) {
    std::snprintf(buf, sizeof(buf), "%.*g", prec, v);
    if (std::strtod(buf, nullptr) == v) return buf;
  }
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

namespace {

class LineParser {
 public:
  explicit LineParser(const std::string& text) : in_(text) {}

  // Next meaningful line split into tokens; false at end of input.
  bool next(std::vector<std::string>& tokens) {
    std::string line;
    while (std::getline(in_, line)) {
      ++lineno_;
      auto hash = line.find('#');
      if (hash == 0 && line.rfind("# name:", 0) == 0) {
        name_ = line.substr(7);
        if (!name_.empty() && name_[0] == ' ') name_.erase(0, 1);
        continue;
      }
      if (hash != std::string::npos) line.erase(hash);
      std::istringstream ls(line);
      tokens.clear();
      std::string tok;
      while (ls >> tok) tokens.push_back(tok);
      if (!tokens.empty()) return true;
    }
    return false;
  }

  int lineno() const { return lineno_; }
  const std::string& name() const { return name_; }

 private:
  std::istringstream in_;
  int lineno_ = 0;
  std::string name_;
};

[[noreturn]] void parse_fail(int lineno, const std::string& msg) {
  throw InstanceError("line " + std::to_string(lineno) + ": " + msg);
}

double parse_num(const std::string& tok, int lineno) {
  char* end = nullptr;
  double v = std::strtod(tok.c_str(), &end);
  if (end == tok.c_str() || *end != '\0')
    parse_fail(lineno, "bad number '" + tok + "'");
  return v;
}

int parse_int(const std::string& tok, int lineno) {
  double v = parse_num(tok, lineno);
  if (v != std::floor(v)) parse_fail(lineno, "expected integer, got " + tok);
  return static_cast<int>(v);
}

}  // namespace

FlpInstance parse_instance(const std::string& text) {
  FlpInstance out;
  LineParser lines(text);
  std::vector<std::string> t;
  bool have_floor = false;
  while (lines.next(t)) {
    int ln = lines.lineno();
    if (t[0] == "floor") {
      if (t.size() != 3) parse_fail(ln, "floor expects <Lx> <Ly>");
      if (have_floor) parse_fail(ln, "duplicate floor line");
      out.floor_x = parse_num(t[1], ln);
      out.floor_y = parse_num(t[2], ln);
      have_floor = true;
    } else if (t[0] == "box") {
      if (t.size() != 4) parse_fail(ln, "box expects <id> <area> <aspect>");
      BoxSpec b;
      b.id = parse_int(t[1], ln);
      b.area = parse_num(t[2], ln);
      b.aspect = parse_num(t[3], ln);
      for (const BoxSpec& prev : out.boxes)
        if (prev.id == b.id)
          parse_fail(ln, "duplicate box id " + std::to_string(b.id));
      out.boxes.push_back(b);
    } else if (t[0] == "cost") {
      if (t.size() != 4) parse_fail(ln, "cost expects <i> <j> <p>");
      int i = parse_int(t[1], ln);
      int j = parse_int(t[2], ln);
      if (i >= j) parse_fail(ln, "cost pair must satisfy i<j");
      if (out.costs.count({i, j}))
        parse_fail(ln, "duplicate cost pair");
      out.costs[{i, j}] = parse_num(t[3], ln);
    } else {
      parse_fail(ln, "unknown record '" + t[0] + "'");
    }
  }
  if (!have_floor) throw InstanceError("missing floor line");
  out.name = lines.name();
  // Box order in the file is free; ids must still be 1..N consecutive.
  std::sort(out.boxes.begin(), out.boxes.end(),
            [](const BoxSpec& a, const BoxSpec& b) { return a.id < b.id; });
  for (const auto& [key, p] : out.costs)
    if (key.second > static_cast<int>(out.boxes.size()))
      throw InstanceError("cost references unknown box " +
                          std::to_string(key.second));
  out.validate();
  return out;
}

std::string write_instance(const FlpInstance& instance) {
  std::ostringstream os;
  if (!instance.name.empty()) os << "# name: " << instance.name << "\n";
  os << "floor " << format_number(instance.floor_x) << " "
     << format_number(instance.floor_y) << "\n";
  for (const BoxSpec& b : instance.boxes)
    os << "box " << b.id << " " << format_number(b.area) << " "
       << format_number(b.aspect) << "\n";
  for (const auto& [key, p] : instance.costs)
    os << "cost " << key.first << " " << key.second << " " << format_number(p)
       << "\n";
  return os.str();
}

FlpInstance load_instance(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InstanceError("cannot open instance file: " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  FlpInstance inst = parse_instance(ss.str());
  if (inst.name.empty()) {
    // Fall back to the file stem.
    std::string stem = path;
    auto slash = stem.find_last_of("/\\");
    if (slash != std::string::npos) stem.erase(0, slash + 1);
    auto dot = stem.find_last_of('.');
    if (dot != std::string::npos && dot > 0) stem.erase(dot);
    inst.name = stem;
  }
  return inst;
}

void save_instance(const FlpInstance& instance, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw InstanceError("cannot write instance file: " + path);
  out << write_instance(instance);
}

Layout parse_layout(const std::string& text, int num_boxes) {
  Layout out;
  out.boxes.resize(num_boxes);
  std::vector<bool> have_center(num_boxes, false), have_width(num_boxes, false);
  LineParser lines(text);
  std::vector<std::string> t;
  while (lines.next(t)) {
    int ln = lines.lineno();
    if (t.size() != 4 || (t[0] != "center" && t[0] != "width"))
      parse_fail(ln, "expected 'center <id> <vx> <vy>' or 'width <id> <vx> <vy>'");
    int id = parse_int(t[1], ln);
    if (id < 1 || id > num_boxes)
      parse_fail(ln, "box id " + std::to_string(id) + " out of range");
    double vx = parse_num(t[2], ln), vy = parse_num(t[3], ln);
    if (t[0] == "center") {
      out.boxes[id - 1].cx = vx;
      out.boxes[id - 1].cy = vy;
      have_center[id - 1] = true;
    } else {
      out.boxes[id - 1].lx = vx;
      out.boxes[id - 1].ly = vy;
      have_width[id - 1] = true;
    }
  }
  for (int i = 0; i < num_boxes; ++i)
    if (!have_center[i] || !have_width[i])
      throw InstanceError("layout missing center/width for box " +
                          std::to_string(i + 1));
  return out;
}

std::string write_layout(const Layout& layout) {
  std::ostringstream os;
  for (size_t i = 0; i < layout.boxes.size(); ++i)
    os << "center " << i + 1 << " " << format_number(layout.boxes[i].cx) << " "
       << format_number(layout.boxes[i].cy) << "\n";
  for (size_t i = 0; i < layout.boxes.size(); ++i)
    os << "width " << i + 1 << " " << format_number(layout.boxes[i].lx) << " "
       << format_number(layout.boxes[i].ly) << "\n";
  return os.str();
}

}  // namespace flp
