#include "flp/lp_format.hpp"

#include <cctype>
#include <cmath>
#include <fstream>
#include <sstream>

#include "flp/instance.hpp"  // format_number

namespace flp {

namespace {

void write_terms(std::ostringstream& os, const std::vector<RowTerm>& terms,
                 const MilpModel& model) {
  bool first = true;
  for (const RowTerm& t : terms) {
    double c = t.coef;
    if (first) {
      if (c < 0) os << "- ";
      first = false;
    } else {
      os << (c < 0 ? " - " : " + ");
    }
    os << format_number(std::abs(c)) << " " << model.vars()[t.var].name;
  }
  if (first) os << "0 " << model.vars().at(0).name;
}

}  // namespace

std::string export_lp(const MilpModel& model) {
  std::ostringstream os;
  os << "Minimize\n obj: ";
  std::vector<RowTerm> obj;
  for (int j = 0; j < model.num_vars(); ++j)
    if (model.objective_coef(j) != 0.0) obj.push_back({j, model.objective_coef(j)});
  if (obj.empty())
    os << "";
  else
    write_terms(os, obj, model);
  os << "\nSubject To\n";
  int anon = 0;
  for (const Constraint& c : model.rows()) {
    std::string name = c.name.empty() ? "c" + std::to_string(++anon) : c.name;
    os << " " << name << ": ";
    if (c.terms.empty())
      throw ModelError("cannot export constraint with no terms: " + name);
    write_terms(os, c.terms, model);
    switch (c.sense) {
      case Sense::LE: os << " <= "; break;
      case Sense::GE: os << " >= "; break;
      case Sense::EQ: os << " = "; break;
    }
    os << format_number(c.rhs) << "\n";
  }
  os << "Bounds\n";
  for (const Variable& v : model.vars()) {
    if (v.lb == v.ub)
      os << " " << v.name << " = " << format_number(v.lb) << "\n";
    else
      os << " " << format_number(v.lb) << " <= " << v.name << " <= "
         << format_number(v.ub) << "\n";
  }
  bool any_bin = false;
  for (const Variable& v : model.vars())
    if (v.kind == VarKind::Binary) any_bin = true;
  if (any_bin) {
    os << "Binaries\n";
    for (const Variable& v : model.vars())
      if (v.kind == VarKind::Binary) os << " " << v.name << "\n";
  }
  for (const Variable& v : model.vars())
    if (v.branch_priority != 0)
      os << "\\ priority " << v.name << " " << v.branch_priority << "\n";
  os << "End\n";
  return os.str();
}

namespace {

struct LpParser {
  std::vector<std::string> lines;
  size_t pos = 0;

  explicit LpParser(const std::string& text) {
    std::istringstream in(text);
    std::string line;
    while (std::getline(in, line)) lines.push_back(line);
  }

  static std::string lower(std::string s) {
    for (char& c : s) c = static_cast<char>(std::tolower(c));
    return s;
  }

  static std::string trimmed(const std::string& s) {
    size_t a = s.find_first_not_of(" \t\r");
    if (a == std::string::npos) return "";
    size_t b = s.find_last_not_of(" \t\r");
    return s.substr(a, b - a + 1);
  }

  static bool is_section(const std::string& line, const char* kw) {
    return lower(trimmed(line)).rfind(kw, 0) == 0;
  }
};

bool is_number_token(const std::string& t) {
  char* end = nullptr;
  std::strtod(t.c_str(), &end);
  return end != t.c_str() && *end == '\0';
}

// Parses "coef var (+|-) coef var ..." where coefficients are optional.
std::vector<NamedTerm> parse_terms(const std::vector<std::string>& toks,
                                   size_t begin, size_t end) {
  std::vector<NamedTerm> out;
  double sign = 1.0;
  double coef = 1.0;
  bool have_coef = false;
  for (size_t k = begin; k < end; ++k) {
    const std::string& t = toks[k];
    if (t == "+") continue;
    if (t == "-") {
      sign = -sign;
      continue;
    }
    if (is_number_token(t)) {
      coef = std::strtod(t.c_str(), nullptr);
      have_coef = true;
      continue;
    }
    out.push_back({t, sign * (have_coef ? coef : 1.0)});
    sign = 1.0;
    coef = 1.0;
    have_coef = false;
  }
  return out;
}

std::vector<std::string> tokenize(const std::string& line) {
  std::vector<std::string> toks;
  std::string cur;
  auto flush = [&] {
    if (!cur.empty()) {
      toks.push_back(cur);
      cur.clear();
    }
  };
  for (size_t i = 0; i < line.size(); ++i) {
    char c = line[i];
    if (std::isspace(static_cast<unsigned char>(c))) {
      flush();
    } else if (c == '+' || c == '-') {
      // Signs separate tokens unless part of an exponent (1e-5).
      if (!cur.empty() && (cur.back() == 'e' || cur.back() == 'E') &&
          is_number_token(cur.substr(0, cur.size() - 1) + "0")) {
        cur += c;
      } else {
        flush();
        toks.emplace_back(1, c);
      }
    } else if (c == '<' || c == '>' || c == '=') {
      if (cur == "<" || cur == ">") {
        cur += c;
        flush();
      } else {
        flush();
        cur += c;
        if (c == '=') flush();
      }
    } else if (c == ':') {
      flush();
      toks.emplace_back(1, c);
    } else {
      cur += c;
    }
  }
  flush();
  return toks;
}

}  // namespace

MilpModel import_lp(const std::string& text) {
  LpParser p(text);
  enum Section { None, Objective, Rows, Bnds, Bins, Done };
  Section sec = None;

  struct RawRow {
    std::string name;
    std::vector<NamedTerm> terms;
    Sense sense;
    double rhs;
  };
  std::vector<NamedTerm> objective;
  std::vector<RawRow> raw_rows;
  struct RawBound {
    std::string var;
    double lb, ub;
  };
  std::vector<RawBound> raw_bounds;
  std::vector<std::string> binaries;
  std::vector<std::pair<std::string, int>> priorities;

  for (const std::string& raw : p.lines) {
    std::string line = LpParser::trimmed(raw);
    if (line.empty()) continue;
    if (line[0] == '\\') {
      auto toks = tokenize(line.substr(1));
      if (toks.size() == 3 && toks[0] == "priority")
        priorities.push_back({toks[1], static_cast<int>(std::strtod(toks[2].c_str(), nullptr))});
      continue;
    }
    std::string low = LpParser::lower(line);
    if (low.rfind("minimize", 0) == 0) { sec = Objective; continue; }
    if (low.rfind("subject to", 0) == 0) { sec = Rows; continue; }
    if (low.rfind("bounds", 0) == 0) { sec = Bnds; continue; }
    if (low.rfind("binaries", 0) == 0 || low.rfind("binary", 0) == 0) { sec = Bins; continue; }
    if (low.rfind("end", 0) == 0) { sec = Done; continue; }

    auto toks = tokenize(line);
    if (toks.empty()) continue;
    switch (sec) {
      case Objective: {
        size_t begin = 0;
        if (toks.size() >= 2 && toks[1] == ":") begin = 2;
        auto t = parse_terms(toks, begin, toks.size());
        objective.insert(objective.end(), t.begin(), t.end());
        break;
      }
      case Rows: {
        RawRow r;
        size_t begin = 0;
        if (toks.size() >= 2 && toks[1] == ":") {
          r.name = toks[0];
          begin = 2;
        }
        size_t op = begin;
        while (op < toks.size() && toks[op] != "<=" && toks[op] != ">=" &&
               toks[op] != "=")
          ++op;
        if (op >= toks.size())
          throw ModelError("lp import: malformed constraint line: " + line);
        r.sense = toks[op] == "<=" ? Sense::LE
                  : toks[op] == ">=" ? Sense::GE
                                     : Sense::EQ;
        double sign = 1.0;
        size_t rhs_at = op + 1;
        if (rhs_at < toks.size() && (toks[rhs_at] == "-" || toks[rhs_at] == "+")) {
          sign = toks[rhs_at] == "-" ? -1.0 : 1.0;
          ++rhs_at;
        }
        if (rhs_at >= toks.size())
          throw ModelError("lp import: missing rhs: " + line);
        r.rhs = sign * std::strtod(toks[rhs_at].c_str(), nullptr);
        r.terms = parse_terms(toks, begin, op);
        raw_rows.push_back(std::move(r));
        break;
      }
      case Bnds: {
        // Fold sign tokens into the following number, then match the forms
        // "a <= x <= b", "x = a", "x <= b", "a <= x".
        std::vector<std::string> t;
        for (size_t k = 0; k < toks.size(); ++k) {
          if ((toks[k] == "-" || toks[k] == "+") && k + 1 < toks.size() &&
              is_number_token(toks[k + 1])) {
            t.push_back((toks[k] == "-" ? "-" : "") + toks[k + 1]);
            ++k;
          } else {
            t.push_back(toks[k]);
          }
        }
        if (t.size() == 5 && t[1] == "<=" && t[3] == "<=") {
          raw_bounds.push_back({t[2], std::strtod(t[0].c_str(), nullptr),
                                std::strtod(t[4].c_str(), nullptr)});
        } else if (t.size() == 3 && t[1] == "=") {
          double v = std::strtod(t[2].c_str(), nullptr);
          raw_bounds.push_back({t[0], v, v});
        } else if (t.size() == 3 && t[1] == "<=") {
          if (is_number_token(t[0]))
            raw_bounds.push_back({t[2], std::strtod(t[0].c_str(), nullptr),
                                  std::numeric_limits<double>::infinity()});
          else
            raw_bounds.push_back({t[0],
                                  -std::numeric_limits<double>::infinity(),
                                  std::strtod(t[2].c_str(), nullptr)});
        } else {
          throw ModelError("lp import: malformed bounds line: " + line);
        }
        break;
      }
      case Bins:
        for (const std::string& t : toks) binaries.push_back(t);
        break;
      default:
        throw ModelError("lp import: content outside any section: " + line);
    }
  }

  MilpModel model;
  for (const RawBound& b : raw_bounds) model.add_var(b.var, b.lb, b.ub);
  for (const std::string& name : binaries) {
    Variable& v = model.var_ref(model.var(name));
    v.kind = VarKind::Binary;
    if (v.lb < 0.0) v.lb = 0.0;
    if (v.ub > 1.0) v.ub = 1.0;
  }
  for (const auto& [name, prio] : priorities)
    model.var_ref(model.var(name)).branch_priority = prio;
  for (const NamedTerm& t : objective)
    model.add_objective(model.var(t.var), t.coef);
  for (const RawRow& r : raw_rows) {
    NamedRow row;
    row.name = r.name;
    row.terms = r.terms;
    row.sense = r.sense;
    row.rhs = r.rhs;
    model.add_row(row);
  }
  return model;
}

void save_lp(const MilpModel& model, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ModelError("cannot write lp file: " + path);
  out << export_lp(model);
}

MilpModel load_lp(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ModelError("cannot open lp file: " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return import_lp(ss.str());
}

}  // namespace flp
