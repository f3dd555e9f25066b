#include "mipdecomp/mps.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <sstream>
#include <unordered_map>
#include <unordered_set>

namespace mipdecomp {

namespace {

enum class Section { None, Name, ObjSense, Rows, Columns, Rhs, Ranges, Bounds, Endata };

std::vector<std::string> tokenize(const std::string& line) {
  std::vector<std::string> toks;
  std::istringstream iss(line);
  std::string t;
  while (iss >> t) toks.push_back(t);
  return toks;
}

double parse_number(const std::string& tok, int line_no) {
  try {
    size_t pos = 0;
    double v = std::stod(tok, &pos);
    if (pos != tok.size()) throw std::invalid_argument(tok);
    return v;
  } catch (const std::exception&) {
    throw MpsParseError("bad numeric value '" + tok + "'", line_no);
  }
}

struct RowInfo {
  Relation relation = Relation::LessEqual;
  bool is_objective = false;
  int index = -1;  // into constraints, -1 for objective
};

}  // namespace

MipInstance parse_mps(std::istream& in) {
  MipInstance inst;
  inst.sense = ObjectiveSense::Minimize;

  std::unordered_map<std::string, RowInfo> rows;
  std::unordered_map<std::string, int> cols;
  // Per-constraint entry maps keyed by column for duplicate detection.
  std::vector<std::unordered_map<int, double>> row_entries;
  std::vector<std::unordered_map<int, double>>* entries = &row_entries;
  std::unordered_map<int, double> obj_entries;
  std::vector<double> ranges;                 // per constraint, NaN = none
  std::vector<bool> integer_marked;           // per column
  std::vector<bool> bound_touched;            // per column
  std::string objective_row;
  bool have_obj_row = false;

  Section section = Section::None;
  bool in_integer_block = false;
  int line_no = 0;
  std::string line;

  auto require_col = [&](const std::string& name, int ln) -> int {
    auto it = cols.find(name);
    if (it == cols.end()) throw MpsParseError("undeclared column '" + name + "'", ln);
    return it->second;
  };

  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    if (line[0] == '*') continue;  // comment

    const bool is_header = !std::isspace(static_cast<unsigned char>(line[0]));
    std::vector<std::string> toks = tokenize(line);
    if (toks.empty()) continue;

    if (is_header) {
      const std::string& h = toks[0];
      if (h == "NAME") {
        section = Section::Name;
        if (toks.size() > 1) inst.name = toks[1];
      } else if (h == "OBJSENSE") {
        section = Section::ObjSense;
        if (toks.size() > 1) {
          std::string s = toks[1];
          if (s == "MAX" || s == "MAXIMIZE") inst.sense = ObjectiveSense::Maximize;
          else if (s == "MIN" || s == "MINIMIZE") inst.sense = ObjectiveSense::Minimize;
          else throw MpsParseError("unknown objective sense '" + s + "'", line_no);
        }
      } else if (h == "ROWS") {
        section = Section::Rows;
      } else if (h == "COLUMNS") {
        section = Section::Columns;
      } else if (h == "RHS") {
        section = Section::Rhs;
      } else if (h == "RANGES") {
        section = Section::Ranges;
      } else if (h == "BOUNDS") {
        section = Section::Bounds;
      } else if (h == "ENDATA") {
        section = Section::Endata;
        break;
      } else {
        throw MpsParseError("unknown section header '" + h + "'", line_no);
      }
      continue;
    }

    switch (section) {
      case Section::ObjSense: {
        std::string s = toks[0];
        if (s == "MAX" || s == "MAXIMIZE") inst.sense = ObjectiveSense::Maximize;
        else if (s == "MIN" || s == "MINIMIZE") inst.sense = ObjectiveSense::Minimize;
        else throw MpsParseError("unknown objective sense '" + s + "'", line_no);
        break;
      }
      case Section::Rows: {
        if (toks.size() != 2) throw MpsParseError("ROWS line needs 'TYPE NAME'", line_no);
        const std::string& type = toks[0];
        const std::string& name = toks[1];
        if (rows.count(name)) throw MpsParseError("duplicate row '" + name + "'", line_no);
        RowInfo info;
        if (type == "N") {
          info.is_objective = true;
          if (!have_obj_row) {
            objective_row = name;
            have_obj_row = true;
          }
        } else if (type == "L") {
          info.relation = Relation::LessEqual;
        } else if (type == "G") {
          info.relation = Relation::GreaterEqual;
        } else if (type == "E") {
          info.relation = Relation::Equal;
        } else {
          throw MpsParseError("unknown row type '" + type + "'", line_no);
        }
        if (!info.is_objective) {
          info.index = static_cast<int>(inst.constraints.size());
          Constraint c;
          c.name = name;
          c.relation = info.relation;
          inst.constraints.push_back(std::move(c));
          entries->emplace_back();
          ranges.push_back(std::nan(""));
        }
        rows.emplace(name, info);
        break;
      }
      case Section::Columns: {
        if (toks.size() >= 3 && toks[1] == "'MARKER'") {
          if (toks[2] == "'INTORG'") in_integer_block = true;
          else if (toks[2] == "'INTEND'") in_integer_block = false;
          else throw MpsParseError("unknown marker '" + toks[2] + "'", line_no);
          break;
        }
        if (toks.size() < 3 || toks.size() % 2 == 0)
          throw MpsParseError("COLUMNS line needs 'COL ROW VAL [ROW VAL]'", line_no);
        const std::string& col_name = toks[0];
        int j;
        auto it = cols.find(col_name);
        if (it == cols.end()) {
          j = static_cast<int>(inst.variables.size());
          cols.emplace(col_name, j);
          Variable v;
          v.name = col_name;
          inst.variables.push_back(std::move(v));
          inst.objective.push_back(0.0);
          integer_marked.push_back(in_integer_block);
          bound_touched.push_back(false);
        } else {
          j = it->second;
          if (in_integer_block) integer_marked[static_cast<size_t>(j)] = true;
        }
        for (size_t k = 1; k + 1 < toks.size(); k += 2) {
          const std::string& row_name = toks[k];
          double val = parse_number(toks[k + 1], line_no);
          auto rit = rows.find(row_name);
          if (rit == rows.end())
            throw MpsParseError("undeclared row '" + row_name + "'", line_no);
          if (rit->second.is_objective) {
            if (row_name == objective_row) {
              if (obj_entries.count(j))
                throw MpsParseError("duplicate objective entry for column '" + col_name + "'", line_no);
              obj_entries.emplace(j, val);
              inst.objective[static_cast<size_t>(j)] = val;
            }
            // entries in secondary free rows are ignored
          } else {
            auto& m = (*entries)[static_cast<size_t>(rit->second.index)];
            if (m.count(j))
              throw MpsParseError("duplicate entry (row '" + row_name + "', column '" + col_name + "')", line_no);
            m.emplace(j, val);
          }
        }
        break;
      }
      case Section::Rhs: {
        if (toks.size() < 3 || toks.size() % 2 == 0)
          throw MpsParseError("RHS line needs 'SET ROW VAL [ROW VAL]'", line_no);
        for (size_t k = 1; k + 1 < toks.size(); k += 2) {
          auto rit = rows.find(toks[k]);
          if (rit == rows.end())
            throw MpsParseError("undeclared row '" + toks[k] + "'", line_no);
          double val = parse_number(toks[k + 1], line_no);
          if (rit->second.is_objective) {
            // RHS on the objective row encodes a negated constant term.
            inst.objective_constant = -val;
          } else {
            inst.constraints[static_cast<size_t>(rit->second.index)].rhs = val;
          }
        }
        break;
      }
      case Section::Ranges: {
        if (toks.size() < 3 || toks.size() % 2 == 0)
          throw MpsParseError("RANGES line needs 'SET ROW VAL [ROW VAL]'", line_no);
        for (size_t k = 1; k + 1 < toks.size(); k += 2) {
          auto rit = rows.find(toks[k]);
          if (rit == rows.end() || rit->second.is_objective)
            throw MpsParseError("RANGES references bad row '" + toks[k] + "'", line_no);
          ranges[static_cast<size_t>(rit->second.index)] = parse_number(toks[k + 1], line_no);
        }
        break;
      }
      case Section::Bounds: {
        if (toks.size() < 3) throw MpsParseError("BOUNDS line too short", line_no);
        const std::string& type = toks[0];
        const std::string& col_name = toks[2];
        int j = require_col(col_name, line_no);
        Variable& v = inst.variables[static_cast<size_t>(j)];
        bound_touched[static_cast<size_t>(j)] = true;
        auto numeric = [&]() {
          if (toks.size() < 4) throw MpsParseError("bound type '" + type + "' needs a value", line_no);
          return parse_number(toks[3], line_no);
        };
        if (type == "UP") v.upper = numeric();
        else if (type == "LO") v.lower = numeric();
        else if (type == "FX") { v.lower = v.upper = numeric(); }
        else if (type == "FR") { v.lower = -kInf; v.upper = kInf; }
        else if (type == "MI") v.lower = -kInf;
        else if (type == "PL") v.upper = kInf;
        else if (type == "BV") { v.lower = 0; v.upper = 1; integer_marked[static_cast<size_t>(j)] = true; }
        else if (type == "UI") { v.upper = numeric(); integer_marked[static_cast<size_t>(j)] = true; }
        else if (type == "LI") { v.lower = numeric(); integer_marked[static_cast<size_t>(j)] = true; }
        else throw MpsParseError("unknown bound type '" + type + "'", line_no);
        break;
      }
      case Section::Name:
      case Section::None:
      case Section::Endata:
        throw MpsParseError("data line outside a section", line_no);
    }
  }

  if (!have_obj_row) throw MpsParseError("no objective (N) row declared", line_no);

  // Materialize sorted sparse rows.
  for (size_t i = 0; i < inst.constraints.size(); ++i) {
    auto& c = inst.constraints[i];
    c.entries.reserve(row_entries[i].size());
    for (const auto& [j, val] : row_entries[i]) c.entries.push_back({j, val});
    std::sort(c.entries.begin(), c.entries.end(),
              [](const RowEntry& a, const RowEntry& b) { return a.column < b.column; });
  }

  // Integer-marker variables with untouched bounds default to binary.
  for (size_t j = 0; j < inst.variables.size(); ++j) {
    Variable& v = inst.variables[j];
    if (integer_marked[j]) {
      if (!bound_touched[j]) v.upper = 1.0;
      v.kind = (v.lower == 0.0 && v.upper == 1.0) ? VarKind::Binary : VarKind::Integer;
    }
  }

  // Split ranged rows into a <=/>= pair.
  const size_t original_rows = inst.constraints.size();
  for (size_t i = 0; i < original_rows; ++i) {
    double r = ranges[i];
    if (std::isnan(r)) continue;
    Constraint& c = inst.constraints[i];
    double lo, hi;
    switch (c.relation) {
      case Relation::LessEqual: lo = c.rhs - std::fabs(r); hi = c.rhs; break;
      case Relation::GreaterEqual: lo = c.rhs; hi = c.rhs + std::fabs(r); break;
      case Relation::Equal:
        if (r >= 0) { lo = c.rhs; hi = c.rhs + r; }
        else { lo = c.rhs + r; hi = c.rhs; }
        break;
      default: lo = hi = c.rhs;
    }
    Constraint twin = c;
    c.relation = Relation::LessEqual;
    c.rhs = hi;
    twin.name = c.name + "__rlo";
    twin.relation = Relation::GreaterEqual;
    twin.rhs = lo;
    inst.constraints.push_back(std::move(twin));
  }

  inst.validate();
  return inst;
}

MipInstance parse_mps_string(const std::string& text) {
  std::istringstream iss(text);
  return parse_mps(iss);
}

MipInstance parse_mps_file(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw std::runtime_error("cannot open MPS file: " + path);
  MipInstance inst = parse_mps(f);
  if (inst.name.empty()) {
    size_t slash = path.find_last_of("/\\");
    inst.name = (slash == std::string::npos) ? path : path.substr(slash + 1);
  }
  return inst;
}

namespace {

std::string num(double v) {
  std::ostringstream oss;
  oss << std::setprecision(17) << v;
  return oss.str();
}

}  // namespace

void write_mps(const MipInstance& inst, std::ostream& out) {
  out << "NAME " << (inst.name.empty() ? "UNNAMED" : inst.name) << "\n";
  if (inst.sense == ObjectiveSense::Maximize) out << "OBJSENSE\n MAX\n";
  out << "ROWS\n";
  out << " N OBJ\n";
  for (const auto& c : inst.constraints) {
    char t = c.relation == Relation::LessEqual ? 'L'
             : c.relation == Relation::Equal   ? 'E'
                                               : 'G';
    out << " " << t << " " << c.name << "\n";
  }

  // Column-major view of the rows.
  std::vector<std::vector<std::pair<std::string, double>>> by_col(inst.variables.size());
  for (const auto& c : inst.constraints)
    for (const auto& e : c.entries)
      by_col[static_cast<size_t>(e.column)].emplace_back(c.name, e.value);

  out << "COLUMNS\n";
  bool in_int = false;
  int marker = 0;
  for (size_t j = 0; j < inst.variables.size(); ++j) {
    const Variable& v = inst.variables[j];
    bool is_int = v.kind != VarKind::Continuous;
    if (is_int && !in_int) {
      out << " MARKER" << marker++ << " 'MARKER' 'INTORG'\n";
      in_int = true;
    } else if (!is_int && in_int) {
      out << " MARKER" << marker++ << " 'MARKER' 'INTEND'\n";
      in_int = false;
    }
    if (inst.objective[j] != 0.0)
      out << " " << v.name << " OBJ " << num(inst.objective[j]) << "\n";
    for (const auto& [row, val] : by_col[j])
      out << " " << v.name << " " << row << " " << num(val) << "\n";
    // Keep empty columns present in the file.
    if (inst.objective[j] == 0.0 && by_col[j].empty())
      out << " " << v.name << " OBJ 0\n";
  }
  if (in_int) out << " MARKER" << marker++ << " 'MARKER' 'INTEND'\n";

  out << "RHS\n";
  if (inst.objective_constant != 0.0)
    out << " RHS OBJ " << num(-inst.objective_constant) << "\n";
  for (const auto& c : inst.constraints)
    if (c.rhs != 0.0) out << " RHS " << c.name << " " << num(c.rhs) << "\n";

  std::ostringstream bounds;
  for (const auto& v : inst.variables) {
    bool is_int = v.kind != VarKind::Continuous;
    const double dl = 0.0;
    const double du = is_int ? 1.0 : kInf;  // defaults our parser applies
    if (v.lower == v.upper) {
      bounds << " FX BND " << v.name << " " << num(v.lower) << "\n";
      continue;
    }
    if (v.lower != dl) {
      if (v.lower == -kInf) bounds << " MI BND " << v.name << "\n";
      else bounds << " LO BND " << v.name << " " << num(v.lower) << "\n";
    }
    if (v.upper != du) {
      if (v.upper == kInf) bounds << " PL BND " << v.name << "\n";
      else bounds << " UP BND " << v.name << " " << num(v.upper) << "\n";
    }
  }
  std::string b = bounds.str();
  if (!b.empty()) out << "BOUNDS\n" << b;
  out << "ENDATA\n";
}

std::string write_mps_string(const MipInstance& inst) {
  std::ostringstream oss;
  write_mps(inst, oss);
  return oss.str();
}

void write_mps_file(const MipInstance& inst, const std::string& path) {
  std::ofstream f(path);
  if (!f) throw std::runtime_error("cannot open for writing: " + path);
  write_mps(inst, f);
}

}  // namespace mipdecomp
