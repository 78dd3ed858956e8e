#include "herglotz/problem_file.hpp"

#include <cctype>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <map>
#include <sstream>
#include <vector>

namespace herglotz {

namespace {

struct Entry {
  std::string value;
  int line = 0;
};

struct RawFile {
  std::string filename;
  std::map<std::string, std::map<std::string, Entry>> sections;

  [[noreturn]] void fail(int line, const std::string& msg) const {
    throw FileFormatError(filename + ":" + std::to_string(line) + ": " + msg);
  }
};

std::string trim(const std::string& s) {
  std::size_t b = 0, e = s.size();
  while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
  return s.substr(b, e - b);
}

std::string strip_comment(const std::string& line) {
  bool quoted = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    if (line[i] == '"') quoted = !quoted;
    if (line[i] == '#' && !quoted) return line.substr(0, i);
  }
  return line;
}

RawFile tokenize(const std::string& text, const std::string& filename) {
  RawFile raw;
  raw.filename = filename;
  std::istringstream in(text);
  std::string line;
  std::string section;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    line = trim(strip_comment(line));
    if (line.empty()) continue;
    if (line.front() == '[' && line.back() == ']') {
      section = trim(line.substr(1, line.size() - 2));
      if (section.empty()) raw.fail(lineno, "empty section name");
      raw.sections.try_emplace(section);
      continue;
    }
    const std::size_t eq = line.find('=');
    if (eq == std::string::npos)
      raw.fail(lineno, "expected 'key = value' or a [section] header");
    if (section.empty()) raw.fail(lineno, "key outside any section");
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (key.empty() || value.empty()) raw.fail(lineno, "malformed 'key = value' line");
    const auto [it, inserted] = raw.sections[section].emplace(key, Entry{value, lineno});
    if (!inserted) raw.fail(lineno, "duplicate key '" + key + "'");
  }
  return raw;
}

// --- typed value readers ------------------------------------------------------

double parse_number(const RawFile& raw, const Entry& e) {
  const char* s = e.value.c_str();
  char* end = nullptr;
  const double v = std::strtod(s, &end);
  if (end == s || *end != '\0' || !std::isfinite(v))
    raw.fail(e.line, "expected a finite number, got '" + e.value + "'");
  return v;
}

long long parse_integer(const RawFile& raw, const Entry& e) {
  const char* s = e.value.c_str();
  char* end = nullptr;
  const long long v = std::strtoll(s, &end, 10);
  if (end == s || *end != '\0')
    raw.fail(e.line, "expected an integer, got '" + e.value + "'");
  return v;
}

std::string parse_quoted(const RawFile& raw, const Entry& e) {
  if (e.value.size() < 2 || e.value.front() != '"' || e.value.back() != '"')
    raw.fail(e.line, "expected a quoted string, got '" + e.value + "'");
  return e.value.substr(1, e.value.size() - 2);
}

// Splits "[a, b, c]" into top-level elements, respecting nesting and quotes.
std::vector<std::string> split_array(const RawFile& raw, const Entry& e,
                                     const std::string& text) {
  const std::string t = trim(text);
  if (t.size() < 2 || t.front() != '[' || t.back() != ']')
    raw.fail(e.line, "expected a bracketed list, got '" + t + "'");
  std::vector<std::string> out;
  std::string cur;
  int depth = 0;
  bool quoted = false;
  for (std::size_t i = 1; i + 1 < t.size(); ++i) {
    const char c = t[i];
    if (c == '"') quoted = !quoted;
    if (!quoted) {
      if (c == '[') ++depth;
      if (c == ']') --depth;
      if (c == ',' && depth == 0) {
        out.push_back(trim(cur));
        cur.clear();
        continue;
      }
    }
    cur += c;
  }
  if (depth != 0 || quoted) raw.fail(e.line, "unbalanced brackets or quotes");
  cur = trim(cur);
  if (!cur.empty()) out.push_back(cur);
  return out;
}

double parse_number_text(const RawFile& raw, const Entry& e, const std::string& text) {
  const char* s = text.c_str();
  char* end = nullptr;
  const double v = std::strtod(s, &end);
  if (end == s || *end != '\0' || !std::isfinite(v))
    raw.fail(e.line, "expected a finite number, got '" + text + "'");
  return v;
}

std::string parse_quoted_text(const RawFile& raw, const Entry& e,
                              const std::string& text) {
  if (text.size() < 2 || text.front() != '"' || text.back() != '"')
    raw.fail(e.line, "expected a quoted string, got '" + text + "'");
  return text.substr(1, text.size() - 2);
}

class SectionReader {
 public:
  SectionReader(const RawFile& raw, const std::string& name)
      : raw_(raw), name_(name) {
    const auto it = raw.sections.find(name);
    entries_ = it == raw.sections.end() ? nullptr : &it->second;
  }

  bool present() const { return entries_ != nullptr; }

  const Entry& require(const std::string& key) const {
    const Entry* e = find(key);
    if (!e)
      throw FileFormatError(raw_.filename + ": missing key '" + key +
                            "' in section [" + name_ + "]");
    return *e;
  }

  const Entry* find(const std::string& key) const {
    if (!entries_) return nullptr;
    const auto it = entries_->find(key);
    seen_.push_back(key);
    return it == entries_->end() ? nullptr : &it->second;
  }

  // Unknown keys are errors: the key set is fixed and typos should not pass.
  void reject_unknown() const {
    if (!entries_) return;
    for (const auto& [key, entry] : *entries_) {
      bool known = false;
      for (const auto& s : seen_)
        if (s == key) {
          known = true;
          break;
        }
      if (!known) raw_.fail(entry.line, "unknown key '" + key + "' in [" + name_ + "]");
    }
  }

  const RawFile& raw() const { return raw_; }

 private:
  const RawFile& raw_;
  std::string name_;
  const std::map<std::string, Entry>* entries_;
  mutable std::vector<std::string> seen_;
};

Expr parse_expression(const RawFile& raw, const Entry& e, const ParseBounds& bounds) {
  const std::string src = parse_quoted(raw, e);
  try {
    return parse(src, bounds);
  } catch (const ParseDiagnostic& d) {
    raw.fail(e.line, std::string(d.what()) + " in \"" + src + "\"");
  }
}

Expr parse_expression_text(const RawFile& raw, const Entry& e, const std::string& text,
                           const ParseBounds& bounds) {
  const std::string src = parse_quoted_text(raw, e, text);
  try {
    return parse(src, bounds);
  } catch (const ParseDiagnostic& d) {
    raw.fail(e.line, std::string(d.what()) + " in \"" + src + "\"");
  }
}

}  // namespace

ProblemFile parse_problem_file(const std::string& text, const std::string& filename) {
  const RawFile raw = tokenize(text, filename);
  if (raw.sections.find("problem") == raw.sections.end())
    throw MissingSection(filename + ": missing required [problem] section");

  ProblemFile out;
  {
    const SectionReader sec(raw, "problem");
    out.problem.n = static_cast<int>(parse_integer(raw, sec.require("order")));
    out.problem.m = static_cast<int>(parse_integer(raw, sec.require("dim")));
    if (out.problem.n < 1 || out.problem.m < 1)
      throw FileFormatError(filename + ": order and dim must be at least 1");

    const Entry& interval = sec.require("interval");
    const auto ab = split_array(raw, interval, interval.value);
    if (ab.size() != 2) raw.fail(interval.line, "interval needs exactly two endpoints");
    out.problem.a = parse_number_text(raw, interval, ab[0]);
    out.problem.b = parse_number_text(raw, interval, ab[1]);

    const ParseBounds bounds{out.problem.n, out.problem.m, false};
    out.problem.L = parse_expression(raw, sec.require("lagrangian"), bounds);

    const Entry& xi = sec.require("x_init");
    const auto rows = split_array(raw, xi, xi.value);
    if (rows.size() != static_cast<std::size_t>(out.problem.n))
      raw.fail(xi.line, "x_init must have exactly 'order' rows");
    for (const auto& row : rows) {
      const auto cells = split_array(raw, xi, row);
      if (cells.size() != static_cast<std::size_t>(out.problem.m))
        raw.fail(xi.line, "each x_init row must have exactly 'dim' entries");
      std::vector<double> vals;
      vals.reserve(cells.size());
      for (const auto& c : cells) vals.push_back(parse_number_text(raw, xi, c));
      out.problem.alpha.push_back(std::move(vals));
    }

    out.problem.gamma = parse_number(raw, sec.require("z_init"));

    if (const Entry* sense = sec.find("sense")) {
      const std::string s = parse_quoted(raw, *sense);
      if (s == "min")
        out.problem.sense = Sense::Minimize;
      else if (s == "max")
        out.problem.sense = Sense::Maximize;
      else
        raw.fail(sense->line, "sense must be \"min\" or \"max\"");
    }
    sec.reject_unknown();
  }

  {
    const SectionReader sec(raw, "solver");
    if (const Entry* e = sec.find("method")) {
      out.method = parse_quoted(raw, *e);
      if (out.method != "shooting" && out.method != "direct")
        raw.fail(e->line, "method must be \"shooting\" or \"direct\"");
    }
    if (const Entry* e = sec.find("grid_points")) {
      const long long v = parse_integer(raw, *e);
      if (v < 3) raw.fail(e->line, "grid_points must be at least 3");
      out.grid_points = static_cast<std::size_t>(v);
      out.grid_points_given = true;
    }
    if (const Entry* e = sec.find("tolerance")) {
      out.tolerance = parse_number(raw, *e);
      if (out.tolerance <= 0.0) raw.fail(e->line, "tolerance must be positive");
    }
    if (const Entry* e = sec.find("max_iterations")) {
      const long long v = parse_integer(raw, *e);
      if (v < 1) raw.fail(e->line, "max_iterations must be at least 1");
      out.max_iterations = static_cast<int>(v);
    }
    if (const Entry* e = sec.find("multistart")) {
      const long long v = parse_integer(raw, *e);
      if (v < 1) raw.fail(e->line, "multistart must be at least 1");
      out.multistart = static_cast<int>(v);
    }
    if (const Entry* e = sec.find("seed"))
      out.seed = static_cast<std::uint64_t>(parse_integer(raw, *e));
    sec.reject_unknown();
  }

  {
    const SectionReader sec(raw, "symmetry");
    if (sec.present()) {
      const ParseBounds bounds{out.problem.n, out.problem.m, false};
      SymmetryFamily fam;
      fam.T = parse_expression(raw, sec.require("T"), bounds);
      const Entry& xs = sec.require("X");
      for (const auto& cell : split_array(raw, xs, xs.value))
        fam.X.push_back(parse_expression_text(raw, xs, cell, bounds));
      if (fam.X.size() != static_cast<std::size_t>(out.problem.m))
        raw.fail(xs.line, "X must list exactly 'dim' generators");
      fam.Z = parse_expression(raw, sec.require("Z"), bounds);
      out.symmetry = std::move(fam);
      sec.reject_unknown();
    }
  }

  {
    const SectionReader sec(raw, "finite_symmetry");
    if (sec.present()) {
      const ParseBounds bounds{out.problem.n, out.problem.m, true};
      FiniteFamily fam;
      fam.Ts = parse_expression(raw, sec.require("Ts"), bounds);
      const Entry& xs = sec.require("Xs");
      for (const auto& cell : split_array(raw, xs, xs.value))
        fam.Xs.push_back(parse_expression_text(raw, xs, cell, bounds));
      if (fam.Xs.size() != static_cast<std::size_t>(out.problem.m))
        raw.fail(xs.line, "Xs must list exactly 'dim' transformations");
      fam.Zs = parse_expression(raw, sec.require("Zs"), bounds);
      out.finite_symmetry = std::move(fam);
      sec.reject_unknown();
    }
  }

  for (const auto& [name, entries] : raw.sections)
    if (name != "problem" && name != "solver" && name != "symmetry" &&
        name != "finite_symmetry")
      throw FileFormatError(filename + ": unknown section [" + name + "]");

  validate(out.problem);
  return out;
}

ProblemFile load_problem_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw FileFormatError("cannot open problem file '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_problem_file(buf.str(), path);
}

}  // namespace herglotz
