#include <charconv>
#include <cmath>
#include <limits>
#include <fstream>
#include <map>
#include <sstream>

#include "ias/cauchy.hpp"

namespace ias::cauchy {

using holo::PowerSeries;

namespace {

struct Line {
  int number;
  std::string key;
  std::string value;
  int value_column;
};

struct Section {
  std::string name;
  int line = 0;
  std::vector<Line> entries;
};

std::string trim(std::string_view s) {
  std::size_t a = 0, b = s.size();
  while (a < b && std::isspace(static_cast<unsigned char>(s[a]))) ++a;
  while (b > a && std::isspace(static_cast<unsigned char>(s[b - 1]))) --b;
  return std::string(s.substr(a, b - a));
}

std::vector<double> numbers(const Line& l, std::size_t expected) {
  std::vector<double> out;
  const std::string& v = l.value;
  std::size_t i = 0;
  while (i < v.size()) {
    while (i < v.size() && std::isspace(static_cast<unsigned char>(v[i]))) ++i;
    if (i == v.size()) break;
    std::size_t j = i;
    while (j < v.size() && !std::isspace(static_cast<unsigned char>(v[j]))) ++j;
    double x = 0.0;
    const auto [ptr, ec] = std::from_chars(v.data() + i, v.data() + j, x);
    if (ec != std::errc() || ptr != v.data() + j || !std::isfinite(x))
      throw ParseError("'" + v.substr(i, j - i) + "' is not a number", l.number, l.value_column + static_cast<int>(i));
    out.push_back(x);
    i = j;
  }
  if (out.size() != expected)
    throw ParseError(l.key + " expects " + std::to_string(expected) + " value" + (expected == 1 ? "" : "s") +
                         ", got " + std::to_string(out.size()),
                     l.number, l.value_column);
  return out;
}

int integer(const Line& l) {
  const double x = numbers(l, 1)[0];
  if (x != std::floor(x) || std::abs(x) > 1e6) throw ParseError(l.key + " must be an integer", l.number, l.value_column);
  return static_cast<int>(x);
}

// Series components from a curve section with `dim` values per row.
std::vector<PowerSeries> curve_section(const Section& sec, int dim) {
  double center = 0.0;
  std::optional<int> order;
  std::optional<double> trust;
  std::map<int, std::pair<std::vector<double>, int>> rows;
  for (const Line& l : sec.entries) {
    if (l.key == "center") {
      center = numbers(l, 1)[0];
    } else if (l.key == "order") {
      order = integer(l);
      if (*order < 0) throw ParseError("order must be non-negative", l.number, l.value_column);
    } else if (l.key == "trust_radius") {
      trust = numbers(l, 1)[0];
      if (!(*trust > 0.0)) throw ParseError("trust_radius must be positive", l.number, l.value_column);
    } else if (l.key.size() > 1 && l.key[0] == 'c' &&
               l.key.find_first_not_of("0123456789", 1) == std::string::npos) {
      const int k = std::stoi(l.key.substr(1));
      if (rows.count(k)) throw ParseError("duplicate coefficient " + l.key, l.number, 1);
      rows[k] = {numbers(l, static_cast<std::size_t>(dim)), l.number};
    } else {
      throw ParseError("unknown key '" + l.key + "' in section [" + sec.name + "]", l.number, 1);
    }
  }
  if (rows.empty()) throw ParseError("section [" + sec.name + "] has no coefficient rows", sec.line, 1);
  const int top = rows.rbegin()->first;
  if (order && top > *order)
    throw ParseError("coefficient c" + std::to_string(top) + " exceeds order " + std::to_string(*order),
                     rows.rbegin()->second.second, 1);
  const int n = order.value_or(top);
  std::vector<PowerSeries> out;
  std::vector<std::vector<double>> coeffs(static_cast<std::size_t>(dim), std::vector<double>(n + 1, 0.0));
  for (const auto& [k, row] : rows)
    for (int d = 0; d < dim; ++d) coeffs[static_cast<std::size_t>(d)][static_cast<std::size_t>(k)] = row.first[d];
  // One trust radius for all components: the smallest default.
  double radius = trust.value_or(std::numeric_limits<double>::infinity());
  if (!trust)
    for (const auto& c : coeffs) radius = std::min(radius, 0.75 * holo::ratio_test_radius(c));
  for (auto& c : coeffs) out.emplace_back(center, std::move(c), radius);
  return out;
}

}  // namespace

CurveFile parse_curve_file(std::string_view text) {
  Section top;
  std::vector<Section> sections;
  Section* current = &top;
  std::istringstream in{std::string(text)};
  std::string raw;
  int number = 0;
  while (std::getline(in, raw)) {
    ++number;
    const std::size_t hash = raw.find('#');
    const std::string line = trim(std::string_view(raw).substr(0, hash));
    if (line.empty()) continue;
    if (line.front() == '[') {
      if (line.back() != ']') throw ParseError("unterminated section header", number, 1);
      sections.push_back({trim(line.substr(1, line.size() - 2)), number, {}});
      current = &sections.back();
      continue;
    }
    const std::size_t eq = line.find('=');
    if (eq == std::string::npos) throw ParseError("expected key = value", number, 1);
    const std::string key = trim(line.substr(0, eq));
    if (key.empty()) throw ParseError("missing key", number, 1);
    const std::size_t vstart = raw.find('=') + 1;
    current->entries.push_back({number, key, trim(line.substr(eq + 1)), static_cast<int>(vstart) + 1});
  }

  CurveFile out;
  std::optional<std::array<double, 2>> interval, base;
  double base_height = 0.0;
  for (const Line& l : top.entries) {
    if (l.key == "eps") {
      out.eps = integer(l);
      if (!valid_eps(out.eps)) throw ParseError("eps must be 1 or -1", l.number, l.value_column);
    } else if (l.key == "interval") {
      const auto v = numbers(l, 2);
      interval = {v[0], v[1]};
    } else if (l.key == "u_interval") {
      const auto v = numbers(l, 2);
      out.u_min = v[0];
      out.u_max = v[1];
    } else if (l.key == "v_interval") {
      const auto v = numbers(l, 2);
      out.v_min = v[0];
      out.v_max = v[1];
    } else if (l.key == "base") {
      const auto v = numbers(l, 2);
      base = {v[0], v[1]};
    } else if (l.key == "base_height") {
      base_height = numbers(l, 1)[0];
    } else {
      throw ParseError("unknown key '" + l.key + "'", l.number, 1);
    }
  }

  std::map<std::string, const Section*> by_name;
  for (const Section& s : sections) {
    if (s.name != "alpha" && s.name != "U" && s.name != "a_curve" && s.name != "b_curve")
      throw ParseError("unknown section [" + s.name + "]", s.line, 1);
    if (by_name.count(s.name)) throw ParseError("duplicate section [" + s.name + "]", s.line, 1);
    by_name[s.name] = &s;
  }
  const bool bjorling = by_name.count("alpha") || by_name.count("U");
  const bool characteristic = by_name.count("a_curve") || by_name.count("b_curve");
  if (bjorling && characteristic)
    throw ParseError("a file holds either [alpha]/[U] or [a_curve]/[b_curve]", sections.back().line, 1);
  if (bjorling) {
    for (const char* name : {"alpha", "U"})
      if (!by_name.count(name)) throw ParseError(std::string("missing section [") + name + "]", number, 1);
    auto a = curve_section(*by_name["alpha"], 3);
    auto u = curve_section(*by_name["U"], 3);
    AdmissiblePair pair;
    pair.alpha = CurveSeries({a[0], a[1], a[2]});
    pair.U = CurveSeries({u[0], u[1], u[2]});
    pair.eps = out.eps;
    if (interval) {
      pair.s_min = (*interval)[0];
      pair.s_max = (*interval)[1];
    }
    out.pair = pair;
  } else if (characteristic) {
    for (const char* name : {"a_curve", "b_curve"})
      if (!by_name.count(name)) throw ParseError(std::string("missing section [") + name + "]", number, 1);
    auto a = curve_section(*by_name["a_curve"], 2);
    auto b = curve_section(*by_name["b_curve"], 2);
    CharacteristicData cd;
    cd.a_curve = PlanarSeries(a[0], a[1]);
    cd.b_curve = PlanarSeries(b[0], b[1]);
    if (base) {
      cd.u_base = (*base)[0];
      cd.v_base = (*base)[1];
    }
    cd.base_height = base_height;
    out.characteristic = cd;
    out.eps = -1;
  } else {
    throw ParseError("no curve sections", number, 1);
  }
  return out;
}

CurveFile load_curve_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot read curve file " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_curve_file(ss.str());
}

}  // namespace ias::cauchy
