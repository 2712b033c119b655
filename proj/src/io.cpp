#include "ias/io.hpp"

#include <algorithm>
#include <bit>
#include <charconv>
#include <cmath>
#include <cstring>
#include <fstream>
#include <map>
#include <sstream>

#include "ias/format.hpp"

namespace ias::io {

namespace fs = std::filesystem;

namespace {

constexpr const char* kCsvHeader = "s,t,x,y,u,N1,N2,h_E,h_F,h_G,singular";

const char* kind_name(DomainKind k) {
  switch (k) {
    case DomainKind::rectangle:
      return "rectangle";
    case DomainKind::annulus:
      return "annulus";
    case DomainKind::asymptotic:
      return "asymptotic";
  }
  return "rectangle";
}

// Cells whose four corners are all nonsingular, as 0-based corner indices.
std::vector<std::array<std::size_t, 4>> faces(const SurfaceMesh& m) {
  std::vector<std::array<std::size_t, 4>> out;
  const std::size_t n1 = static_cast<std::size_t>(m.n1());
  for (int j = 0; j + 1 < m.n2(); ++j)
    for (int i = 0; i + 1 < m.n1(); ++i) {
      const std::size_t a = static_cast<std::size_t>(j) * n1 + i;
      const std::array<std::size_t, 4> q{a, a + 1, a + 1 + n1, a + n1};
      if (std::none_of(q.begin(), q.end(), [&](std::size_t k) { return m.samples[k].singular; })) out.push_back(q);
    }
  return out;
}

double parse_number(const std::string& text, int line, int column) {
  double v = 0.0;
  const char* end = text.data() + text.size();
  const auto [ptr, ec] = std::from_chars(text.data(), end, v);
  if (ec != std::errc() || ptr != end) throw ParseError("not a number: '" + text + "'", line, column);
  return v;
}

template <typename T>
void put_le(std::string& out, T v) {
  char b[sizeof(T)];
  std::memcpy(b, &v, sizeof(T));
  if constexpr (std::endian::native == std::endian::big) std::reverse(b, b + sizeof(T));
  out.append(b, sizeof(T));
}

}  // namespace

Format parse_format(const std::string& name) {
  if (name == "obj") return Format::obj;
  if (name == "ply") return Format::ply;
  if (name == "csv") return Format::csv;
  throw InvalidParameter("unknown mesh format '" + name + "' (expected obj, ply or csv)");
}

Format format_of(const fs::path& path) {
  std::string ext = path.extension().string();
  if (!ext.empty()) ext.erase(0, 1);
  std::transform(ext.begin(), ext.end(), ext.begin(), [](unsigned char c) { return std::tolower(c); });
  return parse_format(ext);
}

std::string extension(Format f) {
  switch (f) {
    case Format::obj:
      return ".obj";
    case Format::ply:
      return ".ply";
    case Format::csv:
      return ".csv";
  }
  return ".csv";
}

std::string to_csv(const SurfaceMesh& m) {
  if (m.samples.empty()) throw InvalidParameter("cannot export an empty mesh");
  const DomainSpec& d = m.domain;
  std::string out;
  out.reserve(m.samples.size() * 200);
  out += "# eps=" + std::to_string(m.eps) + " kind=" + kind_name(d.kind) + " n1=" + std::to_string(d.n1) +
         " n2=" + std::to_string(d.n2) + " p1_min=" + format_double(d.p1_min) + " p1_max=" +
         format_double(d.p1_max) + " p2_min=" + format_double(d.p2_min) + " p2_max=" + format_double(d.p2_max) +
         " period=" + (m.vertical_period ? format_double(*m.vertical_period) : std::string("none")) + "\n";
  if (!m.provenance.empty()) {
    std::string p = m.provenance;
    std::replace(p.begin(), p.end(), '\n', ' ');
    out += "# provenance: " + p + "\n";
  }
  out += kCsvHeader;
  out += '\n';
  for (const Sample& s : m.samples) {
    for (double v : {s.p1, s.p2, s.psi.x(), s.psi.y(), s.psi.z(), s.N.x(), s.N.y(), s.hE, s.hF, s.hG}) {
      out += format_double(v);
      out += ',';
    }
    out += s.singular ? "1\n" : "0\n";
  }
  return out;
}

SurfaceMesh from_csv(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  int line_no = 0;
  std::map<std::string, std::string> meta;
  std::string provenance;
  bool header = false;
  SurfaceMesh m;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    if (line[0] == '#') {
      if (header) throw ParseError("comment after the header", line_no, 1);
      if (line.rfind("# provenance: ", 0) == 0) {
        provenance = line.substr(14);
        continue;
      }
      std::istringstream tokens(line.substr(1));
      std::string tok;
      while (tokens >> tok) {
        const auto eq = tok.find('=');
        if (eq == std::string::npos) throw ParseError("expected key=value, got '" + tok + "'", line_no, 0);
        meta[tok.substr(0, eq)] = tok.substr(eq + 1);
      }
      continue;
    }
    if (!header) {
      if (line != kCsvHeader) throw ParseError(std::string("expected header '") + kCsvHeader + "'", line_no, 1);
      header = true;
      for (const char* key : {"eps", "kind", "n1", "n2", "p1_min", "p1_max", "p2_min", "p2_max"})
        if (!meta.count(key)) throw ParseError(std::string("metadata lacks '") + key + "'", line_no, 0);
      m.eps = static_cast<int>(parse_number(meta["eps"], line_no, 0));
      const std::string& kind = meta["kind"];
      if (kind == "rectangle")
        m.domain.kind = DomainKind::rectangle;
      else if (kind == "annulus")
        m.domain.kind = DomainKind::annulus;
      else if (kind == "asymptotic")
        m.domain.kind = DomainKind::asymptotic;
      else
        throw ParseError("unknown grid kind '" + kind + "'", line_no, 0);
      m.domain.n1 = static_cast<int>(parse_number(meta["n1"], line_no, 0));
      m.domain.n2 = static_cast<int>(parse_number(meta["n2"], line_no, 0));
      m.domain.p1_min = parse_number(meta["p1_min"], line_no, 0);
      m.domain.p1_max = parse_number(meta["p1_max"], line_no, 0);
      m.domain.p2_min = parse_number(meta["p2_min"], line_no, 0);
      m.domain.p2_max = parse_number(meta["p2_max"], line_no, 0);
      if (meta.count("period") && meta["period"] != "none")
        m.vertical_period = parse_number(meta["period"], line_no, 0);
      if (m.domain.n1 < 2 || m.domain.n2 < 2) throw ParseError("grid needs at least 2 x 2 samples", line_no, 0);
      m.samples.reserve(static_cast<std::size_t>(m.domain.n1) * m.domain.n2);
      continue;
    }
    std::array<double, 10> v{};
    std::size_t start = 0;
    int column = 1;
    for (int c = 0; c < 11; ++c) {
      const std::size_t comma = line.find(',', start);
      if ((c < 10) != (comma != std::string::npos))
        throw ParseError(c < 10 ? "too few columns" : "too many columns", line_no, column);
      const std::string cell = line.substr(start, c < 10 ? comma - start : std::string::npos);
      if (c < 10) {
        v[static_cast<std::size_t>(c)] = parse_number(cell, line_no, column);
      } else {
        if (cell != "0" && cell != "1") throw ParseError("singular flag must be 0 or 1", line_no, column);
        Sample s;
        s.p1 = v[0];
        s.p2 = v[1];
        s.psi = Vec3(v[2], v[3], v[4]);
        s.N = Vec3(v[5], v[6], 1.0);
        s.hE = v[7];
        s.hF = v[8];
        s.hG = v[9];
        s.h_degeneracy = m.domain.kind == DomainKind::asymptotic ? s.hF : s.hE;
        s.singular = cell == "1";
        s.z = m.domain.point(s.p1, s.p2, m.eps);
        m.samples.push_back(s);
      }
      column += static_cast<int>(cell.size()) + 1;
      start = comma + 1;
    }
  }
  if (!header) throw ParseError("missing CSV header", line_no, 0);
  const std::size_t expected = static_cast<std::size_t>(m.domain.n1) * m.domain.n2;
  if (m.samples.size() != expected)
    throw ParseError("expected " + std::to_string(expected) + " rows, found " + std::to_string(m.samples.size()),
                     line_no, 0);
  m.provenance = provenance;
  return m;
}

std::vector<Vec3> curve_vertices(const SurfaceMesh& m, const weier::SingularCurve& curve) {
  std::vector<Vec3> out;
  out.reserve(curve.points.size());
  const DomainSpec& d = m.domain;
  for (const auto& p : curve.points) {
    if (m.source) {
      out.push_back(weier::point_on_surface(m, p.z));
      continue;
    }
    const double fi = std::clamp((p.p1 - d.p1_min) / d.step1(), 0.0, d.n1 - 1.0);
    const double fj = std::clamp((p.p2 - d.p2_min) / d.step2(), 0.0, d.n2 - 1.0);
    const int i = std::min(static_cast<int>(fi), d.n1 - 2), j = std::min(static_cast<int>(fj), d.n2 - 2);
    const double a = fi - i, b = fj - j;
    out.push_back((1 - a) * (1 - b) * m.at(i, j).psi + a * (1 - b) * m.at(i + 1, j).psi +
                  (1 - a) * b * m.at(i, j + 1).psi + a * b * m.at(i + 1, j + 1).psi);
  }
  return out;
}

std::string to_obj(const SurfaceMesh& m, const std::vector<weier::SingularCurve>& curves) {
  if (m.samples.empty()) throw InvalidParameter("cannot export an empty mesh");
  std::string out = "o surface\n";
  auto vertex = [&out](const Vec3& p) {
    out += "v " + format_double(p.x()) + ' ' + format_double(p.y()) + ' ' + format_double(p.z()) + '\n';
  };
  for (const Sample& s : m.samples) vertex(s.psi);
  for (const auto& q : faces(m))
    out += "f " + std::to_string(q[0] + 1) + ' ' + std::to_string(q[1] + 1) + ' ' + std::to_string(q[2] + 1) + ' ' +
           std::to_string(q[3] + 1) + '\n';
  if (!curves.empty()) {
    out += "o singular_curves\n";
    std::size_t next = m.samples.size() + 1;
    for (const auto& c : curves) {
      const auto pts = curve_vertices(m, c);
      if (pts.size() < 2) {
        for (const auto& p : pts) vertex(p);
        next += pts.size();
        continue;
      }
      for (const auto& p : pts) vertex(p);
      out += 'l';
      for (std::size_t k = 0; k < pts.size(); ++k) out += ' ' + std::to_string(next + k);
      if (c.closed) out += ' ' + std::to_string(next);
      out += '\n';
      next += pts.size();
    }
  }
  return out;
}

std::string to_ply(const SurfaceMesh& m) {
  if (m.samples.empty()) throw InvalidParameter("cannot export an empty mesh");
  const auto fs_ = faces(m);
  std::string out = "ply\nformat binary_little_endian 1.0\nelement vertex " + std::to_string(m.samples.size()) +
                    "\nproperty double x\nproperty double y\nproperty double z\nproperty double h_degeneracy\n"
                    "element face " +
                    std::to_string(fs_.size()) + "\nproperty list uchar int vertex_indices\nend_header\n";
  for (const Sample& s : m.samples) {
    put_le(out, s.psi.x());
    put_le(out, s.psi.y());
    put_le(out, s.psi.z());
    put_le(out, s.h_degeneracy);
  }
  for (const auto& q : fs_) {
    put_le(out, static_cast<std::uint8_t>(4));
    for (std::size_t k : q) put_le(out, static_cast<std::int32_t>(k));
  }
  return out;
}

std::string curves_csv(const SurfaceMesh& m, const std::vector<weier::SingularCurve>& curves) {
  std::string out = "curve,closed,s,t,x,y,u\n";
  for (std::size_t c = 0; c < curves.size(); ++c) {
    const auto pts = curve_vertices(m, curves[c]);
    for (std::size_t k = 0; k < pts.size(); ++k)
      out += std::to_string(c) + ',' + (curves[c].closed ? "1," : "0,") + format_double(curves[c].points[k].p1) +
             ',' + format_double(curves[c].points[k].p2) + ',' + format_double(pts[k].x()) + ',' +
             format_double(pts[k].y()) + ',' + format_double(pts[k].z()) + '\n';
  }
  return out;
}

void write_atomic(const fs::path& path, const std::string& bytes) {
  const fs::path tmp = path.string() + ".tmp";
  {
    std::ofstream f(tmp, std::ios::binary | std::ios::trunc);
    if (!f) throw IoError("cannot write " + path.string());
    f.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
    if (!f) throw IoError("write failed for " + path.string());
  }
  std::error_code ec;
  fs::rename(tmp, path, ec);
  if (ec) {
    fs::remove(tmp, ec);
    throw IoError("cannot move " + tmp.string() + " to " + path.string());
  }
}

std::string read_file(const fs::path& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw IoError("cannot read " + path.string());
  std::ostringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

std::vector<fs::path> export_mesh(const SurfaceMesh& m, Format format, const fs::path& path) {
  switch (format) {
    case Format::csv:
      write_atomic(path, to_csv(m));
      return {path};
    case Format::ply:
      write_atomic(path, to_ply(m));
      return {path};
    case Format::obj: {
      const auto curves = weier::extract_singular_curves(m);
      write_atomic(path, to_obj(m, curves));
      fs::path side = path;
      side.replace_extension(".curves.csv");
      write_atomic(side, curves_csv(m, curves));
      return {path, side};
    }
  }
  return {};
}

SurfaceMesh load_mesh(const fs::path& path) {
  if (format_of(path) != Format::csv) throw InvalidParameter("only CSV meshes can be read back: " + path.string());
  return from_csv(read_file(path));
}

}  // namespace ias::io
