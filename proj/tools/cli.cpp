#include "cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <filesystem>
#include <numeric>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "ias/cauchy.hpp"
#include "ias/error.hpp"
#include "ias/format.hpp"
#include "ias/gallery.hpp"
#include "ias/io.hpp"
#include "ias/ribaucour.hpp"
#include "ias/verify.hpp"

namespace ias::cli {
namespace {

namespace fs = std::filesystem;

struct Grid {
  int n1 = 128, n2 = 128;
};

Grid parse_grid(const std::string& text) {
  const auto x = text.find_first_of("xX");
  Grid g;
  try {
    if (x == std::string::npos) throw std::invalid_argument("");
    std::size_t used1 = 0, used2 = 0;
    const std::string a = text.substr(0, x), b = text.substr(x + 1);
    g.n1 = std::stoi(a, &used1);
    g.n2 = std::stoi(b, &used2);
    if (used1 != a.size() || used2 != b.size()) throw std::invalid_argument("");
  } catch (const std::logic_error&) {
    throw InvalidParameter("grid must look like NxM, got '" + text + "'");
  }
  if (g.n1 < 2 || g.n2 < 2) throw InvalidParameter("grid needs at least 2 samples per direction");
  return g;
}

// Parsed and validated command line. Nothing is computed until every field
// has been checked.
struct RunConfig {
  std::string command;
  Grid grid;
  std::string out, in, report, data, format;
  std::optional<double> hessian_tol, structure_tol;
  bool verify = false;

  std::string name;
  gallery::Params params;

  std::optional<double> a, b, c;
  std::optional<int> n, m;
  std::string k = "0";
  double strip = 0.5;
};

// Raw option storage; CLI11 binds to these and RunConfig is built from them.
struct RawOptions {
  std::string grid = "128x128";
  std::string out, in, report, data, format;
  std::optional<double> hessian_tol, structure_tol;
  bool verify = false;

  std::string name;
  std::optional<std::string> r, sign, ga, gb, gc, gk, eps;

  std::optional<double> a, b, c;
  std::optional<int> n, m;
  std::string k = "0";
  double strip = 0.5;
};

void require_parent_dir(const std::string& path) {
  const fs::path parent = fs::path(path).parent_path();
  if (!parent.empty() && !fs::is_directory(parent))
    throw IoError("output directory does not exist: " + parent.string());
}

void require_file(const std::string& path) {
  if (!fs::is_regular_file(path)) throw IoError("cannot read " + path);
}

io::Format output_format(const RunConfig& c, io::Format fallback) {
  if (!c.format.empty()) return io::parse_format(c.format);
  if (fs::path(c.out).has_extension()) return io::format_of(c.out);
  return fallback;
}

struct TransformParams {
  ribaucour::HelicoidalClosedForm p;
  std::optional<std::pair<int, int>> nm;
};

TransformParams transform_params(const RunConfig& c) {
  using ribaucour::HelicoidalClosedForm;
  const CEps k = parse_ceps(c.k, 1);
  TransformParams t;
  if (c.n) {
    t.p = HelicoidalClosedForm::from_nm(*c.a, *c.n, *c.m, k);
    const int g = std::gcd(*c.n, *c.m);
    t.nm = std::make_pair(*c.n / g, *c.m / g);
  } else if (c.b) {
    t.p = HelicoidalClosedForm::from_ab(*c.a, *c.b, k);
  } else {
    t.p = HelicoidalClosedForm::from_ac(*c.a, *c.c, k);
  }
  return t;
}

RunConfig validate(const std::string& command, const RawOptions& o) {
  RunConfig c;
  c.command = command;
  c.grid = parse_grid(o.grid);
  c.out = o.out;
  c.in = o.in;
  c.report = o.report;
  c.data = o.data;
  c.format = o.format;
  c.hessian_tol = o.hessian_tol;
  c.structure_tol = o.structure_tol;
  c.verify = o.verify;
  if (!c.format.empty()) io::parse_format(c.format);
  for (auto tol : {c.hessian_tol, c.structure_tol})
    if (tol && !(*tol > 0.0)) throw InvalidParameter("tolerances must be positive");
  if (!c.report.empty()) require_parent_dir(c.report);

  if (command == "gallery") {
    c.name = o.name;
    const auto& info = gallery::info(c.name);
    const std::pair<const char*, const std::optional<std::string>*> given[] = {
        {"r", &o.r}, {"sign", &o.sign}, {"a", &o.ga}, {"b", &o.gb}, {"c", &o.gc}, {"k", &o.gk}};
    for (const auto& [key, value] : given) {
      if (!*value) continue;
      if (std::find(info.keys.begin(), info.keys.end(), key) == info.keys.end())
        throw InvalidParameter("example " + c.name + " takes no parameter '" + key + "'");
      c.params[key] = **value;
    }
    if (o.eps) c.params["eps"] = *o.eps;
    // Parameter values are checked by building the data on a tiny grid.
    gallery::get_example(c.name, c.params, 2, 2);
    require_parent_dir(c.out);
    output_format(c, io::Format::obj);
  } else if (command == "transform") {
    c.a = o.a.value_or(1.0);
    c.b = o.b;
    c.c = o.c;
    c.n = o.n;
    c.m = o.m;
    c.k = o.k;
    const int ways = (c.b ? 1 : 0) + (c.c ? 1 : 0) + ((c.n || c.m) ? 1 : 0);
    if (ways != 1) throw InvalidParameter("give exactly one of --c, --b or --n/--m");
    if (c.n.has_value() != c.m.has_value()) throw InvalidParameter("--n and --m go together");
    transform_params(c);
    if (c.out.empty()) throw InvalidParameter("--out DIR is required");
    if (fs::exists(c.out) && !fs::is_directory(c.out)) throw IoError("not a directory: " + c.out);
    output_format(c, io::Format::obj);
  } else if (command == "cauchy") {
    c.strip = o.strip;
    if (!(c.strip > 0.0)) throw InvalidParameter("--strip must be positive");
    require_file(c.data);
    require_parent_dir(c.out);
    output_format(c, io::Format::obj);
  } else if (command == "verify") {
    require_file(c.in);
  } else if (command == "export") {
    require_file(c.in);
    require_parent_dir(c.out);
    output_format(c, io::Format::obj);
  }
  return c;
}

void write_report(const verify::VerificationReport& rep, const std::string& path) {
  if (path.empty()) return;
  const bool csv = fs::path(path).extension() == ".csv";
  io::write_atomic(path, csv ? rep.to_csv() : rep.to_text());
}

int finish(const verify::VerificationReport& rep, const RunConfig& c, std::ostream& out) {
  write_report(rep, c.report);
  out << rep.to_text();
  return rep.passed() ? 0 : 1;
}

void list_written(const std::vector<fs::path>& paths, std::ostream& out) {
  for (const auto& p : paths) out << "wrote " << p.string() << '\n';
}

verify::Check scalar_check(const std::string& name, double value, double tol) {
  verify::Check k;
  k.name = name;
  k.max = value;
  k.mean = value;
  k.n = 1;
  k.tol = tol;
  k.pass = value <= tol;
  return k;
}

int run_gallery(const RunConfig& c, std::ostream& out) {
  const auto data = gallery::get_example(c.name, c.params, c.grid.n1, c.grid.n2);
  const auto mesh = weier::eval_surface(data);
  list_written(io::export_mesh(mesh, output_format(c, io::Format::obj), c.out), out);
  if (!c.verify && c.report.empty()) return 0;
  return finish(verify::verify_mesh(mesh, c.hessian_tol, c.structure_tol), c, out);
}

int run_transform(const RunConfig& c, std::ostream& out) {
  using namespace ribaucour;
  const auto [p, nm] = transform_params(c);
  // Without n/m the strip covers one 2 pi period; analyze_transform matches
  // b against small fractions itself.
  const DomainSpec domain =
      nm ? default_domain(p, nm->first, nm->second, c.grid.n1, c.grid.n2) : default_domain(p, 1, 1, c.grid.n1, c.grid.n2);
  const auto pair = helicoidal_transform(p, domain);
  const auto base = weier::eval_surface(pair.base);
  const auto transformed = weier::eval_surface(pair.transformed);
  const auto d = analyze_transform(base, transformed, p, nm);

  const io::Format fmt = output_format(c, io::Format::obj);
  fs::create_directories(c.out);
  const fs::path dir(c.out);
  list_written(io::export_mesh(base, fmt, dir / ("base" + io::extension(fmt))), out);
  list_written(io::export_mesh(transformed, fmt, dir / ("transformed" + io::extension(fmt))), out);

  verify::VerificationReport rep;
  rep.checks.push_back(scalar_check("product_identity", d.product.max_residual, 1e-8));
  rep.checks.push_back(scalar_check("g_imag", d.g.max_imag, 1e-8));
  rep.checks.push_back(scalar_check("g_component_gap", d.g.max_component_gap, 1e-8));
  rep.checks.push_back(scalar_check("nodal_hausdorff", d.nodal_hausdorff, d.nodal_tolerance));
  if (d.translation) rep.checks.push_back(scalar_check("translation_std", d.translation_std, 1e-6));
  const int punctures = static_cast<int>(d.punctures.zeros.size() + d.punctures.poles.size());
  if (d.expected_ends >= 0)
    rep.checks.push_back(
        scalar_check("punctures_vs_ends", std::abs(punctures - d.expected_ends), 0.0));
  if (c.verify) rep.append(verify::verify_mesh(transformed, c.hessian_tol, c.structure_tol));

  std::ostringstream csv;
  csv << "quantity,value\n";
  auto row = [&](const std::string& key, const std::string& value) { csv << key << ',' << value << '\n'; };
  row("a", format_double(p.a));
  row("b", format_double(p.b));
  row("c", format_double(p.c));
  row("k", to_string(p.k));
  row("zeros", std::to_string(d.punctures.zeros.size()));
  row("poles", std::to_string(d.punctures.poles.size()));
  row("punctures_per_strip", std::to_string(punctures));
  row("zeros_counted", std::to_string(d.zeros_counted));
  row("poles_counted", std::to_string(d.poles_counted));
  row("expected_ends", d.expected_ends >= 0 ? std::to_string(d.expected_ends) : "");
  row("nodal_curves", std::to_string(d.nodal_curves));
  row("singular_curves", std::to_string(d.singular_curves));
  row("nodal_hausdorff", format_double(d.nodal_hausdorff));
  row("nodal_tolerance", format_double(d.nodal_tolerance));
  if (d.translation) {
    row("translation_x", format_double((*d.translation)[0]));
    row("translation_y", format_double((*d.translation)[1]));
    row("translation_u", format_double((*d.translation)[2]));
    row("translation_std", format_double(d.translation_std));
  }
  row("product_identity", format_double(d.product.max_residual));
  row("g_imag", format_double(d.g.max_imag));
  row("g_component_gap", format_double(d.g.max_component_gap));
  row("g_formula_gap", format_double(d.g.max_formula_gap));
  io::write_atomic(dir / "diagnostics.csv", csv.str());

  std::ostringstream txt;
  txt << "helicoidal transform a=" << format_double(p.a) << " b=" << format_double(p.b)
      << " c=" << format_double(p.c) << " k=" << to_string(p.k) << '\n';
  txt << "punctures per strip: " << punctures << " (" << d.punctures.zeros.size() << " zeros, "
      << d.punctures.poles.size() << " poles)\n";
  for (const auto& note : d.notices) txt << "note: " << note << '\n';
  txt << rep.to_text();
  io::write_atomic(dir / "diagnostics.txt", txt.str());
  out << "wrote " << (dir / "diagnostics.csv").string() << '\n' << "wrote " << (dir / "diagnostics.txt").string() << '\n';
  return finish(rep, c, out);
}

int run_cauchy(const RunConfig& c, std::ostream& out) {
  const auto file = cauchy::load_curve_file(c.data);
  const io::Format fmt = output_format(c, io::Format::obj);
  verify::VerificationReport rep;
  if (file.pair) {
    const auto res = cauchy::solve_bjorling(*file.pair, c.strip, c.grid.n1, c.grid.n2);
    list_written(io::export_mesh(res.mesh, fmt, c.out), out);
    rep.checks.push_back(scalar_check("curve", res.curve_residual, res.tolerance));
    rep.checks.push_back(scalar_check("conormal_along_curve", res.conormal_residual, res.tolerance));
    if (c.verify) rep.append(verify::verify_mesh(res.mesh, c.hessian_tol, c.structure_tol));
  } else if (file.characteristic) {
    DomainSpec dom = DomainSpec::rectangle(file.u_min, file.u_max, file.v_min, file.v_max, c.grid.n1, c.grid.n2);
    dom.kind = DomainKind::asymptotic;
    const auto mesh = cauchy::build_characteristic_family(*file.characteristic, dom);
    list_written(io::export_mesh(mesh, fmt, c.out), out);
    if (c.verify) rep.append(verify::structure_residuals(mesh, c.structure_tol));
  } else {
    throw InvalidParameter(c.data + " has neither [alpha]/[U] nor [a_curve]/[b_curve] sections");
  }
  return finish(rep, c, out);
}

int run_verify(const RunConfig& c, std::ostream& out) {
  const auto mesh = io::load_mesh(c.in);
  return finish(verify::verify_mesh(mesh, c.hessian_tol, c.structure_tol), c, out);
}

int run_export(const RunConfig& c, std::ostream& out) {
  const auto mesh = io::load_mesh(c.in);
  list_written(io::export_mesh(mesh, output_format(c, io::Format::obj), c.out), out);
  return 0;
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Improper affine maps: build, transform, verify and export surface meshes", "ias"};
  app.require_subcommand(1);
  app.set_config("--config", "", "INI file with one section per subcommand; flags win over the file");
  app.allow_config_extras(CLI::config_extras_mode::error);

  RawOptions o;
  auto common = [&](CLI::App* sub) {
    sub->add_option("--hessian-tol", o.hessian_tol, "Hessian residual tolerance");
    sub->add_option("--structure-tol", o.structure_tol, "structure residual tolerance");
    sub->add_option("--report", o.report, "verification report (.csv or text)");
    sub->allow_config_extras(CLI::config_extras_mode::error);
  };
  auto meshing = [&](CLI::App* sub) {
    sub->add_option("--grid", o.grid, "samples NxM")->capture_default_str();
    sub->add_option("--format", o.format, "obj, ply or csv (default from the extension)");
    sub->add_flag("--verify", o.verify, "run the verification checks");
    common(sub);
  };

  auto* gallery = app.add_subcommand("gallery", "build a standard example");
  gallery->add_option("--name", o.name, "example name")->required();
  gallery->add_option("--r", o.r, "radius");
  gallery->add_option("--sign", o.sign, "+1 or -1");
  gallery->add_option("--a", o.ga, "C_eps literal");
  gallery->add_option("--b", o.gb, "C_eps literal");
  gallery->add_option("--c", o.gc, "C_eps literal");
  gallery->add_option("--k", o.gk, "C_eps literal");
  gallery->add_option("--eps", o.eps, "+1 or -1");
  gallery->add_option("--out", o.out, "output mesh")->required();
  meshing(gallery);

  auto* transform = app.add_subcommand("transform", "Riccati transform of helicoidal data");
  transform->add_option("--a", o.a, "helicoidal scale (default 1)");
  transform->add_option("--c", o.c, "Riccati constant");
  transform->add_option("--b", o.b, "b = sqrt(1 + 4 a^2 c)");
  transform->add_option("--n", o.n, "b = n/m");
  transform->add_option("--m", o.m, "b = n/m");
  transform->add_option("--k", o.k, "C_eps literal")->capture_default_str();
  transform->add_option("--out", o.out, "output directory")->required();
  meshing(transform);

  auto* cauchy = app.add_subcommand("cauchy", "solve the Cauchy problem for a curve file");
  cauchy->add_option("--data", o.data, "curve data file")->required();
  cauchy->add_option("--strip", o.strip, "half width T of the strip |t| <= T")->capture_default_str();
  cauchy->add_option("--out", o.out, "output mesh")->required();
  meshing(cauchy);

  auto* verify = app.add_subcommand("verify", "re-run verification on a stored CSV mesh");
  verify->add_option("--in", o.in, "mesh CSV")->required();
  common(verify);

  auto* exporter = app.add_subcommand("export", "convert a stored CSV mesh");
  exporter->add_option("--in", o.in, "mesh CSV")->required();
  exporter->add_option("--out", o.out, "output mesh")->required();
  exporter->add_option("--format", o.format, "obj, ply or csv (default from the extension)");

  CLI::App* active = &app;
  try {
    app.parse(argc, argv);
    active = app.get_subcommands().front();
    const RunConfig c = validate(active->get_name(), o);
    if (c.command == "gallery") return run_gallery(c, out);
    if (c.command == "transform") return run_transform(c, out);
    if (c.command == "cauchy") return run_cauchy(c, out);
    if (c.command == "verify") return run_verify(c, out);
    return run_export(c, out);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n\n" << app.help();
    return 2;
  } catch (const InputError& e) {
    err << "error: " << e.what() << "\n\n" << active->help();
    return 2;
  } catch (const NumericalError& e) {
    err << "numerical error: " << e.what() << '\n';
    return 3;
  } catch (const fs::filesystem_error& e) {
    err << "error: " << e.what() << '\n';
    return 2;
  }
}

}  // namespace ias::cli
