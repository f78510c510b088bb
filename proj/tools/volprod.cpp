// volprod: polar bodies, Santalo points, theorem suites, sweeps and exports
// for convex polygons.
//
// Exit codes: 0 all checks pass, 1 a verdict failed or a solver did not
// converge, 2 usage, input or I/O error.

#include <cmath>
#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <iostream>
#include <iterator>
#include <numbers>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "volprod/volprod.hpp"

namespace {

using namespace volprod;

constexpr int kOk = 0;
constexpr int kFail = 1;
constexpr int kUsage = 2;

struct Options {
  std::string input;
  std::string theorem = "t1";
  std::uint64_t seed = 1;
  std::size_t count = 100;
  std::optional<int> n;
  std::optional<double> eps;
  std::optional<double> tol;
  std::string out;
  std::string format;
  std::string kind = "example1";
  bool polar_overlay = false;
};

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

std::string read_input(const std::string& path) {
  if (path.empty() || path == "-") {
    return std::string(std::istreambuf_iterator<char>(std::cin), std::istreambuf_iterator<char>());
  }
  return read_text(path);
}

void emit(const Options& o, const std::string& text) {
  if (o.out.empty() || o.out == "-") {
    std::cout << text;
    std::cout.flush();
  } else {
    write_text(o.out, text);
  }
}

std::string format_or(const Options& o, const std::string& fallback, std::initializer_list<const char*> allowed) {
  const std::string f = o.format.empty() ? fallback : o.format;
  for (const char* a : allowed)
    if (f == a) return f;
  throw UsageError("format '" + f + "' is not supported by this command");
}

ConvexPolygon body_of(const BodyDocument& doc) { return make_polygon(doc.vertices); }

// A body is a JSON document, or a vertex CSV when the text does not open
// with '{'.
BodyDocument read_body(const std::string& path) {
  const std::string text = read_input(path);
  const auto first = text.find_first_not_of(" \t\r\n");
  if (first != std::string::npos && text[first] != '{') {
    try {
      return make_document("", parse_vertex_csv(text));
    } catch (const DocumentError&) {
      throw DocumentError("input is neither a JSON body document nor a vertex CSV");
    }
  }
  return parse_body_document(text);
}

// The polar document holds (K - c)* + c with the same centre, so applying
// polar twice returns the original body.
int cmd_polar(const Options& o) {
  format_or(o, "json", {"json"});
  const BodyDocument doc = read_body(o.input);
  if (!doc.centre) throw UsageError("polar needs a \"centre\" in the body document");
  const CenteredBody b(body_of(doc), *doc.centre);
  const ConvexPolygon p = translate(polar(b), *doc.centre);
  emit(o, to_json(make_document(doc.name.empty() ? "polar" : doc.name + "-polar", p, *doc.centre)));
  return kOk;
}

int cmd_santalo(const Options& o) {
  format_or(o, "json", {"json"});
  const BodyDocument doc = read_body(o.input);
  const ConvexPolygon k = body_of(doc);
  const SantaloResult s = santalo_point(k, o.tol);
  const Point2 cp = centroid(polar(CenteredBody(k, s.point)));
  nlohmann::json j;
  j["name"] = doc.name;
  j["santalo_point"] = {s.point.x, s.point.y};
  j["polar_area"] = s.polar_area_at_min;
  j["gradient_norm"] = s.gradient_norm;
  j["tolerance"] = o.tol.value_or(default_santalo_tolerance(k));
  j["polar_centroid_norm"] = norm(cp);
  j["iterations"] = s.iterations;
  emit(o, j.dump(2) + "\n");
  return kOk;
}

Theorem theorem_of(const Options& o) {
  const auto th = theorem_from_string(o.theorem);
  if (!th) throw UsageError("unknown theorem '" + o.theorem + "'");
  return *th;
}

// Numeric cells become JSON numbers, empty cells null, anything else a string.
nlohmann::json json_cell(const std::string& cell) {
  if (cell.empty()) return nullptr;
  const char* begin = cell.c_str();
  char* end = nullptr;
  if (cell.find_first_not_of("0123456789") == std::string::npos) {
    const unsigned long long u = std::strtoull(begin, &end, 10);
    if (end == begin + cell.size()) return static_cast<std::uint64_t>(u);
  }
  const double v = std::strtod(begin, &end);
  if (end == begin + cell.size() && std::isfinite(v)) return v;
  return cell;
}

std::string rows_as_json(const std::vector<std::string>& header, const std::vector<ReportRow>& rows) {
  nlohmann::json arr = nlohmann::json::array();
  for (const auto& r : rows) {
    nlohmann::json obj;
    for (std::size_t i = 0; i < header.size(); ++i) obj[header[i]] = json_cell(r.cells[i]);
    arr.push_back(obj);
  }
  return arr.dump(2) + "\n";
}

int cmd_verify(const Options& o) {
  const Theorem th = theorem_of(o);
  const std::string fmt = format_or(o, "csv", {"csv", "json"});
  if (o.n && *o.n < 3) throw UsageError("--n must be at least 3");
  std::vector<SuiteItem> items;
  if (!o.input.empty()) {
    if (th == Theorem::T3) throw UsageError("t3 runs on generated configurations only");
    const BodyDocument doc = read_body(o.input);
    SuiteItem it{doc.name.empty() ? "input" : doc.name, 0, body_of(doc), doc.centre, {}, {}, o.n.value_or(0)};
    if (th == Theorem::T5 && !o.n) throw UsageError("t5 on an input body needs --n");
    items.push_back(std::move(it));
  } else {
    items = build_verify_suite(th, o.seed, o.count, o.n);
  }
  const auto header = verify_header(th);
  // An input body that violates the theorem's hypotheses is an input error;
  // generated suites record such items as failing rows.
  const auto rows = o.input.empty() ? run_verify_suite(th, items)
                                    : std::vector<ReportRow>{evaluate_item(th, 0, items.front())};
  emit(o, fmt == "csv" ? render_csv(header, rows) : rows_as_json(header, rows));
  for (const auto& r : rows)
    if (!r.pass) return kFail;
  return kOk;
}

std::string svg_products(int n_max) {
  // Relative excess eps of the bumped n-gon product over the bump size.
  SvgScene scene;
  const std::array<const char*, 4> colours{"#1f77b4", "#d62728", "#2ca02c", "#9467bd"};
  int c = 0;
  for (int n = 3; n <= n_max; ++n) {
    std::vector<Point2> curve;
    const double top = std::min(0.2, bumped_ngon_max_eps(n));
    for (int i = 0; i <= 64; ++i) {
      const double e = top * i / 64.0;
      const double p = volume_product(CenteredBody(bumped_ngon(n, e))).product;
      const double m = n * n * std::pow(std::sin(std::numbers::pi / n), 2);
      curve.push_back({20.0 * e, 20.0 * (p / m - 1.0)});
    }
    scene.polyline(curve, colours[c++ % colours.size()], "product-n" + std::to_string(n));
  }
  scene.polyline({{0, 0}, {4, 0}}, "black", "axis-eps");
  scene.polyline({{0, 0}, {0, 4}}, "black", "axis-excess");
  scene.text({2.0, -0.4}, "bump size");
  scene.text({-0.6, 2.0}, "excess");
  return scene.str();
}

std::string svg_bodies(int n) {
  SvgScene scene;
  const ConvexPolygon r = regular_ngon(n);
  scene.polygon(r, "#1f77b4", "none", "body");
  scene.polygon(polar(CenteredBody(r)), "#d62728", "none", "polar");
  scene.circle({0, 0}, 1.0, "#7f7f7f", "none", "unit-circle");
  scene.marker({0, 0}, "black", "centre");
  return scene.str();
}

int cmd_sweep(const Options& o) {
  if (o.kind == "example1") {
    const std::string fmt = format_or(o, "csv", {"csv", "svg"});
    const int n_max = o.n.value_or(12);
    if (n_max < 3) throw UsageError("--n must be at least 3");
    if (fmt == "svg") {
      emit(o, svg_products(std::min(n_max, 6)));
      return kOk;
    }
    std::vector<std::pair<int, double>> grid;
    for (int n = 3; n <= n_max; ++n)
      for (double e : o.eps ? std::vector<double>{*o.eps} : std::vector<double>(example1_grid.begin(), example1_grid.end()))
        grid.emplace_back(n, e);
    for (const auto& [n, e] : grid)
      if (!(e > 0.0) || !std::isfinite(e)) throw UsageError("grid eps must be positive");
    const auto pts = parallel_map<Example1Row>(grid.size(), [&](std::size_t i) {
      return example1_point(grid[i].first, grid[i].second);
    });
    std::vector<ReportRow> rows;
    bool ok = true;
    double worst = 0.0;
    for (const auto& p : pts) {
      ReportRow r;
      const double egg_dev =
          p.eggleston ? std::abs(*p.eggleston / *p.eggleston_closed_form - 1.0) : 0.0;
      r.pass = p.rel_dev <= 1e-9 && egg_dev <= 1e-9;
      r.cells = {std::to_string(p.n), format_double(p.eps), p.in_domain ? "1" : "0", format_double(p.product),
                 format_double(p.closed_form), format_double(p.rel_dev),
                 p.eggleston ? format_double(*p.eggleston) : "", p.eggleston ? format_double(*p.eggleston_closed_form) : "",
                 r.pass ? "1" : "0"};
      if (p.in_domain) {
        worst = std::max({worst, p.rel_dev, egg_dev});
        ok = ok && r.pass;
      }
      rows.push_back(std::move(r));
    }
    emit(o, render_csv({"n", "eps", "in_domain", "product", "closed_form", "rel_dev", "eggleston",
                        "eggleston_closed_form", "pass"},
                       rows));
    std::cerr << "max in-domain relative deviation " << format_double(worst) << "\n";
    return ok ? kOk : kFail;
  }
  if (o.kind == "slope") {
    format_or(o, "csv", {"csv"});
    std::vector<ReportRow> rows;
    bool ok = true;
    for (int n = 3; n <= o.n.value_or(12); ++n) {
      const double s = example1_slope(n);
      ReportRow r;
      r.pass = std::abs(s / example1_excess_derivative - 1.0) <= 0.05;
      ok = ok && r.pass;
      r.cells = {std::to_string(n), format_double(s), format_double(example1_excess_derivative), format_double(std::abs(s - 1.0)), r.pass ? "1" : "0"};
      rows.push_back(std::move(r));
    }
    emit(o, render_csv({"n", "fitted_slope", "derivative", "rel_err", "pass"}, rows));
    return ok ? kOk : kFail;
  }
  if (o.kind == "example2") {
    format_or(o, "csv", {"csv"});
    const int n = o.n.value_or(4);
    if (n < 3) throw UsageError("--n must be at least 3");
    const double hi = o.eps.value_or(1e-3);
    if (!(hi > 1e-6) || !(hi < 1.0)) throw UsageError("--eps must lie in (1e-6, 1)");
    const Example2Sweep s = example2_sweep(n, 1e-6, hi);
    std::vector<ReportRow> rows;
    bool ok = s.exponent >= 0.45 && s.exponent <= 0.55;
    for (std::size_t i = 0; i < s.eps.size(); ++i) {
      ReportRow r;
      r.pass = s.results[i].pass;
      ok = ok && r.pass;
      r.cells = {std::to_string(n), format_double(s.eps[i]), format_double(s.results[i].offset_needed),
                 format_double(s.results[i].bound), format_double(s.exponent), r.pass ? "1" : "0"};
      rows.push_back(std::move(r));
    }
    emit(o, render_csv({"n", "eps", "offset_needed", "bound", "fitted_exponent", "pass"}, rows));
    return ok ? kOk : kFail;
  }
  if (o.kind == "bodies") {
    format_or(o, "svg", {"svg"});
    const int n = o.n.value_or(6);
    if (n < 3) throw UsageError("--n must be at least 3");
    emit(o, svg_bodies(n));
    return kOk;
  }
  throw UsageError("unknown sweep kind '" + o.kind + "'");
}

int cmd_export(const Options& o) {
  const std::string fmt = format_or(o, "svg", {"svg", "csv", "json"});
  const BodyDocument doc = read_body(o.input);
  const ConvexPolygon k = body_of(doc);
  if (fmt == "csv") {
    emit(o, vertex_csv(k));
    return kOk;
  }
  if (fmt == "json") {
    emit(o, to_json(make_document(doc.name, k, doc.centre)));
    return kOk;
  }
  SvgScene scene;
  scene.polygon(k, "#1f77b4", "none", "body");
  const Point2 c = doc.centre ? *doc.centre : santalo_point(k).point;
  if (o.polar_overlay) scene.polygon(translate(polar(CenteredBody(k, c)), c), "#d62728", "none", "polar");
  scene.marker(c, "black", "centre");
  emit(o, scene.str());
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Volume products and stability checks for convex polygons"};
  app.require_subcommand(1);
  Options o;

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--out", o.out, "Output path (default stdout)");
    sub->add_option("--format", o.format, "Output format")->check(CLI::IsMember({"json", "csv", "svg"}));
  };
  auto add_input = [&](CLI::App* sub) { sub->add_option("input", o.input, "Body document (default stdin)"); };

  auto* polar_cmd = app.add_subcommand("polar", "Polar body about the document centre");
  add_input(polar_cmd);
  add_common(polar_cmd);

  auto* santalo_cmd = app.add_subcommand("santalo", "Santalo point of a body");
  add_input(santalo_cmd);
  add_common(santalo_cmd);
  santalo_cmd->add_option("--tol", o.tol, "Gradient-norm tolerance")->check(CLI::PositiveNumber);

  auto* verify_cmd = app.add_subcommand("verify", "Run a theorem suite");
  add_input(verify_cmd);
  add_common(verify_cmd);
  verify_cmd->add_option("--theorem", o.theorem, "t1, t2, t3, t5, t6 or l7")
      ->check(CLI::IsMember({"t1", "t2", "t3", "t5", "t6", "l7"}));
  verify_cmd->add_option("--seed", o.seed, "Base seed")->check(CLI::PositiveNumber);
  verify_cmd->add_option("--count", o.count, "Number of seeded random bodies")->check(CLI::NonNegativeNumber);
  verify_cmd->add_option("--n", o.n, "Symmetry order (t5) or polygon order (t3)");

  auto* sweep_cmd = app.add_subcommand("sweep", "Parameter sweeps");
  add_common(sweep_cmd);
  sweep_cmd->add_option("--kind", o.kind, "example1, slope, example2 or bodies")
      ->check(CLI::IsMember({"example1", "slope", "example2", "bodies"}));
  sweep_cmd->add_option("--n", o.n, "Largest n (example1, slope) or polygon order (example2, bodies)");
  sweep_cmd->add_option("--eps", o.eps, "Single bump size (example1) or largest eps (example2)");

  auto* export_cmd = app.add_subcommand("export", "Export a body as SVG, CSV or JSON");
  add_input(export_cmd);
  add_common(export_cmd);
  export_cmd->add_flag("--polar", o.polar_overlay, "Overlay the polar body");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? kOk : kUsage;
  }

  try {
    if (*polar_cmd) return cmd_polar(o);
    if (*santalo_cmd) return cmd_santalo(o);
    if (*verify_cmd) return cmd_verify(o);
    if (*sweep_cmd) return cmd_sweep(o);
    if (*export_cmd) return cmd_export(o);
  } catch (const CentreNotInterior& e) {
    std::cerr << "error: centre is not interior (edge " << e.edge() << "): " << e.what() << "\n";
    return kUsage;
  } catch (const NoConvergence& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kFail;
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const DocumentError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const GeometryError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  }
  return kUsage;
}
