// Command-line surface: construction, transforms, pairing, verification,
// point-set diagnostics and almost-period scans over the shared document
// format.  Output is deterministic: canonical ordering and fixed 17-digit
// float formatting.
//
// Exit codes: 0 success, 2 verification/tolerance failure, 3 parse or
// configuration error.

#include "qcomb/document.hpp"
#include "qcomb/gallery.hpp"
#include "qcomb/pointset.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <fstream>
#include <iostream>
#include <functional>
#include <map>
#include <optional>
#include <sstream>

namespace {

using namespace qcomb;

constexpr int kExitOk = 0;
constexpr int kExitVerification = 2;
constexpr int kExitParse = 3;

struct ToolError : std::runtime_error {
  int code;
  ToolError(int c, const std::string& msg) : std::runtime_error(msg), code(c) {}
};

std::string read_input(const std::string& path) {
  if (path.empty() || path == "-") {
    std::ostringstream ss;
    ss << std::cin.rdbuf();
    return ss.str();
  }
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ToolError(kExitParse, "cannot open input file '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_output(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ToolError(kExitParse, "cannot open output file '" + path + "'");
  out << text;
}

std::vector<std::string> split_list(const std::string& text) {
  std::vector<std::string> parts;
  std::string cur;
  for (char c : text) {
    if (c == ',') {
      parts.push_back(cur);
      cur.clear();
    } else {
      cur.push_back(c);
    }
  }
  parts.push_back(cur);
  return parts;
}

std::vector<double> parse_double_list(const std::string& text) {
  std::vector<double> out;
  for (const auto& p : split_list(text)) out.push_back(parse_double(p));
  return out;
}

std::string format_window(const WindowedDistribution& w) {
  std::ostringstream out;
  out << "# center";
  for (double c : w.center) out << ' ' << format_double(c);
  out << " radius " << format_double(w.radius) << "\n";
  out << "# columns: point[" << w.center.size() << "] k re im\n";
  for (const auto& p : w.points) {
    for (const auto& [k, c] : p.coeffs) {
      for (double x : p.point) out << format_double(x) << ' ';
      for (size_t i = 0; i < k.size(); ++i) out << (i ? "," : "") << k[i];
      out << ' ' << format_double(c.real()) << ' ' << format_double(c.imag()) << "\n";
    }
  }
  return out.str();
}

// window a parsed comb with flag-supplied center/radius strings
WindowedDistribution window_anycomb(const doc::AnyComb& comb, const std::string& center_str,
                                    const std::string& radius_str) {
  return std::visit(
      [&](const auto& c) {
        using S = typename std::decay_t<decltype(c)>::scalar_type;
        Vec<S> center(c.dim, S(0));
        if (!center_str.empty()) {
          auto parts = split_list(center_str);
          if (static_cast<int>(parts.size()) != c.dim)
            throw ToolError(kExitParse, "--center needs " + std::to_string(c.dim) + " entries");
          for (int i = 0; i < c.dim; ++i) center[i] = parse_scalar<S>(parts[i]);
        }
        S radius = parse_scalar<S>(radius_str);
        return evaluate_window(c, center, radius);
      },
      comb.value);
}

TestFunction default_probe(int dim) { return TestFunction::gaussian(dim); }

int run(int argc, char** argv) {
  CLI::App app{"generalized lattice Dirac combs: exact Fourier transforms,"
               " diagnostics, and verification"};
  app.require_subcommand(1);
  std::uint64_t seed = 12345;
  int threads = 1;
  app.add_option("--seed", seed, "seed for randomized probe sets");
  app.add_option("--threads", threads, "worker thread bound for scans");

  // comb eval/ft/pair
  auto* comb_cmd = app.add_subcommand("comb", "operate on comb documents");
  comb_cmd->require_subcommand(1);
  std::string in_path, out_path, testfn_path, center_str, radius_str("8");
  double tol = 1e-10;

  auto* eval_cmd = comb_cmd->add_subcommand("eval", "windowed realization as columnar text");
  eval_cmd->add_option("--in", in_path, "comb document (default stdin)");
  eval_cmd->add_option("--center", center_str, "window center, comma-separated");
  eval_cmd->add_option("--radius", radius_str, "window radius")->required();
  eval_cmd->callback([&] {
    doc::AnyComb comb = doc::parse_comb(read_input(in_path), in_path.empty() ? "<stdin>" : in_path);
    write_output(out_path, format_window(window_anycomb(comb, center_str, radius_str)));
  });

  auto* ft_cmd = comb_cmd->add_subcommand("ft", "Fourier transform of a comb document");
  ft_cmd->add_option("--in", in_path, "comb document (default stdin)");
  ft_cmd->add_option("--out", out_path, "output path (default stdout)");
  ft_cmd->callback([&] {
    doc::AnyComb comb = doc::parse_comb(read_input(in_path), in_path.empty() ? "<stdin>" : in_path);
    doc::AnyComb out;
    out.regime = comb.regime;
    std::visit([&](const auto& c) { out.value = distribution_ft(c); }, comb.value);
    write_output(out_path, doc::serialize_comb(out));
  });

  bool radius_given = false;
  auto* pair_cmd = comb_cmd->add_subcommand("pair", "pair a comb against a test function");
  pair_cmd->add_option("--in", in_path, "comb document (default stdin)");
  pair_cmd->add_option("--testfn", testfn_path, "test function document")->required();
  auto* ropt = pair_cmd->add_option("--radius", radius_str, "truncation radius (default: auto)");
  pair_cmd->add_option("--tol", tol, "required certified tail bound");
  pair_cmd->callback([&] {
    radius_given = ropt->count() > 0;
    doc::AnyComb comb = doc::parse_comb(read_input(in_path), in_path.empty() ? "<stdin>" : in_path);
    TestFunction phi = doc::parse_testfn(read_input(testfn_path), testfn_path);
    PairingResult res = std::visit(
        [&](const auto& c) {
          using S = typename std::decay_t<decltype(c)>::scalar_type;
          S radius = radius_given ? parse_scalar<S>(radius_str)
                                  : select_pairing_radius(c, phi, tol);
          return pair(c, phi, radius);
        },
        comb.value);
    std::ostringstream out;
    out << "value_re " << format_double(res.value.real()) << "\n";
    out << "value_im " << format_double(res.value.imag()) << "\n";
    out << "tail_bound " << format_double(res.tail_bound) << "\n";
    write_output(out_path, out.str());
    if (res.tail_bound > tol)
      throw ToolError(kExitVerification, "certified tail bound exceeds --tol");
  });

  // verify poisson
  auto* verify_cmd = app.add_subcommand("verify", "verification reports");
  verify_cmd->require_subcommand(1);
  int probe_count = 10;
  auto* poisson_cmd = verify_cmd->add_subcommand(
      "poisson", "check <f^, phi> = <f, phi^> over random probes");
  poisson_cmd->add_option("--in", in_path, "comb document (default stdin)");
  poisson_cmd->add_option("--probes", probe_count, "number of random probes");
  poisson_cmd->add_option("--tol", tol, "maximum allowed pairing defect");
  poisson_cmd->callback([&] {
    doc::AnyComb comb = doc::parse_comb(read_input(in_path), in_path.empty() ? "<stdin>" : in_path);
    PairingReport rep = std::visit(
        [&](const auto& c) {
          return verify_pairing(c, gallery::random_probes(seed, c.dim, probe_count), tol);
        },
        comb.value);
    std::ostringstream out;
    out << "probes " << rep.probes << "\n";
    out << "tol " << format_double(rep.tol) << "\n";
    out << "max_defect " << format_double(rep.max_defect) << "\n";
    out << "max_tail " << format_double(rep.max_tail) << "\n";
    out << "result " << (rep.pass ? "PASS" : "FAIL") << "\n";
    write_output(out_path, out.str());
    if (!rep.pass) throw ToolError(kExitVerification, "pairing defect exceeds tolerance");
  });

  // pointset diagnose
  auto* pointset_cmd = app.add_subcommand("pointset", "point-set diagnostics");
  pointset_cmd->require_subcommand(1);
  std::string radii_str("4,8,16");
  double p_c = 0.0, p_h = 0.0;
  bool p_given = false;
  auto* diag_cmd = pointset_cmd->add_subcommand("diagnose", "windowed discreteness report");
  diag_cmd->add_option("--in", in_path, "point list or comb document (default stdin)");
  diag_cmd->add_option("--radii", radii_str, "counting radii, comma-separated");
  diag_cmd->add_option("--center", center_str, "window center for comb inputs");
  auto* wopt = diag_cmd->add_option("--radius", radius_str, "window radius for comb inputs");
  auto* pcopt = diag_cmd->add_option("--pc", p_c, "p-discreteness constant c");
  diag_cmd->add_option("--ph", p_h, "p-discreteness exponent h");
  diag_cmd->callback([&] {
    std::string text = read_input(in_path);
    std::string source = in_path.empty() ? "<stdin>" : in_path;
    std::vector<double> radii = parse_double_list(radii_str);
    p_given = pcopt->count() > 0;
    pointset::Points pts;
    std::optional<WindowedDistribution> window;
    if (doc::sniff_type(text) == "comb") {
      doc::AnyComb comb = doc::parse_comb(text, source);
      if (wopt->count() == 0) radius_str = format_double(radii.empty() ? 16.0 : radii.back());
      window = window_anycomb(comb, center_str, radius_str);
      pts = pointset::window_points(*window);
    } else {
      pts = doc::parse_points(text, source);
    }
    std::optional<pointset::PDiscreteParams> params;
    if (p_given) params = pointset::PDiscreteParams{p_c, p_h};
    pointset::DiagnosticsReport rep = pointset::diagnose(pts, radii, params);

    nlohmann::ordered_json j;
    j["points"] = rep.point_count;
    j["window"] = "results describe the supplied window only";
    if (rep.separating) j["separating_constant"] = format_double(*rep.separating);
    if (rep.p_discrete) {
      j["p_discrete"]["holds"] = rep.p_discrete->holds;
      j["p_discrete"]["worst_ratio"] = format_double(rep.p_discrete->worst_ratio);
      j["p_discrete"]["witness"] = {rep.p_discrete->witness_a, rep.p_discrete->witness_b};
    }
    j["bounded_density"]["count"] = rep.density.count;
    j["bounded_density"]["exact"] = rep.density.exact;
    j["covering_radius"]["lower"] = format_double(rep.covering.lower);
    j["covering_radius"]["upper"] = format_double(rep.covering.upper);
    nlohmann::ordered_json counts = nlohmann::ordered_json::array();
    for (size_t i = 0; i < rep.counting.radii.size(); ++i)
      counts.push_back({{"r", format_double(rep.counting.radii[i])},
                        {"n", rep.counting.counts[i]}});
    j["counting"]["samples"] = counts;
    j["counting"]["annulus"] = rep.counting.annulus_counts;
    j["counting"]["slope"] = format_double(rep.counting.slope);
    if (rep.counting.measured_ratio) {
      j["counting"]["measured_ratio"] = format_double(*rep.counting.measured_ratio);
      j["counting"]["chain_bound_ratio"] = format_double(*rep.counting.chain_bound_ratio);
      j["counting"]["within_chain_bound"] = *rep.counting.within_chain_bound;
    }
    if (window) {
      pointset::CoefficientGrowth g = pointset::coefficient_growth(*window);
      nlohmann::ordered_json fits = nlohmann::ordered_json::array();
      for (const auto& fit : g.per_order)
        fits.push_back({{"k", fit.k},
                        {"exponent", format_double(fit.exponent)},
                        {"inf_ratio", format_double(fit.inf_ratio)},
                        {"sup_ratio", format_double(fit.sup_ratio)}});
      j["coefficient_growth"]["per_order"] = fits;
      j["coefficient_growth"]["inf_sup_ratio"] = format_double(g.inf_sup_ratio);
      j["coefficient_growth"]["sup_sup_ratio"] = format_double(g.sup_sup_ratio);
      j["coefficient_growth"]["inf_total_mass"] = format_double(g.inf_total_mass);
    }
    write_output(out_path, j.dump(2) + "\n");
  });

  // ap periods
  auto* ap_cmd = app.add_subcommand("ap", "almost periodicity tools");
  ap_cmd->require_subcommand(1);
  double eps = 0.1, range = 100.0, step = 0.01, probe_step = 0.1;
  int ap_probes = 2000;
  std::string direction_str;
  auto* periods_cmd = ap_cmd->add_subcommand("periods", "scan for epsilon-almost periods");
  periods_cmd->add_option("--in", in_path, "expsum or comb document (default stdin)");
  periods_cmd->add_option("--testfn", testfn_path, "probe for comb inputs (default gaussian)");
  periods_cmd->add_option("--eps", eps, "defect threshold")->required();
  periods_cmd->add_option("--range", range, "scan range [0, T]")->required();
  periods_cmd->add_option("--step", step, "scan step");
  periods_cmd->add_option("--probes", ap_probes, "probe grid size");
  periods_cmd->add_option("--probe-step", probe_step, "probe grid spacing");
  periods_cmd->add_option("--direction", direction_str,
                          "scan ray for dimension > 1, comma-separated (default e1)");
  periods_cmd->callback([&] {
    std::string text = read_input(in_path);
    std::string source = in_path.empty() ? "<stdin>" : in_path;
    std::vector<double> direction;
    if (!direction_str.empty()) direction = parse_double_list(direction_str);
    ap::AlmostPeriodReport rep;
    if (doc::sniff_type(text) == "comb") {
      doc::AnyComb comb = doc::parse_comb(text, source);
      TestFunction phi = testfn_path.empty() ? default_probe(comb.dim())
                                             : doc::parse_testfn(read_input(testfn_path),
                                                                 testfn_path);
      rep = std::visit(
          [&](const auto& c) {
            return ap::check_ap_distribution(c, phi, eps, range, step, ap_probes, probe_step,
                                             direction, threads);
          },
          comb.value);
    } else {
      ap::ExponentialSum g = doc::parse_expsum(text, source);
      rep = ap::find_almost_periods(g, eps, range, step, ap_probes, probe_step, direction,
                                    threads);
    }
    std::ostringstream out;
    out << "# eps " << format_double(rep.eps) << " range " << format_double(rep.t_max)
        << " step " << format_double(rep.scan_step) << "\n";
    out << "# probe_count " << rep.probe_count << " probe_step "
        << format_double(rep.probe_step) << "\n";
    out << "# grid sup underestimates the true sup; results are empirical\n";
    out << "# found " << rep.taus.size() << " max_gap " << format_double(rep.max_gap) << "\n";
    out << "# columns: tau defect\n";
    for (size_t i = 0; i < rep.taus.size(); ++i)
      out << format_double(rep.taus[i]) << ' ' << format_double(rep.defects[i]) << "\n";
    write_output(out_path, out.str());
  });

  // gallery
  auto* gallery_cmd = app.add_subcommand("gallery", "named constructions");
  std::string gallery_name;
  int dim = 1;
  std::string gen_str;
  gallery_cmd->add_option("name", gallery_name,
                          "zd | lattice | theorem10 | theorem11 | counterexample:J=8")
      ->required();
  gallery_cmd->add_option("--dim", dim, "dimension for zd/theorem forms");
  gallery_cmd->add_option("--gen", gen_str, "generator rows 'a,b;c,d' for lattice");
  gallery_cmd->add_option("--out", out_path, "output path (default stdout)");
  gallery_cmd->callback([&] {
    std::string base = gallery_name;
    std::map<std::string, std::string> opts;
    auto colon = base.find(':');
    if (colon != std::string::npos) {
      std::string rest = base.substr(colon + 1);
      base = base.substr(0, colon);
      for (const auto& kv : split_list(rest)) {
        auto eq = kv.find('=');
        if (eq == std::string::npos)
          throw ToolError(kExitParse, "gallery: malformed option '" + kv + "'");
        opts[kv.substr(0, eq)] = kv.substr(eq + 1);
      }
    }
    doc::AnyComb out;
    if (base == "zd") {
      out.regime = Regime::exact;
      out.value = gallery::integer_comb(dim);
    } else if (base == "lattice") {
      if (gen_str.empty()) throw ToolError(kExitParse, "gallery lattice requires --gen");
      std::vector<std::string> rows;
      std::string cur;
      for (char c : gen_str) {
        if (c == ';') {
          rows.push_back(cur);
          cur.clear();
        } else {
          cur.push_back(c);
        }
      }
      rows.push_back(cur);
      int d = static_cast<int>(rows.size());
      SquareMatrix<Rational> t(d);
      for (int r = 0; r < d; ++r) {
        auto cells = split_list(rows[r]);
        if (static_cast<int>(cells.size()) != d)
          throw ToolError(kExitParse, "gallery lattice: generator must be square");
        for (int c = 0; c < d; ++c) t(r, c) = parse_rational(cells[c]);
      }
      out.regime = Regime::exact;
      out.value = gallery::lattice_comb(t);
    } else if (base == "theorem10") {
      out.regime = Regime::exact;
      out.value = gallery::theorem10_sample(seed, dim);
    } else if (base == "theorem11") {
      out.regime = Regime::exact;
      out.value = gallery::theorem11_sample(seed, dim);
    } else if (base == "counterexample") {
      int J = opts.count("J") ? std::stoi(opts["J"]) : 8;
      out.regime = Regime::floating;
      out.value = gallery::counterexample(J);
    } else {
      throw ToolError(kExitParse, "gallery: unknown name '" + base + "'");
    }
    write_output(out_path, doc::serialize_comb(out));
  });

  // let --seed/--threads appear after the subcommand name
  std::function<void(CLI::App*)> enable_fallthrough = [&](CLI::App* cmd) {
    cmd->fallthrough(true);
    for (auto* sub : cmd->get_subcommands({})) enable_fallthrough(sub);
  };
  for (auto* sub : app.get_subcommands({})) enable_fallthrough(sub);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? 0 : kExitParse;
  }
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  try {
    return run(argc, argv);
  } catch (const ToolError& e) {
    std::cerr << "qcomb: " << e.what() << "\n";
    return e.code;
  } catch (const qcomb::doc::ParseError& e) {
    std::cerr << "qcomb: " << e.what() << "\n";
    return kExitParse;
  } catch (const std::invalid_argument& e) {
    std::cerr << "qcomb: " << e.what() << "\n";
    return kExitParse;
  } catch (const std::exception& e) {
    std::cerr << "qcomb: " << e.what() << "\n";
    return kExitVerification;
  }
}
