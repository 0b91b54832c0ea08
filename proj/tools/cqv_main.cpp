#include "cqv/cqv.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <cstdlib>
#include <fstream>
#include <filesystem>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

namespace {

std::vector<int> parse_colors(const std::string& s) {
  std::vector<int> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (!item.empty()) out.push_back(std::stoi(item));
  }
  return out;
}

std::string default_out_path(const std::string& name) {
  const char* dir = std::getenv("CQV_OUT_DIR");
  if (dir && *dir) return (std::filesystem::path(dir) / name).string();
  return name;
}

// Flat key=value config file support. The file's pairs are injected as
// --key=value tokens right after the subcommand, so explicit flags override
// file values (all options take the last occurrence).
std::vector<std::string> expand_config(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  std::string path;
  std::vector<std::string> rest;
  for (std::size_t i = 0; i < args.size(); ++i) {
    if (args[i] == "--config" && i + 1 < args.size()) {
      path = args[++i];
    } else if (args[i].rfind("--config=", 0) == 0) {
      path = args[i].substr(9);
    } else {
      rest.push_back(args[i]);
    }
  }
  if (path.empty()) return rest;
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot read config file " + path);
  std::vector<std::string> injected;
  std::string ln;
  while (std::getline(in, ln)) {
    auto first = ln.find_first_not_of(" \t\r");
    if (first == std::string::npos || ln[first] == '#') continue;
    auto last = ln.find_last_not_of(" \t\r");
    std::string kv = ln.substr(first, last - first + 1);
    auto eq = kv.find('=');
    if (eq == std::string::npos) throw std::invalid_argument("config line is not key=value: " + kv);
    std::string key = kv.substr(0, eq), val = kv.substr(eq + 1);
    if (val == "true")
      injected.push_back("--" + key);
    else if (val != "false")
      injected.push_back("--" + key + "=" + val);
  }
  std::vector<std::string> out;
  if (!rest.empty()) {
    out.push_back(rest.front());  // the subcommand
    out.insert(out.end(), injected.begin(), injected.end());
    out.insert(out.end(), rest.begin() + 1, rest.end());
  }
  return out;
}

struct CommonOpts {
  int n = 3, w = 1;
  std::string colors = "0";
  int trunc = 5, modes = 2, series_order = 0;
  bool rational = false;
  bool prime = false;
  std::uint64_t prime_mod = cqv::Fp::kDefaultModulus;
  std::uint64_t seed = 42;
  int points = 3;
};

void take_last(CLI::App* app) {
  for (auto* opt : app->get_options()) {
    if (opt->get_expected_min() > 0) opt->multi_option_policy(CLI::MultiOptionPolicy::TakeLast);
  }
}

void add_common(CLI::App* app, CommonOpts& o) {
  app->add_option("--n", o.n, "cyclic group order (>= 3)");
  app->add_option("--w", o.w, "framing size");
  app->add_option("--colors", o.colors, "comma-separated framing colors, one per component");
  app->add_option("--trunc", o.trunc, "box-count truncation N");
  app->add_option("--modes", o.modes, "mode window S (|s|,|t| <= S)");
  app->add_option("--series-order", o.series_order, "theta series order M (default 2S+2)");
  auto* rat = app->add_flag("--rational", o.rational, "use the arbitrary-precision rational backend");
  app->add_flag("--prime", o.prime, "use the prime-field backend (the default)")->excludes(rat);
  app->add_option("--prime-mod", o.prime_mod, "prime modulus for the prime backend (> 2^60)");
  app->add_option("--seed", o.seed, "master RNG seed");
  app->add_option("--points", o.points, "number of sampled parameter points");
}

cqv::ModelConfig make_config(const CommonOpts& o) {
  cqv::ModelConfig cfg{o.n, o.w, parse_colors(o.colors)};
  cfg.validate();
  return cfg;
}

const std::vector<cqv::ModelConfig>& acceptance_grid() {
  static const std::vector<cqv::ModelConfig> grid{
      {3, 1, {0}}, {3, 2, {0, 1}}, {4, 2, {0, 2}}, {5, 1, {3}}};
  return grid;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"cqv: localized Fock-space operators for the cyclic quiver and exact\n"
               "verification of the twisted toroidal relation presentation"};
  app.require_subcommand(1);

  // ---- verify ----
  auto* verify = app.add_subcommand("verify", "run verification suites and write a JSON report");
  CommonOpts vo;
  add_common(verify, vo);
  std::string suites_arg = "all";
  std::string out_path;
  int jobs = 1;
  bool timing = false;
  bool grid = false;
  verify->add_option("--suites", suites_arg,
                     "comma list of boundary,factors,currents,twisted,residue,structure,grading");
  verify->add_option("--out", out_path, "report path (default: $CQV_OUT_DIR/report.json)");
  verify->add_option("--jobs", jobs, "max parallel suite workers");
  verify->add_flag("--timing", timing, "include elapsed_ms in the report (breaks byte-stability)");
  verify->add_flag("--grid", grid, "run the standard four-config grid instead of --n/--w/--colors");

  // ---- dump ----
  auto* dump = app.add_subcommand("dump", "dump one operator matrix as JSON");
  CommonOpts dopts;
  add_common(dump, dopts);
  std::string kind_arg = "xplus";
  int dk = 0, ds = 0;
  bool dtwisted = false;
  std::string dump_out;
  dump->add_option("--kind", kind_arg, "xplus|xminus|eps|hplus|hminus");
  dump->add_option("--k", dk, "color index");
  dump->add_option("--s", ds, "mode index");
  dump->add_flag("--twisted", dtwisted, "apply the sign twists");
  dump->add_option("--out", dump_out, "output path (default stdout)");

  // ---- enumerate ----
  auto* enumerate = app.add_subcommand("enumerate", "fixed-point/tangent tables as CSV");
  CommonOpts eo;
  add_common(enumerate, eo);
  std::string enum_out;
  enumerate->add_option("--out", enum_out, "output path (default stdout)");

  for (auto* sub : {verify, dump, enumerate}) {
    std::string dummy;
    sub->add_option("--config", dummy, "flat key=value config file; flags override file values");
    take_last(sub);
  }

  try {
    std::vector<std::string> args = expand_config(argc, argv);
    std::reverse(args.begin(), args.end());  // CLI11 consumes from the back
    app.parse(std::move(args));
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  } catch (const std::invalid_argument& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return 2;
  }

  try {
    if (*verify) {
      cqv::RunConfig rc;
      rc.configs = grid ? acceptance_grid() : std::vector<cqv::ModelConfig>{make_config(vo)};
      rc.params.trunc = vo.trunc;
      rc.params.modes = vo.modes;
      rc.params.series_order = vo.series_order;
      rc.params.points = vo.points;
      rc.params.seed = vo.seed;
      rc.params.rational = vo.rational;
      rc.prime_backend = !vo.rational;
      rc.prime_modulus = vo.prime_mod;
      rc.jobs = jobs;
      if (suites_arg != "all") {
        std::stringstream ss(suites_arg);
        std::string item;
        while (std::getline(ss, item, ',')) {
          if (item.empty()) continue;
          const auto& names = cqv::all_suite_names();
          if (std::find(names.begin(), names.end(), item) == names.end()) {
            std::cerr << "unknown suite: " << item << "\n";
            return 2;
          }
          rc.suites.push_back(item);
        }
      }
      auto reports = cqv::run_all(rc);
      std::string path = out_path.empty() ? default_out_path("report.json") : out_path;
      cqv::Json j = cqv::report_json(rc, reports, timing);
      cqv::write_text_file(path, j.dump(2) + "\n");
      for (const auto& r : reports) {
        std::cerr << (r.pass() ? "[pass] " : "[FAIL] ") << r.name;
        if (!r.global)
          std::cerr << " (n=" << r.cfg.n << ",w=" << r.cfg.w << ")";
        std::cerr << " instances=" << r.instances << " elapsed_ms=" << r.elapsed_ms << "\n";
      }
      std::cerr << "report written to " << path << "\n";
      return cqv::all_pass(reports) ? 0 : 1;
    }

    if (*dump) {
      cqv::ModelConfig cfg = make_config(dopts);
      cqv::OpKind kind;
      if (kind_arg == "xplus") kind = cqv::OpKind::XPlus;
      else if (kind_arg == "xminus") kind = cqv::OpKind::XMinus;
      else if (kind_arg == "eps") kind = cqv::OpKind::Eps;
      else if (kind_arg == "hplus") kind = cqv::OpKind::HPlus;
      else if (kind_arg == "hminus") kind = cqv::OpKind::HMinus;
      else {
        std::cerr << "unknown kind: " << kind_arg << "\n";
        return 2;
      }
      cqv::Json j;
      int order = dopts.series_order > 0 ? dopts.series_order : 2 * dopts.modes + 2;
      if (std::abs(ds) > order) {
        std::cerr << "mode index exceeds the series order\n";
        return 2;
      }
      if (!dopts.rational) {
        cqv::Fp::set_modulus(dopts.prime_mod);
        auto pt = cqv::sample_point<cqv::Fp>(cfg, dopts.seed);
        cqv::FockEngine<cqv::Fp> eng(cfg, dopts.trunc, pt, order);
        j = cqv::dump_operator(eng, kind, dk, ds, dtwisted);
      } else {
        auto pt = cqv::sample_point<cqv::Rat>(cfg, dopts.seed);
        cqv::FockEngine<cqv::Rat> eng(cfg, dopts.trunc, pt, order);
        j = cqv::dump_operator(eng, kind, dk, ds, dtwisted);
      }
      std::string body = j.dump(2) + "\n";
      if (dump_out.empty())
        std::cout << body;
      else
        cqv::write_text_file(dump_out, body);
      return 0;
    }

    if (*enumerate) {
      cqv::ModelConfig cfg = make_config(eo);
      std::string body = cqv::enumerate_csv(cfg, eo.trunc);
      if (enum_out.empty())
        std::cout << body;
      else
        cqv::write_text_file(enum_out, body);
      return 0;
    }
  } catch (const std::invalid_argument& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 2;
}
