#include <algorithm>
#include <array>
#include <chrono>
#include <cmath>
#include <cstddef>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "tailwave/analysis.hpp"
#include "tailwave/config.hpp"
#include "tailwave/constants.hpp"
#include "tailwave/errors.hpp"
#include "tailwave/evolve.hpp"
#include "tailwave/greenfn.hpp"
#include "tailwave/io.hpp"
#include "tailwave/linear.hpp"
#include "tailwave/version.hpp"

namespace fs = std::filesystem;
namespace tw = tailwave;

namespace {

struct Artifacts {
  fs::path dir;
  std::vector<std::pair<std::string, std::size_t>> files;  // name, data rows

  std::string path(const std::string& name) const { return (dir / name).string(); }
  void note(const std::string& name, std::size_t rows) { files.emplace_back(name, rows); }
};

std::vector<std::string> header(std::initializer_list<const char*> names) {
  return {names.begin(), names.end()};
}

// Evaluate the free field only where it can be nonzero; u0 lives in the
// outgoing band |t-r| < R plus the startup ball t+r < R.
double u0_or_zero(const tw::HProfile& h, double R, double t, double r) {
  if (std::abs(t - r) < R || t + r < R) return tw::u0_eval(h, t, r);
  return 0.0;
}

void cmd_solve(const tw::RunConfig& cfg, Artifacts& art) {
  const tw::DataProfiles data = tw::make_data(cfg);
  const tw::HProfile h = tw::build_h(data.f, data.g);
  for (std::size_t i = 0; i < cfg.epsilons.size(); ++i) {
    const double eps = cfg.epsilons[i];
    tw::EvolveOptions opts;
    opts.store_lattice = false;
    opts.probe_radii = cfg.probe_radii;
    const tw::EvolveResult full = tw::evolve_full(cfg, eps, opts);
    const tw::EvolveResult rem = tw::evolve_remainder(cfg, h, eps, opts);

    const std::string name = "worldline_e" + std::to_string(i) + ".csv";
    tw::CsvWriter csv(art.path(name), header({"t", "r", "u", "w"}));
    for (std::size_t k = 0; k < full.worldlines.size(); ++k) {
      const tw::Worldline& lu = full.worldlines[k];
      const tw::Worldline& lw = rem.worldlines[k];
      for (std::size_t s = 0; s < lu.t.size(); ++s) {
        const double row[] = {lu.t[s], lu.r, lu.u[s], lw.u[s]};
        csv.row(row);
      }
    }
    csv.close();
    art.note(name, csv.rows());
  }
}

void cmd_predict(const tw::RunConfig& cfg, Artifacts& art) {
  const tw::DataProfiles data = tw::make_data(cfg);
  const tw::HProfile h = tw::build_h(data.f, data.g);

  {
    tw::CsvWriter csv(art.path("h.csv"), header({"x", "h", "h_prime"}));
    for (std::size_t n = 0; n < h.size(); ++n) {
      const double row[] = {h.x0() + static_cast<double>(n) * h.dx, h.h[n], h.h_prime[n]};
      csv.row(row);
    }
    csv.close();
    art.note("h.csv", csv.rows());
  }

  tw::CsvWriter csv(art.path("constants.csv"),
                    header({"p", "k", "epsilon", "a", "C_p", "A_p", "lambda", "lambda0", "b"}));
  bool degenerate = false;
  for (double eps : cfg.epsilons) {
    const tw::AsymptoticModel m = tw::build_model(h, cfg.nl, eps, cfg.a);
    degenerate = m.degenerate_tail();
    const double row[] = {m.p, m.k, m.epsilon, m.a, m.C_p, m.A_p, m.lambda, m.lambda0, m.b()};
    csv.row(row);
  }
  csv.close();
  art.note("constants.csv", csv.rows());
  if (degenerate)
    std::cout << "note: C_p vanishes for this data family; the leading tail "
                 "degenerates and tail fits will refuse to run\n";
}

void cmd_compare(const tw::RunConfig& cfg, Artifacts& art) {
  for (double eps : cfg.epsilons)
    if (!(eps > 0.0)) throw tw::ConfigError("compare: epsilon values must be positive");

  const tw::DataProfiles data = tw::make_data(cfg);
  const tw::HProfile h = tw::build_h(data.f, data.g);
  const double q = cfg.nl.p - 1.0;
  const double R = cfg.support_radius;
  constexpr std::array<std::array<double, 2>, 3> kDeficitProbes{
      {{5.0, 1.0}, {10.0, 2.0}, {20.0, 1.0}}};

  tw::CsvWriter dcsv(art.path("deficit.csv"),
                     header({"epsilon", "a", "probe_t", "probe_r", "deficit", "weight"}));

  for (std::size_t i = 0; i < cfg.epsilons.size(); ++i) {
    const double eps = cfg.epsilons[i];
    const tw::AsymptoticModel m = tw::build_model(h, cfg.nl, eps, cfg.a);
    const double tau0 = std::pow(eps, -cfg.a);
    const double epsp = std::pow(eps, cfg.nl.p);

    // Thin the lattice to a plot-sized table; strides are pure functions of
    // the config, so reruns are byte-identical.
    const std::size_t tstride = std::max<std::size_t>(1, cfg.n_steps() / 160);
    const std::size_t rstride = std::max<std::size_t>(1, cfg.n_cells() / 160);

    const std::string name = "residual_e" + std::to_string(i) + ".csv";
    tw::CsvWriter csv(art.path(name),
                      header({"t", "r", "u", "prediction", "residual", "weight"}));
    std::size_t step = 0;
    tw::EvolveOptions opts;
    opts.store_lattice = false;
    opts.on_slice = [&](double t, std::span<const double> w) {
      if (step++ % tstride != 0) return;
      for (std::size_t j = 0; j < w.size(); j += rstride) {
        const double r = static_cast<double>(j) * cfg.dr;
        if (!(t - r > tau0)) continue;
        const double u0v = u0_or_zero(h, R, t, r);
        const double u = eps * u0v + w[j];
        const double pred = eps * u0v + epsp * tw::W_eval(m, t, r);
        const double row[] = {t, r, u, pred, u - pred, tw::weight(t, r, q)};
        csv.row(row);
      }
    };
    tw::evolve_remainder(cfg, h, eps, opts);
    csv.close();
    art.note(name, csv.rows());

    tw::DuhamelOptions dopt;
    dopt.ds = dopt.drho = std::pow(eps, cfg.a) * R / 16.0;
    for (const auto& pr : kDeficitProbes) {
      const double d = tw::shell_deficit_at(m, h, eps, pr[0], pr[1], dopt);
      const double row[] = {eps, cfg.a, pr[0], pr[1], d, tw::weight(pr[0], pr[1], cfg.nl.p)};
      dcsv.row(row);
    }
  }
  dcsv.close();
  art.note("deficit.csv", dcsv.rows());
}

void cmd_scaling(const tw::RunConfig& cfg, Artifacts& art) {
  for (double eps : cfg.epsilons)
    if (!(eps > 0.0)) throw tw::ConfigError("scaling: epsilon values must be positive");

  const tw::DataProfiles data = tw::make_data(cfg);
  const tw::HProfile h = tw::build_h(data.f, data.g);
  const double q = cfg.nl.p - 1.0;
  const double R = cfg.support_radius;

  std::vector<double> vu, vw, vres;
  for (double eps : cfg.epsilons) {
    const tw::AsymptoticModel m = tw::build_model(h, cfg.nl, eps, cfg.a);
    const double tau0 = std::pow(eps, -cfg.a);
    const double epsp = std::pow(eps, cfg.nl.p);
    double mu = 0, mw = 0, mres = 0;
    tw::EvolveOptions opts;
    opts.store_lattice = false;
    opts.on_slice = [&](double t, std::span<const double> w) {
      for (std::size_t j = 0; j < w.size(); ++j) {
        const double r = static_cast<double>(j) * cfg.dr;
        const double wt = tw::weight(t, r, q);
        mw = std::max(mw, wt * std::abs(w[j]));
        const double u0v = u0_or_zero(h, R, t, r);
        mu = std::max(mu, wt * std::abs(w[j] + eps * u0v));
        if (t - r > tau0)
          mres = std::max(mres, wt * std::abs(w[j] - epsp * tw::W_eval(m, t, r)));
      }
    };
    tw::evolve_remainder(cfg, h, eps, opts);
    vu.push_back(mu);
    vw.push_back(mw);
    vres.push_back(mres);
  }

  const double su = tw::scaling_fit(cfg.epsilons, vu);
  const double sw = tw::scaling_fit(cfg.epsilons, vw);
  // The residual region t-r > eps^{-a} can fall outside the lattice; fit the
  // residual slope only when every sweep member saw it.
  const bool res_ok = std::all_of(vres.begin(), vres.end(), [](double v) { return v > 0.0; });
  const double sres = res_ok ? tw::scaling_fit(cfg.epsilons, vres) : 0.0;

  tw::CsvWriter csv(art.path("scaling.csv"),
                    header({"epsilon", "quantity_name", "value", "fitted_slope"}));
  auto block = [&](const char* qty, const std::vector<double>& vals, double slope) {
    for (std::size_t i = 0; i < cfg.epsilons.size(); ++i) {
      const std::string cells[] = {tw::format_g17(cfg.epsilons[i]), qty,
                                   tw::format_g17(vals[i]), tw::format_g17(slope)};
      csv.row_cells(cells);
    }
  };
  block("weighted_max_u", vu, su);
  block("weighted_max_w", vw, sw);
  if (res_ok) block("weighted_max_residual", vres, sres);
  csv.close();
  art.note("scaling.csv", csv.rows());
}

void cmd_convergence(const tw::RunConfig& cfg, Artifacts& art) {
  tw::CsvWriter csv(art.path("convergence.csv"),
                    header({"epsilon", "probe_t", "probe_r", "dr", "order"}));
  for (double eps : cfg.epsilons) {
    const double ord =
        tw::convergence_order(cfg, eps, cfg.probe_time(), cfg.conv_probe_r,
                              cfg.nonlinear ? tw::FieldKind::full : tw::FieldKind::linear);
    const double row[] = {eps, cfg.probe_time(), cfg.conv_probe_r, cfg.dr, ord};
    csv.row(row);
  }
  csv.close();
  art.note("convergence.csv", csv.rows());
}

// Entries from a previous manifest in the same directory, minus files this
// run rewrote or that no longer exist; keeps the file list closed when
// several commands share an output directory.
std::vector<std::pair<std::string, std::size_t>> carried_entries(const Artifacts& art) {
  std::vector<std::pair<std::string, std::size_t>> carried;
  std::ifstream in(art.dir / "manifest.json", std::ios::binary);
  if (!in.good()) return carried;
  try {
    const auto prev = nlohmann::json::parse(in);
    for (const auto& f : prev.at("files")) {
      const std::string name = f.at("path").get<std::string>();
      if (name == "manifest.json" || !fs::exists(art.dir / name)) continue;
      bool rewritten = false;
      for (const auto& [fresh, rows] : art.files) rewritten |= (fresh == name);
      if (!rewritten) carried.emplace_back(name, f.at("rows").get<std::size_t>());
    }
  } catch (const nlohmann::json::exception&) {
    carried.clear();  // unreadable leftover: list this run's files only
  }
  return carried;
}

void write_manifest(const tw::RunConfig& cfg, const std::string& command,
                    double wall_seconds, Artifacts& art) {
  const auto carried = carried_entries(art);
  nlohmann::ordered_json j;
  j["tool"] = "tailwave";
  j["version"] = tw::kVersion;
  j["command"] = command;
  nlohmann::ordered_json cj;
  for (const auto& [key, value] : tw::config_echo(cfg)) cj[key] = value;
  j["config"] = cj;
  j["grid"] = {{"dt", cfg.dt()},
               {"r_max", cfg.r_max()},
               {"n_cells", cfg.n_cells()},
               {"n_steps", cfg.n_steps()}};
  j["wall_seconds"] = wall_seconds;
  art.note("manifest.json", 0);
  nlohmann::ordered_json files = nlohmann::ordered_json::array();
  for (const auto& [name, rows] : carried)
    files.push_back({{"path", name}, {"rows", rows}});
  for (const auto& [name, rows] : art.files)
    files.push_back({{"path", name}, {"rows", rows}});
  j["files"] = files;
  std::ofstream out(art.dir / "manifest.json", std::ios::binary);
  out << j.dump(2) << '\n';
  if (!out.good()) throw tw::ConfigError("manifest write failed");
}

int run(int argc, char** argv) {
  CLI::App app{"tailwave: late-time tails of the semilinear wave equation"};
  app.require_subcommand(1);
  std::string config_path, out_dir;
  const std::pair<const char*, const char*> kCommands[] = {
      {"solve", "evolve u and the remainder w, write worldline CSVs"},
      {"predict", "write the h profile and the asymptotic constants"},
      {"compare", "field vs prediction residuals and shell deficits"},
      {"scaling", "epsilon sweep with fitted log-log slopes"},
      {"convergence", "Richardson ladder at the configured probe"}};
  for (const auto& [name, desc] : kCommands) {
    CLI::App* sc = app.add_subcommand(name, desc);
    sc->add_option("--config", config_path, "path to key=value config file")->required();
    sc->add_option("--out", out_dir, "override the configured output directory");
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);
    std::cerr << "error(config): " << e.what() << '\n';
    return 2;
  }

  tw::RunConfig cfg = tw::load_config(config_path);
  if (!out_dir.empty()) cfg.output_dir = out_dir;

  Artifacts art;
  art.dir = cfg.output_dir;
  fs::create_directories(art.dir);

  const std::string command = app.get_subcommands().front()->get_name();
  const auto t0 = std::chrono::steady_clock::now();
  if (command == "solve") cmd_solve(cfg, art);
  else if (command == "predict") cmd_predict(cfg, art);
  else if (command == "compare") cmd_compare(cfg, art);
  else if (command == "scaling") cmd_scaling(cfg, art);
  else cmd_convergence(cfg, art);
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();

  write_manifest(cfg, command, secs, art);
  std::cout << command << ": wrote " << art.files.size() << " files to "
            << art.dir.string() << '\n';
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  try {
    return run(argc, argv);
  } catch (const tw::ConfigError& e) {
    std::cerr << "error(config): " << e.what() << '\n';
    return 2;
  } catch (const tw::NumericalError& e) {
    std::cerr << "error(numerical): " << e.what() << '\n';
    return 3;
  } catch (const tw::AnalysisError& e) {
    std::cerr << "error(analysis): " << e.what() << '\n';
    return 4;
  } catch (const std::exception& e) {
    std::cerr << "error(internal): " << e.what() << '\n';
    return 1;
  }
}
