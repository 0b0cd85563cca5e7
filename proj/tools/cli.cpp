#include "cli.hpp"

#include <CLI11.hpp>

#include <filesystem>
#include <fstream>
#include <iomanip>
#include <map>
#include <string>

#include "landweber/config.hpp"
#include "landweber/csv.hpp"
#include "landweber/deconv.hpp"
#include "landweber/experiments.hpp"
#include "landweber/schedule.hpp"
#include "landweber/solver.hpp"
#include "landweber/spectral.hpp"

namespace landweber::cli {

namespace fs = std::filesystem;
using config::Experiment;
using config::ExperimentConfig;

namespace {

std::string flag_name(const std::string& key) {
  std::string s = key;
  for (auto& c : s) {
    if (c == '_') c = '-';
  }
  return "--" + s;
}

void run_deconv(const ExperimentConfig& cfg, const fs::path& dir, std::ostream& out) {
  const deconv::Config c = config::to_deconv_config(cfg);
  const deconv::Result r = deconv::run_deconv(c);
  io::write_deconv_errors(dir / "error_curves.csv", r);
  io::write_deconv_snapshots(dir / "snapshots.csv", r, c.grid, static_cast<int>(cfg.integer("snapshot_decimate")));

  out << "spectrum of omega*G*G: [" << io::format_double(r.spectrum.min_eigenvalue) << ", "
      << io::format_double(r.spectrum.max_eigenvalue) << "]"
      << (r.spectrum.within ? " inside" : " NOT inside") << " the Chebyshev bounds [" << c.l_min << ", " << c.l_max
      << "]\n";
  for (std::size_t i = 0; i < r.labels.size(); ++i) {
    const int k = deconv::first_crossing(r.ks, r.errors[i], 0.1);
    out << std::left << std::setw(10) << r.labels[i] << " final error " << io::format_double(r.errors[i].back())
        << ", first k with error <= 0.1: " << (k < 0 ? std::string("not reached") : std::to_string(k)) << '\n';
  }
}

void run_lsq(const ExperimentConfig& cfg, const fs::path& dir, std::ostream& out) {
  const mimo::LsqConfig c = config::to_lsq_config(cfg);
  const mimo::LsqResult r = mimo::run_lsq_convergence(c);
  const mimo::ModelCurves model = mimo::lsq_model_curves(r, c.periods);
  io::write_lsq_curves(dir / "lsq_curves.csv", r, model);
  io::write_lsq_rates(dir / "lsq_rates.csv", r);
  out << "mean rho(A) = " << io::format_double(r.mean_rho) << '\n';
  for (std::size_t t = 0; t < r.mean_u.size(); ++t) {
    out << "mean U(" << t + 1 << ") = " << io::format_double(r.mean_u[t]) << '\n';
  }
  for (std::size_t i = 0; i < r.labels.size(); ++i) {
    out << std::left << std::setw(10) << r.labels[i] << " final mean squared error "
        << io::format_double(r.mean_sq_err[i].back()) << '\n';
  }
}

void run_ser(const ExperimentConfig& cfg, const fs::path& dir, std::ostream& out) {
  const mimo::SerConfig c = config::to_ser_config(cfg);
  const std::vector<mimo::SerPoint> points = mimo::run_ser_sweep(c);
  io::write_ser_table(dir / "ser.csv", points);
  out << std::left << std::setw(8) << "snr_db" << std::setw(12) << "detector" << std::setw(10) << "errors"
      << std::setw(12) << "symbols" << "ser\n";
  for (const auto& p : points) {
    out << std::left << std::setw(8) << io::format_double(p.snr_db) << std::setw(12) << p.detector << std::setw(10)
        << p.errors << std::setw(12) << p.symbols << io::format_double(p.ser()) << '\n';
  }
}

void run_bounds(const ExperimentConfig& cfg, const fs::path& dir, std::ostream& out) {
  const int period = static_cast<int>(cfg.integer("T"));
  if (period < 1) throw config::SchemaError("T must be >= 1", {"T"});
  SpectralBounds bounds = cfg.text("source") == "marchenko_pastur"
                              ? marchenko_pastur_bounds(static_cast<int>(cfg.integer("n")),
                                                        static_cast<int>(cfg.integer("m")), cfg.real("variance"),
                                                        cfg.real("floor_ratio"))
                                    .scaled(cfg.real("scale"))
                              : SpectralBounds(cfg.real("l_min"), cfg.real("l_max"), BoundsSource::user_supplied);
  const FactorOrder order = cfg.text("factor_order") == "reversed" ? FactorOrder::reversed : FactorOrder::natural;
  const InertialSchedule schedule = chebyshev_factors(bounds, period, order);
  const ConvergenceBound u = convergence_bound(bounds, period);

  out << "source = " << to_string(bounds.source()) << '\n';
  out << "l_min = " << io::format_double(bounds.l_min()) << '\n';
  out << "l_max = " << io::format_double(bounds.l_max()) << '\n';
  out << "omega_opt = " << io::format_double(omega_opt(bounds)) << '\n';
  out << "T = " << period << '\n';
  out << "U = " << io::format_double(u.value) << (u.degenerate ? " (degenerate: l_min == l_max)" : "") << '\n';
  for (int k = 0; k < period; ++k) {
    out << "factor[" << k << "] = " << io::format_double(schedule.factor(k)) << '\n';
  }

  io::CsvWriter factors(dir / "schedule.csv", {"k", "factor"});
  for (int k = 0; k < period; ++k) {
    factors.cell(k).cell(schedule.factor(k));
    factors.end_row();
  }
  io::CsvWriter curve(dir / "bound_vs_T.csv", {"T", "U"});
  for (int t = 1; t <= std::max(period, 16); ++t) {
    curve.cell(t).cell(convergence_bound(bounds, t).value);
    curve.end_row();
  }
}

void write_failure(const fs::path& dir, const std::string& message) {
  std::ofstream marker(dir / ".failed", std::ios::trunc);
  marker << message << '\n';
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Chebyshev-accelerated Landweber experiments"};
  app.require_subcommand(1);

  struct Sub {
    Experiment experiment;
    CLI::App* app;
    std::string config_path;
    std::map<std::string, std::string> flags;
  };
  std::vector<std::unique_ptr<Sub>> subs;
  const std::map<Experiment, std::string> descriptions{
      {Experiment::deconv, "deconvolution of a blurred signal on a periodic grid"},
      {Experiment::lsq, "least-squares convergence on random complex channels"},
      {Experiment::ser, "symbol error rate sweep of MMSE and projected Landweber detectors"},
      {Experiment::bounds, "Chebyshev factors and the U(T) bound for given spectral bounds"},
  };
  for (auto e : {Experiment::deconv, Experiment::lsq, Experiment::ser, Experiment::bounds}) {
    auto sub = std::make_unique<Sub>();
    sub->experiment = e;
    sub->app = app.add_subcommand(std::string(config::to_string(e)), descriptions.at(e));
    sub->app->add_option("--config", sub->config_path, "flat key = value config file (e.g. a manifest)");
    for (const auto& key : config::schema(e)) {
      auto* slot = &sub->flags[key.name];
      auto* opt = sub->app->add_option(flag_name(key.name), *slot, key.help + " [default: " + key.default_value + "]");
      opt->type_name(key.kind == config::ValueKind::choice ? "CHOICE" : "VALUE");
    }
    subs.push_back(std::move(sub));
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e, out, err) == 0 ? 0 : 1;
  }

  const Sub* chosen = nullptr;
  for (const auto& s : subs) {
    if (s->app->parsed()) chosen = s.get();
  }
  if (chosen == nullptr) return 1;

  ExperimentConfig cfg;
  try {
    config::KeyValues file;
    if (!chosen->config_path.empty()) file = config::read_config_file(chosen->config_path);
    config::KeyValues flags;
    for (const auto& [key, value] : chosen->flags) {
      if (chosen->app->count(flag_name(key)) > 0) flags[key] = value;
    }
    cfg = ExperimentConfig::resolve(chosen->experiment, file, flags);
  } catch (const config::SchemaError& e) {
    err << "configuration error: " << e.what() << '\n';
    return 2;
  }

  const fs::path dir = cfg.text("out");
  try {
    fs::create_directories(dir);
    fs::remove(dir / ".failed");
    config::write_manifest(dir / "manifest.txt", cfg);
  } catch (const std::exception& e) {
    err << "cannot prepare output directory " << dir << ": " << e.what() << '\n';
    return 3;
  }

  try {
    switch (cfg.experiment()) {
      case Experiment::deconv:
        run_deconv(cfg, dir, out);
        break;
      case Experiment::lsq:
        run_lsq(cfg, dir, out);
        break;
      case Experiment::ser:
        run_ser(cfg, dir, out);
        break;
      case Experiment::bounds:
        run_bounds(cfg, dir, out);
        break;
    }
  } catch (const config::SchemaError& e) {
    err << "configuration error: " << e.what() << '\n';
    write_failure(dir, e.what());
    return 2;
  } catch (const DivergenceError& e) {
    err << "solver diverged: " << e.what() << '\n';
    write_failure(dir, e.what());
    return 3;
  } catch (const std::exception& e) {
    err << "run failed: " << e.what() << '\n';
    write_failure(dir, e.what());
    return 3;
  }
  return 0;
}

}  // namespace landweber::cli
