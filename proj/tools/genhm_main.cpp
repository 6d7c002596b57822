// Command-line front end: every computation of the library exposed as a
// subcommand with deterministic, machine-readable output.
//
//   genhm kn --n 2 3 4            separatrix constants + bound, CSV/JSON
//   genhm coeffs --sector d1 ...  exact trans-series coefficients
//   genhm fit --sector c --n 3    large-order growth fit report (JSON)
//   genhm figure --id n2-match    plot-ready CSV datasets

#include <genhm/asymptotics.hpp>
#include <genhm/coeffs.hpp>
#include <genhm/inteq.hpp>
#include <genhm/io.hpp>
#include <genhm/ode.hpp>
#include <genhm/shooting.hpp>
#include <genhm/specfun.hpp>

#include <CLI11.hpp>
#include <json.hpp>

#include <fstream>
#include <future>
#include <iostream>
#include <sstream>
#include <vector>

namespace {

using genhm::PrecFloat;
using json = nlohmann::json;

constexpr int kExitUsage = 1;
constexpr int kExitQuality = 2;

struct RunConfig {
  int digits = 32;
  int print_digits = 10;
  double rel_tol = 1e-10;
  std::string format = "csv";
  std::string out_path;
};

json config_json(const RunConfig& cfg) {
  return json{{"digits", cfg.digits},
              {"print_digits", cfg.print_digits},
              {"rel_tol", cfg.rel_tol},
              {"out_format", cfg.format},
              {"out_path", cfg.out_path}};
}

void emit(const RunConfig& cfg, const std::string& text) {
  if (cfg.out_path.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream os(cfg.out_path, std::ios::binary);
  if (!os)
    throw genhm::Error("cannot open output file: " + cfg.out_path);
  os << text;
}

std::string fmt(const PrecFloat& v, const RunConfig& cfg) {
  return genhm::format_float(v, cfg.print_digits);
}

void add_common(CLI::App* cmd, RunConfig& cfg) {
  cmd->add_option("--digits", cfg.digits, "working precision (decimal digits)")
      ->envname("HM_DIGITS")
      ->check(CLI::Range(15, 200));
  cmd->add_option("--print-digits", cfg.print_digits,
                  "significant digits in printed numbers")
      ->check(CLI::Range(1, 64));
  cmd->add_option("--rel-tol", cfg.rel_tol, "quadrature relative tolerance");
  cmd->add_option("--format", cfg.format, "output format")
      ->check(CLI::IsMember({"csv", "json"}));
  cmd->add_option("--out,-o", cfg.out_path, "output file (figures: prefix)");
}

// ---------------------------------------------------------------- kn

int run_kn(const RunConfig& cfg, const std::vector<int>& ns, double k_tol,
           double x_plus, double x_minus) {
  genhm::ShootConfig sc;
  sc.ctx.digits = cfg.digits;
  sc.k_tol = PrecFloat(k_tol);
  sc.x_plus = PrecFloat(x_plus);
  sc.x_minus = PrecFloat(x_minus);
  sc.validate();

  std::vector<std::future<genhm::ScanRow>> jobs;
  jobs.reserve(ns.size());
  for (int n : ns)
    jobs.push_back(std::async(std::launch::async, [n, sc]() {
      genhm::ScanRow row;
      row.n_power = n;
      try {
        row.bound = genhm::k_bound(n, sc.ctx);
        row.result = genhm::find_k(n, sc);
      } catch (const genhm::Error& e) {
        row.error = e.what();
      }
      return row;
    }));

  bool partial = false;
  std::vector<genhm::ScanRow> rows;
  rows.reserve(ns.size());
  for (auto& j : jobs)
    rows.push_back(j.get());

  if (cfg.format == "json") {
    json arr = json::array();
    for (const auto& r : rows) {
      json o{{"N", r.n_power}};
      if (r.result) {
        o["k_N"] = fmt(r.result->k_n, cfg);
        o["bracket_low"] = fmt(r.result->bracket_low, cfg);
        o["bracket_high"] = fmt(r.result->bracket_high, cfg);
        o["iterations"] = r.result->iterations;
        o["bound"] = fmt(r.bound, cfg);
      } else {
        o["error"] = r.error;
        partial = true;
      }
      arr.push_back(o);
    }
    json doc{{"config", config_json(cfg)}, {"rows", arr}};
    emit(cfg, doc.dump(2) + "\n");
  } else {
    std::ostringstream os;
    os << "N,k_N,bracket_low,bracket_high,bound\n";
    for (const auto& r : rows) {
      if (!r.result) {
        std::cerr << "N=" << r.n_power << ": " << r.error << "\n";
        partial = true;
        continue;
      }
      os << r.n_power << ',' << fmt(r.result->k_n, cfg) << ','
         << fmt(r.result->bracket_low, cfg) << ','
         << fmt(r.result->bracket_high, cfg) << ',' << fmt(r.bound, cfg)
         << '\n';
    }
    emit(cfg, os.str());
  }
  return partial ? kExitQuality : 0;
}

// ------------------------------------------------------------- coeffs

int run_coeffs(const RunConfig& cfg, const std::string& sector, int n,
               int count) {
  std::ostringstream os;
  if (sector == "pole3") {
    genhm::PoleSeries s = genhm::pole_laurent_n3(std::max(count, 4));
    if (cfg.format == "json") {
      json arr = json::array();
      for (std::size_t i = 0; i < s.coeffs.size(); ++i)
        arr.push_back({{"j", s.j_min + static_cast<long>(i)},
                       {"coefficient", s.coeffs[i].to_string()}});
      json doc{{"config", config_json(cfg)}, {"coefficients", arr}};
      os << doc.dump(2) << "\n";
    } else {
      genhm::write_pole_csv(os, s);
    }
    emit(cfg, os.str());
    return 0;
  }

  genhm::CoeffTable t;
  const int m_max = count - 1;
  if (sector == "airy")
    t = genhm::airy_asym_coeffs(m_max);
  else if (sector == "b")
    t = genhm::airy_power_coeffs(n, m_max);
  else if (sector == "d1")
    t = genhm::d1_coeffs(n, m_max);
  else if (sector == "c")
    t = genhm::c_coeffs(n, m_max);
  else
    throw CLI::ValidationError("--sector", "unknown sector " + sector);

  if (cfg.format == "json") {
    json arr = json::array();
    for (std::size_t i = 0; i < t.coeffs.size(); ++i)
      arr.push_back({{"index", i},
                     {"numerator", numerator(t.coeffs[i]).str()},
                     {"denominator", denominator(t.coeffs[i]).str()}});
    json doc{{"config", config_json(cfg)},
             {"sector", sector},
             {"N", t.n_power},
             {"coefficients", arr}};
    os << doc.dump(2) << "\n";
  } else {
    genhm::write_coeff_csv(os, t);
  }
  emit(cfg, os.str());
  return 0;
}

// ---------------------------------------------------------------- fit

int run_fit(const RunConfig& cfg, const std::string& sector, int n, int count,
            int order) {
  genhm::PrecContext ctx{cfg.digits};
  genhm::LargeOrderFit fit;
  if (sector == "d1") {
    if (count < 80)
      throw genhm::DomainError("fit --sector d1 needs --count >= 80");
    fit = genhm::fit_one_factorial(genhm::d1_coeffs(n, count - 1), ctx, order);
  } else {
    if (count < 40)
      throw genhm::DomainError("fit --sector c needs --count >= 40");
    fit = genhm::fit_two_factorial(genhm::c_coeffs(n, count - 1), ctx, order);
  }

  json doc{
      {"config", config_json(cfg)},
      {"model", fit.model == genhm::FitModel::OneFactorial ? "one-factorial"
                                                           : "two-factorial"},
      {"N", fit.n_power},
      {"A", fmt(fit.rate_A, cfg)},
      {"S", fmt(fit.constant_S, cfg)},
      {"offset", fmt(fit.offset, cfg)},
      {"beta", fmt(fit.subleading_beta, cfg)},
      {"richardson_order", fit.richardson_order},
      {"residual", genhm::format_float(fit.residual, 3)},
      {"accepted", fit.ok()},
  };
  if (sector == "c")
    doc["borel_consistency"] =
        genhm::format_float(genhm::borel_consistency(n, fit), 3);
  emit(cfg, doc.dump(2) + "\n");
  return fit.ok() ? 0 : kExitQuality;
}

// -------------------------------------------------------------- figure

void write_file(const std::string& path, const std::string& text) {
  std::ofstream os(path, std::ios::binary);
  if (!os)
    throw genhm::Error("cannot open output file: " + path);
  os << text;
}

genhm::GridFunction sampled_trajectory(int n_power, const PrecFloat& k,
                                       double x_lo, const RunConfig& cfg) {
  genhm::PrecContext ctx{cfg.digits};
  const auto airy = genhm::airy_eval(10.0, ctx);
  genhm::OdeProblem p;
  p.n_power = n_power;
  p.x_start = 10;
  p.y_start = k * airy.ai;
  p.yp_start = k * airy.ai_prime;
  p.x_end = x_lo;
  p.rel_tol = 1e-17;
  p.abs_tol = 1e-17;
  p.ctx = ctx;
  std::vector<PrecFloat> outs;
  for (double x = 10; x >= x_lo - 1e-9; x -= 0.02)
    outs.push_back(PrecFloat(x));
  genhm::Trajectory traj = genhm::integrate(p, PrecFloat(40), outs);
  genhm::GridFunction g;
  g.domain_tag = genhm::DomainTag::PositiveSide;
  for (auto it = traj.samples.rbegin(); it != traj.samples.rend(); ++it) {
    g.xs.push_back(it->x);
    g.ys.push_back(it->y);
  }
  return g;
}

int run_figure(const RunConfig& cfg, const std::string& id) {
  const std::string prefix = cfg.out_path;
  std::vector<std::string> written;
  auto emit_grid = [&](const std::string& name, const genhm::GridFunction& g) {
    std::ostringstream os;
    genhm::write_grid_csv(os, g, cfg.print_digits);
    const std::string path = prefix + name;
    write_file(path, os.str());
    written.push_back(path);
  };

  if (id == "k2" || id == "k3" || id == "k4" || id == "k10") {
    struct Caption {
      int n;
      const char* super;
      const char* sub;
    };
    const Caption cap = id == "k2"   ? Caption{2, "0.671232", "0.671231"}
                        : id == "k3" ? Caption{3, "1.00000001", "0.9999999"}
                        : id == "k4" ? Caption{4, "1.191125", "1.191124"}
                                     : Caption{10, "1.577095", "1.577094"};
    emit_grid(id + "_diverging.csv",
              sampled_trajectory(cap.n, PrecFloat(cap.super), -12, cfg));
    emit_grid(id + "_oscillating.csv",
              sampled_trajectory(cap.n, PrecFloat(cap.sub), -12, cfg));
    genhm::GridFunction asym;
    asym.domain_tag = genhm::DomainTag::NegativeSide;
    const int wp = cfg.digits + 6;
    for (double x = -12; x <= -0.02 + 1e-12; x += 0.02) {
      asym.xs.push_back(PrecFloat(x));
      asym.ys.push_back(pow(-genhm::make_float(x, wp) / 2,
                            genhm::make_float(1L, wp) / (cap.n - 1)));
    }
    emit_grid(id + "_asymptote.csv", asym);
  } else if (id == "kn-vs-n") {
    std::vector<int> ns;
    for (int n = 2; n <= 30; ++n)
      ns.push_back(n);
    for (int n : {50, 100, 500, 1000, 10000})
      ns.push_back(n);
    genhm::ShootConfig sc;
    sc.ctx.digits = cfg.digits;
    std::vector<std::future<genhm::ScanRow>> jobs;
    for (int n : ns)
      jobs.push_back(std::async(std::launch::async, [n, sc]() {
        genhm::ScanRow row;
        row.n_power = n;
        try {
          row.bound = genhm::k_bound(n, sc.ctx);
          row.result = genhm::find_k(n, sc);
        } catch (const genhm::Error& e) {
          row.error = e.what();
        }
        return row;
      }));
    std::ostringstream os;
    os << "N,k_N,bound\n";
    bool partial = false;
    for (auto& j : jobs) {
      genhm::ScanRow r = j.get();
      if (!r.result) {
        std::cerr << "N=" << r.n_power << ": " << r.error << "\n";
        partial = true;
        continue;
      }
      os << r.n_power << ',' << fmt(r.result->k_n, cfg) << ','
         << fmt(r.bound, cfg) << '\n';
    }
    const std::string path = prefix + "kn_vs_n.csv";
    write_file(path, os.str());
    written.push_back(path);
    if (partial)
      return kExitQuality;
  } else if (id == "n2-match") {
    genhm::QuadratureSpec spec;
    spec.ctx.digits = cfg.digits;
    spec.rel_tol = PrecFloat(cfg.rel_tol);
    std::vector<PrecFloat> xs;
    for (int i = 0; i <= 160; ++i)
      xs.push_back(PrecFloat(-8) + PrecFloat(i) / 20);
    genhm::GridFunction line;
    line.domain_tag = genhm::DomainTag::NegativeSide;
    line.xs = xs;
    for (const auto& x : xs)
      line.ys.push_back(-x / 2);
    emit_grid("n2_line.csv", line);
    const PrecFloat k2("0.671231");
    emit_grid("n2_levels1.csv", genhm::n2_match(k2, xs, 1, spec).transseries);
    emit_grid("n2_levels2.csv", genhm::n2_match(k2, xs, 2, spec).transseries);
    // exact numeric curve at the refined separatrix value
    genhm::ShootConfig sc;
    sc.ctx.digits = cfg.digits;
    sc.k_tol = PrecFloat(1e-9);
    genhm::SeparatrixResult sep = genhm::find_k(2, sc);
    emit_grid("n2_exact.csv", sampled_trajectory(2, sep.k_n, -8, cfg));
  } else {
    throw CLI::ValidationError("--id", "unknown figure id " + id);
  }

  for (const auto& p : written)
    std::cout << p << "\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"connection problem for y'' = 2 y^N + x y: separatrix "
               "constants, trans-series coefficients, large-order fits"};
  app.require_subcommand(1);

  RunConfig cfg_kn, cfg_coeffs, cfg_fit, cfg_figure;

  auto* kn = app.add_subcommand("kn", "separatrix constants k_N by shooting");
  std::vector<int> kn_ns;
  double kn_ktol = 1e-7, kn_xplus = 10, kn_xminus = -12;
  kn->add_option("--n", kn_ns, "nonlinearity powers N (>= 2)")->required();
  kn->add_option("--k-tol", kn_ktol, "bisection bracket width target");
  kn->add_option("--x-plus", kn_xplus, "launch abscissa");
  kn->add_option("--x-minus", kn_xminus, "classification horizon");
  add_common(kn, cfg_kn);

  auto* coeffs = app.add_subcommand("coeffs", "exact trans-series coefficients");
  std::string co_sector;
  int co_n = 3, co_count = 10;
  coeffs->add_option("--sector", co_sector, "d1 | c | b | airy | pole3")
      ->required()
      ->check(CLI::IsMember({"d1", "c", "b", "airy", "pole3"}));
  coeffs->add_option("--n", co_n, "nonlinearity power N");
  coeffs->add_option("--count", co_count, "number of coefficients")
      ->check(CLI::Range(1, 100000));
  add_common(coeffs, cfg_coeffs);

  auto* fit = app.add_subcommand("fit", "large-order growth parameter fit");
  std::string fit_sector;
  int fit_n = 3, fit_count = 150, fit_order = 6;
  fit->add_option("--sector", fit_sector, "d1 | c")
      ->required()
      ->check(CLI::IsMember({"d1", "c"}));
  fit->add_option("--n", fit_n, "nonlinearity power N");
  fit->add_option("--count", fit_count, "number of coefficients to generate");
  fit->add_option("--order", fit_order, "Richardson order")
      ->check(CLI::Range(1, 12));
  add_common(fit, cfg_fit);

  auto* figure = app.add_subcommand("figure", "plot-ready CSV datasets");
  std::string fig_id;
  figure
      ->add_option("--id", fig_id,
                   "k2 | k3 | k4 | k10 | kn-vs-n | n2-match")
      ->required()
      ->check(CLI::IsMember({"k2", "k3", "k4", "k10", "kn-vs-n", "n2-match"}));
  add_common(figure, cfg_figure);

  CLI11_PARSE(app, argc, argv);

  try {
    if (kn->parsed()) {
      for (int n : kn_ns)
        if (n < 2) {
          std::cerr << "N must be >= 2\n";
          return kExitUsage;
        }
      return run_kn(cfg_kn, kn_ns, kn_ktol, kn_xplus, kn_xminus);
    }
    if (coeffs->parsed()) {
      if ((co_sector == "d1" || co_sector == "c" || co_sector == "b") &&
          co_n < 2) {
        std::cerr << "N must be >= 2\n";
        return kExitUsage;
      }
      return run_coeffs(cfg_coeffs, co_sector, co_n, co_count);
    }
    if (fit->parsed()) {
      if (fit_n < 2) {
        std::cerr << "N must be >= 2\n";
        return kExitUsage;
      }
      return run_fit(cfg_fit, fit_sector, fit_n, fit_count, fit_order);
    }
    if (figure->parsed())
      return run_figure(cfg_figure, fig_id);
  } catch (const genhm::DomainError& e) {
    std::cerr << e.what() << "\n";
    return kExitUsage;
  } catch (const CLI::ValidationError& e) {
    std::cerr << e.what() << "\n";
    return kExitUsage;
  } catch (const genhm::Error& e) {
    std::cerr << e.what() << "\n";
    return kExitQuality;
  }
  return 0;
}
