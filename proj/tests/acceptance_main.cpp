// Acceptance suite: one pass/fail line per criterion, nonzero exit when any
// criterion fails. Reference values are frozen here at the tolerances the
// project commits to.

#include <genhm/asymptotics.hpp>
#include <genhm/coeffs.hpp>
#include <genhm/inteq.hpp>
#include <genhm/ode.hpp>
#include <genhm/resub.hpp>
#include <genhm/shooting.hpp>
#include <genhm/specfun.hpp>

#include <chrono>
#include <cmath>
#include <cstdio>
#include <future>
#include <map>
#include <random>
#include <sstream>
#include <string>
#include <vector>

using namespace genhm;
using Clock = std::chrono::steady_clock;

namespace {

int g_failures = 0;

void report(int criterion, bool pass, const std::string& what,
            const std::string& detail) {
  std::printf("[%s] criterion %d: %s%s%s\n", pass ? "PASS" : "FAIL", criterion,
              what.c_str(), detail.empty() ? "" : " -- ", detail.c_str());
  std::fflush(stdout);
  if (!pass)
    ++g_failures;
}

double rel_err(const PrecFloat& got, double want) {
  return (abs(got - want) / std::fabs(want)).convert_to<double>();
}

struct KnResult {
  int n = 0;
  PrecFloat k;
  PrecFloat bound;
  double seconds = 0;
  std::string error;
};

KnResult run_kn(int n, double k_tol) {
  ShootConfig cfg;
  cfg.k_tol = PrecFloat(k_tol);
  KnResult r;
  r.n = n;
  const auto t0 = Clock::now();
  try {
    r.bound = k_bound(n, cfg.ctx);
    r.k = find_k(n, cfg).k_n;
  } catch (const Error& e) {
    r.error = e.what();
  }
  r.seconds = std::chrono::duration<double>(Clock::now() - t0).count();
  return r;
}

// ----------------------------------------------------------------- C1

const std::map<int, double> kTable = {
    {2, 0.671231},  {3, 1.000000},  {4, 1.191124},  {5, 1.313788},
    {6, 1.398870},  {7, 1.461275},  {8, 1.508981},  {9, 1.546629},
    {10, 1.577094}, {50, 1.806210}, {100, 1.836265}};

std::map<int, KnResult> g_kn;  // shared with C2

void criterion1() {
  std::vector<std::future<KnResult>> jobs;
  for (const auto& [n, want] : kTable) {
    (void)want;
    jobs.push_back(std::async(std::launch::async, run_kn, n, 1e-7));
  }
  bool pass = true;
  std::ostringstream detail;
  for (auto& j : jobs) {
    KnResult r = j.get();
    const double tol = r.n <= 10 ? 1e-6 : 1e-5;
    bool ok = r.error.empty() && rel_err(r.k, kTable.at(r.n)) * kTable.at(r.n) < tol &&
              r.seconds < 60.0;
    if (!r.error.empty())
      detail << "N=" << r.n << " error: " << r.error << "; ";
    else if (!ok)
      detail << "N=" << r.n << " k=" << r.k.convert_to<double>() << " ("
             << r.seconds << " s); ";
    pass = pass && ok;
    g_kn[r.n] = std::move(r);
  }
  report(1, pass, "separatrix table for N in {2..10, 50, 100} (1e-6 / 1e-5, < 60 s per N)",
         detail.str());
}

// ----------------------------------------------------------------- C2

void criterion2() {
  bool pass = true;
  std::ostringstream detail;
  for (const auto& [n, r] : g_kn) {
    if (!r.error.empty() || !(r.k <= r.bound)) {
      pass = false;
      detail << "bound violated at N=" << n << "; ";
    }
  }
  PrecContext ctx{32};
  PrecFloat limit = 1 / airy_eval(airy_prime_first_zero(ctx), ctx).ai;
  if (!(abs(limit - PrecFloat("1.866867495")) < 1e-8)) {
    pass = false;
    detail << "limit 1/Ai(x0) = " << limit.convert_to<double>() << "; ";
  }
  // deep-N run at elevated precision
  ShootConfig cfg;
  cfg.ctx.digits = 40;
  cfg.k_tol = PrecFloat(1e-6);
  PrecFloat k10000 = find_k(10000, cfg).k_n;
  if (!(abs(k10000 - PrecFloat("1.866555")) < 1e-5)) {
    pass = false;
    detail << "k_10000 = " << k10000.convert_to<double>() << "; ";
  }
  report(2, pass, "bound k_N <= (1/Ai(x0))(-x0/2)^(1/(N-1)), limit value, k_10000",
         detail.str());
}

// ----------------------------------------------------------------- C3

void criterion3() {
  PrecContext ctx{32};
  struct Want {
    double S, beta;
  };
  const std::map<int, Want> wants = {{4, {1.0 / M_PI, 61.0 / 18.0}},
                                     {5, {15.0 / (32 * M_PI), 29.0 / 12.0}},
                                     {6, {3.0 / (10 * M_PI), 97.0 / 45.0}},
                                     {7, {7.0 / (32 * M_PI), 25.0 / 12.0}}};
  bool pass = true;
  std::ostringstream detail;
  for (const auto& [n, w] : wants) {
    LargeOrderFit fit = fit_one_factorial(d1_coeffs(n, 200), ctx);
    const bool okA = rel_err(fit.rate_A, 0.75) * 0.75 < 1e-4;
    const bool okS = rel_err(fit.constant_S, w.S) < 1e-3;
    const bool okB = rel_err(fit.subleading_beta, w.beta) < 1e-2;
    if (!(okA && okS && okB)) {
      pass = false;
      detail << "N=" << n << " A=" << fit.rate_A.convert_to<double>()
             << " S=" << fit.constant_S.convert_to<double>()
             << " beta=" << fit.subleading_beta.convert_to<double>() << "; ";
    }
  }
  // N=2: rate 3/2 and the published growth constant 4.9161362, which is
  // pi times the sector constant in the normalization used for N >= 4
  LargeOrderFit f2 = fit_one_factorial(d1_coeffs(2, 200), ctx);
  const bool okA2 = rel_err(f2.rate_A, 1.5) * 1.5 < 1e-4;
  PrecFloat scaled = f2.constant_S * const_pi(40);
  const bool okS2 = rel_err(scaled, 4.9161362) < 1e-3;
  if (!(okA2 && okS2)) {
    pass = false;
    detail << "N=2 A=" << f2.rate_A.convert_to<double>()
           << " pi*S=" << scaled.convert_to<double>() << "; ";
  }
  report(3, pass,
         "positive-sector fits from 200 exact d_m: A=3/4 (1e-4), S (0.1%), "
         "beta (1%); N=2 growth 3/2 with constant 4.9161362 (0.1%)",
         detail.str());
}

// ----------------------------------------------------------------- C4

void criterion4() {
  PrecContext ctx{32};
  const std::map<int, double> S_want = {
      {3, 0.1466323}, {4, 0.12985376}, {5, 0.1086460}};
  bool pass = true;
  std::ostringstream detail;
  for (const auto& [n, Sw] : S_want) {
    LargeOrderFit fit = fit_two_factorial(c_coeffs(n, 100), ctx);
    const double Aw = 9.0 / (4.0 * (n - 1));
    const bool okA = rel_err(fit.rate_A, Aw) * Aw < 1e-4;
    const bool okS = rel_err(fit.constant_S, Sw) < 5e-3;
    const bool okB = borel_consistency(n, fit) < 1e-4;
    // non-sign-alternating tail backs the claim that the series is not
    // Borel-summable to a real function along the positive axis
    CoeffTable c = c_coeffs(n, 60);
    bool fixed_sign = true;
    for (std::size_t l = 3; l < c.coeffs.size(); ++l)
      fixed_sign = fixed_sign && (c.coeffs[l] < 0);
    if (!(okA && okS && okB && fixed_sign)) {
      pass = false;
      detail << "N=" << n << " A=" << fit.rate_A.convert_to<double>()
             << " S=" << fit.constant_S.convert_to<double>()
             << " borel=" << borel_consistency(n, fit).convert_to<double>()
             << "; ";
    }
  }
  report(4, pass,
         "negative-sector fits from 100 exact c_l: A = 9/(4(N-1)) (1e-4), "
         "S (0.5%), borel consistency < 1e-4",
         detail.str());
}

// ----------------------------------------------------------------- C5

void criterion5() {
  bool pass = true;
  std::ostringstream detail;
  for (int n : {3, 4, 5, 6, 10}) {
    CoeffTable c = c_coeffs(n, 60);
    const BigRational c1_mag(n - 2, (n - 1) * (n - 1) * (n - 1));
    if (!(c.coeffs[0] == 1) || !(abs(c.coeffs[1]) == c1_mag)) {
      pass = false;
      detail << "c table N=" << n << "; ";
    }
  }
  CoeffTable c2 = c_coeffs(2, 60);
  for (std::size_t l = 1; l < c2.coeffs.size(); ++l)
    if (c2.coeffs[l] != 0) {
      pass = false;
      detail << "nonzero N=2 tail at l=" << l << "; ";
      break;
    }
  // exact re-substitution residuals, zero tolerance
  if (airy_base_residual(airy_asym_coeffs(60)).has_value()) {
    pass = false;
    detail << "airy base residual; ";
  }
  for (int n : {2, 3, 4, 7})
    if (pos_instanton_residual(d1_coeffs(n, 60)).has_value()) {
      pass = false;
      detail << "d1 residual N=" << n << "; ";
    }
  for (int n : {2, 3, 5})
    if (neg_perturbative_residual(c_coeffs(n, 60)).has_value()) {
      pass = false;
      detail << "c residual N=" << n << "; ";
    }
  if (pole_residual(pole_laurent_n3(12)).has_value()) {
    pass = false;
    detail << "pole residual; ";
  }
  report(5, pass,
         "exactness: c_0 = 1, |c_1| = (N-2)/(N-1)^3, zero N=2 tail, "
         "re-substitution residuals vanish identically",
         detail.str());
}

// ----------------------------------------------------------------- C6

void criterion6() {
  PoleSeries s = pole_laurent_n3(8);
  bool pass = s.at(1) == Poly2::x0() * BigRational(-1, 6) &&
              s.at(2) == Poly2(BigRational(-1, 4)) &&
              s.at(3) == Poly2::h0() &&
              s.at(4) == Poly2::x0() * BigRational(1, 72) &&
              pole_obstruction(4) == true && pole_obstruction(3) == false;
  report(6, pass,
         "pole series a_1 = -x0/6, a_2 = -1/4, a_3 free, a_4 = x0/72; "
         "obstruction(4) = true, obstruction(3) = false",
         "");
}

// ----------------------------------------------------------------- C7

void criterion7() {
  bool pass = true;
  std::ostringstream detail;

  // Picard vs shooting, N=3, k=1 on [0,4]
  {
    QuadratureSpec spec;
    spec.rel_tol = 1e-11;
    std::vector<PrecFloat> xs;
    for (int i = 0; i <= 80; ++i)
      xs.push_back(make_float(4.0 * i / 80, 40));
    GridFunction sol = picard_solve(3, PrecFloat(1), xs, 16, spec);
    PrecContext ctx{32};
    AiryValues v10 = airy_eval(10.0, ctx);
    OdeProblem p;
    p.n_power = 3;
    p.x_start = 10;
    p.x_end = -0.5;
    p.y_start = v10.ai;
    p.yp_start = v10.ai_prime;
    p.rel_tol = 1e-16;
    p.abs_tol = 1e-16;
    p.ctx = ctx;
    std::vector<PrecFloat> outs(xs.rbegin(), xs.rend());
    Trajectory t = integrate(p, PrecFloat(1e6), outs);
    PrecFloat dev(0);
    for (std::size_t i = 0; i < xs.size(); ++i)
      dev = std::max(dev, abs(sol.ys[i] - t.samples[xs.size() - 1 - i].y));
    if (!(dev < 1e-8)) {
      pass = false;
      detail << "picard max dev " << dev.convert_to<double>() << "; ";
    }
  }

  // tower remainder exponents {N, 2N-1, 3N-2} by log-log slope
  for (int n_power : {2, 3}) {
    QuadratureSpec spec;
    spec.ctx.digits = n_power == 2 ? 40 : 48;
    spec.rel_tol = n_power == 2 ? PrecFloat("1e-22") : PrecFloat("1e-30");
    spec.truncation_threshold = spec.rel_tol;
    std::vector<PrecFloat> xs;
    for (int i = 0; i <= 8; ++i)
      xs.push_back(make_float(2.0 * i / 8, spec.ctx.digits + 8));
    GridFunction t1 = y_tower(n_power, 1, xs, spec);
    GridFunction t2 = y_tower(n_power, 2, xs, spec);
    GridFunction t3 = y_tower(n_power, 3, xs, spec);
    const double expo[3] = {double(n_power), double(2 * n_power - 1),
                            double(3 * n_power - 2)};
    std::vector<double> logk, logr[3];
    for (double kd : {1e-2, 1e-3, 1e-4}) {
      PrecFloat k = make_float(kd, spec.ctx.digits + 8);
      GridFunction y = picard_solve(n_power, k, xs, 8, spec);
      PrecFloat r[3] = {PrecFloat(0), PrecFloat(0), PrecFloat(0)};
      for (std::size_t i = 0; i < xs.size(); ++i) {
        PrecFloat acc = y.ys[i] - k * t1.ys[i];
        r[0] = std::max(r[0], abs(acc));
        acc -= pow(k, n_power) * t2.ys[i];
        r[1] = std::max(r[1], abs(acc));
        acc -= pow(k, 2 * n_power - 1) * t3.ys[i];
        r[2] = std::max(r[2], abs(acc));
      }
      logk.push_back(std::log(kd));
      for (int j = 0; j < 3; ++j)
        logr[j].push_back(log(r[j]).convert_to<double>());
    }
    for (int j = 0; j < 3; ++j) {
      const double slope = (logr[j][0] - logr[j][2]) / (logk[0] - logk[2]);
      if (std::fabs(slope - expo[j]) > 0.05 * expo[j]) {
        pass = false;
        detail << "N=" << n_power << " level " << j + 1 << " slope " << slope
               << " want " << expo[j] << "; ";
      }
    }
  }
  report(7, pass,
         "integral-equation consistency: picard vs shooting to 1e-8 on "
         "[0,4]; tower remainder exponents {N, 2N-1, 3N-2} within 5%",
         detail.str());
}

// ----------------------------------------------------------------- C8

void criterion8() {
  QuadratureSpec spec;
  std::vector<PrecFloat> xs;
  for (int i = 0; i <= 120; ++i)
    xs.push_back(make_float(-6.0 + 6.0 * i / 120, 40));
  const PrecFloat k2("0.671231");
  PrecFloat dev[3];
  for (int levels : {0, 1, 2})
    dev[levels] = n2_match(k2, xs, levels, spec).max_deviation;
  const bool pass = dev[1] < dev[0] && dev[2] < dev[1] && dev[2] < 1e-2;
  std::ostringstream detail;
  detail << "deviations " << dev[0].convert_to<double>() << " -> "
         << dev[1].convert_to<double>() << " -> "
         << dev[2].convert_to<double>();
  report(8, pass,
         "N=2 matching with k_2 = sigma_2 = 0.671231: deviation strictly "
         "decreases over levels 0 -> 1 -> 2 and ends below 1e-2",
         detail.str());
}

// ----------------------------------------------------------------- C9

void criterion9() {
  bool pass = true;
  std::ostringstream detail;

  // Airy Wronskian at 10^(2-digits)
  {
    PrecContext ctx{32};
    const PrecFloat inv_pi = 1 / const_pi(40);
    std::mt19937 rng(987654321);
    std::uniform_real_distribution<double> dist(-20.0, 20.0);
    for (int i = 0; i < 1000; ++i) {
      AiryValues v = airy_eval(dist(rng), ctx);
      PrecFloat w = v.ai * v.bi_prime - v.ai_prime * v.bi;
      if (!(abs(w - inv_pi) * const_pi(40) < 1e-30)) {
        pass = false;
        detail << "wronskian; ";
        break;
      }
    }
  }

  // integrator order in [4, 6]
  {
    OdeProblem p;
    p.n_power = 3;
    p.x_start = 2;
    p.x_end = -4;
    p.y_start = make_float(0.3, 38);
    p.yp_start = make_float(-0.1, 38);
    p.ctx = PrecContext{32};
    const double order = local_error_estimate(p);
    if (!(order >= 4.0 && order <= 6.0)) {
      pass = false;
      detail << "observed order " << order << "; ";
    }
  }

  // Richardson exact on polynomials in 1/m
  {
    const int wp = 40;
    std::vector<PrecFloat> s;
    for (long m = 1; m <= 16; ++m) {
      PrecFloat im = make_float(1L, wp) / m;
      s.push_back(5 + 2 * im - 3 * im * im * im);
    }
    if (!(abs(richardson(s, 3) - 5) < 1e-30)) {
      pass = false;
      detail << "richardson; ";
    }
  }

  // bisection bracket verdicts at convergence
  {
    ShootConfig cfg;
    for (int n : {2, 5}) {
      SeparatrixResult r = find_k(n, cfg);
      const bool ok =
          classify(n, r.bracket_low, cfg).verdict == Verdict::Oscillatory &&
          classify(n, r.bracket_high, cfg).verdict == Verdict::Divergent;
      if (!ok) {
        pass = false;
        detail << "bracket verdicts N=" << n << "; ";
      }
    }
  }
  report(9, pass,
         "property suites: Wronskian 1/pi, integrator order in [4,6], "
         "Richardson exactness, bracket verdicts (Oscillatory, Divergent)",
         detail.str());
}

}  // namespace

int main() {
  const auto t0 = Clock::now();
  criterion1();
  criterion2();
  criterion3();
  criterion4();
  criterion5();
  criterion6();
  criterion7();
  criterion8();
  criterion9();
  std::printf("acceptance: %d/9 criteria passed (%.1f s)\n", 9 - g_failures,
              std::chrono::duration<double>(Clock::now() - t0).count());
  return g_failures == 0 ? 0 : 1;
}
