#include <genhm/inteq.hpp>

#include <genhm/coeffs.hpp>
#include <genhm/shooting.hpp>
#include <genhm/specfun.hpp>

#include <algorithm>
#include <cmath>
#include <string>

namespace genhm {

void QuadratureSpec::validate() const {
  ctx.validate();
  if (!(rel_tol > 0) || rel_tol > 1e-6)
    throw DomainError("QuadratureSpec: rel_tol in (0, 1e-6]");
  if (!(truncation_threshold > 0) || truncation_threshold > rel_tol)
    throw DomainError("QuadratureSpec: truncation_threshold in (0, rel_tol]");
}

namespace {

PrecFloat two_pi(int wp) { return 2 * const_pi(wp); }

double log10_of(const PrecFloat& v) {
  return mpfr_get_exp(v.backend().data()) * 0.30102999566398119;
}

// Shared fixed spectral grid with Airy samples; the Picard iteration and
// the towers live on its nodes.
struct Engine {
  SpectralGrid grid;
  std::vector<PrecFloat> ai, bi;
  PrecFloat twopi;
  int wp;
};

Engine make_engine(int n_power, double x_hi_min, const QuadratureSpec& spec) {
  const int digits = spec.ctx.digits;
  const int wp = digits + 8;
  // truncate where the slowest integrand Ai^N Bi ~ exp(-(N-1) xi) is below
  // threshold relative to its O(1)-x peak
  const double thr_logs =
      -std::log(spec.truncation_threshold.convert_to<double>()) + 14.0;
  const double xi_need = thr_logs / std::max(1, n_power - 1);
  double z_max = std::pow(1.5 * xi_need, 2.0 / 3.0);
  z_max = std::max({z_max, x_hi_min + 2.0, 12.0});

  // panel resolution from the requested tolerance
  const double want = -log10_of(spec.rel_tol);
  const int npp = want <= 16 ? 12 : 12 + static_cast<int>((want - 16) / 2) + 2;
  const int n_panels = static_cast<int>(std::ceil(z_max / 0.25));

  Engine e{SpectralGrid(make_float(0L, wp), make_float(z_max, wp), n_panels,
                        npp, digits),
           {}, {}, two_pi(wp), wp};
  const PrecContext actx{digits + 8};
  e.ai.reserve(e.grid.nodes().size());
  e.bi.reserve(e.grid.nodes().size());
  for (const auto& z : e.grid.nodes()) {
    AiryValues v = airy_eval(z, actx);
    e.ai.push_back(make_float(v.ai, wp));
    e.bi.push_back(make_float(v.bi, wp));
  }
  return e;
}

// K[f] at every node from node samples of f.
std::vector<PrecFloat> kernel_on_nodes(const Engine& e,
                                       std::span<const PrecFloat> f) {
  const std::size_t n = f.size();
  std::vector<PrecFloat> fa(n), fb(n);
  for (std::size_t i = 0; i < n; ++i) {
    fa[i] = f[i] * e.ai[i];
    fb[i] = f[i] * e.bi[i];
  }
  std::vector<PrecFloat> IA = e.grid.suffix_integrals(fa);
  std::vector<PrecFloat> IB = e.grid.suffix_integrals(fb);
  std::vector<PrecFloat> out(n);
  for (std::size_t i = 0; i < n; ++i)
    out[i] = e.twopi * (e.ai[i] * IB[i] - e.bi[i] * IA[i]);
  return out;
}

// K[f] at an arbitrary x from node samples of f.
PrecFloat kernel_at(const Engine& e, std::span<const PrecFloat> f,
                    const PrecFloat& x, const AiryValues& at_x) {
  const std::size_t n = f.size();
  std::vector<PrecFloat> fa(n), fb(n);
  for (std::size_t i = 0; i < n; ++i) {
    fa[i] = f[i] * e.ai[i];
    fb[i] = f[i] * e.bi[i];
  }
  const PrecFloat IA = e.grid.suffix_at(x, fa);
  const PrecFloat IB = e.grid.suffix_at(x, fb);
  return e.twopi * (at_x.ai * IB - at_x.bi * IA);
}

std::vector<PrecFloat> pow_nodes(std::span<const PrecFloat> y, int n_power) {
  std::vector<PrecFloat> f(y.size());
  for (std::size_t i = 0; i < y.size(); ++i)
    f[i] = pow(y[i], n_power);
  return f;
}

void check_grid(std::span<const PrecFloat> xs) {
  if (xs.empty())
    throw DomainError("inteq: empty grid");
  for (std::size_t i = 1; i < xs.size(); ++i)
    if (!(xs[i] > xs[i - 1]))
      throw DomainError("inteq: grid must be strictly increasing");
}

}  // namespace

PrecFloat airy_kernel_integral(
    const std::function<PrecFloat(const PrecFloat&)>& f, const PrecFloat& x,
    const QuadratureSpec& spec) {
  spec.validate();
  const int wp = spec.ctx.digits + 8;
  const PrecContext actx{spec.ctx.digits + 8};
  const AiryValues at_x = airy_eval(x, actx);

  // scan for the truncation point of the semi-infinite upper limit
  PrecFloat peak = make_float(0L, wp);
  PrecFloat z_hi = make_float(x, wp);
  bool found = false;
  for (int step = 0; step <= 40; ++step) {
    PrecFloat z = make_float(x, wp) + step;
    AiryValues vz = airy_eval(z, actx);
    PrecFloat m = abs(f(z)) * (abs(vz.bi * at_x.ai) + abs(vz.ai * at_x.bi));
    if (m > peak)
      peak = m;
    if (step >= 2 && peak > 0 && m <= spec.truncation_threshold * peak) {
      z_hi = z;
      found = true;
      break;
    }
  }
  if (peak == 0)
    return make_float(0L, wp);
  if (!found)
    throw DecayError("airy_kernel_integral: integrand not decayed by x + 40");

  auto g = [&](const PrecFloat& z) {
    AiryValues vz = airy_eval(z, actx);
    PrecFloat fv = f(z);
    return std::make_pair(fv * vz.ai, fv * vz.bi);
  };
  // coarse pass for the absolute scale
  const auto& nw = gauss_legendre(15, spec.ctx.digits);
  PrecFloat mid = (make_float(x, wp) + z_hi) / 2;
  PrecFloat hw = (z_hi - x) / 2;
  PrecFloat cA = make_float(0L, wp), cB = make_float(0L, wp);
  for (const auto& [t, w] : nw) {
    auto [va, vb] = g(mid + hw * t);
    cA += w * va;
    cB += w * vb;
  }
  cA *= hw;
  cB *= hw;
  PrecFloat ref = abs(at_x.ai * cB - at_x.bi * cA);
  PrecFloat floor_ref = abs(at_x.ai * cB) + abs(at_x.bi * cA);
  if (ref < floor_ref * 1e-3)
    ref = floor_ref * 1e-3;  // cancellation floor for the tolerance split
  if (ref == 0)
    ref = peak;
  const PrecFloat tolA = spec.rel_tol * ref / (10 * std::max(abs(at_x.bi), PrecFloat(1e-30)));
  const PrecFloat tolB = spec.rel_tol * ref / (10 * std::max(abs(at_x.ai), PrecFloat(1e-30)));
  auto [IA, IB] =
      adaptive_gauss_pair(g, make_float(x, wp), z_hi, tolA, tolB, spec.ctx.digits);
  return two_pi(wp) * (at_x.ai * IB - at_x.bi * IA);
}

GridFunction picard_solve(int n_power, const PrecFloat& k,
                          std::span<const PrecFloat> xs, int iterations,
                          const QuadratureSpec& spec) {
  spec.validate();
  check_grid(xs);
  if (n_power < 2)
    throw DomainError("picard_solve: n_power >= 2");
  if (k < 0)
    throw DomainError("picard_solve: k >= 0");
  if (iterations < 1)
    throw DomainError("picard_solve: iterations >= 1");

  Engine e = make_engine(n_power, xs.back().convert_to<double>(), spec);
  const std::size_t n = e.grid.nodes().size();
  const PrecFloat kk = make_float(k, e.wp);

  std::vector<PrecFloat> y(n);
  for (std::size_t i = 0; i < n; ++i)
    y[i] = kk * e.ai[i];

  auto norm_inf = [](std::span<const PrecFloat> v) {
    PrecFloat m = abs(v[0]);
    for (const auto& t : v)
      if (abs(t) > m)
        m = abs(t);
    return m;
  };

  // contraction is judged on successive-difference norms: for a convergent
  // iteration they shrink geometrically, while the bare iterate norm also
  // grows during plain monotone convergence
  std::vector<PrecFloat> f;
  PrecFloat prev_diff = make_float(-1L, e.wp);
  int growth_streak = 0;
  for (int it = 0; it < iterations; ++it) {
    f = pow_nodes(y, n_power);
    std::vector<PrecFloat> Kf = kernel_on_nodes(e, f);
    PrecFloat diff = make_float(0L, e.wp);
    for (std::size_t i = 0; i < n; ++i) {
      PrecFloat yn = kk * e.ai[i] + Kf[i];
      if (abs(yn - y[i]) > diff)
        diff = abs(yn - y[i]);
      y[i] = yn;
    }
    if (prev_diff >= 0)
      growth_streak = diff > prev_diff ? growth_streak + 1 : 0;
    if (growth_streak >= 3)
      throw PicardDivergence(
          "picard_solve: successive differences grew 3 iterations running");
    prev_diff = diff;
    if (diff < spec.rel_tol * std::max(norm_inf(y), PrecFloat(1)))
      break;
  }

  // sample the final iterate: y(x) = k Ai(x) + K[y^N](x)
  f = pow_nodes(y, n_power);
  const PrecContext actx{spec.ctx.digits + 8};
  GridFunction out;
  out.domain_tag = DomainTag::PositiveSide;
  out.xs.assign(xs.begin(), xs.end());
  out.ys.reserve(xs.size());
  for (const auto& x : xs) {
    AiryValues v = airy_eval(x, actx);
    out.ys.push_back(kk * v.ai + kernel_at(e, f, make_float(x, e.wp), v));
  }
  return out;
}

GridFunction y_tower(int n_power, int level, std::span<const PrecFloat> xs,
                     const QuadratureSpec& spec) {
  spec.validate();
  check_grid(xs);
  if (n_power < 2)
    throw DomainError("y_tower: n_power >= 2");
  if (level < 1 || level > 3)
    throw DomainError("y_tower: level in {1, 2, 3}");

  const PrecContext actx{spec.ctx.digits + 8};
  GridFunction out;
  out.domain_tag = DomainTag::PositiveSide;
  out.xs.assign(xs.begin(), xs.end());
  out.ys.reserve(xs.size());

  if (level == 1) {
    for (const auto& x : xs)
      out.ys.push_back(airy_eval(x, actx).ai);
    return out;
  }

  Engine e = make_engine(n_power, xs.back().convert_to<double>(), spec);
  const std::size_t n = e.grid.nodes().size();

  // Y_[N] = K[Ai^N]
  std::vector<PrecFloat> f1 = pow_nodes(e.ai, n_power);
  if (level == 2) {
    for (const auto& x : xs)
      out.ys.push_back(kernel_at(e, f1, make_float(x, e.wp), airy_eval(x, actx)));
    return out;
  }

  // Y_[2N-1] = N K[Y_[N] Ai^(N-1)]
  std::vector<PrecFloat> yN = kernel_on_nodes(e, f1);
  std::vector<PrecFloat> f2(n);
  for (std::size_t i = 0; i < n; ++i)
    f2[i] = yN[i] * pow(e.ai[i], n_power - 1);
  for (const auto& x : xs)
    out.ys.push_back(n_power *
                     kernel_at(e, f2, make_float(x, e.wp), airy_eval(x, actx)));
  return out;
}

GridFunction w_tower_n2(int level, std::span<const PrecFloat> xs,
                        const QuadratureSpec& spec) {
  check_grid(xs);
  if (xs.back() > 0)
    throw DomainError("w_tower_n2: grid must lie in x <= 0");
  // W_[n](x) = Y_[n](-x) for N = 2
  std::vector<PrecFloat> pos(xs.size());
  for (std::size_t i = 0; i < xs.size(); ++i)
    pos[i] = -xs[xs.size() - 1 - i];
  if (pos[0] == 0 && pos.size() > 1 && pos[1] == 0)
    throw DomainError("w_tower_n2: duplicate zero");
  GridFunction ypos = y_tower(2, level, pos, spec);
  GridFunction out;
  out.domain_tag = DomainTag::NegativeSide;
  out.xs.assign(xs.begin(), xs.end());
  out.ys.assign(ypos.ys.rbegin(), ypos.ys.rend());
  return out;
}

N2MatchResult n2_match(const PrecFloat& k2, std::span<const PrecFloat> xs_neg,
                       int levels, const QuadratureSpec& spec) {
  spec.validate();
  check_grid(xs_neg);
  if (levels < 0 || levels > 3)
    throw DomainError("n2_match: levels in {0, 1, 2, 3}");
  const int wp = spec.ctx.digits + 8;

  // trans-series curve
  std::vector<PrecFloat> ys(xs_neg.size());
  for (std::size_t i = 0; i < xs_neg.size(); ++i)
    ys[i] = -make_float(xs_neg[i], wp) / 2;
  PrecFloat kp = make_float(1L, wp);
  for (int n = 1; n <= levels; ++n) {
    kp *= make_float(k2, wp);
    GridFunction W = w_tower_n2(n, xs_neg, spec);
    for (std::size_t i = 0; i < xs_neg.size(); ++i)
      ys[i] += kp * W.ys[i];
  }

  // reference: the separatrix trajectory from the shooting side
  ShootConfig cfg;
  cfg.ctx = spec.ctx;
  cfg.k_tol = std::max(pow10(-(spec.ctx.digits - 6), wp), PrecFloat(1e-9));
  SeparatrixResult sep = find_k(2, cfg);
  const AiryValues v10 = airy_eval(cfg.x_plus, PrecContext{spec.ctx.digits + 6});
  OdeProblem p;
  p.n_power = 2;
  p.x_start = cfg.x_plus;
  p.y_start = sep.k_n * v10.ai;
  p.yp_start = sep.k_n * v10.ai_prime;
  p.x_end = xs_neg.front() - PrecFloat(0.5);
  p.ctx = spec.ctx;
  std::vector<PrecFloat> outs(xs_neg.rbegin(), xs_neg.rend());
  Trajectory traj = integrate(p, PrecFloat(1e6), outs);
  if (traj.samples.size() != xs_neg.size())
    throw ConvergenceError("n2_match: reference trajectory incomplete");

  PrecFloat dev = make_float(0L, wp);
  for (std::size_t i = 0; i < xs_neg.size(); ++i) {
    // trajectory samples run in decreasing x
    const PrecFloat d = abs(ys[i] - traj.samples[xs_neg.size() - 1 - i].y);
    if (d > dev)
      dev = d;
  }

  N2MatchResult r;
  r.transseries.domain_tag = DomainTag::NegativeSide;
  r.transseries.xs.assign(xs_neg.begin(), xs_neg.end());
  r.transseries.ys = std::move(ys);
  r.max_deviation = dev;
  return r;
}

PrecFloat eval_pos_transseries(int n_power, const PrecFloat& k,
                               const PrecFloat& x, int n_max, int m_max,
                               const PrecContext& ctx) {
  ctx.validate();
  if (n_power < 2)
    throw DomainError("eval_pos_transseries: n_power >= 2");
  if (n_max < 0 || n_max > 1)
    throw DomainError("eval_pos_transseries: n_max in {0, 1}");
  if (!(x >= 3))
    throw DomainError("eval_pos_transseries: x >= 3");
  const int wp = ctx.digits + 8;
  const PrecFloat xx = make_float(x, wp);
  const PrecFloat x32 = xx * sqrt(xx);
  const double optimal = (4.0 / 3.0) * x32.convert_to<double>();
  if (m_max < 0 || m_max > optimal)
    throw TruncationError("eval_pos_transseries: m_max beyond optimal order " +
                          std::to_string(optimal));

  const PrecFloat E = exp(-2 * x32 / 3) / (2 * sqrt(const_pi(wp)) * pow(xx, make_float(0.25, wp)));
  const PrecFloat w = 1 / x32;  // x^(-3/2)

  const CoeffTable base = airy_asym_coeffs(m_max);
  PrecFloat F0 = make_float(0L, wp);
  PrecFloat wm = make_float(1L, wp);
  for (int m = 0; m <= m_max; ++m) {
    F0 += make_float(base.coeffs[static_cast<std::size_t>(m)], wp) * wm;
    wm *= w;
  }
  PrecFloat result = make_float(k, wp) * E * F0;

  if (n_max >= 1) {
    const CoeffTable d1 = d1_coeffs(n_power, m_max);
    PrecFloat F1 = make_float(0L, wp);
    wm = 1;
    for (int m = 0; m <= m_max; ++m) {
      F1 += make_float(d1.coeffs[static_cast<std::size_t>(m)], wp) * wm;
      wm *= w;
    }
    F1 /= xx;
    result += pow(make_float(k, wp) * E, n_power) * F1;
  }
  return result;
}

}  // namespace genhm
