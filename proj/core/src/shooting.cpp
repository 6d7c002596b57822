#include <genhm/shooting.hpp>

#include <genhm/specfun.hpp>

#include <cmath>
#include <string>

namespace genhm {

void ShootConfig::validate() const {
  ctx.validate();
  if (x_plus < 8)
    throw DomainError("ShootConfig: x_plus >= 8");
  if (x_minus > -6)
    throw DomainError("ShootConfig: x_minus <= -6");
  if (k_tol < pow10(-(ctx.digits - 6), ctx.digits))
    throw DomainError("ShootConfig: k_tol >= 10^(6-digits)");
}

namespace {

PrecFloat asymptote(int n_power, const PrecFloat& x, int wp) {
  // (-x/2)^(1/(N-1)) for x < 0
  return pow(-make_float(x, wp) / 2, make_float(1L, wp) / (n_power - 1));
}

// Scans trajectory samples (in integration order) for a verdict. The
// threshold test only applies for x < -1: near the origin the power-law
// asymptote dips below the regular solution (worst for N = 2, where it
// vanishes linearly); blow-up detection covers that region instead.
std::optional<Classification> scan_samples(int n_power,
                                           const Trajectory& traj, int wp) {
  for (const auto& s : traj.samples) {
    if (s.x < -2 && s.y < 0)
      return Classification{Verdict::Oscillatory, s.x, false};
    if (s.x < -1 && s.y > 2 * asymptote(n_power, s.x, wp))
      return Classification{Verdict::Divergent, s.x, false};
  }
  if (traj.termination == Termination::BlowUp)
    return Classification{Verdict::Divergent, traj.x_stop, false};
  if (traj.termination == Termination::StepUnderflow)
    return Classification{Verdict::Divergent, traj.x_stop, true};
  return std::nullopt;
}

}  // namespace

Classification classify(int n_power, const PrecFloat& k,
                        const ShootConfig& config) {
  config.validate();
  if (n_power < 2)
    throw DomainError("classify: n_power >= 2");
  if (k < 0)
    throw DomainError("classify: k >= 0");

  const int wp = config.ctx.digits + 6;
  const AiryValues airy = airy_eval(config.x_plus, config.ctx);
  PrecFloat kk = make_float(k, wp);
  PrecFloat x = make_float(config.x_plus, wp);
  PrecFloat y = kk * airy.ai;
  PrecFloat yp = kk * airy.ai_prime;

  // Any trajectory far above the power-law envelope of the window is past
  // the separatrix; capping there spares the expensive crawl into the
  // movable singularity (the verdict is the same).
  PrecFloat cap = 20 * (1 + asymptote(n_power, config.x_minus, wp));
  if (cap > config.blowup_cap)
    cap = config.blowup_cap;

  // integrate in segments so oscillatory verdicts exit early
  const PrecFloat seg = make_float(2L, wp);
  while (x > config.x_minus) {
    PrecFloat x_next = x - seg;
    if (x_next < config.x_minus)
      x_next = make_float(config.x_minus, wp);
    OdeProblem p;
    p.n_power = n_power;
    p.x_start = x;
    p.y_start = y;
    p.yp_start = yp;
    p.x_end = x_next;
    p.rel_tol = config.rel_tol;
    p.abs_tol = config.abs_tol;
    p.ctx = config.ctx;
    Trajectory traj = integrate(p, cap);
    if (auto v = scan_samples(n_power, traj, wp))
      return *v;
    if (traj.termination != Termination::ReachedEnd)
      break;  // defensive; scan_samples already covers these
    const auto& last = traj.samples.back();
    x = last.x;
    y = last.y;
    yp = last.yp;
  }
  return Classification{Verdict::Undetermined, make_float(config.x_minus, wp),
                        false};
}

SeparatrixResult find_k(int n_power, const ShootConfig& config) {
  config.validate();
  if (n_power < 2)
    throw DomainError("find_k: n_power >= 2");

  const int wp = config.ctx.digits + 6;
  ShootConfig cfg = config;
  // window depth cap: error growth exp((2/3) sqrt(N-1) |x|^(3/2)) must stay
  // inside the precision budget
  const double depth_cap = -std::pow(
      1.5 * (config.ctx.digits - 4) * 2.302585 / std::sqrt(double(n_power - 1)),
      2.0 / 3.0);

  // The systematic integration drift acts like a k-offset of roughly
  // 1e7 * rel_tol, so wide brackets are classified at relaxed tolerance
  // and only the final iterations pay for config.rel_tol.
  auto classify_deepening = [&](const PrecFloat& k, const PrecFloat& width) {
    PrecFloat tol = width * 1e-11;
    if (tol > 1e-7)
      tol = 1e-7;
    if (tol < config.rel_tol)
      tol = config.rel_tol;
    for (;;) {
      ShootConfig c = cfg;
      c.rel_tol = tol;
      // the launch region has |y| ~ k Ai(x_plus); absolute-tolerance error
      // injected there rides the growing mode like a k-offset, so keep the
      // absolute floor well below rel_tol * Ai(x_plus)
      c.abs_tol = tol * 1e-8;
      Classification cl = classify(n_power, k, c);
      if (cl.verdict != Verdict::Undetermined)
        return cl;
      PrecFloat deeper = cfg.x_minus * make_float(1.25, wp);
      if (deeper.convert_to<double>() < depth_cap)
        throw ConvergenceError(
            "find_k: verdict undetermined within the precision-limited window");
      cfg.x_minus = deeper;
    }
  };

  PrecFloat lo = make_float(0.1, wp);
  PrecFloat hi = make_float(4.0, wp);
  Classification clo = classify_deepening(lo, hi - lo);
  Classification chi = classify_deepening(hi, hi - lo);
  if (clo.verdict == chi.verdict)
    throw BracketError("find_k: bracket endpoints classify identically for N=" +
                       std::to_string(n_power));
  if (clo.verdict != Verdict::Oscillatory || chi.verdict != Verdict::Divergent)
    throw BracketError("find_k: bracket not (Oscillatory, Divergent) for N=" +
                       std::to_string(n_power));

  int iterations = 0;
  while (hi - lo > config.k_tol) {
    PrecFloat mid = (lo + hi) / 2;
    Classification cm = classify_deepening(mid, hi - lo);
    if (cm.verdict == Verdict::Oscillatory)
      lo = mid;
    else
      hi = mid;
    ++iterations;
    if (iterations > 400)
      throw ConvergenceError("find_k: bisection budget exhausted");
  }

  SeparatrixResult r;
  r.n_power = n_power;
  r.k_n = (lo + hi) / 2;
  r.bracket_low = lo;
  r.bracket_high = hi;
  r.iterations = iterations;
  return r;
}

PrecFloat k_bound(int n_power, const PrecContext& ctx) {
  ctx.validate();
  if (n_power < 2)
    throw DomainError("k_bound: n_power >= 2");
  const int wp = ctx.digits + 6;
  const PrecFloat x0 = airy_prime_first_zero(ctx);
  const PrecFloat ai0 = airy_eval(x0, ctx).ai;
  return pow(-make_float(x0, wp) / 2, make_float(1L, wp) / (n_power - 1)) / ai0;
}

std::vector<ScanRow> table_scan(std::span<const int> n_list,
                                const ShootConfig& config) {
  config.validate();
  std::vector<ScanRow> rows;
  rows.reserve(n_list.size());
  for (int n : n_list) {
    ScanRow row;
    row.n_power = n;
    try {
      row.bound = k_bound(n, config.ctx);
      row.result = find_k(n, config);
    } catch (const Error& e) {
      row.error = e.what();
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

}  // namespace genhm
