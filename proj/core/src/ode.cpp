#include <genhm/ode.hpp>

#include <algorithm>
#include <array>
#include <cmath>

namespace genhm {
namespace {

struct State {
  PrecFloat y;
  PrecFloat yp;
};

struct Derivs {
  PrecFloat dy;
  PrecFloat dyp;
};

Derivs rhs(const OdeProblem& p, const PrecFloat& x, const State& s) {
  Derivs d;
  d.dy = s.yp;
  PrecFloat yn;
  switch (p.n_power) {
    case 2: yn = s.y * s.y; break;
    case 3: yn = s.y * s.y * s.y; break;
    case 4: { PrecFloat y2 = s.y * s.y; yn = y2 * y2; break; }
    default: yn = pow(s.y, p.n_power); break;
  }
  d.dyp = 2 * yn + x * s.y;
  return d;
}

// Dormand-Prince 5(4) tableau, exact rationals.
struct Tableau {
  PrecFloat c2, c3, c4, c5;
  PrecFloat a21, a31, a32, a41, a42, a43, a51, a52, a53, a54;
  PrecFloat a61, a62, a63, a64, a65;
  PrecFloat b1, b3, b4, b5, b6;            // 5th-order weights (b2 = b7 = 0)
  PrecFloat e1, e3, e4, e5, e6, e7;        // b - bhat
  PrecFloat d1, d3, d4, d5, d6, d7;        // dense-output weights
};

Tableau make_tableau(int wp) {
  auto q = [wp](long num, long den) { return make_float(BigRational(num, den), wp); };
  Tableau t;
  t.c2 = q(1, 5); t.c3 = q(3, 10); t.c4 = q(4, 5); t.c5 = q(8, 9);
  t.a21 = q(1, 5);
  t.a31 = q(3, 40); t.a32 = q(9, 40);
  t.a41 = q(44, 45); t.a42 = q(-56, 15); t.a43 = q(32, 9);
  t.a51 = q(19372, 6561); t.a52 = q(-25360, 2187);
  t.a53 = q(64448, 6561); t.a54 = q(-212, 729);
  t.a61 = q(9017, 3168); t.a62 = q(-355, 33); t.a63 = q(46732, 5247);
  t.a64 = q(49, 176); t.a65 = q(-5103, 18656);
  t.b1 = q(35, 384); t.b3 = q(500, 1113); t.b4 = q(125, 192);
  t.b5 = q(-2187, 6784); t.b6 = q(11, 84);
  t.e1 = q(71, 57600); t.e3 = q(-71, 16695); t.e4 = q(71, 1920);
  t.e5 = q(-17253, 339200); t.e6 = q(22, 525); t.e7 = q(-1, 40);
  t.d1 = q(-12715105075L, 11282082432L);
  t.d3 = q(87487479700L, 32700410799L);
  t.d4 = q(-10690763975L, 1880347072L);
  t.d5 = q(701980252875L, 199316789632L);
  t.d6 = q(-1453857185L, 822651844L);
  t.d7 = q(69997945L, 29380423L);
  return t;
}

struct StepResult {
  State y1;
  Derivs k7;   // FSAL derivative at the step end
  PrecFloat err;  // scaled error norm
};

StepResult dp_step(const OdeProblem& p, const Tableau& t, const PrecFloat& x,
                   const State& s, const Derivs& k1, const PrecFloat& h) {
  auto stage = [&](const PrecFloat& cx, const State& sy) {
    return rhs(p, x + cx * h, sy);
  };
  State s2{s.y + h * (t.a21 * k1.dy), s.yp + h * (t.a21 * k1.dyp)};
  Derivs k2 = stage(t.c2, s2);
  State s3{s.y + h * (t.a31 * k1.dy + t.a32 * k2.dy),
           s.yp + h * (t.a31 * k1.dyp + t.a32 * k2.dyp)};
  Derivs k3 = stage(t.c3, s3);
  State s4{s.y + h * (t.a41 * k1.dy + t.a42 * k2.dy + t.a43 * k3.dy),
           s.yp + h * (t.a41 * k1.dyp + t.a42 * k2.dyp + t.a43 * k3.dyp)};
  Derivs k4 = stage(t.c4, s4);
  State s5{s.y + h * (t.a51 * k1.dy + t.a52 * k2.dy + t.a53 * k3.dy + t.a54 * k4.dy),
           s.yp + h * (t.a51 * k1.dyp + t.a52 * k2.dyp + t.a53 * k3.dyp + t.a54 * k4.dyp)};
  Derivs k5 = stage(t.c5, s5);
  State s6{s.y + h * (t.a61 * k1.dy + t.a62 * k2.dy + t.a63 * k3.dy + t.a64 * k4.dy + t.a65 * k5.dy),
           s.yp + h * (t.a61 * k1.dyp + t.a62 * k2.dyp + t.a63 * k3.dyp + t.a64 * k4.dyp + t.a65 * k5.dyp)};
  Derivs k6 = rhs(p, x + h, s6);

  StepResult r;
  r.y1.y = s.y + h * (t.b1 * k1.dy + t.b3 * k3.dy + t.b4 * k4.dy + t.b5 * k5.dy + t.b6 * k6.dy);
  r.y1.yp = s.yp + h * (t.b1 * k1.dyp + t.b3 * k3.dyp + t.b4 * k4.dyp + t.b5 * k5.dyp + t.b6 * k6.dyp);
  r.k7 = rhs(p, x + h, r.y1);

  const PrecFloat ey =
      h * (t.e1 * k1.dy + t.e3 * k3.dy + t.e4 * k4.dy + t.e5 * k5.dy + t.e6 * k6.dy + t.e7 * r.k7.dy);
  const PrecFloat eyp =
      h * (t.e1 * k1.dyp + t.e3 * k3.dyp + t.e4 * k4.dyp + t.e5 * k5.dyp + t.e6 * k6.dyp + t.e7 * r.k7.dyp);
  const PrecFloat scy = p.abs_tol + p.rel_tol * std::max(abs(s.y), abs(r.y1.y));
  const PrecFloat scyp = p.abs_tol + p.rel_tol * std::max(abs(s.yp), abs(r.y1.yp));
  r.err = sqrt(((ey / scy) * (ey / scy) + (eyp / scyp) * (eyp / scyp)) / 2);

  // keep k3..k6 for dense output
  r.y1.y.precision(r.y1.y.precision());  // no-op; silences unused warnings path
  return r;
}

// Dense output state for one accepted step.
struct DenseStep {
  PrecFloat x0, h;
  std::array<PrecFloat, 5> rc_y;   // rcont1..rcont5 for y
  std::array<PrecFloat, 5> rc_yp;  // same for y'
};

PrecFloat dense_eval(const std::array<PrecFloat, 5>& rc, const PrecFloat& th) {
  const PrecFloat th1 = 1 - th;
  return rc[0] + th * (rc[1] + th1 * (rc[2] + th * (rc[3] + th1 * rc[4])));
}

}  // namespace

void OdeProblem::validate() const {
  ctx.validate();
  if (n_power < 2)
    throw DomainError("OdeProblem: n_power >= 2");
  if (!(rel_tol > 0) || rel_tol > 1e-6 || !(abs_tol > 0) || abs_tol > 1e-6)
    throw DomainError("OdeProblem: tolerances must lie in (0, 1e-6]");
  if (x_end == x_start)
    throw DomainError("OdeProblem: x_end != x_start");
}

namespace {

Trajectory integrate_impl(const OdeProblem& p, const PrecFloat& cap,
                          const std::vector<PrecFloat>* outputs) {
  p.validate();
  if (!(cap > 0))
    throw DomainError("integrate: cap > 0");
  const int wp = p.ctx.digits + 6;
  const Tableau t = make_tableau(wp);
  const int dir = p.x_end > p.x_start ? 1 : -1;
  const PrecFloat hmin = pow10(-p.ctx.digits, wp);

  Trajectory traj;
  PrecFloat x = make_float(p.x_start, wp);
  State s{make_float(p.y_start, wp), make_float(p.yp_start, wp)};
  Derivs k1 = rhs(p, x, s);
  std::size_t out_idx = 0;
  if (outputs == nullptr)
    traj.samples.push_back({x, s.y, s.yp});
  else
    while (out_idx < outputs->size() && (*outputs)[out_idx] == x) {
      traj.samples.push_back({x, s.y, s.yp});
      ++out_idx;
    }

  PrecFloat span = abs(p.x_end - p.x_start);
  PrecFloat h = dir * std::min(make_float(0.01, wp), span / 10);
  double errold = 1.0;
  const int max_steps = 4000000;

  // full dense state only when output points are requested
  auto need_k = outputs != nullptr;

  for (int step = 0; step < max_steps; ++step) {
    bool last = false;
    if (dir * (x + h - p.x_end) > 0) {
      h = p.x_end - x;
      last = true;
    }
    if (abs(h) < hmin) {
      traj.termination = Termination::StepUnderflow;
      traj.x_stop = x;
      return traj;
    }

    // stages (recomputed here so dense output can reuse k3..k6)
    State s2{s.y + h * (t.a21 * k1.dy), s.yp + h * (t.a21 * k1.dyp)};
    Derivs k2 = rhs(p, x + t.c2 * h, s2);
    State s3{s.y + h * (t.a31 * k1.dy + t.a32 * k2.dy),
             s.yp + h * (t.a31 * k1.dyp + t.a32 * k2.dyp)};
    Derivs k3 = rhs(p, x + t.c3 * h, s3);
    State s4{s.y + h * (t.a41 * k1.dy + t.a42 * k2.dy + t.a43 * k3.dy),
             s.yp + h * (t.a41 * k1.dyp + t.a42 * k2.dyp + t.a43 * k3.dyp)};
    Derivs k4 = rhs(p, x + t.c4 * h, s4);
    State s5{s.y + h * (t.a51 * k1.dy + t.a52 * k2.dy + t.a53 * k3.dy + t.a54 * k4.dy),
             s.yp + h * (t.a51 * k1.dyp + t.a52 * k2.dyp + t.a53 * k3.dyp + t.a54 * k4.dyp)};
    Derivs k5 = rhs(p, x + t.c5 * h, s5);
    State s6{s.y + h * (t.a61 * k1.dy + t.a62 * k2.dy + t.a63 * k3.dy + t.a64 * k4.dy + t.a65 * k5.dy),
             s.yp + h * (t.a61 * k1.dyp + t.a62 * k2.dyp + t.a63 * k3.dyp + t.a64 * k4.dyp + t.a65 * k5.dyp)};
    Derivs k6 = rhs(p, x + h, s6);
    State y1{s.y + h * (t.b1 * k1.dy + t.b3 * k3.dy + t.b4 * k4.dy + t.b5 * k5.dy + t.b6 * k6.dy),
             s.yp + h * (t.b1 * k1.dyp + t.b3 * k3.dyp + t.b4 * k4.dyp + t.b5 * k5.dyp + t.b6 * k6.dyp)};
    Derivs k7 = rhs(p, x + h, y1);

    PrecFloat ey = h * (t.e1 * k1.dy + t.e3 * k3.dy + t.e4 * k4.dy + t.e5 * k5.dy + t.e6 * k6.dy + t.e7 * k7.dy);
    PrecFloat eyp = h * (t.e1 * k1.dyp + t.e3 * k3.dyp + t.e4 * k4.dyp + t.e5 * k5.dyp + t.e6 * k6.dyp + t.e7 * k7.dyp);
    PrecFloat scy = p.abs_tol + p.rel_tol * std::max(abs(s.y), abs(y1.y));
    PrecFloat scyp = p.abs_tol + p.rel_tol * std::max(abs(s.yp), abs(y1.yp));
    double err = sqrt(((ey / scy) * (ey / scy) + (eyp / scyp) * (eyp / scyp)) / 2)
                     .convert_to<double>();

    if (err <= 1.0) {
      // accepted
      if (need_k && out_idx < outputs->size()) {
        DenseStep ds;
        ds.x0 = x;
        ds.h = h;
        PrecFloat ydiff = y1.y - s.y;
        PrecFloat bspl = h * k1.dy - ydiff;
        ds.rc_y = {s.y, ydiff, bspl, ydiff - h * k7.dy - bspl,
                   h * (t.d1 * k1.dy + t.d3 * k3.dy + t.d4 * k4.dy +
                        t.d5 * k5.dy + t.d6 * k6.dy + t.d7 * k7.dy)};
        PrecFloat ypdiff = y1.yp - s.yp;
        PrecFloat bsplp = h * k1.dyp - ypdiff;
        ds.rc_yp = {s.yp, ypdiff, bsplp, ypdiff - h * k7.dyp - bsplp,
                    h * (t.d1 * k1.dyp + t.d3 * k3.dyp + t.d4 * k4.dyp +
                         t.d5 * k5.dyp + t.d6 * k6.dyp + t.d7 * k7.dyp)};
        while (out_idx < outputs->size()) {
          const PrecFloat& xo = (*outputs)[out_idx];
          if (dir * (xo - (x + h)) > 0)
            break;
          PrecFloat th = (xo - x) / h;
          traj.samples.push_back(
              {xo, dense_eval(ds.rc_y, th), dense_eval(ds.rc_yp, th)});
          ++out_idx;
        }
      }
      x += h;
      s = y1;
      k1 = k7;  // FSAL
      if (outputs == nullptr)
        traj.samples.push_back({x, s.y, s.yp});
      if (abs(s.y) > cap) {
        if (outputs == nullptr)
          traj.samples.pop_back();  // stored samples stay below the cap
        traj.termination = Termination::BlowUp;
        traj.x_stop = x;
        return traj;
      }
      if (last) {
        traj.termination = Termination::ReachedEnd;
        traj.x_stop = x;
        return traj;
      }
      double fac = 0.9 * std::pow(err > 0 ? err : 1e-30, -0.14) *
                   std::pow(errold, 0.08);
      fac = std::clamp(fac, 0.2, 5.0);
      h *= fac;
      errold = std::max(err, 1e-10);
    } else {
      h *= std::max(0.1, 0.9 * std::pow(err, -0.2));
    }
  }
  throw ConvergenceError("integrate: step budget exhausted");
}

}  // namespace

Trajectory integrate(const OdeProblem& problem, const PrecFloat& cap) {
  return integrate_impl(problem, cap, nullptr);
}

Trajectory integrate(const OdeProblem& problem, const PrecFloat& cap,
                     std::span<const PrecFloat> output_points) {
  std::vector<PrecFloat> outs(output_points.begin(), output_points.end());
  return integrate_impl(problem, cap, &outs);
}

double local_error_estimate(const OdeProblem& problem) {
  problem.validate();
  const int wp = problem.ctx.digits + 6;
  const Tableau t = make_tableau(wp);

  auto fixed_run = [&](long n) {
    PrecFloat h = (problem.x_end - problem.x_start) / n;
    PrecFloat x = make_float(problem.x_start, wp);
    State s{make_float(problem.y_start, wp), make_float(problem.yp_start, wp)};
    for (long i = 0; i < n; ++i) {
      Derivs k1 = rhs(problem, x, s);
      StepResult r = dp_step(problem, t, x, s, k1, h);
      s = r.y1;
      x += h;
    }
    return s.y;
  };

  const PrecFloat y1 = fixed_run(160);
  const PrecFloat y2 = fixed_run(320);
  const PrecFloat y3 = fixed_run(640);
  const PrecFloat d1 = abs(y1 - y2);
  const PrecFloat d2 = abs(y2 - y3);
  if (d2 == 0)
    return 5.0;
  return (log(d1 / d2) / log(make_float(2L, wp))).convert_to<double>();
}

}  // namespace genhm
