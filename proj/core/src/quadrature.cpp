#include <genhm/quadrature.hpp>

#include <cmath>
#include <map>
#include <mutex>

namespace genhm {

const std::vector<std::pair<PrecFloat, PrecFloat>>& gauss_legendre(int n,
                                                                   int digits) {
  if (n < 2)
    throw DomainError("gauss_legendre: n >= 2");
  static std::mutex mu;
  static std::map<std::pair<int, int>, std::vector<std::pair<PrecFloat, PrecFloat>>> cache;
  std::lock_guard<std::mutex> lock(mu);
  auto key = std::make_pair(n, digits);
  auto it = cache.find(key);
  if (it != cache.end())
    return it->second;

  const int wp = digits + 8;
  std::vector<std::pair<PrecFloat, PrecFloat>> nw;
  nw.reserve(static_cast<std::size_t>(n));
  const PrecFloat tol = pow10(-(digits + 4), wp);
  for (int i = 1; i <= n; ++i) {
    // Chebyshev initial guess, then Newton on P_n
    PrecFloat x = make_float(
        std::cos(M_PI * (i - 0.25) / (n + 0.5)), wp);
    PrecFloat dp;
    for (int iter = 0; iter < 200; ++iter) {
      PrecFloat p0 = make_float(1L, wp);
      PrecFloat p1 = x;
      for (int k = 2; k <= n; ++k) {
        PrecFloat p2 = ((2 * k - 1) * x * p1 - (k - 1) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      dp = n * (x * p1 - p0) / (x * x - 1);
      PrecFloat step = p1 / dp;
      x -= step;
      if (abs(step) < tol)
        break;
    }
    PrecFloat w = 2 / ((1 - x * x) * dp * dp);
    nw.emplace_back(x, w);
  }
  return cache.emplace(key, std::move(nw)).first->second;
}

namespace {

struct Panel {
  PrecFloat a, b;
  int depth;
};

template <typename Eval2>
std::pair<PrecFloat, PrecFloat> rule_pair(const Eval2& g, const PrecFloat& a,
                                          const PrecFloat& b,
                                          const std::vector<std::pair<PrecFloat, PrecFloat>>& nw) {
  const PrecFloat mid = (a + b) / 2;
  const PrecFloat hw = (b - a) / 2;
  PrecFloat s1 = make_float(0L, static_cast<int>(mid.precision()));
  PrecFloat s2 = s1;
  for (const auto& [t, w] : nw) {
    auto [v1, v2] = g(mid + hw * t);
    s1 += w * v1;
    s2 += w * v2;
  }
  return {s1 * hw, s2 * hw};
}

}  // namespace

std::pair<PrecFloat, PrecFloat> adaptive_gauss_pair(
    const std::function<std::pair<PrecFloat, PrecFloat>(const PrecFloat&)>& g,
    const PrecFloat& a, const PrecFloat& b, const PrecFloat& tol1,
    const PrecFloat& tol2, int digits, int n) {
  const int wp = digits + 8;
  const auto& nw = gauss_legendre(n, digits);
  const PrecFloat total = abs(b - a);
  PrecFloat acc1 = make_float(0L, wp);
  PrecFloat acc2 = make_float(0L, wp);
  std::vector<Panel> stack;
  stack.push_back({make_float(a, wp), make_float(b, wp), 0});
  while (!stack.empty()) {
    Panel p = stack.back();
    stack.pop_back();
    const PrecFloat mid = (p.a + p.b) / 2;
    auto whole = rule_pair(g, p.a, p.b, nw);
    auto left = rule_pair(g, p.a, mid, nw);
    auto right = rule_pair(g, mid, p.b, nw);
    const PrecFloat err1 = abs(whole.first - left.first - right.first);
    const PrecFloat err2 = abs(whole.second - left.second - right.second);
    const PrecFloat share = abs(p.b - p.a) / total;
    if (err1 <= tol1 * share && err2 <= tol2 * share) {
      acc1 += left.first + right.first;
      acc2 += left.second + right.second;
    } else if (p.depth >= 48) {
      throw ConvergenceError("adaptive_gauss_pair: refinement depth exhausted");
    } else {
      stack.push_back({p.a, mid, p.depth + 1});
      stack.push_back({mid, p.b, p.depth + 1});
    }
  }
  return {acc1, acc2};
}

PrecFloat adaptive_gauss(const std::function<PrecFloat(const PrecFloat&)>& f,
                         const PrecFloat& a, const PrecFloat& b,
                         const PrecFloat& rel_tol, int digits, int n) {
  // bootstrap an absolute scale with a single coarse pass
  const auto& nw = gauss_legendre(n, digits);
  auto g = [&f](const PrecFloat& x) {
    PrecFloat v = f(x);
    return std::make_pair(v, v);
  };
  auto coarse = rule_pair(g, a, b, nw);
  PrecFloat scale = abs(coarse.first);
  if (scale == 0)
    scale = 1;
  PrecFloat tol = rel_tol * scale;
  auto r = adaptive_gauss_pair(g, a, b, tol, tol, digits, n);
  return r.first;
}

SpectralGrid::SpectralGrid(const PrecFloat& a, const PrecFloat& b, int n_panels,
                           int nodes_per_panel, int digits)
    : n_panels_(n_panels), npp_(nodes_per_panel), digits_(digits) {
  if (n_panels < 1 || nodes_per_panel < 4)
    throw DomainError("SpectralGrid: need >= 1 panel and >= 4 nodes");
  const int wp = digits + 8;
  a_ = make_float(a, wp);
  b_ = make_float(b, wp);
  panel_h_ = (b_ - a_) / n_panels_;
  const auto& nw = gauss_legendre(npp_, digits);
  ref_nodes_.reserve(static_cast<std::size_t>(npp_));
  ref_w_.reserve(static_cast<std::size_t>(npp_));
  for (const auto& [t, w] : nw) {
    ref_nodes_.push_back(t);
    ref_w_.push_back(w);
  }
  // gauss_legendre returns nodes in descending order; sort ascending
  for (std::size_t i = 0, j = ref_nodes_.size() - 1; i < j; ++i, --j) {
    std::swap(ref_nodes_[i], ref_nodes_[j]);
    std::swap(ref_w_[i], ref_w_[j]);
  }

  bary_.assign(static_cast<std::size_t>(npp_), make_float(1L, wp));
  for (int i = 0; i < npp_; ++i)
    for (int k = 0; k < npp_; ++k)
      if (k != i)
        bary_[static_cast<std::size_t>(i)] /=
            (ref_nodes_[static_cast<std::size_t>(i)] - ref_nodes_[static_cast<std::size_t>(k)]);

  partial_.resize(static_cast<std::size_t>(npp_));
  for (int j = 0; j < npp_; ++j)
    partial_[static_cast<std::size_t>(j)] = partial_row(ref_nodes_[static_cast<std::size_t>(j)]);

  nodes_.reserve(static_cast<std::size_t>(n_panels_ * npp_));
  for (int p = 0; p < n_panels_; ++p) {
    const PrecFloat lo = a_ + p * panel_h_;
    const PrecFloat mid = lo + panel_h_ / 2;
    for (int j = 0; j < npp_; ++j)
      nodes_.push_back(mid + panel_h_ / 2 * ref_nodes_[static_cast<std::size_t>(j)]);
  }
}

std::vector<PrecFloat> SpectralGrid::partial_row(const PrecFloat& tau) const {
  // integral over [tau, 1] of each Lagrange basis L_i, by Gauss-Legendre of
  // matching degree on the subinterval with barycentric evaluation
  const int wp = digits_ + 8;
  const auto& nw = gauss_legendre(npp_, digits_);
  std::vector<PrecFloat> row(static_cast<std::size_t>(npp_), make_float(0L, wp));
  const PrecFloat mid = (tau + 1) / 2;
  const PrecFloat hw = (1 - tau) / 2;
  if (hw == 0)
    return row;
  for (const auto& [t, w] : nw) {
    const PrecFloat z = mid + hw * t;
    // evaluate all L_i(z) barycentrically
    // guard: z coincides with a reference node
    int hit = -1;
    for (int i = 0; i < npp_; ++i)
      if (z == ref_nodes_[static_cast<std::size_t>(i)]) {
        hit = i;
        break;
      }
    if (hit >= 0) {
      row[static_cast<std::size_t>(hit)] += w;
      continue;
    }
    PrecFloat prod = make_float(1L, wp);
    for (int i = 0; i < npp_; ++i)
      prod *= (z - ref_nodes_[static_cast<std::size_t>(i)]);
    for (int i = 0; i < npp_; ++i) {
      PrecFloat li = prod * bary_[static_cast<std::size_t>(i)] /
                     (z - ref_nodes_[static_cast<std::size_t>(i)]);
      row[static_cast<std::size_t>(i)] += w * li;
    }
  }
  for (auto& v : row)
    v *= hw;
  return row;
}

std::vector<PrecFloat> SpectralGrid::suffix_integrals(
    std::span<const PrecFloat> f) const {
  if (static_cast<int>(f.size()) != n_panels_ * npp_)
    throw DomainError("suffix_integrals: size mismatch");
  const int wp = digits_ + 8;
  const PrecFloat hw = panel_h_ / 2;
  // full integrals per panel, then running suffix
  std::vector<PrecFloat> panel_full(static_cast<std::size_t>(n_panels_),
                                    make_float(0L, wp));
  for (int p = 0; p < n_panels_; ++p) {
    PrecFloat s = make_float(0L, wp);
    for (int j = 0; j < npp_; ++j)
      s += ref_w_[static_cast<std::size_t>(j)] * f[static_cast<std::size_t>(p * npp_ + j)];
    panel_full[static_cast<std::size_t>(p)] = s * hw;
  }
  std::vector<PrecFloat> panel_suffix(static_cast<std::size_t>(n_panels_) + 1,
                                      make_float(0L, wp));
  for (int p = n_panels_ - 1; p >= 0; --p)
    panel_suffix[static_cast<std::size_t>(p)] =
        panel_suffix[static_cast<std::size_t>(p) + 1] + panel_full[static_cast<std::size_t>(p)];

  std::vector<PrecFloat> out(f.size(), make_float(0L, wp));
  for (int p = 0; p < n_panels_; ++p)
    for (int j = 0; j < npp_; ++j) {
      PrecFloat s = make_float(0L, wp);
      const auto& row = partial_[static_cast<std::size_t>(j)];
      for (int i = 0; i < npp_; ++i)
        s += row[static_cast<std::size_t>(i)] * f[static_cast<std::size_t>(p * npp_ + i)];
      out[static_cast<std::size_t>(p * npp_ + j)] =
          s * hw + panel_suffix[static_cast<std::size_t>(p) + 1];
    }
  return out;
}

PrecFloat SpectralGrid::suffix_at(const PrecFloat& x,
                                  std::span<const PrecFloat> f) const {
  const int wp = digits_ + 8;
  if (x <= a_)
    return integrate(f);
  if (x >= b_)
    return make_float(0L, wp);
  PrecFloat rel = (x - a_) / panel_h_;
  int p = static_cast<int>(floor(rel).convert_to<long>());
  if (p >= n_panels_)
    p = n_panels_ - 1;
  const PrecFloat lo = a_ + p * panel_h_;
  const PrecFloat tau = 2 * (x - lo) / panel_h_ - 1;
  std::vector<PrecFloat> row = partial_row(tau);
  PrecFloat s = make_float(0L, wp);
  for (int i = 0; i < npp_; ++i)
    s += row[static_cast<std::size_t>(i)] * f[static_cast<std::size_t>(p * npp_ + i)];
  s *= panel_h_ / 2;
  // suffix of the following panels
  PrecFloat rest = make_float(0L, wp);
  const PrecFloat hw = panel_h_ / 2;
  for (int q = p + 1; q < n_panels_; ++q) {
    PrecFloat sq = make_float(0L, wp);
    for (int j = 0; j < npp_; ++j)
      sq += ref_w_[static_cast<std::size_t>(j)] * f[static_cast<std::size_t>(q * npp_ + j)];
    rest += sq * hw;
  }
  return s + rest;
}

PrecFloat SpectralGrid::integrate(std::span<const PrecFloat> f) const {
  const int wp = digits_ + 8;
  const PrecFloat hw = panel_h_ / 2;
  PrecFloat acc = make_float(0L, wp);
  for (int p = 0; p < n_panels_; ++p) {
    PrecFloat s = make_float(0L, wp);
    for (int j = 0; j < npp_; ++j)
      s += ref_w_[static_cast<std::size_t>(j)] * f[static_cast<std::size_t>(p * npp_ + j)];
    acc += s * hw;
  }
  return acc;
}

}  // namespace genhm
