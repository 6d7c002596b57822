#pragma once

#include <genhm/precision.hpp>

#include <functional>
#include <span>
#include <utility>
#include <vector>

namespace genhm {

/// Integrand decay failure for the semi-infinite Airy-kernel integrals.
class DecayError : public Error {
public:
  using Error::Error;
};

/// Gauss-Legendre nodes/weights on [-1, 1], computed by Newton iteration on
/// the Legendre recurrence at the requested precision. Cached per (n, digits).
const std::vector<std::pair<PrecFloat, PrecFloat>>& gauss_legendre(int n,
                                                                   int digits);

/// Adaptive panel quadrature of f on [a, b]: a panel is accepted when the
/// n-point rule and the same rule on its two halves agree within the
/// panel's share of the tolerance (Gauss-Kronrod-style pairing via
/// h-refinement, so the node set stays exact at any precision).
PrecFloat adaptive_gauss(const std::function<PrecFloat(const PrecFloat&)>& f,
                         const PrecFloat& a, const PrecFloat& b,
                         const PrecFloat& rel_tol, int digits, int n = 15);

/// Same machinery for two integrands sharing every node and panel decision;
/// component errors are judged against tol1/tol2 (absolute, per panel share).
std::pair<PrecFloat, PrecFloat> adaptive_gauss_pair(
    const std::function<std::pair<PrecFloat, PrecFloat>(const PrecFloat&)>& g,
    const PrecFloat& a, const PrecFloat& b, const PrecFloat& tol1,
    const PrecFloat& tol2, int digits, int n = 15);

/// Fixed spectral grid: uniform panels over [a, b], each carrying the same
/// Gauss-Legendre nodes, with precomputed partial-integral weights so that
/// all suffix integrals int_z^b of a node-sampled function come out in one
/// pass. This is what the Picard iteration and the linear towers run on:
/// iterates live on the nodes and never need off-grid interpolation.
class SpectralGrid {
public:
  SpectralGrid(const PrecFloat& a, const PrecFloat& b, int n_panels,
               int nodes_per_panel, int digits);

  const std::vector<PrecFloat>& nodes() const { return nodes_; }
  const PrecFloat& a() const { return a_; }
  const PrecFloat& b() const { return b_; }
  int digits() const { return digits_; }

  /// suffix[i] = integral over [node_i, b] of the per-panel interpolant.
  std::vector<PrecFloat> suffix_integrals(std::span<const PrecFloat> f) const;

  /// integral over [x, b] for x anywhere in [a, b], from node samples.
  PrecFloat suffix_at(const PrecFloat& x, std::span<const PrecFloat> f) const;

  PrecFloat integrate(std::span<const PrecFloat> f) const;

private:
  // integral over [tau, 1] of each reference Lagrange basis polynomial
  std::vector<PrecFloat> partial_row(const PrecFloat& tau) const;

  PrecFloat a_, b_, panel_h_;
  int n_panels_, npp_, digits_;
  std::vector<PrecFloat> nodes_;                 // size n_panels * npp
  std::vector<PrecFloat> ref_nodes_, ref_w_;     // reference panel [-1,1]
  std::vector<PrecFloat> bary_;                  // barycentric weights
  std::vector<std::vector<PrecFloat>> partial_;  // partial_[j][i]
};

}  // namespace genhm
