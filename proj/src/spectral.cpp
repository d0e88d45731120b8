#include "balnet/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <string>

namespace balnet {

UpdateMatrix build_update_matrix(const Digraph& g, std::span<const double> beta) {
  const std::size_t n = g.node_count();
  if (beta.size() != n) throw std::invalid_argument("beta has wrong length");
  UpdateMatrix p{Matrix(n), std::vector<double>(beta.begin(), beta.end())};
  for (NodeId j = 0; j < n; ++j) {
    p.entries(j, j) = 1.0 - beta[j];
    const double share = beta[j] / static_cast<double>(g.out_degree(j));
    for (NodeId i : g.in_neighbors(j)) p.entries(j, i) = share;
  }
  return p;
}

Matrix column_stochastic_companion(const Digraph& g, std::span<const double> beta) {
  const std::size_t n = g.node_count();
  if (beta.size() != n) throw std::invalid_argument("beta has wrong length");
  Matrix c(n);
  for (NodeId i = 0; i < n; ++i) {
    c(i, i) = 1.0 - beta[i];
    // Column i spreads beta_i evenly over the out-neighbors of i.
    const double share = beta[i] / static_cast<double>(g.out_degree(i));
    for (NodeId l : g.out_neighbors(i)) c(l, i) = share;
  }
  return c;
}

SpectralReport spectrum(const Matrix& m, const SpectrumOptions& options) {
  SpectralReport rep;
  rep.eigenvalues = eigenvalues(m, options.eigen);
  rep.moduli.reserve(rep.eigenvalues.size());
  for (const auto& lambda : rep.eigenvalues) rep.moduli.push_back(std::abs(lambda));
  std::sort(rep.moduli.begin(), rep.moduli.end(), std::greater<>());
  rep.rho = rep.moduli.empty() ? 0.0 : rep.moduli.front();

  // Drop the single eigenvalue nearest 1; a repeated unit eigenvalue then
  // shows up in delta.
  std::size_t unit = rep.eigenvalues.size();
  double nearest = options.unit_tol;
  for (std::size_t i = 0; i < rep.eigenvalues.size(); ++i) {
    const double d = std::abs(rep.eigenvalues[i] - 1.0);
    if (d <= nearest) {
      nearest = d;
      unit = i;
    }
  }
  rep.delta = 0.0;
  for (std::size_t i = 0; i < rep.eigenvalues.size(); ++i) {
    if (i != unit) rep.delta = std::max(rep.delta, std::abs(rep.eigenvalues[i]));
  }
  if (rep.delta < 1e-12) rep.delta = 0.0;
  rep.rate = rep.delta == 0.0 ? std::numeric_limits<double>::infinity() : -std::log(rep.delta);

  const auto at_radius = std::count_if(rep.moduli.begin(), rep.moduli.end(),
                                       [&](double mod) { return rep.rho - mod <= options.unit_tol; });
  rep.primitive = at_radius == 1;
  return rep;
}

SpectralReport spectrum(const UpdateMatrix& m, const SpectrumOptions& options) {
  return spectrum(m.entries, options);
}

double convergence_rate(const SpectralReport& report) {
  if (report.one_step_contraction()) {
    throw std::domain_error("rate undefined: delta = 0 (one-step contraction)");
  }
  if (!report.primitive || report.delta >= 1.0) {
    throw std::domain_error("rate undefined: update matrix is not primitive (delta = " +
                            std::to_string(report.delta) + ")");
  }
  return -std::log(report.delta);
}

double empirical_rate(const RunTrace& trace, double tail_fraction, TraceMetric metric) {
  if (!(tail_fraction > 0.0 && tail_fraction <= 1.0)) {
    throw std::invalid_argument("tail fraction must lie in (0, 1]");
  }
  constexpr std::size_t skip = 10;
  constexpr double floor = 1e-14;
  std::vector<std::pair<double, double>> pts;
  for (const RoundRecord& rec : trace.rounds) {
    if (rec.round < skip) continue;
    double value = rec.epsilon;
    if (metric == TraceMetric::ab) {
      if (!rec.ab) throw std::domain_error("trace has no ab column");
      value = *rec.ab;
    }
    if (!(value > floor)) continue;
    pts.emplace_back(static_cast<double>(rec.round), std::log(value));
  }
  const auto keep = static_cast<std::size_t>(std::ceil(tail_fraction * static_cast<double>(pts.size())));
  if (keep < 10) {
    throw std::domain_error("too few usable rounds for a rate fit (" + std::to_string(keep) + ")");
  }
  pts.erase(pts.begin(), pts.end() - static_cast<std::ptrdiff_t>(keep));

  double mx = 0.0, my = 0.0;
  for (auto [k, v] : pts) {
    mx += k;
    my += v;
  }
  mx /= static_cast<double>(keep);
  my /= static_cast<double>(keep);
  double sxy = 0.0, sxx = 0.0;
  for (auto [k, v] : pts) {
    sxy += (k - mx) * (v - my);
    sxx += (k - mx) * (k - mx);
  }
  const double rate = -sxy / sxx;
  if (!(rate > 1e-6)) {
    throw std::domain_error("no decay: fitted rate " + std::to_string(rate));
  }
  return rate;
}

}  // namespace balnet
