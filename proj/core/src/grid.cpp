#include "compkern/grid.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "compkern/error.hpp"

namespace compkern {

double median_heuristic(const CompositionList& xs, MedianSpace space, double c) {
  const std::size_t n = xs.size();
  if (n < 2) throw Error(ErrorCode::kInvalidParameters, "median heuristic needs n >= 2");
  common_dimension(xs);
  std::vector<Eigen::VectorXd> pts;
  pts.reserve(n);
  for (const auto& x : xs) {
    pts.push_back(space == MedianSpace::kRaw ? x.vector() : clr_shifted(x, c));
  }
  std::vector<double> d2;
  d2.reserve(n * (n - 1) / 2);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) d2.push_back((pts[i] - pts[j]).squaredNorm());
  }
  const std::size_t m = d2.size();
  const auto mid = d2.begin() + static_cast<std::ptrdiff_t>(m / 2);
  std::nth_element(d2.begin(), mid, d2.end());
  double med = *mid;
  if (m % 2 == 0) {
    const double lower = *std::max_element(d2.begin(), mid);
    med = 0.5 * (lower + med);
  }
  if (!(med > 0.0)) {
    throw Error(ErrorCode::kAllPointsIdentical,
                "median pairwise squared distance is 0; supply an explicit bandwidth");
  }
  return med;
}

double min_nonzero_value(const CompositionList& xs) {
  double mu = kInf;
  for (const auto& x : xs) {
    for (std::size_t j = 0; j < x.size(); ++j) {
      if (x[j] > 0.0) mu = std::min(mu, x[j]);
    }
  }
  if (!std::isfinite(mu)) throw Error(ErrorCode::kInvalidParameters, "no nonzero entries");
  return mu;
}

std::vector<double> geomspace(double lo, double hi, std::size_t n) {
  std::vector<double> out;
  if (n == 0) return out;
  if (n == 1) return {lo};
  const double a = std::log10(lo);
  const double b = std::log10(hi);
  out.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double f = static_cast<double>(i) / static_cast<double>(n - 1);
    out.push_back(std::pow(10.0, a + f * (b - a)));
  }
  // Pin the endpoints exactly.
  out.front() = lo;
  out.back() = hi;
  return out;
}

std::vector<double> default_lambdas() { return geomspace(1e-5, 1e2, 40); }

std::vector<double> aitchison_shift_grid(const CompositionList& xs, std::size_t count) {
  const double half_mu = min_nonzero_value(xs) / 2.0;
  const double lo = half_mu * 1e-4;
  const double hi = std::min(half_mu * 1e4, 1e-2);
  return geomspace(lo, hi, count);
}

ParamGrid default_grid(const CompositionList& xs, const GridOptions& options) {
  if (xs.size() < 2) throw Error(ErrorCode::kInvalidParameters, "default grid needs n >= 2");
  ParamGrid grid;
  auto& k = grid.kernels;

  k.push_back(KernelSpec::linear());

  const double m1 = median_heuristic(xs, MedianSpace::kRaw);
  for (int e = -2; e <= 4; ++e) k.push_back(KernelSpec::rbf(std::pow(10.0, e) * m1));

  const double pairs_js[][2] = {{1, 0.5},    {1, 1},      {10, 0.5}, {10, 1},     {10, 10},
                                {kInf, 0.5}, {kInf, 1.0}, {kInf, 10}, {kInf, kInf}};
  for (const auto& ab : pairs_js) k.push_back(KernelSpec::generalized_js(ab[0], ab[1]));

  const double pairs_h[][2] = {{1, -1},  {1, -10},  {1, -kInf},  {10, -1},
                               {10, -10}, {10, -kInf}, {kInf, -1}, {kInf, -10}};
  for (const auto& ab : pairs_h) k.push_back(KernelSpec::hilbertian(ab[0], ab[1]));

  for (double c : aitchison_shift_grid(xs, 9)) k.push_back(KernelSpec::aitchison(c));

  for (double c : aitchison_shift_grid(xs, 5)) {
    const double m2 = median_heuristic(xs, MedianSpace::kClr, c);
    for (double f : {0.1, 1.0, 10.0}) k.push_back(KernelSpec::aitchison_rbf(c, f * m2));
  }

  if (options.heat_t) {
    for (double t : *options.heat_t) k.push_back(KernelSpec::heat_diffusion(t));
  } else {
    const std::size_t n = options.heat_n.value_or(xs.size());
    if (n < 2) throw Error(ErrorCode::kInvalidParameters, "heat grid needs n >= 2");
    const double expo = 2.0 / static_cast<double>(n - 1);
    for (double x : geomspace(1e-20, 10.0, 6)) {
      k.push_back(KernelSpec::heat_diffusion(std::pow(x, expo) / (4.0 * std::numbers::pi)));
    }
  }

  grid.lambdas = default_lambdas();
  return grid;
}

}  // namespace compkern
