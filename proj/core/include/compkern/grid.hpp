#pragma once

// Default hyperparameter grids and the median bandwidth heuristic.

#include <optional>
#include <vector>

#include "compkern/composition.hpp"
#include "compkern/kernel_spec.hpp"

namespace compkern {

enum class MedianSpace { kRaw, kClr };

// Median of the n(n-1)/2 pairwise squared Euclidean distances, either on the
// raw coordinates or on clr_shifted(x, c). An even number of pairs averages
// the two middle values. Throws AllPointsIdentical when the median is 0.
double median_heuristic(const CompositionList& xs, MedianSpace space = MedianSpace::kRaw,
                        double c = 0.0);

// Smallest strictly positive entry over all compositions.
double min_nonzero_value(const CompositionList& xs);

// n values evenly spaced on a log scale from lo to hi inclusive.
std::vector<double> geomspace(double lo, double hi, std::size_t n);

struct ParamGrid {
  std::vector<KernelSpec> kernels;
  std::vector<double> lambdas;
};

struct GridOptions {
  // Replaces the n in t = x^(2/(n-1)) / (4 pi); defaults to the sample size.
  std::optional<std::size_t> heat_n;
  // Explicit heat-diffusion times; overrides the x-grid entirely.
  std::optional<std::vector<double>> heat_t;
};

// 40 log-spaced ridge penalties in [1e-5, 1e2].
std::vector<double> default_lambdas();

// Zero-shift values for the Aitchison kernels: `count` log-spaced points in
// [mu/2 * 1e-4, min(mu/2 * 1e4, 1e-2)], mu the smallest nonzero entry.
std::vector<double> aitchison_shift_grid(const CompositionList& xs, std::size_t count);

// The 55-kernel default grid: linear (1), RBF (7), generalized-JS (9),
// Hilbertian (8), Aitchison (9), Aitchison-RBF (5 shifts x 3 bandwidths) and
// heat-diffusion (6), plus default_lambdas().
ParamGrid default_grid(const CompositionList& xs, const GridOptions& options = {});

}  // namespace compkern
