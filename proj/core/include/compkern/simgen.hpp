#pragma once

// Synthetic designs: a block-correlated lognormal composition with a
// total-variation-kernel response, an i.i.d. lognormal composition, and a
// harness contrasting CFI with relative influence and permutation importance.
//
// All draws come from Rng (counter-based SplitMix64 with Box-Muller normals),
// so a seed fixes every dataset bit for bit.

#include <array>
#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include <Eigen/Core>

#include "compkern/composition.hpp"
#include "compkern/datio.hpp"
#include "compkern/interpret.hpp"

namespace compkern {

struct SimData {
  CompositionList x;
  Eigen::VectorXd y;  // empty for designs without a response
};

// Fixed centre point of the block design (sums to 1 up to the stored digits).
const std::array<double, 9>& block_tv_center();

// Total-variation kernel centred at the barycentre:
// -1/4 sum_j (|x_j - y_j| - |x_j - 1/p| - |y_j - 1/p|).
double tv_kernel(std::span<const double> x, std::span<const double> y);

// f(x) = 100 * tv_kernel(z, x) with z = block_tv_center().
double block_tv_function(const Composition& x);

// p = 9: three i.i.d. blocks of LogNormal(0, Sigma), Sigma with unit diagonal
// and off-diagonals (0.25, -0.25, 0.25), normalized to the simplex;
// y = f(x) + noise_sd * N(0, 1). Per sample the stream yields the 9 block
// normals (block by block) and then the noise draw, whatever noise_sd is.
SimData gen_block_lognormal(std::size_t n, std::uint64_t seed, double noise_sd = 1.0);

// p i.i.d. LogNormal(0, 1) parts per sample, normalized (p = 3 by default).
CompositionList gen_lognormal_iid(std::size_t n, std::uint64_t seed, std::size_t p = 3);

// Packs simulated data in the dataset schema: features x1..xp, ids s1..sn,
// label column "y" when a response is present.
Dataset to_dataset(const SimData& sim);

struct FunctionImportance {
  std::string name;
  Eigen::VectorXd cfi;
  Eigen::VectorXd ri;  // mean partial derivative, off the simplex
  Eigen::VectorXd pi;  // permutation importance, 10 permutations
  std::vector<CpdCurve> cpd;
  std::vector<std::vector<double>> pdp;  // per coordinate, aligned with grid
};

struct ImportanceComparison {
  std::size_t n = 0;
  std::uint64_t seed = 0;
  std::vector<double> grid;
  FunctionImportance f1;  // 10 x^1 + 10 x^2
  FunctionImportance f2;  // (1 - x^2 - x^3) / (1 - x^3)
  // f1: CFI_3 < 0 with RI_3 = PI_3 = 0; f2: |CFI_3| < 1e-6, PI_3 > 0 and
  // |CFI_1 + CFI_2| < 1e-8.
  bool pattern_holds = false;
};

ImportanceComparison compare_cfi_pi_pdp(std::size_t n = 100, std::uint64_t seed = 0);

// function,feature,cfi,ri,pi
void write_importance_csv(const std::filesystem::path& path, const ImportanceComparison& cmp);
// function,feature,z,cpd,pdp
void write_importance_curves_csv(const std::filesystem::path& path,
                                 const ImportanceComparison& cmp);

}  // namespace compkern
