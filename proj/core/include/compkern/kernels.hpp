#pragma once

// Kernel evaluation, induced distances and Gram assembly for every family in
// the catalog, weighted or not.

#include <cstddef>
#include <memory>

#include <Eigen/Core>

#include "compkern/composition.hpp"
#include "compkern/kernel_spec.hpp"

namespace compkern {

// Evaluates one kernel repeatedly. Per-point quantities (clr vectors, W-products,
// reference-point terms) are computed once by prepare() and reused across pairs.
class KernelEvaluator {
 public:
  struct Prepared {
    Eigen::VectorXd v;   // x, clr(x) or sqrt(x) depending on the family
    Eigen::VectorXd wv;  // W * v for the weighted inner-product forms
    double s = 0.0;      // family-specific scalar (reference or quadratic term)
  };

  // Validates the spec and, when weighted, that W is p x p.
  KernelEvaluator(KernelSpec spec, std::size_t p);

  Prepared prepare(const Composition& x) const;
  double eval(const Prepared& x, const Prepared& y) const;

  const KernelSpec& spec() const { return spec_; }
  std::size_t dimension() const { return p_; }

 private:
  double coordinate_sum(const Prepared& x, const Prepared& y) const;

  KernelSpec spec_;
  std::size_t p_;
  double u_;
  // Coefficients of the generalized-JS / Hilbertian branch, opaque here.
  struct Coord;
  std::shared_ptr<const Coord> coord_;
};

double kernel_eval(const KernelSpec& spec, const Composition& x, const Composition& y);

// sqrt(max(0, k(x,x) + k(y,y) - 2 k(x,y))).
double kernel_distance(const KernelSpec& spec, const Composition& x, const Composition& y);
double kernel_distance_sq(const KernelSpec& spec, const Composition& x, const Composition& y);

// The catalog closed-form d^2 of each unweighted family, evaluated directly
// with std::pow and independently of the kernel code path. Weighted specs are
// rejected with InvalidParameters.
double closed_form_distance_sq(const KernelSpec& spec, const Composition& x, const Composition& y);

struct GramMatrix {
  Eigen::MatrixXd entries;
  KernelSpec spec;
  double min_eig_estimate = 0.0;
  double max_eig_estimate = 0.0;
  // False when the extremes come from a Lanczos bound rather than a full solve.
  bool eig_exact = true;

  // min_eig_estimate >= -1e-8 * max(1, max_eig_estimate).
  bool psd() const;
};

// Symmetric Gram matrix with spectral diagnostics.
GramMatrix gram(const KernelSpec& spec, const CompositionList& xs);

// Gram entries only (no eigensolve); upper triangle computed and mirrored.
Eigen::MatrixXd gram_entries(const KernelSpec& spec, const CompositionList& xs);

// Entry (i, j) = k(x_new[i], x_train[j]).
Eigen::MatrixXd cross_gram(const KernelSpec& spec, const CompositionList& x_new,
                           const CompositionList& x_train);

}  // namespace compkern
