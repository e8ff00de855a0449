#include "compkern/embed.hpp"

#include <algorithm>
#include <cmath>

#include <Eigen/Eigenvalues>

#include "compkern/error.hpp"
#include "compkern/kernels.hpp"

namespace compkern {

KpcaModel kpca_fit(const CompositionList& xs, const KernelSpec& spec, std::size_t ell,
                   bool center) {
  const std::size_t n = xs.size();
  if (ell < 1 || ell > n) {
    throw Error(ErrorCode::kInvalidParameters, "number of components must lie in [1, n]");
  }
  KpcaModel model;
  model.train_x = xs;
  model.spec = spec;
  model.centered = center;
  model.requested = ell;

  const Eigen::MatrixXd k = gram_entries(spec, xs);
  Eigen::MatrixXd kc = k;
  const auto nn = static_cast<Eigen::Index>(n);
  if (center) {
    model.train_col_means = k.colwise().mean().transpose();
    model.train_grand_mean = model.train_col_means.mean();
    for (Eigen::Index i = 0; i < nn; ++i) {
      for (Eigen::Index j = 0; j < nn; ++j) {
        kc(i, j) = k(i, j) - model.train_col_means[j] - model.train_col_means[i] +
                   model.train_grand_mean;
      }
    }
  }

  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(kc);
  if (solver.info() != Eigen::Success) {
    throw Error(ErrorCode::kSolveFailure, "kernel PCA eigendecomposition failed");
  }
  const Eigen::VectorXd& ev = solver.eigenvalues();  // ascending
  const double lmax = ev[nn - 1];
  const double tol = 1e-10 * std::max(lmax, 0.0);
  std::size_t keep = 0;
  for (Eigen::Index r = nn - 1; r >= 0 && keep < ell; --r) {
    if (ev[r] > tol && lmax > 0.0) ++keep;
    else break;
  }
  if (keep == 0) {
    throw Error(ErrorCode::kSolveFailure, "Gram matrix has no positive eigenvalue");
  }
  model.rank_deficient = keep < ell;
  model.eigvals.resize(static_cast<Eigen::Index>(keep));
  model.eigvecs.resize(nn, static_cast<Eigen::Index>(keep));
  for (std::size_t r = 0; r < keep; ++r) {
    const Eigen::Index src = nn - 1 - static_cast<Eigen::Index>(r);
    model.eigvals[static_cast<Eigen::Index>(r)] = ev[src];
    Eigen::VectorXd v = solver.eigenvectors().col(src);
    Eigen::Index arg = 0;
    v.cwiseAbs().maxCoeff(&arg);
    if (v[arg] < 0.0) v = -v;
    model.eigvecs.col(static_cast<Eigen::Index>(r)) = v;
  }
  model.train_embedding = kpca_project(model, xs);
  return model;
}

Eigen::MatrixXd kpca_project(const KpcaModel& model, const CompositionList& x_new) {
  Eigen::MatrixXd kn = cross_gram(model.spec, x_new, model.train_x);
  if (model.centered && kn.rows() > 0) {
    const Eigen::VectorXd row_means = kn.rowwise().mean();
    for (Eigen::Index i = 0; i < kn.rows(); ++i) {
      for (Eigen::Index j = 0; j < kn.cols(); ++j) {
        kn(i, j) = kn(i, j) - model.train_col_means[j] - row_means[i] + model.train_grand_mean;
      }
    }
  }
  const Eigen::VectorXd inv_sqrt = model.eigvals.array().rsqrt();
  return (kn * model.eigvecs) * inv_sqrt.asDiagonal();
}

Predictor kpca_component(const KpcaModel& model, std::size_t r) {
  if (r >= model.components()) {
    throw Error(ErrorCode::kOutOfRange, "component " + std::to_string(r) + " not available");
  }
  auto shared = std::make_shared<const KpcaModel>(model);
  return [shared, r](const Composition& x) {
    return kpca_project(*shared, CompositionList{x})(0, static_cast<Eigen::Index>(r));
  };
}

SummaryStat summary_stat(const CompositionList& xs, const KernelSpec& spec,
                         const std::optional<Composition>& reference) {
  const std::size_t p = common_dimension(xs);
  Composition u = reference ? *reference : Composition::uniform(p == 0 ? 2 : p);
  SummaryStat out{u, spec, Eigen::VectorXd(static_cast<Eigen::Index>(xs.size()))};
  if (xs.empty()) return out;
  if (u.size() != p) {
    throw Error(ErrorCode::kDimensionMismatch, "reference point has the wrong number of parts");
  }
  const KernelEvaluator ev(spec, p);
  const auto pu = ev.prepare(u);
  const double kuu = ev.eval(pu, pu);
  for (std::size_t i = 0; i < xs.size(); ++i) {
    const auto px = ev.prepare(xs[i]);
    const double d2 = std::max(0.0, ev.eval(px, px) + kuu - 2.0 * ev.eval(px, pu));
    out.values[static_cast<Eigen::Index>(i)] = -d2;
  }
  return out;
}

std::size_t kernel_medoid(const CompositionList& xs, const KernelSpec& spec,
                          const std::vector<bool>& mask) {
  if (!mask.empty() && mask.size() != xs.size()) {
    throw Error(ErrorCode::kDimensionMismatch, "subset mask length differs from sample count");
  }
  std::vector<std::size_t> members;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    if (mask.empty() || mask[i]) members.push_back(i);
  }
  if (members.empty()) throw Error(ErrorCode::kEmptySubset, "medoid subset is empty");
  CompositionList sub;
  sub.reserve(members.size());
  for (std::size_t i : members) sub.push_back(xs[i]);
  const Eigen::MatrixXd k = gram_entries(spec, sub);
  const auto m = k.rows();
  std::size_t best = 0;
  double best_total = kInf;
  for (Eigen::Index i = 0; i < m; ++i) {
    double total = 0.0;
    for (Eigen::Index j = 0; j < m; ++j) {
      total += std::sqrt(std::max(0.0, k(i, i) + k(j, j) - 2.0 * k(i, j)));
    }
    if (total < best_total) {
      best_total = total;
      best = static_cast<std::size_t>(i);
    }
  }
  return members[best];
}

}  // namespace compkern
