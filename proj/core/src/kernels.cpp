#include "compkern/kernels.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "compkern/error.hpp"
#include "compkern/parallel.hpp"
#include "compkern/spectral.hpp"
#include "kernel_terms.hpp"

namespace compkern {

struct KernelEvaluator::Coord : detail::CoordTerm {
  explicit Coord(const detail::CoordTerm& t) : detail::CoordTerm(t) {}
};

namespace {

bool is_coordinate_family(KernelFamily f) {
  return f == KernelFamily::kGeneralizedJS || f == KernelFamily::kHilbertian;
}

void check_same_dimension(const Composition& x, const Composition& y) {
  if (x.size() != y.size()) {
    throw Error(ErrorCode::kDimensionMismatch, "compositions have " + std::to_string(x.size()) +
                                                   " and " + std::to_string(y.size()) + " parts");
  }
}

double heat_log_prefactor(double t, std::size_t p) {
  return -0.5 * static_cast<double>(p) * std::log(4.0 * std::numbers::pi * t);
}

}  // namespace

KernelEvaluator::KernelEvaluator(KernelSpec spec, std::size_t p)
    : spec_(std::move(spec)), p_(p), u_(1.0 / static_cast<double>(p)) {
  spec_.validate();
  if (p < 2) throw Error(ErrorCode::kInvalidComposition, "kernels need p >= 2");
  if (spec_.weight && spec_.weight->size() != p) {
    throw Error(ErrorCode::kDimensionMismatch,
                "weight matrix is " + std::to_string(spec_.weight->size()) + " x " +
                    std::to_string(spec_.weight->size()) + " but compositions have " +
                    std::to_string(p) + " parts");
  }
  if (is_coordinate_family(spec_.family)) {
    coord_ = std::make_shared<const Coord>(detail::CoordTerm::for_spec(spec_));
  }
}

KernelEvaluator::Prepared KernelEvaluator::prepare(const Composition& x) const {
  if (x.size() != p_) {
    throw Error(ErrorCode::kDimensionMismatch, "composition has " + std::to_string(x.size()) +
                                                   " parts, kernel expects " +
                                                   std::to_string(p_));
  }
  const WeightMatrix* w = spec_.weight.get();
  Prepared out;
  switch (spec_.family) {
    case KernelFamily::kLinear:
      if (w) {
        out.v = x.vector().array() - u_;
        out.wv = w->matrix() * out.v;
      } else {
        out.v = x.vector();
      }
      break;
    case KernelFamily::kRbf:
      out.v = x.vector();
      if (w) {
        out.wv = w->matrix() * out.v;
        out.s = (w->row_sums().array() * out.v.array().square()).sum();
      }
      break;
    case KernelFamily::kGeneralizedJS:
    case KernelFamily::kHilbertian: {
      out.v = x.vector();
      double ref = 0.0;
      for (std::size_t j = 0; j < p_; ++j) {
        const double hu = coord_->h(x[j], u_);
        ref += w ? w->row_sums()[static_cast<Eigen::Index>(j)] * hu : hu;
      }
      out.s = ref;
      break;
    }
    case KernelFamily::kAitchison:
      out.v = clr_shifted(x, spec_.c);
      if (w) out.wv = w->matrix() * out.v;
      break;
    case KernelFamily::kAitchisonRbf:
      out.v = clr_shifted(x, spec_.c);
      if (w) {
        out.wv = w->matrix() * out.v;
        out.s = (w->row_sums().array() * out.v.array().square()).sum();
      }
      break;
    case KernelFamily::kHeatDiffusion:
      out.v = x.vector().array().sqrt();
      if (w) out.wv = w->matrix() * out.v;
      break;
  }
  return out;
}

double KernelEvaluator::coordinate_sum(const Prepared& x, const Prepared& y) const {
  double acc = 0.0;
  const auto n = static_cast<Eigen::Index>(p_);
  if (!spec_.weight) {
    for (Eigen::Index j = 0; j < n; ++j) acc += coord_->h(x.v[j], y.v[j]);
    return acc;
  }
  const Eigen::MatrixXd& w = spec_.weight->matrix();
  for (Eigen::Index l = 0; l < n; ++l) {
    for (Eigen::Index j = 0; j < n; ++j) {
      const double wjl = w(j, l);
      if (wjl != 0.0) acc += wjl * coord_->h(x.v[j], y.v[l]);
    }
  }
  return acc;
}

double KernelEvaluator::eval(const Prepared& x, const Prepared& y) const {
  const bool weighted = spec_.weight != nullptr;
  switch (spec_.family) {
    case KernelFamily::kLinear:
      return weighted ? x.v.dot(y.wv) : x.v.dot(y.v) - u_;
    case KernelFamily::kRbf:
    case KernelFamily::kAitchisonRbf: {
      const double q = weighted ? std::max(0.0, x.s + y.s - 2.0 * x.v.dot(y.wv))
                                : (x.v - y.v).squaredNorm();
      return std::exp(-q / (2.0 * spec_.sigma2));
    }
    case KernelFamily::kGeneralizedJS:
    case KernelFamily::kHilbertian:
      return -0.5 * coord_->scale * (coordinate_sum(x, y) - (x.s + y.s));
    case KernelFamily::kAitchison:
      return weighted ? x.v.dot(y.wv) : x.v.dot(y.v);
    case KernelFamily::kHeatDiffusion: {
      const double inner = std::clamp(weighted ? x.v.dot(y.wv) : x.v.dot(y.v), -1.0, 1.0);
      const double angle = std::acos(inner);
      return std::exp(heat_log_prefactor(spec_.t, p_) - angle * angle / spec_.t);
    }
  }
  return 0.0;
}

double kernel_eval(const KernelSpec& spec, const Composition& x, const Composition& y) {
  check_same_dimension(x, y);
  const KernelEvaluator ev(spec, x.size());
  return ev.eval(ev.prepare(x), ev.prepare(y));
}

double kernel_distance_sq(const KernelSpec& spec, const Composition& x, const Composition& y) {
  check_same_dimension(x, y);
  const KernelEvaluator ev(spec, x.size());
  const auto px = ev.prepare(x);
  const auto py = ev.prepare(y);
  return std::max(0.0, ev.eval(px, px) + ev.eval(py, py) - 2.0 * ev.eval(px, py));
}

double kernel_distance(const KernelSpec& spec, const Composition& x, const Composition& y) {
  return std::sqrt(kernel_distance_sq(spec, x, y));
}

double closed_form_distance_sq(const KernelSpec& spec, const Composition& x,
                               const Composition& y) {
  check_same_dimension(x, y);
  spec.validate();
  if (spec.weighted()) {
    throw Error(ErrorCode::kInvalidParameters, "closed-form distances cover unweighted kernels only");
  }
  const std::size_t p = x.size();
  const double a = spec.a;
  const double b = spec.b;
  auto sum_over = [&](auto term) {
    double acc = 0.0;
    for (std::size_t j = 0; j < p; ++j) acc += term(x[j], y[j]);
    return acc;
  };
  auto pw = [](double s, double t, double q) {
    return std::pow(std::pow(s, q) + std::pow(t, q), 1.0 / q);
  };
  auto clr = [&](const Composition& z) {
    Eigen::VectorXd out(static_cast<Eigen::Index>(p));
    double mean_log = 0.0;
    for (std::size_t j = 0; j < p; ++j) mean_log += std::log(z[j] + spec.c);
    mean_log /= static_cast<double>(p);
    for (std::size_t j = 0; j < p; ++j) {
      out[static_cast<Eigen::Index>(j)] = std::log(z[j] + spec.c) - mean_log;
    }
    return out;
  };

  switch (spec.family) {
    case KernelFamily::kLinear:
      return sum_over([](double s, double t) { return (s - t) * (s - t); });
    case KernelFamily::kRbf:
      return 2.0 - 2.0 * std::exp(-sum_over([](double s, double t) { return (s - t) * (s - t); }) /
                                  (2.0 * spec.sigma2));
    case KernelFamily::kGeneralizedJS:
      if (std::isinf(a) && std::isinf(b)) {
        return sum_over([](double s, double t) {
          return s != t ? std::max(s, t) * std::log(2.0) : 0.0;
        });
      }
      if (std::isinf(a)) {
        return b * sum_over([&](double s, double t) {
                 return std::pow(2.0, 1.0 / b) * std::max(s, t) - pw(s, t, b);
               });
      }
      if (a == b) {
        return sum_over([&](double s, double t) {
          const double sb = std::pow(s, b);
          const double tb = std::pow(t, b);
          const double tot = sb + tb;
          if (tot == 0.0) return 0.0;
          double bracket = 0.0;
          if (sb > 0.0) bracket += sb / tot * std::log(2.0 * sb / tot);
          if (tb > 0.0) bracket += tb / tot * std::log(2.0 * tb / tot);
          return std::pow(tot / 2.0, 1.0 / b) * bracket;
        });
      }
      return a * b / (a - b) * sum_over([&](double s, double t) {
               return (std::pow(2.0, 1.0 / b) * pw(s, t, a) - std::pow(2.0, 1.0 / a) * pw(s, t, b)) /
                      std::pow(2.0, 1.0 / a + 1.0 / b);
             });
    case KernelFamily::kHilbertian:
      if (std::isinf(a)) {
        const double c2b = std::pow(2.0, 1.0 / b);
        return sum_over([&](double s, double t) {
                 return c2b * std::max(s, t) - pw(s, t, b);
               }) /
               (1.0 - c2b);
      }
      if (std::isinf(b)) {
        const double c2a = std::pow(2.0, 1.0 / a);
        return sum_over([&](double s, double t) { return pw(s, t, a) - c2a * std::min(s, t); }) /
               (c2a - 1.0);
      }
      return sum_over([&](double s, double t) {
        return (std::pow(2.0, 1.0 / b) * pw(s, t, a) - std::pow(2.0, 1.0 / a) * pw(s, t, b)) /
               (std::pow(2.0, 1.0 / a) - std::pow(2.0, 1.0 / b));
      });
    case KernelFamily::kAitchison:
      return (clr(x) - clr(y)).squaredNorm();
    case KernelFamily::kAitchisonRbf:
      return 2.0 - 2.0 * std::exp(-(clr(x) - clr(y)).squaredNorm() / (2.0 * spec.sigma2));
    case KernelFamily::kHeatDiffusion: {
      double inner = 0.0;
      for (std::size_t j = 0; j < p; ++j) inner += std::sqrt(x[j] * y[j]);
      inner = std::min(1.0, inner);
      const double ac = std::acos(inner);
      return 2.0 * std::pow(4.0 * std::numbers::pi * spec.t, -0.5 * static_cast<double>(p)) *
             (1.0 - std::exp(-ac * ac / spec.t));
    }
  }
  return 0.0;
}

bool GramMatrix::psd() const {
  return is_psd(SpectralRange{min_eig_estimate, max_eig_estimate, eig_exact});
}

Eigen::MatrixXd gram_entries(const KernelSpec& spec, const CompositionList& xs) {
  const std::size_t n = xs.size();
  if (n == 0) return Eigen::MatrixXd(0, 0);
  const std::size_t p = common_dimension(xs);
  const KernelEvaluator ev(spec, p);
  std::vector<KernelEvaluator::Prepared> prep(n);
  parallel_for(n, [&](std::size_t i) { prep[i] = ev.prepare(xs[i]); });
  const auto nn = static_cast<Eigen::Index>(n);
  Eigen::MatrixXd k(nn, nn);
  parallel_for(n, [&](std::size_t i) {
    const auto ii = static_cast<Eigen::Index>(i);
    for (std::size_t j = i; j < n; ++j) {
      const auto jj = static_cast<Eigen::Index>(j);
      const double v = ev.eval(prep[i], prep[j]);
      k(ii, jj) = v;
      k(jj, ii) = v;
    }
  });
  return k;
}

GramMatrix gram(const KernelSpec& spec, const CompositionList& xs) {
  GramMatrix g;
  g.spec = spec;
  g.entries = gram_entries(spec, xs);
  const SpectralRange range = spectral_range(g.entries);
  g.min_eig_estimate = range.min_eig;
  g.max_eig_estimate = range.max_eig;
  g.eig_exact = range.exact;
  return g;
}

Eigen::MatrixXd cross_gram(const KernelSpec& spec, const CompositionList& x_new,
                           const CompositionList& x_train) {
  const auto m = static_cast<Eigen::Index>(x_new.size());
  const auto n = static_cast<Eigen::Index>(x_train.size());
  if (m == 0 || n == 0) {
    spec.validate();
    return Eigen::MatrixXd(m, n);
  }
  const std::size_t p = common_dimension(x_train);
  if (common_dimension(x_new) != p) {
    throw Error(ErrorCode::kDimensionMismatch,
                "new points have " + std::to_string(x_new.front().size()) +
                    " parts, training points have " + std::to_string(p));
  }
  const KernelEvaluator ev(spec, p);
  std::vector<KernelEvaluator::Prepared> train(x_train.size());
  parallel_for(x_train.size(), [&](std::size_t j) { train[j] = ev.prepare(x_train[j]); });
  Eigen::MatrixXd k(m, n);
  parallel_for(x_new.size(), [&](std::size_t i) {
    const auto pi = ev.prepare(x_new[i]);
    for (Eigen::Index j = 0; j < n; ++j) {
      k(static_cast<Eigen::Index>(i), j) = ev.eval(pi, train[static_cast<std::size_t>(j)]);
    }
  });
  return k;
}

}  // namespace compkern
