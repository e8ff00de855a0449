#include "compkern/simgen.hpp"

#include <cmath>
#include <fstream>

#include "compkern/error.hpp"
#include "compkern/rng.hpp"
#include "text_util.hpp"

namespace compkern {
namespace {

// Lower Cholesky factor of [[1, .25, -.25], [.25, 1, .25], [-.25, .25, 1]].
std::array<std::array<double, 3>, 3> block_cholesky() {
  const double s[3][3] = {{1.0, 0.25, -0.25}, {0.25, 1.0, 0.25}, {-0.25, 0.25, 1.0}};
  std::array<std::array<double, 3>, 3> l{};
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j <= i; ++j) {
      double acc = s[i][j];
      for (int k = 0; k < j; ++k) acc -= l[i][k] * l[j][k];
      l[i][j] = i == j ? std::sqrt(acc) : acc / l[j][j];
    }
  }
  return l;
}

Composition normalize(const Eigen::VectorXd& v) {
  return Composition::from_counts(std::span<const double>(v.data(), static_cast<std::size_t>(v.size())));
}

double f1(const Eigen::VectorXd& x) { return 10.0 * x[0] + 10.0 * x[1]; }
double f2(const Eigen::VectorXd& x) { return (1.0 - x[1] - x[2]) / (1.0 - x[2]); }

using RawFn = double (*)(const Eigen::VectorXd&);

FunctionImportance analyse(const std::string& name, RawFn f, const CompositionList& xs,
                           const std::vector<double>& grid, std::uint64_t seed) {
  const std::size_t n = xs.size();
  const std::size_t p = xs.front().size();
  const auto pn = static_cast<Eigen::Index>(p);
  FunctionImportance out;
  out.name = name;
  const Predictor on_simplex = [f](const Composition& x) { return f(x.vector()); };
  out.cfi = cfi(on_simplex, xs).values;

  // Relative influence: central difference of f in the ambient coordinates.
  const double h = 1e-6;
  out.ri = Eigen::VectorXd::Zero(pn);
  for (const auto& x : xs) {
    for (Eigen::Index j = 0; j < pn; ++j) {
      Eigen::VectorXd up = x.vector();
      Eigen::VectorXd down = x.vector();
      up[j] += h;
      down[j] -= h;
      out.ri[j] += (f(up) - f(down)) / (2.0 * h);
    }
  }
  out.ri /= static_cast<double>(n);

  // Permutation importance against the noiseless responses.
  Eigen::MatrixXd mat(static_cast<Eigen::Index>(n), pn);
  Eigen::VectorXd truth(static_cast<Eigen::Index>(n));
  for (std::size_t i = 0; i < n; ++i) {
    mat.row(static_cast<Eigen::Index>(i)) = xs[i].vector().transpose();
    truth[static_cast<Eigen::Index>(i)] = f(xs[i].vector());
  }
  auto mse = [&](const Eigen::MatrixXd& m) {
    double acc = 0.0;
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
      const double r = f(m.row(i).transpose()) - truth[i];
      acc += r * r;
    }
    return acc / static_cast<double>(m.rows());
  };
  const double baseline = mse(mat);
  constexpr int kPermutations = 10;
  Rng rng(seed);
  out.pi = Eigen::VectorXd::Zero(pn);
  for (Eigen::Index j = 0; j < pn; ++j) {
    double acc = 0.0;
    for (int r = 0; r < kPermutations; ++r) {
      const auto perm = random_permutation(n, rng);
      Eigen::MatrixXd shuffled = mat;
      for (std::size_t i = 0; i < n; ++i) {
        shuffled(static_cast<Eigen::Index>(i), j) = mat(static_cast<Eigen::Index>(perm[i]), j);
      }
      acc += mse(shuffled) - baseline;
    }
    out.pi[j] = acc / kPermutations;
  }

  for (std::size_t j = 0; j < p; ++j) {
    out.cpd.push_back(cpd(on_simplex, xs, j, grid));
    std::vector<double> curve(grid.size(), 0.0);
    for (std::size_t g = 0; g < grid.size(); ++g) {
      double acc = 0.0;
      for (const auto& x : xs) {
        Eigen::VectorXd v = x.vector();
        v[static_cast<Eigen::Index>(j)] = grid[g];
        acc += f(v);
      }
      curve[g] = acc / static_cast<double>(n);
    }
    out.pdp.push_back(std::move(curve));
  }
  return out;
}

}  // namespace

const std::array<double, 9>& block_tv_center() {
  static const std::array<double, 9> z = {0.06544714, 0.08760064, 0.17203408,
                                          0.07502236, 0.1642615,  0.03761901,
                                          0.18255478, 0.13099514, 0.08446536};
  return z;
}

double tv_kernel(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size()) throw Error(ErrorCode::kDimensionMismatch, "tv_kernel size mismatch");
  const double u = 1.0 / static_cast<double>(x.size());
  double acc = 0.0;
  for (std::size_t j = 0; j < x.size(); ++j) {
    acc += std::abs(x[j] - y[j]) - std::abs(x[j] - u) - std::abs(y[j] - u);
  }
  return -0.25 * acc;
}

double block_tv_function(const Composition& x) {
  if (x.size() != 9) throw Error(ErrorCode::kDimensionMismatch, "block design has 9 parts");
  return 100.0 * tv_kernel(block_tv_center(), x.span());
}

SimData gen_block_lognormal(std::size_t n, std::uint64_t seed, double noise_sd) {
  if (n < 1) throw Error(ErrorCode::kInvalidParameters, "n must be >= 1");
  if (!(noise_sd >= 0.0)) throw Error(ErrorCode::kInvalidParameters, "noise_sd must be >= 0");
  const auto l = block_cholesky();
  Rng rng(seed);
  SimData out;
  out.x.reserve(n);
  out.y.resize(static_cast<Eigen::Index>(n));
  for (std::size_t i = 0; i < n; ++i) {
    Eigen::VectorXd raw(9);
    for (int block = 0; block < 3; ++block) {
      double z[3];
      for (double& v : z) v = rng.normal();
      for (int r = 0; r < 3; ++r) {
        double acc = 0.0;
        for (int c = 0; c <= r; ++c) acc += l[r][c] * z[c];
        raw[block * 3 + r] = std::exp(acc);
      }
    }
    const double noise = rng.normal();
    out.x.push_back(normalize(raw));
    out.y[static_cast<Eigen::Index>(i)] = block_tv_function(out.x.back()) + noise_sd * noise;
  }
  return out;
}

CompositionList gen_lognormal_iid(std::size_t n, std::uint64_t seed, std::size_t p) {
  if (n < 1) throw Error(ErrorCode::kInvalidParameters, "n must be >= 1");
  if (p < 2) throw Error(ErrorCode::kInvalidParameters, "p must be >= 2");
  Rng rng(seed);
  CompositionList out;
  out.reserve(n);
  Eigen::VectorXd raw(static_cast<Eigen::Index>(p));
  for (std::size_t i = 0; i < n; ++i) {
    for (Eigen::Index j = 0; j < raw.size(); ++j) raw[j] = std::exp(rng.normal());
    out.push_back(normalize(raw));
  }
  return out;
}

Dataset to_dataset(const SimData& sim) {
  Dataset d;
  d.x = sim.x;
  d.y = sim.y;
  d.task = Task::kRegression;
  const std::size_t p = sim.x.empty() ? 0 : sim.x.front().size();
  for (std::size_t j = 0; j < p; ++j) d.feature_names.push_back("x" + std::to_string(j + 1));
  for (std::size_t i = 0; i < sim.x.size(); ++i) d.sample_ids.push_back("s" + std::to_string(i + 1));
  if (sim.y.size() > 0) d.label_column = "y";
  return d;
}

ImportanceComparison compare_cfi_pi_pdp(std::size_t n, std::uint64_t seed) {
  if (n < 10) throw Error(ErrorCode::kInvalidParameters, "comparison needs n >= 10");
  ImportanceComparison cmp;
  cmp.n = n;
  cmp.seed = seed;
  cmp.grid = default_cpd_grid();
  const CompositionList xs = gen_lognormal_iid(n, seed, 3);
  cmp.f1 = analyse("f1", &f1, xs, cmp.grid, derive_seed(seed, 1));
  cmp.f2 = analyse("f2", &f2, xs, cmp.grid, derive_seed(seed, 2));
  cmp.pattern_holds = cmp.f1.cfi[2] < 0.0 && cmp.f1.ri[2] == 0.0 && cmp.f1.pi[2] == 0.0 &&
                      std::abs(cmp.f2.cfi[2]) < 1e-6 && cmp.f2.pi[2] > 0.0 &&
                      std::abs(cmp.f2.cfi[0] + cmp.f2.cfi[1]) < 1e-8;
  return cmp;
}

void write_importance_csv(const std::filesystem::path& path, const ImportanceComparison& cmp) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorCode::kIoError, "cannot write " + path.string());
  out << "function,feature,cfi,ri,pi\n";
  for (const FunctionImportance* fi : {&cmp.f1, &cmp.f2}) {
    for (Eigen::Index j = 0; j < fi->cfi.size(); ++j) {
      out << fi->name << ",x" << (j + 1) << ',' << detail::format_double(fi->cfi[j]) << ','
          << detail::format_double(fi->ri[j]) << ',' << detail::format_double(fi->pi[j]) << '\n';
    }
  }
  if (!out) throw Error(ErrorCode::kIoError, "failed writing " + path.string());
}

void write_importance_curves_csv(const std::filesystem::path& path,
                                 const ImportanceComparison& cmp) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorCode::kIoError, "cannot write " + path.string());
  out << "function,feature,z,cpd,pdp\n";
  for (const FunctionImportance* fi : {&cmp.f1, &cmp.f2}) {
    for (std::size_t j = 0; j < fi->cpd.size(); ++j) {
      for (std::size_t g = 0; g < cmp.grid.size(); ++g) {
        out << fi->name << ",x" << (j + 1) << ',' << detail::format_double(cmp.grid[g]) << ','
            << detail::format_double(fi->cpd[j].values[g]) << ','
            << detail::format_double(fi->pdp[j][g]) << '\n';
      }
    }
  }
  if (!out) throw Error(ErrorCode::kIoError, "failed writing " + path.string());
}

}  // namespace compkern
