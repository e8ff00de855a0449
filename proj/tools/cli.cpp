#include "cli.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <map>
#include <optional>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "compkern/composition.hpp"
#include "compkern/datio.hpp"
#include "compkern/embed.hpp"
#include "compkern/error.hpp"
#include "compkern/grid.hpp"
#include "compkern/interpret.hpp"
#include "compkern/kernel_spec.hpp"
#include "compkern/learn.hpp"
#include "compkern/model_io.hpp"
#include "compkern/newick.hpp"
#include "compkern/parallel.hpp"
#include "compkern/selection.hpp"
#include "compkern/simgen.hpp"
#include "compkern/weighting.hpp"
#include "svg.hpp"

namespace compkern::cli {
namespace {

namespace fs = std::filesystem;
using nlohmann::json;

struct Options {
  std::string config;
  unsigned threads = 0;
  std::string out_dir = ".";

  std::string data;
  std::string label;
  std::string task = "regression";
  bool transpose = false;
  bool filter = false;

  std::string kernel;
  std::string a, b, sigma2, c, t;
  std::string weights;
  double lambda = 0.0;

  std::size_t n_outer = 10;
  std::size_t n_inner = 5;
  std::uint64_t seed = 0;
  std::vector<std::string> families;
  std::size_t heat_n = 0;

  std::string model;
  std::string feature;

  std::size_t components = 2;
  bool no_center = false;
  std::vector<double> reference;

  std::string tree;
  std::string variant = "B";
  std::vector<std::string> leaves;

  std::string design = "blocktv";
  std::size_t n = 100;
  std::size_t p = 3;
  double noise = 1.0;
};

[[noreturn]] void usage(const std::string& msg) { throw Error(ErrorCode::kInvalidParameters, msg); }

std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

void write_text(const fs::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorCode::kIoError, "cannot write " + path.string());
  out << text;
  if (!out) throw Error(ErrorCode::kIoError, "failed writing " + path.string());
}

fs::path output_dir(const Options& o) {
  const fs::path dir(o.out_dir);
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec || !fs::is_directory(dir)) {
    throw Error(ErrorCode::kIoError, "output directory " + dir.string() + " is not writable");
  }
  return dir;
}

void require(const std::string& value, const char* flag) {
  if (value.empty()) usage(std::string("missing required option ") + flag);
}

Dataset load_data(const Options& o, Task task) {
  require(o.data, "--data");
  if (!o.filter) return load_counts_csv(o.data, o.label, task, o.transpose);
  const CountTable raw = read_count_table(o.data, o.label, o.transpose);
  return to_dataset(prevalence_abundance_filter(raw).table, task);
}

Dataset load_labelled(const Options& o, Task task) {
  require(o.label, "--label");
  return load_data(o, task);
}

KernelSpec make_kernel(const Options& o, const CompositionList& xs) {
  require(o.kernel, "--kernel");
  const KernelFamily family = parse_family(o.kernel);
  auto param = [](const std::string& text, const char* key) {
    if (text.empty()) usage(std::string("kernel needs --") + key);
    return parse_param(text, key);
  };
  const double default_c = min_nonzero_value(xs) / 2.0;
  KernelSpec spec;
  switch (family) {
    case KernelFamily::kLinear:
      spec = KernelSpec::linear();
      break;
    case KernelFamily::kRbf:
      spec = KernelSpec::rbf(o.sigma2.empty() ? median_heuristic(xs) : param(o.sigma2, "sigma2"));
      break;
    case KernelFamily::kGeneralizedJS:
      spec = KernelSpec::generalized_js(param(o.a, "a"), param(o.b, "b"));
      break;
    case KernelFamily::kHilbertian:
      spec = KernelSpec::hilbertian(param(o.a, "a"), param(o.b, "b"));
      break;
    case KernelFamily::kAitchison:
      spec = KernelSpec::aitchison(o.c.empty() ? default_c : param(o.c, "c"));
      break;
    case KernelFamily::kAitchisonRbf: {
      const double c = o.c.empty() ? default_c : param(o.c, "c");
      const double s2 = o.sigma2.empty() ? median_heuristic(xs, MedianSpace::kClr, c)
                                         : param(o.sigma2, "sigma2");
      spec = KernelSpec::aitchison_rbf(c, s2);
      break;
    }
    case KernelFamily::kHeatDiffusion:
      spec = KernelSpec::heat_diffusion(param(o.t, "t"));
      break;
  }
  if (!o.weights.empty()) spec = spec.with_weight(WeightMatrix::read_csv(o.weights), o.weights);
  return spec;
}

std::vector<double> to_std(const Eigen::VectorXd& v) {
  return std::vector<double>(v.data(), v.data() + v.size());
}

// Feature names for model outputs: the model's own when stored, else the data's.
std::vector<std::string> feature_names(const SavedModel& saved, const Dataset& data) {
  if (saved.model.dimension() != data.x.front().size()) {
    throw Error(ErrorCode::kDimensionMismatch,
                "model has " + std::to_string(saved.model.dimension()) + " parts but data has " +
                    std::to_string(data.x.front().size()));
  }
  return saved.feature_names.empty() ? data.feature_names : saved.feature_names;
}

struct ModelAndData {
  SavedModel saved;
  Dataset data;
  std::vector<std::string> features;
};

ModelAndData load_model_and_data(const Options& o) {
  require(o.model, "--model");
  SavedModel saved = load_model(o.model);
  Dataset data = load_data(o, saved.model.task());
  auto features = feature_names(saved, data);
  return ModelAndData{std::move(saved), std::move(data), std::move(features)};
}

void emit_cfi(const fs::path& dir, const ModelAndData& md, std::ostream& out) {
  const CfiResult res = cfi(as_predictor(md.saved.model), md.data.x);
  write_cfi_csv(dir / "cfi.csv", md.features, res.values, true);
  write_text(dir / "cfi.svg", bar_chart_svg(md.features, to_std(res.values), "CFI"));
  if (res.warning_count() > 0) {
    out << "cfi: skipped " << res.warning_count() << " sample(s) sitting on a vertex\n";
  }
}

void emit_cpd(const fs::path& dir, const ModelAndData& md, const std::string& only) {
  const Predictor f = as_predictor(md.saved.model);
  const auto grid = default_cpd_grid();
  std::vector<CpdCurve> curves;
  for (std::size_t j = 0; j < md.features.size(); ++j) {
    if (!only.empty() && md.features[j] != only) continue;
    curves.push_back(cpd(f, md.data.x, j, grid));
  }
  if (curves.empty()) throw Error(ErrorCode::kMissingColumn, "no feature named '" + only + "'");
  write_cpd_csv(dir / "cpd.csv", md.features, curves);
}

int cmd_select(const Options& o, bool seed_given, std::ostream& out) {
  if (!seed_given) usage("select requires --seed");
  const Task task = parse_task(o.task);
  const Dataset data = load_labelled(o, task);
  GridOptions gopt;
  if (o.heat_n > 0) gopt.heat_n = o.heat_n;
  ParamGrid grid = default_grid(data.x, gopt);
  if (!o.families.empty()) {
    for (const auto& f : o.families) parse_family(f);
    std::erase_if(grid.kernels, [&](const KernelSpec& k) {
      return std::find(o.families.begin(), o.families.end(), family_name(k.family)) ==
             o.families.end();
    });
  }
  if (!o.weights.empty()) {
    const auto w = WeightMatrix::read_csv(o.weights);
    for (auto& k : grid.kernels) k = k.with_weight(w, o.weights);
  }
  SelectionOptions sopt;
  sopt.n_outer = o.n_outer;
  sopt.n_inner = o.n_inner;
  sopt.seed = o.seed;
  sopt.task = task;
  const auto dir = output_dir(o);
  const SelectionResult res = select_model(data.x, data.y, grid, sopt);
  res.report.write_csv(dir / "selection_report.csv");
  save_model(dir / "model.json", res.model, data.feature_names);
  out << "winner: " << res.report.winning_spec().label() << " lambda=" << fmt(res.report.final_lambda)
      << '\n';
  return kExitOk;
}

int cmd_fit(const Options& o, std::ostream& out) {
  const Task task = parse_task(o.task);
  const Dataset data = load_labelled(o, task);
  if (!(o.lambda > 0.0)) usage("fit requires --lambda > 0");
  const KernelSpec spec = make_kernel(o, data.x);
  const auto dir = output_dir(o);
  const FittedModel model = fit_krr(data.x, data.y, spec, o.lambda, task);
  save_model(dir / "model.json", model, data.feature_names);
  out << "fitted " << spec.label() << " lambda=" << fmt(o.lambda) << '\n';
  return kExitOk;
}

int cmd_predict(const Options& o, std::ostream&) {
  const ModelAndData md = load_model_and_data(o);
  const auto dir = output_dir(o);
  const Eigen::VectorXd pred = md.saved.model.predict(md.data.x);
  const bool cls = md.saved.model.task() == Task::kClassification;
  std::ostringstream s;
  s << "sample_id,prediction" << (cls ? ",predicted_label" : "") << '\n';
  for (std::size_t i = 0; i < md.data.x.size(); ++i) {
    const double v = pred[static_cast<Eigen::Index>(i)];
    s << md.data.sample_ids[i] << ',' << fmt(v);
    if (cls) s << ',' << (v >= 0.0 ? "1" : "-1");
    s << '\n';
  }
  write_text(dir / "predictions.csv", s.str());
  return kExitOk;
}

int cmd_cfi(const Options& o, std::ostream& out) {
  const ModelAndData md = load_model_and_data(o);
  emit_cfi(output_dir(o), md, out);
  return kExitOk;
}

int cmd_cpd(const Options& o, std::ostream&) {
  const ModelAndData md = load_model_and_data(o);
  emit_cpd(output_dir(o), md, o.feature);
  return kExitOk;
}

int cmd_interpret(const Options& o, std::ostream& out) {
  const ModelAndData md = load_model_and_data(o);
  const auto dir = output_dir(o);
  emit_cfi(dir, md, out);
  emit_cpd(dir, md, "");
  return kExitOk;
}

std::vector<std::size_t> class_groups(const Dataset& d) {
  std::vector<std::size_t> g;
  if (d.task != Task::kClassification || !d.has_labels()) return g;
  for (Eigen::Index i = 0; i < d.y.size(); ++i) g.push_back(d.y[i] > 0.0 ? 1 : 0);
  return g;
}

int cmd_kpca(const Options& o, std::ostream& out) {
  const Dataset data = load_data(o, parse_task(o.task));
  const KernelSpec spec = make_kernel(o, data.x);
  const auto dir = output_dir(o);
  const KpcaModel model = kpca_fit(data.x, spec, o.components, !o.no_center);
  const std::size_t l = model.components();
  std::ostringstream emb;
  emb << "sample_id";
  for (std::size_t r = 0; r < l; ++r) emb << ",pc" << (r + 1);
  emb << '\n';
  for (std::size_t i = 0; i < data.x.size(); ++i) {
    emb << data.sample_ids[i];
    for (std::size_t r = 0; r < l; ++r) {
      emb << ',' << fmt(model.train_embedding(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(r)));
    }
    emb << '\n';
  }
  write_text(dir / "embedding.csv", emb.str());
  std::ostringstream ev;
  ev << "component,eigenvalue\n";
  for (std::size_t r = 0; r < l; ++r) ev << "pc" << (r + 1) << ',' << fmt(model.eigvals[static_cast<Eigen::Index>(r)]) << '\n';
  write_text(dir / "eigenvalues.csv", ev.str());
  if (l >= 2) {
    const Eigen::VectorXd x = model.train_embedding.col(0);
    const Eigen::VectorXd y = model.train_embedding.col(1);
    write_text(dir / "kpca.svg", scatter_svg(to_std(x), to_std(y), class_groups(data),
                                             "kernel PCA: " + spec.label(), "pc1", "pc2"));
  }
  if (model.rank_deficient) {
    out << "kpca: only " << l << " of " << o.components << " components have positive eigenvalues\n";
  }
  return kExitOk;
}

int cmd_summary(const Options& o, std::ostream&) {
  const Dataset data = load_data(o, parse_task(o.task));
  const KernelSpec spec = make_kernel(o, data.x);
  std::optional<Composition> ref;
  if (!o.reference.empty()) ref = Composition::from_counts(o.reference);
  const auto dir = output_dir(o);
  const SummaryStat stat = summary_stat(data.x, spec, ref);
  std::ostringstream s;
  s << "sample_id,value\n";
  for (std::size_t i = 0; i < data.x.size(); ++i) {
    s << data.sample_ids[i] << ',' << fmt(stat.values[static_cast<Eigen::Index>(i)]) << '\n';
  }
  write_text(dir / "summary.csv", s.str());
  return kExitOk;
}

int cmd_medoid(const Options& o, std::ostream& out) {
  const Task task = o.label.empty() ? Task::kRegression : Task::kClassification;
  const Dataset data = load_data(o, task);
  const KernelSpec spec = make_kernel(o, data.x);
  const auto dir = output_dir(o);
  std::ostringstream s;
  s << "group,sample_id,index\n";
  const std::size_t all = kernel_medoid(data.x, spec);
  s << "all," << data.sample_ids[all] << ',' << all << '\n';
  out << "medoid: " << data.sample_ids[all] << '\n';
  if (data.has_labels()) {
    for (int side : {-1, 1}) {
      std::vector<bool> mask(data.x.size());
      for (std::size_t i = 0; i < mask.size(); ++i) {
        mask[i] = data.y[static_cast<Eigen::Index>(i)] == side;
      }
      const std::size_t m = kernel_medoid(data.x, spec, mask);
      const std::string& name = data.class_names[side < 0 ? 0 : 1];
      s << name << ',' << data.sample_ids[m] << ',' << m << '\n';
    }
  }
  write_text(dir / "medoid.csv", s.str());
  return kExitOk;
}

int cmd_unifrac(const Options& o, std::ostream&) {
  require(o.tree, "--tree");
  UnifracVariant variant;
  if (o.variant == "A" || o.variant == "a") {
    variant = UnifracVariant::kA;
  } else if (o.variant == "B" || o.variant == "b") {
    variant = UnifracVariant::kB;
  } else {
    usage("--variant must be A or B");
  }
  const PhyloTree tree = read_newick_file(o.tree);
  const auto dir = output_dir(o);
  const WeightMatrix w = unifrac_weights(tree, variant, o.leaves);
  w.write_csv(dir / "weights.csv");
  const auto& order = o.leaves.empty() ? tree.leaf_names() : o.leaves;
  std::ostringstream s;
  s << "index,leaf\n";
  for (std::size_t i = 0; i < order.size(); ++i) s << i << ',' << order[i] << '\n';
  write_text(dir / "leaves.csv", s.str());
  return kExitOk;
}

int cmd_simulate(const Options& o, bool seed_given, std::ostream&) {
  if (!seed_given) usage("simulate requires --seed");
  SimData sim;
  if (o.design == "blocktv") {
    sim = gen_block_lognormal(o.n, o.seed, o.noise);
  } else if (o.design == "lognormal") {
    sim.x = gen_lognormal_iid(o.n, o.seed, o.p);
  } else {
    usage("--design must be blocktv or lognormal");
  }
  const auto dir = output_dir(o);
  save_dataset_csv(dir / "simulated.csv", to_dataset(sim));
  return kExitOk;
}

int cmd_compare(const Options& o, std::ostream& out) {
  const auto dir = output_dir(o);
  const ImportanceComparison cmp = compare_cfi_pi_pdp(o.n, o.seed);
  write_importance_csv(dir / "importance.csv", cmp);
  write_importance_curves_csv(dir / "importance_curves.csv", cmp);
  out << "pattern " << (cmp.pattern_holds ? "holds" : "does not hold") << '\n';
  return kExitOk;
}

// Config values are turned into extra command-line tokens for every option
// not already given as a flag, so flags win over the file.
std::optional<std::string> scan_config_path(const std::vector<std::string>& args) {
  for (std::size_t i = 0; i < args.size(); ++i) {
    if (args[i] == "--config" && i + 1 < args.size()) return args[i + 1];
    if (args[i].rfind("--config=", 0) == 0) return args[i].substr(9);
  }
  return std::nullopt;
}

json read_config(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::kIoError, "cannot read config " + path);
  json j;
  try {
    j = json::parse(in);
  } catch (const json::parse_error& e) {
    throw ParseError(std::string("config is not valid JSON: ") + e.what(), e.byte);
  }
  if (!j.is_object()) usage("config must be a flat JSON object");
  return j;
}

std::string scalar_token(const json& v, const std::string& key) {
  if (v.is_string()) return v.get<std::string>();
  if (v.is_number_integer()) return std::to_string(v.get<long long>());
  if (v.is_number()) return fmt(v.get<double>());
  usage("config key '" + key + "' must hold a string, number, boolean or array");
}

std::vector<std::string> config_tokens(const json& cfg, CLI::App& sub) {
  std::vector<std::string> tokens;
  for (const auto& [key, value] : cfg.items()) {
    if (key == "command") continue;
    CLI::Option* opt = sub.get_option_no_throw("--" + key);
    if (opt == nullptr) opt = sub.get_parent()->get_option_no_throw("--" + key);
    if (opt == nullptr) usage("unknown config key '" + key + "' for command " + sub.get_name());
    if (opt->count() > 0 || key == "config") continue;
    if (value.is_boolean()) {
      if (value.get<bool>()) tokens.push_back("--" + key);
      continue;
    }
    if (value.is_array()) {
      if (value.empty()) continue;
      tokens.push_back("--" + key);
      for (const auto& e : value) tokens.push_back(scalar_token(e, key));
      continue;
    }
    tokens.push_back("--" + key);
    tokens.push_back(scalar_token(value, key));
  }
  return tokens;
}

int exit_code(const Error& e) {
  switch (error_category(e.code())) {
    case ErrorCategory::kUsage: return kExitUsage;
    case ErrorCategory::kData: return kExitData;
    case ErrorCategory::kNumerical: return kExitNumerical;
  }
  return kExitData;
}

void add_data_opts(CLI::App* s, Options& o, bool labels) {
  s->add_option("--data", o.data, "Count or composition table (CSV, samples in rows)");
  s->add_option("--label", o.label, labels ? "Label column" : "Label column to exclude from features");
  s->add_flag("--transpose", o.transpose, "Table has features in rows");
  s->add_flag("--filter", o.filter, "Apply the prevalence/abundance feature filter");
}

void add_kernel_opts(CLI::App* s, Options& o) {
  s->add_option("--kernel", o.kernel,
                "linear, rbf, generalized-js, hilbertian, aitchison, aitchison-rbf, heat-diffusion");
  s->add_option("--a", o.a, "Family parameter a (inf allowed)");
  s->add_option("--b", o.b, "Family parameter b (-inf/inf allowed)");
  s->add_option("--sigma2", o.sigma2, "RBF bandwidth (default: median heuristic)");
  s->add_option("--c", o.c, "Zero shift (default: half the smallest nonzero entry)");
  s->add_option("--t", o.t, "Heat-diffusion time");
  s->add_option("--weights", o.weights, "Weight matrix CSV (headerless p x p)");
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  Options o;
  CLI::App app{"Kernel methods for compositional data", "compkern"};
  app.require_subcommand(1);
  app.add_option("--config", o.config, "Flat JSON record of option values");
  app.add_option("--threads", o.threads, "Worker thread cap (0 = all cores)");
  app.add_option("--out", o.out_dir, "Output directory");

  auto sub = [&](const char* name, const char* help) {
    CLI::App* s = app.add_subcommand(name, help);
    s->fallthrough();
    return s;
  };
  CLI::App* select = sub("select", "Default-grid hierarchical CV model selection");
  add_data_opts(select, o, true);
  select->add_option("--task", o.task, "regression or classification");
  select->add_option("--outer", o.n_outer, "Outer folds");
  select->add_option("--inner", o.n_inner, "Inner folds");
  CLI::Option* select_seed = select->add_option("--seed", o.seed, "Seed");
  select->add_option("--families", o.families, "Restrict the grid to these families");
  select->add_option("--heat-n", o.heat_n, "Sample size used by the heat-diffusion grid");
  select->add_option("--weights", o.weights, "Apply this weight matrix to every grid kernel");

  CLI::App* fit = sub("fit", "Fit kernel ridge with a fixed kernel and lambda");
  add_data_opts(fit, o, true);
  add_kernel_opts(fit, o);
  fit->add_option("--task", o.task, "regression or classification");
  fit->add_option("--lambda", o.lambda, "Ridge penalty");

  CLI::App* predict = sub("predict", "Predict with a saved model");
  CLI::App* cfi_cmd = sub("cfi", "Compositional feature influence of a saved model");
  CLI::App* cpd_cmd = sub("cpd", "Compositional feature dependence curves of a saved model");
  CLI::App* interpret = sub("interpret", "CFI, CPD and CFI bar chart of a saved model");
  for (CLI::App* s : {predict, cfi_cmd, cpd_cmd, interpret}) {
    add_data_opts(s, o, false);
    s->add_option("--model", o.model, "model.json");
  }
  cpd_cmd->add_option("--feature", o.feature, "Only this feature");

  CLI::App* kpca = sub("kpca", "Kernel PCA embedding");
  CLI::App* summary = sub("summary", "Kernel summary statistic per sample");
  CLI::App* medoid = sub("medoid", "Kernel medoid overall and per class");
  for (CLI::App* s : {kpca, summary, medoid}) {
    add_data_opts(s, o, false);
    add_kernel_opts(s, o);
  }
  kpca->add_option("--task", o.task, "Label type when --label is given");
  kpca->add_option("--components", o.components, "Number of components");
  kpca->add_flag("--no-center", o.no_center, "Skip double centering");
  summary->add_option("--reference", o.reference, "Reference composition (default: barycentre)");

  CLI::App* unifrac = sub("unifrac-weights", "UniFrac weight matrix from a Newick tree");
  unifrac->add_option("--tree", o.tree, "Newick file");
  unifrac->add_option("--variant", o.variant, "A or B");
  unifrac->add_option("--leaves", o.leaves, "Leaf order (default: tree order)");

  CLI::App* simulate = sub("simulate", "Write a simulated dataset");
  simulate->add_option("--design", o.design, "blocktv or lognormal");
  simulate->add_option("--n", o.n, "Sample size");
  CLI::Option* simulate_seed = simulate->add_option("--seed", o.seed, "Seed");
  simulate->add_option("--p", o.p, "Parts (lognormal design)");
  simulate->add_option("--noise", o.noise, "Noise standard deviation (blocktv design)");

  CLI::App* compare = sub("compare-importance", "CFI against RI, PI and PDP on two test functions");
  compare->add_option("--n", o.n, "Sample size");
  compare->add_option("--seed", o.seed, "Seed");

  try {
    std::vector<std::string> tokens = args;
    std::optional<json> cfg;
    if (const auto path = scan_config_path(args)) {
      cfg = read_config(*path);
      if (const auto cmd = cfg->find("command"); cmd != cfg->end()) {
        if (!cmd->is_string()) usage("config key 'command' must be a string");
        const bool has_cmd = std::any_of(args.begin(), args.end(), [&](const std::string& a) {
          return app.get_subcommand_no_throw(a) != nullptr;
        });
        if (!has_cmd) tokens.insert(tokens.begin(), cmd->get<std::string>());
      }
    }
    std::vector<std::string> rev(tokens.rbegin(), tokens.rend());
    app.parse(rev);
    if (cfg) {
      CLI::App* chosen = app.get_subcommands().front();
      const auto extra = config_tokens(*cfg, *chosen);
      if (!extra.empty()) {
        std::vector<std::string> merged = tokens;
        merged.insert(merged.end(), extra.begin(), extra.end());
        rev.assign(merged.rbegin(), merged.rend());
        app.parse(rev);
      }
    }
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return exit_code(e);
  }

  try {
    set_max_threads(o.threads);
    CLI::App* chosen = app.get_subcommands().front();
    const std::string name = chosen->get_name();
    int code = kExitOk;
    if (name == "select") code = cmd_select(o, select_seed->count() > 0, out);
    else if (name == "fit") code = cmd_fit(o, out);
    else if (name == "predict") code = cmd_predict(o, out);
    else if (name == "cfi") code = cmd_cfi(o, out);
    else if (name == "cpd") code = cmd_cpd(o, out);
    else if (name == "interpret") code = cmd_interpret(o, out);
    else if (name == "kpca") code = cmd_kpca(o, out);
    else if (name == "summary") code = cmd_summary(o, out);
    else if (name == "medoid") code = cmd_medoid(o, out);
    else if (name == "unifrac-weights") code = cmd_unifrac(o, out);
    else if (name == "simulate") code = cmd_simulate(o, simulate_seed->count() > 0, out);
    else if (name == "compare-importance") code = cmd_compare(o, out);
    set_max_threads(0);
    return code;
  } catch (const Error& e) {
    set_max_threads(0);
    err << "error: " << e.what() << '\n';
    return exit_code(e);
  } catch (const std::exception& e) {
    set_max_threads(0);
    err << "error: " << e.what() << '\n';
    return kExitData;
  }
}

}  // namespace compkern::cli
