#include "proxpt/training.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <exception>
#include <fstream>
#include <iostream>
#include <limits>
#include <numeric>
#include <optional>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <thread>
#include <utility>

#include "proxpt/errors.hpp"
#include "proxpt/factorization_machine.hpp"
#include "proxpt/minibatch.hpp"
#include "proxpt/phase_retrieval.hpp"
#include "proxpt/prox_linear.hpp"
#include "proxpt/prox_quadratic.hpp"
#include "proxpt/rng.hpp"

namespace proxpt {

namespace {

bool is_quadratic(ProblemKind p) {
  return p == ProblemKind::phase_retrieval || p == ProblemKind::fm_ctr;
}

OuterFunction outer_for(ProblemKind p) {
  switch (p) {
    case ProblemKind::least_squares:
      return OuterFunction::half_squared();
    case ProblemKind::robust_regression:
      return OuterFunction::abs_value();
    case ProblemKind::logistic:
      return OuterFunction::logistic();
    case ProblemKind::hinge:
      return OuterFunction::hinge();
    case ProblemKind::phase_retrieval:
      return OuterFunction::abs_value();
    case ProblemKind::fm_ctr:
      return OuterFunction::logistic();
  }
  throw std::invalid_argument("unknown problem kind");
}

const char* reg_name(RegKind r) {
  switch (r) {
    case RegKind::zero:
      return "none";
    case RegKind::l1:
      return "l1";
    case RegKind::l2_squared:
      return "l2";
    case RegKind::l2_norm:
      return "l2norm";
  }
  return "?";
}

double sigmoid(double z) {
  if (z >= 0) return 1.0 / (1.0 + std::exp(-z));
  const double e = std::exp(z);
  return e / (1.0 + e);
}

std::string fmt_g(double v, const char* spec = "%.15g") {
  char buf[40];
  std::snprintf(buf, sizeof buf, spec, v);
  return buf;
}

bool file_exists(const std::string& path) {
  std::ifstream probe(path);
  return probe.good();
}

}  // namespace

const char* problem_name(ProblemKind p) {
  switch (p) {
    case ProblemKind::least_squares:
      return "least-squares";
    case ProblemKind::robust_regression:
      return "robust-regression";
    case ProblemKind::logistic:
      return "logistic";
    case ProblemKind::hinge:
      return "hinge";
    case ProblemKind::phase_retrieval:
      return "phase-retrieval";
    case ProblemKind::fm_ctr:
      return "fm-ctr";
  }
  return "?";
}

const char* optimizer_name(OptimizerKind o) {
  return o == OptimizerKind::prox ? "prox" : "sgd";
}

ProblemKind parse_problem(const std::string& name) {
  if (name == "least-squares") return ProblemKind::least_squares;
  if (name == "robust-regression") return ProblemKind::robust_regression;
  if (name == "logistic") return ProblemKind::logistic;
  if (name == "hinge") return ProblemKind::hinge;
  if (name == "phase-retrieval") return ProblemKind::phase_retrieval;
  if (name == "fm-ctr") return ProblemKind::fm_ctr;
  throw std::invalid_argument("unknown problem '" + name + "'");
}

void TrainingConfig::validate() const {
  if (epochs < 1) throw std::invalid_argument("epochs must be >= 1");
  if (!(step_size > 0)) {
    throw std::invalid_argument("step size must be positive");
  }
  if (batch_size < 1) throw std::invalid_argument("batch size must be >= 1");
  if (batch_size > MiniBatchConvexOnLinear::max_batch) {
    throw std::invalid_argument("batch size exceeds the supported maximum");
  }
  if (batch_size > 1 && problem != ProblemKind::least_squares &&
      problem != ProblemKind::logistic && problem != ProblemKind::hinge) {
    throw std::invalid_argument(
        "mini-batch steps are supported for least-squares, logistic, and "
        "hinge only");
  }
  if (problem == ProblemKind::fm_ctr && embedding_dim < 1) {
    throw std::invalid_argument("fm-ctr requires embedding-dim >= 1");
  }
  if (optimizer == OptimizerKind::sgd_baseline && is_quadratic(problem)) {
    throw std::invalid_argument(
        "the subgradient baseline supports the linear-composite problems "
        "only");
  }
  if (reg != RegKind::zero) {
    if (!(reg_coef >= 0)) {
      throw std::invalid_argument("regularization coefficient must be >= 0");
    }
    if (optimizer != OptimizerKind::prox) {
      throw std::invalid_argument(
          "regularization requires the prox optimizer");
    }
    if (batch_size > 1) {
      throw std::invalid_argument("regularization requires batch-size 1");
    }
    if (is_quadratic(problem)) {
      throw std::invalid_argument(
          "regularization is unsupported for the quadratic problems");
    }
  }
}

void GenerateConfig::validate() const {
  if (dim < 1) throw std::invalid_argument("dim must be >= 1");
  if (samples < 1) throw std::invalid_argument("samples must be >= 1");
  if (!(noise >= 0)) throw std::invalid_argument("noise must be >= 0");
  if (problem == ProblemKind::fm_ctr) {
    if (fm_rank < 1) throw std::invalid_argument("fm-rank must be >= 1");
    if (active_fields < 1 || active_fields > dim) {
      throw std::invalid_argument("active-fields must lie in [1, dim]");
    }
  }
}

Dataset generate_dataset(const GenerateConfig& config) {
  config.validate();
  Rng rng(config.seed);
  const int d = config.dim;
  const int n = config.samples;
  Dataset ds;
  ds.b.resize(n);
  Vector truth;

  auto draw_vector = [&rng](Eigen::Index len) {
    Vector v(len);
    for (Eigen::Index i = 0; i < len; ++i) v[i] = rng.normal();
    return v;
  };

  switch (config.problem) {
    case ProblemKind::least_squares:
    case ProblemKind::robust_regression: {
      truth = draw_vector(d);
      ds.a.resize(n, d);
      for (int i = 0; i < n; ++i) {
        for (int j = 0; j < d; ++j) ds.a(i, j) = rng.normal();
        double b = -ds.a.row(i).dot(truth);
        if (config.noise != 0) b += config.noise * rng.normal();
        ds.b[i] = b;
      }
      break;
    }
    case ProblemKind::logistic: {
      truth = draw_vector(d);
      ds.a.resize(n, d);
      for (int i = 0; i < n; ++i) {
        Vector g = draw_vector(d);
        const double y = rng.uniform() < sigmoid(g.dot(truth)) ? 1.0 : -1.0;
        ds.a.row(i) = (-y) * g.transpose();
        ds.b[i] = 0;
      }
      break;
    }
    case ProblemKind::hinge: {
      truth = draw_vector(d);
      ds.a.resize(n, d);
      for (int i = 0; i < n; ++i) {
        Vector g = draw_vector(d);
        const double y = g.dot(truth) >= 0 ? 1.0 : -1.0;
        ds.a.row(i) = (-y) * g.transpose();
        ds.b[i] = 1;
      }
      break;
    }
    case ProblemKind::phase_retrieval: {
      truth = draw_vector(d);
      ds.a.resize(n, d);
      for (int i = 0; i < n; ++i) {
        for (int j = 0; j < d; ++j) ds.a(i, j) = rng.normal();
        const double m = ds.a.row(i).dot(truth);
        ds.b[i] = m * m;
      }
      break;
    }
    case ProblemKind::fm_ctr: {
      const int k = config.fm_rank;
      const FMLayout layout{d, k};
      const double w0 = rng.normal();
      const Vector w = draw_vector(d);
      Matrix v(k, d);
      for (int j = 0; j < d; ++j) {
        for (int i = 0; i < k; ++i) v(i, j) = rng.normal();
      }
      truth = fm_concat(w0, w, v);
      ds.a = Matrix::Zero(n, d);
      ds.format = DatasetFormat::sparse;
      std::vector<int> fields(static_cast<std::size_t>(d));
      for (int i = 0; i < n; ++i) {
        std::iota(fields.begin(), fields.end(), 0);
        for (int j = 0; j < config.active_fields; ++j) {
          const auto pick =
              j + static_cast<int>(rng.below(static_cast<std::uint64_t>(d - j)));
          std::swap(fields[static_cast<std::size_t>(j)],
                    fields[static_cast<std::size_t>(pick)]);
        }
        for (int j = 0; j < config.active_fields; ++j) {
          ds.a(i, fields[static_cast<std::size_t>(j)]) = 1.0;
        }
        const Vector row = ds.a.row(i).transpose();
        const double y =
            rng.uniform() < sigmoid(fm_eval(layout, truth, row)) ? 1.0 : -1.0;
        ds.b[i] = y;
      }
      break;
    }
  }

  if (!config.out.empty()) {
    write_dataset(config.out, ds);
    write_truth(config.out + ".truth", truth);
  }
  return ds;
}

double sgd_baseline_step(Vector& x, double eta, const Vector& a, double b,
                         const OuterFunction& h) {
  if (!(eta > 0)) throw std::invalid_argument("step size must be positive");
  if (a.size() != x.size()) {
    throw std::invalid_argument("sgd_baseline_step: dimension mismatch");
  }
  const double beta = a.dot(x) + b;
  const double loss = h.eval(beta);
  x -= (eta * h.deriv(beta)) * a;
  return loss;
}

std::uint64_t config_hash(const TrainingConfig& config) {
  std::ostringstream s;
  s << problem_name(config.problem) << '|' << optimizer_name(config.optimizer)
    << '|'
    << (config.schedule == ScheduleKind::constant ? "const" : "inv-sqrt")
    << '|' << fmt_g(config.step_size, "%.17g") << '|' << config.epochs << '|'
    << config.batch_size << '|' << reg_name(config.reg) << '|'
    << fmt_g(config.reg_coef, "%.17g") << '|' << config.embedding_dim << '|'
    << config.dim << '|' << config.seed << '|' << (config.shuffle ? 1 : 0)
    << '|' << config.data;
  const std::string bytes = s.str();
  std::uint64_t hash = 14695981039346656037ull;
  for (unsigned char c : bytes) {
    hash ^= c;
    hash *= 1099511628211ull;
  }
  return hash;
}

void write_metrics_csv(const std::string& path, const TrainingConfig& config,
                       const std::vector<EpochMetrics>& metrics) {
  std::ofstream out(path);
  if (!out) {
    throw DataFormatError("cannot open '" + path + "' for writing", 0);
  }
  char header[64];
  std::snprintf(header, sizeof header, "%016llx",
                static_cast<unsigned long long>(config_hash(config)));
  out << "# config=" << header << " seed=" << config.seed << '\n';
  out << "epoch,avg_loss,dist_to_truth,wall_ms\n";
  for (const auto& em : metrics) {
    out << em.epoch << ',' << fmt_g(em.avg_loss) << ',';
    if (em.has_dist) out << fmt_g(em.dist_to_truth);
    out << ',';
    if (config.timings) out << fmt_g(em.wall_ms);
    out << '\n';
  }
}

TrainingResult run_training(const TrainingConfig& config,
                            std::ostream* progress) {
  config.validate();
  if (config.data.empty()) {
    throw std::invalid_argument("run_training: a data path is required");
  }
  const DatasetFormat format = config.problem == ProblemKind::fm_ctr
                                   ? DatasetFormat::sparse
                                   : DatasetFormat::dense;
  const Dataset ds = parse_dataset(config.data, format, config.dim);
  const auto n = ds.size();
  if (n == 0) throw std::invalid_argument("dataset is empty");
  const auto d = ds.dim();
  const StepSchedule schedule(config.schedule, config.step_size);
  const OuterFunction h = outer_for(config.problem);
  const FMLayout layout{static_cast<int>(d), std::max(config.embedding_dim, 1)};

  const Eigen::Index param_dim =
      config.problem == ProblemKind::fm_ctr ? layout.dim() : d;

  Vector truth;
  bool have_truth = false;
  const std::string truth_path =
      config.truth.empty() ? config.data + ".truth" : config.truth;
  if (!config.truth.empty() || file_exists(truth_path)) {
    truth = read_truth(truth_path);
    have_truth = true;
    if (truth.size() != param_dim) {
      throw std::invalid_argument(
          "ground-truth dimension does not match the model parameters");
    }
  }

  // For the quadratic problems, a full pass over the data determines the
  // smallest admissible step bound; training aborts up front if the schedule
  // can ever exceed it.
  if (is_quadratic(config.problem) &&
      config.optimizer == OptimizerKind::prox) {
    double bound = std::numeric_limits<double>::infinity();
    for (Eigen::Index i = 0; i < n; ++i) {
      const Vector a = ds.a.row(i).transpose();
      if (config.problem == ProblemKind::phase_retrieval) {
        bound = std::min(bound, PhaseRetrievalOracle(a, ds.b[i]).max_step_size());
      } else {
        bound = std::min(bound, FMCTROracle(layout, a, ds.b[i]).max_step_size());
      }
    }
    if (!(schedule.max_value() < bound)) {
      std::ostringstream msg;
      msg << "maximum scheduled step size " << schedule.max_value()
          << " is not below the dataset's stability bound " << bound;
      throw StepSizeError(msg.str(), bound);
    }
    if (schedule.max_value() >= 0.99 * bound) {
      std::cerr << "warning: step size " << schedule.max_value()
                << " is within 1% of the stability bound " << bound << '\n';
    }
  }

  Rng rng(config.seed);

  enum class Mode { plain, regularized, batched, quadratic, baseline };
  Mode mode;
  if (config.optimizer == OptimizerKind::sgd_baseline) {
    mode = Mode::baseline;
  } else if (is_quadratic(config.problem)) {
    mode = Mode::quadratic;
  } else if (config.batch_size > 1) {
    mode = Mode::batched;
  } else if (config.reg != RegKind::zero) {
    mode = Mode::regularized;
  } else {
    mode = Mode::plain;
  }

  Vector x0 = Vector::Zero(param_dim);
  if (config.problem == ProblemKind::phase_retrieval) {
    // The zero vector is a fixed point of the phase-retrieval proximal step
    // (the measurement model is sign-symmetric), so start from a seeded
    // random point of roughly unit norm instead.
    const double scale = 1.0 / std::sqrt(static_cast<double>(param_dim));
    for (Eigen::Index i = 0; i < param_dim; ++i) {
      x0[i] = scale * rng.normal();
    }
  }
  std::optional<ConvexOnLinear> plain;
  std::optional<RegularizedConvexOnLinear> regularized;
  std::optional<MiniBatchConvexOnLinear> batched;
  std::optional<ConvexLipschitzOnQuadratic> quadratic;
  Vector x_baseline = x0;
  switch (mode) {
    case Mode::plain:
      plain.emplace(h, x0);
      break;
    case Mode::regularized:
      regularized.emplace(h, Regularizer(config.reg, config.reg_coef), x0);
      break;
    case Mode::batched:
      batched.emplace(h, x0);
      break;
    case Mode::quadratic:
      quadratic.emplace(h, x0);
      break;
    case Mode::baseline:
      break;
  }
  auto current_x = [&]() -> const Vector& {
    switch (mode) {
      case Mode::plain:
        return plain->x();
      case Mode::regularized:
        return regularized->x();
      case Mode::batched:
        return batched->x();
      case Mode::quadratic:
        return quadratic->x();
      case Mode::baseline:
        break;
    }
    return x_baseline;
  };

  std::vector<Eigen::Index> order(static_cast<std::size_t>(n));
  std::iota(order.begin(), order.end(), Eigen::Index{0});

  TrainingResult result;
  result.config_hash = config_hash(config);
  long t = 0;
  for (int epoch = 1; epoch <= config.epochs; ++epoch) {
    const auto start = std::chrono::steady_clock::now();
    if (config.shuffle) rng.shuffle(order);
    double loss_sum = 0;
    long steps = 0;
    const auto m = static_cast<Eigen::Index>(config.batch_size);
    for (Eigen::Index offset = 0; offset < n; offset += m) {
      const Eigen::Index take = std::min(m, n - offset);
      ++t;
      const double eta = schedule.at(t);
      double loss = 0;
      if (mode == Mode::batched) {
        Matrix a(take, d);
        Vector b(take);
        for (Eigen::Index j = 0; j < take; ++j) {
          const auto row = order[static_cast<std::size_t>(offset + j)];
          a.row(j) = ds.a.row(row);
          b[j] = ds.b[row];
        }
        loss = batched->step(eta, a, b).mean();
      } else {
        const auto row = order[static_cast<std::size_t>(offset)];
        const Vector a = ds.a.row(row).transpose();
        const double b = ds.b[row];
        switch (mode) {
          case Mode::plain:
            loss = plain->step(eta, a, b);
            break;
          case Mode::regularized:
            loss = regularized->step(eta, a, b);
            break;
          case Mode::quadratic:
            if (config.problem == ProblemKind::phase_retrieval) {
              const PhaseRetrievalOracle oracle(a, b);
              loss = quadratic->step(eta, oracle);
            } else {
              loss = fm_ctr_step(*quadratic, eta, layout, a, b);
            }
            break;
          case Mode::baseline:
            loss = sgd_baseline_step(x_baseline, eta, a, b, h);
            break;
          case Mode::batched:
            break;
        }
      }
      loss_sum += loss;
      ++steps;
    }
    EpochMetrics em;
    em.epoch = epoch;
    em.avg_loss = loss_sum / static_cast<double>(steps);
    if (have_truth) {
      em.has_dist = true;
      em.dist_to_truth = (current_x() - truth).norm();
    }
    em.wall_ms = std::chrono::duration<double, std::milli>(
                     std::chrono::steady_clock::now() - start)
                     .count();
    result.epochs.push_back(em);
    if (progress) {
      *progress << "epoch=" << em.epoch << " avg_loss=" << fmt_g(em.avg_loss, "%.8g");
      if (em.has_dist) {
        *progress << " dist_to_truth=" << fmt_g(em.dist_to_truth, "%.8g");
      }
      *progress << " wall_ms=" << fmt_g(em.wall_ms, "%.3f") << '\n';
    }
  }
  result.x = current_x();
  if (!config.out.empty()) {
    write_metrics_csv(config.out, config, result.epochs);
  }
  return result;
}

namespace {

std::string trial_path(const std::string& out, int trial) {
  if (out.empty()) return out;
  const std::string tag = "-trial" + std::to_string(trial);
  const auto slash = out.find_last_of('/');
  const auto dot = out.find_last_of('.');
  if (dot == std::string::npos || (slash != std::string::npos && dot < slash)) {
    return out + tag;
  }
  return out.substr(0, dot) + tag + out.substr(dot);
}

}  // namespace

std::vector<TrainingResult> run_trials(const TrainingConfig& config,
                                       int trials, std::ostream* progress) {
  if (trials < 1) throw std::invalid_argument("trials must be >= 1");
  std::vector<TrainingResult> results(static_cast<std::size_t>(trials));
  std::vector<std::exception_ptr> errors(static_cast<std::size_t>(trials));
  std::vector<std::ostringstream> logs(static_cast<std::size_t>(trials));
  std::vector<TrainingConfig> configs(static_cast<std::size_t>(trials), config);
  std::vector<std::thread> workers;
  workers.reserve(static_cast<std::size_t>(trials));
  for (int k = 0; k < trials; ++k) {
    auto& ck = configs[static_cast<std::size_t>(k)];
    ck.seed = config.seed + static_cast<std::uint64_t>(k);
    ck.out = trial_path(config.out, k);
    workers.emplace_back([k, &ck, &results, &errors, &logs, progress] {
      try {
        results[static_cast<std::size_t>(k)] =
            run_training(ck, progress ? &logs[static_cast<std::size_t>(k)]
                                      : nullptr);
      } catch (...) {
        errors[static_cast<std::size_t>(k)] = std::current_exception();
      }
    });
  }
  for (auto& w : workers) w.join();
  if (progress) {
    for (int k = 0; k < trials; ++k) {
      *progress << "--- trial " << k << " (seed "
                << configs[static_cast<std::size_t>(k)].seed << ") ---\n"
                << logs[static_cast<std::size_t>(k)].str();
    }
  }
  for (const auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
  return results;
}

}  // namespace proxpt
