#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "proxpt/dataset.hpp"
#include "proxpt/outer_function.hpp"
#include "proxpt/regularizer.hpp"
#include "proxpt/schedule.hpp"
#include "proxpt/types.hpp"

namespace proxpt {

enum class ProblemKind {
  least_squares,      // h = half-squared on a'x + b
  robust_regression,  // h = absolute value on a'x + b
  logistic,           // h = logistic on a'x + b (labels folded into a)
  hinge,              // h = hinge on a'x + b (labels folded into a, b = 1)
  phase_retrieval,    // h = absolute value on (a'x)^2 - y
  fm_ctr              // h = logistic on -y * fm(x; a)
};

enum class OptimizerKind { prox, sgd_baseline };

const char* problem_name(ProblemKind p);
const char* optimizer_name(OptimizerKind o);
ProblemKind parse_problem(const std::string& name);

struct TrainingConfig {
  ProblemKind problem = ProblemKind::least_squares;
  OptimizerKind optimizer = OptimizerKind::prox;
  ScheduleKind schedule = ScheduleKind::constant;
  double step_size = 1.0;
  int epochs = 1;
  int batch_size = 1;
  RegKind reg = RegKind::zero;
  double reg_coef = 0.0;
  int embedding_dim = 0;  // FM rank, required >= 1 for fm-ctr
  int dim = 0;            // feature dimension; 0 = infer from the data file
  std::uint64_t seed = 0;
  bool shuffle = true;   // seeded per-epoch reshuffle of the sample order
  bool timings = false;  // record wall-clock times in the CSV (breaks
                         // byte-reproducibility across machines)
  std::string data;      // input dataset path
  std::string truth;     // ground-truth sidecar; "" = look for data + ".truth"
  std::string out;       // metrics CSV path; "" = do not write a file

  void validate() const;
};

struct GenerateConfig {
  ProblemKind problem = ProblemKind::least_squares;
  int dim = 10;
  int samples = 100;
  std::uint64_t seed = 0;
  double noise = 0.1;        // least-squares / robust-regression only
  int fm_rank = 4;           // fm-ctr: planted latent rank
  int active_fields = 3;     // fm-ctr: number of 1-entries per row
  std::string out;           // dataset path; ground truth goes to out+".truth"

  void validate() const;
};

struct EpochMetrics {
  int epoch = 0;
  double avg_loss = 0;       // mean of per-step pre-step losses
  double dist_to_truth = 0;  // ||x - x_star||_2, valid iff has_dist
  bool has_dist = false;
  double wall_ms = 0;
};

struct TrainingResult {
  Vector x;
  std::vector<EpochMetrics> epochs;
  std::uint64_t config_hash = 0;
};

// Draws a synthetic dataset with a planted parameter vector, writes it to
// config.out (plus the ".truth" sidecar) when out is non-empty, and returns
// it. All randomness comes from a single Rng seeded with config.seed.
Dataset generate_dataset(const GenerateConfig& config);

// Runs the configured training loop over the dataset at config.data. Per
// epoch, reports the average pre-step loss, the distance to the planted
// ground truth when a sidecar is present, and the epoch wall time. Writes
// the metrics CSV to config.out when non-empty; when `progress` is given,
// one line per epoch (with real wall times) is streamed to it. For the
// quadratic problems a pre-pass computes the minimum admissible step bound
// over the dataset and aborts with StepSizeError before training if the
// schedule can exceed it.
TrainingResult run_training(const TrainingConfig& config,
                            std::ostream* progress = nullptr);

// Runs `trials` independent copies of the config in parallel, with seeds
// seed+0 ... seed+trials-1 and per-trial output files ("-trial<k>" inserted
// before the extension). Results are returned in trial order.
std::vector<TrainingResult> run_trials(const TrainingConfig& config,
                                       int trials,
                                       std::ostream* progress = nullptr);

// One incremental subgradient step x <- x - eta * h'(a'x + b) * a; returns
// the pre-step loss h(a'x + b).
double sgd_baseline_step(Vector& x, double eta, const Vector& a, double b,
                         const OuterFunction& h);

// FNV-1a hash of the canonical config serialization; recorded in the CSV
// header so runs can be matched to their configuration.
std::uint64_t config_hash(const TrainingConfig& config);

void write_metrics_csv(const std::string& path, const TrainingConfig& config,
                       const std::vector<EpochMetrics>& metrics);

}  // namespace proxpt
