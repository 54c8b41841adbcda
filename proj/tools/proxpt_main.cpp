#include <cstdint>
#include <exception>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "proxpt/errors.hpp"
#include "proxpt/training.hpp"

namespace {

proxpt::RegKind parse_reg(const std::string& name) {
  if (name == "none") return proxpt::RegKind::zero;
  if (name == "l1") return proxpt::RegKind::l1;
  if (name == "l2") return proxpt::RegKind::l2_squared;
  return proxpt::RegKind::l2_norm;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"incremental proximal-point training tool"};
  app.require_subcommand(1);

  proxpt::GenerateConfig gen_config;
  std::string gen_problem;
  auto* gen = app.add_subcommand(
      "generate", "draw a synthetic dataset with a planted ground truth");
  gen->add_option("--problem", gen_problem,
                  "least-squares | robust-regression | logistic | hinge | "
                  "phase-retrieval | fm-ctr")
      ->required();
  gen->add_option("--dim", gen_config.dim, "feature dimension")
      ->capture_default_str();
  gen->add_option("--samples", gen_config.samples, "number of observations")
      ->capture_default_str();
  gen->add_option("--seed", gen_config.seed, "rng seed")->required();
  gen->add_option("--noise", gen_config.noise,
                  "additive noise scale (least-squares / robust-regression)")
      ->capture_default_str();
  gen->add_option("--fm-rank", gen_config.fm_rank, "planted latent rank (fm-ctr)")
      ->capture_default_str();
  gen->add_option("--active-fields", gen_config.active_fields,
                  "ones per row (fm-ctr)")
      ->capture_default_str();
  gen->add_option("--out", gen_config.out, "output dataset path")->required();

  proxpt::TrainingConfig train_config;
  std::string train_problem;
  std::string optimizer = "prox";
  std::string schedule = "const";
  std::string reg = "none";
  int trials = 1;
  auto* train = app.add_subcommand("train",
                                   "run a training loop and emit per-epoch "
                                   "metrics");
  train->add_option("--problem", train_problem,
                    "least-squares | robust-regression | logistic | hinge | "
                    "phase-retrieval | fm-ctr")
      ->required();
  train->add_option("--optimizer", optimizer, "prox | sgd")
      ->check(CLI::IsMember({"prox", "sgd"}))
      ->capture_default_str();
  train->add_option("--step-size", train_config.step_size, "schedule scale")
      ->required();
  train->add_option("--schedule", schedule, "const | inv-sqrt")
      ->check(CLI::IsMember({"const", "inv-sqrt"}))
      ->capture_default_str();
  train->add_option("--epochs", train_config.epochs)->capture_default_str();
  train->add_option("--batch-size", train_config.batch_size,
                    "1 = single-sample path")
      ->capture_default_str();
  train->add_option("--reg", reg, "none | l1 | l2 | l2norm")
      ->check(CLI::IsMember({"none", "l1", "l2", "l2norm"}))
      ->capture_default_str();
  train->add_option("--reg-coef", train_config.reg_coef,
                    "regularization coefficient")
      ->capture_default_str();
  train->add_option("--embedding-dim", train_config.embedding_dim,
                    "FM latent rank (fm-ctr)");
  train->add_option("--dim", train_config.dim,
                    "feature dimension (0 = infer from the data file)");
  train->add_option("--seed", train_config.seed, "rng seed")
      ->capture_default_str();
  train->add_flag("--shuffle,!--no-shuffle", train_config.shuffle,
                  "reshuffle the sample order each epoch");
  train->add_flag("--timings", train_config.timings,
                  "record wall times in the CSV (not byte-reproducible)");
  train->add_option("--trials", trials,
                    "run N independent seeds in parallel")
      ->capture_default_str();
  train->add_option("--data", train_config.data, "input dataset")->required();
  train->add_option("--out", train_config.out, "metrics CSV path");
  train->add_option("--truth", train_config.truth,
                    "ground-truth sidecar (default: <data>.truth when present)");

  CLI11_PARSE(app, argc, argv);

  try {
    if (gen->parsed()) {
      gen_config.problem = proxpt::parse_problem(gen_problem);
      gen_config.validate();
      proxpt::generate_dataset(gen_config);
      std::cout << "wrote " << gen_config.samples << " samples to "
                << gen_config.out << " (ground truth: " << gen_config.out
                << ".truth)\n";
    } else {
      train_config.problem = proxpt::parse_problem(train_problem);
      train_config.optimizer = optimizer == "prox"
                                   ? proxpt::OptimizerKind::prox
                                   : proxpt::OptimizerKind::sgd_baseline;
      train_config.schedule = schedule == "const"
                                  ? proxpt::ScheduleKind::constant
                                  : proxpt::ScheduleKind::inverse_sqrt;
      train_config.reg = parse_reg(reg);
      if (trials == 1) {
        proxpt::run_training(train_config, &std::cout);
      } else {
        proxpt::run_trials(train_config, trials, &std::cout);
      }
      if (!train_config.out.empty()) {
        std::cout << "metrics written to " << train_config.out << '\n';
      }
    }
  } catch (const proxpt::StepSizeError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
