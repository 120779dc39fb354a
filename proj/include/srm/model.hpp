#pragma once

#include <Eigen/Dense>
#include <optional>
#include <string>
#include <vector>

#include "srm/dataset.hpp"
#include "srm/error.hpp"

namespace srm {

// Inverse-Wishart prior on the actor-partner covariance (scale = df * guess,
// degrees of freedom = df) plus inverse-gamma hyperpriors for the scalar
// variances. Fixed effects are improper-uniform.
struct PriorSpec {
  double ab_guess_aa = 0.5;
  double ab_guess_ab = 0.0;
  double ab_guess_bb = 0.5;
  double ab_df = 2.0;
  double scalar_shape = 0.001;
  double scalar_rate = 0.001;

  Eigen::Matrix2d guess() const {
    Eigen::Matrix2d g;
    g << ab_guess_aa, ab_guess_ab, ab_guess_ab, ab_guess_bb;
    return g;
  }

  void check() const {
    const double det = ab_guess_aa * ab_guess_bb - ab_guess_ab * ab_guess_ab;
    if (!(ab_guess_aa > 0.0) || !(det > 0.0))
      throw Error(errc::config, "actor-partner prior guess must be positive definite");
    if (!(ab_df >= 2.0))
      throw Error(errc::config, "prior degrees of freedom must be >= 2");
    if (!(scalar_shape > 0.0) || !(scalar_rate > 0.0))
      throw Error(errc::config, "scalar variance prior parameters must be positive");
  }
};

struct ChainSettings {
  int n_chains = 3;
  long seed = 1;
  long burnin = 50000;
  long iterations = 100000;
  long thin = 20;

  long stored_per_chain() const { return iterations / thin; }

  void check() const {
    if (n_chains < 1) throw Error(errc::config, "need at least one chain");
    if (thin < 1) throw Error(errc::config, "thinning must be >= 1");
    if (iterations < thin)
      throw Error(errc::config, "iterations (" + std::to_string(iterations) +
                                    ") must be >= thinning (" + std::to_string(thin) + ")");
    if (burnin < 0) throw Error(errc::config, "burn-in must be >= 0");
  }
};

struct ModelConfig {
  Family family = Family::binary;
  bool grouped = false;
  std::vector<std::string> covariate_names = {"cons"};
  std::optional<std::string> offset_name;
  PriorSpec prior;
  ChainSettings chains;
};

// A resolved model: config + dataset column bindings + the output manifest.
struct ModelPlan {
  ModelConfig config;
  const DyadicDataset* data = nullptr;
  std::vector<int> covariate_idx;  // into dataset covariate columns
  int constant_idx = -1;           // position in covariate_names of an all-constant column
  std::vector<std::string> manifest;

  int n_covariates() const { return static_cast<int>(covariate_idx.size()); }
  double x(int row, int p) const { return data->covariate(row, covariate_idx[p]); }
};

inline std::vector<std::string> parameter_manifest(Family family, bool grouped,
                                                   int n_covariates) {
  std::vector<std::string> m;
  for (int p = 0; p < n_covariates; ++p) m.push_back("beta_" + std::to_string(p));
  if (grouped) m.push_back("sigma2m");
  m.push_back("sigma2a1");
  m.push_back("sigma2b1");
  if (family != Family::binary) m.push_back("sigma2e1");
  m.push_back("rhoa1b1");
  m.push_back("rhoe1e1");
  if (grouped) m.push_back("pm");
  m.push_back("pa1");
  m.push_back("pb1");
  m.push_back("pe1");
  m.push_back("sigma2r");
  m.push_back("deviance");
  return m;
}

inline ModelPlan build_model(const ModelConfig& config, const DyadicDataset& dataset) {
  config.prior.check();
  config.chains.check();
  if (config.covariate_names.empty())
    throw Error(errc::config, "covariate list is empty");
  if (config.offset_name && config.family != Family::count)
    throw Error(errc::config, "offset is only supported for the count family");
  if (config.grouped && !dataset.grouped())
    throw Error(errc::config, "grouped model requested but dataset has no group column");

  ModelPlan plan;
  plan.config = config;
  plan.data = &dataset;
  for (const auto& name : config.covariate_names) {
    auto it = std::find(dataset.covariate_names.begin(), dataset.covariate_names.end(), name);
    if (it == dataset.covariate_names.end())
      throw Error(errc::unknown_covariate, "covariate '" + name + "' not in dataset");
    plan.covariate_idx.push_back(
        static_cast<int>(it - dataset.covariate_names.begin()));
  }
  if (config.offset_name) {
    if (!dataset.has_offset || dataset.schema.offset_col != config.offset_name)
      throw Error(errc::unknown_covariate,
                  "offset column '" + *config.offset_name + "' not in dataset");
  }

  // Locate a constant column (all rows equal, nonzero) for starting values.
  for (int p = 0; p < plan.n_covariates(); ++p) {
    const double v0 = plan.x(0, p);
    if (v0 == 0.0) continue;
    bool constant = true;
    for (int r = 1; r < dataset.n_rows(); ++r)
      if (plan.x(r, p) != v0) { constant = false; break; }
    if (constant) { plan.constant_idx = p; break; }
  }

  plan.manifest = parameter_manifest(config.family, config.grouped, plan.n_covariates());
  return plan;
}

}  // namespace srm
