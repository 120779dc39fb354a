#pragma once

#include <Eigen/Dense>
#include <cmath>
#include <limits>

#include "srm/model.hpp"
#include "srm/stats.hpp"

namespace srm {

// One complete parameter state. dyad_resid carries the latent dyad residuals
// for the count family; probit_latent carries y* for the binary family. The
// continuous family derives residuals from the data, so both stay empty.
struct EffectState {
  Eigen::VectorXd beta;
  Eigen::VectorXd actor_eff;
  Eigen::VectorXd partner_eff;
  Eigen::VectorXd group_eff;
  Eigen::VectorXd dyad_resid;
  Eigen::VectorXd probit_latent;
  Eigen::Matrix2d ab_cov = Eigen::Matrix2d::Zero();
  double dyad_var = 1.0;   // fixed at 1 for the binary family
  double dyad_corr = 0.0;  // rho_ee; sigma_ee = rho_ee * dyad_var
  double group_var = 0.0;
};

struct VarianceComponents {
  double pm = 0.0;
  double pa = 0.0;
  double pb = 0.0;
  double pe = 0.0;
  double total = 0.0;  // reported as sigma2r
  bool grouped = false;
};

// Systematic part x'beta (+ group effect) + actor + partner (+ log offset for
// the count family). Excludes the dyad residual.
inline double linear_predictor(int row, const EffectState& state, const ModelPlan& plan) {
  if (state.beta.size() != plan.n_covariates())
    throw Error(errc::internal, "state beta length does not match plan");
  const auto& r = plan.data->rows[row];
  double eta = 0.0;
  for (int p = 0; p < plan.n_covariates(); ++p) eta += plan.x(row, p) * state.beta[p];
  if (plan.config.grouped) eta += state.group_eff[r.group];
  eta += state.actor_eff[r.actor] + state.partner_eff[r.partner];
  if (plan.config.family == Family::count && r.has_offset) eta += r.log_offset;
  return eta;
}

inline double inverse_link(double eta, Family family) {
  switch (family) {
    case Family::binary: return norm_cdf(eta);
    case Family::count: return std::exp(eta);
    case Family::continuous: return eta;
  }
  return eta;
}

inline VarianceComponents variance_partition(const EffectState& state, bool grouped,
                                             Family family) {
  const double va = state.ab_cov(0, 0);
  const double vb = state.ab_cov(1, 1);
  const double ve = family == Family::binary ? 1.0 : state.dyad_var;
  double total = va + vb + ve;
  if (grouped) total += state.group_var;
  if (!(total > 0.0))
    throw Error(errc::degenerate, "total random-effect variance is zero");
  VarianceComponents v;
  v.grouped = grouped;
  v.pa = va / total;
  v.pb = vb / total;
  v.pe = ve / total;
  if (grouped) v.pm = state.group_var / total;
  v.total = total;
  return v;
}

struct ReciprocityPair {
  double rho_ab;  // NaN when actor or partner variance is zero
  double rho_ee;
};

inline ReciprocityPair reciprocity(const EffectState& state) {
  ReciprocityPair out;
  const double va = state.ab_cov(0, 0);
  const double vb = state.ab_cov(1, 1);
  out.rho_ab = (va > 0.0 && vb > 0.0)
                   ? state.ab_cov(0, 1) / (std::sqrt(va) * std::sqrt(vb))
                   : std::numeric_limits<double>::quiet_NaN();
  out.rho_ee = state.dyad_corr;
  return out;
}

// Log likelihood conditional on the actor/partner/group effects. Binary rows
// contribute Bernoulli(Phi(eta)) on the systematic part; count rows condition
// on the latent dyad residual; continuous dyads integrate the residual pair
// through its bivariate normal law.
inline double log_likelihood(const DyadicDataset& dataset, const EffectState& state,
                             const ModelPlan& plan) {
  const Family family = plan.config.family;
  double ll = 0.0;
  if (family == Family::binary) {
    for (int r = 0; r < dataset.n_rows(); ++r) {
      const double eta = linear_predictor(r, state, plan);
      ll += dataset.rows[r].response != 0.0 ? norm_logcdf(eta) : norm_logcdf(-eta);
    }
    return ll;
  }
  if (family == Family::count) {
    for (int r = 0; r < dataset.n_rows(); ++r) {
      const double log_rate = linear_predictor(r, state, plan) + state.dyad_resid[r];
      ll += poisson_logpmf(dataset.rows[r].response, log_rate);
    }
    return ll;
  }
  const double v = state.dyad_var;
  const double c = state.dyad_corr * v;
  if (!(v * v - c * c > 0.0))
    throw Error(errc::internal, "dyad residual covariance is not positive definite");
  for (const auto& d : dataset.dyads) {
    if (d.row_ij >= 0 && d.row_ji >= 0) {
      const double e1 = dataset.rows[d.row_ij].response - linear_predictor(d.row_ij, state, plan);
      const double e2 = dataset.rows[d.row_ji].response - linear_predictor(d.row_ji, state, plan);
      ll += dyad_pair_logpdf(e1, e2, v, c);
    } else {
      const int r = d.row_ij >= 0 ? d.row_ij : d.row_ji;
      const double e = dataset.rows[r].response - linear_predictor(r, state, plan);
      ll += normal_logpdf(e, 0.0, v);
    }
  }
  return ll;
}

inline double deviance(const DyadicDataset& dataset, const EffectState& state,
                       const ModelPlan& plan) {
  return -2.0 * log_likelihood(dataset, state, plan);
}

}  // namespace srm
