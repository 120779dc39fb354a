#pragma once

#include <cmath>
#include <string>
#include <vector>

#include "srm/dataset.hpp"
#include "srm/rng.hpp"

namespace srm {

// Generative parameters for a fully sampled round robin. Covariates beyond
// the constant are independent standard normals, one column per extra beta.
struct TrueParameters {
  Family family = Family::continuous;
  int n_groups = 1;  // 1 means ungrouped output (no group column)
  int n_nodes = 10;  // per group
  std::vector<double> beta = {0.0};
  double ab_var_a = 0.5;
  double ab_cov_ab = 0.0;
  double ab_var_b = 0.5;
  double dyad_var = 1.0;  // forced to 1 for binary
  double dyad_corr = 0.0;
  double group_var = 0.0;
  bool with_offset = false;         // count only
  double log_offset_min = 0.0;      // log offset drawn uniform on [min, max]
  double log_offset_max = 0.0;

  bool grouped() const { return n_groups > 1; }

  void check() const {
    if (n_nodes < 2) throw Error(errc::config, "need at least two nodes per group");
    if (n_groups < 1) throw Error(errc::config, "need at least one group");
    if (beta.empty()) throw Error(errc::config, "beta must include the constant");
    const double det = ab_var_a * ab_var_b - ab_cov_ab * ab_cov_ab;
    if (ab_var_a < 0.0 || ab_var_b < 0.0 || det < 0.0)
      throw Error(errc::config, "actor-partner covariance is not positive semi-definite");
    if (!(dyad_var >= 0.0)) throw Error(errc::config, "dyad variance must be >= 0");
    if (!(std::fabs(dyad_corr) < 1.0) && dyad_var > 0.0)
      throw Error(errc::config, "dyad correlation must lie in (-1,1)");
    if (group_var < 0.0) throw Error(errc::config, "group variance must be >= 0");
    if (with_offset && family != Family::count)
      throw Error(errc::config, "offset is only supported for the count family");
    if (with_offset && log_offset_max < log_offset_min)
      throw Error(errc::config, "offset range is inverted");
  }
};

namespace detail {

// Correlated pair draw from a 2x2 covariance via its Cholesky factor.
inline void draw_pair(Rng& rng, double v1, double cov, double v2, double& x1, double& x2) {
  const double l11 = std::sqrt(v1);
  const double l21 = l11 > 0.0 ? cov / l11 : 0.0;
  const double rest = v2 - l21 * l21;
  const double l22 = rest > 0.0 ? std::sqrt(rest) : 0.0;
  const double z1 = rng.normal();
  const double z2 = rng.normal();
  x1 = l11 * z1;
  x2 = l21 * z1 + l22 * z2;
}

}  // namespace detail

// Draws (actor, partner) effect pairs from the actor-partner covariance.
// Exposed separately so the generator's moments can be checked at scale.
inline void simulate_node_effects(const TrueParameters& params, Rng& rng,
                                  std::vector<double>& a, std::vector<double>& b) {
  const int total_nodes = params.n_groups * params.n_nodes;
  a.resize(total_nodes);
  b.resize(total_nodes);
  for (int i = 0; i < total_nodes; ++i)
    detail::draw_pair(rng, params.ab_var_a, params.ab_cov_ab, params.ab_var_b, a[i], b[i]);
}

inline DyadicDataset simulate_dataset(const TrueParameters& params, long seed) {
  params.check();
  Rng rng(static_cast<std::uint64_t>(seed), /*stream=*/0);
  const bool grouped = params.grouped();
  const bool binary = params.family == Family::binary;
  const double dyad_var = binary ? 1.0 : params.dyad_var;
  const int P = static_cast<int>(params.beta.size());

  DyadicDataset ds;
  ds.schema.actor_col = "i_ID";
  ds.schema.partner_col = "j_ID";
  ds.schema.dyad_col = "ij_ID";
  ds.schema.response_col = "y";
  if (grouped) ds.schema.group_col = "k_ID";
  if (params.with_offset) ds.schema.offset_col = "log_offset";
  ds.has_offset = params.with_offset;
  ds.covariate_names = {"cons"};
  for (int p = 1; p < P; ++p) ds.covariate_names.push_back("x" + std::to_string(p));
  ds.schema.covariate_cols = ds.covariate_names;

  rng.set_block(1, 0);
  std::vector<double> group_eff(params.n_groups, 0.0);
  if (grouped) {
    const double sd = std::sqrt(params.group_var);
    for (auto& m : group_eff) m = sd * rng.normal();
  }

  rng.set_block(2, 0);
  std::vector<double> a, b;
  simulate_node_effects(params, rng, a, b);

  rng.set_block(3, 0);
  detail::LabelInterner nodes, dyad_ids, groups;
  for (int k = 0; k < params.n_groups; ++k) {
    const int base = k * params.n_nodes;
    const std::string gtag = grouped ? "g" + std::to_string(k + 1) : "";
    if (grouped) groups.intern(gtag, ds.group_labels);
    for (int i = 0; i < params.n_nodes; ++i)
      for (int j = i + 1; j < params.n_nodes; ++j) {
        const int ni = base + i, nj = base + j;
        const std::string ni_label = "n" + std::to_string(ni + 1);
        const std::string nj_label = "n" + std::to_string(nj + 1);
        const std::string dyad_label = "d" + std::to_string(ni + 1) + "_" + std::to_string(nj + 1);

        double e1, e2;
        detail::draw_pair(rng, dyad_var, params.dyad_corr * dyad_var, dyad_var, e1, e2);

        for (int dir = 0; dir < 2; ++dir) {
          ObservationRow row;
          row.actor = nodes.intern(dir == 0 ? ni_label : nj_label, ds.node_labels);
          row.partner = nodes.intern(dir == 0 ? nj_label : ni_label, ds.node_labels);
          row.dyad = dyad_ids.intern(dyad_label, ds.dyad_labels);
          if (grouped) row.group = k;

          double eta = 0.0;
          ds.covariates.push_back(1.0);
          eta += params.beta[0];
          for (int p = 1; p < P; ++p) {
            const double x = rng.normal();
            ds.covariates.push_back(x);
            eta += params.beta[p] * x;
          }
          if (grouped) eta += group_eff[k];
          const int actor = dir == 0 ? ni : nj;
          const int partner = dir == 0 ? nj : ni;
          eta += a[actor] + b[partner];
          const double e = dir == 0 ? e1 : e2;

          if (params.with_offset) {
            row.log_offset = params.log_offset_min +
                             (params.log_offset_max - params.log_offset_min) * rng.uniform();
            row.has_offset = true;
          }
          switch (params.family) {
            case Family::binary:
              row.response = (eta + e >= 0.0) ? 1.0 : 0.0;
              break;
            case Family::count:
              row.response = static_cast<double>(
                  rng.poisson(std::exp(eta + e + row.log_offset)));
              break;
            case Family::continuous:
              row.response = eta + e;
              break;
          }
          ds.rows.push_back(row);
        }
      }
  }

  index_dyads(ds);
  return ds;
}

}  // namespace srm
