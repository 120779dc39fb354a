#pragma once

#include <cmath>
#include <cstdint>

#include "srm/stats.hpp"

namespace srm {

// Counter-based stream: Philox-4x32-10 keyed by (seed, stream), with the
// counter laid out as (block id, sweep, draw index). Re-keying by stream id
// gives each chain its own reproducible sequence, so serial and parallel
// execution see identical draws.
class Rng {
 public:
  Rng(std::uint64_t seed, std::uint64_t stream) {
    std::uint64_t k = mix64(seed + 0x9e3779b97f4a7c15ULL * (stream + 1));
    key0_ = static_cast<std::uint32_t>(k);
    key1_ = static_cast<std::uint32_t>(k >> 32);
    set_block(0, 0);
  }

  // Positions the stream at (block, sweep) and rewinds the draw counter.
  void set_block(std::uint32_t block, std::uint64_t sweep) {
    block_ = block;
    sweep_ = sweep;
    draw_ = 0;
    have_spare_ = false;
  }

  std::uint64_t next_u64() {
    if (have_spare_) {
      have_spare_ = false;
      return spare_;
    }
    std::uint32_t c[4] = {static_cast<std::uint32_t>(draw_),
                          static_cast<std::uint32_t>(draw_ >> 32),
                          static_cast<std::uint32_t>(sweep_), block_};
    ++draw_;
    std::uint32_t k0 = key0_, k1 = key1_;
    for (int round = 0; round < 10; ++round) {
      const std::uint64_t p0 = 0xD2511F53ULL * c[0];
      const std::uint64_t p1 = 0xCD9E8D57ULL * c[2];
      const std::uint32_t lo0 = static_cast<std::uint32_t>(p0);
      const std::uint32_t hi0 = static_cast<std::uint32_t>(p0 >> 32);
      const std::uint32_t lo1 = static_cast<std::uint32_t>(p1);
      const std::uint32_t hi1 = static_cast<std::uint32_t>(p1 >> 32);
      const std::uint32_t n0 = hi1 ^ c[1] ^ k0;
      const std::uint32_t n1 = lo1;
      const std::uint32_t n2 = hi0 ^ c[3] ^ k1;
      const std::uint32_t n3 = lo0;
      c[0] = n0; c[1] = n1; c[2] = n2; c[3] = n3;
      k0 += 0x9E3779B9u;
      k1 += 0xBB67AE85u;
    }
    spare_ = (static_cast<std::uint64_t>(c[2]) << 32) | c[3];
    have_spare_ = true;
    return (static_cast<std::uint64_t>(c[0]) << 32) | c[1];
  }

  // [0, 1)
  double uniform() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

  // (0, 1) — safe under log()
  double uniform_open() {
    return (static_cast<double>(next_u64() >> 12) + 0.5) * 0x1.0p-52;
  }

  double normal() { return norm_quantile(uniform_open()); }

  // Gamma(shape, 1), Marsaglia–Tsang squeeze; boosted for shape < 1.
  double gamma(double shape) {
    if (shape < 1.0) {
      const double u = uniform_open();
      return gamma(shape + 1.0) * std::pow(u, 1.0 / shape);
    }
    const double d = shape - 1.0 / 3.0;
    const double c = 1.0 / std::sqrt(9.0 * d);
    for (;;) {
      double x = normal();
      double t = 1.0 + c * x;
      if (t <= 0.0) continue;
      const double v = t * t * t;
      const double u = uniform_open();
      const double x2 = x * x;
      if (u < 1.0 - 0.0331 * x2 * x2) return d * v;
      if (std::log(u) < 0.5 * x2 + d * (1.0 - v + std::log(v))) return d * v;
    }
  }

  double chi_squared(double df) { return 2.0 * gamma(0.5 * df); }

  // Standard normal conditioned on Z >= alpha: inverse CDF through the
  // survival function for alpha <= 6, exponential rejection in the far tail.
  double std_normal_lower_trunc(double alpha) {
    if (alpha <= 6.0) {
      const double tail = norm_sf(alpha);
      const double q = tail * uniform_open();
      return -norm_quantile(q);
    }
    const double lambda = 0.5 * (alpha + std::sqrt(alpha * alpha + 4.0));
    for (;;) {
      const double z = alpha - std::log(uniform_open()) / lambda;
      const double diff = z - lambda;
      if (std::log(uniform_open()) <= -0.5 * diff * diff) return z;
    }
  }

  // N(mean, sd^2) conditioned on X >= lower.
  double normal_lower_trunc(double mean, double sd, double lower) {
    return mean + sd * std_normal_lower_trunc((lower - mean) / sd);
  }

  // N(mean, sd^2) conditioned on X <= upper.
  double normal_upper_trunc(double mean, double sd, double upper) {
    return mean - sd * std_normal_lower_trunc((mean - upper) / sd);
  }

  // Exact Poisson by multiplicative thinning; large means are split so the
  // uniform product never underflows.
  std::uint64_t poisson(double mean) {
    std::uint64_t total = 0;
    while (mean > 30.0) {
      total += poisson_knuth(30.0);
      mean -= 30.0;
    }
    return total + poisson_knuth(mean);
  }

 private:
  std::uint64_t poisson_knuth(double mean) {
    if (mean <= 0.0) return 0;
    const double limit = std::exp(-mean);
    std::uint64_t k = 0;
    double prod = uniform_open();
    while (prod > limit) {
      ++k;
      prod *= uniform_open();
    }
    return k;
  }

  static std::uint64_t mix64(std::uint64_t z) {
    z += 0x9e3779b97f4a7c15ULL;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  std::uint32_t key0_, key1_;
  std::uint32_t block_ = 0;
  std::uint64_t sweep_ = 0;
  std::uint64_t draw_ = 0;
  std::uint64_t spare_ = 0;
  bool have_spare_ = false;
};

}  // namespace srm
