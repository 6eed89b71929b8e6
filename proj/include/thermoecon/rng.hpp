#pragma once

#include <cstdint>
#include <random>
#include <vector>

namespace thermoecon {

// Seeded generator with self-contained samplers so trajectories are
// reproducible byte-for-byte from (seed, config) alone.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t raw() { return engine_(); }

  // Uniform on (0, 1), never returns an endpoint.
  double uniform01() {
    return (static_cast<double>(engine_() >> 11) + 0.5) * 0x1.0p-53;
  }

  double uniform(double a, double b) { return a + (b - a) * uniform01(); }

  double exponential(double rate) { return -std::log(uniform01()) / rate; }

  double normal();

  // Unit-scale gamma, any shape > 0.
  double gamma(double shape);

  double beta(double a, double b);

  // Beta(a, 1) via inverse CDF; exact and cheap.
  double beta_a1(double a) { return std::pow(uniform01(), 1.0 / a); }

  std::vector<double> dirichlet(const std::vector<double>& alpha);

  // Independent stream derived from (seed, index); used for replicas.
  static std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t index);

 private:
  std::mt19937_64 engine_;
};

}  // namespace thermoecon
