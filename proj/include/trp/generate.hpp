#pragma once

// Seeded instance generators.

#include <trp/adversary.hpp>
#include <trp/core.hpp>

#include <cstdint>
#include <limits>
#include <random>
#include <string>
#include <vector>

namespace trp {

/// Portable seeded source: mt19937_64 with rejection sampling, so a seed yields the
/// same values on every standard library.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  /// Uniform integer in [lo, hi].
  std::int64_t uniform(std::int64_t lo, std::int64_t hi) {
    if (hi < lo) throw Error("empty integer range");
    const std::uint64_t span = static_cast<std::uint64_t>(hi) - static_cast<std::uint64_t>(lo);
    if (span == std::numeric_limits<std::uint64_t>::max()) return static_cast<std::int64_t>(engine_());
    const std::uint64_t n = span + 1;
    const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() - std::numeric_limits<std::uint64_t>::max() % n;
    std::uint64_t x;
    do {
      x = engine_();
    } while (x >= limit);
    return lo + static_cast<std::int64_t>(x % n);
  }

  /// Uniform multiple of 1/grid in [lo, hi]; lo and hi must be multiples of 1/grid.
  Scalar uniform_grid(const Scalar& lo, const Scalar& hi, long grid) {
    Scalar a = lo * grid, b = hi * grid;
    if (a.get_den() != 1 || b.get_den() != 1) throw Error("range ends are off the grid");
    if (!a.get_num().fits_slong_p() || !b.get_num().fits_slong_p()) throw Error("range too large for the grid");
    return make_scalar(uniform(a.get_num().get_si(), b.get_num().get_si()), grid);
  }

 private:
  std::mt19937_64 engine_;
};

/// Mixes several integers into one seed (splitmix64 finaliser).
inline std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t a, std::uint64_t b = 0) {
  auto mix = [](std::uint64_t z) {
    z += 0x9e3779b97f4a7c15ULL;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  };
  return mix(mix(mix(seed) ^ a) ^ b);
}

struct GenerateParams {
  LineSegment line{-10, 10};
  long min_requests = 1;
  long max_requests = 20;
  long max_arrival = 50;
  /// Positions are multiples of 1 / grid.
  long grid = 100;
  /// Absolute error bound for `perturbed`.
  Scalar delta = 0;

  void validate() const {
    if (min_requests < 1 || max_requests < min_requests) throw Error("invalid request-count range");
    if (max_arrival < 0) throw Error("negative arrival bound");
    if (grid < 1) throw Error("grid must be positive");
    if (sgn(delta) < 0) throw Error("negative prediction error");
  }
};

/// Uniform grid positions on the line, integer arrivals on [0, max_arrival],
/// perfect predictions.
inline Instance generate_random(const GenerateParams& p, Rng& rng) {
  p.validate();
  auto n = rng.uniform(p.min_requests, p.max_requests);
  std::vector<Request> rs;
  for (std::int64_t i = 0; i < n; ++i) {
    Scalar loc = rng.uniform_grid(p.line.left(), p.line.right(), p.grid);
    Scalar t = make_scalar(rng.uniform(0, p.max_arrival));
    rs.push_back({0, loc, loc, t});
  }
  return Instance(p.line, std::move(rs));
}

/// Like generate_random, with actual = predicted + offset, offset uniform on the
/// grid in [-delta, delta], clamped to the line.
inline Instance generate_perturbed(const GenerateParams& p, Rng& rng) {
  p.validate();
  auto n = rng.uniform(p.min_requests, p.max_requests);
  Scalar step = p.delta / p.grid;
  std::vector<Request> rs;
  for (std::int64_t i = 0; i < n; ++i) {
    Scalar predicted = rng.uniform_grid(p.line.left(), p.line.right(), p.grid);
    Scalar t = make_scalar(rng.uniform(0, p.max_arrival));
    Scalar actual = predicted + step * Scalar(rng.uniform(-p.grid, p.grid));
    if (actual < p.line.left()) actual = p.line.left();
    if (actual > p.line.right()) actual = p.line.right();
    rs.push_back({0, predicted, actual, t});
  }
  return Instance(p.line, std::move(rs));
}

/// The lower-bound game's base instance: requests at 1, 4, ..., 10 at time 0 on [0, 10].
inline Instance generate_lowerbound(const GameConfig& config = {}) {
  std::vector<Request> rs;
  for (const auto& l : config.base_locations) rs.push_back({0, l, l, Scalar(0)});
  return Instance(config.line(), std::move(rs));
}

inline Instance generate(const std::string& kind, const GenerateParams& p, std::uint64_t seed) {
  Rng rng(seed);
  if (kind == "random") return generate_random(p, rng);
  if (kind == "perturbed") return generate_perturbed(p, rng);
  if (kind == "lowerbound") return generate_lowerbound();
  throw Error("unknown instance kind '" + kind + "'");
}

}  // namespace trp
