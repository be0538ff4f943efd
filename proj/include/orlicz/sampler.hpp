#pragma once

#include <cstdint>
#include <memory>
#include <random>
#include <vector>

#include "orlicz/tail.hpp"

namespace orlicz {

// Inverse-transform sampler for a TailFunction. The generalized inverse
// Q(u) = inf{t : P(X > t) <= u} is tabulated once at 4096 probability levels
// (2048 log-spaced in u and 2048 log-spaced in 1 - u), each refined by
// bisection to 1e-10 relative accuracy, and interpolated linearly in
// log-log coordinates. Uniforms landing in an atom's band
// [P(X > a), P(X >= a)) map to the atom location a; table cells that contain
// a band edge or a breakpoint image are solved exactly instead.
class Sampler {
 public:
  explicit Sampler(TailFunction source, std::uint64_t seed = 0, std::uint64_t stream_id = 0);

  double quantile(double u) const;
  // Exact generalized inverse by bisection (no table).
  double exact_quantile(double u) const;

  std::uint64_t seed() const { return seed_; }
  std::uint64_t stream_id() const { return stream_id_; }
  const TailFunction& source() const;

  // Same table, different substream.
  Sampler with_stream(std::uint64_t stream_id) const;

  // Draws n values from a fresh engine for (seed, stream_id).
  std::vector<double> sample(std::size_t n) const;

  class Stream;
  Stream stream() const;

 private:
  struct Table;
  Sampler(std::shared_ptr<const Table> table, std::uint64_t seed, std::uint64_t stream_id);

  std::shared_ptr<const Table> table_;
  std::uint64_t seed_;
  std::uint64_t stream_id_;
};

// Sequential draws for one (seed, stream_id) pair. The k-th call to next()
// is a deterministic function of (seed, stream_id, k) and the calls to
// next_bits() before it.
class Sampler::Stream {
 public:
  double next();
  // 64 uniformly random bits from the same engine.
  std::uint64_t next_bits() { return engine_(); }
  // Uniform in (0, 1).
  double next_uniform();

 private:
  friend class Sampler;
  Stream(std::shared_ptr<const Table> table, std::uint64_t seed, std::uint64_t stream_id);
  std::shared_ptr<const Table> table_;
  std::mt19937_64 engine_;
};

}  // namespace orlicz
