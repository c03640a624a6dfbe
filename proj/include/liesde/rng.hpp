#pragma once

#include <array>
#include <cstdint>

namespace liesde {

/// Philox4x32-10 counter-based generator (Salmon et al., SC'11).
///
/// A block is a pure function of (key, counter), so any stream position can
/// be regenerated without replaying the stream.
class Philox4x32 {
 public:
  using Counter = std::array<std::uint32_t, 4>;
  using Key = std::array<std::uint32_t, 2>;

  static Counter block(Counter ctr, Key key);
};

/// Where a stream of normals lives: one stream per (seed, path, level, step).
struct StreamId {
  std::uint64_t seed = 0;
  std::uint32_t path = 0;
  std::uint32_t level = 0;
  std::uint32_t step = 0;
};

/// Standard normal variates drawn from one Philox stream via Box-Muller.
///
/// Deterministic across platforms: only integer arithmetic and libm
/// log/sqrt/cos/sin are involved.
class NormalStream {
 public:
  explicit NormalStream(StreamId id);

  double next();

 private:
  void refill();

  StreamId id_;
  std::uint32_t block_ = 0;
  std::array<double, 4> buf_{};
  int pos_ = 4;
};

}  // namespace liesde
