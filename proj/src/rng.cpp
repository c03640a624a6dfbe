#include "liesde/rng.hpp"

#include <cmath>
#include <numbers>

namespace liesde {

namespace {

constexpr std::uint32_t kMulA = 0xD2511F53;
constexpr std::uint32_t kMulB = 0xCD9E8D57;
constexpr std::uint32_t kWeylA = 0x9E3779B9;
constexpr std::uint32_t kWeylB = 0xBB67AE85;

void mulhilo(std::uint32_t a, std::uint32_t b, std::uint32_t& lo, std::uint32_t& hi) {
  const std::uint64_t p = static_cast<std::uint64_t>(a) * b;
  lo = static_cast<std::uint32_t>(p);
  hi = static_cast<std::uint32_t>(p >> 32);
}

// Uniform on the open interval (0, 1) from 32 random bits.
double to_open_unit(std::uint32_t x) { return (static_cast<double>(x) + 0.5) * 0x1p-32; }

}  // namespace

Philox4x32::Counter Philox4x32::block(Counter ctr, Key key) {
  for (int round = 0; round < 10; ++round) {
    std::uint32_t lo0, hi0, lo1, hi1;
    mulhilo(kMulA, ctr[0], lo0, hi0);
    mulhilo(kMulB, ctr[2], lo1, hi1);
    ctr = {hi1 ^ ctr[1] ^ key[0], lo1, hi0 ^ ctr[3] ^ key[1], lo0};
    key[0] += kWeylA;
    key[1] += kWeylB;
  }
  return ctr;
}

NormalStream::NormalStream(StreamId id) : id_(id) {}

double NormalStream::next() {
  if (pos_ == 4) refill();
  return buf_[static_cast<std::size_t>(pos_++)];
}

void NormalStream::refill() {
  const Philox4x32::Key key = {static_cast<std::uint32_t>(id_.seed),
                               static_cast<std::uint32_t>(id_.seed >> 32)};
  const Philox4x32::Counter ctr = {block_++, id_.step, id_.path, id_.level};
  const auto bits = Philox4x32::block(ctr, key);
  for (int pair = 0; pair < 2; ++pair) {
    const double u1 = to_open_unit(bits[static_cast<std::size_t>(2 * pair)]);
    const double u2 = to_open_unit(bits[static_cast<std::size_t>(2 * pair + 1)]);
    const double r = std::sqrt(-2.0 * std::log(u1));
    const double phi = 2.0 * std::numbers::pi * u2;
    buf_[static_cast<std::size_t>(2 * pair)] = r * std::cos(phi);
    buf_[static_cast<std::size_t>(2 * pair + 1)] = r * std::sin(phi);
  }
  pos_ = 0;
}

}  // namespace liesde
