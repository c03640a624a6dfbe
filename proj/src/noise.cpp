#include "liesde/noise.hpp"

#include <bit>
#include <istream>
#include <ostream>
#include <string>

namespace liesde {

StepNoise StepNoise::zero(int d, double h) {
  StepNoise n;
  n.d = d;
  n.h = h;
  return n;
}

double StepNoise::J(int i, int j) const {
  if (i == 0 && j == 0) return 0.5 * h * h;
  if (j == 0) return I[static_cast<std::size_t>(i - 1)];
  if (i == 0) return h * dW[static_cast<std::size_t>(j - 1)] - I[static_cast<std::size_t>(j - 1)];
  const double wi = dW[static_cast<std::size_t>(i - 1)];
  const double wj = dW[static_cast<std::size_t>(j - 1)];
  if (i == j) return 0.5 * wi * wi;
  return 0.5 * (wi * wj + L(i, j));
}

double StepNoise::L(int i, int j) const {
  if (i == j) return 0.0;
  return (i == 1) ? L12 : -L12;
}

StepNoise chain(const StepNoise& a, const StepNoise& b) {
  if (a.d != b.d) throw std::invalid_argument("chain: channel-count mismatch");
  StepNoise out = StepNoise::zero(a.d, a.h + b.h);
  for (std::size_t i = 0; i < 2; ++i) {
    out.dW[i] = a.dW[i] + b.dW[i];
    out.I[i] = a.I[i] + b.I[i] + b.h * a.dW[i];
  }
  out.L12 = a.L12 + b.L12 + (a.dW[0] * b.dW[1] - a.dW[1] * b.dW[0]);
  return out;
}

std::vector<StepNoise> coarsen(const std::vector<StepNoise>& fine) {
  if (fine.size() % 2 != 0) throw std::invalid_argument("coarsen: odd number of steps");
  std::vector<StepNoise> coarse;
  coarse.reserve(fine.size() / 2);
  for (std::size_t k = 0; k < fine.size(); k += 2) coarse.push_back(chain(fine[k], fine[k + 1]));
  return coarse;
}

PathHierarchy build_hierarchy(std::uint64_t seed, std::uint32_t path, double T, int N, int levels,
                              int d) {
  if (N < 1) throw std::invalid_argument("hierarchy needs N >= 1");
  if (levels < 1) throw std::invalid_argument("hierarchy needs levels >= 1");
  if (!(T > 0.0)) throw std::invalid_argument("hierarchy needs T > 0");
  if (levels > 40 || (static_cast<std::int64_t>(N) << (levels - 1)) > kMaxFineSteps) {
    throw std::length_error("hierarchy too large: N * 2^(levels-1) exceeds the step limit");
  }
  PathHierarchy ph;
  ph.T = T;
  ph.N = N;
  ph.d = d;
  ph.seed = seed;
  ph.path = path;
  ph.levels.resize(static_cast<std::size_t>(levels));

  const std::size_t fine_steps = static_cast<std::size_t>(N) << (levels - 1);
  const double h = T / static_cast<double>(fine_steps);
  auto& fine = ph.levels.back();
  fine.reserve(fine_steps);
  for (std::size_t k = 0; k < fine_steps; ++k) {
    NormalStream normals(StreamId{seed, path, static_cast<std::uint32_t>(levels - 1),
                                  static_cast<std::uint32_t>(k)});
    fine.push_back(sample_step(normals, h, d));
  }
  for (int l = levels - 2; l >= 0; --l) {
    ph.levels[static_cast<std::size_t>(l)] = coarsen(ph.levels[static_cast<std::size_t>(l + 1)]);
  }
  return ph;
}

namespace {

constexpr char kMagic[8] = {'L', 'I', 'E', 'S', 'D', 'E', 'P', 'H'};

void put_u64(std::ostream& out, std::uint64_t v) {
  char bytes[8];
  for (int b = 0; b < 8; ++b) bytes[b] = static_cast<char>((v >> (8 * b)) & 0xFF);
  out.write(bytes, 8);
}

void put_f64(std::ostream& out, double x) { put_u64(out, std::bit_cast<std::uint64_t>(x)); }

std::uint64_t get_u64(std::istream& in) {
  unsigned char bytes[8];
  if (!in.read(reinterpret_cast<char*>(bytes), 8)) {
    throw std::runtime_error("path hierarchy: unexpected end of input");
  }
  std::uint64_t v = 0;
  for (int b = 0; b < 8; ++b) v |= static_cast<std::uint64_t>(bytes[b]) << (8 * b);
  return v;
}

double get_f64(std::istream& in) { return std::bit_cast<double>(get_u64(in)); }

}  // namespace

void write_hierarchy(std::ostream& out, const PathHierarchy& ph) {
  out.write(kMagic, 8);
  put_f64(out, ph.T);
  put_u64(out, static_cast<std::uint64_t>(ph.N));
  put_u64(out, static_cast<std::uint64_t>(ph.depth()));
  put_u64(out, static_cast<std::uint64_t>(ph.d));
  put_u64(out, ph.seed);
  put_u64(out, ph.path);
  for (const auto& level : ph.levels) {
    for (const auto& n : level) {
      for (double x : {n.h, n.dW[0], n.dW[1], n.L12, n.I[0], n.I[1]}) put_f64(out, x);
    }
  }
  if (!out) throw std::runtime_error("path hierarchy: write failed");
}

PathHierarchy read_hierarchy(std::istream& in) {
  char magic[8];
  if (!in.read(magic, 8) || std::string(magic, 8) != std::string(kMagic, 8)) {
    throw std::runtime_error("path hierarchy: bad magic");
  }
  PathHierarchy ph;
  ph.T = get_f64(in);
  ph.N = static_cast<int>(get_u64(in));
  const auto levels = get_u64(in);
  ph.d = static_cast<int>(get_u64(in));
  ph.seed = get_u64(in);
  ph.path = static_cast<std::uint32_t>(get_u64(in));
  if (ph.N < 1 || levels < 1 || levels > 40 || (ph.d != 1 && ph.d != 2) ||
      (static_cast<std::int64_t>(ph.N) << (levels - 1)) > kMaxFineSteps) {
    throw std::runtime_error("path hierarchy: invalid header");
  }
  ph.levels.resize(levels);
  for (std::size_t l = 0; l < levels; ++l) {
    const std::size_t steps = static_cast<std::size_t>(ph.N) << l;
    auto& level = ph.levels[l];
    level.resize(steps);
    for (auto& n : level) {
      n.d = ph.d;
      n.h = get_f64(in);
      n.dW[0] = get_f64(in);
      n.dW[1] = get_f64(in);
      n.L12 = get_f64(in);
      n.I[0] = get_f64(in);
      n.I[1] = get_f64(in);
    }
  }
  return ph;
}

}  // namespace liesde
