#pragma once
// Small shared pieces: fixed-capacity points/boxes, deterministic summation,
// and a chunked parallel reduce whose result is bit-identical for any thread
// count or chunk size (fixed-shape pairwise tree over fixed-size leaf blocks).

#include <algorithm>
#include <array>
#include <atomic>
#include <cmath>
#include <cstdint>
#include <cstdlib>
#include <functional>
#include <limits>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

namespace fracstrip {

inline constexpr int kMaxDim = 3;

// Point in up to kMaxDim coordinates; dim tracked by the owner.
using Vec = std::array<double, kMaxDim>;

inline Vec vec1(double x) { return {x, 0.0, 0.0}; }
inline Vec vec2(double x, double y) { return {x, y, 0.0}; }

inline double dist(const Vec& a, const Vec& b, int dim) {
  double s = 0.0;
  for (int i = 0; i < dim; ++i) {
    const double d = a[i] - b[i];
    s += d * d;
  }
  return std::sqrt(s);
}

// Axis-aligned box in `dim` coordinates.
struct Box {
  int dim = 1;
  Vec lo{0.0, 0.0, 0.0};
  Vec hi{1.0, 1.0, 1.0};

  double extent(int axis) const { return hi[axis] - lo[axis]; }
  double volume() const {
    double v = 1.0;
    for (int i = 0; i < dim; ++i) v *= extent(i);
    return v;
  }
};

inline Box interval(double a, double b) { return Box{1, {a, 0, 0}, {b, 0, 0}}; }

// ---------------------------------------------------------------------------
// Deterministic summation.
//
// Floating-point addition is not associative, so a reproducible total needs a
// summation tree whose shape depends only on the number of terms. We use
// fixed leaf blocks of kLeafBlock terms (summed left-to-right) combined by a
// bottom-up pairwise tree. Parallel callers may compute disjoint leaf blocks
// in any order/thread count; the combination step is serial and fixed.
// ---------------------------------------------------------------------------

inline constexpr std::size_t kLeafBlock = 1024;

inline double pairwise_combine(std::vector<double>& partials) {
  std::size_t n = partials.size();
  if (n == 0) return 0.0;
  while (n > 1) {
    const std::size_t half = n / 2;
    for (std::size_t i = 0; i < half; ++i)
      partials[i] = partials[2 * i] + partials[2 * i + 1];
    if (n % 2 == 1) {
      partials[half] = partials[n - 1];
      n = half + 1;
    } else {
      n = half;
    }
  }
  return partials[0];
}

// Sum of term(i) for i in [0, count). The leaf/tree shape depends only on
// count, so the result is bit-identical for any thread count or chunk size;
// chunk_terms only sets how many terms a thread claims per steal.
inline double deterministic_sum(std::size_t count,
                                const std::function<double(std::size_t)>& term,
                                int threads, std::size_t chunk_terms = 0) {
  if (count == 0) return 0.0;
  const std::size_t blocks = (count + kLeafBlock - 1) / kLeafBlock;
  std::vector<double> partials(blocks, 0.0);

  auto run_block = [&](std::size_t b) {
    const std::size_t begin = b * kLeafBlock;
    const std::size_t end = std::min(begin + kLeafBlock, count);
    double s = 0.0;
    for (std::size_t i = begin; i < end; ++i) s += term(i);
    partials[b] = s;
  };

  if (threads <= 1 || blocks == 1) {
    for (std::size_t b = 0; b < blocks; ++b) run_block(b);
  } else {
    const std::size_t chunk_blocks =
        std::max<std::size_t>(1, (chunk_terms + kLeafBlock - 1) / kLeafBlock);
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
      for (;;) {
        const std::size_t b0 = next.fetch_add(chunk_blocks);
        if (b0 >= blocks) return;
        const std::size_t b1 = std::min(b0 + chunk_blocks, blocks);
        for (std::size_t b = b0; b < b1; ++b) run_block(b);
      }
    };
    const int nthreads = static_cast<int>(
        std::min<std::size_t>(static_cast<std::size_t>(threads), blocks));
    std::vector<std::thread> pool;
    pool.reserve(static_cast<std::size_t>(nthreads));
    for (int t = 0; t < nthreads; ++t) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
  }
  return pairwise_combine(partials);
}

// Thread cap: FRACSTRIP_THREADS wins, else hardware concurrency.
inline int resolve_threads(int requested = 0) {
  if (requested > 0) return requested;
  if (const char* env = std::getenv("FRACSTRIP_THREADS")) {
    const long v = std::strtol(env, nullptr, 10);
    if (v >= 1) return static_cast<int>(v);
  }
  const unsigned hc = std::thread::hardware_concurrency();
  return hc ? static_cast<int>(hc) : 1;
}

// ---------------------------------------------------------------------------
// Deterministic uniform variates. std::uniform_real_distribution is
// implementation-defined, so random test points use the raw engine bits.
// ---------------------------------------------------------------------------
class DetRng {
 public:
  explicit DetRng(std::uint64_t seed) : state_(seed ? seed : 0x9e3779b97f4a7c15ULL) {}

  // splitmix64 step; uniform in [0,1).
  double uniform() {
    state_ += 0x9e3779b97f4a7c15ULL;
    std::uint64_t z = state_;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    z = z ^ (z >> 31);
    return static_cast<double>(z >> 11) * 0x1.0p-53;
  }
  double uniform(double a, double b) { return a + (b - a) * uniform(); }

 private:
  std::uint64_t state_;
};

// Least-squares fit of y = slope*x + intercept; returns {slope, intercept, rms residual}.
struct LineFit {
  double slope = 0.0;
  double intercept = 0.0;
  double residual = 0.0;
};

inline LineFit fit_line(const std::vector<double>& x, const std::vector<double>& y) {
  if (x.size() != y.size() || x.size() < 2)
    throw std::invalid_argument("fit_line: need >= 2 matched points");
  const double n = static_cast<double>(x.size());
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sx += x[i];
    sy += y[i];
    sxx += x[i] * x[i];
    sxy += x[i] * y[i];
  }
  const double denom = n * sxx - sx * sx;
  if (denom == 0.0) throw std::invalid_argument("fit_line: degenerate abscissae");
  LineFit out;
  out.slope = (n * sxy - sx * sy) / denom;
  out.intercept = (sy - out.slope * sx) / n;
  double ss = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double r = y[i] - (out.slope * x[i] + out.intercept);
    ss += r * r;
  }
  out.residual = std::sqrt(ss / n);
  return out;
}

}  // namespace fracstrip
