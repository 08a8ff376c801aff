#pragma once

// Thread-count plumbing for the OpenMP kernels and the counter-based random
// streams that make their results independent of scheduling.

#include <cstdint>

namespace kneserlab {

/// 0 means "OpenMP default".
struct Threads {
  int count = 0;
};

/// Number of threads a kernel launched with `t` will use.
int resolve_threads(Threads t) noexcept;

/// KNESER_LAB_THREADS if set and positive, else 0.
int threads_from_env() noexcept;

namespace rng {

constexpr std::uint64_t splitmix64(std::uint64_t x) noexcept {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

/// Stream tags keep independent uses of one seed apart.
enum class Stream : std::uint64_t {
  kEdge = 0x45444745,
  kTrial = 0x545249414c,
  kOrdering = 0x4f52444552,
  kFamily = 0x46414d,
  kGraph = 0x475241,
};

/// Pure function of (seed, stream, index): the draw for work item `index`.
constexpr std::uint64_t counter_hash(std::uint64_t seed, Stream stream, std::uint64_t index) noexcept {
  return splitmix64(splitmix64(splitmix64(seed) ^ static_cast<std::uint64_t>(stream)) ^ index);
}

/// Uniform double in [0, 1) with 53 random bits.
constexpr double to_unit(std::uint64_t bits) noexcept {
  return static_cast<double>(bits >> 11) * 0x1.0p-53;
}

/// Sequential generator for test fixtures and CLI-side sampling; satisfies
/// UniformRandomBitGenerator so <random> distributions accept it.
class CounterEngine {
 public:
  using result_type = std::uint64_t;

  constexpr CounterEngine(std::uint64_t seed, Stream stream) noexcept : seed_(seed), stream_(stream) {}

  static constexpr result_type min() noexcept { return 0; }
  static constexpr result_type max() noexcept { return ~result_type{0}; }
  constexpr result_type operator()() noexcept { return counter_hash(seed_, stream_, counter_++); }

  /// Uniform integer in [0, bound) (bound > 0) by rejection.
  std::uint64_t below(std::uint64_t bound) noexcept {
    const std::uint64_t limit = max() - max() % bound;
    std::uint64_t x;
    do {
      x = (*this)();
    } while (x >= limit);
    return x % bound;
  }
  double unit() noexcept { return to_unit((*this)()); }

 private:
  std::uint64_t seed_;
  Stream stream_;
  std::uint64_t counter_ = 0;
};

}  // namespace rng

}  // namespace kneserlab
