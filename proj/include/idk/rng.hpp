#pragma once

// Portable random source.
//
// The engine is std::mt19937_64, whose output sequence is fixed by the C++
// standard. Standard distributions are implementation-defined, so draws are
// mapped by hand:
//
//   uniform01()      = (next() >> 11) * 2^-53
//   index(n)         = floor(uniform01() * n)
//   derived(s, c)    = mt19937_64 seeded by std::seed_seq{lo(s), hi(s), lo(c), hi(c)}
//
// Any other implementation of those three lines reproduces the same draws.

#include <cstdint>
#include <random>
#include <stdexcept>
#include <utility>
#include <vector>

namespace idk {

class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  // Stream for one unit of work, e.g. one service request or one corpus record.
  static Rng derived(std::uint64_t seed, std::uint64_t counter) {
    std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                      static_cast<std::uint32_t>(counter), static_cast<std::uint32_t>(counter >> 32)};
    return Rng(std::mt19937_64(seq));
  }

  std::uint64_t next() { return engine_(); }

  double uniform01() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

  std::size_t index(std::size_t n) {
    if (n == 0) throw std::invalid_argument("Rng::index on empty range");
    const auto i = static_cast<std::size_t>(uniform01() * static_cast<double>(n));
    return i < n ? i : n - 1;
  }

  bool bernoulli(double p) { return uniform01() < p; }

  template <typename T>
  const T& pick(const std::vector<T>& pool) {
    return pool[index(pool.size())];
  }

  // Fisher-Yates, walking from the back.
  template <typename T>
  void shuffle(std::vector<T>& items) {
    for (std::size_t i = items.size(); i > 1; --i) {
      std::swap(items[i - 1], items[index(i)]);
    }
  }

 private:
  explicit Rng(std::mt19937_64 engine) : engine_(std::move(engine)) {}

  std::mt19937_64 engine_;
};

}  // namespace idk
