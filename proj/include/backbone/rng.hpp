#pragma once

#include <cstdint>
#include <string_view>
#include <vector>

namespace backbone {

// Deterministic splitmix64 generator with named sub-streams.
//
// Every randomized stage derives its own stream from the run seed plus a
// stage name, so adding draws to one stage never perturbs another and the
// whole pipeline is reproducible from a single seed.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : base_(seed), state_(seed + kGamma) {}

  std::uint64_t next() {
    state_ += kGamma;
    std::uint64_t z = state_;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
  }

  // Unbiased value in [0, bound) via rejection; bound must be positive.
  std::uint64_t below(std::uint64_t bound) {
    std::uint64_t limit = ~0ull - ~0ull % bound;
    std::uint64_t v = next();
    while (v >= limit) v = next();
    return v % bound;
  }

  int uniform_int(int lo, int hi) {  // inclusive range
    return lo + static_cast<int>(below(static_cast<std::uint64_t>(hi - lo + 1)));
  }

  bool coin() { return (next() & 1) != 0; }

  // Derived stream; keyed off the construction seed, not the current state.
  Rng stream(std::string_view name) const {
    std::uint64_t h = 0xcbf29ce484222325ull;  // FNV-1a
    for (char c : name) {
      h ^= static_cast<unsigned char>(c);
      h *= 0x100000001b3ull;
    }
    return Rng(base_ ^ (h * 0x9e3779b97f4a7c15ull));
  }

  template <typename T>
  void shuffle(std::vector<T>& v) {
    for (std::size_t i = v.size(); i > 1; --i) {
      std::size_t j = below(i);
      std::swap(v[i - 1], v[j]);
    }
  }

  std::uint64_t base_seed() const { return base_; }

 private:
  static constexpr std::uint64_t kGamma = 0x9e3779b97f4a7c15ull;
  std::uint64_t base_;
  std::uint64_t state_;
};

// Smallest c with 2^c >= n (n >= 1). ceil_log2(1) == 0.
int ceil_log2(std::int64_t n);

}  // namespace backbone
