#pragma once

#include <cstdint>
#include <random>

namespace zonal {

inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ull;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
  return x ^ (x >> 31);
}

// Derives an independent stream seed from (base, stream). Used to give every
// trial / training run / RRT leg its own reproducible generator.
inline std::uint64_t derive_seed(std::uint64_t base, std::uint64_t stream) {
  return splitmix64(splitmix64(base) ^ splitmix64(stream + 0x632be59bd9b4e019ull));
}

// Seeded generator with arithmetic-only sampling helpers. std:: distributions
// are implementation-defined, so byte-identical reproducibility requires
// doing the mapping from raw engine output ourselves.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : eng_(seed) {}

  std::uint64_t next_u64() { return eng_(); }

  // [0, 1)
  double unit() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

  double uniform(double lo, double hi) { return lo + (hi - lo) * unit(); }

  // [0, n), n > 0
  int uniform_int(int n) {
    return static_cast<int>(
        (static_cast<unsigned __int128>(next_u64()) * static_cast<std::uint64_t>(n)) >> 64);
  }

  // Seed for a child generator, advancing this stream once.
  std::uint64_t fork() { return splitmix64(next_u64()); }

 private:
  std::mt19937_64 eng_;
};

}  // namespace zonal
