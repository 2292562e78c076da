#pragma once

#include "pmcone/oracle.hpp"

#include <cstdint>
#include <random>
#include <string>
#include <vector>

namespace pmcone {

/// splitmix64 step; also used to derive independent per-trial seeds.
std::uint64_t splitmix64(std::uint64_t x);
inline std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t index) {
  return splitmix64(seed ^ splitmix64(index + 0x632be59bd9b4e019ULL));
}

/// Deterministic generator. Only the raw mt19937_64 stream is used (its output
/// is fixed by the standard), so runs reproduce across standard libraries.
class Rng {
public:
  explicit Rng(std::uint64_t seed) : engine_(splitmix64(seed)) {}

  std::uint64_t next() { return engine_(); }
  /// Uniform in [0, n), n > 0.
  std::uint64_t below(std::uint64_t n);
  /// Uniform in [lo, hi].
  std::int64_t between(std::int64_t lo, std::int64_t hi);
  bool chance(std::uint64_t num, std::uint64_t den) { return below(den) < num; }

  template <class T> void shuffle(std::vector<T> &v) {
    for (std::size_t i = v.size(); i > 1; --i) std::swap(v[i - 1], v[below(i)]);
  }

private:
  std::mt19937_64 engine_;
};

/// Random admissible space on n points labelled prefix0, prefix1, ...: the
/// shortest-path closure of random edge weights p/q with q <= max_den.
SpacePtr random_space(Rng &rng, std::size_t n, std::int64_t max_den = 16,
                      const std::string &prefix = "z");

/// Random pseudometric on `space`: zero, a scaled base metric, d(F) of a
/// random family, or the shortest-path closure of random nonnegative weights
/// (zeros allowed). Denominators stay <= max_den times those of the space.
Pseudometric random_pseudometric(Rng &rng, const SpacePtr &space, std::int64_t max_den = 16);

/// A random pseudometric rescaled so that lip < k.
Pseudometric random_lpmk_member(Rng &rng, const SpacePtr &space, const Rational &k);

Bijection random_bijection(Rng &rng, std::size_t n);
/// Nonempty subset of {0..n-1} in increasing order.
std::vector<PointId> random_subset(Rng &rng, std::size_t n);

/// Space on new labels whose metric makes phi an isometry onto `codomain`:
/// d_X(phi(y), phi(z)) = d_Y(y, z).
SpacePtr transport_space(const Space &codomain, const Bijection &phi, const std::string &prefix);

/// Every permutation of {0..n-1} in lexicographic order.
std::vector<Bijection> all_bijections(std::size_t n);

} // namespace pmcone
