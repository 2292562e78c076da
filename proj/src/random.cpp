#include "pmcone/random.hpp"

#include <algorithm>
#include <numeric>

namespace pmcone {

namespace {

std::vector<std::string> make_labels(std::size_t n, const std::string &prefix) {
  std::vector<std::string> labels;
  for (std::size_t i = 0; i < n; ++i) labels.push_back(prefix + std::to_string(i));
  return labels;
}

void close_shortest_paths(Matrix &w) {
  const std::size_t n = w.size();
  for (std::size_t k = 0; k < n; ++k)
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j)
        if (w(i, k) + w(k, j) < w(i, j)) w(i, j) = w(i, k) + w(k, j);
}

Rational random_fraction(Rng &rng, std::int64_t lo, std::int64_t hi, std::int64_t den) {
  return Rational(rng.between(lo, hi), den);
}

} // namespace

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

std::uint64_t Rng::below(std::uint64_t n) {
  const std::uint64_t limit = UINT64_MAX - UINT64_MAX % n;
  std::uint64_t v;
  do v = engine_();
  while (v >= limit);
  return v % n;
}

std::int64_t Rng::between(std::int64_t lo, std::int64_t hi) {
  return lo + static_cast<std::int64_t>(below(static_cast<std::uint64_t>(hi - lo) + 1));
}

SpacePtr random_space(Rng &rng, std::size_t n, std::int64_t max_den, const std::string &prefix) {
  const std::int64_t q = rng.between(1, max_den);
  Matrix w(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) w.set_symmetric(i, j, random_fraction(rng, 1, 4 * q, q));
  close_shortest_paths(w);
  return Space::create(make_labels(n, prefix), std::move(w));
}

Pseudometric random_pseudometric(Rng &rng, const SpacePtr &space, std::int64_t max_den) {
  const std::size_t n = space->size();
  const std::int64_t q = rng.between(1, max_den);
  switch (rng.below(10)) {
  case 0:
    return Pseudometric::zero(space);
  case 1:
  case 2:
    return Pseudometric::base(space).scaled(random_fraction(rng, 1, 4 * q, q));
  case 3:
  case 4:
  case 5: {
    std::vector<std::vector<Rational>> family(rng.between(1, 3));
    for (auto &f : family)
      for (std::size_t p = 0; p < n; ++p) f.push_back(random_fraction(rng, -4 * q, 4 * q, q));
    return d_of_F(space, family);
  }
  default: {
    Matrix w(n);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i + 1; j < n; ++j)
        w.set_symmetric(i, j, rng.chance(1, 5) ? Rational(0) : random_fraction(rng, 1, 4 * q, q));
    close_shortest_paths(w);
    return validate_pseudometric(space, std::move(w));
  }
  }
}

Pseudometric random_lpmk_member(Rng &rng, const SpacePtr &space, const Rational &k) {
  const Pseudometric d = random_pseudometric(rng, space);
  const Rational lip = lip_constant(d);
  if (lip < k) return d;
  // lip(d / t) = lip / t < k for t = 2·lip / k
  return d.divided(Rational(2) * lip / k);
}

Bijection random_bijection(Rng &rng, std::size_t n) {
  std::vector<PointId> images(n);
  std::iota(images.begin(), images.end(), PointId{0});
  rng.shuffle(images);
  return Bijection::create(std::move(images));
}

std::vector<PointId> random_subset(Rng &rng, std::size_t n) {
  std::vector<PointId> out;
  while (out.empty())
    for (PointId p = 0; p < n; ++p)
      if (rng.chance(1, 2)) out.push_back(p);
  return out;
}

SpacePtr transport_space(const Space &codomain, const Bijection &phi, const std::string &prefix) {
  const std::size_t n = codomain.size();
  Matrix m(n);
  for (PointId y = 0; y < n; ++y)
    for (PointId z = 0; z < n; ++z) m(phi(y), phi(z)) = codomain.distance(y, z);
  return Space::create(make_labels(n, prefix), std::move(m));
}

std::vector<Bijection> all_bijections(std::size_t n) {
  std::vector<PointId> images(n);
  std::iota(images.begin(), images.end(), PointId{0});
  std::vector<Bijection> out;
  do out.push_back(Bijection::create(images));
  while (std::next_permutation(images.begin(), images.end()));
  return out;
}

} // namespace pmcone
