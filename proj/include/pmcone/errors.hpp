#pragma once

#include "pmcone/types.hpp"

#include <array>
#include <optional>
#include <stdexcept>
#include <string>

namespace pmcone {

/// Root of every error the library raises.
class Error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

enum class AxiomKind { Dimension, Asymmetry, Negative, NonzeroDiagonal, Triangle, NotSeparating };

const char *to_string(AxiomKind kind);

/// A matrix failed the metric or pseudometric axioms. For Triangle the
/// witness is (x, y, z) with d(x, z) > d(x, y) + d(y, z); for the pairwise
/// kinds only the first two entries are meaningful.
class AxiomViolation : public Error {
public:
  AxiomViolation(AxiomKind kind, std::array<PointId, 3> witness, const std::string &detail);

  AxiomKind kind() const { return kind_; }
  const std::array<PointId, 3> &witness() const { return witness_; }

private:
  AxiomKind kind_;
  std::array<PointId, 3> witness_;
};

class DegenerateSpace : public Error {
public:
  using Error::Error;
};

class ZeroPseudometric : public Error {
public:
  using Error::Error;
};

class EmptyFamily : public Error {
public:
  using Error::Error;
};

class NotInLPMk : public Error {
public:
  using Error::Error;
};

class InClosure : public Error {
public:
  using Error::Error;
};

class DegeneratePair : public Error {
public:
  using Error::Error;
};

class SpaceMismatch : public Error {
public:
  using Error::Error;
};

/// An oracle input lies outside the declared cone.
class NotInCone : public Error {
public:
  using Error::Error;
};

/// An oracle image left the declared cone.
class FamilyMismatch : public Error {
public:
  using Error::Error;
};

/// An oracle returned a matrix that is not a pseudometric.
class OracleFault : public Error {
public:
  using Error::Error;
};

class BudgetExhausted : public Error {
public:
  using Error::Error;
};

class NotPpPreserving : public Error {
public:
  NotPpPreserving(Doubleton pair, std::size_t probe, const std::string &detail)
      : Error(detail), pair_(pair), probe_(probe) {}

  Doubleton pair() const { return pair_; }
  std::size_t probe() const { return probe_; }

private:
  Doubleton pair_;
  std::size_t probe_;
};

/// Two probes peaked at the same codomain doubleton were pulled back to
/// different maximizers (or two doubletons collided).
class Inconsistent : public Error {
public:
  Inconsistent(Doubleton pair, std::size_t probe_a, std::size_t probe_b, Doubleton image_a,
               Doubleton image_b, const std::string &detail)
      : Error(detail), pair_(pair), probe_a_(probe_a), probe_b_(probe_b), image_a_(image_a),
        image_b_(image_b) {}

  Doubleton pair() const { return pair_; }
  std::size_t probe_a() const { return probe_a_; }
  std::size_t probe_b() const { return probe_b_; }
  Doubleton image_a() const { return image_a_; }
  Doubleton image_b() const { return image_b_; }

private:
  Doubleton pair_;
  std::size_t probe_a_;
  std::size_t probe_b_;
  Doubleton image_a_;
  Doubleton image_b_;
};

class EmptyIntersection : public Error {
public:
  EmptyIntersection(PointId y, PointId z1, PointId z2, std::string certificate);

  PointId y() const { return y_; }
  PointId z1() const { return z1_; }
  PointId z2() const { return z2_; }
  /// Human-readable triangle-inequality contradiction.
  const std::string &certificate() const { return certificate_; }

private:
  PointId y_, z1_, z2_;
  std::string certificate_;
};

class NotSingleton : public Error {
public:
  NotSingleton(PointId y, const std::string &detail) : Error(detail), y_(y) {}
  PointId y() const { return y_; }

private:
  PointId y_;
};

} // namespace pmcone
