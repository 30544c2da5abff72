#pragma once

/// Certificate and trace records shared by the witness engine, the verifier
/// and the serializers.

#include "plturb/interval.hpp"
#include "plturb/rational.hpp"

#include <optional>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

namespace plturb {

/// Orientation of the hypothesis chain: `up` is f^n(c) <= c < f(c),
/// `down` is f(c) < c <= f^n(c).
enum class Side { up, down };

inline const char* to_string(Side s) { return s == Side::up ? "up" : "down"; }

struct HypothesisA {
  Rational c;
  std::size_t n = 2;
  Side side = Side::up;
};

/// Fixed point z and interval K with c in K, f^2(K) strictly inside K, no
/// fixed point of f in K, and K, f(K) on opposite sides of z.
struct TrapCertificate {
  Rational z;
  RatInterval K;
  Rational c;
};

/// J0, J1 inside J with g(J0) and g(J1) both covering J0 and J1, where
/// g = f^map_power.
struct TurbulencePair {
  int map_power = 1;
  RatInterval J;
  RatInterval J0;
  RatInterval J1;
};

struct DoubleTurbulenceCertificate {
  TurbulencePair left;
  TurbulencePair right;
};

/// Proper interval J with c in J, f(J) strictly inside J and z outside J.
struct TrapInterval {
  RatInterval J;
  Rational z;
  Rational c;
};

struct TowerEntry {
  std::size_t n = 0;
  Rational u;
  Rational p;
  std::size_t period = 0;
};

/// Every intermediate point of the construction, in the orientation named by
/// `side` (down-side traces hold reflected-back coordinates).
struct WitnessTrace {
  Side side = Side::up;
  std::vector<Rational> X;
  Rational a, b, z, v, z0;
  int case_id = 0;
  std::optional<Rational> d, s, t, t_tilde, u1, e, u, w, r;
  std::vector<TowerEntry> tower;
};

using Certificate = std::variant<TrapCertificate, DoubleTurbulenceCertificate, TurbulencePair, TrapInterval>;

inline const char* kind_tag(const Certificate& c) {
  switch (c.index()) {
    case 0: return "trap";
    case 1: return "double_turbulence";
    case 2: return "turbulence_pair";
    default: return "trap_interval";
  }
}

/// A proof step found no admissible point. Existence is guaranteed by the
/// mathematics, so this always signals a defect; the partial trace is kept.
class ConstructionFailure : public std::runtime_error {
 public:
  ConstructionFailure(const std::string& what, WitnessTrace trace)
      : std::runtime_error(what), trace_(std::move(trace)) {}
  const WitnessTrace& trace() const { return trace_; }

 private:
  WitnessTrace trace_;
};

}  // namespace plturb
