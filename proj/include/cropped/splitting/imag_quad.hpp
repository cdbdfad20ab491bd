#pragma once

#include <complex>
#include <cstdint>
#include <optional>
#include <ostream>
#include <vector>

#include "cropped/arith/root_of_unity.hpp"

namespace cropped {

class ImagQuadField;

// Element a + b*omega of the maximal order of an imaginary quadratic
// field, where omega^2 = trace*omega - norm.
struct QuadInt {
  std::int64_t a = 0;
  std::int64_t b = 0;

  friend bool operator==(const QuadInt&, const QuadInt&) = default;
};

std::ostream& operator<<(std::ostream& os, const QuadInt& z);

enum class SplitType { split, inert, ramified };

const char* to_string(SplitType t);

// Imaginary quadratic field Q(sqrt(D)) for a fundamental discriminant D < 0.
// Native arithmetic (generators of prime ideals, ray class data) is limited
// to the nine class-number-one fields; other discriminants are accepted for
// bookkeeping only.
class ImagQuadField {
 public:
  explicit ImagQuadField(std::int64_t discriminant);

  std::int64_t discriminant() const { return disc_; }
  bool native() const { return native_; }
  // Class number when native (1); 0 when unknown.
  int class_number() const { return native_ ? 1 : 0; }

  // Trace and norm of omega.
  std::int64_t omega_trace() const { return t_; }
  std::int64_t omega_norm() const { return n_; }

  QuadInt mul(const QuadInt& x, const QuadInt& y) const;
  QuadInt add(const QuadInt& x, const QuadInt& y) const { return {x.a + y.a, x.b + y.b}; }
  QuadInt conj(const QuadInt& x) const { return {x.a + t_ * x.b, -x.b}; }
  QuadInt pow(QuadInt x, std::uint64_t e) const;
  std::int64_t norm(const QuadInt& x) const;
  std::complex<double> to_complex(const QuadInt& x) const;

  // Roots of unity of K as elements, with unit_from_root inverse.
  std::vector<QuadInt> units() const;
  int unit_count() const { return w_; }
  // Element for a root of unity whose order divides the number of units.
  QuadInt unit_from_root(const RootOfUnity& z) const;

  SplitType split_type(std::uint64_t p) const;

  // alpha with Norm(alpha) = p (any associate). Throws ValidationError for
  // inert or ramified p and IngestionOnlyError for non-native fields.
  QuadInt norm_generator(std::uint64_t p) const;

  // Exact quotient x / y when y divides x in O; empty otherwise.
  std::optional<QuadInt> divide(const QuadInt& x, const QuadInt& y) const;

 private:
  std::int64_t disc_;
  std::int64_t t_;
  std::int64_t n_;
  int w_;
  bool native_;
};

inline SplitType split_type(const ImagQuadField& K, std::uint64_t p) {
  return K.split_type(p);
}
inline QuadInt norm_generator(const ImagQuadField& K, std::uint64_t p) {
  return K.norm_generator(p);
}

}  // namespace cropped
