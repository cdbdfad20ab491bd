#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <ostream>

namespace cropped {

// x + y sqrt(p) in Q(sqrt p), p prime. Lets p^{-s} stay exact at
// half-integral s.
class QSqrt {
 public:
  QSqrt(std::uint64_t p, mpq_class x = 0, mpq_class y = 0);

  std::uint64_t prime() const { return p_; }
  const mpq_class& rational_part() const { return x_; }
  const mpq_class& sqrt_part() const { return y_; }
  bool is_rational() const { return y_ == 0; }
  bool is_zero() const { return x_ == 0 && y_ == 0; }
  double to_double() const;

  QSqrt operator+(const QSqrt& o) const;
  QSqrt operator-(const QSqrt& o) const;
  QSqrt operator*(const QSqrt& o) const;
  QSqrt operator/(const QSqrt& o) const;
  QSqrt inverse() const;
  friend bool operator==(const QSqrt& a, const QSqrt& b) {
    return a.p_ == b.p_ && a.x_ == b.x_ && a.y_ == b.y_;
  }

  // p^e for e in (1/2)Z; ValidationError otherwise.
  static QSqrt prime_power(std::uint64_t p, const mpq_class& e);

 private:
  void same_field(const QSqrt& o) const;
  std::uint64_t p_;
  mpq_class x_, y_;
};

std::ostream& operator<<(std::ostream& os, const QSqrt& v);

}  // namespace cropped
