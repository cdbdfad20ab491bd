#include "cropped/euler/qsqrt.hpp"

#include <cmath>
#include <stdexcept>

#include "cropped/error.hpp"

namespace cropped {

QSqrt::QSqrt(std::uint64_t p, mpq_class x, mpq_class y) : p_(p), x_(std::move(x)), y_(std::move(y)) {
  x_.canonicalize();
  y_.canonicalize();
}

void QSqrt::same_field(const QSqrt& o) const {
  if (p_ != o.p_) throw std::logic_error("mixing Q(sqrt p) for different p");
}

double QSqrt::to_double() const {
  return x_.get_d() + y_.get_d() * std::sqrt(static_cast<double>(p_));
}

QSqrt QSqrt::operator+(const QSqrt& o) const {
  same_field(o);
  return {p_, x_ + o.x_, y_ + o.y_};
}

QSqrt QSqrt::operator-(const QSqrt& o) const {
  same_field(o);
  return {p_, x_ - o.x_, y_ - o.y_};
}

QSqrt QSqrt::operator*(const QSqrt& o) const {
  same_field(o);
  const mpq_class pp(static_cast<unsigned long>(p_));
  return {p_, x_ * o.x_ + pp * y_ * o.y_, x_ * o.y_ + y_ * o.x_};
}

QSqrt QSqrt::inverse() const {
  const mpq_class pp(static_cast<unsigned long>(p_));
  const mpq_class n = x_ * x_ - pp * y_ * y_;
  if (n == 0) throw std::domain_error("division by zero in Q(sqrt p)");
  return {p_, x_ / n, -y_ / n};
}

QSqrt QSqrt::operator/(const QSqrt& o) const { return *this * o.inverse(); }

QSqrt QSqrt::prime_power(std::uint64_t p, const mpq_class& e) {
  mpq_class twice = 2 * e;
  twice.canonicalize();
  if (twice.get_den() != 1) throw ValidationError("exact backend needs s in (1/2)Z");
  const long k = twice.get_num().get_si();  // p^e = sqrt(p)^k
  mpz_class base = static_cast<unsigned long>(p);
  const long half = k >= 0 ? k / 2 : -((-k + 1) / 2);  // floor(k/2)
  mpz_class mag;
  mpz_pow_ui(mag.get_mpz_t(), base.get_mpz_t(), static_cast<unsigned long>(half >= 0 ? half : -half));
  const mpq_class r = half >= 0 ? mpq_class(mag) : mpq_class(1, 1) / mpq_class(mag);
  if (k % 2 == 0) return {p, r, 0};
  return {p, 0, r};  // sqrt(p)^(2h+1) = p^h sqrt(p)
}

std::ostream& operator<<(std::ostream& os, const QSqrt& v) {
  os << v.rational_part();
  if (!v.is_rational()) os << " + " << v.sqrt_part() << "*sqrt(" << v.prime() << ")";
  return os;
}

}  // namespace cropped
