#include "cropped/arith/root_of_unity.hpp"

#include <numbers>
#include <numeric>
#include <stdexcept>

#include "cropped/arith/modular.hpp"

namespace cropped {

RootOfUnity::RootOfUnity(std::int64_t k, std::int64_t m) {
  if (m <= 0) throw std::invalid_argument("root of unity order must be positive");
  k = mod(k, m);
  const std::int64_t g = std::gcd(k, m);
  k_ = k / g;
  m_ = m / g;
  if (k_ == 0) m_ = 1;
}

RootOfUnity RootOfUnity::operator*(const RootOfUnity& o) const {
  const std::int64_t l = std::lcm(m_, o.m_);
  return {k_ * (l / m_) + o.k_ * (l / o.m_), l};
}

RootOfUnity RootOfUnity::pow(std::int64_t e) const {
  const auto k = static_cast<__int128>(k_) * mod(e, m_);
  return {static_cast<std::int64_t>(k % m_), m_};
}

std::optional<int> RootOfUnity::real_sign() const {
  if (m_ == 1) return 1;
  if (m_ == 2) return -1;
  return std::nullopt;
}

std::complex<double> RootOfUnity::to_complex() const {
  if (m_ == 1) return {1.0, 0.0};
  if (m_ == 2) return {-1.0, 0.0};
  if (m_ == 4) return k_ == 1 ? std::complex<double>{0.0, 1.0}
                              : std::complex<double>{0.0, -1.0};
  const double angle = 2.0 * std::numbers::pi * static_cast<double>(k_) /
                       static_cast<double>(m_);
  return std::polar(1.0, angle);
}

std::ostream& operator<<(std::ostream& os, const RootOfUnity& z) {
  return os << "e(" << z.numerator() << "/" << z.denominator() << ")";
}

}  // namespace cropped
