#pragma once

#include <complex>
#include <cstdint>
#include <optional>
#include <ostream>

namespace cropped {

// Exact root of unity e^{2*pi*i*k/m}, stored as a reduced fraction k/m with
// 0 <= k < m.
class RootOfUnity {
 public:
  constexpr RootOfUnity() = default;
  RootOfUnity(std::int64_t k, std::int64_t m);

  static RootOfUnity one() { return {}; }
  static RootOfUnity minus_one() { return {1, 2}; }

  std::int64_t numerator() const { return k_; }
  std::int64_t denominator() const { return m_; }

  // Multiplicative order; equals the reduced denominator.
  std::int64_t order() const { return m_; }
  bool is_one() const { return k_ == 0; }

  RootOfUnity operator*(const RootOfUnity& o) const;
  RootOfUnity& operator*=(const RootOfUnity& o) { return *this = *this * o; }
  RootOfUnity inverse() const { return {m_ - k_, m_}; }
  RootOfUnity conj() const { return inverse(); }
  RootOfUnity pow(std::int64_t e) const;

  // +1 / -1 when the value is real, otherwise empty.
  std::optional<int> real_sign() const;

  std::complex<double> to_complex() const;

  friend bool operator==(const RootOfUnity&, const RootOfUnity&) = default;
  friend auto operator<=>(const RootOfUnity&, const RootOfUnity&) = default;

 private:
  std::int64_t k_ = 0;
  std::int64_t m_ = 1;
};

std::ostream& operator<<(std::ostream& os, const RootOfUnity& z);

// Character values: a root of unity, or empty for arguments sharing a
// factor with the modulus.
using CharValue = std::optional<RootOfUnity>;

}  // namespace cropped
