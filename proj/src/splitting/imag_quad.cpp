#include "cropped/splitting/imag_quad.hpp"

#include <algorithm>
#include <array>
#include <cmath>

#include "cropped/arith/modular.hpp"
#include "cropped/error.hpp"

namespace cropped {
namespace {

constexpr std::array<std::int64_t, 9> kClassNumberOne = {-3, -4, -7, -8, -11,
                                                         -19, -43, -67, -163};

bool is_fundamental(std::int64_t d) {
  if (d >= 0) return false;
  const std::int64_t m = mod(d, 4);
  auto squarefree = [](std::int64_t n) {
    n = n < 0 ? -n : n;
    for (std::int64_t q = 2; q * q <= n; ++q)
      if (n % (q * q) == 0) return false;
    return true;
  };
  if (m == 1) return squarefree(d);
  if (m == 0) {
    const std::int64_t e = d / 4;
    const std::int64_t r = mod(e, 4);
    return (r == 2 || r == 3) && squarefree(e);
  }
  return false;
}

}  // namespace

std::ostream& operator<<(std::ostream& os, const QuadInt& z) {
  return os << "(" << z.a << (z.b < 0 ? " - " : " + ") << (z.b < 0 ? -z.b : z.b) << "w)";
}

const char* to_string(SplitType t) {
  switch (t) {
    case SplitType::split: return "split";
    case SplitType::inert: return "inert";
    case SplitType::ramified: return "ramified";
  }
  return "?";
}

ImagQuadField::ImagQuadField(std::int64_t discriminant) : disc_(discriminant) {
  if (!is_fundamental(discriminant)) {
    throw ValidationError("not a negative fundamental discriminant: " +
                          std::to_string(discriminant));
  }
  if (mod(disc_, 4) == 0) {
    t_ = 0;
    n_ = -disc_ / 4;
  } else {
    t_ = 1;
    n_ = (1 - disc_) / 4;
  }
  w_ = disc_ == -4 ? 4 : disc_ == -3 ? 6 : 2;
  native_ = std::find(kClassNumberOne.begin(), kClassNumberOne.end(), disc_) !=
            kClassNumberOne.end();
}

QuadInt ImagQuadField::mul(const QuadInt& x, const QuadInt& y) const {
  return {x.a * y.a - n_ * x.b * y.b, x.a * y.b + x.b * y.a + t_ * x.b * y.b};
}

QuadInt ImagQuadField::pow(QuadInt x, std::uint64_t e) const {
  QuadInt r{1, 0};
  while (e > 0) {
    if (e & 1) r = mul(r, x);
    x = mul(x, x);
    e >>= 1;
  }
  return r;
}

std::int64_t ImagQuadField::norm(const QuadInt& x) const {
  return x.a * x.a + t_ * x.a * x.b + n_ * x.b * x.b;
}

std::complex<double> ImagQuadField::to_complex(const QuadInt& x) const {
  const double im = std::sqrt(static_cast<double>(-disc_)) / 2.0;
  const double re = static_cast<double>(t_) / 2.0;
  return {static_cast<double>(x.a) + re * static_cast<double>(x.b),
          im * static_cast<double>(x.b)};
}

std::vector<QuadInt> ImagQuadField::units() const {
  std::vector<QuadInt> out;
  const QuadInt gen = w_ == 4 ? QuadInt{0, 1} : w_ == 6 ? QuadInt{0, 1} : QuadInt{-1, 0};
  QuadInt u{1, 0};
  for (int k = 0; k < w_; ++k) {
    out.push_back(u);
    u = mul(u, gen);
  }
  return out;
}

QuadInt ImagQuadField::unit_from_root(const RootOfUnity& z) const {
  if (w_ % z.order() != 0) {
    throw ValidationError("root of unity does not lie in K");
  }
  // units()[k] corresponds to e(k / w): omega = i for D=-4 and
  // omega = e^{i pi/3} for D=-3.
  return units()[static_cast<std::size_t>(z.numerator() * (w_ / z.order()))];
}

SplitType ImagQuadField::split_type(std::uint64_t p) const {
  const int k = kronecker(disc_, static_cast<std::int64_t>(p));
  return k == 1 ? SplitType::split : k == -1 ? SplitType::inert : SplitType::ramified;
}

QuadInt ImagQuadField::norm_generator(std::uint64_t p) const {
  if (!native_) {
    throw IngestionOnlyError("ingestion-only field: class number is not one for D=" +
                             std::to_string(disc_));
  }
  const auto st = split_type(p);
  if (st != SplitType::split) {
    throw ValidationError(std::string("prime is ") + to_string(st) + " in K (p=" +
                          std::to_string(p) + ")");
  }
  const auto ip = static_cast<std::int64_t>(p);
  const std::int64_t absd = -disc_;
  // Solve x^2 + |D| y^2 = 4p.
  std::int64_t x = -1, y = -1;
  if (p < 64) {
    for (std::int64_t yy = 1; absd * yy * yy <= 4 * ip && x < 0; ++yy) {
      const std::int64_t rest = 4 * ip - absd * yy * yy;
      const auto r = static_cast<std::int64_t>(isqrt(static_cast<u64>(rest)));
      if (r * r == rest) {
        x = r;
        y = yy;
      }
    }
  } else {
    // Cornacchia on (2p, x0) with x0^2 = D mod 4p.
    auto x0 = static_cast<std::int64_t>(
        sqrt_mod_prime(static_cast<u64>(mod(disc_, ip)), p));
    if (mod(x0, 2) != mod(disc_, 2)) x0 = ip - x0;
    std::int64_t a = 2 * ip, b = x0;
    const auto limit = static_cast<std::int64_t>(isqrt(static_cast<u64>(4 * ip)));
    while (b > limit) {
      const std::int64_t r = a % b;
      a = b;
      b = r;
    }
    const std::int64_t rest = 4 * ip - b * b;
    if (rest % absd == 0) {
      const std::int64_t c = rest / absd;
      const auto r = static_cast<std::int64_t>(isqrt(static_cast<u64>(c)));
      if (r * r == c) {
        x = b;
        y = r;
      }
    }
  }
  if (x < 0) throw std::logic_error("norm equation has no solution for a split prime");
  const QuadInt alpha = t_ == 1 ? QuadInt{(x - y) / 2, y} : QuadInt{x / 2, y};
  if (norm(alpha) != ip) throw std::logic_error("norm generator check failed");
  return alpha;
}

std::optional<QuadInt> ImagQuadField::divide(const QuadInt& x, const QuadInt& y) const {
  const std::int64_t ny = norm(y);
  if (ny == 0) return std::nullopt;
  const QuadInt num = mul(x, conj(y));
  if (num.a % ny != 0 || num.b % ny != 0) return std::nullopt;
  return QuadInt{num.a / ny, num.b / ny};
}

}  // namespace cropped
