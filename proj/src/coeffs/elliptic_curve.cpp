#include "cropped/coeffs/elliptic_curve.hpp"

#include <gmpxx.h>

#include <cmath>
#include <regex>
#include <sstream>
#include <stdexcept>
#include <vector>

#include "cropped/arith/modular.hpp"
#include "cropped/error.hpp"

namespace cropped {

namespace {

mpz_class model_discriminant(const std::array<std::int64_t, 5>& a) {
  const mpz_class a1(static_cast<long>(a[0])), a2(static_cast<long>(a[1])),
      a3(static_cast<long>(a[2])), a4(static_cast<long>(a[3])), a6(static_cast<long>(a[4]));
  const mpz_class b2 = a1 * a1 + 4 * a2;
  const mpz_class b4 = 2 * a4 + a1 * a3;
  const mpz_class b6 = a3 * a3 + 4 * a6;
  const mpz_class b8 = a1 * a1 * a6 + 4 * a2 * a6 - a1 * a3 * a4 + a2 * a3 * a3 - a4 * a4;
  return -b2 * b2 * b8 - 8 * b4 * b4 * b4 - 27 * b6 * b6 + 9 * b2 * b4 * b6;
}

std::int64_t reduce(std::int64_t v, std::uint64_t p) {
  return static_cast<std::int64_t>(mod(v, p));
}

const std::vector<EllipticCurve>& catalog() {
  static const std::vector<EllipticCurve> c = {curve_11a(), curve_32a()};
  return c;
}

std::string squeeze(const std::string& s) {
  std::string out;
  for (char ch : s)
    if (!std::isspace(static_cast<unsigned char>(ch)) && ch != '^' && ch != '*') out += ch;
  return out;
}

}  // namespace

EllipticCurve EllipticCurve::short_weierstrass(std::int64_t A, std::int64_t B,
                                               std::uint64_t conductor,
                                               std::optional<std::int64_t> cm) {
  EllipticCurve e;
  e.a = {0, 0, 0, A, B};
  e.conductor = conductor;
  e.cm_discriminant = cm;
  e.label = e.equation();
  if (model_discriminant(e.a) == 0) throw ValidationError("singular curve " + e.label);
  return e;
}

std::string EllipticCurve::discriminant() const { return model_discriminant(a).get_str(); }

bool EllipticCurve::good_reduction(std::uint64_t p) const {
  if (conductor % p == 0) return false;
  const mpz_class d = model_discriminant(a);
  return mpz_divisible_ui_p(d.get_mpz_t(), p) == 0;
}

std::string EllipticCurve::equation() const {
  std::ostringstream os;
  os << "[" << a[0] << "," << a[1] << "," << a[2] << "," << a[3] << "," << a[4] << "]";
  return os.str();
}

EllipticCurve curve_32a() {
  EllipticCurve e = EllipticCurve::short_weierstrass(-1, 0, 32, -4);
  e.label = "32a";
  return e;
}

EllipticCurve curve_11a() {
  EllipticCurve e;
  e.a = {0, -1, 1, -10, -20};
  e.conductor = 11;
  e.label = "11a";
  return e;
}

EllipticCurve parse_curve(const std::string& text, std::uint64_t conductor,
                          std::optional<std::int64_t> cm) {
  const std::string s = squeeze(text);
  EllipticCurve e;
  bool parsed = false;
  for (const auto& known : catalog()) {
    if (s == known.label) return known;
  }
  static const std::regex ainv(R"(\[(-?\d+),(-?\d+),(-?\d+),(-?\d+),(-?\d+)\])");
  // y2=x3[+Ax][+B] in any order of the two optional terms.
  static const std::regex shortw(R"(y2=x3((?:[+-]\d*x)?)((?:[+-]\d+)?))");
  std::smatch m;
  if (std::regex_match(s, m, ainv)) {
    for (int i = 0; i < 5; ++i) e.a[static_cast<std::size_t>(i)] = std::stoll(m[i + 1]);
    parsed = true;
  } else if (std::regex_match(s, m, shortw)) {
    std::int64_t A = 0, B = 0;
    if (m[1].length() > 0) {
      std::string t = m[1].str();
      t.pop_back();  // drop x
      if (t == "+" || t == "-") t += "1";
      A = std::stoll(t);
    }
    if (m[2].length() > 0) B = std::stoll(m[2].str());
    e.a = {0, 0, 0, A, B};
    parsed = true;
  }
  if (!parsed) throw ValidationError("cannot parse curve '" + text + "'");
  if (model_discriminant(e.a) == 0) throw ValidationError("singular curve " + text);
  for (const auto& known : catalog()) {
    if (known.a == e.a) {
      if (conductor != 0 && conductor != known.conductor)
        throw ValidationError("conductor " + std::to_string(conductor) + " does not match " +
                              known.label);
      if (cm && known.cm_discriminant != cm)
        throw ValidationError("CM discriminant does not match catalog curve " + known.label);
      return known;
    }
  }
  if (conductor == 0) throw ValidationError("conductor required for curve " + text);
  e.conductor = conductor;
  e.cm_discriminant = cm;
  e.label = e.equation();
  return e;
}

std::int64_t ec_ap(const EllipticCurve& curve, std::uint64_t p) {
  if (!is_prime(p)) throw ValidationError("ec_ap needs a prime, got " + std::to_string(p));
  if (!curve.good_reduction(p)) throw ExcludedPrimeError(p, "bad reduction for " + curve.label);
  std::int64_t points = 1;  // the point at infinity
  if (p == 2) {
    for (std::int64_t x = 0; x < 2; ++x)
      for (std::int64_t y = 0; y < 2; ++y) {
        const std::int64_t lhs = y * y + curve.a[0] * x * y + curve.a[2] * y;
        const std::int64_t rhs =
            x * x * x + curve.a[1] * x * x + curve.a[3] * x + curve.a[4];
        if (mod(lhs - rhs, 2) == 0) ++points;
      }
  } else {
    // (2y + a1 x + a3)^2 = 4x^3 + b2 x^2 + 2 b4 x + b6
    const std::int64_t a1 = reduce(curve.a[0], p), a2 = reduce(curve.a[1], p),
                       a3 = reduce(curve.a[2], p), a4 = reduce(curve.a[3], p),
                       a6 = reduce(curve.a[4], p);
    const std::uint64_t P = p;
    const std::uint64_t c3 = 4 % P;
    const std::uint64_t c2 = (mulmod(a1, a1, P) + 4 * static_cast<std::uint64_t>(a2)) % P;
    const std::uint64_t c1 = (4 * static_cast<std::uint64_t>(a4) + 2 * mulmod(a1, a3, P)) % P;
    const std::uint64_t c0 = (mulmod(a3, a3, P) + 4 * static_cast<std::uint64_t>(a6)) % P;
    std::vector<std::int8_t> chi(p, -1);
    chi[0] = 0;
    for (std::uint64_t y = 1, sq = 1; y <= p / 2; ++y) {
      chi[sq] = 1;
      sq += 2 * y + 1;  // (y+1)^2
      while (sq >= P) sq -= P;
    }
    // Walk x = 0..p-1 with forward differences of the cubic.
    std::uint64_t f = c0;
    std::uint64_t d1 = (c3 + c2 + c1) % P;
    std::uint64_t d2 = (6 * c3 + 2 * c2) % P;
    const std::uint64_t d3 = (6 * c3) % P;
    auto add = [P](std::uint64_t& acc, std::uint64_t v) {
      acc += v;
      if (acc >= P) acc -= P;
    };
    for (std::uint64_t x = 0; x < p; ++x) {
      points += 1 + chi[f];
      add(f, d1);
      add(d1, d2);
      add(d2, d3);
    }
  }
  const std::int64_t ap = static_cast<std::int64_t>(p) + 1 - points;
  if (static_cast<double>(ap) * ap > 4.0 * static_cast<double>(p))
    throw std::logic_error("Hasse bound violated at p=" + std::to_string(p));
  return ap;
}

}  // namespace cropped
