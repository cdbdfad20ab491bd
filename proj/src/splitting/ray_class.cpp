#include "cropped/splitting/ray_class.hpp"

#include <algorithm>
#include <numeric>
#include <set>
#include <unordered_map>

#include "cropped/arith/modular.hpp"
#include "cropped/error.hpp"

namespace cropped {
namespace {

struct Egcd {
  std::int64_t g, u, w;
};

Egcd egcd(std::int64_t x, std::int64_t y) {
  std::int64_t old_r = x, r = y, old_s = 1, s = 0, old_t = 0, t = 1;
  while (r != 0) {
    const std::int64_t q = old_r / r;
    old_r -= q * r;
    std::swap(old_r, r);
    old_s -= q * s;
    std::swap(old_s, s);
    old_t -= q * t;
    std::swap(old_t, t);
  }
  if (old_r < 0) return {-old_r, -old_s, -old_t};
  return {old_r, old_s, old_t};
}

std::int64_t floor_div(std::int64_t x, std::int64_t y) {
  std::int64_t q = x / y;
  if ((x % y != 0) && ((x < 0) != (y < 0))) --q;
  return q;
}

// Smallest representative of the coset value * image.
RootOfUnity coset_rep(const RootOfUnity& value, std::span<const RootOfUnity> image) {
  RootOfUnity best = value;
  for (const auto& u : image) best = std::min(best, value * u);
  return best;
}

}  // namespace

IdealQuotient::IdealQuotient(const ImagQuadField& field, QuadInt generator)
    : field_(field), m_(generator) {
  const std::int64_t nm = field.norm(generator);
  if (nm == 0) throw ValidationError("conductor must be nonzero");
  if (nm > 1 << 16) throw IngestionOnlyError("conductor norm too large for native mode");
  const std::int64_t t = field.omega_trace(), n = field.omega_norm();
  const std::int64_t a = generator.a, b = generator.b;
  // Lattice basis of mO: m = (a, b), m*omega = (-n b, a + t b).
  const Egcd e = egcd(b, a + t * b);
  c_ = e.g;
  a_ = nm / c_;
  b_ = mod(e.u * a - e.w * n * b, a_);

  const std::int64_t one = index({1, 0});
  unit_.assign(static_cast<std::size_t>(size()), false);
  for (std::int64_t i = 0; i < size(); ++i) {
    std::int64_t x = i;
    for (std::int64_t k = 0; k < size(); ++k) {
      if (x == one) {
        unit_[static_cast<std::size_t>(i)] = true;
        units_.push_back(i);
        break;
      }
      x = mul_index(x, i);
    }
  }
}

std::int64_t IdealQuotient::index(const QuadInt& z) const {
  const std::int64_t k = floor_div(z.b, c_);
  const std::int64_t y = z.b - k * c_;
  const std::int64_t x = mod(z.a - k * b_, a_);
  return y * a_ + x;
}

std::int64_t IdealQuotient::mul_index(std::int64_t i, std::int64_t j) const {
  return index(field_.mul(element(i), element(j)));
}

RayClassDescriptor::RayClassDescriptor(
    ImagQuadField field, QuadInt conductor,
    std::span<const std::pair<QuadInt, RootOfUnity>> eta_assignment,
    DirichletCharacter nebentypus)
    : field_(field),
      conductor_(conductor),
      level_((-field.discriminant()) * field.norm(conductor)),
      eps_(level_ % nebentypus.modulus() == 0
               ? nebentypus.extend_to(level_)
               : throw ValidationError("nebentypus modulus does not divide |D| Norm(m)")),
      quotient_(field_, conductor) {
  if (!field_.native()) {
    throw IngestionOnlyError("ingestion-only field: class number is not one for D=" +
                             std::to_string(field_.discriminant()));
  }
  const auto sz = static_cast<std::size_t>(quotient_.size());
  eta_table_.assign(sz, RootOfUnity::one());
  eta_known_.assign(sz, false);

  std::vector<std::pair<std::int64_t, RootOfUnity>> gens;
  for (const auto& [z, v] : eta_assignment) {
    const std::int64_t idx = quotient_.index(z);
    if (!quotient_.is_unit(idx)) throw ValidationError("eta assigned on a non-unit residue");
    gens.emplace_back(idx, v);
  }
  const std::int64_t one = quotient_.index({1, 0});
  eta_known_[static_cast<std::size_t>(one)] = true;
  std::vector<std::int64_t> frontier{one};
  std::size_t covered = 1;
  while (!frontier.empty()) {
    const std::int64_t x = frontier.back();
    frontier.pop_back();
    for (const auto& [g, v] : gens) {
      const std::int64_t y = quotient_.mul_index(x, g);
      const RootOfUnity vy = eta_table_[static_cast<std::size_t>(x)] * v;
      const auto uy = static_cast<std::size_t>(y);
      if (!eta_known_[uy]) {
        eta_known_[uy] = true;
        eta_table_[uy] = vy;
        ++covered;
        frontier.push_back(y);
      } else if (eta_table_[uy] != vy) {
        throw ValidationError("eta is not a well-defined character on (O/m)*");
      }
    }
  }
  if (covered != quotient_.units().size()) {
    throw ValidationError("eta assignment does not generate (O/m)*");
  }

  for (const auto& u : field_.units()) {
    const RootOfUnity v = eta(u);
    if (u != QuadInt{1, 0} && v.is_one()) {
      throw ValidationError("a unit other than 1 lies in ker eta");
    }
    unit_image_.push_back(v);
  }

  const auto chi = DirichletCharacter::kronecker(field_.discriminant());
  for (std::int64_t n = 1; n <= level_; ++n) {
    if (std::gcd(n, level_) != 1) continue;
    const RootOfUnity expected = eta({n, 0}) * *chi(n);
    if (*eps_(n) != expected) {
      throw ValidationError("eps(n) != eta(n) chi(n) at n=" + std::to_string(n));
    }
  }
  relative_degree_ = compute_relative_degree();
}

RootOfUnity RayClassDescriptor::eta(const QuadInt& z) const {
  const auto idx = static_cast<std::size_t>(quotient_.index(z));
  if (!eta_known_[idx]) throw ValidationError("eta evaluated at a non-unit residue");
  return eta_table_[idx];
}

std::complex<double> RayClassDescriptor::psi(const QuadInt& z) const {
  return eta(z).to_complex() * field_.to_complex(z);
}

std::int64_t RayClassDescriptor::compute_relative_degree() const {
  if (level_ > 2000) {
    throw IngestionOnlyError("level too large for native splitting-field degree");
  }
  std::set<std::pair<RootOfUnity, RootOfUnity>> image;
  for (std::int64_t x = 0; x < level_; ++x) {
    for (std::int64_t y = 0; y < level_; ++y) {
      const QuadInt beta{x, y};
      const std::int64_t nb = field_.norm(beta);
      if (std::gcd(nb, level_) != 1) continue;
      image.emplace(coset_rep(eta(beta), unit_image_), *eps_(nb));
    }
  }
  return static_cast<std::int64_t>(image.size());
}

std::int64_t ideal_class_order(const RootOfUnity& value,
                               std::span<const RootOfUnity> unit_image) {
  RootOfUnity x = value;
  for (std::int64_t k = 1;; ++k) {
    if (x.is_one() || std::find(unit_image.begin(), unit_image.end(), x) != unit_image.end()) {
      return k;
    }
    x *= value;
  }
}

CmResidueDegree cm_residue_degree(const RayClassDescriptor& ray, std::uint64_t p) {
  if (ray.level() % static_cast<std::int64_t>(p) == 0) {
    throw ExcludedPrimeError(p, "ramified/excluded prime divides the level");
  }
  const auto& K = ray.field();
  const SplitType st = K.split_type(p);
  QuadInt alpha;
  std::uint64_t ideal_norm;
  if (st == SplitType::split) {
    alpha = K.norm_generator(p);
    ideal_norm = p;
  } else {
    alpha = {static_cast<std::int64_t>(p), 0};
    ideal_norm = mulmod(p, p, static_cast<std::uint64_t>(ray.level()));
  }
  const std::int64_t class_part = ideal_class_order(ray.eta(alpha), ray.unit_image());
  const std::int64_t cyclotomic_part =
      ray.nebentypus()(static_cast<std::int64_t>(ideal_norm))->order();
  const std::int64_t d_ideal = std::lcm(class_part, cyclotomic_part);
  return {d_ideal, st == SplitType::split ? d_ideal : 2 * d_ideal, st};
}

QuadInt canonical_generator(const RayClassDescriptor& ray, std::uint64_t p) {
  const auto& K = ray.field();
  const QuadInt alpha = K.norm_generator(p);
  for (const auto& u : K.units()) {
    const QuadInt cand = K.mul(u, alpha);
    if (ray.eta(cand).is_one()) return cand;
  }
  return alpha;
}

}  // namespace cropped
