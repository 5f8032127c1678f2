#include "orbconv/cartan_data.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include <Eigen/Dense>

#include "orbconv/error.hpp"

namespace orbconv {

namespace {

constexpr double kNormTol = 1e-12;

double norm(std::span<const double> v) { return std::sqrt(pairing(v, v)); }

int multiplicity_with_norm(const SpaceDescriptor& space, double target) {
  int total = 0;
  for (const auto& root : space.positive_roots) {
    if (std::abs(norm(root.vector) - target) < 1e-9) total += root.multiplicity;
  }
  return total;
}

SpaceDescriptor rank_one(std::string name, int m_alpha, int m_2alpha) {
  SpaceDescriptor s;
  s.name = std::move(name);
  s.rank = 1;
  if (m_alpha > 0) s.positive_roots.push_back({{1.0}, m_alpha});
  if (m_2alpha > 0) s.positive_roots.push_back({{2.0}, m_2alpha});
  s.dim = 1 + m_alpha + m_2alpha;
  s.weyl_order = 2;
  return s;
}

// max_i |<u(angle), alpha_i>| on the circle, for the rank-two search.
double circle_objective(std::span<const RestrictedRoot> roots, double angle) {
  const double u[2] = {std::cos(angle), std::sin(angle)};
  double best = 0.0;
  for (const auto& r : roots) best = std::max(best, std::abs(u[0] * r.vector[0] + u[1] * r.vector[1]));
  return best;
}

// Spherical coordinates on S^{l-1} from l-1 angles.
void unit_vector(std::span<const double> angles, std::span<double> out) {
  double s = 1.0;
  const std::size_t l = out.size();
  for (std::size_t i = 0; i + 1 < l; ++i) {
    out[i] = s * std::cos(angles[i]);
    s *= std::sin(angles[i]);
  }
  out[l - 1] = s;
}

double sphere_objective(std::span<const RestrictedRoot> roots, std::span<const double> angles,
                        std::vector<double>& scratch) {
  unit_vector(angles, scratch);
  double best = 0.0;
  for (const auto& r : roots) best = std::max(best, std::abs(pairing(scratch, r.vector)));
  return best;
}

}  // namespace

int SpaceDescriptor::multiplicity_alpha() const { return multiplicity_with_norm(*this, 1.0); }
int SpaceDescriptor::multiplicity_2alpha() const { return multiplicity_with_norm(*this, 2.0); }

double pairing(std::span<const double> a, std::span<const double> b) {
  require(a.size() == b.size(), "pairing: dimension mismatch");
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

SpaceDescriptor build_space(std::string_view family, std::span<const int> params) {
  if (family == "real-hyperbolic") {
    require(params.size() == 1, "real-hyperbolic takes one parameter n");
    const int n = params[0];
    require(n >= 2, "real-hyperbolic requires n >= 2 (got " + std::to_string(n) + ")");
    auto s = rank_one("real-hyperbolic(" + std::to_string(n) + ")", n - 1, 0);
    validate(s);
    return s;
  }
  if (family == "complex-hyperbolic") {
    require(params.size() == 1, "complex-hyperbolic takes one parameter m");
    const int m = params[0];
    require(m >= 1, "complex-hyperbolic requires m >= 1 (got " + std::to_string(m) + ")");
    auto s = rank_one("complex-hyperbolic(" + std::to_string(m) + ")", 2 * (m - 1), 1);
    validate(s);
    return s;
  }
  if (family == "generic-rank-one") {
    require(params.size() == 2, "generic-rank-one takes two parameters m_alpha, m_2alpha");
    require(params[0] >= 0 && params[1] >= 0 && params[0] + params[1] >= 1,
            "generic-rank-one requires nonnegative multiplicities, not both zero");
    auto s = rank_one("generic-rank-one(" + std::to_string(params[0]) + "," +
                          std::to_string(params[1]) + ")",
                      params[0], params[1]);
    validate(s);
    return s;
  }
  if (family == "generic") {
    fail(ErrorKind::invalid_argument,
         "generic spaces need explicit roots: use make_generic_space or a JSON descriptor");
  }
  fail(ErrorKind::invalid_argument, "unknown space family '" + std::string(family) + "'");
}

SpaceDescriptor make_generic_space(std::string name, int rank, std::vector<RestrictedRoot> roots,
                                   int weyl_order) {
  SpaceDescriptor s;
  s.name = std::move(name);
  s.rank = rank;
  s.positive_roots = std::move(roots);
  s.weyl_order = weyl_order;
  s.dim = rank;
  for (const auto& r : s.positive_roots) s.dim += r.multiplicity;
  validate(s);
  return s;
}

void validate(const SpaceDescriptor& space) {
  require(space.rank >= 1, "rank must be positive");
  require(!space.positive_roots.empty(), "at least one positive root is required");
  int total = space.rank;
  for (const auto& root : space.positive_roots) {
    require(root.multiplicity >= 1, "root multiplicity must be >= 1");
    require(static_cast<int>(root.vector.size()) == space.rank,
            "root vector length must equal the rank");
    for (double c : root.vector) require(std::isfinite(c), "root coordinates must be finite");
    require(norm(root.vector) > kNormTol, "root vector must be nonzero");
    total += root.multiplicity;
  }
  require(space.dim == total, "dimension " + std::to_string(space.dim) +
                                  " violates dim = rank + sum of multiplicities (= " +
                                  std::to_string(total) + ")");
  require(space.weyl_order >= 1, "Weyl group order must be positive");
  if (space.rank == 1) {
    require(space.weyl_order == 2, "rank-one spaces have Weyl group of order 2");
    require(space.positive_roots.size() <= 2, "rank-one spaces carry at most the roots alpha, 2alpha");
    for (const auto& root : space.positive_roots) {
      const double v = root.vector[0];
      require(std::abs(v - 1.0) < 1e-9 || std::abs(v - 2.0) < 1e-9,
              "rank-one positive roots must be alpha = 1 or 2alpha = 2 in the normalized basis");
    }
  }
}

SpectralParameter rho(const SpaceDescriptor& space) {
  SpectralParameter out{std::vector<double>(static_cast<std::size_t>(space.rank), 0.0)};
  for (const auto& root : space.positive_roots) {
    for (std::size_t i = 0; i < out.coords.size(); ++i) {
      out.coords[i] += 0.5 * root.multiplicity * root.vector[i];
    }
  }
  return out;
}

double root_separation_constant(std::span<const RestrictedRoot> basis_roots) {
  require(!basis_roots.empty(), "root_separation_constant: empty root list");
  const std::size_t l = basis_roots.front().vector.size();
  require(l >= 1, "root_separation_constant: roots must be nonempty vectors");
  Eigen::MatrixXd m(static_cast<Eigen::Index>(basis_roots.size()), static_cast<Eigen::Index>(l));
  for (std::size_t i = 0; i < basis_roots.size(); ++i) {
    require(basis_roots[i].vector.size() == l, "root_separation_constant: inconsistent root lengths");
    for (std::size_t j = 0; j < l; ++j) m(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = basis_roots[i].vector[j];
  }
  Eigen::FullPivLU<Eigen::MatrixXd> lu(m);
  lu.setThreshold(1e-12);
  if (lu.rank() < static_cast<Eigen::Index>(l)) {
    fail(ErrorKind::invalid_argument, "root_separation_constant: roots do not span a*");
  }

  if (l == 1) {
    // Only directions are +-1; the best root is the longest one.
    double best = 0.0;
    for (const auto& r : basis_roots) best = std::max(best, std::abs(r.vector[0]));
    return best;
  }

  if (l == 2) {
    // The objective is pi-periodic; grid then bisection-style refinement.
    constexpr int kGrid = 10000;
    const double step = std::numbers::pi / kGrid;
    double best_angle = 0.0;
    double best = std::numeric_limits<double>::infinity();
    for (int i = 0; i < kGrid; ++i) {
      const double a = i * step;
      const double v = circle_objective(basis_roots, a);
      if (v < best) {
        best = v;
        best_angle = a;
      }
    }
    double lo = best_angle - step;
    double hi = best_angle + step;
    // Golden-section on the bracketing cell; the objective is a max of
    // |cos| terms, unimodal at this scale.
    const double g = (std::sqrt(5.0) - 1.0) / 2.0;
    double x1 = hi - g * (hi - lo);
    double x2 = lo + g * (hi - lo);
    double f1 = circle_objective(basis_roots, x1);
    double f2 = circle_objective(basis_roots, x2);
    for (int it = 0; it < 100 && hi - lo > 1e-14; ++it) {
      if (f1 < f2) {
        hi = x2;
        x2 = x1;
        f2 = f1;
        x1 = hi - g * (hi - lo);
        f1 = circle_objective(basis_roots, x1);
      } else {
        lo = x1;
        x1 = x2;
        f1 = f2;
        x2 = lo + g * (hi - lo);
        f2 = circle_objective(basis_roots, x2);
      }
    }
    return std::min(best, std::min(f1, f2));
  }

  // l >= 3: product grid over the angles of a hemisphere, capped at ~1e8
  // evaluations, then coordinate-wise refinement around the best cell.
  const int dims = static_cast<int>(l) - 1;
  const int per_dim = std::max(16, static_cast<int>(std::pow(1e8, 1.0 / dims)));
  std::vector<double> angles(static_cast<std::size_t>(dims), 0.0);
  std::vector<double> best_angles(angles);
  std::vector<double> scratch(l);
  std::vector<int> idx(static_cast<std::size_t>(dims), 0);
  std::vector<double> steps(static_cast<std::size_t>(dims));
  for (int d = 0; d < dims; ++d) {
    // Last angle spans [0, 2pi); the others [0, pi]. Antipodal symmetry
    // halves the range of the first angle.
    const double range = d == dims - 1 ? 2.0 * std::numbers::pi : std::numbers::pi;
    steps[static_cast<std::size_t>(d)] = (d == 0 ? range / 2.0 : range) / per_dim;
  }
  double best = std::numeric_limits<double>::infinity();
  while (true) {
    for (int d = 0; d < dims; ++d) angles[static_cast<std::size_t>(d)] = (idx[static_cast<std::size_t>(d)] + 0.5) * steps[static_cast<std::size_t>(d)];
    const double v = sphere_objective(basis_roots, angles, scratch);
    if (v < best) {
      best = v;
      best_angles = angles;
    }
    int d = 0;
    while (d < dims && ++idx[static_cast<std::size_t>(d)] == per_dim) {
      idx[static_cast<std::size_t>(d)] = 0;
      ++d;
    }
    if (d == dims) break;
  }
  std::vector<double> h(steps);
  for (int pass = 0; pass < 60; ++pass) {
    bool improved = false;
    for (int d = 0; d < dims; ++d) {
      for (double sign : {-1.0, 1.0}) {
        auto trial = best_angles;
        trial[static_cast<std::size_t>(d)] += sign * h[static_cast<std::size_t>(d)];
        const double v = sphere_objective(basis_roots, trial, scratch);
        if (v < best) {
          best = v;
          best_angles = trial;
          improved = true;
        }
      }
    }
    if (!improved) {
      for (auto& x : h) x *= 0.5;
    }
  }
  return best;
}

double radial_jacobian(const SpaceDescriptor& space, const RadialPoint& point) {
  require(static_cast<int>(point.coords.size()) == space.rank, "radial point has wrong rank");
  double j = 1.0;
  for (const auto& root : space.positive_roots) {
    j *= std::pow(std::sinh(pairing(root.vector, point.coords)), root.multiplicity);
  }
  return j;
}

double radial_jacobian(const SpaceDescriptor& space, double t) {
  require(space.is_rank_one(), "scalar radial_jacobian requires a rank-one space");
  double j = 1.0;
  for (const auto& root : space.positive_roots) {
    j *= std::pow(std::sinh(root.vector[0] * t), root.multiplicity);
  }
  return j;
}

void to_json(nlohmann::json& j, const RestrictedRoot& root) {
  j = nlohmann::json{{"vector", root.vector}, {"multiplicity", root.multiplicity}};
}

void from_json(const nlohmann::json& j, RestrictedRoot& root) {
  j.at("vector").get_to(root.vector);
  j.at("multiplicity").get_to(root.multiplicity);
}

void to_json(nlohmann::json& j, const SpaceDescriptor& space) {
  j = nlohmann::json{{"name", space.name},
                     {"rank", space.rank},
                     {"dim", space.dim},
                     {"roots", space.positive_roots},
                     {"weyl_order", space.weyl_order}};
}

void from_json(const nlohmann::json& j, SpaceDescriptor& space) {
  try {
    j.at("name").get_to(space.name);
    j.at("rank").get_to(space.rank);
    j.at("dim").get_to(space.dim);
    j.at("roots").get_to(space.positive_roots);
    j.at("weyl_order").get_to(space.weyl_order);
  } catch (const nlohmann::json::exception& e) {
    fail(ErrorKind::invalid_argument, std::string("malformed space descriptor: ") + e.what());
  }
  validate(space);
}

}  // namespace orbconv
