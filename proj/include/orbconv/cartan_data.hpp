#pragma once

// Structure data of a Riemannian symmetric space of noncompact type:
// rank, dimension, positive restricted roots with multiplicities, Weyl
// group order. Roots live in a fixed orthonormal basis of a* with the
// short positive root scaled to norm 1.

#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

namespace orbconv {

struct RestrictedRoot {
  std::vector<double> vector;
  int multiplicity = 1;
};

struct SpaceDescriptor {
  std::string name;
  int rank = 0;
  int dim = 0;
  std::vector<RestrictedRoot> positive_roots;
  int weyl_order = 0;

  bool is_rank_one() const { return rank == 1; }

  // Rank one only: multiplicity of the root of norm 1 (resp. 2), zero when
  // absent.
  int multiplicity_alpha() const;
  int multiplicity_2alpha() const;
};

// Points of a* (spectral side).
struct SpectralParameter {
  std::vector<double> coords;
};

// Points of the closed positive chamber in a. Rank one: a single t >= 0.
struct RadialPoint {
  std::vector<double> coords;
};

// Families: "real-hyperbolic" {n}, "complex-hyperbolic" {m},
// "generic-rank-one" {m_alpha, m_2alpha}. Generic higher-rank spaces are
// built with make_generic_space or read from JSON.
SpaceDescriptor build_space(std::string_view family, std::span<const int> params);

SpaceDescriptor make_generic_space(std::string name, int rank,
                                   std::vector<RestrictedRoot> roots,
                                   int weyl_order);

// Throws Error(invalid_argument) when any descriptor invariant fails.
void validate(const SpaceDescriptor& space);

SpectralParameter rho(const SpaceDescriptor& space);

// Euclidean pairing <lambda, alpha> in the root basis.
double pairing(std::span<const double> a, std::span<const double> b);

// min over unit u of max_i |<u, alpha_i>| for a spanning set of roots.
double root_separation_constant(std::span<const RestrictedRoot> basis_roots);

// Radial part of Haar measure in Cartan coordinates:
// prod over positive roots of sinh(alpha(H))^{m_alpha}.
double radial_jacobian(const SpaceDescriptor& space, const RadialPoint& point);
double radial_jacobian(const SpaceDescriptor& space, double t);

void to_json(nlohmann::json& j, const RestrictedRoot& root);
void from_json(const nlohmann::json& j, RestrictedRoot& root);
void to_json(nlohmann::json& j, const SpaceDescriptor& space);
// Validates after parsing.
void from_json(const nlohmann::json& j, SpaceDescriptor& space);

}  // namespace orbconv
