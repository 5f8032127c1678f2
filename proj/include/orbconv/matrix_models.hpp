#pragma once

// Matrix realizations of rank-one G: SL(2,R) for the hyperbolic plane and
// SO_0(n,1) for real hyperbolic n-space.
//
// Radial conventions (alpha(H_t) = t in both):
//   sl2:     a_t = diag(e^{t/2}, e^{-t/2}), N upper unipotent, K = SO(2).
//   so(n,1): a_t = hyperbolic rotation in the (e_1, e_{n+1}) plane,
//            N fixes the null vector e_1 + e_{n+1}, K = SO(n) x {1}.
// The Lorentz form is J = diag(1, ..., 1, -1).

#include <cstdint>
#include <random>
#include <span>
#include <vector>

#include <Eigen/Dense>

#include "orbconv/cartan_data.hpp"

namespace orbconv {

enum class Realization { sl2, so_n1 };

struct GroupModel {
  Realization realization = Realization::sl2;
  int n = 2;  // dim G/K

  static GroupModel sl2() { return {Realization::sl2, 2}; }
  static GroupModel so_n1(int n);
  // Real hyperbolic spaces only: sl2 for n = 2, so(n,1) otherwise.
  static GroupModel for_space(const SpaceDescriptor& space);

  int matrix_size() const { return realization == Realization::sl2 ? 2 : n + 1; }
};

struct GroupElement {
  Realization realization = Realization::sl2;
  Eigen::MatrixXd matrix;
};

// Stored at full group size (block-diagonal diag(k, 1) for so(n,1)).
struct CompactElement {
  Eigen::MatrixXd matrix;
};

using Rng = std::mt19937_64;

// True when no realization is available for the space (e.g. complex
// hyperbolic), so only the descriptor-level operations apply.
bool has_matrix_realization(const SpaceDescriptor& space);

GroupElement identity(const GroupModel& model);
GroupElement exp_radial(const GroupModel& model, double t);
GroupElement to_group(const GroupModel& model, const CompactElement& k);
// Rotation by `angle` in the (e_1, e_2) plane; for sl2 the standard SO(2)
// rotation.
CompactElement compact_rotation(const GroupModel& model, double angle);

GroupElement operator*(const GroupElement& a, const GroupElement& b);
GroupElement operator*(const GroupElement& a, const CompactElement& k);
GroupElement operator*(const CompactElement& k, const GroupElement& a);
GroupElement inverse(const GroupElement& g);

// Throws Error(invalid_argument) if det != 1 (sl2) or g^T J g != J or g is
// outside the identity component (so(n,1)), beyond `tol`.
void check_realization(const GroupElement& g, double tol = 1e-10);
bool is_compact(const CompactElement& k, double tol = 1e-10);

struct IwasawaParts {
  CompactElement k;
  double H = 0.0;
  Eigen::MatrixXd n;
};

// g = k exp(H) n with k in K, n in N.
IwasawaParts iwasawa(const GroupElement& g);
double iwasawa_H(const GroupElement& g);

struct CartanParts {
  CompactElement k1;
  double t = 0.0;
  CompactElement k2;
};

// g = k1 exp(H_t) k2 with t >= 0; t below 1e-12 is snapped to 0.
CartanParts cartan(const GroupElement& g);
double cartan_radial(const GroupElement& g);

// H(a_t k) where cos_theta is the cosine of the polar angle of k:
// log(cosh t + sinh t cos_theta), evaluated without cancellation.
double iwasawa_H_polar(double t, double cos_theta);

// Polar cosine of k for the kernel above: cos(2 phi) for an SO(2)
// rotation by phi in sl2, (k e_1)_1 for so(n,1).
double polar_cosine(const GroupModel& model, const CompactElement& k);

// Haar-distributed element of K.
CompactElement sample_K(const GroupModel& model, Rng& rng);

// cartan_radial(k_0 a_1 k_1 ... a_r k_r), computed as the distance of
// g o from the base point; k_list.size() == t_list.size() + 1.
double radial_of_product(const GroupModel& model, std::span<const double> t_list,
                         std::span<const CompactElement> k_list);

}  // namespace orbconv
