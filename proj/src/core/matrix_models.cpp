#include "orbconv/matrix_models.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <numbers>
#include <string>

#include "orbconv/error.hpp"

namespace orbconv {

namespace {

constexpr double kWallSnap = 1e-12;

Eigen::MatrixXd lorentz_form(int size) {
  Eigen::MatrixXd j = Eigen::MatrixXd::Identity(size, size);
  j(size - 1, size - 1) = -1.0;
  return j;
}

// Rotation in SO(m) whose first column is the unit vector u.
Eigen::MatrixXd rotation_with_first_column(const Eigen::VectorXd& u) {
  const Eigen::Index m = u.size();
  if (m == 1) return Eigen::MatrixXd::Constant(1, 1, u(0) >= 0 ? 1.0 : -1.0);
  Eigen::MatrixXd basis = Eigen::MatrixXd::Identity(m, m);
  basis.col(0) = u;
  Eigen::HouseholderQR<Eigen::MatrixXd> qr(basis);
  Eigen::MatrixXd q = qr.householderQ() * Eigen::MatrixXd::Identity(m, m);
  if (q.col(0).dot(u) < 0) q.col(0) = -q.col(0);
  if (q.determinant() < 0) q.col(m - 1) = -q.col(m - 1);
  return q;
}


}  // namespace

GroupModel GroupModel::so_n1(int n) {
  require(n >= 2, "so(n,1) requires n >= 2");
  return {Realization::so_n1, n};
}

bool has_matrix_realization(const SpaceDescriptor& space) {
  return space.is_rank_one() && space.multiplicity_2alpha() == 0 && space.multiplicity_alpha() >= 1;
}

GroupModel GroupModel::for_space(const SpaceDescriptor& space) {
  if (!has_matrix_realization(space)) {
    fail(ErrorKind::unsupported, "no matrix realization for space '" + space.name +
                                     "' (only real hyperbolic spaces are realized)");
  }
  const int n = space.dim;
  return n == 2 ? sl2() : so_n1(n);
}

GroupElement identity(const GroupModel& model) {
  const int m = model.matrix_size();
  return {model.realization, Eigen::MatrixXd::Identity(m, m)};
}

GroupElement exp_radial(const GroupModel& model, double t) {
  GroupElement a = identity(model);
  if (model.realization == Realization::sl2) {
    a.matrix(0, 0) = std::exp(0.5 * t);
    a.matrix(1, 1) = std::exp(-0.5 * t);
  } else {
    const int last = model.n;
    a.matrix(0, 0) = std::cosh(t);
    a.matrix(last, last) = std::cosh(t);
    a.matrix(0, last) = std::sinh(t);
    a.matrix(last, 0) = std::sinh(t);
  }
  return a;
}

GroupElement to_group(const GroupModel& model, const CompactElement& k) {
  require(k.matrix.rows() == model.matrix_size(), "compact element has the wrong size for this model");
  return {model.realization, k.matrix};
}

CompactElement compact_rotation(const GroupModel& model, double angle) {
  const int m = model.matrix_size();
  Eigen::MatrixXd k = Eigen::MatrixXd::Identity(m, m);
  const double c = std::cos(angle);
  const double s = std::sin(angle);
  k(0, 0) = c;
  k(0, 1) = -s;
  k(1, 0) = s;
  k(1, 1) = c;
  return {k};
}

GroupElement operator*(const GroupElement& a, const GroupElement& b) {
  require(a.realization == b.realization && a.matrix.rows() == b.matrix.rows(),
          "cannot multiply elements of different realizations");
  return {a.realization, a.matrix * b.matrix};
}

GroupElement operator*(const GroupElement& a, const CompactElement& k) {
  require(a.matrix.rows() == k.matrix.rows(), "size mismatch in g * k");
  return {a.realization, a.matrix * k.matrix};
}

GroupElement operator*(const CompactElement& k, const GroupElement& a) {
  require(a.matrix.rows() == k.matrix.rows(), "size mismatch in k * g");
  return {a.realization, k.matrix * a.matrix};
}

GroupElement inverse(const GroupElement& g) {
  if (g.realization == Realization::sl2) {
    Eigen::MatrixXd inv(2, 2);
    inv << g.matrix(1, 1), -g.matrix(0, 1), -g.matrix(1, 0), g.matrix(0, 0);
    return {g.realization, inv};
  }
  const auto j = lorentz_form(static_cast<int>(g.matrix.rows()));
  return {g.realization, j * g.matrix.transpose() * j};
}

void check_realization(const GroupElement& g, double tol) {
  if (g.realization == Realization::sl2) {
    require(g.matrix.rows() == 2 && g.matrix.cols() == 2, "sl2 elements are 2x2");
    const double det = g.matrix.determinant();
    if (std::abs(det - 1.0) > tol * std::max(1.0, g.matrix.squaredNorm())) {
      fail(ErrorKind::invalid_argument, "sl2 element has determinant " + num(det));
    }
    return;
  }
  const Eigen::Index m = g.matrix.rows();
  require(m >= 3 && g.matrix.cols() == m, "so(n,1) elements are square of size n+1 >= 3");
  const auto j = lorentz_form(static_cast<int>(m));
  // Entries of g^T J g carry rounding of order |g|^2.
  const double drift = (g.matrix.transpose() * j * g.matrix - j).cwiseAbs().maxCoeff();
  if (drift > tol * std::max(1.0, g.matrix.squaredNorm())) {
    fail(ErrorKind::invalid_argument, "element violates g^T J g = J (residual " + num(drift) + ")");
  }
  if (g.matrix(m - 1, m - 1) < 1.0 - tol) {
    fail(ErrorKind::invalid_argument, "element is not time-orientation preserving");
  }
  if (g.matrix.determinant() < 0.0) {
    fail(ErrorKind::invalid_argument, "element has determinant -1");
  }
}

bool is_compact(const CompactElement& k, double tol) {
  const Eigen::Index m = k.matrix.rows();
  const double orth = (k.matrix.transpose() * k.matrix - Eigen::MatrixXd::Identity(m, m)).cwiseAbs().maxCoeff();
  return orth <= tol && std::abs(k.matrix.determinant() - 1.0) <= tol;
}

IwasawaParts iwasawa(const GroupElement& g) {
  check_realization(g);
  IwasawaParts out;
  if (g.realization == Realization::sl2) {
    const double x = g.matrix(0, 0);
    const double y = g.matrix(1, 0);
    const double r = std::hypot(x, y);
    out.H = 2.0 * std::log(r);
    Eigen::MatrixXd k(2, 2);
    k << x / r, -y / r, y / r, x / r;
    out.k.matrix = k;
    Eigen::MatrixXd a_inv = Eigen::MatrixXd::Zero(2, 2);
    a_inv(0, 0) = std::exp(-0.5 * out.H);
    a_inv(1, 1) = std::exp(0.5 * out.H);
    out.n = a_inv * k.transpose() * g.matrix;
    return out;
  }
  const Eigen::Index m = g.matrix.rows();
  const Eigen::Index last = m - 1;
  // g (e_1 + e_{n+1}) = e^H k (e_1 + e_{n+1}) and k fixes e_{n+1}.
  const Eigen::VectorXd g_xi = g.matrix.col(0) + g.matrix.col(last);
  const double scale = g_xi(last);
  out.H = std::log(scale);
  Eigen::MatrixXd k = Eigen::MatrixXd::Identity(m, m);
  k.col(0).head(last) = g_xi.head(last) / scale;
  k(last, 0) = 0.0;
  for (Eigen::Index j = 1; j < last; ++j) {
    // g e_j = k e_j - v_j g xi with v_j fixed by (k e_j)_{n+1} = 0.
    const double v = -g.matrix(last, j) / scale;
    k.col(j) = g.matrix.col(j) + v * g_xi;
    k(last, j) = 0.0;
  }
  k.col(last).setZero();
  k(last, last) = 1.0;
  out.k.matrix = k;
  const GroupModel model = GroupModel::so_n1(static_cast<int>(last));
  out.n = exp_radial(model, -out.H).matrix * k.transpose() * g.matrix;
  return out;
}

double iwasawa_H(const GroupElement& g) { return iwasawa(g).H; }

CartanParts cartan(const GroupElement& g) {
  check_realization(g);
  CartanParts out;
  if (g.realization == Realization::sl2) {
    const double a = g.matrix(0, 0), b = g.matrix(0, 1), c = g.matrix(1, 0), d = g.matrix(1, 1);
    const double e = 0.5 * (a + d), f = 0.5 * (a - d), gg = 0.5 * (c + b), h = 0.5 * (c - b);
    const double q = std::hypot(e, h);
    const double r = std::hypot(f, gg);
    double t = std::log((q + r) / (q - r));
    const double a1 = std::atan2(gg, f);
    const double a2 = std::atan2(h, e);
    const double theta = 0.5 * (a2 - a1);
    const double phi = 0.5 * (a2 + a1);
    const GroupModel model = GroupModel::sl2();
    if (t < kWallSnap) {
      // On the wall the factorization collapses to g = k1 with k2 = e.
      out.t = 0.0;
      out.k1 = compact_rotation(model, phi + theta);
      out.k2 = compact_rotation(model, 0.0);
      return out;
    }
    out.t = t;
    out.k1 = compact_rotation(model, phi);
    out.k2 = compact_rotation(model, theta);
    return out;
  }
  const Eigen::Index m = g.matrix.rows();
  const Eigen::Index last = m - 1;
  const int n = static_cast<int>(last);
  const GroupModel model = GroupModel::so_n1(n);
  const Eigen::VectorXd col = g.matrix.col(last).head(last);
  const double sh = col.norm();
  const double t = std::asinh(sh);
  Eigen::MatrixXd k1 = Eigen::MatrixXd::Identity(m, m);
  Eigen::MatrixXd k2 = Eigen::MatrixXd::Identity(m, m);
  if (t < kWallSnap) {
    // g is in K up to rounding; orthonormalize its spatial block.
    Eigen::HouseholderQR<Eigen::MatrixXd> qr(g.matrix.topLeftCorner(last, last));
    Eigen::MatrixXd q = qr.householderQ() * Eigen::MatrixXd::Identity(last, last);
    const Eigen::MatrixXd rdiag = qr.matrixQR().diagonal().asDiagonal();
    for (Eigen::Index i = 0; i < last; ++i) {
      if (rdiag(i, i) < 0) q.col(i) = -q.col(i);
    }
    k1.topLeftCorner(last, last) = q;
    out.t = 0.0;
    out.k1.matrix = k1;
    out.k2.matrix = k2;
    return out;
  }
  const Eigen::VectorXd u = col / sh;
  const Eigen::VectorXd v = g.matrix.row(last).head(last).transpose() / sh;
  k1.topLeftCorner(last, last) = rotation_with_first_column(u);
  Eigen::MatrixXd k2_partial = Eigen::MatrixXd::Identity(m, m);
  k2_partial.topLeftCorner(last, last) = rotation_with_first_column(v).transpose();
  // g = k1 a_t m k2_partial with m in the centralizer of A; fold m into k2.
  const Eigen::MatrixXd mid =
      exp_radial(model, -t).matrix * k1.transpose() * g.matrix * k2_partial.transpose();
  Eigen::MatrixXd centralizer = Eigen::MatrixXd::Identity(m, m);
  if (last > 1) centralizer.block(1, 1, last - 1, last - 1) = mid.block(1, 1, last - 1, last - 1);
  k2 = centralizer * k2_partial;
  out.t = t;
  out.k1.matrix = k1;
  out.k2.matrix = k2;
  return out;
}

double cartan_radial(const GroupElement& g) {
  if (g.realization == Realization::sl2) {
    check_realization(g);
    const double a = g.matrix(0, 0), b = g.matrix(0, 1), c = g.matrix(1, 0), d = g.matrix(1, 1);
    const double q = std::hypot(0.5 * (a + d), 0.5 * (c - b));
    const double r = std::hypot(0.5 * (a - d), 0.5 * (c + b));
    const double t = std::log((q + r) / (q - r));
    return t < kWallSnap ? 0.0 : t;
  }
  check_realization(g);
  const Eigen::Index last = g.matrix.rows() - 1;
  const double t = std::asinh(g.matrix.col(last).head(last).norm());
  return t < kWallSnap ? 0.0 : t;
}

double iwasawa_H_polar(double t, double cos_theta) {
  // cosh t + sinh t c = (e^t (1 + c) + e^{-t} (1 - c)) / 2
  return std::log(0.5 * (std::exp(t) * (1.0 + cos_theta) + std::exp(-t) * (1.0 - cos_theta)));
}

double polar_cosine(const GroupModel& model, const CompactElement& k) {
  if (model.realization == Realization::sl2) {
    const double c = k.matrix(0, 0);
    const double s = k.matrix(1, 0);
    return c * c - s * s;
  }
  return k.matrix(0, 0);
}

CompactElement sample_K(const GroupModel& model, Rng& rng) {
  if (model.realization == Realization::sl2 || model.n == 2) {
    std::uniform_real_distribution<double> angle(0.0, 2.0 * std::numbers::pi);
    return compact_rotation(model, angle(rng));
  }
  const int n = model.n;
  std::normal_distribution<double> normal(0.0, 1.0);
  Eigen::MatrixXd z(n, n);
  for (int j = 0; j < n; ++j) {
    for (int i = 0; i < n; ++i) z(i, j) = normal(rng);
  }
  Eigen::HouseholderQR<Eigen::MatrixXd> qr(z);
  Eigen::MatrixXd q = qr.householderQ() * Eigen::MatrixXd::Identity(n, n);
  // Sign fix makes Q Haar on O(n); the determinant fix maps onto SO(n).
  for (int i = 0; i < n; ++i) {
    if (qr.matrixQR()(i, i) < 0) q.col(i) = -q.col(i);
  }
  if (q.determinant() < 0) q.col(0) = -q.col(0);
  Eigen::MatrixXd k = Eigen::MatrixXd::Identity(n + 1, n + 1);
  k.topLeftCorner(n, n) = q;
  return {k};
}

double radial_of_product(const GroupModel& model, std::span<const double> t_list,
                         std::span<const CompactElement> k_list) {
  if (k_list.size() != t_list.size() + 1) {
    fail(ErrorKind::invalid_argument, "radial_of_product expects r radial points and r+1 compact elements (got " +
                                          std::to_string(t_list.size()) + " and " +
                                          std::to_string(k_list.size()) + ")");
  }
  // Track g o for the base point o instead of g itself: the matrix entries of
  // a long product outgrow the precision of its defining form, the orbit
  // point does not. k_0 fixes the distance and is skipped.
  if (model.realization == Realization::sl2) {
    std::complex<double> z(0.0, 1.0);
    for (std::size_t i = t_list.size(); i-- > 0;) {
      const Eigen::MatrixXd& k = k_list[i + 1].matrix;
      z = (k(0, 0) * z + k(0, 1)) / (k(1, 0) * z + k(1, 1));
      z *= std::exp(t_list[i]);
    }
    const double gap = std::abs(z - std::complex<double>(0.0, 1.0));
    const double t = 2.0 * std::asinh(gap / (2.0 * std::sqrt(z.imag())));
    return t < kWallSnap ? 0.0 : t;
  }
  const int last = model.n;
  Eigen::VectorXd v = Eigen::VectorXd::Zero(last + 1);
  v(last) = 1.0;
  for (std::size_t i = t_list.size(); i-- > 0;) {
    v = k_list[i + 1].matrix * v;
    const double c = std::cosh(t_list[i]);
    const double s = std::sinh(t_list[i]);
    const double x = v(0);
    const double w = v(last);
    v(0) = c * x + s * w;
    v(last) = s * x + c * w;
  }
  const double t = std::asinh(v.head(last).norm());
  return t < kWallSnap ? 0.0 : t;
}

}  // namespace orbconv
