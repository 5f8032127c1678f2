#include "orbconv/montecarlo.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "orbconv/error.hpp"
#include "orbconv/matrix_models.hpp"
#include "orbconv/numerics.hpp"
#include "orbconv/parallel.hpp"

namespace orbconv {

std::vector<double> sample_convolution(const OrbitalConvolution& conv, std::size_t n, std::uint64_t seed,
                                       unsigned threads) {
  require(n >= 1, "sample count must be at least 1");
  const GroupModel model = GroupModel::for_space(conv.space);
  // A single double coset K a K has radial part exactly t.
  if (conv.r() == 1) return std::vector<double>(n, conv.generators[0]);
  std::vector<double> out(n);
  const std::size_t chunks = (n + kSampleChunk - 1) / kSampleChunk;
  parallel_for(chunks, threads, [&](std::size_t c) {
    Rng rng(derive_seed(seed, c));
    std::vector<CompactElement> ks(conv.generators.size() + 1);
    const std::size_t begin = c * kSampleChunk;
    const std::size_t end = std::min(n, begin + kSampleChunk);
    for (std::size_t i = begin; i < end; ++i) {
      for (auto& k : ks) k = sample_K(model, rng);
      out[i] = radial_of_product(model, conv.generators, ks);
    }
  });
  const double radius = conv.support_radius();
  const double worst = *std::max_element(out.begin(), out.end());
  if (worst > radius * (1.0 + 1e-9) + 1e-9) {
    fail(ErrorKind::invariant_violation, "sample radius " + std::to_string(worst) +
                                             " exceeds the support radius " + std::to_string(radius));
  }
  return out;
}

std::vector<double> RadialHistogram::centers() const {
  std::vector<double> c(counts.size());
  for (std::size_t b = 0; b < c.size(); ++b) c[b] = 0.5 * (bin_edges[b] + bin_edges[b + 1]);
  return c;
}

RadialHistogram histogram(const SpaceDescriptor& space, std::span<const double> samples, int bins, double lo,
                          double hi) {
  require(!samples.empty(), "histogram needs at least one sample");
  require(bins >= 10, "histogram needs at least 10 bins");
  require(std::isfinite(lo) && std::isfinite(hi) && hi > lo && lo >= 0.0, "histogram range must satisfy 0 <= lo < hi");
  RadialHistogram h;
  h.n_samples = samples.size();
  h.bin_edges.resize(static_cast<std::size_t>(bins) + 1);
  const double width = (hi - lo) / bins;
  for (int b = 0; b <= bins; ++b) h.bin_edges[static_cast<std::size_t>(b)] = lo + width * b;
  h.bin_edges.back() = hi;
  h.counts.assign(static_cast<std::size_t>(bins), 0);
  std::size_t outside = 0;
  for (double s : samples) {
    if (s < lo || s > hi) {
      ++outside;
      continue;
    }
    auto b = static_cast<std::size_t>((s - lo) / width);
    if (b >= h.counts.size()) b = h.counts.size() - 1;
    ++h.counts[b];
  }
  if (outside) {
    fail(ErrorKind::invalid_argument, std::to_string(outside) + " samples fall outside the histogram range");
  }
  h.density_estimate.resize(h.counts.size());
  h.jacobian.resize(h.counts.size());
  const auto centers = h.centers();
  for (std::size_t b = 0; b < h.counts.size(); ++b) {
    const double jac = radial_jacobian(space, centers[b]);
    h.jacobian[b] = jac;
    h.density_estimate[b] = jac > 0.0 ? static_cast<double>(h.counts[b]) / (static_cast<double>(h.n_samples) * width * jac) : 0.0;
  }
  return h;
}

RadialHistogram histogram(const SpaceDescriptor& space, std::span<const double> samples, int bins) {
  require(!samples.empty(), "histogram needs at least one sample");
  const double top = *std::max_element(samples.begin(), samples.end());
  return histogram(space, samples, bins, 0.0, top > 0.0 ? top : 1.0);
}

namespace {

double interpolate(const std::vector<double>& x, const std::vector<double>& y, double at) {
  if (at <= x.front()) return y.front();
  if (at >= x.back()) return y.back();
  const auto it = std::upper_bound(x.begin(), x.end(), at);
  const std::size_t i = static_cast<std::size_t>(it - x.begin());
  const double s = (at - x[i - 1]) / (x[i] - x[i - 1]);
  return y[i - 1] + s * (y[i] - y[i - 1]);
}

}  // namespace

Comparison compare(const RadialHistogram& hist, const DensityProfile& profile) {
  require(profile.grid.size() >= 2 && profile.values.size() == profile.grid.size() &&
              profile.jacobian.size() == profile.grid.size(),
          "profile arrays are inconsistent");
  require(hist.counts.size() + 1 == hist.bin_edges.size() && hist.jacobian.size() == hist.counts.size() &&
              hist.n_samples > 0,
          "histogram is inconsistent");
  const double lo = std::max(hist.bin_edges.front(), profile.grid.front());
  const double hi = std::min(hist.bin_edges.back(), profile.grid.back());
  if (!(hi > lo)) {
    fail(ErrorKind::invalid_argument, "histogram and profile have disjoint radial ranges");
  }
  std::vector<double> integrand(profile.grid.size());
  for (std::size_t i = 0; i < integrand.size(); ++i) integrand[i] = profile.values[i] * profile.jacobian[i];
  const auto cdf = cumulative_trapezoid(profile.grid, integrand);
  const double n = static_cast<double>(hist.n_samples);
  Comparison cmp;
  double emp_cdf = 0.0;
  double prev_edge_cdf = interpolate(profile.grid, cdf, hist.bin_edges.front());
  cmp.ks = std::abs(prev_edge_cdf);
  for (std::size_t b = 0; b < hist.counts.size(); ++b) {
    const double edge_cdf = interpolate(profile.grid, cdf, hist.bin_edges[b + 1]);
    const double prob = edge_cdf - prev_edge_cdf;
    const double frac = static_cast<double>(hist.counts[b]) / n;
    cmp.l1 += std::abs(frac - prob);
    const double width = hist.bin_edges[b + 1] - hist.bin_edges[b];
    const double jac = hist.jacobian[b];
    if (jac > 0.0) cmp.sup = std::max(cmp.sup, std::abs(hist.density_estimate[b] - prob / (width * jac)));
    emp_cdf += frac;
    cmp.ks = std::max(cmp.ks, std::abs(emp_cdf - edge_cdf));
    prev_edge_cdf = edge_cdf;
  }
  return cmp;
}

EmpiricalTransform empirical_transform(const SpaceDescriptor& space, std::span<const double> samples, double lambda,
                                       const QuadratureConfig& quad, unsigned threads) {
  require(!samples.empty(), "empirical transform needs at least one sample");
  std::vector<std::complex<double>> values(samples.size());
  parallel_for(samples.size(), threads, [&](std::size_t i) {
    values[i] = spherical_fn(space, lambda, samples[i], quad).value;
  });
  std::complex<double> mean = 0.0;
  for (const auto& v : values) mean += v;
  mean /= static_cast<double>(values.size());
  double var = 0.0;
  for (const auto& v : values) var += (v.real() - mean.real()) * (v.real() - mean.real());
  const double count = static_cast<double>(values.size());
  EmpiricalTransform out;
  out.lambda = lambda;
  out.mean = mean;
  out.standard_error = values.size() > 1 ? std::sqrt(var / (count - 1.0) / count) : 0.0;
  return out;
}

}  // namespace orbconv
