#pragma once

// Entanglement measures: Wootters concurrence, pure-cut concurrence,
// negativity, the realignment (cross-norm) measure, and the Schmidt
// decomposition across single-qubit cuts.

#include "entmono/qmat.hpp"
#include "entmono/states.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numeric>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace entmono {

// A bipartition of the subsystems into a left and a right block.
struct PartitionSpec {
  std::vector<int> left;
  std::vector<int> right;

  PartitionSpec() = default;
  PartitionSpec(std::vector<int> l, std::vector<int> r) : left(std::move(l)), right(std::move(r)) {}

  // One subsystem against all the others.
  static PartitionSpec single(int focus, int n_subsystems) {
    PartitionSpec p;
    p.left.push_back(focus);
    for (int k = 0; k < n_subsystems; ++k)
      if (k != focus) p.right.push_back(k);
    return p;
  }

  void validate(int n_subsystems) const {
    if (left.empty() || right.empty())
      throw std::invalid_argument("partition: both blocks must be nonempty");
    std::vector<char> seen(static_cast<std::size_t>(n_subsystems), 0);
    for (const auto* side : {&left, &right})
      for (int k : *side) {
        if (k < 0 || k >= n_subsystems)
          throw std::invalid_argument("partition: subsystem index out of range");
        if (seen[static_cast<std::size_t>(k)])
          throw std::invalid_argument("partition: subsystem listed twice");
        seen[static_cast<std::size_t>(k)] = 1;
      }
    for (char s : seen)
      if (!s) throw std::invalid_argument("partition: blocks must cover all subsystems");
  }

  std::string to_string() const {
    std::ostringstream os;
    auto side = [&os](const std::vector<int>& v) {
      for (std::size_t i = 0; i < v.size(); ++i) {
        if (i) os << ',';
        os << v[i];
      }
    };
    side(left);
    os << ':';
    side(right);
    return os.str();
  }
};

struct SchmidtDecomposition {
  std::vector<double> coefficients;  // descending, squares sum to 1
  std::vector<Vec> left_vectors;
  std::vector<Vec> right_vectors;
};

namespace detail {

// Matrix regrouped so the cut's left block comes first, with block sizes.
struct Grouped {
  Mat rho;
  long dim_left = 0;
  long dim_right = 0;
};

inline Grouped group_bipartition(const Mat& rho, const DimSpec& ds, const PartitionSpec& cut) {
  cut.validate(ds.count());
  std::vector<int> perm = cut.left;
  perm.insert(perm.end(), cut.right.begin(), cut.right.end());
  Grouped g;
  g.rho = permute_subsystems(rho, ds, perm);
  g.dim_left = 1;
  for (int k : cut.left) g.dim_left *= ds[k];
  g.dim_right = 1;
  for (int k : cut.right) g.dim_right *= ds[k];
  return g;
}

inline Vec group_bipartition(const Vec& amps, const DimSpec& ds, const PartitionSpec& cut) {
  cut.validate(ds.count());
  std::vector<int> perm = cut.left;
  perm.insert(perm.end(), cut.right.begin(), cut.right.end());
  return permute_subsystems(amps, ds, perm);
}

inline double clip_radicand(double x, double floor_tol) {
  if (x < 0) {
    if (x < -floor_tol) throw std::runtime_error("negative radicand beyond tolerance");
    return 0.0;
  }
  return x;
}

// Square roots of the descending PSD-product spectrum.  Eigenvalues within
// floating-point noise of zero (relative to the leading one) are exact zero
// modes of the product; square-rooting the noise instead would amplify an
// O(eps) error to O(sqrt(eps)).
inline std::array<double, 4> lambda_roots(const std::vector<double>& ev, double neg_tol) {
  std::array<double, 4> lam{};
  const double zero_floor = std::max(ev[0], 0.0) * 1e-13;
  for (std::size_t i = 0; i < 4; ++i) {
    double mu = clip_radicand(ev[i], neg_tol);
    if (mu < zero_floor) mu = 0.0;
    lam[i] = std::sqrt(mu);
  }
  return lam;
}

}  // namespace detail

// (sigma_y (x) sigma_y) conj(rho) (sigma_y (x) sigma_y), conjugation in the
// computational basis.
inline Mat spin_flipped(const Mat& rho) {
  if (rho.rows() != 4 || rho.cols() != 4)
    throw std::invalid_argument("spin_flipped: requires a 4x4 matrix");
  static const Mat yy = kron(pauli_y(), pauli_y());
  return yy * rho.conjugate() * yy;
}

// Wootters concurrence of a two-qubit state, evaluated through the Hermitian
// matrix sqrt(rho) rho~ sqrt(rho), which shares its spectrum with rho rho~.
inline double concurrence_wootters(const DensityMatrix& s) {
  if (!(s.dims == DimSpec{2, 2}))
    throw std::invalid_argument("concurrence_wootters: requires a two-qubit state");
  const Mat root = sqrt_psd(s.rho);
  const Mat h = root * spin_flipped(s.rho) * root;
  const auto ev = hermitian_eigenvalues(h, 1e-9);
  const auto lam = detail::lambda_roots(ev, 1e-12);
  return std::max(0.0, lam[0] - lam[1] - lam[2] - lam[3]);
}

// Same quantity through the non-Hermitian product rho rho~ directly; kept as
// an independent route for cross-checking.
inline double concurrence_wootters_direct(const DensityMatrix& s) {
  if (!(s.dims == DimSpec{2, 2}))
    throw std::invalid_argument("concurrence_wootters_direct: requires a two-qubit state");
  Eigen::ComplexEigenSolver<Mat> es(s.rho * spin_flipped(s.rho), false);
  if (es.info() != Eigen::Success)
    throw std::runtime_error("concurrence_wootters_direct: eigensolver failed");
  std::vector<double> lam(4);
  for (int i = 0; i < 4; ++i)
    lam[static_cast<std::size_t>(i)] = std::sqrt(detail::clip_radicand(es.eigenvalues()(i).real(), 1e-9));
  std::sort(lam.begin(), lam.end(), std::greater<double>());
  return std::max(0.0, lam[0] - lam[1] - lam[2] - lam[3]);
}

// 2 sqrt(det rho_L) for a pure state cut with a single qubit on the left.
inline double concurrence_pure_cut(const StateVector& psi, const PartitionSpec& cut) {
  cut.validate(psi.dims.count());
  if (cut.left.size() != 1 || psi.dims[cut.left[0]] != 2)
    throw std::invalid_argument("concurrence_pure_cut: left block must be a single qubit");
  const Mat ra = partial_trace(DensityMatrix::pure(psi).rho, psi.dims, cut.left);
  const double det = (ra(0, 0) * ra(1, 1) - ra(0, 1) * ra(1, 0)).real();
  return 2.0 * std::sqrt(detail::clip_radicand(det, 1e-12));
}

// Squared concurrence of a pure state across an arbitrary cut,
// 2 (1 - Tr rho_L^2); reduces to 4 det rho_L for a single-qubit left block.
inline double pure_concurrence_squared(const StateVector& psi, const PartitionSpec& cut) {
  cut.validate(psi.dims.count());
  const Mat rl = partial_trace(DensityMatrix::pure(psi).rho, psi.dims, cut.left);
  const double purity = (rl * rl).trace().real();
  return std::max(0.0, 2.0 * (1.0 - purity));
}

inline double negativity(const DensityMatrix& s, const PartitionSpec& cut) {
  const auto g = detail::group_bipartition(s.rho, s.dims, cut);
  const Mat pt = partial_transpose(g.rho, DimSpec{static_cast<int>(g.dim_left), static_cast<int>(g.dim_right)}, {0});
  return std::max(0.0, (trace_norm(pt) - 1.0) / 2.0);
}

inline double negativity(const StateVector& psi, const PartitionSpec& cut) {
  return negativity(DensityMatrix::pure(psi), cut);
}

// Negativity as the absolute sum of negative partial-transpose eigenvalues;
// independent of the trace-norm route.
inline double negativity_eigsum(const DensityMatrix& s, const PartitionSpec& cut) {
  const auto g = detail::group_bipartition(s.rho, s.dims, cut);
  const Mat pt = partial_transpose(g.rho, DimSpec{static_cast<int>(g.dim_left), static_cast<int>(g.dim_right)}, {0});
  double acc = 0.0;
  for (double e : hermitian_eigenvalues(pt))
    if (e < 0) acc -= e;
  return acc;
}

inline double realignment_trace_norm(const DensityMatrix& s, const PartitionSpec& cut) {
  const auto g = detail::group_bipartition(s.rho, s.dims, cut);
  return trace_norm(realign(g.rho, DimSpec{static_cast<int>(g.dim_left), static_cast<int>(g.dim_right)}));
}

// max{ (||R(rho)|| - 1)/2, 0 }; the bracket can be negative (e.g. for the
// maximally mixed state), hence the clamp.
inline double realignment_measure(const DensityMatrix& s, const PartitionSpec& cut) {
  return std::max(0.0, (realignment_trace_norm(s, cut) - 1.0) / 2.0);
}

inline double realignment_measure(const StateVector& psi, const PartitionSpec& cut) {
  return realignment_measure(DensityMatrix::pure(psi), cut);
}

// Schmidt decomposition across a cut whose left block is a single qubit.
inline SchmidtDecomposition schmidt_2xd(const StateVector& psi, const PartitionSpec& cut) {
  cut.validate(psi.dims.count());
  if (cut.left.size() != 1 || psi.dims[cut.left[0]] != 2)
    throw std::invalid_argument("schmidt_2xd: left block must be a single qubit");
  const Vec grouped = detail::group_bipartition(psi.amps, psi.dims, cut);
  long dr = 1;
  for (int k : cut.right) dr *= psi.dims[k];
  Mat a(2, dr);
  for (long j = 0; j < dr; ++j) {
    a(0, j) = grouped(j);
    a(1, j) = grouped(dr + j);
  }
  Eigen::JacobiSVD<Mat> svd(a, Eigen::ComputeThinU | Eigen::ComputeThinV);
  if (svd.info() != Eigen::Success) throw std::runtime_error("schmidt_2xd: SVD did not converge");
  SchmidtDecomposition out;
  const long k = svd.singularValues().size();
  for (long i = 0; i < k; ++i) {
    out.coefficients.push_back(svd.singularValues()(i));
    out.left_vectors.push_back(svd.matrixU().col(i));
    out.right_vectors.push_back(svd.matrixV().col(i).conjugate());
  }
  return out;
}

}  // namespace entmono
