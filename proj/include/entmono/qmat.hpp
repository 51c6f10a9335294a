#pragma once

// Dense complex linear algebra for small multi-qubit systems: tensor
// construction, index-reshaping maps (partial trace, partial transpose,
// realignment) and spectral quantities (eigenvalues, trace norm).
//
// Index convention used throughout: subsystem 0 is the most significant
// (slowest-varying) tensor factor, and matrices are stored row-major in
// that global basis.

#include <Eigen/Dense>
#include <unsupported/Eigen/KroneckerProduct>

#include <algorithm>
#include <array>
#include <complex>
#include <cstdint>
#include <initializer_list>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace entmono {

using cx = std::complex<double>;
using Mat = Eigen::MatrixXcd;
using Vec = Eigen::VectorXcd;

// Hermiticity is checked entrywise against this bound.
inline constexpr double kHermitianTol = 1e-10;
// Eigenvalues in [-kEigClipTol, 0) are treated as exact zeros.
inline constexpr double kEigClipTol = 1e-10;

// Ordered list of subsystem Hilbert dimensions.
struct DimSpec {
  std::vector<int> dims;

  DimSpec() = default;
  DimSpec(std::initializer_list<int> d) : dims(d) { check(); }
  explicit DimSpec(std::vector<int> d) : dims(std::move(d)) { check(); }

  static DimSpec qubits(int n) {
    if (n < 1) throw std::invalid_argument("DimSpec: qubit count must be at least 1");
    return DimSpec(std::vector<int>(static_cast<std::size_t>(n), 2));
  }

  int count() const { return static_cast<int>(dims.size()); }
  int operator[](int k) const { return dims[static_cast<std::size_t>(k)]; }

  long total() const {
    long t = 1;
    for (int d : dims) t *= d;
    return t;
  }

  void check() const {
    if (dims.empty()) throw std::invalid_argument("DimSpec: no subsystems");
    for (int d : dims)
      if (d < 1) throw std::invalid_argument("DimSpec: dimensions must be positive");
  }

  bool operator==(const DimSpec& o) const { return dims == o.dims; }
};

namespace detail {

constexpr int kMaxSubsystems = 32;

// Global index -> mixed-radix digits (subsystem 0 most significant).
inline void to_digits(long idx, const DimSpec& ds, std::array<int, kMaxSubsystems>& out) {
  for (int k = ds.count() - 1; k >= 0; --k) {
    out[static_cast<std::size_t>(k)] = static_cast<int>(idx % ds[k]);
    idx /= ds[k];
  }
}

inline long from_digits(const std::array<int, kMaxSubsystems>& digits, const DimSpec& ds) {
  long idx = 0;
  for (int k = 0; k < ds.count(); ++k) idx = idx * ds[k] + digits[static_cast<std::size_t>(k)];
  return idx;
}

inline void require_subsystem_count(const DimSpec& ds) {
  if (ds.count() > kMaxSubsystems) throw std::invalid_argument("too many subsystems");
}

}  // namespace detail

template <typename Derived>
inline void require_finite(const Eigen::MatrixBase<Derived>& m, const char* what) {
  if (!m.allFinite()) throw std::invalid_argument(std::string(what) + ": non-finite entries");
}

inline bool is_hermitian(const Mat& m, double tol = kHermitianTol) {
  if (m.rows() != m.cols()) return false;
  return (m - m.adjoint()).cwiseAbs().maxCoeff() <= tol;
}

inline double max_abs_diff(const Mat& a, const Mat& b) {
  return (a - b).cwiseAbs().maxCoeff();
}

inline const Mat& pauli_x() {
  static const Mat m = (Mat(2, 2) << cx(0, 0), cx(1, 0), cx(1, 0), cx(0, 0)).finished();
  return m;
}

inline const Mat& pauli_y() {
  static const Mat m = (Mat(2, 2) << cx(0, 0), cx(0, -1), cx(0, 1), cx(0, 0)).finished();
  return m;
}

inline const Mat& pauli_z() {
  static const Mat m = (Mat(2, 2) << cx(1, 0), cx(0, 0), cx(0, 0), cx(-1, 0)).finished();
  return m;
}

// axis: 0 -> x, 1 -> y, 2 -> z
inline const Mat& pauli(int axis) {
  switch (axis) {
    case 0: return pauli_x();
    case 1: return pauli_y();
    case 2: return pauli_z();
    default: throw std::invalid_argument("pauli: axis must be 0, 1 or 2");
  }
}

inline Mat identity(long n) { return Mat::Identity(n, n); }

inline Mat kron(const Mat& a, const Mat& b) {
  Mat out = Eigen::kroneckerProduct(a, b);
  return out;
}

inline Mat kron_all(const std::vector<Mat>& ops) {
  if (ops.empty()) throw std::invalid_argument("kron_all: no factors");
  Mat out = ops.front();
  for (std::size_t i = 1; i < ops.size(); ++i) out = kron(out, ops[i]);
  return out;
}

namespace detail {

inline void check_permutation(const DimSpec& ds, const std::vector<int>& perm) {
  if (static_cast<int>(perm.size()) != ds.count())
    throw std::invalid_argument("permute_subsystems: permutation length mismatch");
  std::vector<char> seen(perm.size(), 0);
  for (int p : perm) {
    if (p < 0 || p >= ds.count() || seen[static_cast<std::size_t>(p)])
      throw std::invalid_argument("permute_subsystems: not a permutation");
    seen[static_cast<std::size_t>(p)] = 1;
  }
}

}  // namespace detail

// Dimensions after reordering: slot k of the result holds subsystem perm[k].
inline DimSpec permute_dims(const DimSpec& ds, const std::vector<int>& perm) {
  detail::check_permutation(ds, perm);
  std::vector<int> nd(perm.size());
  for (std::size_t k = 0; k < perm.size(); ++k) nd[k] = ds[perm[k]];
  return DimSpec(std::move(nd));
}

inline Vec permute_subsystems(const Vec& v, const DimSpec& ds, const std::vector<int>& perm) {
  detail::check_permutation(ds, perm);
  detail::require_subsystem_count(ds);
  if (v.size() != ds.total()) throw std::invalid_argument("permute_subsystems: size mismatch");
  const DimSpec nds = permute_dims(ds, perm);
  Vec out(v.size());
  std::array<int, detail::kMaxSubsystems> dig{}, ndig{};
  for (long i = 0; i < v.size(); ++i) {
    detail::to_digits(i, ds, dig);
    for (int k = 0; k < ds.count(); ++k)
      ndig[static_cast<std::size_t>(k)] = dig[static_cast<std::size_t>(perm[static_cast<std::size_t>(k)])];
    out(detail::from_digits(ndig, nds)) = v(i);
  }
  return out;
}

inline Mat permute_subsystems(const Mat& m, const DimSpec& ds, const std::vector<int>& perm) {
  detail::check_permutation(ds, perm);
  detail::require_subsystem_count(ds);
  if (m.rows() != m.cols() || m.rows() != ds.total())
    throw std::invalid_argument("permute_subsystems: size mismatch");
  const long d = m.rows();
  const DimSpec nds = permute_dims(ds, perm);
  std::vector<long> map(static_cast<std::size_t>(d));
  std::array<int, detail::kMaxSubsystems> dig{}, ndig{};
  for (long i = 0; i < d; ++i) {
    detail::to_digits(i, ds, dig);
    for (int k = 0; k < ds.count(); ++k)
      ndig[static_cast<std::size_t>(k)] = dig[static_cast<std::size_t>(perm[static_cast<std::size_t>(k)])];
    map[static_cast<std::size_t>(i)] = detail::from_digits(ndig, nds);
  }
  Mat out(d, d);
  for (long r = 0; r < d; ++r)
    for (long c = 0; c < d; ++c)
      out(map[static_cast<std::size_t>(r)], map[static_cast<std::size_t>(c)]) = m(r, c);
  return out;
}

// Reduced operator on the kept subsystems (their original relative order).
inline Mat partial_trace(const Mat& rho, const DimSpec& ds, std::vector<int> keep) {
  detail::require_subsystem_count(ds);
  if (rho.rows() != rho.cols() || rho.rows() != ds.total())
    throw std::invalid_argument("partial_trace: dimension mismatch");
  std::sort(keep.begin(), keep.end());
  keep.erase(std::unique(keep.begin(), keep.end()), keep.end());
  if (keep.empty()) throw std::invalid_argument("partial_trace: empty keep set");
  for (int k : keep)
    if (k < 0 || k >= ds.count()) throw std::invalid_argument("partial_trace: index out of range");

  std::vector<int> traced;
  for (int k = 0; k < ds.count(); ++k)
    if (!std::binary_search(keep.begin(), keep.end(), k)) traced.push_back(k);

  DimSpec kds, tds;
  {
    std::vector<int> kd, td;
    for (int k : keep) kd.push_back(ds[k]);
    for (int k : traced) td.push_back(ds[k]);
    kds = DimSpec(std::move(kd));
    tds = td.empty() ? DimSpec{1} : DimSpec(std::move(td));
  }
  const long dk = kds.total();
  const long dt = traced.empty() ? 1 : tds.total();

  Mat out = Mat::Zero(dk, dk);
  std::array<int, detail::kMaxSubsystems> kr{}, kc{}, tt{}, full_r{}, full_c{};
  for (long r = 0; r < dk; ++r) {
    detail::to_digits(r, kds, kr);
    for (long c = 0; c < dk; ++c) {
      detail::to_digits(c, kds, kc);
      cx acc(0, 0);
      for (long t = 0; t < dt; ++t) {
        if (!traced.empty()) detail::to_digits(t, tds, tt);
        for (std::size_t k = 0; k < keep.size(); ++k) {
          full_r[static_cast<std::size_t>(keep[k])] = kr[k];
          full_c[static_cast<std::size_t>(keep[k])] = kc[k];
        }
        for (std::size_t k = 0; k < traced.size(); ++k) {
          full_r[static_cast<std::size_t>(traced[k])] = tt[k];
          full_c[static_cast<std::size_t>(traced[k])] = tt[k];
        }
        acc += rho(detail::from_digits(full_r, ds), detail::from_digits(full_c, ds));
      }
      out(r, c) = acc;
    }
  }
  return out;
}

// Transpose the indices of the chosen subsystems only.
inline Mat partial_transpose(const Mat& rho, const DimSpec& ds, const std::vector<int>& part) {
  detail::require_subsystem_count(ds);
  if (rho.rows() != rho.cols() || rho.rows() != ds.total())
    throw std::invalid_argument("partial_transpose: dimension mismatch");
  for (int k : part)
    if (k < 0 || k >= ds.count()) throw std::invalid_argument("partial_transpose: index out of range");
  const long d = rho.rows();
  Mat out(d, d);
  std::array<int, detail::kMaxSubsystems> dr{}, dc{};
  for (long r = 0; r < d; ++r) {
    for (long c = 0; c < d; ++c) {
      detail::to_digits(r, ds, dr);
      detail::to_digits(c, ds, dc);
      for (int k : part) std::swap(dr[static_cast<std::size_t>(k)], dc[static_cast<std::size_t>(k)]);
      out(detail::from_digits(dr, ds), detail::from_digits(dc, ds)) = rho(r, c);
    }
  }
  return out;
}

// Realignment over a bipartition d_A x d_B: rows of the result are indexed by
// pairs of A indices, columns by pairs of B indices.  The caller supplies the
// two-block grouping; this map never guesses it.
inline Mat realign(const Mat& rho, const DimSpec& ds) {
  if (ds.count() != 2) throw std::invalid_argument("realign: dims must describe exactly two blocks");
  const long da = ds[0], db = ds[1];
  if (rho.rows() != rho.cols() || rho.rows() != da * db)
    throw std::invalid_argument("realign: dimension mismatch");
  Mat out(da * da, db * db);
  for (long i = 0; i < da; ++i)
    for (long j = 0; j < da; ++j)
      for (long k = 0; k < db; ++k)
        for (long l = 0; l < db; ++l)
          out(i * da + j, k * db + l) = rho(i * db + k, j * db + l);
  return out;
}

// Sum of singular values.
inline double trace_norm(const Mat& m) {
  Eigen::JacobiSVD<Mat> svd(m);
  if (svd.info() != Eigen::Success) throw std::runtime_error("trace_norm: SVD did not converge");
  return svd.singularValues().sum();
}

// Real spectrum of a Hermitian matrix, descending.
inline std::vector<double> hermitian_eigenvalues(const Mat& m, double tol = kHermitianTol) {
  if (m.rows() != m.cols()) throw std::invalid_argument("hermitian_eigenvalues: matrix not square");
  if (!is_hermitian(m, tol)) throw std::invalid_argument("hermitian_eigenvalues: matrix not Hermitian");
  Eigen::SelfAdjointEigenSolver<Mat> es(m, Eigen::EigenvaluesOnly);
  if (es.info() != Eigen::Success) throw std::runtime_error("hermitian_eigenvalues: solver failed");
  const auto& ev = es.eigenvalues();
  std::vector<double> out(static_cast<std::size_t>(ev.size()));
  for (long i = 0; i < ev.size(); ++i) out[static_cast<std::size_t>(ev.size() - 1 - i)] = ev(i);
  return out;
}

// Principal square root of a positive semidefinite Hermitian matrix.
// Slightly negative eigenvalues (rounding noise) are clipped to zero.
inline Mat sqrt_psd(const Mat& m, double tol = kHermitianTol) {
  if (!is_hermitian(m, tol)) throw std::invalid_argument("sqrt_psd: matrix not Hermitian");
  Eigen::SelfAdjointEigenSolver<Mat> es(m);
  if (es.info() != Eigen::Success) throw std::runtime_error("sqrt_psd: solver failed");
  Eigen::VectorXd ev = es.eigenvalues();
  for (long i = 0; i < ev.size(); ++i) {
    if (ev(i) < -1e-8) throw std::runtime_error("sqrt_psd: matrix has a negative eigenvalue");
    if (ev(i) < 0) ev(i) = 0;
  }
  return es.eigenvectors() * ev.cwiseSqrt().asDiagonal() * es.eigenvectors().adjoint();
}

}  // namespace entmono
