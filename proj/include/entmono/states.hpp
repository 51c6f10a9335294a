#pragma once

// State constructors and representations: GHZ and W families, Haar-random
// pure states, the GHZ/W mixture family, mixed states induced by tracing
// out ancillas, and the two-qubit Bloch (polarization-vector) form.

#include "entmono/qmat.hpp"

#include <cmath>
#include <cstdint>
#include <optional>
#include <random>
#include <stdexcept>
#include <utility>

namespace entmono {

struct StateVector {
  DimSpec dims;
  Vec amps;

  StateVector() = default;
  StateVector(DimSpec d, Vec a) : dims(std::move(d)), amps(std::move(a)) { validate(); }

  int subsystem_count() const { return dims.count(); }

  void validate() const {
    if (amps.size() != dims.total())
      throw std::invalid_argument("state vector: length does not match dims");
    require_finite(amps, "state vector");
    if (std::abs(amps.norm() - 1.0) > 1e-10)
      throw std::invalid_argument("state vector: norm differs from 1");
  }
};

struct DensityMatrix {
  DimSpec dims;
  Mat rho;

  DensityMatrix() = default;
  DensityMatrix(DimSpec d, Mat m) : dims(std::move(d)), rho(std::move(m)) { validate(); }

  static DensityMatrix pure(const StateVector& s) {
    return DensityMatrix(s.dims, s.amps * s.amps.adjoint());
  }

  // For operators already known valid (reductions of valid states); skips the
  // eigenvalue check, which dominates the cost on hot paths.
  static DensityMatrix trusted(DimSpec d, Mat m) {
    DensityMatrix out;
    out.dims = std::move(d);
    out.rho = std::move(m);
    return out;
  }

  int subsystem_count() const { return dims.count(); }

  void validate() const {
    if (rho.rows() != rho.cols() || rho.rows() != dims.total())
      throw std::invalid_argument("density matrix: shape does not match dims");
    require_finite(rho, "density matrix");
    if (!is_hermitian(rho))
      throw std::invalid_argument("density matrix: not Hermitian");
    if (std::abs(rho.trace().real() - 1.0) > 1e-10 || std::abs(rho.trace().imag()) > 1e-10)
      throw std::invalid_argument("density matrix: trace differs from 1");
    const auto ev = hermitian_eigenvalues(rho);
    if (ev.back() < -kEigClipTol)
      throw std::invalid_argument("density matrix: negative eigenvalue");
  }
};

// Pauli expectation data of a two-qubit state: local vectors and the 3x3
// two-body correlation tensor (rows index the first qubit's axis).
struct CorrelationDecomposition {
  Eigen::Vector3d n_a = Eigen::Vector3d::Zero();
  Eigen::Vector3d n_b = Eigen::Vector3d::Zero();
  Eigen::Matrix3d c = Eigen::Matrix3d::Zero();

  void validate() const {
    if (n_a.norm() > 1.0 + 1e-9 || n_b.norm() > 1.0 + 1e-9)
      throw std::invalid_argument("correlation decomposition: local vector norm exceeds 1");
  }
};

// ---------------------------------------------------------------------------
// Deterministic randomness.  mt19937_64 raw output is mapped to doubles by
// fixed arithmetic so that streams are identical across platforms and
// standard-library versions.

inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

// Substream seed for sample `counter` of a run seeded with `base`.
inline std::uint64_t derive_seed(std::uint64_t base, std::uint64_t counter) {
  return splitmix64(base ^ ((counter + 1) * 0x9E3779B97F4A7C15ULL));
}

class Prng {
 public:
  explicit Prng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t raw() { return engine_(); }

  // Uniform on (0,1); 53-bit resolution, never exactly 0 or 1.
  double uniform() { return (static_cast<double>(engine_() >> 11) + 0.5) * 0x1p-53; }

  // Standard normal via Box-Muller.
  double gaussian() {
    if (have_spare_) {
      have_spare_ = false;
      return spare_;
    }
    const double u1 = uniform();
    const double u2 = uniform();
    const double r = std::sqrt(-2.0 * std::log(u1));
    const double t = 2.0 * M_PI * u2;
    spare_ = r * std::sin(t);
    have_spare_ = true;
    return r * std::cos(t);
  }

 private:
  std::mt19937_64 engine_;
  bool have_spare_ = false;
  double spare_ = 0.0;
};

// ---------------------------------------------------------------------------
// Constructors.

inline StateVector ghz(int n) {
  if (n < 2) throw std::invalid_argument("ghz: needs at least 2 qubits");
  const long d = 1L << n;
  Vec v = Vec::Zero(d);
  v(0) = v(d - 1) = cx(1.0 / std::sqrt(2.0), 0);
  return StateVector(DimSpec::qubits(n), std::move(v));
}

inline StateVector w_state(int n) {
  if (n < 2) throw std::invalid_argument("w_state: needs at least 2 qubits");
  const long d = 1L << n;
  Vec v = Vec::Zero(d);
  const cx a(1.0 / std::sqrt(static_cast<double>(n)), 0);
  for (int k = 0; k < n; ++k) v(1L << (n - 1 - k)) = a;
  return StateVector(DimSpec::qubits(n), std::move(v));
}

inline StateVector haar_random_pure(int n, std::uint64_t seed) {
  if (n < 1) throw std::invalid_argument("haar_random_pure: needs at least 1 qubit");
  Prng rng(seed);
  const long d = 1L << n;
  Vec v(d);
  for (long i = 0; i < d; ++i) v(i) = cx(rng.gaussian(), rng.gaussian());
  v /= v.norm();
  return StateVector(DimSpec::qubits(n), std::move(v));
}

// Haar-distributed unitary: QR of a complex Ginibre matrix with the phases
// of R's diagonal absorbed into Q.
inline Mat haar_unitary(long d, Prng& rng) {
  Mat g(d, d);
  for (long r = 0; r < d; ++r)
    for (long c = 0; c < d; ++c) g(r, c) = cx(rng.gaussian(), rng.gaussian());
  Eigen::HouseholderQR<Mat> qr(g);
  Mat q = qr.householderQ();
  const Mat r = qr.matrixQR().triangularView<Eigen::Upper>();
  Vec phases(d);
  for (long i = 0; i < d; ++i) {
    const cx rii = r(i, i);
    phases(i) = std::abs(rii) > 0 ? rii / std::abs(rii) : cx(1, 0);
  }
  return q * phases.asDiagonal();
}

// p * |W><W| + (1-p) * |GHZ><GHZ| on three qubits.
inline DensityMatrix ghz_w_mixture(double p) {
  if (!(p >= 0.0 && p <= 1.0)) throw std::invalid_argument("ghz_w_mixture: p outside [0,1]");
  const Mat gw = DensityMatrix::pure(ghz(3)).rho;
  const Mat ww = DensityMatrix::pure(w_state(3)).rho;
  return DensityMatrix(DimSpec::qubits(3), p * ww + (1.0 - p) * gw);
}

// Mixed state on n_keep qubits obtained by tracing n_ancilla qubits out of a
// Haar-random pure state on n_keep + n_ancilla qubits.
inline DensityMatrix traced_haar_mixed(int n_keep, int n_ancilla, std::uint64_t seed) {
  if (n_keep < 1 || n_ancilla < 1)
    throw std::invalid_argument("traced_haar_mixed: qubit counts must be positive");
  const StateVector psi = haar_random_pure(n_keep + n_ancilla, seed);
  std::vector<int> keep(static_cast<std::size_t>(n_keep));
  for (int k = 0; k < n_keep; ++k) keep[static_cast<std::size_t>(k)] = k;
  Mat red = partial_trace(DensityMatrix::pure(psi).rho, psi.dims, keep);
  return DensityMatrix(DimSpec::qubits(n_keep), std::move(red));
}

// ---------------------------------------------------------------------------
// Two-qubit Bloch form.

inline CorrelationDecomposition bloch_decompose(const DensityMatrix& s) {
  if (!(s.dims == DimSpec{2, 2}))
    throw std::invalid_argument("bloch_decompose: requires a two-qubit state");
  CorrelationDecomposition d;
  const Mat id = identity(2);
  for (int a = 0; a < 3; ++a) {
    d.n_a(a) = (s.rho * kron(pauli(a), id)).trace().real();
    d.n_b(a) = (s.rho * kron(id, pauli(a))).trace().real();
    for (int b = 0; b < 3; ++b) d.c(a, b) = (s.rho * kron(pauli(a), pauli(b))).trace().real();
  }
  d.validate();
  return d;
}

// Inverse of bloch_decompose; the result is not necessarily positive.
inline Mat bloch_assemble(const CorrelationDecomposition& d) {
  Mat out = identity(4);
  const Mat id = identity(2);
  for (int a = 0; a < 3; ++a) {
    out += d.n_a(a) * kron(pauli(a), id);
    out += d.n_b(a) * kron(id, pauli(a));
    for (int b = 0; b < 3; ++b) out += d.c(a, b) * kron(pauli(a), pauli(b));
  }
  return 0.25 * out;
}

}  // namespace entmono
