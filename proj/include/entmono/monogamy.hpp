#pragma once

// Entanglement-sharing constraints: the CKW inequality and three-tangle,
// pairwise-sum monogamy for concurrence / negativity / realignment,
// block-partition variants, pair caps for three-qubit states with their
// residuals, SLOCC classification, strictness sampling campaigns, and a
// heuristic convex-roof upper bound.

#include "entmono/measures.hpp"
#include "entmono/qmat.hpp"
#include "entmono/states.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <limits>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace entmono {

// An inequality holds when slack >= -kHoldsTol and is called strict when
// slack > kStrictTol; the band in between is numerical equality.
inline constexpr double kHoldsTol = 1e-9;
inline constexpr double kStrictTol = 1e-7;

struct MonogamyReport {
  std::string inequality_id;
  double lhs = 0;
  double rhs = 0;
  double slack = 0;  // rhs - lhs
  bool holds = false;
  bool strict = false;
  std::string cut_description;
};

inline MonogamyReport make_report(std::string id, double lhs, double rhs, std::string cut,
                                  double holds_tol = kHoldsTol) {
  MonogamyReport r;
  r.inequality_id = std::move(id);
  r.lhs = lhs;
  r.rhs = rhs;
  r.slack = rhs - lhs;
  r.holds = r.slack >= -holds_tol;
  r.strict = r.slack > kStrictTol;
  r.cut_description = std::move(cut);
  return r;
}

enum class PairMeasure { Concurrence, Negativity, Realignment };

inline const char* pair_measure_name(PairMeasure m) {
  switch (m) {
    case PairMeasure::Concurrence: return "concurrence";
    case PairMeasure::Negativity: return "negativity";
    case PairMeasure::Realignment: return "realignment";
  }
  return "?";
}

namespace detail {

struct ReducedCut {
  DensityMatrix state;
  PartitionSpec cut;
};

// Reduce to `keep` (sorted ascending) and build the cut separating the
// subsystems of `left_orig` (given in original numbering) from the rest.
inline ReducedCut reduce_and_cut(const DensityMatrix& s, std::vector<int> keep,
                                 const std::vector<int>& left_orig) {
  std::sort(keep.begin(), keep.end());
  Mat red = partial_trace(s.rho, s.dims, keep);
  std::vector<int> kept_dims;
  for (int k : keep) kept_dims.push_back(s.dims[k]);
  ReducedCut out;
  out.state = DensityMatrix::trusted(DimSpec(std::move(kept_dims)), std::move(red));
  for (std::size_t pos = 0; pos < keep.size(); ++pos) {
    const bool is_left = std::find(left_orig.begin(), left_orig.end(), keep[pos]) != left_orig.end();
    (is_left ? out.cut.left : out.cut.right).push_back(static_cast<int>(pos));
  }
  return out;
}

inline double squared_measure(const DensityMatrix& s, const PartitionSpec& cut, PairMeasure m) {
  double v = 0;
  switch (m) {
    case PairMeasure::Concurrence:
      if (!(s.dims == DimSpec{2, 2}))
        throw std::invalid_argument("mixed-state concurrence is only defined for two qubits");
      v = concurrence_wootters(s);
      break;
    case PairMeasure::Negativity: v = negativity(s, cut); break;
    case PairMeasure::Realignment: v = realignment_measure(s, cut); break;
  }
  return v * v;
}

inline double pair_measure_squared(const DensityMatrix& s, int focus, int j, PairMeasure m) {
  const auto rc = reduce_and_cut(s, {focus, j}, {focus});
  return squared_measure(rc.state, rc.cut, m);
}

inline double rest_measure_squared(const StateVector& psi, int focus, PairMeasure m) {
  const PartitionSpec cut = PartitionSpec::single(focus, psi.dims.count());
  if (m == PairMeasure::Concurrence) return pure_concurrence_squared(psi, cut);
  return squared_measure(DensityMatrix::pure(psi), cut, m);
}

inline void require_qubits(const StateVector& psi, int n) {
  if (!(psi.dims == DimSpec::qubits(n)))
    throw std::invalid_argument("state must have exactly " + std::to_string(n) + " qubits");
}

inline void require_qubits(const DensityMatrix& s, int n) {
  if (!(s.dims == DimSpec::qubits(n)))
    throw std::invalid_argument("state must have exactly " + std::to_string(n) + " qubits");
}

inline std::string join(const std::vector<int>& v) {
  std::ostringstream os;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) os << ',';
    os << v[i];
  }
  return os.str();
}

}  // namespace detail

// C^2(A,B) + C^2(A,C) <= C^2(A:BC) for a pure three-qubit state.
inline MonogamyReport ckw_check(const StateVector& psi) {
  detail::require_qubits(psi, 3);
  const DensityMatrix full = DensityMatrix::pure(psi);
  const double lhs = detail::pair_measure_squared(full, 0, 1, PairMeasure::Concurrence) +
                     detail::pair_measure_squared(full, 0, 2, PairMeasure::Concurrence);
  const double rhs = pure_concurrence_squared(psi, PartitionSpec::single(0, 3));
  return make_report("ckw-concurrence", lhs, rhs, "0:1,2");
}

// Residual of the CKW inequality; zero for W-class and bipartite states.
inline double three_tangle_pure(const StateVector& psi) {
  const MonogamyReport r = ckw_check(psi);
  double tau = r.slack;
  if (tau < 0 && tau >= -kHoldsTol) tau = 0;
  return tau;
}

// N^2(A:BC) - N^2(A,B) - N^2(A,C); defined for pure or mixed input.
inline double residual_pi(const DensityMatrix& s) {
  detail::require_qubits(s, 3);
  const double n_cut = negativity(s, PartitionSpec::single(0, 3));
  return n_cut * n_cut - detail::pair_measure_squared(s, 0, 1, PairMeasure::Negativity) -
         detail::pair_measure_squared(s, 0, 2, PairMeasure::Negativity);
}

inline double residual_pi(const StateVector& psi) { return residual_pi(DensityMatrix::pure(psi)); }

// Pairwise-sum monogamy for one focus qubit of a pure n-qubit state:
// sum_j m^2(focus, j) <= m^2(focus : rest).
inline MonogamyReport monogamy_qubitwise(const StateVector& psi, int focus, PairMeasure m) {
  const int n = psi.dims.count();
  if (n < 3) throw std::invalid_argument("monogamy_qubitwise: needs at least 3 qubits");
  if (focus < 0 || focus >= n) throw std::invalid_argument("monogamy_qubitwise: focus out of range");
  const DensityMatrix full = DensityMatrix::pure(psi);
  double lhs = 0;
  for (int j = 0; j < n; ++j)
    if (j != focus) lhs += detail::pair_measure_squared(full, focus, j, m);
  const double rhs = detail::rest_measure_squared(psi, focus, m);
  return make_report(std::string("pairwise-sum-") + pair_measure_name(m), lhs, rhs,
                     PartitionSpec::single(focus, n).to_string());
}

// Block variant: the partners of the focus are singletons plus one block E of
// any size; the E term is evaluated on the reduced state over {focus} + E
// across the cut focus : E.
inline MonogamyReport monogamy_block(const StateVector& psi, int focus, std::vector<int> e_block,
                                     PairMeasure m) {
  const int n = psi.dims.count();
  if (n < 3) throw std::invalid_argument("monogamy_block: needs at least 3 qubits");
  if (focus < 0 || focus >= n) throw std::invalid_argument("monogamy_block: focus out of range");
  if (m == PairMeasure::Concurrence)
    throw std::invalid_argument("monogamy_block: block terms need a mixed-state measure (negativity or realignment)");
  std::sort(e_block.begin(), e_block.end());
  if (e_block.empty() || std::unique(e_block.begin(), e_block.end()) != e_block.end())
    throw std::invalid_argument("monogamy_block: malformed block");
  for (int k : e_block)
    if (k < 0 || k >= n || k == focus) throw std::invalid_argument("monogamy_block: malformed block");

  std::vector<int> singletons;
  for (int j = 0; j < n; ++j)
    if (j != focus && !std::binary_search(e_block.begin(), e_block.end(), j)) singletons.push_back(j);

  const DensityMatrix full = DensityMatrix::pure(psi);
  double lhs = 0;
  for (int j : singletons) lhs += detail::pair_measure_squared(full, focus, j, m);
  {
    std::vector<int> keep = e_block;
    keep.push_back(focus);
    const auto rc = detail::reduce_and_cut(full, keep, {focus});
    lhs += detail::squared_measure(rc.state, rc.cut, m);
  }
  const double rhs = detail::rest_measure_squared(psi, focus, m);
  std::ostringstream cut;
  cut << "focus " << focus << " | singletons " << detail::join(singletons) << " | block "
      << detail::join(e_block);
  return make_report(std::string("block-sum-") + pair_measure_name(m), lhs, rhs, cut.str());
}

// Fully general blocking: the first block plays the focus role (it may hold
// several qubits); every other block contributes one term on the reduced
// state across focus : block.  Reported for exploration; nothing beyond the
// singletons-plus-one-block shape is asserted as an invariant anywhere.
inline MonogamyReport monogamy_blocking_general(const StateVector& psi,
                                                const std::vector<std::vector<int>>& blocks,
                                                PairMeasure m) {
  const int n = psi.dims.count();
  if (blocks.size() < 2) throw std::invalid_argument("blocking: needs at least two blocks");
  if (m == PairMeasure::Concurrence)
    throw std::invalid_argument("blocking: block terms need a mixed-state measure (negativity or realignment)");
  std::vector<char> seen(static_cast<std::size_t>(n), 0);
  for (const auto& b : blocks) {
    if (b.empty()) throw std::invalid_argument("blocking: empty block");
    for (int k : b) {
      if (k < 0 || k >= n || seen[static_cast<std::size_t>(k)])
        throw std::invalid_argument("blocking: malformed partition");
      seen[static_cast<std::size_t>(k)] = 1;
    }
  }
  for (char s : seen)
    if (!s) throw std::invalid_argument("blocking: partition must cover all qubits");

  const std::vector<int>& fblock = blocks.front();
  const DensityMatrix full = DensityMatrix::pure(psi);
  double lhs = 0;
  for (std::size_t j = 1; j < blocks.size(); ++j) {
    std::vector<int> keep = fblock;
    keep.insert(keep.end(), blocks[j].begin(), blocks[j].end());
    const auto rc = detail::reduce_and_cut(full, keep, fblock);
    lhs += detail::squared_measure(rc.state, rc.cut, m);
  }
  PartitionSpec rest_cut;
  rest_cut.left = fblock;
  for (int k = 0; k < n; ++k)
    if (std::find(fblock.begin(), fblock.end(), k) == fblock.end()) rest_cut.right.push_back(k);
  const double rhs = detail::squared_measure(full, rest_cut, m);
  std::ostringstream cut;
  for (std::size_t j = 0; j < blocks.size(); ++j) {
    if (j) cut << '|';
    cut << detail::join(blocks[j]);
  }
  return make_report(std::string("blocking-sum-") + pair_measure_name(m), lhs, rhs, cut.str());
}

// Caps on the pair measures of qubits (0,1) of a three-qubit state in terms
// of the entanglement across the 2:(0,1) cut:
//   m(0,1) <= (1 + sqrt(1 - 4 m^2(2:01))) / 4.
// tau_N / tau_R are the slacks of these caps.
struct PairCapResult {
  MonogamyReport negativity_report;
  MonogamyReport realignment_report;
  double tau_n = 0;
  double tau_r = 0;
};

inline PairCapResult pair_cap_bounds(const DensityMatrix& s) {
  detail::require_qubits(s, 3);
  const PartitionSpec cut_c = PartitionSpec({2}, {0, 1});
  const auto pair01 = detail::reduce_and_cut(s, {0, 1}, {0});

  const auto cap = [](double cut_value) {
    const double rad = detail::clip_radicand(1.0 - 4.0 * cut_value * cut_value, 1e-9);
    return (1.0 + std::sqrt(rad)) / 4.0;
  };

  PairCapResult out;
  const double n_pair = negativity(pair01.state, pair01.cut);
  const double n_cut = negativity(s, cut_c);
  out.negativity_report =
      make_report("pair-cap-negativity", n_pair, cap(n_cut), "pair 0,1 | cut 2:0,1");
  const double r_pair = realignment_measure(pair01.state, pair01.cut);
  const double r_cut = realignment_measure(s, cut_c);
  out.realignment_report =
      make_report("pair-cap-realignment", r_pair, cap(r_cut), "pair 0,1 | cut 2:0,1");
  out.tau_n = out.negativity_report.slack;
  out.tau_r = out.realignment_report.slack;
  return out;
}

inline PairCapResult pair_cap_bounds(const StateVector& psi) {
  return pair_cap_bounds(DensityMatrix::pure(psi));
}

// Residual quantities of a three-qubit state in one record.
struct ResidualRecord {
  std::optional<double> tau_ckw;  // pure input only
  double pi_negativity = 0;
  double tau_n = 0;
  double tau_r = 0;
};

inline ResidualRecord residual_record(const DensityMatrix& s) {
  ResidualRecord out;
  out.pi_negativity = residual_pi(s);
  const auto caps = pair_cap_bounds(s);
  out.tau_n = caps.tau_n;
  out.tau_r = caps.tau_r;
  return out;
}

inline ResidualRecord residual_record(const StateVector& psi) {
  ResidualRecord out = residual_record(DensityMatrix::pure(psi));
  out.tau_ckw = three_tangle_pure(psi);
  return out;
}

// tau_N / tau_R of the W/GHZ mixture family over a parameter grid.
struct SweepPoint {
  double p = 0;
  double tau_n = 0;
  double tau_r = 0;
};

inline std::vector<SweepPoint> tau_sweep(const std::vector<double>& p_grid) {
  std::vector<SweepPoint> out;
  out.reserve(p_grid.size());
  for (double p : p_grid) {
    if (!(p >= 0.0 && p <= 1.0)) throw std::invalid_argument("tau_sweep: grid value outside [0,1]");
    const auto caps = pair_cap_bounds(ghz_w_mixture(p));
    out.push_back({p, caps.tau_n, caps.tau_r});
  }
  return out;
}

// ---------------------------------------------------------------------------
// SLOCC classification of pure three-qubit states.

enum class SloccClass { ProductABC, BiproductA, BiproductB, BiproductC, W, GHZ };

inline const char* slocc_label(SloccClass c) {
  switch (c) {
    case SloccClass::ProductABC: return "A-B-C";
    case SloccClass::BiproductA: return "A-BC";
    case SloccClass::BiproductB: return "B-AC";
    case SloccClass::BiproductC: return "C-AB";
    case SloccClass::W: return "W";
    case SloccClass::GHZ: return "GHZ";
  }
  return "?";
}

struct SloccReport {
  SloccClass cls = SloccClass::ProductABC;
  std::array<int, 3> ranks{1, 1, 1};  // ranks of the single-qubit reductions
  double tangle = 0;
  bool borderline = false;  // GHZ label with a tangle barely above threshold
};

inline constexpr double kRankTol = 1e-9;
inline constexpr double kTangleThreshold = 1e-6;
inline constexpr double kTangleBorderline = 1e-4;

inline SloccReport classify_slocc(const StateVector& psi) {
  detail::require_qubits(psi, 3);
  const DensityMatrix full = DensityMatrix::pure(psi);
  SloccReport out;
  for (int q = 0; q < 3; ++q) {
    const Mat red = partial_trace(full.rho, full.dims, {q});
    int rank = 0;
    for (double e : hermitian_eigenvalues(red))
      if (e > kRankTol) ++rank;
    out.ranks[static_cast<std::size_t>(q)] = rank;
  }
  out.tangle = three_tangle_pure(psi);
  const int pure_parties = static_cast<int>(std::count(out.ranks.begin(), out.ranks.end(), 1));
  if (pure_parties >= 2) {
    out.cls = SloccClass::ProductABC;
  } else if (pure_parties == 1) {
    if (out.ranks[0] == 1) out.cls = SloccClass::BiproductA;
    else if (out.ranks[1] == 1) out.cls = SloccClass::BiproductB;
    else out.cls = SloccClass::BiproductC;
  } else if (out.tangle > kTangleThreshold) {
    out.cls = SloccClass::GHZ;
    out.borderline = out.tangle <= kTangleBorderline;
  } else {
    out.cls = SloccClass::W;
  }
  return out;
}

// ---------------------------------------------------------------------------
// Strictness sampling campaign: Haar-random pure states, every focus, every
// admissible singletons-plus-one-block partition of the partners (block sizes
// 1 .. n-2; using all partners as the block would make both sides identical).

struct BlockingStats {
  std::string blocking;
  std::string measure;
  long evaluations = 0;
  long violations = 0;   // slack < -kHoldsTol
  long non_strict = 0;   // slack <= kStrictTol
  long non_strict_qualifying_pairwise = 0;
  long non_strict_qualifying_cutwise = 0;
  double min_slack = std::numeric_limits<double>::infinity();
};

struct CampaignSummary {
  int n_qubits = 0;
  long samples = 0;
  std::uint64_t seed = 0;
  long evaluations = 0;
  long violations = 0;
  long non_strict = 0;
  long non_strict_qualifying_pairwise = 0;
  long non_strict_qualifying_cutwise = 0;
  long qualifying_pairwise = 0;  // (sample, focus) pairs: >= 2 partners with pair negativity > threshold
  long qualifying_cutwise = 0;   // focus-vs-rest negativity > threshold and >= 2 non-product partners
  double min_slack = std::numeric_limits<double>::infinity();
  std::string min_slack_blocking;
  std::string min_slack_measure;
  long min_slack_sample = -1;
  std::vector<BlockingStats> blockings;
};

inline constexpr double kQualifyTol = 1e-7;

namespace detail {

struct BlockingChoice {
  int focus;
  std::vector<int> e_block;
  std::string description;
};

inline std::vector<BlockingChoice> enumerate_blockings(int n) {
  std::vector<BlockingChoice> out;
  for (int focus = 0; focus < n; ++focus) {
    std::vector<int> partners;
    for (int j = 0; j < n; ++j)
      if (j != focus) partners.push_back(j);
    const int np = static_cast<int>(partners.size());
    for (int size = 1; size <= n - 2; ++size) {
      for (unsigned mask = 0; mask < (1u << np); ++mask) {
        if (static_cast<int>(__builtin_popcount(mask)) != size) continue;
        BlockingChoice b;
        b.focus = focus;
        std::vector<int> singles;
        for (int i = 0; i < np; ++i)
          ((mask >> i) & 1u ? b.e_block : singles).push_back(partners[static_cast<std::size_t>(i)]);
        std::ostringstream os;
        os << "focus " << focus << " | singletons " << join(singles) << " | block " << join(b.e_block);
        b.description = os.str();
        out.push_back(std::move(b));
      }
    }
  }
  return out;
}

}  // namespace detail

inline CampaignSummary strictness_campaign(int n_qubits, long samples, std::uint64_t seed) {
  if (n_qubits < 3) throw std::invalid_argument("campaign: needs at least 3 qubits");
  if (samples < 0) throw std::invalid_argument("campaign: sample count must be nonnegative");

  CampaignSummary sum;
  sum.n_qubits = n_qubits;
  sum.samples = samples;
  sum.seed = seed;
  if (samples == 0) return sum;

  const auto blockings = detail::enumerate_blockings(n_qubits);
  const PairMeasure measures[2] = {PairMeasure::Negativity, PairMeasure::Realignment};
  for (const auto& b : blockings)
    for (PairMeasure m : measures) {
      BlockingStats st;
      st.blocking = b.description;
      st.measure = pair_measure_name(m);
      sum.blockings.push_back(std::move(st));
    }

  for (long i = 0; i < samples; ++i) {
    const StateVector psi = haar_random_pure(n_qubits, derive_seed(seed, static_cast<std::uint64_t>(i)));
    const DensityMatrix full = DensityMatrix::pure(psi);

    // Qualification flags per focus.
    std::vector<char> qual_pair(static_cast<std::size_t>(n_qubits), 0);
    std::vector<char> qual_cut(static_cast<std::size_t>(n_qubits), 0);
    for (int focus = 0; focus < n_qubits; ++focus) {
      int entangled_partners = 0;
      int nonproduct_partners = 0;
      const Mat rho_f = partial_trace(full.rho, full.dims, {focus});
      for (int j = 0; j < n_qubits; ++j) {
        if (j == focus) continue;
        const auto rc = detail::reduce_and_cut(full, {focus, j}, {focus});
        if (negativity(rc.state, rc.cut) > kQualifyTol) ++entangled_partners;
        const Mat rho_j = partial_trace(full.rho, full.dims, {j});
        const Mat prod = (focus < j) ? kron(rho_f, rho_j) : kron(rho_j, rho_f);
        if (max_abs_diff(rc.state.rho, prod) > kQualifyTol) ++nonproduct_partners;
      }
      const double n_rest = negativity(psi, PartitionSpec::single(focus, n_qubits));
      qual_pair[static_cast<std::size_t>(focus)] = entangled_partners >= 2;
      qual_cut[static_cast<std::size_t>(focus)] = (n_rest > kQualifyTol) && nonproduct_partners >= 2;
      if (qual_pair[static_cast<std::size_t>(focus)]) ++sum.qualifying_pairwise;
      if (qual_cut[static_cast<std::size_t>(focus)]) ++sum.qualifying_cutwise;
    }

    std::size_t row = 0;
    for (const auto& b : blockings) {
      for (PairMeasure m : measures) {
        const MonogamyReport rep = monogamy_block(psi, b.focus, b.e_block, m);
        BlockingStats& st = sum.blockings[row++];
        ++st.evaluations;
        ++sum.evaluations;
        if (rep.slack < st.min_slack) st.min_slack = rep.slack;
        if (rep.slack < sum.min_slack) {
          sum.min_slack = rep.slack;
          sum.min_slack_blocking = b.description;
          sum.min_slack_measure = pair_measure_name(m);
          sum.min_slack_sample = i;
        }
        if (!rep.holds) {
          ++st.violations;
          ++sum.violations;
        }
        if (!rep.strict) {
          ++st.non_strict;
          ++sum.non_strict;
          if (qual_pair[static_cast<std::size_t>(b.focus)]) {
            ++st.non_strict_qualifying_pairwise;
            ++sum.non_strict_qualifying_pairwise;
          }
          if (qual_cut[static_cast<std::size_t>(b.focus)]) {
            ++st.non_strict_qualifying_cutwise;
            ++sum.non_strict_qualifying_cutwise;
          }
        }
      }
    }
  }
  return sum;
}

// ---------------------------------------------------------------------------
// Heuristic convex-roof upper bound: the minimum ensemble average of a pure
// measure over randomly sampled decompositions of rho (isometry mixing of
// the eigenensemble).  An upper bound by construction; never certified tight.

enum class RoofMeasure { NegativitySquared, ConcurrenceSquared };

inline double convex_roof_upper_bound(const DensityMatrix& s, const PartitionSpec& cut,
                                      RoofMeasure measure, long trials, std::uint64_t seed) {
  if (trials < 1) throw std::invalid_argument("convex_roof_upper_bound: trials must be >= 1");
  cut.validate(s.dims.count());

  Eigen::SelfAdjointEigenSolver<Mat> es(s.rho);
  if (es.info() != Eigen::Success) throw std::runtime_error("convex_roof_upper_bound: eigensolver failed");
  std::vector<double> mu;
  std::vector<Vec> basis;
  for (long i = es.eigenvalues().size() - 1; i >= 0; --i) {
    if (es.eigenvalues()(i) > 1e-12) {
      mu.push_back(es.eigenvalues()(i));
      basis.push_back(es.eigenvectors().col(i));
    }
  }
  const long r = static_cast<long>(mu.size());
  if (r == 0) throw std::runtime_error("convex_roof_upper_bound: zero operator");

  const auto pure_value = [&](const Vec& v) {
    StateVector psi(s.dims, v / v.norm());
    if (measure == RoofMeasure::ConcurrenceSquared) return pure_concurrence_squared(psi, cut);
    const double n = negativity(psi, cut);
    return n * n;
  };

  const auto ensemble_average = [&](const Mat& isometry) {
    // Row j of the isometry defines the unnormalized member
    // sum_i V(j,i) sqrt(mu_i) |e_i>.
    double avg = 0;
    for (long j = 0; j < isometry.rows(); ++j) {
      Vec v = Vec::Zero(s.dims.total());
      for (long i = 0; i < r; ++i) v += isometry(j, i) * std::sqrt(mu[static_cast<std::size_t>(i)]) * basis[static_cast<std::size_t>(i)];
      const double p = v.squaredNorm();
      if (p < 1e-14) continue;
      avg += p * pure_value(v);
    }
    return avg;
  };

  double best = ensemble_average(Mat::Identity(r, r));
  for (long t = 1; t < trials; ++t) {
    const long m = r + (t % (r + 1));
    Prng rng(derive_seed(seed, static_cast<std::uint64_t>(t)));
    const Mat u = haar_unitary(m, rng);
    best = std::min(best, ensemble_average(u.leftCols(r)));
  }
  return best;
}

}  // namespace entmono
