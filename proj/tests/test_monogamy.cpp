#include "entmono/monogamy.hpp"

#include "test_support.hpp"

#include <catch2/catch_amalgamated.hpp>

#include <cmath>

using namespace entmono;
using testsup::bell;

namespace {

// Bell pair on the first two qubits, |0> on the third.
StateVector bell_times_zero() {
  const double h = 1.0 / std::sqrt(2.0);
  Vec v = Vec::Zero(8);
  v(0) = cx(h, 0);  // |000>
  v(6) = cx(h, 0);  // |110>
  return StateVector(DimSpec::qubits(3), std::move(v));
}

// |0> on the first qubit, Bell pair on the last two.
StateVector zero_times_bell() {
  const double h = 1.0 / std::sqrt(2.0);
  Vec v = Vec::Zero(8);
  v(0) = cx(h, 0);  // |000>
  v(3) = cx(h, 0);  // |011>
  return StateVector(DimSpec::qubits(3), std::move(v));
}

// a|000> + b|111> with a tiny three-way residual.
StateVector near_product_ghz(double b) {
  Vec v = Vec::Zero(8);
  v(0) = cx(std::sqrt(1.0 - b * b), 0);
  v(7) = cx(b, 0);
  return StateVector(DimSpec::qubits(3), std::move(v));
}

}  // namespace

TEST_CASE("ckw check on the reference states") {
  const MonogamyReport g = ckw_check(ghz(3));
  REQUIRE(g.lhs < 1e-12);
  REQUIRE(std::abs(g.rhs - 1.0) < 1e-12);
  REQUIRE(g.holds);
  REQUIRE(g.strict);

  const MonogamyReport w = ckw_check(w_state(3));
  REQUIRE(std::abs(w.lhs - 8.0 / 9.0) < 1e-9);
  REQUIRE(std::abs(w.slack) < 1e-9);  // saturation
  REQUIRE(w.holds);
  REQUIRE_FALSE(w.strict);

  const MonogamyReport p = ckw_check(testsup::basis_state(DimSpec::qubits(3), 6));
  REQUIRE(p.lhs < 1e-12);
  REQUIRE(p.rhs < 1e-12);
  REQUIRE(p.holds);
}

TEST_CASE("ckw check holds on random pure three-qubit states") {
  for (int i = 0; i < 150; ++i) {
    const MonogamyReport r = ckw_check(haar_random_pure(3, derive_seed(111, i)));
    REQUIRE(r.holds);
  }
}

TEST_CASE("three tangle of the reference states") {
  REQUIRE(std::abs(three_tangle_pure(ghz(3)) - 1.0) < 1e-9);
  REQUIRE(std::abs(three_tangle_pure(w_state(3))) < 1e-9);
  REQUIRE(std::abs(three_tangle_pure(zero_times_bell())) < 1e-9);
  REQUIRE(std::abs(three_tangle_pure(bell_times_zero())) < 1e-9);
}

TEST_CASE("pi residual of the reference states") {
  REQUIRE(std::abs(residual_pi(ghz(3)) - 0.25) < 1e-12);

  // reference value computed with an independent implementation
  const double pi_w = 0.137340886388866;
  REQUIRE(std::abs(residual_pi(w_state(3)) - pi_w) < 1e-12);
  // consistency: pi = N^2(A:BC) - 2 N_pair^2 with N_pair = (sqrt(5)-1)/6
  const double n_pair = (std::sqrt(5.0) - 1.0) / 6.0;
  REQUIRE(std::abs(pi_w - (2.0 / 9.0 - 2.0 * n_pair * n_pair)) < 1e-12);

  REQUIRE(std::abs(residual_pi(testsup::basis_state(DimSpec::qubits(3), 0))) < 1e-12);
}

TEST_CASE("pi residual is nonnegative on random pure three-qubit states") {
  for (int i = 0; i < 200; ++i)
    REQUIRE(residual_pi(haar_random_pure(3, derive_seed(222, i))) >= -1e-9);
}

TEST_CASE("pairwise-sum monogamy on reference states") {
  // reference values computed with an independent implementation
  const MonogamyReport w4 = monogamy_qubitwise(w_state(4), 0, PairMeasure::Negativity);
  REQUIRE(std::abs(w4.lhs - 0.032169914110089) < 1e-12);
  REQUIRE(std::abs(w4.rhs - 3.0 / 16.0) < 1e-12);
  REQUIRE(w4.holds);
  REQUIRE(w4.strict);

  for (int n : {3, 4, 5}) {
    for (PairMeasure m :
         {PairMeasure::Concurrence, PairMeasure::Negativity, PairMeasure::Realignment}) {
      const MonogamyReport r = monogamy_qubitwise(ghz(n), 0, m);
      REQUIRE(r.lhs < 1e-12);
      const double expect = m == PairMeasure::Concurrence ? 1.0 : 0.25;
      REQUIRE(std::abs(r.rhs - expect) < 1e-9);
    }
  }

  const MonogamyReport p =
      monogamy_qubitwise(testsup::basis_state(DimSpec::qubits(3), 2), 0, PairMeasure::Negativity);
  REQUIRE(p.lhs < 1e-12);
  REQUIRE(p.rhs < 1e-12);
  REQUIRE(p.holds);

  REQUIRE_THROWS_AS(monogamy_qubitwise(bell(0), 0, PairMeasure::Negativity),
                    std::invalid_argument);
  REQUIRE_THROWS_AS(monogamy_qubitwise(ghz(3), 3, PairMeasure::Negativity),
                    std::invalid_argument);
}

TEST_CASE("pairwise-sum monogamy holds on random states for every focus and measure") {
  for (int n : {3, 4}) {
    for (int i = 0; i < 30; ++i) {
      const StateVector psi = haar_random_pure(n, derive_seed(333 + n, i));
      for (int f = 0; f < n; ++f)
        for (PairMeasure m :
             {PairMeasure::Concurrence, PairMeasure::Negativity, PairMeasure::Realignment})
          REQUIRE(monogamy_qubitwise(psi, f, m).holds);
    }
  }
}

TEST_CASE("block monogamy with a multi-qubit tail block") {
  const MonogamyReport g = monogamy_block(ghz(4), 0, {2, 3}, PairMeasure::Negativity);
  REQUIRE(g.lhs < 1e-12);  // all reduced blocks of GHZ are classically correlated
  REQUIRE(std::abs(g.rhs - 0.25) < 1e-9);
  REQUIRE(g.holds);

  // reference values computed with an independent implementation
  const MonogamyReport w5n = monogamy_block(w_state(5), 0, {3, 4}, PairMeasure::Negativity);
  REQUIRE(std::abs(w5n.lhs - 0.028769782338811) < 1e-12);
  REQUIRE(std::abs(w5n.rhs - 0.16) < 1e-12);
  REQUIRE(std::abs(w5n.slack - 0.131230217661189) < 1e-12);
  REQUIRE(w5n.strict);

  const MonogamyReport w5r = monogamy_block(w_state(5), 0, {3, 4}, PairMeasure::Realignment);
  REQUIRE(std::abs(w5r.lhs - 0.027896787467015) < 1e-12);
  REQUIRE(std::abs(w5r.slack - 0.132103212532985) < 1e-12);
  REQUIRE(w5r.strict);

  const MonogamyReport p =
      monogamy_block(testsup::basis_state(DimSpec::qubits(4), 9), 0, {2, 3},
                     PairMeasure::Negativity);
  REQUIRE(p.lhs < 1e-12);
  REQUIRE(p.rhs < 1e-12);
  REQUIRE(p.holds);

  REQUIRE_THROWS_AS(monogamy_block(ghz(4), 0, {0, 2}, PairMeasure::Negativity),
                    std::invalid_argument);  // focus inside the block
  REQUIRE_THROWS_AS(monogamy_block(ghz(4), 0, {}, PairMeasure::Negativity),
                    std::invalid_argument);  // empty block
  REQUIRE_THROWS_AS(monogamy_block(ghz(4), 0, {2, 3}, PairMeasure::Concurrence),
                    std::invalid_argument);  // no mixed-state concurrence beyond two qubits
}

TEST_CASE("block monogamy holds on random four-qubit states for every blocking") {
  for (int i = 0; i < 25; ++i) {
    const StateVector psi = haar_random_pure(4, derive_seed(444, i));
    for (int f = 0; f < 4; ++f) {
      std::vector<int> partners;
      for (int j = 0; j < 4; ++j)
        if (j != f) partners.push_back(j);
      const std::vector<std::vector<int>> e_choices = {
          {partners[0]},              {partners[1]},              {partners[2]},
          {partners[0], partners[1]}, {partners[0], partners[2]}, {partners[1], partners[2]}};
      for (const auto& e : e_choices)
        for (PairMeasure m : {PairMeasure::Negativity, PairMeasure::Realignment})
          REQUIRE(monogamy_block(psi, f, e, m).holds);
    }
  }
}

TEST_CASE("general blocking evaluator agrees with the focus-and-block form") {
  const StateVector psi = haar_random_pure(4, 555);
  const MonogamyReport a = monogamy_block(psi, 0, {2, 3}, PairMeasure::Negativity);
  const MonogamyReport b =
      monogamy_blocking_general(psi, {{0}, {1}, {2, 3}}, PairMeasure::Negativity);
  REQUIRE(std::abs(a.lhs - b.lhs) < 1e-12);
  REQUIRE(std::abs(a.rhs - b.rhs) < 1e-12);
}

TEST_CASE("pair caps on reference states") {
  const PairCapResult g = pair_cap_bounds(DensityMatrix::pure(ghz(3)));
  REQUIRE(g.negativity_report.lhs < 1e-12);  // GHZ reduced pair is unentangled
  REQUIRE(g.negativity_report.rhs >= 0.25 - 1e-9);
  REQUIRE(g.negativity_report.holds);
  REQUIRE(g.negativity_report.strict);
  REQUIRE(std::abs(g.tau_n - 0.25) < 1e-7);
  REQUIRE(std::abs(g.tau_r - 0.25) < 1e-7);

  // Bell pair decoupled from the third qubit saturates the cap
  const PairCapResult b = pair_cap_bounds(bell_times_zero());
  REQUIRE(std::abs(b.negativity_report.slack) < 1e-9);
  REQUIRE(std::abs(b.realignment_report.slack) < 1e-9);
  REQUIRE(b.negativity_report.holds);

  // reference values computed with an independent implementation
  const PairCapResult m = pair_cap_bounds(ghz_w_mixture(0.5));
  REQUIRE(std::abs(m.tau_n - 0.441261992012862) < 1e-9);
  REQUIRE(std::abs(m.tau_r - 0.479746404517007) < 1e-9);
  REQUIRE(m.negativity_report.holds);
  REQUIRE(m.realignment_report.holds);
}

TEST_CASE("pair caps survive local unitaries on the saturating state") {
  Prng rng(666);
  const DensityMatrix base = DensityMatrix::pure(bell_times_zero());
  for (int i = 0; i < 10; ++i) {
    const Mat u = kron_all({haar_unitary(2, rng), haar_unitary(2, rng), haar_unitary(2, rng)});
    const DensityMatrix t(base.dims, u * base.rho * u.adjoint());
    const PairCapResult r = pair_cap_bounds(t);
    REQUIRE(std::abs(r.negativity_report.slack) < 1e-7);
    REQUIRE(r.negativity_report.holds);
    REQUIRE(r.realignment_report.holds);
  }
}

TEST_CASE("pair caps hold on random mixed three-qubit states") {
  for (int i = 0; i < 100; ++i) {
    const DensityMatrix s = traced_haar_mixed(3, 1 + i % 3, derive_seed(777, i));
    const PairCapResult r = pair_cap_bounds(s);
    REQUIRE(r.negativity_report.holds);
    REQUIRE(r.realignment_report.holds);
  }
}

TEST_CASE("tau sweep endpoints and curve ordering") {
  const auto pts = tau_sweep({0.0, 0.25, 0.5, 0.75, 1.0});
  REQUIRE(pts.size() == 5);
  REQUIRE(std::abs(pts.front().tau_n - 0.25) < 1e-7);
  REQUIRE(std::abs(pts.front().tau_r - 0.25) < 1e-7);
  const double w_value = (3.0 - std::sqrt(5.0)) / 6.0;
  REQUIRE(std::abs(pts.back().tau_n - w_value) < 1e-7);
  REQUIRE(std::abs(pts.back().tau_r - w_value) < 1e-7);
  for (const auto& pt : pts) {
    REQUIRE(pt.tau_n >= 0.0);
    REQUIRE(pt.tau_r >= 0.0);
    REQUIRE(pt.tau_n <= pt.tau_r + 1e-9);
  }
  REQUIRE_THROWS_AS(tau_sweep({1.5}), std::invalid_argument);
}

TEST_CASE("slocc classification of the six reference classes") {
  REQUIRE(classify_slocc(ghz(3)).cls == SloccClass::GHZ);
  REQUIRE(classify_slocc(w_state(3)).cls == SloccClass::W);
  REQUIRE(classify_slocc(zero_times_bell()).cls == SloccClass::BiproductA);
  REQUIRE(classify_slocc(bell_times_zero()).cls == SloccClass::BiproductC);
  REQUIRE(classify_slocc(testsup::basis_state(DimSpec::qubits(3), 5)).cls ==
          SloccClass::ProductABC);

  // B factored out: Bell between qubits 0 and 2
  const double h = 1.0 / std::sqrt(2.0);
  Vec v = Vec::Zero(8);
  v(0) = cx(h, 0);  // |000>
  v(5) = cx(h, 0);  // |101>
  REQUIRE(classify_slocc(StateVector(DimSpec::qubits(3), std::move(v))).cls ==
          SloccClass::BiproductB);

  REQUIRE(std::string(slocc_label(SloccClass::BiproductA)) == "A-BC");
  REQUIRE(std::string(slocc_label(SloccClass::GHZ)) == "GHZ");
}

TEST_CASE("slocc labels are invariant under local unitaries") {
  Prng rng(888);
  const StateVector states[3] = {ghz(3), w_state(3), zero_times_bell()};
  const SloccClass expect[3] = {SloccClass::GHZ, SloccClass::W, SloccClass::BiproductA};
  for (int trial = 0; trial < 100; ++trial) {
    const int k = trial % 3;
    const Mat u = kron_all({haar_unitary(2, rng), haar_unitary(2, rng), haar_unitary(2, rng)});
    const Vec amps = u * states[k].amps;
    REQUIRE(classify_slocc(StateVector(DimSpec::qubits(3), amps)).cls == expect[k]);
  }
}

TEST_CASE("slocc borderline tangle raises the warning flag") {
  const SloccReport r = classify_slocc(near_product_ghz(std::sqrt(2.5e-6)));
  // tangle ~ 1e-5: GHZ class, flagged as close to the threshold
  REQUIRE(r.cls == SloccClass::GHZ);
  REQUIRE(r.borderline);

  const SloccReport clean = classify_slocc(ghz(3));
  REQUIRE_FALSE(clean.borderline);
}

TEST_CASE("residual record carries the tangle only for pure input") {
  const ResidualRecord pure = residual_record(ghz(3));
  REQUIRE(pure.tau_ckw.has_value());
  REQUIRE(std::abs(*pure.tau_ckw - 1.0) < 1e-9);
  REQUIRE(std::abs(pure.pi_negativity - 0.25) < 1e-12);
  REQUIRE(std::abs(pure.tau_n - 0.25) < 1e-7);

  const ResidualRecord mixed = residual_record(ghz_w_mixture(0.3));
  REQUIRE_FALSE(mixed.tau_ckw.has_value());
  REQUIRE(mixed.tau_n >= 0.0);
}

TEST_CASE("monogamy reports encode holds and strict consistently") {
  const MonogamyReport strict = make_report("x", 0.0, 1.0, "c");
  REQUIRE(strict.holds);
  REQUIRE(strict.strict);
  REQUIRE(std::abs(strict.slack - 1.0) < 1e-15);

  const MonogamyReport equal = make_report("x", 1.0, 1.0, "c");
  REQUIRE(equal.holds);
  REQUIRE_FALSE(equal.strict);

  const MonogamyReport broken = make_report("x", 1.0, 0.5, "c");
  REQUIRE_FALSE(broken.holds);
  REQUIRE(broken.slack < 0);
}

TEST_CASE("strictness campaign determinism and shape") {
  const CampaignSummary empty = strictness_campaign(3, 0, 1);
  REQUIRE(empty.evaluations == 0);
  REQUIRE(empty.violations == 0);
  REQUIRE(empty.blockings.empty());

  const CampaignSummary a = strictness_campaign(3, 40, 2024);
  const CampaignSummary b = strictness_campaign(3, 40, 2024);
  REQUIRE(a.min_slack == b.min_slack);
  REQUIRE(a.min_slack_blocking == b.min_slack_blocking);
  REQUIRE(a.qualifying_pairwise == b.qualifying_pairwise);

  // 3 foci x 2 single-partner block choices x 2 measures
  REQUIRE(a.blockings.size() == 12);
  REQUIRE(a.evaluations == 12 * 40);
  REQUIRE(a.violations == 0);
  REQUIRE(a.min_slack > 0.0);
  // Haar-random states almost surely qualify at every focus
  REQUIRE(a.qualifying_pairwise == 3 * 40);
  for (const auto& st : a.blockings) {
    REQUIRE(st.evaluations == 40);
    REQUIRE(st.violations == 0);
  }

  const CampaignSummary c = strictness_campaign(3, 40, 2025);
  REQUIRE(c.min_slack != a.min_slack);
}

TEST_CASE("strictness campaign covers all two-block choices at four qubits") {
  const CampaignSummary s = strictness_campaign(4, 10, 31);
  // 4 foci x (3 singleton blocks + 3 two-qubit blocks) x 2 measures
  REQUIRE(s.blockings.size() == 48);
  REQUIRE(s.violations == 0);
  REQUIRE(s.min_slack > 0.0);
}

TEST_CASE("convex roof bound is exact on pure states and zero on separable mixtures") {
  const DensityMatrix pure_ghz = DensityMatrix::pure(ghz(3));
  const PartitionSpec cut = PartitionSpec::single(0, 3);
  const double exact = 0.25;  // squared negativity of GHZ across 0:12
  for (long trials : {1L, 5L, 50L}) {
    const double b = convex_roof_upper_bound(pure_ghz, cut, RoofMeasure::NegativitySquared,
                                             trials, 9);
    REQUIRE(std::abs(b - exact) < 1e-9);
  }

  // equal mixture of |00> and |11>: separable, eigenensemble already optimal
  Mat sep = Mat::Zero(4, 4);
  sep(0, 0) = 0.5;
  sep(3, 3) = 0.5;
  const DensityMatrix rho_sep(DimSpec::qubits(2), sep);
  const double b = convex_roof_upper_bound(rho_sep, PartitionSpec({0}, {1}),
                                           RoofMeasure::NegativitySquared, 20, 10);
  REQUIRE(b < 1e-12);

  REQUIRE_THROWS_AS(convex_roof_upper_bound(rho_sep, PartitionSpec({0}, {1}),
                                            RoofMeasure::NegativitySquared, 0, 1),
                    std::invalid_argument);
}

TEST_CASE("convex roof best-so-far bound never increases with more trials") {
  const DensityMatrix s = ghz_w_mixture(0.5);
  const PartitionSpec cut = PartitionSpec::single(0, 3);
  const double b3 = convex_roof_upper_bound(s, cut, RoofMeasure::NegativitySquared, 3, 77);
  const double b30 = convex_roof_upper_bound(s, cut, RoofMeasure::NegativitySquared, 30, 77);
  const double b120 = convex_roof_upper_bound(s, cut, RoofMeasure::NegativitySquared, 120, 77);
  REQUIRE(b30 <= b3 + 1e-12);
  REQUIRE(b120 <= b30 + 1e-12);

  const double c = convex_roof_upper_bound(s, cut, RoofMeasure::ConcurrenceSquared, 30, 77);
  REQUIRE(c >= 0.0);
}
