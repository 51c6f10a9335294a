// Command-line front end: state ingestion, measure evaluation, monogamy
// reports, the built-in class table, tau sweeps, strictness campaigns, and
// correlation-data reports.
//
// Exit codes: 0 success, 2 input error, 3 I/O error, 4 non-physical data.

#include "entmono/blochlab.hpp"
#include "entmono/io.hpp"
#include "entmono/measures.hpp"
#include "entmono/monogamy.hpp"
#include "entmono/qmat.hpp"
#include "entmono/states.hpp"

#include <CLI11.hpp>

#include <cstdint>
#include <cstdlib>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

namespace {

using namespace entmono;

struct NonPhysicalError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Options {
  std::string input;
  std::string out;
  std::string cut;
  std::string blocks;
  std::uint64_t seed = 12345;
  long samples = 100;
  double step = 0.01;
  double tolerance = kHoldsTol;
  int qubits = 3;
};

void emit(const std::string& text, const std::string& out_path) {
  if (out_path.empty()) {
    std::cout << text << "\n";
    return;
  }
  write_text_file(out_path, text + "\n");
}

void emit(const json& j, const std::string& out_path) { emit(j.dump(2), out_path); }

// Cut sides and blocks: "012" (one index per digit) or "0,1,2".
std::vector<int> parse_index_group(const std::string& s) {
  std::vector<int> out;
  if (s.empty()) throw ParseError("cut/blocks: empty index group");
  if (s.find(',') != std::string::npos) {
    std::istringstream is(s);
    std::string tok;
    while (std::getline(is, tok, ',')) {
      try {
        std::size_t pos = 0;
        const int v = std::stoi(tok, &pos);
        if (pos != tok.size() || v < 0) throw std::invalid_argument(tok);
        out.push_back(v);
      } catch (const std::exception&) {
        throw ParseError("cut/blocks: bad index \"" + tok + "\"");
      }
    }
    return out;
  }
  for (char ch : s) {
    if (ch < '0' || ch > '9') throw ParseError(std::string("cut/blocks: bad index character '") + ch + "'");
    out.push_back(ch - '0');
  }
  return out;
}

PartitionSpec parse_cut(const std::string& s, int n) {
  const auto pos = s.find(':');
  if (pos == std::string::npos || pos == 0 || pos + 1 >= s.size())
    throw ParseError("cut: expected \"<left>:<right>\", e.g. 0:12");
  PartitionSpec cut(parse_index_group(s.substr(0, pos)), parse_index_group(s.substr(pos + 1)));
  try {
    cut.validate(n);
  } catch (const std::invalid_argument& e) {
    throw ParseError(std::string("cut: ") + e.what());
  }
  return cut;
}

std::vector<std::vector<int>> parse_blocks(const std::string& s, int n) {
  std::vector<std::vector<int>> blocks;
  std::istringstream is(s);
  std::string tok;
  while (std::getline(is, tok, '|')) blocks.push_back(parse_index_group(tok));
  if (blocks.size() < 2) throw ParseError("blocks: expected at least two '|'-separated groups, e.g. 0|1,2|3");
  std::vector<char> seen(static_cast<std::size_t>(n), 0);
  for (const auto& b : blocks)
    for (int k : b) {
      if (k < 0 || k >= n) throw ParseError("blocks: index out of range");
      if (seen[static_cast<std::size_t>(k)]) throw ParseError("blocks: index listed twice");
      seen[static_cast<std::size_t>(k)] = 1;
    }
  for (char c : seen)
    if (!c) throw ParseError("blocks: partition must cover all subsystems");
  return blocks;
}

json measure_cut_report(const AnyState& state, const PartitionSpec& cut) {
  const DensityMatrix rho = as_density(state);
  json row;
  row["cut"] = cut.to_string();
  row["negativity"] = negativity(rho, cut);
  row["realignment"] = realignment_measure(rho, cut);
  row["realignment_trace_norm"] = realignment_trace_norm(rho, cut);
  const bool two_qubits = rho.dims == DimSpec{2, 2};
  if (two_qubits) {
    row["concurrence"] = concurrence_wootters(rho);
  } else if (std::holds_alternative<StateVector>(state) && cut.left.size() == 1 &&
             rho.dims[cut.left[0]] == 2) {
    row["concurrence"] = concurrence_pure_cut(std::get<StateVector>(state), cut);
  }
  return row;
}

int cmd_measure(const Options& opt) {
  const AnyState state = load_state_file(opt.input);
  const int n = dims_of(state).count();

  json out;
  out["command"] = "measure";
  out["input"] = opt.input;
  out["seed"] = opt.seed;
  out["state"] = state_to_json(state);

  json cuts = json::array();
  if (!opt.cut.empty()) {
    cuts.push_back(measure_cut_report(state, parse_cut(opt.cut, n)));
  } else {
    if (n < 2) throw ParseError("measure: need at least two subsystems for a cut");
    for (int k = 0; k < n; ++k) cuts.push_back(measure_cut_report(state, PartitionSpec::single(k, n)));
  }
  out["cuts"] = std::move(cuts);

  if (!opt.blocks.empty()) {
    if (!std::holds_alternative<StateVector>(state))
      throw ParseError("blocks: blocking reports require a pure state");
    const auto blocks = parse_blocks(opt.blocks, n);
    const StateVector& psi = std::get<StateVector>(state);
    json reports = json::array();
    reports.push_back(report_to_json(monogamy_blocking_general(psi, blocks, PairMeasure::Negativity)));
    reports.push_back(report_to_json(monogamy_blocking_general(psi, blocks, PairMeasure::Realignment)));
    out["blockings"] = std::move(reports);
  }

  emit(out, opt.out);
  return 0;
}

int cmd_table1(const Options& opt) {
  struct Row {
    const char* name;
    StateVector psi;
  };
  const double s = 1.0 / std::sqrt(2.0);
  auto two_term = [&](int a, int b) {
    Vec v = Vec::Zero(8);
    v(a) = v(b) = cx(s, 0);
    return StateVector(DimSpec::qubits(3), std::move(v));
  };
  Vec product = Vec::Zero(8);
  product(0) = cx(1, 0);

  const std::vector<Row> rows = {
      {"A-B-C", StateVector(DimSpec::qubits(3), std::move(product))},
      {"A-BC", two_term(0, 3)},   // first qubit factored out, Bell pair behind it
      {"B-AC", two_term(0, 5)},   // middle qubit factored out
      {"C-AB", two_term(0, 6)},   // last qubit factored out
      {"W", w_state(3)},
      {"GHZ", ghz(3)},
  };

  auto marker = [](double v) { return v > 1e-6 ? ">0" : "0"; };

  json out;
  out["command"] = "table1";
  json jrows = json::array();
  for (const auto& row : rows) {
    const double tau = three_tangle_pure(row.psi);
    const double pi = residual_pi(row.psi);
    json r;
    r["class"] = row.name;
    r["tau"] = tau;
    r["pi"] = pi;
    r["tau_marker"] = marker(tau);
    r["pi_marker"] = marker(pi);
    r["classified_as"] = slocc_label(classify_slocc(row.psi).cls);
    jrows.push_back(std::move(r));
  }
  out["rows"] = std::move(jrows);
  emit(out, opt.out);
  return 0;
}

int cmd_sweep(const Options& opt) {
  if (!(opt.step > 0.0 && opt.step <= 1.0)) throw ParseError("sweep: --step must lie in (0, 1]");
  std::vector<double> grid;
  const long imax = static_cast<long>(std::floor(1.0 / opt.step + 1e-9));
  for (long i = 0; i <= imax; ++i) grid.push_back(std::min(1.0, static_cast<double>(i) * opt.step));
  if (grid.back() < 1.0 - 1e-9) grid.push_back(1.0);

  std::ostringstream csv;
  csv << "p,tau_N,tau_R";
  for (const auto& pt : tau_sweep(grid))
    csv << "\n" << sig12(pt.p) << "," << sig12(pt.tau_n) << "," << sig12(pt.tau_r);
  emit(csv.str(), opt.out);
  return 0;
}

int cmd_conjecture(const Options& opt) {
  if (opt.qubits < 3) throw ParseError("conjecture: --qubits must be at least 3");
  if (opt.samples < 0) throw ParseError("conjecture: --samples must be nonnegative");
  json out = campaign_to_json(strictness_campaign(opt.qubits, opt.samples, opt.seed));
  out["command"] = "conjecture";
  emit(out, opt.out);
  return 0;
}

int cmd_bloch(const Options& opt) {
  const CorrelationDecomposition d = load_correlation_file(opt.input);
  const Mat assembled = bloch_assemble(d);
  const auto eigs = hermitian_eigenvalues(assembled);
  const double min_eig = eigs.back();
  if (min_eig < -kEigClipTol)
    throw NonPhysicalError("assembled matrix is not positive semidefinite: min eigenvalue = " +
                           sig12(min_eig));
  const DensityMatrix rho(DimSpec{2, 2}, assembled);

  json out;
  out["command"] = "bloch";
  out["input"] = opt.input;
  out["n_a"] = {d.n_a(0), d.n_a(1), d.n_a(2)};
  out["n_b"] = {d.n_b(0), d.n_b(1), d.n_b(2)};
  {
    json c = json::array();
    for (int a = 0; a < 3; ++a) c.push_back({d.c(a, 0), d.c(a, 1), d.c(a, 2)});
    out["c"] = std::move(c);
  }
  out["min_eigenvalue"] = min_eig;

  const PartitionSpec cut({0}, {1});
  const double neg = negativity(rho, cut);
  const double rea = realignment_measure(rho, cut);
  const double con = concurrence_wootters(rho);
  out["measures"] = {{"concurrence", con}, {"negativity", neg}, {"realignment", rea}};
  out["verdict"] = (con > 1e-9 || neg > 1e-9 || rea > 1e-9) ? "entangled" : "no entanglement detected";

  const auto bounds = concurrence_bounds(rho);
  out["concurrence_bounds"] = {{"lower", bounds.lower},
                               {"upper", bounds.upper},
                               {"trace_m", bounds.trace_m},
                               {"s2_lambda", bounds.s2_lambda},
                               {"s2_eigenvalue_form", bounds.s2_eigenvalue_form},
                               {"lower_eigenvalue_form", bounds.lower_eigenvalue_form},
                               {"upper_eigenvalue_form", bounds.upper_eigenvalue_form},
                               {"c2_bracket_holds", bounds.c2_bracket_holds},
                               {"c1_eigenvalue_reading_holds", bounds.c1_eigenvalue_reading_holds}};

  const bool mixed_marginals = d.n_a.norm() < 1e-9 && d.n_b.norm() < 1e-9;
  out["closed_forms_applicable"] = mixed_marginals;
  if (mixed_marginals) {
    const auto dc = diagonalize_correlation(d.c);
    out["c_diagonal"] = {dc.diagonal(0), dc.diagonal(1), dc.diagonal(2)};
    const auto rcf = realignment_closed_form(d);
    const auto ncf = negativity_closed_form(d);
    out["closed_forms"] = {
        {"realignment_trace_norm", rcf.closed_form_trace_norm},
        {"realignment_measure", rcf.measure_from_closed_form},
        {"realignment_trace_norm_general", rcf.general_trace_norm},
        {"realignment_measure_general", rcf.general_measure},
        {"negativity_canonical", ncf.canonical},
        {"negativity_four_term_expression", ncf.four_term_expression},
        {"negativity_difference", ncf.difference},
    };
  } else {
    out["closed_forms"] = nullptr;
  }

  emit(out, opt.out);
  return 0;
}

int cmd_classify(const Options& opt) {
  const AnyState state = load_state_file(opt.input);
  if (!std::holds_alternative<StateVector>(state))
    throw ParseError("classify: requires a pure three-qubit state");
  const StateVector& psi = std::get<StateVector>(state);
  if (!(psi.dims == DimSpec::qubits(3)))
    throw ParseError("classify: requires a pure three-qubit state");

  const SloccReport rep = classify_slocc(psi);
  const ResidualRecord res = residual_record(psi);
  json out;
  out["command"] = "classify";
  out["input"] = opt.input;
  out["class"] = slocc_label(rep.cls);
  out["ranks"] = {rep.ranks[0], rep.ranks[1], rep.ranks[2]};
  out["tangle"] = rep.tangle;
  out["borderline_warning"] = rep.borderline;
  out["pi"] = res.pi_negativity;
  out["tau_N"] = res.tau_n;
  out["tau_R"] = res.tau_r;
  emit(out, opt.out);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"entanglement measures and sharing constraints for small multi-qubit states"};
  app.require_subcommand(1);

  Options opt;
  if (const char* env = std::getenv("ENTMONO_SEED")) {
    char* end = nullptr;
    const unsigned long long v = std::strtoull(env, &end, 10);
    if (end && *end == '\0') opt.seed = static_cast<std::uint64_t>(v);
  }

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--seed", opt.seed, "base RNG seed (flag wins over ENTMONO_SEED)");
    sub->add_option("--out", opt.out, "write the report to this path instead of stdout");
    sub->add_option("--tolerance", opt.tolerance, "inequality tolerance override");
  };

  auto* c_measure = app.add_subcommand("measure", "evaluate measures of a state file across cuts");
  c_measure->add_option("--input", opt.input, "state JSON file")->required();
  c_measure->add_option("--cut", opt.cut, "bipartition, e.g. 0:12 (default: every single-subsystem cut)");
  c_measure->add_option("--blocks", opt.blocks, "blocking report, e.g. 0|1,2|3 (first group is the focus)");
  add_common(c_measure);

  auto* c_table = app.add_subcommand("table1", "residuals tau and pi for the six three-qubit classes");
  add_common(c_table);

  auto* c_sweep = app.add_subcommand("sweep", "tau_N / tau_R of the W/GHZ mixture family as CSV");
  c_sweep->add_option("--step", opt.step, "grid step in (0, 1]");
  add_common(c_sweep);

  auto* c_conj = app.add_subcommand("conjecture", "sample random pure states and report strictness");
  c_conj->add_option("--qubits", opt.qubits, "number of qubits (>= 3)");
  c_conj->add_option("--samples", opt.samples, "number of random states");
  add_common(c_conj);

  auto* c_bloch = app.add_subcommand("bloch", "report from two-qubit correlation data (CSV)");
  c_bloch->add_option("--input", opt.input, "correlation CSV: 9 numbers (c) or 15 (c, n_A, n_B)")->required();
  add_common(c_bloch);

  auto* c_classify = app.add_subcommand("classify", "SLOCC class of a pure three-qubit state");
  c_classify->add_option("--input", opt.input, "state JSON file")->required();
  add_common(c_classify);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << e.what() << "\n";
    return 2;
  }

  try {
    if (app.got_subcommand(c_measure)) return cmd_measure(opt);
    if (app.got_subcommand(c_table)) return cmd_table1(opt);
    if (app.got_subcommand(c_sweep)) return cmd_sweep(opt);
    if (app.got_subcommand(c_conj)) return cmd_conjecture(opt);
    if (app.got_subcommand(c_bloch)) return cmd_bloch(opt);
    if (app.got_subcommand(c_classify)) return cmd_classify(opt);
  } catch (const NonPhysicalError& e) {
    std::cerr << e.what() << "\n";
    return 4;
  } catch (const IoError& e) {
    std::cerr << e.what() << "\n";
    return 3;
  } catch (const ParseError& e) {
    std::cerr << e.what() << "\n";
    return 2;
  } catch (const std::invalid_argument& e) {
    std::cerr << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << e.what() << "\n";
    return 1;
  }
  return 0;
}
