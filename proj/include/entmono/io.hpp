#pragma once

// Serialization: the JSON state file format, the correlation-data CSV, and
// JSON forms of the report records.  Parsers name the field or invariant
// that failed.

#include "entmono/monogamy.hpp"
#include "entmono/states.hpp"

#include <json.hpp>

#include <cctype>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

namespace entmono {

using json = nlohmann::json;

struct ParseError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct IoError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

using AnyState = std::variant<StateVector, DensityMatrix>;

inline const DimSpec& dims_of(const AnyState& s) {
  return std::holds_alternative<StateVector>(s) ? std::get<StateVector>(s).dims
                                                : std::get<DensityMatrix>(s).dims;
}

inline DensityMatrix as_density(const AnyState& s) {
  return std::holds_alternative<StateVector>(s) ? DensityMatrix::pure(std::get<StateVector>(s))
                                                : std::get<DensityMatrix>(s);
}

// 12 significant digits, locale-independent.
inline std::string sig12(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.12g", v);
  return std::string(buf);
}

// --------------------------------------------------------------------------
// State files: {"dims":[2,2,2], "kind":"pure"|"mixed", "data":[[re,im],...]}
// with row-major matrix data for mixed states.

inline json state_to_json(const StateVector& s) {
  json j;
  j["dims"] = s.dims.dims;
  j["kind"] = "pure";
  json data = json::array();
  for (long i = 0; i < s.amps.size(); ++i) data.push_back({s.amps(i).real(), s.amps(i).imag()});
  j["data"] = std::move(data);
  return j;
}

inline json state_to_json(const DensityMatrix& s) {
  json j;
  j["dims"] = s.dims.dims;
  j["kind"] = "mixed";
  json data = json::array();
  for (long r = 0; r < s.rho.rows(); ++r)
    for (long c = 0; c < s.rho.cols(); ++c) data.push_back({s.rho(r, c).real(), s.rho(r, c).imag()});
  j["data"] = std::move(data);
  return j;
}

inline json state_to_json(const AnyState& s) {
  return std::holds_alternative<StateVector>(s) ? state_to_json(std::get<StateVector>(s))
                                                : state_to_json(std::get<DensityMatrix>(s));
}

inline AnyState state_from_json(const json& j) {
  if (!j.is_object()) throw ParseError("state file: top-level JSON object expected");
  if (!j.contains("dims") || !j["dims"].is_array() || j["dims"].empty())
    throw ParseError("state file: \"dims\" must be a nonempty array");
  std::vector<int> dims;
  for (const auto& d : j["dims"]) {
    if (!d.is_number_integer() || d.get<long>() < 1)
      throw ParseError("state file: \"dims\" entries must be positive integers");
    dims.push_back(d.get<int>());
  }
  DimSpec ds(dims);

  if (!j.contains("kind") || !j["kind"].is_string())
    throw ParseError("state file: \"kind\" must be \"pure\" or \"mixed\"");
  const std::string kind = j["kind"].get<std::string>();
  if (kind != "pure" && kind != "mixed")
    throw ParseError("state file: \"kind\" must be \"pure\" or \"mixed\"");

  if (!j.contains("data") || !j["data"].is_array())
    throw ParseError("state file: \"data\" must be an array of [re, im] pairs");
  const auto& data = j["data"];
  const long total = ds.total();
  const long expected = (kind == "pure") ? total : total * total;
  if (static_cast<long>(data.size()) != expected)
    throw ParseError("state file: \"data\" length " + std::to_string(data.size()) +
                     " does not match dims (expected " + std::to_string(expected) + ")");
  std::vector<cx> entries;
  entries.reserve(data.size());
  for (const auto& e : data) {
    if (!e.is_array() || e.size() != 2 || !e[0].is_number() || !e[1].is_number())
      throw ParseError("state file: \"data\" entries must be [re, im] number pairs");
    entries.emplace_back(e[0].get<double>(), e[1].get<double>());
  }

  try {
    if (kind == "pure") {
      Vec v(total);
      for (long i = 0; i < total; ++i) v(i) = entries[static_cast<std::size_t>(i)];
      return StateVector(std::move(ds), std::move(v));
    }
    Mat m(total, total);
    for (long r = 0; r < total; ++r)
      for (long c = 0; c < total; ++c) m(r, c) = entries[static_cast<std::size_t>(r * total + c)];
    return DensityMatrix(std::move(ds), std::move(m));
  } catch (const std::invalid_argument& e) {
    throw ParseError(std::string("state file: invariant violated: ") + e.what());
  }
}

inline AnyState load_state_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open " + path);
  json j;
  try {
    in >> j;
  } catch (const json::exception& e) {
    throw ParseError("state file: invalid JSON: " + std::string(e.what()));
  }
  return state_from_json(j);
}

// --------------------------------------------------------------------------
// Correlation data: nine numbers (c row-major), optionally followed by six
// more (n_A then n_B).  Separators are commas and whitespace; '#' starts a
// comment.

inline CorrelationDecomposition correlation_from_text(const std::string& text) {
  std::string cleaned;
  cleaned.reserve(text.size());
  bool in_comment = false;
  for (char ch : text) {
    if (ch == '#') in_comment = true;
    if (ch == '\n') in_comment = false;
    cleaned.push_back(in_comment ? ' ' : (ch == ',' ? ' ' : ch));
  }
  std::istringstream is(cleaned);
  std::vector<double> vals;
  std::string tok;
  while (is >> tok) {
    try {
      std::size_t pos = 0;
      const double v = std::stod(tok, &pos);
      if (pos != tok.size()) throw std::invalid_argument(tok);
      vals.push_back(v);
    } catch (const std::exception&) {
      throw ParseError("correlation file: not a number: \"" + tok + "\"");
    }
  }
  if (vals.size() != 9 && vals.size() != 15)
    throw ParseError("correlation file: expected 9 numbers (c row-major) or 15 (c, n_A, n_B), got " +
                     std::to_string(vals.size()));
  CorrelationDecomposition d;
  for (int a = 0; a < 3; ++a)
    for (int b = 0; b < 3; ++b) d.c(a, b) = vals[static_cast<std::size_t>(3 * a + b)];
  if (vals.size() == 15) {
    for (int a = 0; a < 3; ++a) d.n_a(a) = vals[static_cast<std::size_t>(9 + a)];
    for (int a = 0; a < 3; ++a) d.n_b(a) = vals[static_cast<std::size_t>(12 + a)];
  }
  try {
    d.validate();
  } catch (const std::invalid_argument& e) {
    throw ParseError(std::string("correlation file: ") + e.what());
  }
  return d;
}

inline CorrelationDecomposition load_correlation_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return correlation_from_text(buf.str());
}

// --------------------------------------------------------------------------
// Report records.

inline json report_to_json(const MonogamyReport& r) {
  json j;
  j["inequality_id"] = r.inequality_id;
  j["lhs"] = r.lhs;
  j["rhs"] = r.rhs;
  j["slack"] = r.slack;
  j["holds"] = r.holds;
  j["strict"] = r.strict;
  j["cut"] = r.cut_description;
  j["tolerance"] = kHoldsTol;
  j["strict_threshold"] = kStrictTol;
  return j;
}

inline json campaign_to_json(const CampaignSummary& s) {
  json j;
  j["n_qubits"] = s.n_qubits;
  j["samples"] = s.samples;
  j["seed"] = s.seed;
  j["substream"] = "sample i drawn with seed splitmix64(seed xor (i+1)*0x9e3779b97f4a7c15)";
  j["tolerance"] = kHoldsTol;
  j["strict_threshold"] = kStrictTol;
  j["evaluations"] = s.evaluations;
  j["violations"] = s.violations;
  j["non_strict"] = s.non_strict;
  j["non_strict_qualifying_pairwise"] = s.non_strict_qualifying_pairwise;
  j["non_strict_qualifying_cutwise"] = s.non_strict_qualifying_cutwise;
  j["qualifying_pairwise"] = s.qualifying_pairwise;
  j["qualifying_cutwise"] = s.qualifying_cutwise;
  if (s.evaluations > 0) {
    j["min_slack"] = s.min_slack;
    j["min_slack_blocking"] = s.min_slack_blocking;
    j["min_slack_measure"] = s.min_slack_measure;
    j["min_slack_sample"] = s.min_slack_sample;
  } else {
    j["min_slack"] = nullptr;
  }
  json rows = json::array();
  for (const auto& b : s.blockings) {
    json row;
    row["blocking"] = b.blocking;
    row["measure"] = b.measure;
    row["evaluations"] = b.evaluations;
    row["violations"] = b.violations;
    row["non_strict"] = b.non_strict;
    row["non_strict_qualifying_pairwise"] = b.non_strict_qualifying_pairwise;
    row["non_strict_qualifying_cutwise"] = b.non_strict_qualifying_cutwise;
    row["min_slack"] = b.min_slack;
    rows.push_back(std::move(row));
  }
  j["blockings"] = std::move(rows);
  return j;
}

inline void write_text_file(const std::string& path, const std::string& content) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot open " + path + " for writing");
  out << content;
  if (!out) throw IoError("write failed: " + path);
}

}  // namespace entmono
