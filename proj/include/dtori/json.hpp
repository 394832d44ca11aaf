#pragma once

// JSON forms of the library types. Rationals are written as strings ("3",
// "-1/2"); bare JSON integers are accepted on input.

#include <cstddef>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "dtori/dirac.hpp"
#include "dtori/error.hpp"
#include "dtori/matrix.hpp"
#include "dtori/onn.hpp"
#include "dtori/orbit.hpp"
#include "dtori/poissonize.hpp"
#include "dtori/qtorus.hpp"
#include "dtori/rational.hpp"
#include "dtori/verify.hpp"

namespace dtori::json {

using nlohmann::json;

[[noreturn]] inline void bad_input(const std::string& what) {
  fail(ErrorCode::ParseError, what);
}

inline json rational(const Rational& q) { return q.get_str(); }

inline Rational parse_rational(const json& j) {
  if (j.is_number_integer()) return Rational(Integer(j.dump()));
  if (j.is_string()) {
    try {
      return dtori::parse_rational(j.get<std::string>());
    } catch (const ParseError&) {
      bad_input("malformed rational literal " + j.dump());
    }
  }
  bad_input("expected a rational literal, got " + j.dump());
}

inline json matrix(const RationalMatrix& m) {
  json rows = json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (std::size_t j = 0; j < m.cols(); ++j) row.push_back(rational(m(i, j)));
    rows.push_back(std::move(row));
  }
  return rows;
}

/// `cols_if_empty` fixes the width of an empty array.
inline RationalMatrix parse_matrix(const json& j, std::size_t cols_if_empty = 0) {
  if (!j.is_array()) bad_input("expected a matrix (array of arrays)");
  std::vector<std::vector<Rational>> rows;
  for (const auto& row : j) {
    if (!row.is_array()) bad_input("matrix rows must be arrays");
    std::vector<Rational> r;
    for (const auto& x : row) r.push_back(parse_rational(x));
    if (!rows.empty() && r.size() != rows.front().size()) bad_input("ragged matrix");
    rows.push_back(std::move(r));
  }
  return RationalMatrix::from_rows(rows, cols_if_empty);
}

inline std::size_t parse_count(const json& j, const char* field) {
  if (!j.contains(field) || !j[field].is_number_unsigned())
    bad_input(std::string("missing or invalid non-negative integer field '") + field + "'");
  return j[field].get<std::size_t>();
}

inline json index_list(const std::vector<std::size_t>& idx) {
  json a = json::array();
  for (auto i : idx) a.push_back(i);
  return a;
}

// DiracStructure: {"n": int, "basis": [[...], ...]}

inline json dirac(const DiracStructure& g) {
  return {{"n", g.n()}, {"basis", matrix(g.basis())}};
}

inline DiracStructure parse_dirac(const json& j) {
  if (!j.is_object()) bad_input("Dirac structure must be a JSON object");
  const std::size_t n = parse_count(j, "n");
  if (!j.contains("basis")) bad_input("missing field 'basis'");
  const RationalMatrix b = parse_matrix(j["basis"], 2 * n);
  require_dims(b.cols() == 2 * n, "basis must have 2n = " + std::to_string(2 * n) + " columns");
  return DiracStructure::from_basis(b);
}

// GroupElement: {"n": int, "matrix": [[...]]}

inline json group_element(const GroupElement& g) {
  return {{"n", g.n()}, {"matrix", matrix(g.matrix())}};
}

inline GroupElement parse_group_element(const json& j) {
  if (!j.is_object()) bad_input("group element must be a JSON object");
  const std::size_t n = parse_count(j, "n");
  if (!j.contains("matrix")) bad_input("missing field 'matrix'");
  return GroupElement::from_matrix(parse_matrix(j["matrix"], 2 * n), n);
}

// PoissonMatrix: {"n": int, "pi": [[...]]}, or a bare matrix.

inline json poisson(const PoissonMatrix& p) {
  return {{"n", p.n()}, {"pi", matrix(p.entries())}};
}

inline PoissonMatrix parse_poisson(const json& j) {
  RationalMatrix m;
  if (j.is_array()) {
    m = parse_matrix(j);
  } else if (j.is_object() && j.contains("pi")) {
    const std::size_t n = j.contains("n") ? parse_count(j, "n") : 0;
    m = parse_matrix(j["pi"], n);
    if (j.contains("n")) require_dims(m.rows() == n, "pi must be n x n");
  } else {
    bad_input("Poisson matrix must be an array of arrays or {\"n\", \"pi\"}");
  }
  require_dims(m.is_square(), "Poisson matrix must be square");
  return PoissonMatrix(m);
}

// SplitData: {"I": [...], "pi_m": ..., "beta": ..., "beta_mod1": ...}

inline json split(const SplitData& s) {
  return {{"I", index_list(s.transversal.i_set)},
          {"pi_m", matrix(s.pi_m)},
          {"beta", matrix(s.beta)},
          {"beta_mod1", matrix(s.beta_mod1)}};
}

inline SplitData parse_split(const json& j, std::size_t n) {
  if (!j.is_object()) bad_input("split data must be a JSON object");
  SplitData s;
  std::vector<std::size_t> idx;
  for (const auto& i : j.at("I")) idx.push_back(i.get<std::size_t>());
  s.transversal = make_transversal(idx, n);
  const std::size_t k = s.transversal.k();
  s.pi_m = parse_matrix(j.at("pi_m"), n - k);
  s.beta = parse_matrix(j.at("beta"), k);
  s.beta_mod1 = parse_matrix(j.at("beta_mod1"), k);
  return s;
}

// FourierPolynomial: {"n": int, "terms": [{"r": [...], "re": x, "im": y}, ...]}

inline json fourier(const FourierPolynomial& f) {
  json terms = json::array();
  for (const auto& [r, c] : f.terms())
    terms.push_back({{"r", r}, {"re", c.real()}, {"im", c.imag()}});
  return {{"n", f.n()}, {"terms", terms}};
}

inline FourierPolynomial parse_fourier(const json& j) {
  if (!j.is_object()) bad_input("Fourier polynomial must be a JSON object");
  const std::size_t n = parse_count(j, "n");
  FourierPolynomial f(n);
  if (!j.contains("terms") || !j["terms"].is_array()) bad_input("missing array 'terms'");
  for (const auto& t : j["terms"]) {
    if (!t.is_object() || !t.contains("r") || !t["r"].is_array())
      bad_input("each term needs an integer array 'r'");
    MultiIndex r;
    for (const auto& x : t["r"]) {
      if (!x.is_number_integer()) bad_input("multi-index entries must be integers");
      r.push_back(x.get<std::int64_t>());
    }
    if (r.size() != n) fail(ErrorCode::DimensionMismatch, "multi-index length differs from n");
    const double re = t.value("re", 0.0), im = t.value("im", 0.0);
    f.add(r, {re, im});
  }
  return f;
}

inline json complex_matrix(const ComplexMatrix& m) {
  json rows = json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (std::size_t k = 0; k < m.cols(); ++k) row.push_back({m(i, k).real(), m(i, k).imag()});
    rows.push_back(std::move(row));
  }
  return rows;
}

inline json clock_shift(const ClockShiftRep& rep) {
  return {{"p", rep.p.get_str()},
          {"q", rep.q.get_str()},
          {"u", complex_matrix(rep.u)},
          {"v", complex_matrix(rep.v)},
          {"relation_residual", rep.relation_residual()},
          {"unitarity_residual", rep.unitarity_residual()}};
}

inline json descriptor(const QuantizationDescriptor& d) {
  return {{"parity", to_string(d.parity)},
          {"nullity", d.nullity},
          {"I", index_list(d.transversal.i_set)},
          {"theta_reduced", matrix(d.theta_reduced)}};
}

inline json subspace(const Subspace& s) { return matrix(s.basis()); }

// Orbit: {"seed": ..., "bound": "depth"|"nodes", "nodes": [{"structure", "witness", "depth"}]}

inline json orbit(const OrbitResult& r) {
  json nodes = json::array();
  for (const auto& node : r.nodes)
    nodes.push_back({{"structure", dirac(node.structure)},
                     {"witness", to_string(node.witness)},
                     {"depth", node.depth}});
  return {{"seed", dirac(r.seed)}, {"bound", to_string(r.bound)}, {"nodes", nodes}};
}

inline OrbitResult parse_orbit(const json& j) {
  if (!j.is_object()) bad_input("orbit must be a JSON object");
  OrbitResult r{parse_dirac(j.at("seed")), Bound::Depth, {}};
  const std::string bound = j.at("bound").get<std::string>();
  if (bound == "nodes") r.bound = Bound::Nodes;
  else if (bound != "depth") bad_input("bound must be \"depth\" or \"nodes\"");
  for (const auto& node : j.at("nodes"))
    r.nodes.push_back({parse_dirac(node.at("structure")),
                       parse_word(node.at("witness").get<std::string>()),
                       node.at("depth").get<std::size_t>()});
  return r;
}

inline json checks(const std::vector<PropertyCheck>& cs) {
  json a = json::array();
  for (const auto& c : cs) a.push_back({{"property", c.name}, {"pass", c.passed}, {"detail", c.detail}});
  return a;
}

}  // namespace dtori::json
