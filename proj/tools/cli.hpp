#pragma once

// Command-line front end. Exit codes:
//   0 ok, 1 input/parse error, 2 singular denominator, 3 not a Dirac
//   structure, 4 dimension mismatch, 5 not Poisson for the chosen I,
//   6 orbit bound exhausted.

#include <cstddef>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "dtori/dtori.hpp"

namespace dtori::cli {

enum ExitCode : int {
  kOk = 0,
  kInputError = 1,
  kSingularDenominator = 2,
  kNotDirac = 3,
  kDimensionMismatch = 4,
  kNotPoisson = 5,
  kNotFound = 6,
};

inline int exit_code_for(ErrorCode code) {
  switch (code) {
    case ErrorCode::SingularDenominator: return kSingularDenominator;
    case ErrorCode::NotMaximal:
    case ErrorCode::NotIsotropic: return kNotDirac;
    case ErrorCode::DimensionMismatch: return kDimensionMismatch;
    case ErrorCode::NotPoisson: return kNotPoisson;
    case ErrorCode::NotFoundWithinBounds: return kNotFound;
    default: return kInputError;
  }
}

namespace detail {

using Json = nlohmann::json;
namespace dj = dtori::json;

struct IoContext {
  std::istream& in;
  std::ostream& out;
  bool force_json = false;
  bool quiet = false;
};

// "@-" reads stdin; text starting with '{' or '[' is parsed as inline JSON;
// anything else is a file path.
inline Json load_json(const std::string& source, IoContext& io) {
  std::string text;
  if (source == "@-") {
    std::ostringstream ss;
    ss << io.in.rdbuf();
    text = ss.str();
  } else if (!source.empty() && (source.front() == '{' || source.front() == '[')) {
    text = source;
  } else {
    std::ifstream f(source);
    if (!f) fail(ErrorCode::InvalidArgument, "cannot open '" + source + "'");
    std::ostringstream ss;
    ss << f.rdbuf();
    text = ss.str();
  }
  return Json::parse(text);
}

inline void emit(IoContext& io, const Json& j) {
  if (!io.quiet) io.out << j.dump(2) << '\n';
}

/// "{}", "{1,3}" or "1,3".
inline std::vector<std::size_t> parse_index_set(std::string text) {
  std::string body;
  for (char c : text)
    if (!std::isspace(static_cast<unsigned char>(c))) body += c;
  if (!body.empty() && body.front() == '{') {
    if (body.back() != '}') throw ParseError(body.size(), "unterminated index set");
    body = body.substr(1, body.size() - 2);
  }
  std::vector<std::size_t> out;
  std::size_t pos = 0;
  while (pos < body.size()) {
    const auto comma = body.find(',', pos);
    const std::string item = body.substr(pos, comma == std::string::npos ? std::string::npos : comma - pos);
    Integer z;
    if (!dtori::detail::parse_integer(item, z) || z < 1 || !z.fits_ulong_p())
      throw ParseError(pos, "index set entries must be positive integers");
    out.push_back(z.get_ui());
    if (comma == std::string::npos) break;
    pos = comma + 1;
  }
  return out;
}

inline std::string format_matrix(const RationalMatrix& m, const std::string& indent) {
  if (m.rows() == 0) return indent + "(none)\n";
  std::string s;
  for (std::size_t i = 0; i < m.rows(); ++i) {
    s += indent + "[";
    for (std::size_t j = 0; j < m.cols(); ++j) {
      if (j) s += ", ";
      s += m(i, j).get_str();
    }
    s += "]\n";
  }
  return s;
}

inline std::string format_set(const std::vector<std::size_t>& idx) {
  std::string s = "{";
  for (std::size_t k = 0; k < idx.size(); ++k) {
    if (k) s += ',';
    s += std::to_string(idx[k]);
  }
  return s + "}";
}

inline int run_inspect(const std::string& path, IoContext& io) {
  const DiracStructure gamma = dj::parse_dirac(load_json(path, io));
  const CharacteristicData cd = characteristic(gamma);
  const Subspace ps = p_star(gamma);
  const QuantizationDescriptor d = descriptor(gamma);
  if (io.force_json) {
    emit(io, {{"n", gamma.n()},
              {"basis", dj::matrix(gamma.basis())},
              {"nullity", cd.nullity},
              {"parity", to_string(cd.parity)},
              {"characteristic", dj::subspace(cd.characteristic)},
              {"p_star", dj::subspace(ps)},
              {"descriptor", dj::descriptor(d)}});
    return kOk;
  }
  if (io.quiet) return kOk;
  io.out << "n: " << gamma.n() << '\n'
         << "basis (canonical):\n" << format_matrix(gamma.basis(), "  ")
         << "nullity: " << cd.nullity << '\n'
         << "parity: " << to_string(cd.parity) << '\n'
         << "characteristic subspace C:\n" << format_matrix(cd.characteristic.basis(), "  ")
         << "dual projection p_*:\n" << format_matrix(ps.basis(), "  ")
         << "descriptor: I = " << format_set(d.transversal.i_set) << ", theta mod 1:\n"
         << format_matrix(d.theta_reduced, "  ");
  return kOk;
}

inline DiracStructure load_structure(const std::string& path, IoContext& io) {
  return dj::parse_dirac(load_json(path, io));
}

inline int run_act(const std::string& word_text, const std::string& path, IoContext& io) {
  const Word w = parse_word(word_text);
  const DiracStructure gamma = load_structure(path, io);
  emit(io, dj::dirac(act(eval_word(w, gamma.n()), gamma)));
  return kOk;
}

inline int run_poissonize(const std::string& path, const std::string* i_text, IoContext& io) {
  const DiracStructure gamma = load_structure(path, io);
  const std::vector<std::size_t> i_set =
      i_text ? parse_index_set(*i_text) : find_transversal(gamma).i_set;
  const SplitData split = split_blocks(gamma, i_set);
  Json out = dj::split(split);
  out["pi"] = dj::poisson(PoissonMatrix(split.poisson));
  emit(io, out);
  return kOk;
}

inline int run_star(const std::string& f_path, const std::string& g_path,
                    const std::string& pi_path, const std::string& hbar_text, IoContext& io) {
  const FourierPolynomial f = dj::parse_fourier(load_json(f_path, io));
  const FourierPolynomial g = dj::parse_fourier(load_json(g_path, io));
  const PoissonMatrix pi = dj::parse_poisson(load_json(pi_path, io));
  emit(io, dj::fourier(star(f, g, pi, parse_rational(hbar_text))));
  return kOk;
}

inline int run_fraclin(const std::string& word_text, const std::string& pi_path, IoContext& io) {
  const Word w = parse_word(word_text);
  const PoissonMatrix pi = dj::parse_poisson(load_json(pi_path, io));
  const GroupElement g = eval_word(w, pi.n());
  emit(io, dj::poisson(PoissonMatrix(frac_linear(g, pi.entries()))));
  return kOk;
}

inline int run_orbit(const std::string& path, std::size_t depth, std::size_t max_nodes,
                     const std::string* target_path, IoContext& io) {
  const DiracStructure seed = load_structure(path, io);
  const GeneratorSet gens = default_generators(seed.n());
  if (target_path) {
    const DiracStructure target = load_structure(*target_path, io);
    require_dims(target.n() == seed.n(), "seed and target differ in n");
    const Word w = connect(seed, target, gens, depth, max_nodes);
    emit(io, {{"witness", to_string(w)}, {"depth", w.size()}});
    return kOk;
  }
  emit(io, dj::orbit(explore(seed, gens, depth, max_nodes)));
  return kOk;
}

inline int run_rep(const std::string& theta_text, IoContext& io) {
  const Rational theta = parse_rational(theta_text);
  emit(io, dj::clock_shift(clock_shift(theta.get_num(), theta.get_den())));
  return kOk;
}

inline int run_verify(const std::string& path, IoContext& io) {
  const DiracStructure gamma = load_structure(path, io);
  const auto results = verify_structure(gamma);
  bool all = true;
  for (const auto& r : results) all = all && r.passed;
  if (io.force_json) {
    emit(io, {{"structure", dj::dirac(gamma)}, {"all_pass", all}, {"checks", dj::checks(results)}});
  } else if (!io.quiet) {
    for (const auto& r : results)
      io.out << (r.passed ? "PASS " : "FAIL ") << r.name
             << (r.detail.empty() ? "" : "  (" + r.detail + ")") << '\n';
  }
  return kOk;
}

inline void report(std::ostream& err, std::string_view tag, const std::string& what) {
  err << "error[" << tag << "]: " << what << '\n';
}

}  // namespace detail

/// Runs one invocation; returns the process exit code. `args` excludes argv[0].
inline int run(const std::vector<std::string>& args, std::istream& in, std::ostream& out,
               std::ostream& err) {
  CLI::App app{"Exact computation with constant Dirac structures on tori", "dtori"};
  app.require_subcommand(1);
  bool force_json = false, quiet = false;
  app.add_flag("--json", force_json, "Force machine-readable output");
  app.add_flag("--quiet", quiet, "Suppress normal output");

  std::string path, path2, word, pi_path, hbar = "1", i_text, target, theta;
  std::size_t depth = 2, max_nodes = 10000;

  auto* inspect = app.add_subcommand("inspect", "Characteristic data of a Dirac structure");
  inspect->add_option("path", path, "DiracStructure JSON (file, @- or inline)")->required();

  auto* act_cmd = app.add_subcommand("act", "Apply a generator word to a Dirac structure");
  act_cmd->add_option("--word", word, "Generator word, leftmost applied first")->required();
  act_cmd->add_option("path", path, "DiracStructure JSON")->required();

  auto* poissonize = app.add_subcommand("poissonize", "Poissonize via sigma_I and split blocks");
  poissonize->add_option("path", path, "DiracStructure JSON")->required();
  auto* i_opt = poissonize->add_option("--I", i_text, "Index set such as {1,3}");

  auto* star_cmd = app.add_subcommand("star", "Star product of two Fourier polynomials");
  star_cmd->add_option("f", path, "FourierPolynomial JSON")->required();
  star_cmd->add_option("g", path2, "FourierPolynomial JSON")->required();
  star_cmd->add_option("--pi", pi_path, "Poisson matrix JSON")->required();
  star_cmd->add_option("--hbar", hbar, "Deformation parameter (rational)");

  auto* fraclin = app.add_subcommand("fraclin", "Fractional-linear action on a Poisson matrix");
  fraclin->add_option("--word", word, "Generator word")->required();
  fraclin->add_option("--pi", pi_path, "Poisson matrix JSON")->required();

  auto* orbit_cmd = app.add_subcommand("orbit", "Bounded orbit exploration");
  orbit_cmd->add_option("path", path, "Seed DiracStructure JSON")->required();
  orbit_cmd->add_option("--depth", depth, "Maximum word length");
  orbit_cmd->add_option("--max-nodes", max_nodes, "Maximum number of structures");
  auto* target_opt = orbit_cmd->add_option("--target", target, "Search for a witness to this structure");

  auto* rep = app.add_subcommand("rep", "Clock-and-shift pair for a rational angle");
  rep->add_option("--theta", theta, "p/q")->required();

  auto* verify = app.add_subcommand("verify", "Run the invariant battery on one structure");
  verify->add_option("path", path, "DiracStructure JSON")->required();

  for (auto* sub : app.get_subcommands({})) {
    sub->add_flag("--json", force_json, "Force machine-readable output");
    sub->add_flag("--quiet", quiet, "Suppress normal output");
  }

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return kOk;
  } catch (const CLI::CallForAllHelp& e) {
    out << app.help("", CLI::AppFormatMode::All);
    return kOk;
  } catch (const CLI::ParseError& e) {
    detail::report(err, "UsageError", e.what());
    return kInputError;
  }

  detail::IoContext io{in, out, force_json, quiet};
  try {
    if (*inspect) return detail::run_inspect(path, io);
    if (*act_cmd) return detail::run_act(word, path, io);
    if (*poissonize) return detail::run_poissonize(path, *i_opt ? &i_text : nullptr, io);
    if (*star_cmd) return detail::run_star(path, path2, pi_path, hbar, io);
    if (*fraclin) return detail::run_fraclin(word, pi_path, io);
    if (*orbit_cmd) return detail::run_orbit(path, depth, max_nodes, *target_opt ? &target : nullptr, io);
    if (*rep) return detail::run_rep(theta, io);
    if (*verify) return detail::run_verify(path, io);
  } catch (const Error& e) {
    detail::report(err, e.tag(), e.what());
    return exit_code_for(e.code());
  } catch (const nlohmann::json::exception& e) {
    detail::report(err, "ParseError", e.what());
    return kInputError;
  }
  return kInputError;
}

}  // namespace dtori::cli
