#pragma once

// Command-line front end. `run_cli` writes to the given streams so tests can
// drive it in-process; tools/qseq.cpp is the thin main().

#include <algorithm>
#include <cstdint>
#include <iomanip>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "qseq/json.hpp"
#include "qseq/qseq.hpp"

namespace qseq::cli {

enum class Command { classify, qtransform, factor, sequence, verify, graph };

struct CliConfig {
  Command command = Command::classify;
  std::string poly;
  std::size_t terms = 8;
  std::size_t min_degree = 2;
  std::size_t max_degree = 12;
  std::size_t graph_max_n = 0;  // 0: min(max_degree, 12)
  std::size_t n = 0;
  std::string modulus;
  std::string format = "text";
  std::uint64_t rng_seed = 0;
  bool verify_terms = true;
  unsigned threads = 0;
};

namespace detail {

inline std::string poly_out(const BitPoly& p, const std::string& format) {
  return format == "hex" ? to_hex(p) : to_text(p);
}

inline int do_classify(const CliConfig& cfg, std::ostream& out) {
  const BitPoly f = parse_poly(cfg.poly);
  const PolyType t = classify(f);
  if (cfg.format == "json") {
    nlohmann::ordered_json j;
    j["poly"] = to_hex(f);
    j["type"] = std::string(1, to_char(t.letter));
    j["n"] = t.n;
    j["l"] = t.l;
    j["m"] = t.m;
    out << j.dump(2) << '\n';
  } else {
    out << to_char(t.letter) << ' ' << t.n << " (l=" << t.l << ", m=" << t.m << ")\n";
  }
  return 0;
}

inline int do_qtransform(const CliConfig& cfg, std::ostream& out) {
  const BitPoly f = parse_poly(cfg.poly);
  const BitPoly g = q_transform(f);
  if (cfg.format == "json") {
    nlohmann::ordered_json j;
    j["poly"] = to_hex(f);
    j["q_transform"] = to_hex(g);
    j["text"] = to_text(g);
    j["degree"] = g.deg();
    out << j.dump(2) << '\n';
  } else {
    out << poly_out(g, cfg.format) << '\n';
  }
  return 0;
}

inline int do_factor(const CliConfig& cfg, std::ostream& out) {
  const BitPoly g = parse_poly(cfg.poly);
  if (g.is_zero() || g.deg() % 2 != 0) throw Error(Errc::bad_degree, "factor expects a polynomial of even degree");
  const ReciprocalPair pair = split_reciprocal_pair(g, g.deg() / 2, cfg.rng_seed);
  if (cfg.format == "json") {
    nlohmann::ordered_json j;
    j["poly"] = to_hex(g);
    j["g1"] = to_hex(pair.g1);
    j["g2"] = to_hex(pair.g2);
    j["g1_type"] = std::string(1, to_char(classify(pair.g1).letter));
    j["g2_type"] = std::string(1, to_char(classify(pair.g2).letter));
    out << j.dump(2) << '\n';
  } else {
    out << poly_out(pair.g1, cfg.format) << '\n' << poly_out(pair.g2, cfg.format) << '\n';
  }
  return 0;
}

inline int do_sequence(const CliConfig& cfg, std::ostream& out) {
  const BitPoly f0 = parse_poly(cfg.poly);
  const SequenceRecord rec = sequence_stream(f0, cfg.terms, cfg.rng_seed, cfg.verify_terms);
  if (cfg.format == "json") {
    out << to_json(rec).dump(2) << '\n';
    return 0;
  }
  out << std::left << std::setw(4) << "i" << std::setw(8) << "degree" << std::setw(6) << "type" << std::setw(16)
      << "step"
      << "poly\n";
  for (std::size_t i = 0; i < rec.terms.size(); ++i) {
    const Term& t = rec.terms[i];
    out << std::left << std::setw(4) << i << std::setw(8) << t.type.n << std::setw(6) << to_char(t.type.letter)
        << std::setw(16) << to_string(t.step) << poly_out(t.poly, cfg.format) << '\n';
  }
  out << "s = " << rec.s << '\n';
  if (rec.attempts) {
    out << "discarded chain:";
    for (const auto& t : *rec.attempts) out << ' ' << poly_out(t.poly, cfg.format);
    out << '\n';
  }
  return 0;
}

inline int do_verify(const CliConfig& cfg, std::ostream& out) {
  VerifyOptions opt;
  opt.min_degree = cfg.min_degree;
  opt.max_degree = cfg.max_degree;
  opt.graph_max_n = cfg.graph_max_n != 0 ? cfg.graph_max_n : std::min<std::size_t>(cfg.max_degree, 12);
  opt.rng_seed = cfg.rng_seed;
  opt.threads = cfg.threads;
  if (opt.min_degree < 1 || opt.min_degree > opt.max_degree || opt.max_degree > 30)
    throw Error(Errc::degree_too_large, "need 1 <= min-degree <= max-degree <= 30");
  if (opt.graph_max_n > graph_degree_cap)
    throw Error(Errc::degree_too_large, "graph-max-n is capped at " + std::to_string(graph_degree_cap));

  std::size_t failed = 0;
  for (const CheckResult& r : run_all_checks(opt)) {
    out << (r.passed() ? "[PASS] " : "[FAIL] ") << r.name << " (" << r.cases << " cases)\n";
    for (const auto& c : r.counterexamples) out << "    " << to_hex(c.poly) << ": " << c.reason << '\n';
    if (!r.passed()) ++failed;
  }
  if (failed == 0) {
    out << "all checks passed\n";
    return 0;
  }
  out << failed << " check(s) failed\n";
  return 1;
}

inline int do_graph(const CliConfig& cfg, std::ostream& out) {
  std::optional<BitPoly> modulus;
  if (!cfg.modulus.empty()) modulus = parse_poly(cfg.modulus);
  const ThetaGraph g = build_graph(cfg.n, modulus);
  if (cfg.format == "json")
    out << to_json(g).dump(2) << '\n';
  else
    out << to_dot(g);
  return 0;
}

}  // namespace detail

inline int run(const CliConfig& cfg, std::ostream& out, std::ostream& err) {
  try {
    switch (cfg.command) {
      case Command::classify: return detail::do_classify(cfg, out);
      case Command::qtransform: return detail::do_qtransform(cfg, out);
      case Command::factor: return detail::do_factor(cfg, out);
      case Command::sequence: return detail::do_sequence(cfg, out);
      case Command::verify: return detail::do_verify(cfg, out);
      case Command::graph: return detail::do_graph(cfg, out);
    }
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return 1;
  }
  return 1;
}

/// Parses argv and runs the selected command. Returns the process exit status.
inline int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CliConfig cfg;
  CLI::App app{"Sequences of binary irreducible polynomials built from Q-transforms", "qseq"};
  app.require_subcommand(1, 1);

  const std::vector<std::string> poly_formats{"text", "hex", "json"};

  auto* classify_cmd = app.add_subcommand("classify", "Print the type letter and degree profile of a polynomial");
  classify_cmd->add_option("--poly,-p", cfg.poly, "Polynomial, e.g. \"x^3+x^2+1\" or 0xd")->required();
  classify_cmd->add_option("--format,-f", cfg.format)->check(CLI::IsMember({"text", "json"}));

  auto* qt_cmd = app.add_subcommand("qtransform", "Print x^n f(x + 1/x)");
  qt_cmd->add_option("--poly,-p", cfg.poly, "Polynomial of degree >= 1")->required();
  qt_cmd->add_option("--format,-f", cfg.format)->check(CLI::IsMember(poly_formats));

  auto* factor_cmd = app.add_subcommand("factor", "Split a reducible Q-transform into its reciprocal pair");
  factor_cmd->add_option("--poly,-p", cfg.poly, "Polynomial of degree 2n")->required();
  factor_cmd->add_option("--format,-f", cfg.format)->check(CLI::IsMember(poly_formats));
  factor_cmd->add_option("--rng-seed", cfg.rng_seed);

  auto* seq_cmd = app.add_subcommand("sequence", "Build the sequence of irreducibles starting at a seed");
  seq_cmd->add_option("--poly,-p", cfg.poly, "Irreducible seed polynomial")->required();
  seq_cmd->add_option("--terms,-k", cfg.terms, "Number of terms")->check(CLI::PositiveNumber);
  seq_cmd->add_option("--format,-f", cfg.format)->check(CLI::IsMember(poly_formats));
  seq_cmd->add_option("--rng-seed", cfg.rng_seed);
  seq_cmd->add_flag("!--no-verify", cfg.verify_terms, "Skip the Rabin test on emitted terms");

  auto* verify_cmd = app.add_subcommand("verify", "Run the exhaustive theorem checks");
  verify_cmd->add_option("--max-degree,-d", cfg.max_degree, "Largest degree checked")->required();
  verify_cmd->add_option("--min-degree", cfg.min_degree, "Smallest degree checked");
  verify_cmd->add_option("--graph-max-n", cfg.graph_max_n, "Largest n for the theta graph checks");
  verify_cmd->add_option("--threads,-j", cfg.threads, "Worker threads (0 = all cores)");
  verify_cmd->add_option("--rng-seed", cfg.rng_seed);

  auto* graph_cmd = app.add_subcommand("graph", "Export the theta graph over GF(2^n)");
  graph_cmd->add_option("--n", cfg.n, "Field degree, 1..20")->required();
  graph_cmd->add_option("--modulus", cfg.modulus, "Irreducible modulus of degree n");
  graph_cmd->add_option("--format,-f", cfg.format)->check(CLI::IsMember({"dot", "json"}));

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? 0 : 1;
  }

  if (*classify_cmd) cfg.command = Command::classify;
  if (*qt_cmd) cfg.command = Command::qtransform;
  if (*factor_cmd) cfg.command = Command::factor;
  if (*seq_cmd) cfg.command = Command::sequence;
  if (*verify_cmd) cfg.command = Command::verify;
  if (*graph_cmd) {
    cfg.command = Command::graph;
    if (cfg.format == "text") cfg.format = "dot";
  }
  return run(cfg, out, err);
}

}  // namespace qseq::cli
