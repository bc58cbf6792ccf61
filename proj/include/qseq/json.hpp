#pragma once

// JSON encodings of sequence records and theta graphs. Keys are emitted in a
// fixed order so the output can be compared byte for byte.

#include <string>

#include <json.hpp>

#include "qseq/seqgen.hpp"
#include "qseq/thetagraph.hpp"

namespace qseq {

inline nlohmann::ordered_json term_to_json(const Term& t) {
  nlohmann::ordered_json j;
  j["hex"] = to_hex(t.poly);
  j["text"] = to_text(t.poly);
  j["degree"] = t.type.n;
  j["type"] = std::string(1, to_char(t.type.letter));
  j["step_tag"] = std::string(to_string(t.step));
  return j;
}

/// {"terms": [{hex, text, degree, type, step_tag}...], "s", "seed", "attempts"}
/// `seed` is the generator seed; `attempts` is null or the discarded chain.
inline nlohmann::ordered_json to_json(const SequenceRecord& rec) {
  nlohmann::ordered_json j;
  j["terms"] = nlohmann::ordered_json::array();
  for (const auto& t : rec.terms) j["terms"].push_back(term_to_json(t));
  j["s"] = rec.s;
  j["seed"] = rec.rng_seed;
  if (rec.attempts) {
    j["attempts"] = nlohmann::ordered_json::array();
    for (const auto& t : *rec.attempts) j["attempts"].push_back(term_to_json(t));
  } else {
    j["attempts"] = nullptr;
  }
  return j;
}

/// {"n", "l", "modulus", "nodes": [{id, successor, membership, periodic, level, children}...]}
inline nlohmann::ordered_json to_json(const ThetaGraph& g) {
  nlohmann::ordered_json j;
  j["n"] = g.n();
  j["l"] = g.l();
  j["modulus"] = to_hex(g.modulus());
  j["nodes"] = nlohmann::ordered_json::array();
  for (std::size_t v = 0; v < g.node_count(); ++v) {
    const auto id = static_cast<ThetaGraph::node_id>(v);
    nlohmann::ordered_json node;
    node["id"] = g.label(id);
    node["successor"] = g.label(g.successor(id));
    node["membership"] = std::string(1, static_cast<char>(g.membership(id)));
    node["periodic"] = g.periodic(id);
    node["level"] = g.level(id);
    node["children"] = nlohmann::ordered_json::array();
    for (auto c : g.children(id)) node["children"].push_back(g.label(c));
    j["nodes"].push_back(std::move(node));
  }
  return j;
}

}  // namespace qseq
