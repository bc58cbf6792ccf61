#include <map>
#include <random>
#include <set>

#include <gtest/gtest.h>

#include "oracles.hpp"
#include "qseq/json.hpp"
#include "qseq/seqgen.hpp"
#include "qseq/thetagraph.hpp"
#include "test_util.hpp"

using qseq::BitPoly;
using qseq::Errc;
using qseq::StepTag;
using qseq::TypeLetter;

namespace {

BitPoly P(const char* s) { return qseq::parse_poly(s); }

std::vector<std::size_t> degrees(const qseq::SequenceRecord& r) {
  std::vector<std::size_t> out;
  for (const auto& t : r.terms) out.push_back(t.type.n);
  return out;
}

void check_record(const qseq::SequenceRecord& rec, const std::string& label) {
  SCOPED_TRACE(label);
  const auto& t0 = rec.terms.front().type;
  ASSERT_LT(rec.s, rec.terms.size());
  EXPECT_EQ(rec.terms[rec.s].type.letter, TypeLetter::A);
  for (std::size_t i = 0; i < rec.s; ++i) EXPECT_NE(rec.terms[i].type.letter, TypeLetter::A);
  EXPECT_LE(rec.s, t0.l + 3);
  if (t0.l == 0) {
    EXPECT_LE(rec.s, 3U);
  }
  if (t0.letter == TypeLetter::B || t0.letter == TypeLetter::D) {
    EXPECT_LE(rec.s, t0.l + 2);
  }
  for (const auto& t : rec.terms) EXPECT_TRUE(qseq::is_irreducible(t.poly)) << qseq::to_hex(t.poly);
  for (std::size_t i = rec.s; i + 1 < rec.terms.size(); ++i) {
    EXPECT_EQ(rec.terms[i + 1].poly, qseq::q_transform(rec.terms[i].poly));
    EXPECT_EQ(rec.terms[i + 1].type.n, 2 * rec.terms[i].type.n);
    EXPECT_EQ(rec.terms[i + 1].step, StepTag::doubling);
  }
}

/// Step counts at which type A is first reached along every branch of the factor tree,
/// exploring at most `cap` steps. Branches that never reach A contribute cap + 1.
void branch_steps(const BitPoly& p, std::size_t n, std::size_t depth, std::size_t cap, std::multiset<std::size_t>& out) {
  if (depth == cap) {
    out.insert(cap + 1);
    return;
  }
  const auto pair = qseq::split_reciprocal_pair(qseq::q_transform(p), n);
  for (const BitPoly* g : {&pair.g1, &pair.g2}) {
    if (qseq::classify(*g).letter == TypeLetter::A)
      out.insert(depth + 1);
    else
      branch_steps(*g, n, depth + 1, cap, out);
  }
}

}  // namespace

TEST(RunProcedure, WorkedExampleFromX6PlusX3Plus1) {
  const oracle::mask transform = oracle::laurent_q_transform(0x49);
  ASSERT_EQ(transform, 0x13F9U);  // x^12+x^9+x^8+x^7+x^6+x^5+x^4+x^3+1
  const auto factors = oracle::factor(transform);
  ASSERT_EQ(factors.size(), 2U);

  const auto out = qseq::run_procedure(P("x^6+x^3+1"), 6, 1);
  ASSERT_TRUE(out.reached_type_a);
  ASSERT_EQ(out.chain.size(), 2U);
  EXPECT_EQ(out.chain[0], P("x^6+x^3+1"));
  EXPECT_EQ(out.chain[1].low_word(), factors[0]);
  EXPECT_EQ(qseq::classify(out.chain[1]), (qseq::PolyType{TypeLetter::A, 6, 1, 3}));
  EXPECT_EQ(oracle::rem(transform, out.chain[1].low_word()), 0U);
}

TEST(RunProcedure, RejectsNonDInput) {
  expect_error(Errc::wrong_type, [] { (void)qseq::run_procedure(P("x^2+x+1"), 2, 1); });
  expect_error(Errc::wrong_type, [] { (void)qseq::run_procedure(P("x^3+x+1"), 3, 0); });
  expect_error(Errc::bad_degree, [] { (void)qseq::run_procedure(P("x^6+x^3+1"), 5, 1); });
}

TEST(RunProcedure, EitherFactorReachesTypeAInTheSameNumberOfSteps) {
  std::size_t nonperiodic = 0, periodic = 0;
  for (std::size_t n = 3; n <= 10; ++n) {
    const std::size_t l = qseq::degree_profile(n).l;
    const qseq::ThetaGraph graph = qseq::build_graph(n);
    const qseq::BinaryField field(graph.modulus());
    for (const auto& p0 : qseq::irreducibles_of_degree(n)) {
      if (qseq::classify(p0).letter != TypeLetter::D) continue;
      // locate a root of p0 in the graph's field
      std::optional<std::uint32_t> root;
      for (std::uint64_t a = 0; a < (std::uint64_t{1} << n) && !root; ++a)
        if (field.evaluate(p0, field.element(a)).residue.is_zero()) root = static_cast<std::uint32_t>(a);
      ASSERT_TRUE(root.has_value());

      std::multiset<std::size_t> steps;
      branch_steps(p0, n, 0, l + 2, steps);
      const auto outcome = qseq::run_procedure(p0, n, l);
      SCOPED_TRACE(qseq::to_hex(p0));
      if (!graph.periodic(*root)) {
        ++nonperiodic;
        ASSERT_EQ(*steps.begin(), *steps.rbegin()) << "branches disagree";
        EXPECT_LE(*steps.begin(), l + 1);
        EXPECT_TRUE(outcome.reached_type_a);
        EXPECT_EQ(outcome.chain.size(), *steps.begin() + 1);
        // the root's tree level fixes the step count
        EXPECT_EQ(*steps.begin(), l + 2 - graph.level(*root));
      } else {
        ++periodic;
        EXPECT_FALSE(outcome.reached_type_a);
        EXPECT_EQ(outcome.chain.size(), l + 2);
        EXPECT_EQ(*steps.begin(), l + 2);
      }
    }
  }
  EXPECT_GT(nonperiodic, 20U);
  EXPECT_GT(periodic, 0U);
}

TEST(InitialSegment, TypeASeedIsItsOwnSegment) {
  const auto rec = qseq::initial_segment(P("x+1"));
  ASSERT_EQ(rec.terms.size(), 1U);
  EXPECT_EQ(rec.s, 0U);
  EXPECT_EQ(rec.terms[0].type, (qseq::PolyType{TypeLetter::A, 1, 0, 1}));
  EXPECT_EQ(rec.terms[0].step, StepTag::seed);
}

TEST(InitialSegment, TypeCChain) {
  const auto rec = qseq::initial_segment(P("x^3+x^2+1"));
  ASSERT_EQ(rec.terms.size(), 4U);
  EXPECT_EQ(rec.s, 3U);
  EXPECT_EQ(rec.terms[1].poly, P("x^3+x+1"));
  EXPECT_EQ(rec.terms[1].type.letter, TypeLetter::B);
  EXPECT_EQ(rec.terms[1].step, StepTag::factor_B_of_C);
  EXPECT_EQ(rec.terms[2].poly, P("x^6+x^3+1"));
  EXPECT_EQ(rec.terms[2].type, (qseq::PolyType{TypeLetter::D, 6, 1, 3}));
  EXPECT_EQ(rec.terms[2].step, StepTag::q_transform);
  EXPECT_EQ(rec.terms[3].type, (qseq::PolyType{TypeLetter::A, 6, 1, 3}));
  EXPECT_EQ(rec.terms[3].step, StepTag::procedure_step);
  EXPECT_EQ(oracle::rem(0x13F9, rec.terms[3].poly.low_word()), 0U);
}

TEST(InitialSegment, XMapsToXPlusOne) {
  const auto rec = qseq::initial_segment(P("x"));
  ASSERT_EQ(rec.terms.size(), 2U);
  EXPECT_EQ(rec.s, 1U);
  EXPECT_EQ(rec.terms[0].type.letter, TypeLetter::B);
  EXPECT_EQ(rec.terms[1].poly, P("x+1"));
  EXPECT_EQ(rec.terms[1].type.letter, TypeLetter::A);
}

TEST(InitialSegment, TypeBSeedTransformsToD) {
  const auto rec = qseq::initial_segment(P("x^5+x^3+x^2+x+1"));  // (B, 5)
  ASSERT_EQ(rec.terms[0].type.letter, TypeLetter::B);
  EXPECT_EQ(rec.terms[1].poly, qseq::q_transform(P("x^5+x^3+x^2+x+1")));
  EXPECT_EQ(rec.terms[1].type, (qseq::PolyType{TypeLetter::D, 10, 1, 5}));
  EXPECT_EQ(rec.terms[1].step, StepTag::q_transform);
  EXPECT_LE(rec.s, 2U);
}

TEST(InitialSegment, Errors) {
  expect_error(Errc::not_irreducible, [] { (void)qseq::initial_segment(P("x^2+1")); });
  expect_error(Errc::not_irreducible, [] { (void)qseq::initial_segment(P("x^4+x^2+1")); });
  expect_error(Errc::degree_zero, [] { (void)qseq::initial_segment(BitPoly::one()); });
}

TEST(InitialSegment, TypeDRestartsFromSecondFactorWhenNeeded) {
  std::size_t restarts = 0, short_circuits = 0, d_seeds = 0;
  for (std::size_t n = 2; n <= 12; ++n) {
    const std::size_t l = qseq::degree_profile(n).l;
    for (const auto& f : qseq::irreducibles_of_degree(n)) {
      if (qseq::classify(f).letter != TypeLetter::D) continue;
      ++d_seeds;
      const auto rec = qseq::initial_segment(f);
      check_record(rec, qseq::to_hex(f));
      const auto pair = qseq::split_reciprocal_pair(qseq::q_transform(f), n);
      if (rec.s == 1 && qseq::classify(pair.g1).letter == TypeLetter::A) {
        ++short_circuits;
        EXPECT_EQ(qseq::classify(pair.g2).letter, TypeLetter::A);
      }
      if (rec.attempts) {
        ++restarts;
        ASSERT_EQ(rec.attempts->size(), l + 2);
        EXPECT_EQ(rec.attempts->front().poly, pair.g1);
        for (const auto& t : *rec.attempts) EXPECT_EQ(t.type.letter, TypeLetter::D);
        EXPECT_EQ(rec.terms[1].poly, pair.g2);
        EXPECT_EQ(rec.terms[1].step, StepTag::restart_h2);
      } else if (rec.s > 1) {
        EXPECT_EQ(rec.terms[1].poly, pair.g1);
      }
    }
  }
  EXPECT_GT(d_seeds, 100U);
  EXPECT_GT(restarts, 0U);
  EXPECT_GT(short_circuits, 0U);
}

TEST(SequenceStream, Examples) {
  ASSERT_TRUE(oracle::irreducible(oracle::laurent_q_transform(0x3)));
  ASSERT_TRUE(oracle::irreducible(oracle::laurent_q_transform(0x7)));
  const auto r1 = qseq::sequence_stream(P("x+1"), 3);
  ASSERT_EQ(r1.terms.size(), 3U);
  EXPECT_EQ(r1.terms[0].poly, P("x+1"));
  EXPECT_EQ(r1.terms[1].poly, P("x^2+x+1"));
  EXPECT_EQ(r1.terms[2].poly, P("x^4+x^3+x^2+x+1"));

  const auto r2 = qseq::sequence_stream(P("x^2+x+1"), 2);
  ASSERT_EQ(r2.terms.size(), 2U);
  EXPECT_EQ(r2.terms[1].poly, P("x^4+x^3+x^2+x+1"));

  const auto r3 = qseq::sequence_stream(P("x^3+x^2+1"), 6);
  EXPECT_EQ(degrees(r3), (std::vector<std::size_t>{3, 3, 6, 6, 12, 24}));
  EXPECT_EQ(r3.s, 3U);
  check_record(r3, "0xd");
}

TEST(SequenceStream, TruncationKeepsBreakIndex) {
  const auto rec = qseq::sequence_stream(P("x^3+x^2+1"), 2);
  EXPECT_EQ(rec.terms.size(), 2U);
  EXPECT_EQ(rec.s, 3U);
  expect_error(Errc::bad_degree, [] { (void)qseq::sequence_stream(P("x+1"), 0); });
}

TEST(SequenceStream, ExhaustiveUpToDegree12) {
  std::map<TypeLetter, std::size_t> seeds_by_type;
  for (std::size_t n = 1; n <= 12; ++n) {
    for (const auto& f : qseq::irreducibles_of_degree(n)) {
      const auto rec0 = qseq::initial_segment(f);
      const auto rec = qseq::sequence_stream(f, rec0.s + 3);
      check_record(rec, qseq::to_hex(f));
      ++seeds_by_type[rec.terms.front().type.letter];
    }
  }
  for (auto letter : {TypeLetter::A, TypeLetter::B, TypeLetter::C, TypeLetter::D})
    EXPECT_GT(seeds_by_type[letter], 50U) << qseq::to_char(letter);
}

TEST(SequenceStream, RandomSeedsOfDegree13To24) {
  std::mt19937_64 rng(2024);
  std::uniform_int_distribution<std::size_t> deg(13, 24);
  for (int k = 0; k < 10; ++k) {
    const std::size_t n = deg(rng);
    BitPoly f;
    do {
      f = BitPoly((std::uint64_t{1} << n) | (rng() & ((std::uint64_t{1} << n) - 1)) | 1U);
    } while (!qseq::is_irreducible(f));
    const auto rec0 = qseq::initial_segment(f, static_cast<std::uint64_t>(k));
    const auto rec = qseq::sequence_stream(f, rec0.s + 3, static_cast<std::uint64_t>(k));
    check_record(rec, qseq::to_hex(f));
  }
}

TEST(SequenceStream, SeedIndependentAndRepeatable) {
  for (std::size_t n = 2; n <= 10; ++n) {
    for (const auto& f : qseq::irreducibles_of_degree(n)) {
      const auto a = qseq::sequence_stream(f, 6, 0);
      const auto b = qseq::sequence_stream(f, 6, 0);
      const auto c = qseq::sequence_stream(f, 6, 12345);
      ASSERT_EQ(a.terms.size(), c.terms.size());
      for (std::size_t i = 0; i < a.terms.size(); ++i) {
        ASSERT_EQ(a.terms[i].poly, b.terms[i].poly);
        ASSERT_EQ(a.terms[i].poly, c.terms[i].poly);
        ASSERT_EQ(a.terms[i].step, c.terms[i].step);
      }
      ASSERT_EQ(a.s, c.s);
    }
  }
}

TEST(SequenceJson, FieldsInStableOrder) {
  const auto rec = qseq::sequence_stream(P("0xd"), 5);
  const auto j = qseq::to_json(rec);
  std::vector<std::string> keys;
  for (auto it = j.begin(); it != j.end(); ++it) keys.push_back(it.key());
  EXPECT_EQ(keys, (std::vector<std::string>{"terms", "s", "seed", "attempts"}));
  std::vector<std::string> term_keys;
  for (auto it = j["terms"][0].begin(); it != j["terms"][0].end(); ++it) term_keys.push_back(it.key());
  EXPECT_EQ(term_keys, (std::vector<std::string>{"hex", "text", "degree", "type", "step_tag"}));
  EXPECT_EQ(j["s"], 3);
  EXPECT_EQ(j["seed"], 0);
  EXPECT_TRUE(j["attempts"].is_null());
  std::vector<int> degs;
  for (const auto& t : j["terms"]) degs.push_back(t["degree"].get<int>());
  EXPECT_EQ(degs, (std::vector<int>{3, 3, 6, 6, 12}));
  EXPECT_EQ(j["terms"][1]["hex"], "0xb");
  EXPECT_EQ(j["terms"][1]["step_tag"], "factor_B_of_C");
}
