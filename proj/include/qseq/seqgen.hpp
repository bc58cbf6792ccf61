#pragma once

// Construction of an infinite sequence of binary irreducible polynomials from
// an arbitrary irreducible seed f0. After a short initial segment f0..fs the
// sequence continues by Q-transform doubling, fs being the first term of type A.

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "qseq/gf2poly.hpp"
#include "qseq/irreducibility.hpp"
#include "qseq/qtransform.hpp"
#include "qseq/recsplit.hpp"

namespace qseq {

/// Which construction rule produced a term.
enum class StepTag { seed, q_transform, factor_B_of_C, procedure_step, restart_h2, doubling };

constexpr std::string_view to_string(StepTag t) noexcept {
  switch (t) {
    case StepTag::seed: return "seed";
    case StepTag::q_transform: return "q_transform";
    case StepTag::factor_B_of_C: return "factor_B_of_C";
    case StepTag::procedure_step: return "procedure_step";
    case StepTag::restart_h2: return "restart_h2";
    case StepTag::doubling: return "doubling";
  }
  return "unknown";
}

struct Term {
  BitPoly poly;
  PolyType type;
  StepTag step = StepTag::seed;
};

struct SequenceRecord {
  std::vector<Term> terms;
  std::size_t s = 0;  // index of the first type-A term
  std::uint64_t rng_seed = 0;
  /// Chain discarded when the first factor of a type-D seed never reached type A.
  std::optional<std::vector<Term>> attempts;
};

struct ProcedureOutcome {
  std::vector<BitPoly> chain;  // p0, p1, ...
  bool reached_type_a = false;

  explicit operator bool() const noexcept { return reached_type_a; }
};

/// Starting from a type-(D, n') polynomial p0, repeatedly replaces p by the canonical factor of
/// p^Q until a type-A polynomial appears. Gives up after l'+1 steps, which only happens when
/// the roots of p0 are periodic under x + 1/x.
inline ProcedureOutcome run_procedure(const BitPoly& p0, std::size_t n_prime, std::size_t l_prime,
                                      std::uint64_t rng_seed = 0) {
  if (p0.is_zero() || p0.deg() != n_prime)
    throw Error(Errc::bad_degree, "procedure input must have degree " + std::to_string(n_prime));
  if (classify(p0).letter != TypeLetter::D)
    throw Error(Errc::wrong_type, "procedure input " + to_hex(p0) + " is of type " + classify(p0).to_string());

  ProcedureOutcome out;
  out.chain.push_back(p0);
  for (std::size_t step = 1; step <= l_prime + 1; ++step) {
    ReciprocalPair pair = split_reciprocal_pair(q_transform(out.chain.back()), n_prime, rng_seed);
    const TypeLetter letter = classify(pair.g1).letter;
    out.chain.push_back(std::move(pair.g1));
    if (letter == TypeLetter::A) {
      out.reached_type_a = true;
      return out;
    }
    if (letter != TypeLetter::D)
      throw Error(Errc::lemma_violated, "factor " + to_hex(out.chain.back()) + " of a type-D transform is not A or D");
  }
  return out;
}

namespace detail {

inline void push_term(SequenceRecord& rec, BitPoly p, StepTag tag) {
  PolyType t = classify(p);
  rec.terms.push_back({std::move(p), t, tag});
}

inline void append_chain(SequenceRecord& rec, const ProcedureOutcome& outcome, std::size_t from, StepTag first_tag) {
  for (std::size_t i = from; i < outcome.chain.size(); ++i)
    push_term(rec, outcome.chain[i], i == from ? first_tag : StepTag::procedure_step);
}

inline void expect_type(const BitPoly& p, TypeLetter letter, std::size_t n, const char* rule) {
  const PolyType t = classify(p);
  if (t.letter != letter || t.n != n)
    throw Error(Errc::lemma_violated, std::string(rule) + ": " + to_hex(p) + " has type " + t.to_string());
}

}  // namespace detail

/// The terms f0..fs, with fs the first type-A term.
inline SequenceRecord initial_segment(const BitPoly& f0, std::uint64_t rng_seed = 0) {
  if (f0.is_zero() || f0.deg() == 0) throw Error(Errc::degree_zero, "seed must have degree >= 1");
  if (!is_irreducible(f0)) throw Error(Errc::not_irreducible, to_hex(f0) + " is reducible");

  SequenceRecord rec;
  rec.rng_seed = rng_seed;
  detail::push_term(rec, f0, StepTag::seed);
  const PolyType type = rec.terms.front().type;
  const std::size_t n = type.n;

  switch (type.letter) {
    case TypeLetter::A:
      break;

    case TypeLetter::B: {
      if (n == 1) {
        // x^Q = (x+1)^2
        detail::push_term(rec, BitPoly(0b11), StepTag::procedure_step);
        break;
      }
      BitPoly f1 = q_transform(f0);
      detail::expect_type(f1, TypeLetter::D, 2 * n, "transform of a type-B seed");
      const ProcedureOutcome outcome = run_procedure(f1, 2 * n, type.l + 1, rng_seed);
      if (!outcome)
        throw Error(Errc::internal_bound_violated, "procedure from " + to_hex(f1) + " did not reach type A");
      detail::append_chain(rec, outcome, 0, StepTag::q_transform);
      break;
    }

    case TypeLetter::C: {
      const ReciprocalPair pair = split_reciprocal_pair(q_transform(f0), n, rng_seed);
      const BitPoly& f1 = classify(pair.g1).letter == TypeLetter::B ? pair.g1 : pair.g2;
      detail::expect_type(f1, TypeLetter::B, n, "factor of a type-C transform");
      detail::push_term(rec, f1, StepTag::factor_B_of_C);
      BitPoly f2 = q_transform(f1);
      detail::expect_type(f2, TypeLetter::D, 2 * n, "transform of the type-B factor");
      const ProcedureOutcome outcome = run_procedure(f2, 2 * n, type.l + 1, rng_seed);
      if (!outcome)
        throw Error(Errc::internal_bound_violated, "procedure from " + to_hex(f2) + " did not reach type A");
      detail::append_chain(rec, outcome, 0, StepTag::q_transform);
      break;
    }

    case TypeLetter::D: {
      const ReciprocalPair pair = split_reciprocal_pair(q_transform(f0), n, rng_seed);
      const TypeLetter t1 = classify(pair.g1).letter;
      const TypeLetter t2 = classify(pair.g2).letter;
      if (t1 == TypeLetter::A && t2 == TypeLetter::A) {
        detail::push_term(rec, pair.g1, StepTag::procedure_step);
        break;
      }
      if (t1 != TypeLetter::D || t2 != TypeLetter::D)
        throw Error(Errc::lemma_violated, "factors of a type-D transform are of mixed type");

      const ProcedureOutcome first = run_procedure(pair.g1, n, type.l, rng_seed);
      if (first) {
        detail::append_chain(rec, first, 0, StepTag::procedure_step);
        break;
      }
      std::vector<Term> discarded;
      for (const auto& p : first.chain) discarded.push_back({p, classify(p), StepTag::procedure_step});
      rec.attempts = std::move(discarded);

      const ProcedureOutcome second = run_procedure(pair.g2, n, type.l, rng_seed);
      if (!second)
        throw Error(Errc::internal_bound_violated, "neither factor of " + to_hex(q_transform(f0)) + " reached type A");
      detail::append_chain(rec, second, 0, StepTag::restart_h2);
      break;
    }
  }

  rec.s = rec.terms.size() - 1;
  if (rec.s > type.l + 3)
    throw Error(Errc::internal_bound_violated, "break index " + std::to_string(rec.s) + " exceeds l+3");
  return rec;
}

/// Throws VerificationFailed unless every term passes the Rabin test.
inline void verify_terms(const SequenceRecord& rec, std::size_t from = 0) {
  for (std::size_t i = from; i < rec.terms.size(); ++i) {
    if (!is_irreducible(rec.terms[i].poly))
      throw Error(Errc::verification_failed, "term " + std::to_string(i) + " is reducible");
  }
}

/// Appends Q-transform doublings until the record holds `count` terms.
inline void extend_by_doubling(SequenceRecord& rec, std::size_t count, bool verify = true) {
  const std::size_t before = rec.terms.size();
  while (rec.terms.size() < count) {
    BitPoly next = q_transform(rec.terms.back().poly);
    detail::push_term(rec, std::move(next), StepTag::doubling);
  }
  if (verify) verify_terms(rec, before);
}

/// First `count` terms of the sequence. When count is shorter than the initial segment the
/// record is truncated but still reports the break index s.
inline SequenceRecord sequence_stream(const BitPoly& f0, std::size_t count, std::uint64_t rng_seed = 0,
                                      bool verify = true) {
  if (count == 0) throw Error(Errc::bad_degree, "term count must be at least 1");
  SequenceRecord rec = initial_segment(f0, rng_seed);
  if (verify) verify_terms(rec);
  if (rec.terms.size() > count)
    rec.terms.resize(count);
  else
    extend_by_doubling(rec, count, verify);
  return rec;
}

}  // namespace qseq
