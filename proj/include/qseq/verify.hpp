#pragma once

// Exhaustive checks of the type theorems, coefficient lemmas, the sequence
// bound and the theta-graph structure over all irreducibles up to a degree.

#include <algorithm>
#include <atomic>
#include <chrono>
#include <mutex>
#include <string>
#include <thread>
#include <vector>

#include "qseq/gf2poly.hpp"
#include "qseq/irreducibility.hpp"
#include "qseq/qtransform.hpp"
#include "qseq/recsplit.hpp"
#include "qseq/seqgen.hpp"
#include "qseq/thetagraph.hpp"

namespace qseq {

struct Counterexample {
  BitPoly poly;  // offending input; zero for checks not keyed by a polynomial
  std::string reason;
};

struct CheckResult {
  std::string name;
  std::size_t cases = 0;
  std::vector<Counterexample> counterexamples;  // sorted by poly
  double seconds = 0.0;

  bool passed() const noexcept { return counterexamples.empty(); }
};

struct VerifyOptions {
  std::size_t min_degree = 2;
  std::size_t max_degree = 12;
  std::size_t graph_max_n = 12;
  std::uint64_t rng_seed = 0;
  unsigned threads = 0;  // 0: hardware concurrency
};

namespace detail {

inline unsigned worker_count(unsigned requested) {
  if (requested != 0) return requested;
  return std::max(1U, std::thread::hardware_concurrency());
}

/// Runs check(i, out) for i in [0, count) on a pool of threads. Errors thrown by a check are
/// recorded against `key(i)`.
template <class Check, class Key>
std::vector<Counterexample> parallel_check(std::size_t count, unsigned threads, Check check, Key key) {
  std::atomic<std::size_t> next{0};
  std::mutex lock;
  std::vector<Counterexample> all;
  auto worker = [&] {
    std::vector<Counterexample> local;
    for (std::size_t i = next++; i < count; i = next++) {
      try {
        check(i, local);
      } catch (const std::exception& e) {
        local.push_back({key(i), e.what()});
      }
    }
    std::lock_guard<std::mutex> guard(lock);
    all.insert(all.end(), std::make_move_iterator(local.begin()), std::make_move_iterator(local.end()));
  };
  const unsigned n = std::min<unsigned>(worker_count(threads), static_cast<unsigned>(std::max<std::size_t>(count, 1)));
  std::vector<std::thread> pool;
  for (unsigned t = 1; t < n; ++t) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();
  std::sort(all.begin(), all.end(), [](const Counterexample& a, const Counterexample& b) {
    if (a.poly != b.poly) return a.poly < b.poly;
    return a.reason < b.reason;
  });
  return all;
}

inline std::vector<BitPoly> irreducibles_in_range(std::size_t lo, std::size_t hi) {
  std::vector<BitPoly> out;
  for (std::size_t d = lo; d <= hi; ++d) {
    auto batch = irreducibles_of_degree(d);
    out.insert(out.end(), batch.begin(), batch.end());
  }
  return out;
}

template <class Check>
CheckResult run_poly_check(std::string name, const VerifyOptions& opt, Check check) {
  const auto start = std::chrono::steady_clock::now();
  const std::vector<BitPoly> polys = irreducibles_in_range(opt.min_degree, opt.max_degree);
  CheckResult r;
  r.name = std::move(name);
  r.cases = polys.size();
  r.counterexamples = parallel_check(
      polys.size(), opt.threads,
      [&](std::size_t i, std::vector<Counterexample>& out) { check(polys[i], out); },
      [&](std::size_t i) { return polys[i]; });
  r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return r;
}

inline bool same_letters(TypeLetter a, TypeLetter b, TypeLetter x, TypeLetter y) {
  return (a == x && b == y) || (a == y && b == x);
}

}  // namespace detail

/// f^Q is irreducible iff a_1 = 1, for irreducible f with a_0 = 1.
inline CheckResult check_irreducibility_criterion(const VerifyOptions& opt = {}) {
  return detail::run_poly_check("irreducibility criterion: f^Q irreducible iff a1 = 1", opt,
                                [](const BitPoly& f, std::vector<Counterexample>& out) {
                                  if (!f.coeff(0)) return;
                                  const bool irr = is_irreducible(q_transform(f));
                                  if (irr != f.coeff(1))
                                    out.push_back({f, std::string("f^Q irreducible=") + (irr ? "1" : "0") +
                                                          " but a1=" + (f.coeff(1) ? "1" : "0")});
                                });
}

/// Type (A,n) implies f^Q is self-reciprocal and irreducible of degree 2n.
inline CheckResult check_self_reciprocal_transform(const VerifyOptions& opt = {}) {
  return detail::run_poly_check("self-reciprocal transform: type A => f^Q self-reciprocal irreducible of degree 2n", opt,
                                [](const BitPoly& f, std::vector<Counterexample>& out) {
                                  if (classify(f).letter != TypeLetter::A) return;
                                  const BitPoly g = q_transform(f);
                                  if (g.deg() != 2 * f.deg()) out.push_back({f, "degree of f^Q is not 2n"});
                                  if (!is_self_reciprocal(g)) out.push_back({f, "f^Q is not self-reciprocal"});
                                  if (!is_irreducible(g)) out.push_back({f, "f^Q is reducible"});
                                });
}

/// b_{2n-1} = b_1 = a_{n-1} for every f, and for every split f^Q = g1 g2:
/// b = 0 gives a_{n-1}(g_i) = a_1(g_i), b = 1 gives types {B, C}.
inline CheckResult check_coefficient_lemmas(const VerifyOptions& opt = {}) {
  const std::uint64_t seed = opt.rng_seed;
  return detail::run_poly_check(
      "coefficient lemmas: Q-transform pattern and split pattern", opt,
      [seed](const BitPoly& f, std::vector<Counterexample>& out) {
        const CoefficientLemmaReport rep = check_coefficient_lemma(f);
        const std::size_t n = f.deg();
        if (n < 2 || f.coeff(1)) return;  // f^Q is irreducible when a_1 = 1
        const ReciprocalPair pair = split_reciprocal_pair(rep.transform, n, seed);
        if (mul(pair.g1, pair.g2) != rep.transform) out.push_back({f, "g1*g2 != f^Q"});
        if (reciprocal(pair.g1) != pair.g2) out.push_back({f, "g2 != g1*"});
        if (!is_irreducible(pair.g1) || !is_irreducible(pair.g2)) out.push_back({f, "split factor reducible"});
        const bool b = rep.b_top;
        for (const BitPoly* g : {&pair.g1, &pair.g2}) {
          if (!b && g->coeff(n - 1) != g->coeff(1))
            out.push_back({f, "b=0 but factor " + to_hex(*g) + " has a_{n-1} != a_1"});
        }
        if (b && !detail::same_letters(classify(pair.g1).letter, classify(pair.g2).letter, TypeLetter::B,
                                       TypeLetter::C))
          out.push_back({f, "b=1 but factor types are not {B, C}"});
      });
}

/// B -> (D, 2n); C -> factors {B, C}; D -> factors {A, A} or {D, D}. Also checks x^Q = (x+1)^2.
inline CheckResult check_type_theorems(const VerifyOptions& opt = {}) {
  const std::uint64_t seed = opt.rng_seed;
  CheckResult r = detail::run_poly_check(
      "type theorems: B -> (D,2n), C -> {B,C}, D -> {A,A} | {D,D}", opt,
      [seed](const BitPoly& f, std::vector<Counterexample>& out) {
        const PolyType t = classify(f);
        const BitPoly g = q_transform(f);
        switch (t.letter) {
          case TypeLetter::A:
            return;
          case TypeLetter::B: {
            if (t.n == 1) return;
            const PolyType tg = classify(g);
            if (!is_irreducible(g) || tg.letter != TypeLetter::D || tg.n != 2 * t.n)
              out.push_back({f, "type B transform is not an irreducible (D, 2n): " + tg.to_string()});
            return;
          }
          case TypeLetter::C: {
            const ReciprocalPair p = split_reciprocal_pair(g, t.n, seed);
            if (p.g1 == p.g2 ||
                !detail::same_letters(classify(p.g1).letter, classify(p.g2).letter, TypeLetter::B, TypeLetter::C))
              out.push_back({f, "type C transform factors are not {B, C}"});
            return;
          }
          case TypeLetter::D: {
            const ReciprocalPair p = split_reciprocal_pair(g, t.n, seed);
            const TypeLetter a = classify(p.g1).letter, b = classify(p.g2).letter;
            if (p.g1 == p.g2 || !(detail::same_letters(a, b, TypeLetter::A, TypeLetter::A) ||
                                  detail::same_letters(a, b, TypeLetter::D, TypeLetter::D)))
              out.push_back({f, "type D transform factors are not {A, A} or {D, D}"});
            return;
          }
        }
      });
  ++r.cases;
  if (q_transform(BitPoly::x()) != mul(BitPoly(0b11), BitPoly(0b11)))
    r.counterexamples.insert(r.counterexamples.begin(), {BitPoly::x(), "x^Q != (x+1)^2"});
  return r;
}

/// Builds each sequence, extends it two doublings past s, and checks the break index bounds.
inline CheckResult check_sequence_bound(const VerifyOptions& opt = {}) {
  const std::uint64_t seed = opt.rng_seed;
  return detail::run_poly_check(
      "sequence bound: s <= l+3 (s <= 3 for odd n), doubling after s", opt,
      [seed](const BitPoly& f, std::vector<Counterexample>& out) {
        const PolyType t0 = classify(f);
        SequenceRecord rec = initial_segment(f, seed);
        const std::size_t s = rec.s;
        extend_by_doubling(rec, s + 3, true);
        verify_terms(rec);
        auto bad = [&](const std::string& why) { out.push_back({f, why + " (s=" + std::to_string(s) + ")"}); };

        if (rec.terms[s].type.letter != TypeLetter::A) bad("term s is not type A");
        for (std::size_t i = 0; i < s; ++i)
          if (rec.terms[i].type.letter == TypeLetter::A) bad("type A before index s");
        if (s > t0.l + 3) bad("s exceeds l+3");
        if (t0.m == t0.n && s > 3) bad("odd degree with s > 3");
        if ((t0.letter == TypeLetter::B || t0.letter == TypeLetter::D) && s > t0.l + 2) bad("s exceeds l+2");
        for (std::size_t i = s; i + 1 < rec.terms.size(); ++i) {
          if (rec.terms[i + 1].type.n != 2 * rec.terms[i].type.n) bad("degree does not double after s");
          if (rec.terms[i + 1].poly != q_transform(rec.terms[i].poly)) bad("term after s is not a Q-transform");
        }
      });
}

/// Structure of the theta graph for n = 1..graph_max_n.
inline CheckResult check_graph_structure(const VerifyOptions& opt = {}) {
  const auto start = std::chrono::steady_clock::now();
  CheckResult r;
  r.name = "theta graph structure";
  r.cases = opt.graph_max_n;
  r.counterexamples = detail::parallel_check(
      opt.graph_max_n, opt.threads,
      [](std::size_t i, std::vector<Counterexample>& out) {
        const ThetaGraph g = build_graph(i + 1);
        const StructureReport rep = verify_structure(g);
        for (const auto& v : rep.violations)
          out.push_back({g.modulus(), "n=" + std::to_string(i + 1) + ": " + v});
      },
      [](std::size_t i) { return BitPoly::monomial(i + 1); });
  r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return r;
}

inline std::vector<CheckResult> run_all_checks(const VerifyOptions& opt = {}) {
  return {check_irreducibility_criterion(opt),      check_self_reciprocal_transform(opt),           check_coefficient_lemmas(opt),
          check_type_theorems(opt), check_sequence_bound(opt), check_graph_structure(opt)};
}

}  // namespace qseq
