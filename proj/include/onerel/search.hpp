#pragma once
// Bounded isomorphism search over one-relator presentations with relators in
// the recognizable generic class, and prefix-based relator recovery.

#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <vector>

#include "onerel/counting.hpp"
#include "onerel/dehn.hpp"
#include "onerel/genericity.hpp"
#include "onerel/presentation.hpp"
#include "onerel/symmetry.hpp"
#include "onerel/words.hpp"

namespace onerel {

struct ClassParams {
  std::int32_t rank = 2;      // generators of candidate presentations
  BigRat lambda = BigRat(1, 6);
  std::int64_t max_len = 60;  // relator length ceiling
};

struct SearchBudget {
  std::int64_t map_len = 4;      // total length budget for the two map tuples
  std::int64_t depth = 2;        // conjugate factors in closure enumeration
  std::int64_t conj_len = 2;     // conjugator length in closure enumeration
  std::int64_t max_states = 20000;
  std::int64_t max_tuples = 5000;
};

// Strips cancelling end pairs without normalizing the rotation.
inline Word cyclic_core_literal(const Word& w) {
  std::size_t lo = 0, hi = w.size();
  const auto& s = w.letters();
  while (hi - lo >= 2 && s[lo] == s[hi - 1].inverse()) {
    ++lo;
    --hi;
  }
  return Word::unchecked(LetterSeq(s.begin() + static_cast<std::ptrdiff_t>(lo),
                                   s.begin() + static_cast<std::ptrdiff_t>(hi)));
}

// All freely reduced words of one length; rank 1 admits only the two powers
// and rank 0 only the empty word.
inline std::vector<Word> reduced_words_of_length(std::int32_t k, std::int64_t len) {
  if (k < 0) throw std::invalid_argument("reduced_words_of_length: negative rank");
  if (len < 0) throw std::invalid_argument("reduced_words_of_length: negative length");
  std::vector<Word> out;
  if (len == 0) {
    out.emplace_back();
    return out;
  }
  if (k == 0) return out;
  if (k == 1) {
    LetterSeq pos, neg;
    for (std::int64_t i = 0; i < len; ++i) {
      pos.push_back(Letter::make(1, false));
      neg.push_back(Letter::make(1, true));
    }
    out.push_back(Word::unchecked(std::move(pos)));
    out.push_back(Word::unchecked(std::move(neg)));
    return out;
  }
  WordEnumerator en(k, len, WordSet::FreelyReduced);
  Word w;
  while (en.next(w)) out.push_back(w);
  return out;
}

// Image of w under the homomorphism sending generator i to images[i-1].
inline Word apply_hom(const std::vector<Word>& images, const Word& w) {
  LetterSeq out;
  for (const Letter& l : w.letters()) {
    const std::size_t g = static_cast<std::size_t>(l.generator());
    if (g > images.size()) throw std::invalid_argument("apply_hom: letter outside domain");
    const Word& img = images[g - 1];
    if (l.is_inverse()) {
      const LetterSeq inv = invert_raw(img.letters());
      out.insert(out.end(), inv.begin(), inv.end());
    } else {
      out.insert(out.end(), img.letters().begin(), img.letters().end());
    }
  }
  return free_reduce(out);
}

// Breadth-first product enumeration over conjugates u r^± u^-1 of the
// relators, up to `depth` factors with conjugators of length <= conj_len.
// The identity (empty product) is always included. A false answer only
// certifies absence within the budget.
inline bool bounded_ncl_member(const std::vector<Word>& relators, std::int32_t k,
                               const Word& target, const SearchBudget& budget) {
  if (target.empty()) return true;
  std::vector<Word> conjugates;
  std::size_t max_rel = 0;
  for (std::int64_t len = 0; len <= budget.conj_len; ++len)
    for (const Word& u : reduced_words_of_length(k, len))
      for (const Word& r : relators) {
        if (r.empty()) continue;
        max_rel = std::max(max_rel, r.size());
        const Word ui = invert(u);
        conjugates.push_back(concat_reduce(concat_reduce(u, r), ui));
        conjugates.push_back(concat_reduce(concat_reduce(u, invert(r)), ui));
      }
  const std::size_t prune_len =
      target.size() + max_rel + 2 * static_cast<std::size_t>(budget.conj_len);
  std::set<Word> seen;
  std::vector<Word> frontier;
  seen.insert(Word());
  frontier.emplace_back();
  for (std::int64_t layer = 0; layer < budget.depth; ++layer) {
    std::vector<Word> next;
    for (const Word& s : frontier)
      for (const Word& c : conjugates) {
        Word prod = concat_reduce(s, c);
        if (prod == target) return true;
        if (prod.size() > prune_len) continue;
        if (static_cast<std::int64_t>(seen.size()) >= budget.max_states) continue;
        if (seen.insert(prod).second) next.push_back(std::move(prod));
      }
    frontier = std::move(next);
    if (frontier.empty()) break;
  }
  return seen.contains(target);
}

namespace detail {

// Membership in the proxy generic class: nonempty, within the length bound,
// generic and small-cancellation at 1/6.
inline bool in_search_class(const Word& v, const ClassParams& params,
                            const std::vector<Relabeling>& relabelings) {
  if (v.empty() || static_cast<std::int64_t>(v.size()) > params.max_len) return false;
  if (!is_cyclically_reduced(v.letters())) return false;
  const CyclicWord cw(v);
  return satisfies_c_prime(cw, BigRat(1, 6)).first &&
         in_E(cw, params.lambda, relabelings);
}

struct TupleVerifier {
  const Presentation& pi;
  const SearchBudget& budget;

  // The four closure conditions certifying that the maps h, h_back realize an
  // isomorphism between the groups of pi and <rank' | v>. The two candidate-
  // side checks run first: they are exact decisions and cheap to refute.
  bool verify(const Word& v, const std::vector<Word>& h,
              const std::vector<Word>& h_back) const {
    const CyclicWord cw(v);
    for (const Word& r : pi.relators)
      if (!in_normal_closure(cw, apply_hom(h, r))) return false;
    for (std::size_t j = 0; j < h_back.size(); ++j) {
      const Word back = apply_hom(h, h_back[j]);
      const Word gen_inv(LetterSeq{
          Letter::make(static_cast<std::int32_t>(j + 1), true)});
      if (!in_normal_closure(cw, concat_reduce(back, gen_inv))) return false;
    }
    if (!bounded_ncl_member(pi.relators, pi.generator_count, apply_hom(h_back, v),
                            budget))
      return false;
    for (std::size_t i = 0; i < h.size(); ++i) {
      const Word fwd = apply_hom(h_back, h[i]);
      const Word gen_inv(LetterSeq{
          Letter::make(static_cast<std::int32_t>(i + 1), true)});
      if (!bounded_ncl_member(pi.relators, pi.generator_count,
                              concat_reduce(fwd, gen_inv), budget))
        return false;
    }
    return true;
  }
};

// Enumerates tuples of words, slot i drawn over rank slot_ranks[i], with
// total length `total`, in lexicographic order of the length vector, then of
// the words; invokes fn on each until it returns true.
template <typename Fn>
bool for_each_word_tuple(const std::vector<std::int32_t>& slot_ranks,
                         std::int64_t total, std::vector<Word>& tuple,
                         std::size_t slot, Fn&& fn) {
  if (slot == slot_ranks.size()) {
    if (total != 0) return false;
    return fn(tuple);
  }
  for (std::int64_t len = 0; len <= total; ++len) {
    if (slot + 1 == slot_ranks.size() && len != total) continue;
    for (const Word& w : reduced_words_of_length(slot_ranks[slot], len)) {
      tuple[slot] = w;
      if (for_each_word_tuple(slot_ranks, total - len, tuple, slot + 1, fn))
        return true;
    }
  }
  return false;
}

}  // namespace detail

// Bounded search for a one-relator presentation in the generic class whose
// group is isomorphic to the group of pi. Candidates seeded from pi's own
// relator cores are tried with the identity maps first; the systematic phase
// then enumerates (relator, map, map) tuples by total size. Exhausting the
// budget yields an empty result, never a wrong one.
inline std::optional<Presentation> search_isomorphic(const Presentation& pi,
                                                     const ClassParams& params,
                                                     const SearchBudget& budget) {
  if (params.rank < 1) throw std::invalid_argument("search: rank must be >= 1");
  require_overlap_lambda(params.lambda);
  // Over one generator every cyclically reduced word is a single letter or a
  // proper power of it, and both fail the cancellation condition, so the
  // class has no rank-one members at all.
  if (params.rank == 1) return std::nullopt;
  const std::vector<Relabeling> relabelings = all_relabelings(params.rank);
  const detail::TupleVerifier verifier{pi, budget};
  std::int64_t tuples = 0;

  const auto try_tuple = [&](const Word& v, const std::vector<Word>& h,
                             const std::vector<Word>& h_back) -> bool {
    if (tuples >= budget.max_tuples) return false;
    ++tuples;
    return verifier.verify(v, h, h_back);
  };

  // Seed phase: each relator core with the identity maps.
  if (params.rank == pi.generator_count) {
    std::vector<Word> identity;
    for (std::int32_t i = 1; i <= params.rank; ++i)
      identity.emplace_back(LetterSeq{Letter::make(i, false)});
    std::set<Word> tried;
    for (const Word& r : pi.relators) {
      const Word v = cyclic_core_literal(r);
      if (!tried.insert(v).second) continue;
      if (!detail::in_search_class(v, params, relabelings)) continue;
      if (try_tuple(v, identity, identity))
        return Presentation(params.rank, {v});
      if (tuples >= budget.max_tuples) return std::nullopt;
    }
  }

  // Systematic phase: candidates by length then lex, map tuples by total
  // length then lex. Forward-map images live over the candidate rank,
  // backward-map images over pi's rank.
  std::vector<std::int32_t> slot_ranks;
  for (std::int32_t i = 0; i < pi.generator_count; ++i)
    slot_ranks.push_back(params.rank);
  for (std::int32_t i = 0; i < params.rank; ++i)
    slot_ranks.push_back(pi.generator_count);
  for (std::int64_t len = 1; len <= params.max_len; ++len) {
    check_enumeration_cap(params.rank, len, kDefaultEnumerationCap);
    std::vector<Word> candidates;
    WordEnumerator en(params.rank, len, WordSet::CyclicallyReduced);
    Word w;
    while (en.next(w)) candidates.push_back(w);
    for (const Word& v : candidates) {
      if (!detail::in_search_class(v, params, relabelings)) continue;
      for (std::int64_t total = 0; total <= budget.map_len; ++total) {
        std::vector<Word> tuple(slot_ranks.size());
        bool found = detail::for_each_word_tuple(
            slot_ranks, total, tuple, 0, [&](const std::vector<Word>& t) {
              const std::vector<Word> h(t.begin(),
                                        t.begin() + pi.generator_count);
              const std::vector<Word> h_back(t.begin() + pi.generator_count,
                                             t.end());
              return try_tuple(v, h, h_back);
            });
        if (found) return Presentation(params.rank, {v});
        if (tuples >= budget.max_tuples) return std::nullopt;
      }
    }
  }
  return std::nullopt;
}

// ---- Relator recovery ---------------------------------------------------------

enum class RecoverStatus { Found, Ambiguous, NotFound };

struct RecoverResult {
  RecoverStatus status = RecoverStatus::NotFound;
  Word relator;                 // the unique match when status == Found
  std::int64_t match_count = 0;
};

// Filters the symmetry-orbit strings of v by the given prefix. Exactly one
// survivor identifies the relator; several mean the prefix is too weak for
// this orbit (the word was not generic at this prefix length).
inline RecoverResult recover_from_candidate(const Word& v, const Word& prefix,
                                            std::int32_t k) {
  if (v.empty()) throw std::invalid_argument("recover: empty candidate");
  const std::set<Word> orbit = orbit_strings(CyclicWord(v), k);
  RecoverResult res;
  for (const Word& w : orbit) {
    if (w.size() < prefix.size()) continue;
    if (std::equal(prefix.letters().begin(), prefix.letters().end(),
                   w.letters().begin())) {
      if (res.match_count == 0) res.relator = w;
      ++res.match_count;
    }
  }
  res.status = res.match_count == 1
                   ? RecoverStatus::Found
                   : (res.match_count == 0 ? RecoverStatus::NotFound
                                           : RecoverStatus::Ambiguous);
  if (res.status != RecoverStatus::Found && res.match_count > 0)
    res.relator = Word();
  return res;
}

// End-to-end recovery: find an isomorphic generic one-relator presentation,
// then filter its orbit strings by the prefix.
inline RecoverResult recover_relator(const Presentation& pi, const Word& prefix,
                                     const ClassParams& params,
                                     const SearchBudget& budget) {
  const std::optional<Presentation> found = search_isomorphic(pi, params, budget);
  if (!found) return {};
  return recover_from_candidate(found->relators.at(0), prefix, params.rank);
}

}  // namespace onerel
