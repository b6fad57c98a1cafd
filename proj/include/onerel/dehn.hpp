#pragma once
// Length-reduction word-problem procedure for one-relator presentations whose
// relator satisfies the small-cancellation condition at 1/6: a word lies in
// the normal closure of the relator exactly when it reduces to the empty
// word.

#include <cstdint>
#include <stdexcept>
#include <vector>

#include "onerel/genericity.hpp"
#include "onerel/words.hpp"

namespace onerel {

struct DehnStep {
  std::int64_t position = 0;  // offset in the working cyclic word
  Word fragment;              // matched initial segment of a symmetrized element
  std::int64_t length_before = 0;
  std::int64_t length_after = 0;
};

struct DehnTrace {
  std::vector<DehnStep> steps;
};

struct DehnResult {
  Word reduced;  // empty iff the input lies in the normal closure
  DehnTrace trace;
};

// Repeatedly locate a cyclic subword of w matching more than half of some
// element of the symmetrized set of r and replace it by the inverse of that
// element's remainder, freely and cyclically reducing between steps. The
// replacement site is the leftmost qualifying position, the longest match
// there, ties broken by symmetrized-set element order.
inline DehnResult dehn_reduce(const CyclicWord& r, const Word& w) {
  if (!satisfies_c_prime(r, BigRat(1, 6)).first)
    throw std::invalid_argument(
        "dehn_reduce: relator must satisfy the 1/6 small-cancellation condition");
  const std::size_t n = r.size();
  const std::size_t qualify = n / 2 + 1;  // smallest L with 2L > n

  std::vector<LetterSeq> elems;
  elems.reserve(2 * n);
  const auto& rep = r.representative().letters();
  const LetterSeq inv = invert_raw(rep);
  for (std::size_t a = 0; a < n; ++a) {
    elems.push_back(rotate_raw(rep, a));
    elems.push_back(rotate_raw(inv, a));
  }
  std::sort(elems.begin(), elems.end());
  elems.erase(std::unique(elems.begin(), elems.end()), elems.end());

  LetterSeq cur = cyclic_reduce(w).core.representative().letters();
  DehnTrace trace;
  while (!cur.empty()) {
    const std::size_t len = cur.size();
    const std::size_t cap = std::min(n, len);
    std::size_t match_start = len, match_len = 0, match_elem = 0;
    for (std::size_t start = 0; start < len && match_start == len; ++start) {
      std::size_t lo = 0, hi = elems.size(), depth = 0;
      while (depth < cap) {
        const Letter target = cur[(start + depth) % len];
        const auto cmp = [depth](const auto& a, const auto& b) {
          if constexpr (std::is_same_v<std::decay_t<decltype(a)>, LetterSeq>)
            return a[depth] < b;
          else
            return a < b[depth];
        };
        const auto lo_it = std::lower_bound(elems.begin() + lo, elems.begin() + hi,
                                            target, cmp);
        const auto hi_it = std::upper_bound(lo_it, elems.begin() + hi, target, cmp);
        if (lo_it == hi_it) break;
        lo = static_cast<std::size_t>(lo_it - elems.begin());
        hi = static_cast<std::size_t>(hi_it - elems.begin());
        ++depth;
      }
      if (depth >= qualify) {
        match_start = start;
        match_len = depth;
        match_elem = lo;
      }
    }
    if (match_start == len) break;

    const LetterSeq rotated = rotate_raw(cur, match_start);
    const LetterSeq& elem = elems[match_elem];
    LetterSeq next = invert_raw(
        std::span<const Letter>(elem).subspan(match_len));
    next.insert(next.end(), rotated.begin() + static_cast<std::ptrdiff_t>(match_len),
                rotated.end());
    const LetterSeq reduced =
        cyclic_reduce(free_reduce(next)).core.representative().letters();
    trace.steps.push_back(
        {static_cast<std::int64_t>(match_start),
         Word::unchecked(LetterSeq(elem.begin(),
                                   elem.begin() + static_cast<std::ptrdiff_t>(match_len))),
         static_cast<std::int64_t>(len), static_cast<std::int64_t>(reduced.size())});
    cur = reduced;
  }
  return {Word::unchecked(std::move(cur)), std::move(trace)};
}

inline bool in_normal_closure(const CyclicWord& r, const Word& w) {
  return dehn_reduce(r, w).reduced.empty();
}

}  // namespace onerel
