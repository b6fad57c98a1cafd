#pragma once
// The acceptance suite: twelve self-contained checks with pinned seeds and
// tolerances, each returning a pass/fail verdict with a one-line detail.

#include <chrono>
#include <cstdint>
#include <sstream>
#include <string>
#include <vector>

#include "onerel/complexity.hpp"
#include "onerel/counting.hpp"
#include "onerel/dehn.hpp"
#include "onerel/genericity.hpp"
#include "onerel/presentation.hpp"
#include "onerel/sample.hpp"
#include "onerel/search.hpp"
#include "onerel/symmetry.hpp"
#include "onerel/words.hpp"

namespace onerel {

struct CriterionResult {
  int id = 0;
  std::string name;
  bool pass = false;
  std::string detail;
  std::int64_t millis = 0;
};

namespace detail {

constexpr std::uint64_t criterion_seed(int id) {
  return 0x5EED0000ULL + static_cast<std::uint64_t>(id);
}

template <typename Fn>
CriterionResult timed_criterion(int id, const std::string& name, Fn&& body) {
  CriterionResult res;
  res.id = id;
  res.name = name;
  const auto start = std::chrono::steady_clock::now();
  std::ostringstream detail;
  res.pass = body(detail);
  res.detail = detail.str();
  res.millis = std::chrono::duration_cast<std::chrono::milliseconds>(
                   std::chrono::steady_clock::now() - start)
                   .count();
  return res;
}

}  // namespace detail

// 1. Enumerated cyclically reduced counts match the closed form exactly.
inline CriterionResult criterion_rivin_exactness() {
  return detail::timed_criterion(1, "closed-form CR counts", [](std::ostringstream& out) {
    for (std::int32_t k : {2, 3}) {
      const std::int64_t n_max = k == 2 ? 13 : 8;
      for (std::int64_t n = 1; n <= n_max; ++n) {
        const BigInt brute = enumerate_count(k, n, WordSet::CyclicallyReduced);
        const BigInt formula = gamma_count(k, n, WordSet::CyclicallyReduced);
        if (brute != formula) {
          out << "mismatch at k=" << k << " n=" << n << ": " << brute.get_str()
              << " vs " << formula.get_str();
          return false;
        }
      }
    }
    out << "k=2 n<=13 and k=3 n<=8 all exact";
    return true;
  });
}

// 2. Enumerated freely reduced counts match 2k(2k-1)^(n-1) exactly.
inline CriterionResult criterion_free_counts() {
  return detail::timed_criterion(2, "closed-form reduced counts", [](std::ostringstream& out) {
    for (std::int32_t k : {2, 3}) {
      const std::int64_t n_max = k == 2 ? 13 : 8;
      for (std::int64_t n = 1; n <= n_max; ++n) {
        const BigInt brute = enumerate_count(k, n, WordSet::FreelyReduced);
        const BigInt formula = gamma_count(k, n, WordSet::FreelyReduced);
        if (brute != formula) {
          out << "mismatch at k=" << k << " n=" << n << ": " << brute.get_str()
              << " vs " << formula.get_str();
          return false;
        }
      }
    }
    out << "k=2 n<=13 and k=3 n<=8 all exact";
    return true;
  });
}

// 3. Orbit census: tiny-n oracle values, method agreement, ratio behavior.
inline CriterionResult criterion_orbit_census() {
  return detail::timed_criterion(3, "orbit census oracle", [](std::ostringstream& out) {
    const std::vector<BigInt> expected = {1, 2, 2};
    for (std::int64_t n = 1; n <= 3; ++n) {
      const BigInt got = count_orbits(2, n, CensusMethod::Canonicalize);
      if (got != expected[static_cast<std::size_t>(n - 1)]) {
        out << "orbit count at n=" << n << " is " << got.get_str();
        return false;
      }
    }
    for (std::int64_t n = 1; n <= 10; ++n) {
      const BigInt canon = count_orbits(2, n, CensusMethod::Canonicalize);
      const BigInt burn = count_orbits(2, n, CensusMethod::Burnside);
      if (canon != burn) {
        out << "methods disagree at n=" << n << ": " << canon.get_str() << " vs "
            << burn.get_str();
        return false;
      }
    }
    BigRat prev;
    bool first = true;
    for (std::int64_t n : {7, 10, 13}) {
      if (count_orbits(2, n, CensusMethod::Canonicalize) !=
          count_orbits(2, n, CensusMethod::Burnside)) {
        out << "methods disagree at n=" << n;
        return false;
      }
      const BigRat ratio = census_ratio(2, n, CensusMethod::Burnside);
      if (ratio < 1) {
        out << "ratio below 1 at n=" << n;
        return false;
      }
      if (!first && ratio >= prev) {
        out << "ratio not strictly decreasing at n=" << n;
        return false;
      }
      if (n == 13 && ratio > BigRat(5, 4)) {
        out << "ratio(13) = " << ratio.get_str() << " exceeds 5/4";
        return false;
      }
      prev = ratio;
      first = false;
    }
    out << "orbits 1,2,2; methods agree n<=13; ratio decreasing, ratio(13) <= 5/4";
    return true;
  });
}

// 4. Generic words have full orbits: |y_set| = 2M n - 1 and orbit size 2M n.
inline CriterionResult criterion_y_set_cardinality() {
  return detail::timed_criterion(4, "y-set cardinality", [](std::ostringstream& out) {
    const std::int32_t k = 2;
    const std::int64_t n = 60;
    const BigRat lambda(1, 6);
    const std::vector<Relabeling> rel = all_relabelings(k);
    Rng rng(detail::criterion_seed(4));
    int accepted = 0;
    std::uint64_t attempts = 0;
    while (accepted < 100) {
      if (++attempts > 10000) {
        out << "sampling stalled";
        return false;
      }
      const CyclicWord x = sample_cyclically_reduced(k, n, rng);
      if (!in_E(x, lambda, rel)) continue;
      ++accepted;
      const OrbitRecord rec = orbit_record(x, k);
      if (rec.orbit_size != 960) {
        out << "orbit size " << rec.orbit_size << " at accepted case " << accepted;
        return false;
      }
      if (y_set(x, k).size() != 959) {
        out << "y-set size mismatch at accepted case " << accepted;
        return false;
      }
    }
    out << "100/100 words: orbit 960, y-set 959";
    return true;
  });
}

// 5. The complement of the generic class decays with length.
inline CriterionResult criterion_genericity_decay() {
  return detail::timed_criterion(5, "generic-class decay", [](std::ostringstream& out) {
    const std::int32_t k = 2;
    const BigRat lambda(1, 6);
    const std::vector<Relabeling> rel = all_relabelings(k);
    const CyclicPredicate complement = [&](const CyclicWord& x) {
      return !in_E(x, lambda, rel);
    };
    const std::int64_t samples = 20000;
    std::vector<DensityPoint> series;
    for (std::int64_t n : {30, 40, 50, 60})
      series.push_back(density_estimate(complement, k, n, samples,
                                        detail::criterion_seed(5) + static_cast<std::uint64_t>(n)));
    const DensityPoint at120 = density_estimate(
        complement, k, 120, samples, detail::criterion_seed(5) + 120);
    const double d60 = series.back().density;
    if (d60 > 0.2) {
      out << "complement density at n=60 is " << d60;
      return false;
    }
    if (at120.density > 0.05) {
      out << "complement density at n=120 is " << at120.density;
      return false;
    }
    if (!(at120.density < d60)) {
      out << "density did not fall from n=60 (" << d60 << ") to n=120 ("
          << at120.density << ")";
      return false;
    }
    const DecayFit fit = decay_fit(series);
    if (fit.status != DecayFit::Status::Ok || fit.slope >= 0.0) {
      out << "log-density slope not negative";
      return false;
    }
    out << "complement " << d60 << " at n=60, " << at120.density
        << " at n=120, slope " << fit.slope;
    return true;
  });
}

// 6. Small cancellation at 1/6 is common at n=100.
inline CriterionResult criterion_small_cancellation_density() {
  return detail::timed_criterion(6, "small-cancellation density", [](std::ostringstream& out) {
    const CyclicPredicate pred = [](const CyclicWord& x) {
      return satisfies_c_prime(x, BigRat(1, 6)).first;
    };
    const DensityPoint pt =
        density_estimate(pred, 2, 100, 10000, detail::criterion_seed(6));
    if (pt.density < 0.9) {
      out << "density " << pt.density << " below 0.9";
      return false;
    }
    out << "fraction " << pt.density << " over 10000 samples";
    return true;
  });
}

// 7. The reduction procedure decides closure membership on both sides.
inline CriterionResult criterion_dehn_oracle() {
  return detail::timed_criterion(7, "length-reduction oracle", [](std::ostringstream& out) {
    const std::int32_t k = 2;
    const std::int64_t n = 60;
    Rng rng(detail::criterion_seed(7));
    const Word a1(LetterSeq{Letter::make(1, false)});
    int cases = 0;
    std::uint64_t attempts = 0;
    while (cases < 100) {
      if (++attempts > 10000) {
        out << "sampling stalled";
        return false;
      }
      const CyclicWord r = sample_cyclically_reduced(k, n, rng);
      if (!satisfies_c_prime(r, BigRat(1, 6)).first) continue;
      ++cases;
      const std::uint64_t factors = 1 + rng.below(5);
      Word product;
      for (std::uint64_t f = 0; f < factors; ++f) {
        const Word u =
            sample_freely_reduced(k, static_cast<std::int64_t>(rng.below(9)), rng);
        Word conj = concat_reduce(u, rng.below(2) ? invert(r.representative())
                                                  : r.representative());
        conj = concat_reduce(conj, invert(u));
        product = concat_reduce(product, conj);
      }
      if (!dehn_reduce(r, product).reduced.empty()) {
        out << "member did not reduce to empty at case " << cases;
        return false;
      }
      if (dehn_reduce(r, a1).reduced.empty()) {
        out << "single generator reduced to empty at case " << cases;
        return false;
      }
    }
    out << "100/100 members empty, 100/100 non-members nonempty";
    return true;
  });
}

// 8. End-to-end relator recovery from an orbit-mate and a length-10 prefix.
inline CriterionResult criterion_relator_recovery() {
  return detail::timed_criterion(8, "relator recovery", [](std::ostringstream& out) {
    const std::int32_t k = 2;
    const std::int64_t n = 60;
    const BigRat lambda(1, 6);
    const std::vector<Relabeling> rel = all_relabelings(k);
    ClassParams params;
    params.rank = k;
    params.lambda = lambda;
    params.max_len = n;
    const SearchBudget budget;
    Rng rng(detail::criterion_seed(8));
    int cases = 0;
    std::uint64_t attempts = 0;
    while (cases < 100) {
      if (++attempts > 10000) {
        out << "sampling stalled";
        return false;
      }
      const CyclicWord x = sample_cyclically_reduced(k, n, rng);
      if (!in_E(x, lambda, rel)) continue;
      if (!satisfies_c_prime(x, BigRat(1, 6)).first) continue;
      ++cases;
      const Word r = canonical_form(x, rel);
      // Random orbit-mate: relabeling, optional inversion, rotation.
      const Relabeling& tau = rel[rng.below(rel.size())];
      LetterSeq mate = r.letters();
      if (rng.below(2)) mate = invert_raw(mate);
      mate = tau.apply_raw(mate);
      mate = rotate_raw(mate, rng.below(static_cast<std::uint64_t>(n)));
      const Word v = Word::unchecked(std::move(mate));
      const Word prefix(LetterSeq(r.letters().begin(), r.letters().begin() + 10));
      const Presentation pi(k, {v});
      const RecoverResult res = recover_relator(pi, prefix, params, budget);
      if (res.status != RecoverStatus::Found || !(res.relator == r)) {
        out << "recovery failed at case " << cases;
        return false;
      }
    }
    out << "100/100 recovered letter-for-letter";
    return true;
  });
}

// 9. Encoding: exact round-trip, the closed-form length bound, and log-factor
// growth on a doubling-generator family.
inline CriterionResult criterion_encoding() {
  return detail::timed_criterion(9, "presentation encoding", [](std::ostringstream& out) {
    Rng rng(detail::criterion_seed(9));
    for (int trial = 0; trial < 10000; ++trial) {
      const std::int32_t m = 2 + static_cast<std::int32_t>(rng.below(5));
      const std::int64_t t = static_cast<std::int64_t>(rng.below(4));
      std::vector<Word> rels;
      for (std::int64_t i = 0; i < t; ++i)
        rels.push_back(sample_freely_reduced(
            m, 1 + static_cast<std::int64_t>(rng.below(12)), rng));
      const Presentation p(m, std::move(rels));
      const EncodedPresentation e = encode_presentation(p);
      if (!(decode_presentation(e) == p)) {
        out << "round-trip failed at trial " << trial;
        return false;
      }
      if (static_cast<std::int64_t>(e.six_letter.size()) >
          six_letter_bound(m, ell_1(p), static_cast<std::int64_t>(p.relators.size()))) {
        out << "length bound violated at trial " << trial;
        return false;
      }
      if (e.binary.size() != 3 * e.six_letter.size()) {
        out << "block-code length mismatch at trial " << trial;
        return false;
      }
    }
    const Presentation commutator(
        2, {parse_word("abAB", 2)});
    if (encode_presentation(commutator).six_letter != "10|b1b10-b1-b10") {
      out << "commutator encoding is " << encode_presentation(commutator).six_letter;
      return false;
    }
    // Growth family: doubling generator count, fixed relator shape on the two
    // top-indexed generators so every letter costs ~log2(m) digits.
    double min_ratio = 0.0, max_ratio = 0.0;
    for (int j = 2; j <= 9; ++j) {
      const std::int32_t m = 1 << j;
      const std::string hi = std::to_string(m), lo = std::to_string(m - 1);
      const Presentation p(
          m, {parse_word("x" + hi + " x" + lo + " X" + hi + " X" + lo, m,
                         ParseMode::Reject, true)});
      const EncodedPresentation e = encode_presentation(p);
      const double ratio = static_cast<double>(e.six_letter.size()) /
                           (static_cast<double>(ell_1(p)) * j);
      if (j == 2 || ratio < min_ratio) min_ratio = ratio;
      if (j == 2 || ratio > max_ratio) max_ratio = ratio;
    }
    if (max_ratio > 2.0 * min_ratio) {
      out << "growth ratio spread " << max_ratio / min_ratio << " exceeds 2";
      return false;
    }
    out << "10000 round-trips exact, bound holds, growth spread "
        << max_ratio / min_ratio;
    return true;
  });
}

// 10. Short-relator cleanup: planted low-length relators are eliminated
// without increasing the length functional.
inline CriterionResult criterion_tietze() {
  return detail::timed_criterion(10, "short-relator cleanup", [](std::ostringstream& out) {
    Rng rng(detail::criterion_seed(10));
    for (int trial = 0; trial < 50; ++trial) {
      const std::int32_t m = 2 + static_cast<std::int32_t>(rng.below(4));
      std::vector<Word> rels;
      const std::uint64_t base = 1 + rng.below(3);
      for (std::uint64_t i = 0; i < base; ++i)
        rels.push_back(sample_freely_reduced(
            m, 3 + static_cast<std::int64_t>(rng.below(6)), rng));
      // Planted length-1 relator.
      if (rng.below(2)) {
        rels.push_back(Word(LetterSeq{
            Letter::make(1 + static_cast<std::int32_t>(rng.below(m)), rng.below(2) != 0)}));
      }
      // Planted length-2 relator on two distinct generators.
      {
        const std::int32_t g1 = 1 + static_cast<std::int32_t>(rng.below(m));
        std::int32_t g2 = 1 + static_cast<std::int32_t>(rng.below(m - 1));
        if (g2 >= g1) ++g2;
        rels.push_back(Word(LetterSeq{Letter::make(g1, rng.below(2) != 0),
                                      Letter::make(g2, rng.below(2) != 0)}));
      }
      const Presentation p(m, std::move(rels));
      // Cascaded substitutions can manufacture squared relators, so the
      // corpus asserts the no-order-two assumption to let cleanup finish.
      const Presentation q = tietze_cleanup(p, true);
      for (const Word& r : q.relators)
        if (r.size() < 3) {
          out << "short relator survived at trial " << trial;
          return false;
        }
      if (ell(q) > ell(p)) {
        out << "length functional increased at trial " << trial;
        return false;
      }
    }
    const Presentation ab(2, {parse_word("ab", 2)});
    const Presentation reduced = tietze_cleanup(ab);
    if (reduced.generator_count != 1 || !reduced.relators.empty()) {
      out << "two-generator one-relation case did not collapse to rank 1";
      return false;
    }
    out << "50/50 cleaned, length functional never grew, exact collapse case ok";
    return true;
  });
}

// 11. Kraft sums are exactly at most 1 on prefix-free codes, and violations
// are reported with a genuine witness pair.
inline CriterionResult criterion_kraft() {
  return detail::timed_criterion(11, "prefix-code accounting", [](std::ostringstream& out) {
    Rng rng(detail::criterion_seed(11));
    for (int trial = 0; trial < 1000; ++trial) {
      // Random prefix-free code: repeatedly split a random leaf; optionally
      // drop a leaf to leave the code incomplete.
      std::vector<std::string> leaves = {""};
      const std::uint64_t splits = 1 + rng.below(8);
      for (std::uint64_t s = 0; s < splits; ++s) {
        const std::size_t i = rng.below(leaves.size());
        const std::string w = leaves[i];
        leaves[i] = w + "0";
        leaves.push_back(w + "1");
      }
      const bool dropped = leaves.size() > 1 && rng.below(2);
      if (dropped) leaves.erase(leaves.begin() + static_cast<std::ptrdiff_t>(
                                    rng.below(leaves.size())));
      const PrefixCode code(leaves);
      if (prefix_violation(code)) {
        out << "false violation at trial " << trial;
        return false;
      }
      const BigRat sum = kraft_sum(code);
      if (sum > 1 || (!dropped && sum != 1)) {
        out << "kraft sum " << sum.get_str() << " out of range at trial " << trial;
        return false;
      }
      // Corrupt: extend an existing member so it gains a proper prefix.
      std::vector<std::string> bad = code.members;
      const std::string victim = bad[rng.below(bad.size())];
      bad.push_back(victim + "01");
      const auto witness = prefix_violation(PrefixCode(bad));
      if (!witness) {
        out << "missed violation at trial " << trial;
        return false;
      }
      const auto& [a, b] = *witness;
      if (a.size() >= b.size() || b.compare(0, a.size(), a) != 0) {
        out << "witness pair not a genuine violation at trial " << trial;
        return false;
      }
    }
    if (kraft_sum(PrefixCode({"0", "10", "110"})) != BigRat(7, 8)) {
      out << "three-member code sum is not 7/8";
      return false;
    }
    out << "1000 codes exact, 1000 corruptions witnessed, 7/8 oracle ok";
    return true;
  });
}

// 12. Random words measure incompressible; the periodic control compresses.
inline CriterionResult criterion_incompressibility() {
  return detail::timed_criterion(12, "incompressibility experiment", [](std::ostringstream& out) {
    const IncompressibilityReport rep =
        incompressibility_experiment(2, 400, 4, 2000, detail::criterion_seed(12));
    if (rep.threshold_bits != 314) {
      out << "threshold is " << rep.threshold_bits << ", expected 314";
      return false;
    }
    if (rep.fraction < 0.99) {
      out << "incompressible fraction " << rep.fraction << " below 0.99";
      return false;
    }
    if (BigRat(rep.hits, rep.samples) < rep.fraction_bound) {
      out << "fraction below the counting bound";
      return false;
    }
    LetterSeq alternating;
    for (int i = 0; i < 200; ++i) {
      alternating.push_back(Letter::make(1, false));
      alternating.push_back(Letter::make(2, false));
    }
    const ComplexityEstimate control = c_est(Word(std::move(alternating)), 2);
    if (control.scheme != Scheme::Periodic) {
      out << "control did not use the period scheme";
      return false;
    }
    if (4 * control.bits >= rep.median_bits) {
      out << "control " << control.bits << " bits not under a quarter of median "
          << rep.median_bits;
      return false;
    }
    out << "fraction " << rep.fraction << " >= 0.9375, control " << control.bits
        << " bits vs median " << rep.median_bits;
    return true;
  });
}

inline std::vector<CriterionResult> run_acceptance_suite() {
  return {
      criterion_rivin_exactness(),   criterion_free_counts(),
      criterion_orbit_census(),      criterion_y_set_cardinality(),
      criterion_genericity_decay(),  criterion_small_cancellation_density(),
      criterion_dehn_oracle(),       criterion_relator_recovery(),
      criterion_encoding(),          criterion_tietze(),
      criterion_kraft(),             criterion_incompressibility(),
  };
}

}  // namespace onerel
