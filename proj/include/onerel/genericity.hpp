#pragma once
// Overlap sets, the generic class of relators, small-cancellation checks and
// Monte Carlo / exact density estimation.

#include <cmath>
#include <cstdint>
#include <functional>
#include <optional>
#include <vector>

#include "onerel/counting.hpp"
#include "onerel/sample.hpp"
#include "onerel/symmetry.hpp"
#include "onerel/words.hpp"

namespace onerel {

inline void require_overlap_lambda(const BigRat& lambda) {
  if (lambda <= 0 || lambda >= BigRat(1, 3))
    throw std::invalid_argument("lambda must lie strictly between 0 and 1/3");
}

// floor(lambda * n), exactly.
inline std::int64_t floor_lambda(const BigRat& lambda, std::int64_t n) {
  BigInt num = lambda.get_num() * n;
  BigInt q;
  mpz_fdiv_q(q.get_mpz_t(), num.get_mpz_t(), lambda.get_den().get_mpz_t());
  if (!q.fits_slong_p()) throw std::invalid_argument("floor_lambda: overflow");
  return q.get_si();
}

// Overlap threshold for the S/E sets; at least 1 so that tiny words are not
// excluded vacuously.
inline std::int64_t overlap_threshold(const BigRat& lambda, std::int64_t n) {
  return std::max<std::int64_t>(1, floor_lambda(lambda, n));
}

struct OverlapReport {
  Word witness;              // the compared word achieving the maximal overlap
  std::int64_t lcp_length = 0;
  std::int64_t threshold = 0;
};

namespace detail {

// Max over rotations a of lcp(x, rot_a(z)) with |x| == |z|; early exit once a
// rotation reaches full length.
inline std::pair<std::size_t, std::size_t> best_rotation_overlap(
    std::span<const Letter> x, std::span<const Letter> z) {
  std::size_t best = 0, best_rot = 0;
  const std::size_t n = x.size();
  for (std::size_t a = 0; a < n; ++a) {
    const std::size_t l = lcp_with_rotation(x, z, a);
    if (l > best) {
      best = l;
      best_rot = a;
      if (best == n) break;
    }
  }
  return {best, best_rot};
}

}  // namespace detail

// Membership in the overlap set S(lambda, tau): x and some cyclic permutation
// of tau(x) share an initial segment of length >= the threshold. tau must be
// nontrivial. The reference string is the stored representative of x.
inline std::pair<bool, OverlapReport> in_S(const CyclicWord& x, const BigRat& lambda,
                                           const Relabeling& tau) {
  require_overlap_lambda(lambda);
  if (tau.is_identity()) throw std::invalid_argument("in_S: tau must be nontrivial");
  if (x.empty()) throw std::invalid_argument("in_S: empty cyclic word");
  const auto& rep = x.representative().letters();
  const LetterSeq img = tau.apply_raw(rep);
  const auto [best, rot] = detail::best_rotation_overlap(rep, img);
  OverlapReport report{Word::unchecked(rotate_raw(img, rot)),
                       static_cast<std::int64_t>(best),
                       overlap_threshold(lambda, static_cast<std::int64_t>(x.size()))};
  return {report.lcp_length >= report.threshold, report};
}

// Membership in S'(lambda, tau): as in_S but against tau(x^-1); tau may be
// trivial.
inline std::pair<bool, OverlapReport> in_S_prime(const CyclicWord& x,
                                                 const BigRat& lambda,
                                                 const Relabeling& tau) {
  require_overlap_lambda(lambda);
  if (x.empty()) throw std::invalid_argument("in_S_prime: empty cyclic word");
  const auto& rep = x.representative().letters();
  const LetterSeq img = tau.apply_raw(invert_raw(rep));
  const auto [best, rot] = detail::best_rotation_overlap(rep, img);
  OverlapReport report{Word::unchecked(rotate_raw(img, rot)),
                       static_cast<std::int64_t>(best),
                       overlap_threshold(lambda, static_cast<std::int64_t>(x.size()))};
  return {report.lcp_length >= report.threshold, report};
}

// Membership in the generic class E(lambda): x is not a proper power and no
// nontrivially-transformed image of x agrees with x on a prefix of threshold
// length. Evaluated with the orbit-canonical representative as reference, so
// membership is invariant under rotations, inversion and relabelings.
inline bool in_E(const CyclicWord& x, const BigRat& lambda,
                 const std::vector<Relabeling>& relabelings) {
  require_overlap_lambda(lambda);
  if (x.empty()) throw std::invalid_argument("in_E: empty cyclic word");
  if (is_proper_power(x)) return false;
  const std::int64_t n = static_cast<std::int64_t>(x.size());
  const std::int64_t t = overlap_threshold(lambda, n);
  const Word ref = canonical_form(x, relabelings);
  const auto& r = ref.letters();
  for (const Relabeling& tau : relabelings) {
    const bool trivial = tau.is_identity();
    for (int e = 0; e < 2; ++e) {
      const LetterSeq img = tau.apply_raw(e ? invert_raw(r) : r);
      for (std::size_t a = 0; a < static_cast<std::size_t>(n); ++a) {
        if (trivial && e == 0 && a == 0) continue;  // x itself
        if (lcp_with_rotation(r, img, a) >= static_cast<std::size_t>(t)) return false;
      }
    }
  }
  return true;
}

inline bool in_E(const CyclicWord& x, const BigRat& lambda, std::int32_t k) {
  return in_E(x, lambda, all_relabelings(k));
}

// Small-cancellation condition C'(lambda) for the one-relator presentation on
// x: every piece (maximal common prefix of two distinct elements of the
// symmetrized set of x) is shorter than floor(lambda |x|), and x is not a
// proper power. Returns the verdict and the maximal piece length.
inline std::pair<bool, std::int64_t> satisfies_c_prime(const CyclicWord& x,
                                                       const BigRat& lambda) {
  if (lambda <= 0) throw std::invalid_argument("satisfies_c_prime: lambda must be > 0");
  if (x.empty()) throw std::invalid_argument("satisfies_c_prime: empty cyclic word");
  const std::size_t n = x.size();
  std::vector<Word> symmetrized;
  symmetrized.reserve(2 * n);
  const auto& rep = x.representative().letters();
  const LetterSeq inv = invert_raw(rep);
  for (std::size_t a = 0; a < n; ++a) {
    symmetrized.push_back(Word::unchecked(rotate_raw(rep, a)));
    symmetrized.push_back(Word::unchecked(rotate_raw(inv, a)));
  }
  std::sort(symmetrized.begin(), symmetrized.end());
  symmetrized.erase(std::unique(symmetrized.begin(), symmetrized.end()),
                    symmetrized.end());
  // Max lcp over all pairs equals max lcp over sorted neighbours.
  std::size_t max_piece = 0;
  for (std::size_t i = 0; i + 1 < symmetrized.size(); ++i)
    max_piece = std::max(max_piece,
                         longest_common_prefix(symmetrized[i], symmetrized[i + 1]));
  const std::int64_t threshold = floor_lambda(lambda, static_cast<std::int64_t>(n));
  const bool ok = !is_proper_power(x) &&
                  static_cast<std::int64_t>(max_piece) < threshold;
  return {ok, static_cast<std::int64_t>(max_piece)};
}

// ---- Density estimation ----------------------------------------------------

struct DensityPoint {
  std::int64_t n = 0;
  std::int64_t samples = 0;  // population size when exact
  std::int64_t hits = 0;
  double density = 0.0;
  double ci_halfwidth = 0.0;  // 0 when exact
  bool exact = false;
};

struct DensitySeries {
  std::vector<DensityPoint> points;
  std::uint64_t seed = 0;
};

// Wilson score half-width at confidence z (default ~95%).
inline double wilson_halfwidth(std::int64_t hits, std::int64_t n, double z = 1.959964) {
  if (n <= 0) return 0.0;
  const double p = static_cast<double>(hits) / static_cast<double>(n);
  const double nn = static_cast<double>(n);
  return z / (1.0 + z * z / nn) *
         std::sqrt(p * (1.0 - p) / nn + z * z / (4.0 * nn * nn));
}

using CyclicPredicate = std::function<bool(const CyclicWord&)>;

// Fraction of cyclically reduced length-n words satisfying pred: exact by
// enumeration when the population is within exact_cap, otherwise Monte Carlo
// with one derived seed per trial.
inline DensityPoint density_estimate(const CyclicPredicate& pred, std::int32_t k,
                                     std::int64_t n, std::int64_t samples,
                                     std::uint64_t seed,
                                     std::int64_t exact_cap = 2'000'000) {
  require_rank(k);
  if (n < 1) throw std::invalid_argument("density_estimate: n must be >= 1");
  DensityPoint pt;
  pt.n = n;
  const BigInt population = gamma_count(k, n, WordSet::CyclicallyReduced);
  if (population <= BigInt(exact_cap)) {
    WordEnumerator en(k, n, WordSet::CyclicallyReduced);
    Word w;
    std::int64_t hits = 0, total = 0;
    while (en.next(w)) {
      ++total;
      if (pred(CyclicWord(w))) ++hits;
    }
    pt.samples = total;
    pt.hits = hits;
    pt.density = static_cast<double>(hits) / static_cast<double>(total);
    pt.ci_halfwidth = 0.0;
    pt.exact = true;
    return pt;
  }
  if (samples < 1) throw std::invalid_argument("density_estimate: samples must be >= 1");
  std::int64_t hits = 0;
  for (std::int64_t i = 0; i < samples; ++i) {
    Rng rng(derive_seed(seed, static_cast<std::uint64_t>(i)));
    if (pred(sample_cyclically_reduced(k, n, rng))) ++hits;
  }
  pt.samples = samples;
  pt.hits = hits;
  pt.density = static_cast<double>(hits) / static_cast<double>(samples);
  pt.ci_halfwidth = wilson_halfwidth(hits, samples);
  pt.exact = false;
  return pt;
}

struct DecayFit {
  enum class Status { Ok, BelowResolution };
  Status status = Status::Ok;
  double slope = 0.0;  // least-squares slope of ln(density) against n
};

// Least-squares slope of log-density against length. Series with a zero
// density carry no decay information at this sample size.
inline DecayFit decay_fit(const std::vector<DensityPoint>& points) {
  if (points.size() < 3)
    throw std::invalid_argument("decay_fit: need at least 3 points");
  for (const auto& p : points)
    if (p.density <= 0.0) return {DecayFit::Status::BelowResolution, 0.0};
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  const double m = static_cast<double>(points.size());
  for (const auto& p : points) {
    const double x = static_cast<double>(p.n);
    const double y = std::log(p.density);
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
  }
  const double slope = (m * sxy - sx * sy) / (m * sxx - sx * sx);
  return {DecayFit::Status::Ok, slope};
}

}  // namespace onerel
