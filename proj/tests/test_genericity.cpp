#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <vector>

#include "onerel/onerel.hpp"

using namespace onerel;

namespace {

Word parse2(const std::string& text) { return parse_word(text, 2); }

}  // namespace

TEST_CASE("overlap lambda validation and thresholds") {
  CHECK_THROWS_AS(require_overlap_lambda(BigRat(0)), std::invalid_argument);
  CHECK_THROWS_AS(require_overlap_lambda(BigRat(1, 3)), std::invalid_argument);
  CHECK_THROWS_AS(require_overlap_lambda(BigRat(1, 2)), std::invalid_argument);
  CHECK_THROWS_AS(require_overlap_lambda(BigRat(-1, 6)), std::invalid_argument);
  CHECK_NOTHROW(require_overlap_lambda(BigRat(1, 6)));
  CHECK_NOTHROW(require_overlap_lambda(BigRat(33, 100)));

  CHECK(floor_lambda(BigRat(1, 6), 12) == 2);
  CHECK(floor_lambda(BigRat(1, 6), 11) == 1);
  CHECK(floor_lambda(BigRat(1, 6), 5) == 0);
  CHECK(floor_lambda(BigRat(2, 7), 10) == 2);
  CHECK(floor_lambda(BigRat(1, 6), 600000000000) == 100000000000);
  CHECK(overlap_threshold(BigRat(1, 6), 5) == 1);
  CHECK(overlap_threshold(BigRat(1, 6), 12) == 2);
  CHECK(overlap_threshold(BigRat(1, 6), 60) == 10);
}

TEST_CASE("overlap set membership") {
  const Relabeling swap_ab = Relabeling::parse("1:2+,2:1+", 2);
  const Relabeling flip_a = Relabeling::parse("1:1-,2:2+", 2);
  SECTION("in_S hits and misses") {
    const auto [hit, report] = in_S(CyclicWord(parse2("abab")), BigRat(1, 6), swap_ab);
    CHECK(hit);
    CHECK(report.lcp_length == 4);
    CHECK(report.threshold == 1);
    CHECK(report.witness == parse2("abab"));
    const auto [miss, miss_report] = in_S(CyclicWord(parse2("ab")), BigRat(1, 6), flip_a);
    CHECK_FALSE(miss);
    CHECK(miss_report.lcp_length == 0);
  }
  SECTION("in_S validation") {
    CHECK_THROWS_AS(in_S(CyclicWord(parse2("ab")), BigRat(1, 6), Relabeling::identity(2)),
                    std::invalid_argument);
    CHECK_THROWS_AS(in_S(CyclicWord(Word()), BigRat(1, 6), swap_ab),
                    std::invalid_argument);
    CHECK_THROWS_AS(in_S(CyclicWord(parse2("ab")), BigRat(1, 2), swap_ab),
                    std::invalid_argument);
  }
  SECTION("in_S_prime accepts the trivial relabeling") {
    const auto [hit, report] =
        in_S_prime(CyclicWord(parse2("abAB")), BigRat(1, 6), Relabeling::identity(2));
    CHECK(hit);
    CHECK(report.lcp_length >= 1);
    const auto [miss, miss_report] =
        in_S_prime(CyclicWord(parse2("ab")), BigRat(1, 6), Relabeling::identity(2));
    CHECK_FALSE(miss);
    CHECK(miss_report.lcp_length == 0);
  }
}

TEST_CASE("generic class membership") {
  const auto rels = all_relabelings(2);
  SECTION("empty below the first nontrivial threshold") {
    // With threshold 1 the relabeling fixing the first letter always collides,
    // so no word of length < 12 is generic at 1/6.
    for (std::int64_t n = 1; n <= 8; ++n) {
      WordEnumerator en(2, n, WordSet::CyclicallyReduced);
      Word w;
      while (en.next(w)) CHECK_FALSE(in_E(CyclicWord(w), BigRat(1, 6), rels));
    }
  }
  SECTION("nonempty at moderate length, and orbit-invariant") {
    // At length 60 the collision threshold is 10, so membership is the
    // overwhelmingly likely case and a short sampling loop must hit it.
    Rng rng(0xE5E70001);
    Word w;
    bool found = false;
    for (int attempt = 0; attempt < 200 && !found; ++attempt) {
      w = sample_cyclically_reduced_word(2, 60, rng);
      found = in_E(CyclicWord(w), BigRat(1, 6), rels);
    }
    REQUIRE(found);
    CHECK(in_E(CyclicWord(w), BigRat(1, 6), 2));
    const auto orbit = orbit_strings(CyclicWord(w), 2);
    std::size_t checked = 0;
    for (const Word& y : orbit) {
      if (++checked > 25) break;
      CHECK(in_E(CyclicWord(y), BigRat(1, 6), rels));
    }
  }
  SECTION("proper powers are never generic") {
    LetterSeq seq;
    for (int i = 0; i < 10; ++i) {
      seq.push_back(Letter::make(1, false));
      seq.push_back(Letter::make(2, false));
    }
    CHECK_FALSE(in_E(CyclicWord(Word(seq)), BigRat(1, 6), rels));
  }
  CHECK_THROWS_AS(in_E(CyclicWord(Word()), BigRat(1, 6), rels), std::invalid_argument);
}

TEST_CASE("small cancellation condition") {
  SECTION("frozen examples") {
    const auto [ok_third, piece_third] =
        satisfies_c_prime(CyclicWord(parse2("abAB")), BigRat(1, 3));
    CHECK_FALSE(ok_third);
    CHECK(piece_third == 1);
    const auto [ok_half, piece_half] =
        satisfies_c_prime(CyclicWord(parse2("abAB")), BigRat(1, 2));
    CHECK(ok_half);
    CHECK(piece_half == 1);
    const auto [ok_aab, piece_aab] =
        satisfies_c_prime(CyclicWord(parse2("aab")), BigRat(1, 3));
    CHECK_FALSE(ok_aab);
    CHECK(piece_aab == 1);
    // The power check, not the piece bound, rejects abab.
    const auto [ok_pow, piece_pow] =
        satisfies_c_prime(CyclicWord(parse2("abab")), BigRat(1, 2));
    CHECK_FALSE(ok_pow);
    CHECK(piece_pow == 0);
    // A single letter fails because the threshold floor is zero.
    CHECK_FALSE(satisfies_c_prime(CyclicWord(parse2("a")), BigRat(1, 6)).first);
  }
  SECTION("monotone in lambda") {
    for (std::uint64_t t = 0; t < 60; ++t) {
      Rng rng(derive_seed(0xE5E70002, t));
      const CyclicWord w(sample_cyclically_reduced_word(2, 30, rng));
      if (satisfies_c_prime(w, BigRat(1, 6)).first)
        CHECK(satisfies_c_prime(w, BigRat(1, 5)).first);
    }
  }
  SECTION("validation") {
    CHECK_THROWS_AS(satisfies_c_prime(CyclicWord(parse2("ab")), BigRat(0)),
                    std::invalid_argument);
    CHECK_THROWS_AS(satisfies_c_prime(CyclicWord(Word()), BigRat(1, 6)),
                    std::invalid_argument);
  }
}

TEST_CASE("wilson_halfwidth") {
  CHECK(wilson_halfwidth(50, 100) == Catch::Approx(0.09617).epsilon(0.001));
  CHECK(wilson_halfwidth(0, 100) > 0.0);
  CHECK(wilson_halfwidth(5, 10) > wilson_halfwidth(50, 100));
  CHECK(wilson_halfwidth(50, 100) > wilson_halfwidth(500, 1000));
  CHECK(wilson_halfwidth(30, 100) ==
        Catch::Approx(wilson_halfwidth(70, 100)).epsilon(1e-12));
  CHECK(wilson_halfwidth(0, 0) == 0.0);
}

TEST_CASE("density_estimate") {
  SECTION("exact path enumerates the whole population") {
    // Non-powers of length 4: gamma is 84 and the powers are exactly the 12
    // squares of two-letter cyclically reduced words (fourth powers of a
    // letter are squares of aa and friends, already in that set).
    const CyclicPredicate not_power = [](const CyclicWord& w) {
      return !is_proper_power(w);
    };
    const DensityPoint pt = density_estimate(not_power, 2, 4, 10, 1);
    CHECK(pt.exact);
    CHECK(pt.samples == 84);
    CHECK(pt.hits == 72);
    CHECK(pt.ci_halfwidth == 0.0);
    CHECK(pt.density == Catch::Approx(72.0 / 84.0));
  }
  SECTION("monte carlo path is deterministic in the seed") {
    const CyclicPredicate generic = [](const CyclicWord& w) {
      return in_E(w, BigRat(1, 6), 2);
    };
    const DensityPoint a = density_estimate(generic, 2, 25, 200, 0x5EED);
    const DensityPoint b = density_estimate(generic, 2, 25, 200, 0x5EED);
    CHECK_FALSE(a.exact);
    CHECK(a.samples == 200);
    CHECK(a.hits == b.hits);
    CHECK(a.ci_halfwidth == Catch::Approx(wilson_halfwidth(a.hits, 200)));
  }
  SECTION("validation") {
    const CyclicPredicate yes = [](const CyclicWord&) { return true; };
    CHECK_THROWS_AS(density_estimate(yes, 2, 0, 10, 1), std::invalid_argument);
    CHECK_THROWS_AS(density_estimate(yes, 2, 25, 0, 1), std::invalid_argument);
    CHECK_THROWS_AS(density_estimate(yes, 1, 4, 10, 1), std::invalid_argument);
  }
}

TEST_CASE("decay_fit") {
  SECTION("recovers an exact exponential slope") {
    std::vector<DensityPoint> pts;
    for (std::int64_t n : {10, 20, 30, 40}) {
      DensityPoint p;
      p.n = n;
      p.density = std::exp2(-static_cast<double>(n));
      pts.push_back(p);
    }
    const DecayFit fit = decay_fit(pts);
    CHECK(fit.status == DecayFit::Status::Ok);
    CHECK(fit.slope == Catch::Approx(-std::log(2.0)).epsilon(1e-9));
  }
  SECTION("zero density is below resolution") {
    std::vector<DensityPoint> pts(3);
    pts[0].n = 10;
    pts[0].density = 0.5;
    pts[1].n = 20;
    pts[1].density = 0.0;
    pts[2].n = 30;
    pts[2].density = 0.1;
    CHECK(decay_fit(pts).status == DecayFit::Status::BelowResolution);
  }
  CHECK_THROWS_AS(decay_fit(std::vector<DensityPoint>(2)), std::invalid_argument);
}
