#include <catch2/catch_amalgamated.hpp>

#include <algorithm>
#include <string>
#include <vector>

#include "onerel/onerel.hpp"

using namespace onerel;

namespace {

Word parse2(const std::string& text) { return parse_word(text, 2); }

// Independent oracle: least rotation by materializing all of them.
std::size_t brute_least_rotation(const LetterSeq& s) {
  std::size_t best = 0;
  for (std::size_t r = 1; r < s.size(); ++r)
    if (rotate_raw(s, r) < rotate_raw(s, best)) best = r;
  return best;
}

}  // namespace

TEST_CASE("letter codes realize the fixed order") {
  const Letter a = Letter::make(1, false);
  const Letter A = Letter::make(1, true);
  const Letter b = Letter::make(2, false);
  const Letter B = Letter::make(2, true);
  CHECK(a.code() == 0);
  CHECK(A.code() == 1);
  CHECK(b.code() == 2);
  CHECK(B.code() == 3);
  CHECK(a < A);
  CHECK(A < b);
  CHECK(b < B);
  CHECK(a.inverse() == A);
  CHECK(A.inverse() == a);
  CHECK(a.inverse().inverse() == a);
  CHECK(a.generator() == 1);
  CHECK(B.generator() == 2);
  CHECK(B.is_inverse());
  CHECK_FALSE(b.is_inverse());
  CHECK(Letter::from_code(5) == Letter::make(3, true));
  CHECK_THROWS_AS(Letter::make(0, false), std::invalid_argument);
}

TEST_CASE("reducedness predicates") {
  CHECK(is_freely_reduced(parse2("abAB").letters()));
  CHECK(is_freely_reduced(LetterSeq{}));
  LetterSeq aA{Letter::make(1, false), Letter::make(1, true)};
  CHECK_FALSE(is_freely_reduced(aA));
  CHECK(is_cyclically_reduced(parse2("ab").letters()));
  CHECK(is_cyclically_reduced(parse2("a").letters()));
  CHECK(is_cyclically_reduced(LetterSeq{}));
  // abA is freely but not cyclically reduced.
  CHECK(is_freely_reduced(parse2("abA").letters()));
  CHECK_FALSE(is_cyclically_reduced(parse2("abA").letters()));
  CHECK_FALSE(is_cyclically_reduced(aA));
}

TEST_CASE("Word construction enforces free reduction") {
  CHECK_THROWS_AS(Word(LetterSeq{Letter::make(1, false), Letter::make(1, true)}),
                  std::invalid_argument);
  CHECK(Word(LetterSeq{}).empty());
  const Word w = parse2("abAB");
  CHECK(w.size() == 4);
  CHECK(w[0] == Letter::make(1, false));
  CHECK(w[3] == Letter::make(2, true));
}

TEST_CASE("parse_word handles both text forms") {
  SECTION("alphabetic") {
    const Word w = parse2("abAB");
    CHECK(word_to_text(w) == "abAB");
    CHECK(parse_word("", 2).empty());
    CHECK_THROWS_AS(parse_word("c", 2), std::invalid_argument);
    CHECK_THROWS_AS(parse_word("a!b", 2), std::invalid_argument);
    CHECK_THROWS_AS(parse_word("aA", 2), std::invalid_argument);
    CHECK(parse_word("aA", 2, ParseMode::Reduce).empty());
    CHECK(parse_word("abBA", 2, ParseMode::Reduce).empty());
  }
  SECTION("numeric") {
    const Word w = parse_word("x1 x2 X1 X2", 2);
    CHECK(w == parse2("abAB"));
    CHECK(word_to_text(w, true) == "x1 x2 X1 X2");
    CHECK(parse_word("x27", 30) ==
          Word(LetterSeq{Letter::make(27, false)}));
    CHECK_THROWS_AS(parse_word("x3", 2), std::invalid_argument);
    CHECK_THROWS_AS(parse_word("x0", 2), std::invalid_argument);
    CHECK_THROWS_AS(parse_word("x", 2), std::invalid_argument);
    CHECK_THROWS_AS(parse_word("y1", 2), std::invalid_argument);
    CHECK_THROWS_AS(parse_word("x1 X1", 2), std::invalid_argument);
    CHECK(parse_word("x1 X1", 2, ParseMode::Reduce).empty());
  }
  SECTION("force_numeric overrides letter form") {
    // "x" alone is alphabetic generator 24 unless forced.
    CHECK(parse_word("x", 26) == Word(LetterSeq{Letter::make(24, false)}));
    CHECK_THROWS_AS(parse_word("x", 26, ParseMode::Reject, true),
                    std::invalid_argument);
  }
  SECTION("round-trip on random words") {
    for (std::uint64_t t = 0; t < 200; ++t) {
      Rng rng(derive_seed(0xC0FFEE01, t));
      const Word w = sample_freely_reduced(2, 1 + static_cast<std::int64_t>(t % 12), rng);
      CHECK(parse_word(word_to_text(w), 2) == w);
      CHECK(parse_word(word_to_text(w, true), 2) == w);
    }
    Rng rng(7);
    const Word big = sample_freely_reduced(30, 40, rng);
    CHECK(parse_word(word_to_text(big), 30) == big);
    CHECK(word_to_text(big).find(' ') != std::string::npos);
  }
}

TEST_CASE("free_reduce cancels to the normal form") {
  LetterSeq raw;
  for (char c : std::string("abBA"))
    raw.push_back(c >= 'a' ? Letter::make(c - 'a' + 1, false)
                           : Letter::make(c - 'A' + 1, true));
  CHECK(free_reduce(raw).empty());
  for (std::uint64_t t = 0; t < 100; ++t) {
    Rng rng(derive_seed(0xC0FFEE02, t));
    const Word w = sample_freely_reduced(3, 15, rng);
    CHECK(free_reduce(w.letters()) == w);
    LetterSeq ww = w.letters();
    const LetterSeq inv = invert_raw(w.letters());
    ww.insert(ww.end(), inv.begin(), inv.end());
    CHECK(free_reduce(ww).empty());
  }
}

TEST_CASE("inversion is an anti-involution") {
  const Word w = parse2("abAB");
  CHECK(invert(w) == parse2("baBA"));
  CHECK(invert(invert(w)) == w);
  CHECK(invert(Word()).empty());
  for (std::uint64_t t = 0; t < 100; ++t) {
    Rng rng(derive_seed(0xC0FFEE03, t));
    const Word u = sample_freely_reduced(2, 9, rng);
    const Word v = sample_freely_reduced(2, 7, rng);
    CHECK(invert(concat_reduce(u, v)) == concat_reduce(invert(v), invert(u)));
    CHECK(concat_reduce(u, invert(u)).empty());
  }
}

TEST_CASE("concat_reduce is associative") {
  for (std::uint64_t t = 0; t < 100; ++t) {
    Rng rng(derive_seed(0xC0FFEE04, t));
    const Word a = sample_freely_reduced(2, 8, rng);
    const Word b = sample_freely_reduced(2, 8, rng);
    const Word c = sample_freely_reduced(2, 8, rng);
    CHECK(concat_reduce(concat_reduce(a, b), c) ==
          concat_reduce(a, concat_reduce(b, c)));
  }
}

TEST_CASE("least_rotation_index matches the brute-force oracle") {
  SECTION("exhaustive over short cyclically reduced words") {
    for (std::int64_t n = 1; n <= 7; ++n) {
      WordEnumerator en(2, n, WordSet::CyclicallyReduced);
      Word w;
      while (en.next(w)) {
        CHECK(least_rotation_index(w.letters()) ==
              brute_least_rotation(w.letters()));
      }
    }
  }
  SECTION("random long words") {
    for (std::uint64_t t = 0; t < 50; ++t) {
      Rng rng(derive_seed(0xC0FFEE05, t));
      const Word w = sample_cyclically_reduced_word(3, 60, rng);
      CHECK(least_rotation_index(w.letters()) ==
            brute_least_rotation(w.letters()));
    }
  }
  SECTION("periodic words, where ties are everywhere") {
    const Word w = parse2("abababab");
    CHECK(least_rotation_index(w.letters()) == 0);
    const Word v = parse2("babababa");
    CHECK(least_rotation_index(v.letters()) == 1);
    CHECK(least_rotation_index(LetterSeq{}) == 0);
  }
}

TEST_CASE("CyclicWord canonicalizes the rotation class") {
  const Word w = parse2("bab");
  const CyclicWord c(w);
  CHECK(c.representative() == parse2("abb"));
  CHECK(c.size() == 3);
  for (std::size_t r = 0; r < 3; ++r)
    CHECK(CyclicWord(c.rotation(r)) == c);
  CHECK(c.rotation(1) == parse2("bba"));
  CHECK_THROWS_AS(CyclicWord(parse2("abA")), std::invalid_argument);
  CHECK(CyclicWord(Word()).empty());
  CHECK(invert(c) == CyclicWord(parse2("ABB")));
}

TEST_CASE("cyclic_reduce returns a conjugacy witness") {
  SECTION("fixed examples") {
    const CyclicReduction r = cyclic_reduce(parse2("abA"));
    CHECK(r.core == CyclicWord(parse2("b")));
    CHECK(r.conjugator == parse2("a"));
    // The stripped core lands on a non-least rotation; the conjugator must
    // absorb the canonicalizing shift.
    const CyclicReduction s = cyclic_reduce(parse2("bbaB"));
    CHECK(s.core == CyclicWord(parse2("ab")));
    CHECK(s.conjugator == parse2("bb"));
    CHECK(cyclic_reduce(Word()).core.empty());
    CHECK(cyclic_reduce(parse2("ab")).conjugator.empty());
  }
  SECTION("w equals conjugator * representative * conjugator inverse") {
    for (std::uint64_t t = 0; t < 200; ++t) {
      Rng rng(derive_seed(0xC0FFEE06, t));
      const Word w = sample_freely_reduced(2, 1 + static_cast<std::int64_t>(t % 14), rng);
      const CyclicReduction r = cyclic_reduce(w);
      const Word back = concat_reduce(
          concat_reduce(r.conjugator, r.core.representative()),
          invert(r.conjugator));
      CHECK(back == w);
      CHECK(is_cyclically_reduced(r.core.representative().letters()));
    }
  }
}

TEST_CASE("smallest_period and proper powers") {
  CHECK(smallest_period(parse2("ababab").letters()) == 2);
  CHECK(smallest_period(parse2("aab").letters()) == 3);
  CHECK(smallest_period(parse2("aaaa").letters()) == 1);
  CHECK(smallest_period(LetterSeq{}) == 0);
  CHECK(is_proper_power(CyclicWord(parse2("abab"))));
  CHECK(is_proper_power(CyclicWord(parse2("aa"))));
  CHECK_FALSE(is_proper_power(CyclicWord(parse2("aab"))));
  CHECK_FALSE(is_proper_power(CyclicWord(parse2("a"))));
  // ababa has period 2 but 5 % 2 != 0.
  CHECK_FALSE(is_proper_power(CyclicWord(parse2("ababa"))));
  CHECK_THROWS_AS(is_proper_power(CyclicWord(Word())), std::invalid_argument);
}

TEST_CASE("prefix comparisons") {
  CHECK(longest_common_prefix(parse2("abab"), parse2("abba")) == 2);
  CHECK(longest_common_prefix(parse2("ab"), parse2("ab")) == 2);
  CHECK(longest_common_prefix(parse2("ab"), parse2("ba")) == 0);
  CHECK(longest_common_prefix(Word(), parse2("a")) == 0);
  for (std::uint64_t t = 0; t < 100; ++t) {
    Rng rng(derive_seed(0xC0FFEE07, t));
    const Word x = sample_cyclically_reduced_word(2, 12, rng);
    const Word z = sample_cyclically_reduced_word(2, 12, rng);
    for (std::size_t r = 0; r < 12; ++r) {
      const Word zr = Word::unchecked(rotate_raw(z.letters(), r));
      CHECK(lcp_with_rotation(x.letters(), z.letters(), r) ==
            longest_common_prefix(x, zr));
    }
  }
}
