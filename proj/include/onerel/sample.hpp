#pragma once
// Seeded, platform-independent random sampling of reduced words.

#include <bit>
#include <cstdint>
#include <random>

#include "onerel/counting.hpp"
#include "onerel/words.hpp"

namespace onerel {

inline std::uint64_t splitmix64(std::uint64_t& state) {
  std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

// Independent per-trial seed derived from a base seed and a trial index.
inline std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t trial) {
  std::uint64_t s = seed ^ (0x632be59bd9b4e019ULL * (trial + 1));
  splitmix64(s);
  return splitmix64(s);
}

// mt19937_64 is fully specified by the standard; the bounded draw below uses
// masked rejection, so sequences are identical on every platform.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : eng_(seed) {}

  std::uint64_t raw() { return eng_(); }

  // Uniform over [0, n).
  std::uint64_t below(std::uint64_t n) {
    if (n == 0) throw std::invalid_argument("Rng::below: n must be > 0");
    if (n == 1) return 0;
    const int bits = 64 - std::countl_zero(n - 1);
    const std::uint64_t mask = bits >= 64 ? ~0ULL : ((1ULL << bits) - 1);
    for (;;) {
      const std::uint64_t v = eng_() & mask;
      if (v < n) return v;
    }
  }

 private:
  std::mt19937_64 eng_;
};

// Uniform over freely reduced words of length n: first letter uniform over 2k,
// every later letter uniform over the 2k-1 non-cancelling choices.
inline Word sample_freely_reduced(std::int32_t k, std::int64_t n, Rng& rng) {
  require_rank(k);
  if (n < 0) throw std::invalid_argument("sample: n must be >= 0");
  LetterSeq seq;
  seq.reserve(static_cast<std::size_t>(n));
  for (std::int64_t i = 0; i < n; ++i) {
    if (i == 0) {
      seq.push_back(Letter::from_code(static_cast<std::int32_t>(rng.below(2 * k))));
    } else {
      const std::int32_t forb = seq.back().inverse().code();
      std::int32_t c = static_cast<std::int32_t>(rng.below(2 * k - 1));
      if (c >= forb) ++c;  // skip the cancelling letter, keep uniformity
      seq.push_back(Letter::from_code(c));
    }
  }
  return Word::unchecked(std::move(seq));
}

// Uniform over cyclically reduced words of length n, by rejection: draw a
// uniform freely reduced word, accept iff its last letter is not the inverse
// of its first. Conditioning a uniform draw keeps the result exactly uniform,
// and the sampled rotation is kept.
inline Word sample_cyclically_reduced_word(std::int32_t k, std::int64_t n, Rng& rng) {
  for (;;) {
    Word w = sample_freely_reduced(k, n, rng);
    if (is_cyclically_reduced(w.letters())) return w;
  }
}

inline CyclicWord sample_cyclically_reduced(std::int32_t k, std::int64_t n, Rng& rng) {
  return CyclicWord(sample_cyclically_reduced_word(k, n, rng));
}

inline CyclicWord sample_cyclically_reduced(std::int32_t k, std::int64_t n,
                                            std::uint64_t seed) {
  Rng rng(seed);
  return sample_cyclically_reduced(k, n, rng);
}

}  // namespace onerel
