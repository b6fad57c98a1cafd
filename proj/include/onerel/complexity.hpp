#pragma once
// Prefix-free codes with exact Kraft sums, a two-scheme self-delimiting
// description-length estimator for reduced words, and the empirical
// incompressibility experiment.

#include <algorithm>
#include <bit>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "onerel/counting.hpp"
#include "onerel/sample.hpp"
#include "onerel/words.hpp"

namespace onerel {

// ---- Prefix codes -----------------------------------------------------------

struct PrefixCode {
  std::vector<std::string> members;  // kept sorted and deduplicated

  PrefixCode() = default;
  explicit PrefixCode(std::vector<std::string> words) : members(std::move(words)) {
    for (const std::string& m : members)
      for (char c : m)
        if (c != '0' && c != '1')
          throw std::invalid_argument("PrefixCode: members must be binary strings");
    std::sort(members.begin(), members.end());
    members.erase(std::unique(members.begin(), members.end()), members.end());
  }
};

// In sorted order any proper-prefix pair appears adjacently, so the scan over
// neighbours finds a violation iff one exists.
inline std::optional<std::pair<std::string, std::string>> prefix_violation(
    const PrefixCode& code) {
  for (std::size_t i = 0; i + 1 < code.members.size(); ++i) {
    const std::string& a = code.members[i];
    const std::string& b = code.members[i + 1];
    if (a.size() < b.size() && b.compare(0, a.size(), a) == 0) return {{a, b}};
  }
  return std::nullopt;
}

inline BigRat kraft_sum(const PrefixCode& code) {
  if (const auto witness = prefix_violation(code))
    throw std::invalid_argument("kraft_sum: not prefix-free: \"" + witness->first +
                                "\" is a prefix of \"" + witness->second + "\"");
  BigRat sum = 0;
  for (const std::string& m : code.members) {
    BigInt denom = 1;
    denom <<= m.size();
    sum += BigRat(1) / BigRat(denom);
  }
  sum.canonicalize();
  return sum;
}

// ---- Bit streams ------------------------------------------------------------

class BitWriter {
 public:
  void put(bool bit) { bits_.push_back(bit ? '1' : '0'); }

  // Fixed-width big-endian integer; v must fit in `width` bits.
  void put_fixed(const BigInt& v, std::int64_t width) {
    if (v < 0) throw std::invalid_argument("put_fixed: negative value");
    if (width < 0 ||
        (v != 0 && mpz_sizeinbase(v.get_mpz_t(), 2) > static_cast<std::size_t>(width)))
      throw std::invalid_argument("put_fixed: value does not fit");
    for (std::int64_t i = width - 1; i >= 0; --i)
      put(mpz_tstbit(v.get_mpz_t(), static_cast<mp_bitcnt_t>(i)) != 0);
  }

  // Elias gamma code for v >= 1: floor(log2 v) zeros, then v in binary.
  void put_gamma(std::uint64_t v) {
    if (v < 1) throw std::invalid_argument("put_gamma: value must be >= 1");
    int top = 63 - std::countl_zero(v);
    for (int i = 0; i < top; ++i) put(false);
    for (int i = top; i >= 0; --i) put((v >> i) & 1);
  }

  const std::string& bits() const { return bits_; }
  std::int64_t size() const { return static_cast<std::int64_t>(bits_.size()); }

 private:
  std::string bits_;
};

class BitReader {
 public:
  explicit BitReader(std::string bits) : bits_(std::move(bits)) {
    for (char c : bits_)
      if (c != '0' && c != '1')
        throw std::invalid_argument("BitReader: non-bit character");
  }

  bool get() {
    if (pos_ >= bits_.size()) throw std::invalid_argument("BitReader: out of bits");
    return bits_[pos_++] == '1';
  }

  BigInt get_fixed(std::int64_t width) {
    BigInt v = 0;
    for (std::int64_t i = 0; i < width; ++i) {
      v <<= 1;
      if (get()) v |= 1;
    }
    return v;
  }

  std::uint64_t get_gamma() {
    int zeros = 0;
    while (!get()) {
      if (++zeros > 62) throw std::invalid_argument("get_gamma: malformed code");
    }
    std::uint64_t v = 1;
    for (int i = 0; i < zeros; ++i) v = (v << 1) | (get() ? 1 : 0);
    return v;
  }

  bool done() const { return pos_ >= bits_.size(); }
  std::size_t position() const { return pos_; }

 private:
  std::string bits_;
  std::size_t pos_ = 0;
};

// ---- Word ranking -----------------------------------------------------------

// Bits needed to index the freely reduced words of length n: the bit length
// of 2k(2k-1)^(n-1), rounded up from the real-valued entropy bound.
inline std::int64_t rank_width(std::int32_t k, std::int64_t n) {
  if (n == 0) return 0;
  const BigInt top = gamma_count(k, n, WordSet::FreelyReduced) - 1;
  return static_cast<std::int64_t>(mpz_sizeinbase(top.get_mpz_t(), 2));
}

// Lexicographic rank of a freely reduced word among all reduced words of the
// same length: mixed radix with the first letter as the most significant
// digit and successive letters indexed among the 2k-1 non-cancelling codes.
inline BigInt rank_word(const Word& w, std::int32_t k) {
  require_rank(k);
  const std::int32_t base = 2 * k - 1;
  BigInt r = 0;
  for (std::size_t i = 0; i < w.size(); ++i) {
    const std::int32_t c = w.letters()[i].code();
    if (c >= 2 * k) throw std::invalid_argument("rank_word: letter outside rank");
    if (i == 0) {
      r = c;
    } else {
      const std::int32_t forb = w.letters()[i - 1].inverse().code();
      r = r * base + (c - (c > forb ? 1 : 0));
    }
  }
  return r;
}

inline Word unrank_word(BigInt rank, std::int32_t k, std::int64_t n) {
  require_rank(k);
  if (rank < 0) throw std::invalid_argument("unrank_word: negative rank");
  if (n == 0) {
    if (rank != 0) throw std::invalid_argument("unrank_word: rank out of range");
    return Word();
  }
  const std::int32_t base = 2 * k - 1;
  std::vector<std::int32_t> digits(static_cast<std::size_t>(n));
  for (std::int64_t i = n - 1; i >= 1; --i) {
    digits[static_cast<std::size_t>(i)] =
        static_cast<std::int32_t>(BigInt(rank % base).get_si());
    rank /= base;
  }
  if (rank >= 2 * k) throw std::invalid_argument("unrank_word: rank out of range");
  digits[0] = static_cast<std::int32_t>(rank.get_si());
  LetterSeq seq;
  seq.reserve(static_cast<std::size_t>(n));
  seq.push_back(Letter::from_code(digits[0]));
  for (std::int64_t i = 1; i < n; ++i) {
    const std::int32_t forb = seq.back().inverse().code();
    std::int32_t c = digits[static_cast<std::size_t>(i)];
    if (c >= forb) ++c;
    seq.push_back(Letter::from_code(c));
  }
  return Word(std::move(seq));
}

// ---- Description-length estimator --------------------------------------------
// Self-delimiting tags: "00" empty word, "01" direct scheme, "1" period
// scheme. Every emitted string decodes back to the word it came from, so
// concatenated estimates decode unambiguously.

enum class Scheme { Empty, Direct, Periodic };

struct ComplexityEstimate {
  Word word;
  std::int64_t bits = 0;
  Scheme scheme = Scheme::Empty;
  std::string code;
};

namespace detail {

inline std::string encode_direct(const Word& w, std::int32_t k) {
  BitWriter out;
  out.put(false);
  out.put(true);
  out.put_gamma(static_cast<std::uint64_t>(w.size()));
  out.put_fixed(rank_word(w, k), rank_width(k, static_cast<std::int64_t>(w.size())));
  return out.bits();
}

// (period word, exponent, remainder): x = u^e u[0..rem) for the smallest
// period p = |u|.
inline std::string encode_periodic(const Word& w, std::int32_t k) {
  const std::size_t n = w.size();
  const std::size_t p = smallest_period(w.letters());
  const std::size_t e = n / p;
  const std::size_t rem = n % p;
  BitWriter out;
  out.put(true);
  out.put_gamma(p);
  out.put_gamma(e);
  out.put_gamma(rem + 1);
  const Word u(LetterSeq(w.letters().begin(),
                         w.letters().begin() + static_cast<std::ptrdiff_t>(p)));
  out.put_fixed(rank_word(u, k), rank_width(k, static_cast<std::int64_t>(p)));
  return out.bits();
}

}  // namespace detail

// Minimum of the self-delimiting schemes; ties prefer the direct scheme.
inline ComplexityEstimate c_est(const Word& x, std::int32_t k) {
  require_rank(k);
  if (x.empty()) return {x, 2, Scheme::Empty, "00"};
  const std::string direct = detail::encode_direct(x, k);
  const std::string periodic = detail::encode_periodic(x, k);
  if (periodic.size() < direct.size())
    return {x, static_cast<std::int64_t>(periodic.size()), Scheme::Periodic, periodic};
  return {x, static_cast<std::int64_t>(direct.size()), Scheme::Direct, direct};
}

// Decodes one estimate from the stream position.
inline Word decode_c_est(BitReader& in, std::int32_t k) {
  require_rank(k);
  if (in.get()) {
    const std::uint64_t p = in.get_gamma();
    const std::uint64_t e = in.get_gamma();
    const std::uint64_t rem = in.get_gamma() - 1;
    if (rem >= p) throw std::invalid_argument("decode_c_est: remainder exceeds period");
    if (e > (std::uint64_t{1} << 40) / p)
      throw std::invalid_argument("decode_c_est: expanded length too large");
    const Word u = unrank_word(in.get_fixed(rank_width(k, static_cast<std::int64_t>(p))),
                               k, static_cast<std::int64_t>(p));
    LetterSeq seq;
    seq.reserve(static_cast<std::size_t>(p * e + rem));
    for (std::uint64_t i = 0; i < e; ++i)
      seq.insert(seq.end(), u.letters().begin(), u.letters().end());
    seq.insert(seq.end(), u.letters().begin(),
               u.letters().begin() + static_cast<std::ptrdiff_t>(rem));
    return Word(std::move(seq));
  }
  if (!in.get()) return Word();
  const std::uint64_t n = in.get_gamma();
  return unrank_word(in.get_fixed(rank_width(k, static_cast<std::int64_t>(n))), k,
                     static_cast<std::int64_t>(n));
}

inline std::vector<Word> decode_c_est_stream(const std::string& bits, std::int32_t k) {
  BitReader in(bits);
  std::vector<Word> out;
  while (!in.done()) out.push_back(decode_c_est(in, k));
  return out;
}

// ---- Markov bound and the incompressibility experiment ------------------------

inline BigRat markov_bound(const BigRat& mean, const BigRat& delta) {
  if (mean < 0) throw std::invalid_argument("markov_bound: mean must be >= 0");
  if (delta <= 0) throw std::invalid_argument("markov_bound: delta must be > 0");
  BigRat b = mean / delta;
  b.canonicalize();
  return b > 1 ? BigRat(1) : b;
}

// Largest integer t with 2^(2t + c) <= (2k-1)^n, i.e. the floor of
// (-c + n log2(2k-1)) / 2, computed exactly.
inline std::int64_t incompressibility_threshold(std::int32_t k, std::int64_t n,
                                                std::int64_t c) {
  require_rank(k);
  if (n < 0) throw std::invalid_argument("threshold: n must be >= 0");
  const BigInt pop = pow_int(2 * k - 1, n);
  const auto holds = [&](std::int64_t t) {
    const std::int64_t e = 2 * t + c;
    if (e <= 0) return true;
    BigInt lhs = 1;
    lhs <<= static_cast<std::size_t>(e);
    return lhs <= pop;
  };
  std::int64_t lo = -(std::abs(c) / 2 + 1), hi = 64 * n + std::abs(c) + 2;
  while (lo < hi) {
    const std::int64_t mid = lo + (hi - lo + 1) / 2;
    if (holds(mid))
      lo = mid;
    else
      hi = mid - 1;
  }
  return lo;
}

struct IncompressibilityReport {
  std::int32_t k = 0;
  std::int64_t n = 0;
  std::int64_t c = 0;
  std::int64_t samples = 0;
  std::int64_t threshold_bits = 0;
  std::int64_t hits = 0;        // samples with c_est bits >= threshold
  std::int64_t median_bits = 0;
  double fraction = 0.0;
  BigRat fraction_bound;        // 1 - 2^-c
  BigRat mu;                    // 1 / gamma(n, CR)
  BigInt delta;                 // 2^c
  std::int64_t direct_count = 0;
  std::int64_t periodic_count = 0;
  std::uint64_t seed = 0;
};

// Samples uniform cyclically reduced words and measures how often the
// estimator stays at or above the counting threshold. The estimator only
// upper-bounds description length, so the measured fraction is expected to
// exceed the reported bound; this is an empirical check, not a theorem.
inline IncompressibilityReport incompressibility_experiment(std::int32_t k,
                                                            std::int64_t n,
                                                            std::int64_t c,
                                                            std::int64_t samples,
                                                            std::uint64_t seed) {
  require_rank(k);
  if (n < 1) throw std::invalid_argument("incompressibility: n must be >= 1");
  if (c < 0) throw std::invalid_argument("incompressibility: c must be >= 0");
  if (samples < 1) throw std::invalid_argument("incompressibility: samples must be >= 1");
  IncompressibilityReport rep;
  rep.k = k;
  rep.n = n;
  rep.c = c;
  rep.samples = samples;
  rep.seed = seed;
  rep.threshold_bits = incompressibility_threshold(k, n, c);
  BigInt dd = 1;
  dd <<= static_cast<std::size_t>(c);
  rep.delta = dd;
  rep.fraction_bound = BigRat(1) - BigRat(1) / BigRat(dd);
  rep.fraction_bound.canonicalize();
  rep.mu = BigRat(1) / BigRat(gamma_count(k, n, WordSet::CyclicallyReduced));
  rep.mu.canonicalize();
  std::vector<std::int64_t> bits;
  bits.reserve(static_cast<std::size_t>(samples));
  for (std::int64_t i = 0; i < samples; ++i) {
    Rng rng(derive_seed(seed, static_cast<std::uint64_t>(i)));
    const Word w = sample_cyclically_reduced_word(k, n, rng);
    const ComplexityEstimate est = c_est(w, k);
    if (est.scheme == Scheme::Periodic)
      ++rep.periodic_count;
    else
      ++rep.direct_count;
    if (est.bits >= rep.threshold_bits) ++rep.hits;
    bits.push_back(est.bits);
  }
  auto mid = bits.begin() + bits.size() / 2;
  std::nth_element(bits.begin(), mid, bits.end());
  rep.median_bits = *mid;
  rep.fraction = static_cast<double>(rep.hits) / static_cast<double>(samples);
  return rep;
}

// ---- Length-then-lex bijection between strings and bit strings ----------------
// Symbols are 0..s-1. A word maps to its rank in length-then-lex enumeration
// (empty word = 0), and the natural number N maps to the binary expansion of
// N + 1 with the leading bit dropped.

inline std::string h_encode(const std::vector<std::int32_t>& symbols, std::int32_t s) {
  if (s < 1) throw std::invalid_argument("h_encode: alphabet size must be >= 1");
  BigInt rank = 0;
  for (std::int32_t sym : symbols) {
    if (sym < 0 || sym >= s) throw std::invalid_argument("h_encode: symbol out of range");
    rank = rank * s + sym + 1;  // shifted positional value counts shorter words
  }
  const BigInt np1 = rank + 1;
  const std::size_t bits = mpz_sizeinbase(np1.get_mpz_t(), 2);
  std::string out;
  for (std::size_t i = bits - 1; i-- > 0;)
    out.push_back(mpz_tstbit(np1.get_mpz_t(), static_cast<mp_bitcnt_t>(i)) ? '1' : '0');
  return out;
}

inline std::vector<std::int32_t> h_decode(const std::string& bits, std::int32_t s) {
  if (s < 1) throw std::invalid_argument("h_decode: alphabet size must be >= 1");
  BigInt np1 = 1;
  for (char c : bits) {
    if (c != '0' && c != '1') throw std::invalid_argument("h_decode: non-bit character");
    np1 <<= 1;
    if (c == '1') np1 |= 1;
  }
  BigInt rank = np1 - 1;
  std::vector<std::int32_t> out;
  while (rank > 0) {
    BigInt rem;
    rank -= 1;
    mpz_fdiv_qr_ui(rank.get_mpz_t(), rem.get_mpz_t(), rank.get_mpz_t(),
                   static_cast<unsigned long>(s));
    out.push_back(static_cast<std::int32_t>(rem.get_si()));
  }
  std::reverse(out.begin(), out.end());
  return out;
}

}  // namespace onerel
