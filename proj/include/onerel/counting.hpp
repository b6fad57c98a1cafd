#pragma once
// Exact counts of freely and cyclically reduced words, plus lexicographic
// enumeration over either set.

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <stdexcept>
#include <utility>

#include <gmpxx.h>

#include "onerel/words.hpp"

namespace onerel {

using BigInt = mpz_class;
using BigRat = mpq_class;

// Thrown when a requested computation exceeds a configured resource cap.
class BudgetError : public std::runtime_error {
 public:
  explicit BudgetError(const std::string& what) : std::runtime_error(what) {}
};

enum class WordSet { FreelyReduced, CyclicallyReduced };

constexpr std::int64_t kDefaultEnumerationCap = 100'000'000;  // on (2k-1)^n

inline void require_rank(std::int32_t k) {
  if (k < 2) throw std::invalid_argument("rank k must be >= 2");
}

inline BigInt pow_int(std::int64_t base, std::int64_t exp) {
  BigInt r;
  mpz_ui_pow_ui(r.get_mpz_t(), static_cast<unsigned long>(base),
                static_cast<unsigned long>(exp));
  return r;
}

// Number of freely reduced words of length n: 2k(2k-1)^(n-1) for n >= 1.
// The empty word gives the n = 0 entry the value 1.
inline BigInt gamma_count(std::int32_t k, std::int64_t n, WordSet set) {
  require_rank(k);
  if (n < 0) throw std::invalid_argument("gamma: n must be >= 0");
  if (n == 0) return 1;
  if (set == WordSet::FreelyReduced) return 2 * k * pow_int(2 * k - 1, n - 1);
  // Cyclically reduced count: (2k-1)^n + 1 + (k-1)(1+(-1)^n).
  BigInt r = pow_int(2 * k - 1, n) + 1;
  if (n % 2 == 0) r += 2 * (k - 1);
  return r;
}

inline BigInt rho_count(std::int32_t k, std::int64_t n, WordSet set) {
  BigInt total = 0;
  for (std::int64_t i = 0; i <= n; ++i) total += gamma_count(k, i, set);
  return total;
}

// Memoized view of the gamma/rho values for one rank.
class CountTable {
 public:
  explicit CountTable(std::int32_t k) : k_(k) { require_rank(k); }

  std::int32_t rank() const { return k_; }

  const BigInt& gamma(std::int64_t n, WordSet set) {
    auto key = std::make_pair(set == WordSet::FreelyReduced ? 0 : 1, n);
    auto it = gamma_.find(key);
    if (it == gamma_.end())
      it = gamma_.emplace(key, gamma_count(k_, n, set)).first;
    return it->second;
  }

  BigInt rho(std::int64_t n, WordSet set) {
    BigInt total = 0;
    for (std::int64_t i = 0; i <= n; ++i) total += gamma(i, set);
    return total;
  }

 private:
  std::int32_t k_;
  std::map<std::pair<int, std::int64_t>, BigInt> gamma_;
};

inline void check_enumeration_cap(std::int32_t k, std::int64_t n,
                                  std::int64_t cap = kDefaultEnumerationCap) {
  if (pow_int(2 * k - 1, n) > BigInt(cap))
    throw BudgetError("enumeration refused: (2k-1)^n exceeds cap");
}

// Streams words of fixed length in lexicographic order of the letter order
// a1 < a1^-1 < a2 < a2^-1 < ... . A fixed prefix restricts the stream to its
// shard; shards over all prefixes of one length partition the full set.
class WordEnumerator {
 public:
  WordEnumerator(std::int32_t k, std::int64_t n, WordSet set, Word prefix = Word(),
                 std::int64_t cap = kDefaultEnumerationCap)
      : k_(k), n_(n), set_(set), prefix_len_(prefix.size()) {
    require_rank(k);
    if (n < 0) throw std::invalid_argument("enumerate: n must be >= 0");
    if (prefix.size() > static_cast<std::size_t>(n))
      throw std::invalid_argument("enumerate: prefix longer than n");
    check_enumeration_cap(k, n - static_cast<std::int64_t>(prefix.size()), cap);
    codes_.reserve(static_cast<std::size_t>(n));
    for (Letter l : prefix.letters()) {
      if (l.code() >= 2 * k_) throw std::invalid_argument("enumerate: prefix letter out of range");
      codes_.push_back(l.code());
    }
  }

  // Emits the next word, or returns false when the shard is exhausted.
  bool next(Word& out) {
    while (advance()) {
      if (set_ == WordSet::CyclicallyReduced && n_ >= 2 &&
          codes_.front() == (codes_.back() ^ 1))
        continue;
      LetterSeq seq;
      seq.reserve(codes_.size());
      for (std::int32_t c : codes_) seq.push_back(Letter::from_code(c));
      out = Word::unchecked(std::move(seq));
      return true;
    }
    return false;
  }

 private:
  // Smallest code != forbidden (pass -1 for none).
  static std::int32_t smallest_code(std::int32_t forbidden) {
    return forbidden == 0 ? 1 : 0;
  }

  bool fill_minimal(std::size_t from) {
    for (std::size_t i = from; i < static_cast<std::size_t>(n_); ++i) {
      const std::int32_t forb = i == 0 ? -1 : (codes_[i - 1] ^ 1);
      codes_.push_back(smallest_code(forb));
    }
    return true;
  }

  bool advance() {
    if (done_) return false;
    if (!started_) {
      started_ = true;
      fill_minimal(prefix_len_);
      return true;
    }
    // Odometer step over positions outside the fixed prefix.
    std::size_t pos = codes_.size();
    while (pos > prefix_len_) {
      --pos;
      const std::int32_t forb = pos == 0 ? -1 : (codes_[pos - 1] ^ 1);
      std::int32_t c = codes_[pos];
      while (++c < 2 * k_) {
        if (c != forb) {
          codes_.resize(pos);
          codes_.push_back(c);
          fill_minimal(pos + 1);
          return true;
        }
      }
    }
    done_ = true;
    return false;
  }

  std::int32_t k_;
  std::int64_t n_;
  WordSet set_;
  std::size_t prefix_len_;
  std::vector<std::int32_t> codes_;
  bool started_ = false;
  bool done_ = false;
};

// Exact count of length-n words satisfying pred, by enumeration.
inline BigInt enumerate_count(std::int32_t k, std::int64_t n, WordSet set,
                              const std::function<bool(const Word&)>& pred = nullptr,
                              std::int64_t cap = kDefaultEnumerationCap) {
  WordEnumerator en(k, n, set, Word(), cap);
  BigInt total = 0;
  Word w;
  while (en.next(w))
    if (!pred || pred(w)) ++total;
  return total;
}

}  // namespace onerel
