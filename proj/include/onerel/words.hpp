#pragma once
// Letters, freely reduced words and cyclic words over a fixed free-group basis.

#include <algorithm>
#include <cassert>
#include <cctype>
#include <compare>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace onerel {

// A basis letter or its inverse. Generator i (1-based) has code 2*(i-1), its
// inverse 2*(i-1)+1, so code order realizes the fixed letter order
// a1 < a1^-1 < a2 < a2^-1 < ... used everywhere for lexicographic comparisons.
class Letter {
 public:
  constexpr Letter() = default;

  static constexpr Letter from_code(std::int32_t code) {
    Letter l;
    l.code_ = code;
    return l;
  }

  // gen is 1-based.
  static Letter make(std::int32_t gen, bool inverse) {
    if (gen < 1) throw std::invalid_argument("Letter: generator index must be >= 1");
    return from_code(2 * (gen - 1) + (inverse ? 1 : 0));
  }

  constexpr std::int32_t code() const { return code_; }
  constexpr std::int32_t generator() const { return code_ / 2 + 1; }
  constexpr bool is_inverse() const { return (code_ & 1) != 0; }
  constexpr Letter inverse() const { return from_code(code_ ^ 1); }

  friend constexpr bool operator==(Letter, Letter) = default;
  friend constexpr auto operator<=>(Letter, Letter) = default;

 private:
  std::int32_t code_ = 0;
};

using LetterSeq = std::vector<Letter>;

inline bool is_freely_reduced(std::span<const Letter> s) {
  for (std::size_t i = 1; i < s.size(); ++i)
    if (s[i] == s[i - 1].inverse()) return false;
  return true;
}

inline bool is_cyclically_reduced(std::span<const Letter> s) {
  if (!is_freely_reduced(s)) return false;
  if (s.size() >= 2 && s.front() == s.back().inverse()) return false;
  return true;
}

// A freely reduced word. The invariant is enforced at construction.
class Word {
 public:
  Word() = default;

  explicit Word(LetterSeq letters) : letters_(std::move(letters)) {
    if (!is_freely_reduced(letters_))
      throw std::invalid_argument("Word: sequence is not freely reduced");
  }

  static Word unchecked(LetterSeq letters) {
    Word w;
    w.letters_ = std::move(letters);
    assert(is_freely_reduced(w.letters_));
    return w;
  }

  const LetterSeq& letters() const { return letters_; }
  std::size_t size() const { return letters_.size(); }
  bool empty() const { return letters_.empty(); }
  Letter operator[](std::size_t i) const { return letters_[i]; }

  friend bool operator==(const Word&, const Word&) = default;
  friend auto operator<=>(const Word& a, const Word& b) {
    return std::lexicographical_compare_three_way(
        a.letters_.begin(), a.letters_.end(), b.letters_.begin(), b.letters_.end());
  }

 private:
  LetterSeq letters_;
};

// Cancels adjacent inverse pairs until none remain.
inline Word free_reduce(std::span<const Letter> raw) {
  LetterSeq out;
  out.reserve(raw.size());
  for (Letter l : raw) {
    if (!out.empty() && out.back() == l.inverse())
      out.pop_back();
    else
      out.push_back(l);
  }
  return Word::unchecked(std::move(out));
}

inline LetterSeq invert_raw(std::span<const Letter> s) {
  LetterSeq out;
  out.reserve(s.size());
  for (auto it = s.rbegin(); it != s.rend(); ++it) out.push_back(it->inverse());
  return out;
}

inline Word invert(const Word& w) { return Word::unchecked(invert_raw(w.letters())); }

inline Word concat_reduce(const Word& a, const Word& b) {
  LetterSeq raw = a.letters();
  raw.insert(raw.end(), b.letters().begin(), b.letters().end());
  return free_reduce(raw);
}

inline LetterSeq rotate_raw(std::span<const Letter> s, std::size_t r) {
  LetterSeq out;
  const std::size_t n = s.size();
  out.reserve(n);
  for (std::size_t i = 0; i < n; ++i) out.push_back(s[(i + r) % n]);
  return out;
}

// Index of the lexicographically least rotation (two-pointer, O(n)).
inline std::size_t least_rotation_index(std::span<const Letter> s) {
  const std::size_t n = s.size();
  if (n <= 1) return 0;
  std::size_t i = 0, j = 1, k = 0;
  while (i < n && j < n && k < n) {
    const Letter a = s[(i + k) % n], b = s[(j + k) % n];
    if (a == b) {
      ++k;
      continue;
    }
    // Rotations starting inside the matched stretch of the loser cannot win.
    if (a > b)
      i += k + 1;
    else
      j += k + 1;
    if (i == j) ++j;
    k = 0;
  }
  return std::min(i, j);
}

// A cyclic word: rotation class of a cyclically reduced word, stored via its
// lexicographically least rotation.
class CyclicWord {
 public:
  CyclicWord() = default;

  // w must already be cyclically reduced; the representative is canonicalized.
  explicit CyclicWord(const Word& w) {
    if (!is_cyclically_reduced(w.letters()))
      throw std::invalid_argument("CyclicWord: word is not cyclically reduced");
    rep_ = Word::unchecked(rotate_raw(w.letters(), least_rotation_index(w.letters())));
  }

  const Word& representative() const { return rep_; }
  std::size_t size() const { return rep_.size(); }
  bool empty() const { return rep_.empty(); }

  Word rotation(std::size_t r) const {
    return Word::unchecked(rotate_raw(rep_.letters(), r));
  }

  friend bool operator==(const CyclicWord&, const CyclicWord&) = default;
  friend auto operator<=>(const CyclicWord& a, const CyclicWord& b) {
    return a.rep_ <=> b.rep_;
  }

 private:
  Word rep_;
};

struct CyclicReduction {
  CyclicWord core;
  Word conjugator;  // w = conjugator * core.representative() * conjugator^-1
};

// Strips matching first/last letters, then folds the canonicalizing rotation
// of the core into the conjugator, so the identity above holds letter-for-
// letter with the stored representative.
inline CyclicReduction cyclic_reduce(const Word& w) {
  std::size_t lo = 0, hi = w.size();
  const LetterSeq& s = w.letters();
  while (hi - lo >= 2 && s[lo] == s[hi - 1].inverse()) {
    ++lo;
    --hi;
  }
  LetterSeq core(s.begin() + static_cast<std::ptrdiff_t>(lo),
                 s.begin() + static_cast<std::ptrdiff_t>(hi));
  const std::size_t rot = least_rotation_index(core);
  LetterSeq conj(s.begin(), s.begin() + static_cast<std::ptrdiff_t>(lo));
  conj.insert(conj.end(), core.begin(), core.begin() + static_cast<std::ptrdiff_t>(rot));
  return CyclicReduction{CyclicWord(Word::unchecked(rotate_raw(core, rot))),
                         Word::unchecked(std::move(conj))};
}

inline CyclicWord invert(const CyclicWord& c) {
  return CyclicWord(Word::unchecked(invert_raw(c.representative().letters())));
}

// Smallest p with s[i] = s[i+p] for all i (stringology period, via KMP).
inline std::size_t smallest_period(std::span<const Letter> s) {
  const std::size_t n = s.size();
  if (n == 0) return 0;
  std::vector<std::size_t> fail(n + 1, 0);
  std::size_t k = 0;
  for (std::size_t i = 1; i < n; ++i) {
    while (k > 0 && s[i] != s[k]) k = fail[k];
    if (s[i] == s[k]) ++k;
    fail[i + 1] = k;
  }
  return n - fail[n];
}

// True iff the cyclic word is u^m for some m >= 2. A rotation class is a
// proper power exactly when its representative is one as a linear word.
inline bool is_proper_power(const CyclicWord& c) {
  if (c.empty()) throw std::invalid_argument("is_proper_power: empty cyclic word");
  const std::size_t n = c.size();
  const std::size_t p = smallest_period(c.representative().letters());
  return p < n && n % p == 0;
}

inline std::size_t longest_common_prefix(const Word& a, const Word& b) {
  const std::size_t m = std::min(a.size(), b.size());
  std::size_t i = 0;
  while (i < m && a[i] == b[i]) ++i;
  return i;
}

// lcp of x with rot_r(z) without materializing the rotation; |x| == |z|.
inline std::size_t lcp_with_rotation(std::span<const Letter> x,
                                     std::span<const Letter> z, std::size_t r) {
  const std::size_t n = x.size();
  assert(z.size() == n);
  std::size_t i = 0;
  while (i < n && x[i] == z[(r + i) % n]) ++i;
  return i;
}

// ---- Text format -----------------------------------------------------------
// Alphabetic form for k <= 26: 'a'..'z' are generators 1..26, uppercase their
// inverses ("abAB" = a b a^-1 b^-1). Numeric form for any k: space-separated
// tokens xN (generator N) / XN (its inverse).

enum class ParseMode { Reject, Reduce };

inline Word parse_word(const std::string& text, std::int32_t k,
                       ParseMode mode = ParseMode::Reject,
                       bool force_numeric = false) {
  if (k < 1) throw std::invalid_argument("parse_word: k must be >= 1");
  LetterSeq raw;
  // Digits or spaces mark the numeric form; bare letters (including x/X for
  // generators 24+) are the alphabetic form.
  const bool numeric =
      force_numeric ||
      std::any_of(text.begin(), text.end(),
                  [](char c) { return c == ' ' || std::isdigit(static_cast<unsigned char>(c)); });
  if (numeric && !text.empty()) {
    std::size_t i = 0;
    while (i < text.size()) {
      if (text[i] == ' ') {
        ++i;
        continue;
      }
      const char c = text[i];
      if (c != 'x' && c != 'X')
        throw std::invalid_argument("parse_word: expected x or X token");
      ++i;
      std::size_t j = i;
      while (j < text.size() && std::isdigit(static_cast<unsigned char>(text[j]))) ++j;
      if (j == i) throw std::invalid_argument("parse_word: missing generator index");
      const long gen = std::stol(text.substr(i, j - i));
      if (gen < 1 || gen > k)
        throw std::invalid_argument("parse_word: generator index out of range");
      raw.push_back(Letter::make(static_cast<std::int32_t>(gen), c == 'X'));
      i = j;
    }
  } else {
    for (char c : text) {
      if (c >= 'a' && c <= 'z') {
        const std::int32_t gen = c - 'a' + 1;
        if (gen > k) throw std::invalid_argument("parse_word: letter out of range");
        raw.push_back(Letter::make(gen, false));
      } else if (c >= 'A' && c <= 'Z') {
        const std::int32_t gen = c - 'A' + 1;
        if (gen > k) throw std::invalid_argument("parse_word: letter out of range");
        raw.push_back(Letter::make(gen, true));
      } else {
        throw std::invalid_argument("parse_word: unexpected character");
      }
    }
  }
  if (mode == ParseMode::Reduce) return free_reduce(raw);
  if (!is_freely_reduced(raw))
    throw std::invalid_argument("parse_word: input is not freely reduced");
  return Word::unchecked(std::move(raw));
}

inline std::string word_to_text(const Word& w, bool numeric = false) {
  std::string out;
  bool alpha_ok = true;
  for (Letter l : w.letters())
    if (l.generator() > 26) alpha_ok = false;
  if (!numeric && alpha_ok) {
    for (Letter l : w.letters())
      out.push_back(static_cast<char>((l.is_inverse() ? 'A' : 'a') + l.generator() - 1));
  } else {
    for (std::size_t i = 0; i < w.size(); ++i) {
      if (i) out.push_back(' ');
      out.push_back(w[i].is_inverse() ? 'X' : 'x');
      out += std::to_string(w[i].generator());
    }
  }
  return out;
}

}  // namespace onerel
