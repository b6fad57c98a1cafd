#pragma once
// Finite presentations: length functionals, Tietze cleanup of short relators,
// and the six-letter / binary encoding with exact round-trip.

#include <algorithm>
#include <cstdint>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "onerel/words.hpp"

namespace onerel {

// Raised when a cleanup step would need the no-order-two assumption and the
// caller has not asserted it.
class OrderTwoError : public std::runtime_error {
 public:
  explicit OrderTwoError(const std::string& what) : std::runtime_error(what) {}
};

struct Presentation {
  std::int32_t generator_count = 0;
  std::vector<Word> relators;

  Presentation() = default;
  Presentation(std::int32_t m, std::vector<Word> rels)
      : generator_count(m), relators(std::move(rels)) {
    if (m < 0) throw std::invalid_argument("Presentation: negative generator count");
    for (const Word& r : relators)
      for (const Letter& l : r.letters())
        if (l.generator() > m)
          throw std::invalid_argument("Presentation: relator letter out of range");
  }

  bool operator==(const Presentation&) const = default;
};

// Sum over relators of max(|r| - 2, 0).
inline std::int64_t ell(const Presentation& p) {
  std::int64_t total = 0;
  for (const Word& r : p.relators)
    total += std::max<std::int64_t>(static_cast<std::int64_t>(r.size()) - 2, 0);
  return total;
}

// Sum of relator lengths.
inline std::int64_t ell_1(const Presentation& p) {
  std::int64_t total = 0;
  for (const Word& r : p.relators) total += static_cast<std::int64_t>(r.size());
  return total;
}

namespace detail {

// Remove the generator at index `gen` (1-based) from every relator, then
// renumber generators above it down by one.
inline void kill_generator(std::vector<Word>& rels, std::int32_t gen) {
  for (Word& r : rels) {
    LetterSeq out;
    out.reserve(r.size());
    for (const Letter& l : r.letters()) {
      if (l.generator() == gen) continue;
      out.push_back(l.generator() > gen
                        ? Letter::make(l.generator() - 1, l.is_inverse())
                        : l);
    }
    r = free_reduce(out);
  }
}

// Substitute the generator of letter `victim` so that victim itself maps to
// `repl`, then renumber as in kill_generator.
inline void substitute_generator(std::vector<Word>& rels, Letter victim, Letter repl) {
  const std::int32_t gen = victim.generator();
  for (Word& r : rels) {
    LetterSeq out;
    out.reserve(r.size());
    for (const Letter& l : r.letters()) {
      Letter m = l;
      if (l.generator() == gen) m = (l == victim) ? repl : repl.inverse();
      if (m.generator() > gen) m = Letter::make(m.generator() - 1, m.is_inverse());
      out.push_back(m);
    }
    r = free_reduce(out);
  }
}

}  // namespace detail

// Eliminate relators of length below three by Tietze moves: a length-1
// relator kills its generator; a length-2 relator on two distinct generators
// substitutes the second letter by the inverse of the first and deletes the
// second letter's generator; a squared letter kills its generator, which is
// only sound when the group has no element of order two (caller-asserted
// flag). The output presents an isomorphic group and never increases ell.
inline Presentation tietze_cleanup(const Presentation& p,
                                   bool assume_no_order_two = false) {
  std::int32_t m = p.generator_count;
  std::vector<Word> rels = p.relators;
  for (;;) {
    std::erase_if(rels, [](const Word& r) { return r.empty(); });
    std::size_t idx = rels.size();
    for (std::size_t i = 0; i < rels.size(); ++i)
      if (rels[i].size() < 3) {
        idx = i;
        break;
      }
    if (idx == rels.size()) break;
    const Word fired = rels[idx];
    if (fired.size() == 1) {
      detail::kill_generator(rels, fired.letters()[0].generator());
      --m;
      continue;
    }
    const Letter x = fired.letters()[0];
    const Letter y = fired.letters()[1];
    if (x == y) {
      if (!assume_no_order_two)
        throw OrderTwoError("tietze_cleanup: squared relator needs the no-order-two assumption");
      detail::kill_generator(rels, x.generator());
      --m;
      continue;
    }
    // Freely reduced length-2 relators with distinct letters lie on distinct
    // generators.
    detail::substitute_generator(rels, y, x.inverse());
    --m;
  }
  return Presentation(m, std::move(rels));
}

// ---- Six-letter encoding ----------------------------------------------------

struct EncodedPresentation {
  std::string six_letter;  // over the alphabet {b, 0, 1, -, ",", "|"}
  std::string binary;      // fixed 3-bit block code of six_letter

  bool operator==(const EncodedPresentation&) const = default;
};

namespace detail {

inline std::string binary_digits(std::int64_t v) {
  if (v < 1) throw std::invalid_argument("binary_digits: value must be >= 1");
  std::string out;
  for (; v > 0; v >>= 1) out.push_back(v & 1 ? '1' : '0');
  std::reverse(out.begin(), out.end());
  return out;
}

inline char six_to_bits(char c, std::string& out) {
  switch (c) {
    case 'b': out += "000"; return c;
    case '0': out += "001"; return c;
    case '1': out += "010"; return c;
    case '-': out += "011"; return c;
    case ',': out += "100"; return c;
    case '|': out += "101"; return c;
  }
  throw std::invalid_argument("six_to_bits: invalid alphabet character");
}

}  // namespace detail

inline std::string six_letter_to_binary(const std::string& six) {
  std::string out;
  out.reserve(3 * six.size());
  for (char c : six) detail::six_to_bits(c, out);
  return out;
}

inline std::string binary_to_six_letter(const std::string& bits) {
  if (bits.size() % 3 != 0)
    throw std::invalid_argument("binary_to_six_letter: length not a multiple of 3");
  static constexpr char kAlphabet[] = {'b', '0', '1', '-', ',', '|'};
  std::string out;
  out.reserve(bits.size() / 3);
  for (std::size_t i = 0; i < bits.size(); i += 3) {
    int v = 0;
    for (std::size_t j = 0; j < 3; ++j) {
      const char c = bits[i + j];
      if (c != '0' && c != '1')
        throw std::invalid_argument("binary_to_six_letter: non-bit character");
      v = v * 2 + (c - '0');
    }
    if (v > 5) throw std::invalid_argument("binary_to_six_letter: invalid block");
    out.push_back(kAlphabet[v]);
  }
  return out;
}

// W = binary(m) "|" relator_1 "," relator_2 "," ...; every letter is emitted
// as an optional "-" then "b" then the generator index in binary, most
// significant bit first, no leading zeros.
inline EncodedPresentation encode_presentation(const Presentation& p) {
  if (p.generator_count < 1)
    throw std::invalid_argument("encode_presentation: need at least one generator");
  std::string six = detail::binary_digits(p.generator_count);
  six.push_back('|');
  for (std::size_t i = 0; i < p.relators.size(); ++i) {
    const Word& r = p.relators[i];
    if (r.empty())
      throw std::invalid_argument("encode_presentation: empty relator is not encodable");
    if (i) six.push_back(',');
    for (const Letter& l : r.letters()) {
      if (l.is_inverse()) six.push_back('-');
      six.push_back('b');
      six += detail::binary_digits(l.generator());
    }
  }
  return {six, six_letter_to_binary(six)};
}

namespace detail {

inline std::int64_t parse_binary_digits(const std::string& s, std::size_t& pos,
                                        std::size_t end) {
  const std::size_t start = pos;
  while (pos < end && (s[pos] == '0' || s[pos] == '1')) ++pos;
  if (pos == start)
    throw std::invalid_argument("decode: expected binary digits");
  if (s[start] == '0')
    throw std::invalid_argument("decode: leading zero in binary index");
  if (pos - start > 62) throw std::invalid_argument("decode: index overflow");
  std::int64_t v = 0;
  for (std::size_t i = start; i < pos; ++i) v = v * 2 + (s[i] - '0');
  return v;
}

}  // namespace detail

inline Presentation decode_six_letter(const std::string& six) {
  std::size_t pos = 0;
  const std::size_t bar = six.find('|');
  if (bar == std::string::npos)
    throw std::invalid_argument("decode: missing generator/relator separator");
  const std::int64_t m = detail::parse_binary_digits(six, pos, bar);
  if (pos != bar) throw std::invalid_argument("decode: malformed generator count");
  if (m > (std::int64_t{1} << 30)) throw std::invalid_argument("decode: generator count too large");
  pos = bar + 1;
  std::vector<Word> relators;
  if (pos < six.size()) {
    LetterSeq current;
    for (;;) {
      bool inverse = false;
      if (pos < six.size() && six[pos] == '-') {
        inverse = true;
        ++pos;
      }
      if (pos >= six.size() || six[pos] != 'b')
        throw std::invalid_argument("decode: expected letter marker");
      ++pos;
      const std::int64_t idx = detail::parse_binary_digits(six, pos, six.size());
      if (idx > m) throw std::invalid_argument("decode: generator index out of range");
      current.push_back(Letter::make(static_cast<std::int32_t>(idx), inverse));
      if (pos == six.size()) {
        relators.emplace_back(current);
        break;
      }
      if (six[pos] == ',') {
        relators.emplace_back(current);
        current.clear();
        ++pos;
      }
    }
  }
  return Presentation(static_cast<std::int32_t>(m), std::move(relators));
}

inline Presentation decode_presentation(const EncodedPresentation& e) {
  const Presentation p = decode_six_letter(e.six_letter);
  if (six_letter_to_binary(e.six_letter) != e.binary)
    throw std::invalid_argument("decode_presentation: binary form does not match");
  return p;
}

// Closed-form length bound on the six-letter encoding.
inline std::int64_t six_letter_bound(std::int32_t m, std::int64_t ell1, std::int64_t t) {
  if (m < 1) throw std::invalid_argument("six_letter_bound: need m >= 1");
  std::int64_t log2m = 0;
  for (std::int64_t v = m; v > 1; v >>= 1) ++log2m;
  return 2 + log2m + (ell1 + t) * (log2m + 3);
}

// ---- Text format -------------------------------------------------------------
// Line `gens: <m>` followed by one `rel: <word>` line per relator.

inline std::string presentation_to_text(const Presentation& p) {
  std::ostringstream out;
  out << "gens: " << p.generator_count << "\n";
  const bool numeric = p.generator_count > 26;
  for (const Word& r : p.relators)
    out << "rel: " << word_to_text(r, numeric) << "\n";
  return out.str();
}

inline Presentation parse_presentation_text(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  std::int32_t m = -1;
  std::vector<Word> relators;
  auto trim = [](std::string s) {
    const auto a = s.find_first_not_of(" \t\r");
    if (a == std::string::npos) return std::string();
    const auto b = s.find_last_not_of(" \t\r");
    return s.substr(a, b - a + 1);
  };
  while (std::getline(in, line)) {
    const std::string t = trim(line);
    if (t.empty() || t[0] == '#') continue;
    if (t.rfind("gens:", 0) == 0) {
      if (m >= 0) throw std::invalid_argument("presentation text: duplicate gens line");
      m = std::stoi(trim(t.substr(5)));
      if (m < 0) throw std::invalid_argument("presentation text: negative generator count");
      continue;
    }
    if (t.rfind("rel:", 0) == 0) {
      if (m < 0) throw std::invalid_argument("presentation text: gens line must come first");
      relators.push_back(parse_word(trim(t.substr(4)), m));
      continue;
    }
    throw std::invalid_argument("presentation text: unrecognized line: " + t);
  }
  if (m < 0) throw std::invalid_argument("presentation text: missing gens line");
  return Presentation(m, std::move(relators));
}

}  // namespace onerel
