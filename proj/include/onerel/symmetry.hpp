#pragma once
// Relabeling automorphisms (signed generator permutations), the finite
// symmetry group acting on cyclic words, canonical forms and orbit censuses.

#include <array>
#include <cstdint>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "onerel/counting.hpp"
#include "onerel/words.hpp"

namespace onerel {

// An automorphism a_i -> a_{perm[i]}^{sign[i]}; exactly k! 2^k of them.
class Relabeling {
 public:
  Relabeling() = default;

  Relabeling(std::vector<std::int32_t> perm, std::vector<bool> flip)
      : perm_(std::move(perm)), flip_(std::move(flip)) {
    if (perm_.size() != flip_.size())
      throw std::invalid_argument("Relabeling: size mismatch");
    std::vector<bool> seen(perm_.size(), false);
    for (std::int32_t p : perm_) {
      if (p < 1 || static_cast<std::size_t>(p) > perm_.size() || seen[p - 1])
        throw std::invalid_argument("Relabeling: not a permutation");
      seen[p - 1] = true;
    }
  }

  std::int32_t rank() const { return static_cast<std::int32_t>(perm_.size()); }

  Letter apply(Letter l) const {
    const std::int32_t g = l.generator();
    return Letter::make(perm_[g - 1], l.is_inverse() != flip_[g - 1]);
  }

  LetterSeq apply_raw(std::span<const Letter> s) const {
    LetterSeq out;
    out.reserve(s.size());
    for (Letter l : s) out.push_back(apply(l));
    return out;
  }

  // Letterwise bijections preserve free and cyclic reducedness.
  Word apply(const Word& w) const { return Word::unchecked(apply_raw(w.letters())); }

  bool is_identity() const {
    for (std::int32_t i = 0; i < rank(); ++i)
      if (perm_[i] != i + 1 || flip_[i]) return false;
    return true;
  }

  // (a.compose(b))(x) = a(b(x)).
  Relabeling compose(const Relabeling& b) const {
    std::vector<std::int32_t> perm(perm_.size());
    std::vector<bool> flip(perm_.size());
    for (std::size_t i = 0; i < perm_.size(); ++i) {
      perm[i] = perm_[b.perm_[i] - 1];
      flip[i] = b.flip_[i] != flip_[b.perm_[i] - 1];
    }
    return Relabeling(std::move(perm), std::move(flip));
  }

  Relabeling inverse() const {
    std::vector<std::int32_t> perm(perm_.size());
    std::vector<bool> flip(perm_.size());
    for (std::size_t i = 0; i < perm_.size(); ++i) {
      perm[perm_[i] - 1] = static_cast<std::int32_t>(i) + 1;
      flip[perm_[i] - 1] = flip_[i];
    }
    return Relabeling(std::move(perm), std::move(flip));
  }

  static Relabeling identity(std::int32_t k) {
    std::vector<std::int32_t> perm(k);
    for (std::int32_t i = 0; i < k; ++i) perm[i] = i + 1;
    return Relabeling(std::move(perm), std::vector<bool>(k, false));
  }

  // Format: "1:2+,2:1-" maps a1 -> a2 and a2 -> a1^-1.
  static Relabeling parse(const std::string& text, std::int32_t k);
  std::string to_text() const;

  friend bool operator==(const Relabeling&, const Relabeling&) = default;

 private:
  std::vector<std::int32_t> perm_;
  std::vector<bool> flip_;
};

inline Relabeling Relabeling::parse(const std::string& text, std::int32_t k) {
  std::vector<std::int32_t> perm(k, 0);
  std::vector<bool> flip(k, false);
  std::size_t i = 0;
  auto read_int = [&]() {
    std::size_t j = i;
    while (j < text.size() && std::isdigit(static_cast<unsigned char>(text[j]))) ++j;
    if (j == i) throw std::invalid_argument("Relabeling::parse: expected digit");
    const long v = std::stol(text.substr(i, j - i));
    i = j;
    return static_cast<std::int32_t>(v);
  };
  std::vector<bool> defined(k, false);
  while (i < text.size()) {
    const std::int32_t src = read_int();
    if (i >= text.size() || text[i] != ':')
      throw std::invalid_argument("Relabeling::parse: expected ':'");
    ++i;
    const std::int32_t dst = read_int();
    if (i >= text.size() || (text[i] != '+' && text[i] != '-'))
      throw std::invalid_argument("Relabeling::parse: expected sign");
    const bool neg = text[i] == '-';
    ++i;
    if (src < 1 || src > k || dst < 1 || dst > k)
      throw std::invalid_argument("Relabeling::parse: index out of range");
    if (defined[src - 1]) throw std::invalid_argument("Relabeling::parse: duplicate source");
    defined[src - 1] = true;
    perm[src - 1] = dst;
    flip[src - 1] = neg;
    if (i < text.size()) {
      if (text[i] != ',') throw std::invalid_argument("Relabeling::parse: expected ','");
      ++i;
    }
  }
  for (bool d : defined)
    if (!d) throw std::invalid_argument("Relabeling::parse: missing generator");
  return Relabeling(std::move(perm), std::move(flip));
}

inline std::string Relabeling::to_text() const {
  std::string out;
  for (std::int32_t i = 0; i < rank(); ++i) {
    if (i) out.push_back(',');
    out += std::to_string(i + 1);
    out.push_back(':');
    out += std::to_string(perm_[i]);
    out.push_back(flip_[i] ? '-' : '+');
  }
  return out;
}

inline std::uint64_t relabeling_count(std::int32_t k) {
  std::uint64_t m = 1;
  for (std::int32_t i = 2; i <= k; ++i) m *= static_cast<std::uint64_t>(i);
  return m << k;  // k! 2^k
}

// All k! 2^k relabelings; the identity comes first. Refuses k > 8, where the
// list alone is tens of millions of entries.
inline std::vector<Relabeling> all_relabelings(std::int32_t k) {
  require_rank(k);
  if (k > 8) throw BudgetError("all_relabelings refused: k > 8");
  std::vector<std::int32_t> perm(k);
  for (std::int32_t i = 0; i < k; ++i) perm[i] = i + 1;
  std::vector<Relabeling> out;
  out.reserve(relabeling_count(k));
  do {
    for (std::uint32_t mask = 0; mask < (1u << k); ++mask) {
      std::vector<bool> flip(k);
      for (std::int32_t i = 0; i < k; ++i) flip[i] = (mask >> i) & 1;
      out.emplace_back(perm, std::move(flip));
    }
  } while (std::next_permutation(perm.begin(), perm.end()));
  return out;
}

inline CyclicWord apply_relabeling(const Relabeling& tau, const CyclicWord& x) {
  return CyclicWord(tau.apply(x.representative()));
}

// One element of the group of order 2 * k!2^k * n acting on length-n strings:
// w -> rot_{rotation}(tau(w^e)) with e = -1 when invert is set.
struct SymmetryElement {
  Relabeling tau;
  bool invert = false;
  std::uint32_t rotation = 0;

  LetterSeq apply_raw(std::span<const Letter> s) const {
    LetterSeq t = invert ? invert_raw(s) : LetterSeq(s.begin(), s.end());
    t = tau.apply_raw(t);
    return rotate_raw(t, rotation);
  }

  Word apply(const Word& w) const { return Word::unchecked(apply_raw(w.letters())); }

  // (a.compose(b))(w) = a(b(w)); n is the word length the rotations refer to.
  SymmetryElement compose(const SymmetryElement& b, std::size_t n) const {
    SymmetryElement r;
    r.tau = tau.compose(b.tau);
    r.invert = invert != b.invert;
    const std::size_t br = invert ? (n - b.rotation % n) % n : b.rotation % n;
    r.rotation = static_cast<std::uint32_t>((rotation + br) % n);
    return r;
  }
};

// Least image over all relabelings, inversion and rotations; constant on the
// orbit of x, so it names the orbit.
inline Word canonical_form(const CyclicWord& x,
                           const std::vector<Relabeling>& relabelings) {
  if (x.empty()) return Word();
  bool have = false;
  Word best;
  for (const Relabeling& tau : relabelings) {
    for (int e = 0; e < 2; ++e) {
      LetterSeq img = tau.apply_raw(e ? invert_raw(x.representative().letters())
                                      : x.representative().letters());
      Word least = Word::unchecked(rotate_raw(img, least_rotation_index(img)));
      if (!have || least < best) {
        best = std::move(least);
        have = true;
      }
    }
  }
  return best;
}

inline Word canonical_form(const CyclicWord& x, std::int32_t k) {
  return canonical_form(x, all_relabelings(k));
}

// All distinct strings rot_a(tau(x^e)); the orbit of x under the full group.
inline std::set<Word> orbit_strings(const CyclicWord& x, std::int32_t k) {
  std::set<Word> out;
  const auto relabelings = all_relabelings(k);
  const std::size_t n = x.size();
  for (const Relabeling& tau : relabelings) {
    for (int e = 0; e < 2; ++e) {
      LetterSeq img = tau.apply_raw(e ? invert_raw(x.representative().letters())
                                      : x.representative().letters());
      for (std::size_t a = 0; a < std::max<std::size_t>(n, 1); ++a)
        out.insert(Word::unchecked(rotate_raw(img, a)));
    }
  }
  return out;
}

struct OrbitRecord {
  Word canonical;
  std::uint64_t orbit_size = 0;
  std::uint64_t stabilizer_order = 0;  // orbit_size * stabilizer_order = 2 M n
};

inline OrbitRecord orbit_record(const CyclicWord& x, std::int32_t k) {
  if (x.empty()) throw std::invalid_argument("orbit_record: empty cyclic word");
  const auto orbit = orbit_strings(x, k);
  OrbitRecord rec;
  rec.canonical = *orbit.begin();
  rec.orbit_size = orbit.size();
  const std::uint64_t group = 2 * relabeling_count(k) * x.size();
  if (group % rec.orbit_size != 0)
    throw std::logic_error("orbit_record: orbit size does not divide group order");
  rec.stabilizer_order = group / rec.orbit_size;
  return rec;
}

// The words close to x under the symmetry action: all cyclic permutations of
// tau(x) for nontrivial tau, of tau(x^-1) for every tau, and the nontrivial
// cyclic permutations of x itself. x must not be a proper power.
inline std::set<Word> y_set(const CyclicWord& x, std::int32_t k) {
  if (x.empty()) throw std::invalid_argument("y_set: empty cyclic word");
  if (is_proper_power(x)) throw std::invalid_argument("y_set: proper power");
  const auto relabelings = all_relabelings(k);
  const std::size_t n = x.size();
  std::set<Word> out;
  const LetterSeq& rep = x.representative().letters();
  const LetterSeq inv = invert_raw(rep);
  for (const Relabeling& tau : relabelings) {
    const bool trivial = tau.is_identity();
    const LetterSeq img = tau.apply_raw(rep);
    const LetterSeq img_inv = tau.apply_raw(inv);
    for (std::size_t a = 0; a < n; ++a) {
      if (!trivial || a != 0) out.insert(Word::unchecked(rotate_raw(img, a)));
      out.insert(Word::unchecked(rotate_raw(img_inv, a)));
    }
  }
  return out;
}

// ---- Orbit census ----------------------------------------------------------

enum class CensusMethod { Canonicalize, Burnside };

namespace detail {

using LetterMap = std::vector<std::int32_t>;  // alphabet code -> alphabet code

inline LetterMap relabeling_map(const Relabeling& tau, std::int32_t k) {
  LetterMap m(2 * k);
  for (std::int32_t c = 0; c < 2 * k; ++c)
    m[c] = tau.apply(Letter::from_code(c)).code();
  return m;
}

inline LetterMap compose_map(const LetterMap& f, const LetterMap& g) {
  LetterMap m(f.size());
  for (std::size_t i = 0; i < f.size(); ++i) m[i] = f[g[i]];
  return m;
}

inline LetterMap invert_map(const LetterMap& f) {
  LetterMap m(f.size());
  for (std::size_t i = 0; i < f.size(); ++i) m[f[i]] = static_cast<std::int32_t>(i);
  return m;
}

// Exact number of cyclically reduced length-n strings fixed by the element
// (tau, invert, rotation). Positions are tied into components by the induced
// position map; each component carries one free letter, adjacent positions
// impose non-cancellation constraints, and the component graph (a path or a
// cycle) is contracted by transfer-matrix DP.
inline BigInt count_fixed(std::int32_t k, std::int64_t n, const Relabeling& tau,
                          bool invert, std::int64_t rotation) {
  const std::int32_t A = 2 * k;
  const LetterMap tau_map = relabeling_map(tau, k);
  LetterMap f(A);  // constraint w[p] = f(w[pi(p)])
  if (!invert) {
    f = tau_map;
  } else {
    for (std::int32_t c = 0; c < A; ++c) f[c] = tau_map[c ^ 1];
  }
  const LetterMap f_inv = invert_map(f);
  auto pi = [&](std::int64_t p) {
    return invert ? ((n - 1 - rotation - p) % n + n) % n : (p + rotation) % n;
  };

  // Component decomposition with per-position bijections to the base letter.
  std::vector<std::int32_t> comp(n, -1);
  std::vector<LetterMap> beta(n);  // w[p] = beta[p](base letter of comp[p])
  std::vector<std::vector<bool>> allowed;
  LetterMap ident(A);
  for (std::int32_t c = 0; c < A; ++c) ident[c] = c;
  for (std::int64_t p0 = 0; p0 < n; ++p0) {
    if (comp[p0] >= 0) continue;
    const std::int32_t id = static_cast<std::int32_t>(allowed.size());
    comp[p0] = id;
    beta[p0] = ident;
    LetterMap acc = ident;
    std::int64_t p = p0;
    for (;;) {
      const std::int64_t q = pi(p);
      acc = compose_map(f_inv, acc);  // w[q] = f^-1(w[p])
      if (q == static_cast<std::int64_t>(p0)) break;
      comp[q] = id;
      beta[q] = acc;
      p = q;
    }
    // Cycle closure: the base letter must be fixed by the accumulated map.
    std::vector<bool> ok(A);
    for (std::int32_t c = 0; c < A; ++c) ok[c] = acc[c] == c;
    allowed.push_back(std::move(ok));
  }
  const std::int32_t ncomp = static_cast<std::int32_t>(allowed.size());

  // Adjacency constraints between consecutive positions, conjoined per
  // unordered component pair (rows indexed by the smaller component id).
  std::map<std::pair<std::int32_t, std::int32_t>, std::vector<std::vector<bool>>> edges;
  for (std::int64_t p = 0; p < n; ++p) {
    const std::int64_t q = (p + 1) % n;
    const std::int32_t u = comp[p], v = comp[q];
    if (u == v) {
      for (std::int32_t c = 0; c < A; ++c)
        if (beta[q][c] == (beta[p][c] ^ 1)) allowed[u][c] = false;
      continue;
    }
    const auto key = std::minmax(u, v);
    auto [it, inserted] = edges.try_emplace(
        std::make_pair(key.first, key.second),
        std::vector<std::vector<bool>>(A, std::vector<bool>(A, true)));
    auto& mat = it->second;
    for (std::int32_t c = 0; c < A; ++c)
      for (std::int32_t d = 0; d < A; ++d) {
        // letter at q must not cancel the letter at p
        const bool bad = u < v ? beta[q][d] == (beta[p][c] ^ 1)
                               : beta[q][c] == (beta[p][d] ^ 1);
        if (bad) mat[c][d] = false;
      }
  }

  // The component graph is a disjoint union of paths and cycles (degrees are
  // at most 2 because positions wrap a single circle).
  std::vector<std::vector<std::int32_t>> nbr(ncomp);
  for (const auto& [key, mat] : edges) {
    nbr[key.first].push_back(key.second);
    nbr[key.second].push_back(key.first);
  }
  for (std::int32_t cid = 0; cid < ncomp; ++cid)
    if (nbr[cid].size() > 2)
      throw std::logic_error("count_fixed: component graph degree > 2");

  auto edge_matrix = [&](std::int32_t u, std::int32_t v) {
    const auto& mat = edges.at(std::minmax(u, v));
    return std::make_pair(&mat, u < v);
  };

  std::vector<bool> used(ncomp, false);
  BigInt total = 1;
  for (std::int32_t start = 0; start < ncomp; ++start) {
    if (used[start]) continue;
    if (nbr[start].size() == 2) continue;  // cycle interiors handled below
    // Path (possibly a single vertex): DP from this endpoint.
    used[start] = true;
    std::vector<BigInt> vec(A);
    for (std::int32_t c = 0; c < A; ++c) vec[c] = allowed[start][c] ? 1 : 0;
    std::int32_t prev = -1, cur = start;
    for (;;) {
      std::int32_t next = -1;
      for (std::int32_t m : nbr[cur])
        if (m != prev && !used[m]) next = m;
      if (next < 0) break;
      used[next] = true;
      auto [mat, fwd] = edge_matrix(cur, next);
      std::vector<BigInt> nv(A);
      for (std::int32_t d = 0; d < A; ++d) {
        if (!allowed[next][d]) continue;
        BigInt acc = 0;
        for (std::int32_t c = 0; c < A; ++c) {
          const bool ok = fwd ? (*mat)[c][d] : (*mat)[d][c];
          if (ok && vec[c] != 0) acc += vec[c];
        }
        nv[d] = std::move(acc);
      }
      vec = std::move(nv);
      prev = cur;
      cur = next;
    }
    BigInt sum = 0;
    for (const BigInt& v : vec) sum += v;
    total *= sum;
    if (total == 0) return 0;
  }
  for (std::int32_t start = 0; start < ncomp; ++start) {
    if (used[start]) continue;
    // Cycle: fix the base letter of the start component, DP around.
    std::vector<std::int32_t> order{start};
    used[start] = true;
    std::int32_t prev = start, cur = nbr[start][0];
    while (cur != start) {
      used[cur] = true;
      order.push_back(cur);
      std::int32_t next = nbr[cur][0] == prev ? nbr[cur][1] : nbr[cur][0];
      prev = cur;
      cur = next;
    }
    BigInt sum = 0;
    for (std::int32_t s = 0; s < A; ++s) {
      if (!allowed[start][s]) continue;
      std::vector<BigInt> vec(A, 0);
      vec[s] = 1;
      for (std::size_t step = 0; step + 1 < order.size(); ++step) {
        auto [mat, fwd] = edge_matrix(order[step], order[step + 1]);
        std::vector<BigInt> nv(A);
        for (std::int32_t d = 0; d < A; ++d) {
          if (!allowed[order[step + 1]][d]) continue;
          BigInt acc = 0;
          for (std::int32_t c = 0; c < A; ++c) {
            const bool ok = fwd ? (*mat)[c][d] : (*mat)[d][c];
            if (ok && vec[c] != 0) acc += vec[c];
          }
          nv[d] = std::move(acc);
        }
        vec = std::move(nv);
      }
      // Closing edge back to the start component, landing on the fixed letter.
      auto [mat, fwd] = edge_matrix(order.back(), start);
      for (std::int32_t c = 0; c < A; ++c) {
        const bool ok = fwd ? (*mat)[c][s] : (*mat)[s][c];
        if (ok) sum += vec[c];
      }
    }
    total *= sum;
    if (total == 0) return 0;
  }
  return total;
}

}  // namespace detail

// Number of orbits of cyclically reduced length-n words under the full group,
// either by counting canonical representatives directly or by averaging fixed
// points over the group (no enumeration of words).
inline BigInt count_orbits(std::int32_t k, std::int64_t n, CensusMethod method,
                           std::int64_t cap = kDefaultEnumerationCap) {
  require_rank(k);
  if (n < 1) throw std::invalid_argument("count_orbits: n must be >= 1");
  if (method == CensusMethod::Canonicalize) {
    const auto relabelings = all_relabelings(k);
    WordEnumerator en(k, n, WordSet::CyclicallyReduced, Word(), cap);
    BigInt count = 0;
    Word w;
    while (en.next(w)) {
      // A word is counted iff it is the least element of its own orbit.
      const std::span<const Letter> rep = w.letters();
      bool least = true;
      for (const Relabeling& tau : relabelings) {
        for (int e = 0; e < 2 && least; ++e) {
          LetterSeq img = tau.apply_raw(e ? invert_raw(rep) : LetterSeq(rep.begin(), rep.end()));
          LetterSeq rot = rotate_raw(img, least_rotation_index(img));
          for (std::size_t i = 0; i < rot.size(); ++i) {
            if (rot[i] < rep[i]) {
              least = false;
              break;
            }
            if (rep[i] < rot[i]) break;
          }
        }
        if (!least) break;
      }
      if (least) ++count;
    }
    return count;
  }
  const auto relabelings = all_relabelings(k);
  BigInt total = 0;
  for (const Relabeling& tau : relabelings)
    for (int e = 0; e < 2; ++e)
      for (std::int64_t r = 0; r < n; ++r)
        total += detail::count_fixed(k, n, tau, e != 0, r);
  const BigInt group = BigInt(2 * relabeling_count(k)) * n;
  BigInt orbits, rem;
  mpz_fdiv_qr(orbits.get_mpz_t(), rem.get_mpz_t(), total.get_mpz_t(), group.get_mpz_t());
  if (rem != 0) throw std::logic_error("count_orbits: Burnside sum not divisible");
  return orbits;
}

// orbit_count * 2Mn / gamma(n, CR), exactly; tends to 1 from above as the
// typical orbit becomes free.
inline BigRat census_ratio(std::int32_t k, std::int64_t n, const BigInt& orbit_count) {
  const BigInt group = BigInt(2 * relabeling_count(k)) * n;
  BigRat ratio(orbit_count * group, gamma_count(k, n, WordSet::CyclicallyReduced));
  ratio.canonicalize();
  return ratio;
}

inline BigRat census_ratio(std::int32_t k, std::int64_t n, CensusMethod method,
                           std::int64_t cap = kDefaultEnumerationCap) {
  return census_ratio(k, n, count_orbits(k, n, method, cap));
}

}  // namespace onerel
