#pragma once

#include <cctype>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <tuple>
#include <vector>

#include "iwext/fp.hpp"

namespace iwext {

/**
 * Elements of the extended affine Weyl group attached to SL2: the group is
 * generated by two order-two-up-to-unit letters s0, s1 and a torus part
 * omega_u (u a unit mod p), subject to
 *
 *   s_i * s_i   = omega_{-1}          (squares land in the torus)
 *   omega_u s_i = s_i omega_{u^{-1}}  (letters invert the torus)
 *
 * so every element has the unique normal form omega_u * s_e s_{1-e} ... with
 * an alternating word.  The value stores the unit, the word length, and the
 * first letter.  Note omega_{-1} is central: it commutes with both letters.
 *
 * Literal syntax: w{u=<k>;<word>} where <word> is an alternating string over
 * {0,1}; w{u=1;} is the identity.
 */
struct WeylElt {
  std::uint32_t p{0};
  std::uint32_t unit{1};   // representative in 1..p-1
  std::uint32_t len{0};    // number of letters
  std::uint8_t first{0};   // first letter, meaningful iff len > 0

  WeylElt() = default;

  WeylElt(std::uint32_t prime, long long u, std::uint32_t length,
          int first_letter)
      : p(prime), len(length) {
    FieldElt::check_prime(prime);
    FieldElt uu(u, prime);
    if (uu.is_zero())
      throw std::invalid_argument("InvalidUnit: torus part needs u != 0 mod p");
    unit = uu.v;
    if (len > 0) {
      if (first_letter != 0 && first_letter != 1)
        throw std::invalid_argument("InvalidWord: letters are 0 or 1");
      first = static_cast<std::uint8_t>(first_letter);
    } else {
      first = 0;
    }
  }

  static WeylElt identity(std::uint32_t prime) { return WeylElt(prime, 1, 0, 0); }
  static WeylElt omega(std::uint32_t prime, long long u) {
    return WeylElt(prime, u, 0, 0);
  }
  static WeylElt s(std::uint32_t prime, int eps) {
    return WeylElt(prime, 1, 1, eps);
  }

  std::uint32_t length() const { return len; }
  bool parity_odd() const { return (len & 1) != 0; }

  /** Letter at position i (0-based) of the alternating word. */
  int letter(std::uint32_t i) const {
    if (i >= len) throw std::out_of_range("letter(): index past word end");
    return static_cast<int>(first ^ (i & 1));
  }

  int first_letter() const {
    if (len == 0) throw std::domain_error("LengthZero: no first letter");
    return first;
  }

  int last_letter() const {
    if (len == 0) throw std::domain_error("LengthZero: no last letter");
    return static_cast<int>(first ^ ((len - 1) & 1));
  }

  /**
   * True when multiplying by s_eps on the left increases the length, i.e.
   * the word does not start with s_eps.  Length-zero elements lie in both
   * classes.
   */
  bool in_class(int eps) const { return len == 0 || first != eps; }

  /** The letter whose left multiplication shortens the word (len >= 1). */
  int descent() const { return first_letter(); }
  /** The letter whose left multiplication lengthens the word. */
  int ascent() const { return 1 - first_letter(); }

  FieldElt unit_elt() const { return FieldElt::raw(unit, p); }
  FieldElt unit_square() const { return unit_elt() * unit_elt(); }

  friend bool operator==(const WeylElt& a, const WeylElt& b) {
    return a.p == b.p && a.unit == b.unit && a.len == b.len &&
           (a.len == 0 || a.first == b.first);
  }
  friend bool operator!=(const WeylElt& a, const WeylElt& b) {
    return !(a == b);
  }

  /** Canonical order: by (length, first letter, unit representative). */
  friend bool operator<(const WeylElt& a, const WeylElt& b) {
    std::uint8_t fa = a.len ? a.first : 0, fb = b.len ? b.first : 0;
    return std::tie(a.len, fa, a.unit) < std::tie(b.len, fb, b.unit);
  }

  void require_same(const WeylElt& o) const {
    if (p != o.p)
      throw std::invalid_argument("FieldMismatch: group elements over different primes");
  }

  friend WeylElt operator*(const WeylElt& a, const WeylElt& b) {
    a.require_same(b);
    // a = omega_u X, b = omega_v Y.  Pull omega_v through X (each letter
    // inverts it), then cancel letters at the junction; every cancelled
    // pair contributes the central omega_{-1}.
    FieldElt u = a.unit_elt();
    FieldElt v = b.unit_elt();
    FieldElt torus = u * ((a.len & 1) ? v.inv() : v);
    std::uint32_t xlen = a.len, ylen = b.len;
    std::uint8_t xfirst = a.first, yfirst = b.first;
    FieldElt minus_one(-1, a.p);
    while (xlen > 0 && ylen > 0) {
      int xlast = static_cast<int>(xfirst ^ ((xlen - 1) & 1));
      if (xlast != static_cast<int>(yfirst)) break;
      --xlen;
      --ylen;
      yfirst ^= 1;
      torus = torus * minus_one;
    }
    WeylElt r;
    r.p = a.p;
    r.unit = torus.v;
    if (torus.is_zero()) throw std::logic_error("InvalidUnit: product unit 0");
    r.len = xlen + ylen;
    r.first = xlen > 0 ? xfirst : (ylen > 0 ? yfirst : 0);
    return r;
  }

  WeylElt inverse() const {
    // (omega_u l_1..l_n)^{-1} = omega_{(-1)^n u^{-(-1)^n}} l_n..l_1.
    WeylElt r;
    r.p = p;
    r.len = len;
    r.first = len ? static_cast<std::uint8_t>(last_letter()) : 0;
    FieldElt u = unit_elt();
    FieldElt nu = (len & 1) ? -u : u.inv();
    r.unit = nu.v;
    return r;
  }

  /** Conjugation by the length-preserving automorphism: swaps the two
   * letters and inverts the torus part. */
  WeylElt conj_varpi() const {
    WeylElt r = *this;
    r.unit = unit_elt().inv().v;
    if (r.len > 0) r.first ^= 1;
    return r;
  }

  std::string word() const {
    std::string s;
    s.reserve(len);
    for (std::uint32_t i = 0; i < len; ++i)
      s.push_back(static_cast<char>('0' + letter(i)));
    return s;
  }

  std::string str() const {
    return "w{u=" + std::to_string(unit) + ";" + word() + "}";
  }

  /** Parse the literal form w{u=<k>;<word>}. */
  static WeylElt parse(const std::string& text, std::uint32_t prime) {
    std::size_t i = 0;
    auto fail = [&](const std::string& why) -> void {
      throw std::invalid_argument("ParseError: " + why + " in '" + text + "'");
    };
    auto expect = [&](const std::string& tok) {
      if (text.compare(i, tok.size(), tok) != 0) fail("expected '" + tok + "'");
      i += tok.size();
    };
    expect("w{u=");
    bool neg = false;
    if (i < text.size() && (text[i] == '-' || text[i] == '+')) {
      neg = text[i] == '-';
      ++i;
    }
    if (i >= text.size() || !std::isdigit(static_cast<unsigned char>(text[i])))
      fail("expected unit digits");
    long long k = 0;
    while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) {
      k = k * 10 + (text[i] - '0');
      ++i;
    }
    if (neg) k = -k;
    expect(";");
    std::uint32_t length = 0;
    int firstl = 0, prev = -1;
    while (i < text.size() && (text[i] == '0' || text[i] == '1')) {
      int l = text[i] - '0';
      if (length == 0)
        firstl = l;
      else if (l == prev)
        throw std::invalid_argument("InvalidWord: word must alternate in '" +
                                    text + "'");
      prev = l;
      ++length;
      ++i;
    }
    expect("}");
    if (i != text.size()) fail("trailing characters");
    return WeylElt(prime, k, length, firstl);
  }
};

/** The two letters and handy powers of the torus generator. */
inline WeylElt s0(std::uint32_t p) { return WeylElt::s(p, 0); }
inline WeylElt s1(std::uint32_t p) { return WeylElt::s(p, 1); }

/** All group elements of length exactly l, in canonical order. */
inline std::vector<WeylElt> elements_of_length(std::uint32_t p, std::uint32_t l) {
  std::vector<WeylElt> out;
  if (l == 0) {
    for (std::uint32_t u = 1; u < p; ++u) out.push_back(WeylElt::omega(p, u));
    return out;
  }
  for (int f = 0; f <= 1; ++f)
    for (std::uint32_t u = 1; u < p; ++u) out.push_back(WeylElt(p, u, l, f));
  return out;
}

/** All group elements of length <= n, in canonical order. */
inline std::vector<WeylElt> elements_up_to_length(std::uint32_t p,
                                                  std::uint32_t n) {
  std::vector<WeylElt> out;
  for (std::uint32_t l = 0; l <= n; ++l) {
    auto layer = elements_of_length(p, l);
    out.insert(out.end(), layer.begin(), layer.end());
  }
  return out;
}

}  // namespace iwext
