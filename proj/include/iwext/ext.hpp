#pragma once

/**
 * Graded Ext layer over the mod-p Iwahori-type algebra.
 *
 * Degrees one and two are stored as coordinate triples (lo, mid, hi)
 * indexed by group labels; the mid slot does not exist at length zero.
 * Degree three is the finite dual carried over verbatim (phi_w <-> dual
 * basis).  The header provides the two-sided generator actions, the
 * anti-involution and varpi-conjugation, fast case tables for the action
 * of the central element zeta, cup products, the duality pairing, the
 * augmentation of the top degree, the zeta-commutator endomorphisms
 * f = z.id.z - id and g = z.id - id.z, and the named distinguished
 * elements of degrees one and two.
 *
 * Right actions are defined through the anti-involution:
 *   x . h := J(J(h) . J(x)).
 */

#include <cstdint>
#include <map>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "fp.hpp"
#include "hecke.hpp"
#include "weyl.hpp"

namespace iwext {

/** Coordinate triple attached to one group label. */
struct Triple {
  FieldElt m, z, p;

  static Triple zero(std::uint32_t prime) {
    return {FieldElt::zero(prime), FieldElt::zero(prime),
            FieldElt::zero(prime)};
  }
  bool is_zero() const { return m.is_zero() && z.is_zero() && p.is_zero(); }
};

/**
 * Element of the degree-Deg component (Deg in {1,2}): a finite sum of
 * coordinate triples indexed by group labels.  Invariant: no stored
 * all-zero triple, and the mid coordinate vanishes on length-zero labels.
 */
template <int Deg>
struct TripleElt {
  static_assert(Deg == 1 || Deg == 2, "triples live in degrees one and two");

  std::uint32_t p{0};
  std::map<WeylElt, Triple> terms;

  TripleElt() = default;
  explicit TripleElt(std::uint32_t prime) : p(prime) {
    FieldElt::check_prime(prime);
  }

  static TripleElt zero(std::uint32_t prime) { return TripleElt(prime); }

  static TripleElt term(const WeylElt& w, const FieldElt& m, const FieldElt& z,
                        const FieldElt& pl) {
    TripleElt r(w.p);
    r.add_term(w, m, z, pl);
    return r;
  }

  static TripleElt term(const WeylElt& w, long long m, long long z,
                        long long pl) {
    return term(w, FieldElt(m, w.p), FieldElt(z, w.p), FieldElt(pl, w.p));
  }

  bool is_zero() const { return terms.empty(); }

  Triple coeff(const WeylElt& w) const {
    auto it = terms.find(w);
    return it == terms.end() ? Triple::zero(p) : it->second;
  }

  void add_term(const WeylElt& w, const FieldElt& dm, const FieldElt& dz,
                const FieldElt& dp) {
    if (w.len == 0 && !dz.is_zero())
      throw std::invalid_argument(
          "MidSlotAtLengthZero: no mid coordinate on length-zero labels");
    if (dm.is_zero() && dz.is_zero() && dp.is_zero()) return;
    auto [it, inserted] = terms.emplace(w, Triple{dm, dz, dp});
    if (!inserted) {
      it->second.m = it->second.m + dm;
      it->second.z = it->second.z + dz;
      it->second.p = it->second.p + dp;
      if (it->second.is_zero()) terms.erase(it);
    }
  }

  void add_scaled(const TripleElt& o, const FieldElt& c) {
    require_same(o);
    if (c.is_zero()) return;
    for (auto& [w, t] : o.terms) add_term(w, c * t.m, c * t.z, c * t.p);
  }

  std::uint32_t max_len() const {
    std::uint32_t n = 0;
    for (auto& [w, t] : terms)
      if (w.len > n) n = w.len;
    return n;
  }

  void require_same(const TripleElt& o) const {
    if (p != o.p) throw std::invalid_argument("FieldMismatch: triple operands");
  }

  friend bool operator==(const TripleElt& a, const TripleElt& b) {
    if (a.p != b.p || a.terms.size() != b.terms.size()) return false;
    for (auto ia = a.terms.begin(), ib = b.terms.begin(); ia != a.terms.end();
         ++ia, ++ib)
      if (ia->first != ib->first || !(ia->second.m == ib->second.m) ||
          !(ia->second.z == ib->second.z) || !(ia->second.p == ib->second.p))
        return false;
    return true;
  }
  friend bool operator!=(const TripleElt& a, const TripleElt& b) {
    return !(a == b);
  }

  friend TripleElt operator+(const TripleElt& a, const TripleElt& b) {
    TripleElt r = a;
    r.add_scaled(b, FieldElt::one(a.p));
    return r;
  }
  friend TripleElt operator-(const TripleElt& a, const TripleElt& b) {
    TripleElt r = a;
    r.add_scaled(b, -FieldElt::one(a.p));
    return r;
  }
  TripleElt operator-() const {
    TripleElt r(p);
    for (auto& [w, t] : terms) r.terms.emplace(w, Triple{-t.m, -t.z, -t.p});
    return r;
  }
  friend TripleElt operator*(const FieldElt& c, const TripleElt& a) {
    if (c.p != a.p) throw std::invalid_argument("FieldMismatch: scalar*triple");
    TripleElt r(a.p);
    r.add_scaled(a, c);
    return r;
  }

  std::string str() const {
    if (terms.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (auto& [w, t] : terms) {
      if (!first) os << " + ";
      first = false;
      os << "e" << Deg << "triple(" << w.str() << ";" << t.m.v << "," << t.z.v
         << "," << t.p.v << ")";
    }
    return os.str();
  }
  friend std::ostream& operator<<(std::ostream& os, const TripleElt& x) {
    return os << x.str();
  }
};

using E1Elt = TripleElt<1>;
using E2Elt = TripleElt<2>;

/** The top degree reuses the finite dual; phi_w is its basis element. */
using E3Elt = HDualElt;

inline E3Elt phi(const WeylElt& w) { return HDualElt::basis(w); }

/** Debug printers for the label-indexed containers. */
inline std::ostream& operator<<(std::ostream& os, const HeckeElt& h) {
  if (h.terms.empty()) return os << "0";
  bool first = true;
  for (auto& [w, c] : h.terms) {
    if (!first) os << " + ";
    first = false;
    os << c.v << "*t(" << w.str() << ")";
  }
  return os;
}
inline std::ostream& operator<<(std::ostream& os, const HDualElt& d) {
  if (d.terms.empty()) return os << "0";
  bool first = true;
  for (auto& [w, c] : d.terms) {
    if (!first) os << " + ";
    first = false;
    os << c.v << "*phi(" << w.str() << ")";
  }
  return os;
}

/** e_{gamma0} = e_{id} + e_{id^{-1}}. */
inline HeckeElt e_gamma0(std::uint32_t p) {
  return e_idem(p, 1) + e_idem(p, -1);
}

namespace detail {

/**
 * Append c . (tau_{omega_u} . t_w): the label moves to omega_u w and the
 * outer slots pick up the torus weights (inverse-square on lo and square
 * on hi in degree one; the opposite in degree two).
 */
template <int Deg>
inline void ext_add_omega(TripleElt<Deg>& out, std::uint32_t u,
                          const WeylElt& w, const Triple& t,
                          const FieldElt& c) {
  FieldElt us = FieldElt(u, out.p).pow(Deg == 1 ? -2 : 2);
  out.add_term(WeylElt::omega(out.p, u) * w, c * us * t.m, c * t.z,
               c * us.inv() * t.p);
}

/** Append c . (e_{id^k} . t_w) = -sum_u u^{-k} c . (tau_{omega_u} . t_w). */
template <int Deg>
inline void ext_add_idem(TripleElt<Deg>& out, long long k, const WeylElt& w,
                         const Triple& t, const FieldElt& c) {
  for (std::uint32_t u = 1; u < out.p; ++u)
    ext_add_omega(out, u, w, t, -FieldElt(u, out.p).pow(-k) * c);
}

/** Append c . (tau_{s_eps} . t_w) in degree one. */
inline void ext_add_s_e1(E1Elt& out, int eps, const WeylElt& w,
                         const Triple& t, const FieldElt& c) {
  std::uint32_t p = out.p;
  WeylElt sw = WeylElt::s(p, eps) * w;
  FieldElt zero = FieldElt::zero(p), two(2, p);
  if (eps == 0) {
    if (w.in_class(0)) {  // lengthening letter
      out.add_term(sw, zero, -c * t.z, -c * t.m);
      return;
    }
    ext_add_idem(out, 0, w, {-t.m, -t.z, -t.p}, c);
    if (w.len >= 2) {
      ext_add_idem(out, 1, w, {zero, -two * t.m, zero}, c);
    } else {
      ext_add_idem(out, 1, w, {zero, -two * t.m, t.z}, c);
      ext_add_idem(out, 2, w, {zero, zero, t.m}, c);
    }
    out.add_term(sw, zero, zero, -c * t.m);
  } else {
    if (w.in_class(1)) {
      out.add_term(sw, -c * t.p, -c * t.z, zero);
      return;
    }
    ext_add_idem(out, 0, w, {-t.m, -t.z, -t.p}, c);
    if (w.len >= 2) {
      ext_add_idem(out, -1, w, {zero, two * t.p, zero}, c);
    } else {
      ext_add_idem(out, -1, w, {-t.z, two * t.p, zero}, c);
      ext_add_idem(out, -2, w, {t.p, zero, zero}, c);
    }
    out.add_term(sw, -c * t.p, zero, zero);
  }
}

/** Append c . (tau_{s_eps} . t_w) in degree two. */
inline void ext_add_s_e2(E2Elt& out, int eps, const WeylElt& w,
                         const Triple& t, const FieldElt& c) {
  std::uint32_t p = out.p;
  WeylElt sw = WeylElt::s(p, eps) * w;
  FieldElt zero = FieldElt::zero(p), two(2, p);
  if (eps == 0) {
    if (w.in_class(0)) {
      out.add_term(sw, -c * t.p, zero, zero);
      return;
    }
    ext_add_idem(out, 0, w, {-t.m, -t.z, -t.p}, c);
    if (w.len >= 2) {
      ext_add_idem(out, 1, w, {two * t.z, zero, zero}, c);
      out.add_term(sw, -c * t.p, -c * t.z, zero);
    } else {
      ext_add_idem(out, 1, w, {two * t.z, -t.p, zero}, c);
      ext_add_idem(out, 2, w, {t.p, zero, zero}, c);
      out.add_term(sw, -c * t.p, zero, zero);
    }
  } else {
    if (w.in_class(1)) {
      out.add_term(sw, zero, zero, -c * t.m);
      return;
    }
    ext_add_idem(out, 0, w, {-t.m, -t.z, -t.p}, c);
    if (w.len >= 2) {
      ext_add_idem(out, -1, w, {zero, zero, -two * t.z}, c);
      out.add_term(sw, zero, -c * t.z, -c * t.m);
    } else {
      ext_add_idem(out, -1, w, {zero, t.m, -two * t.z}, c);
      ext_add_idem(out, -2, w, {zero, zero, t.m}, c);
      out.add_term(sw, zero, zero, -c * t.m);
    }
  }
}

inline E1Elt ext_left_s(int eps, const E1Elt& x) {
  E1Elt r(x.p);
  for (auto& [w, t] : x.terms)
    ext_add_s_e1(r, eps, w, t, FieldElt::one(x.p));
  return r;
}
inline E2Elt ext_left_s(int eps, const E2Elt& x) {
  E2Elt r(x.p);
  for (auto& [w, t] : x.terms)
    ext_add_s_e2(r, eps, w, t, FieldElt::one(x.p));
  return r;
}
template <int Deg>
inline TripleElt<Deg> ext_left_omega(std::uint32_t u,
                                     const TripleElt<Deg>& x) {
  TripleElt<Deg> r(x.p);
  for (auto& [w, t] : x.terms) ext_add_omega(r, u, w, t, FieldElt::one(x.p));
  return r;
}

}  // namespace detail

/**
 * Anti-involution J.  On a degree-one triple at w with torus part u:
 * even length (u^2 lo, mid, u^{-2} hi) at w^{-1}, odd length
 * (-u^{-2} hi, -mid, -u^2 lo) at w^{-1}; degree two carries the inverse
 * torus weights.  On the top degree it permutes the labels.
 */
inline E1Elt antiJ_ext(const E1Elt& x) {
  E1Elt r(x.p);
  for (auto& [w, t] : x.terms) {
    FieldElt u2 = w.unit_square();
    if (w.parity_odd())
      r.add_term(w.inverse(), -u2.inv() * t.p, -t.z, -u2 * t.m);
    else
      r.add_term(w.inverse(), u2 * t.m, t.z, u2.inv() * t.p);
  }
  return r;
}
inline E2Elt antiJ_ext(const E2Elt& x) {
  E2Elt r(x.p);
  for (auto& [w, t] : x.terms) {
    FieldElt u2 = w.unit_square();
    if (w.parity_odd())
      r.add_term(w.inverse(), -u2 * t.p, -t.z, -u2.inv() * t.m);
    else
      r.add_term(w.inverse(), u2.inv() * t.m, t.z, u2 * t.p);
  }
  return r;
}
inline E3Elt antiJ_ext(const E3Elt& d) {
  E3Elt r(d.p);
  for (auto& [w, c] : d.terms) r.add_term(w.inverse(), c);
  return r;
}

/** Conjugation by varpi: swaps the letters and reflects the triples. */
inline E1Elt gamma_varpi(const E1Elt& x) {
  E1Elt r(x.p);
  for (auto& [w, t] : x.terms)
    r.add_term(w.conj_varpi(), t.p, -t.z, t.m);
  return r;
}
inline E2Elt gamma_varpi(const E2Elt& x) {
  E2Elt r(x.p);
  for (auto& [w, t] : x.terms)
    r.add_term(w.conj_varpi(), t.p, -t.z, t.m);
  return r;
}
inline E3Elt gamma_varpi(const E3Elt& d) {
  E3Elt r(d.p);
  for (auto& [w, c] : d.terms) r.add_term(w.conj_varpi(), c);
  return r;
}

/** Two-sided action on the degree-one component. */
inline E1Elt act(const HeckeElt& h, const E1Elt& x, Side side) {
  if (h.p != x.p) throw std::invalid_argument("FieldMismatch: act");
  if (side == Side::Right)
    return antiJ_ext(act(antiJ(h), antiJ_ext(x), Side::Left));
  E1Elt out(x.p);
  for (auto& [w, c] : h.terms) {
    E1Elt cur = x;
    for (std::uint32_t i = w.len; i-- > 0;)
      cur = detail::ext_left_s(w.letter(i), cur);
    if (w.unit != 1) cur = detail::ext_left_omega(w.unit, cur);
    out.add_scaled(cur, c);
  }
  return out;
}

/** Two-sided action on the degree-two component. */
inline E2Elt act(const HeckeElt& h, const E2Elt& x, Side side) {
  if (h.p != x.p) throw std::invalid_argument("FieldMismatch: act");
  if (side == Side::Right)
    return antiJ_ext(act(antiJ(h), antiJ_ext(x), Side::Left));
  E2Elt out(x.p);
  for (auto& [w, c] : h.terms) {
    E2Elt cur = x;
    for (std::uint32_t i = w.len; i-- > 0;)
      cur = detail::ext_left_s(w.letter(i), cur);
    if (w.unit != 1) cur = detail::ext_left_omega(w.unit, cur);
    out.add_scaled(cur, c);
  }
  return out;
}

/** Two-sided action on the top degree (dual transport, verbatim). */
inline E3Elt act(const HeckeElt& h, const E3Elt& d, Side side) {
  return dual_act(h, d, side);
}

/** Degree-zero action: multiplication in the algebra. */
inline HeckeElt act(const HeckeElt& h, const HeckeElt& x, Side side) {
  return side == Side::Left ? h * x : x * h;
}

namespace detail {

/** One case row of the left zeta table in degree one. */
inline void zeta_term_e1(E1Elt& out, const WeylElt& w, const Triple& t,
                         const FieldElt& c) {
  std::uint32_t p = out.p;
  WeylElt s0w = WeylElt::s(p, 0) * w, s1w = WeylElt::s(p, 1) * w;
  WeylElt s10w = WeylElt::s(p, 1) * s0w, s01w = WeylElt::s(p, 0) * s1w;
  FieldElt zero = FieldElt::zero(p), two(2, p);
  if (w.len == 0) {
    out.add_term(s10w, c * t.m, zero, zero);
    out.add_term(s01w, zero, zero, c * t.p);
    ext_add_idem(out, 0, s0w, {zero, zero, -t.m}, c);
    ext_add_idem(out, 0, s1w, {-t.p, zero, zero}, c);
    ext_add_idem(out, 0, w, {t.m, zero, t.p}, c);
    return;
  }
  if (w.in_class(0)) {  // first letter s1
    out.add_term(s10w, c * t.m, c * t.z, zero);
    out.add_term(s01w, zero, zero, c * t.p);
    if (w.len == 1) {
      ext_add_idem(out, 1, s0w, {zero, -two * t.p, t.z}, c);
      ext_add_idem(out, 2, s0w, {zero, zero, -t.p}, c);
      ext_add_idem(out, 0, s1w, {-t.p, zero, zero}, c);
    } else {
      ext_add_idem(out, 1, s0w, {zero, -two * t.p, zero}, c);
      ext_add_idem(out, 1, s1w, {zero, two * t.p, zero}, c);
      if (w.len == 2) ext_add_idem(out, 2, s1w, {zero, zero, -t.p}, c);
    }
  } else {  // first letter s0
    out.add_term(s01w, zero, c * t.z, c * t.p);
    out.add_term(s10w, c * t.m, zero, zero);
    if (w.len == 1) {
      ext_add_idem(out, -1, s1w, {-t.z, two * t.m, zero}, c);
      ext_add_idem(out, -2, s1w, {-t.m, zero, zero}, c);
      ext_add_idem(out, 0, s0w, {zero, zero, -t.m}, c);
    } else {
      ext_add_idem(out, -1, s1w, {zero, two * t.m, zero}, c);
      ext_add_idem(out, -1, s0w, {zero, -two * t.m, zero}, c);
      if (w.len == 2) ext_add_idem(out, -2, s0w, {-t.m, zero, zero}, c);
    }
  }
}

/** One case row of the left zeta table in degree two. */
inline void zeta_term_e2(E2Elt& out, const WeylElt& w, const Triple& t,
                         const FieldElt& c) {
  std::uint32_t p = out.p;
  WeylElt s0w = WeylElt::s(p, 0) * w, s1w = WeylElt::s(p, 1) * w;
  WeylElt s10w = WeylElt::s(p, 1) * s0w, s01w = WeylElt::s(p, 0) * s1w;
  FieldElt zero = FieldElt::zero(p), two(2, p);
  if (w.len == 0) {
    out.add_term(s01w, c * t.m, zero, zero);
    out.add_term(s10w, zero, zero, c * t.p);
    ext_add_idem(out, 0, s0w, {-t.p, zero, zero}, c);
    ext_add_idem(out, 0, s1w, {zero, zero, -t.m}, c);
    ext_add_idem(out, 0, w, {t.m, zero, t.p}, c);
    return;
  }
  if (!w.in_class(0)) {  // first letter s0
    if (w.len == 1) {
      out.add_term(s01w, c * t.m, zero, zero);
      out.add_term(s10w, zero, zero, c * t.p);
      ext_add_idem(out, 0, s0w, {-t.p, zero, zero}, c);
      ext_add_idem(out, -1, s1w, {zero, zero, -two * t.z}, c);
      ext_add_idem(out, -2, s1w, {zero, zero, -t.p}, c);
    } else if (w.len == 2) {
      out.add_term(s01w, c * t.m, zero, zero);
      out.add_term(s10w, zero, zero, c * t.p);
      ext_add_idem(out, -1, s1w, {zero, zero, -two * t.z}, c);
      ext_add_idem(out, -1, s0w, {zero, -t.p, two * t.z}, c);
      ext_add_idem(out, -2, s0w, {zero, zero, -t.p}, c);
    } else {
      out.add_term(s01w, c * t.m, zero, zero);
      out.add_term(s10w, zero, c * t.z, c * t.p);
      ext_add_idem(out, -1, s1w, {zero, zero, -two * t.z}, c);
      ext_add_idem(out, -1, s0w, {zero, zero, two * t.z}, c);
    }
  } else {  // first letter s1
    if (w.len == 1) {
      out.add_term(s01w, c * t.m, zero, zero);
      out.add_term(s10w, zero, zero, c * t.p);
      ext_add_idem(out, 0, s1w, {zero, zero, -t.m}, c);
      ext_add_idem(out, 1, s0w, {two * t.z, zero, zero}, c);
      ext_add_idem(out, 2, s0w, {-t.m, zero, zero}, c);
    } else if (w.len == 2) {
      out.add_term(s10w, zero, zero, c * t.p);
      out.add_term(s01w, c * t.m, zero, zero);
      ext_add_idem(out, 1, s0w, {two * t.z, zero, zero}, c);
      ext_add_idem(out, 1, s1w, {-two * t.z, t.m, zero}, c);
      ext_add_idem(out, 2, s1w, {-t.m, zero, zero}, c);
    } else {
      out.add_term(s10w, zero, zero, c * t.p);
      out.add_term(s01w, c * t.m, c * t.z, zero);
      ext_add_idem(out, 1, s0w, {two * t.z, zero, zero}, c);
      ext_add_idem(out, 1, s1w, {-two * t.z, zero, zero}, c);
    }
  }
}

}  // namespace detail

/** Fast case table for the action of the central element zeta. */
inline E1Elt zeta_act(const E1Elt& x, Side side) {
  if (side == Side::Right) return antiJ_ext(zeta_act(antiJ_ext(x), Side::Left));
  E1Elt out(x.p);
  for (auto& [w, t] : x.terms) detail::zeta_term_e1(out, w, t, FieldElt::one(x.p));
  return out;
}
inline E2Elt zeta_act(const E2Elt& x, Side side) {
  if (side == Side::Right) return antiJ_ext(zeta_act(antiJ_ext(x), Side::Left));
  E2Elt out(x.p);
  for (auto& [w, t] : x.terms) detail::zeta_term_e2(out, w, t, FieldElt::one(x.p));
  return out;
}
inline E3Elt zeta_act(const E3Elt& d, Side side) {
  return dual_act(zeta(d.p), d, side);
}
inline HeckeElt zeta_act(const HeckeElt& h, Side side) {
  return side == Side::Left ? zeta(h.p) * h : h * zeta(h.p);
}

/** Generic zeta action by basis decomposition (oracle for the table). */
inline E1Elt zeta_act_generic(const E1Elt& x, Side side) {
  return act(zeta(x.p), x, side);
}
inline E2Elt zeta_act_generic(const E2Elt& x, Side side) {
  return act(zeta(x.p), x, side);
}

/**
 * Cup product of two degree-one classes.  Same-label triples pair through
 * the alternating 2x2 minors; length-zero labels contribute nothing.
 */
inline E2Elt cup(const E1Elt& a, const E1Elt& b) {
  a.require_same(b);
  E2Elt r(a.p);
  for (auto& [w, x] : a.terms) {
    if (w.len == 0) continue;
    auto it = b.terms.find(w);
    if (it == b.terms.end()) continue;
    const Triple& y = it->second;
    r.add_term(w, x.z * y.p - x.p * y.z, -(x.m * y.p - x.p * y.m),
               x.m * y.z - x.z * y.m);
  }
  return r;
}

/** Cup of degrees one and two: the diagonal contraction into phi_w. */
inline E3Elt cup(const E1Elt& a, const E2Elt& b) {
  if (a.p != b.p) throw std::invalid_argument("FieldMismatch: cup operands");
  E3Elt r(a.p);
  for (auto& [w, x] : a.terms) {
    auto it = b.terms.find(w);
    if (it == b.terms.end()) continue;
    const Triple& y = it->second;
    r.add_term(w, x.m * y.m + x.z * y.z + x.p * y.p);
  }
  return r;
}
inline E3Elt cup(const E2Elt& a, const E1Elt& b) { return cup(b, a); }

/** Cup with a degree-zero class is the module action. */
inline E1Elt cup(const HeckeElt& h, const E1Elt& x) {
  return act(h, x, Side::Left);
}
inline E1Elt cup(const E1Elt& x, const HeckeElt& h) {
  return act(h, x, Side::Right);
}
inline E2Elt cup(const HeckeElt& h, const E2Elt& x) {
  return act(h, x, Side::Left);
}
inline E2Elt cup(const E2Elt& x, const HeckeElt& h) {
  return act(h, x, Side::Right);
}
inline E3Elt cup(const HeckeElt& h, const E3Elt& x) {
  return act(h, x, Side::Left);
}
inline E3Elt cup(const E3Elt& x, const HeckeElt& h) {
  return act(h, x, Side::Right);
}
inline HeckeElt cup(const HeckeElt& a, const HeckeElt& b) { return a * b; }

/** Degree sums above the top degree vanish identically; flag the misuse. */
inline E3Elt cup(const E1Elt&, const E3Elt&) {
  throw std::domain_error("DegreeOverflow: cup degrees exceed the top degree");
}
inline E3Elt cup(const E3Elt&, const E1Elt&) {
  throw std::domain_error("DegreeOverflow: cup degrees exceed the top degree");
}
inline E3Elt cup(const E2Elt&, const E2Elt&) {
  throw std::domain_error("DegreeOverflow: cup degrees exceed the top degree");
}
inline E3Elt cup(const E2Elt&, const E3Elt&) {
  throw std::domain_error("DegreeOverflow: cup degrees exceed the top degree");
}
inline E3Elt cup(const E3Elt&, const E2Elt&) {
  throw std::domain_error("DegreeOverflow: cup degrees exceed the top degree");
}
inline E3Elt cup(const E3Elt&, const E3Elt&) {
  throw std::domain_error("DegreeOverflow: cup degrees exceed the top degree");
}

/** Augmentation of the top degree: the coefficient sum. */
inline FieldElt s3(const E3Elt& d) {
  FieldElt s = FieldElt::zero(d.p);
  for (auto& [w, c] : d.terms) s = s + c;
  return s;
}

/** Duality pairing of complementary degrees, valued in the scalars. */
inline FieldElt pairing(const E1Elt& a, const E2Elt& b) { return s3(cup(a, b)); }
inline FieldElt pairing(const E2Elt& a, const E1Elt& b) { return s3(cup(a, b)); }
inline FieldElt pairing(const HeckeElt& h, const E3Elt& d) {
  return s3(cup(h, d));
}
inline FieldElt pairing(const E3Elt& d, const HeckeElt& h) {
  return s3(cup(d, h));
}

/**
 * Length-additive product: for a supported at v and b supported at w with
 * l(vw) = l(v) + l(w), the product is (a . tau_w) cup (tau_v . b).
 */
namespace detail {
template <class A, class B>
inline void yo_check(const A& a, const WeylElt& v, const WeylElt& w,
                     const B& b) {
  if ((v * w).len != v.len + w.len)
    throw std::invalid_argument(
        "LengthDrop: factors must multiply length-additively");
  for (auto& [u, t] : a.terms)
    if (u != v)
      throw std::invalid_argument("SupportMismatch: left factor not at v");
  for (auto& [u, t] : b.terms)
    if (u != w)
      throw std::invalid_argument("SupportMismatch: right factor not at w");
}
}  // namespace detail

inline E2Elt yo_product(const E1Elt& a, const WeylElt& v, const WeylElt& w,
                        const E1Elt& b) {
  detail::yo_check(a, v, w, b);
  return cup(act(HeckeElt::basis(w), a, Side::Right),
             act(HeckeElt::basis(v), b, Side::Left));
}
inline E3Elt yo_product(const E1Elt& a, const WeylElt& v, const WeylElt& w,
                        const E2Elt& b) {
  detail::yo_check(a, v, w, b);
  return cup(act(HeckeElt::basis(w), a, Side::Right),
             act(HeckeElt::basis(v), b, Side::Left));
}
inline E3Elt yo_product(const E2Elt& a, const WeylElt& v, const WeylElt& w,
                        const E1Elt& b) {
  detail::yo_check(a, v, w, b);
  return cup(act(HeckeElt::basis(w), a, Side::Right),
             act(HeckeElt::basis(v), b, Side::Left));
}

/** f = zeta . id . zeta - id. */
template <class Elt>
inline Elt f_endo(const Elt& x) {
  return zeta_act(zeta_act(x, Side::Right), Side::Left) - x;
}
/** g = zeta . id - id . zeta. */
template <class Elt>
inline Elt g_endo(const Elt& x) {
  return zeta_act(x, Side::Left) - zeta_act(x, Side::Right);
}

/** Split into the parts of length < n and length >= n. */
template <class Elt>
inline std::pair<Elt, Elt> filtration_split(const Elt& x, std::uint32_t n) {
  Elt low(x.p), high(x.p);
  for (auto& [w, c] : x.terms) (w.len < n ? low : high).terms.emplace(w, c);
  return {low, high};
}

/**
 * Normalization context: the chosen scalar line generator alpha and the
 * dual normalizer value c with c(alpha) = 1.  Changing alpha rescales the
 * degree-d coordinates by alpha^d, uniformly across the slots.
 */
struct NormCtx {
  std::uint32_t p{0};
  FieldElt alpha;
  FieldElt c_scalar;

  NormCtx(std::uint32_t prime, const FieldElt& a)
      : p(prime), alpha(a), c_scalar(a.inv()) {
    FieldElt::check_prime(prime);
    if (a.p != prime) throw std::invalid_argument("FieldMismatch: NormCtx");
  }
  static NormCtx standard(std::uint32_t prime) {
    return NormCtx(prime, FieldElt::one(prime));
  }
};

/** Degree-graded rescaling functor attached to a normalization context. */
inline HeckeElt rescale(const NormCtx&, const HeckeElt& h) { return h; }
inline E1Elt rescale(const NormCtx& ctx, const E1Elt& x) {
  return ctx.alpha * x;
}
inline E2Elt rescale(const NormCtx& ctx, const E2Elt& x) {
  return (ctx.alpha * ctx.alpha) * x;
}
inline E3Elt rescale(const NormCtx& ctx, const E3Elt& d) {
  return ctx.alpha.pow(3) * d;
}

/** Named degree-one elements generating the summands of the structure. */
inline E1Elt x0_elt(const NormCtx& ctx) {
  std::uint32_t p = ctx.p;
  E1Elt r = -E1Elt::term(s0(p), 0, 1, 0) -
            act(e_idem(p, -1), E1Elt::term(WeylElt::identity(p), 1, 0, 0),
                Side::Left);
  return rescale(ctx, r);
}
inline E1Elt x1_elt(const NormCtx& ctx) {
  std::uint32_t p = ctx.p;
  E1Elt r = E1Elt::term(s1(p), 0, 1, 0) -
            act(e_idem(p, 1), E1Elt::term(WeylElt::identity(p), 0, 0, 1),
                Side::Left);
  return rescale(ctx, r);
}
inline E1Elt xplus_elt(const NormCtx& ctx) {
  std::uint32_t p = ctx.p;
  WeylElt one = WeylElt::identity(p);
  E1Elt r = E1Elt::term(one, 0, 0, 1) -
            act(e_idem(p, 1), E1Elt::term(s0(p), 0, 2, 0), Side::Left) -
            act(e_idem(p, 1), E1Elt::term(s1(p) * s0(p), 0, 0, 1), Side::Left);
  return rescale(ctx, r);
}
inline E1Elt xminus_elt(const NormCtx& ctx) {
  std::uint32_t p = ctx.p;
  WeylElt one = WeylElt::identity(p);
  E1Elt r = E1Elt::term(one, 1, 0, 0) +
            act(e_idem(p, -1), E1Elt::term(s1(p), 0, 2, 0), Side::Left) -
            act(e_idem(p, -1), E1Elt::term(s0(p) * s1(p), 1, 0, 0), Side::Left);
  return rescale(ctx, r);
}
inline E1Elt vx_elt(const NormCtx& ctx) {
  std::uint32_t p = ctx.p;
  return rescale(ctx, act(e_idem(p, 1),
                          E1Elt::term(WeylElt::identity(p), 0, 0, 1),
                          Side::Left));
}
inline E1Elt vy_elt(const NormCtx& ctx) {
  std::uint32_t p = ctx.p;
  return rescale(ctx, act(e_idem(p, -1),
                          E1Elt::term(WeylElt::identity(p), 1, 0, 0),
                          Side::Left));
}
inline E1Elt vxs1_elt(const NormCtx& ctx) {
  std::uint32_t p = ctx.p;
  return rescale(ctx,
                 act(e_idem(p, 1), E1Elt::term(s1(p), 0, 0, 1), Side::Left));
}
inline E1Elt vys0_elt(const NormCtx& ctx) {
  std::uint32_t p = ctx.p;
  return rescale(ctx,
                 act(e_idem(p, -1), E1Elt::term(s0(p), 1, 0, 0), Side::Left));
}

/** Named degree-two elements spanning the torus-fixed kernel lines. */
inline E2Elt aplus_elt(const NormCtx& ctx) {
  std::uint32_t p = ctx.p;
  E2Elt r = E2Elt::term(WeylElt::identity(p), 1, 0, 0) -
            act(e_idem(p, 1), E2Elt::term(s0(p), 0, 1, 0), Side::Left);
  return rescale(ctx, r);
}
inline E2Elt aminus_elt(const NormCtx& ctx) {
  std::uint32_t p = ctx.p;
  E2Elt r = E2Elt::term(WeylElt::identity(p), 0, 0, 1) +
            act(e_idem(p, -1), E2Elt::term(s1(p), 0, 1, 0), Side::Left);
  return rescale(ctx, r);
}

}  // namespace iwext
