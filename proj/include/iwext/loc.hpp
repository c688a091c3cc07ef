#pragma once

#include <map>
#include <stdexcept>
#include <tuple>
#include <vector>

#include "iwext/fp.hpp"
#include "iwext/hecke.hpp"
#include "iwext/weyl.hpp"

namespace iwext {

/** Overflow guard for denominators of localized elements. */
inline constexpr std::uint32_t kLocNegExpWindow = 12;

/**
 * The localization of H at the central element zeta.  An element is stored
 * as zeta^{-negexp} * num with num in H, normalized so that negexp = 0 or
 * num is not divisible by zeta (zeta is not a zero divisor, so equality is
 * cross-multiplication, and normal forms are unique).
 */
struct LocHeckeElt {
  std::uint32_t p{0};
  std::uint32_t negexp{0};
  HeckeElt num;

  LocHeckeElt() = default;
  explicit LocHeckeElt(std::uint32_t prime)
      : p(prime), num(HeckeElt::zero(prime)) {}

  LocHeckeElt(std::uint32_t neg, HeckeElt n) : p(n.p), negexp(neg), num(std::move(n)) {
    normalize();
  }

  static LocHeckeElt from(const HeckeElt& h) { return LocHeckeElt(0, h); }
  static LocHeckeElt zero(std::uint32_t prime) { return LocHeckeElt(prime); }
  static LocHeckeElt one(std::uint32_t prime) {
    return from(HeckeElt::one(prime));
  }

  bool is_zero() const { return num.is_zero(); }

  void normalize() {
    if (num.is_zero()) {
      negexp = 0;
      return;
    }
    while (negexp > 0 && in_zetaH(num)) {
      num = div_zeta(num);
      --negexp;
    }
    if (negexp > kLocNegExpWindow)
      throw std::domain_error("WindowOverflow: localized denominator exceeds guard");
  }

  void require_same(const LocHeckeElt& o) const {
    if (p != o.p)
      throw std::invalid_argument("FieldMismatch: localized operands");
  }

  friend bool operator==(const LocHeckeElt& a, const LocHeckeElt& b) {
    return a.p == b.p && a.negexp == b.negexp && a.num == b.num;
  }
  friend bool operator!=(const LocHeckeElt& a, const LocHeckeElt& b) {
    return !(a == b);
  }

  /** Equality via cross-multiplication, for cross-checking normal forms. */
  bool equals_cross(const LocHeckeElt& o) const {
    require_same(o);
    return zeta_pow(p, o.negexp) * num == zeta_pow(p, negexp) * o.num;
  }

  friend LocHeckeElt operator+(const LocHeckeElt& a, const LocHeckeElt& b) {
    a.require_same(b);
    std::uint32_t n = std::max(a.negexp, b.negexp);
    HeckeElt na = zeta_pow(a.p, n - a.negexp) * a.num;
    HeckeElt nb = zeta_pow(a.p, n - b.negexp) * b.num;
    return LocHeckeElt(n, na + nb);
  }

  friend LocHeckeElt operator-(const LocHeckeElt& a, const LocHeckeElt& b) {
    a.require_same(b);
    std::uint32_t n = std::max(a.negexp, b.negexp);
    HeckeElt na = zeta_pow(a.p, n - a.negexp) * a.num;
    HeckeElt nb = zeta_pow(a.p, n - b.negexp) * b.num;
    return LocHeckeElt(n, na - nb);
  }

  LocHeckeElt operator-() const {
    LocHeckeElt r = *this;
    r.num = -r.num;
    return r;
  }

  friend LocHeckeElt operator*(const LocHeckeElt& a, const LocHeckeElt& b) {
    a.require_same(b);
    return LocHeckeElt(a.negexp + b.negexp, a.num * b.num);
  }

  friend LocHeckeElt operator*(const FieldElt& c, const LocHeckeElt& a) {
    return LocHeckeElt(a.negexp, c * a.num);
  }
};

inline LocHeckeElt loc_mul(const LocHeckeElt& a, const LocHeckeElt& b) {
  return a * b;
}

/** Multiplication by zeta^{-1}. */
inline LocHeckeElt loc_divide_zeta(const LocHeckeElt& a) {
  return LocHeckeElt(a.negexp + 1, a.num);
}

inline LocHeckeElt loc_zeta_shift(const LocHeckeElt& a, long long k) {
  if (a.is_zero()) return a;
  if (k >= 0) return LocHeckeElt(a.negexp, zeta_pow(a.p, static_cast<std::size_t>(k)) * a.num);
  return LocHeckeElt(a.negexp + static_cast<std::uint32_t>(-k), a.num);
}

/**
 * Coordinates in the free k[zeta^{pm1}]-bases of the four quotients of
 * H_zeta used by the plus/minus bimodule.  An atom (j, u, iota) denotes
 * zeta^j tau_{omega_u} when iota = 0 and zeta^j tau_{omega_u} iota(tau_s)
 * when iota = 1, where the involution letter is s_{1-i} on the side-i
 * quotient (right quotients mod H_zeta tau_{s_i}, left quotients mod
 * tau_{s_i} H_zeta share the same atom set).
 */
struct PMAtom {
  long long j{0};
  std::uint32_t u{1};
  std::uint8_t io{0};

  friend bool operator<(const PMAtom& a, const PMAtom& b) {
    return std::tie(a.j, a.io, a.u) < std::tie(b.j, b.io, b.u);
  }
  friend bool operator==(const PMAtom& a, const PMAtom& b) {
    return a.j == b.j && a.u == b.u && a.io == b.io;
  }
};

using PMComp = std::map<PMAtom, FieldElt>;

namespace detail {

inline void pm_add_term(PMComp& m, const PMAtom& a, const FieldElt& c) {
  if (c.is_zero()) return;
  auto [it, inserted] = m.emplace(a, c);
  if (!inserted) {
    it->second = it->second + c;
    if (it->second.is_zero()) m.erase(it);
  }
}

inline PMComp pm_comp_add(const PMComp& a, const PMComp& b) {
  PMComp r = a;
  for (auto& [k, c] : b) pm_add_term(r, k, c);
  return r;
}

inline PMComp pm_comp_scale(const FieldElt& c, const PMComp& a) {
  PMComp r;
  for (auto& [k, x] : a) pm_add_term(r, k, c * x);
  return r;
}

inline PMComp pm_comp_shift(const PMComp& a, long long dj) {
  PMComp r;
  for (auto& [k, x] : a) r.emplace(PMAtom{k.j + dj, k.u, k.io}, x);
  return r;
}

/**
 * Reduce an element of H to atom coordinates modulo H_zeta tau_{s_i}
 * (right = true) or modulo tau_{s_i} H_zeta (right = false), using the
 * label decomposition over k[zeta]:
 *   - torus labels survive as plain atoms;
 *   - the length-1 label ending on the killed side vanishes;
 *   - the other length-1 label rewrites through tau_s = -e1 - iota(tau_s);
 *   - the length-2 label either vanishes or rewrites to
 *     zeta tau_{omega_u} - sum_v tau_{omega_v} iota(tau_{s_{1-i}}).
 */
inline PMComp pm_reduce(int i, bool right, const HeckeElt& h, long long jshift) {
  std::uint32_t p = h.p;
  PMComp out;
  for (auto& [label, q] : kzeta_coords(h)) {
    for (std::size_t jj = 0; jj < q.c.size(); ++jj) {
      FieldElt c = q.coeff(jj);
      if (c.is_zero()) continue;
      long long j = static_cast<long long>(jj) + jshift;
      if (label.len == 0) {
        pm_add_term(out, {j, label.unit, 0}, c);
      } else if (label.len == 1) {
        if (label.first == i) continue;  // dies in this quotient
        for (std::uint32_t v = 1; v < p; ++v)
          pm_add_term(out, {j, v, 0}, c);
        pm_add_term(out, {j, label.unit, 1}, -c);
      } else {  // the length-2 label (word s0 s1)
        bool dies = right ? (i == 1) : (i == 0);
        if (dies) continue;
        pm_add_term(out, {j + 1, label.unit, 0}, c);
        for (std::uint32_t v = 1; v < p; ++v)
          pm_add_term(out, {j, v, 1}, -c);
      }
    }
  }
  return out;
}

/** Expand atom coordinates back into a localized element. */
inline LocHeckeElt pm_expand(std::uint32_t p, int i, const PMComp& m) {
  long long minj = 0;
  for (auto& [k, c] : m) minj = std::min(minj, k.j);
  HeckeElt num(p);
  HeckeElt io = iota(HeckeElt::basis(WeylElt::s(p, 1 - i)));
  for (auto& [k, c] : m) {
    HeckeElt atom = HeckeElt::basis(WeylElt::omega(p, k.u));
    if (k.io) atom = atom * io;
    num = num + c * (zeta_pow(p, static_cast<std::size_t>(k.j - minj)) * atom);
  }
  return LocHeckeElt(static_cast<std::uint32_t>(-minj), num);
}

}  // namespace detail

/**
 * The plus/minus bimodule: canonical atom coordinates of the two right
 * quotients H_zeta/H_zeta tau_{s0} (plus) and H_zeta/H_zeta tau_{s1}
 * (minus), with the twisted right action and the ordinary left action.
 */
struct PMElt {
  std::uint32_t p{0};
  PMComp plus, minus;

  PMElt() = default;
  explicit PMElt(std::uint32_t prime) : p(prime) {
    FieldElt::check_prime(prime);
  }

  static PMElt zero(std::uint32_t prime) { return PMElt(prime); }

  /** Classes of a pair of plain Hecke elements. */
  static PMElt from_hecke(const HeckeElt& hp, const HeckeElt& hm) {
    hp.require_same(hm);
    PMElt r(hp.p);
    r.plus = detail::pm_reduce(0, true, hp, 0);
    r.minus = detail::pm_reduce(1, true, hm, 0);
    return r;
  }

  static PMElt from_loc(const LocHeckeElt& lp, const LocHeckeElt& lm) {
    lp.require_same(lm);
    PMElt r(lp.p);
    r.plus = detail::pm_reduce(0, true, lp.num, -static_cast<long long>(lp.negexp));
    r.minus = detail::pm_reduce(1, true, lm.num, -static_cast<long long>(lm.negexp));
    return r;
  }

  static PMElt unit_plus(std::uint32_t prime) {
    PMElt r(prime);
    r.plus.emplace(PMAtom{0, 1, 0}, FieldElt::one(prime));
    return r;
  }

  static PMElt unit_minus(std::uint32_t prime) {
    PMElt r(prime);
    r.minus.emplace(PMAtom{0, 1, 0}, FieldElt::one(prime));
    return r;
  }

  bool is_zero() const { return plus.empty() && minus.empty(); }

  friend bool operator==(const PMElt& a, const PMElt& b) {
    return a.p == b.p && a.plus == b.plus && a.minus == b.minus;
  }
  friend bool operator!=(const PMElt& a, const PMElt& b) { return !(a == b); }

  friend PMElt operator+(const PMElt& a, const PMElt& b) {
    if (a.p != b.p) throw std::invalid_argument("FieldMismatch: pm add");
    PMElt r(a.p);
    r.plus = detail::pm_comp_add(a.plus, b.plus);
    r.minus = detail::pm_comp_add(a.minus, b.minus);
    return r;
  }

  friend PMElt operator-(const PMElt& a, const PMElt& b) {
    return a + (FieldElt(-1, a.p) * b);
  }

  friend PMElt operator*(const FieldElt& c, const PMElt& a) {
    PMElt r(a.p);
    r.plus = detail::pm_comp_scale(c, a.plus);
    r.minus = detail::pm_comp_scale(c, a.minus);
    return r;
  }

  LocHeckeElt plus_rep() const { return detail::pm_expand(p, 0, plus); }
  LocHeckeElt minus_rep() const { return detail::pm_expand(p, 1, minus); }
};

/** Elements of the left quotients tau_{s0}H_zeta, tau_{s1}H_zeta (domain
 * of the braiding map), in the same atom coordinates. */
struct PMLeftElt {
  std::uint32_t p{0};
  PMComp plus, minus;

  PMLeftElt() = default;
  explicit PMLeftElt(std::uint32_t prime) : p(prime) {
    FieldElt::check_prime(prime);
  }

  static PMLeftElt from_loc(const LocHeckeElt& lp, const LocHeckeElt& lm) {
    lp.require_same(lm);
    PMLeftElt r(lp.p);
    r.plus = detail::pm_reduce(0, false, lp.num, -static_cast<long long>(lp.negexp));
    r.minus = detail::pm_reduce(1, false, lm.num, -static_cast<long long>(lm.negexp));
    return r;
  }

  friend bool operator==(const PMLeftElt& a, const PMLeftElt& b) {
    return a.p == b.p && a.plus == b.plus && a.minus == b.minus;
  }
};

namespace detail {

/** sigma . tau_{omega_u}: per-component scaling and torus shift. */
inline PMElt pm_right_omega(const PMElt& s, std::uint32_t u) {
  PMElt r(s.p);
  FieldElt um2 = FieldElt(u, s.p).pow(-2), up2 = FieldElt(u, s.p).pow(2);
  for (auto& [k, c] : s.plus) {
    // atom * tau_{omega_u}: plain shifts the torus index by u, the iota
    // atom by u^{-1} (the involution letter inverts torus elements).
    std::uint32_t nu = k.io ? static_cast<std::uint32_t>(
                                  (static_cast<std::uint64_t>(k.u) *
                                   FieldElt(u, s.p).inv().v) % s.p)
                            : static_cast<std::uint32_t>(
                                  (static_cast<std::uint64_t>(k.u) * u) % s.p);
    pm_add_term(r.plus, {k.j, nu, k.io}, um2 * c);
  }
  for (auto& [k, c] : s.minus) {
    std::uint32_t nu = k.io ? static_cast<std::uint32_t>(
                                  (static_cast<std::uint64_t>(k.u) *
                                   FieldElt(u, s.p).inv().v) % s.p)
                            : static_cast<std::uint32_t>(
                                  (static_cast<std::uint64_t>(k.u) * u) % s.p);
    pm_add_term(r.minus, {k.j, nu, k.io}, up2 * c);
  }
  return r;
}

/** sigma . iota(tau_{s_i}) per the defining twisted action. */
inline PMElt pm_right_iota_s(const PMElt& s, int i) {
  std::uint32_t p = s.p;
  PMElt r(p);
  if (i == 0) {
    // (-sigma+ e_{id^2} - sigma- tau_{omega_{-1}} iota(tau_{s1}) zeta^{-1}, 0)
    for (auto& [k, c] : s.plus) {
      if (k.io == 0) {
        // zeta^j tau_{omega_v} e_{id^2} = -v^2 sum_w w^{-2} atom(j,w,0)
        FieldElt v2 = FieldElt(k.u, p).pow(2);
        for (std::uint32_t w = 1; w < p; ++w)
          pm_add_term(r.plus, {k.j, w, 0}, v2 * FieldElt(w, p).pow(-2) * c);
      } else {
        // zeta^j tau_{omega_v} iota(tau_{s1}) e_{id^2}
        //   = v^{-2} zeta^j e_{id^{-2}} iota(tau_{s1})
        FieldElt vm2 = FieldElt(k.u, p).pow(-2);
        for (std::uint32_t w = 1; w < p; ++w)
          pm_add_term(r.plus, {k.j, w, 1}, vm2 * FieldElt(w, p).pow(2) * c);
      }
    }
    for (auto& [k, c] : s.minus) {
      if (k.io == 0) {
        // - zeta^{j-1} tau_{omega_{-v}} iota(tau_{s1})
        std::uint32_t nu = FieldElt(-(long long)k.u, p).v;
        pm_add_term(r.plus, {k.j - 1, nu, 1}, -c);
      } else {
        // - zeta^{j-1} tau_{omega_{-v}} iota(tau_{s0}) iota(tau_{s1})
        //   = - zeta^{j-1} tau_{omega_{-v}} (zeta - tau_{s1}tau_{s0})
        //   == - zeta^j tau_{omega_{-v}}   (mod H_zeta tau_{s0})
        std::uint32_t nu = FieldElt(-(long long)k.u, p).v;
        pm_add_term(r.plus, {k.j, nu, 0}, -c);
      }
    }
  } else {
    // (0, -sigma- e_{id^{-2}} - sigma+ tau_{omega_{-1}} iota(tau_{s0}) zeta^{-1})
    for (auto& [k, c] : s.minus) {
      if (k.io == 0) {
        FieldElt vm2 = FieldElt(k.u, p).pow(-2);
        for (std::uint32_t w = 1; w < p; ++w)
          pm_add_term(r.minus, {k.j, w, 0}, vm2 * FieldElt(w, p).pow(2) * c);
      } else {
        FieldElt v2 = FieldElt(k.u, p).pow(2);
        for (std::uint32_t w = 1; w < p; ++w)
          pm_add_term(r.minus, {k.j, w, 1}, v2 * FieldElt(w, p).pow(-2) * c);
      }
    }
    for (auto& [k, c] : s.plus) {
      std::uint32_t nu = FieldElt(-(long long)k.u, p).v;
      if (k.io == 0) {
        pm_add_term(r.minus, {k.j - 1, nu, 1}, -c);
      } else {
        pm_add_term(r.minus, {k.j, nu, 0}, -c);
      }
    }
  }
  return r;
}

}  // namespace detail

/** sigma . tau_{s_i} = -sigma.e1 - sigma.iota(tau_{s_i}). */
inline PMElt pm_right_s(const PMElt& s, int i) {
  PMElt acc = FieldElt(-1, s.p) * detail::pm_right_iota_s(s, i);
  for (std::uint32_t u = 1; u < s.p; ++u)
    acc = acc + detail::pm_right_omega(s, u);
  return acc;
}

/** Right action of a general Hecke element. */
inline PMElt pm_right_act(const PMElt& s, const HeckeElt& h) {
  if (s.p != h.p) throw std::invalid_argument("FieldMismatch: pm_right_act");
  PMElt out(s.p);
  for (auto& [w, c] : h.terms) {
    PMElt cur = s;
    if (w.unit != 1) cur = detail::pm_right_omega(cur, w.unit);
    for (std::uint32_t idx = 0; idx < w.len; ++idx)
      cur = pm_right_s(cur, w.letter(idx));
    out = out + c * cur;
  }
  return out;
}

/** Right action by iota(tau_{s_i}), exposed for the structural tests. */
inline PMElt pm_right_act_iota_s(const PMElt& s, int i) {
  return detail::pm_right_iota_s(s, i);
}

/** Left action of a Hecke element (componentwise multiplication). */
inline PMElt pm_left_act(const HeckeElt& h, const PMElt& s) {
  if (s.p != h.p) throw std::invalid_argument("FieldMismatch: pm_left_act");
  std::uint32_t p = s.p;
  PMElt out(p);
  HeckeElt io1 = iota(HeckeElt::basis(s1(p)));
  HeckeElt io0 = iota(HeckeElt::basis(s0(p)));
  for (auto& [k, c] : s.plus) {
    HeckeElt atom = h * HeckeElt::basis(WeylElt::omega(p, k.u));
    if (k.io) atom = atom * io1;
    out.plus = detail::pm_comp_add(
        out.plus, detail::pm_comp_scale(c, detail::pm_reduce(0, true, atom, k.j)));
  }
  for (auto& [k, c] : s.minus) {
    HeckeElt atom = h * HeckeElt::basis(WeylElt::omega(p, k.u));
    if (k.io) atom = atom * io0;
    out.minus = detail::pm_comp_add(
        out.minus, detail::pm_comp_scale(c, detail::pm_reduce(1, true, atom, k.j)));
  }
  return out;
}

/** Two-sided zeta powers act by shifting the grading. */
inline PMElt pm_zeta_shift(const PMElt& s, long long k) {
  PMElt r(s.p);
  r.plus = detail::pm_comp_shift(s.plus, k);
  r.minus = detail::pm_comp_shift(s.minus, k);
  return r;
}

/** Natural right action on the left-quotient pair (lift, multiply,
 * reduce): the braiding map intertwines this with the twisted action. */
inline PMLeftElt pm_left_right_act(const PMLeftElt& x, const HeckeElt& h) {
  if (x.p != h.p)
    throw std::invalid_argument("FieldMismatch: pm_left_right_act");
  std::uint32_t p = x.p;
  PMLeftElt out(p);
  HeckeElt io1 = iota(HeckeElt::basis(s1(p)));
  HeckeElt io0 = iota(HeckeElt::basis(s0(p)));
  for (auto& [k, c] : x.plus) {
    HeckeElt atom = HeckeElt::basis(WeylElt::omega(p, k.u));
    if (k.io) atom = atom * io1;
    out.plus = detail::pm_comp_add(
        out.plus,
        detail::pm_comp_scale(c, detail::pm_reduce(0, false, atom * h, k.j)));
  }
  for (auto& [k, c] : x.minus) {
    HeckeElt atom = HeckeElt::basis(WeylElt::omega(p, k.u));
    if (k.io) atom = atom * io0;
    out.minus = detail::pm_comp_add(
        out.minus,
        detail::pm_comp_scale(c, detail::pm_reduce(1, false, atom * h, k.j)));
  }
  return out;
}

/** The diagram automorphism swaps the two components and conjugates the
 * entries (tau_{s0} and tau_{s1} trade places). */
inline PMElt pm_gamma(const PMElt& s) {
  std::uint32_t p = s.p;
  PMElt r(p);
  auto flip = [&](const PMComp& comp, bool to_plus) {
    for (auto& [k, c] : comp) {
      // conj sends tau_{omega_u} to tau_{omega_{u^{-1}}} and iota(tau_{s_e})
      // to iota(tau_{s_{1-e}}); atoms map to atoms with inverted torus part.
      std::uint32_t nu = FieldElt(k.u, p).inv().v;
      detail::pm_add_term(to_plus ? r.plus : r.minus, {k.j, nu, k.io}, c);
    }
  };
  flip(s.plus, false);
  flip(s.minus, true);
  return r;
}

/**
 * The braiding isomorphism from the left-quotient pair onto the twisted
 * bimodule, determined on atoms by
 *   (z^j t_u, 0)        -> u^{-2} (z^{-j} t_u, 0)
 *   (z^j t_u i(s1), 0)  -> -u^{-2} (0, z^{-j-1} t_{-u} i(s0))
 *   (0, z^j t_u)        -> u^{2} (0, z^{-j} t_u)
 *   (0, z^j t_u i(s0))  -> -u^{2} (z^{-j-1} t_{-u} i(s1), 0)
 */
inline PMElt pm_beta(const PMLeftElt& x) {
  std::uint32_t p = x.p;
  PMElt r(p);
  for (auto& [k, c] : x.plus) {
    if (k.io == 0) {
      detail::pm_add_term(r.plus, {-k.j, k.u, 0},
                          FieldElt(k.u, p).pow(-2) * c);
    } else {
      std::uint32_t nu = FieldElt(-(long long)k.u, p).v;
      detail::pm_add_term(r.minus, {-k.j - 1, nu, 1},
                          -FieldElt(k.u, p).pow(-2) * c);
    }
  }
  for (auto& [k, c] : x.minus) {
    if (k.io == 0) {
      detail::pm_add_term(r.minus, {-k.j, k.u, 0}, FieldElt(k.u, p).pow(2) * c);
    } else {
      std::uint32_t nu = FieldElt(-(long long)k.u, p).v;
      detail::pm_add_term(r.plus, {-k.j - 1, nu, 1},
                          -FieldElt(k.u, p).pow(2) * c);
    }
  }
  return r;
}

/**
 * The normalizing right multiplications delta_i: on the side-i component,
 * h -> h (1 - e_{id^{eps_i}} - e_{id^{eps_i}} zeta^{-1}) where eps_0 = +1,
 * eps_1 = -1.  Atom-level: tau_{omega_v} e_{id^m} = v^m e_{id^m} and the
 * iota atom picks up the inverse character.
 */
inline PMComp pm_delta_comp(std::uint32_t p, int i, const PMComp& comp) {
  long long m = (i == 0) ? 1 : -1;
  PMComp out = comp;  // the identity part
  for (auto& [k, c] : comp) {
    // atom * e_{id^m}: character value on the torus part, with the iota
    // atom seeing the inverted character; expand e back into atoms.
    FieldElt chi = k.io ? FieldElt(k.u, p).pow(-m) : FieldElt(k.u, p).pow(m);
    long long me = k.io ? -m : m;
    for (std::uint32_t w = 1; w < p; ++w) {
      // -(atom * e) and -(atom * e * zeta^{-1}); the e-expansion sign and
      // the subtraction cancel, leaving +chi w^{-me}.
      FieldElt minus_e = chi * FieldElt(w, p).pow(-me) * c;
      detail::pm_add_term(out, {k.j, w, k.io}, minus_e);
      detail::pm_add_term(out, {k.j - 1, w, k.io}, minus_e);
    }
  }
  return out;
}

/** delta applied to one side of a PMElt. */
inline PMElt pm_delta(int i, const PMElt& s) {
  PMElt r = s;
  if (i == 0)
    r.plus = pm_delta_comp(s.p, 0, s.plus);
  else
    r.minus = pm_delta_comp(s.p, 1, s.minus);
  return r;
}

/** The compatible anti-involution: braid after dualizing both normalized
 * components (atom-level dual: plain (j,u) -> (j, u^{-1}), iota atom
 * (j,u) -> (j,-u), landing in the left quotients). */
inline PMElt pm_J(const PMElt& s) {
  std::uint32_t p = s.p;
  PMLeftElt mid(p);
  auto dualize = [&](const PMComp& comp) {
    PMComp out;
    for (auto& [k, c] : comp) {
      if (k.io == 0)
        detail::pm_add_term(out, {k.j, FieldElt(k.u, p).inv().v, 0}, c);
      else
        detail::pm_add_term(out, {k.j, FieldElt(-(long long)k.u, p).v, 1}, c);
    }
    return out;
  };
  mid.plus = dualize(pm_delta_comp(p, 0, s.plus));
  mid.minus = dualize(pm_delta_comp(p, 1, s.minus));
  return pm_beta(mid);
}

/**
 * Generic two-by-two block construction over a ring R: from generator
 * images kappa(tau), a central element z and a character exponent m it
 * returns the blocks
 *
 *   M_0 = [ -k(e_{id^m})  0 ]    M_1 = [ 0   z k(tau_{s0})    ]
 *         [ z k(tau_{s1}) 0 ]          [ 0  -k(e_{id^{-m}})   ]
 *
 *   M_{omega_u} = diag(u^{-m} k(tau_{omega_u}), u^m k(tau_{omega_u})).
 *
 * R must provide +, -, *, ==, and a zero() factory via the traits below.
 */
template <class R>
struct Kappa2Blocks {
  std::array<std::array<R, 2>, 2> m0, m1;
  std::vector<std::array<std::array<R, 2>, 2>> momega;  // index u-1
};

template <class R>
Kappa2Blocks<R> build_kappa2(std::uint32_t p, const std::vector<R>& omega_images,
                             const R& s0_image, const R& s1_image, const R& z,
                             long long m, const R& zero) {
  if (omega_images.size() != p - 1)
    throw std::invalid_argument("DimensionMismatch: need p-1 torus images");
  auto central = [&](const R& g) { return z * g == g * z; };
  for (auto& g : omega_images)
    if (!central(g))
      throw std::domain_error("RelationViolation: z is not central");
  if (!central(s0_image) || !central(s1_image))
    throw std::domain_error("RelationViolation: z is not central");

  auto e_img = [&](long long mm) {
    R acc = zero;
    for (std::uint32_t u = 1; u < p; ++u) {
      FieldElt c = -FieldElt(u, p).pow(-mm);
      // scalar multiple via repeated addition is wasteful; rings in use
      // support FieldElt scaling through c * r
      R term = c * omega_images[u - 1];
      acc = acc + term;
    }
    return acc;
  };

  Kappa2Blocks<R> out;
  R e_m = e_img(m), e_minv = e_img(-m);
  out.m0 = {{{FieldElt(-1, p) * e_m, zero}, {z * s1_image, zero}}};
  out.m1 = {{{zero, z * s0_image}, {zero, FieldElt(-1, p) * e_minv}}};
  for (std::uint32_t u = 1; u < p; ++u) {
    FieldElt um = FieldElt(u, p).pow(-m), up = FieldElt(u, p).pow(m);
    out.momega.push_back(
        {{{um * omega_images[u - 1], zero}, {zero, up * omega_images[u - 1]}}});
  }
  return out;
}

}  // namespace iwext
