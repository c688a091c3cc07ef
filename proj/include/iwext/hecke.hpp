#pragma once

#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "iwext/fp.hpp"
#include "iwext/weyl.hpp"

namespace iwext {

/**
 * The mod-p Hecke algebra H on the basis (tau_w) indexed by the extended
 * affine Weyl group, with defining relations
 *
 *   tau_v tau_w   = tau_{vw}        when lengths add,
 *   tau_{s}^2     = -e1 tau_{s}     (quadratic collapse),
 *
 * where e1 = -sum_omega tau_omega.  Products are computed by peeling the
 * reduced letters of the left factor; each letter either extends the word
 * or collapses quadratically, so the rewriting terminates.
 */
struct HeckeElt {
  std::uint32_t p{0};
  std::map<WeylElt, FieldElt> terms;

  HeckeElt() = default;
  explicit HeckeElt(std::uint32_t prime) : p(prime) {
    FieldElt::check_prime(prime);
  }

  static HeckeElt zero(std::uint32_t prime) { return HeckeElt(prime); }

  static HeckeElt basis(const WeylElt& w) {
    HeckeElt h(w.p);
    h.terms.emplace(w, FieldElt::one(w.p));
    return h;
  }

  static HeckeElt one(std::uint32_t prime) {
    return basis(WeylElt::identity(prime));
  }

  bool is_zero() const { return terms.empty(); }

  FieldElt coeff(const WeylElt& w) const {
    auto it = terms.find(w);
    return it == terms.end() ? FieldElt::zero(p) : it->second;
  }

  void add_term(const WeylElt& w, const FieldElt& c) {
    if (c.is_zero()) return;
    auto [it, inserted] = terms.emplace(w, c);
    if (!inserted) {
      it->second = it->second + c;
      if (it->second.is_zero()) terms.erase(it);
    }
  }

  std::uint32_t max_len() const {
    std::uint32_t m = 0;
    for (auto& [w, c] : terms) m = std::max(m, w.len);
    return m;
  }

  void require_same(const HeckeElt& o) const {
    if (p != o.p) throw std::invalid_argument("FieldMismatch: Hecke operands");
  }

  friend bool operator==(const HeckeElt& a, const HeckeElt& b) {
    return a.p == b.p && a.terms == b.terms;
  }
  friend bool operator!=(const HeckeElt& a, const HeckeElt& b) {
    return !(a == b);
  }

  friend HeckeElt operator+(const HeckeElt& a, const HeckeElt& b) {
    a.require_same(b);
    HeckeElt r = a;
    for (auto& [w, c] : b.terms) r.add_term(w, c);
    return r;
  }

  friend HeckeElt operator-(const HeckeElt& a, const HeckeElt& b) {
    a.require_same(b);
    HeckeElt r = a;
    for (auto& [w, c] : b.terms) r.add_term(w, -c);
    return r;
  }

  HeckeElt operator-() const {
    HeckeElt r(p);
    for (auto& [w, c] : terms) r.terms.emplace(w, -c);
    return r;
  }

  friend HeckeElt operator*(const FieldElt& c, const HeckeElt& a) {
    if (c.p != a.p) throw std::invalid_argument("FieldMismatch: scalar*Hecke");
    HeckeElt r(a.p);
    if (c.is_zero()) return r;
    for (auto& [w, x] : a.terms) r.add_term(w, c * x);
    return r;
  }

  friend HeckeElt operator*(const HeckeElt& a, const HeckeElt& b);
};

/** e_{id^m} = -sum_u u^{-m} tau_{omega_u}; m = 0 gives e1. */
inline HeckeElt e_idem(std::uint32_t p, long long m) {
  HeckeElt r(p);
  for (std::uint32_t u = 1; u < p; ++u)
    r.add_term(WeylElt::omega(p, u), -FieldElt(u, p).pow(-m));
  return r;
}

inline HeckeElt e1(std::uint32_t p) { return e_idem(p, 0); }

namespace detail {

/** Left multiplication by tau_{s_eps} on a basis-expanded element. */
inline HeckeElt gen_left_s(int eps, const HeckeElt& h) {
  HeckeElt r(h.p);
  WeylElt s = WeylElt::s(h.p, eps);
  for (auto& [w, c] : h.terms) {
    if (w.in_class(eps)) {
      r.add_term(s * w, c);
    } else {
      // tau_s tau_w = -e1 tau_w = sum_v tau_{omega_v w}
      for (std::uint32_t v = 1; v < h.p; ++v)
        r.add_term(WeylElt::omega(h.p, v) * w, c);
    }
  }
  return r;
}

inline HeckeElt gen_right_s(const HeckeElt& h, int eps) {
  HeckeElt r(h.p);
  WeylElt s = WeylElt::s(h.p, eps);
  for (auto& [w, c] : h.terms) {
    bool ascends = w.len == 0 || w.last_letter() != eps;
    if (ascends) {
      r.add_term(w * s, c);
    } else {
      for (std::uint32_t v = 1; v < h.p; ++v)
        r.add_term(w * WeylElt::omega(h.p, v), c);
    }
  }
  return r;
}

inline HeckeElt gen_left_omega(std::uint32_t u, const HeckeElt& h) {
  HeckeElt r(h.p);
  WeylElt o = WeylElt::omega(h.p, u);
  for (auto& [w, c] : h.terms) r.add_term(o * w, c);
  return r;
}

inline HeckeElt gen_right_omega(const HeckeElt& h, std::uint32_t u) {
  HeckeElt r(h.p);
  WeylElt o = WeylElt::omega(h.p, u);
  for (auto& [w, c] : h.terms) r.add_term(w * o, c);
  return r;
}

/** tau_w * h with w a basis label: apply letters right-to-left. */
inline HeckeElt basis_left_mul(const WeylElt& w, const HeckeElt& h) {
  HeckeElt cur = h;
  for (std::uint32_t i = w.len; i-- > 0;)
    cur = gen_left_s(w.letter(i), cur);
  if (w.unit != 1) cur = gen_left_omega(w.unit, cur);
  return cur;
}

}  // namespace detail

inline HeckeElt operator*(const HeckeElt& a, const HeckeElt& b) {
  a.require_same(b);
  HeckeElt r(a.p);
  for (auto& [w, c] : a.terms) {
    HeckeElt part = detail::basis_left_mul(w, b);
    for (auto& [v, x] : part.terms) r.add_term(v, c * x);
  }
  return r;
}

inline HeckeElt mul(const HeckeElt& a, const HeckeElt& b) { return a * b; }

/** The central element zeta = (tau_{s0}+e1)(tau_{s1}+e1) + tau_{s1}tau_{s0}. */
inline HeckeElt zeta(std::uint32_t p) {
  HeckeElt ts0 = HeckeElt::basis(s0(p)), ts1 = HeckeElt::basis(s1(p));
  HeckeElt e = e1(p);
  return (ts0 + e) * (ts1 + e) + ts1 * ts0;
}

/**
 * The family member zeta_alpha =
 * tau_{omega_{alpha^{-1}}}(tau_{s0}+e1)(tau_{s1}+e1) +
 * tau_{omega_alpha} tau_{s1} tau_{s0}; zeta_1 = zeta.
 */
inline HeckeElt zeta_alpha(const FieldElt& alpha) {
  if (alpha.is_zero())
    throw std::domain_error("ZeroUnit: zeta_alpha needs alpha != 0");
  std::uint32_t p = alpha.p;
  HeckeElt ts0 = HeckeElt::basis(s0(p)), ts1 = HeckeElt::basis(s1(p));
  HeckeElt e = e1(p);
  HeckeElt oa = HeckeElt::basis(WeylElt::omega(p, alpha.v));
  HeckeElt oai = HeckeElt::basis(WeylElt::omega(p, alpha.inv().v));
  return oai * ((ts0 + e) * (ts1 + e)) + oa * (ts1 * ts0);
}

/** Generators of the center: all zeta_alpha, alpha in F_p^x. */
inline std::vector<HeckeElt> center_basis(std::uint32_t p) {
  std::vector<HeckeElt> out;
  for (std::uint32_t a = 1; a < p; ++a)
    out.push_back(zeta_alpha(FieldElt(a, p)));
  return out;
}

/** The algebra involution: fixes tau_omega, sends tau_s to -e1 - tau_s. */
inline HeckeElt iota(const HeckeElt& h) {
  HeckeElt r(h.p);
  HeckeElt e = e1(h.p);
  for (auto& [w, c] : h.terms) {
    HeckeElt acc = HeckeElt::basis(WeylElt::omega(h.p, w.unit));
    for (std::uint32_t i = 0; i < w.len; ++i) {
      HeckeElt gen = -e - HeckeElt::basis(WeylElt::s(h.p, w.letter(i)));
      acc = acc * gen;
    }
    for (auto& [v, x] : acc.terms) r.add_term(v, c * x);
  }
  return r;
}

/** The anti-involution tau_w -> tau_{w^{-1}}. */
inline HeckeElt antiJ(const HeckeElt& h) {
  HeckeElt r(h.p);
  for (auto& [w, c] : h.terms) r.add_term(w.inverse(), c);
  return r;
}

/** The letter-swapping algebra automorphism tau_w -> tau_{conj(w)}. */
inline HeckeElt conj_varpi(const HeckeElt& h) {
  HeckeElt r(h.p);
  for (auto& [w, c] : h.terms) r.add_term(w.conj_varpi(), c);
  return r;
}

/** Character tau_s -> 0, tau_omega -> 1. */
inline FieldElt char_triv(const HeckeElt& h) {
  FieldElt acc = FieldElt::zero(h.p);
  for (auto& [w, c] : h.terms)
    if (w.len == 0) acc = acc + c;
  return acc;
}

/** Character tau_s -> -1, tau_omega -> 1. */
inline FieldElt char_sign(const HeckeElt& h) {
  FieldElt acc = FieldElt::zero(h.p);
  for (auto& [w, c] : h.terms) {
    FieldElt sgn = (w.len & 1) ? FieldElt(-1, h.p) : FieldElt::one(h.p);
    acc = acc + sgn * c;
  }
  return acc;
}

/** Labels of the rank-4(p-1) basis over k[zeta]: omega, omega s0,
 * omega s1, omega s0s1, in canonical order. */
inline std::vector<WeylElt> kzeta_labels(std::uint32_t p) {
  std::vector<WeylElt> out;
  for (std::uint32_t u = 1; u < p; ++u) out.push_back(WeylElt::omega(p, u));
  for (int f = 0; f <= 1; ++f)
    for (std::uint32_t u = 1; u < p; ++u) out.push_back(WeylElt(p, u, 1, f));
  for (std::uint32_t u = 1; u < p; ++u) out.push_back(WeylElt(p, u, 2, 0));
  return out;
}

/**
 * Coordinates of h in the free k[zeta]-basis {tau_x : x a label}.  Words of
 * length >= 3 lose their two leading letters against one factor of zeta
 * (tau_{omega_u l1 l2 R} = zeta tau_{omega_u R}); length-2 words of the
 * wrong orientation are converted through
 * tau_{s1}tau_{s0} = zeta - tau_{s0}tau_{s1} - tau_{s0}e1 - e1 tau_{s1} - e1.
 */
inline std::map<WeylElt, FpPoly> kzeta_coords(const HeckeElt& h) {
  std::uint32_t p = h.p;
  std::map<WeylElt, FpPoly> out;
  std::vector<std::pair<WeylElt, FpPoly>> work;
  for (auto& [w, c] : h.terms) work.emplace_back(w, FpPoly::constant(c));
  auto emit = [&](const WeylElt& w, const FpPoly& q) {
    if (q.is_zero()) return;
    auto [it, inserted] = out.emplace(w, q);
    if (!inserted) {
      it->second = it->second + q;
      if (it->second.is_zero()) out.erase(it);
    }
  };
  while (!work.empty()) {
    auto [w, q] = work.back();
    work.pop_back();
    if (q.is_zero()) continue;
    if (w.len >= 3) {
      // strip the two leading letters; same unit, word starts over at l1
      work.emplace_back(WeylElt(p, w.unit, w.len - 2, w.letter(0)),
                        q * FpPoly::x(p));
      continue;
    }
    if (w.len == 2 && w.first == 1) {
      WeylElt om = WeylElt::omega(p, w.unit);
      HeckeElt to = HeckeElt::basis(om);
      HeckeElt e = e1(p);
      HeckeElt ts0 = HeckeElt::basis(s0(p)), ts1 = HeckeElt::basis(s1(p));
      // tau_om * (zeta - tau_{s0}tau_{s1} - tau_{s0}e1 - e1 tau_{s1} - e1)
      work.emplace_back(om, q * FpPoly::x(p));
      HeckeElt rest = to * (ts0 * ts1 + ts0 * e + e * ts1 + e);
      for (auto& [v, c] : rest.terms)
        work.emplace_back(v, q.scale(-c));
      continue;
    }
    emit(w, q);
  }
  return out;
}

/** zeta^k as an element of H. */
inline HeckeElt zeta_pow(std::uint32_t p, std::size_t k) {
  HeckeElt acc = HeckeElt::one(p);
  HeckeElt z = zeta(p);
  for (std::size_t i = 0; i < k; ++i) acc = acc * z;
  return acc;
}

/** P(zeta) * h. */
inline HeckeElt apply_zeta_poly(const FpPoly& P, const HeckeElt& h) {
  HeckeElt acc(h.p);
  HeckeElt zp = HeckeElt::one(h.p);
  HeckeElt z = zeta(h.p);
  for (std::size_t i = 0; i < P.c.size(); ++i) {
    if (P.c[i]) acc = acc + FieldElt::raw(P.c[i], h.p) * zp;
    if (i + 1 < P.c.size()) zp = zp * z;
  }
  return acc * h;
}

/** Reassemble an element from its k[zeta]-coordinates. */
inline HeckeElt kzeta_expand(std::uint32_t p,
                             const std::map<WeylElt, FpPoly>& coords) {
  HeckeElt acc(p);
  for (auto& [x, q] : coords)
    acc = acc + apply_zeta_poly(q, HeckeElt::basis(x));
  return acc;
}

/** Membership in zeta H: every k[zeta]-coordinate divisible by zeta. */
inline bool in_zetaH(const HeckeElt& h) {
  for (auto& [x, q] : kzeta_coords(h))
    if (!q.divisible_by_x()) return false;
  return true;
}

/** Exact division by zeta; domain error when h is not in zeta H. */
inline HeckeElt div_zeta(const HeckeElt& h) {
  std::map<WeylElt, FpPoly> out;
  for (auto& [x, q] : kzeta_coords(h)) {
    if (!q.divisible_by_x())
      throw std::domain_error("NotDivisible: element is not in zeta*H");
    out.emplace(x, q.div_x());
  }
  return kzeta_expand(h.p, out);
}

/** The dual-basis functional of one k[zeta]-basis label, as a polynomial. */
inline FpPoly lambda_coeff(const WeylElt& label, const HeckeElt& h) {
  auto coords = kzeta_coords(h);
  auto it = coords.find(label);
  return it == coords.end() ? FpPoly::zero(h.p) : it->second;
}

/** Frobenius-form value: the label-(s0 s1) coordinate of x*y. */
inline FpPoly frobenius_pair(const HeckeElt& x, const HeckeElt& y) {
  x.require_same(y);
  return lambda_coeff(WeylElt(x.p, 1, 2, 0), x * y);
}

/** The functional tau' -> frobenius_pair(tau, tau'). */
struct FrobFunctional {
  HeckeElt tau;
  FpPoly operator()(const HeckeElt& other) const {
    return frobenius_pair(tau, other);
  }
};

inline FrobFunctional frob_iso(const HeckeElt& tau) { return {tau}; }

/**
 * The finite dual of H on the basis (tau_w^dual), with the twisted
 * H-bimodule structure: torus elements shift the index, and a letter acts
 * by tau_s . tau_w^dual = tau_{sw}^dual - e1 . tau_w^dual when s shortens
 * w, and by 0 when it lengthens w (mirrored on the right).
 */
struct HDualElt {
  std::uint32_t p{0};
  std::map<WeylElt, FieldElt> terms;

  HDualElt() = default;
  explicit HDualElt(std::uint32_t prime) : p(prime) {
    FieldElt::check_prime(prime);
  }

  static HDualElt zero(std::uint32_t prime) { return HDualElt(prime); }

  static HDualElt basis(const WeylElt& w) {
    HDualElt d(w.p);
    d.terms.emplace(w, FieldElt::one(w.p));
    return d;
  }

  bool is_zero() const { return terms.empty(); }

  FieldElt coeff(const WeylElt& w) const {
    auto it = terms.find(w);
    return it == terms.end() ? FieldElt::zero(p) : it->second;
  }

  void add_term(const WeylElt& w, const FieldElt& c) {
    if (c.is_zero()) return;
    auto [it, inserted] = terms.emplace(w, c);
    if (!inserted) {
      it->second = it->second + c;
      if (it->second.is_zero()) terms.erase(it);
    }
  }

  void require_same(const HDualElt& o) const {
    if (p != o.p) throw std::invalid_argument("FieldMismatch: dual operands");
  }

  friend bool operator==(const HDualElt& a, const HDualElt& b) {
    return a.p == b.p && a.terms == b.terms;
  }
  friend bool operator!=(const HDualElt& a, const HDualElt& b) {
    return !(a == b);
  }

  friend HDualElt operator+(const HDualElt& a, const HDualElt& b) {
    a.require_same(b);
    HDualElt r = a;
    for (auto& [w, c] : b.terms) r.add_term(w, c);
    return r;
  }

  friend HDualElt operator-(const HDualElt& a, const HDualElt& b) {
    a.require_same(b);
    HDualElt r = a;
    for (auto& [w, c] : b.terms) r.add_term(w, -c);
    return r;
  }

  HDualElt operator-() const {
    HDualElt r(p);
    for (auto& [w, c] : terms) r.terms.emplace(w, -c);
    return r;
  }

  friend HDualElt operator*(const FieldElt& c, const HDualElt& a) {
    if (c.p != a.p) throw std::invalid_argument("FieldMismatch: scalar*dual");
    HDualElt r(a.p);
    if (c.is_zero()) return r;
    for (auto& [w, x] : a.terms) r.add_term(w, c * x);
    return r;
  }
};

enum class Side { Left, Right };

namespace detail {

inline HDualElt dual_left_omega(std::uint32_t u, const HDualElt& d) {
  HDualElt r(d.p);
  WeylElt o = WeylElt::omega(d.p, u);
  for (auto& [w, c] : d.terms) r.add_term(o * w, c);
  return r;
}

inline HDualElt dual_right_omega(const HDualElt& d, std::uint32_t u) {
  HDualElt r(d.p);
  WeylElt o = WeylElt::omega(d.p, u);
  for (auto& [w, c] : d.terms) r.add_term(w * o, c);
  return r;
}

inline HDualElt dual_left_s(int eps, const HDualElt& d) {
  HDualElt r(d.p);
  WeylElt s = WeylElt::s(d.p, eps);
  for (auto& [w, c] : d.terms) {
    if (w.in_class(eps)) continue;  // lengthening letter kills the dual
    r.add_term(s * w, c);
    // -e1 . tau_w^dual = sum_v tau_{omega_v w}^dual
    for (std::uint32_t v = 1; v < d.p; ++v)
      r.add_term(WeylElt::omega(d.p, v) * w, c);
  }
  return r;
}

inline HDualElt dual_right_s(const HDualElt& d, int eps) {
  HDualElt r(d.p);
  WeylElt s = WeylElt::s(d.p, eps);
  for (auto& [w, c] : d.terms) {
    bool shortens = w.len > 0 && w.last_letter() == eps;
    if (!shortens) continue;
    r.add_term(w * s, c);
    for (std::uint32_t v = 1; v < d.p; ++v)
      r.add_term(w * WeylElt::omega(d.p, v), c);
  }
  return r;
}

}  // namespace detail

/** Bimodule action of h on the finite dual. */
inline HDualElt dual_act(const HeckeElt& h, const HDualElt& d, Side side) {
  if (h.p != d.p) throw std::invalid_argument("FieldMismatch: dual_act");
  HDualElt out(d.p);
  for (auto& [w, c] : h.terms) {
    HDualElt cur = d;
    if (side == Side::Left) {
      for (std::uint32_t i = w.len; i-- > 0;)
        cur = detail::dual_left_s(w.letter(i), cur);
      if (w.unit != 1) cur = detail::dual_left_omega(w.unit, cur);
    } else {
      if (w.unit != 1) cur = detail::dual_right_omega(cur, w.unit);
      for (std::uint32_t i = 0; i < w.len; ++i)
        cur = detail::dual_right_s(cur, w.letter(i));
    }
    for (auto& [v, x] : cur.terms) out.add_term(v, c * x);
  }
  return out;
}

/**
 * psi_w = tau_{s_eps} . tau_w^dual for the unique shortening letter eps,
 * i.e. tau_{s_eps w}^dual - e1 . tau_w^dual.
 */
inline HDualElt psi(const WeylElt& w) {
  if (w.len == 0)
    throw std::domain_error("LengthZero: psi needs a length >= 1 index");
  return detail::dual_left_s(w.descent(), HDualElt::basis(w));
}

}  // namespace iwext
