#pragma once

/**
 * The graded centralizer algebra of the center inside the Ext algebra,
 * realized on exact charts: degree zero is the algebra itself, degree one
 * the positive-length ideal, degree two its finite dual, degree three the
 * finite dual of the whole algebra.  The product is total and exact on the
 * charts; the embeddings into the graded components (closed tables in
 * degrees one and three, a constrained window solve in degree two) are the
 * verification surface, together with the windowed kernel and
 * decomposition solvers for the structure theorems.
 */

#include <array>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "ext.hpp"
#include "loc.hpp"
#include "window.hpp"

namespace iwext {

/** Coefficients on positive-length dual labels: the degree-two chart. */
using Cent2Map = std::map<WeylElt, FieldElt>;

namespace detail {

inline void cent2_add(Cent2Map& m, const WeylElt& w, const FieldElt& c) {
  if (c.is_zero()) return;
  auto [it, inserted] = m.emplace(w, c);
  if (!inserted) {
    it->second = it->second + c;
    if (it->second.is_zero()) m.erase(it);
  }
}

}  // namespace detail

/** Zero-extend degree-two coefficients into the ambient finite dual. */
inline HDualElt cent2_lift(std::uint32_t p, const Cent2Map& x) {
  HDualElt d(p);
  for (auto& [w, c] : x) d.add_term(w, c);
  return d;
}

/** Project a finite dual onto the positive-length labels. */
inline Cent2Map cent2_truncate(const HDualElt& d) {
  Cent2Map r;
  for (auto& [w, c] : d.terms)
    if (w.len >= 1) r.emplace(w, c);
  return r;
}

/**
 * The two-sided action on the degree-two chart: the positive-length dual
 * is a quotient bimodule of the ambient dual (length-zero forms are a
 * sub-bimodule), so transport through any lift and truncate.
 */
inline Cent2Map cent2_act(const HeckeElt& h, const Cent2Map& x, Side side) {
  return cent2_truncate(act(h, cent2_lift(h.p, x), side));
}

/**
 * A homogeneous-by-degree element of the centralizer algebra.  Degree one
 * and two supports must avoid length zero; the factories enforce it.
 */
struct CentElt {
  std::uint32_t p{0};
  HeckeElt deg0;
  HeckeElt deg1;
  Cent2Map deg2;
  HDualElt deg3;

  CentElt() = default;
  explicit CentElt(std::uint32_t prime)
      : p(prime), deg0(prime), deg1(prime), deg3(prime) {
    FieldElt::check_prime(prime);
  }

  static CentElt zero(std::uint32_t prime) { return CentElt(prime); }

  static CentElt from0(const HeckeElt& h) {
    CentElt r(h.p);
    r.deg0 = h;
    return r;
  }
  static CentElt from1(const HeckeElt& h) {
    for (auto& [w, c] : h.terms)
      if (w.len == 0)
        throw std::invalid_argument(
            "LengthZero: degree-one chart requires positive length");
    CentElt r(h.p);
    r.deg1 = h;
    return r;
  }
  static CentElt from2(const WeylElt& w, const FieldElt& c) {
    if (w.len == 0)
      throw std::invalid_argument(
          "LengthZero: degree-two chart requires positive length");
    CentElt r(w.p);
    detail::cent2_add(r.deg2, w, c);
    return r;
  }
  static CentElt from2(std::uint32_t prime, const Cent2Map& x) {
    CentElt r(prime);
    for (auto& [w, c] : x) {
      if (w.len == 0)
        throw std::invalid_argument(
            "LengthZero: degree-two chart requires positive length");
      detail::cent2_add(r.deg2, w, c);
    }
    return r;
  }
  static CentElt from3(const HDualElt& d) {
    CentElt r(d.p);
    r.deg3 = d;
    return r;
  }

  bool is_zero() const {
    return deg0.is_zero() && deg1.is_zero() && deg2.empty() && deg3.is_zero();
  }

  void require_same(const CentElt& o) const {
    if (p != o.p)
      throw std::invalid_argument("FieldMismatch: centralizer operands");
  }

  friend bool operator==(const CentElt& a, const CentElt& b) {
    return a.p == b.p && a.deg0 == b.deg0 && a.deg1 == b.deg1 &&
           a.deg2 == b.deg2 && a.deg3 == b.deg3;
  }
  friend bool operator!=(const CentElt& a, const CentElt& b) {
    return !(a == b);
  }

  friend CentElt operator+(const CentElt& a, const CentElt& b) {
    a.require_same(b);
    CentElt r = a;
    r.deg0 = r.deg0 + b.deg0;
    r.deg1 = r.deg1 + b.deg1;
    for (auto& [w, c] : b.deg2) detail::cent2_add(r.deg2, w, c);
    r.deg3 = r.deg3 + b.deg3;
    return r;
  }
  friend CentElt operator-(const CentElt& a, const CentElt& b) {
    return a + (-FieldElt::one(a.p)) * b;
  }
  friend CentElt operator*(const FieldElt& c, const CentElt& a) {
    if (c.p != a.p)
      throw std::invalid_argument("FieldMismatch: scalar*centralizer");
    CentElt r(a.p);
    r.deg0 = c * a.deg0;
    r.deg1 = c * a.deg1;
    for (auto& [w, x] : a.deg2) detail::cent2_add(r.deg2, w, c * x);
    r.deg3 = c * a.deg3;
    return r;
  }
};

/**
 * The graded product.  Degree-zero factors act through the bimodule
 * structures of the charts; two degree-one factors pair through the
 * length-one dual coefficients; a degree-one factor acts on a degree-two
 * factor through the ambient dual.  All products of total degree above
 * three vanish.
 */
inline CentElt cent_mul(const CentElt& a, const CentElt& b) {
  a.require_same(b);
  std::uint32_t p = a.p;
  CentElt r(p);
  r.deg0 = a.deg0 * b.deg0;
  r.deg1 = a.deg0 * b.deg1 + a.deg1 * b.deg0;

  Cent2Map m2;
  for (auto& [w, c] : cent2_act(a.deg0, b.deg2, Side::Left))
    detail::cent2_add(m2, w, c);
  for (auto& [w, c] : cent2_act(b.deg0, a.deg2, Side::Right))
    detail::cent2_add(m2, w, c);
  if (!a.deg1.is_zero()) {
    // Only the length-one coefficients of the right factor survive the
    // filtration quotient; they pair into minus the dual transport.
    HDualElt len1(p);
    for (auto& [w, c] : b.deg1.terms)
      if (w.len == 1) len1.add_term(w, c);
    if (!len1.is_zero())
      for (auto& [w, c] : act(a.deg1, len1, Side::Left).terms)
        if (w.len >= 1) detail::cent2_add(m2, w, -c);
  }
  r.deg2 = m2;

  E3Elt d3 = act(a.deg0, b.deg3, Side::Left) + act(b.deg0, a.deg3, Side::Right);
  if (!a.deg1.is_zero() && !b.deg2.empty())
    d3 = d3 - act(a.deg1, cent2_lift(p, b.deg2), Side::Left);
  if (!b.deg1.is_zero() && !a.deg2.empty())
    d3 = d3 - act(b.deg1, cent2_lift(p, a.deg2), Side::Right);
  r.deg3 = d3;
  return r;
}

/** Names of the distinguished elements, with their component degrees. */
inline int named_degree(const std::string& id) {
  if (id == "x0" || id == "x1" || id == "xplus" || id == "xminus" ||
      id == "vx" || id == "vy" || id == "vxs1" || id == "vys0")
    return 1;
  if (id == "aplus" || id == "aminus") return 2;
  throw std::invalid_argument("UnknownName: " + id);
}

inline E1Elt named_e1(const std::string& id, const NormCtx& ctx) {
  if (id == "x0") return x0_elt(ctx);
  if (id == "x1") return x1_elt(ctx);
  if (id == "xplus") return xplus_elt(ctx);
  if (id == "xminus") return xminus_elt(ctx);
  if (id == "vx") return vx_elt(ctx);
  if (id == "vy") return vy_elt(ctx);
  if (id == "vxs1") return vxs1_elt(ctx);
  if (id == "vys0") return vys0_elt(ctx);
  throw std::invalid_argument("UnknownName: " + id + " is not degree one");
}

inline E2Elt named_e2(const std::string& id, const NormCtx& ctx) {
  if (id == "aplus") return aplus_elt(ctx);
  if (id == "aminus") return aminus_elt(ctx);
  throw std::invalid_argument("UnknownName: " + id + " is not degree two");
}

/**
 * Degree-one embedding: the closed table for the images of the basis of
 * the positive-length ideal.  The sign follows the residue class of the
 * label; length-one labels carry a torus-idempotent correction on the
 * trailing torus part.
 */
inline E1Elt cent_embed1(const HeckeElt& h, const NormCtx& ctx) {
  std::uint32_t p = h.p;
  E1Elt out(p);
  FieldElt one = FieldElt::one(p);
  for (auto& [w, c] : h.terms) {
    if (w.len == 0)
      throw std::invalid_argument(
          "LengthZero: degree-one chart requires positive length");
    FieldElt sign = w.in_class(0) ? one : -one;
    out.add_term(w, FieldElt::zero(p), sign * c, FieldElt::zero(p));
    if (w.len == 1) {
      // stored form omega_u s_eps = s_eps omega_{u inverse}
      WeylElt tail = WeylElt::omega(p, FieldElt(w.unit, p).inv().v);
      E1Elt corr = (w.first == 1)
                       ? act(e_idem(p, 1), E1Elt::term(tail, 0, 0, 1),
                             Side::Left)
                       : act(e_idem(p, -1), E1Elt::term(tail, 1, 0, 0),
                             Side::Left);
      out.add_scaled(corr, -c);
    }
  }
  return rescale(ctx, out);
}

/**
 * Window basis of the kernel of the two-sided endomorphism in degree two:
 * the outer-slot lines at every positive-length label together with the
 * torus translates of the two distinguished degree-two elements.
 */
inline std::vector<E2Elt> kerf2_window_basis(std::uint32_t p, std::uint32_t N,
                                             const NormCtx& ctx) {
  std::vector<E2Elt> out;
  for (auto& w : elements_up_to_length(p, N)) {
    if (w.len == 0) continue;
    out.push_back(E2Elt::term(w, 1, 0, 0));
    out.push_back(E2Elt::term(w, 0, 0, 1));
  }
  E2Elt ap = aplus_elt(ctx), am = aminus_elt(ctx);
  for (std::uint32_t u = 1; u < p; ++u) {
    HeckeElt tu = HeckeElt::basis(WeylElt::omega(p, u));
    out.push_back(act(tu, ap, Side::Left));
    out.push_back(act(tu, am, Side::Left));
  }
  return out;
}

/**
 * Degree-two embedding of a single dual label: the unique element killed
 * by the two-sided endomorphism whose deviation from the signed mid-slot
 * line lies in the kernel-basis span.  Solved on a growing window; the
 * correction is asserted unique.
 */
inline E2Elt cent2_dual_elt(const WeylElt& w, const NormCtx& ctx,
                            std::uint32_t cap = 16) {
  if (w.len == 0)
    throw std::invalid_argument(
        "LengthZero: degree-two chart requires positive length");
  std::uint32_t p = w.p;
  FieldElt sign = w.in_class(0) ? FieldElt::one(p) : -FieldElt::one(p);
  E2Elt mid = sign * E2Elt::term(w, 0, 1, 0);
  for (std::uint32_t N = w.len + 4;; N += 2) {
    if (N > cap)
      throw std::domain_error("SolveFailure: degree-two embedding window cap");
    std::vector<E2Elt> basis = kerf2_window_basis(p, N, ctx);
    E2Window cod = E2Window::make(p, N + 2);
    std::vector<FieldVec> cols;
    cols.reserve(basis.size());
    for (auto& b : basis) cols.push_back(cod.vec(g_endo(b)));
    FieldMatrix M(static_cast<std::uint32_t>(cod.dim()),
                  static_cast<std::uint32_t>(cols.size()), p);
    for (std::size_t j = 0; j < cols.size(); ++j)
      for (std::size_t i = 0; i < cols[j].size(); ++i)
        if (!cols[j][i].is_zero())
          M.set(static_cast<std::uint32_t>(i), static_cast<std::uint32_t>(j),
                cols[j][i]);
    if (M.rank() != cols.size())
      throw std::domain_error(
          "SolveFailure: ambiguous degree-two correction in window");
    auto sol = M.solve(cod.vec(-g_endo(mid)));
    if (!sol) continue;
    E2Elt res = mid;
    for (std::size_t j = 0; j < basis.size(); ++j)
      res.add_scaled(basis[j], (*sol)[j]);
    return rescale(ctx, res);
  }
}

/** Degree-two embedding of a coefficient map. */
inline E2Elt cent_embed2(std::uint32_t p, const Cent2Map& x, const NormCtx& ctx,
                         std::uint32_t cap = 16) {
  E2Elt out(p);
  for (auto& [w, c] : x) out.add_scaled(cent2_dual_elt(w, ctx, cap), c);
  return out;
}

/** Degree-three embedding: the chart is already the dual basis. */
inline E3Elt cent_embed3(const HDualElt& d) { return d; }

/** The full graded image of a centralizer element. */
struct CentImage {
  HeckeElt d0;
  E1Elt d1;
  E2Elt d2;
  E3Elt d3;
};

inline CentImage cent_embed(const CentElt& c, const NormCtx& ctx,
                            std::uint32_t cap = 16) {
  CentImage img{c.deg0, E1Elt(c.p), E2Elt(c.p), c.deg3};
  if (!c.deg1.is_zero()) img.d1 = cent_embed1(c.deg1, ctx);
  if (!c.deg2.empty()) img.d2 = cent_embed2(c.p, c.deg2, ctx, cap);
  return img;
}

namespace detail {

/** Evaluate the one-sided extension on a quotient component: nonnegative
 * grades multiply in from the left, negative grades peel off as right
 * powers of the central element. */
template <class Elt>
inline Elt pm_component_eval(const PMComp& comp, int side, const Elt& gen) {
  std::uint32_t p = gen.p;
  Elt out(p);
  HeckeElt io = iota(HeckeElt::basis(WeylElt::s(p, 1 - side)));
  for (auto& [k, c] : comp) {
    HeckeElt base = HeckeElt::basis(WeylElt::omega(p, k.u));
    if (k.io) base = base * io;
    Elt cur(p);
    if (k.j >= 0) {
      cur = act(zeta_pow(p, static_cast<std::size_t>(k.j)) * base, gen,
                Side::Left);
    } else {
      cur = act(base, gen, Side::Left);
      for (long long i = 0; i < -k.j; ++i) cur = zeta_act(cur, Side::Right);
    }
    out.add_scaled(cur, c);
  }
  return out;
}

}  // namespace detail

/** The two-sided map from the plus/minus bimodule into degree one. */
inline E1Elt fpm(const PMElt& s, const NormCtx& ctx) {
  return detail::pm_component_eval(s.plus, 0, xplus_elt(ctx)) +
         detail::pm_component_eval(s.minus, 1, xminus_elt(ctx));
}

/** The two-sided map from the plus/minus bimodule into degree two. */
inline E2Elt fa(const PMElt& s, const NormCtx& ctx) {
  return detail::pm_component_eval(s.plus, 0, aplus_elt(ctx)) +
         detail::pm_component_eval(s.minus, 1, aminus_elt(ctx));
}

/** Which two-sided endomorphism a kernel window refers to. */
enum class CentEndo { F, G };

namespace detail {

template <class Win, class Elt>
inline std::vector<Elt> ker_window_impl(CentEndo which, std::uint32_t p,
                                        std::uint32_t N) {
  if (N < 1) throw std::invalid_argument("BadParams: window must be positive");
  Win dom = Win::make(p, N);
  Win cod = Win::make(p, N + 4);
  auto op = [&](const Elt& x) {
    return which == CentEndo::F ? f_endo(x) : g_endo(x);
  };
  return kernel_elements(dom, cod, op);
}

}  // namespace detail

/** Exact kernel of the chosen endomorphism on a support window. */
inline std::vector<E1Elt> ker_window_e1(CentEndo which, std::uint32_t p,
                                        std::uint32_t N) {
  return detail::ker_window_impl<E1Window, E1Elt>(which, p, N);
}
inline std::vector<E2Elt> ker_window_e2(CentEndo which, std::uint32_t p,
                                        std::uint32_t N) {
  return detail::ker_window_impl<E2Window, E2Elt>(which, p, N);
}
inline std::vector<E3Elt> ker_window_e3(CentEndo which, std::uint32_t p,
                                        std::uint32_t N) {
  return detail::ker_window_impl<E3Window, E3Elt>(which, p, N);
}

/** Summands of a degree-one element along the three-part decomposition. */
struct E1Decomposition {
  PMElt kerf_part;
  HeckeElt kerg_part;
  std::array<FieldElt, 4> v_part;
};

/** Summands of a degree-two element along the two-part decomposition. */
struct E2Decomposition {
  PMElt kerf2_part;
  Cent2Map kerg2_part;
};

namespace detail {

/** Solve target = sum c_i columns_i with the columns asserted independent;
 * returns the coefficients or nothing when target escapes the span. */
template <class Win, class Elt>
inline std::optional<FieldVec> span_solve(const Win& cod,
                                          const std::vector<Elt>& columns,
                                          const Elt& target) {
  std::vector<FieldVec> cols;
  cols.reserve(columns.size());
  for (auto& b : columns) cols.push_back(cod.vec(b));
  FieldMatrix M(static_cast<std::uint32_t>(cod.dim()),
                static_cast<std::uint32_t>(cols.size()), cod.p);
  for (std::size_t j = 0; j < cols.size(); ++j)
    for (std::size_t i = 0; i < cols[j].size(); ++i)
      if (!cols[j][i].is_zero())
        M.set(static_cast<std::uint32_t>(i), static_cast<std::uint32_t>(j),
              cols[j][i]);
  if (M.rank() != cols.size())
    throw std::domain_error("SolveFailure: dependent decomposition columns");
  return M.solve(cod.vec(target));
}

}  // namespace detail

/**
 * Decompose a degree-one element into its plus/minus preimage, its
 * positive-length ideal preimage and the four residual coordinates.
 * Solved jointly on a growing window and asserted exact by uniqueness of
 * the column span.
 */
inline E1Decomposition decompose_e1(const E1Elt& m, const NormCtx& ctx,
                                    std::uint32_t cap = 16) {
  std::uint32_t p = m.p;
  for (std::uint32_t N = m.max_len() + 4;; N += 2) {
    if (N > cap)
      throw std::domain_error("SolveFailure: degree-one decomposition cap");
    long long J = static_cast<long long>(N) / 2 + 2;
    PMWindow pmw = PMWindow::make(p, -J, J);

    std::vector<E1Elt> cols;
    std::vector<WeylElt> ideal_labels;
    for (std::size_t i = 0; i < pmw.dim(); ++i)
      cols.push_back(fpm(pmw.unit(i), ctx));
    for (auto& w : elements_up_to_length(p, N)) {
      if (w.len == 0) continue;
      ideal_labels.push_back(w);
      cols.push_back(cent_embed1(HeckeElt::basis(w), ctx));
    }
    std::array<E1Elt, 4> vbasis{vx_elt(ctx), vy_elt(ctx), vxs1_elt(ctx),
                                vys0_elt(ctx)};
    for (auto& v : vbasis) cols.push_back(v);

    std::uint32_t codlen = m.max_len();
    for (auto& col : cols)
      if (col.max_len() > codlen) codlen = col.max_len();
    E1Window cod = E1Window::make(p, codlen);

    auto sol = detail::span_solve(cod, cols, m);
    if (!sol) continue;
    E1Decomposition out{PMElt(p), HeckeElt(p),
                        {FieldElt::zero(p), FieldElt::zero(p),
                         FieldElt::zero(p), FieldElt::zero(p)}};
    std::size_t at = 0;
    FieldVec pmvec = zero_vec(pmw.dim(), p);
    for (std::size_t i = 0; i < pmw.dim(); ++i) pmvec[i] = (*sol)[at++];
    out.kerf_part = pmw.elt(pmvec);
    for (auto& w : ideal_labels) out.kerg_part.add_term(w, (*sol)[at++]);
    for (int i = 0; i < 4; ++i)
      out.v_part[static_cast<std::size_t>(i)] = (*sol)[at++];
    return out;
  }
}

/**
 * Decompose a degree-two element into its plus/minus preimage and dual
 * coefficients, jointly solved on a growing window.
 */
inline E2Decomposition decompose_e2(const E2Elt& m, const NormCtx& ctx,
                                    std::uint32_t cap = 16) {
  std::uint32_t p = m.p;
  for (std::uint32_t N = m.max_len() + 4;; N += 2) {
    if (N > cap)
      throw std::domain_error("SolveFailure: degree-two decomposition cap");
    long long J = static_cast<long long>(N) / 2 + 2;
    PMWindow pmw = PMWindow::make(p, -J, J);

    std::vector<E2Elt> cols;
    std::vector<WeylElt> dual_labels;
    for (std::size_t i = 0; i < pmw.dim(); ++i)
      cols.push_back(fa(pmw.unit(i), ctx));
    for (auto& w : elements_up_to_length(p, N)) {
      if (w.len == 0) continue;
      dual_labels.push_back(w);
      cols.push_back(cent2_dual_elt(w, ctx, cap));
    }

    std::uint32_t codlen = m.max_len();
    for (auto& col : cols)
      if (col.max_len() > codlen) codlen = col.max_len();
    E2Window cod = E2Window::make(p, codlen);

    auto sol = detail::span_solve(cod, cols, m);
    if (!sol) continue;
    E2Decomposition out{PMElt(p), {}};
    std::size_t at = 0;
    FieldVec pmvec = zero_vec(pmw.dim(), p);
    for (std::size_t i = 0; i < pmw.dim(); ++i) pmvec[i] = (*sol)[at++];
    out.kerf2_part = pmw.elt(pmvec);
    for (auto& w : dual_labels) detail::cent2_add(out.kerg2_part, w, (*sol)[at++]);
    return out;
  }
}

/** Outcome of tensoring the top degree against a polynomial quotient. */
enum class TopTensorKind { Zero, ChiTriv };

/**
 * Result with window certificates: a preimage under right multiplication
 * by the evaluated polynomial for every certified dual label (after
 * removing the invariant-line component in the one-dimensional case).
 */
struct TopTensorResult {
  TopTensorKind kind;
  E3Elt torsion_line;
  std::vector<std::pair<WeylElt, E3Elt>> certificates;
};

/**
 * The top graded piece tensored against the quotient by a polynomial in
 * the central element: zero when the polynomial misses 1, the invariant
 * character when it vanishes at 1.  Divisibility certificates are
 * produced on the window for every dual label of certifiable length.
 */
inline TopTensorResult top_tensor_quotient(const FpPoly& Q, std::uint32_t N,
                                           std::uint32_t cap = 16) {
  if (Q.is_zero())
    throw std::domain_error("ZeroPolynomial: quotient by the zero ideal");
  std::uint32_t p = Q.p;
  FieldElt q1 = Q.eval(FieldElt::one(p));
  TopTensorResult res{q1.is_zero() ? TopTensorKind::ChiTriv
                                   : TopTensorKind::Zero,
                      act(e1(p), phi(WeylElt::identity(p)), Side::Left),
                      {}};
  HeckeElt qz(p);
  for (int i = 0; i <= Q.degree(); ++i)
    qz = qz + Q.coeff(static_cast<std::size_t>(i)) *
                  zeta_pow(p, static_cast<std::size_t>(i));
  FieldElt line_norm = s3(res.torsion_line).inv();

  long long certlen =
      static_cast<long long>(N) - 2 * static_cast<long long>(Q.degree());
  if (certlen < 0) return res;
  for (auto& w : elements_up_to_length(p, static_cast<std::uint32_t>(certlen))) {
    E3Elt target = phi(w);
    if (res.kind == TopTensorKind::ChiTriv)
      target = target - (s3(target) * line_norm) * res.torsion_line;
    std::optional<E3Elt> pre;
    for (std::uint32_t M = N; M <= cap; M += 2) {
      E3Window dom = E3Window::make(p, M);
      pre = solve_in_window(dom, dom,
                            [&](const E3Elt& x) { return act(qz, x, Side::Right); },
                            target);
      if (pre) break;
    }
    if (!pre)
      throw std::domain_error("SolveFailure: divisibility certificate window");
    res.certificates.emplace_back(w, *pre);
  }
  return res;
}

}  // namespace iwext
