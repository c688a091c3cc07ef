#pragma once

#include <map>
#include <stdexcept>
#include <utility>
#include <vector>

#include "iwext/fp.hpp"
#include "iwext/hecke.hpp"
#include "iwext/weyl.hpp"

namespace iwext {

/**
 * A finite-dimensional left module over the Hecke algebra, presented by the
 * matrices of the generators.  Construction validates the defining
 * relations: the torus matrices form a group inverted by the letters, and
 * each letter matrix satisfies the quadratic collapse.
 */
struct FinModule {
  std::uint32_t p{0};
  std::uint32_t dim{0};
  FieldMatrix ms0, ms1;
  std::vector<FieldMatrix> momega;  // index u-1 for u = 1..p-1

  FinModule() = default;

  FinModule(std::uint32_t prime, std::uint32_t dimension, FieldMatrix m0,
            FieldMatrix m1, std::vector<FieldMatrix> momg)
      : p(prime), dim(dimension), ms0(std::move(m0)), ms1(std::move(m1)),
        momega(std::move(momg)) {
    FieldElt::check_prime(p);
    auto square = [&](const FieldMatrix& m, const char* what) {
      if (m.rows != dim || m.cols != dim || m.p != p)
        throw std::invalid_argument(std::string("DimensionMismatch: ") + what);
    };
    square(ms0, "letter-0 matrix");
    square(ms1, "letter-1 matrix");
    if (momega.size() != p - 1)
      throw std::invalid_argument("DimensionMismatch: need p-1 torus matrices");
    for (auto& m : momega) square(m, "torus matrix");
    validate_relations();
  }

  const FieldMatrix& omega_mat(std::uint32_t u) const {
    if (u == 0 || u >= p) throw std::invalid_argument("InvalidUnit: omega_mat");
    return momega[u - 1];
  }

  FieldMatrix e1_mat() const {
    FieldMatrix e(dim, dim, p);
    for (std::uint32_t u = 1; u < p; ++u) e = e - omega_mat(u);
    return e;
  }

  void validate_relations() const {
    FieldMatrix id = FieldMatrix::identity(dim, p);
    if (!(omega_mat(1) == id))
      throw std::domain_error("RelationViolation: omega_1 must act as identity");
    for (std::uint32_t u = 1; u < p; ++u)
      for (std::uint32_t v = 1; v < p; ++v) {
        std::uint32_t uv = static_cast<std::uint32_t>(
            (static_cast<std::uint64_t>(u) * v) % p);
        if (!(omega_mat(u) * omega_mat(v) == omega_mat(uv)))
          throw std::domain_error("RelationViolation: torus group law fails");
      }
    FieldMatrix e1m = e1_mat();
    const FieldMatrix* letters[2] = {&ms0, &ms1};
    for (int i = 0; i < 2; ++i) {
      const FieldMatrix& s = *letters[i];
      FieldMatrix lhs = s * s;
      FieldMatrix rhs = (FieldMatrix(dim, dim, p) - e1m) * s;
      if (!(lhs == rhs))
        throw std::domain_error("RelationViolation: quadratic relation fails");
      for (std::uint32_t u = 1; u < p; ++u) {
        FieldElt uinv = FieldElt(u, p).inv();
        if (!(omega_mat(u) * s == s * omega_mat(uinv.v)))
          throw std::domain_error(
              "RelationViolation: torus/letter commutation fails");
      }
    }
  }

  /** Matrix of a general element acting on the left. */
  FieldMatrix matrix_of(const HeckeElt& h) const {
    if (h.p != p) throw std::invalid_argument("FieldMismatch: matrix_of");
    FieldMatrix acc(dim, dim, p);
    for (auto& [w, c] : h.terms) {
      FieldMatrix m = omega_mat(w.unit);
      for (std::uint32_t i = 0; i < w.len; ++i)
        m = m * (w.letter(i) == 0 ? ms0 : ms1);
      acc = acc + m.scale(c);
    }
    return acc;
  }

  FieldVec act(const HeckeElt& h, const FieldVec& v) const {
    return matrix_of(h).apply(v);
  }
};

/** True iff the central element acts nilpotently. */
inline bool is_supersingular(const FinModule& m) {
  if (m.dim == 0) return true;
  FieldMatrix z = m.matrix_of(zeta(m.p));
  FieldMatrix acc = FieldMatrix::identity(m.dim, m.p);
  for (std::uint32_t i = 0; i < m.dim; ++i) acc = acc * z;
  return acc.is_zero();
}

/** Nilpotency of one member of the central family, for cross-checks. */
inline bool is_supersingular_via(const FinModule& m, const FieldElt& alpha) {
  if (m.dim == 0) return true;
  FieldMatrix z = m.matrix_of(zeta_alpha(alpha));
  FieldMatrix acc = FieldMatrix::identity(m.dim, m.p);
  for (std::uint32_t i = 0; i < m.dim; ++i) acc = acc * z;
  return acc.is_zero();
}

namespace detail {

/** A column (module generator) over k[zeta] with its pivot row. */
struct PolyCol {
  std::vector<FpPoly> v;
  std::uint32_t pivot{0};
};

inline bool poly_col_zero(const std::vector<FpPoly>& v) {
  for (auto& q : v)
    if (!q.is_zero()) return false;
  return true;
}

/**
 * Triangular column basis of the k[zeta]-module spanned by the given
 * columns: each basis column is monic at its pivot row and vanishes at all
 * earlier rows; pivot rows are strictly increasing.  Deterministic
 * (minimal-degree column wins, ties by position).
 */
inline std::vector<PolyCol> poly_column_basis(std::uint32_t p,
                                              std::vector<std::vector<FpPoly>> cols) {
  std::vector<PolyCol> basis;
  if (cols.empty()) return basis;
  std::size_t rows = cols[0].size();
  for (std::uint32_t r = 0; r < rows; ++r) {
    for (;;) {
      // locate the minimal-degree nonzero entry at row r
      int best = -1;
      for (std::size_t j = 0; j < cols.size(); ++j) {
        if (cols[j][r].is_zero()) continue;
        if (best < 0 || cols[j][r].degree() <
                            cols[static_cast<std::size_t>(best)][r].degree())
          best = static_cast<int>(j);
      }
      if (best < 0) break;  // no pivot at this row
      bool others = false;
      for (std::size_t j = 0; j < cols.size(); ++j) {
        if (static_cast<int>(j) == best || cols[j][r].is_zero()) continue;
        others = true;
        FpPoly q = cols[j][r].divmod(cols[static_cast<std::size_t>(best)][r]).q;
        for (std::size_t i = 0; i < rows; ++i)
          cols[j][i] =
              cols[j][i] - q * cols[static_cast<std::size_t>(best)][i];
      }
      if (!others) {
        // a unique nonzero column at row r: it becomes the pivot column
        PolyCol pc;
        pc.v = cols[static_cast<std::size_t>(best)];
        pc.pivot = r;
        FieldElt lead = FieldElt::raw(pc.v[r].c.back(), p);
        if (!(lead == FieldElt::one(p))) {
          FieldElt li = lead.inv();
          for (auto& q : pc.v) q = q.scale(li);
        }
        basis.push_back(pc);
        cols.erase(cols.begin() + best);
        break;
      }
    }
  }
  for (auto& c : cols)
    if (!poly_col_zero(c))
      throw std::logic_error("poly_column_basis: nonzero residual column");
  return basis;
}

/**
 * Express v in the triangular basis (top-down division).  Returns the
 * coordinate polynomials; the remainder after all pivots must be zero for
 * membership, else nullopt.
 */
inline std::optional<std::vector<FpPoly>> poly_express(
    const std::vector<PolyCol>& basis, std::vector<FpPoly> v) {
  std::vector<FpPoly> coord;
  coord.reserve(basis.size());
  for (auto& b : basis) {
    FpPoly q = v[b.pivot].divmod(b.v[b.pivot]).q;
    if (!(q * b.v[b.pivot] == v[b.pivot]))
      return std::nullopt;  // inexact division at a pivot: not a member
    for (std::size_t i = 0; i < v.size(); ++i) v[i] = v[i] - q * b.v[i];
    coord.push_back(q);
  }
  if (!poly_col_zero(v)) return std::nullopt;
  return coord;
}

/** Top-down canonical reduction of a coordinate vector modulo a triangular
 * relation basis; afterwards deg(coord at pivot i) < deg(pivot entry). */
inline void poly_reduce(const std::vector<PolyCol>& rel,
                        std::vector<FpPoly>& coord) {
  for (auto& t : rel) {
    FpPoly q = coord[t.pivot].divmod(t.v[t.pivot]).q;
    if (q.is_zero()) continue;
    for (std::size_t i = 0; i < coord.size(); ++i)
      coord[i] = coord[i] - q * t.v[i];
  }
}

inline std::vector<FpPoly> coords_vec(const HeckeElt& h,
                                      const std::vector<WeylElt>& labels) {
  auto m = kzeta_coords(h);
  std::vector<FpPoly> v(labels.size(), FpPoly::zero(h.p));
  for (std::size_t i = 0; i < labels.size(); ++i) {
    auto it = m.find(labels[i]);
    if (it != m.end()) v[i] = it->second;
  }
  return v;
}

}  // namespace detail

/**
 * The cyclic quotient He / He r as a FinModule, when finite-dimensional.
 * Both He and He r are free-rank-computable submodules of the rank-4(p-1)
 * free k[zeta]-module underlying H, so the quotient is handled by exact
 * polynomial column reduction.
 */
inline FinModule cyclic_module(const HeckeElt& e, const HeckeElt& r) {
  e.require_same(r);
  std::uint32_t p = e.p;
  auto labels = kzeta_labels(p);

  std::vector<std::vector<FpPoly>> mgens, ngens;
  for (auto& x : labels) {
    HeckeElt tx = HeckeElt::basis(x);
    mgens.push_back(detail::coords_vec(tx * e, labels));
    ngens.push_back(detail::coords_vec(tx * e * r, labels));
  }
  auto basis = detail::poly_column_basis(p, mgens);

  std::vector<std::vector<FpPoly>> rel_coords;
  for (auto& g : ngens) {
    auto c = detail::poly_express(basis, g);
    if (!c)
      throw std::domain_error(
          "NotSubmodule: He*r is not contained in He");
    rel_coords.push_back(*c);
  }
  auto rel = detail::poly_column_basis(p, rel_coords);
  if (rel.size() < basis.size())
    throw std::domain_error(
        "InfiniteDimensional: He/He*r has a free k[zeta] summand");

  // flat basis: (basis index i, zeta power j < deg of relation pivot at i)
  std::vector<std::uint32_t> degs(basis.size(), 0);
  for (auto& t : rel) degs[t.pivot] = static_cast<std::uint32_t>(
      t.v[t.pivot].degree());
  std::vector<std::pair<std::uint32_t, std::uint32_t>> flat;
  for (std::uint32_t i = 0; i < basis.size(); ++i)
    for (std::uint32_t j = 0; j < degs[i]; ++j) flat.emplace_back(i, j);
  std::uint32_t dim = static_cast<std::uint32_t>(flat.size());

  auto act_matrix = [&](const HeckeElt& g) {
    FieldMatrix m(dim, dim, p);
    for (std::uint32_t colidx = 0; colidx < dim; ++colidx) {
      auto [i, j] = flat[colidx];
      HeckeElt bi = kzeta_expand(p, [&] {
        std::map<WeylElt, FpPoly> mp;
        for (std::size_t t = 0; t < labels.size(); ++t)
          if (!basis[i].v[t].is_zero()) mp.emplace(labels[t], basis[i].v[t]);
        return mp;
      }());
      HeckeElt gb = g * bi;
      auto vec = detail::coords_vec(gb, labels);
      for (auto& q : vec) q = q.shift(j);
      auto c = detail::poly_express(basis, vec);
      if (!c) throw std::logic_error("cyclic_module: action left the module");
      detail::poly_reduce(rel, *c);
      for (std::uint32_t rowidx = 0; rowidx < dim; ++rowidx) {
        auto [i2, j2] = flat[rowidx];
        m.set(rowidx, colidx, (*c)[i2].coeff(j2));
      }
    }
    return m;
  };

  FieldMatrix m0 = act_matrix(HeckeElt::basis(s0(p)));
  FieldMatrix m1 = act_matrix(HeckeElt::basis(s1(p)));
  std::vector<FieldMatrix> mo;
  for (std::uint32_t u = 1; u < p; ++u)
    mo.push_back(act_matrix(HeckeElt::basis(WeylElt::omega(p, u))));
  return FinModule(p, dim, m0, m1, mo);
}

/**
 * Joint eigenspace for a character of the algebra: letter matrices act by
 * the given scalars and every torus matrix acts trivially.
 */
inline std::vector<FieldVec> character_eigenspace(const FinModule& m,
                                                  const FieldElt& s0_val,
                                                  const FieldElt& s1_val) {
  std::uint32_t n = m.dim;
  std::uint32_t blocks = 2 + (m.p - 1);
  FieldMatrix stack(blocks * n, n, m.p);
  FieldMatrix id = FieldMatrix::identity(n, m.p);
  auto put = [&](std::uint32_t blk, const FieldMatrix& mat) {
    for (std::uint32_t i = 0; i < n; ++i)
      for (std::uint32_t j = 0; j < n; ++j)
        stack.set(blk * n + i, j, mat.at(i, j));
  };
  put(0, m.ms0 - id.scale(s0_val));
  put(1, m.ms1 - id.scale(s1_val));
  for (std::uint32_t u = 1; u < m.p; ++u)
    put(1 + u, m.omega_mat(u) - id);
  return stack.nullspace();
}

/**
 * Quotient of a FinModule by the span of the given vectors.  The span must
 * be stable under the action (checked); the quotient basis consists of the
 * standard coordinates away from the span's pivot columns.
 */
inline FinModule quotient_module(const FinModule& m,
                                 const std::vector<FieldVec>& span) {
  std::uint32_t n = m.dim;
  FieldMatrix rows(static_cast<std::uint32_t>(span.size()), n, m.p);
  for (std::uint32_t i = 0; i < span.size(); ++i)
    for (std::uint32_t j = 0; j < n; ++j) rows.set(i, j, span[i][j]);
  auto ech = rows.rref();
  std::vector<bool> is_pivot(n, false);
  for (auto c : ech.pivots) is_pivot[c] = true;
  std::vector<std::uint32_t> free_cols;
  for (std::uint32_t j = 0; j < n; ++j)
    if (!is_pivot[j]) free_cols.push_back(j);

  auto reduce = [&](FieldVec v) {
    for (std::uint32_t r = 0; r < ech.rank; ++r) {
      FieldElt f = v[ech.pivots[r]];
      if (f.is_zero()) continue;
      for (std::uint32_t j = 0; j < n; ++j)
        v[j] = v[j] - f * ech.r.at(r, j);
    }
    return v;
  };

  std::uint32_t q = static_cast<std::uint32_t>(free_cols.size());
  auto project = [&](const FieldMatrix& big) {
    FieldMatrix small(q, q, m.p);
    for (std::uint32_t cj = 0; cj < q; ++cj) {
      FieldVec e = zero_vec(n, m.p);
      e[free_cols[cj]] = FieldElt::one(m.p);
      FieldVec img = reduce(big.apply(e));
      for (std::uint32_t ri = 0; ri < q; ++ri)
        small.set(ri, cj, img[free_cols[ri]]);
    }
    return small;
  };

  // stability check: acting on the span stays inside it
  for (auto& v : span) {
    for (const FieldMatrix* g : {&m.ms0, &m.ms1}) {
      if (!is_zero_vec(reduce(g->apply(v))))
        throw std::domain_error("NotSubmodule: span is not action-stable");
    }
    for (std::uint32_t u = 1; u < m.p; ++u)
      if (!is_zero_vec(reduce(m.omega_mat(u).apply(v))))
        throw std::domain_error("NotSubmodule: span is not action-stable");
  }

  FieldMatrix m0 = project(m.ms0), m1 = project(m.ms1);
  std::vector<FieldMatrix> mo;
  for (std::uint32_t u = 1; u < m.p; ++u) mo.push_back(project(m.omega_mat(u)));
  return FinModule(m.p, q, m0, m1, mo);
}

}  // namespace iwext
