#pragma once

/**
 * Finite windows on the graded components, and exact linear algebra over
 * them: basis enumeration, vectorization, operator matrices built column
 * by column, nullspaces, solves and span comparisons.  An operator is
 * sampled on a domain window and recorded against a (typically larger)
 * codomain window; vectorization throws when support escapes the window,
 * so a kernel of the rectangular matrix is an exact kernel intersected
 * with the domain window.
 */

#include <array>
#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <tuple>
#include <utility>
#include <vector>

#include "ext.hpp"
#include "fp.hpp"
#include "loc.hpp"

namespace iwext {

/** Window of label-indexed containers (the algebra and the top degree). */
template <class Elt>
struct LabelWindow {
  std::uint32_t p{0}, N{0};
  std::vector<WeylElt> labels;
  std::map<WeylElt, std::size_t> pos;

  static LabelWindow make(std::uint32_t prime, std::uint32_t maxlen) {
    LabelWindow wn;
    wn.p = prime;
    wn.N = maxlen;
    for (auto& w : elements_up_to_length(prime, maxlen)) {
      wn.pos.emplace(w, wn.labels.size());
      wn.labels.push_back(w);
    }
    return wn;
  }

  std::size_t dim() const { return labels.size(); }

  Elt unit(std::size_t i) const {
    Elt e(p);
    e.add_term(labels.at(i), FieldElt::one(p));
    return e;
  }

  FieldVec vec(const Elt& x) const {
    FieldVec v = zero_vec(dim(), p);
    for (auto& [w, c] : x.terms) {
      auto it = pos.find(w);
      if (it == pos.end())
        throw std::domain_error("WindowOverflow: support exceeds the window");
      v[it->second] = c;
    }
    return v;
  }

  Elt elt(const FieldVec& v) const {
    if (v.size() != dim())
      throw std::invalid_argument("SizeMismatch: vector vs window");
    Elt e(p);
    for (std::size_t i = 0; i < v.size(); ++i)
      if (!v[i].is_zero()) e.add_term(labels[i], v[i]);
    return e;
  }
};

using HWindow = LabelWindow<HeckeElt>;
using E3Window = LabelWindow<HDualElt>;

/** Window of coordinate triples; the mid slot is absent at length zero. */
template <int Deg>
struct TripleWindow {
  std::uint32_t p{0}, N{0};
  std::vector<std::pair<WeylElt, int>> slots;  // slot 0 = lo, 1 = mid, 2 = hi
  std::map<WeylElt, std::array<long long, 3>> pos;

  static TripleWindow make(std::uint32_t prime, std::uint32_t maxlen) {
    TripleWindow wn;
    wn.p = prime;
    wn.N = maxlen;
    for (auto& w : elements_up_to_length(prime, maxlen)) {
      std::array<long long, 3> at{-1, -1, -1};
      for (int s = 0; s < 3; ++s) {
        if (s == 1 && w.len == 0) continue;
        at[static_cast<std::size_t>(s)] =
            static_cast<long long>(wn.slots.size());
        wn.slots.emplace_back(w, s);
      }
      wn.pos.emplace(w, at);
    }
    return wn;
  }

  std::size_t dim() const { return slots.size(); }

  TripleElt<Deg> unit(std::size_t i) const {
    auto& [w, s] = slots.at(i);
    FieldElt one = FieldElt::one(p), zero = FieldElt::zero(p);
    return TripleElt<Deg>::term(w, s == 0 ? one : zero, s == 1 ? one : zero,
                                s == 2 ? one : zero);
  }

  FieldVec vec(const TripleElt<Deg>& x) const {
    FieldVec v = zero_vec(dim(), p);
    for (auto& [w, t] : x.terms) {
      auto it = pos.find(w);
      if (it == pos.end())
        throw std::domain_error("WindowOverflow: support exceeds the window");
      const FieldElt* c[3] = {&t.m, &t.z, &t.p};
      for (int s = 0; s < 3; ++s) {
        if (c[s]->is_zero()) continue;
        long long at = it->second[static_cast<std::size_t>(s)];
        if (at < 0)
          throw std::domain_error("WindowOverflow: support exceeds the window");
        v[static_cast<std::size_t>(at)] = *c[s];
      }
    }
    return v;
  }

  TripleElt<Deg> elt(const FieldVec& v) const {
    if (v.size() != dim())
      throw std::invalid_argument("SizeMismatch: vector vs window");
    TripleElt<Deg> e(p);
    FieldElt zero = FieldElt::zero(p);
    for (std::size_t i = 0; i < v.size(); ++i) {
      if (v[i].is_zero()) continue;
      auto& [w, s] = slots[i];
      e.add_term(w, s == 0 ? v[i] : zero, s == 1 ? v[i] : zero,
                 s == 2 ? v[i] : zero);
    }
    return e;
  }
};

using E1Window = TripleWindow<1>;
using E2Window = TripleWindow<2>;

/** Window of two-sided-quotient classes by atom degree range. */
struct PMWindow {
  std::uint32_t p{0};
  long long jmin{0}, jmax{0};
  std::vector<std::pair<int, PMAtom>> atoms;  // side 0 = plus, 1 = minus
  std::map<std::pair<int, PMAtom>, std::size_t> pos;

  static PMWindow make(std::uint32_t prime, long long jmin, long long jmax) {
    if (jmin > jmax) throw std::invalid_argument("BadParams: empty range");
    PMWindow wn;
    wn.p = prime;
    wn.jmin = jmin;
    wn.jmax = jmax;
    for (int side = 0; side < 2; ++side)
      for (long long j = jmin; j <= jmax; ++j)
        for (int io = 0; io < 2; ++io)
          for (std::uint32_t u = 1; u < prime; ++u) {
            PMAtom a{j, u, static_cast<std::uint8_t>(io)};
            wn.pos.emplace(std::make_pair(side, a), wn.atoms.size());
            wn.atoms.emplace_back(side, a);
          }
    return wn;
  }

  std::size_t dim() const { return atoms.size(); }

  PMElt unit(std::size_t i) const {
    auto& [side, a] = atoms.at(i);
    PMElt e(p);
    (side == 0 ? e.plus : e.minus).emplace(a, FieldElt::one(p));
    return e;
  }

  FieldVec vec(const PMElt& x) const {
    FieldVec v = zero_vec(dim(), p);
    for (int side = 0; side < 2; ++side)
      for (auto& [a, c] : (side == 0 ? x.plus : x.minus)) {
        auto it = pos.find(std::make_pair(side, a));
        if (it == pos.end())
          throw std::domain_error("WindowOverflow: support exceeds the window");
        v[it->second] = c;
      }
    return v;
  }

  PMElt elt(const FieldVec& v) const {
    if (v.size() != dim())
      throw std::invalid_argument("SizeMismatch: vector vs window");
    PMElt e(p);
    for (std::size_t i = 0; i < v.size(); ++i) {
      if (v[i].is_zero()) continue;
      auto& [side, a] = atoms[i];
      (side == 0 ? e.plus : e.minus).emplace(a, v[i]);
    }
    return e;
  }
};

/** Matrix of an operator sampled on the domain window. */
template <class DomW, class CodW, class Op>
inline FieldMatrix op_matrix(const DomW& dom, const CodW& cod, Op&& op) {
  FieldMatrix M(static_cast<std::uint32_t>(cod.dim()),
                static_cast<std::uint32_t>(dom.dim()), dom.p);
  for (std::size_t j = 0; j < dom.dim(); ++j) {
    FieldVec col = cod.vec(op(dom.unit(j)));
    for (std::size_t i = 0; i < col.size(); ++i)
      if (!col[i].is_zero())
        M.set(static_cast<std::uint32_t>(i), static_cast<std::uint32_t>(j),
              col[i]);
  }
  return M;
}

/** Exact kernel of the operator intersected with the domain window. */
template <class DomW, class CodW, class Op>
inline auto kernel_elements(const DomW& dom, const CodW& cod, Op&& op) {
  using Elt = std::decay_t<decltype(dom.unit(0))>;
  std::vector<Elt> out;
  for (auto& v : op_matrix(dom, cod, op).nullspace()) out.push_back(dom.elt(v));
  return out;
}

/** One solution of op(x) = target with x in the domain window, if any. */
template <class DomW, class CodW, class Op, class Target>
inline auto solve_in_window(const DomW& dom, const CodW& cod, Op&& op,
                            const Target& target)
    -> std::optional<std::decay_t<decltype(dom.unit(0))>> {
  auto sol = op_matrix(dom, cod, op).solve(cod.vec(target));
  if (!sol) return std::nullopt;
  return dom.elt(*sol);
}

/** Stack vectors as matrix rows. */
inline FieldMatrix rows_matrix(std::uint32_t p,
                               const std::vector<FieldVec>& rows) {
  std::uint32_t cols = rows.empty() ? 0u
                                    : static_cast<std::uint32_t>(rows[0].size());
  FieldMatrix M(static_cast<std::uint32_t>(rows.size()), cols, p);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (rows[i].size() != cols)
      throw std::invalid_argument("SizeMismatch: ragged rows");
    for (std::size_t j = 0; j < cols; ++j)
      if (!rows[i][j].is_zero())
        M.set(static_cast<std::uint32_t>(i), static_cast<std::uint32_t>(j),
              rows[i][j]);
  }
  return M;
}

inline std::uint32_t span_rank(std::uint32_t p,
                               const std::vector<FieldVec>& rows) {
  return rows_matrix(p, rows).rank();
}

inline bool in_span(std::uint32_t p, const std::vector<FieldVec>& rows,
                    const FieldVec& v) {
  std::vector<FieldVec> ext = rows;
  ext.push_back(v);
  return span_rank(p, rows) == span_rank(p, ext);
}

inline bool same_span(std::uint32_t p, const std::vector<FieldVec>& a,
                      const std::vector<FieldVec>& b) {
  std::vector<FieldVec> both = a;
  both.insert(both.end(), b.begin(), b.end());
  std::uint32_t ra = span_rank(p, a), rb = span_rank(p, b),
                rab = span_rank(p, both);
  return ra == rb && ra == rab;
}

}  // namespace iwext
