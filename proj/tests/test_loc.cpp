#include "catch2/catch_amalgamated.hpp"
#include "iwext/finmod.hpp"
#include "iwext/loc.hpp"
#include "testutil.hpp"

#include <set>
#include <tuple>

using namespace iwext;
using iwext::testutil::rand_hecke;

namespace {

PMElt pm_atom(std::uint32_t p, int side, long long j, std::uint32_t u,
              std::uint8_t io) {
  PMElt r(p);
  (side == 0 ? r.plus : r.minus).emplace(PMAtom{j, u, io}, FieldElt::one(p));
  return r;
}

PMLeftElt pml_atom(std::uint32_t p, int side, long long j, std::uint32_t u,
                   std::uint8_t io) {
  PMLeftElt r(p);
  (side == 0 ? r.plus : r.minus).emplace(PMAtom{j, u, io}, FieldElt::one(p));
  return r;
}

PMElt rand_pm(DetRng& rng, std::uint32_t p) {
  PMElt s = PMElt::from_hecke(rand_hecke(rng, p, 2, 3), rand_hecke(rng, p, 2, 3));
  return pm_zeta_shift(s, static_cast<long long>(rng.next(3)) - 1);
}

template <class R>
using Blk = std::array<std::array<R, 2>, 2>;

template <class R>
Blk<R> bmul(const Blk<R>& a, const Blk<R>& b) {
  return {{{a[0][0] * b[0][0] + a[0][1] * b[1][0],
            a[0][0] * b[0][1] + a[0][1] * b[1][1]},
           {a[1][0] * b[0][0] + a[1][1] * b[1][0],
            a[1][0] * b[0][1] + a[1][1] * b[1][1]}}};
}

template <class R>
bool beq(const Blk<R>& a, const Blk<R>& b) {
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j)
      if (!(a[i][j] == b[i][j])) return false;
  return true;
}

}  // namespace

TEST_CASE("localized elements have unique normal forms") {
  std::uint32_t p = 5;
  HeckeElt ts0 = HeckeElt::basis(s0(p));
  HeckeElt ts1 = HeckeElt::basis(s1(p));

  // zeta^{-1} (zeta tau_{s0}) = tau_{s0}
  CHECK(LocHeckeElt(1, zeta(p) * ts0) == LocHeckeElt::from(ts0));
  // zeta^{-1} tau_{s0} tau_{s1} tau_{s0} = tau_{s0}
  CHECK(loc_mul(LocHeckeElt(1, ts0), LocHeckeElt::from(ts1 * ts0)) ==
        LocHeckeElt::from(ts0));

  DetRng rng(42);
  for (int t = 0; t < 40; ++t) {
    HeckeElt h = rand_hecke(rng, p, 3, 3);
    LocHeckeElt a(2, zeta(p) * h);
    LocHeckeElt b(5, zeta_pow(p, 4) * h);
    CHECK(a == b);
    CHECK(a.equals_cross(b));
    if (!h.is_zero()) {
      LocHeckeElt c = a + LocHeckeElt::one(p);
      CHECK(a != c);
      CHECK(!a.equals_cross(c));
    }
  }

  // shifts and inverse powers of zeta
  for (int t = 0; t < 20; ++t) {
    LocHeckeElt a(rng.next(3), rand_hecke(rng, p, 2, 3));
    CHECK(loc_zeta_shift(loc_zeta_shift(a, -2), 2) == a);
    CHECK(loc_divide_zeta(loc_zeta_shift(a, 1)) == a);
  }

  // ring laws
  for (int t = 0; t < 10; ++t) {
    LocHeckeElt a(rng.next(2), rand_hecke(rng, p, 2, 3));
    LocHeckeElt b(rng.next(2), rand_hecke(rng, p, 2, 3));
    LocHeckeElt c(rng.next(2), rand_hecke(rng, p, 2, 3));
    CHECK((a * b) * c == a * (b * c));
    CHECK(a * (b + c) == a * b + a * c);
    CHECK(LocHeckeElt::one(p) * a == a);
    CHECK((a + b) - b == a);
  }

  CHECK_THROWS_WITH(LocHeckeElt(kLocNegExpWindow + 1, HeckeElt::one(p)),
                    Catch::Matchers::ContainsSubstring("WindowOverflow"));
}

TEST_CASE("atoms form a basis of each quotient") {
  std::uint32_t p = 5;
  LocHeckeElt zl = LocHeckeElt::zero(p);
  for (int i = 0; i < 2; ++i) {
    HeckeElt io = iota(HeckeElt::basis(i == 0 ? s1(p) : s0(p)));
    for (long long j = -2; j <= 2; ++j)
      for (std::uint32_t u = 1; u < p; ++u)
        for (std::uint8_t hasio = 0; hasio <= 1; ++hasio) {
          HeckeElt rep = HeckeElt::basis(WeylElt::omega(p, u));
          if (hasio) rep = rep * io;
          LocHeckeElt lrep = loc_zeta_shift(LocHeckeElt::from(rep), j);
          // right quotients
          PMElt r = (i == 0) ? PMElt::from_loc(lrep, zl)
                             : PMElt::from_loc(zl, lrep);
          const PMComp& comp = (i == 0) ? r.plus : r.minus;
          const PMComp& other = (i == 0) ? r.minus : r.plus;
          REQUIRE(comp.size() == 1);
          CHECK(other.empty());
          CHECK(comp.begin()->first == PMAtom{j, u, hasio});
          CHECK(comp.begin()->second == FieldElt::one(p));
          // left quotients
          PMLeftElt l = (i == 0) ? PMLeftElt::from_loc(lrep, zl)
                                 : PMLeftElt::from_loc(zl, lrep);
          const PMComp& lcomp = (i == 0) ? l.plus : l.minus;
          REQUIRE(lcomp.size() == 1);
          CHECK(lcomp.begin()->first == PMAtom{j, u, hasio});
          CHECK(lcomp.begin()->second == FieldElt::one(p));
        }
  }
}

TEST_CASE("reduction kills exactly the defining ideals") {
  std::uint32_t p = 5;
  HeckeElt ts0 = HeckeElt::basis(s0(p));
  HeckeElt ts1 = HeckeElt::basis(s1(p));
  DetRng rng(42);
  for (int t = 0; t < 20; ++t) {
    HeckeElt h = rand_hecke(rng, p, 3, 3);
    CHECK(PMElt::from_hecke(h * ts0, h * ts1).is_zero());
    PMLeftElt l =
        PMLeftElt::from_loc(LocHeckeElt::from(ts0 * h), LocHeckeElt::from(ts1 * h));
    CHECK((l.plus.empty() && l.minus.empty()));
  }
  // expanding coordinates back to representatives is a section of reduction
  for (int t = 0; t < 20; ++t) {
    PMElt s = rand_pm(rng, p);
    CHECK(PMElt::from_loc(s.plus_rep(), s.minus_rep()) == s);
  }
  // reduction is additive and scalar-linear
  for (int t = 0; t < 10; ++t) {
    HeckeElt a = rand_hecke(rng, p, 3, 3), b = rand_hecke(rng, p, 3, 3);
    FieldElt c(static_cast<long long>(rng.next(p)), p);
    CHECK(PMElt::from_hecke(a + b, a) ==
          PMElt::from_hecke(a, a) + PMElt::from_hecke(b, HeckeElt::zero(p)));
    CHECK(PMElt::from_hecke(c * a, c * b) == c * PMElt::from_hecke(a, b));
  }
}

TEST_CASE("unit classes under the generator actions") {
  std::uint32_t p = 5;
  PMElt up = PMElt::unit_plus(p), um = PMElt::unit_minus(p);
  LocHeckeElt zl = LocHeckeElt::zero(p);
  HeckeElt ts0 = HeckeElt::basis(s0(p));
  HeckeElt ts1 = HeckeElt::basis(s1(p));

  CHECK(pm_right_act(up, ts0).is_zero());
  CHECK(pm_right_act(um, ts1).is_zero());
  CHECK(pm_left_act(ts0, up).is_zero());
  CHECK(pm_left_act(ts1, um).is_zero());

  // (1,0) tau_{omega_2} = (2^{-2} tau_{omega_2}, 0)
  PMElt got = pm_right_act(up, HeckeElt::basis(WeylElt::omega(p, 2)));
  CHECK(got == FieldElt(4, p) * pm_atom(p, 0, 0, 2, 0));

  // twisted involution-letter images of the units
  CHECK(pm_right_act_iota_s(up, 0) ==
        PMElt::from_loc(LocHeckeElt::from(-e_idem(p, 2)), zl));
  CHECK(pm_right_act_iota_s(um, 1) ==
        PMElt::from_loc(zl, LocHeckeElt::from(-e_idem(p, -2))));
  PMElt cross = pm_right_act_iota_s(up, 1);
  CHECK(cross == FieldElt(-1, p) * pm_atom(p, 1, -1, p - 1, 1));
  PMElt cross2 = pm_right_act_iota_s(um, 0);
  CHECK(cross2 == FieldElt(-1, p) * pm_atom(p, 0, -1, p - 1, 1));
}

TEST_CASE("free-pair identities behind the block presentation") {
  std::uint32_t p = 5;
  HeckeElt ts0 = HeckeElt::basis(s0(p));
  HeckeElt ts1 = HeckeElt::basis(s1(p));
  // tau_{s0} iota(tau_{s0}) = 0 and the idempotent slides across
  CHECK((ts0 * iota(ts0)).is_zero());
  CHECK((ts1 * iota(ts1)).is_zero());
  CHECK(ts0 * (-e_idem(p, 2)) == -e_idem(p, -2) * ts0);
  CHECK(ts1 * (-e_idem(p, -2)) == -e_idem(p, 2) * ts1);
  // the cross-terms annihilate the opposite generator
  HeckeElt z = -(HeckeElt::basis(WeylElt::omega(p, p - 1)));
  CHECK((ts0 * (z * iota(ts0))).is_zero());
  CHECK((ts1 * (z * iota(ts1))).is_zero());
  // torus commutation with the inverse-square character
  for (std::uint32_t u = 1; u < p; ++u) {
    FieldElt um2 = FieldElt(u, p).pow(-2);
    HeckeElt tw = HeckeElt::basis(WeylElt::omega(p, u));
    HeckeElt twi = HeckeElt::basis(WeylElt::omega(p, FieldElt(u, p).inv().v));
    CHECK(ts0 * (um2 * tw) == um2 * (twi * ts0));
    CHECK(ts1 * (FieldElt(u, p).pow(2) * tw) ==
          FieldElt(u, p).pow(2) * (twi * ts1));
  }
}

TEST_CASE("block presentation matches the coordinate action") {
  std::uint32_t p = 5;
  LocHeckeElt zl = LocHeckeElt::zero(p);
  std::vector<LocHeckeElt> oi;
  for (std::uint32_t u = 1; u < p; ++u)
    oi.push_back(LocHeckeElt::from(HeckeElt::basis(WeylElt::omega(p, u))));
  LocHeckeElt k0 = LocHeckeElt::from(iota(HeckeElt::basis(s0(p))));
  LocHeckeElt k1 = LocHeckeElt::from(iota(HeckeElt::basis(s1(p))));
  LocHeckeElt z =
      FieldElt(-1, p) * LocHeckeElt(1, HeckeElt::basis(WeylElt::omega(p, p - 1)));
  auto blocks = build_kappa2<LocHeckeElt>(p, oi, k0, k1, z, 2, zl);

  // structural relations of the blocks
  Blk<LocHeckeElt> sum0 = {{{zl, zl}, {zl, zl}}};
  Blk<LocHeckeElt> sum1 = sum0;
  auto badd = [&](Blk<LocHeckeElt>& acc, const Blk<LocHeckeElt>& m) {
    for (int i = 0; i < 2; ++i)
      for (int j = 0; j < 2; ++j) acc[i][j] = acc[i][j] + m[i][j];
  };
  for (std::uint32_t u = 1; u < p; ++u) {
    badd(sum0, bmul(blocks.momega[u - 1], blocks.m0));
    badd(sum1, bmul(blocks.momega[u - 1], blocks.m1));
  }
  CHECK(beq(bmul(blocks.m0, blocks.m0), sum0));
  CHECK(beq(bmul(blocks.m1, blocks.m1), sum1));
  for (std::uint32_t u = 1; u < p; ++u) {
    std::uint32_t ui = FieldElt(u, p).inv().v;
    CHECK(beq(bmul(blocks.momega[u - 1], blocks.m0),
              bmul(blocks.m0, blocks.momega[ui - 1])));
    CHECK(beq(bmul(blocks.momega[u - 1], blocks.m1),
              bmul(blocks.m1, blocks.momega[ui - 1])));
    for (std::uint32_t v = 1; v < p; ++v) {
      std::uint32_t uv = static_cast<std::uint32_t>(
          (static_cast<std::uint64_t>(u) * v) % p);
      CHECK(beq(bmul(blocks.momega[u - 1], blocks.momega[v - 1]),
                blocks.momega[uv - 1]));
    }
  }

  // row-vector times block equals the atom-level twisted action
  DetRng rng(42);
  for (int t = 0; t < 25; ++t) {
    PMElt s = rand_pm(rng, p);
    LocHeckeElt a = s.plus_rep(), b = s.minus_rep();
    for (int i = 0; i < 2; ++i) {
      const Blk<LocHeckeElt>& m = (i == 0) ? blocks.m0 : blocks.m1;
      LocHeckeElt ep = a * m[0][0] + b * m[1][0];
      LocHeckeElt em = a * m[0][1] + b * m[1][1];
      CHECK(PMElt::from_loc(ep, em) == pm_right_act_iota_s(s, i));
    }
    std::uint32_t u = 1 + rng.next(p - 1);
    const Blk<LocHeckeElt>& mw = blocks.momega[u - 1];
    LocHeckeElt ep = a * mw[0][0] + b * mw[1][0];
    LocHeckeElt em = a * mw[0][1] + b * mw[1][1];
    CHECK(PMElt::from_loc(ep, em) ==
          pm_right_act(s, HeckeElt::basis(WeylElt::omega(p, u))));
  }
}

TEST_CASE("block presentation on a finite module and degenerate cases") {
  std::uint32_t p = 5;
  FinModule m = cyclic_module(e1(p), zeta(p) - HeckeElt::one(p));
  std::vector<FieldMatrix> oi;
  for (std::uint32_t u = 1; u < p; ++u)
    oi.push_back(m.matrix_of(HeckeElt::basis(WeylElt::omega(p, u))));
  FieldMatrix k0 = m.matrix_of(iota(HeckeElt::basis(s0(p))));
  FieldMatrix k1 = m.matrix_of(iota(HeckeElt::basis(s1(p))));
  FieldMatrix z =
      FieldElt(-1, p) * m.matrix_of(HeckeElt::basis(WeylElt::omega(p, p - 1)));
  FieldMatrix zero(m.dim, m.dim, p);
  auto blocks = build_kappa2<FieldMatrix>(p, oi, k0, k1, z, 2, zero);
  Blk<FieldMatrix> sum0 = {{{zero, zero}, {zero, zero}}};
  for (std::uint32_t u = 1; u < p; ++u) {
    auto t = bmul(blocks.momega[u - 1], blocks.m0);
    for (int i = 0; i < 2; ++i)
      for (int j = 0; j < 2; ++j) sum0[i][j] = sum0[i][j] + t[i][j];
  }
  CHECK(beq(bmul(blocks.m0, blocks.m0), sum0));

  // with a vanishing central parameter the two letter blocks annihilate
  // each other in both orders
  FieldMatrix one1 = FieldMatrix::identity(1, p);
  FieldMatrix zero1(1, 1, p);
  std::vector<FieldMatrix> triv(p - 1, one1);
  auto degen = build_kappa2<FieldMatrix>(p, triv, one1, one1, zero1, 0, zero1);
  auto prod01 = bmul(degen.m0, degen.m1);
  auto prod10 = bmul(degen.m1, degen.m0);
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) {
      CHECK(prod01[i][j].is_zero());
      CHECK(prod10[i][j].is_zero());
    }

  // a non-central parameter is rejected
  FieldMatrix e01(2, 2, p);
  e01.set(0, 1, FieldElt::one(p));
  FieldMatrix diag(2, 2, p);
  diag.set(0, 0, FieldElt::one(p));
  diag.set(1, 1, FieldElt(2, p));
  std::vector<FieldMatrix> oid(p - 1, FieldMatrix::identity(2, p));
  FieldMatrix zero2(2, 2, p);
  CHECK_THROWS_WITH(build_kappa2<FieldMatrix>(p, oid, e01, e01, diag, 2, zero2),
                    Catch::Matchers::ContainsSubstring("RelationViolation"));
  std::vector<FieldMatrix> tooshort(p - 2, FieldMatrix::identity(2, p));
  CHECK_THROWS_WITH(
      build_kappa2<FieldMatrix>(p, tooshort, e01, e01, zero2, 2, zero2),
      Catch::Matchers::ContainsSubstring("DimensionMismatch"));
}

TEST_CASE("twisted action factors through the algebra relations") {
  std::uint32_t p = 5;
  DetRng rng(42);
  for (int t = 0; t < 30; ++t) {
    PMElt s = rand_pm(rng, p);
    HeckeElt x = rand_hecke(rng, p, 2, 2);
    HeckeElt y = rand_hecke(rng, p, 2, 2);
    CHECK(pm_right_act(s, x * y) == pm_right_act(pm_right_act(s, x), y));
  }
}

TEST_CASE("left and right actions commute") {
  std::uint32_t p = 5;
  DetRng rng(42);
  for (int t = 0; t < 25; ++t) {
    PMElt s = rand_pm(rng, p);
    HeckeElt x = rand_hecke(rng, p, 2, 2);
    HeckeElt y = rand_hecke(rng, p, 2, 2);
    CHECK(pm_left_act(x, pm_right_act(s, y)) ==
          pm_right_act(pm_left_act(x, s), y));
    CHECK(pm_left_act(x * y, s) == pm_left_act(x, pm_left_act(y, s)));
  }
  // componentwise description of the left action
  for (int t = 0; t < 15; ++t) {
    HeckeElt a = rand_hecke(rng, p, 2, 3), b = rand_hecke(rng, p, 2, 3);
    HeckeElt h = rand_hecke(rng, p, 2, 2);
    CHECK(pm_left_act(h, PMElt::from_hecke(a, b)) ==
          PMElt::from_hecke(h * a, h * b));
  }
  // central elements act by the grading shift on the left
  for (int t = 0; t < 10; ++t) {
    PMElt s = rand_pm(rng, p);
    CHECK(pm_left_act(zeta(p), s) == pm_zeta_shift(s, 1));
  }
}

TEST_CASE("central sandwich is the identity") {
  std::uint32_t p = 5;
  DetRng rng(42);
  for (int t = 0; t < 25; ++t) {
    PMElt s = rand_pm(rng, p);
    CHECK(pm_right_act(pm_zeta_shift(s, 1), zeta(p)) == s);
  }
}

TEST_CASE("braiding map: frozen atom images, bijectivity, right-linearity") {
  std::uint32_t p = 5;
  // frozen images of the four atom types
  CHECK(pm_beta(pml_atom(p, 0, 1, 2, 0)) ==
        FieldElt(4, p) * pm_atom(p, 0, -1, 2, 0));
  CHECK(pm_beta(pml_atom(p, 0, 1, 2, 1)) ==
        FieldElt(-4, p) * pm_atom(p, 1, -2, 3, 1));
  CHECK(pm_beta(pml_atom(p, 1, 1, 2, 0)) ==
        FieldElt(4, p) * pm_atom(p, 1, -1, 2, 0));
  CHECK(pm_beta(pml_atom(p, 1, 1, 2, 1)) ==
        FieldElt(-4, p) * pm_atom(p, 0, -2, 3, 1));

  // injective on a window of atoms, single atom to single atom
  std::set<std::tuple<int, long long, std::uint32_t, int>> seen;
  for (int side = 0; side < 2; ++side)
    for (long long j = -2; j <= 2; ++j)
      for (std::uint32_t u = 1; u < p; ++u)
        for (std::uint8_t io = 0; io <= 1; ++io) {
          PMElt img = pm_beta(pml_atom(p, side, j, u, io));
          REQUIRE(img.plus.size() + img.minus.size() == 1);
          const PMComp& comp = img.plus.empty() ? img.minus : img.plus;
          int oside = img.plus.empty() ? 1 : 0;
          CHECK(!(comp.begin()->second == FieldElt::zero(p)));
          auto key = std::make_tuple(oside, comp.begin()->first.j,
                                     comp.begin()->first.u,
                                     static_cast<int>(comp.begin()->first.io));
          CHECK(seen.insert(key).second);
        }

  // intertwines the natural right action with the twisted one
  DetRng rng(42);
  for (int t = 0; t < 25; ++t) {
    LocHeckeElt a = loc_zeta_shift(
        LocHeckeElt::from(rand_hecke(rng, p, 2, 3)),
        static_cast<long long>(rng.next(3)) - 1);
    LocHeckeElt b = loc_zeta_shift(
        LocHeckeElt::from(rand_hecke(rng, p, 2, 3)),
        static_cast<long long>(rng.next(3)) - 1);
    PMLeftElt x = PMLeftElt::from_loc(a, b);
    HeckeElt h = rand_hecke(rng, p, 2, 2);
    CHECK(pm_beta(pm_left_right_act(x, h)) == pm_right_act(pm_beta(x), h));
  }
}

TEST_CASE("normalizing twists agree with honest multiplication") {
  std::uint32_t p = 5;
  DetRng rng(42);
  for (int i = 0; i < 2; ++i) {
    HeckeElt e = e_idem(p, i == 0 ? 1 : -1);
    for (int t = 0; t < 15; ++t) {
      PMElt s = rand_pm(rng, p);
      LocHeckeElt rep = (i == 0) ? s.plus_rep() : s.minus_rep();
      LocHeckeElt twisted = rep - loc_mul(rep, LocHeckeElt::from(e)) -
                            loc_mul(rep, LocHeckeElt(1, e));
      PMElt expect = (i == 0) ? PMElt::from_loc(twisted, s.minus_rep())
                              : PMElt::from_loc(s.plus_rep(), twisted);
      CHECK(pm_delta(i, s) == expect);
    }
  }
  // the eye of the twist: on the matching idempotent class it is
  // multiplication by minus the inverse central element
  PMElt eplus = PMElt::from_hecke(e_idem(p, 1), HeckeElt::zero(p));
  CHECK(pm_delta(0, eplus) == FieldElt(-1, p) * pm_zeta_shift(eplus, -1));
  PMElt eminus = PMElt::from_hecke(HeckeElt::zero(p), e_idem(p, -1));
  CHECK(pm_delta(1, eminus) == FieldElt(-1, p) * pm_zeta_shift(eminus, -1));
}

TEST_CASE("anti-involution of the twisted pair") {
  std::uint32_t p = 5;
  PMElt up = PMElt::unit_plus(p), um = PMElt::unit_minus(p);
  LocHeckeElt zl = LocHeckeElt::zero(p);
  HeckeElt one = HeckeElt::one(p);

  // frozen unit images
  HeckeElt repp = one - ((one + zeta(p)) * e_idem(p, 1));
  HeckeElt repm = one - ((one + zeta(p)) * e_idem(p, -1));
  CHECK(pm_J(up) == PMElt::from_loc(LocHeckeElt::from(repp), zl));
  CHECK(pm_J(um) == PMElt::from_loc(zl, LocHeckeElt::from(repm)));

  DetRng rng(42);
  for (int t = 0; t < 20; ++t) {
    PMElt s = rand_pm(rng, p);
    CHECK(pm_J(pm_J(s)) == s);
    HeckeElt h = rand_hecke(rng, p, 2, 2);
    CHECK(pm_J(pm_left_act(h, s)) == pm_right_act(pm_J(s), antiJ(h)));
    CHECK(pm_J(pm_right_act(s, h)) == pm_left_act(antiJ(h), pm_J(s)));
  }
}

TEST_CASE("component swap automorphism") {
  std::uint32_t p = 5;
  CHECK(pm_gamma(PMElt::unit_plus(p)) == PMElt::unit_minus(p));
  DetRng rng(42);
  for (int t = 0; t < 20; ++t) {
    PMElt s = rand_pm(rng, p);
    CHECK(pm_gamma(pm_gamma(s)) == s);
    HeckeElt h = rand_hecke(rng, p, 2, 2);
    CHECK(pm_gamma(pm_left_act(h, s)) == pm_left_act(conj_varpi(h), pm_gamma(s)));
    CHECK(pm_gamma(pm_right_act(s, h)) ==
          pm_right_act(pm_gamma(s), conj_varpi(h)));
    CHECK(pm_gamma(pm_J(s)) == pm_J(pm_gamma(s)));
  }
}
