#pragma once

#include <algorithm>
#include <cstdint>
#include <optional>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

namespace iwext {

/**
 * Exact arithmetic over the prime field F_p (p >= 5) together with the
 * small dense linear algebra used everywhere else: reduced row echelon
 * form with deterministic first-nonzero pivoting, nullspace bases and
 * linear solves.  Everything is a plain value; operations never mutate
 * their inputs.
 */

inline bool is_prime_u32(std::uint32_t n) {
  if (n < 2) return false;
  for (std::uint64_t d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

struct FieldElt {
  std::uint32_t v{0};  // canonical representative in 0..p-1
  std::uint32_t p{0};

  FieldElt() = default;

  FieldElt(long long value, std::uint32_t prime) : p(prime) {
    check_prime(prime);
    long long r = value % static_cast<long long>(prime);
    if (r < 0) r += prime;
    v = static_cast<std::uint32_t>(r);
  }

  static void check_prime(std::uint32_t prime) {
    if (prime < 5 || !is_prime_u32(prime))
      throw std::invalid_argument("InvalidPrime: need a prime p >= 5, got " +
                                  std::to_string(prime));
  }

  static FieldElt zero(std::uint32_t prime) { return FieldElt(0, prime); }
  static FieldElt one(std::uint32_t prime) { return FieldElt(1, prime); }

  bool is_zero() const { return v == 0; }
  std::uint32_t rep() const { return v; }

  void require_same(const FieldElt& o) const {
    if (p != o.p)
      throw std::invalid_argument("FieldMismatch: operands over F_" +
                                  std::to_string(p) + " and F_" +
                                  std::to_string(o.p));
  }

  friend FieldElt operator+(const FieldElt& a, const FieldElt& b) {
    a.require_same(b);
    std::uint32_t s = a.v + b.v;
    if (s >= a.p) s -= a.p;
    return raw(s, a.p);
  }

  friend FieldElt operator-(const FieldElt& a, const FieldElt& b) {
    a.require_same(b);
    std::uint32_t s = a.v + a.p - b.v;
    if (s >= a.p) s -= a.p;
    return raw(s, a.p);
  }

  friend FieldElt operator*(const FieldElt& a, const FieldElt& b) {
    a.require_same(b);
    return raw(static_cast<std::uint32_t>(
                   (static_cast<std::uint64_t>(a.v) * b.v) % a.p),
               a.p);
  }

  FieldElt operator-() const { return raw(v == 0 ? 0 : p - v, p); }

  friend bool operator==(const FieldElt& a, const FieldElt& b) {
    return a.p == b.p && a.v == b.v;
  }
  friend bool operator!=(const FieldElt& a, const FieldElt& b) {
    return !(a == b);
  }

  /** Multiplicative inverse; inverting zero is a domain error. */
  FieldElt inv() const {
    if (v == 0) throw std::domain_error("ZeroInverse: 0 has no inverse in F_p");
    return pow(static_cast<long long>(p) - 2);
  }

  FieldElt pow(long long e) const {
    if (e < 0) return inv().pow(-e);
    std::uint64_t base = v, acc = 1;
    std::uint64_t k = static_cast<std::uint64_t>(e);
    while (k) {
      if (k & 1) acc = (acc * base) % p;
      base = (base * base) % p;
      k >>= 1;
    }
    return raw(static_cast<std::uint32_t>(acc), p);
  }

  static FieldElt raw(std::uint32_t value, std::uint32_t prime) {
    FieldElt e;
    e.v = value;
    e.p = prime;
    return e;
  }
};

using FieldVec = std::vector<FieldElt>;

inline FieldVec zero_vec(std::size_t n, std::uint32_t p) {
  return FieldVec(n, FieldElt::zero(p));
}

inline bool is_zero_vec(const FieldVec& v) {
  return std::all_of(v.begin(), v.end(),
                     [](const FieldElt& e) { return e.is_zero(); });
}

struct FieldMatrix {
  std::uint32_t rows{0}, cols{0}, p{0};
  std::vector<std::uint32_t> a;  // row-major representatives

  FieldMatrix() = default;

  FieldMatrix(std::uint32_t r, std::uint32_t c, std::uint32_t prime)
      : rows(r), cols(c), p(prime), a(static_cast<std::size_t>(r) * c, 0) {
    FieldElt::check_prime(prime);
  }

  static FieldMatrix identity(std::uint32_t n, std::uint32_t prime) {
    FieldMatrix m(n, n, prime);
    for (std::uint32_t i = 0; i < n; ++i) m.set(i, i, FieldElt::one(prime));
    return m;
  }

  FieldElt at(std::uint32_t i, std::uint32_t j) const {
    return FieldElt::raw(a[static_cast<std::size_t>(i) * cols + j], p);
  }

  void set(std::uint32_t i, std::uint32_t j, const FieldElt& e) {
    if (e.p != p) throw std::invalid_argument("FieldMismatch: set() entry");
    a[static_cast<std::size_t>(i) * cols + j] = e.v;
  }

  friend bool operator==(const FieldMatrix& x, const FieldMatrix& y) {
    return x.rows == y.rows && x.cols == y.cols && x.p == y.p && x.a == y.a;
  }

  friend FieldMatrix operator*(const FieldMatrix& x, const FieldMatrix& y) {
    if (x.p != y.p) throw std::invalid_argument("FieldMismatch: matrix mul");
    if (x.cols != y.rows)
      throw std::invalid_argument("DimensionMismatch: " +
                                  std::to_string(x.cols) + " vs " +
                                  std::to_string(y.rows));
    FieldMatrix z(x.rows, y.cols, x.p);
    for (std::uint32_t i = 0; i < x.rows; ++i)
      for (std::uint32_t k = 0; k < x.cols; ++k) {
        std::uint64_t xv = x.a[static_cast<std::size_t>(i) * x.cols + k];
        if (!xv) continue;
        for (std::uint32_t j = 0; j < y.cols; ++j) {
          std::uint64_t acc = z.a[static_cast<std::size_t>(i) * z.cols + j];
          acc += xv * y.a[static_cast<std::size_t>(k) * y.cols + j] % x.p;
          z.a[static_cast<std::size_t>(i) * z.cols + j] =
              static_cast<std::uint32_t>(acc % x.p);
        }
      }
    return z;
  }

  friend FieldMatrix operator+(const FieldMatrix& x, const FieldMatrix& y) {
    if (x.p != y.p) throw std::invalid_argument("FieldMismatch: matrix add");
    if (x.rows != y.rows || x.cols != y.cols)
      throw std::invalid_argument("DimensionMismatch: matrix add");
    FieldMatrix z = x;
    for (std::size_t i = 0; i < z.a.size(); ++i) {
      std::uint32_t s = z.a[i] + y.a[i];
      if (s >= x.p) s -= x.p;
      z.a[i] = s;
    }
    return z;
  }

  friend FieldMatrix operator-(const FieldMatrix& x, const FieldMatrix& y) {
    if (x.p != y.p) throw std::invalid_argument("FieldMismatch: matrix sub");
    if (x.rows != y.rows || x.cols != y.cols)
      throw std::invalid_argument("DimensionMismatch: matrix sub");
    FieldMatrix z = x;
    for (std::size_t i = 0; i < z.a.size(); ++i) {
      std::uint32_t s = z.a[i] + x.p - y.a[i];
      if (s >= x.p) s -= x.p;
      z.a[i] = s;
    }
    return z;
  }

  FieldMatrix scale(const FieldElt& c) const {
    if (c.p != p) throw std::invalid_argument("FieldMismatch: matrix scale");
    FieldMatrix z = *this;
    for (auto& e : z.a)
      e = static_cast<std::uint32_t>(static_cast<std::uint64_t>(e) * c.v % p);
    return z;
  }

  friend FieldMatrix operator*(const FieldElt& c, const FieldMatrix& x) {
    return x.scale(c);
  }

  bool is_zero() const {
    return std::all_of(a.begin(), a.end(), [](std::uint32_t x) { return !x; });
  }

  FieldVec apply(const FieldVec& v) const {
    if (v.size() != cols)
      throw std::invalid_argument("DimensionMismatch: apply()");
    FieldVec out = zero_vec(rows, p);
    for (std::uint32_t i = 0; i < rows; ++i) {
      std::uint64_t acc = 0;
      for (std::uint32_t j = 0; j < cols; ++j)
        acc += static_cast<std::uint64_t>(
                   a[static_cast<std::size_t>(i) * cols + j]) *
               v[j].v % p;
      out[i] = FieldElt::raw(static_cast<std::uint32_t>(acc % p), p);
    }
    return out;
  }

  struct Echelon;

  /**
   * Reduced row echelon form.  Pivot choice is deterministic: scan columns
   * left to right and take the first row with a nonzero entry.
   */
  Echelon rref() const;

  std::uint32_t rank() const;

  /**
   * Basis of the right kernel; one vector per free column, with the free
   * variable set to 1.  Always returns exactly cols - rank vectors, in
   * increasing order of the free column index.
   */
  std::vector<FieldVec> nullspace() const;

  /**
   * One solution of M x = b, or nullopt exactly when b is outside the
   * column space.  Free variables are set to 0, so the answer is the
   * deterministic echelon solution.
   */
  std::optional<FieldVec> solve(const FieldVec& b) const;
};

struct FieldMatrix::Echelon {
  FieldMatrix r;                       // reduced row echelon form
  std::vector<std::uint32_t> pivots;   // pivot column per echelon row
  std::uint32_t rank{0};
};

inline FieldMatrix::Echelon FieldMatrix::rref() const {
  Echelon e{*this, {}, 0};
  FieldMatrix& m = e.r;
  std::uint32_t row = 0;
  for (std::uint32_t col = 0; col < cols && row < rows; ++col) {
    std::uint32_t pr = row;
    while (pr < rows && m.at(pr, col).is_zero()) ++pr;
    if (pr == rows) continue;
    if (pr != row)
      for (std::uint32_t j = 0; j < cols; ++j) {
        std::swap(m.a[static_cast<std::size_t>(pr) * cols + j],
                  m.a[static_cast<std::size_t>(row) * cols + j]);
      }
    FieldElt piv_inv = m.at(row, col).inv();
    for (std::uint32_t j = col; j < cols; ++j)
      m.set(row, j, m.at(row, j) * piv_inv);
    for (std::uint32_t i = 0; i < rows; ++i) {
      if (i == row) continue;
      FieldElt f = m.at(i, col);
      if (f.is_zero()) continue;
      for (std::uint32_t j = col; j < cols; ++j)
        m.set(i, j, m.at(i, j) - f * m.at(row, j));
    }
    e.pivots.push_back(col);
    ++row;
  }
  e.rank = row;
  return e;
}

inline std::uint32_t FieldMatrix::rank() const { return rref().rank; }

inline std::vector<FieldVec> FieldMatrix::nullspace() const {
  Echelon e = rref();
  std::vector<bool> is_pivot(cols, false);
  for (auto c : e.pivots) is_pivot[c] = true;
  std::vector<FieldVec> basis;
  for (std::uint32_t fc = 0; fc < cols; ++fc) {
    if (is_pivot[fc]) continue;
    FieldVec v = zero_vec(cols, p);
    v[fc] = FieldElt::one(p);
    for (std::uint32_t r = 0; r < e.rank; ++r)
      v[e.pivots[r]] = -e.r.at(r, fc);
    basis.push_back(std::move(v));
  }
  return basis;
}

inline std::optional<FieldVec> FieldMatrix::solve(const FieldVec& b) const {
  if (b.size() != rows)
    throw std::invalid_argument("DimensionMismatch: solve() rhs length " +
                                std::to_string(b.size()) + " vs rows " +
                                std::to_string(rows));
  FieldMatrix aug(rows, cols + 1, p);
  for (std::uint32_t i = 0; i < rows; ++i) {
    for (std::uint32_t j = 0; j < cols; ++j) aug.set(i, j, at(i, j));
    if (b[i].p != p) throw std::invalid_argument("FieldMismatch: solve rhs");
    aug.set(i, cols, b[i]);
  }
  Echelon e = aug.rref();
  for (std::uint32_t r = 0; r < e.rank; ++r)
    if (e.pivots[r] == cols) return std::nullopt;  // row (0 .. 0 | 1)
  FieldVec x = zero_vec(cols, p);
  for (std::uint32_t r = 0; r < e.rank; ++r)
    x[e.pivots[r]] = e.r.at(r, cols);
  return x;
}

/** Dense polynomials over F_p, ascending coefficients, no trailing zeros. */
struct FpPoly {
  std::uint32_t p{0};
  std::vector<std::uint32_t> c;

  FpPoly() = default;
  explicit FpPoly(std::uint32_t prime) : p(prime) {
    FieldElt::check_prime(prime);
  }

  static FpPoly zero(std::uint32_t prime) { return FpPoly(prime); }

  static FpPoly constant(const FieldElt& e) {
    FpPoly q(e.p);
    if (!e.is_zero()) q.c = {e.v};
    return q;
  }

  static FpPoly x(std::uint32_t prime) {
    FpPoly q(prime);
    q.c = {0, 1};
    return q;
  }

  /** Build from ascending integer coefficients. */
  static FpPoly from(std::uint32_t prime, std::initializer_list<long long> cs) {
    FpPoly q(prime);
    for (long long v : cs) q.c.push_back(FieldElt(v, prime).v);
    q.trim();
    return q;
  }

  void trim() {
    while (!c.empty() && c.back() == 0) c.pop_back();
  }

  bool is_zero() const { return c.empty(); }
  int degree() const { return static_cast<int>(c.size()) - 1; }

  FieldElt coeff(std::size_t i) const {
    return FieldElt::raw(i < c.size() ? c[i] : 0, p);
  }

  friend bool operator==(const FpPoly& a, const FpPoly& b) {
    return a.p == b.p && a.c == b.c;
  }

  friend FpPoly operator+(const FpPoly& a, const FpPoly& b) {
    if (a.p != b.p) throw std::invalid_argument("FieldMismatch: poly add");
    FpPoly q(a.p);
    q.c.resize(std::max(a.c.size(), b.c.size()), 0);
    for (std::size_t i = 0; i < q.c.size(); ++i) {
      std::uint32_t s = (i < a.c.size() ? a.c[i] : 0);
      s += (i < b.c.size() ? b.c[i] : 0);
      if (s >= a.p) s -= a.p;
      q.c[i] = s;
    }
    q.trim();
    return q;
  }

  friend FpPoly operator-(const FpPoly& a, const FpPoly& b) {
    if (a.p != b.p) throw std::invalid_argument("FieldMismatch: poly sub");
    FpPoly q(a.p);
    q.c.resize(std::max(a.c.size(), b.c.size()), 0);
    for (std::size_t i = 0; i < q.c.size(); ++i) {
      std::uint32_t s = (i < a.c.size() ? a.c[i] : 0) + a.p -
                        (i < b.c.size() ? b.c[i] : 0);
      if (s >= a.p) s -= a.p;
      q.c[i] = s;
    }
    q.trim();
    return q;
  }

  friend FpPoly operator*(const FpPoly& a, const FpPoly& b) {
    if (a.p != b.p) throw std::invalid_argument("FieldMismatch: poly mul");
    FpPoly q(a.p);
    if (a.is_zero() || b.is_zero()) return q;
    q.c.assign(a.c.size() + b.c.size() - 1, 0);
    for (std::size_t i = 0; i < a.c.size(); ++i) {
      if (!a.c[i]) continue;
      for (std::size_t j = 0; j < b.c.size(); ++j) {
        std::uint64_t acc = q.c[i + j];
        acc += static_cast<std::uint64_t>(a.c[i]) * b.c[j] % a.p;
        q.c[i + j] = static_cast<std::uint32_t>(acc % a.p);
      }
    }
    q.trim();
    return q;
  }

  FpPoly scale(const FieldElt& e) const {
    return (*this) * FpPoly::constant(e);
  }

  FpPoly operator-() const { return FpPoly::zero(p) - *this; }

  /** Multiply by X^k. */
  FpPoly shift(std::size_t k) const {
    if (is_zero()) return *this;
    FpPoly q(p);
    q.c.assign(c.size() + k, 0);
    std::copy(c.begin(), c.end(), q.c.begin() + static_cast<long>(k));
    return q;
  }

  FieldElt eval(const FieldElt& at) const {
    if (at.p != p) throw std::invalid_argument("FieldMismatch: poly eval");
    FieldElt acc = FieldElt::zero(p);
    for (std::size_t i = c.size(); i-- > 0;)
      acc = acc * at + FieldElt::raw(c[i], p);
    return acc;
  }

  struct DivMod;

  DivMod divmod(const FpPoly& d) const;

  bool divisible_by_x() const { return is_zero() || c[0] == 0; }

  FpPoly div_x() const {
    if (!divisible_by_x())
      throw std::domain_error("NotDivisible: polynomial has nonzero constant term");
    FpPoly q(p);
    if (c.size() > 1) q.c.assign(c.begin() + 1, c.end());
    return q;
  }
};

struct FpPoly::DivMod {
  FpPoly q, r;
};

inline FpPoly::DivMod FpPoly::divmod(const FpPoly& d) const {
  if (d.is_zero()) throw std::domain_error("ZeroInverse: division by zero polynomial");
  FpPoly r = *this, q(p);
  q.c.assign(
      r.degree() >= d.degree() ? static_cast<std::size_t>(r.degree() - d.degree() + 1) : 0,
      0);
  FieldElt lead_inv = FieldElt::raw(d.c.back(), p).inv();
  while (!r.is_zero() && r.degree() >= d.degree()) {
    std::size_t k = static_cast<std::size_t>(r.degree() - d.degree());
    FieldElt f = FieldElt::raw(r.c.back(), p) * lead_inv;
    q.c[k] = f.v;
    r = r - d.shift(k).scale(f);
  }
  q.trim();
  return {q, r};
}

/**
 * Deterministic random stream for property checks.  std::mt19937 has a
 * standard-mandated sequence, and draws are reduced by plain modulo so the
 * stream is identical on every platform.
 */
struct DetRng {
  std::mt19937 gen;
  explicit DetRng(std::uint32_t seed) : gen(seed) {}

  std::uint32_t next(std::uint32_t bound) {  // uniform-ish in 0..bound-1
    if (bound == 0) throw std::invalid_argument("DetRng: zero bound");
    return gen() % bound;
  }
};

}  // namespace iwext
