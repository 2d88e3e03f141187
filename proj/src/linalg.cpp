#include "masurelab/linalg.hpp"

#include <numeric>
#include <utility>

#include "masurelab/error.hpp"

namespace masurelab {

RatMat to_rational(const std::vector<IntVec>& m) {
  RatMat out;
  out.reserve(m.size());
  for (const auto& row : m) out.push_back(to_rational(row));
  return out;
}

ZMat to_zmat(const std::vector<IntVec>& m) {
  ZMat out;
  out.reserve(m.size());
  for (const auto& row : m) out.push_back(to_zvec(row));
  return out;
}

RatMat transpose(const RatMat& m) {
  if (m.empty()) return {};
  RatMat out(m[0].size(), RatVec(m.size()));
  for (std::size_t i = 0; i < m.size(); ++i)
    for (std::size_t j = 0; j < m[i].size(); ++j) out[j][i] = m[i][j];
  return out;
}

RatMat identity_matrix(std::size_t n) {
  RatMat out(n, RatVec(n, Rational(0)));
  for (std::size_t i = 0; i < n; ++i) out[i][i] = 1;
  return out;
}

RatMat multiply(const RatMat& a, const RatMat& b) {
  if (a.empty()) return {};
  std::size_t inner = b.size();
  std::size_t cols = inner ? b[0].size() : 0;
  RatMat out(a.size(), RatVec(cols, Rational(0)));
  for (std::size_t i = 0; i < a.size(); ++i) {
    MASURELAB_ASSERT(a[i].size() == inner);
    for (std::size_t k = 0; k < inner; ++k) {
      if (sgn(a[i][k]) == 0) continue;
      for (std::size_t j = 0; j < cols; ++j) out[i][j] += a[i][k] * b[k][j];
    }
  }
  return out;
}

RatVec apply(const RatMat& m, const RatVec& v) {
  RatVec out(m.size(), Rational(0));
  for (std::size_t i = 0; i < m.size(); ++i) out[i] = dot(m[i], v);
  return out;
}

namespace {

// Reduced row echelon form in place; returns pivot columns.
std::vector<std::size_t> rref(RatMat& m, std::size_t cols) {
  std::vector<std::size_t> pivots;
  std::size_t row = 0;
  for (std::size_t c = 0; c < cols && row < m.size(); ++c) {
    std::size_t p = row;
    while (p < m.size() && sgn(m[p][c]) == 0) ++p;
    if (p == m.size()) continue;
    std::swap(m[p], m[row]);
    Rational inv = 1 / m[row][c];
    for (auto& x : m[row]) x *= inv;
    for (std::size_t r = 0; r < m.size(); ++r) {
      if (r == row || sgn(m[r][c]) == 0) continue;
      Rational f = m[r][c];
      for (std::size_t j = 0; j < m[r].size(); ++j) m[r][j] -= f * m[row][j];
    }
    pivots.push_back(c);
    ++row;
  }
  return pivots;
}

}  // namespace

std::size_t rank(const RatMat& m) {
  if (m.empty()) return 0;
  RatMat copy = m;
  return rref(copy, m[0].size()).size();
}

Rational determinant(const RatMat& m) {
  std::size_t n = m.size();
  RatMat a = m;
  Rational det = 1;
  for (std::size_t c = 0; c < n; ++c) {
    MASURELAB_ASSERT(a[c].size() == n);
    std::size_t p = c;
    while (p < n && sgn(a[p][c]) == 0) ++p;
    if (p == n) return 0;
    if (p != c) {
      std::swap(a[p], a[c]);
      det = -det;
    }
    det *= a[c][c];
    for (std::size_t r = c + 1; r < n; ++r) {
      if (sgn(a[r][c]) == 0) continue;
      Rational f = a[r][c] / a[c][c];
      for (std::size_t j = c; j < n; ++j) a[r][j] -= f * a[c][j];
    }
  }
  return det;
}

std::optional<RatVec> solve(const RatMat& m, const RatVec& b) {
  MASURELAB_ASSERT(m.size() == b.size());
  if (m.empty()) return RatVec{};
  std::size_t cols = m[0].size();
  RatMat aug = m;
  for (std::size_t i = 0; i < aug.size(); ++i) aug[i].push_back(b[i]);
  auto pivots = rref(aug, cols);
  for (std::size_t r = pivots.size(); r < aug.size(); ++r)
    if (sgn(aug[r][cols]) != 0) return std::nullopt;
  RatVec x(cols, Rational(0));
  for (std::size_t r = 0; r < pivots.size(); ++r) x[pivots[r]] = aug[r][cols];
  return x;
}

std::vector<RatVec> kernel_basis(const RatMat& m, std::size_t cols) {
  RatMat a = m;
  auto pivots = rref(a, cols);
  std::vector<bool> is_pivot(cols, false);
  for (auto p : pivots) is_pivot[p] = true;
  std::vector<RatVec> basis;
  for (std::size_t f = 0; f < cols; ++f) {
    if (is_pivot[f]) continue;
    RatVec v(cols, Rational(0));
    v[f] = 1;
    for (std::size_t r = 0; r < pivots.size(); ++r) v[pivots[r]] = -a[r][f];
    basis.push_back(std::move(v));
  }
  return basis;
}

ColumnHermite column_hermite(const ZMat& a, std::size_t cols) {
  ColumnHermite out;
  out.h = a;
  std::size_t rows = a.size();
  out.u.assign(cols, ZVec(cols, Integer(0)));
  for (std::size_t i = 0; i < cols; ++i) out.u[i][i] = 1;

  auto& h = out.h;
  auto& u = out.u;
  // Column operation: (c1, c2) <- (x c1 + y c2, z c1 + w c2).
  auto combine = [&](std::size_t c1, std::size_t c2, const Integer& x, const Integer& y,
                     const Integer& z, const Integer& w) {
    for (std::size_t r = 0; r < rows; ++r) {
      Integer a1 = h[r][c1], a2 = h[r][c2];
      h[r][c1] = x * a1 + y * a2;
      h[r][c2] = z * a1 + w * a2;
    }
    for (std::size_t r = 0; r < cols; ++r) {
      Integer a1 = u[r][c1], a2 = u[r][c2];
      u[r][c1] = x * a1 + y * a2;
      u[r][c2] = z * a1 + w * a2;
    }
  };

  std::size_t k = 0;
  for (std::size_t r = 0; r < rows && k < cols; ++r) {
    for (std::size_t c = k + 1; c < cols; ++c) {
      if (sgn(h[r][c]) == 0) continue;
      if (sgn(h[r][k]) == 0) {
        combine(k, c, 0, 1, 1, 0);
        continue;
      }
      Integer g, s, t;
      mpz_gcdext(g.get_mpz_t(), s.get_mpz_t(), t.get_mpz_t(), h[r][k].get_mpz_t(), h[r][c].get_mpz_t());
      Integer ak = h[r][k] / g, ac = h[r][c] / g;
      // det [[s, -ac], [t, ak]] = s*ak + t*ac = 1
      combine(k, c, s, t, -ac, ak);
    }
    if (sgn(h[r][k]) == 0) continue;
    if (sgn(h[r][k]) < 0) {
      for (std::size_t i = 0; i < rows; ++i) h[i][k] = -h[i][k];
      for (std::size_t i = 0; i < cols; ++i) u[i][k] = -u[i][k];
    }
    out.pivot_rows.push_back(r);
    ++k;
  }
  out.rank = k;
  return out;
}

std::vector<ZVec> integer_kernel_basis(const ZMat& a, std::size_t cols) {
  auto hnf = column_hermite(a, cols);
  std::vector<ZVec> basis;
  for (std::size_t c = hnf.rank; c < cols; ++c) {
    ZVec v(cols);
    for (std::size_t r = 0; r < cols; ++r) v[r] = hnf.u[r][c];
    basis.push_back(std::move(v));
  }
  return basis;
}

std::optional<ZVec> integer_preimage(const ColumnHermite& hnf, const ZVec& b) {
  std::size_t rows = hnf.h.size();
  std::size_t cols = hnf.u.size();
  MASURELAB_ASSERT(b.size() == rows);
  ZVec y(cols, Integer(0));
  ZVec residual = b;
  for (std::size_t k = 0; k < hnf.rank; ++k) {
    std::size_t r = hnf.pivot_rows[k];
    // Rows strictly between pivots must already vanish.
    const Integer& piv = hnf.h[r][k];
    if (!mpz_divisible_p(residual[r].get_mpz_t(), piv.get_mpz_t())) return std::nullopt;
    y[k] = residual[r] / piv;
    for (std::size_t i = 0; i < rows; ++i) residual[i] -= y[k] * hnf.h[i][k];
  }
  for (const auto& x : residual)
    if (sgn(x) != 0) return std::nullopt;
  ZVec x(cols, Integer(0));
  for (std::size_t r = 0; r < cols; ++r)
    for (std::size_t k = 0; k < hnf.rank; ++k) x[r] += hnf.u[r][k] * y[k];
  return x;
}

std::optional<ZVec> integer_preimage(const ZMat& a, std::size_t cols, const ZVec& b) {
  return integer_preimage(column_hermite(a, cols), b);
}

Integer lattice_exponent(const ColumnHermite& hnf) {
  std::size_t m = hnf.h.size();
  if (hnf.rank != m) throw Error(ErrorCode::InvalidArgument, "lattice is not of full rank");
  RatMat square(m, RatVec(m));
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < m; ++j) square[i][j] = Rational(hnf.h[i][j]);
  Integer d = 1;
  for (std::size_t i = 0; i < m; ++i) {
    RatVec e(m, Rational(0));
    e[i] = 1;
    auto x = solve(square, e);
    MASURELAB_ASSERT(x.has_value());
    for (const auto& v : *x) {
      Integer den = v.get_den();
      mpz_lcm(d.get_mpz_t(), d.get_mpz_t(), den.get_mpz_t());
    }
  }
  return d;
}

ZVec to_zvec(const IntVec& v) {
  ZVec out;
  out.reserve(v.size());
  for (auto x : v) out.emplace_back(static_cast<long>(x));
  return out;
}

IntVec to_intvec(const ZVec& v) {
  IntVec out;
  out.reserve(v.size());
  for (const auto& x : v) out.push_back(to_int64(x));
  return out;
}

RatVec to_ratvec(const ZVec& v) {
  RatVec out;
  out.reserve(v.size());
  for (const auto& x : v) out.emplace_back(x);
  return out;
}

}  // namespace masurelab
