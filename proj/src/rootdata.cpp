#include "masurelab/rootdata.hpp"

#include <algorithm>

#include "masurelab/error.hpp"

namespace masurelab {

const char* type_name(MatrixType t) {
  switch (t) {
    case MatrixType::Finite: return "finite";
    case MatrixType::Affine: return "affine";
    case MatrixType::Indefinite: return "indefinite";
  }
  return "unknown";
}

KacMoodyMatrix KacMoodyMatrix::validate(const std::vector<IntVec>& entries) {
  std::size_t n = entries.size();
  if (n == 0) throw Error(ErrorCode::NotSquare, "matrix is empty");
  for (const auto& row : entries)
    if (row.size() != n) throw Error(ErrorCode::NotSquare, "matrix is not square");
  for (std::size_t i = 0; i < n; ++i)
    if (entries[i][i] != 2)
      throw Error(ErrorCode::BadDiagonal, "c[" + std::to_string(i) + "][" + std::to_string(i) + "] = " +
                                              std::to_string(entries[i][i]) + ", expected 2");
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      if (i != j && entries[i][j] > 0)
        throw Error(ErrorCode::PositiveOffDiagonal, "c[" + std::to_string(i) + "][" + std::to_string(j) +
                                                        "] = " + std::to_string(entries[i][j]) + " > 0");
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      if ((entries[i][j] == 0) != (entries[j][i] == 0))
        throw Error(ErrorCode::BrokenZeroSymmetry, "c[" + std::to_string(i) + "][" + std::to_string(j) +
                                                       "] and c[" + std::to_string(j) + "][" +
                                                       std::to_string(i) + "] disagree on vanishing");
  return KacMoodyMatrix(entries);
}

Rational KacMoodyMatrix::determinant() const { return masurelab::determinant(to_rational(entries_)); }

std::vector<std::vector<std::size_t>> KacMoodyMatrix::components() const {
  std::size_t n = size();
  std::vector<int> label(n, -1);
  std::vector<std::vector<std::size_t>> out;
  for (std::size_t s = 0; s < n; ++s) {
    if (label[s] >= 0) continue;
    std::vector<std::size_t> comp{s}, stack{s};
    label[s] = static_cast<int>(out.size());
    while (!stack.empty()) {
      std::size_t i = stack.back();
      stack.pop_back();
      for (std::size_t j = 0; j < n; ++j) {
        if (label[j] >= 0 || entries_[i][j] == 0) continue;
        label[j] = label[s];
        comp.push_back(j);
        stack.push_back(j);
      }
    }
    std::sort(comp.begin(), comp.end());
    out.push_back(std::move(comp));
  }
  return out;
}

namespace {

Rational principal_minor(const std::vector<IntVec>& c, const std::vector<std::size_t>& idx) {
  RatMat m(idx.size(), RatVec(idx.size()));
  for (std::size_t a = 0; a < idx.size(); ++a)
    for (std::size_t b = 0; b < idx.size(); ++b) m[a][b] = Rational(static_cast<long>(c[idx[a]][idx[b]]));
  return determinant(m);
}

}  // namespace

MatrixType KacMoodyMatrix::component_type(const std::vector<std::size_t>& component) const {
  std::size_t k = component.size();
  if (k > 20) throw Error(ErrorCode::ResourceLimit, "component too large to classify");
  bool proper_positive = true;
  for (std::uint64_t mask = 1; mask + 1 < (std::uint64_t{1} << k); ++mask) {
    std::vector<std::size_t> idx;
    for (std::size_t b = 0; b < k; ++b)
      if (mask >> b & 1) idx.push_back(component[b]);
    if (sgn(principal_minor(entries_, idx)) <= 0) {
      proper_positive = false;
      break;
    }
  }
  if (!proper_positive) return MatrixType::Indefinite;
  int full = sgn(principal_minor(entries_, component));
  if (full > 0) return MatrixType::Finite;
  if (full == 0) return MatrixType::Affine;
  return MatrixType::Indefinite;
}

bool KacMoodyMatrix::is_finite_type() const {
  for (const auto& comp : components())
    if (component_type(comp) != MatrixType::Finite) return false;
  return true;
}

RootGeneratingSystem RootGeneratingSystem::make(KacMoodyMatrix matrix, std::size_t ambient_rank,
                                                std::vector<IntVec> simple_roots,
                                                std::vector<IntVec> simple_coroots) {
  std::size_t k = matrix.size();
  if (ambient_rank == 0) throw Error(ErrorCode::InvalidRootDatum, "ambient rank must be positive");
  if (simple_roots.size() != k || simple_coroots.size() != k)
    throw Error(ErrorCode::InvalidRootDatum, "expected one simple root and one simple coroot per index");
  for (const auto& v : simple_roots)
    if (v.size() != ambient_rank) throw Error(ErrorCode::InvalidRootDatum, "simple root has wrong arity");
  for (const auto& v : simple_coroots)
    if (v.size() != ambient_rank) throw Error(ErrorCode::InvalidRootDatum, "simple coroot has wrong arity");
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t j = 0; j < k; ++j) {
      std::int64_t p = 0;
      for (std::size_t a = 0; a < ambient_rank; ++a) p += simple_roots[j][a] * simple_coroots[i][a];
      if (p != matrix(i, j))
        throw Error(ErrorCode::InvalidRootDatum, "alpha_" + std::to_string(j) + "(alpha_" + std::to_string(i) +
                                                     "^vee) = " + std::to_string(p) + " but c[" +
                                                     std::to_string(i) + "][" + std::to_string(j) +
                                                     "] = " + std::to_string(matrix(i, j)));
    }
  if (masurelab::rank(to_rational(simple_roots)) != k)
    throw Error(ErrorCode::InvalidRootDatum, "simple roots are not linearly independent");
  if (masurelab::rank(to_rational(simple_coroots)) != k)
    throw Error(ErrorCode::InvalidRootDatum, "simple coroots are not linearly independent");

  RootGeneratingSystem sys(std::move(matrix));
  sys.ambient_rank_ = ambient_rank;
  sys.roots_ = std::move(simple_roots);
  sys.coroots_ = std::move(simple_coroots);
  sys.prepare();
  return sys;
}

void RootGeneratingSystem::prepare() {
  std::size_t n = ambient_rank_, k = rank();
  coroot_columns_.assign(n, RatVec(k));
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t a = 0; a < n; ++a) coroot_columns_[a][i] = Rational(static_cast<long>(coroots_[i][a]));

  ZMat alpha = to_zmat(roots_);
  alpha_hnf_ = column_hermite(alpha, n);

  // Canonical lattice basis of Y_in: column echelon form of the kernel vectors.
  auto kernel = integer_kernel_basis(alpha, n);
  yin_basis_.clear();
  if (!kernel.empty()) {
    ZMat kt(n, ZVec(kernel.size()));
    for (std::size_t c = 0; c < kernel.size(); ++c)
      for (std::size_t a = 0; a < n; ++a) kt[a][c] = kernel[c][a];
    auto hnf = column_hermite(kt, kernel.size());
    for (std::size_t c = 0; c < hnf.rank; ++c) {
      IntVec v(n);
      for (std::size_t a = 0; a < n; ++a) v[a] = to_int64(hnf.h[a][c]);
      yin_basis_.push_back(std::move(v));
    }
  }

  // Complete with the lexicographically first ambient basis vectors.
  RatMat basis_rows;
  for (const auto& b : yin_basis_) basis_rows.push_back(to_rational(b));
  for (std::size_t a = 0; a < n && basis_rows.size() < n; ++a) {
    RatVec e(n, Rational(0));
    e[a] = 1;
    basis_rows.push_back(e);
    if (masurelab::rank(basis_rows) != basis_rows.size()) basis_rows.pop_back();
  }
  MASURELAB_ASSERT(basis_rows.size() == n);
  RatMat columns = transpose(basis_rows);
  complement_basis_inverse_.assign(n, RatVec(n));
  for (std::size_t a = 0; a < n; ++a) {
    RatVec e(n, Rational(0));
    e[a] = 1;
    auto x = solve(columns, e);
    MASURELAB_ASSERT(x.has_value());
    for (std::size_t r = 0; r < n; ++r) complement_basis_inverse_[r][a] = (*x)[r];
  }
}

Rational RootGeneratingSystem::alpha(std::size_t i, const RatVec& v) const {
  MASURELAB_ASSERT(v.size() == ambient_rank_);
  return dot(roots_[i], v);
}

RatVec RootGeneratingSystem::alpha_values(const RatVec& v) const {
  RatVec out(rank());
  for (std::size_t i = 0; i < rank(); ++i) out[i] = alpha(i, v);
  return out;
}

IntVec RootGeneratingSystem::alpha_values(const IntVec& v) const {
  MASURELAB_ASSERT(v.size() == ambient_rank_);
  IntVec out(rank(), 0);
  for (std::size_t i = 0; i < rank(); ++i)
    for (std::size_t a = 0; a < ambient_rank_; ++a) out[i] += roots_[i][a] * v[a];
  return out;
}

RatVec RootGeneratingSystem::coroot_vector(const RatVec& coeffs) const {
  MASURELAB_ASSERT(coeffs.size() == rank());
  return masurelab::apply(coroot_columns_, coeffs);
}

std::optional<RatVec> RootGeneratingSystem::qvee_decompose(const RatVec& v) const {
  if (v.size() != ambient_rank_) throw Error(ErrorCode::InvalidArgument, "vector has wrong arity");
  return solve(coroot_columns_, v);
}

RatVec RootGeneratingSystem::qvee_coords(const RatVec& v) const {
  auto x = qvee_decompose(v);
  if (!x) throw Error(ErrorCode::NotInQveeSpan, to_string(v) + " is not in the span of the simple coroots");
  return *x;
}

Rational RootGeneratingSystem::height(const RatVec& v) const { return sum(qvee_coords(v)); }

bool RootGeneratingSystem::qvee_leq(const RatVec& x, const RatVec& y, Cone cone) const {
  auto c = qvee_decompose(sub(y, x));
  if (!c) return false;
  for (const auto& ci : *c) {
    if (sgn(ci) < 0) return false;
    if (cone == Cone::Integer && !is_integer(ci)) return false;
  }
  return true;
}

bool RootGeneratingSystem::is_dominant(const RatVec& v) const { return all_nonnegative(alpha_values(v)); }

bool RootGeneratingSystem::is_strictly_dominant(const RatVec& v) const {
  for (const auto& a : alpha_values(v))
    if (sgn(a) <= 0) return false;
  return true;
}

bool RootGeneratingSystem::in_y_plus_vin(const RatVec& v) const {
  if (v.size() != ambient_rank_) return false;
  RatVec a = alpha_values(v);
  if (!is_integral(a)) return false;
  ZVec target;
  for (const auto& x : a) target.push_back(x.get_num());
  return integer_preimage(alpha_hnf_, target).has_value();
}

InessentialSplit RootGeneratingSystem::inessential_decompose(const RatVec& v) const {
  if (v.size() != ambient_rank_) throw Error(ErrorCode::InvalidArgument, "vector has wrong arity");
  RatVec a = alpha_values(v);
  if (!is_integral(a)) throw Error(ErrorCode::NotInYPlusVin, to_string(v) + " has non-integral root values");
  ZVec target;
  for (const auto& x : a) target.push_back(x.get_num());
  auto pre = integer_preimage(alpha_hnf_, target);
  if (!pre) throw Error(ErrorCode::NotInYPlusVin, "root values of " + to_string(v) + " are not attained on Y");

  ZVec lattice = *pre;
  RatVec rest = sub(v, to_ratvec(lattice));
  RatVec coords = masurelab::apply(complement_basis_inverse_, rest);
  for (std::size_t j = 0; j < yin_basis_.size(); ++j) {
    Integer shift = floor(coords[j]);
    if (sgn(shift) == 0) continue;
    for (std::size_t c = 0; c < ambient_rank_; ++c) lattice[c] += shift * Integer(static_cast<long>(yin_basis_[j][c]));
  }
  InessentialSplit out;
  out.lattice = to_intvec(lattice);
  out.inessential = sub(v, to_rational(out.lattice));
  MASURELAB_ASSERT(is_zero(alpha_values(out.inessential)));
  return out;
}

RatVec RootGeneratingSystem::yin_coordinates(const RatVec& v) const {
  RatVec coords = masurelab::apply(complement_basis_inverse_, v);
  coords.resize(yin_basis_.size());
  return coords;
}

IntVec RootGeneratingSystem::yin_reduce(const IntVec& y) const {
  RatVec coords = yin_coordinates(to_rational(y));
  IntVec out = y;
  for (std::size_t j = 0; j < yin_basis_.size(); ++j) {
    std::int64_t shift = to_int64(floor(coords[j]));
    for (std::size_t c = 0; c < ambient_rank_; ++c) out[c] -= shift * yin_basis_[j][c];
  }
  return out;
}

RootGeneratingSystem canonical_datum(const KacMoodyMatrix& m) {
  std::size_t k = m.size();
  std::vector<IntVec> roots(k, IntVec(2 * k, 0)), coroots(k, IntVec(2 * k, 0));
  for (std::size_t i = 0; i < k; ++i) {
    roots[i][i] = 1;
    for (std::size_t j = 0; j < k; ++j) coroots[i][j] = m(i, j);
    coroots[i][i + k] = 1;
  }
  return RootGeneratingSystem::make(m, 2 * k, std::move(roots), std::move(coroots));
}

RootGeneratingSystem simply_connected_datum(const KacMoodyMatrix& m) {
  std::size_t k = m.size();
  if (sgn(m.determinant()) == 0)
    throw Error(ErrorCode::InvalidRootDatum, "simply-connected datum needs an invertible matrix");
  std::vector<IntVec> roots(k, IntVec(k, 0)), coroots(k, IntVec(k, 0));
  for (std::size_t i = 0; i < k; ++i) {
    coroots[i][i] = 1;
    for (std::size_t j = 0; j < k; ++j) roots[j][i] = m(i, j);
  }
  return RootGeneratingSystem::make(m, k, std::move(roots), std::move(coroots));
}

RootGeneratingSystem make_datum(const KacMoodyMatrix& m, DatumKind kind) {
  switch (kind) {
    case DatumKind::Canonical: return canonical_datum(m);
    case DatumKind::SimplyConnected: return simply_connected_datum(m);
    case DatumKind::Auto: break;
  }
  return sgn(m.determinant()) != 0 ? simply_connected_datum(m) : canonical_datum(m);
}

}  // namespace masurelab
