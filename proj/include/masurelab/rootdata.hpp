#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "masurelab/linalg.hpp"
#include "masurelab/rational.hpp"

namespace masurelab {

enum class MatrixType { Finite, Affine, Indefinite };

const char* type_name(MatrixType t);

class KacMoodyMatrix {
public:
  // Checks squareness, then the three axioms in order; the error names the
  // first violation found.
  static KacMoodyMatrix validate(const std::vector<IntVec>& entries);

  std::size_t size() const { return entries_.size(); }
  std::int64_t operator()(std::size_t i, std::size_t j) const { return entries_[i][j]; }
  const std::vector<IntVec>& entries() const { return entries_; }

  Rational determinant() const;

  // Connected components of the Dynkin graph, each sorted, ordered by least index.
  std::vector<std::vector<std::size_t>> components() const;
  MatrixType component_type(const std::vector<std::size_t>& component) const;
  bool is_finite_type() const;

private:
  explicit KacMoodyMatrix(std::vector<IntVec> entries) : entries_(std::move(entries)) {}
  std::vector<IntVec> entries_;
};

enum class Cone { Integer, Real };

struct InessentialSplit {
  RatVec inessential;  // in V_in
  IntVec lattice;      // in Y
};

class RootGeneratingSystem {
public:
  // Validates the pairing and the freeness of both families.
  static RootGeneratingSystem make(KacMoodyMatrix matrix, std::size_t ambient_rank,
                                   std::vector<IntVec> simple_roots,
                                   std::vector<IntVec> simple_coroots);

  const KacMoodyMatrix& matrix() const { return matrix_; }
  std::size_t rank() const { return matrix_.size(); }
  std::size_t ambient_rank() const { return ambient_rank_; }
  const std::vector<IntVec>& simple_roots() const { return roots_; }
  const std::vector<IntVec>& simple_coroots() const { return coroots_; }
  std::int64_t pairing(std::size_t i, std::size_t j) const { return matrix_(i, j); }  // alpha_j(alpha_i^vee)

  Rational alpha(std::size_t i, const RatVec& v) const;
  RatVec alpha_values(const RatVec& v) const;
  IntVec alpha_values(const IntVec& v) const;
  RatVec coroot_vector(const RatVec& coeffs) const;  // sum x_i alpha_i^vee

  std::optional<RatVec> qvee_decompose(const RatVec& v) const;
  RatVec qvee_coords(const RatVec& v) const;  // throws NotInQveeSpan
  Rational height(const RatVec& v) const;     // throws NotInQveeSpan
  bool qvee_leq(const RatVec& x, const RatVec& y, Cone cone = Cone::Integer) const;

  bool is_dominant(const RatVec& v) const;
  bool is_strictly_dominant(const RatVec& v) const;

  // Lattice basis of Y cap V_in, each vector with first nonzero entry positive.
  const std::vector<IntVec>& yin_basis() const { return yin_basis_; }
  bool in_y_plus_vin(const RatVec& v) const;
  InessentialSplit inessential_decompose(const RatVec& v) const;

  // Coordinates along yin_basis() of the V_in component in the fixed splitting.
  RatVec yin_coordinates(const RatVec& v) const;
  // y shifted by Y_in so that its yin_coordinates lie in [0, 1).
  IntVec yin_reduce(const IntVec& y) const;

  const ColumnHermite& alpha_hermite() const { return alpha_hnf_; }

private:
  RootGeneratingSystem(KacMoodyMatrix m) : matrix_(std::move(m)) {}
  void prepare();

  KacMoodyMatrix matrix_;
  std::size_t ambient_rank_ = 0;
  std::vector<IntVec> roots_;
  std::vector<IntVec> coroots_;
  RatMat coroot_columns_;  // ambient x |I|
  ColumnHermite alpha_hnf_;
  std::vector<IntVec> yin_basis_;
  RatMat complement_basis_inverse_;  // coordinates with respect to yin_basis + complement
};

RootGeneratingSystem canonical_datum(const KacMoodyMatrix& m);

// Y spanned by the coroots, simple roots given by the columns of the matrix.
// Requires det != 0.
RootGeneratingSystem simply_connected_datum(const KacMoodyMatrix& m);

enum class DatumKind { Auto, SimplyConnected, Canonical };

RootGeneratingSystem make_datum(const KacMoodyMatrix& m, DatumKind kind);

}  // namespace masurelab
