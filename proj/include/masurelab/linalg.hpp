#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "masurelab/rational.hpp"

namespace masurelab {

// Row-major dense matrices.
using RatMat = std::vector<RatVec>;
using ZVec = std::vector<Integer>;
using ZMat = std::vector<ZVec>;

RatMat to_rational(const std::vector<IntVec>& m);
ZMat to_zmat(const std::vector<IntVec>& m);
RatMat transpose(const RatMat& m);
RatMat identity_matrix(std::size_t n);
RatMat multiply(const RatMat& a, const RatMat& b);
RatVec apply(const RatMat& m, const RatVec& v);

std::size_t rank(const RatMat& m);
Rational determinant(const RatMat& m);

// Some solution x of m x = b, or nullopt when the system is inconsistent.
// Free variables are set to zero.
std::optional<RatVec> solve(const RatMat& m, const RatVec& b);

// Basis of the rational null space {x : m x = 0}.
std::vector<RatVec> kernel_basis(const RatMat& m, std::size_t cols);

// Column Hermite form: a * u = h, u unimodular, the first `rank` columns of h
// in column echelon form with positive pivots, the rest zero.
struct ColumnHermite {
  ZMat h;
  ZMat u;
  std::size_t rank = 0;
  std::vector<std::size_t> pivot_rows;  // pivot row of each nonzero column
};

ColumnHermite column_hermite(const ZMat& a, std::size_t cols);

// Lattice basis of {x in Z^n : a x = 0}.
std::vector<ZVec> integer_kernel_basis(const ZMat& a, std::size_t cols);

// Some x in Z^n with a x = b, or nullopt.
std::optional<ZVec> integer_preimage(const ColumnHermite& hnf, const ZVec& b);
std::optional<ZVec> integer_preimage(const ZMat& a, std::size_t cols, const ZVec& b);

// For a of full row rank m: the smallest d > 0 with d Z^m contained in a Z^n.
Integer lattice_exponent(const ColumnHermite& hnf);

ZVec to_zvec(const IntVec& v);
IntVec to_intvec(const ZVec& v);
RatVec to_ratvec(const ZVec& v);

}  // namespace masurelab
