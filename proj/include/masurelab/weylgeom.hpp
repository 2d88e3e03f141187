#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "masurelab/linalg.hpp"
#include "masurelab/rootdata.hpp"

namespace masurelab {

using Word = std::vector<std::size_t>;

// The word [i1, ..., ik] stands for r_{i1} ... r_{ik}; the rightmost letter acts first.
class WeylElement {
public:
  static WeylElement identity(const RootGeneratingSystem& sys);
  static WeylElement from_word(const RootGeneratingSystem& sys, const Word& word);

  const Word& word() const { return word_; }
  const RatMat& matrix() const { return matrix_; }
  RatVec apply(const RatVec& v) const { return masurelab::apply(matrix_, v); }
  WeylElement operator*(const WeylElement& other) const;
  WeylElement inverse() const;

  bool operator==(const WeylElement& other) const { return matrix_ == other.matrix_; }

private:
  Word word_;
  RatMat matrix_;
};

struct RealRoot {
  IntVec form;    // coefficients over the simple roots
  IntVec coroot;  // coefficients over the simple coroots
  bool positive = true;
  Word witness;   // root = w . alpha_{witness_index} with w given by `witness`
  std::size_t witness_index = 0;

  std::int64_t height() const;
  std::int64_t coroot_height() const;
  RealRoot negated() const;
  Rational evaluate(const RootGeneratingSystem& sys, const RatVec& v) const;  // beta(v)
  RatVec coroot_vector(const RootGeneratingSystem& sys) const;
};

bool operator==(const RealRoot& a, const RealRoot& b);

// D(beta, k) = {v : beta(v) + k >= 0}.
struct HalfSpace {
  RealRoot root;
  std::int64_t level = 0;
  bool contains(const RootGeneratingSystem& sys, const RatVec& v) const;
};

RatVec reflect(const RootGeneratingSystem& sys, std::size_t i, const RatVec& v);
RatVec reflect(const RootGeneratingSystem& sys, const RealRoot& beta, const RatVec& v);

RealRoot simple_real_root(const RootGeneratingSystem& sys, std::size_t i);

// Positive real roots with root height <= n, sorted by height then form.
std::vector<RealRoot> real_roots_up_to_height(const RootGeneratingSystem& sys, std::int64_t n);

// Positive real roots whose coroot has height <= n, same ordering.
std::vector<RealRoot> real_roots_up_to_coroot_height(const RootGeneratingSystem& sys, std::int64_t n);

struct DominantResult {
  RatVec dominant;
  Word word;  // WeylElement::from_word(word).apply(v) == dominant
};

// Reflects at the least index with a negative root value until dominant.
DominantResult dominant_representative(const RootGeneratingSystem& sys, const RatVec& v, std::size_t budget);

enum class TitsAnswer { Yes, No, Unknown };

struct TitsResult {
  TitsAnswer answer = TitsAnswer::Unknown;
  std::optional<Word> word;           // when yes
  std::optional<IntVec> certificate;  // when no: coefficients of a W-invariant form negative at v
  std::string note;
};

const char* tits_name(TitsAnswer a);

TitsResult in_tits_cone(const RootGeneratingSystem& sys, const RatVec& v, std::size_t budget);

struct FaceSignature {
  std::vector<std::size_t> zero, positive, negative;
};

FaceSignature face_signature(const RootGeneratingSystem& sys, const RatVec& v);

struct OrbitElement {
  RatVec vector;
  Word word;  // from_word(word).apply(source) == vector
};

// Elements of W.lambda for dominant lambda with h(lambda - xi) <= max_height,
// reached by lowering reflections; sorted by height of lambda - xi then lexicographically.
std::vector<OrbitElement> lower_orbit(const RootGeneratingSystem& sys, const RatVec& lambda,
                                      const Rational& max_height, std::size_t limit);

}  // namespace masurelab
