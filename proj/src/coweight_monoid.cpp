#include "masurelab/coweight_monoid.hpp"

#include <algorithm>

#include "masurelab/error.hpp"

namespace masurelab {

namespace {

bool dominated(const IntVec& small, const IntVec& big) {
  for (std::size_t i = 0; i < small.size(); ++i)
    if (small[i] > big[i]) return false;
  return true;
}

std::int64_t total(const IntVec& v) {
  std::int64_t s = 0;
  for (auto x : v) s += x;
  return s;
}

// Every point of the lattice alpha(Y) inside [0, b]^I, except 0.
std::vector<IntVec> box_images(const RootGeneratingSystem& sys, std::int64_t b) {
  std::size_t k = sys.rank();
  std::vector<IntVec> out;
  IntVec cur(k, 0);
  while (true) {
    std::size_t i = 0;
    while (i < k && cur[i] == b) cur[i++] = 0;
    if (i == k) break;
    ++cur[i];
    if (integer_preimage(sys.alpha_hermite(), to_zvec(cur))) out.push_back(cur);
  }
  return out;
}

double box_size(std::int64_t b, std::size_t k) {
  double s = 1;
  for (std::size_t i = 0; i < k; ++i) s *= static_cast<double>(b + 1);
  return s;
}

constexpr double kMaxBox = 4e6;

}  // namespace

std::vector<IntVec> dickson_minimals(const std::vector<IntVec>& points) {
  std::vector<IntVec> sorted = points;
  std::sort(sorted.begin(), sorted.end(), [](const IntVec& a, const IntVec& b) {
    auto ta = total(a), tb = total(b);
    return ta != tb ? ta < tb : a < b;
  });
  sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());
  std::vector<IntVec> out;
  for (const auto& p : sorted) {
    bool minimal = true;
    for (const auto& m : out)
      if (dominated(m, p)) {
        minimal = false;
        break;
      }
    if (minimal) out.push_back(p);
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<IntVec> MonoidBasis::generators() const {
  std::vector<IntVec> out = strict_gens;
  out.insert(out.end(), inessential_gens.begin(), inessential_gens.end());
  return out;
}

MonoidBasis hilbert_basis(const RootGeneratingSystem& sys, std::int64_t initial_bound, std::int64_t ceiling) {
  if (initial_bound < 1) throw Error(ErrorCode::InvalidArgument, "initial bound must be positive");
  if (ceiling < initial_bound) throw Error(ErrorCode::InvalidArgument, "ceiling below initial bound");
  MonoidBasis basis;
  for (const auto& b : sys.yin_basis()) {
    basis.inessential_gens.push_back(b);
    IntVec neg = b;
    for (auto& x : neg) x = -x;
    basis.inessential_gens.push_back(neg);
  }

  std::size_t k = sys.rank();
  std::vector<IntVec> minimals;
  std::int64_t b = initial_bound;
  for (;; ++b) {
    if (b > ceiling)
      throw Error(ErrorCode::BoundExceeded,
                  "shell certificate not reached within ceiling " + std::to_string(ceiling));
    if (box_size(b + 1, k) > kMaxBox)
      throw Error(ErrorCode::ResourceLimit, "box [0," + std::to_string(b + 1) + "]^I too large to scan");
    auto inner = dickson_minimals(box_images(sys, b));
    auto outer = dickson_minimals(box_images(sys, b + 1));
    std::int64_t max_coord = 0;
    for (const auto& m : inner)
      for (auto x : m) max_coord = std::max(max_coord, x);
    if (inner == outer && b >= 1 + max_coord) {
      minimals = inner;
      break;
    }
  }
  basis.certified_bound = b;
  basis.notes.push_back("shell certificate: no new minimal image in [0," + std::to_string(b + 1) + "]^I");

  basis.exponent = lattice_exponent(sys.alpha_hermite());
  if (basis.exponent <= Integer(static_cast<long>(b))) {
    basis.exponent_checked = true;
    basis.notes.push_back("complete: minimal images lie in [0," + basis.exponent.get_str() + "]^I");
  } else if (box_size(to_int64(basis.exponent), k) <= kMaxBox) {
    auto full = dickson_minimals(box_images(sys, to_int64(basis.exponent)));
    if (full != minimals) {
      basis.notes.push_back("exponent scan found minimal images beyond the shell certificate");
      minimals = full;
    }
    basis.exponent_checked = true;
    basis.notes.push_back("complete: minimal images lie in [0," + basis.exponent.get_str() + "]^I");
  } else {
    basis.notes.push_back("exponent box [0," + basis.exponent.get_str() + "]^I too large; completeness is heuristic");
  }

  for (const auto& m : minimals) {
    auto pre = integer_preimage(sys.alpha_hermite(), to_zvec(m));
    MASURELAB_ASSERT(pre.has_value());
    basis.strict_gens.push_back(sys.yin_reduce(to_intvec(*pre)));
    basis.strict_images.push_back(m);
  }

  // Every box element must decompose.
  for (const auto& img : box_images(sys, b)) {
    auto pre = integer_preimage(sys.alpha_hermite(), to_zvec(img));
    auto coeffs = decompose_in_basis(sys, basis, to_intvec(*pre));
    MASURELAB_ASSERT(recombine(basis, coeffs, sys.ambient_rank()) == to_intvec(*pre));
  }
  return basis;
}

bool in_dominant_monoid(const RootGeneratingSystem& sys, const IntVec& y) {
  for (auto a : sys.alpha_values(y))
    if (a < 0) return false;
  return true;
}

IntVec decompose_in_basis(const RootGeneratingSystem& sys, const MonoidBasis& basis, const IntVec& lambda) {
  if (lambda.size() != sys.ambient_rank()) throw Error(ErrorCode::InvalidArgument, "vector has wrong arity");
  if (!in_dominant_monoid(sys, lambda))
    throw Error(ErrorCode::InvalidArgument, to_string(lambda) + " is not dominant");
  std::size_t ne = basis.strict_gens.size();
  IntVec coeffs(ne + basis.inessential_gens.size(), 0);
  IntVec rem_image = sys.alpha_values(lambda);
  IntVec rem = lambda;
  for (std::size_t e = 0; e < ne; ++e) {
    const auto& img = basis.strict_images[e];
    std::int64_t t = -1;
    for (std::size_t i = 0; i < img.size(); ++i)
      if (img[i] > 0) {
        std::int64_t q = rem_image[i] / img[i];
        t = t < 0 ? q : std::min(t, q);
      }
    if (t <= 0) continue;
    coeffs[e] = t;
    for (std::size_t i = 0; i < img.size(); ++i) rem_image[i] -= t * img[i];
    for (std::size_t c = 0; c < rem.size(); ++c) rem[c] -= t * basis.strict_gens[e][c];
  }
  for (auto x : rem_image)
    if (x != 0)
      throw Error(ErrorCode::NotDecomposable,
                  "root values " + to_string(rem_image) + " remain; raise the certification bound");
  RatVec yc = sys.yin_coordinates(to_rational(rem));
  for (std::size_t j = 0; j < yc.size(); ++j) {
    std::int64_t c = to_int64(yc[j]);
    coeffs[ne + 2 * j + (c < 0 ? 1 : 0)] = c < 0 ? -c : c;
  }
  if (recombine(basis, coeffs, sys.ambient_rank()) != lambda)
    throw Error(ErrorCode::NotDecomposable, "inessential remainder is not in the span of E1");
  return coeffs;
}

IntVec recombine(const MonoidBasis& basis, const IntVec& coefficients, std::size_t ambient_rank) {
  auto gens = basis.generators();
  MASURELAB_ASSERT(gens.size() == coefficients.size());
  IntVec out(ambient_rank, 0);
  for (std::size_t e = 0; e < gens.size(); ++e)
    for (std::size_t c = 0; c < ambient_rank; ++c) out[c] += coefficients[e] * gens[e][c];
  return out;
}

}  // namespace masurelab
