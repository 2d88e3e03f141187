#include "masurelab/weylgeom.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <set>

#include "masurelab/error.hpp"

namespace masurelab {

namespace {

RatMat simple_reflection_matrix(const RootGeneratingSystem& sys, std::size_t i) {
  std::size_t n = sys.ambient_rank();
  RatMat m = identity_matrix(n);
  const auto& cv = sys.simple_coroots()[i];
  const auto& a = sys.simple_roots()[i];
  for (std::size_t r = 0; r < n; ++r)
    for (std::size_t c = 0; c < n; ++c)
      if (cv[r] != 0 && a[c] != 0) m[r][c] -= Rational(static_cast<long>(cv[r] * a[c]));
  return m;
}

}  // namespace

WeylElement WeylElement::identity(const RootGeneratingSystem& sys) {
  WeylElement w;
  w.matrix_ = identity_matrix(sys.ambient_rank());
  return w;
}

WeylElement WeylElement::from_word(const RootGeneratingSystem& sys, const Word& word) {
  WeylElement w = identity(sys);
  for (auto i : word) {
    if (i >= sys.rank()) throw Error(ErrorCode::InvalidArgument, "word letter out of range");
    w.matrix_ = multiply(w.matrix_, simple_reflection_matrix(sys, i));
  }
  w.word_ = word;
  return w;
}

WeylElement WeylElement::operator*(const WeylElement& other) const {
  WeylElement w;
  w.word_ = word_;
  w.word_.insert(w.word_.end(), other.word_.begin(), other.word_.end());
  w.matrix_ = multiply(matrix_, other.matrix_);
  return w;
}

WeylElement WeylElement::inverse() const {
  // Reflections are involutions, so the reversed word inverts.
  WeylElement w;
  w.word_.assign(word_.rbegin(), word_.rend());
  std::size_t n = matrix_.size();
  w.matrix_.assign(n, RatVec(n));
  for (std::size_t c = 0; c < n; ++c) {
    RatVec e(n, Rational(0));
    e[c] = 1;
    auto x = solve(matrix_, e);
    MASURELAB_ASSERT(x.has_value());
    for (std::size_t r = 0; r < n; ++r) w.matrix_[r][c] = (*x)[r];
  }
  return w;
}

std::int64_t RealRoot::height() const {
  std::int64_t h = 0;
  for (auto x : form) h += x;
  return h;
}

std::int64_t RealRoot::coroot_height() const {
  std::int64_t h = 0;
  for (auto x : coroot) h += x;
  return h;
}

RealRoot RealRoot::negated() const {
  RealRoot r = *this;
  for (auto& x : r.form) x = -x;
  for (auto& x : r.coroot) x = -x;
  r.positive = !positive;
  // -w.alpha_i = (w r_i).alpha_i
  r.witness.push_back(witness_index);
  return r;
}

Rational RealRoot::evaluate(const RootGeneratingSystem& sys, const RatVec& v) const {
  Rational out = 0;
  for (std::size_t i = 0; i < form.size(); ++i)
    if (form[i] != 0) out += Rational(static_cast<long>(form[i])) * sys.alpha(i, v);
  return out;
}

RatVec RealRoot::coroot_vector(const RootGeneratingSystem& sys) const {
  return sys.coroot_vector(to_rational(coroot));
}

bool operator==(const RealRoot& a, const RealRoot& b) { return a.form == b.form; }

bool HalfSpace::contains(const RootGeneratingSystem& sys, const RatVec& v) const {
  return sgn(root.evaluate(sys, v) + Rational(static_cast<long>(level))) >= 0;
}

RatVec reflect(const RootGeneratingSystem& sys, std::size_t i, const RatVec& v) {
  Rational a = sys.alpha(i, v);
  RatVec out = v;
  if (sgn(a) == 0) return out;
  const auto& cv = sys.simple_coroots()[i];
  for (std::size_t c = 0; c < out.size(); ++c)
    if (cv[c] != 0) out[c] -= a * Rational(static_cast<long>(cv[c]));
  return out;
}

RatVec reflect(const RootGeneratingSystem& sys, const RealRoot& beta, const RatVec& v) {
  Rational b = beta.evaluate(sys, v);
  RatVec out = v;
  if (sgn(b) == 0) return out;
  axpy(-b, beta.coroot_vector(sys), out);
  return out;
}

RealRoot simple_real_root(const RootGeneratingSystem& sys, std::size_t i) {
  RealRoot r;
  r.form.assign(sys.rank(), 0);
  r.coroot.assign(sys.rank(), 0);
  r.form[i] = 1;
  r.coroot[i] = 1;
  r.witness_index = i;
  return r;
}

namespace {

// beta(alpha_j^vee) for beta with coefficients b over the simple roots.
std::int64_t root_on_coroot(const KacMoodyMatrix& c, const IntVec& b, std::size_t j) {
  std::int64_t s = 0;
  for (std::size_t i = 0; i < b.size(); ++i) s += b[i] * c(j, i);
  return s;
}

// alpha_j(gamma^vee) for gamma^vee with coefficients g over the simple coroots.
std::int64_t simple_on_coroot(const KacMoodyMatrix& c, const IntVec& g, std::size_t j) {
  std::int64_t s = 0;
  for (std::size_t i = 0; i < g.size(); ++i) s += g[i] * c(i, j);
  return s;
}

RealRoot reflect_root(const KacMoodyMatrix& c, const RealRoot& beta, std::size_t j) {
  RealRoot r = beta;
  r.form[j] -= root_on_coroot(c, beta.form, j);
  r.coroot[j] -= simple_on_coroot(c, beta.coroot, j);
  r.witness.insert(r.witness.begin(), j);
  return r;
}

bool root_order(const RealRoot& a, const RealRoot& b) {
  auto ha = a.height(), hb = b.height();
  if (ha != hb) return ha < hb;
  return a.form < b.form;
}

bool coroot_order(const RealRoot& a, const RealRoot& b) {
  auto ha = a.coroot_height(), hb = b.coroot_height();
  if (ha != hb) return ha < hb;
  return a.coroot < b.coroot;
}

template <class Raise, class Height, class Key>
std::vector<RealRoot> saturate(const RootGeneratingSystem& sys, std::int64_t n, Raise raise, Height height,
                               Key key) {
  const auto& c = sys.matrix();
  std::map<IntVec, RealRoot> found;
  std::deque<RealRoot> queue;
  for (std::size_t i = 0; i < sys.rank(); ++i) {
    RealRoot r = simple_real_root(sys, i);
    if (height(r) > n) continue;
    found.emplace(key(r), r);
    queue.push_back(r);
  }
  while (!queue.empty()) {
    RealRoot beta = queue.front();
    queue.pop_front();
    for (std::size_t j = 0; j < sys.rank(); ++j) {
      std::int64_t step = raise(c, beta, j);
      if (step >= 0) continue;
      if (height(beta) - step > n) continue;
      RealRoot next = reflect_root(c, beta, j);
      if (found.count(key(next))) continue;
      found.emplace(key(next), next);
      queue.push_back(next);
    }
  }
  std::vector<RealRoot> out;
  out.reserve(found.size());
  for (auto& [k, r] : found) out.push_back(std::move(r));
  return out;
}

}  // namespace

std::vector<RealRoot> real_roots_up_to_height(const RootGeneratingSystem& sys, std::int64_t n) {
  auto out = saturate(
      sys, n, [](const KacMoodyMatrix& c, const RealRoot& b, std::size_t j) { return root_on_coroot(c, b.form, j); },
      [](const RealRoot& r) { return r.height(); }, [](const RealRoot& r) { return r.form; });
  std::sort(out.begin(), out.end(), root_order);
  return out;
}

std::vector<RealRoot> real_roots_up_to_coroot_height(const RootGeneratingSystem& sys, std::int64_t n) {
  auto out = saturate(
      sys, n,
      [](const KacMoodyMatrix& c, const RealRoot& b, std::size_t j) { return simple_on_coroot(c, b.coroot, j); },
      [](const RealRoot& r) { return r.coroot_height(); }, [](const RealRoot& r) { return r.coroot; });
  std::sort(out.begin(), out.end(), coroot_order);
  return out;
}

DominantResult dominant_representative(const RootGeneratingSystem& sys, const RatVec& v, std::size_t budget) {
  DominantResult out{v, {}};
  for (std::size_t step = 0;; ++step) {
    std::optional<std::size_t> neg;
    for (std::size_t i = 0; i < sys.rank(); ++i)
      if (sgn(sys.alpha(i, out.dominant)) < 0) {
        neg = i;
        break;
      }
    if (!neg) return out;
    if (step == budget)
      throw Error(ErrorCode::NotDominantable,
                  "no dominant representative of " + to_string(v) + " within " + std::to_string(budget) + " steps");
    out.dominant = reflect(sys, *neg, out.dominant);
    out.word.insert(out.word.begin(), *neg);
  }
}

const char* tits_name(TitsAnswer a) {
  switch (a) {
    case TitsAnswer::Yes: return "yes";
    case TitsAnswer::No: return "no";
    case TitsAnswer::Unknown: return "unknown";
  }
  return "unknown";
}

namespace {

// Positive integer vector a with C a = 0 on an affine component, if one exists.
std::optional<IntVec> invariant_form(const KacMoodyMatrix& c, const std::vector<std::size_t>& comp) {
  std::size_t k = comp.size();
  RatMat sub(k, RatVec(k));
  for (std::size_t a = 0; a < k; ++a)
    for (std::size_t b = 0; b < k; ++b) sub[a][b] = Rational(static_cast<long>(c(comp[a], comp[b])));
  auto ker = kernel_basis(sub, k);
  if (ker.size() != 1) return std::nullopt;
  RatVec v = ker[0];
  if (sgn(v[0]) < 0) v = negate(v);
  Integer den = 1;
  for (const auto& x : v) {
    if (sgn(x) <= 0) return std::nullopt;
    mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), x.get_den_mpz_t());
  }
  IntVec out(c.size(), 0);
  for (std::size_t a = 0; a < k; ++a) out[comp[a]] = to_int64(v[a] * Rational(den));
  // Exact invariance: delta(alpha_j^vee) = sum_i a_i c(j, i) = 0 for every j.
  for (std::size_t j = 0; j < c.size(); ++j) {
    std::int64_t s = 0;
    for (std::size_t i = 0; i < c.size(); ++i) s += out[i] * c(j, i);
    if (s != 0) return std::nullopt;
  }
  return out;
}

}  // namespace

TitsResult in_tits_cone(const RootGeneratingSystem& sys, const RatVec& v, std::size_t budget) {
  TitsResult res;
  const auto& c = sys.matrix();
  for (const auto& comp : c.components()) {
    if (c.component_type(comp) != MatrixType::Affine) continue;
    auto delta = invariant_form(c, comp);
    if (!delta) continue;
    Rational value = 0;
    for (std::size_t i = 0; i < sys.rank(); ++i)
      if ((*delta)[i] != 0) value += Rational(static_cast<long>((*delta)[i])) * sys.alpha(i, v);
    if (sgn(value) < 0) {
      res.answer = TitsAnswer::No;
      res.certificate = delta;
      res.note = "W-invariant form nonnegative on the fundamental chamber takes value " + to_string(value);
      return res;
    }
  }
  try {
    auto dom = dominant_representative(sys, v, budget);
    res.answer = TitsAnswer::Yes;
    res.word = dom.word;
    res.note = "dominant representative reached";
  } catch (const Error& e) {
    if (e.code() != ErrorCode::NotDominantable) throw;
    res.answer = TitsAnswer::Unknown;
    res.note = "budget of " + std::to_string(budget) + " reflections exhausted without certificate";
  }
  return res;
}

FaceSignature face_signature(const RootGeneratingSystem& sys, const RatVec& v) {
  FaceSignature f;
  for (std::size_t i = 0; i < sys.rank(); ++i) {
    int s = sgn(sys.alpha(i, v));
    (s == 0 ? f.zero : s > 0 ? f.positive : f.negative).push_back(i);
  }
  return f;
}

std::vector<OrbitElement> lower_orbit(const RootGeneratingSystem& sys, const RatVec& lambda,
                                      const Rational& max_height, std::size_t limit) {
  if (!sys.is_dominant(lambda)) throw Error(ErrorCode::InvalidArgument, "orbit source must be dominant");
  struct Node {
    OrbitElement elem;
    RatVec gap;  // coordinates of lambda - xi over the simple coroots
    Rational height;
  };
  std::map<RatVec, Node, RatVecLess> seen;
  std::deque<RatVec> queue;
  seen.emplace(lambda, Node{{lambda, {}}, RatVec(sys.rank(), Rational(0)), Rational(0)});
  queue.push_back(lambda);
  while (!queue.empty()) {
    Node cur = seen.at(queue.front());
    queue.pop_front();
    for (std::size_t j = 0; j < sys.rank(); ++j) {
      Rational a = sys.alpha(j, cur.elem.vector);
      if (sgn(a) <= 0) continue;
      Rational h = cur.height + a;
      if (h > max_height) continue;
      RatVec next = reflect(sys, j, cur.elem.vector);
      if (seen.count(next)) continue;
      if (seen.size() >= limit)
        throw Error(ErrorCode::ResourceLimit, "orbit exceeds " + std::to_string(limit) + " elements");
      Node n{{next, cur.elem.word}, cur.gap, h};
      n.elem.word.insert(n.elem.word.begin(), j);
      n.gap[j] += a;
      seen.emplace(next, n);
      queue.push_back(next);
    }
  }
  std::vector<std::pair<Rational, OrbitElement>> items;
  for (auto& [k, node] : seen) items.emplace_back(node.height, node.elem);
  std::stable_sort(items.begin(), items.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
  std::vector<OrbitElement> out;
  for (auto& [h, e] : items) out.push_back(std::move(e));
  return out;
}

}  // namespace masurelab
