#include "masurelab/tree_masure.hpp"

#include <algorithm>
#include <deque>
#include <limits>
#include <map>
#include <set>

#include "masurelab/hecke_paths.hpp"
#include "masurelab/rootdata.hpp"

namespace masurelab {

std::string to_string(const Vertex& v) {
  return "(" + std::to_string(v.gate) + "," + std::to_string(v.depth) + "," + std::to_string(v.code) + ")";
}

TreeMasure TreeMasure::build(std::int64_t q, std::int64_t depth) {
  if (q < 2) throw Error(ErrorCode::InvalidArgument, "q must be at least 2");
  if (depth < 0) throw Error(ErrorCode::InvalidArgument, "depth must be nonnegative");
  // (2 depth + 1) q^depth must fit in 64 bits.
  Integer total = Integer(static_cast<long>(2 * depth + 1));
  for (std::int64_t i = 0; i < depth; ++i) {
    total *= Integer(static_cast<long>(q));
    if (total > Integer(std::to_string(std::numeric_limits<std::uint64_t>::max() / 2)))
      throw Error(ErrorCode::ResourceLimit, "tree with q = " + std::to_string(q) + " and depth " +
                                                std::to_string(depth) + " is too large");
  }
  return TreeMasure(q, depth);
}

std::uint64_t TreeMasure::branch_size(std::int64_t d) const {
  if (d == 0) return 1;
  std::uint64_t n = static_cast<std::uint64_t>(q_ - 1);
  for (std::int64_t i = 1; i < d; ++i) n *= static_cast<std::uint64_t>(q_);
  return n;
}

std::uint64_t TreeMasure::vertex_count() const {
  std::uint64_t per_gate = 1;
  for (std::int64_t i = 0; i < depth_; ++i) per_gate *= static_cast<std::uint64_t>(q_);
  return static_cast<std::uint64_t>(2 * depth_ + 1) * per_gate;
}

bool TreeMasure::contains(const Vertex& v) const {
  if (v.gate < -depth_ || v.gate > depth_) return false;
  if (v.depth < 0 || v.depth > depth_) return false;
  return v.code < branch_size(v.depth);
}

std::int64_t TreeMasure::graph_distance(const Vertex& a, const Vertex& b) const {
  if (a.gate != b.gate) return a.depth + b.depth + (a.gate < b.gate ? b.gate - a.gate : a.gate - b.gate);
  std::int64_t lo = std::min(a.depth, b.depth);
  auto ancestor = [&](const Vertex& v, std::int64_t k) {
    std::uint64_t c = v.code;
    for (std::int64_t i = k; i < v.depth; ++i) c /= static_cast<std::uint64_t>(q_);
    return c;
  };
  std::int64_t common = 0;
  for (std::int64_t k = lo; k >= 1; --k)
    if (ancestor(a, k) == ancestor(b, k)) {
      common = k;
      break;
    }
  return a.depth + b.depth - 2 * common;
}

Rational TreeMasure::dv(const Vertex& x, const Vertex& y) const {
  return make_rational(graph_distance(x, y), 2);
}

std::vector<Vertex> TreeMasure::neighbors(const Vertex& v) const {
  std::vector<Vertex> out;
  auto push = [&](Vertex w) {
    if (contains(w)) out.push_back(w);
  };
  if (v.depth == 0) {
    push(apartment(v.gate - 1));
    push(apartment(v.gate + 1));
    for (std::int64_t c = 0; c + 1 < q_; ++c) push(Vertex{v.gate, 1, static_cast<std::uint64_t>(c)});
    return out;
  }
  if (v.depth == 1)
    push(apartment(v.gate));
  else
    push(Vertex{v.gate, v.depth - 1, v.code / static_cast<std::uint64_t>(q_)});
  for (std::int64_t c = 0; c < q_; ++c)
    push(Vertex{v.gate, v.depth + 1, v.code * static_cast<std::uint64_t>(q_) + static_cast<std::uint64_t>(c)});
  return out;
}

YProjection TreeMasure::y_t_plus(const Vertex& x) const {
  // The ray toward either end climbs to the gate first.
  return YProjection{x.gate, make_rational(x.depth, 2)};
}

YProjection TreeMasure::y_t_minus(const Vertex& x) const {
  return YProjection{x.gate, make_rational(x.depth, 2)};
}

void TreeMasure::require_ball(std::int64_t center, std::int64_t radius) const {
  if (radius < 0) throw Error(ErrorCode::InvalidArgument, "negative radius");
  std::int64_t reach = (center < 0 ? -center : center) + radius;
  if (reach > depth_ || radius > depth_)
    throw Error(ErrorCode::DepthExceeded, "ball of radius " + std::to_string(radius) + " around position " +
                                              std::to_string(center) + " needs depth " + std::to_string(reach) +
                                              ", tree has depth " + std::to_string(depth_));
}

std::vector<Vertex> TreeMasure::sphere(const Vertex& a, std::int64_t lambda) const {
  std::vector<Vertex> out;
  if (lambda < 0) return out;
  if (!contains(a)) throw Error(ErrorCode::InvalidArgument, "center " + to_string(a) + " is not in the tree");
  // Every vertex within the distance must be present for the sphere to be complete.
  require_ball(a.gate, a.depth + lambda);
  std::map<Vertex, std::int64_t> dist{{a, 0}};
  std::deque<Vertex> queue{a};
  while (!queue.empty()) {
    Vertex v = queue.front();
    queue.pop_front();
    std::int64_t d = dist.at(v);
    if (d == lambda) {
      out.push_back(v);
      continue;
    }
    for (const auto& w : neighbors(v))
      if (dist.emplace(w, d + 1).second) queue.push_back(w);
  }
  std::sort(out.begin(), out.end());
  return out;
}

CountResult TreeMasure::count_bi_retraction(std::int64_t lambda, std::int64_t mu) const {
  CountResult r;
  if (mu > 0 || mu % 2 != 0) {
    r.certificate = "rho_minus - rho_plus = 2 * branch depth is even and nonnegative, so the fiber is empty";
    return r;
  }
  r.radius = -mu;
  require_ball(lambda, r.radius);
  std::uint64_t n = 0;
  for_each_in_ball(lambda, r.radius, [&](const Vertex& v) {
    if (rho_minus(v) == lambda && rho_plus(v) == lambda + mu) ++n;
  });
  r.count = n;
  r.certificate = "fiber lies within distance " + std::to_string(r.radius) + " of position " +
                  std::to_string(lambda) + "; ball scanned completely";
  return r;
}

std::vector<Vertex> TreeMasure::bi_retraction_fiber(std::int64_t lambda, std::int64_t mu) const {
  std::vector<Vertex> out;
  if (mu > 0) return out;
  for_each_in_ball(lambda, -mu, [&](const Vertex& v) {
    if (rho_minus(v) == lambda && rho_plus(v) == lambda + mu) out.push_back(v);
  });
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<Vertex> TreeMasure::sphere_fiber(std::int64_t lambda, std::int64_t target) const {
  std::vector<Vertex> out;
  if (lambda < 0) return out;
  Vertex origin = apartment(0);
  for_each_in_ball(0, lambda, [&](const Vertex& v) {
    if (rho_plus(v) == target && graph_distance(origin, v) == lambda) out.push_back(v);
  });
  std::sort(out.begin(), out.end());
  return out;
}

VerifyReport verify_tree(const TreeMasure& tree, std::int64_t mu, std::int64_t lambda_from, std::int64_t lambda_to) {
  if (lambda_from > lambda_to) throw Error(ErrorCode::InvalidArgument, "empty lambda range");
  if (mu > 0) throw Error(ErrorCode::InvalidArgument, "mu must be a nonpositive multiple of alpha^vee");
  VerifyReport rep;
  rep.mu = mu;
  std::int64_t mu_pos = 2 * mu;
  rep.reference_count = tree.count_bi_retraction(0, mu_pos).count;
  for (std::int64_t l = lambda_from; l <= lambda_to; ++l) {
    VerifyRow row;
    row.lambda = l;
    auto bi = tree.bi_retraction_fiber(2 * l, mu_pos);
    auto sp = tree.sphere_fiber(2 * l, 2 * l + mu_pos);
    row.bi_count = bi.size();
    row.sphere_count = sp.size();
    row.inclusion = std::includes(sp.begin(), sp.end(), bi.begin(), bi.end());
    row.equality = bi == sp;
    if (row.bi_count != rep.reference_count) rep.invariance = false;
    rep.rows.push_back(row);
  }
  for (auto it = rep.rows.rbegin(); it != rep.rows.rend() && it->inclusion; ++it) rep.min_inclusion = it->lambda;
  for (auto it = rep.rows.rbegin(); it != rep.rows.rend() && it->equality; ++it) rep.min_equality = it->lambda;

  auto sl2 = simply_connected_datum(KacMoodyMatrix::validate({{2}}));
  RatVec b = sufficiently_dominant_bound(sl2, RatVec{Rational(static_cast<long>(mu))}, RatVec{Rational(1)});
  // alpha(l alpha^vee) = 2 l > b
  rep.threshold = to_int64(floor(b[0] / 2)) + 1;
  return rep;
}

ProductPosition ProductMasure::rho_plus(const ProductVertex& v) {
  return {TreeMasure::rho_plus(v.first), TreeMasure::rho_plus(v.second)};
}

ProductPosition ProductMasure::rho_minus(const ProductVertex& v) {
  return {TreeMasure::rho_minus(v.first), TreeMasure::rho_minus(v.second)};
}

ProductVertex ProductMasure::translate(const ProductVertex& v, std::int64_t m1, std::int64_t m2) {
  return {TreeMasure::translate(v.first, m1), TreeMasure::translate(v.second, m2)};
}

std::pair<ProductPosition, Rational> ProductMasure::y_t_minus(const ProductVertex& v) {
  // Both coordinates move at the same speed; the ray meets the apartment once the deeper one has.
  std::int64_t m = std::max(v.first.depth, v.second.depth);
  ProductPosition y{TreeMasure::rho_minus(v.first) - m, TreeMasure::rho_minus(v.second) - m};
  return {y, make_rational(m, 2)};
}

std::uint64_t ProductMasure::count_bi_retraction(ProductPosition lambda, ProductPosition mu) const {
  if (mu.first > 0 || mu.second > 0) return 0;
  std::vector<Vertex> ball_a, ball_b;
  a_.for_each_in_ball(lambda.first, -mu.first, [&](const Vertex& v) { ball_a.push_back(v); });
  b_.for_each_in_ball(lambda.second, -mu.second, [&](const Vertex& v) { ball_b.push_back(v); });
  ProductPosition target{lambda.first + mu.first, lambda.second + mu.second};
  std::uint64_t n = 0;
  for (const auto& x : ball_a)
    for (const auto& y : ball_b) {
      ProductVertex v{x, y};
      if (rho_minus(v) == lambda && rho_plus(v) == target) ++n;
    }
  return n;
}

}  // namespace masurelab
