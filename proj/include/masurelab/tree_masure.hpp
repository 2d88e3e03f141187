#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "masurelab/error.hpp"
#include "masurelab/rational.hpp"

namespace masurelab {

// Positions are integers in units of alpha^vee / 2; type-0 vertices sit at even positions.
struct Vertex {
  std::int64_t gate = 0;   // apartment position where the geodesic to the apartment lands
  std::int64_t depth = 0;  // graph distance to the apartment
  std::uint64_t code = 0;  // branch label: first digit base q-1, later digits base q

  auto operator<=>(const Vertex&) const = default;
};

std::string to_string(const Vertex& v);

struct YProjection {
  std::int64_t y = 0;  // apartment position
  Rational t;          // in multiples of alpha^vee
};

struct CountResult {
  std::uint64_t count = 0;
  std::int64_t radius = 0;
  std::string certificate;
};

// The (q+1)-regular tree, restricted to the vertices with |gate| <= depth and
// branch depth <= depth.
class TreeMasure {
public:
  static TreeMasure build(std::int64_t q, std::int64_t depth);

  std::int64_t q() const { return q_; }
  std::int64_t depth() const { return depth_; }
  std::uint64_t vertex_count() const;
  std::uint64_t branch_size(std::int64_t d) const;  // vertices with a given gate and depth d

  bool contains(const Vertex& v) const;
  static Vertex apartment(std::int64_t position) { return Vertex{position, 0, 0}; }

  static std::int64_t rho_plus(const Vertex& v) { return v.gate - v.depth; }
  static std::int64_t rho_minus(const Vertex& v) { return v.gate + v.depth; }

  std::int64_t graph_distance(const Vertex& a, const Vertex& b) const;
  // Vectorial distance in multiples of alpha^vee.
  Rational dv(const Vertex& x, const Vertex& y) const;
  std::vector<Vertex> neighbors(const Vertex& v) const;

  // First apartment points of the rays from x toward +infinity and -infinity (nu = alpha^vee).
  YProjection y_t_plus(const Vertex& x) const;
  YProjection y_t_minus(const Vertex& x) const;

  // Automorphism shifting the apartment by m alpha^vee.
  static Vertex translate(const Vertex& v, std::int64_t m) { return Vertex{v.gate + 2 * m, v.depth, v.code}; }

  template <class F>
  void for_each_vertex(F&& f) const {
    for (std::int64_t p = -depth_; p <= depth_; ++p) visit_gate(p, depth_, f);
  }

  // Vertices within graph distance `radius` of the apartment vertex `center`.
  template <class F>
  void for_each_in_ball(std::int64_t center, std::int64_t radius, F&& f) const {
    require_ball(center, radius);
    for (std::int64_t p = center - radius; p <= center + radius; ++p) {
      std::int64_t off = p < center ? center - p : p - center;
      visit_gate(p, radius - off, f);
    }
  }

  void require_ball(std::int64_t center, std::int64_t radius) const;

  // S^v(a, lambda) for lambda in position units.
  std::vector<Vertex> sphere(const Vertex& a, std::int64_t lambda) const;

  // rho_-^{-1}(lambda) cap rho_+^{-1}(lambda + mu), by scanning the ball of radius -mu.
  CountResult count_bi_retraction(std::int64_t lambda, std::int64_t mu) const;
  std::vector<Vertex> bi_retraction_fiber(std::int64_t lambda, std::int64_t mu) const;
  // S^v(0, lambda) cap rho_+^{-1}(target).
  std::vector<Vertex> sphere_fiber(std::int64_t lambda, std::int64_t target) const;

private:
  TreeMasure(std::int64_t q, std::int64_t depth) : q_(q), depth_(depth) {}

  template <class F>
  void visit_gate(std::int64_t p, std::int64_t max_depth, F& f) const {
    f(Vertex{p, 0, 0});
    for (std::int64_t d = 1; d <= max_depth; ++d) {
      std::uint64_t n = branch_size(d);
      for (std::uint64_t c = 0; c < n; ++c) f(Vertex{p, d, c});
    }
  }

  std::int64_t q_;
  std::int64_t depth_;
};

struct VerifyRow {
  std::int64_t lambda = 0;  // multiple of alpha^vee
  std::uint64_t bi_count = 0;
  std::uint64_t sphere_count = 0;
  bool inclusion = false;  // bi fiber inside sphere fiber
  bool equality = false;
};

struct VerifyReport {
  std::int64_t mu = 0;  // multiple of alpha^vee
  std::vector<VerifyRow> rows;
  std::uint64_t reference_count = 0;  // count at lambda = 0
  bool invariance = true;             // counts equal the lambda = 0 count on every row
  std::optional<std::int64_t> min_inclusion;  // inclusion holds from here to the end of the range
  std::optional<std::int64_t> min_equality;
  std::int64_t threshold = 0;  // least lambda with alpha(lambda) > sufficiently dominant bound
};

VerifyReport verify_tree(const TreeMasure& tree, std::int64_t mu, std::int64_t lambda_from, std::int64_t lambda_to);

struct ProductVertex {
  Vertex first, second;
  auto operator<=>(const ProductVertex&) const = default;
};

struct ProductPosition {
  std::int64_t first = 0, second = 0;
  auto operator<=>(const ProductPosition&) const = default;
};

// Two rank-1 trees side by side, modelling A1 x A1 data.
class ProductMasure {
public:
  ProductMasure(TreeMasure a, TreeMasure b) : a_(a), b_(b) {}

  const TreeMasure& first() const { return a_; }
  const TreeMasure& second() const { return b_; }

  static ProductPosition rho_plus(const ProductVertex& v);
  static ProductPosition rho_minus(const ProductVertex& v);
  static ProductVertex translate(const ProductVertex& v, std::int64_t m1, std::int64_t m2);

  // y^-_nu and T^-_nu for nu = alpha_1^vee + alpha_2^vee.
  static std::pair<ProductPosition, Rational> y_t_minus(const ProductVertex& v);

  // Brute force over pairs of ball vertices.
  std::uint64_t count_bi_retraction(ProductPosition lambda, ProductPosition mu) const;

private:
  TreeMasure a_, b_;
};

}  // namespace masurelab
