#include "tamarkin/demos.hpp"

#include <cmath>

#include "tamarkin/errors.hpp"

namespace tamarkin::demos {

namespace {

io::Bundle grid_sum(const std::vector<double>& f, const std::vector<double>& g) {
  io::Bundle out{CellComplex::cubical({f.size(), g.size()}, {true, true}), {}};
  for (std::size_t j = 0; j < g.size(); ++j) {
    for (std::size_t i = 0; i < f.size(); ++i) out.function.values.push_back(f[i] + g[j]);
  }
  return out;
}

}  // namespace

std::vector<std::vector<std::size_t>> circle3_facets() { return {{0, 1}, {1, 2}, {0, 2}}; }

std::vector<std::vector<std::size_t>> sphere4_facets() { return {{0, 1, 2}, {0, 1, 3}, {0, 2, 3}, {1, 2, 3}}; }

std::vector<std::vector<std::size_t>> torus7_facets() {
  std::vector<std::vector<std::size_t>> out;
  for (std::size_t i = 0; i < 7; ++i) {
    out.push_back({i, (i + 1) % 7, (i + 3) % 7});
    out.push_back({i, (i + 2) % 7, (i + 3) % 7});
  }
  return out;
}

io::Bundle circle_height() { return {CellComplex::simplicial(circle3_facets()), {{0.0, 1.0, 2.0}, std::nullopt}}; }

io::Bundle torus_height() { return grid_sum({0.0, 1.0, 2.0, 1.0}, {0.0, 0.5, 1.0, 0.5}); }

io::Bundle torus_height_wide() { return grid_sum({0.0, 1.0, 2.0, 1.0}, {0.0, 4.0, 8.0, 4.0}); }

io::Bundle constant_torus() {
  return {CellComplex::simplicial(torus7_facets()), {std::vector<double>(7, 1.5), std::nullopt}};
}

io::Bundle sphere_height() { return {CellComplex::simplicial(sphere4_facets()), {{0.0, 1.0, 2.0, 3.0}, std::nullopt}}; }

io::Bundle double_well() {
  std::vector<std::vector<std::size_t>> edges;
  for (std::size_t i = 0; i + 1 < 7; ++i) edges.push_back({i, i + 1});
  return {CellComplex::simplicial(edges, 1), {{10.0, 2.0, 0.0, 3.0, 1.0, 2.0, 10.0}, 5.0}};
}

CauchyBarcodeSequence cauchy_geometric(int length) {
  CauchyBarcodeSequence seq;
  for (int n = 0; n < length; ++n) {
    seq.items.push_back(GradedBarcode({{0, {{0.0, 1.0 + std::ldexp(1.0, -n)}}}}));
    if (n + 1 < length) seq.bounds.push_back(std::ldexp(1.0, -n));
  }
  seq.tail = {CauchyTail::Kind::kGeometric, 0.5};
  return seq;
}

InterleavingCertificate ray_pair(double a) {
  const PrimeField f2(2);
  const auto f = FilteredComplex::free(f2, {{0, 0.0}});
  const auto g = FilteredComplex::free(f2, {{0, a}});
  Matrix one(f2, 1, 1);
  one(0, 0) = 1;
  return make_certificate(ChainMap(f, g, 0.0, one), ChainMap(g, f, a, one));
}

std::vector<std::string> names() {
  return {"circle-height", "torus-height", "torus-height-wide", "constant-torus",
          "sphere",        "double-well",  "cauchy-geometric",  "ray-pair"};
}

io::Json emit(const std::string& name) {
  if (name == "circle-height") return io::to_json(circle_height());
  if (name == "torus-height") return io::to_json(torus_height());
  if (name == "torus-height-wide") return io::to_json(torus_height_wide());
  if (name == "constant-torus") return io::to_json(constant_torus());
  if (name == "sphere") return io::to_json(sphere_height());
  if (name == "double-well") return io::to_json(double_well());
  if (name == "cauchy-geometric") return io::to_json(cauchy_geometric());
  if (name == "ray-pair") return io::to_json(ray_pair());
  throw ParseError("unknown demo \"" + name + "\"");
}

}  // namespace tamarkin::demos
