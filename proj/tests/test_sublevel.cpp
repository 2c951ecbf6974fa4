#include <algorithm>
#include <set>

#include "doctest.h"
#include "oracles.hpp"
#include "tamarkin/demos.hpp"
#include "tamarkin/errors.hpp"
#include "tamarkin/sublevel.hpp"

using namespace tamarkin;

namespace {

const PrimeField F2(2);

std::map<int, int> counts(const CellComplex& k) {
  std::map<int, int> out;
  for (const auto& c : k.cells()) ++out[c.dim];
  return out;
}

int euler(const CellComplex& k) {
  int chi = 0;
  for (auto [d, n] : counts(k)) chi += (d % 2 ? -1 : 1) * n;
  return chi;
}

std::vector<double> probe_levels(const SampledFunction& s) {
  std::set<double> out;
  for (std::size_t i = 0; i < s.values.size(); ++i) {
    if (s.clamped(i)) continue;
    const double v = s.values[i];
    out.insert(v);
    out.insert(v - 0.25);
    out.insert(v + 0.25);
  }
  return {out.begin(), out.end()};
}

// The pair filtration, its barcode and its image module against direct rank
// computations at levels around every vertex value.
void check_against_slices(const io::Bundle& b, const PrimeField& field) {
  const auto result = spec_of_function(b.complex, b.function, ActionSource{ActionSource::Mode::kNone, {}, {}}, field);
  for (double c : probe_levels(b.function)) {
    INFO("level " << c);
    const auto slice = oracle::pair_slice(b.complex, b.function, c, field);
    CHECK(q_dims(result.barcode, c) == slice.relative);
    std::map<int, int> below;
    for (std::size_t i = 0; i < result.basis.levels.size(); ++i) {
      if (result.basis.levels[i] <= c + kTol) ++below[result.basis.degrees[i]];
    }
    CHECK(below == slice.image);
  }
}

std::vector<double> spec_values(const io::Bundle& b) {
  return spec_of_function(b.complex, b.function, ActionSource{ActionSource::Mode::kNone, {}, {}}).spec.values;
}

std::vector<std::vector<std::size_t>> hexagon() {
  std::vector<std::vector<std::size_t>> out;
  for (std::size_t i = 0; i < 6; ++i) out.push_back({i, (i + 1) % 6});
  return out;
}

}  // namespace

TEST_SUITE("sublevel") {
  TEST_CASE("simplicial complexes") {
    const auto torus = CellComplex::simplicial(demos::torus7_facets());
    CHECK(counts(torus) == std::map<int, int>{{0, 7}, {1, 21}, {2, 14}});
    CHECK(euler(torus) == 0);
    CHECK(euler(CellComplex::simplicial(demos::sphere4_facets())) == 2);
    CHECK(euler(CellComplex::simplicial(demos::circle3_facets())) == 0);
    CHECK_THROWS_AS(CellComplex::simplicial({{0, 2}}), InvalidComplex);
    CHECK_THROWS_AS(CellComplex::simplicial({}), InvalidComplex);
    CHECK(torus.find({0, 1, 3}).has_value());
    CHECK_FALSE(torus.find({0, 1, 2}).has_value());
  }

  TEST_CASE("cubical complexes") {
    const auto torus = CellComplex::cubical({4, 4}, {true, true});
    CHECK(counts(torus) == std::map<int, int>{{0, 16}, {1, 32}, {2, 16}});
    const auto square = CellComplex::cubical({3, 2}, {false, false});
    CHECK(counts(square) == std::map<int, int>{{0, 6}, {1, 7}, {2, 2}});
    CHECK(euler(square) == 1);
    CHECK_THROWS_AS(CellComplex::cubical({2, 4}, {true, false}), InvalidComplex);
  }

  TEST_CASE("boundary squares to zero") {
    for (std::uint32_t p : {2u, 3u, 7u}) {
      const PrimeField f(p);
      for (const auto& k : {CellComplex::simplicial(demos::torus7_facets()), CellComplex::cubical({4, 3}, {true, true}),
                            CellComplex::cubical({3, 3, 3}, {true, false, true}),
                            CellComplex::cubical({4, 4}, {true, true}).triangulated()}) {
        const auto d = k.boundary(f);
        CHECK((d * d).is_zero());
      }
    }
  }

  TEST_CASE("cohomology of standard complexes") {
    using M = std::map<int, int>;
    const auto flat = [](const CellComplex& k, const PrimeField& f) {
      SampledFunction s{std::vector<double>(k.vertex_count(), 0.0), std::nullopt};
      return oracle::pair_slice(k, s, 0.0, f).relative;
    };
    for (std::uint32_t p : {2u, 3u}) {
      const PrimeField f(p);
      CHECK(flat(CellComplex::simplicial(demos::torus7_facets()), f) == M{{0, 1}, {1, 2}, {2, 1}});
      CHECK(flat(CellComplex::cubical({4, 4}, {true, true}), f) == M{{0, 1}, {1, 2}, {2, 1}});
      CHECK(flat(CellComplex::cubical({4, 4}, {true, true}).triangulated(), f) == M{{0, 1}, {1, 2}, {2, 1}});
      CHECK(flat(CellComplex::simplicial(demos::sphere4_facets()), f) == M{{0, 1}, {2, 1}});
    }
  }

  TEST_CASE("dual function") {
    const SampledFunction s{{0, 1, 2}, std::nullopt};
    CHECK(dual_function(s).values == std::vector<double>{0, -1, -2});
    const SampledFunction clamped{{5, 1, 9}, 4.0};
    const auto once = dual_function(clamped);
    CHECK_FALSE(once.clamped(1));
    CHECK(once.clamped(0));
    CHECK(once.clamped(2));
    const auto twice = dual_function(once);
    CHECK(twice.values == clamped.values);
    CHECK(twice.clamp == clamped.clamp);
    CHECK(dual_function(SampledFunction{{5, 5}, std::nullopt}).values == std::vector<double>{-5, -5});
  }

  TEST_CASE("pair filtration validation") {
    const auto circle = CellComplex::simplicial(demos::circle3_facets());
    CHECK_THROWS_AS(build_pair_filtration(circle, SampledFunction{{0, 1}, std::nullopt}), InvalidComplex);
  }

  TEST_CASE("circle height filtration") {
    const auto b = demos::circle_height();
    const auto f = build_pair_filtration(b.complex, b.function);
    CHECK(f.breakpoints == std::vector<double>{0, 1, 2});
    CHECK(f.cells.size() == 6);
    CHECK(reduce(f.complex) == GradedBarcode({{0, {{-2, kInf}}}, {1, {{0, kInf}}}}));
    const auto result = spec_of_function(b.complex, b.function);
    CHECK(result.spec.values == std::vector<double>{0, 2});
  }

  TEST_CASE("barcodes and image modules agree with per-level ranks on all demos") {
    for (std::uint32_t p : {2u, 3u}) {
      const PrimeField f(p);
      for (const auto& b : {demos::circle_height(), demos::torus_height(), demos::torus_height_wide(),
                            demos::constant_torus(), demos::sphere_height(), demos::double_well()}) {
        check_against_slices(b, f);
      }
    }
  }

  TEST_CASE("spec on worked examples") {
    CHECK(spec_values(demos::circle_height()) == std::vector<double>{0, 2});
    CHECK(spec_values(demos::torus_height()) == std::vector<double>{0, 1, 2, 3});
    CHECK(spec_values(demos::torus_height_wide()) == std::vector<double>{0, 2, 8, 10});
    CHECK(spec_values(demos::constant_torus()) == std::vector<double>{1.5});
    CHECK(spec_values(demos::sphere_height()) == std::vector<double>{0, 3});
    CHECK(spec_values(demos::double_well()) == std::vector<double>{0});
    const auto c5 = io::Bundle{CellComplex::simplicial(demos::sphere4_facets()), {std::vector<double>(4, 5.0), {}}};
    CHECK(spec_values(c5) == std::vector<double>{5});
  }

  TEST_CASE("double well barcode") {
    const auto b = demos::double_well();
    const auto result = spec_of_function(b.complex, b.function, ActionSource{ActionSource::Mode::kNone, {}, {}});
    CHECK(result.barcode == GradedBarcode({{-1, {{-3, -1}}}, {0, {{0, kInf}}}}));
    CHECK_THROWS_AS(spec_of_function(b.complex, b.function), ActionUnavailable);
  }

  TEST_CASE("spec moves with constants and survives refinement") {
    for (const auto& b : {demos::circle_height(), demos::torus_height(), demos::sphere_height()}) {
      auto moved = b;
      for (auto& v : moved.function.values) v += 1.25;
      auto expected = spec_values(b);
      for (auto& v : expected) v += 1.25;
      CHECK(spec_values(moved) == expected);
    }
    const auto torus = demos::torus_height();
    const io::Bundle tri{torus.complex.triangulated(), torus.function};
    CHECK(spec_values(tri) == spec_values(torus));
    // The circle subdivided into a hexagon with interpolated values.
    const io::Bundle hex{CellComplex::simplicial(hexagon()), {{0, 0.5, 1, 1.5, 2, 1}, std::nullopt}};
    CHECK(spec_values(hex) == std::vector<double>{0, 2});
  }

  TEST_CASE("unit sits at max S and the top class at min S") {
    const std::vector<io::Bundle> cases{
        demos::circle_height(),
        demos::sphere_height(),
        {CellComplex::simplicial(demos::torus7_facets()), {{0, 3, 1, 4, 2, 5, 1.5}, std::nullopt}},
        {CellComplex::cubical({4, 4}, {true, true}).triangulated(), demos::torus_height().function}};
    for (const auto& b : cases) {
      const auto result = spec_of_function(b.complex, b.function);
      const auto [lo, hi] = std::minmax_element(b.function.values.begin(), b.function.values.end());
      const int top = *std::max_element(result.basis.degrees.begin(), result.basis.degrees.end());
      for (std::size_t i = 0; i < result.basis.degrees.size(); ++i) {
        if (result.basis.degrees[i] == 0) CHECK(result.basis.levels[i] == *hi);
        if (result.basis.degrees[i] == top) CHECK(result.basis.levels[i] == *lo);
      }
    }
  }

  TEST_CASE("express_class") {
    const auto b = demos::torus_height();
    const auto f = build_pair_filtration(b.complex, b.function);
    const auto basis = adapted_basis(f, F2);
    for (std::size_t i = 0; i < basis.cocycles.size(); ++i) {
      Vector e(basis.cocycles.size(), 0);
      e[i] = 1;
      CHECK(express_class(f, basis, basis.cocycles[i], F2) == e);
    }
    // Adding a coboundary does not change the class.
    Vector z = basis.cocycles.back();
    Vector vertex(f.cells.size(), 0);
    vertex[0] = 1;
    const Vector dv = f.coboundary * vertex;
    if (basis.degrees.back() == 1) {
      for (std::size_t i = 0; i < z.size(); ++i) z[i] = F2.add(z[i], dv[i]);
    }
    Vector last(basis.cocycles.size(), 0);
    last.back() = 1;
    CHECK(express_class(f, basis, z, F2) == last);
    CHECK_THROWS_AS(express_class(f, basis, vertex, F2), InvalidComplex);
  }

  TEST_CASE("cup products on the circle and the torus") {
    const auto circle = demos::circle_height();
    const auto cs = spec_of_function(circle.complex, circle.function);
    REQUIRE(cs.module.ring().size() == 1);
    CHECK(cs.module.ring().product(0, 0) == Vector{0});
    CHECK(cup_length(cs.module.module()) == 1);

    for (std::uint32_t p : {2u, 3u}) {
      const PrimeField f(p);
      const auto k = CellComplex::simplicial(demos::torus7_facets());
      const SampledFunction s{{0, 3, 1, 4, 2, 5, 1.5}, std::nullopt};
      const auto filt = build_pair_filtration(k, s, f);
      const auto basis = adapted_basis(filt, f);
      const auto cup = cup_action(k, filt, basis, f);
      CHECK(cup.associative);
      CHECK(cup.graded_commutative);
      REQUIRE(cup.ring.size() == 3);
      CHECK(cup.ring.degrees() == std::vector<int>{1, 1, 2});
      // alpha^2 = beta^2 = 0 and alpha beta = -beta alpha = the top class.
      CHECK(tamarkin::is_zero(cup.ring.product(0, 0)));
      CHECK(tamarkin::is_zero(cup.ring.product(1, 1)));
      const auto ab = cup.ring.product(0, 1);
      const auto ba = cup.ring.product(1, 0);
      CHECK(ab[2] != 0);
      CHECK(ba[2] == f.neg(ab[2]));
      // Cochain-level check: the products of the representatives are
      // cohomologous to the class found in the ring.
      const auto& za = basis.cocycles[cup.ring_basis[0]];
      const auto& zb = basis.cocycles[cup.ring_basis[1]];
      const auto prod = cup_product(k, filt, za, 1, zb, 1, f);
      const auto coords = express_class(filt, basis, prod, f);
      CHECK(coords[cup.ring_basis[2]] == ab[2]);
      const auto module = GradedModule(cup.ring, basis.degrees, cup.action);
      CHECK(cup_length(module) == 2);
      CHECK(oracle::brute_cup_length(module) == 2);
    }
  }

  TEST_CASE("cup products on the sphere and two circles") {
    const auto sphere = demos::sphere_height();
    const auto ss = spec_of_function(sphere.complex, sphere.function);
    CHECK(cup_length(ss.module.module()) == 1);

    std::vector<std::vector<std::size_t>> two{{0, 1}, {1, 2}, {0, 2}, {3, 4}, {4, 5}, {3, 5}};
    const auto k = CellComplex::simplicial(two);
    const auto r = spec_of_function(k, SampledFunction{{0, 1, 2, 0.5, 1.5, 3}, std::nullopt});
    const auto& m = r.module.module();
    REQUIRE(m.ring().size() == 2);
    // Classes on different circles multiply to zero; each degree-1 class is
    // hit from a single component's unit.
    for (std::size_t i = 0; i < 2; ++i) {
      for (std::size_t j = 0; j < 2; ++j) CHECK(tamarkin::is_zero(m.ring().product(i, j)));
      CHECK(tamarkin::rank(m.action()[i]) == 1);
    }
    CHECK(tamarkin::rank(m.action()[0] + m.action()[1]) == 2);
    CHECK(cup_length(m) == 1);
  }

  TEST_CASE("cup action preconditions") {
    const auto torus = demos::torus_height();
    const auto f = build_pair_filtration(torus.complex, torus.function);
    CHECK_THROWS_AS(cup_action(torus.complex, f, adapted_basis(f, F2), F2), UnsupportedComplex);
    const auto dw = demos::double_well();
    const auto g = build_pair_filtration(dw.complex, dw.function);
    CHECK_THROWS_AS(cup_action(dw.complex, g, adapted_basis(g, F2), F2), ActionUnavailable);
  }

  TEST_CASE("supplied actions") {
    const auto torus = demos::torus_height();
    const auto ring = oracle::exterior_ring(F2, 2);
    const auto regular = oracle::regular_module(ring);
    ActionSource src{ActionSource::Mode::kSupplied, ring, regular.action()};
    const auto r = spec_of_function(torus.complex, torus.function, src);
    CHECK(cup_length(r.module.module()) == 2);
    CHECK(r.spec.values == std::vector<double>{0, 1, 2, 3});
    ActionSource bad{ActionSource::Mode::kSupplied, ring, {}};
    CHECK_THROWS_AS(spec_of_function(torus.complex, torus.function, bad), InvalidModule);
  }

  TEST_CASE("gamma on graph-case demos") {
    for (const auto& b : {demos::circle_height(), demos::constant_torus(), demos::sphere_height(),
                          demos::torus_height(), demos::torus_height_wide()}) {
      const ActionSource none{ActionSource::Mode::kNone, {}, {}};
      const auto fwd = spec_of_function(b.complex, b.function, none);
      const auto bwd = spec_of_function(b.complex, dual_function(b.function), none);
      const auto [lo, hi] = std::minmax_element(b.function.values.begin(), b.function.values.end());
      CHECK(spectral_norm(fwd.module, bwd.module) == doctest::Approx(*hi - *lo));
      CHECK(bwd.spec.values.back() == doctest::Approx(-*lo));
      const auto report = gamma_duality_check(fwd.barcode, fwd.module, bwd.module);
      CHECK(report.agree);
      CHECK(report.shifted_dprime == doctest::Approx(*hi - *lo));
    }
  }
}
