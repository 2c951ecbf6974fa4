#include <cmath>

#include "doctest.h"
#include "oracles.hpp"
#include "tamarkin/demos.hpp"
#include "tamarkin/errors.hpp"
#include "tamarkin/fcomplex.hpp"
#include "tamarkin/random.hpp"

using namespace tamarkin;

namespace {

const PrimeField F2(2);

GradedBarcode bc(GradedBarcode::Bars bars) { return GradedBarcode(std::move(bars)); }

Matrix mat(const PrimeField& f, std::size_t r, std::size_t c, std::vector<std::tuple<std::size_t, std::size_t, int>> e) {
  Matrix m(f, r, c);
  for (auto [i, j, v] : e) m(i, j) = f.from_int(v);
  return m;
}

// A random barcode's minimal complex written in a random filtered basis.
FilteredComplex random_complex(Rng& rng, const PrimeField& field, int max_bars = 5) {
  RandomBarcodeOptions opts;
  opts.max_bars = max_bars;
  opts.degrees = 3;
  const auto c = FilteredComplex::from_barcode(field, random_barcode(rng, opts));
  return oracle::random_basis_change(rng, c);
}

void check_ranks(const FilteredComplex& c) {
  const auto bars = reduce(c);
  for (double x = -3; x <= 3; x += 0.25) {
    for (double y = x; y <= 3.5; y += 0.75) {
      INFO("c = " << x << ", c' = " << y);
      CHECK(oracle::barcode_q_rank(bars, x, y) == oracle::complex_q_rank(c, x, y));
    }
  }
}

// D'h + hD == f - g, checked entrywise.
bool homotopy_equation(const ChainMap& f, const ChainMap& g, const Matrix& h) {
  const auto& dt = f.target().differential();
  const auto& ds = f.source().differential();
  return dt * h + h * ds == f.matrix() - g.matrix();
}

}  // namespace

TEST_SUITE("fcomplex") {
  TEST_CASE("reduce examples") {
    const FilteredComplex pair(F2, {{0, 0.0}, {1, 3.0}}, mat(F2, 2, 2, {{1, 0, 1}}));
    CHECK(reduce(pair) == bc({{0, {{0, 3}}}}));
    CHECK(reduce(FilteredComplex::free(F2, {{0, 1.0}, {2, -1.0}})) ==
          bc({{0, {{1, kInf}}}, {2, {{-1, kInf}}}}));
    // Simplicial circle: coboundary from 3 vertices to 3 edges.
    const FilteredComplex circle(F2, {{0, 0}, {0, 0}, {0, 0}, {1, 0}, {1, 0}, {1, 0}},
                                 mat(F2, 6, 6, {{3, 0, 1}, {3, 1, 1}, {4, 1, 1}, {4, 2, 1}, {5, 0, 1}, {5, 2, 1}}));
    CHECK(reduce(circle) == bc({{0, {{0, kInf}}}, {1, {{0, kInf}}}}));
  }

  TEST_CASE("invalid complexes are rejected") {
    CHECK_THROWS_AS(FilteredComplex(F2, {{0, 0.0}, {0, 1.0}}, mat(F2, 2, 2, {{1, 0, 1}})), InvalidComplex);
    CHECK_THROWS_AS(FilteredComplex(F2, {{0, 2.0}, {1, 1.0}}, mat(F2, 2, 2, {{1, 0, 1}})), InvalidComplex);
    CHECK_THROWS_AS(FilteredComplex(F2, {{0, 0.0}, {1, 0.0}, {2, 0.0}}, mat(F2, 3, 3, {{1, 0, 1}, {2, 1, 1}})),
                    InvalidComplex);
  }

  TEST_CASE("from_barcode reduces back") {
    Rng rng(3);
    for (int trial = 0; trial < 100; ++trial) {
      const auto b = random_barcode(rng);
      CHECK(reduce(FilteredComplex::from_barcode(F2, b)) == b);
    }
  }

  TEST_CASE("reduce agrees with the rank oracle") {
    Rng rng(17);
    for (std::uint32_t p : {2u, 3u, 5u}) {
      const PrimeField f(p);
      for (int trial = 0; trial < 40; ++trial) check_ranks(random_complex(rng, f));
    }
  }

  TEST_CASE("reduce agrees with the rank oracle on cones of random maps") {
    Rng rng(23);
    for (std::uint32_t p : {2u, 3u}) {
      const PrimeField f(p);
      for (int trial = 0; trial < 40; ++trial) {
        const auto a = random_complex(rng, f, 4);
        const auto b = random_complex(rng, f, 4);
        check_ranks(cone(oracle::random_chain_map(rng, a, b, 0.5)));
      }
    }
  }

  TEST_CASE("reduce is invariant under filtered basis change") {
    Rng rng(31);
    for (int trial = 0; trial < 60; ++trial) {
      const PrimeField f(trial % 2 ? 3 : 2);
      const auto a = random_complex(rng, f, 4);
      const auto b = random_complex(rng, f, 4);
      const auto c = cone(oracle::random_chain_map(rng, a, b, 0.25));
      CHECK(reduce(oracle::random_basis_change(rng, c)) == reduce(c));
    }
  }

  TEST_CASE("shift and direct sum act on barcodes") {
    Rng rng(37);
    for (int trial = 0; trial < 50; ++trial) {
      const auto x = random_complex(rng, F2);
      const auto y = random_complex(rng, F2);
      const double c = 0.25 * static_cast<int>(rng() % 9) - 1;
      CHECK(reduce(shift(x, c)) == shift(reduce(x), c));
      auto both = reduce(x);
      const auto ybars = reduce(y);
      for (const auto& [d, bars] : ybars.bars()) {
        for (const auto& bar : bars) both.add(d, bar);
      }
      CHECK(reduce(direct_sum(x, y)) == both);
    }
  }

  TEST_CASE("chain map validation") {
    const auto f = FilteredComplex::free(F2, {{0, 0.0}});
    const auto g = FilteredComplex::free(F2, {{0, 1.0}});
    const auto one = mat(F2, 1, 1, {{0, 0, 1}});
    CHECK_NOTHROW(ChainMap(f, g, 0.0, one));
    CHECK_THROWS_AS(ChainMap(g, f, 0.5, one), IncompatibleMap);
    CHECK_NOTHROW(ChainMap(g, f, 1.0, one));
    const auto h = FilteredComplex::free(F2, {{1, 1.0}});
    CHECK_THROWS_AS(ChainMap(f, h, 0.0, one), IncompatibleMap);
  }

  TEST_CASE("cone examples") {
    Rng rng(41);
    for (int trial = 0; trial < 30; ++trial) {
      const auto c = random_complex(rng, F2);
      CHECK(reduce(cone(ChainMap::tau(c, 0))).empty());
      const auto d = random_complex(rng, F2);
      auto split = reduce(d);
      const auto cbars = reduce(c);
      for (const auto& [deg, bars] : cbars.bars()) {
        for (const auto& bar : bars) split.add(deg - 1, bar);
      }
      CHECK(reduce(cone(ChainMap::zero(c, d, 0))) == split);
    }
    for (double a : {0.25, 1.0, 2.5}) {
      const auto r = FilteredComplex::free(F2, {{0, 0.0}});
      const auto cone_bars = reduce(cone(ChainMap(r, shift(r, 2 * a), 0, mat(F2, 1, 1, {{0, 0, 1}}))));
      CHECK(cone_bars == bc({{-1, {{0, 2 * a}}}}));
    }
  }

  TEST_CASE("cone fits a long exact sequence of ranks") {
    // chi of the cone is chi(target) - chi(source) at every level.
    Rng rng(43);
    for (int trial = 0; trial < 40; ++trial) {
      const auto a = random_complex(rng, F2);
      const auto b = random_complex(rng, F2);
      const auto f = oracle::random_chain_map(rng, a, b, 0);
      const auto cn = cone(f);
      for (double c = -3; c <= 3; c += 0.5) {
        const auto chi = [](const std::map<int, int>& dims) {
          int s = 0;
          for (auto [d, n] : dims) s += (d % 2 == 0 ? 1 : -1) * n;
          return s;
        };
        CHECK(chi(oracle::complex_q_dims(cn, c)) ==
              chi(oracle::complex_q_dims(b, c)) - chi(oracle::complex_q_dims(a, c)));
      }
    }
  }

  TEST_CASE("homotopy examples") {
    Rng rng(47);
    for (int trial = 0; trial < 30; ++trial) {
      const auto a = random_complex(rng, F2);
      const auto b = random_complex(rng, F2);
      const auto f = oracle::random_chain_map(rng, a, b, 0.5);
      const auto h = find_homotopy(f, f);
      REQUIRE(h);
      CHECK(homotopy_equation(f, f, *h));
    }
    // f = 0 and tau_c on a c-torsion complex.
    const auto bars = bc({{0, {{0, 1}, {0.5, 2}}}, {1, {{-1, 0.5}}}});
    const auto c = oracle::random_basis_change(rng, FilteredComplex::from_barcode(F2, bars));
    const double t = torsion_threshold(bars);
    const auto h = find_homotopy(ChainMap::tau(c, t), ChainMap::zero(c, c, t));
    REQUIRE(h);
    CHECK(homotopy_equation(ChainMap::tau(c, t), ChainMap::zero(c, c, t), *h));
    CHECK_FALSE(is_homotopic(ChainMap::tau(c, t - 0.25), ChainMap::zero(c, c, t - 0.25)));
    // id against 0 with an infinite bar.
    const auto ray = FilteredComplex::from_barcode(F2, bc({{0, {{0, kInf}, {0, 1}}}}));
    CHECK_FALSE(is_homotopic(ChainMap::tau(ray, 0), ChainMap::zero(ray, ray, 0)));
  }

  TEST_CASE("ray pair certificates") {
    for (double a : {0.5, 1.0, 3.0}) {
      const auto cert = demos::ray_pair(a);
      CHECK(verify_certificate(cert));
      const auto report = cone_torsion_bound_check(cert);
      CHECK(report.cone_torsion == doctest::Approx(a));
      CHECK(report.bound == doctest::Approx(2 * a));
      CHECK(report.holds);
      // beta with too small a shift cannot be the canonical map; the zero map fails.
      const auto weak = make_certificate(cert.alpha, ChainMap::zero(cert.beta.source(), cert.beta.target(), a - 0.25));
      CHECK_FALSE(verify_certificate(weak));
      CHECK_THROWS_AS(cone_torsion_bound_check(weak), CertificateInvalid);
    }
  }

  TEST_CASE("supplied homotopy witnesses are checked") {
    auto cert = demos::ray_pair(1.0);
    const auto verdict = check_certificate(cert);
    REQUIRE(verdict.valid);
    cert.homotopy_first = verdict.homotopy_first;
    cert.homotopy_second = verdict.homotopy_second;
    CHECK(verify_certificate(cert));
    // A wrong witness on a complex with differential.
    const auto bars = bc({{0, {{0, 1}}}});
    const auto c = FilteredComplex::from_barcode(F2, bars);
    auto torsion_cert = make_certificate(ChainMap::zero(c, c, 0.5), ChainMap::zero(c, c, 0.5));
    CHECK(verify_certificate(torsion_cert));
    torsion_cert.homotopy_first = Matrix(F2, 2, 2);
    CHECK_FALSE(verify_certificate(torsion_cert));
  }

  TEST_CASE("make_certificate rejects mismatched maps") {
    const auto f = FilteredComplex::free(F2, {{0, 0.0}});
    const auto g = FilteredComplex::free(F2, {{0, 1.0}});
    const auto h = FilteredComplex::free(F2, {{0, 2.0}});
    CHECK_THROWS_AS(make_certificate(ChainMap::zero(f, g, 0), ChainMap::zero(h, f, 2)), IncompatibleMap);
  }

  TEST_CASE("random certified pairs verify") {
    Rng rng(53);
    for (int trial = 0; trial < 100; ++trial) {
      const auto cert = random_certified_pair(rng, trial % 3 ? F2 : PrimeField(3));
      CHECK(verify_certificate(cert));
      const double d = dprime_distance(reduce(cert.alpha.source()), reduce(cert.alpha.target()));
      CHECK(d <= cert.a() + cert.b() + kTol);
    }
  }

  TEST_CASE("cone torsion is subadditive") {
    Rng rng(59);
    RandomBarcodeOptions opts;
    opts.ray_probability = 0;
    opts.degrees = 3;
    for (int trial = 0; trial < 200; ++trial) {
      const auto a = oracle::random_basis_change(rng, FilteredComplex::from_barcode(F2, random_barcode(rng, opts)));
      const auto b = oracle::random_basis_change(rng, FilteredComplex::from_barcode(F2, random_barcode(rng, opts)));
      const auto f = oracle::random_chain_map(rng, a, b, 0);
      CHECK(torsion_threshold(reduce(cone(f))) <=
            torsion_threshold(reduce(a)) + torsion_threshold(reduce(b)) + kTol);
    }
  }

  TEST_CASE("cone of a map out of a torsion complex is close to the target") {
    Rng rng(61);
    RandomBarcodeOptions torsion;
    torsion.ray_probability = 0;
    torsion.degrees = 3;
    RandomBarcodeOptions any;
    any.degrees = 3;
    for (int trial = 0; trial < 200; ++trial) {
      const auto a = oracle::random_basis_change(rng, FilteredComplex::from_barcode(F2, random_barcode(rng, torsion)));
      const auto b = oracle::random_basis_change(rng, FilteredComplex::from_barcode(F2, random_barcode(rng, any)));
      const auto f = oracle::random_chain_map(rng, a, b, 0);
      const double c = torsion_threshold(reduce(a));
      CHECK(dprime_distance(reduce(b), reduce(cone(f))) <= 2 * c + kTol);
    }
  }

  TEST_CASE("thickening") {
    Rng rng(67);
    for (int trial = 0; trial < 40; ++trial) {
      const auto c = random_complex(rng, F2);
      for (double a : {0.0, 0.25, 1.0}) {
        CHECK(reduce(thicken(c, a)) == shift(reduce(c), -a));
        const auto rho = thickening_structure_map(c, a, 0);
        CHECK(rho.source() == thicken(c, a));
        const auto report = thickening_cone_checks(c, a);
        CHECK(report.holds);
        CHECK(report.rho_cone_torsion <= 2 * a + kTol);
        CHECK(report.iso_cone_torsion <= 6 * a + kTol);
      }
    }
    const auto ray = FilteredComplex::free(F2, {{0, 0.0}});
    CHECK(thickening_cone_checks(ray, 1.5).rho_cone_torsion == doctest::Approx(1.5));
    CHECK_THROWS(thickening_structure_map(ray, 0, 1));
  }

  TEST_CASE("telescope stages") {
    const auto seq = demos::cauchy_geometric(8);
    const auto chain = realize_sequence(F2, seq);
    const auto tails = seq.tail_sums();
    for (std::size_t n = 0; n < chain.items.size(); ++n) {
      const auto bars = reduce(telescope(chain.items, chain.maps, chain.shifts, n));
      CHECK(bars == shift(seq.items[n], -tails[n]));
    }
    CHECK_THROWS_AS(telescope(chain.items, chain.maps, chain.shifts, 8), LengthMismatch);
    CHECK_THROWS_AS(telescope({}, {}, {}, 0), LengthMismatch);
    auto short_maps = chain.maps;
    short_maps.pop_back();
    CHECK_THROWS_AS(telescope(chain.items, short_maps, chain.shifts, 2), LengthMismatch);
    auto bad_shifts = chain.shifts;
    bad_shifts[0] += 1;
    CHECK_THROWS_AS(telescope(chain.items, chain.maps, bad_shifts, 2), IncompatibleMap);
  }

  TEST_CASE("telescope of a constant sequence is the item") {
    Rng rng(71);
    const auto c = random_complex(rng, F2);
    const std::vector<FilteredComplex> items{c, c, c};
    const std::vector<ChainMap> maps{ChainMap::tau(c, 0), ChainMap::tau(c, 0)};
    CHECK(reduce(telescope(items, maps, {0, 0, 0}, 2)) == reduce(c));
  }

  TEST_CASE("kernel cone check") {
    Rng rng(73);
    RandomPairOptions opts;
    for (int trial = 0; trial < 60; ++trial) {
      opts.equal_shift = 0.25 * static_cast<int>(1 + rng() % 4);
      const auto cert = random_certified_pair(rng, F2, opts);
      REQUIRE(cert.a() == cert.b());
      const auto report = kernel_cone_check(cert);
      CHECK(report.holds);
      CHECK(report.bound == doctest::Approx(6 * cert.a()));
    }
    const auto unequal = demos::ray_pair(1.0);
    CHECK_THROWS_AS(kernel_cone_check(unequal), CertificateInvalid);
  }
}
