#include "tamarkin/fcomplex.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

#include "tamarkin/errors.hpp"

namespace tamarkin {

namespace {

bool grade_ok(double source_grade, double target_grade, double shift) {
  return source_grade <= target_grade + shift + kTol;
}

// Generator positions of from_barcode: per degree, per bar, (birth, death).
using BarLayout = std::map<int, std::vector<std::pair<std::size_t, std::optional<std::size_t>>>>;

BarLayout layout_of(const GradedBarcode& barcode) {
  BarLayout out;
  std::size_t next = 0;
  for (const auto& [degree, list] : barcode.bars()) {
    auto& slots = out[degree];
    for (const auto& bar : list) {
      const std::size_t birth = next++;
      std::optional<std::size_t> death;
      if (!bar.infinite()) death = next++;
      slots.emplace_back(birth, death);
    }
  }
  return out;
}

std::string describe(const char* what, std::size_t i, std::size_t j) {
  std::ostringstream msg;
  msg << what << " at entry (" << i << ", " << j << ")";
  return msg.str();
}

}  // namespace

// --- FilteredComplex ---------------------------------------------------------------

FilteredComplex::FilteredComplex(PrimeField field, std::vector<Generator> generators,
                                 Matrix differential)
    : field_(field), generators_(std::move(generators)), differential_(std::move(differential)) {
  const std::size_t n = generators_.size();
  if (differential_.rows() != n || differential_.cols() != n) {
    throw InvalidComplex("differential must be a square matrix over all generators");
  }
  if (!(differential_.field() == field_)) throw InvalidComplex("differential over the wrong field");
  for (const auto& g : generators_) {
    if (!std::isfinite(g.grade)) throw InvalidComplex("generator grades must be finite");
  }
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      if (differential_(i, j) == 0) continue;
      if (generators_[i].degree != generators_[j].degree + 1) {
        throw InvalidComplex(describe("differential does not raise degree by one", i, j));
      }
      if (!grade_ok(generators_[j].grade, generators_[i].grade, 0.0)) {
        throw InvalidComplex(describe("differential lowers the grade", i, j));
      }
    }
  }
  if (!(differential_ * differential_).is_zero()) throw InvalidComplex("D o D != 0");
}

FilteredComplex FilteredComplex::free(PrimeField field, std::vector<Generator> generators) {
  const std::size_t n = generators.size();
  return FilteredComplex(field, std::move(generators), Matrix(field, n, n));
}

FilteredComplex FilteredComplex::from_barcode(PrimeField field, const GradedBarcode& barcode) {
  std::vector<Generator> gens;
  for (const auto& [degree, list] : barcode.bars()) {
    for (const auto& bar : list) {
      gens.push_back({degree, bar.birth});
      if (!bar.infinite()) gens.push_back({degree + 1, bar.death});
    }
  }
  Matrix d(field, gens.size(), gens.size());
  for (const auto& [degree, slots] : layout_of(barcode)) {
    for (const auto& [birth, death] : slots) {
      if (death) d(*death, birth) = 1;
    }
  }
  return FilteredComplex(field, std::move(gens), std::move(d));
}

FilteredComplex shift(const FilteredComplex& complex, double c) {
  auto gens = complex.generators();
  for (auto& g : gens) g.grade += c;
  return FilteredComplex(complex.field(), std::move(gens), complex.differential());
}

FilteredComplex direct_sum(const FilteredComplex& first, const FilteredComplex& second) {
  if (!(first.field() == second.field())) throw IncompatibleMap("direct sum over different fields");
  auto gens = first.generators();
  gens.insert(gens.end(), second.generators().begin(), second.generators().end());
  const std::size_t n1 = first.size();
  Matrix d(first.field(), gens.size(), gens.size());
  for (std::size_t i = 0; i < n1; ++i) {
    for (std::size_t j = 0; j < n1; ++j) d(i, j) = first.differential()(i, j);
  }
  for (std::size_t i = 0; i < second.size(); ++i) {
    for (std::size_t j = 0; j < second.size(); ++j) d(n1 + i, n1 + j) = second.differential()(i, j);
  }
  return FilteredComplex(first.field(), std::move(gens), std::move(d));
}

GradedBarcode reduce(const FilteredComplex& complex) {
  const auto& gens = complex.generators();
  const std::size_t n = gens.size();
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&gens](std::size_t x, std::size_t y) {
    return std::make_pair(gens[x].grade, gens[x].degree) < std::make_pair(gens[y].grade, gens[y].degree);
  });
  std::vector<std::size_t> position(n);
  for (std::size_t p = 0; p < n; ++p) position[order[p]] = p;

  // Column p of the transposed differential: the generators whose image
  // contains order[p].
  const auto& d = complex.differential();
  std::vector<SparseColumn> columns(n);
  for (std::size_t p = 0; p < n; ++p) {
    const std::size_t i = order[p];
    for (std::size_t j = 0; j < n; ++j) {
      if (d(i, j) != 0) columns[p].emplace_back(position[j], d(i, j));
    }
    std::sort(columns[p].begin(), columns[p].end());
  }
  const auto red = reduce_columns(complex.field(), std::move(columns), false);

  GradedBarcode out;
  std::vector<bool> paired(n, false);
  for (std::size_t p = 0; p < n; ++p) {
    if (!red.low[p]) continue;
    const std::size_t q = *red.low[p];
    paired[p] = paired[q] = true;
    const Generator& born = gens[order[q]];
    const Generator& dies = gens[order[p]];
    if (dies.grade - born.grade > kTol) out.add(born.degree, {born.grade, dies.grade});
  }
  for (std::size_t p = 0; p < n; ++p) {
    if (!paired[p]) {
      const Generator& g = gens[order[p]];
      out.add(g.degree, {g.grade, kInf});
    }
  }
  return out;
}

// --- ChainMap ----------------------------------------------------------------------------

ChainMap::ChainMap(FilteredComplex source, FilteredComplex target, double shift, Matrix matrix)
    : source_(std::move(source)), target_(std::move(target)), shift_(shift), matrix_(std::move(matrix)) {
  if (!std::isfinite(shift_)) throw IncompatibleMap("chain map shift must be finite");
  if (!(source_.field() == target_.field()) || !(matrix_.field() == source_.field())) {
    throw IncompatibleMap("chain map over mismatched fields");
  }
  if (matrix_.rows() != target_.size() || matrix_.cols() != source_.size()) {
    throw IncompatibleMap("chain map matrix has the wrong shape");
  }
  const auto& sg = source_.generators();
  const auto& tg = target_.generators();
  for (std::size_t i = 0; i < tg.size(); ++i) {
    for (std::size_t j = 0; j < sg.size(); ++j) {
      if (matrix_(i, j) == 0) continue;
      if (tg[i].degree != sg[j].degree) throw IncompatibleMap(describe("map changes degree", i, j));
      if (!grade_ok(sg[j].grade, tg[i].grade, shift_)) {
        throw IncompatibleMap(describe("map violates the grade bound", i, j));
      }
    }
  }
  if (!(target_.differential() * matrix_ == matrix_ * source_.differential())) {
    throw IncompatibleMap("map does not commute with the differentials");
  }
}

ChainMap ChainMap::zero(FilteredComplex source, FilteredComplex target, double shift) {
  Matrix m(source.field(), target.size(), source.size());
  return ChainMap(std::move(source), std::move(target), shift, std::move(m));
}

ChainMap ChainMap::tau(const FilteredComplex& complex, double c) {
  if (c < 0) throw IncompatibleMap("tau_{0,c} needs c >= 0");
  return ChainMap(complex, complex, c, Matrix::identity(complex.field(), complex.size()));
}

ChainMap compose(const ChainMap& first, const ChainMap& second) {
  if (!(first.target() == second.source())) throw IncompatibleMap("composition of non-adjacent maps");
  return ChainMap(first.source(), second.target(), first.shift() + second.shift(),
                  second.matrix() * first.matrix());
}

FilteredComplex cone(const ChainMap& map) {
  const auto& src = map.source();
  const auto& tgt = map.target();
  const auto& f = src.field();
  const std::size_t ns = src.size();
  const std::size_t nt = tgt.size();
  std::vector<Generator> gens;
  gens.reserve(ns + nt);
  for (const auto& g : src.generators()) gens.push_back({g.degree - 1, g.grade});
  for (const auto& g : tgt.generators()) gens.push_back({g.degree, g.grade + map.shift()});
  Matrix d(f, ns + nt, ns + nt);
  for (std::size_t i = 0; i < ns; ++i) {
    for (std::size_t j = 0; j < ns; ++j) d(i, j) = f.neg(src.differential()(i, j));
  }
  for (std::size_t i = 0; i < nt; ++i) {
    for (std::size_t j = 0; j < ns; ++j) d(ns + i, j) = map.matrix()(i, j);
    for (std::size_t j = 0; j < nt; ++j) d(ns + i, ns + j) = tgt.differential()(i, j);
  }
  return FilteredComplex(f, std::move(gens), std::move(d));
}

std::optional<Matrix> find_homotopy(const ChainMap& f, const ChainMap& g) {
  if (!(f.source() == g.source()) || !(f.target() == g.target()) ||
      std::fabs(f.shift() - g.shift()) > kTol) {
    throw IncompatibleMap("homotopy between maps with different source, target or shift");
  }
  const auto& src = f.source();
  const auto& tgt = f.target();
  const auto& field = src.field();
  const auto& sg = src.generators();
  const auto& tg = tgt.generators();
  const std::size_t ns = sg.size();
  const std::size_t nt = tg.size();
  const Matrix diff = f.matrix() - g.matrix();

  std::vector<std::pair<std::size_t, std::size_t>> unknowns;  // (target k, source j)
  for (std::size_t k = 0; k < nt; ++k) {
    for (std::size_t j = 0; j < ns; ++j) {
      if (tg[k].degree + 1 == sg[j].degree && grade_ok(sg[j].grade, tg[k].grade, f.shift())) {
        unknowns.emplace_back(k, j);
      }
    }
  }
  std::vector<std::pair<std::size_t, std::size_t>> equations;  // (target i, source l)
  std::vector<std::vector<std::size_t>> row_of(nt, std::vector<std::size_t>(ns, SIZE_MAX));
  for (std::size_t i = 0; i < nt; ++i) {
    for (std::size_t l = 0; l < ns; ++l) {
      if (tg[i].degree == sg[l].degree) {
        row_of[i][l] = equations.size();
        equations.emplace_back(i, l);
      }
    }
  }

  Matrix system(field, equations.size(), unknowns.size());
  Vector rhs(equations.size(), 0);
  for (std::size_t e = 0; e < equations.size(); ++e) rhs[e] = diff(equations[e].first, equations[e].second);
  const auto& dt = tgt.differential();
  const auto& ds = src.differential();
  for (std::size_t u = 0; u < unknowns.size(); ++u) {
    const auto [k, j] = unknowns[u];
    // (D' h)(i, j) += D'(i, k) h(k, j)
    for (std::size_t i = 0; i < nt; ++i) {
      if (dt(i, k) != 0 && row_of[i][j] != SIZE_MAX) {
        auto& cell = system(row_of[i][j], u);
        cell = field.add(cell, dt(i, k));
      }
    }
    // (h D)(k, l) += h(k, j) D(j, l)
    for (std::size_t l = 0; l < ns; ++l) {
      if (ds(j, l) != 0 && row_of[k][l] != SIZE_MAX) {
        auto& cell = system(row_of[k][l], u);
        cell = field.add(cell, ds(j, l));
      }
    }
  }
  const auto x = solve(system, rhs);
  if (!x) return std::nullopt;
  Matrix h(field, nt, ns);
  for (std::size_t u = 0; u < unknowns.size(); ++u) h(unknowns[u].first, unknowns[u].second) = (*x)[u];
  return h;
}

bool is_homotopic(const ChainMap& f, const ChainMap& g) { return find_homotopy(f, g).has_value(); }

// --- certificates -------------------------------------------------------------------------

InterleavingCertificate make_certificate(ChainMap alpha, ChainMap beta) {
  if (!(alpha.source() == beta.target()) || !(alpha.target() == beta.source())) {
    throw IncompatibleMap("alpha and beta must connect the same complexes in opposite directions");
  }
  if (alpha.shift() < -kTol || beta.shift() < -kTol) {
    throw IncompatibleMap("interleaving shifts must be >= 0");
  }
  return InterleavingCertificate{std::move(alpha), std::move(beta), std::nullopt, std::nullopt};
}

namespace {

bool witness_ok(const ChainMap& composite, const ChainMap& reference, const Matrix& h) {
  const auto& src = composite.source();
  const auto& tgt = composite.target();
  if (h.rows() != tgt.size() || h.cols() != src.size()) return false;
  for (std::size_t k = 0; k < tgt.size(); ++k) {
    for (std::size_t j = 0; j < src.size(); ++j) {
      if (h(k, j) == 0) continue;
      if (tgt.generators()[k].degree + 1 != src.generators()[j].degree) return false;
      if (!grade_ok(src.generators()[j].grade, tgt.generators()[k].grade, composite.shift())) return false;
    }
  }
  const Matrix lhs = tgt.differential() * h + h * src.differential();
  return lhs == composite.matrix() - reference.matrix();
}

}  // namespace

CertificateVerdict check_certificate(const InterleavingCertificate& cert) {
  CertificateVerdict verdict;
  if (!(cert.alpha.source() == cert.beta.target()) || !(cert.alpha.target() == cert.beta.source())) {
    verdict.reason = "alpha and beta do not connect the same complexes";
    return verdict;
  }
  const double total = cert.a() + cert.b();
  const ChainMap first = compose(cert.alpha, cert.beta);
  const ChainMap second = compose(cert.beta, cert.alpha);
  const ChainMap tau_first = ChainMap::tau(cert.alpha.source(), total);
  const ChainMap tau_second = ChainMap::tau(cert.beta.source(), total);

  const auto resolve = [](const ChainMap& composite, const ChainMap& reference,
                          const std::optional<Matrix>& given) -> std::optional<Matrix> {
    if (given) return witness_ok(composite, reference, *given) ? given : std::nullopt;
    return find_homotopy(composite, reference);
  };
  verdict.homotopy_first = resolve(first, tau_first, cert.homotopy_first);
  if (!verdict.homotopy_first) {
    verdict.reason = "T_a beta o alpha is not homotopic to tau_{0,a+b}(F)";
    return verdict;
  }
  verdict.homotopy_second = resolve(second, tau_second, cert.homotopy_second);
  if (!verdict.homotopy_second) {
    verdict.reason = "T_b alpha o beta is not homotopic to tau_{0,a+b}(G)";
    return verdict;
  }
  verdict.valid = true;
  return verdict;
}

bool verify_certificate(const InterleavingCertificate& cert) { return check_certificate(cert).valid; }

ConeTorsionReport cone_torsion_bound_check(const InterleavingCertificate& cert) {
  const auto verdict = check_certificate(cert);
  if (!verdict.valid) throw CertificateInvalid(verdict.reason);
  ConeTorsionReport report;
  report.cone_barcode = reduce(cone(cert.alpha));
  report.cone_torsion = torsion_threshold(report.cone_barcode);
  report.bound = 2.0 * (cert.a() + cert.b());
  report.holds = report.cone_torsion <= report.bound + kTol;
  return report;
}

// --- thickening kernels ------------------------------------------------------------------------

FilteredComplex thicken(const FilteredComplex& complex, double c) {
  if (c < 0) throw IncompatibleMap("thickening parameter must be >= 0");
  return shift(complex, -c);
}

ChainMap thickening_structure_map(const FilteredComplex& complex, double b, double a) {
  if (a < 0 || b < a) throw IncompatibleMap("rho_{b,a} needs 0 <= a <= b");
  return ChainMap(thicken(complex, b), thicken(complex, a), 0.0,
                  Matrix::identity(complex.field(), complex.size()));
}

ThickeningReport thickening_cone_checks(const FilteredComplex& complex, double a) {
  ThickeningReport report;
  report.a = a;
  const ChainMap rho = thickening_structure_map(complex, a, 0.0);
  report.rho_cone_torsion = torsion_threshold(reduce(cone(rho)));
  report.rho_bound = 2.0 * a;

  // (rho_{a,0}, rho_{a,0}) is an a-isomorphism of (C, C) in the kernel sense;
  // in translation form both maps are tau_{0,a}.
  auto cert = make_certificate(ChainMap::tau(complex, a), ChainMap::tau(complex, a));
  const auto iso = kernel_cone_check(cert);
  report.iso_cone_torsion = iso.cone_torsion;
  report.iso_bound = iso.bound;
  report.holds = report.rho_cone_torsion <= report.rho_bound + kTol && iso.holds;
  return report;
}

ConeTorsionReport kernel_cone_check(const InterleavingCertificate& cert) {
  if (std::fabs(cert.a() - cert.b()) > kTol) {
    throw CertificateInvalid("kernel-sense a-isomorphism needs a == b");
  }
  const auto verdict = check_certificate(cert);
  if (!verdict.valid) throw CertificateInvalid(verdict.reason);
  const double a = cert.a();
  // K_a o F -> G is alpha with its source moved to T_{-a} F; the cone is the
  // translation-form cone moved by -a, which has the same torsion.
  const ChainMap kernel_alpha(thicken(cert.alpha.source(), a), cert.alpha.target(), 0.0,
                              cert.alpha.matrix());
  ConeTorsionReport report;
  report.cone_barcode = reduce(cone(kernel_alpha));
  report.cone_torsion = torsion_threshold(report.cone_barcode);
  report.bound = 6.0 * a;
  report.holds = report.cone_torsion <= report.bound + kTol;
  return report;
}

// --- telescopes --------------------------------------------------------------------------------

FilteredComplex telescope(const std::vector<FilteredComplex>& items,
                          const std::vector<ChainMap>& maps, const std::vector<double>& shifts,
                          std::size_t stage) {
  if (items.empty()) throw LengthMismatch("telescope of an empty sequence");
  if (maps.size() + 1 != items.size()) throw LengthMismatch("need one map per consecutive pair");
  if (shifts.size() != items.size()) throw LengthMismatch("need one tail sum per item");
  if (stage >= items.size()) throw LengthMismatch("telescope stage beyond the sequence");
  for (std::size_t n = 0; n < maps.size(); ++n) {
    if (!(maps[n].source() == items[n]) || !(maps[n].target() == items[n + 1])) {
      throw IncompatibleMap("map " + std::to_string(n) + " does not connect consecutive items");
    }
    if (std::fabs(maps[n].shift() - (shifts[n] - shifts[n + 1])) > kTol) {
      throw IncompatibleMap("map " + std::to_string(n) + " shift differs from a_n");
    }
  }
  const PrimeField field = items.front().field();

  std::vector<FilteredComplex> normalized;
  std::vector<std::size_t> offset{0};
  for (std::size_t n = 0; n <= stage; ++n) {
    normalized.push_back(shift(items[n], -shifts[n]));
    offset.push_back(offset.back() + normalized.back().size());
  }
  FilteredComplex target = FilteredComplex::free(field, {});
  for (const auto& g : normalized) target = direct_sum(target, g);
  FilteredComplex source = FilteredComplex::free(field, {});
  for (std::size_t n = 0; n < stage; ++n) source = direct_sum(source, normalized[n]);

  Matrix m(field, target.size(), source.size());
  for (std::size_t n = 0; n < stage; ++n) {
    const std::size_t len = normalized[n].size();
    for (std::size_t j = 0; j < len; ++j) m(offset[n] + j, offset[n] + j) = 1;
    const Matrix& step = maps[n].matrix();
    for (std::size_t i = 0; i < step.rows(); ++i) {
      for (std::size_t j = 0; j < step.cols(); ++j) {
        if (step(i, j) != 0) m(offset[n + 1] + i, offset[n] + j) = field.neg(step(i, j));
      }
    }
  }
  return cone(ChainMap(std::move(source), std::move(target), 0.0, std::move(m)));
}

ChainMap matching_map(const FilteredComplex& source, const GradedBarcode& source_bars,
                      const FilteredComplex& target, const GradedBarcode& target_bars,
                      const Matching& matching, double shift, bool reverse) {
  const auto src_layout = layout_of(source_bars);
  const auto tgt_layout = layout_of(target_bars);
  Matrix m(source.field(), target.size(), source.size());
  for (const auto& [degree, pairs] : matching) {
    for (const auto& pair : pairs) {
      auto from = reverse ? pair.second : pair.first;
      auto to = reverse ? pair.first : pair.second;
      if (!from || !to) continue;
      const auto& [sb, sd] = src_layout.at(degree).at(*from);
      const auto& [tb, td] = tgt_layout.at(degree).at(*to);
      m(tb, sb) = 1;
      if (sd && td) m(*td, *sd) = 1;
    }
  }
  return ChainMap(source, target, shift, std::move(m));
}

ChainSequence realize_sequence(PrimeField field, const CauchyBarcodeSequence& sequence) {
  if (sequence.bounds.size() + 1 != sequence.items.size()) {
    throw LengthMismatch("expected one bound per consecutive pair");
  }
  ChainSequence out;
  for (const auto& b : sequence.items) out.items.push_back(FilteredComplex::from_barcode(field, b));
  for (std::size_t n = 0; n + 1 < sequence.items.size(); ++n) {
    const auto check = epsilon_interleaved(sequence.items[n], sequence.items[n + 1], sequence.bounds[n]);
    if (!check.interleaved) throw NotCauchy("pair " + std::to_string(n) + " is not a_n-interleaved");
    out.maps.push_back(matching_map(out.items[n], sequence.items[n], out.items[n + 1],
                                    sequence.items[n + 1], check.witness, sequence.bounds[n], false));
  }
  out.shifts = sequence.tail_sums();
  return out;
}

}  // namespace tamarkin
