#include "tamarkin/specinv.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "tamarkin/errors.hpp"

namespace tamarkin {

namespace {

// v * e_r for a coordinate vector v.
Vector multiply(const GradedRing& ring, const Vector& v, std::size_t r) {
  Vector out(ring.size(), 0);
  const auto& f = ring.field();
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (v[i] == 0) continue;
    const auto& p = ring.product(i, r);
    for (std::size_t k = 0; k < out.size(); ++k) {
      if (p[k] != 0) out[k] = f.add(out[k], f.mul(v[i], p[k]));
    }
  }
  return out;
}

Vector unit_vector(std::size_t n, std::size_t i) {
  Vector v(n, 0);
  v[i] = 1;
  return v;
}

}  // namespace

// --- GradedRing -------------------------------------------------------------------

GradedRing::GradedRing(PrimeField field, std::vector<int> degrees, const std::vector<Product>& products)
    : field_(field), degrees_(std::move(degrees)) {
  const std::size_t n = degrees_.size();
  for (int d : degrees_) {
    if (d < 1) throw InvalidModule("ring basis degrees must be >= 1");
  }
  table_.assign(n * n, Vector(n, 0));
  for (const auto& [i, j, k, v] : products) {
    if (i >= n || j >= n || k >= n) throw InvalidModule("product index out of range");
    const Scalar value = v % field_.characteristic();
    if (value == 0) continue;
    if (degrees_[k] != degrees_[i] + degrees_[j]) {
      throw InvalidModule("product e_" + std::to_string(i) + " * e_" + std::to_string(j) +
                          " breaks the grading");
    }
    auto& cell = table_[i * n + j][k];
    cell = field_.add(cell, value);
  }
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      for (std::size_t k = 0; k < n; ++k) {
        const Vector left = multiply(*this, product(i, j), k);
        const Vector right_inner = product(j, k);
        Vector right(n, 0);
        for (std::size_t m = 0; m < n; ++m) {
          if (right_inner[m] == 0) continue;
          const auto& p = product(i, m);
          for (std::size_t t = 0; t < n; ++t) {
            if (p[t] != 0) right[t] = field_.add(right[t], field_.mul(right_inner[m], p[t]));
          }
        }
        if (left != right) throw InvalidModule("ring product is not associative");
      }
    }
  }
}

std::vector<GradedRing::Product> GradedRing::products() const {
  std::vector<Product> out;
  const std::size_t n = size();
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      const auto& p = product(i, j);
      for (std::size_t k = 0; k < n; ++k) {
        if (p[k] != 0) out.emplace_back(i, j, k, p[k]);
      }
    }
  }
  return out;
}

// --- modules --------------------------------------------------------------------------

GradedModule::GradedModule(GradedRing ring, std::vector<int> degrees, std::vector<Matrix> action)
    : ring_(std::move(ring)), degrees_(std::move(degrees)), action_(std::move(action)) {
  const std::size_t n = degrees_.size();
  const auto& f = ring_.field();
  if (action_.size() != ring_.size()) throw InvalidModule("need one action matrix per ring basis element");
  for (std::size_t r = 0; r < action_.size(); ++r) {
    const Matrix& m = action_[r];
    if (m.rows() != n || m.cols() != n || !(m.field() == f)) {
      throw InvalidModule("action matrix " + std::to_string(r) + " has the wrong shape or field");
    }
    for (std::size_t k = 0; k < n; ++k) {
      for (std::size_t j = 0; j < n; ++j) {
        if (m(k, j) != 0 && degrees_[k] != degrees_[j] + ring_.degrees()[r]) {
          throw InvalidModule("action of e_" + std::to_string(r) + " breaks the grading");
        }
      }
    }
  }
  // (v * e_r) * e_s = v * (e_r e_s)
  for (std::size_t r = 0; r < action_.size(); ++r) {
    for (std::size_t s = 0; s < action_.size(); ++s) {
      Matrix rhs(f, n, n);
      const auto& p = ring_.product(r, s);
      for (std::size_t k = 0; k < p.size(); ++k) {
        if (p[k] != 0) rhs = rhs + action_[k].scaled(p[k]);
      }
      if (!(action_[s] * action_[r] == rhs)) throw InvalidModule("action is not associative");
    }
  }
}

GradedModule GradedModule::bare(PrimeField field, std::vector<int> degrees) {
  return GradedModule(GradedRing(field, {}, {}), std::move(degrees), {});
}

FilteredGradedModule::FilteredGradedModule(GradedModule module, std::vector<double> levels)
    : module_(std::move(module)), levels_(std::move(levels)) {
  if (levels_.size() != module_.size()) throw InvalidModule("need one level per basis vector");
  for (double d : levels_) {
    if (!std::isfinite(d)) throw InvalidModule("levels must be finite");
  }
  for (const auto& m : module_.action()) {
    for (std::size_t k = 0; k < m.rows(); ++k) {
      for (std::size_t j = 0; j < m.cols(); ++j) {
        if (m(k, j) != 0 && levels_[k] > levels_[j] + kTol) {
          throw InvalidModule("flag is not stable under the action");
        }
      }
    }
  }
}

GradedModule subquotient(const GradedModule& module, const std::vector<std::size_t>& keep,
                         const std::vector<std::size_t>& kill) {
  const std::size_t n = module.size();
  std::vector<int> role(n, 0);  // 0 = outside, 1 = keep, 2 = kill
  for (auto i : kill) role.at(i) = 2;
  for (auto i : keep) {
    if (role.at(i) != 0) throw InvalidModule("keep and kill overlap");
    role[i] = 1;
  }
  std::vector<int> degrees;
  for (auto i : keep) degrees.push_back(module.degrees()[i]);
  std::vector<Matrix> action;
  for (const auto& m : module.action()) {
    Matrix out(module.field(), keep.size(), keep.size());
    for (std::size_t b = 0; b < keep.size(); ++b) {
      for (std::size_t k = 0; k < n; ++k) {
        const Scalar v = m(k, keep[b]);
        if (v == 0) continue;
        if (role[k] == 0) throw InvalidModule("span is not stable under the action");
        if (role[k] == 1) {
          const auto pos = static_cast<std::size_t>(std::find(keep.begin(), keep.end(), k) - keep.begin());
          out(pos, b) = v;
        }
      }
    }
    action.push_back(std::move(out));
  }
  return GradedModule(module.ring(), std::move(degrees), std::move(action));
}

int cup_length(const GradedModule& module) {
  if (module.size() == 0) return -1;
  std::vector<Vector> current;
  for (std::size_t i = 0; i < module.size(); ++i) current.push_back(unit_vector(module.size(), i));
  int k = 0;
  // Each step raises degree by at least one, so the loop ends within
  // (number of distinct degrees) steps.
  while (true) {
    std::vector<Vector> next;
    for (const auto& v : current) {
      for (const auto& m : module.action()) {
        Vector w = m * v;
        if (!is_zero(w)) next.push_back(std::move(w));
      }
    }
    next = span_basis(module.field(), next);
    if (next.empty()) return k;
    current = std::move(next);
    ++k;
  }
}

SubadditivityReport subadditivity_check(const ExactSequence& seq) {
  const auto& [a, b, c, f, g] = seq;
  if (!(a.ring() == b.ring()) || !(b.ring() == c.ring())) throw NotExact("modules over different rings");
  if (f.rows() != b.size() || f.cols() != a.size() || g.rows() != c.size() || g.cols() != b.size()) {
    throw NotExact("maps have the wrong shape");
  }
  const auto preserves_degree = [](const Matrix& m, const GradedModule& src, const GradedModule& tgt) {
    for (std::size_t i = 0; i < m.rows(); ++i) {
      for (std::size_t j = 0; j < m.cols(); ++j) {
        if (m(i, j) != 0 && tgt.degrees()[i] != src.degrees()[j]) return false;
      }
    }
    return true;
  };
  if (!preserves_degree(f, a, b) || !preserves_degree(g, b, c)) throw NotExact("maps do not preserve degree");
  for (std::size_t r = 0; r < a.ring().size(); ++r) {
    if (!(f * a.action()[r] == b.action()[r] * f) || !(g * b.action()[r] == c.action()[r] * g)) {
      throw NotExact("maps are not module homomorphisms");
    }
  }
  if (!(g * f).is_zero()) throw NotExact("g o f != 0");
  if (rank(f) != a.size()) throw NotExact("f is not injective");
  if (rank(g) != c.size()) throw NotExact("g is not surjective");
  if (b.size() != a.size() + c.size()) throw NotExact("sequence is not exact in the middle");
  SubadditivityReport report;
  report.cl_a = cup_length(a);
  report.cl_b = cup_length(b);
  report.cl_c = cup_length(c);
  report.holds = report.cl_b <= report.cl_a + report.cl_c + 1;
  return report;
}

double spectral_invariant(const FilteredGradedModule& module, const Vector& alpha) {
  if (alpha.size() != module.size()) throw InvalidModule("class has the wrong dimension");
  double level = -kInf;
  for (std::size_t i = 0; i < alpha.size(); ++i) {
    if (alpha[i] % module.field().characteristic() != 0) level = std::max(level, module.levels()[i]);
  }
  if (level == -kInf) throw ZeroClass("spectral invariant of the zero class");
  return level;
}

namespace {

// Groups basis indices by level, merging levels closer than kTol.
std::vector<std::pair<double, std::vector<std::size_t>>> level_groups(const FilteredGradedModule& module) {
  std::vector<std::size_t> order(module.size());
  std::iota(order.begin(), order.end(), 0);
  const auto& lv = module.levels();
  std::stable_sort(order.begin(), order.end(), [&lv](std::size_t x, std::size_t y) { return lv[x] < lv[y]; });
  std::vector<std::pair<double, std::vector<std::size_t>>> groups;
  for (auto i : order) {
    if (groups.empty() || lv[i] - groups.back().first > kTol) groups.push_back({lv[i], {}});
    groups.back().second.push_back(i);
  }
  return groups;
}

}  // namespace

SpecSet spec(const FilteredGradedModule& module) {
  SpecSet out;
  for (const auto& [level, members] : level_groups(module)) {
    out.values.push_back(level);
    out.multiplicity.push_back(members.size());
  }
  return out;
}

LsReport ls_check(const FilteredGradedModule& module) {
  LsReport report;
  const auto groups = level_groups(module);
  report.n = groups.size();
  report.cl_total = cup_length(module.module());
  std::vector<std::size_t> below;
  int total = 0;
  for (const auto& [level, members] : groups) {
    report.levels.push_back(level);
    const int cl = cup_length(subquotient(module.module(), members, below));
    report.quotient_cl.push_back(cl);
    total += cl;
    below.insert(below.end(), members.begin(), members.end());
  }
  report.inequality_holds = report.cl_total <= static_cast<int>(report.n) - 1 + total;
  if (report.n > 0 && static_cast<int>(report.n) <= report.cl_total) {
    for (std::size_t i = 0; i < report.n; ++i) {
      if (report.quotient_cl[i] >= 1) {
        report.degenerate_index = i;
        report.degenerate_level = report.levels[i];
        break;
      }
    }
  }
  return report;
}

double spectral_norm(const FilteredGradedModule& forward, const FilteredGradedModule& backward) {
  const auto sf = spec(forward);
  const auto sb = spec(backward);
  if (sf.values.empty() || sb.values.empty()) throw EmptySpec("spectral norm of a module with empty Spec");
  return sf.values.back() + sb.values.back();
}

GradedBarcode unit_barcode(const FilteredGradedModule& module) {
  GradedBarcode out;
  for (int d : module.module().degrees()) out.add(d, {0.0, kInf});
  return out;
}

GammaReport gamma_duality_check(const GradedBarcode& barcode, const FilteredGradedModule& forward,
                                const FilteredGradedModule& backward, double tol) {
  GammaReport report;
  report.gamma = spectral_norm(forward, backward);
  report.shifted_dprime = shifted_dprime(unit_barcode(forward), barcode);
  report.agree = std::fabs(report.gamma - report.shifted_dprime) <= tol;
  return report;
}

}  // namespace tamarkin
