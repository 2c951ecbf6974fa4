#include "tamarkin/sublevel.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <numeric>
#include <set>
#include <string>

#include "tamarkin/errors.hpp"

namespace tamarkin {

namespace {

bool cell_less(const Cell& x, const Cell& y) {
  if (x.dim != y.dim) return x.dim < y.dim;
  return x.vertices < y.vertices;
}

}  // namespace

// --- CellComplex ------------------------------------------------------------------

CellComplex CellComplex::simplicial(const std::vector<std::vector<std::size_t>>& simplices, int fiber_dim) {
  if (fiber_dim < 0) throw InvalidComplex("fiber_dim must be >= 0");
  CellComplex out;
  out.kind_ = Kind::kSimplicial;
  out.fiber_dim_ = fiber_dim;
  std::set<std::vector<std::size_t>> faces;
  std::size_t max_vertex = 0;
  for (auto s : simplices) {
    if (s.empty()) throw InvalidComplex("empty simplex");
    if (s.size() > 16) throw InvalidComplex("simplex dimension too large");
    std::sort(s.begin(), s.end());
    if (std::adjacent_find(s.begin(), s.end()) != s.end()) throw InvalidComplex("repeated vertex in a simplex");
    max_vertex = std::max(max_vertex, s.back());
    out.facets_.push_back(s);
    const std::size_t k = s.size();
    for (std::size_t mask = 1; mask < (std::size_t{1} << k); ++mask) {
      std::vector<std::size_t> face;
      for (std::size_t i = 0; i < k; ++i) {
        if (mask & (std::size_t{1} << i)) face.push_back(s[i]);
      }
      faces.insert(std::move(face));
    }
  }
  if (faces.empty()) throw InvalidComplex("complex has no cells");
  out.vertex_count_ = max_vertex + 1;
  for (std::size_t v = 0; v < out.vertex_count_; ++v) {
    if (!faces.count({v})) throw InvalidComplex("vertex " + std::to_string(v) + " is not used by any simplex");
  }
  for (const auto& f : faces) out.cells_.push_back({static_cast<int>(f.size()) - 1, f});
  std::sort(out.cells_.begin(), out.cells_.end(), cell_less);
  for (std::size_t i = 0; i < out.cells_.size(); ++i) out.index_[out.cells_[i].vertices] = i;
  return out;
}

CellComplex CellComplex::cubical(const std::vector<std::size_t>& shape, const std::vector<bool>& periodic,
                                 int fiber_dim) {
  if (fiber_dim < 0) throw InvalidComplex("fiber_dim must be >= 0");
  if (shape.empty()) throw InvalidComplex("cubical shape must be nonempty");
  if (periodic.size() != shape.size()) throw InvalidComplex("need one periodic flag per axis");
  if (shape.size() > 8) throw InvalidComplex("too many axes");
  std::size_t total = 1;
  for (std::size_t i = 0; i < shape.size(); ++i) {
    if (shape[i] == 0) throw InvalidComplex("cubical axis of length 0");
    if (periodic[i] && shape[i] < 3) throw InvalidComplex("a periodic axis needs at least 3 vertices");
    total *= shape[i];
  }
  const std::size_t d = shape.size();
  // Mixed radix with axis 0 fastest.
  const auto encode = [&shape](const std::vector<std::size_t>& x) {
    std::size_t id = 0;
    for (std::size_t i = shape.size(); i-- > 0;) id = id * shape[i] + x[i];
    return id;
  };
  const auto decode = [&shape](std::size_t id) {
    std::vector<std::size_t> x(shape.size());
    for (std::size_t i = 0; i < shape.size(); ++i) {
      x[i] = id % shape[i];
      id /= shape[i];
    }
    return x;
  };
  const auto step = [&](std::vector<std::size_t> x, std::size_t axis) {
    x[axis] = (x[axis] + 1) % shape[axis];
    return x;
  };

  CellComplex out;
  out.kind_ = Kind::kCubical;
  out.fiber_dim_ = fiber_dim;
  out.vertex_count_ = total;
  out.shape_ = shape;
  out.periodic_ = periodic;

  struct Raw {
    std::size_t base;
    unsigned mask;
  };
  std::vector<Raw> raws;
  std::vector<Cell> cells;
  for (std::size_t base = 0; base < total; ++base) {
    const auto x = decode(base);
    for (unsigned mask = 0; mask < (1u << d); ++mask) {
      bool ok = true;
      for (std::size_t i = 0; i < d && ok; ++i) {
        if ((mask >> i) & 1u) ok = periodic[i] || x[i] + 1 < shape[i];
      }
      if (!ok) continue;
      std::vector<std::size_t> corners{base};
      for (std::size_t i = 0; i < d; ++i) {
        if (!((mask >> i) & 1u)) continue;
        const std::size_t n = corners.size();
        for (std::size_t c = 0; c < n; ++c) corners.push_back(encode(step(decode(corners[c]), i)));
      }
      std::sort(corners.begin(), corners.end());
      raws.push_back({base, mask});
      cells.push_back({std::popcount(mask), std::move(corners)});
    }
  }
  std::vector<std::size_t> order(cells.size());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&cells](std::size_t a, std::size_t b) { return cell_less(cells[a], cells[b]); });
  std::vector<Raw> sorted_raws;
  for (auto i : order) {
    out.cells_.push_back(cells[i]);
    sorted_raws.push_back(raws[i]);
  }
  for (std::size_t i = 0; i < out.cells_.size(); ++i) {
    if (!out.index_.emplace(out.cells_[i].vertices, i).second) {
      throw InvalidComplex("cubical grid too small: two cells share their corners");
    }
  }
  out.cube_faces_.resize(out.cells_.size());
  for (std::size_t c = 0; c < out.cells_.size(); ++c) {
    const auto [base, mask] = sorted_raws[c];
    int position = 0;
    for (std::size_t i = 0; i < d; ++i) {
      if (!((mask >> i) & 1u)) continue;
      const unsigned face_mask = mask & ~(1u << i);
      const int sign = (position % 2 == 0) ? 1 : -1;
      for (int upper = 0; upper < 2; ++upper) {
        std::size_t face_base = upper ? encode(step(decode(base), i)) : base;
        std::vector<std::size_t> corners{face_base};
        for (std::size_t j = 0; j < d; ++j) {
          if (!((face_mask >> j) & 1u)) continue;
          const std::size_t n = corners.size();
          for (std::size_t k = 0; k < n; ++k) corners.push_back(encode(step(decode(corners[k]), j)));
        }
        std::sort(corners.begin(), corners.end());
        out.cube_faces_[c].emplace_back(out.index_.at(corners), upper ? sign : -sign);
      }
      ++position;
    }
  }
  return out;
}

int CellComplex::dimension() const noexcept { return cells_.empty() ? -1 : cells_.back().dim; }

Matrix CellComplex::boundary(const PrimeField& field) const {
  const std::size_t n = cells_.size();
  Matrix b(field, n, n);
  if (kind_ == Kind::kCubical) {
    for (std::size_t c = 0; c < n; ++c) {
      for (const auto& [face, sign] : cube_faces_[c]) b(face, c) = field.add(b(face, c), field.from_int(sign));
    }
    return b;
  }
  for (std::size_t c = 0; c < n; ++c) {
    const auto& v = cells_[c].vertices;
    if (v.size() < 2) continue;
    for (std::size_t i = 0; i < v.size(); ++i) {
      std::vector<std::size_t> face;
      for (std::size_t j = 0; j < v.size(); ++j) {
        if (j != i) face.push_back(v[j]);
      }
      b(index_.at(face), c) = field.from_int(i % 2 == 0 ? 1 : -1);
    }
  }
  return b;
}

CellComplex CellComplex::triangulated() const {
  if (kind_ == Kind::kSimplicial) return *this;
  const std::size_t d = shape_.size();
  const auto encode = [this](const std::vector<std::size_t>& x) {
    std::size_t id = 0;
    for (std::size_t i = shape_.size(); i-- > 0;) id = id * shape_[i] + x[i];
    return id;
  };
  std::vector<std::vector<std::size_t>> simplices;
  for (const auto& cell : cells_) {
    // Recover base point and axes from the corner set: the base is the
    // corner from which every axis steps forward to another corner.
    std::set<std::size_t> corners(cell.vertices.begin(), cell.vertices.end());
    for (std::size_t base : cell.vertices) {
      std::vector<std::size_t> x(d);
      std::size_t id = base;
      for (std::size_t i = 0; i < d; ++i) {
        x[i] = id % shape_[i];
        id /= shape_[i];
      }
      std::vector<std::size_t> axes;
      for (std::size_t i = 0; i < d; ++i) {
        if (!periodic_[i] && x[i] + 1 >= shape_[i]) continue;
        auto y = x;
        y[i] = (y[i] + 1) % shape_[i];
        if (corners.count(encode(y))) axes.push_back(i);
      }
      if (axes.size() != static_cast<std::size_t>(cell.dim)) continue;
      do {
        std::vector<std::size_t> simplex{base};
        auto y = x;
        for (auto axis : axes) {
          y[axis] = (y[axis] + 1) % shape_[axis];
          simplex.push_back(encode(y));
        }
        simplices.push_back(std::move(simplex));
      } while (std::next_permutation(axes.begin(), axes.end()));
      break;
    }
  }
  return simplicial(simplices, fiber_dim_);
}

std::optional<std::size_t> CellComplex::find(const std::vector<std::size_t>& vertices) const {
  auto it = index_.find(vertices);
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

// --- functions and filtrations -------------------------------------------------------------------

SampledFunction dual_function(const SampledFunction& function) {
  SampledFunction out = function;
  for (std::size_t v = 0; v < out.values.size(); ++v) {
    if (!function.clamped(v)) out.values[v] = -function.values[v];
  }
  return out;
}

PairFiltration build_pair_filtration(const CellComplex& complex, const SampledFunction& function,
                                     const PrimeField& field) {
  if (function.values.size() != complex.vertex_count()) {
    throw InvalidComplex("function has " + std::to_string(function.values.size()) + " values for " +
                         std::to_string(complex.vertex_count()) + " vertices");
  }
  std::set<double> breaks;
  for (std::size_t v = 0; v < function.values.size(); ++v) {
    if (function.clamped(v)) continue;
    if (!std::isfinite(function.values[v])) throw InvalidComplex("function values must be finite");
    breaks.insert(function.values[v]);
  }
  PairFiltration out;
  out.breakpoints.assign(breaks.begin(), breaks.end());
  const auto& cells = complex.cells();
  std::vector<std::size_t> position(cells.size(), SIZE_MAX);
  for (std::size_t c = 0; c < cells.size(); ++c) {
    double m = kInf;
    for (auto v : cells[c].vertices) {
      if (!function.clamped(v)) m = std::min(m, function.values[v]);
    }
    if (m == kInf) continue;
    position[c] = out.cells.size();
    out.cells.push_back(c);
    out.levels.push_back(m);
  }
  const Matrix boundary = complex.boundary(field);
  const std::size_t n = out.cells.size();
  out.coboundary = Matrix(field, n, n);
  for (std::size_t j = 0; j < n; ++j) {
    for (std::size_t c = 0; c < cells.size(); ++c) {
      const Scalar v = boundary(out.cells[j], c);
      if (v != 0 && position[c] != SIZE_MAX) out.coboundary(position[c], j) = v;
    }
  }
  std::vector<Generator> gens;
  for (std::size_t j = 0; j < n; ++j) {
    gens.push_back({cells[out.cells[j]].dim - complex.fiber_dim(), 0.0 - out.levels[j]});
  }
  out.complex = FilteredComplex(field, std::move(gens), out.coboundary);
  return out;
}

AdaptedBasis adapted_basis(const PairFiltration& filtration, const PrimeField& field) {
  const std::size_t n = filtration.cells.size();
  const auto& gens = filtration.complex.generators();
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](std::size_t x, std::size_t y) {
    if (filtration.levels[x] != filtration.levels[y]) return filtration.levels[x] < filtration.levels[y];
    return gens[x].degree > gens[y].degree;
  });
  std::vector<std::size_t> position(n);
  for (std::size_t p = 0; p < n; ++p) position[order[p]] = p;
  std::vector<SparseColumn> columns(n);
  for (std::size_t p = 0; p < n; ++p) {
    for (std::size_t i = 0; i < n; ++i) {
      const Scalar v = filtration.coboundary(i, order[p]);
      if (v != 0) columns[p].emplace_back(position[i], v);
    }
    std::sort(columns[p].begin(), columns[p].end());
  }
  const auto red = reduce_columns(field, std::move(columns), true);
  std::vector<bool> is_low(n, false);
  for (const auto& l : red.low) {
    if (l) is_low[*l] = true;
  }
  struct Entry {
    int degree;
    std::size_t p;
  };
  std::vector<Entry> essential;
  for (std::size_t p = 0; p < n; ++p) {
    if (!red.low[p] && !is_low[p]) essential.push_back({gens[order[p]].degree, p});
  }
  std::stable_sort(essential.begin(), essential.end(),
                   [](const Entry& x, const Entry& y) { return x.degree < y.degree; });
  AdaptedBasis out;
  for (const auto& e : essential) {
    Vector z(n, 0);
    for (const auto& [q, v] : red.transform[e.p]) z[order[q]] = v;
    out.cocycles.push_back(std::move(z));
    out.degrees.push_back(e.degree);
    out.levels.push_back(filtration.levels[order[e.p]]);
  }
  return out;
}

Vector express_class(const PairFiltration& filtration, const AdaptedBasis& basis, const Vector& z,
                     const PrimeField& field) {
  const std::size_t n = filtration.cells.size();
  if (z.size() != n) throw InvalidComplex("cochain has the wrong dimension");
  if (!is_zero(filtration.coboundary * z)) throw InvalidComplex("cochain is not a cocycle");
  const std::size_t k = basis.cocycles.size();
  Matrix system(field, n, k + n);
  for (std::size_t j = 0; j < k; ++j) {
    for (std::size_t i = 0; i < n; ++i) system(i, j) = basis.cocycles[j][i];
  }
  for (std::size_t j = 0; j < n; ++j) {
    for (std::size_t i = 0; i < n; ++i) system(i, k + j) = filtration.coboundary(i, j);
  }
  const auto x = solve(system, z);
  if (!x) throw InvalidComplex("cocycle outside the span of the adapted basis");
  return Vector(x->begin(), x->begin() + static_cast<std::ptrdiff_t>(k));
}

Vector cup_product(const CellComplex& complex, const PairFiltration& filtration, const Vector& left,
                   int left_dim, const Vector& right, int right_dim, const PrimeField& field) {
  if (complex.kind() != CellComplex::Kind::kSimplicial) {
    throw UnsupportedComplex("cup products need a simplicial complex; triangulate cubical input first");
  }
  std::vector<std::size_t> position(complex.cells().size(), SIZE_MAX);
  for (std::size_t i = 0; i < filtration.cells.size(); ++i) position[filtration.cells[i]] = i;
  Vector out(filtration.cells.size(), 0);
  for (std::size_t i = 0; i < filtration.cells.size(); ++i) {
    const Cell& cell = complex.cells()[filtration.cells[i]];
    if (cell.dim != left_dim + right_dim) continue;
    const auto mid = cell.vertices.begin() + left_dim;
    const std::vector<std::size_t> front(cell.vertices.begin(), mid + 1);
    const std::vector<std::size_t> back(mid, cell.vertices.end());
    const auto f = complex.find(front);
    const auto b = complex.find(back);
    if (!f || !b || position[*f] == SIZE_MAX || position[*b] == SIZE_MAX) continue;
    out[i] = field.mul(left[position[*f]], right[position[*b]]);
  }
  return out;
}

CupStructure cup_action(const CellComplex& complex, const PairFiltration& filtration,
                        const AdaptedBasis& basis, const PrimeField& field) {
  if (complex.kind() != CellComplex::Kind::kSimplicial) {
    throw UnsupportedComplex("cup products need a simplicial complex; triangulate cubical input first");
  }
  if (complex.fiber_dim() != 0 || filtration.cells.size() != complex.cells().size()) {
    throw ActionUnavailable("the H^*(M) action of a fibered or clamped complex must be supplied");
  }
  const std::size_t k = basis.cocycles.size();
  std::vector<std::vector<Vector>> products(k, std::vector<Vector>(k));
  for (std::size_t a = 0; a < k; ++a) {
    for (std::size_t b = 0; b < k; ++b) {
      const Vector z = cup_product(complex, filtration, basis.cocycles[a], basis.degrees[a],
                                   basis.cocycles[b], basis.degrees[b], field);
      products[a][b] = express_class(filtration, basis, z, field);
    }
  }
  CupStructure out;
  std::vector<std::size_t> ring_pos(k, SIZE_MAX);
  std::vector<int> ring_degrees;
  for (std::size_t a = 0; a < k; ++a) {
    if (basis.degrees[a] >= 1) {
      ring_pos[a] = out.ring_basis.size();
      out.ring_basis.push_back(a);
      ring_degrees.push_back(basis.degrees[a]);
    }
  }
  std::vector<GradedRing::Product> table;
  for (std::size_t i = 0; i < out.ring_basis.size(); ++i) {
    for (std::size_t j = 0; j < out.ring_basis.size(); ++j) {
      const auto& p = products[out.ring_basis[i]][out.ring_basis[j]];
      for (std::size_t c = 0; c < k; ++c) {
        if (p[c] != 0) table.emplace_back(i, j, ring_pos[c], p[c]);
      }
    }
  }
  out.associative = true;
  for (std::size_t a = 0; a < k && out.associative; ++a) {
    for (std::size_t b = 0; b < k && out.associative; ++b) {
      for (std::size_t c = 0; c < k && out.associative; ++c) {
        Vector left(k, 0), right(k, 0);
        for (std::size_t m = 0; m < k; ++m) {
          const Scalar x = products[a][b][m];
          const Scalar y = products[b][c][m];
          for (std::size_t t = 0; t < k; ++t) {
            left[t] = field.add(left[t], field.mul(x, products[m][c][t]));
            right[t] = field.add(right[t], field.mul(y, products[a][m][t]));
          }
        }
        out.associative = left == right;
      }
    }
  }
  out.graded_commutative = true;
  for (std::size_t a = 0; a < k; ++a) {
    for (std::size_t b = 0; b < k; ++b) {
      const bool odd = (basis.degrees[a] * basis.degrees[b]) % 2 != 0;
      Vector swapped = products[b][a];
      if (odd) {
        for (auto& s : swapped) s = field.neg(s);
      }
      if (swapped != products[a][b]) out.graded_commutative = false;
    }
  }
  out.ring = GradedRing(field, ring_degrees, table);
  for (std::size_t r = 0; r < out.ring_basis.size(); ++r) {
    Matrix m(field, k, k);
    for (std::size_t j = 0; j < k; ++j) m.set_column(j, products[j][out.ring_basis[r]]);
    out.action.push_back(std::move(m));
  }
  return out;
}

SpecResult spec_of_function(const CellComplex& complex, const SampledFunction& function,
                            const ActionSource& source, const PrimeField& field) {
  const PairFiltration filtration = build_pair_filtration(complex, function, field);
  SpecResult out;
  out.barcode = reduce(filtration.complex);
  out.basis = adapted_basis(filtration, field);
  GradedModule module;
  switch (source.mode) {
    case ActionSource::Mode::kCompute: {
      auto cup = cup_action(complex, filtration, out.basis, field);
      module = GradedModule(std::move(cup.ring), out.basis.degrees, std::move(cup.action));
      break;
    }
    case ActionSource::Mode::kSupplied:
      module = GradedModule(source.ring, out.basis.degrees, source.action);
      break;
    case ActionSource::Mode::kNone:
      module = GradedModule::bare(field, out.basis.degrees);
      break;
  }
  out.module = FilteredGradedModule(std::move(module), out.basis.levels);
  out.spec = spec(out.module);
  return out;
}

}  // namespace tamarkin
