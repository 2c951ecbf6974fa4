#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <vector>

#include "tamarkin/barcode.hpp"
#include "tamarkin/fcomplex.hpp"
#include "tamarkin/field.hpp"
#include "tamarkin/linalg.hpp"
#include "tamarkin/specinv.hpp"

namespace tamarkin {

/// A closed cell given by its vertex set. For simplices the vertex list is
/// sorted and defines the orientation; for cubes it lists all corners.
struct Cell {
  int dim = 0;
  std::vector<std::size_t> vertices;
};

/// Finite regular cell complex, simplicial or cubical. Cells are stored by
/// dimension, then lexicographically.
class CellComplex {
 public:
  enum class Kind { kSimplicial, kCubical };

  /// Closes the given simplices under faces. Vertex ids must be 0..V-1, each
  /// used by some simplex. Throws InvalidComplex otherwise.
  static CellComplex simplicial(const std::vector<std::vector<std::size_t>>& simplices, int fiber_dim = 0);

  /// Grid of shape n_1 x ... x n_d; a periodic axis (n_i >= 3) wraps around.
  static CellComplex cubical(const std::vector<std::size_t>& shape, const std::vector<bool>& periodic,
                             int fiber_dim = 0);

  Kind kind() const noexcept { return kind_; }
  int fiber_dim() const noexcept { return fiber_dim_; }
  std::size_t vertex_count() const noexcept { return vertex_count_; }
  const std::vector<Cell>& cells() const noexcept { return cells_; }
  int dimension() const noexcept;

  /// Grid data of a cubical complex (empty for simplicial ones).
  const std::vector<std::size_t>& shape() const noexcept { return shape_; }
  const std::vector<bool>& periodic() const noexcept { return periodic_; }
  /// Top-dimensional simplices as given (simplicial complexes only).
  const std::vector<std::vector<std::size_t>>& facets() const noexcept { return facets_; }

  /// Incidence (face, cell) -> +-1 in the given field.
  Matrix boundary(const PrimeField& field) const;

  /// Freudenthal subdivision of a cubical complex into simplices on the
  /// same vertex set; a simplicial complex is returned unchanged.
  CellComplex triangulated() const;

  /// Index of the simplex with the given sorted vertex list.
  std::optional<std::size_t> find(const std::vector<std::size_t>& vertices) const;

 private:
  Kind kind_ = Kind::kSimplicial;
  int fiber_dim_ = 0;
  std::size_t vertex_count_ = 0;
  std::vector<Cell> cells_;
  std::vector<std::size_t> shape_;
  std::vector<bool> periodic_;
  std::vector<std::vector<std::size_t>> facets_;
  std::map<std::vector<std::size_t>, std::size_t> index_;
  // Cubical boundary: (face index, sign) per cell.
  std::vector<std::vector<std::pair<std::size_t, int>>> cube_faces_;
};

/// Vertex values of a generating function S. Vertices with value >= clamp
/// lie at infinity: cells spanned only by such vertices are removed.
struct SampledFunction {
  std::vector<double> values;
  std::optional<double> clamp;

  bool clamped(std::size_t v) const { return clamp && values[v] >= *clamp; }
};

/// S |-> -S; clamped vertices stay at infinity.
SampledFunction dual_function(const SampledFunction& function);

/// The pair filtration c |-> C^*(E, {S > c}). A cell sigma contributes a
/// relative cochain from level m(sigma) = min of S over its vertices on.
/// `complex` presents the resulting object with generator grade -m(sigma)
/// and degree dim(sigma) - fiber_dim, so reduce(complex) is its barcode.
struct PairFiltration {
  std::vector<std::size_t> cells;    // cells of the relative complex
  std::vector<double> levels;        // m(sigma) per entry of `cells`
  std::vector<double> breakpoints;   // sorted distinct finite vertex values
  Matrix coboundary;                 // over `cells`, entry (i, j) = <delta sigma_j, sigma_i>
  FilteredComplex complex;
};

/// Throws InvalidComplex when the function does not match the complex.
PairFiltration build_pair_filtration(const CellComplex& complex, const SampledFunction& function,
                                     const PrimeField& field = PrimeField(2));

/// Cohomology classes of the pair complex in a basis adapted to the image
/// filtration: representative cocycles with their degree and level.
struct AdaptedBasis {
  std::vector<Vector> cocycles;  // coordinates over PairFiltration::cells
  std::vector<int> degrees;      // dim(sigma) - fiber_dim
  std::vector<double> levels;
};

AdaptedBasis adapted_basis(const PairFiltration& filtration, const PrimeField& field);

/// Coordinates of the class of cocycle z in the adapted basis. Throws
/// InvalidComplex if z is not a cocycle.
Vector express_class(const PairFiltration& filtration, const AdaptedBasis& basis, const Vector& z,
                     const PrimeField& field);

/// Cohomology ring H^{>=1}(M) and its right action on H^*(M), computed with
/// the Alexander-Whitney cup product on the adapted basis.
struct CupStructure {
  GradedRing ring;
  std::vector<std::size_t> ring_basis;  // adapted-basis index of each ring generator
  std::vector<Matrix> action;
  bool associative = false;
  bool graded_commutative = false;
};

/// Needs a simplicial complex without fiber variables; throws
/// UnsupportedComplex for cubical input and ActionUnavailable when fibered
/// or clamped.
CupStructure cup_action(const CellComplex& complex, const PairFiltration& filtration,
                        const AdaptedBasis& basis, const PrimeField& field);

/// Cochain-level cup product over the cells of the filtration.
Vector cup_product(const CellComplex& complex, const PairFiltration& filtration, const Vector& left,
                   int left_dim, const Vector& right, int right_dim, const PrimeField& field);

/// How spec_of_function obtains the H^*(M) action.
struct ActionSource {
  enum class Mode { kCompute, kSupplied, kNone };
  Mode mode = Mode::kCompute;
  GradedRing ring;              // kSupplied
  std::vector<Matrix> action;   // kSupplied, on the emitted basis order
};

struct SpecResult {
  GradedBarcode barcode;
  FilteredGradedModule module;
  SpecSet spec;
  AdaptedBasis basis;
};

SpecResult spec_of_function(const CellComplex& complex, const SampledFunction& function,
                            const ActionSource& source = {}, const PrimeField& field = PrimeField(2));

}  // namespace tamarkin
