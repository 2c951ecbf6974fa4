#pragma once

#include <cstddef>
#include <optional>
#include <tuple>
#include <vector>

#include "tamarkin/barcode.hpp"
#include "tamarkin/field.hpp"
#include "tamarkin/linalg.hpp"

namespace tamarkin {

/// Non-unital graded ring with a homogeneous basis in degrees >= 1.
/// A product triplet (i, j, k, v) means e_i * e_j has coefficient v on e_k.
class GradedRing {
 public:
  using Product = std::tuple<std::size_t, std::size_t, std::size_t, Scalar>;

  GradedRing() = default;
  /// Throws InvalidModule on degrees < 1, out-of-range indices, products
  /// that break the grading, or a non-associative table.
  GradedRing(PrimeField field, std::vector<int> degrees, const std::vector<Product>& products);

  const PrimeField& field() const noexcept { return field_; }
  std::size_t size() const noexcept { return degrees_.size(); }
  const std::vector<int>& degrees() const noexcept { return degrees_; }
  /// Coordinates of e_i * e_j.
  const Vector& product(std::size_t i, std::size_t j) const { return table_[i * size() + j]; }
  std::vector<Product> products() const;

  friend bool operator==(const GradedRing&, const GradedRing&) = default;

 private:
  PrimeField field_{2};
  std::vector<int> degrees_;
  std::vector<Vector> table_;
};

/// Graded right module over a GradedRing. action[r] is the matrix of
/// v |-> v * e_r: column j holds the coordinates of b_j * e_r.
class GradedModule {
 public:
  GradedModule() = default;
  /// Throws InvalidModule when shapes, grading, or (v r) s = v (r s) fail.
  GradedModule(GradedRing ring, std::vector<int> degrees, std::vector<Matrix> action);

  /// Module with no ring elements acting.
  static GradedModule bare(PrimeField field, std::vector<int> degrees);

  const GradedRing& ring() const noexcept { return ring_; }
  const PrimeField& field() const noexcept { return ring_.field(); }
  std::size_t size() const noexcept { return degrees_.size(); }
  const std::vector<int>& degrees() const noexcept { return degrees_; }
  const std::vector<Matrix>& action() const noexcept { return action_; }

  friend bool operator==(const GradedModule&, const GradedModule&) = default;

 private:
  GradedRing ring_;
  std::vector<int> degrees_;
  std::vector<Matrix> action_;
};

/// Q_inf with its flag: Q_{inf,d} is spanned by the basis vectors of level
/// <= d. The flag must be stable under the action.
class FilteredGradedModule {
 public:
  FilteredGradedModule() = default;
  FilteredGradedModule(GradedModule module, std::vector<double> levels);

  const GradedModule& module() const noexcept { return module_; }
  const GradedRing& ring() const noexcept { return module_.ring(); }
  const PrimeField& field() const noexcept { return module_.field(); }
  std::size_t size() const noexcept { return module_.size(); }
  const std::vector<double>& levels() const noexcept { return levels_; }

  friend bool operator==(const FilteredGradedModule&, const FilteredGradedModule&) = default;

 private:
  GradedModule module_;
  std::vector<double> levels_;
};

/// Restriction of the action to the span of `keep` modulo the span of
/// `kill`. Throws InvalidModule if keep is not stable modulo kill.
GradedModule subquotient(const GradedModule& module, const std::vector<std::size_t>& keep,
                         const std::vector<std::size_t>& kill);

/// Largest k with a_0 * r_1 ... r_k != 0; -1 for the zero module.
int cup_length(const GradedModule& module);

/// 0 -> A -f-> B -g-> C -> 0.
struct ExactSequence {
  GradedModule a;
  GradedModule b;
  GradedModule c;
  Matrix f;  // b.size() x a.size()
  Matrix g;  // c.size() x b.size()
};

struct SubadditivityReport {
  int cl_a = -1;
  int cl_b = -1;
  int cl_c = -1;
  bool holds = false;  // cl_b <= cl_a + cl_c + 1
};

/// Throws NotExact when f, g are not module maps forming a short exact
/// sequence.
SubadditivityReport subadditivity_check(const ExactSequence& seq);

/// c(alpha) = smallest level d with alpha in Q_{inf,d}. Throws ZeroClass for
/// alpha = 0 and InvalidModule on a size mismatch.
double spectral_invariant(const FilteredGradedModule& module, const Vector& alpha);

struct SpecSet {
  std::vector<double> values;            // sorted, distinct
  std::vector<std::size_t> multiplicity; // dim jump at each value
};

SpecSet spec(const FilteredGradedModule& module);

struct LsReport {
  std::size_t n = 0;                 // #Spec
  int cl_total = -1;                 // cl(Q_inf)
  std::vector<double> levels;        // d_1 < ... < d_N
  std::vector<int> quotient_cl;      // cl(Q_{d_i} / Q_{d_{i-1}})
  bool inequality_holds = false;     // cl_total <= N - 1 + sum quotient_cl
  std::optional<std::size_t> degenerate_index;
  std::optional<double> degenerate_level;
};

LsReport ls_check(const FilteredGradedModule& module);

/// max Spec(forward) + max Spec(backward). Throws EmptySpec if either is empty.
double spectral_norm(const FilteredGradedModule& forward, const FilteredGradedModule& backward);

/// Rays at 0 with the graded dimensions of Q_inf.
GradedBarcode unit_barcode(const FilteredGradedModule& module);

struct GammaReport {
  double gamma = 0.0;
  double shifted_dprime = 0.0;
  bool agree = false;
};

GammaReport gamma_duality_check(const GradedBarcode& barcode, const FilteredGradedModule& forward,
                                const FilteredGradedModule& backward, double tol = kTol);

}  // namespace tamarkin
