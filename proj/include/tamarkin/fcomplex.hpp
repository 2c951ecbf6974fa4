#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "tamarkin/barcode.hpp"
#include "tamarkin/field.hpp"
#include "tamarkin/linalg.hpp"

namespace tamarkin {

/// A generator of cohomological degree `degree` born at `grade`; it stands
/// for the ray sheaf k_[grade, inf)[-degree].
struct Generator {
  int degree = 0;
  double grade = 0.0;

  friend bool operator==(const Generator&, const Generator&) = default;
};

/// Finite complex of ray sheaves over F_p. The differential is a square
/// matrix over all generators: entry (i, j) is the coefficient of generator
/// i in D(generator j). Invariants (checked on construction):
///   - D raises degree by one,
///   - D(j) only involves generators i with grade(j) <= grade(i),
///   - D o D = 0.
class FilteredComplex {
 public:
  FilteredComplex() = default;
  FilteredComplex(PrimeField field, std::vector<Generator> generators, Matrix differential);

  /// Complex with no differential.
  static FilteredComplex free(PrimeField field, std::vector<Generator> generators);

  /// Minimal complex realizing a barcode: one generator per infinite bar and
  /// a pair x_birth -> x_death per finite bar.
  static FilteredComplex from_barcode(PrimeField field, const GradedBarcode& barcode);

  const PrimeField& field() const noexcept { return field_; }
  const std::vector<Generator>& generators() const noexcept { return generators_; }
  const Matrix& differential() const noexcept { return differential_; }
  std::size_t size() const noexcept { return generators_.size(); }

  friend bool operator==(const FilteredComplex&, const FilteredComplex&) = default;

 private:
  PrimeField field_{2};
  std::vector<Generator> generators_;
  Matrix differential_;
};

/// T_c: every grade moves by +c.
FilteredComplex shift(const FilteredComplex& complex, double c);

/// Direct sum; generators of `second` follow those of `first`.
FilteredComplex direct_sum(const FilteredComplex& first, const FilteredComplex& second);

/// Persistence barcode of the complex. Bars of zero length are dropped.
GradedBarcode reduce(const FilteredComplex& complex);

/// Morphism source -> T_shift target. Entry (i, j) is the coefficient of
/// target generator i in the image of source generator j. Invariants:
/// degree preserving, commutes with the differentials, and an entry is
/// nonzero only if grade(source_j) <= grade(target_i) + shift.
class ChainMap {
 public:
  ChainMap(FilteredComplex source, FilteredComplex target, double shift, Matrix matrix);

  static ChainMap zero(FilteredComplex source, FilteredComplex target, double shift);
  /// tau_{0,c}(C): C -> T_c C.
  static ChainMap tau(const FilteredComplex& complex, double c);

  const FilteredComplex& source() const noexcept { return source_; }
  const FilteredComplex& target() const noexcept { return target_; }
  double shift() const noexcept { return shift_; }
  const Matrix& matrix() const noexcept { return matrix_; }

 private:
  FilteredComplex source_;
  FilteredComplex target_;
  double shift_ = 0.0;
  Matrix matrix_;
};

/// `second` o `first` for first: A -> T_a B and second: B -> T_b C; the
/// composite lands in T_{a+b} C.
ChainMap compose(const ChainMap& first, const ChainMap& second);

/// Mapping cone of f: C -> T_a C'. Source generators drop one degree and
/// keep their grade; target generators keep their degree and move to
/// grade + a. Differential (x, y) |-> (-Dx, f x + D'y).
FilteredComplex cone(const ChainMap& map);

/// Chain homotopy h: source^n -> (T_shift target)^{n-1} with
/// D'h + hD = f - g, grade-monotone entries only.
std::optional<Matrix> find_homotopy(const ChainMap& f, const ChainMap& g);
bool is_homotopic(const ChainMap& f, const ChainMap& g);

/// alpha: F -> T_a G and beta: G -> T_b F with T_a beta o alpha ~ tau_{0,a+b}(F)
/// and T_b alpha o beta ~ tau_{0,a+b}(G).
struct InterleavingCertificate {
  ChainMap alpha;
  ChainMap beta;
  /// Optional explicit homotopy witnesses for the two composite conditions.
  std::optional<Matrix> homotopy_first;
  std::optional<Matrix> homotopy_second;

  double a() const noexcept { return alpha.shift(); }
  double b() const noexcept { return beta.shift(); }
};

/// Throws IncompatibleMap when alpha/beta do not connect the same pair of
/// complexes in opposite directions.
InterleavingCertificate make_certificate(ChainMap alpha, ChainMap beta);

struct CertificateVerdict {
  bool valid = false;
  std::string reason;
  std::optional<Matrix> homotopy_first;
  std::optional<Matrix> homotopy_second;
};

CertificateVerdict check_certificate(const InterleavingCertificate& cert);
bool verify_certificate(const InterleavingCertificate& cert);

/// Torsion of Cone(alpha) against the 2(a+b) bound.
struct ConeTorsionReport {
  double cone_torsion = 0.0;
  double bound = 0.0;
  bool holds = false;
  GradedBarcode cone_barcode;
};

/// Throws CertificateInvalid when the certificate does not verify.
ConeTorsionReport cone_torsion_bound_check(const InterleavingCertificate& cert);

/// Shift-kernel realization of the thickening family: K_c o C = T_{-c} C.
FilteredComplex thicken(const FilteredComplex& complex, double c);

/// rho_{b,a}(C): K_b o C -> K_a o C for a <= b.
ChainMap thickening_structure_map(const FilteredComplex& complex, double b, double a);

struct ThickeningReport {
  double a = 0.0;
  double rho_cone_torsion = 0.0;  // Cone(rho_{a,0}(C))
  double rho_bound = 0.0;         // 2a
  double iso_cone_torsion = 0.0;  // Cone(alpha) for the a-isomorphism (rho_{a,0}, rho_{a,0}) on (C, C)
  double iso_bound = 0.0;         // 6a
  bool holds = false;
};

ThickeningReport thickening_cone_checks(const FilteredComplex& complex, double a);

/// Cone check for a certificate read in the kernel sense (a = b): Cone of
/// K_a o F -> G must be 6a-torsion. Throws CertificateInvalid when the
/// certificate fails or a != b.
ConeTorsionReport kernel_cone_check(const InterleavingCertificate& cert);

/// Finite-stage homotopy colimit. maps[n]: C_n -> T_{a_n} C_{n+1}, and
/// shifts[n] = a_{>=n}. With G_n = T_{-a_{>=n}} C_n the maps become
/// G_n -> G_{n+1}; the result is Cone(id - s) for
/// id - s: (+)_{n<N} G_n -> (+)_{n<=N} G_n.
/// Throws LengthMismatch on inconsistent lengths or N out of range, and
/// IncompatibleMap when a map's shift disagrees with shifts[n] - shifts[n+1].
FilteredComplex telescope(const std::vector<FilteredComplex>& items,
                          const std::vector<ChainMap>& maps, const std::vector<double>& shifts,
                          std::size_t stage);

/// Chain-level realization of a Cauchy barcode sequence: complexes from the
/// barcodes and maps built from the consecutive matchings.
struct ChainSequence {
  std::vector<FilteredComplex> items;
  std::vector<ChainMap> maps;
  std::vector<double> shifts;
};
ChainSequence realize_sequence(PrimeField field, const CauchyBarcodeSequence& sequence);

/// Chain map between from_barcode complexes induced by a matching at shift
/// `shift`: matched bars map generator-to-generator, everything else to 0.
ChainMap matching_map(const FilteredComplex& source, const GradedBarcode& source_bars,
                      const FilteredComplex& target, const GradedBarcode& target_bars,
                      const Matching& matching, double shift, bool reverse);

}  // namespace tamarkin
