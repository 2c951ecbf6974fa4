#pragma once

#include <compare>
#include <cstddef>
#include <limits>
#include <map>
#include <optional>
#include <vector>

namespace tamarkin {

inline constexpr double kInf = std::numeric_limits<double>::infinity();

/// Global comparison tolerance for real endpoints.
inline constexpr double kTol = 1e-9;

/// Half-open bar [birth, death); death may be +inf. Models the sheaf
/// k_[birth, death) on the time axis.
struct Interval {
  double birth = 0.0;
  double death = kInf;

  bool infinite() const noexcept { return death == kInf; }
  double length() const noexcept { return death - birth; }

  friend auto operator<=>(const Interval&, const Interval&) = default;
};

/// Finite multiset of bars per cohomological degree. A bar [a,b) in degree n
/// stands for the summand k_[a,b)[-n]. Bars are kept sorted so that equality
/// is multiset equality.
class GradedBarcode {
 public:
  using Bars = std::map<int, std::vector<Interval>>;

  GradedBarcode() = default;
  /// Throws InvalidBarcode if any bar has a non-finite birth or birth >= death.
  explicit GradedBarcode(Bars bars);

  void add(int degree, Interval bar);

  const Bars& bars() const noexcept { return bars_; }
  /// Bars in `degree`; empty when the degree is absent.
  const std::vector<Interval>& in_degree(int degree) const;
  std::vector<int> degree_list() const;

  bool empty() const noexcept { return bars_.empty(); }
  std::size_t size() const noexcept;

  friend bool operator==(const GradedBarcode&, const GradedBarcode&) = default;

 private:
  Bars bars_;
};

// --- translation and torsion ---------------------------------------------

/// T_c: every endpoint moves by +c.
GradedBarcode shift(const GradedBarcode& barcode, double c);

/// Smallest c >= 0 with tau_{0,c} = 0, i.e. the longest bar (inf if any bar
/// is infinite, 0 for the empty barcode).
double torsion_threshold(const GradedBarcode& barcode);

// --- Hom calculus ---------------------------------------------------------

/// Graded dimensions of RHom(k_src, k_tgt) between interval sheaves:
///   ray -> ray       degree 0 iff s <= a
///   ray -> [a,b)     degree 1 iff a < s <= b
///   [a,b) -> ray c   degree 0 iff a <= c < b
///   [a,b) -> [c,d)   degree 0 iff a <= c < b <= d, degree 1 iff c < a <= d < b
std::map<int, int> hom_dims(const Interval& src, const Interval& tgt);

/// Graded dimensions of Q_c^*(B) = H^* RHom(k_[-c,inf), B).
std::map<int, int> q_dims(const GradedBarcode& barcode, double c);

// --- interleavings and distances -----------------------------------------

/// One matched pair in a degree. Either side may be absent, meaning the bar
/// is matched to the diagonal (killed by the interleaving).
struct MatchedPair {
  std::optional<std::size_t> first;
  std::optional<std::size_t> second;

  friend bool operator==(const MatchedPair&, const MatchedPair&) = default;
};

/// Indices refer to `GradedBarcode::in_degree(degree)` of the two inputs.
using Matching = std::map<int, std::vector<MatchedPair>>;

struct InterleavingResult {
  bool interleaved = false;
  Matching witness;  // meaningful only when interleaved
};

/// Symmetric eps-interleaving test: per degree, matched bars have births and
/// deaths within eps (inf matches inf only); unmatched bars have length
/// <= 2 eps. Deterministic: bars are tried in sorted order and each bar
/// prefers its closest partner.
InterleavingResult epsilon_interleaved(const GradedBarcode& first, const GradedBarcode& second,
                                       double eps);

/// Optimal interleaving parameters: `second` is translated by `shift` and
/// then eps-interleaved with `first`.
struct InterleavingWitness {
  double eps = 0.0;
  double shift = 0.0;
};

enum class ShiftMode {
  kNone,     // shift fixed to 0
  kBounded,  // |shift| <= eps, the (a,b)-isomorphism normalization
  kFree,     // any real shift
};

/// Exact optimum over the finite candidate set generated by endpoint
/// differences and half bar lengths; nullopt when no finite interleaving
/// exists (mismatched numbers of infinite bars in some degree).
std::optional<InterleavingWitness> optimal_interleaving(const GradedBarcode& first,
                                                        const GradedBarcode& second,
                                                        ShiftMode mode);

/// d'(B1,B2) = inf{a + b : (a,b)-isomorphic}.
double dprime_distance(const GradedBarcode& first, const GradedBarcode& second);

/// inf over c of d'(B1, T_c B2).
double shifted_dprime(const GradedBarcode& first, const GradedBarcode& second);

/// inf{a : a-isomorphic}; the distance of the shift thickening kernel.
double interleaving_distance(const GradedBarcode& first, const GradedBarcode& second);

/// Weak-isomorphism distance d is bracketed by [d'/2, d'].
struct DistanceBracket {
  double dprime = 0.0;
  double d_lower = 0.0;
  double d_upper = 0.0;
};
DistanceBracket distance_bracket(const GradedBarcode& first, const GradedBarcode& second);

// --- convolution ----------------------------------------------------------

/// Bilinear extension of the bar-pair table
///   [a,inf) * [b,inf) = [a+b, inf)
///   [a,b)   * [c,inf) = [a+c, b+c)
///   [a,b)   * [c,d)   = [a+c, min(a+d,b+c)) in degree p+q
///                       and [max(a+d,b+c), b+d) in degree p+q+1.
GradedBarcode convolve(const GradedBarcode& first, const GradedBarcode& second);

// --- Cauchy limits ----------------------------------------------------------

struct CauchyTail {
  enum class Kind { kZero, kGeometric };
  Kind kind = Kind::kZero;
  /// Ratio r in (0,1) of a geometric tail a_{k+1} = r a_k beyond the list.
  double ratio = 0.0;
};

/// F_0, ..., F_{L-1} with declared bounds a_0, ..., a_{L-2} for consecutive
/// pairs, plus a description of the bounds beyond the list.
struct CauchyBarcodeSequence {
  std::vector<GradedBarcode> items;
  std::vector<double> bounds;
  CauchyTail tail;

  /// a_{>=n} for n = 0, ..., L-1, including the tail sum.
  std::vector<double> tail_sums() const;
};

struct LimitCertificate {
  std::vector<double> achieved;  // d'(F_n, limit)
  std::vector<double> bounds;    // 16 a_{>=n}
  bool holds = false;
};

struct CauchyLimit {
  GradedBarcode limit;
  LimitCertificate certificate;
  /// Consecutive matchings used to chase bars (pair n matches F_n with F_{n+1}).
  std::vector<Matching> matchings;
};

/// Multiplier turning a_{>=n} into the certified d' bound.
inline constexpr double kLimitConstant = 16.0;

/// Chases bars through consecutive eps = a_n matchings and takes the limit of
/// their endpoints (geometric extrapolation for a geometric tail); bars whose
/// limit length is <= tolerance disappear. Throws NotCauchy if a consecutive
/// pair is not a_n-interleaved or the bounds are malformed.
CauchyLimit cauchy_limit(const CauchyBarcodeSequence& sequence);

}  // namespace tamarkin
