#pragma once

#include <optional>
#include <random>

#include "tamarkin/barcode.hpp"
#include "tamarkin/fcomplex.hpp"
#include "tamarkin/field.hpp"

namespace tamarkin {

using Rng = std::mt19937_64;

struct RandomBarcodeOptions {
  int max_bars = 6;
  int degrees = 2;             // bars land in degrees 0 .. degrees-1
  double step = 0.25;          // endpoints are multiples of step
  int span = 16;               // births in [-span/2, span/2) * step
  double ray_probability = 0.3;
};

/// Between 0 and max_bars bars with dyadic endpoints.
GradedBarcode random_barcode(Rng& rng, const RandomBarcodeOptions& options = {});

struct RandomPairOptions {
  int max_bars = 6;                  // per side, cancelling pairs excluded
  int max_cancelling = 2;            // acyclic generator pairs added per side
  std::optional<double> equal_shift; // force a = b
  bool shuffle = true;               // permute generator order
};

/// A verified (a,b)-isomorphism between two complexes built from dyadic
/// bars: matched bars move by at most a and b, unmatched bars are shorter
/// than a + b.
InterleavingCertificate random_certified_pair(Rng& rng, PrimeField field, const RandomPairOptions& options = {});

/// F_n = base barcode with endpoints moved by r * 2^-n (|r| <= 1) plus bars
/// of length 2^-n that vanish in the limit; a_n = 2^-(n+1) with a
/// geometric tail of ratio 1/2. `limit` receives the base barcode.
CauchyBarcodeSequence random_cauchy_sequence(Rng& rng, int length, int max_bars,
                                             GradedBarcode* limit = nullptr);

}  // namespace tamarkin
