#pragma once

#include <string>

#include "tamarkin/barcode.hpp"

namespace tamarkin {

/// Persistence diagrams, one panel per degree: a bar [b, d) is the point
/// (b, d); infinite bars sit on a gutter line above the plot.
std::string persistence_svg(const GradedBarcode& barcode);

}  // namespace tamarkin
