#pragma once

#include <iosfwd>
#include <string>

#include "json.hpp"
#include "tamarkin/barcode.hpp"
#include "tamarkin/fcomplex.hpp"
#include "tamarkin/specinv.hpp"
#include "tamarkin/sublevel.hpp"

namespace tamarkin::io {

using Json = nlohmann::json;

/// Parses text into JSON; throws ParseError.
Json parse(const std::string& text);
std::string read_file(const std::string& path);
/// Reads a path, or standard input for "-".
std::string read_input(const std::string& path, std::istream& stdin_stream);

// Barcodes: {"degrees": {"0": [[0.0, 5.0], [1.0, "inf"]]}}
Json to_json(const GradedBarcode& barcode);
GradedBarcode barcode_from_json(const Json& j);

// Complexes: {"generators": [{"degree": n, "grade": g}], "boundary": [[row, col, value]]}
Json to_json(const FilteredComplex& complex);
FilteredComplex complex_from_json(const Json& j, const PrimeField& field);

// Chain maps: {"shift": a, "entries": [[row, col, value]]}
Json to_json(const ChainMap& map);
ChainMap map_from_json(const Json& j, const FilteredComplex& source, const FilteredComplex& target);

// Certificates: {"F": complex, "G": complex, "alpha": map, "beta": map}
Json to_json(const InterleavingCertificate& cert);
InterleavingCertificate certificate_from_json(const Json& j, const PrimeField& field);

// Cauchy sequences: {"items": [...], "bounds": [...], "tail": {"kind": "zero" | "geometric", "ratio": r}}
Json to_json(const CauchyBarcodeSequence& seq);
CauchyBarcodeSequence sequence_from_json(const Json& j);

// Rings: {"basis": [{"degree": d}], "products": [[i, j, k, v]]}
Json to_json(const GradedRing& ring);
GradedRing ring_from_json(const Json& j, const PrimeField& field);

// Modules: {"ring": ring, "basis": [{"degree": d, "level": x}], "action": [[j, r, k, v]]}
// where b_j * e_r has coefficient v on b_k.
Json to_json(const FilteredGradedModule& module);
FilteredGradedModule module_from_json(const Json& j, const PrimeField& field);
/// Action matrices in the [[j, r, k, v]] form for a given basis size.
std::vector<Matrix> action_from_json(const Json& j, const GradedRing& ring, std::size_t size);

// Cell complexes: {"type": "simplicial", "simplices": [[0, 1], ...], "fiber_dim": 0}
// or {"type": "cubical", "shape": [n1, n2], "periodic": [true, true]}.
Json to_json(const CellComplex& complex);
CellComplex cell_complex_from_json(const Json& j);

// Functions: {"values": [...], "clamp": x} or CSV lines "vertex_id,value".
Json to_json(const SampledFunction& function);
SampledFunction function_from_json(const Json& j);
SampledFunction function_from_csv(const std::string& text);

/// Complex plus function, the exchange format of `demo` and `spec`.
struct Bundle {
  CellComplex complex;
  SampledFunction function;
};
Json to_json(const Bundle& bundle);
Bundle bundle_from_json(const Json& j);

Json to_json(const SpecSet& spec);
Json to_json(const LsReport& report);
Json to_json(const LimitCertificate& cert);
Json to_json(const ConeTorsionReport& report);

/// JSON number, or the string "inf" / "-inf" for infinities.
Json real_to_json(double x);
double real_from_json(const Json& j);

}  // namespace tamarkin::io
