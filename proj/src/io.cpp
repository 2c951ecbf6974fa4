#include "tamarkin/io.hpp"

#include <cmath>
#include <fstream>
#include <iostream>
#include <sstream>

#include "tamarkin/errors.hpp"

namespace tamarkin::io {

namespace {

// Runs a conversion and turns JSON type errors into ParseError.
template <typename F>
auto guarded(const char* what, F&& f) -> decltype(f()) {
  try {
    return f();
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string(what) + ": " + e.what());
  }
}

const Json& require(const Json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) throw ParseError(std::string("missing key \"") + key + "\"");
  return j.at(key);
}

Json entries_of(const Matrix& m) {
  Json out = Json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) {
    for (std::size_t k = 0; k < m.cols(); ++k) {
      if (m(i, k) != 0) out.push_back({i, k, m(i, k)});
    }
  }
  return out;
}

Matrix matrix_from_entries(const Json& entries, const PrimeField& field, std::size_t rows, std::size_t cols) {
  Matrix m(field, rows, cols);
  if (!entries.is_array()) throw ParseError("entries must be an array of [row, col, value]");
  for (const auto& e : entries) {
    if (!e.is_array() || e.size() != 3) throw ParseError("entry must be [row, col, value]");
    const auto r = e[0].get<std::size_t>();
    const auto c = e[1].get<std::size_t>();
    if (r >= rows || c >= cols) throw ParseError("entry index out of range");
    m(r, c) = field.add(m(r, c), field.from_int(e[2].get<long long>()));
  }
  return m;
}

}  // namespace

Json parse(const std::string& text) {
  try {
    return Json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("malformed JSON: ") + e.what());
  }
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError("cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::string read_input(const std::string& path, std::istream& stdin_stream) {
  if (path != "-") return read_file(path);
  std::ostringstream ss;
  ss << stdin_stream.rdbuf();
  return ss.str();
}

Json real_to_json(double x) {
  if (x == kInf) return "inf";
  if (x == -kInf) return "-inf";
  return x;
}

double real_from_json(const Json& j) {
  if (j.is_string()) {
    const auto s = j.get<std::string>();
    if (s == "inf" || s == "+inf") return kInf;
    if (s == "-inf") return -kInf;
    throw ParseError("expected a number or \"inf\", got \"" + s + "\"");
  }
  if (!j.is_number()) throw ParseError("expected a number");
  return j.get<double>();
}

// --- barcodes --------------------------------------------------------------------------

Json to_json(const GradedBarcode& barcode) {
  Json degrees = Json::object();
  for (const auto& [degree, bars] : barcode.bars()) {
    Json list = Json::array();
    for (const auto& bar : bars) list.push_back({real_to_json(bar.birth), real_to_json(bar.death)});
    degrees[std::to_string(degree)] = std::move(list);
  }
  return {{"degrees", degrees}};
}

GradedBarcode barcode_from_json(const Json& j) {
  return guarded("barcode", [&] {
    GradedBarcode out;
    const auto& degrees = require(j, "degrees");
    if (!degrees.is_object()) throw ParseError("\"degrees\" must be an object");
    for (const auto& [key, bars] : degrees.items()) {
      int degree = 0;
      try {
        std::size_t used = 0;
        degree = std::stoi(key, &used);
        if (used != key.size()) throw std::invalid_argument(key);
      } catch (const std::exception&) {
        throw ParseError("degree key \"" + key + "\" is not an integer");
      }
      if (!bars.is_array()) throw ParseError("bars must be an array");
      for (const auto& bar : bars) {
        if (!bar.is_array() || bar.size() != 2) throw ParseError("bar must be [birth, death]");
        out.add(degree, {real_from_json(bar[0]), real_from_json(bar[1])});
      }
    }
    return out;
  });
}

// --- complexes and maps ---------------------------------------------------------------------

Json to_json(const FilteredComplex& complex) {
  Json gens = Json::array();
  for (const auto& g : complex.generators()) gens.push_back({{"degree", g.degree}, {"grade", g.grade}});
  return {{"generators", gens}, {"boundary", entries_of(complex.differential())}};
}

FilteredComplex complex_from_json(const Json& j, const PrimeField& field) {
  return guarded("complex", [&] {
    std::vector<Generator> gens;
    for (const auto& g : require(j, "generators")) {
      gens.push_back({require(g, "degree").get<int>(), real_from_json(require(g, "grade"))});
    }
    const Json empty = Json::array();
    const Json& boundary = j.contains("boundary") ? j.at("boundary") : empty;
    Matrix d = matrix_from_entries(boundary, field, gens.size(), gens.size());
    return FilteredComplex(field, std::move(gens), std::move(d));
  });
}

Json to_json(const ChainMap& map) {
  return {{"shift", map.shift()}, {"entries", entries_of(map.matrix())}};
}

ChainMap map_from_json(const Json& j, const FilteredComplex& source, const FilteredComplex& target) {
  return guarded("chain map", [&] {
    const double shift = real_from_json(require(j, "shift"));
    Matrix m = matrix_from_entries(require(j, "entries"), source.field(), target.size(), source.size());
    return ChainMap(source, target, shift, std::move(m));
  });
}

Json to_json(const InterleavingCertificate& cert) {
  Json out{{"F", to_json(cert.alpha.source())},
           {"G", to_json(cert.alpha.target())},
           {"a", cert.a()},
           {"b", cert.b()},
           {"alpha", to_json(cert.alpha)},
           {"beta", to_json(cert.beta)}};
  if (cert.homotopy_first) out["homotopy_first"] = entries_of(*cert.homotopy_first);
  if (cert.homotopy_second) out["homotopy_second"] = entries_of(*cert.homotopy_second);
  return out;
}

InterleavingCertificate certificate_from_json(const Json& j, const PrimeField& field) {
  return guarded("certificate", [&] {
    const FilteredComplex f = complex_from_json(require(j, "F"), field);
    const FilteredComplex g = complex_from_json(require(j, "G"), field);
    Json alpha = require(j, "alpha");
    Json beta = require(j, "beta");
    if (j.contains("a") && !alpha.contains("shift")) alpha["shift"] = j.at("a");
    if (j.contains("b") && !beta.contains("shift")) beta["shift"] = j.at("b");
    auto cert = make_certificate(map_from_json(alpha, f, g), map_from_json(beta, g, f));
    if (j.contains("a") && std::fabs(real_from_json(j.at("a")) - cert.a()) > kTol) {
      throw ParseError("\"a\" disagrees with the shift of alpha");
    }
    if (j.contains("b") && std::fabs(real_from_json(j.at("b")) - cert.b()) > kTol) {
      throw ParseError("\"b\" disagrees with the shift of beta");
    }
    if (j.contains("homotopy_first")) {
      cert.homotopy_first = matrix_from_entries(j.at("homotopy_first"), field, f.size(), f.size());
    }
    if (j.contains("homotopy_second")) {
      cert.homotopy_second = matrix_from_entries(j.at("homotopy_second"), field, g.size(), g.size());
    }
    return cert;
  });
}

// --- sequences ---------------------------------------------------------------------------------

Json to_json(const CauchyBarcodeSequence& seq) {
  Json items = Json::array();
  for (const auto& b : seq.items) items.push_back(to_json(b));
  Json tail{{"kind", seq.tail.kind == CauchyTail::Kind::kZero ? "zero" : "geometric"}};
  if (seq.tail.kind == CauchyTail::Kind::kGeometric) tail["ratio"] = seq.tail.ratio;
  return {{"items", items}, {"bounds", seq.bounds}, {"tail", tail}};
}

CauchyBarcodeSequence sequence_from_json(const Json& j) {
  return guarded("sequence", [&] {
    CauchyBarcodeSequence seq;
    for (const auto& item : require(j, "items")) seq.items.push_back(barcode_from_json(item));
    for (const auto& b : require(j, "bounds")) seq.bounds.push_back(real_from_json(b));
    if (j.contains("tail")) {
      const auto kind = require(j.at("tail"), "kind").get<std::string>();
      if (kind == "zero") {
        seq.tail = {CauchyTail::Kind::kZero, 0.0};
      } else if (kind == "geometric") {
        seq.tail = {CauchyTail::Kind::kGeometric, real_from_json(require(j.at("tail"), "ratio"))};
      } else {
        throw ParseError("tail kind must be \"zero\" or \"geometric\"");
      }
    }
    return seq;
  });
}

// --- rings and modules ----------------------------------------------------------------------------

Json to_json(const GradedRing& ring) {
  Json basis = Json::array();
  for (int d : ring.degrees()) basis.push_back({{"degree", d}});
  Json products = Json::array();
  for (const auto& [i, k, m, v] : ring.products()) products.push_back({i, k, m, v});
  return {{"basis", basis}, {"products", products}};
}

GradedRing ring_from_json(const Json& j, const PrimeField& field) {
  return guarded("ring", [&] {
    std::vector<int> degrees;
    for (const auto& b : require(j, "basis")) degrees.push_back(require(b, "degree").get<int>());
    std::vector<GradedRing::Product> products;
    if (j.contains("products")) {
      for (const auto& p : j.at("products")) {
        if (!p.is_array() || p.size() != 4) throw ParseError("product must be [i, j, k, value]");
        products.emplace_back(p[0].get<std::size_t>(), p[1].get<std::size_t>(), p[2].get<std::size_t>(),
                              field.from_int(p[3].get<long long>()));
      }
    }
    return GradedRing(field, std::move(degrees), products);
  });
}

std::vector<Matrix> action_from_json(const Json& j, const GradedRing& ring, std::size_t size) {
  return guarded("action", [&] {
    std::vector<Matrix> action(ring.size(), Matrix(ring.field(), size, size));
    if (!j.is_array()) throw ParseError("action must be an array of [j, r, k, value]");
    for (const auto& e : j) {
      if (!e.is_array() || e.size() != 4) throw ParseError("action entry must be [j, r, k, value]");
      const auto b = e[0].get<std::size_t>();
      const auto r = e[1].get<std::size_t>();
      const auto k = e[2].get<std::size_t>();
      if (b >= size || k >= size || r >= ring.size()) throw ParseError("action index out of range");
      auto& cell = action[r](k, b);
      cell = ring.field().add(cell, ring.field().from_int(e[3].get<long long>()));
    }
    return action;
  });
}

Json to_json(const FilteredGradedModule& module) {
  Json basis = Json::array();
  for (std::size_t i = 0; i < module.size(); ++i) {
    basis.push_back({{"degree", module.module().degrees()[i]}, {"level", module.levels()[i]}});
  }
  Json action = Json::array();
  const auto& acts = module.module().action();
  for (std::size_t r = 0; r < acts.size(); ++r) {
    for (std::size_t b = 0; b < module.size(); ++b) {
      for (std::size_t k = 0; k < module.size(); ++k) {
        if (acts[r](k, b) != 0) action.push_back({b, r, k, acts[r](k, b)});
      }
    }
  }
  return {{"ring", to_json(module.ring())}, {"basis", basis}, {"action", action}};
}

FilteredGradedModule module_from_json(const Json& j, const PrimeField& field) {
  return guarded("module", [&] {
    const GradedRing ring = j.contains("ring") ? ring_from_json(j.at("ring"), field) : GradedRing(field, {}, {});
    std::vector<int> degrees;
    std::vector<double> levels;
    for (const auto& b : require(j, "basis")) {
      degrees.push_back(require(b, "degree").get<int>());
      levels.push_back(real_from_json(require(b, "level")));
    }
    const Json empty = Json::array();
    auto action = action_from_json(j.contains("action") ? j.at("action") : empty, ring, degrees.size());
    return FilteredGradedModule(GradedModule(ring, std::move(degrees), std::move(action)), std::move(levels));
  });
}

// --- cell complexes and functions -------------------------------------------------------------------

Json to_json(const CellComplex& complex) {
  if (complex.kind() == CellComplex::Kind::kCubical) {
    Json periodic = Json::array();
    for (bool p : complex.periodic()) periodic.push_back(p);
    return {{"type", "cubical"}, {"shape", complex.shape()}, {"periodic", periodic}, {"fiber_dim", complex.fiber_dim()}};
  }
  return {{"type", "simplicial"}, {"simplices", complex.facets()}, {"fiber_dim", complex.fiber_dim()}};
}

CellComplex cell_complex_from_json(const Json& j) {
  return guarded("cell complex", [&] {
    const int fiber_dim = j.contains("fiber_dim") ? j.at("fiber_dim").get<int>() : 0;
    const std::string type = j.contains("type") ? j.at("type").get<std::string>() : (j.contains("shape") ? "cubical" : "simplicial");
    if (type == "cubical") {
      const auto shape = require(j, "shape").get<std::vector<std::size_t>>();
      std::vector<bool> periodic(shape.size(), false);
      if (j.contains("periodic")) periodic = j.at("periodic").get<std::vector<bool>>();
      return CellComplex::cubical(shape, periodic, fiber_dim);
    }
    if (type != "simplicial") throw ParseError("complex type must be \"simplicial\" or \"cubical\"");
    return CellComplex::simplicial(require(j, "simplices").get<std::vector<std::vector<std::size_t>>>(), fiber_dim);
  });
}

Json to_json(const SampledFunction& function) {
  Json values = Json::array();
  for (double v : function.values) values.push_back(real_to_json(v));
  Json out{{"values", values}};
  if (function.clamp) out["clamp"] = *function.clamp;
  return out;
}

SampledFunction function_from_json(const Json& j) {
  return guarded("function", [&] {
    SampledFunction f;
    for (const auto& v : require(j, "values")) f.values.push_back(real_from_json(v));
    if (j.contains("clamp") && !j.at("clamp").is_null()) f.clamp = real_from_json(j.at("clamp"));
    return f;
  });
}

SampledFunction function_from_csv(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  std::vector<std::pair<std::size_t, double>> rows;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.find_first_not_of(" \t") == std::string::npos || line[0] == '#') continue;
    const auto comma = line.find(',');
    if (comma == std::string::npos) throw ParseError("line " + std::to_string(line_no) + ": expected vertex_id,value");
    const std::string id_text = line.substr(0, comma);
    const std::string value_text = line.substr(comma + 1);
    try {
      std::size_t used = 0;
      const long long id = std::stoll(id_text, &used);
      if (id < 0) throw std::invalid_argument(id_text);
      const double value = std::stod(value_text);
      rows.emplace_back(static_cast<std::size_t>(id), value);
    } catch (const std::exception&) {
      if (line_no == 1) continue;  // header
      throw ParseError("line " + std::to_string(line_no) + ": cannot parse \"" + line + "\"");
    }
  }
  SampledFunction f;
  std::vector<bool> seen;
  for (const auto& [id, value] : rows) {
    if (id >= f.values.size()) {
      f.values.resize(id + 1, 0.0);
      seen.resize(id + 1, false);
    }
    if (seen[id]) throw ParseError("vertex " + std::to_string(id) + " listed twice");
    seen[id] = true;
    f.values[id] = value;
  }
  for (std::size_t v = 0; v < seen.size(); ++v) {
    if (!seen[v]) throw ParseError("vertex " + std::to_string(v) + " has no value");
  }
  return f;
}

Json to_json(const Bundle& bundle) {
  return {{"complex", to_json(bundle.complex)}, {"function", to_json(bundle.function)}};
}

Bundle bundle_from_json(const Json& j) {
  return {cell_complex_from_json(require(j, "complex")), function_from_json(require(j, "function"))};
}

// --- reports -------------------------------------------------------------------------------------------

Json to_json(const SpecSet& spec) {
  return {{"values", spec.values}, {"multiplicity", spec.multiplicity}};
}

Json to_json(const LsReport& report) {
  Json out{{"n", report.n},
           {"cl_total", report.cl_total},
           {"levels", report.levels},
           {"quotient_cl", report.quotient_cl},
           {"inequality_holds", report.inequality_holds}};
  out["degenerate_index"] = report.degenerate_index ? Json(*report.degenerate_index) : Json(nullptr);
  out["degenerate_level"] = report.degenerate_level ? Json(*report.degenerate_level) : Json(nullptr);
  return out;
}

Json to_json(const LimitCertificate& cert) {
  Json achieved = Json::array();
  for (double x : cert.achieved) achieved.push_back(real_to_json(x));
  Json bounds = Json::array();
  for (double x : cert.bounds) bounds.push_back(real_to_json(x));
  return {{"achieved", achieved}, {"bounds", bounds}, {"holds", cert.holds}};
}

Json to_json(const ConeTorsionReport& report) {
  return {{"cone_torsion", real_to_json(report.cone_torsion)},
          {"bound", real_to_json(report.bound)},
          {"holds", report.holds},
          {"cone_barcode", to_json(report.cone_barcode)}};
}

}  // namespace tamarkin::io
