#pragma once

#include <string>
#include <vector>

#include "tamarkin/barcode.hpp"
#include "tamarkin/fcomplex.hpp"
#include "tamarkin/io.hpp"

namespace tamarkin::demos {

/// Height 0, 1, 2 on a 3-vertex circle.
io::Bundle circle_height();
/// f(i) + g(j) on a periodic 4 x 4 grid with f = (0,1,2,1), g = (0,1/2,1,1/2):
/// critical values 0, 1, 2, 3.
io::Bundle torus_height();
/// Same function with g = (0,4,8,4): critical values 0, 2, 8, 10.
io::Bundle torus_height_wide();
/// Constant 1.5 on the 7-vertex torus.
io::Bundle constant_torus();
/// Height 0..3 on the boundary of a tetrahedron.
io::Bundle sphere_height();
/// A two-valley function on an interval fiber whose ends are clamped.
io::Bundle double_well();

/// Facets of the 7-vertex torus, the 3-vertex circle and the tetrahedron
/// boundary.
std::vector<std::vector<std::size_t>> torus7_facets();
std::vector<std::vector<std::size_t>> circle3_facets();
std::vector<std::vector<std::size_t>> sphere4_facets();

/// F_n = {0: [0, 1 + 2^-n)}, a_n = 2^-n for n = 0 .. length-1, geometric tail.
CauchyBarcodeSequence cauchy_geometric(int length = 21);

/// F = [0, inf), G = [a, inf) with the canonical (0, a) maps.
InterleavingCertificate ray_pair(double a = 1.0);

/// Names accepted by `tamarkin demo`.
std::vector<std::string> names();
/// JSON emitted by `tamarkin demo <name>`; throws ParseError for an unknown name.
io::Json emit(const std::string& name);

}  // namespace tamarkin::demos
