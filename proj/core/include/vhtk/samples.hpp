// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <string>
#include <vector>

#include "vhtk/coloring.hpp"
#include "vhtk/cube_complex.hpp"

namespace vh::samples {

CubeComplex point();
/// The standard n-cube [0,1]^n with all of its faces. Cube names are
/// patterns over {0,1,*}.
CubeComplex standard_cube(int n);
/// One square with opposite sides identified: vertex v, edges a, b, square s.
CubeComplex torus();
/// As the torus, with one pair of sides identified by a reversal.
CubeComplex klein();
/// Wedge of r circles.
CubeComplex rose(int r = 2);
/// One n-cube with opposite faces identified.
CubeComplex ntorus(int n);
/// Three squares around a corner of a 3-cube: the link is an empty triangle.
CubeComplex empty_triangle();

/// Names accepted by `by_name`: point, cube1..cube4, torus, klein, rose, t1..t4, empty-triangle.
std::vector<std::string> complex_names();
CubeComplex by_name(const std::string& name);

SymmetricGraph cycle_graph(int n, bool symmetric = false);
SymmetricGraph complete_graph(int n, bool symmetric = false);
SymmetricGraph path_graph(int n);
SymmetricGraph edgeless_graph(int n);

}  // namespace vh::samples
