// SPDX-License-Identifier: Apache-2.0
#include "vhtk/samples.hpp"

#include <algorithm>
#include <bit>
#include <map>

#include "vhtk/error.hpp"

namespace vh::samples {

CubeComplex point() {
  CubeComplex x;
  x.add_cube("v", 0);
  x.validate();
  return x;
}

CubeComplex standard_cube(int n) {
  if (n < 0 || n > 8) throw InvalidInput("standard_cube: dimension out of range");
  CubeComplex x;
  std::vector<std::string> codes;
  std::size_t total = 1;
  for (int i = 0; i < n; ++i) total *= 3;
  // Order by dimension so faces come before the cubes that use them.
  for (int d = 0; d <= n; ++d) {
    for (std::size_t code = 0; code < total; ++code) {
      std::string s(static_cast<std::size_t>(n), '0');
      std::size_t t = code;
      int free = 0;
      for (int i = n - 1; i >= 0; --i, t /= 3) {
        const int digit = static_cast<int>(t % 3);
        s[static_cast<std::size_t>(i)] = digit == 2 ? '*' : static_cast<char>('0' + digit);
        free += digit == 2 ? 1 : 0;
      }
      if (free != d) continue;
      x.add_cube(n == 0 ? "v" : s, d);
      codes.push_back(s);
    }
  }
  for (CubeId c = 0; c < codes.size(); ++c) {
    const std::string& s = codes[c];
    std::vector<int> free_axes;
    for (int i = 0; i < n; ++i)
      if (s[static_cast<std::size_t>(i)] == '*') free_axes.push_back(i);
    for (std::size_t k = 0; k < free_axes.size(); ++k) {
      for (int side = 0; side < 2; ++side) {
        std::string t = s;
        t[static_cast<std::size_t>(free_axes[k])] = static_cast<char>('0' + side);
        x.set_face(c, static_cast<int>(k), side, *x.find(t), SignedMap::identity(static_cast<int>(free_axes.size()) - 1));
      }
    }
  }
  x.validate();
  return x;
}

namespace {

CubeComplex square_torus(bool twisted) {
  CubeComplex x;
  const CubeId v = x.add_cube("v", 0);
  const CubeId a = x.add_cube("a", 1);
  const CubeId b = x.add_cube("b", 1);
  const CubeId s = x.add_cube("s", 2);
  for (CubeId e : {a, b}) {
    x.set_face(e, 0, 0, v, {});
    x.set_face(e, 0, 1, v, {});
  }
  x.set_face(s, 0, 0, b, SignedMap::identity(1));
  x.set_face(s, 0, 1, b, SignedMap{{AxisImage{0, twisted}}});
  x.set_face(s, 1, 0, a, SignedMap::identity(1));
  x.set_face(s, 1, 1, a, SignedMap::identity(1));
  x.validate();
  return x;
}

}  // namespace

CubeComplex torus() { return square_torus(false); }
CubeComplex klein() { return square_torus(true); }

CubeComplex rose(int r) {
  if (r < 0) throw InvalidInput("rose: negative petal count");
  CubeComplex x;
  const CubeId v = x.add_cube("v", 0);
  for (int i = 0; i < r; ++i) {
    const CubeId e = x.add_cube(std::string(1, static_cast<char>('a' + i)), 1);
    x.set_face(e, 0, 0, v, {});
    x.set_face(e, 0, 1, v, {});
  }
  x.validate();
  return x;
}

CubeComplex ntorus(int n) {
  if (n < 0 || n > 8) throw InvalidInput("ntorus: dimension out of range");
  CubeComplex x;
  std::map<unsigned, CubeId> id;
  for (int d = 0; d <= n; ++d) {
    for (unsigned mask = 0; mask < (1U << n); ++mask) {
      if (std::popcount(mask) != d) continue;
      std::string name;
      for (int i = 0; i < n; ++i)
        if (mask & (1U << i)) name += static_cast<char>('1' + i);
      id[mask] = x.add_cube(name.empty() ? "v" : "e" + name, d);
    }
  }
  for (auto [mask, c] : id) {
    int k = 0;
    for (int i = 0; i < n; ++i) {
      if (!(mask & (1U << i))) continue;
      for (int side = 0; side < 2; ++side)
        x.set_face(c, k, side, id.at(mask & ~(1U << i)), SignedMap::identity(std::popcount(mask) - 1));
      ++k;
    }
  }
  x.validate();
  return x;
}

CubeComplex empty_triangle() {
  const CubeComplex cube = standard_cube(3);
  std::vector<CubeId> keep;
  // A face of one of the squares 0**, *0*, **0 has a 0 somewhere.
  for (CubeId c = 0; c < cube.size(); ++c)
    if (cube.name(c).find('0') != std::string::npos) keep.push_back(c);
  auto sub = extract_subcomplex(cube, keep);
  sub.complex.validate();
  return sub.complex;
}

std::vector<std::string> complex_names() {
  return {"point", "cube1", "cube2", "cube3", "cube4", "torus", "klein", "rose",
          "t1",    "t2",    "t3",    "t4",    "empty-triangle"};
}

CubeComplex by_name(const std::string& name) {
  if (name == "point") return point();
  if (name.size() == 5 && name.rfind("cube", 0) == 0) return standard_cube(name[4] - '0');
  if (name == "torus") return torus();
  if (name == "klein") return klein();
  if (name == "rose") return rose(2);
  if (name.size() == 2 && name[0] == 't' && name[1] >= '1' && name[1] <= '8') return ntorus(name[1] - '0');
  if (name == "empty-triangle") return empty_triangle();
  throw InvalidInput("unknown sample complex '" + name + "'");
}

SymmetricGraph cycle_graph(int n, bool symmetric) {
  std::vector<std::pair<int, int>> e;
  for (int i = 0; i < n; ++i) e.emplace_back(i, (i + 1) % n);
  std::vector<std::vector<int>> gens;
  if (symmetric && n >= 3) {
    std::vector<int> rot(static_cast<std::size_t>(n)), ref(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) {
      rot[static_cast<std::size_t>(i)] = (i + 1) % n;
      ref[static_cast<std::size_t>(i)] = (n - i) % n;
    }
    gens = {rot, ref};
  }
  return SymmetricGraph(n, e, gens);
}

SymmetricGraph complete_graph(int n, bool symmetric) {
  std::vector<std::pair<int, int>> e;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) e.emplace_back(i, j);
  std::vector<std::vector<int>> gens;
  if (symmetric && n >= 2) {
    std::vector<int> rot(static_cast<std::size_t>(n)), swap(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) {
      rot[static_cast<std::size_t>(i)] = (i + 1) % n;
      swap[static_cast<std::size_t>(i)] = i;
    }
    std::swap(swap[0], swap[1]);
    gens = {rot, swap};
  }
  return SymmetricGraph(n, e, gens);
}

SymmetricGraph path_graph(int n) {
  std::vector<std::pair<int, int>> e;
  for (int i = 0; i + 1 < n; ++i) e.emplace_back(i, i + 1);
  return SymmetricGraph(n, e);
}

SymmetricGraph edgeless_graph(int n) { return SymmetricGraph(n, {}); }

}  // namespace vh::samples
