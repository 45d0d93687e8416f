// SPDX-License-Identifier: Apache-2.0
#include "vhtk/wall_piece.hpp"

#include <map>

#include "vhtk/error.hpp"
#include "vhtk/signature.hpp"

namespace vh {

CubeComplex wall_as_complex(const CubeComplex& x, const WallSystem& ws, int wall, std::vector<Midcube>* cells) {
  if (wall < 0 || wall >= static_cast<int>(ws.size())) throw InvalidInput("no wall " + std::to_string(wall));
  CubeComplex w;
  std::map<Midcube, CubeId> id;
  std::vector<Midcube> list;
  // Lower-dimensional midcubes first so every face target already exists.
  for (int d = 1; d <= x.max_dim(); ++d)
    for (int m : ws.walls[static_cast<std::size_t>(wall)].midcubes) {
      const Midcube mc = ws.midcubes[static_cast<std::size_t>(m)];
      if (x.dim(mc.cube) != d) continue;
      id.emplace(mc, w.add_cube(x.name(mc.cube) + "#" + std::to_string(mc.axis + 1), d - 1));
      list.push_back(mc);
    }
  for (std::size_t n = 0; n < list.size(); ++n) {
    const Midcube mc = list[n];
    const int d = x.dim(mc.cube);
    for (int k = 0; k < d - 1; ++k) {
      const int j = k < mc.axis ? k : k + 1;
      for (int s = 0; s < 2; ++s) {
        const FaceRecord& f = x.face(mc.cube, j, s);
        const int i_in_face = mc.axis < j ? mc.axis : mc.axis - 1;
        const int i2 = f.map.image[static_cast<std::size_t>(i_in_face)].axis;
        SignedMap m;
        for (int b = 0; b < d; ++b) {
          if (b == mc.axis || b == j) continue;
          AxisImage im = f.map.image[static_cast<std::size_t>(b < j ? b : b - 1)];
          if (im.axis > i2) --im.axis;
          m.image.push_back(im);
        }
        w.set_face(static_cast<CubeId>(n), k, s, id.at(Midcube{f.target, i2}), m);
      }
    }
  }
  w.validate();
  if (cells) *cells = list;
  return w;
}

WallPiece induced_wall_piece(const CubeComplex& x, const WallSystem& ws, int wall, const SymmetricGraph& gamma,
                             const Assignment& c, bool use_action) {
  const SignatureTable t(gamma, c);
  WallPiece p;
  p.wall = wall;
  p.color = c.at(static_cast<std::size_t>(wall));
  p.key = t.wall_key(wall);
  std::vector<Midcube> cells;
  p.wall_complex = wall_as_complex(x, ws, wall, &cells);
  const WallSystem inner = wall_complex(p.wall_complex, false);
  // Colour of the wall of X that each wall of w lies on.
  std::vector<std::vector<int>> families(static_cast<std::size_t>(std::max(0, p.color - 1)));
  for (const auto& iw : inner.walls) {
    const Midcube m = inner.midcubes[static_cast<std::size_t>(iw.midcubes.front())];
    const Midcube outer = cells[m.cube];
    const int axis = m.axis < outer.axis ? m.axis : m.axis + 1;
    const int color = c[static_cast<std::size_t>(ws.wall_at(outer.cube, axis))];
    if (color < p.color) families[static_cast<std::size_t>(color - 1)].push_back(iw.id);
  }
  const Subdivision sd = barycentric_subdivide(p.wall_complex);
  p.split = split_along_walls(p.wall_complex, inner, sd, families);
  for (std::size_t i = 0; i < p.split.pattern.strata.size(); ++i)
    p.split.pattern.strata[i].label = std::to_string(i + 1);
  if (use_action) {
    p.stabilizer = 0;
    for (const auto& g : gamma.group_elements()) {
      if (g[static_cast<std::size_t>(wall)] != wall) continue;
      const SignatureTable tg(gamma, act(g, c));
      if (tg.wall_key(wall) == p.key) ++p.stabilizer;
    }
  }
  return p;
}

std::vector<YCatalogEntry> y_catalog(const CubeComplex& x, const WallSystem& ws, const SymmetricGraph& gamma,
                                     int palette, int level, std::size_t bound, unsigned jobs) {
  std::map<std::pair<int, std::string>, Assignment> classes;
  for (const auto& c : proper_colorings(gamma, palette, bound, jobs)) {
    const SignatureTable t(gamma, c);
    for (int w = 0; w < gamma.size(); ++w)
      if (c[static_cast<std::size_t>(w)] == level) classes.try_emplace({w, t.wall_key(w)}, c);
  }
  std::vector<YCatalogEntry> out;
  for (const auto& [k, c] : classes) out.push_back({c, induced_wall_piece(x, ws, k.first, gamma, c, true)});
  return out;
}

nlohmann::json to_json(const WallPiece& p) {
  nlohmann::json strata = nlohmann::json::array();
  for (const auto& st : p.split.pattern.strata) {
    nlohmann::json cells = nlohmann::json::array();
    for (CubeId c : st.cells) cells.push_back(p.split.pattern.complex.name(c));
    strata.push_back({{"label", st.label}, {"cells", cells}});
  }
  nlohmann::json dims = nlohmann::json::array();
  const CubeComplex& y = p.split.pattern.complex;
  for (int d = 0; d <= std::max(0, y.max_dim()); ++d) dims.push_back(y.cubes_of_dim(d).size());
  return {{"wall", p.wall},
          {"color", p.color},
          {"signature", nlohmann::json::parse(p.key)},
          {"stabilizer", p.stabilizer},
          {"wall_cubes", p.wall_complex.size()},
          {"cells_by_dim", dims},
          {"strata", strata},
          {"complex", y.to_json()}};
}

}  // namespace vh
