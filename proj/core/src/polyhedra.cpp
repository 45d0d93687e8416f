// SPDX-License-Identifier: Apache-2.0
#include "vhtk/polyhedra.hpp"

#include <algorithm>
#include <map>
#include <set>

#include "vhtk/error.hpp"

namespace vh {

CubeId Polyhedron::find(const std::vector<int>& s, const std::vector<int>& t) const {
  std::string code(static_cast<std::size_t>(graph_size), '0');
  for (int v : s) code[static_cast<std::size_t>(v)] = '*';
  for (int v : t) code[static_cast<std::size_t>(v)] = '1';
  if (graph_size == 0) code = "o";
  return complex().find(code).value_or(kNoCube);
}

std::vector<CubeId> Polyhedron::face(const std::vector<int>& vertices) const {
  std::vector<CubeId> out;
  for (CubeId c = 0; c < complex().size(); ++c) {
    const auto& t = pinned_set[c];
    if (std::all_of(vertices.begin(), vertices.end(),
                    [&](int v) { return std::binary_search(t.begin(), t.end(), v); }))
      out.push_back(c);
  }
  return out;
}

namespace {

void grow_cliques(const std::vector<std::vector<char>>& adj, std::vector<int>& current, int next,
                  std::vector<std::vector<int>>& out) {
  out.push_back(current);
  const int n = static_cast<int>(adj.size());
  for (int v = next; v < n; ++v) {
    bool ok = true;
    for (int u : current) ok = ok && adj[static_cast<std::size_t>(u)][static_cast<std::size_t>(v)];
    if (!ok) continue;
    current.push_back(v);
    grow_cliques(adj, current, v + 1, out);
    current.pop_back();
  }
}

}  // namespace

Polyhedron polyhedron_from_graph(int n, const std::vector<std::pair<int, int>>& edges,
                                 std::vector<std::string> labels) {
  if (n < 0 || n > 62) throw InvalidInput("polyhedron: vertex count out of range");
  if (labels.empty())
    for (int v = 0; v < n; ++v) labels.push_back(std::to_string(v));
  if (static_cast<int>(labels.size()) != n) throw InvalidInput("polyhedron: label count mismatch");
  std::vector<std::vector<char>> adj(static_cast<std::size_t>(n), std::vector<char>(static_cast<std::size_t>(n), 0));
  std::vector<std::pair<int, int>> clean;
  for (auto [u, v] : edges) {
    if (u < 0 || v < 0 || u >= n || v >= n) throw InvalidInput("polyhedron: edge endpoint out of range");
    if (u == v) throw InvalidInput("polyhedron: graph has a loop at " + labels[static_cast<std::size_t>(u)]);
    auto& slot = adj[static_cast<std::size_t>(u)][static_cast<std::size_t>(v)];
    if (slot) throw InvalidInput("polyhedron: duplicate edge " + labels[static_cast<std::size_t>(u)] + "-" +
                                 labels[static_cast<std::size_t>(v)]);
    slot = 1;
    adj[static_cast<std::size_t>(v)][static_cast<std::size_t>(u)] = 1;
    clean.emplace_back(std::min(u, v), std::max(u, v));
  }
  std::sort(clean.begin(), clean.end());

  std::vector<std::vector<int>> cliques;
  std::vector<int> current;
  grow_cliques(adj, current, 0, cliques);

  struct Cell {
    std::vector<int> s, t;
  };
  std::vector<Cell> cells;
  for (const auto& k : cliques) {
    const std::size_t m = k.size();
    for (unsigned mask = 0; mask < (1U << m); ++mask) {
      Cell c;
      for (std::size_t i = 0; i < m; ++i) (mask >> i & 1U ? c.s : c.t).push_back(k[i]);
      cells.push_back(std::move(c));
    }
  }
  std::sort(cells.begin(), cells.end(), [](const Cell& a, const Cell& b) {
    if (a.s.size() != b.s.size()) return a.s.size() < b.s.size();
    return std::tie(a.s, a.t) < std::tie(b.s, b.t);
  });

  Polyhedron p;
  p.graph_size = n;
  p.edges = clean;
  p.labels = labels;
  auto code_of = [n](const std::vector<int>& s, const std::vector<int>& t) {
    if (n == 0) return std::string("o");
    std::string code(static_cast<std::size_t>(n), '0');
    for (int v : s) code[static_cast<std::size_t>(v)] = '*';
    for (int v : t) code[static_cast<std::size_t>(v)] = '1';
    return code;
  };
  CubeComplex& x = p.pattern.complex;
  for (const auto& c : cells) {
    x.add_cube(code_of(c.s, c.t), static_cast<int>(c.s.size()));
    p.free_set.push_back(c.s);
    p.pinned_set.push_back(c.t);
  }
  for (CubeId id = 0; id < cells.size(); ++id) {
    const auto& c = cells[id];
    const int d = static_cast<int>(c.s.size());
    for (int k = 0; k < d; ++k) {
      std::vector<int> s = c.s;
      const int u = s[static_cast<std::size_t>(k)];
      s.erase(s.begin() + k);
      std::vector<int> t1 = c.t;
      t1.insert(std::upper_bound(t1.begin(), t1.end(), u), u);
      x.set_face(id, k, 0, *x.find(code_of(s, c.t)), SignedMap::identity(d - 1));
      x.set_face(id, k, 1, *x.find(code_of(s, t1)), SignedMap::identity(d - 1));
    }
  }
  x.validate({std::max(8, n)});
  p.apex = *x.find(code_of({}, {}));
  for (int v = 0; v < n; ++v) {
    Stratum st;
    st.label = labels[static_cast<std::size_t>(v)];
    st.cells = p.face({v});
    p.pattern.strata.push_back(std::move(st));
  }
  p.pattern.install_collars();
  return p;
}

std::vector<std::pair<int, int>> link_graph(const SimplicialLink& link) {
  std::vector<std::pair<int, int>> out;
  if (link.simplices.empty()) return out;
  for (const auto& s : link.simplices[0]) out.emplace_back(s.vertices[0], s.vertices[1]);
  return out;
}

namespace {

void require_embedded_two_sided(const CubeComplex& x, const WallSystem& ws, const std::set<int>& selected) {
  for (int w : selected) {
    if (w < 0 || w >= static_cast<int>(ws.size())) throw InvalidInput("split: no wall " + std::to_string(w));
    if (!ws.walls[static_cast<std::size_t>(w)].two_sided)
      throw InvalidInput("split: wall " + std::to_string(w) + " is one-sided");
  }
  for (CubeId c = 0; c < x.size(); ++c)
    for (int a = 0; a < x.dim(c); ++a)
      for (int b = a + 1; b < x.dim(c); ++b)
        if (ws.wall_at(c, a) == ws.wall_at(c, b) && selected.count(ws.wall_at(c, a)))
          throw InvalidInput("split: wall " + std::to_string(ws.wall_at(c, a)) + " crosses itself in " + x.name(c));
}

}  // namespace

SplitResult split_along_walls(const CubeComplex& x, const WallSystem& ws, const Subdivision& sd,
                              const std::vector<std::vector<int>>& families) {
  std::map<int, int> family_of;
  std::set<int> selected;
  for (std::size_t f = 0; f < families.size(); ++f)
    for (int w : families[f]) {
      if (!family_of.emplace(w, static_cast<int>(f)).second)
        throw InvalidInput("split: wall " + std::to_string(w) + " listed twice");
      selected.insert(w);
    }
  require_embedded_two_sided(x, ws, selected);
  SplitResult out;
  out.cut = cut_subdivision(x, [&](CubeId c, int a) { return selected.count(ws.wall_at(c, a)) > 0; });
  out.pattern.complex = out.cut.complex;
  out.pattern.strata.resize(families.size());
  for (std::size_t f = 0; f < families.size(); ++f) {
    std::string label = "W";
    for (std::size_t i = 0; i < families[f].size(); ++i)
      label += (i ? "," : "") + std::to_string(families[f][i]);
    out.pattern.strata[f].label = label;
  }
  for (CubeId c = 0; c < out.cut.keys.size(); ++c) {
    const CellKey& k = out.cut.keys[c];
    std::set<int> hit;
    for (std::size_t a = 0; a < k.part.size(); ++a)
      if (k.part[a] == kMid && k.side[a] != kNoSide) hit.insert(family_of.at(ws.wall_at(k.parent, static_cast<int>(a))));
    for (int f : hit) out.pattern.strata[static_cast<std::size_t>(f)].cells.push_back(c);
  }
  out.pattern.immersion = uncut_map(out.cut, sd);
  out.pattern.install_collars();
  return out;
}

int SplitCatalog::facet_class(CubeId edge) const {
  auto it = std::lower_bound(facets.begin(), facets.end(), edge);
  return it != facets.end() && *it == edge ? static_cast<int>(it - facets.begin()) : -1;
}

SplitCatalog split_all(const CubeComplex& x, const WallSystem& ws, const Subdivision& sd) {
  SplitCatalog cat;
  std::vector<std::vector<int>> families;
  for (std::size_t w = 0; w < ws.size(); ++w) families.push_back({static_cast<int>(w)});
  cat.split = split_along_walls(x, ws, sd, families);
  const CutComplex& cut = cat.split.cut;
  const CubeComplex& y = cut.complex;

  cat.vertices = x.vertices();
  std::vector<int> poly_of_vertex(x.size(), -1);
  for (std::size_t i = 0; i < cat.vertices.size(); ++i) poly_of_vertex[cat.vertices[i]] = static_cast<int>(i);
  cat.links = all_vertex_links(x);
  for (const auto& link : cat.links) {
    std::vector<std::string> labels;
    for (const auto& lv : link.vertices) labels.push_back(x.name(lv.edge) + std::to_string(lv.end));
    cat.models.push_back(polyhedron_from_graph(static_cast<int>(link.vertices.size()), link_graph(link), labels));
  }
  const std::size_t np = cat.vertices.size();
  cat.cells.resize(np);
  cat.lifts.resize(np);
  for (std::size_t p = 0; p < np; ++p) {
    cat.lifts[p].target.assign(cat.models[p].complex().size(), kNoCube);
    cat.lifts[p].axes.resize(cat.models[p].complex().size());
  }
  cat.polyhedron_of_cell.assign(y.size(), -1);
  for (CubeId c = 0; c < y.size(); ++c) {
    const CellKey& k = cut.keys[c];
    const auto rho = cut.parent_corner(c);
    VHTK_CHECK(rho.has_value(), "fully split cell without a corner");
    const CubeId v = x.corner(k.parent, *rho);
    const int p = poly_of_vertex[v];
    const SimplicialLink& link = cat.links[static_cast<std::size_t>(p)];
    const Polyhedron& model = cat.models[static_cast<std::size_t>(p)];
    std::vector<int> index(k.part.size());
    std::vector<int> s, t;
    for (std::size_t a = 0; a < k.part.size(); ++a) {
      index[a] = link.index_of(link_vertex_at(x, k.parent, *rho, static_cast<int>(a)));
      VHTK_CHECK(index[a] >= 0, "split cell axis outside the link");
      (k.part[a] == kMid ? t : s).push_back(index[a]);
    }
    std::sort(s.begin(), s.end());
    std::sort(t.begin(), t.end());
    const CubeId m = model.find(s, t);
    if (m == kNoCube) throw InvalidInput("split: cell " + y.name(c) + " has no model cell (link not simplicial)");
    // Axes of the split cell -> axes of the model cell.
    SignedMap to_model;
    for (std::size_t a = 0; a < k.part.size(); ++a) {
      if (k.part[a] == kMid) continue;
      const int pos = static_cast<int>(std::lower_bound(s.begin(), s.end(), index[a]) - s.begin());
      to_model.image.push_back({pos, (*rho)[a] != 0});
    }
    auto& lift = cat.lifts[static_cast<std::size_t>(p)];
    VHTK_CHECK(lift.target[m] == kNoCube, "two split cells over one model cell");
    lift.target[m] = c;
    lift.axes[m] = to_model.inverse();
    cat.polyhedron_of_cell[c] = p;
    cat.cells[static_cast<std::size_t>(p)].push_back(c);
  }
  for (std::size_t p = 0; p < np; ++p) {
    const auto& lift = cat.lifts[p];
    for (CubeId m = 0; m < lift.size(); ++m)
      VHTK_CHECK(lift.target[m] != kNoCube, "model cell without a lift");
    const std::string defect = combinatorial_defect(cat.models[p].complex(), y, lift);
    VHTK_CHECK(defect.empty(), "lift of P(link) is not combinatorial: " + defect);
  }

  cat.facets = x.cubes_of_dim(1);
  for (CubeId e : cat.facets) {
    cat.facet_wall.push_back(ws.dual_wall(e));
    cat.incidence.emplace_back(poly_of_vertex[x.face(e, 0, 0).target], poly_of_vertex[x.face(e, 0, 1).target]);
  }
  cat.slots.resize(np);
  for (std::size_t p = 0; p < np; ++p) {
    const auto& link = cat.links[p];
    for (std::size_t i = 0; i < link.vertices.size(); ++i) {
      const LinkVertex& lv = link.vertices[i];
      FacetSlot slot;
      slot.polyhedron = static_cast<int>(p);
      slot.link_index = static_cast<int>(i);
      slot.edge = lv.edge;
      slot.end = lv.end;
      slot.wall = ws.dual_wall(lv.edge);
      slot.up = lv.end ^ ws.sign[static_cast<std::size_t>(ws.midcube(lv.edge, 0))];
      cat.slots[p].push_back(slot);
    }
  }
  return cat;
}

nlohmann::json to_json(const Polyhedron& p) {
  nlohmann::json edges = nlohmann::json::array();
  for (auto [u, v] : p.edges) edges.push_back({p.labels[static_cast<std::size_t>(u)], p.labels[static_cast<std::size_t>(v)]});
  nlohmann::json counts = nlohmann::json::array();
  for (int d = 0; d <= std::max(0, p.complex().max_dim()); ++d) counts.push_back(p.complex().cubes_of_dim(d).size());
  nlohmann::json facets = nlohmann::json::array();
  for (const auto& st : p.pattern.strata) facets.push_back({{"vertex", st.label}, {"cells", st.cells.size()}});
  return {{"graph", {{"vertices", p.labels}, {"edges", edges}}},
          {"apex", p.complex().name(p.apex)},
          {"cells_by_dim", counts},
          {"facets", facets},
          {"pattern", to_json(p.pattern)}};
}

nlohmann::json to_json(const CubeComplex& x, const SplitCatalog& cat) {
  nlohmann::json polys = nlohmann::json::array();
  for (std::size_t p = 0; p < cat.vertices.size(); ++p) {
    nlohmann::json slots = nlohmann::json::array();
    for (const auto& s : cat.slots[p])
      slots.push_back({{"edge", x.name(s.edge)}, {"end", s.end}, {"wall", s.wall}, {"up", s.up}});
    polys.push_back({{"vertex", x.name(cat.vertices[p])},
                     {"cells", cat.cells[p].size()},
                     {"link_vertices", cat.links[p].vertices.size()},
                     {"facet_slots", slots}});
  }
  nlohmann::json facets = nlohmann::json::array();
  for (std::size_t f = 0; f < cat.facets.size(); ++f)
    facets.push_back({{"edge", x.name(cat.facets[f])},
                      {"wall", cat.facet_wall[f]},
                      {"polyhedra", {cat.incidence[f].first, cat.incidence[f].second}}});
  return {{"split_cells", cat.split.cut.complex.size()},
          {"strata", cat.split.pattern.strata.size()},
          {"polyhedra", polys},
          {"facets", facets}};
}

}  // namespace vh
