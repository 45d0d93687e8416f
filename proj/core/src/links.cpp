// SPDX-License-Identifier: Apache-2.0
#include "vhtk/links.hpp"

#include <algorithm>
#include <map>
#include <set>

#include "vhtk/error.hpp"
#include "vhtk/parallel.hpp"

namespace vh {

int SimplicialLink::index_of(const LinkVertex& lv) const {
  auto it = std::lower_bound(vertices.begin(), vertices.end(), lv);
  if (it == vertices.end() || *it != lv) return -1;
  return static_cast<int>(it - vertices.begin());
}

std::vector<std::vector<int>> SimplicialLink::adjacency() const {
  std::vector<std::vector<int>> adj(vertices.size());
  if (simplices.empty()) return adj;
  for (const auto& s : simplices[0]) {
    if (s.vertices.size() != 2) continue;
    adj[static_cast<std::size_t>(s.vertices[0])].push_back(s.vertices[1]);
    adj[static_cast<std::size_t>(s.vertices[1])].push_back(s.vertices[0]);
  }
  for (auto& a : adj) std::sort(a.begin(), a.end());
  return adj;
}

LinkVertex link_vertex_at(const CubeComplex& x, CubeId cube, const Pattern& corner, int axis) {
  Pattern p = corner;
  p[static_cast<std::size_t>(axis)] = kFree;
  const ResolvedFace r = x.resolve(cube, p);
  const int at = corner[static_cast<std::size_t>(axis)];
  return {r.cube, (at != 0) != r.map.image[0].flip ? 1 : 0};
}

std::vector<SimplicialLink> all_vertex_links(const CubeComplex& x) {
  std::vector<int> slot(x.size(), -1);
  std::vector<SimplicialLink> links;
  for (CubeId v : x.vertices()) {
    slot[v] = static_cast<int>(links.size());
    links.emplace_back().base = v;
  }
  for (CubeId e : x.cubes_of_dim(1))
    for (int s = 0; s < 2; ++s) links[static_cast<std::size_t>(slot[x.face(e, 0, s).target])].vertices.push_back({e, s});
  const int top = x.max_dim();
  for (auto& link : links) {
    std::sort(link.vertices.begin(), link.vertices.end());
    if (top >= 2) link.simplices.resize(static_cast<std::size_t>(top - 1));
  }
  for (int d = 2; d <= top; ++d) {
    const auto corners = corner_patterns(d);
    for (CubeId c : x.cubes_of_dim(d)) {
      for (const auto& rho : corners) {
        auto& link = links[static_cast<std::size_t>(slot[x.corner(c, rho)])];
        LinkSimplex s;
        s.cube = c;
        s.corner = rho;
        for (int a = 0; a < d; ++a) {
          const int idx = link.index_of(link_vertex_at(x, c, rho, a));
          VHTK_CHECK(idx >= 0, "corner edge-end missing from link");
          s.vertices.push_back(idx);
        }
        link.simplices[static_cast<std::size_t>(d - 2)].push_back(std::move(s));
      }
    }
  }
  return links;
}

SimplicialLink vertex_link(const CubeComplex& x, CubeId v) {
  if (v >= x.size() || x.dim(v) != 0) throw InvalidInput("vertex_link: not a 0-cube");
  SimplicialLink link;
  link.base = v;
  for (CubeId e : x.cubes_of_dim(1))
    for (int s = 0; s < 2; ++s)
      if (x.face(e, 0, s).target == v) link.vertices.push_back({e, s});
  std::sort(link.vertices.begin(), link.vertices.end());
  const int top = x.max_dim();
  if (top >= 2) link.simplices.resize(static_cast<std::size_t>(top - 1));
  for (int d = 2; d <= top; ++d) {
    const auto corners = corner_patterns(d);
    for (CubeId c : x.cubes_of_dim(d)) {
      for (const auto& rho : corners) {
        if (x.corner(c, rho) != v) continue;
        LinkSimplex s;
        s.cube = c;
        s.corner = rho;
        for (int a = 0; a < d; ++a) {
          const int idx = link.index_of(link_vertex_at(x, c, rho, a));
          VHTK_CHECK(idx >= 0, "corner edge-end missing from link");
          s.vertices.push_back(idx);
        }
        link.simplices[static_cast<std::size_t>(d - 2)].push_back(std::move(s));
      }
    }
  }
  return link;
}

namespace {

// Cliques with at least three vertices, by increasing size, each sorted.
template <class Visit>
bool for_each_clique(const std::vector<std::vector<int>>& adj, Visit&& visit) {
  const int n = static_cast<int>(adj.size());
  std::vector<std::set<int>> nb(adj.size());
  for (int u = 0; u < n; ++u) nb[static_cast<std::size_t>(u)].insert(adj[static_cast<std::size_t>(u)].begin(), adj[static_cast<std::size_t>(u)].end());
  std::vector<std::vector<int>> layer;
  for (int u = 0; u < n; ++u)
    for (int w : nb[static_cast<std::size_t>(u)])
      if (w > u) layer.push_back({u, w});
  while (!layer.empty()) {
    std::vector<std::vector<int>> next;
    for (const auto& cl : layer) {
      for (int w : nb[static_cast<std::size_t>(cl.back())]) {
        if (w <= cl.back()) continue;
        bool ok = true;
        for (int u : cl) ok = ok && nb[static_cast<std::size_t>(u)].count(w) > 0;
        if (!ok) continue;
        auto bigger = cl;
        bigger.push_back(w);
        if (!visit(bigger)) return false;
        next.push_back(std::move(bigger));
      }
    }
    layer = std::move(next);
  }
  return true;
}

}  // namespace

VertexVerdict check_link(const SimplicialLink& link) {
  VertexVerdict out;
  out.vertex = link.base;
  std::set<std::vector<int>> all_sets;
  for (std::size_t d = 0; d < link.simplices.size() && out.simplicial; ++d) {
    std::set<std::vector<int>> seen;
    for (const auto& s : link.simplices[d]) {
      std::vector<int> vs = s.vertices;
      std::sort(vs.begin(), vs.end());
      if (std::adjacent_find(vs.begin(), vs.end()) != vs.end()) {
        out.simplicial = false;
        out.simplicial_failure = "simplex of dimension " + std::to_string(d + 1) + " repeats a vertex";
        break;
      }
      if (!seen.insert(vs).second) {
        out.simplicial = false;
        out.simplicial_failure =
            "two simplices of dimension " + std::to_string(d + 1) + " share a vertex set";
        break;
      }
      all_sets.insert(vs);
    }
  }
  for_each_clique(link.adjacency(), [&](const std::vector<int>& cl) {
    if (all_sets.count(cl)) return true;
    out.flag = false;
    out.missing_clique = cl;
    return false;
  });
  return out;
}

NpcReport check_npc(const CubeComplex& x, unsigned jobs) {
  NpcReport report;
  const auto links = all_vertex_links(x);
  report.vertices.resize(links.size());
  parallel_for(links.size(), jobs, [&](std::size_t i) { report.vertices[i] = check_link(links[i]); });
  for (std::size_t i = 0; i < report.vertices.size(); ++i) {
    const auto& v = report.vertices[i];
    if (!(v.simplicial && v.flag)) {
      report.npc = false;
      if (!report.first_failure) report.first_failure = i;
    }
  }
  return report;
}

ConvexityReport check_local_convexity(const CubeComplex& y, const CubeComplex& x, const CubeMap& f,
                                      unsigned jobs) {
  if (auto why = combinatorial_defect(y, x, f); !why.empty())
    throw InvalidInput("non-combinatorial map: " + why);
  ConvexityReport out;
  if (!check_npc(y, jobs).npc) {
    out.locally_convex = false;
    out.source_npc = false;
    out.failure = "source is not NPC";
    return out;
  }
  const auto ylinks = all_vertex_links(y);
  const auto xlinks = all_vertex_links(x);
  std::vector<int> xslot(x.size(), -1);
  for (std::size_t i = 0; i < xlinks.size(); ++i) xslot[xlinks[i].base] = static_cast<int>(i);
  std::vector<std::string> failures(ylinks.size());
  parallel_for(ylinks.size(), jobs, [&](std::size_t i) {
    const auto& ly = ylinks[i];
    const CubeId v = ly.base;
    const auto& lx = xlinks[static_cast<std::size_t>(xslot[f.target[v]])];
    std::vector<int> image(ly.vertices.size());
    std::set<int> used;
    for (std::size_t k = 0; k < ly.vertices.size(); ++k) {
      const auto& lv = ly.vertices[k];
      const LinkVertex img{f.target[lv.edge],
                           (lv.end != 0) != f.axes[lv.edge].image[0].flip ? 1 : 0};
      image[k] = lx.index_of(img);
      if (image[k] < 0 || !used.insert(image[k]).second) {
        failures[i] = "link map at '" + y.name(v) + "' is not injective";
        return;
      }
    }
    const auto ay = ly.adjacency();
    const auto ax = lx.adjacency();
    for (std::size_t p = 0; p < image.size(); ++p) {
      for (std::size_t q = p + 1; q < image.size(); ++q) {
        const auto& nx = ax[static_cast<std::size_t>(image[p])];
        const auto& ny = ay[p];
        const bool in_x = std::binary_search(nx.begin(), nx.end(), image[q]);
        const bool in_y = std::binary_search(ny.begin(), ny.end(), static_cast<int>(q));
        if (in_x && !in_y) {
          failures[i] = "link of '" + y.name(v) + "' is not very full: edge-ends '" +
                        y.name(ly.vertices[p].edge) + "' and '" + y.name(ly.vertices[q].edge) +
                        "' are joined only in the target";
          return;
        }
      }
    }
  });
  for (const auto& msg : failures) {
    if (!msg.empty()) {
      out.locally_convex = false;
      out.failure = msg;
      break;
    }
  }
  return out;
}

nlohmann::json to_json(const CubeComplex& x, const SimplicialLink& link) {
  nlohmann::json verts = nlohmann::json::array();
  for (const auto& v : link.vertices) verts.push_back({{"edge", x.name(v.edge)}, {"end", v.end}});
  nlohmann::json simp = nlohmann::json::array();
  for (std::size_t d = 0; d < link.simplices.size(); ++d)
    for (const auto& s : link.simplices[d])
      simp.push_back({{"dim", d + 1}, {"cube", x.name(s.cube)}, {"vertices", s.vertices}});
  return {{"base", x.name(link.base)}, {"vertices", verts}, {"simplices", simp}};
}

nlohmann::json to_json(const CubeComplex& x, const NpcReport& report) {
  nlohmann::json per = nlohmann::json::array();
  for (const auto& v : report.vertices) {
    nlohmann::json j{{"vertex", x.name(v.vertex)}, {"simplicial", v.simplicial}, {"flag", v.flag}};
    if (!v.simplicial) j["simplicial_failure"] = v.simplicial_failure;
    if (!v.missing_clique.empty()) {
      const auto link = vertex_link(x, v.vertex);
      nlohmann::json cl = nlohmann::json::array();
      for (int k : v.missing_clique) {
        const auto& lv = link.vertices[static_cast<std::size_t>(k)];
        cl.push_back({{"edge", x.name(lv.edge)}, {"end", lv.end}});
      }
      j["missing_clique"] = cl;
    }
    per.push_back(std::move(j));
  }
  nlohmann::json out{{"npc", report.npc}, {"vertices", per}};
  if (report.first_failure) out["first_failure"] = x.name(report.vertices[*report.first_failure].vertex);
  return out;
}

}  // namespace vh
