// SPDX-License-Identifier: Apache-2.0
#include "vhtk/walls.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <numeric>
#include <set>

#include "vhtk/error.hpp"
#include "vhtk/links.hpp"

namespace vh {

namespace {

// Union-find whose representative is always the smallest member.
class MinUnionFind {
 public:
  explicit MinUnionFind(std::size_t n) : parent_(n) { std::iota(parent_.begin(), parent_.end(), 0); }
  int find(int a) {
    while (parent_[static_cast<std::size_t>(a)] != a) {
      parent_[static_cast<std::size_t>(a)] = parent_[static_cast<std::size_t>(parent_[static_cast<std::size_t>(a)])];
      a = parent_[static_cast<std::size_t>(a)];
    }
    return a;
  }
  void unite(int a, int b) {
    a = find(a);
    b = find(b);
    if (a == b) return;
    if (b < a) std::swap(a, b);
    parent_[static_cast<std::size_t>(b)] = a;
  }

 private:
  std::vector<int> parent_;
};

}  // namespace

WallSystem wall_complex(const CubeComplex& x, bool require_npc, unsigned jobs) {
  if (require_npc) {
    const auto npc = check_npc(x, jobs);
    if (!npc.npc)
      throw InvalidInput("wall_complex: complex is not NPC (vertex '" +
                         x.name(npc.vertices[*npc.first_failure].vertex) + "')");
  }
  WallSystem ws;
  ws.first.resize(x.size());
  for (CubeId c = 0; c < x.size(); ++c) {
    ws.first[c] = static_cast<int>(ws.midcubes.size());
    for (int a = 0; a < x.dim(c); ++a) ws.midcubes.push_back({c, a});
  }
  const std::size_t m = ws.midcubes.size();
  std::vector<WallGluing> all;
  for (CubeId c = 0; c < x.size(); ++c) {
    const int d = x.dim(c);
    for (int i = 0; i < d; ++i) {
      for (int j = 0; j < d; ++j) {
        if (j == i) continue;
        for (int s = 0; s < 2; ++s) {
          const FaceRecord& fr = x.face(c, j, s);
          const AxisImage im = fr.map.image[static_cast<std::size_t>(i < j ? i : i - 1)];
          all.push_back({ws.midcube(c, i), ws.midcube(fr.target, im.axis), j, s, im.flip});
        }
      }
    }
  }
  MinUnionFind uf(m);
  for (const auto& g : all) uf.unite(g.from, g.to);

  std::vector<int> wall_of_root(m, -1);
  ws.wall_of.assign(m, -1);
  for (std::size_t i = 0; i < m; ++i) {
    const int r = uf.find(static_cast<int>(i));
    if (wall_of_root[static_cast<std::size_t>(r)] < 0) {
      wall_of_root[static_cast<std::size_t>(r)] = static_cast<int>(ws.walls.size());
      Wall w;
      w.id = static_cast<int>(ws.walls.size());
      ws.walls.push_back(std::move(w));
    }
    const int wid = wall_of_root[static_cast<std::size_t>(r)];
    ws.wall_of[i] = wid;
    Wall& w = ws.walls[static_cast<std::size_t>(wid)];
    w.midcubes.push_back(static_cast<int>(i));
    const Midcube mc = ws.midcubes[i];
    w.dim = std::max(w.dim, x.dim(mc.cube) - 1);
    if (w.carrier.empty() || w.carrier.back() != mc.cube) w.carrier.push_back(mc.cube);
  }
  for (const auto& g : all) ws.walls[static_cast<std::size_t>(ws.wall_of[static_cast<std::size_t>(g.from)])].gluings.push_back(g);

  // Co-orientation: breadth-first 2-colouring of the sign constraints.
  ws.sign.assign(m, 0);
  std::vector<bool> seen(m, false);
  std::vector<int> via(m, -1);  // gluing index (within the wall) that reached this midcube
  std::vector<int> depth(m, 0);
  for (auto& w : ws.walls) {
    std::vector<std::vector<std::pair<int, int>>> adj;  // local midcube -> (gluing, other end)
    std::map<int, int> local;
    for (int mc : w.midcubes) local.emplace(mc, static_cast<int>(local.size()));
    adj.resize(w.midcubes.size());
    for (int gi = 0; gi < static_cast<int>(w.gluings.size()); ++gi) {
      const auto& g = w.gluings[static_cast<std::size_t>(gi)];
      adj[static_cast<std::size_t>(local[g.from])].push_back({gi, g.to});
      adj[static_cast<std::size_t>(local[g.to])].push_back({gi, g.from});
    }
    const int root = w.midcubes.front();
    std::deque<int> queue{root};
    seen[static_cast<std::size_t>(root)] = true;
    while (!queue.empty() && w.two_sided) {
      const int u = queue.front();
      queue.pop_front();
      for (auto [gi, v] : adj[static_cast<std::size_t>(local[u])]) {
        const bool flip = w.gluings[static_cast<std::size_t>(gi)].flip;
        const auto want = static_cast<std::int8_t>(ws.sign[static_cast<std::size_t>(u)] ^ (flip ? 1 : 0));
        if (!seen[static_cast<std::size_t>(v)]) {
          seen[static_cast<std::size_t>(v)] = true;
          ws.sign[static_cast<std::size_t>(v)] = want;
          via[static_cast<std::size_t>(v)] = gi;
          depth[static_cast<std::size_t>(v)] = depth[static_cast<std::size_t>(u)] + 1;
          queue.push_back(v);
        } else if (ws.sign[static_cast<std::size_t>(v)] != want) {
          w.two_sided = false;
          // Tree paths from u and v up to their common ancestor, closed by gi.
          auto step_up = [&](int node) {
            const auto& g = w.gluings[static_cast<std::size_t>(via[static_cast<std::size_t>(node)])];
            return g.from == node ? g.to : g.from;
          };
          std::vector<int> up_u, up_v;
          int a = u, b = v;
          while (a != b) {
            if (depth[static_cast<std::size_t>(a)] >= depth[static_cast<std::size_t>(b)]) {
              up_u.push_back(via[static_cast<std::size_t>(a)]);
              a = step_up(a);
            } else {
              up_v.push_back(via[static_cast<std::size_t>(b)]);
              b = step_up(b);
            }
          }
          std::reverse(up_u.begin(), up_u.end());
          w.obstruction = up_u;
          w.obstruction.push_back(gi);
          w.obstruction.insert(w.obstruction.end(), up_v.begin(), up_v.end());
          break;
        }
      }
    }
    if (!w.two_sided)
      for (int mc : w.midcubes) ws.sign[static_cast<std::size_t>(mc)] = 0;
  }
  for (const auto& w : ws.walls)
    if (!w.two_sided)
      VHTK_CHECK(obstruction_is_inconsistent(ws, w), "reported obstruction cycle is consistent");
  return ws;
}

bool obstruction_is_inconsistent(const WallSystem& ws, const Wall& w) {
  if (w.obstruction.empty()) return false;
  // The cycle must close up and its flips must multiply to a reversal.
  std::map<int, int> valence;
  bool parity = false;
  for (int gi : w.obstruction) {
    const auto& g = w.gluings.at(static_cast<std::size_t>(gi));
    parity = parity != g.flip;
    ++valence[g.from];
    ++valence[g.to];
  }
  for (auto [mc, k] : valence) {
    if (ws.wall_of[static_cast<std::size_t>(mc)] != w.id) return false;
    if (k % 2 != 0) return false;
  }
  return parity;
}

std::vector<CubeId> wall_image(const Subdivision& sd, const WallSystem& ws, int wall) {
  std::vector<CubeId> out;
  for (CubeId id = 0; id < sd.keys.size(); ++id) {
    const CellKey& k = sd.keys[id];
    for (std::size_t a = 0; a < k.part.size(); ++a) {
      if (k.part[a] == kMid && ws.wall_at(k.parent, static_cast<int>(a)) == wall) {
        out.push_back(id);
        break;
      }
    }
  }
  return out;
}

SpecialnessReport specialness_report(const CubeComplex& x, const WallSystem& ws,
                                     const std::vector<int>& flip_walls) {
  SpecialnessReport r;
  std::set<int> flipped(flip_walls.begin(), flip_walls.end());
  std::map<std::pair<int, int>, CubeId> crossing;
  for (CubeId c = 0; c < x.size(); ++c) {
    const int d = x.dim(c);
    for (int i = 0; i < d; ++i) {
      for (int j = i + 1; j < d; ++j) {
        const int wi = ws.wall_at(c, i);
        const int wj = ws.wall_at(c, j);
        if (wi == wj) r.self_crossings.push_back({wi, c, i, j});
        else crossing.emplace(std::minmax(wi, wj), c);
      }
    }
  }
  for (const auto& w : ws.walls)
    if (!w.two_sided) r.one_sided.push_back(w.id);
  auto direction = [&](const LinkVertex& lv) {
    const int w = ws.dual_wall(lv.edge);
    return (lv.end ^ ws.sign[static_cast<std::size_t>(ws.midcube(lv.edge, 0))] ^ (flipped.count(w) ? 1 : 0)) != 0;
  };
  for (CubeId v : x.vertices()) {
    const auto link = vertex_link(x, v);
    const auto adj = link.adjacency();
    const int n = static_cast<int>(link.vertices.size());
    for (int p = 0; p < n; ++p) {
      for (int q = p + 1; q < n; ++q) {
        const auto& ap = adj[static_cast<std::size_t>(p)];
        if (std::binary_search(ap.begin(), ap.end(), q)) continue;
        const LinkVertex& lp = link.vertices[static_cast<std::size_t>(p)];
        const LinkVertex& lq = link.vertices[static_cast<std::size_t>(q)];
        const int wp = ws.dual_wall(lp.edge);
        const int wq = ws.dual_wall(lq.edge);
        Osculation o{v, lp.edge, lp.end, lq.edge, lq.end, wp, wq, false};
        if (wp == wq) {
          if (!ws.walls[static_cast<std::size_t>(wp)].two_sided) continue;
          o.direct = direction(lp) == direction(lq);
          (o.direct ? r.direct_self_osculations : r.indirect_self_osculations).push_back(o);
        } else if (auto it = crossing.find(std::minmax(wp, wq)); it != crossing.end()) {
          r.inter_osculations.push_back({std::min(wp, wq), std::max(wp, wq), it->second, o});
        }
      }
    }
  }
  r.special = r.self_crossings.empty() && r.one_sided.empty() && r.direct_self_osculations.empty() &&
              r.inter_osculations.empty();
  return r;
}

SpecialnessReport specialness_report(const CubeComplex& x) {
  return specialness_report(x, wall_complex(x));
}

std::vector<std::vector<int>> CrossingGraph::adjacency() const {
  std::vector<std::vector<int>> adj(static_cast<std::size_t>(walls));
  for (auto [u, v] : edges) {
    adj[static_cast<std::size_t>(u)].push_back(v);
    adj[static_cast<std::size_t>(v)].push_back(u);
  }
  for (auto& a : adj) std::sort(a.begin(), a.end());
  return adj;
}

int CrossingGraph::max_degree() const {
  int k = 0;
  for (const auto& a : adjacency()) k = std::max(k, static_cast<int>(a.size()));
  return k;
}

CrossingGraph crossing_graph(const CubeComplex& x, const WallSystem& ws, int radius, const Subdivision* sd) {
  if (radius < 0) throw InvalidInput("crossing_graph: radius must be nonnegative");
  CrossingGraph g;
  g.walls = static_cast<int>(ws.size());
  g.radius = radius;
  std::set<std::pair<int, int>> edges;
  for (CubeId c = 0; c < x.size(); ++c) {
    const int d = x.dim(c);
    for (int i = 0; i < d; ++i)
      for (int j = i + 1; j < d; ++j) {
        const int wi = ws.wall_at(c, i);
        const int wj = ws.wall_at(c, j);
        if (wi != wj) edges.insert(std::minmax(wi, wj));
      }
  }
  if (radius >= 1 && ws.size() > 1) {
    Subdivision local;
    if (sd == nullptr) {
      local = barycentric_subdivide(x);
      sd = &local;
    }
    const CubeComplex& xd = sd->complex;
    std::vector<std::vector<CubeId>> adj(xd.size());
    for (CubeId e : xd.cubes_of_dim(1)) {
      const CubeId a = xd.face(e, 0, 0).target;
      const CubeId b = xd.face(e, 0, 1).target;
      adj[a].push_back(b);
      adj[b].push_back(a);
    }
    // Closed carrier of a wall: barycenters of every face of every carrier cube.
    std::vector<std::vector<CubeId>> carrier(ws.size());
    for (const auto& w : ws.walls) {
      std::set<CubeId> verts;
      for (CubeId c : w.carrier) {
        const int d = x.dim(c);
        std::size_t total = 1;
        for (int i = 0; i < d; ++i) total *= 3;
        for (std::size_t code = 0; code < total; ++code) {
          Pattern p(static_cast<std::size_t>(d));
          std::size_t t = code;
          for (int i = 0; i < d; ++i, t /= 3) p[static_cast<std::size_t>(i)] = static_cast<std::int8_t>(static_cast<int>(t % 3) - 1);
          verts.insert(sd->barycenter[x.resolve(c, p).cube]);
        }
      }
      carrier[static_cast<std::size_t>(w.id)].assign(verts.begin(), verts.end());
    }
    for (const auto& w : ws.walls) {
      std::vector<int> dist(xd.size(), -1);
      std::deque<CubeId> queue;
      for (CubeId v : carrier[static_cast<std::size_t>(w.id)]) {
        dist[v] = 0;
        queue.push_back(v);
      }
      while (!queue.empty()) {
        const CubeId u = queue.front();
        queue.pop_front();
        if (dist[u] == radius) continue;
        for (CubeId nb : adj[u])
          if (dist[nb] < 0) {
            dist[nb] = dist[u] + 1;
            queue.push_back(nb);
          }
      }
      for (const auto& o : ws.walls) {
        if (o.id <= w.id) continue;
        for (CubeId v : carrier[static_cast<std::size_t>(o.id)])
          if (dist[v] >= 0) {
            edges.insert({w.id, o.id});
            break;
          }
      }
    }
  }
  g.edges.assign(edges.begin(), edges.end());
  return g;
}

nlohmann::json to_json(const CubeComplex& x, const WallSystem& ws) {
  nlohmann::json walls = nlohmann::json::array();
  for (const auto& w : ws.walls) {
    nlohmann::json mids = nlohmann::json::array();
    for (int mc : w.midcubes) {
      const Midcube& m = ws.midcubes[static_cast<std::size_t>(mc)];
      mids.push_back({{"cube", x.name(m.cube)},
                      {"axis", m.axis + 1},
                      {"sign", static_cast<int>(ws.sign[static_cast<std::size_t>(mc)])}});
    }
    nlohmann::json glue = nlohmann::json::array();
    for (const auto& g : w.gluings) {
      const Midcube& a = ws.midcubes[static_cast<std::size_t>(g.from)];
      const Midcube& b = ws.midcubes[static_cast<std::size_t>(g.to)];
      glue.push_back({{"from", {x.name(a.cube), a.axis + 1}},
                      {"to", {x.name(b.cube), b.axis + 1}},
                      {"face", {g.face_axis + 1, g.face_side}},
                      {"flip", g.flip ? 1 : 0}});
    }
    nlohmann::json carrier = nlohmann::json::array();
    for (CubeId c : w.carrier) carrier.push_back(x.name(c));
    nlohmann::json j{{"id", w.id},
                     {"dim", w.dim},
                     {"two_sided", w.two_sided},
                     {"midcubes", mids},
                     {"gluings", glue},
                     {"carrier", carrier}};
    if (!w.two_sided) j["obstruction_cycle"] = w.obstruction;
    walls.push_back(std::move(j));
  }
  return {{"walls", walls}, {"count", ws.size()}};
}

namespace {

nlohmann::json osc_json(const CubeComplex& x, const Osculation& o) {
  return {{"vertex", x.name(o.vertex)},
          {"ends", {{{"edge", x.name(o.edge1)}, {"end", o.end1}}, {{"edge", x.name(o.edge2)}, {"end", o.end2}}}},
          {"walls", {o.wall1, o.wall2}},
          {"direct", o.direct}};
}

}  // namespace

nlohmann::json to_json(const CubeComplex& x, const WallSystem& ws, const SpecialnessReport& r) {
  nlohmann::json sc = nlohmann::json::array();
  for (const auto& s : r.self_crossings)
    sc.push_back({{"wall", s.wall}, {"cube", x.name(s.cube)}, {"axes", {s.axis1 + 1, s.axis2 + 1}}});
  nlohmann::json os = nlohmann::json::array();
  for (int w : r.one_sided)
    os.push_back({{"wall", w}, {"obstruction_cycle", ws.walls[static_cast<std::size_t>(w)].obstruction}});
  nlohmann::json direct = nlohmann::json::array();
  for (const auto& o : r.direct_self_osculations) direct.push_back(osc_json(x, o));
  nlohmann::json indirect = nlohmann::json::array();
  for (const auto& o : r.indirect_self_osculations) indirect.push_back(osc_json(x, o));
  nlohmann::json inter = nlohmann::json::array();
  for (const auto& o : r.inter_osculations)
    inter.push_back({{"walls", {o.wall1, o.wall2}},
                     {"crossing_cube", x.name(o.crossing_cube)},
                     {"osculation", osc_json(x, o.osculation)}});
  return {{"special", r.special},
          {"self_crossings", sc},
          {"one_sided", os},
          {"direct_self_osculations", direct},
          {"indirect_self_osculations", indirect},
          {"inter_osculations", inter}};
}

nlohmann::json to_json(const CrossingGraph& g) {
  nlohmann::json edges = nlohmann::json::array();
  for (auto [u, v] : g.edges) edges.push_back({u, v});
  return {{"walls", g.walls}, {"radius", g.radius}, {"edges", edges}, {"max_degree", g.max_degree()}};
}

}  // namespace vh
