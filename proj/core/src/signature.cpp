// SPDX-License-Identifier: Apache-2.0
#include "vhtk/signature.hpp"

#include <algorithm>
#include <numeric>
#include <queue>

#include "vhtk/error.hpp"

namespace vh {

std::string canonical(const nlohmann::json& j) { return j.dump(); }

SymmetricGraph crossing_symmetric_graph(const CrossingGraph& g) {
  std::vector<std::string> names;
  for (int w = 0; w < g.walls; ++w) names.push_back("W" + std::to_string(w));
  return SymmetricGraph(g.walls, g.edges, g.symmetry, names);
}

SignatureTable::SignatureTable(const SymmetricGraph& g, const Assignment& c) {
  if (static_cast<int>(c.size()) != g.size() || !is_proper(g, c))
    throw InvalidInput("signature: colouring is not proper");
  const std::size_t n = c.size();
  sigs_.resize(n);
  keys_.resize(n);
  std::vector<int> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](int a, int b) { return c[static_cast<std::size_t>(a)] < c[static_cast<std::size_t>(b)]; });
  for (int v : order) {
    std::vector<int> lower;
    for (int u : g.neighbors(v))
      if (c[static_cast<std::size_t>(u)] < c[static_cast<std::size_t>(v)]) lower.push_back(u);
    std::sort(lower.begin(), lower.end());
    nlohmann::json low = nlohmann::json::array();
    for (int u : lower) low.push_back({u, sigs_[static_cast<std::size_t>(u)]});
    auto& s = sigs_[static_cast<std::size_t>(v)];
    s = {{"v", v}, {"c", c[static_cast<std::size_t>(v)]}, {"lower", low}};
    keys_[static_cast<std::size_t>(v)] = canonical(s);
  }
}

std::string orbit_normal_form(const SymmetricGraph& g, const Assignment& c, int v) {
  std::string best;
  bool first = true;
  for (const auto& perm : g.group_elements()) {
    const SignatureTable t(g, act(perm, c));
    const std::string& k = t.wall_key(perm[static_cast<std::size_t>(v)]);
    if (first || k < best) best = k;
    first = false;
  }
  return best;
}

nlohmann::json facet_signature(const SplitCatalog& cat, const SignatureTable& t, int facet) {
  return {{"facet", facet}, {"wall", t.wall(cat.facet_wall[static_cast<std::size_t>(facet)])}};
}

nlohmann::json polyhedron_signature(const SplitCatalog& cat, const SignatureTable& t, int polyhedron) {
  nlohmann::json slots = nlohmann::json::array();
  for (const auto& s : cat.slots[static_cast<std::size_t>(polyhedron)]) slots.push_back(t.wall(s.wall));
  return {{"polyhedron", polyhedron}, {"facets", slots}};
}

std::vector<int> ball(const SymmetricGraph& g, int v, int radius) {
  std::vector<int> dist(static_cast<std::size_t>(g.size()), -1);
  std::queue<int> q;
  dist[static_cast<std::size_t>(v)] = 0;
  q.push(v);
  while (!q.empty()) {
    const int u = q.front();
    q.pop();
    if (dist[static_cast<std::size_t>(u)] == radius) continue;
    for (int w : g.neighbors(u))
      if (dist[static_cast<std::size_t>(w)] < 0) {
        dist[static_cast<std::size_t>(w)] = dist[static_cast<std::size_t>(u)] + 1;
        q.push(w);
      }
  }
  std::vector<int> out;
  for (int u = 0; u < g.size(); ++u)
    if (dist[static_cast<std::size_t>(u)] >= 0) out.push_back(u);
  return out;
}

}  // namespace vh
