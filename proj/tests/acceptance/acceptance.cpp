// SPDX-License-Identifier: Apache-2.0
// Acceptance suite: one PASS/FAIL line per criterion.
#include <algorithm>
#include <chrono>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <numeric>
#include <random>
#include <set>
#include <sstream>

#include <unistd.h>

#include "vhtk/cli.hpp"
#include "vhtk/coloring.hpp"
#include "vhtk/error.hpp"
#include "vhtk/gluing_system.hpp"
#include "vhtk/links.hpp"
#include "vhtk/pipeline.hpp"
#include "vhtk/samples.hpp"
#include "vhtk/stallings.hpp"
#include "vhtk/walls.hpp"
#include "vhtk/words.hpp"

namespace fs = std::filesystem;
using namespace vh;

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

struct Check {
  std::vector<std::string> failures;
  void expect(bool ok, const std::string& what) {
    if (!ok) failures.push_back(what);
  }
};

int failed = 0;

void report(int id, const std::string& title, const std::function<void(Check&)>& body) {
  Check c;
  const auto t0 = Clock::now();
  try {
    body(c);
  } catch (const std::exception& e) {
    c.failures.push_back(std::string("exception: ") + e.what());
  }
  const double dt = seconds_since(t0);
  std::ostringstream line;
  line << (c.failures.empty() ? "PASS" : "FAIL") << " " << id << " " << title << " (" << dt << " s)";
  for (const auto& f : c.failures) line << "\n     - " << f;
  std::cout << line.str() << std::endl;
  if (!c.failures.empty()) ++failed;
}

std::string run_cli(std::vector<std::string> args, int* code = nullptr) {
  args.insert(args.begin(), "vhtk");
  std::ostringstream out, err;
  const int rc = cli::run(args, out, err);
  if (code) *code = rc;
  return out.str();
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

std::map<std::string, std::string> artifacts(const fs::path& dir) {
  std::map<std::string, std::string> out;
  for (const auto& e : fs::directory_iterator(dir)) out[e.path().filename().string()] = slurp(e.path());
  return out;
}

// All permutations of {0..n-1} preserving the edge set.
std::vector<std::vector<int>> automorphisms(int n, const std::vector<std::pair<int, int>>& e) {
  std::set<std::pair<int, int>> es(e.begin(), e.end());
  std::vector<std::vector<int>> out;
  std::vector<int> p(static_cast<std::size_t>(n));
  std::iota(p.begin(), p.end(), 0);
  while (std::next_permutation(p.begin(), p.end())) {
    bool ok = true;
    for (auto [a, b] : e) {
      const int x = p[static_cast<std::size_t>(a)], y = p[static_cast<std::size_t>(b)];
      ok = ok && es.count({std::min(x, y), std::max(x, y)});
    }
    if (ok) out.push_back(p);
  }
  return out;
}

std::vector<Assignment> all_assignments(int v, int n) {
  std::vector<Assignment> out;
  Assignment c(static_cast<std::size_t>(v), 1);
  while (true) {
    out.push_back(c);
    int i = v - 1;
    while (i >= 0 && c[static_cast<std::size_t>(i)] == n) c[static_cast<std::size_t>(i--)] = 1;
    if (i < 0) break;
    ++c[static_cast<std::size_t>(i)];
  }
  return out;
}

SymmetricGraph cycle_graph(int n, bool sym) {
  std::vector<std::pair<int, int>> e;
  for (int i = 0; i < n; ++i) e.emplace_back(std::min(i, (i + 1) % n), std::max(i, (i + 1) % n));
  return SymmetricGraph(n, e, sym ? automorphisms(n, e) : std::vector<std::vector<int>>{});
}

// Word tracing from scratch over the exported edge list.
bool traced_member(const FoldedGraph& z, const Word& w) {
  const nlohmann::json j = to_json(z);
  std::map<std::pair<std::string, int>, std::string> fwd, back;
  for (const auto& e : j["edges"]) {
    fwd[{e["from"].get<std::string>(), e["label"].get<int>()}] = e["to"].get<std::string>();
    back[{e["to"].get<std::string>(), e["label"].get<int>()}] = e["from"].get<std::string>();
  }
  std::string at = j["base"].get<std::string>();
  for (char ch : free_reduce(w)) {
    const bool lower = ch >= 'a' && ch <= 'z';
    const int label = (lower ? ch - 'a' : ch - 'A') + 1;
    auto& table = lower ? fwd : back;
    auto it = table.find({at, label});
    if (it == table.end()) return false;
    at = it->second;
  }
  return at == j["base"].get<std::string>();
}

}  // namespace

int main() {
  report(1, "NPC checker: torus accepted, empty 3-cycle link rejected with witness", [](Check& c) {
    auto t0 = Clock::now();
    const NpcReport torus = check_npc(samples::torus());
    c.expect(seconds_since(t0) < 1.0, "torus check took 1 s or more");
    c.expect(torus.npc, "torus rejected");
    t0 = Clock::now();
    const CubeComplex tri = samples::empty_triangle();
    const NpcReport bad = check_npc(tri);
    c.expect(seconds_since(t0) < 1.0, "empty triangle check took 1 s or more");
    c.expect(!bad.npc, "empty triangle accepted");
    c.expect(bad.first_failure.has_value(), "no failing vertex reported");
    if (!bad.first_failure) return;
    const VertexVerdict& v = bad.vertices[*bad.first_failure];
    c.expect(v.simplicial && !v.flag, "failure is not a flag failure");
    c.expect(v.missing_clique.size() == 3, "witness is not a 3-clique");
    // The witness is pairwise adjacent in the link, yet spans no corner.
    const SimplicialLink link = vertex_link(tri, v.vertex);
    const auto adj = link.adjacency();
    for (int a : v.missing_clique)
      for (int b : v.missing_clique)
        if (a != b) {
          const auto& row = adj[static_cast<std::size_t>(a)];
          c.expect(std::find(row.begin(), row.end(), b) != row.end(), "witness vertices not adjacent");
        }
    std::vector<int> want = v.missing_clique;
    std::sort(want.begin(), want.end());
    for (const auto& by_dim : link.simplices)
      for (const auto& s : by_dim) {
        std::vector<int> got = s.vertices;
        std::sort(got.begin(), got.end());
        c.expect(got != want, "witness spans a simplex");
      }
  });

  report(2, "Walls: torus 2 two-sided, Klein 1 one-sided, n-torus n walls", [](Check& c) {
    const WallSystem t = wall_complex(samples::torus());
    c.expect(t.size() == 2, "torus wall count");
    for (const auto& w : t.walls) c.expect(w.two_sided, "torus wall one-sided");
    const WallSystem k = wall_complex(samples::klein());
    int one_sided = 0;
    for (const auto& w : k.walls) {
      if (w.two_sided) continue;
      ++one_sided;
      // Transport a sign around the reported cycle.
      int parity = 0;
      int at = -1;
      bool closed = !w.obstruction.empty();
      for (int gi : w.obstruction) {
        const WallGluing& g = w.gluings[static_cast<std::size_t>(gi)];
        parity ^= g.flip ? 1 : 0;
        if (at >= 0) closed = closed && (g.from == at || g.to == at);
        at = g.from == at ? g.to : g.from;
      }
      c.expect(closed, "obstruction is not a closed chain of gluings");
      c.expect(parity == 1, "obstruction transports the sign back unchanged");
      c.expect(obstruction_is_inconsistent(k, w), "library re-check disagrees");
    }
    c.expect(one_sided == 1, "Klein one-sided wall count " + std::to_string(one_sided));
    for (int n = 1; n <= 3; ++n)
      c.expect(wall_complex(samples::ntorus(n)).size() == static_cast<std::size_t>(n),
               std::to_string(n) + "-torus wall count");
  });

  report(3, "Specialness: torus special, Klein not, stable under global flip", [](Check& c) {
    for (const std::string name : {"torus", "klein"}) {
      const CubeComplex x = samples::by_name(name);
      const WallSystem ws = wall_complex(x);
      const SpecialnessReport r = specialness_report(x, ws);
      c.expect(r.special == (name == "torus"), name + " verdict");
      std::vector<int> all(ws.size());
      std::iota(all.begin(), all.end(), 0);
      const SpecialnessReport f = specialness_report(x, ws, all);
      c.expect(to_json(x, ws, r) == to_json(x, ws, f), name + " witnesses change under global flip");
    }
  });

  report(4, "Colouring operators: exhaustive on graphs with at most 5 vertices, weights exact", [](Check& c) {
    const auto t0 = Clock::now();
    std::size_t checked = 0;
    for (int v = 1; v <= 5; ++v) {
      std::vector<std::vector<Assignment>> space(6);
      for (int n = 2; n <= 5; ++n) space[static_cast<std::size_t>(n)] = all_assignments(v, n);
      for (unsigned mask = 0; mask < (1u << (v * (v - 1) / 2)); ++mask) {
        std::vector<std::pair<int, int>> e;
        int bit = 0;
        for (int a = 0; a < v; ++a)
          for (int b = a + 1; b < v; ++b, ++bit)
            if (mask & (1u << bit)) e.emplace_back(a, b);
        const auto autos = automorphisms(v, e);
        const SymmetricGraph g(v, e, autos);
        for (int n = 2; n <= 5; ++n)
          for (const Assignment& a : space[static_cast<std::size_t>(n)]) {
            if (!projection_defined(g, a, n)) {
              c.expect(n <= g.max_degree() + 1, "p_n undefined above k+1");
              continue;
            }
            const Assignment p = project_step(g, a, n);
            ++checked;
            for (auto [x, y] : e)
              if (p[static_cast<std::size_t>(x)] == p[static_cast<std::size_t>(y)] &&
                  a[static_cast<std::size_t>(x)] != a[static_cast<std::size_t>(y)])
                c.expect(false, "(a) new monochromatic edge");
            if (is_proper(g, a))
              c.expect(is_proper(g, p) && *std::max_element(p.begin(), p.end()) <= n - 1, "(b) proper not preserved");
            for (const auto& perm : autos)
              if (project_step(g, act(perm, a), n) != act(perm, p)) c.expect(false, "(c) not equivariant");
          }
      }
    }
    for (bool sym : {false, true}) {
      std::vector<std::pair<int, int>> k3e{{0, 1}, {0, 2}, {1, 2}};
      const SymmetricGraph k3(3, k3e, sym ? automorphisms(3, k3e) : std::vector<std::vector<int>>{});
      const SymmetricGraph c5 = cycle_graph(5, sym);
      for (int n = 1; n <= 5; ++n) {
        c.expect(weight(k3, uniform_product(k3, n)) == Rational(sym ? 1 : 3, n), "weight(mu_n) on K3");
        c.expect(weight(c5, uniform_product(c5, n)) == Rational(sym ? 1 : 5, n), "weight(mu_n) on C5");
      }
    }
    const SymmetricGraph k3(3, {{0, 1}, {0, 2}, {1, 2}});
    const Distribution pushed =
        pushforward(uniform_product(k3, 4), [&](const Assignment& a) { return project_chain(k3, a, 4); }, 3);
    // Independent count over all 64 atoms: p_4 recolours a 4 to the least free colour.
    int mono = 0;
    for (const Assignment& a : all_assignments(3, 4)) {
      Assignment p = a;
      for (int x = 0; x < 3; ++x) {
        if (a[static_cast<std::size_t>(x)] != 4) continue;
        std::set<int> used;
        for (int y = 0; y < 3; ++y)
          if (y != x) used.insert(a[static_cast<std::size_t>(y)]);
        int col = 1;
        while (used.count(col)) ++col;
        p[static_cast<std::size_t>(x)] = col;
      }
      for (auto [x, y] : k3.edges()) mono += p[static_cast<std::size_t>(x)] == p[static_cast<std::size_t>(y)] ? 1 : 0;
    }
    const Rational w = weight(k3, pushed);
    c.expect(w == Rational(mono, 64), "pushforward weight disagrees with enumeration");
    c.expect(w <= Rational(3, 4), "weight(P4 mu4) exceeds 3/4");
    c.expect(checked > 0, "nothing checked");
    c.expect(seconds_since(t0) < 10.0, "runtime 10 s or more");
  });

  report(5, "Gluing equations: counting solution exact on torus, 3-torus, rose", [](Check& c) {
    const std::map<std::string, std::size_t> colorings{{"torus", 2}, {"t3", 6}, {"rose", 1}};
    for (const auto& [name, count] : colorings) {
      const CubeComplex x = samples::by_name(name);
      const WallSystem ws = wall_complex(x);
      const Subdivision sd = barycentric_subdivide(x);
      const SplitCatalog cat = split_all(x, ws, sd);
      const SymmetricGraph g = crossing_symmetric_graph(crossing_graph(x, ws, 0, &sd));
      const GluingSystem s = build_gluing_system(cat, g, g.max_degree() + 1);
      c.expect(s.colorings == count, name + " colouring count");
      const auto w = counting_solution(s);
      // Each equation by hand: left and right sums agree exactly.
      for (const auto& e : s.equations) {
        Integer l = 0, r = 0;
        for (int v : e.lhs) l += w[static_cast<std::size_t>(v)];
        for (int v : e.rhs) r += w[static_cast<std::size_t>(v)];
        c.expect(l == r, name + " equation " + e.key);
      }
      const IntegerSolution sol = solve_nonnegative_integer(s.matrix(), s.variables.size());
      c.expect(satisfies(s.matrix(), sol.weights), name + " solver output fails the system");
      Integer sum = 0;
      for (const auto& v : sol.weights) {
        c.expect(v >= 0, name + " negative weight");
        sum += v;
      }
      c.expect(sum > 0, name + " zero solution");
    }
  });

  report(6, "Hierarchy: demo torus and rose reach a verified cover", [](Check& c) {
    const auto t0 = Clock::now();
    for (const std::string name : {"torus", "rose"}) {
      int code = -1;
      run_cli({"demo", name}, &code);
      c.expect(code == 0, "demo " + name + " exit code " + std::to_string(code));
      const auto run = run_pipeline(samples::by_name(name));
      c.expect(run->stopped.empty(), name + " stopped at " + run->stopped);
      const HierarchyContext ctx = run->context();
      for (const auto& d : run->degrees) c.expect(d.zero(), name + " nonzero degree at level " + std::to_string(d.level));
      c.expect(run->degrees.size() == static_cast<std::size_t>(run->palette), name + " missing degree checks");
      for (const auto& st : run->levels) {
        const ConditionReport cr = check_conditions(ctx, st);
        c.expect(cr.ok(), name + " conditions fail at level " + std::to_string(st.level));
      }
      c.expect(run->cover && run->cover->ok && run->cover->degree >= 1, name + " cover not verified");
    }
    c.expect(seconds_since(t0) < 30.0, "runtime 30 s or more");
  });

  report(7, "Height: <a^k>, F2, brute-force agreement, certificates, termination", [](Check& c) {
    const auto t0 = Clock::now();
    auto certify = [&](const FoldedGraph& z, const std::string& label) {
      const HeightCertificate h = multiplicity_height(z);
      c.expect(h.termination_checked, label + " termination");
      c.expect(off_diagonal_components(z, z.size() + 1).empty(), label + " S_{|V|+1} not empty");
      if (!h.conjugators) return h;
      const Conjugators& k = *h.conjugators;
      for (std::size_t i = 0; i < k.a.size(); ++i)
        for (std::size_t j = 0; j < k.a.size(); ++j) {
          const FoldedGraph ai = fold_and_core(z.rank, k.a[i]), aj = fold_and_core(z.rank, k.a[j]);
          const Word& g = k.g[i][j];
          for (const auto& x : k.a[j]) c.expect(traced_member(ai, conjugate(g, x)), label + " g A_j g^-1 in A_i");
          for (const auto& y : k.a[i])
            c.expect(traced_member(aj, conjugate(word_inverse(g), y)), label + " g^-1 A_i g in A_j");
        }
      return h;
    };
    for (int k = 1; k <= 4; ++k) {
      const Word w(static_cast<std::size_t>(k), 'a');
      c.expect(certify(fold_and_core(2, {w}), w).height == k, "height of <a^" + std::to_string(k) + ">");
    }
    c.expect(certify(fold_and_core(2, {"a", "b"}), "F2").height == 1, "height of F2");
    std::mt19937_64 rng(20261015);
    for (int t = 0; t < 20; ++t) {
      const Word w = random_reduced_word(2, 1 + static_cast<int>(rng() % 4), rng);
      const int h = certify(fold_and_core(2, {w}), w).height;
      const int oracle = brute_force_cyclic_height(2, w, 8);
      c.expect(h == oracle, "<" + w + ">: height " + std::to_string(h) + " vs oracle " + std::to_string(oracle));
    }
    c.expect(seconds_since(t0) < 60.0, "runtime 60 s or more");
  });

  report(8, "Almost malnormality: {<a>,<b>} accepted, {<a^2>} rejected with g = a", [](Check& c) {
    c.expect(check_almost_malnormal({fold_and_core(2, {"a"}), fold_and_core(2, {"b"})}).malnormal, "{<a>,<b>} rejected");
    const std::vector<FoldedGraph> hs{fold_and_core(2, {"aa"})};
    const MalnormalVerdict v = check_almost_malnormal(hs);
    c.expect(!v.malnormal && v.witness.has_value(), "{<a^2>} accepted");
    if (!v.witness) return;
    const MalnormalWitness& w = *v.witness;
    c.expect(w.g == "a", "witness g = " + w.g);
    // x is a nontrivial element of H_i with g x g^-1 in H_j; free groups are
    // torsion-free, so the intersection is infinite.
    c.expect(!free_reduce(w.x).empty(), "trivial intersection element");
    c.expect(traced_member(hs[static_cast<std::size_t>(w.i)], w.x), "x not in H_i");
    c.expect(traced_member(hs[static_cast<std::size_t>(w.j)], conjugate(w.g, w.x)), "g x g^-1 not in H_j");
    if (w.i == w.j) c.expect(!traced_member(hs[static_cast<std::size_t>(w.i)], w.g), "g lies in H");
  });

  report(9, "Determinism: demo reruns byte-identical, --jobs 1 equals --jobs 8", [](Check& c) {
    const fs::path root = fs::temp_directory_path() / ("vhtk_acceptance_" + std::to_string(::getpid()));
    for (const std::string name : {"torus", "rose", "t3", "klein"}) {
      std::map<std::string, std::string> first;
      for (const std::string jobs : {"1", "1", "8"}) {
        const fs::path dir = root / (name + "_" + jobs + "_" + std::to_string(first.size()));
        fs::remove_all(dir);
        run_cli({"--out", dir.string(), "--jobs", jobs, "demo", name});
        auto files = artifacts(dir);
        // The manifest records the job count itself.
        if (jobs == "8") files.erase("manifest.json");
        if (first.empty()) {
          first = files;
          c.expect(!first.empty(), name + " wrote no artifacts");
          continue;
        }
        for (const auto& [f, body] : files)
          c.expect(first.count(f) && first.at(f) == body, name + " --jobs " + jobs + " differs in " + f);
      }
    }
    fs::remove_all(root);
  });

  std::cout << (failed == 0 ? "all criteria passed" : std::to_string(failed) + " criteria failed") << std::endl;
  return failed == 0 ? 0 : 1;
}
