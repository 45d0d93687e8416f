// SPDX-License-Identifier: Apache-2.0
#include "vhtk/cli.hpp"

#include <filesystem>
#include <fstream>
#include <functional>
#include <optional>
#include <ostream>
#include <sstream>

#include "CLI11.hpp"
#include "vhtk/coloring.hpp"
#include "vhtk/error.hpp"
#include "vhtk/gluing_system.hpp"
#include "vhtk/hierarchy.hpp"
#include "vhtk/links.hpp"
#include "vhtk/pipeline.hpp"
#include "vhtk/polyhedra.hpp"
#include "vhtk/samples.hpp"
#include "vhtk/signature.hpp"
#include "vhtk/stallings.hpp"
#include "vhtk/subdivision.hpp"
#include "vhtk/wall_piece.hpp"
#include "vhtk/walls.hpp"

#ifndef VHTK_VERSION
#define VHTK_VERSION "0.0.0"
#endif

namespace vh::cli {

std::string fnv1a_hex(const std::string& bytes) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  std::ostringstream s;
  s << std::hex;
  s.width(16);
  s.fill('0');
  s << h;
  return s.str();
}

nlohmann::json RunManifest::to_json() const {
  nlohmann::json in = nlohmann::json::array();
  for (const auto& [path, digest] : inputs) in.push_back({{"path", path}, {"fnv1a", digest}});
  nlohmann::json params = nlohmann::json::object();
  for (const auto& [k, v] : parameters) params[k] = v;
  return {{"command", command},   {"inputs", in},          {"parameters", params},
          {"version", version},   {"exit_code", exit_code}, {"summary", summary}};
}

namespace {

struct Outcome {
  Outcome() = default;
  Outcome(nlohmann::json r, int c, std::string s) : result(std::move(r)), code(c), summary(std::move(s)) {}
  nlohmann::json result;
  int code = kOk;
  std::string summary;
  std::vector<std::pair<std::string, nlohmann::json>> artifacts;  // file name, content
};

struct Globals {
  std::string out_dir;
  unsigned jobs = 1;
  std::string format = "json";
  std::size_t bound = 0;
  std::uint64_t seed = 1;
  int radius = 0;
  int palette = 0;
};

class Session {
 public:
  explicit Session(RunManifest& m) : manifest_(m) {}

  std::string read(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw InvalidInput("cannot read '" + path + "'");
    std::stringstream ss;
    ss << in.rdbuf();
    manifest_.inputs.emplace_back(path, fnv1a_hex(ss.str()));
    return ss.str();
  }

  nlohmann::json read_json(const std::string& path) {
    const std::string text = read(path);
    try {
      return nlohmann::json::parse(text);
    } catch (const nlohmann::json::exception& e) {
      throw InvalidInput("'" + path + "' is not valid JSON: " + e.what());
    }
  }

  /// A file path, or sample:NAME for a built-in complex.
  CubeComplex complex(const std::string& spec) {
    if (spec.rfind("sample:", 0) == 0) {
      const std::string name = spec.substr(7);
      CubeComplex x = samples::by_name(name);
      manifest_.inputs.emplace_back(spec, fnv1a_hex(x.to_json().dump()));
      return x;
    }
    return CubeComplex::from_json(read_json(spec));
  }

  SymmetricGraph graph(const std::string& path) { return SymmetricGraph::from_json(read_json(path)); }

 private:
  RunManifest& manifest_;
};

std::vector<std::string> split_list(const std::string& s) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : s) {
    if (c == ',') {
      out.push_back(cur);
      cur.clear();
    } else if (c != ' ') {
      cur.push_back(c);
    }
  }
  if (!cur.empty() || !out.empty()) out.push_back(cur);
  return out;
}

Assignment parse_assignment(const std::string& s, int vertices) {
  Assignment c;
  for (const auto& tok : split_list(s)) {
    try {
      std::size_t used = 0;
      c.push_back(std::stoi(tok, &used));
      if (used != tok.size()) throw std::invalid_argument(tok);
    } catch (const std::exception&) {
      throw InvalidInput("colouring entry '" + tok + "' is not an integer");
    }
  }
  if (static_cast<int>(c.size()) != vertices)
    throw InvalidInput("colouring has " + std::to_string(c.size()) + " entries for " + std::to_string(vertices) +
                       " vertices");
  return c;
}

// Fields shared by the commands that walk from X to the gluing system.
struct Prepared {
  CubeComplex x;
  WallSystem walls;
  Subdivision sd;
  CrossingGraph crossing;
  SymmetricGraph gamma;
  int palette = 0;
};

std::unique_ptr<Prepared> prepare(const CubeComplex& x, const Globals& g) {
  auto p = std::make_unique<Prepared>();
  p->x = x;
  p->walls = wall_complex(p->x, true, g.jobs);
  p->sd = barycentric_subdivide(p->x);
  p->crossing = crossing_graph(p->x, p->walls, g.radius, &p->sd);
  p->gamma = crossing_symmetric_graph(p->crossing);
  p->palette = g.palette > 0 ? g.palette : p->gamma.max_degree() + 1;
  return p;
}

std::size_t atom_bound(const Globals& g) { return g.bound ? g.bound : kDefaultAtomBound; }
std::size_t tuple_bound(const Globals& g) { return g.bound ? g.bound : kDefaultTupleBound; }

CubeMap parse_immersion(const nlohmann::json& doc, const CubeComplex& v, const CubeComplex& base) {
  CubeMap f;
  f.target.assign(v.size(), kNoCube);
  f.axes.assign(v.size(), SignedMap{});
  if (doc.contains("immersion")) {
    for (const auto& e : doc.at("immersion")) {
      const auto cell = v.find(e.at("cell").get<std::string>());
      if (!cell) throw InvalidInput("immersion names an unknown cell");
      const auto target = e.at("target").get<std::int64_t>();
      if (target < 0 || static_cast<std::size_t>(target) >= base.size())
        throw InvalidInput("immersion target out of range");
      f.target[*cell] = static_cast<CubeId>(target);
      const auto perm = e.at("perm").get<std::vector<int>>();
      const auto flips = e.at("flips").get<std::vector<int>>();
      if (perm.size() != flips.size()) throw InvalidInput("immersion perm and flips differ in length");
      for (std::size_t a = 0; a < perm.size(); ++a) f.axes[*cell].image.push_back({perm[a] - 1, flips[a] != 0});
    }
  } else if (doc.contains("map")) {
    for (const auto& [src, dst] : doc.at("map").items()) {
      const auto cell = v.find(src);
      const auto target = base.find(dst.get<std::string>());
      if (!cell || !target) throw InvalidInput("map names an unknown cell");
      f.target[*cell] = *target;
      f.axes[*cell] = SignedMap::identity(v.dim(*cell));
    }
  } else {
    throw InvalidInput("cover file needs an \"immersion\" or \"map\" entry");
  }
  for (CubeId c = 0; c < v.size(); ++c)
    if (f.target[c] == kNoCube) throw InvalidInput("cell '" + v.name(c) + "' has no image");
  return f;
}

// A JSON array of integers, or an object from class keys to integers.
std::vector<Integer> parse_omega(const nlohmann::json& doc, const GluingSystem& sys) {
  auto as_int = [](const nlohmann::json& v) {
    if (v.is_number_integer()) return Integer(v.get<std::int64_t>());
    if (v.is_string()) return Integer(v.get<std::string>());
    throw InvalidInput("omega entries must be integers");
  };
  std::vector<Integer> w(sys.variables.size(), 0);
  if (doc.is_array()) {
    if (doc.size() != w.size()) throw InvalidInput("omega has the wrong length");
    for (std::size_t i = 0; i < w.size(); ++i) w[i] = as_int(doc[i]);
  } else if (doc.is_object()) {
    const nlohmann::json& m = doc.contains("solution") ? doc.at("solution") : doc;
    for (const auto& [key, v] : m.items()) {
      const int i = sys.variable_index(key);
      if (i < 0) throw InvalidInput("omega names an unknown class");
      w[static_cast<std::size_t>(i)] = as_int(v);
    }
  } else {
    throw InvalidInput("omega must be an array or an object");
  }
  return w;
}

Outcome pipeline_outcome(const CubeComplex& x, const Globals& g, const std::string& solve = "counting",
                         std::optional<std::vector<Integer>> omega = std::nullopt) {
  PipelineOptions opts;
  opts.solve = solve;
  opts.omega = std::move(omega);
  opts.radius = g.radius;
  opts.palette = g.palette;
  opts.bound = atom_bound(g);
  opts.jobs = g.jobs;
  auto run = run_pipeline(x, opts);
  Outcome o;
  o.result = to_json(*run);
  if (run->stopped == "npc") {
    o.code = kNegative;
    o.summary = "not nonpositively curved";
  } else if (run->stopped == "special") {
    o.code = kNegative;
    std::ostringstream s;
    s << "not special:";
    for (int w : run->special->one_sided) s << " one-sided wall W" << w;
    if (!run->special->self_crossings.empty()) s << " self-crossing";
    if (!run->special->direct_self_osculations.empty()) s << " direct self-osculation";
    if (!run->special->inter_osculations.empty()) s << " inter-osculation";
    o.summary = s.str();
  } else if (run->stopped == "degree") {
    o.code = kNegative;
    o.summary = "nonzero boundary degree at level " + std::to_string(run->degrees.back().level);
  } else if (run->stopped == "cover") {
    o.code = kInternal;
    o.summary = "V_0 is not a cover: " + run->cover->failure;
  } else {
    o.summary = "cover degree " + std::to_string(run->cover->degree);
  }
  if (run->sd) o.artifacts.emplace_back("subdivision.json", run->sd->complex.to_json());
  for (const auto& s : run->levels)
    o.artifacts.emplace_back("v" + std::to_string(s.level) + ".json", to_json(s.v));
  return o;
}

void write_file(const std::filesystem::path& p, const std::string& text) {
  std::ofstream f(p, std::ios::binary);
  if (!f) throw InvalidInput("cannot write '" + p.string() + "'");
  f << text;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  return run(static_cast<int>(argv.size()), argv.data(), out, err);
}

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Cube complexes, walls, colourings, polyhedral gluing and Stallings graphs", "vhtk"};
  app.fallthrough();
  app.require_subcommand(1);

  Globals g;
  app.add_option("--out", g.out_dir, "Directory for artifacts and the run manifest");
  app.add_option("--jobs", g.jobs, "Worker threads")->check(CLI::Range(1u, 1024u));
  app.add_option("--format", g.format, "Output format")->check(CLI::IsMember({"json"}));
  app.add_option("--bound", g.bound, "Resource bound (atoms or tuples)");
  app.add_option("--seed", g.seed, "Random seed");
  app.add_option("--radius", g.radius, "Crossing graph radius")->check(CLI::NonNegativeNumber);
  app.add_option("--palette", g.palette, "Number of colours (default: max degree + 1)");

  RunManifest manifest;
  manifest.version = VHTK_VERSION;
  Session session(manifest);
  std::function<Outcome()> action;

  std::string input, input2, graph_file, coloring, words, solve = "counting", omega_file, walls_sel = "all";
  int n = 0, rank = 2;
  bool greedy = false, chain = false, proper = false, product = false, project = false;
  std::size_t samples_count = 0;
  std::vector<std::string> subgroup_files;

  auto complex_cmd = [&](const std::string& name, const std::string& help) {
    auto* c = app.add_subcommand(name, help);
    c->add_option("input", input, "Complex JSON file or sample:NAME")->required();
    return c;
  };

  complex_cmd("check-npc", "Check the link condition at every vertex")->callback([&] {
    action = [&] {
      const CubeComplex x = session.complex(input);
      const NpcReport r = check_npc(x, g.jobs);
      Outcome o{to_json(x, r), r.npc ? kOk : kNegative, r.npc ? "nonpositively curved" : "link condition fails"};
      return o;
    };
  });

  complex_cmd("walls", "Compute the walls and their sidedness")->callback([&] {
    action = [&] {
      const CubeComplex x = session.complex(input);
      const WallSystem ws = wall_complex(x, true, g.jobs);
      return Outcome{to_json(x, ws), kOk, std::to_string(ws.size()) + " walls"};
    };
  });

  complex_cmd("special-check", "Look for the four wall pathologies")->callback([&] {
    action = [&] {
      const CubeComplex x = session.complex(input);
      const WallSystem ws = wall_complex(x, true, g.jobs);
      const SpecialnessReport r = specialness_report(x, ws);
      return Outcome{to_json(x, ws, r), r.special ? kOk : kNegative, r.special ? "special" : "not special"};
    };
  });

  complex_cmd("crossing-graph", "Crossing graph of the walls at the given radius")->callback([&] {
    action = [&] {
      const CubeComplex x = session.complex(input);
      auto p = prepare(x, g);
      nlohmann::json j = to_json(p->crossing);
      j["graph"] = p->gamma.to_json();
      return Outcome{j, kOk, "max degree " + std::to_string(p->gamma.max_degree())};
    };
  });

  auto* color = app.add_subcommand("color", "Colour a graph");
  color->add_option("graph", graph_file, "Graph JSON file")->required();
  color->add_flag("--greedy", greedy, "Greedy colouring in vertex order");
  color->callback([&] {
    action = [&] {
      const SymmetricGraph gr = session.graph(graph_file);
      if (!greedy) throw Error(ErrorKind::Usage, "color: only --greedy is available");
      const Assignment c = greedy_coloring(gr);
      const int used = c.empty() ? 0 : *std::max_element(c.begin(), c.end());
      nlohmann::json j = {{"coloring", c}, {"colors", used}, {"max_degree", gr.max_degree()}, {"proper", is_proper(gr, c)}};
      return Outcome{j, kOk, std::to_string(used) + " colours"};
    };
  });

  auto* proj = app.add_subcommand("project", "Apply p_n or the chain down to max degree + 1");
  proj->add_option("graph", graph_file, "Graph JSON file")->required();
  proj->add_option("--coloring", coloring, "Comma separated colours, one per vertex")->required();
  proj->add_option("--n", n, "Palette size of the input colouring")->required();
  proj->add_flag("--chain", chain, "Apply p_n, ..., p_{k+2}");
  proj->callback([&] {
    action = [&] {
      const SymmetricGraph gr = session.graph(graph_file);
      const Assignment c = parse_assignment(coloring, gr.size());
      const Assignment r = chain ? project_chain(gr, c, n) : project_step(gr, c, n);
      nlohmann::json j = {{"input", c}, {"output", r}, {"chain", chain}, {"n", n}};
      return Outcome{j, kOk, assignment_string(r)};
    };
  });

  auto* mw = app.add_subcommand("measure-weight", "Exact weight of a colouring measure");
  mw->add_option("graph", graph_file, "Graph JSON file")->required();
  mw->add_option("--n", n, "Palette size")->required();
  mw->add_flag("--proper", proper, "Uniform measure on proper colourings");
  mw->add_flag("--product", product, "Uniform product measure");
  mw->add_flag("--project", project, "Push forward under the chain P_n");
  mw->add_option("--samples", samples_count, "Also estimate by Monte Carlo with this many samples");
  mw->callback([&] {
    action = [&] {
      const SymmetricGraph gr = session.graph(graph_file);
      if (proper == product) throw Error(ErrorKind::Usage, "measure-weight: pass exactly one of --proper, --product");
      Distribution d = proper ? proper_coloring_measure(gr, n, atom_bound(g), g.jobs) : uniform_product(gr, n);
      AssignmentMap op = [&](const Assignment& c) { return project_chain(gr, c, n); };
      nlohmann::json j = {{"n", n}, {"measure", proper ? "proper" : "product"}};
      j["weight"] = weight(gr, d).str();
      if (project) {
        const Distribution pushed = pushforward(d, op, gr.max_degree() + 1, atom_bound(g), g.jobs);
        j["projected_weight"] = weight(gr, pushed).str();
        j["projected_palette"] = gr.max_degree() + 1;
      }
      if (samples_count) {
        const WeightEstimate e = sample_weight(gr, d, project ? op : AssignmentMap{[](const Assignment& c) { return c; }},
                                               samples_count, g.seed);
        j["estimate"] = {{"value", e.value}, {"samples", e.samples}, {"seed", e.seed}};
      }
      return Outcome{j, kOk, "weight " + j["weight"].get<std::string>()};
    };
  });

  auto* poly = app.add_subcommand("polyhedron", "The cubical polyhedron of a graph");
  poly->add_option("graph", graph_file, "Graph JSON file")->required();
  poly->callback([&] {
    action = [&] {
      const SymmetricGraph gr = session.graph(graph_file);
      const Polyhedron p = polyhedron_from_graph(gr.size(), gr.edges(), gr.names());
      return Outcome{to_json(p), kOk, std::to_string(p.complex().size()) + " cells"};
    };
  });

  complex_cmd("split", "Split along walls: all gives the vertex polyhedra")
      ->add_option("--walls", walls_sel, "all, or comma separated wall ids forming one stratum");
  app.get_subcommand("split")->callback([&] {
    action = [&] {
      const CubeComplex x = session.complex(input);
      const WallSystem ws = wall_complex(x, true, g.jobs);
      const Subdivision sd = barycentric_subdivide(x);
      if (walls_sel != "all") {
        std::vector<int> family;
        for (int w : parse_assignment(walls_sel, static_cast<int>(split_list(walls_sel).size()))) {
          if (w < 0 || static_cast<std::size_t>(w) >= ws.size()) throw InvalidInput("no wall " + std::to_string(w));
          family.push_back(w);
        }
        const SplitResult r = split_along_walls(x, ws, sd, {family});
        return Outcome{to_json(r.pattern), kOk, std::to_string(r.pattern.complex.size()) + " cells"};
      }
      const SplitCatalog cat = split_all(x, ws, sd);
      return Outcome{to_json(x, cat), kOk, std::to_string(cat.models.size()) + " polyhedra"};
    };
  });

  complex_cmd("signatures", "Wall, facet and polyhedron signatures for one colouring")
      ->add_option("--coloring", coloring, "JSON file or comma separated colours per wall (default: greedy)");
  app.get_subcommand("signatures")->callback([&] {
    action = [&] {
      const CubeComplex x = session.complex(input);
      auto p = prepare(x, g);
      Assignment c;
      if (coloring.empty()) {
        c = greedy_coloring(p->gamma);
      } else if (std::filesystem::exists(coloring)) {
        try {
          c = session.read_json(coloring).get<Assignment>();
        } catch (const nlohmann::json::exception&) {
          throw InvalidInput("colouring file must hold an array of integers");
        }
        if (static_cast<int>(c.size()) != p->gamma.size()) throw InvalidInput("colouring has the wrong length");
      } else {
        c = parse_assignment(coloring, p->gamma.size());
      }
      if (!is_proper(p->gamma, c)) throw InvalidInput("colouring is not proper");
      const SplitCatalog cat = split_all(p->x, p->walls, p->sd);
      const SignatureTable t(p->gamma, c);
      nlohmann::json walls = nlohmann::json::array(), facets = nlohmann::json::array(),
                     polys = nlohmann::json::array();
      for (int w = 0; w < p->gamma.size(); ++w)
        walls.push_back({{"wall", w}, {"signature", t.wall(w)}, {"orbit", orbit_normal_form(p->gamma, c, w)}});
      for (std::size_t f = 0; f < cat.facets.size(); ++f)
        facets.push_back(facet_signature(cat, t, static_cast<int>(f)));
      for (std::size_t q = 0; q < cat.models.size(); ++q)
        polys.push_back(polyhedron_signature(cat, t, static_cast<int>(q)));
      nlohmann::json j = {{"coloring", c}, {"walls", walls}, {"facets", facets}, {"polyhedra", polys}};
      return Outcome{j, kOk, std::to_string(walls.size()) + " wall signatures"};
    };
  });

  auto* ge = complex_cmd("glue-equations", "Gluing equations and a nonnegative integer solution");
  ge->add_option("--solve", solve, "counting or integer")->check(CLI::IsMember({"counting", "integer"}));
  ge->callback([&] {
    action = [&] {
      const CubeComplex x = session.complex(input);
      auto p = prepare(x, g);
      const SplitCatalog cat = split_all(p->x, p->walls, p->sd);
      const GluingSystem sys = build_gluing_system(cat, p->gamma, p->palette, atom_bound(g), g.jobs);
      const IntegerSolution sol = solve_with(sys, solve);
      return Outcome{to_json(sys, &sol.weights, sol.method), kOk,
                     std::to_string(sys.variables.size()) + " variables, " + std::to_string(sys.equations.size()) +
                         " equations"};
    };
  });

  complex_cmd("wall-pieces", "Induced wall pieces per colour level")->callback([&] {
    action = [&] {
      const CubeComplex x = session.complex(input);
      auto p = prepare(x, g);
      nlohmann::json levels = nlohmann::json::array();
      std::size_t total = 0;
      for (int level = 1; level <= p->palette; ++level) {
        nlohmann::json pieces = nlohmann::json::array();
        for (const auto& e : y_catalog(p->x, p->walls, p->gamma, p->palette, level, atom_bound(g), g.jobs)) {
          nlohmann::json pj = to_json(e.piece);
          pj["representative"] = e.representative;
          pieces.push_back(pj);
          ++total;
        }
        levels.push_back({{"level", level}, {"pieces", pieces}});
      }
      return Outcome{{{"palette", p->palette}, {"levels", levels}}, kOk, std::to_string(total) + " wall pieces"};
    };
  });

  auto* bh = complex_cmd("build-hierarchy", "Solve, assemble and glue down to a cover");
  bh->add_option("--solve", solve, "counting or integer")->check(CLI::IsMember({"counting", "integer"}));
  bh->add_option("--omega", omega_file, "Weights as a JSON array or a map from class keys");
  bh->callback([&] {
    action = [&] {
      const CubeComplex x = session.complex(input);
      std::optional<std::vector<Integer>> omega;
      if (!omega_file.empty()) {
        const nlohmann::json doc = session.read_json(omega_file);
        auto p = prepare(x, g);
        const SplitCatalog cat = split_all(p->x, p->walls, p->sd);
        omega = parse_omega(doc, build_gluing_system(cat, p->gamma, p->palette, atom_bound(g), g.jobs));
      }
      return pipeline_outcome(x, g, solve, std::move(omega));
    };
  });

  auto* vc = app.add_subcommand("verify-cover", "Check that a map of complexes is a covering");
  vc->add_option("cover", input, "Patterned complex with an immersion, or {complex, map}")->required();
  vc->add_option("base", input2, "Base complex JSON file or sample:NAME")->required();
  vc->callback([&] {
    action = [&] {
      const nlohmann::json doc = session.read_json(input);
      const CubeComplex base = session.complex(input2);
      const CubeComplex v = CubeComplex::from_json(doc.contains("complex") ? doc.at("complex") : doc);
      const CubeMap f = parse_immersion(doc, v, base);
      const CoverReport r = verify_cover(v, base, f);
      nlohmann::json j = {{"ok", r.ok}, {"degree", r.degree}, {"failure", r.failure}};
      return Outcome{j, r.ok ? kOk : kNegative, r.ok ? "cover of degree " + std::to_string(r.degree) : r.failure};
    };
  });

  auto* demo = app.add_subcommand("demo", "Run the whole pipeline on a built-in example");
  demo->add_option("name", input, "torus, rose, t3 or klein")
      ->required()
      ->check(CLI::IsMember({"torus", "rose", "t3", "klein"}));
  demo->add_option("--solve", solve, "counting or integer")->check(CLI::IsMember({"counting", "integer"}));
  demo->callback([&] {
    action = [&] {
      return pipeline_outcome(session.complex("sample:" + input), g, solve);
    };
  });

  auto* sample = app.add_subcommand("sample", "Built-in complexes");
  auto* exp = sample->add_subcommand("export", "Print a built-in complex as JSON");
  exp->add_option("name", input, "Sample name")->required();
  sample->require_subcommand(1);
  exp->callback([&] {
    action = [&] {
      const CubeComplex x = samples::by_name(input);
      return Outcome{x.to_json(), kOk, std::to_string(x.size()) + " cubes"};
    };
  });

  auto* st = app.add_subcommand("stallings", "Folded graphs of free group subgroups");
  st->require_subcommand(1);
  auto words_or_graph = [&](CLI::App* c) {
    c->add_option("--rank", rank, "Rank of the free group")->check(CLI::Range(1, 26));
    c->add_option("--words", words, "Comma separated generators, lowercase letters and uppercase inverses");
    c->add_option("--graph", graph_file, "Folded graph JSON file");
  };
  std::vector<std::string> notices;
  auto subgroup = [&]() -> FoldedGraph {
    if (!graph_file.empty()) {
      FoldedGraph z = folded_graph_from_json(session.read_json(graph_file));
      if (!z.is_core()) throw InvalidInput("graph is not a core graph");
      return z;
    }
    return fold_and_core(rank, split_list(words), &notices);
  };
  auto* fold = st->add_subcommand("fold", "Fold and take the core");
  words_or_graph(fold);
  std::vector<std::string> members;
  fold->add_option("--member", members, "Words to test for membership");
  fold->callback([&] {
    action = [&] {
      const FoldedGraph z = subgroup();
      nlohmann::json j = to_json(z);
      j["notices"] = notices;
      j["generators"] = z.generators();
      nlohmann::json m = nlohmann::json::object();
      for (const auto& w : members) {
        check_letters(w, z.rank);
        m[w] = z.contains(w);
      }
      j["membership"] = m;
      return Outcome{j, kOk, std::to_string(z.size()) + " vertices"};
    };
  });
  auto* height = st->add_subcommand("height", "Multiplicity of the immersion, which equals the height");
  words_or_graph(height);
  height->callback([&] {
    action = [&] {
      const FoldedGraph z = subgroup();
      nlohmann::json j = to_json(multiplicity_height(z, tuple_bound(g)));
      j["graph"] = to_json(z);
      j["notices"] = notices;
      return Outcome{j, kOk, "height " + std::to_string(j["height"].get<int>())};
    };
  });
  auto* fiber = st->add_subcommand("fiber", "Components of the n-fold pullback");
  words_or_graph(fiber);
  fiber->add_option("--n", n, "Number of factors")->required()->check(CLI::PositiveNumber);
  fiber->callback([&] {
    action = [&] {
      const FoldedGraph z = subgroup();
      nlohmann::json comps = nlohmann::json::array();
      std::size_t off = 0;
      for (const auto& c : fiber_product(z, n, tuple_bound(g))) {
        comps.push_back(to_json(c));
        off += c.off_diagonal ? 1 : 0;
      }
      return Outcome{{{"n", n}, {"components", comps}}, kOk, std::to_string(off) + " components off the diagonal"};
    };
  });
  auto* mal = st->add_subcommand("malnormal", "Almost malnormality of a collection");
  mal->add_option("--subgroups", subgroup_files, "Folded graph JSON files");
  mal->add_option("--rank", rank, "Rank of the free group")->check(CLI::Range(1, 26));
  mal->add_option("--words", members, "One comma separated generating set per subgroup");
  mal->callback([&] {
    action = [&] {
      std::vector<FoldedGraph> hs;
      for (const auto& f : subgroup_files) hs.push_back(folded_graph_from_json(session.read_json(f)));
      for (const auto& w : members) hs.push_back(fold_and_core(rank, split_list(w), &notices));
      if (hs.empty()) throw Error(ErrorKind::Usage, "malnormal: give --subgroups or --words");
      const MalnormalVerdict v = check_almost_malnormal(hs, tuple_bound(g));
      nlohmann::json j = to_json(v);
      if (v.witness) j["witness_verified"] = verify_malnormal_witness(hs, *v.witness);
      return Outcome{j, v.malnormal ? kOk : kNegative,
                     v.malnormal ? "almost malnormal" : "not almost malnormal, g = " + v.witness->g};
    };
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kUsage;
  }

  // The manifest records the subcommand path and every parameter given.
  for (const CLI::App* sub = &app; !sub->get_subcommands().empty();) {
    sub = sub->get_subcommands().front();
    manifest.command += (manifest.command.empty() ? "" : " ") + sub->get_name();
  }
  manifest.parameters = {{"jobs", g.jobs},   {"radius", g.radius}, {"palette", g.palette},
                         {"bound", g.bound}, {"seed", g.seed},     {"format", g.format}};

  Outcome o;
  try {
    o = action();
  } catch (const Error& e) {
    const int code = e.kind() == ErrorKind::Usage          ? kUsage
                     : e.kind() == ErrorKind::InvalidInput ? kInvalid
                     : e.kind() == ErrorKind::Negative     ? kNegative
                     : e.kind() == ErrorKind::Bound        ? kBound
                                                           : kInternal;
    err << "vhtk " << manifest.command << ": " << e.what() << "\n";
    o = Outcome{{{"error", e.what()}}, code, e.what()};
  } catch (const std::exception& e) {
    err << "vhtk " << manifest.command << ": internal error: " << e.what() << "\n";
    o = Outcome{{{"error", e.what()}}, kInternal, e.what()};
  }
  manifest.exit_code = o.code;
  manifest.summary = o.summary;
  out << o.result.dump(2) << "\n";
  if (o.code == kOk || o.code == kNegative) err << o.summary << "\n";

  if (!g.out_dir.empty()) {
    try {
      const std::filesystem::path dir(g.out_dir);
      std::filesystem::create_directories(dir);
      write_file(dir / "result.json", o.result.dump(2) + "\n");
      write_file(dir / "manifest.json", manifest.to_json().dump(2) + "\n");
      for (const auto& [name, content] : o.artifacts) write_file(dir / name, content.dump(2) + "\n");
    } catch (const std::exception& e) {
      err << "vhtk: " << e.what() << "\n";
      return kInvalid;
    }
  }
  return o.code;
}

}  // namespace vh::cli
