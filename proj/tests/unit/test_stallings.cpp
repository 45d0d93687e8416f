// SPDX-License-Identifier: Apache-2.0
#include <gtest/gtest.h>

#include <map>
#include <random>

#include "vhtk/error.hpp"
#include "vhtk/stallings.hpp"
#include "vhtk/words.hpp"

using namespace vh;

namespace {

// Traces a word through the exported edge list, reducing first.
bool naive_member(const FoldedGraph& z, const Word& w) {
  const nlohmann::json j = to_json(z);
  std::map<std::pair<std::string, int>, std::string> fwd, back;
  for (const auto& e : j["edges"]) {
    const int label = e["label"].get<int>() - 1;
    fwd[{e["from"].get<std::string>(), label}] = e["to"].get<std::string>();
    back[{e["to"].get<std::string>(), label}] = e["from"].get<std::string>();
  }
  std::string at = j["base"].get<std::string>();
  for (char ch : free_reduce(w)) {
    const int g = ch >= 'a' && ch <= 'z' ? ch - 'a' : ch - 'A';
    auto& table = ch >= 'a' && ch <= 'z' ? fwd : back;
    auto it = table.find({at, g});
    if (it == table.end()) return false;
    at = it->second;
  }
  return at == j["base"].get<std::string>();
}

Word power(const Word& w, int k) {
  Word out;
  for (int i = 0; i < k; ++i) out += w;
  return free_reduce(out);
}

}  // namespace

TEST(Words, Basics) {
  EXPECT_EQ(free_reduce("abBA"), "");
  EXPECT_EQ(free_reduce("aabBc"), "aac");
  EXPECT_EQ(word_inverse("abC"), "cBA");
  EXPECT_EQ(conjugate("b", "a"), "baB");
  EXPECT_EQ(root_of("abab"), "ab");
  EXPECT_EQ(root_exponent("abab"), 2);
  EXPECT_EQ(root_of("Baab"), "Bab");
  EXPECT_TRUE(shortlex_less("a", "A"));
  EXPECT_TRUE(shortlex_less("B", "aa"));
  EXPECT_THROW(check_letters("ac", 2), InvalidInput);
  // 1 + 4 + 12 + 36 reduced words of length <= 3 in F_2.
  EXPECT_EQ(reduced_words(2, 3).size(), 53u);
  const auto ws = reduced_words(2, 3);
  EXPECT_TRUE(std::is_sorted(ws.begin(), ws.end(), shortlex_less));
}

TEST(Fold, Examples) {
  const FoldedGraph a = fold_and_core(2, {"a"});
  EXPECT_EQ(a.size(), 1);
  EXPECT_EQ(a.edge_count(), 1u);
  const FoldedGraph a2 = fold_and_core(2, {"aa"});
  EXPECT_EQ(a2.size(), 2);
  EXPECT_EQ(a2.edge_count(), 2u);
  const FoldedGraph h = fold_and_core(2, {"a", "baB"});
  EXPECT_EQ(h.size(), 2);
  EXPECT_TRUE(h.contains("baB"));
  EXPECT_FALSE(h.contains("b"));
  EXPECT_TRUE(h.contains("abaBA"));
  const FoldedGraph triv = fold_and_core(2, {});
  EXPECT_EQ(triv.size(), 1);
  EXPECT_EQ(triv.edge_count(), 0u);
  EXPECT_FALSE(triv.has_cycle());
}

TEST(Fold, UnreducedInputIsReducedWithNotice) {
  std::vector<std::string> notices;
  const FoldedGraph z = fold_and_core(2, {"abBa"}, &notices);
  EXPECT_EQ(notices.size(), 1u);
  EXPECT_EQ(z.size(), 2);
}

TEST(Fold, IsFoldedConnectedCore) {
  std::mt19937_64 rng(1);
  for (int t = 0; t < 100; ++t) {
    std::vector<Word> gens;
    for (int k = 0; k < 3; ++k) gens.push_back(random_reduced_word(2, 1 + static_cast<int>(rng() % 6), rng));
    const FoldedGraph z = fold_and_core(2, gens);
    EXPECT_TRUE(z.is_connected());
    EXPECT_TRUE(z.is_core());
    for (int v = 0; v < z.size(); ++v) {
      std::map<int, int> seen;
      for (int g = 0; g < 2 * z.rank; ++g)
        if (z.out[static_cast<std::size_t>(v)][static_cast<std::size_t>(g)] >= 0) ++seen[g];
      for (auto [g, k] : seen) EXPECT_EQ(k, 1);
    }
    for (const auto& g : gens) EXPECT_TRUE(z.contains(g));
    // The extracted basis generates the same subgroup.
    const FoldedGraph again = fold_and_core(2, z.generators());
    EXPECT_EQ(to_json(again), to_json(z));
    EXPECT_EQ(folded_graph_from_json(to_json(z)).size(), z.size());
  }
}

TEST(Fold, MembershipAgreesWithNaiveTracing) {
  std::mt19937_64 rng(2);
  const std::vector<std::vector<Word>> examples = {{"a"}, {"aa"}, {"a", "baB"}, {"ab", "ba"}, {"aab", "bAb", "BBa"}};
  for (const auto& gens : examples) {
    const FoldedGraph z = fold_and_core(2, gens);
    int members = 0;
    for (int t = 0; t < 500; ++t) {
      Word w;
      if (t % 2 == 0) {
        // Random product of generators: always a member.
        for (int k = 0; k < 4; ++k) {
          const Word& g = gens[rng() % gens.size()];
          w += rng() % 2 ? g : word_inverse(g);
        }
        EXPECT_TRUE(z.contains(w)) << w;
      } else {
        w = random_reduced_word(2, static_cast<int>(rng() % 9), rng);
      }
      EXPECT_EQ(z.contains(w), naive_member(z, w)) << w;
      members += z.contains(w) ? 1 : 0;
    }
    EXPECT_GE(members, 250);
  }
}

TEST(Fold, FromEdgesRejectsUnfolded) {
  EXPECT_THROW(FoldedGraph::from_edges(2, 2, 0, {{0, 0, 1}, {0, 0, 1}}), InvalidInput);
  EXPECT_THROW(FoldedGraph::from_edges(2, 2, 0, {{0, 0, 0}}), InvalidInput);
}

TEST(Fiber, Examples) {
  const FoldedGraph a = fold_and_core(2, {"a"});
  EXPECT_TRUE(off_diagonal_components(a, 2).empty());
  const FoldedGraph a2 = fold_and_core(2, {"aa"});
  const auto all = fiber_product(a2, 2);
  int diag = 0, off = 0;
  for (const auto& c : all) {
    (c.off_diagonal ? off : diag)++;
    if (c.off_diagonal) {
      EXPECT_EQ(c.tuples.size(), 2u);
      EXPECT_TRUE(c.all_projections_cyclic());
    }
  }
  EXPECT_EQ(diag, 1);
  EXPECT_EQ(off, 1);
  EXPECT_TRUE(off_diagonal_components(a2, 3).empty());
  EXPECT_THROW(fiber_product(a2, 30), BoundExceeded);
}

TEST(Fiber, TuplesHaveEqualImageAndComponentsPartition) {
  const FoldedGraph z = fold_and_core(2, {"aab", "bAb"});
  for (int n = 2; n <= 3; ++n) {
    const auto comps = fiber_product(z, n);
    std::set<std::vector<int>> all;
    for (const auto& c : comps)
      for (const auto& t : c.tuples) {
        EXPECT_TRUE(all.insert(t).second);
        bool distinct = true;
        for (std::size_t i = 0; i < t.size(); ++i)
          for (std::size_t j = i + 1; j < t.size(); ++j) distinct = distinct && t[i] != t[j];
        EXPECT_EQ(distinct, c.off_diagonal);
      }
    std::size_t total = 1;
    for (int i = 0; i < n; ++i) total *= static_cast<std::size_t>(z.size());
    EXPECT_EQ(all.size(), total);
  }
}

TEST(Height, Examples) {
  EXPECT_EQ(multiplicity_height(fold_and_core(2, {"a"})).height, 1);
  EXPECT_EQ(multiplicity_height(fold_and_core(2, {"a", "b"})).height, 1);
  EXPECT_EQ(multiplicity_height(fold_and_core(2, {})).height, 0);
  for (int k = 2; k <= 4; ++k) {
    const Word w = power("a", k);
    const HeightCertificate h = multiplicity_height(fold_and_core(2, {w}));
    EXPECT_EQ(h.height, k);
    EXPECT_TRUE(h.termination_checked);
    // Lower bound by hand: the cosets a^i<a^k>, i < k, all normalise <a^k>.
    const FoldedGraph z = fold_and_core(2, {w});
    for (int i = 0; i < k; ++i)
      for (int j = i + 1; j < k; ++j) EXPECT_FALSE(z.contains(power("A", i) + power("a", j)));
    // Upper bound: heights never exceed the vertex count.
    EXPECT_LE(h.height, z.size());
    EXPECT_EQ(brute_force_cyclic_height(2, w), k);
  }
}

TEST(Height, CertificateForSquare) {
  const HeightCertificate h = multiplicity_height(fold_and_core(2, {"aa"}));
  ASSERT_TRUE(h.conjugators.has_value());
  const Conjugators& c = *h.conjugators;
  EXPECT_EQ(c.g[0][1], "a");
  EXPECT_TRUE(c.conjugation_verified);
  EXPECT_TRUE(c.cosets_distinct);
  for (const auto& gens : c.a) {
    const FoldedGraph ai = fold_and_core(2, gens);
    EXPECT_TRUE(ai.contains("aa"));
    EXPECT_FALSE(ai.contains("a"));
  }
}

TEST(Height, OffsetComponentOfCube) {
  const FoldedGraph z = fold_and_core(2, {"aaa"});
  const auto comps = off_diagonal_components(z, 2);
  ASSERT_EQ(comps.size(), 2u);
  // Offset 1: the first coordinate is one a-step ahead of the second.
  const int ahead = *z.read(z.base, "a");
  for (const auto& comp : comps) {
    const bool offset_one = std::count(comp.tuples.begin(), comp.tuples.end(), std::vector<int>{ahead, z.base}) > 0;
    const Conjugators k = conjugators_and_intersections(comp, z);
    EXPECT_EQ(k.g[0][1], offset_one ? "a" : "A");
  }
  const Conjugators c = conjugators_and_intersections(comps.front(), z);
  EXPECT_TRUE(c.conjugation_verified);
  const FoldedGraph a1 = fold_and_core(2, c.a[0]);
  EXPECT_TRUE(a1.contains("aaa"));
  EXPECT_FALSE(a1.contains("a"));
}

TEST(Height, ConjugationIdentitiesByHand) {
  std::mt19937_64 rng(4);
  for (int t = 0; t < 40; ++t) {
    const Word w = random_reduced_word(2, 2 + static_cast<int>(rng() % 4), rng);
    const FoldedGraph z = fold_and_core(2, {w, random_reduced_word(2, 3, rng)});
    const HeightCertificate h = multiplicity_height(z);
    if (!h.conjugators) continue;
    const Conjugators& c = *h.conjugators;
    const std::size_t n = c.a.size();
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) {
        const FoldedGraph ai = fold_and_core(2, c.a[i]);
        for (const auto& x : c.a[j]) EXPECT_TRUE(ai.contains(conjugate(c.g[i][j], x)));
        if (i != j) EXPECT_FALSE(z.contains(word_product(word_inverse(c.g[0][i]), c.g[0][j])));
      }
  }
}

TEST(Height, AgreesWithBruteForceOnShortCyclicWords) {
  for (const Word& w : reduced_words(2, 4)) {
    if (w.empty()) continue;
    const FoldedGraph z = fold_and_core(2, {w});
    EXPECT_EQ(multiplicity_height(z).height, brute_force_cyclic_height(2, w)) << w;
  }
}

TEST(Height, RelabelInvariance) {
  std::mt19937_64 rng(9);
  for (int t = 0; t < 30; ++t) {
    std::vector<Word> gens{random_reduced_word(3, 4, rng), random_reduced_word(3, 3, rng)};
    std::vector<int> perm{0, 1, 2};
    std::shuffle(perm.begin(), perm.end(), rng);
    std::vector<Word> moved;
    for (const auto& g : gens) moved.push_back(relabel(g, perm));
    EXPECT_EQ(multiplicity_height(fold_and_core(3, gens)).height,
              multiplicity_height(fold_and_core(3, moved)).height);
  }
}

TEST(Height, RejectsNonCore) {
  // An a-loop at the base with a dangling b-edge.
  const FoldedGraph hair = FoldedGraph::from_edges(2, 2, 0, {{0, 0, 0}, {0, 1, 1}});
  EXPECT_FALSE(hair.is_core());
  EXPECT_THROW(multiplicity_height(hair), InvalidInput);
}

TEST(Malnormal, Examples) {
  EXPECT_TRUE(check_almost_malnormal({fold_and_core(2, {"a"}), fold_and_core(2, {"b"})}).malnormal);
  EXPECT_TRUE(check_almost_malnormal({fold_and_core(2, {"a", "b"})}).malnormal);
  EXPECT_TRUE(check_almost_malnormal({fold_and_core(2, {"a"})}).malnormal);
  const std::vector<FoldedGraph> sq{fold_and_core(2, {"aa"})};
  const MalnormalVerdict v = check_almost_malnormal(sq);
  EXPECT_FALSE(v.malnormal);
  ASSERT_TRUE(v.witness.has_value());
  EXPECT_EQ(v.witness->g, "a");
  EXPECT_TRUE(verify_malnormal_witness(sq, *v.witness));
  // <a> and its conjugate by b intersect trivially; <a> and <a^2> do not.
  EXPECT_TRUE(check_almost_malnormal({fold_and_core(2, {"a"}), fold_and_core(2, {"bbaBB"})}).malnormal == false);
  EXPECT_FALSE(check_almost_malnormal({fold_and_core(2, {"a"}), fold_and_core(2, {"aa"})}).malnormal);
}

TEST(Malnormal, WitnessesVerifyIndependently) {
  std::mt19937_64 rng(12);
  for (int t = 0; t < 40; ++t) {
    std::vector<FoldedGraph> hs;
    for (int k = 0; k < 2; ++k) hs.push_back(fold_and_core(2, {random_reduced_word(2, 1 + static_cast<int>(rng() % 4), rng)}));
    const MalnormalVerdict v = check_almost_malnormal(hs);
    if (!v.witness) continue;
    const auto& w = *v.witness;
    // x lies in H_i and g^-1 x g lies in H_j.
    EXPECT_TRUE(hs[static_cast<std::size_t>(w.i)].contains(w.x));
    EXPECT_TRUE(hs[static_cast<std::size_t>(w.j)].contains(conjugate(w.g, w.x)));
    EXPECT_FALSE(free_reduce(w.x).empty());
    if (w.i == w.j) EXPECT_FALSE(hs[static_cast<std::size_t>(w.i)].contains(w.g));
  }
}
