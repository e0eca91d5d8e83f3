#include <fstream>
#include <random>
#include <sstream>

#include "doctest.h"
#include "howson/graphmap.hpp"
#include "oracles.hpp"

using namespace howson;
using howson::test::w;

namespace {
  GraphMapFile load(std::string const& name) {
    std::ifstream     in(std::string(HOWSON_TEST_DATA) + "/" + name);
    std::stringstream buffer;
    buffer << in.rdbuf();
    return GraphMapFile::parse(buffer.str());
  }

  GraphMapFile rose(std::string_view map) {
    GraphMapFile f{GraphSelfMap::from_endomorphism(Endomorphism::parse(map)), {}};
    for (std::size_t e = 0; e < f.map.graph.edge_count(); ++e) {
      f.filtration.strata.push_back({e});
    }
    return f;
  }

  // Unipotent triangular automorphism x_i -> x_i P_i with P_i a random word
  // in the earlier letters; its rose with one stratum per petal satisfies
  // every filtration clause.
  GraphMapFile random_triangular(std::mt19937_64& rng, std::size_t r) {
    std::vector<Word> images;
    for (std::uint32_t i = 0; i < r; ++i) {
      Word p(r);
      if (i > 0) {
        auto lower = test::random_word(rng, i, 4);
        std::vector<Letter> letters(lower.begin(), lower.end());
        p = Word::reduce(letters, r);
      }
      images.push_back(Word::letter(r, i) * p);
    }
    GraphMapFile f{GraphSelfMap::from_endomorphism(Endomorphism(r, images)), {}};
    for (std::size_t e = 0; e < r; ++e) {
      f.filtration.strata.push_back({e});
    }
    return f;
  }

  std::string lollipop(int twist) {
    std::string path;
    for (int i = 0; i < std::abs(twist); ++i) {
      path += twist > 0 ? " c2" : " -c2";
    }
    return "vertex p\nvertex u\nvertex q\n"
           "edge s p u\nedge l u u\nedge c2 q q\nedge e p q\n"
           "vmap p p\nvmap u u\nvmap q q\n"
           "emap s s\nemap l l\nemap c2 c2\nemap e e"
           + path + "\nstratum s\nstratum l\nstratum c2\nstratum e\n";
  }
}  // namespace

TEST_CASE("file format round trip") {
  auto f = load("two-loops-arc.gmap");
  CHECK(f.map.graph.vertex_count() == 2);
  CHECK(f.map.graph.edge_count() == 3);
  CHECK(f.filtration.strata.size() == 3);
  CHECK(f.map.edge_map[2] == EdgePath{{2, false}, {1, false}});
  auto again = GraphMapFile::parse(f.to_text());
  CHECK(again.to_text() == f.to_text());
  CHECK_THROWS_AS(GraphMapFile::parse("vertex a\nedge x a b\n"), Error);
  CHECK_THROWS_AS(GraphMapFile::parse("vertex a\nedge x a a\nvmap a a\n"), Error);
  CHECK_THROWS_AS(GraphMapFile::parse("vertex a\nvertex a\n"), Error);
  CHECK_THROWS_AS(GraphMapFile::parse("vertx a\n"), Error);
  auto empty_image = GraphMapFile::parse("vertex a\nedge x a a\nvmap a a\nemap x\n");
  CHECK(empty_image.map.edge_map[0].empty());
}

TEST_CASE("validate") {
  CHECK(validate(rose("a -> a, b -> b").map));
  CHECK(validate(rose("a -> ab, b -> b").map));
  auto f = load("two-loops-arc.gmap");
  CHECK(validate(f.map));
  f.map.edge_map[2] = {{0, false}};  // e: p -> q sent to the loop c1 at p
  auto d            = validate(f.map);
  CHECK_FALSE(d);
  REQUIRE(d.messages.size() == 1);
  CHECK(d.messages[0].find("'e'") != std::string::npos);
  f.map.edge_map[1] = {{2, false}};  // c2 sent to the arc
  CHECK(validate(f.map).messages.size() == 2);
}

TEST_CASE("euler characteristic") {
  CHECK(euler_characteristic(rose("a -> a, b -> b").map.graph) == -1);
  Graph point;
  point.add_vertex("v");
  CHECK(euler_characteristic(point) == 1);
  auto theta = load("theta.gmap");
  CHECK(euler_characteristic(theta.map.graph) == -1);
  auto parts = components(load("two-loops-arc.gmap").map.graph, {0, 1});
  CHECK(parts.size() == 2);
  CHECK(parts[0].euler_characteristic() == 0);
}

TEST_CASE("verify filtration") {
  CHECK(verify_filtration(rose("a -> a, b -> ba").map, rose("a -> a, b -> ba").filtration));
  auto thue_morse = rose("a -> ab, b -> ba");
  auto d     = verify_filtration(thue_morse.map, thue_morse.filtration);
  CHECK_FALSE(d);
  CHECK(d.messages.front().find("V^1 is not invariant") != std::string::npos);
  auto two  = rose("a -> a, b -> ba");
  two.filtration.strata = {{0, 1}};
  d                     = verify_filtration(two.map, two.filtration);
  CHECK_FALSE(d);
  CHECK(d.messages.front() == "stratum 1 is not a single edge");
  auto backwards = rose("a -> a, b -> ab");
  d              = verify_filtration(backwards.map, backwards.filtration);
  CHECK_FALSE(d);
  CHECK(d.messages.front().find("does not begin") != std::string::npos);
  auto missing = rose("a -> a, b -> b");
  missing.filtration.strata.pop_back();
  CHECK_FALSE(verify_filtration(missing.map, missing.filtration));
  CHECK(verify_filtration(load("two-loops-arc.gmap").map, load("two-loops-arc.gmap").filtration));
  CHECK(verify_filtration(load("theta.gmap").map, load("theta.gmap").filtration));
}

TEST_CASE("smallest negative euler characteristic") {
  auto r2 = rose("a -> a, b -> b");
  auto n  = smallest_negative_chi(r2.map.graph, r2.filtration);
  REQUIRE(n);
  CHECK(n->r == 2);
  CHECK(n->component.edges == std::vector<std::size_t>{0, 1});
  auto r1 = rose("a -> a");
  CHECK_FALSE(smallest_negative_chi(r1.map.graph, r1.filtration));
  auto arc = load("two-loops-arc.gmap");
  n        = smallest_negative_chi(arc.map.graph, arc.filtration);
  REQUIRE(n);
  CHECK(n->r == 3);
  CHECK(n->component.euler_characteristic() == -1);
}

TEST_CASE("mapping torus presentations") {
  auto one = rose("a -> a");
  auto p   = mapping_torus_presentation(one.map, one.filtration);
  CHECK(p.to_string() == "< a, t | t a t^-1 = a >");
  CHECK(p.abelianization_rank() == 2);

  auto two = rose("a -> a, b -> ba");
  p        = mapping_torus_presentation(two.map, two.filtration, 2);
  CHECK(p.to_string() == "< a, b, t | t a t^-1 = a, t b t^-1 = b a >");
  CHECK(p.abelianization_rank() == 2);

  auto theta = load("theta.gmap");
  p          = mapping_torus_presentation(theta.map, theta.filtration);
  // x is the tree edge, so y and z stand for the loops y x^-1 and z x^-1.
  CHECK(p.generators == std::vector<std::string>{"y", "z", "t"});
  CHECK(p.abelianization_rank() == 1 + 2);
  theta.map.edge_map[2] = {{2, false}, {0, true}, {1, false}};
  p                     = mapping_torus_presentation(theta.map, theta.filtration);
  CHECK(p.to_string() == "< y, z, t | t y t^-1 = y, t z t^-1 = z y >");
  CHECK(p.abelianization_rank() == 2);

  auto thue_morse = rose("a -> ab, b -> ba");
  CHECK_THROWS_AS((void) mapping_torus_presentation(thue_morse.map, thue_morse.filtration), Error);
  CHECK(mapping_torus_presentation(thue_morse.map).relations.size() == 2);
}

TEST_CASE("polynomial witness: disconnected case") {
  auto f = load("two-loops-arc.gmap");
  auto w = polynomial_witness(f.map, f.filtration);
  CHECK(w.kind == WitnessCase::disconnected);
  CHECK(w.r == 3);
  CHECK(f.map.graph.edge(w.edge).name == "e");
  CHECK(w.cycles.size() == 2);
  CHECK(w.z_power == 2);
  CHECK(w.hnn_checked);
  CHECK(w.a_commutes);
  CHECK(w.b_commutes);
  CHECK(w.ab_nontrivial);
  CHECK(w.ab_free);
  CHECK(w.passed());

  for (int twist : {-2, 0, 1, 3}) {
    auto g = GraphMapFile::parse(lollipop(twist));
    auto x = polynomial_witness(g.map, g.filtration);
    CHECK(x.kind == WitnessCase::disconnected);
    CHECK(x.r == 4);
    CHECK(x.passed());
  }
}

TEST_CASE("polynomial witness: connected cases") {
  auto id = rose("a -> a, b -> b");
  auto w  = polynomial_witness(id.map, id.filtration);
  CHECK(w.kind == WitnessCase::degenerate);
  CHECK(w.a == Word::parse("a", 2));
  CHECK(w.b == Word::parse("b", 2));
  CHECK(w.z_power == 1);
  CHECK(w.passed());

  auto lin = rose("a -> a, b -> ba");
  w        = polynomial_witness(lin.map, lin.filtration);
  CHECK(w.kind == WitnessCase::connected);
  CHECK(w.a == Word::parse("a", 2));
  CHECK(w.b == Word::parse("baB", 2));
  CHECK(w.z_power == 2);
  CHECK(w.passed());
}

TEST_CASE("polynomial witness: guards") {
  auto expo = rose("a -> a, b -> bab");
  try {
    (void) polynomial_witness(expo.map, expo.filtration);
    FAIL("expected ExponentialStratum");
  } catch (Error const& e) {
    CHECK(e.code() == Errc::exponential_stratum);
  }
  auto one = rose("a -> a");
  try {
    (void) polynomial_witness(one.map, one.filtration);
    FAIL("expected NoNegativeChi");
  } catch (Error const& e) {
    CHECK(e.code() == Errc::no_negative_chi);
  }
  auto bad = rose("a -> a, b -> ab");
  try {
    (void) polynomial_witness(bad.map, bad.filtration);
    FAIL("expected FiltrationViolation");
  } catch (Error const& e) {
    CHECK(e.code() == Errc::filtration_violation);
  }
}

TEST_CASE("power") {
  auto lin = rose("a -> a, b -> ba").map;
  auto sq  = power(lin, 2);
  CHECK(sq.edge_map[1] == EdgePath{{1, false}, {0, false}, {0, false}});
  CHECK(power(lin, 0).edge_map[1] == EdgePath{{1, false}});
  auto inv_map = rose("a -> A, b -> b").map;
  CHECK(power(inv_map, 2).edge_map[0] == EdgePath{{0, false}});
}

TEST_CASE("property: euler characteristic is additive and counts pi_1") {
  std::mt19937_64 rng(51);
  for (int i = 0; i < 200; ++i) {
    Graph g;
    std::uniform_int_distribution<std::size_t> nv(1, 5), ne(0, 7);
    auto                                        vertices = nv(rng);
    for (std::size_t v = 0; v < vertices; ++v) {
      g.add_vertex("v" + std::to_string(v));
    }
    std::uniform_int_distribution<std::size_t> pick(0, vertices - 1);
    for (auto k = ne(rng); k > 0; --k) {
      g.add_edge("e" + std::to_string(g.edge_count()), pick(rng), pick(rng));
    }
    long sum = 0;
    for (auto const& c : components(g)) {
      sum += c.euler_characteristic();
    }
    CHECK(sum == euler_characteristic(g));
    // The identity map: every component is invariant and vertex 0 is fixed.
    GraphSelfMap id = power(GraphSelfMap{g, std::vector<std::size_t>(vertices, 0), {}}, 0);
    auto         p  = mapping_torus_presentation(id);
    auto const   c0 = components(g).front();
    CHECK(long(p.generators.size()) - 1 == 1 - c0.euler_characteristic());
    CHECK(p.abelianization_rank() == p.generators.size());
  }
}

TEST_CASE("property: rose tori abelianize freely iff the map is trivial on homology") {
  std::mt19937_64 rng(52);
  for (int i = 0; i < 300; ++i) {
    std::size_t       r = 2 + i % 2;
    std::vector<Word> images;
    for (std::size_t g = 0; g < r; ++g) {
      images.push_back(i % 3 == 0 ? Word::letter(r, std::uint32_t(g))
                                        * commutator(test::random_word(rng, r, 2),
                                                     test::random_word(rng, r, 2))
                                  : test::random_word(rng, r, 3));
    }
    Endomorphism phi(r, images);
    bool         identity_on_homology = true;
    for (std::uint32_t g = 0; g < r; ++g) {
      for (std::uint32_t h = 0; h < r; ++h) {
        long sum = 0;
        for (Letter x : phi.image(g)) {
          sum += x.generator == h ? x.sign : 0;
        }
        identity_on_homology &= sum == (g == h ? 1 : 0);
      }
    }
    auto p = mapping_torus_presentation(GraphSelfMap::from_endomorphism(phi));
    CHECK((p.abelianization_rank() == r + 1) == identity_on_homology);
  }
}

TEST_CASE("property: verify_filtration is monotone and witnesses pass") {
  std::mt19937_64 rng(53);
  for (int i = 0; i < 200; ++i) {
    auto f = random_triangular(rng, 2 + i % 3);
    if (i % 4 == 3) {
      // Corrupt one image so that some prefix fails.
      auto& path = f.map.edge_map[1 + i % (f.map.edge_map.size() - 1)];
      path.push_back(OrientedEdge{path.front().edge, false});
    }
    auto const k        = f.filtration.strata.size();
    bool       previous = true;
    for (std::size_t r = 0; r <= k; ++r) {
      bool now = verify_filtration(f.map, f.filtration, r).ok;
      CHECK((previous || !now));
      previous = now;
    }
    if (!previous) {
      continue;
    }
    auto w = polynomial_witness(f.map, f.filtration);
    CHECK(w.r == 2);
    CHECK(w.passed());
  }
}
