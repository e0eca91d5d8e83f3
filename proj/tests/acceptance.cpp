// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit on any
// failure. Seeds are fixed so every run checks the same instances.

#include <chrono>
#include <cstdio>
#include <functional>
#include <random>
#include <string>

#include "howson/graphmap.hpp"
#include "howson/hnn.hpp"
#include "howson/stallings.hpp"
#include "howson/witness.hpp"
#include "oracles.hpp"

using namespace howson;
using howson::test::random_word;

namespace {
  struct Outcome {
    bool        ok = true;
    std::string detail;

    void require(bool condition, std::string const& what) {
      if (!condition && ok) {
        ok     = false;
        detail = what;
      }
    }
  };

  // Criteria without a stated time bound get this one.
  constexpr double default_limit = 30.0;

  std::vector<Word> random_generators(std::mt19937_64& rng,
                                      std::size_t      rank,
                                      std::size_t      max_count,
                                      std::size_t      max_length) {
    std::uniform_int_distribution<std::size_t> count(1, max_count);
    std::vector<Word>                          gens;
    for (auto n = count(rng); gens.size() < n;) {
      auto g = random_word(rng, rank, max_length);
      if (!g.empty()) {
        gens.push_back(g);
      }
    }
    return gens;
  }

  std::string series(std::vector<std::size_t> const& xs) {
    std::string out;
    for (auto x : xs) {
      out += (out.empty() ? "" : ",") + std::to_string(x);
    }
    return out;
  }

  RawHnnWord concat(std::initializer_list<RawHnnWord> parts) {
    RawHnnWord out;
    for (auto const& p : parts) {
      out.insert(out.end(), p.begin(), p.end());
    }
    return out;
  }

  RawHnnWord inverse_raw(RawHnnWord const& x) {
    RawHnnWord out;
    for (auto it = x.rbegin(); it != x.rend(); ++it) {
      out.push_back(it->inverse());
    }
    return out;
  }

  Outcome howson_oracle() {
    Outcome         o;
    std::mt19937_64 rng(1001);
    auto const      tests = all_words(2, 6);
    std::size_t     checked = 0;
    for (int i = 0; i < 20; ++i) {
      auto g1 = from_generators(2, random_generators(rng, 2, 3, 4));
      auto g2 = from_generators(2, random_generators(rng, 2, 3, 4));
      auto p  = pullback(g1, g2);
      for (auto const& u : tests) {
        ++checked;
        o.require(membership(p, u) == (membership(g1, u) && membership(g2, u)),
                  "pair " + std::to_string(i) + " disagrees on " + u.to_string());
      }
    }
    o.detail = o.ok ? std::to_string(checked) + " memberships over 20 pairs" : o.detail;
    return o;
  }

  Outcome nielsen_schreier() {
    Outcome         o;
    std::mt19937_64 rng(1002);
    for (int i = 0; i < 20; ++i) {
      std::size_t r = 2 + std::size_t(i % 2);
      auto        c = hall_completion(from_generators(r, random_generators(rng, r, 3, 5)));
      // Completeness and degree checked directly on the edges.
      std::vector<std::size_t> out_deg(c.vertex_count()), in_deg(c.vertex_count());
      for (auto const& e : c.edges()) {
        ++out_deg[e.src];
        ++in_deg[e.dst];
      }
      bool complete = true;
      for (std::size_t v = 0; v < c.vertex_count(); ++v) {
        complete = complete && out_deg[v] == r && in_deg[v] == r;
      }
      auto d = c.vertex_count();
      o.require(complete && index(c) == d, "completion " + std::to_string(i) + " not a cover");
      o.require(basis(c).size() == 1 + d * (r - 1),
                "completion " + std::to_string(i) + " has rank "
                    + std::to_string(basis(c).size()) + ", expected "
                    + std::to_string(1 + d * (r - 1)));
    }
    o.detail = o.ok ? "20 completions in ranks 2 and 3" : o.detail;
    return o;
  }

  Outcome complements() {
    Outcome         o;
    std::mt19937_64 rng(1003);
    std::size_t     words = 0;
    for (int found = 0; found < 20;) {
      auto gens = random_generators(rng, 2, 3, 5);
      auto h    = from_generators(2, gens);
      if (index(h)) {
        continue;
      }
      ++found;
      auto fs = free_factor_complement(h);
      o.require(!fs.empty(), "no complement for subgroup " + std::to_string(found));
      for (auto const& f : fs) {
        ++words;
        auto extended = gens;
        extended.push_back(f);
        o.require(!membership(h, f), f.to_string() + " lies in H");
        o.require(rank(from_generators(2, extended)) == rank(h) + 1,
                  "adding " + f.to_string() + " does not raise the rank by one");
      }
    }
    o.detail = o.ok ? std::to_string(words) + " complement words for 20 subgroups" : o.detail;
    return o;
  }

  Outcome proper_hnn_pattern() {
    Outcome o;
    for (auto const* text : {"a -> ab\nb -> ba\n", "a -> aa\nb -> b\n"}) {
      auto phi    = Endomorphism::parse(text);
      auto f      = proper_hnn_witness(phi);
      auto report = orbit_subgroup_ranks(phi, f, OneSidedImages{}, 8);
      std::vector<std::size_t> expected;
      for (std::size_t n = 0; n <= 8; ++n) {
        expected.push_back(n + 1);
      }
      o.require(report.ranks() == expected,
                "witness " + f.to_string() + " gives " + series(report.ranks()));
      o.detail += (o.detail.empty() ? "" : "; ") + f.to_string() + ": " + series(report.ranks());
    }
    return o;
  }

  Outcome fxz_pattern() {
    Outcome                  o;
    auto                     report = fxz_witness(Word::parse("a", 2), Word::parse("b", 2), 10);
    std::vector<std::size_t> expected;
    for (std::size_t n = 0; n <= 10; ++n) {
      expected.push_back(2 * n + 1);
    }
    o.require(report.ranks() == expected, "series " + series(report.ranks()));
    bool rejected = false;
    try {
      (void) fxz_witness(Word::parse("ab", 2), Word::parse("abab", 2), 3);
    } catch (Error const& e) {
      rejected = e.code() == Errc::cyclic_pair;
    }
    o.require(rejected, "cyclic pair (ab, abab) accepted");
    if (o.ok) {
      o.detail = "series " + series(report.ranks()) + "; cyclic pair rejected";
    }
    return o;
  }

  Outcome normal_closure() {
    Outcome o;
    for (auto const* text : {"a", "abAB"}) {
      auto report = normal_closure_ranks(2, Word::parse(text, 2), 6);
      auto ranks  = report.ranks();
      for (std::size_t n = 2; n <= 6; ++n) {
        o.require(ranks[n] > ranks[n - 1], std::string(text) + " not increasing at n = "
                                               + std::to_string(n));
      }
      o.detail += (o.detail.empty() ? "" : "; ") + std::string(text) + ": " + series(ranks);
    }
    return o;
  }

  Outcome growth() {
    Outcome o;
    struct Case {
      char const* map;
      Growth      expected;
    };
    for (auto const& [map, expected] : {Case{"a -> a\nb -> b\n", Growth::polynomial(0)},
                                        Case{"a -> a\nb -> ba\n", Growth::polynomial(1)},
                                        Case{"a -> ab\nb -> ba\n", Growth::exponential()}}) {
      auto phi = Endomorphism::parse(map);
      auto g   = growth_class(phi);
      o.require(g == expected, std::string(map) + " classified " + g.to_string());
      o.require(howson::test::growth_consistent(phi, g),
                g.to_string() + " disagrees with measured lengths");
      o.require(howson::test::matrix_power_growth(transition_matrix(phi)) == g,
                g.to_string() + " disagrees with the matrix power oracle");
    }
    o.detail = o.ok ? "Polynomial(0), Polynomial(1), Exponential" : o.detail;
    return o;
  }

  Outcome normal_forms() {
    Outcome         o;
    AscendingHnn    g(Endomorphism::parse("a -> ab\nb -> ba\n"));
    std::mt19937_64 rng(1008);
    std::uniform_int_distribution<std::size_t>   len(0, 12);
    std::uniform_int_distribution<std::uint32_t> pick(0, 2);
    std::bernoulli_distribution                  sign;
    auto random_raw = [&] {
      RawHnnWord raw;
      for (auto n = len(rng); n > 0; --n) {
        auto x = pick(rng);
        int  s = sign(rng) ? 1 : -1;
        raw.push_back(x == 2 ? HnnToken::t(s) : HnnToken::base(Letter{x, std::int8_t(s)}));
      }
      return raw;
    };
    std::size_t failures = 0;
    for (int i = 0; i < 1000; ++i) {
      auto u  = random_raw();
      auto v  = random_raw();
      auto nu = g.normal_form(u);
      auto nv = g.normal_form(v);
      auto uv = g.normal_form(concat({u, v}));
      if (!(uv == g.mul(nu, nv)) || rho(uv) != rho(nu) + rho(nv)) {
        ++failures;
      }
    }
    o.require(failures == 0, std::to_string(failures) + " failures");
    o.detail = o.ok ? "1000 pairs, 0 failures" : o.detail;
    return o;
  }

  Outcome polynomial_case() {
    Outcome o;
    auto    file = GraphMapFile::parse(R"(vertex p
vertex q
edge c1 p p
edge c2 q q
edge e p q
vmap p p
vmap q q
emap c1 c1
emap c2 c2
emap e e c2
stratum c1
stratum c2
stratum e
)");
    auto    d    = verify_filtration(file.map, file.filtration);
    o.require(d.ok, "filtration rejected");
    auto n = smallest_negative_chi(file.map.graph, file.filtration);
    o.require(n && n->r == 3, "wrong negative stratum");
    auto w = polynomial_witness(file.map, file.filtration);
    o.require(w.kind == WitnessCase::disconnected, "case " + std::string(to_string(w.kind)));
    // Independent relation checks through normal forms.
    AscendingHnn g(w.phi);
    auto         a = w.a_raw(), b = w.b_raw(), z = w.z_raw();
    auto commutator = [&](RawHnnWord const& x, RawHnnWord const& y) {
      return g.normal_form(concat({x, y, inverse_raw(x), inverse_raw(y)}));
    };
    o.require(commutator(a, z).is_identity(), "[a,z] != 1");
    o.require(commutator(b, z).is_identity(), "[b,z] != 1");
    o.require(!commutator(a, b).is_identity(), "[a,b] = 1");
    o.require(is_free_basis(w.phi.rank(), {w.a, w.b}), "<a,b> not free of rank 2");
    o.require(w.passed(), "witness self-check failed");
    if (o.ok) {
      o.detail = "r = 3, Disconnected, a = " + g.format(a) + ", b = " + g.format(b)
                 + ", z = " + g.format(z);
    }
    return o;
  }

  Outcome fold_confluence() {
    Outcome         o;
    std::mt19937_64 rng(1010);
    for (int i = 0; i < 50; ++i) {
      auto gens      = random_generators(rng, 3, 5, 7);
      auto reference = from_generators(3, gens).to_text();
      for (std::uint64_t k = 0; k < 5; ++k) {
        auto g = from_generators(3, gens, FoldOrder{rng()});
        o.require(g.is_folded() && g.to_text() == reference,
                  "set " + std::to_string(i) + " differs under order " + std::to_string(k));
      }
    }
    o.detail = o.ok ? "50 sets x 5 orders" : o.detail;
    return o;
  }
}  // namespace

int main() {
  struct Criterion {
    char const*            name;
    double                 limit;
    std::function<Outcome()> check;
  };
  std::vector<Criterion> const criteria{
      {"howson-oracle-equivalence", 5.0, howson_oracle},
      {"nielsen-schreier-rank", default_limit, nielsen_schreier},
      {"free-factor-complement", default_limit, complements},
      {"proper-hnn-rank-pattern", 10.0, proper_hnn_pattern},
      {"fxz-rank-pattern", 2.0, fxz_pattern},
      {"normal-closure-growth", default_limit, normal_closure},
      {"growth-classifier", default_limit, growth},
      {"hnn-normal-form-soundness", 10.0, normal_forms},
      {"filtration-polynomial-witness", default_limit, polynomial_case},
      {"fold-confluence", default_limit, fold_confluence},
  };
  int failed = 0;
  int number = 0;
  for (auto const& c : criteria) {
    ++number;
    Outcome o;
    auto    start = std::chrono::steady_clock::now();
    try {
      o = c.check();
    } catch (std::exception const& e) {
      o.ok     = false;
      o.detail = std::string("exception: ") + e.what();
    }
    double seconds
        = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (o.ok && seconds > c.limit) {
      o.ok     = false;
      o.detail = "took longer than " + std::to_string(c.limit) + " s; " + o.detail;
    }
    failed += o.ok ? 0 : 1;
    std::printf("%s %2d %-30s %7.3fs (limit %.0fs)  %s\n", o.ok ? "PASS" : "FAIL", number,
                c.name, seconds, c.limit, o.detail.c_str());
  }
  std::printf("%d/%zu criteria passed\n", int(criteria.size()) - failed, criteria.size());
  return failed == 0 ? 0 : 1;
}
