#include "cli.hpp"

#include <CLI11.hpp>
#include <fstream>
#include <functional>
#include <sstream>

#include "howson/endo.hpp"
#include "howson/graphmap.hpp"
#include "howson/hnn.hpp"
#include "howson/stallings.hpp"
#include "howson/witness.hpp"

namespace howson::cli {

  namespace {
    std::string read_file(std::string const& path) {
      std::ifstream in(path);
      if (!in) {
        throw Error(Errc::parse_error, "cannot read '" + path + "'");
      }
      std::stringstream buffer;
      buffer << in.rdbuf();
      return buffer.str();
    }

    void write_file(std::string const& path, std::string const& text) {
      std::ofstream out(path);
      if (!out || !(out << text)) {
        throw Error(Errc::precondition, "cannot write '" + path + "'");
      }
    }

    std::vector<Word> parse_list(std::string const& text, std::size_t rank) {
      std::vector<Word> out;
      std::size_t       start = 0;
      while (start <= text.size()) {
        auto end = text.find(',', start);
        if (end == std::string::npos) {
          end = text.size();
        }
        auto item = text.substr(start, end - start);
        if (item.find_first_not_of(" \t") != std::string::npos) {
          out.push_back(Word::parse(item, rank));
        }
        start = end + 1;
      }
      return out;
    }

    std::string join(std::vector<Word> const& words) {
      std::string out;
      for (auto const& w : words) {
        out += (out.empty() ? "" : ",") + (w.empty() ? std::string("1") : w.to_string());
      }
      return out;
    }

    std::string join(std::vector<std::size_t> const& values) {
      std::string out;
      for (auto v : values) {
        out += (out.empty() ? "" : ",") + std::to_string(v);
      }
      return out;
    }

    std::string yes(bool b) {
      return b ? "true" : "false";
    }

    std::string format(GeneratorExpression const& e) {
      if (e.factors.empty()) {
        return "1";
      }
      std::string out;
      for (auto const& f : e.factors) {
        out += (out.empty() ? "g" : " g") + std::to_string(f.index)
               + (f.sign < 0 ? "^-1" : "");
      }
      return out;
    }

    struct ReportSinks {
      std::string json;
      std::string csv;

      void add(CLI::App* app) {
        app->add_option("--out", json, "Write the JSON report to this file");
        app->add_option("--csv", csv, "Write n,rank,maxlen rows to this file");
      }

      void emit(ExperimentReport const& report, std::ostream& out) const {
        if (json.empty() && csv.empty()) {
          out << report.to_json();
          return;
        }
        if (!json.empty()) {
          write_file(json, report.to_json());
        }
        if (!csv.empty()) {
          write_file(csv, report.to_csv());
        }
        out << "ranks=" << join(report.ranks()) << '\n';
        out << "monotone=" << yes(report.monotone()) << '\n';
        out << "free_basis_pattern=" << yes(report.free_basis_pattern()) << '\n';
      }
    };

    std::string path_text(Graph const& g, EdgePath const& p) {
      std::string out;
      for (auto e : p) {
        out += (out.empty() ? "" : " ") + std::string(e.reversed ? "-" : "")
               + g.edge(e.edge).name;
      }
      return out;
    }

    std::string raw_text(RawHnnWord const& raw, std::size_t rank) {
      std::string out;
      for (auto const& x : raw) {
        if (rank > 26 && !out.empty()) {
          out += ' ';
        }
        out += x.stable ? (x.letter.sign > 0 ? "t" : "T") : format_letter(x.letter, rank);
      }
      return out.empty() ? "1" : out;
    }
  }  // namespace

  int run(int argc, char const* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"Free group tools: Stallings graphs, endomorphisms, ascending HNN "
                 "extensions and rank growth experiments",
                 "howson"};
    app.require_subcommand(1);
    app.set_help_all_flag("--help-all", "Show help for every subcommand");

    std::function<int()> action;
    std::size_t          cap = default_length_cap;

    // analyze-endo
    std::string map_path;
    auto*       analyze = app.add_subcommand("analyze-endo", "Injectivity, surjectivity and growth of a map");
    analyze->add_option("--map", map_path, "Endomorphism file")->required()->check(CLI::ExistingFile);
    analyze->add_option("--cap", cap, "Word length cap");
    analyze->callback([&] {
      action = [&] {
        auto phi  = Endomorphism::parse(read_file(map_path));
        auto surj = is_surjective(phi);
        out << "rank=" << phi.rank() << '\n';
        out << "injective=" << yes(is_injective(phi)) << '\n';
        out << "surjective=" << yes(surj) << '\n';
        out << "growth=" << growth_class(phi).to_string() << '\n';
        out << "# growth is that of the given rose map, not of its outer class\n";
        return 0;
      };
    });

    // witness
    auto*       witness = app.add_subcommand("witness", "Rank growth witnesses");
    witness->require_subcommand(1);
    ReportSinks sinks;
    std::optional<std::size_t> levels;
    std::size_t rank = 2;
    std::string f0_text, f1_text;

    auto* proper = witness->add_subcommand("proper-hnn", "Orbit of a free factor complement of phi(F)");
    proper->add_option("--map", map_path, "Endomorphism file")->required()->check(CLI::ExistingFile);
    proper->add_option("--levels", levels, "Highest level (default 8 for exponential maps, else 12)");
    proper->add_option("--cap", cap, "Word length cap");
    sinks.add(proper);
    proper->callback([&] {
      action = [&] {
        auto phi    = Endomorphism::parse(read_file(map_path));
        auto f      = proper_hnn_witness(phi);
        auto report = orbit_subgroup_ranks(phi, f, OneSidedImages{},
                                           levels.value_or(default_levels(phi)), cap);
        report.experiment = "proper-hnn";
        report.config.emplace_back("witness", f.to_string());
        sinks.emit(report, out);
        return 0;
      };
    });

    auto* fxz = witness->add_subcommand("fxz", "Twisted conjugates of f0 by f1 in F x Z");
    fxz->add_option("--rank", rank, "Rank of the free group")->check(CLI::Range(1, 1000));
    fxz->add_option("--f0", f0_text, "First word")->required();
    fxz->add_option("--f1", f1_text, "Second word")->required();
    fxz->add_option("--levels", levels, "Highest level (default 12)");
    sinks.add(fxz);
    fxz->callback([&] {
      action = [&] {
        auto report = fxz_witness(Word::parse(f0_text, rank), Word::parse(f1_text, rank),
                                  levels.value_or(12));
        sinks.emit(report, out);
        return 0;
      };
    });

    auto* fbc = witness->add_subcommand("free-by-cyclic", "Twisted conjugates w -> f1 phi(w) f1^-1");
    fbc->add_option("--map", map_path, "Endomorphism file")->required()->check(CLI::ExistingFile);
    fbc->add_option("--f", f0_text, "Seed word")->required();
    fbc->add_option("--f1", f1_text, "Twisting word")->required();
    fbc->add_option("--levels", levels, "Highest level (default 8 for exponential maps, else 12)");
    fbc->add_option("--cap", cap, "Word length cap");
    sinks.add(fbc);
    fbc->callback([&] {
      action = [&] {
        auto phi    = Endomorphism::parse(read_file(map_path));
        auto report = orbit_subgroup_ranks(
            phi, Word::parse(f0_text, phi.rank()),
            TwistedConjugates{Word::parse(f1_text, phi.rank())},
            levels.value_or(default_levels(phi)), cap);
        report.experiment = "free-by-cyclic";
        sinks.emit(report, out);
        return 0;
      };
    });

    // experiment
    auto* experiment = app.add_subcommand("experiment", "Other rank growth experiments");
    experiment->require_subcommand(1);
    std::string word_text;
    auto* closure = experiment->add_subcommand("normal-closure", "Truncated normal closure of a word");
    closure->add_option("--rank", rank, "Rank of the free group")->check(CLI::Range(1, 1000));
    closure->add_option("--word", word_text, "Word")->required();
    closure->add_option("--levels", levels, "Highest level (default 6)");
    sinks.add(closure);
    closure->callback([&] {
      action = [&] {
        sinks.emit(normal_closure_ranks(rank, Word::parse(word_text, rank), levels.value_or(6)),
                   out);
        return 0;
      };
    });

    // stallings
    auto* stallings = app.add_subcommand("stallings", "Subgroups given by generators");
    stallings->require_subcommand(1);
    std::string gens_text, g1_text, g2_text;
    bool        show_graph = false;
    auto        subgroup   = [&](CLI::App* sub, bool with_gens = true) {
      sub->add_option("--rank", rank, "Rank of the free group")->check(CLI::Range(1, 1000));
      if (with_gens) {
        sub->add_option("--gens", gens_text, "Comma separated generators")->required();
      }
      sub->add_flag("--graph", show_graph, "Also print the subgroup graph");
    };
    auto graph_of = [&](std::string const& text) {
      return from_generators(rank, parse_list(text, rank));
    };
    auto print_graph = [&](StallingsGraph const& g) {
      if (show_graph) {
        out << g.to_text();
      }
    };

    auto* member = stallings->add_subcommand("member", "Membership with an expression in the generators");
    subgroup(member);
    member->add_option("--word", word_text, "Word")->required();
    member->callback([&] {
      action = [&] {
        ProvenanceGraph pg(rank, parse_list(gens_text, rank));
        auto            expr = pg.express(Word::parse(word_text, rank));
        out << "member=" << yes(expr.has_value()) << '\n';
        if (expr) {
          out << "expression=" << format(*expr) << '\n';
        }
        print_graph(pg.graph());
        return 0;
      };
    });

    auto* intersect = stallings->add_subcommand("intersect", "Intersection of two subgroups");
    subgroup(intersect, false);
    intersect->add_option("--g1", g1_text, "Generators of the first subgroup")->required();
    intersect->add_option("--g2", g2_text, "Generators of the second subgroup")->required();
    intersect->callback([&] {
      action = [&] {
        auto p = pullback(graph_of(g1_text), graph_of(g2_text));
        out << "rank=" << howson::rank(p) << '\n';
        out << "basis=" << join(basis(p)) << '\n';
        print_graph(p);
        return 0;
      };
    });

    auto* idx = stallings->add_subcommand("index", "Index in the free group");
    subgroup(idx);
    idx->callback([&] {
      action = [&] {
        auto i = index(graph_of(gens_text));
        out << "index=" << (i ? std::to_string(*i) : std::string("infinite")) << '\n';
        return 0;
      };
    });

    auto* hall = stallings->add_subcommand("hall", "Finite index subgroup containing it as a free factor");
    subgroup(hall);
    hall->callback([&] {
      action = [&] {
        auto c = hall_completion(graph_of(gens_text));
        out << "index=" << *index(c) << '\n';
        out << "rank=" << howson::rank(c) << '\n';
        out << "basis=" << join(basis(c)) << '\n';
        print_graph(c);
        return 0;
      };
    });

    auto* complement = stallings->add_subcommand("complement", "Free factor complement in the Hall completion");
    subgroup(complement);
    complement->callback([&] {
      action = [&] {
        out << "complement=" << join(free_factor_complement(graph_of(gens_text))) << '\n';
        return 0;
      };
    });

    // graphmap
    auto* graphmap = app.add_subcommand("graphmap", "Graph self-maps with filtrations");
    graphmap->require_subcommand(1);
    std::string                gmap_path;
    std::optional<std::size_t> stratum;
    auto                       gmap_file = [&](CLI::App* sub, bool with_stratum) {
      sub->add_option("--file", gmap_path, "Graph-map file")->required()->check(CLI::ExistingFile);
      if (with_stratum) {
        sub->add_option("--stratum", stratum, "Restrict to V^r");
      }
    };
    auto load = [&] { return GraphMapFile::parse(read_file(gmap_path)); };
    auto report_diagnostics = [&](Diagnostics const& d) {
      for (auto const& m : d.messages) {
        out << "violation: " << m << '\n';
      }
      return d.ok ? 0 : 1;
    };

    auto* validate_cmd = graphmap->add_subcommand("validate", "Continuity of the map");
    gmap_file(validate_cmd, false);
    validate_cmd->callback([&] {
      action = [&] {
        auto d = validate(load().map);
        out << "valid=" << yes(d.ok) << '\n';
        return report_diagnostics(d);
      };
    });

    auto* filtration_cmd = graphmap->add_subcommand("filtration", "Check the filtration clauses");
    gmap_file(filtration_cmd, true);
    filtration_cmd->callback([&] {
      action = [&] {
        auto f = load();
        auto d = verify_filtration(f.map, f.filtration, stratum);
        out << "filtration=" << yes(d.ok) << '\n';
        if (d.ok) {
          auto n = smallest_negative_chi(f.map.graph, f.filtration);
          out << "negative_chi_stratum=" << (n ? std::to_string(n->r) : std::string("none"))
              << '\n';
        }
        return report_diagnostics(d);
      };
    });

    auto* chi = graphmap->add_subcommand("chi", "Euler characteristic, per component");
    gmap_file(chi, true);
    chi->callback([&] {
      action = [&] {
        auto f     = load();
        auto parts = stratum ? components(f.map.graph, f.filtration.level(*stratum))
                             : components(f.map.graph);
        long total = 0;
        for (auto const& c : parts) {
          total += c.euler_characteristic();
        }
        out << "chi=" << total << '\n';
        for (auto const& c : parts) {
          out << "component " << f.map.graph.vertex_name(c.vertices.front())
              << " vertices=" << c.vertices.size() << " edges=" << c.edges.size()
              << " chi=" << c.euler_characteristic() << '\n';
        }
        return 0;
      };
    });

    auto* torus = graphmap->add_subcommand("torus", "Presentation of the mapping torus");
    gmap_file(torus, true);
    torus->callback([&] {
      action = [&] {
        auto f = load();
        auto p = f.filtration.strata.empty() && !stratum
                     ? mapping_torus_presentation(f.map)
                     : mapping_torus_presentation(f.map, f.filtration, stratum);
        out << p.to_string() << '\n';
        out << "abelianization_rank=" << p.abelianization_rank() << '\n';
        return 0;
      };
    });

    auto* poly = graphmap->add_subcommand("poly-witness", "F2 x Z candidate at the first negative stratum");
    gmap_file(poly, false);
    poly->callback([&] {
      action = [&] {
        auto        f = load();
        auto        w = polynomial_witness(f.map, f.filtration);
        auto const& g = f.map.graph;
        out << "case=" << to_string(w.kind) << '\n';
        out << "r=" << w.r << '\n';
        out << "e_r=" << g.edge(w.edge).name << '\n';
        for (auto const& c : w.cycles) {
          out << "cycle=" << path_text(g, c) << '\n';
        }
        std::string names;
        for (std::size_t i = 0; i < w.generator_edges.size(); ++i) {
          names += (i ? "," : "") + format_letter(Letter{std::uint32_t(i), 1}, w.phi.rank())
                   + "=" + g.edge(w.generator_edges[i]).name;
        }
        out << "generators=" << names << '\n';
        auto map_text = w.phi.to_string();
        for (auto pos = map_text.find('\n'); pos != std::string::npos;
             pos      = map_text.find('\n', pos)) {
          map_text.replace(pos, 1, "; ");
        }
        out << "phi=" << map_text.substr(0, map_text.size() - 2) << '\n';
        out << "a=" << raw_text(w.a_raw(), w.phi.rank()) << '\n';
        out << "b=" << raw_text(w.b_raw(), w.phi.rank()) << '\n';
        out << "z=" << raw_text(w.z_raw(), w.phi.rank()) << '\n';
        out << "hnn_checked=" << yes(w.hnn_checked) << '\n';
        out << "[a,z]=1: " << yes(w.a_commutes) << '\n';
        out << "[b,z]=1: " << yes(w.b_commutes) << '\n';
        out << "[a,b]!=1: " << yes(w.ab_nontrivial) << '\n';
        out << "<a,b> free: " << yes(w.ab_free) << '\n';
        for (auto const& note : w.notes) {
          out << "# " << note << '\n';
        }
        return w.passed() ? 0 : 1;
      };
    });

    // hnn
    auto* hnn = app.add_subcommand("hnn", "Ascending HNN extensions");
    hnn->require_subcommand(1);
    auto* normalize = hnn->add_subcommand("normalize", "Normal form t^-a w t^b of a word");
    normalize->add_option("--map", map_path, "Endomorphism file")->required()->check(CLI::ExistingFile);
    normalize->add_option("--word", word_text, "Word in the base letters, t and T")->required();
    normalize->add_option("--cap", cap, "Word length cap");
    normalize->callback([&] {
      action = [&] {
        AscendingHnn G(Endomorphism::parse(read_file(map_path)), cap);
        auto         x = G.normal_form(word_text);
        out << "normal_form=" << (x.is_identity() ? std::string("1") : x.to_string()) << '\n';
        out << "a=" << x.a() << " w=" << (x.w().empty() ? "1" : x.w().to_string())
            << " b=" << x.b() << '\n';
        out << "rho=" << rho(x) << '\n';
        return 0;
      };
    });

    try {
      app.parse(argc, argv);
    } catch (CLI::ParseError const& e) {
      auto code = app.exit(e, out, err);
      return code == 0 ? 0 : 2;
    }
    try {
      return action ? action() : 2;
    } catch (Error const& e) {
      err << "error: " << e.what() << '\n';
      return 1;
    }
  }

}  // namespace howson::cli
