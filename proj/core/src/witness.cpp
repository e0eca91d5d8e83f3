#include "howson/witness.hpp"

#include <algorithm>
#include <nlohmann/json.hpp>
#include <optional>
#include <sstream>

#include "howson/stallings.hpp"

namespace howson {

  bool ExperimentReport::monotone() const {
    for (std::size_t i = 1; i < series.size(); ++i) {
      if (series[i].rank < series[i - 1].rank) {
        return false;
      }
    }
    return true;
  }

  bool ExperimentReport::strictly_increasing() const {
    for (std::size_t i = 1; i < series.size(); ++i) {
      if (series[i].rank <= series[i - 1].rank) {
        return false;
      }
    }
    return true;
  }

  bool ExperimentReport::free_basis_pattern() const {
    return std::all_of(series.begin(), series.end(),
                       [](SeriesPoint const& p) { return p.rank == p.generators; });
  }

  std::vector<std::size_t> ExperimentReport::ranks() const {
    std::vector<std::size_t> out;
    for (auto const& p : series) {
      out.push_back(p.rank);
    }
    return out;
  }

  std::string ExperimentReport::to_json() const {
    nlohmann::ordered_json j;
    j["experiment"] = experiment;
    j["config"]     = nlohmann::ordered_json::object();
    for (auto const& [key, value] : config) {
      j["config"][key] = value;
    }
    j["series"] = nlohmann::ordered_json::array();
    for (auto const& p : series) {
      j["series"].push_back({{"n", p.level},
                             {"rank", p.rank},
                             {"max_length", p.max_length},
                             {"generators", p.generators}});
    }
    j["monotone"]            = monotone();
    j["strictly_increasing"] = strictly_increasing();
    j["free_basis_pattern"]  = free_basis_pattern();
    j["notes"]               = notes;
    return j.dump(2) + "\n";
  }

  std::string ExperimentReport::to_csv() const {
    std::ostringstream out;
    out << "n,rank,maxlen\n";
    for (auto const& p : series) {
      out << p.level << ',' << p.rank << ',' << p.max_length << '\n';
    }
    return out.str();
  }

  std::string to_string(OrbitMode const& mode) {
    if (auto const* t = std::get_if<TwistedConjugates>(&mode)) {
      return "twisted-conjugates(" + t->f1.to_string() + ")";
    }
    return "one-sided-images";
  }

  Word proper_hnn_witness(Endomorphism const& phi) {
    if (phi.rank() < 2) {
      throw Error(Errc::rank_too_small, "proper HNN witnesses need rank at least 2");
    }
    auto image = image_graph(phi);
    if (rank(image) != phi.rank()) {
      throw Error(Errc::not_proper, "the map is not injective");
    }
    if (index(image) == 1u) {
      throw Error(Errc::not_proper, "the map is onto, so the extension is free-by-cyclic");
    }
    return free_factor_complement(image).front();
  }

  namespace {
    struct Orbit {
      std::vector<Word> forward;
      std::vector<Word> backward;  // indices -1, -2, ...
      bool              two_sided = false;
    };

    void check_nonempty(Word const& f) {
      if (f.empty()) {
        throw Error(Errc::precondition, "orbit of the trivial word");
      }
    }

    void check_orbit(Endomorphism const& phi, Word const& f, OrbitMode const& mode) {
      check_nonempty(f);
      if (f.rank() != phi.rank()) {
        throw Error(Errc::rank_mismatch, "seed word and map have different ranks");
      }
      if (auto const* t = std::get_if<TwistedConjugates>(&mode);
          t && t->f1.rank() != phi.rank()) {
        throw Error(Errc::rank_mismatch, "twisting word and map have different ranks");
      }
    }

    //! Extends the orbit to level n.
    void grow(Orbit&              o,
              Endomorphism const& phi,
              std::optional<Endomorphism> const& phi_inv,
              OrbitMode const&    mode,
              std::size_t         n,
              std::size_t         cap) {
      auto const* twisted = std::get_if<TwistedConjugates>(&mode);
      while (o.forward.size() <= n) {
        auto next = phi.apply(o.forward.back(), cap);
        if (twisted) {
          next = twisted->f1 * next * inv(twisted->f1);
        }
        if (next.size() > cap) {
          throw Error(Errc::resource_limit, "word length exceeded cap of " + std::to_string(cap));
        }
        o.forward.push_back(std::move(next));
      }
      if (!o.two_sided) {
        return;
      }
      while (o.backward.size() < n) {
        auto const& prev = o.backward.empty() ? o.forward.front() : o.backward.back();
        o.backward.push_back(
            phi_inv->apply(inv(twisted->f1) * prev * twisted->f1, cap));
      }
    }

    std::vector<Word> level(Orbit const& o, std::size_t n) {
      std::vector<Word> out;
      if (o.two_sided) {
        for (std::size_t i = n; i > 0; --i) {
          out.push_back(o.backward[i - 1]);
        }
      }
      out.insert(out.end(), o.forward.begin(), o.forward.begin() + long(n) + 1);
      return out;
    }

    SeriesPoint fold(std::size_t n, std::size_t r, std::vector<Word> const& gens) {
      std::size_t longest = 0;
      for (auto const& g : gens) {
        longest = std::max(longest, g.size());
      }
      return SeriesPoint{n, rank(from_generators(r, gens)), longest, gens.size()};
    }

    std::optional<Endomorphism> two_sided_inverse(Endomorphism const& phi,
                                                  OrbitMode const&    mode) {
      if (!std::holds_alternative<TwistedConjugates>(mode)) {
        return std::nullopt;
      }
      ImageAutomaton image(phi);
      if (!image.injective() || index(image.graph()) != 1u) {
        return std::nullopt;
      }
      return inverse(phi);
    }
  }  // namespace

  std::vector<Word> orbit_words(Endomorphism const& phi,
                                Word const&         f,
                                OrbitMode const&    mode,
                                std::size_t         n,
                                std::size_t         cap) {
    check_orbit(phi, f, mode);
    auto  phi_inv = two_sided_inverse(phi, mode);
    Orbit o{{f}, {}, phi_inv.has_value()};
    grow(o, phi, phi_inv, mode, n, cap);
    return level(o, n);
  }

  ExperimentReport orbit_subgroup_ranks(Endomorphism const& phi,
                                        Word const&         f,
                                        OrbitMode const&    mode,
                                        std::size_t         levels,
                                        std::size_t         cap) {
    check_orbit(phi, f, mode);
    ExperimentReport report;
    report.experiment = "orbit";
    auto map = phi.to_string();
    map.pop_back();
    for (auto pos = map.find('\n'); pos != std::string::npos; pos = map.find('\n', pos)) {
      map.replace(pos, 1, "; ");
    }
    report.config     = {{"map", map}, {"seed", f.to_string()},
                         {"mode", to_string(mode)}, {"levels", std::to_string(levels)}};
    auto  phi_inv = two_sided_inverse(phi, mode);
    Orbit o{{f}, {}, phi_inv.has_value()};
    if (std::holds_alternative<TwistedConjugates>(mode) && !phi_inv) {
      report.notes.push_back(
          "the map is not an automorphism, so only indices i >= 0 are used");
    }
    for (std::size_t n = 0; n <= levels; ++n) {
      try {
        grow(o, phi, phi_inv, mode, n, cap);
      } catch (Error const& e) {
        if (e.code() != Errc::resource_limit) {
          throw;
        }
        throw Error(Errc::resource_limit,
                    "level " + std::to_string(n) + " of " + std::to_string(levels)
                        + " not reached, last complete level "
                        + (n == 0 ? std::string("none") : std::to_string(n - 1)) + ": "
                        + e.what());
      }
      report.series.push_back(fold(n, phi.rank(), level(o, n)));
    }
    return report;
  }

  ExperimentReport fxz_witness(Word const& f0, Word const& f1, std::size_t levels) {
    check_same_rank(f0, f1);
    if (rank(from_generators(f0.rank(), {f0, f1})) < 2) {
      throw Error(Errc::cyclic_pair, "<" + f0.to_string() + ", " + f1.to_string()
                                         + "> is cyclic, so its elements commute");
    }
    auto report = orbit_subgroup_ranks(Endomorphism::identity(f0.rank()), f0,
                                       TwistedConjugates{f1}, levels);
    report.experiment = "fxz";
    report.config     = {{"f0", f0.to_string()}, {"f1", f1.to_string()},
                         {"rank", std::to_string(f0.rank())},
                         {"levels", std::to_string(levels)}};
    return report;
  }

  ExperimentReport normal_closure_ranks(std::size_t r, Word const& w, std::size_t levels) {
    if (r < 2) {
      throw Error(Errc::precondition, "normal closures are only of interest in rank 2 and up");
    }
    check_nonempty(w);
    if (w.rank() != r) {
      throw Error(Errc::rank_mismatch, "word and ambient rank differ");
    }
    ExperimentReport report;
    report.experiment = "normal-closure";
    report.config     = {{"rank", std::to_string(r)}, {"word", w.to_string()},
                         {"levels", std::to_string(levels)}};
    std::vector<Word> gens;
    std::size_t       done = 0;
    auto const        all  = all_words(r, levels);
    for (std::size_t n = 0; n <= levels; ++n) {
      while (done < all.size() && all[done].size() <= n) {
        gens.push_back(all[done] * w * inv(all[done]));
        ++done;
      }
      report.series.push_back(fold(n, r, gens));
    }
    return report;
  }

  bool check_free_basis_orbit(Endomorphism const& phi,
                              Word const&         w,
                              std::size_t         n,
                              std::size_t         cap) {
    return is_free_basis(phi.rank(), orbit_words(phi, w, OneSidedImages{}, n, cap));
  }

  std::size_t default_levels(Endomorphism const& phi) {
    try {
      return growth_class(phi).is_exponential() ? 8 : 12;
    } catch (Error const&) {
      return 12;
    }
  }

}  // namespace howson
