#ifndef HOWSON_WITNESS_HPP_
#define HOWSON_WITNESS_HPP_

#include <cstddef>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "howson/endo.hpp"
#include "howson/word.hpp"

namespace howson {

  struct SeriesPoint {
    std::size_t level;
    std::size_t rank;
    std::size_t max_length;
    std::size_t generators;  // generator words, counted with repetition

    friend bool operator==(SeriesPoint const&, SeriesPoint const&) = default;
  };

  //! Ranks of an increasing family of truncated subgroups, one point per
  //! truncation level starting at 0.
  struct ExperimentReport {
    std::string                                      experiment;
    std::vector<std::pair<std::string, std::string>> config;
    std::vector<SeriesPoint>                         series;
    std::vector<std::string>                         notes;

    //! Ranks never decrease from one level to the next.
    [[nodiscard]] bool monotone() const;
    [[nodiscard]] bool strictly_increasing() const;
    //! At every level the generators are a free basis of what they generate.
    [[nodiscard]] bool free_basis_pattern() const;
    [[nodiscard]] std::vector<std::size_t> ranks() const;

    [[nodiscard]] std::string to_json() const;
    //! Columns n,rank,maxlen.
    [[nodiscard]] std::string to_csv() const;
  };

  //! Generators phi^i(f) for 0 <= i <= n.
  struct OneSidedImages {};

  //! Generators w_i with w_0 = f and w_(i+1) = f1 phi(w_i) f1^-1, which is
  //! conjugation by f1 t pushed into the base group. When phi is an
  //! automorphism the orbit also runs backwards,
  //! w_-(i+1) = phi^-1(f1^-1 w_-i f1); otherwise only i >= 0 is used.
  struct TwistedConjugates {
    Word f1;
  };

  using OrbitMode = std::variant<OneSidedImages, TwistedConjugates>;

  [[nodiscard]] std::string to_string(OrbitMode const& mode);

  //! The element f of F outside phi(F) with <f, phi(F)> = <f> * phi(F): the
  //! first free factor complement of the image. Throws Errc::rank_too_small
  //! for rank < 2 and Errc::not_proper unless phi is injective and not onto.
  [[nodiscard]] Word proper_hnn_witness(Endomorphism const& phi);

  //! The orbit words of level n, ordered by index (negative indices first).
  [[nodiscard]] std::vector<Word> orbit_words(Endomorphism const& phi,
                                              Word const&         f,
                                              OrbitMode const&    mode,
                                              std::size_t         n,
                                              std::size_t         cap = default_length_cap);

  //! Folds the orbit words of each level 0 .. levels. Word blowup is
  //! reported as Errc::resource_limit naming the level reached.
  [[nodiscard]] ExperimentReport orbit_subgroup_ranks(Endomorphism const& phi,
                                                      Word const&         f,
                                                      OrbitMode const&    mode,
                                                      std::size_t         levels,
                                                      std::size_t cap = default_length_cap);

  //! Twisted conjugates of f0 by f1 under the identity map, i.e. the
  //! subgroup <(f0, 0), (f1, 1)> of F x Z intersected with F. Throws
  //! Errc::cyclic_pair if <f0, f1> has rank at most 1.
  [[nodiscard]] ExperimentReport fxz_witness(Word const& f0, Word const& f1, std::size_t levels);

  //! Level n folds u w u^-1 over all reduced u with |u| <= n. Throws
  //! Errc::precondition for rank < 2 or empty w.
  [[nodiscard]] ExperimentReport normal_closure_ranks(std::size_t rank,
                                                      Word const& w,
                                                      std::size_t levels);

  //! Whether phi^0(w) .. phi^n(w) form a free basis.
  [[nodiscard]] bool check_free_basis_orbit(Endomorphism const& phi,
                                            Word const&         w,
                                            std::size_t         n,
                                            std::size_t         cap = default_length_cap);

  //! 8 levels for exponentially growing maps, 12 otherwise.
  [[nodiscard]] std::size_t default_levels(Endomorphism const& phi);

}  // namespace howson

#endif  // HOWSON_WITNESS_HPP_
