#ifndef HOWSON_ENDO_HPP_
#define HOWSON_ENDO_HPP_

#include <cstddef>
#include <memory>
#include <string>
#include <string_view>
#include <vector>

#include "howson/stallings.hpp"
#include "howson/word.hpp"

namespace howson {

  //! An endomorphism of a free group, given by the images of the basis.
  class Endomorphism {
   public:
    Endomorphism(std::size_t rank, std::vector<Word> images);

    static Endomorphism identity(std::size_t rank);

    //! Parses images from text such as "a -> ab, b -> ba" or the file
    //! format (one `a -> ab` line per generator, `#` comments).
    static Endomorphism parse(std::string_view text, std::size_t rank = 0);

    [[nodiscard]] std::size_t rank() const noexcept {
      return _images.size();
    }
    [[nodiscard]] std::vector<Word> const& images() const noexcept {
      return _images;
    }
    [[nodiscard]] Word const& image(std::size_t generator) const {
      return _images.at(generator);
    }

    //! Substitutes images letter by letter; throws Errc::resource_limit if
    //! the reduced result exceeds `cap` letters.
    [[nodiscard]] Word apply(Word const& w,
                             std::size_t cap = default_length_cap) const;

    Word operator()(Word const& w) const {
      return apply(w);
    }

    [[nodiscard]] std::string to_string() const;

    friend bool operator==(Endomorphism const&, Endomorphism const&) = default;

   private:
    std::vector<Word> _images;
  };

  [[nodiscard]] inline Word apply(Endomorphism const& phi, Word const& w) {
    return phi.apply(w);
  }

  //! compose(phi, psi) applies psi first.
  [[nodiscard]] Endomorphism compose(Endomorphism const& phi,
                                     Endomorphism const& psi,
                                     std::size_t cap = default_length_cap);
  [[nodiscard]] Endomorphism power(Endomorphism const& phi,
                                   std::size_t         n,
                                   std::size_t cap = default_length_cap);

  //! phi^n(w) computed by n successive applications.
  [[nodiscard]] Word iterate(Endomorphism const& phi,
                             Word const&         w,
                             std::size_t         n,
                             std::size_t         cap = default_length_cap);

  [[nodiscard]] StallingsGraph image_graph(Endomorphism const& phi);
  [[nodiscard]] bool           is_injective(Endomorphism const& phi);
  [[nodiscard]] bool           is_surjective(Endomorphism const& phi);

  //! Throws Errc::not_an_automorphism unless phi is bijective.
  [[nodiscard]] Endomorphism inverse(Endomorphism const& phi);

  //! The image subgroup phi(F) with constructive membership, so that
  //! preimages under an injective phi can be computed repeatedly.
  class ImageAutomaton {
   public:
    explicit ImageAutomaton(Endomorphism const& phi);

    [[nodiscard]] bool contains(Word const& w) const {
      return _graph.contains(w);
    }
    [[nodiscard]] bool injective() const noexcept {
      return _injective;
    }
    [[nodiscard]] StallingsGraph const& graph() const noexcept {
      return _graph.graph();
    }

    //! The unique u with phi(u) = w. Throws Errc::not_injective or
    //! Errc::not_in_image.
    [[nodiscard]] Word preimage(Word const& w) const;

   private:
    ProvenanceGraph _graph;
    bool            _injective;
  };

  [[nodiscard]] Word preimage(Endomorphism const& phi, Word const& w);

  //! Sign-blind letter counts: entry (i, j) is the number of occurrences of
  //! generator j or its inverse in the image of generator i.
  using TransitionMatrix = std::vector<std::vector<std::size_t>>;

  [[nodiscard]] TransitionMatrix transition_matrix(Endomorphism const& phi);

  struct Growth {
    enum class Kind { polynomial, exponential };
    Kind        kind   = Kind::polynomial;
    std::size_t degree = 0;  // meaningful for polynomial growth only

    static Growth polynomial(std::size_t d) {
      return {Kind::polynomial, d};
    }
    static Growth exponential() {
      return {Kind::exponential, 0};
    }
    [[nodiscard]] bool is_exponential() const noexcept {
      return kind == Kind::exponential;
    }
    [[nodiscard]] std::string to_string() const;

    friend bool operator==(Growth const&, Growth const&) = default;
  };

  //! Growth of the powers of a nonnegative matrix, read off its strongly
  //! connected components: exponential iff some component has a vertex
  //! whose weight inside the component exceeds one, otherwise polynomial of
  //! degree (cyclic components on the longest chain) - 1.
  [[nodiscard]] Growth classify_growth(TransitionMatrix const& m);

  //! Growth class of the rose map of phi. Throws Errc::empty_image.
  [[nodiscard]] Growth growth_class(Endomorphism const& phi);

}  // namespace howson

#endif  // HOWSON_ENDO_HPP_
