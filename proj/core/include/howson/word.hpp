#ifndef HOWSON_WORD_HPP_
#define HOWSON_WORD_HPP_

#include <compare>
#include <cstddef>
#include <cstdint>
#include <ostream>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "howson/error.hpp"

namespace howson {

  //! A basis letter of a free group or its inverse.
  struct Letter {
    std::uint32_t generator = 0;
    std::int8_t   sign      = 1;  // +1 or -1

    [[nodiscard]] constexpr Letter inverse() const noexcept {
      return Letter{generator, static_cast<std::int8_t>(-sign)};
    }

    [[nodiscard]] constexpr bool cancels(Letter other) const noexcept {
      return generator == other.generator && sign == -other.sign;
    }

    friend constexpr bool operator==(Letter, Letter) = default;
    friend constexpr auto operator<=>(Letter, Letter) = default;
  };

  //! A freely reduced word in the free group of a fixed rank.
  //!
  //! Every constructor reduces, so an unreduced Word cannot exist. Words of
  //! different ranks never interoperate: binary operations throw
  //! Errc::rank_mismatch.
  //!
  //! Text format: for rank <= 26 the letters a..z are generators 0..25 and
  //! the matching uppercase letter is the inverse, whitespace ignored. For
  //! larger ranks the whitespace separated tokens x0, X0, x1, X1, ... are
  //! used instead.
  class Word {
   public:
    using const_iterator = std::vector<Letter>::const_iterator;

    explicit Word(std::size_t rank = 0) : _rank(rank) {}

    //! Free reduction of an arbitrary letter sequence.
    static Word reduce(std::span<Letter const> raw, std::size_t rank);

    static Word letter(std::size_t rank, std::uint32_t generator, int sign = 1);

    static Word parse(std::string_view text, std::size_t rank);

    [[nodiscard]] std::size_t rank() const noexcept {
      return _rank;
    }
    [[nodiscard]] std::size_t size() const noexcept {
      return _letters.size();
    }
    [[nodiscard]] bool empty() const noexcept {
      return _letters.empty();
    }
    [[nodiscard]] std::span<Letter const> letters() const noexcept {
      return _letters;
    }
    [[nodiscard]] Letter operator[](std::size_t i) const noexcept {
      return _letters[i];
    }
    [[nodiscard]] const_iterator begin() const noexcept {
      return _letters.begin();
    }
    [[nodiscard]] const_iterator end() const noexcept {
      return _letters.end();
    }

    //! Appends one letter, cancelling against the last letter if needed.
    void push_back(Letter x);

    //! Right multiplication in place.
    Word& operator*=(Word const& rhs);

    [[nodiscard]] std::string to_string() const;

    friend bool operator==(Word const&, Word const&) = default;
    friend auto operator<=>(Word const&, Word const&) = default;

   private:
    std::size_t         _rank;
    std::vector<Letter> _letters;
  };

  [[nodiscard]] Word mul(Word const& u, Word const& v);
  [[nodiscard]] Word inv(Word const& u);
  [[nodiscard]] Word commutator(Word const& u, Word const& v);
  [[nodiscard]] Word power(Word const& u, long exponent);

  inline Word operator*(Word const& u, Word const& v) {
    return mul(u, v);
  }

  struct CyclicDecomposition {
    Word core;
    Word conjugator;
  };

  //! Returns (core, conjugator) with u = conjugator * core * conjugator^-1
  //! and core cyclically reduced.
  [[nodiscard]] CyclicDecomposition cyclically_reduce(Word const& u);

  //! True if the cyclically reduced cores of u and v are cyclic rotations
  //! of each other, that is, u and v are conjugate in the free group.
  [[nodiscard]] bool are_conjugate(Word const& u, Word const& v);

  [[nodiscard]] std::string format_letter(Letter x, std::size_t rank);

  //! Parses one token of the text format; used by formats that embed words.
  [[nodiscard]] Letter parse_letter(std::string_view token, std::size_t rank);

  std::ostream& operator<<(std::ostream& os, Word const& w);

  void check_same_rank(Word const& u, Word const& v);

  //! Every reduced word of length <= max_length in the given rank, in
  //! shortlex order.
  [[nodiscard]] std::vector<Word> all_words(std::size_t rank,
                                            std::size_t max_length);

  //! Reduction into an existing letter buffer, used by hot loops that do not
  //! need a rank-checked Word.
  namespace detail {
    inline void append_reduced(std::vector<Letter>& acc, Letter x) {
      if (!acc.empty() && acc.back().cancels(x)) {
        acc.pop_back();
      } else {
        acc.push_back(x);
      }
    }
    void append_reduced(std::vector<Letter>&     acc,
                        std::span<Letter const> w,
                        bool                    inverted = false);
  }  // namespace detail

}  // namespace howson

#endif  // HOWSON_WORD_HPP_
