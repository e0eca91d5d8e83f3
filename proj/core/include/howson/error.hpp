#ifndef HOWSON_ERROR_HPP_
#define HOWSON_ERROR_HPP_

#include <stdexcept>
#include <string>
#include <string_view>

namespace howson {

  enum class Errc {
    invalid_letter,
    rank_mismatch,
    parse_error,
    not_a_member,
    finite_index,
    not_injective,
    not_an_automorphism,
    not_in_image,
    empty_image,
    resource_limit,
    not_proper,
    rank_too_small,
    cyclic_pair,
    precondition,
    context_mismatch,
    filtration_violation,
    no_negative_chi,
    exponential_stratum,
    structure_error,
  };

  std::string_view to_string(Errc code) noexcept;

  //! Every domain failure in the library is reported with this type; the
  //! code identifies the failure class, the message carries the details.
  class Error : public std::runtime_error {
   public:
    Error(Errc code, std::string const& what)
        : std::runtime_error(std::string(to_string(code)) + ": " + what),
          _code(code) {}

    [[nodiscard]] Errc code() const noexcept {
      return _code;
    }

   private:
    Errc _code;
  };

  // Default hard cap on the length of any word produced by iterating an
  // endomorphism or pushing stable letters in an HNN extension.
  inline constexpr std::size_t default_length_cap = 1'000'000;

}  // namespace howson

#endif  // HOWSON_ERROR_HPP_
