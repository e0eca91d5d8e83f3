#ifndef HOWSON_HNN_HPP_
#define HOWSON_HNN_HPP_

#include <cstddef>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "howson/endo.hpp"
#include "howson/word.hpp"

namespace howson {

  //! One letter of a raw word in an HNN extension: a base letter, or the
  //! stable letter t (sign +1) or its inverse T (sign -1).
  struct HnnToken {
    bool   stable = false;
    Letter letter;  // for the stable letter only `sign` is meaningful

    static HnnToken base(Letter x) {
      return {false, x};
    }
    static HnnToken t(int sign = 1) {
      return {true, Letter{0, static_cast<std::int8_t>(sign)}};
    }
    [[nodiscard]] HnnToken inverse() const {
      return {stable, letter.inverse()};
    }
    friend bool operator==(HnnToken, HnnToken) = default;
  };

  using RawHnnWord = std::vector<HnnToken>;

  class AscendingHnn;

  //! The element t^-a w t^b of an ascending HNN extension, in reduced form:
  //! a = 0, b = 0, or w is not in the image of phi.
  class HnnElement {
   public:
    [[nodiscard]] std::size_t a() const noexcept {
      return _a;
    }
    [[nodiscard]] Word const& w() const noexcept {
      return _w;
    }
    [[nodiscard]] std::size_t b() const noexcept {
      return _b;
    }

    [[nodiscard]] bool is_identity() const noexcept {
      return _a == 0 && _b == 0 && _w.empty();
    }

    //! Raw text "T..T w t..t".
    [[nodiscard]] std::string to_string() const;
    [[nodiscard]] RawHnnWord  raw() const;

    //! Equal iff same context and identical reduced forms.
    friend bool operator==(HnnElement const& x, HnnElement const& y) {
      return x._context == y._context && x._a == y._a && x._b == y._b
             && x._w == y._w;
    }

   private:
    friend class AscendingHnn;
    HnnElement(void const* context, std::size_t a, Word w, std::size_t b)
        : _context(context), _a(a), _w(std::move(w)), _b(b) {}

    void const* _context;
    std::size_t _a;
    Word        _w;
    std::size_t _b;
  };

  //! The ascending HNN extension < F, t | t f t^-1 = phi(f) > of a free
  //! group F along an injective endomorphism phi.
  //!
  //! Copies share one immutable context; elements remember the context they
  //! were made in and mixing contexts throws Errc::context_mismatch.
  class AscendingHnn {
   public:
    //! Throws Errc::not_injective.
    explicit AscendingHnn(Endomorphism phi,
                          std::size_t  cap = default_length_cap);

    [[nodiscard]] Endomorphism const& phi() const noexcept;
    [[nodiscard]] std::size_t         rank() const noexcept {
      return phi().rank();
    }
    [[nodiscard]] bool is_free_by_cyclic() const noexcept;

    //! Parses base letters plus `t` and `T`. In letter format the generator
    //! alphabet must not reach the letter t, so rank <= 19; larger ranks use
    //! x-tokens.
    [[nodiscard]] RawHnnWord parse(std::string_view text) const;
    [[nodiscard]] std::string format(RawHnnWord const& raw) const;

    //! Reduced form of a raw word: stable letters are pushed outward with
    //! t f = phi(f) t and f T = T phi(f), then t^-1 u t with u = phi(v) is
    //! replaced by v while possible.
    [[nodiscard]] HnnElement normal_form(RawHnnWord const& raw) const;
    [[nodiscard]] HnnElement normal_form(std::string_view text) const {
      return normal_form(parse(text));
    }

    [[nodiscard]] HnnElement identity() const;
    [[nodiscard]] HnnElement t() const;
    [[nodiscard]] HnnElement element(Word const& w) const;
    //! Builds t^-a w t^b and reduces it.
    [[nodiscard]] HnnElement element(std::size_t a, Word const& w, std::size_t b) const;

    [[nodiscard]] HnnElement mul(HnnElement const& x, HnnElement const& y) const;
    [[nodiscard]] HnnElement inverse(HnnElement const& x) const;
    [[nodiscard]] HnnElement conj_by_t(HnnElement const& x) const;

    [[nodiscard]] static long rho(HnnElement const& x) noexcept {
      return static_cast<long>(x.b()) - static_cast<long>(x.a());
    }

    //! The base word when x lies in F.
    [[nodiscard]] static std::optional<Word> in_base(HnnElement const& x);

   private:
    struct Context;
    void        check(HnnElement const& x) const;
    HnnElement  reduce(std::size_t a, Word w, std::size_t b) const;
    Word        push(Word const& w, std::size_t times) const;

    std::shared_ptr<Context const> _context;
  };

  [[nodiscard]] inline long rho(HnnElement const& x) noexcept {
    return AscendingHnn::rho(x);
  }

  [[nodiscard]] inline std::optional<Word> in_base(HnnElement const& x) {
    return AscendingHnn::in_base(x);
  }

}  // namespace howson

#endif  // HOWSON_HNN_HPP_
