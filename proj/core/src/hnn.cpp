#include "howson/hnn.hpp"

#include <cctype>

namespace howson {

  struct AscendingHnn::Context {
    Endomorphism   phi;
    ImageAutomaton image;
    std::size_t    cap;
    bool           free_by_cyclic;
  };

  AscendingHnn::AscendingHnn(Endomorphism phi, std::size_t cap) {
    ImageAutomaton image(phi);
    if (!image.injective()) {
      throw Error(Errc::not_injective,
                  "ascending HNN extensions need an injective endomorphism");
    }
    auto i        = index(image.graph());
    bool onto     = i && *i == 1;
    _context      = std::make_shared<Context const>(
        Context{std::move(phi), std::move(image), cap, onto});
  }

  Endomorphism const& AscendingHnn::phi() const noexcept {
    return _context->phi;
  }

  bool AscendingHnn::is_free_by_cyclic() const noexcept {
    return _context->free_by_cyclic;
  }

  void AscendingHnn::check(HnnElement const& x) const {
    if (x._context != _context.get()) {
      throw Error(Errc::context_mismatch,
                  "element belongs to a different HNN extension");
    }
  }

  Word AscendingHnn::push(Word const& w, std::size_t times) const {
    return iterate(_context->phi, w, times, _context->cap);
  }

  HnnElement AscendingHnn::reduce(std::size_t a, Word w, std::size_t b) const {
    while (a > 0 && b > 0 && _context->image.contains(w)) {
      w = _context->image.preimage(w);
      --a;
      --b;
    }
    return HnnElement(_context.get(), a, std::move(w), b);
  }

  RawHnnWord AscendingHnn::parse(std::string_view text) const {
    auto const r = rank();
    if (r > 19 && r <= 26) {
      throw Error(Errc::precondition,
                  "letter alphabet of rank " + std::to_string(r)
                      + " collides with the stable letter t");
    }
    RawHnnWord raw;
    auto       add = [&](std::string_view token) {
      if (token == "t" || token == "T") {
        raw.push_back(HnnToken::t(token == "t" ? 1 : -1));
      } else {
        raw.push_back(HnnToken::base(parse_letter(token, r)));
      }
    };
    std::size_t i = 0;
    while (i < text.size()) {
      if (std::isspace(static_cast<unsigned char>(text[i]))) {
        ++i;
        continue;
      }
      std::size_t j = i + 1;
      if (r > 26) {
        while (j < text.size()
               && !std::isspace(static_cast<unsigned char>(text[j]))) {
          ++j;
        }
      }
      add(text.substr(i, j - i));
      i = j;
    }
    return raw;
  }

  std::string AscendingHnn::format(RawHnnWord const& raw) const {
    std::string out;
    for (auto const& token : raw) {
      if (rank() > 26 && !out.empty()) {
        out += ' ';
      }
      out += token.stable ? (token.letter.sign > 0 ? "t" : "T")
                          : format_letter(token.letter, rank());
    }
    return out;
  }

  HnnElement AscendingHnn::normal_form(RawHnnWord const& raw) const {
    auto const&         phi = _context->phi;
    std::size_t         a = 0, b = 0;
    std::vector<Letter> w;
    for (auto const& token : raw) {
      if (token.stable) {
        if (token.letter.sign > 0) {
          ++b;
        } else if (b > 0) {
          --b;
        } else {
          // w T = T phi(w)
          ++a;
          auto pushed = phi.apply(Word::reduce(w, rank()), _context->cap);
          w.assign(pushed.begin(), pushed.end());
        }
      } else {
        if (token.letter.generator >= rank()) {
          throw Error(Errc::invalid_letter, "base letter outside rank");
        }
        // t^b x = phi^b(x) t^b
        auto image = push(Word::reduce(std::span(&token.letter, 1), rank()), b);
        detail::append_reduced(w, image.letters());
        if (w.size() > _context->cap) {
          throw Error(Errc::resource_limit,
                      "word length exceeded cap of "
                          + std::to_string(_context->cap));
        }
      }
    }
    return reduce(a, Word::reduce(w, rank()), b);
  }

  HnnElement AscendingHnn::identity() const {
    return HnnElement(_context.get(), 0, Word(rank()), 0);
  }

  HnnElement AscendingHnn::t() const {
    return HnnElement(_context.get(), 0, Word(rank()), 1);
  }

  HnnElement AscendingHnn::element(Word const& w) const {
    return element(0, w, 0);
  }

  HnnElement AscendingHnn::element(std::size_t a,
                                   Word const& w,
                                   std::size_t b) const {
    if (w.rank() != rank()) {
      throw Error(Errc::rank_mismatch, "base word rank differs from the extension");
    }
    return reduce(a, w, b);
  }

  HnnElement AscendingHnn::mul(HnnElement const& x, HnnElement const& y) const {
    check(x);
    check(y);
    // t^-a1 w1 t^b1 t^-a2 w2 t^b2
    if (x.b() >= y.a()) {
      auto shift = x.b() - y.a();
      return reduce(x.a(), howson::mul(x.w(), push(y.w(), shift)), shift + y.b());
    }
    auto shift = y.a() - x.b();
    return reduce(x.a() + shift, howson::mul(push(x.w(), shift), y.w()), y.b());
  }

  HnnElement AscendingHnn::inverse(HnnElement const& x) const {
    check(x);
    return reduce(x.b(), inv(x.w()), x.a());
  }

  HnnElement AscendingHnn::conj_by_t(HnnElement const& x) const {
    check(x);
    auto t_inv = HnnElement(_context.get(), 1, Word(rank()), 0);
    return mul(t(), mul(x, t_inv));
  }

  std::optional<Word> AscendingHnn::in_base(HnnElement const& x) {
    if (x.a() == 0 && x.b() == 0) {
      return x.w();
    }
    return std::nullopt;
  }

  RawHnnWord HnnElement::raw() const {
    RawHnnWord out(_a, HnnToken::t(-1));
    for (Letter x : _w) {
      out.push_back(HnnToken::base(x));
    }
    out.insert(out.end(), _b, HnnToken::t(1));
    return out;
  }

  std::string HnnElement::to_string() const {
    std::string out;
    bool const  spaced = _w.rank() > 26;
    auto        add    = [&](std::string const& token) {
      if (spaced && !out.empty()) {
        out += ' ';
      }
      out += token;
    };
    for (std::size_t i = 0; i < _a; ++i) {
      add("T");
    }
    for (Letter x : _w) {
      add(format_letter(x, _w.rank()));
    }
    for (std::size_t i = 0; i < _b; ++i) {
      add("t");
    }
    return out;
  }

}  // namespace howson
