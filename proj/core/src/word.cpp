#include "howson/word.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>

namespace howson {

  std::string_view to_string(Errc code) noexcept {
    switch (code) {
      case Errc::invalid_letter: return "InvalidLetter";
      case Errc::rank_mismatch: return "RankMismatch";
      case Errc::parse_error: return "ParseError";
      case Errc::not_a_member: return "NotAMember";
      case Errc::finite_index: return "FiniteIndex";
      case Errc::not_injective: return "NotInjective";
      case Errc::not_an_automorphism: return "NotAnAutomorphism";
      case Errc::not_in_image: return "NotInImage";
      case Errc::empty_image: return "EmptyImage";
      case Errc::resource_limit: return "ResourceLimit";
      case Errc::not_proper: return "NotProper";
      case Errc::rank_too_small: return "RankTooSmall";
      case Errc::cyclic_pair: return "CyclicPair";
      case Errc::precondition: return "PreconditionViolation";
      case Errc::context_mismatch: return "ContextMismatch";
      case Errc::filtration_violation: return "FiltrationViolation";
      case Errc::no_negative_chi: return "NoNegativeChi";
      case Errc::exponential_stratum: return "ExponentialStratum";
      case Errc::structure_error: return "StructureError";
    }
    return "Unknown";
  }

  namespace detail {
    void append_reduced(std::vector<Letter>&    acc,
                        std::span<Letter const> w,
                        bool                    inverted) {
      if (inverted) {
        for (auto it = w.rbegin(); it != w.rend(); ++it) {
          append_reduced(acc, it->inverse());
        }
      } else {
        for (Letter x : w) {
          append_reduced(acc, x);
        }
      }
    }
  }  // namespace detail

  namespace {
    void check_letter(Letter x, std::size_t rank) {
      if (x.generator >= rank || (x.sign != 1 && x.sign != -1)) {
        throw Error(Errc::invalid_letter,
                    "letter with generator " + std::to_string(x.generator)
                        + " outside rank " + std::to_string(rank));
      }
    }
  }  // namespace

  Word Word::reduce(std::span<Letter const> raw, std::size_t rank) {
    Word result(rank);
    result._letters.reserve(raw.size());
    for (Letter x : raw) {
      check_letter(x, rank);
      detail::append_reduced(result._letters, x);
    }
    return result;
  }

  Word Word::letter(std::size_t rank, std::uint32_t generator, int sign) {
    Letter x{generator, static_cast<std::int8_t>(sign)};
    check_letter(x, rank);
    Word result(rank);
    result._letters.push_back(x);
    return result;
  }

  void Word::push_back(Letter x) {
    check_letter(x, _rank);
    detail::append_reduced(_letters, x);
  }

  Word& Word::operator*=(Word const& rhs) {
    check_same_rank(*this, rhs);
    detail::append_reduced(_letters, rhs._letters);
    return *this;
  }

  Letter parse_letter(std::string_view token, std::size_t rank) {
    Letter x;
    if (rank <= 26 && token.size() == 1 && std::isalpha(token[0])) {
      char c      = token[0];
      bool upper  = std::isupper(static_cast<unsigned char>(c));
      x.generator = static_cast<std::uint32_t>(
          std::tolower(static_cast<unsigned char>(c)) - 'a');
      x.sign = upper ? -1 : 1;
    } else if (rank > 26 && token.size() >= 2
               && (token[0] == 'x' || token[0] == 'X')) {
      std::uint32_t g   = 0;
      auto [ptr, ec]    = std::from_chars(token.data() + 1,
                                       token.data() + token.size(), g);
      if (ec != std::errc() || ptr != token.data() + token.size()) {
        throw Error(Errc::parse_error,
                    "malformed letter token '" + std::string(token) + "'");
      }
      x.generator = g;
      x.sign      = token[0] == 'x' ? 1 : -1;
    } else {
      throw Error(Errc::parse_error,
                  "malformed letter token '" + std::string(token)
                      + "' for rank " + std::to_string(rank));
    }
    check_letter(x, rank);
    return x;
  }

  Word Word::parse(std::string_view text, std::size_t rank) {
    std::vector<Letter> raw;
    if (rank <= 26) {
      for (char c : text) {
        if (std::isspace(static_cast<unsigned char>(c))) {
          continue;
        }
        raw.push_back(parse_letter(std::string_view(&c, 1), rank));
      }
    } else {
      std::size_t i = 0;
      while (i < text.size()) {
        while (i < text.size()
               && std::isspace(static_cast<unsigned char>(text[i]))) {
          ++i;
        }
        std::size_t j = i;
        while (j < text.size()
               && !std::isspace(static_cast<unsigned char>(text[j]))) {
          ++j;
        }
        if (j > i) {
          raw.push_back(parse_letter(text.substr(i, j - i), rank));
        }
        i = j;
      }
    }
    return reduce(raw, rank);
  }

  std::string format_letter(Letter x, std::size_t rank) {
    if (rank <= 26) {
      char c = static_cast<char>('a' + x.generator);
      return std::string(
          1, x.sign > 0 ? c : static_cast<char>(std::toupper(c)));
    }
    return (x.sign > 0 ? "x" : "X") + std::to_string(x.generator);
  }

  std::string Word::to_string() const {
    std::string out;
    for (std::size_t i = 0; i < _letters.size(); ++i) {
      if (_rank > 26 && i > 0) {
        out += ' ';
      }
      out += format_letter(_letters[i], _rank);
    }
    return out;
  }

  std::ostream& operator<<(std::ostream& os, Word const& w) {
    return os << w.to_string();
  }

  void check_same_rank(Word const& u, Word const& v) {
    if (u.rank() != v.rank()) {
      throw Error(Errc::rank_mismatch,
                  "words of rank " + std::to_string(u.rank()) + " and "
                      + std::to_string(v.rank()));
    }
  }

  Word mul(Word const& u, Word const& v) {
    Word result = u;
    result *= v;
    return result;
  }

  Word inv(Word const& u) {
    std::vector<Letter> raw;
    raw.reserve(u.size());
    for (auto it = u.letters().rbegin(); it != u.letters().rend(); ++it) {
      raw.push_back(it->inverse());
    }
    return Word::reduce(raw, u.rank());
  }

  Word commutator(Word const& u, Word const& v) {
    check_same_rank(u, v);
    return mul(mul(u, v), mul(inv(u), inv(v)));
  }

  Word power(Word const& u, long exponent) {
    Word base   = exponent < 0 ? inv(u) : u;
    Word result(u.rank());
    for (long i = 0; i < (exponent < 0 ? -exponent : exponent); ++i) {
      result *= base;
    }
    return result;
  }

  CyclicDecomposition cyclically_reduce(Word const& u) {
    auto        letters = u.letters();
    std::size_t i = 0, j = letters.size();
    while (j - i >= 2 && letters[i].cancels(letters[j - 1])) {
      ++i;
      --j;
    }
    return {Word::reduce(letters.subspan(i, j - i), u.rank()),
            Word::reduce(letters.first(i), u.rank())};
  }

  bool are_conjugate(Word const& u, Word const& v) {
    check_same_rank(u, v);
    auto cu = cyclically_reduce(u).core;
    auto cv = cyclically_reduce(v).core;
    if (cu.size() != cv.size()) {
      return false;
    }
    if (cu.empty()) {
      return true;
    }
    std::vector<Letter> doubled(cu.begin(), cu.end());
    doubled.insert(doubled.end(), cu.begin(), cu.end());
    return std::search(doubled.begin(), doubled.end(), cv.begin(), cv.end())
           != doubled.end();
  }

  std::vector<Word> all_words(std::size_t rank, std::size_t max_length) {
    std::vector<Word> result{Word(rank)};
    std::size_t       start = 0;
    for (std::size_t len = 1; len <= max_length; ++len) {
      std::size_t stop = result.size();
      for (std::size_t k = start; k < stop; ++k) {
        for (std::uint32_t g = 0; g < rank; ++g) {
          for (int s : {1, -1}) {
            Letter x{g, static_cast<std::int8_t>(s)};
            if (!result[k].empty()
                && result[k].letters().back().cancels(x)) {
              continue;
            }
            Word w = result[k];
            w.push_back(x);
            result.push_back(std::move(w));
          }
        }
      }
      start = stop;
    }
    return result;
  }

}  // namespace howson
