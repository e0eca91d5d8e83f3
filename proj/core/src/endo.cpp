#include "howson/endo.hpp"

#include <algorithm>
#include <cctype>
#include <functional>
#include <optional>
#include <sstream>

namespace howson {

  Endomorphism::Endomorphism(std::size_t rank, std::vector<Word> images)
      : _images(std::move(images)) {
    if (_images.size() != rank) {
      throw Error(Errc::precondition,
                  "endomorphism of rank " + std::to_string(rank) + " given "
                      + std::to_string(_images.size()) + " images");
    }
    for (auto const& w : _images) {
      if (w.rank() != rank) {
        throw Error(Errc::rank_mismatch, "image '" + w.to_string()
                                             + "' has rank "
                                             + std::to_string(w.rank()));
      }
    }
  }

  Endomorphism Endomorphism::identity(std::size_t rank) {
    std::vector<Word> images;
    for (std::uint32_t g = 0; g < rank; ++g) {
      images.push_back(Word::letter(rank, g));
    }
    return Endomorphism(rank, std::move(images));
  }

  namespace {
    std::string trim(std::string_view s) {
      auto b = s.find_first_not_of(" \t\r\n");
      if (b == std::string_view::npos) {
        return {};
      }
      auto e = s.find_last_not_of(" \t\r\n");
      return std::string(s.substr(b, e - b + 1));
    }
  }  // namespace

  Endomorphism Endomorphism::parse(std::string_view text, std::size_t rank) {
    std::vector<std::pair<std::string, std::string>> entries;
    std::string                                      current;
    auto flush = [&] {
      auto entry = trim(current);
      current.clear();
      if (entry.empty()) {
        return;
      }
      auto arrow = entry.find("->");
      if (arrow == std::string::npos) {
        throw Error(Errc::parse_error, "expected 'x -> word' in '" + entry + "'");
      }
      entries.emplace_back(trim(std::string_view(entry).substr(0, arrow)),
                           trim(std::string_view(entry).substr(arrow + 2)));
    };
    bool comment = false;
    for (char c : text) {
      if (c == '\n') {
        comment = false;
        flush();
      } else if (comment) {
        continue;
      } else if (c == '#') {
        comment = true;
      } else if (c == ',' || c == ';') {
        flush();
      } else {
        current += c;
      }
    }
    flush();
    if (entries.empty()) {
      throw Error(Errc::parse_error, "endomorphism text defines no images");
    }
    if (rank == 0) {
      rank = entries.size();
    }
    std::vector<std::optional<Word>> images(rank);
    for (auto const& [lhs, rhs] : entries) {
      auto x = parse_letter(lhs, rank);
      if (x.sign < 0) {
        throw Error(Errc::parse_error, "image given for an inverse letter '" + lhs + "'");
      }
      if (images[x.generator]) {
        throw Error(Errc::parse_error, "generator '" + lhs + "' defined twice");
      }
      images[x.generator] = Word::parse(rhs, rank);
    }
    std::vector<Word> result;
    for (std::uint32_t g = 0; g < rank; ++g) {
      if (!images[g]) {
        throw Error(Errc::parse_error,
                    "no image for generator '"
                        + format_letter(Letter{g, 1}, rank) + "'");
      }
      result.push_back(std::move(*images[g]));
    }
    return Endomorphism(rank, std::move(result));
  }

  Word Endomorphism::apply(Word const& w, std::size_t cap) const {
    if (w.rank() != rank()) {
      throw Error(Errc::rank_mismatch,
                  "word of rank " + std::to_string(w.rank())
                      + " given to endomorphism of rank "
                      + std::to_string(rank()));
    }
    std::vector<Letter> acc;
    for (Letter x : w) {
      detail::append_reduced(acc, _images[x.generator].letters(), x.sign < 0);
      if (acc.size() > cap) {
        throw Error(Errc::resource_limit,
                    "word length exceeded cap of " + std::to_string(cap));
      }
    }
    return Word::reduce(acc, rank());
  }

  std::string Endomorphism::to_string() const {
    std::string out;
    for (std::uint32_t g = 0; g < rank(); ++g) {
      out += format_letter(Letter{g, 1}, rank()) + " -> "
             + _images[g].to_string() + "\n";
    }
    return out;
  }

  Endomorphism compose(Endomorphism const& phi,
                       Endomorphism const& psi,
                       std::size_t         cap) {
    if (phi.rank() != psi.rank()) {
      throw Error(Errc::rank_mismatch, "composing endomorphisms of different rank");
    }
    std::vector<Word> images;
    for (auto const& w : psi.images()) {
      images.push_back(phi.apply(w, cap));
    }
    return Endomorphism(phi.rank(), std::move(images));
  }

  Endomorphism power(Endomorphism const& phi, std::size_t n, std::size_t cap) {
    auto result = Endomorphism::identity(phi.rank());
    for (std::size_t i = 0; i < n; ++i) {
      result = compose(phi, result, cap);
    }
    return result;
  }

  Word iterate(Endomorphism const& phi,
               Word const&         w,
               std::size_t         n,
               std::size_t         cap) {
    Word result = w;
    for (std::size_t i = 0; i < n; ++i) {
      result = phi.apply(result, cap);
    }
    return result;
  }

  StallingsGraph image_graph(Endomorphism const& phi) {
    return from_generators(phi.rank(), phi.images());
  }

  bool is_injective(Endomorphism const& phi) {
    // n elements generating a free group of rank n are a basis of it.
    return rank(image_graph(phi)) == phi.rank();
  }

  bool is_surjective(Endomorphism const& phi) {
    auto i = index(image_graph(phi));
    return i && *i == 1;
  }

  ImageAutomaton::ImageAutomaton(Endomorphism const& phi)
      : _graph(phi.rank(), phi.images()),
        _injective(rank(_graph.graph()) == phi.rank()) {}

  Word ImageAutomaton::preimage(Word const& w) const {
    if (!_injective) {
      throw Error(Errc::not_injective, "preimages need an injective map");
    }
    auto expr = _graph.express(w);
    if (!expr) {
      throw Error(Errc::not_in_image,
                  "'" + w.to_string() + "' is not in the image");
    }
    std::vector<Letter> letters;
    for (auto const& f : expr->factors) {
      letters.push_back(Letter{static_cast<std::uint32_t>(f.index),
                               static_cast<std::int8_t>(f.sign)});
    }
    return Word::reduce(letters, w.rank());
  }

  Word preimage(Endomorphism const& phi, Word const& w) {
    return ImageAutomaton(phi).preimage(w);
  }

  Endomorphism inverse(Endomorphism const& phi) {
    ImageAutomaton image(phi);
    auto           i = index(image.graph());
    if (!image.injective() || !i || *i != 1) {
      throw Error(Errc::not_an_automorphism,
                  image.injective() ? "map is not surjective"
                                    : "map is not injective");
    }
    std::vector<Word> images;
    for (std::uint32_t g = 0; g < phi.rank(); ++g) {
      images.push_back(image.preimage(Word::letter(phi.rank(), g)));
    }
    return Endomorphism(phi.rank(), std::move(images));
  }

  TransitionMatrix transition_matrix(Endomorphism const& phi) {
    TransitionMatrix m(phi.rank(), std::vector<std::size_t>(phi.rank(), 0));
    for (std::size_t i = 0; i < phi.rank(); ++i) {
      for (Letter x : phi.image(i)) {
        ++m[i][x.generator];
      }
    }
    return m;
  }

  std::string Growth::to_string() const {
    if (is_exponential()) {
      return "Exponential";
    }
    return "Polynomial(" + std::to_string(degree) + ")";
  }

  Growth classify_growth(TransitionMatrix const& m) {
    auto const n = m.size();
    // Tarjan's algorithm; components come out in reverse topological order,
    // so every successor component is numbered before its predecessors.
    std::vector<std::size_t> comp(n, n), low(n), order(n, n), stack;
    std::vector<char>        on_stack(n, 0);
    std::size_t              counter = 0, ncomp = 0;
    std::function<void(std::size_t)> visit = [&](std::size_t v) {
      order[v] = low[v] = counter++;
      stack.push_back(v);
      on_stack[v] = 1;
      for (std::size_t u = 0; u < n; ++u) {
        if (m[v][u] == 0) {
          continue;
        }
        if (order[u] == n) {
          visit(u);
          low[v] = std::min(low[v], low[u]);
        } else if (on_stack[u]) {
          low[v] = std::min(low[v], order[u]);
        }
      }
      if (low[v] == order[v]) {
        std::size_t u;
        do {
          u = stack.back();
          stack.pop_back();
          on_stack[u] = 0;
          comp[u]     = ncomp;
        } while (u != v);
        ++ncomp;
      }
    };
    for (std::size_t v = 0; v < n; ++v) {
      if (order[v] == n) {
        visit(v);
      }
    }

    std::vector<char> cyclic(ncomp, 0);
    for (std::size_t v = 0; v < n; ++v) {
      std::size_t inside = 0;
      for (std::size_t u = 0; u < n; ++u) {
        if (comp[u] == comp[v]) {
          inside += m[v][u];
        }
      }
      if (inside > 1) {
        return Growth::exponential();
      }
      if (inside == 1) {
        cyclic[comp[v]] = 1;
      }
    }

    std::vector<std::size_t> chain(ncomp, 0);
    std::size_t              longest = 0;
    for (std::size_t c = 0; c < ncomp; ++c) {
      std::size_t best = 0;
      for (std::size_t v = 0; v < n; ++v) {
        if (comp[v] != c) {
          continue;
        }
        for (std::size_t u = 0; u < n; ++u) {
          if (m[v][u] != 0 && comp[u] != c) {
            best = std::max(best, chain[comp[u]]);
          }
        }
      }
      chain[c] = best + (cyclic[c] ? 1 : 0);
      longest  = std::max(longest, chain[c]);
    }
    return Growth::polynomial(longest == 0 ? 0 : longest - 1);
  }

  Growth growth_class(Endomorphism const& phi) {
    for (std::size_t g = 0; g < phi.rank(); ++g) {
      if (phi.image(g).empty()) {
        throw Error(Errc::empty_image,
                    "generator '"
                        + format_letter(Letter{std::uint32_t(g), 1}, phi.rank())
                        + "' maps to the empty word");
      }
    }
    return classify_growth(transition_matrix(phi));
  }

}  // namespace howson
