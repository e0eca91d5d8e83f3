#ifndef HOWSON_STALLINGS_HPP_
#define HOWSON_STALLINGS_HPP_

#include <cstddef>
#include <cstdint>
#include <limits>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "howson/word.hpp"

namespace howson {

  namespace detail {
    struct GraphAccess;
  }

  //! A labeled edge src --label--> dst of a subgroup graph.
  struct LabeledEdge {
    std::uint32_t src;
    std::uint32_t dst;
    std::uint32_t label;

    friend bool operator==(LabeledEdge, LabeledEdge) = default;
    friend auto operator<=>(LabeledEdge, LabeledEdge) = default;
  };

  //! Controls the order in which folding visits edges; any order yields the
  //! same graph, the option exists so that this can be tested.
  struct FoldOrder {
    std::optional<std::uint64_t> shuffle_seed;
  };

  //! The folded core graph of a finitely generated subgroup of a free group.
  //!
  //! Vertices are 0 .. vertex_count() - 1. For each vertex and each label
  //! there is at most one outgoing and at most one incoming edge, so the
  //! graph is stored as two vertex-by-label transition tables. Graphs built
  //! from generators are numbered canonically (breadth first from the
  //! basepoint, visiting labels in increasing order, outgoing before
  //! incoming), which makes equality of canonical forms the same thing as
  //! isomorphism of based labeled graphs.
  class StallingsGraph {
   public:
    using vertex_type                    = std::uint32_t;
    static constexpr vertex_type no_vertex
        = std::numeric_limits<vertex_type>::max();

    //! The graph of the trivial subgroup: a single vertex, no edges.
    explicit StallingsGraph(std::size_t rank = 0);

    //! Folds and trims an arbitrary edge list; the result is canonical.
    static StallingsGraph from_edges(std::size_t                     rank,
                                     std::size_t                     vertices,
                                     vertex_type                     base,
                                     std::vector<LabeledEdge> const& edges);

    [[nodiscard]] std::size_t rank() const noexcept {
      return _rank;
    }
    [[nodiscard]] std::size_t vertex_count() const noexcept {
      return _vertices;
    }
    [[nodiscard]] vertex_type base() const noexcept {
      return _base;
    }
    [[nodiscard]] std::size_t edge_count() const noexcept {
      return _edges;
    }

    [[nodiscard]] vertex_type target(vertex_type v, Letter x) const noexcept {
      auto i = static_cast<std::size_t>(v) * _rank + x.generator;
      return x.sign > 0 ? _out[i] : _in[i];
    }

    //! Edges sorted by (src, label).
    [[nodiscard]] std::vector<LabeledEdge> edges() const;

    //! Endpoint of the path labeled w starting at `start`, if it exists.
    [[nodiscard]] std::optional<vertex_type> trace(vertex_type start,
                                                   Word const& w) const;

    //! Renumbered copy in canonical breadth-first order.
    [[nodiscard]] StallingsGraph canonical() const;

    [[nodiscard]] bool is_folded() const;

    //! Line-based text: `rank r`, `v n`, `base b`, then `e src dst label`.
    [[nodiscard]] std::string to_text() const;
    static StallingsGraph     from_text(std::string_view text);

    //! Isomorphism of based labeled graphs.
    friend bool operator==(StallingsGraph const& x, StallingsGraph const& y);

   private:
    friend struct detail::GraphAccess;
    StallingsGraph(std::size_t rank, std::size_t vertices, vertex_type base);
    void add_edge(vertex_type src, vertex_type dst, std::uint32_t label);
    [[nodiscard]] std::vector<vertex_type> canonical_numbering() const;
    [[nodiscard]] StallingsGraph
    renumbered(std::vector<vertex_type> const& map, std::size_t n) const;

    std::size_t              _rank;
    std::size_t              _vertices;
    vertex_type              _base;
    std::size_t              _edges;
    std::vector<vertex_type> _out;
    std::vector<vertex_type> _in;
  };

  //! A product of defining generators: factors (index into the generator
  //! list, +1 or -1).
  struct GeneratorExpression {
    struct Factor {
      std::size_t index;
      int         sign;
      friend bool operator==(Factor, Factor) = default;
    };
    std::vector<Factor> factors;

    [[nodiscard]] Word evaluate(std::size_t             rank,
                                std::vector<Word> const& gens) const;

    friend bool operator==(GeneratorExpression const&,
                           GeneratorExpression const&)
        = default;
  };

  //! A folded subgroup graph in which every edge remembers which product of
  //! the defining generators it stands for, so that membership can be
  //! answered constructively. Folding keeps the invariant that reading any
  //! closed path at the basepoint and multiplying the edge provenances gives
  //! an expression for the element the path spells.
  class ProvenanceGraph {
   public:
    ProvenanceGraph(std::size_t rank, std::vector<Word> gens);

    [[nodiscard]] StallingsGraph const& graph() const noexcept {
      return _graph;
    }
    [[nodiscard]] std::vector<Word> const& generators() const noexcept {
      return _gens;
    }

    [[nodiscard]] bool contains(Word const& w) const;

    [[nodiscard]] std::optional<GeneratorExpression>
    express(Word const& w) const;

   private:
    StallingsGraph                   _graph;
    std::vector<Word>                _gens;
    std::vector<std::vector<Letter>> _provenance;  // indexed src * rank + label
  };

  [[nodiscard]] StallingsGraph from_generators(std::size_t              rank,
                                               std::vector<Word> const& gens,
                                               FoldOrder order = {});

  [[nodiscard]] bool membership(StallingsGraph const& g, Word const& w);

  //! Throws Errc::not_a_member if w is not in the subgroup.
  [[nodiscard]] GeneratorExpression
  constructive_membership(std::size_t              rank,
                          std::vector<Word> const& gens,
                          Word const&              w);

  //! Rank of the represented subgroup: edges - vertices + 1.
  [[nodiscard]] std::size_t rank(StallingsGraph const& g);

  //! Free basis read off the canonical breadth-first spanning tree.
  [[nodiscard]] std::vector<Word> basis(StallingsGraph const& g);

  //! Tree path words from the basepoint to every vertex.
  [[nodiscard]] std::vector<Word> spanning_tree_paths(StallingsGraph const& g);

  //! The subgroup intersection, from the component of the fiber product
  //! containing the pair of basepoints.
  [[nodiscard]] StallingsGraph pullback(StallingsGraph const& g1,
                                        StallingsGraph const& g2);

  //! Index in the ambient free group; nullopt means infinite.
  [[nodiscard]] std::optional<std::size_t> index(StallingsGraph const& g);

  //! The graph of u H u^-1.
  [[nodiscard]] StallingsGraph conjugate(StallingsGraph const& g,
                                         Word const&           u);

  [[nodiscard]] bool is_subgroup_of(StallingsGraph const& g1,
                                    StallingsGraph const& g2);

  //! Extends every label's partial injection to a permutation of the same
  //! vertex set, matching unsaturated sources to unsaturated targets in
  //! increasing vertex order. The result covers the rose; the input subgroup
  //! is a free factor of it.
  [[nodiscard]] StallingsGraph hall_completion(StallingsGraph const& g);

  //! Words read off the edges added by hall_completion, through the spanning
  //! tree of g. Together with a basis of g they freely generate a free
  //! product. Throws Errc::finite_index for finite index subgroups.
  [[nodiscard]] std::vector<Word> free_factor_complement(StallingsGraph const& g);

  [[nodiscard]] bool is_free_basis(std::size_t rank, std::vector<Word> const& words);

}  // namespace howson

#endif  // HOWSON_STALLINGS_HPP_
