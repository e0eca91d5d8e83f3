#ifndef HOWSON_GRAPHMAP_HPP_
#define HOWSON_GRAPHMAP_HPP_

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "howson/endo.hpp"
#include "howson/hnn.hpp"
#include "howson/word.hpp"

namespace howson {

  struct GraphEdge {
    std::string name;
    std::size_t src;
    std::size_t dst;
  };

  //! A finite graph with named vertices and named, directed edges. Loops and
  //! multiple edges are allowed.
  class Graph {
   public:
    std::size_t add_vertex(std::string name);
    std::size_t add_edge(std::string name, std::size_t src, std::size_t dst);

    [[nodiscard]] std::size_t vertex_count() const noexcept {
      return _vertices.size();
    }
    [[nodiscard]] std::size_t edge_count() const noexcept {
      return _edges.size();
    }
    [[nodiscard]] std::string const& vertex_name(std::size_t v) const {
      return _vertices.at(v);
    }
    [[nodiscard]] GraphEdge const& edge(std::size_t e) const {
      return _edges.at(e);
    }
    [[nodiscard]] std::vector<GraphEdge> const& edges() const noexcept {
      return _edges;
    }
    [[nodiscard]] std::optional<std::size_t> find_vertex(std::string_view name) const;
    [[nodiscard]] std::optional<std::size_t> find_edge(std::string_view name) const;

   private:
    std::vector<std::string> _vertices;
    std::vector<GraphEdge>   _edges;
  };

  //! An edge traversed forwards or backwards.
  struct OrientedEdge {
    std::size_t edge;
    bool        reversed = false;

    [[nodiscard]] OrientedEdge inverse() const noexcept {
      return {edge, !reversed};
    }
    friend bool operator==(OrientedEdge, OrientedEdge) = default;
  };

  using EdgePath = std::vector<OrientedEdge>;

  [[nodiscard]] std::size_t origin(Graph const& g, OrientedEdge e);
  [[nodiscard]] std::size_t terminus(Graph const& g, OrientedEdge e);
  [[nodiscard]] EdgePath    inverse(EdgePath const& p);
  //! Cancels adjacent backtracks e e^-1.
  [[nodiscard]] EdgePath    tighten(EdgePath const& p);

  //! Pass/fail with human readable reasons.
  struct Diagnostics {
    bool                     ok = true;
    std::vector<std::string> messages;

    void fail(std::string message) {
      ok = false;
      messages.push_back(std::move(message));
    }
    explicit operator bool() const noexcept {
      return ok;
    }
  };

  //! A map of a graph to itself sending vertices to vertices and edges to
  //! edge paths.
  struct GraphSelfMap {
    Graph                    graph;
    std::vector<std::size_t> vertex_map;
    std::vector<EdgePath>    edge_map;

    //! The image of a path, tightened.
    [[nodiscard]] EdgePath apply(EdgePath const& p) const;

    //! The rose with one petal per generator carrying phi.
    static GraphSelfMap from_endomorphism(Endomorphism const& phi);
  };

  //! Strata S^1 .. S^k as lists of edge indices; V^r is the union of the
  //! first r strata together with the endpoints of their edges.
  struct Filtration {
    std::vector<std::vector<std::size_t>> strata;

    //! Edges of V^r.
    [[nodiscard]] std::vector<std::size_t> level(std::size_t r) const;
  };

  //! Contents of a graph-map file.
  struct GraphMapFile {
    GraphSelfMap map;
    Filtration   filtration;

    static GraphMapFile parse(std::string_view text);
    [[nodiscard]] std::string to_text() const;
  };

  [[nodiscard]] Diagnostics validate(GraphSelfMap const& m);

  //! m composed with itself n times.
  [[nodiscard]] GraphSelfMap power(GraphSelfMap const& m, std::size_t n);

  //! Entry (e, f) counts the occurrences of edge f in the image of edge e.
  [[nodiscard]] TransitionMatrix transition_matrix(GraphSelfMap const& m);

  struct Component {
    std::vector<std::size_t> vertices;
    std::vector<std::size_t> edges;

    [[nodiscard]] long euler_characteristic() const noexcept {
      return static_cast<long>(vertices.size()) - static_cast<long>(edges.size());
    }
  };

  //! Components of the subgraph spanned by the given edges; its vertices
  //! are their endpoints. Components are ordered by least vertex.
  [[nodiscard]] std::vector<Component> components(Graph const&                    g,
                                                  std::vector<std::size_t> const& edges);
  //! Components of the whole graph, isolated vertices included.
  [[nodiscard]] std::vector<Component> components(Graph const& g);

  [[nodiscard]] long euler_characteristic(Graph const& g);
  [[nodiscard]] long euler_characteristic(Graph const&                    g,
                                          std::vector<std::size_t> const& edges);

  //! Checks that the strata partition the edges, and for r = 1 .. through
  //! (all strata by default) that V^r is invariant, that S^r is a single
  //! edge e_r, and that e_r maps to e_r P_r with P_r a closed path in V^r-1
  //! at a fixed vertex. Stops at the first failure.
  [[nodiscard]] Diagnostics verify_filtration(GraphSelfMap const&        m,
                                              Filtration const&          f,
                                              std::optional<std::size_t> through = {});

  struct NegativeChi {
    std::size_t r;  // 1-based stratum index
    Component   component;
  };

  //! The least r such that a component J of V^r has negative Euler
  //! characteristic, with J.
  [[nodiscard]] std::optional<NegativeChi> smallest_negative_chi(Graph const&      g,
                                                                 Filtration const& f);

  struct Relation {
    Word lhs;
    Word rhs;
  };

  //! Generators are the edges of V^r outside a breadth-first spanning tree
  //! of the component of the base vertex, followed by the stable letter t,
  //! which is always the last generator.
  struct Presentation {
    std::vector<std::string> generators;
    std::vector<Relation>    relations;
    std::size_t              base;

    [[nodiscard]] std::string to_string() const;
    //! Free rank of the abelianization.
    [[nodiscard]] std::size_t abelianization_rank() const;
  };

  //! The mapping torus of m on the whole graph, based at its least fixed
  //! vertex. Throws Errc::filtration_violation if m is not a valid map or
  //! fixes no vertex.
  [[nodiscard]] Presentation mapping_torus_presentation(GraphSelfMap const& m);

  //! The mapping torus of m restricted to V^r (r = all strata by default),
  //! based at the least vertex of V^r fixed by m. Throws
  //! Errc::filtration_violation unless the filtration verifies through r.
  [[nodiscard]] Presentation mapping_torus_presentation(GraphSelfMap const&        m,
                                                        Filtration const&          f,
                                                        std::optional<std::size_t> r = {});

  enum class WitnessCase { disconnected, connected, degenerate };

  [[nodiscard]] std::string_view to_string(WitnessCase c) noexcept;

  //! Candidate generators of a copy of F2 x Z in the mapping torus at the
  //! first stratum where the Euler characteristic turns negative.
  //!
  //! a and b are words in pi_1(J, p), p the initial vertex of e_r, written
  //! in the basis of non-tree edges listed in generator_edges; phi is the
  //! map induced on that group, and z = t^z_power.
  struct PolynomialWitness {
    WitnessCase              kind;
    std::size_t              r;
    std::size_t              edge;
    std::size_t              base;
    Component                component;
    std::vector<EdgePath>    cycles;
    std::vector<std::size_t> generator_edges;
    Endomorphism             phi;
    Word                     a;
    Word                     b;
    std::size_t              z_power;

    // Relation checks in the ascending HNN extension of phi; they are run
    // whenever phi is injective.
    bool hnn_checked   = false;
    bool a_commutes    = false;
    bool b_commutes    = false;
    bool ab_nontrivial = false;
    bool ab_free       = false;

    std::vector<std::string> notes{};

    [[nodiscard]] RawHnnWord a_raw() const;
    [[nodiscard]] RawHnnWord b_raw() const;
    [[nodiscard]] RawHnnWord z_raw() const;
    [[nodiscard]] bool       passed() const noexcept {
      return hnn_checked && a_commutes && b_commutes && ab_nontrivial && ab_free;
    }
  };

  //! Throws Errc::exponential_stratum, Errc::filtration_violation,
  //! Errc::no_negative_chi, or Errc::structure_error when J - e_r does not
  //! retract onto cycles the way the two cases require.
  [[nodiscard]] PolynomialWitness polynomial_witness(GraphSelfMap const& m,
                                                     Filtration const&   f);

}  // namespace howson

#endif  // HOWSON_GRAPHMAP_HPP_
