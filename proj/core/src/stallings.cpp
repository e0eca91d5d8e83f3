#include "howson/stallings.hpp"

#include <algorithm>
#include <cassert>
#include <deque>
#include <random>
#include <sstream>
#include <unordered_map>

namespace howson {

  using vertex_type = StallingsGraph::vertex_type;

  namespace detail {
    struct GraphAccess {
      static StallingsGraph make(std::size_t rank,
                                 std::size_t vertices,
                                 vertex_type base) {
        return StallingsGraph(rank, vertices, base);
      }
      static void add_edge(StallingsGraph& g,
                           vertex_type     src,
                           vertex_type     dst,
                           std::uint32_t   label) {
        g.add_edge(src, dst, label);
      }
      static std::vector<vertex_type> numbering(StallingsGraph const& g) {
        return g.canonical_numbering();
      }
      static StallingsGraph renumbered(StallingsGraph const&           g,
                                       std::vector<vertex_type> const& map,
                                       std::size_t                     n) {
        return g.renumbered(map, n);
      }
    };

    namespace {
      constexpr std::uint32_t none = std::numeric_limits<std::uint32_t>::max();

      std::vector<Letter> inverted(std::vector<Letter> const& w) {
        std::vector<Letter> out;
        append_reduced(out, w, true);
        return out;
      }

      std::vector<Letter> product(std::vector<Letter> const& x,
                                  std::vector<Letter> const& y) {
        std::vector<Letter> out = x;
        append_reduced(out, y);
        return out;
      }

      // Folding engine over an explicit edge list. Vertices merged away are
      // marked dead; edges folded away are killed. When provenance is
      // tracked, each merge of `drop` into `keep` with transport d rewrites
      // provenances so that products along closed basepoint paths are
      // unchanged: edges leaving drop get d * p, edges entering drop get
      // p * d^-1.
      class Folder {
       public:
        Folder(std::size_t rank, bool provenance, FoldOrder order)
            : _rank(rank), _track(provenance) {
          if (order.shuffle_seed) {
            _rng.emplace(*order.shuffle_seed);
          }
        }

        std::uint32_t add_vertex() {
          _inc.emplace_back();
          _alive_vertex.push_back(true);
          return static_cast<std::uint32_t>(_inc.size() - 1);
        }

        void add_edge(std::uint32_t       src,
                      std::uint32_t       label,
                      std::uint32_t       dst,
                      std::vector<Letter> prov = {}) {
          _edges.push_back({src, dst, label, true});
          if (_track) {
            _prov.push_back(std::move(prov));
          }
        }

        // Adds a path spelling w from `from` to `to`; the whole provenance
        // is carried by the first edge.
        void add_path(std::uint32_t       from,
                      Word const&         w,
                      std::uint32_t       to,
                      std::vector<Letter> prov = {}) {
          assert(!w.empty());
          std::uint32_t current = from;
          for (std::size_t i = 0; i < w.size(); ++i) {
            std::uint32_t next = i + 1 == w.size() ? to : add_vertex();
            Letter        x    = w[i];
            std::vector<Letter> p;
            if (i == 0) {
              p = x.sign > 0 ? std::move(prov) : inverted(prov);
            }
            if (x.sign > 0) {
              add_edge(current, x.generator, next, std::move(p));
            } else {
              add_edge(next, x.generator, current, std::move(p));
            }
            current = next;
          }
        }

        struct Result {
          StallingsGraph                   graph;
          std::vector<std::vector<Letter>> provenance;
        };

        Result finish(std::uint32_t base) {
          _base = base;
          fold();
          trim();
          return build();
        }

       private:
        struct Edge {
          std::uint32_t src, dst, label;
          bool          alive;
        };

        void fold() {
          _stamp.assign(_edges.size(), 0);
          std::vector<std::uint32_t> order(_edges.size());
          for (std::uint32_t e = 0; e < order.size(); ++e) {
            order[e] = e;
          }
          if (_rng) {
            std::shuffle(order.begin(), order.end(), *_rng);
          }
          for (auto e : order) {
            _inc[_edges[e].src].push_back(e);
            if (_edges[e].dst != _edges[e].src) {
              _inc[_edges[e].dst].push_back(e);
            }
          }
          std::vector<std::uint32_t> work(_inc.size());
          std::vector<char>          queued(_inc.size(), 1);
          for (std::uint32_t v = 0; v < work.size(); ++v) {
            work[v] = v;
          }
          if (_rng) {
            std::shuffle(work.begin(), work.end(), *_rng);
          }
          std::vector<std::uint32_t> slot(2 * _rank, none);
          std::vector<std::uint32_t> touched;

          auto push = [&](std::uint32_t v) {
            if (_alive_vertex[v] && !queued[v]) {
              queued[v] = 1;
              work.push_back(v);
            }
          };

          while (!work.empty()) {
            std::uint32_t v;
            if (_rng) {
              std::size_t i = std::uniform_int_distribution<std::size_t>(
                  0, work.size() - 1)(*_rng);
              std::swap(work[i], work.back());
            }
            v = work.back();
            work.pop_back();
            queued[v] = 0;
            if (!_alive_vertex[v]) {
              continue;
            }
            compact(v);
            std::uint32_t e1 = none, e2 = none, s = none;
            for (auto e : _inc[v]) {
              Edge const& edge = _edges[e];
              for (int role = 0; role < 2 && e2 == none; ++role) {
                if (role == 0 ? edge.src != v : edge.dst != v) {
                  continue;
                }
                std::uint32_t k = edge.label + (role == 0 ? 0 : _rank);
                if (slot[k] == none) {
                  slot[k] = e;
                  touched.push_back(k);
                } else if (slot[k] != e) {
                  e1 = slot[k];
                  e2 = e;
                  s  = k;
                }
              }
              if (e2 != none) {
                break;
              }
            }
            for (auto k : touched) {
              slot[k] = none;
            }
            touched.clear();
            if (e2 == none) {
              continue;
            }
            bool outgoing = s < _rank;
            // The endpoints to identify; e1 and e2 share the other end.
            std::uint32_t x = outgoing ? _edges[e1].dst : _edges[e1].src;
            std::uint32_t y = outgoing ? _edges[e2].dst : _edges[e2].src;
            if (x == y) {
              _edges[e2].alive = false;
            } else {
              bool swap = y == _base
                          || (x != _base && _inc[y].size() > _inc[x].size());
              if (swap) {
                std::swap(x, y);
                std::swap(e1, e2);
              }
              // Merge y into x; e2 becomes parallel to e1 and is killed.
              std::vector<Letter> delta;
              if (_track) {
                delta = outgoing ? product(inverted(_prov[e1]), _prov[e2])
                                 : product(_prov[e1], inverted(_prov[e2]));
              }
              merge(x, y, delta);
              _edges[e2].alive = false;
              push(x);
            }
            push(v);
          }
        }

        void compact(std::uint32_t v) {
          ++_epoch;
          auto& list = _inc[v];
          std::size_t out = 0;
          for (auto e : list) {
            if (_edges[e].alive && _stamp[e] != _epoch) {
              _stamp[e]   = _epoch;
              list[out++] = e;
            }
          }
          list.resize(out);
        }

        void merge(std::uint32_t              keep,
                   std::uint32_t              drop,
                   std::vector<Letter> const& delta) {
          compact(drop);
          std::vector<Letter> delta_inv;
          if (_track) {
            delta_inv = inverted(delta);
          }
          for (auto e : _inc[drop]) {
            Edge& edge = _edges[e];
            if (_track) {
              if (edge.src == drop) {
                _prov[e] = product(delta, _prov[e]);
              }
              if (edge.dst == drop) {
                _prov[e] = product(_prov[e], delta_inv);
              }
            }
            if (edge.src == drop) {
              edge.src = keep;
            }
            if (edge.dst == drop) {
              edge.dst = keep;
            }
            _inc[keep].push_back(e);
          }
          _inc[drop].clear();
          _inc[drop].shrink_to_fit();
          _alive_vertex[drop] = false;
        }

        void trim() {
          std::vector<std::uint32_t> degree(_inc.size(), 0);
          for (auto const& e : _edges) {
            if (e.alive) {
              ++degree[e.src];
              ++degree[e.dst];
            }
          }
          std::vector<std::uint32_t> queue;
          for (std::uint32_t v = 0; v < _inc.size(); ++v) {
            if (_alive_vertex[v] && v != _base && degree[v] <= 1) {
              queue.push_back(v);
            }
          }
          while (!queue.empty()) {
            auto v = queue.back();
            queue.pop_back();
            if (!_alive_vertex[v]) {
              continue;
            }
            _alive_vertex[v] = false;
            compact(v);
            for (auto e : _inc[v]) {
              Edge& edge = _edges[e];
              edge.alive = false;
              auto other = edge.src == v ? edge.dst : edge.src;
              if (other != v) {
                --degree[other];
                if (other != _base && _alive_vertex[other]
                    && degree[other] <= 1) {
                  queue.push_back(other);
                }
              }
            }
          }
        }

        Result build() {
          auto raw = GraphAccess::make(_rank, _inc.size(), _base);
          for (auto const& e : _edges) {
            if (e.alive) {
              GraphAccess::add_edge(raw, e.src, e.dst, e.label);
            }
          }
          auto map = GraphAccess::numbering(raw);
          std::size_t n
              = static_cast<std::size_t>(std::count_if(
                  map.begin(), map.end(),
                  [](vertex_type x) { return x != StallingsGraph::no_vertex; }));
          Result result{GraphAccess::renumbered(raw, map, n), {}};
          if (_track) {
            result.provenance.resize(n * _rank);
            for (std::size_t e = 0; e < _edges.size(); ++e) {
              if (_edges[e].alive) {
                result.provenance[map[_edges[e].src] * _rank + _edges[e].label]
                    = std::move(_prov[e]);
              }
            }
          }
          return result;
        }

        std::size_t                             _rank;
        bool                                    _track;
        std::uint32_t                           _base = 0;
        std::optional<std::mt19937_64>          _rng;
        std::vector<Edge>                       _edges;
        std::vector<std::vector<Letter>>        _prov;
        std::vector<std::vector<std::uint32_t>> _inc;
        std::vector<char>                       _alive_vertex;
        std::vector<std::uint32_t>              _stamp;
        std::uint32_t                           _epoch = 0;
      };
    }  // namespace
  }    // namespace detail

  using detail::Folder;

  ////////////////////////////////////////////////////////////////////////
  // StallingsGraph
  ////////////////////////////////////////////////////////////////////////

  StallingsGraph::StallingsGraph(std::size_t rank)
      : StallingsGraph(rank, 1, 0) {}

  StallingsGraph::StallingsGraph(std::size_t rank,
                                 std::size_t vertices,
                                 vertex_type base)
      : _rank(rank),
        _vertices(vertices),
        _base(base),
        _edges(0),
        _out(vertices * rank, no_vertex),
        _in(vertices * rank, no_vertex) {}

  void StallingsGraph::add_edge(vertex_type   src,
                                vertex_type   dst,
                                std::uint32_t label) {
    auto& out = _out[static_cast<std::size_t>(src) * _rank + label];
    auto& in  = _in[static_cast<std::size_t>(dst) * _rank + label];
    assert(out == no_vertex && in == no_vertex);
    out = dst;
    in  = src;
    ++_edges;
  }

  StallingsGraph StallingsGraph::from_edges(std::size_t rank,
                                            std::size_t vertices,
                                            vertex_type base,
                                            std::vector<LabeledEdge> const& edges) {
    if (base >= vertices) {
      throw Error(Errc::parse_error, "basepoint out of range");
    }
    Folder folder(rank, false, {});
    for (std::size_t v = 0; v < vertices; ++v) {
      folder.add_vertex();
    }
    for (auto const& e : edges) {
      if (e.src >= vertices || e.dst >= vertices) {
        throw Error(Errc::parse_error, "edge endpoint out of range");
      }
      if (e.label >= rank) {
        throw Error(Errc::invalid_letter, "edge label outside rank");
      }
      folder.add_edge(e.src, e.label, e.dst);
    }
    return folder.finish(base).graph;
  }

  std::vector<LabeledEdge> StallingsGraph::edges() const {
    std::vector<LabeledEdge> result;
    result.reserve(_edges);
    for (vertex_type v = 0; v < _vertices; ++v) {
      for (std::uint32_t g = 0; g < _rank; ++g) {
        auto t = _out[static_cast<std::size_t>(v) * _rank + g];
        if (t != no_vertex) {
          result.push_back({v, t, g});
        }
      }
    }
    return result;
  }

  std::optional<vertex_type> StallingsGraph::trace(vertex_type start,
                                                   Word const& w) const {
    if (w.rank() != _rank) {
      throw Error(Errc::rank_mismatch,
                  "word of rank " + std::to_string(w.rank())
                      + " traced in graph of rank " + std::to_string(_rank));
    }
    vertex_type v = start;
    for (Letter x : w) {
      v = target(v, x);
      if (v == no_vertex) {
        return std::nullopt;
      }
    }
    return v;
  }

  std::vector<vertex_type> StallingsGraph::canonical_numbering() const {
    std::vector<vertex_type> map(_vertices, no_vertex);
    std::deque<vertex_type>  queue{_base};
    vertex_type              next = 0;
    map[_base]                    = next++;
    while (!queue.empty()) {
      auto v = queue.front();
      queue.pop_front();
      for (std::uint32_t g = 0; g < _rank; ++g) {
        for (int s : {1, -1}) {
          auto t = target(v, Letter{g, static_cast<std::int8_t>(s)});
          if (t != no_vertex && map[t] == no_vertex) {
            map[t] = next++;
            queue.push_back(t);
          }
        }
      }
    }
    return map;
  }

  StallingsGraph StallingsGraph::renumbered(std::vector<vertex_type> const& map,
                                            std::size_t n) const {
    StallingsGraph result(_rank, n, map[_base]);
    for (auto const& e : edges()) {
      if (map[e.src] != no_vertex) {
        result.add_edge(map[e.src], map[e.dst], e.label);
      }
    }
    return result;
  }

  StallingsGraph StallingsGraph::canonical() const {
    auto        map = canonical_numbering();
    std::size_t n   = static_cast<std::size_t>(
        std::count_if(map.begin(), map.end(),
                      [](vertex_type x) { return x != no_vertex; }));
    return renumbered(map, n);
  }

  bool StallingsGraph::is_folded() const {
    // The table representation cannot hold an unfolded graph; this checks
    // the two tables agree with each other.
    std::size_t count = 0;
    for (vertex_type v = 0; v < _vertices; ++v) {
      for (std::uint32_t g = 0; g < _rank; ++g) {
        auto t = _out[static_cast<std::size_t>(v) * _rank + g];
        if (t != no_vertex) {
          ++count;
          if (_in[static_cast<std::size_t>(t) * _rank + g] != v) {
            return false;
          }
        }
      }
    }
    return count == _edges;
  }

  bool operator==(StallingsGraph const& x, StallingsGraph const& y) {
    if (x._rank != y._rank || x._vertices != y._vertices
        || x._edges != y._edges) {
      return false;
    }
    auto cx = x.canonical();
    auto cy = y.canonical();
    return cx._out == cy._out && cx._base == cy._base;
  }

  std::string StallingsGraph::to_text() const {
    std::ostringstream os;
    os << "rank " << _rank << '\n'
       << "v " << _vertices << '\n'
       << "base " << _base << '\n';
    for (auto const& e : edges()) {
      os << "e " << e.src << ' ' << e.dst << ' '
         << format_letter(Letter{e.label, 1}, _rank) << '\n';
    }
    return os.str();
  }

  StallingsGraph StallingsGraph::from_text(std::string_view text) {
    std::istringstream       in{std::string(text)};
    std::string              line;
    std::optional<std::size_t> rank, vertices;
    vertex_type              base = 0;
    struct Raw {
      std::uint32_t src, dst;
      std::string   label;
    };
    std::vector<Raw> raw;
    std::size_t      lineno = 0;
    while (std::getline(in, line)) {
      ++lineno;
      if (auto hash = line.find('#'); hash != std::string::npos) {
        line.erase(hash);
      }
      std::istringstream ls(line);
      std::string        key;
      if (!(ls >> key)) {
        continue;
      }
      bool ok = true;
      if (key == "rank") {
        std::size_t r;
        ok   = static_cast<bool>(ls >> r);
        rank = r;
      } else if (key == "v") {
        std::size_t n;
        ok       = static_cast<bool>(ls >> n);
        vertices = n;
      } else if (key == "base") {
        ok = static_cast<bool>(ls >> base);
      } else if (key == "e") {
        Raw r;
        ok = static_cast<bool>(ls >> r.src >> r.dst >> r.label);
        raw.push_back(r);
      } else {
        ok = false;
      }
      std::string extra;
      if (!ok || (ls >> extra)) {
        throw Error(Errc::parse_error,
                    "graph text line " + std::to_string(lineno) + ": '"
                        + line + "'");
      }
    }
    if (!vertices) {
      throw Error(Errc::parse_error, "graph text has no 'v' line");
    }
    if (!rank) {
      // Without a rank line the letter alphabet is assumed.
      std::uint32_t max_label = 0;
      for (auto const& r : raw) {
        auto x    = parse_letter(r.label, 26);
        max_label = std::max(max_label, x.generator + 1);
      }
      rank = std::max<std::size_t>(max_label, 1);
    }
    std::vector<LabeledEdge> edges;
    for (auto const& r : raw) {
      auto x = parse_letter(r.label, *rank);
      if (x.sign > 0) {
        edges.push_back({r.src, r.dst, x.generator});
      } else {
        edges.push_back({r.dst, r.src, x.generator});
      }
    }
    return from_edges(*rank, *vertices, base, edges);
  }

  ////////////////////////////////////////////////////////////////////////
  // Generator expressions and provenance
  ////////////////////////////////////////////////////////////////////////

  Word GeneratorExpression::evaluate(std::size_t              rank,
                                     std::vector<Word> const& gens) const {
    Word result(rank);
    for (auto const& f : factors) {
      if (f.index >= gens.size()) {
        throw Error(Errc::precondition, "generator index out of range");
      }
      result *= f.sign > 0 ? gens[f.index] : inv(gens[f.index]);
    }
    return result;
  }

  ProvenanceGraph::ProvenanceGraph(std::size_t rank, std::vector<Word> gens)
      : _graph(rank), _gens(std::move(gens)) {
    Folder folder(rank, true, {});
    auto   base = folder.add_vertex();
    for (std::size_t i = 0; i < _gens.size(); ++i) {
      if (_gens[i].rank() != rank) {
        throw Error(Errc::rank_mismatch, "generator rank differs");
      }
      if (!_gens[i].empty()) {
        folder.add_path(
            base, _gens[i], base,
            {Letter{static_cast<std::uint32_t>(i), 1}});
      }
    }
    auto result = folder.finish(base);
    _graph      = std::move(result.graph);
    _provenance = std::move(result.provenance);
  }

  bool ProvenanceGraph::contains(Word const& w) const {
    return membership(_graph, w);
  }

  std::optional<GeneratorExpression>
  ProvenanceGraph::express(Word const& w) const {
    auto const          rank = _graph.rank();
    std::vector<Letter> acc;
    vertex_type         v = _graph.base();
    if (w.rank() != rank) {
      throw Error(Errc::rank_mismatch, "word rank differs from subgroup");
    }
    for (Letter x : w) {
      auto t = _graph.target(v, x);
      if (t == StallingsGraph::no_vertex) {
        return std::nullopt;
      }
      if (x.sign > 0) {
        detail::append_reduced(acc, _provenance[v * rank + x.generator]);
      } else {
        detail::append_reduced(acc, _provenance[t * rank + x.generator], true);
      }
      v = t;
    }
    if (v != _graph.base()) {
      return std::nullopt;
    }
    GeneratorExpression expr;
    for (Letter x : acc) {
      expr.factors.push_back({x.generator, x.sign});
    }
    return expr;
  }

  ////////////////////////////////////////////////////////////////////////
  // Operations
  ////////////////////////////////////////////////////////////////////////

  StallingsGraph from_generators(std::size_t              rank,
                                 std::vector<Word> const& gens,
                                 FoldOrder                order) {
    Folder folder(rank, false, order);
    auto   base = folder.add_vertex();
    for (auto const& w : gens) {
      if (w.rank() != rank) {
        throw Error(Errc::rank_mismatch, "generator rank differs");
      }
      if (!w.empty()) {
        folder.add_path(base, w, base);
      }
    }
    return folder.finish(base).graph;
  }

  bool membership(StallingsGraph const& g, Word const& w) {
    auto end = g.trace(g.base(), w);
    return end && *end == g.base();
  }

  GeneratorExpression constructive_membership(std::size_t              rank,
                                              std::vector<Word> const& gens,
                                              Word const&              w) {
    ProvenanceGraph pg(rank, gens);
    auto            expr = pg.express(w);
    if (!expr) {
      throw Error(Errc::not_a_member,
                  "'" + w.to_string() + "' is not in the subgroup");
    }
    return *expr;
  }

  std::size_t rank(StallingsGraph const& g) {
    return g.edge_count() + 1 - g.vertex_count();
  }

  std::vector<Word> spanning_tree_paths(StallingsGraph const& g) {
    std::vector<Word>              paths(g.vertex_count(), Word(g.rank()));
    std::vector<char>              seen(g.vertex_count(), 0);
    std::deque<vertex_type>        queue{g.base()};
    seen[g.base()] = 1;
    while (!queue.empty()) {
      auto v = queue.front();
      queue.pop_front();
      for (std::uint32_t l = 0; l < g.rank(); ++l) {
        for (int s : {1, -1}) {
          Letter x{l, static_cast<std::int8_t>(s)};
          auto   t = g.target(v, x);
          if (t != StallingsGraph::no_vertex && !seen[t]) {
            seen[t]  = 1;
            paths[t] = paths[v];
            paths[t].push_back(x);
            queue.push_back(t);
          }
        }
      }
    }
    return paths;
  }

  namespace {
    // Tree edges of the canonical breadth-first spanning tree, as
    // (src * rank + label) keys of outgoing slots.
    std::vector<char> tree_edges(StallingsGraph const& g) {
      std::vector<char>       tree(g.vertex_count() * g.rank(), 0);
      std::vector<char>       seen(g.vertex_count(), 0);
      std::deque<vertex_type> queue{g.base()};
      seen[g.base()] = 1;
      while (!queue.empty()) {
        auto v = queue.front();
        queue.pop_front();
        for (std::uint32_t l = 0; l < g.rank(); ++l) {
          for (int s : {1, -1}) {
            auto t = g.target(v, Letter{l, static_cast<std::int8_t>(s)});
            if (t != StallingsGraph::no_vertex && !seen[t]) {
              seen[t]                                = 1;
              auto src                               = s > 0 ? v : t;
              tree[std::size_t(src) * g.rank() + l] = 1;
              queue.push_back(t);
            }
          }
        }
      }
      return tree;
    }

    Word edge_word(std::vector<Word> const& paths, LabeledEdge e) {
      Word w = paths[e.src];
      w.push_back(Letter{e.label, 1});
      w *= inv(paths[e.dst]);
      return w;
    }
  }  // namespace

  std::vector<Word> basis(StallingsGraph const& g) {
    auto              paths = spanning_tree_paths(g);
    auto              tree  = tree_edges(g);
    std::vector<Word> result;
    for (auto const& e : g.edges()) {
      if (!tree[std::size_t(e.src) * g.rank() + e.label]) {
        result.push_back(edge_word(paths, e));
      }
    }
    return result;
  }

  StallingsGraph pullback(StallingsGraph const& g1, StallingsGraph const& g2) {
    if (g1.rank() != g2.rank()) {
      throw Error(Errc::rank_mismatch, "pullback of graphs of different rank");
    }
    auto const rank = g1.rank();
    std::unordered_map<std::uint64_t, std::uint32_t> ids;
    std::vector<std::pair<vertex_type, vertex_type>> pairs;
    auto id_of = [&](vertex_type x, vertex_type y) {
      auto key = (std::uint64_t(x) << 32) | y;
      auto [it, inserted]
          = ids.try_emplace(key, static_cast<std::uint32_t>(pairs.size()));
      if (inserted) {
        pairs.emplace_back(x, y);
      }
      return it->second;
    };
    id_of(g1.base(), g2.base());
    std::vector<LabeledEdge> edges;
    for (std::size_t i = 0; i < pairs.size(); ++i) {
      auto [x, y] = pairs[i];
      for (std::uint32_t l = 0; l < rank; ++l) {
        for (int s : {1, -1}) {
          Letter letter{l, static_cast<std::int8_t>(s)};
          auto   tx = g1.target(x, letter);
          auto   ty = g2.target(y, letter);
          if (tx == StallingsGraph::no_vertex || ty == StallingsGraph::no_vertex) {
            continue;
          }
          auto j = id_of(tx, ty);
          if (s > 0) {
            edges.push_back({static_cast<std::uint32_t>(i), j, l});
          }
        }
      }
    }
    return StallingsGraph::from_edges(rank, pairs.size(), 0, edges);
  }

  std::optional<std::size_t> index(StallingsGraph const& g) {
    if (g.edge_count() != g.vertex_count() * g.rank()) {
      return std::nullopt;
    }
    return g.vertex_count();
  }

  StallingsGraph conjugate(StallingsGraph const& g, Word const& u) {
    if (u.rank() != g.rank()) {
      throw Error(Errc::rank_mismatch, "conjugator rank differs from graph");
    }
    if (u.empty()) {
      return g;
    }
    Folder folder(g.rank(), false, {});
    for (std::size_t v = 0; v < g.vertex_count(); ++v) {
      folder.add_vertex();
    }
    for (auto const& e : g.edges()) {
      folder.add_edge(e.src, e.label, e.dst);
    }
    auto start = folder.add_vertex();
    folder.add_path(start, u, g.base());
    return folder.finish(start).graph;
  }

  bool is_subgroup_of(StallingsGraph const& g1, StallingsGraph const& g2) {
    if (g1.rank() != g2.rank()) {
      throw Error(Errc::rank_mismatch, "subgroup test across ranks");
    }
    auto words = basis(g1);
    return std::all_of(words.begin(), words.end(),
                       [&](Word const& w) { return membership(g2, w); });
  }

  StallingsGraph hall_completion(StallingsGraph const& g) {
    auto const n      = g.vertex_count();
    auto       result = detail::GraphAccess::make(g.rank(), n, g.base());
    for (auto const& e : g.edges()) {
      detail::GraphAccess::add_edge(result, e.src, e.dst, e.label);
    }
    for (std::uint32_t l = 0; l < g.rank(); ++l) {
      std::vector<vertex_type> sources, targets;
      for (vertex_type v = 0; v < n; ++v) {
        if (g.target(v, Letter{l, 1}) == StallingsGraph::no_vertex) {
          sources.push_back(v);
        }
        if (g.target(v, Letter{l, -1}) == StallingsGraph::no_vertex) {
          targets.push_back(v);
        }
      }
      assert(sources.size() == targets.size());
      for (std::size_t i = 0; i < sources.size(); ++i) {
        detail::GraphAccess::add_edge(result, sources[i], targets[i], l);
      }
    }
    return result;
  }

  std::vector<Word> free_factor_complement(StallingsGraph const& g) {
    if (index(g)) {
      throw Error(Errc::finite_index,
                  "subgroup has finite index " + std::to_string(*index(g)));
    }
    auto              paths     = spanning_tree_paths(g);
    auto              completed = hall_completion(g);
    std::vector<Word> result;
    // Ordered by label, then by source vertex.
    for (std::uint32_t l = 0; l < g.rank(); ++l) {
      for (vertex_type v = 0; v < g.vertex_count(); ++v) {
        if (g.target(v, Letter{l, 1}) == StallingsGraph::no_vertex) {
          auto t = completed.target(v, Letter{l, 1});
          result.push_back(edge_word(paths, {v, t, l}));
        }
      }
    }
    return result;
  }

  bool is_free_basis(std::size_t rank, std::vector<Word> const& words) {
    if (std::any_of(words.begin(), words.end(),
                    [](Word const& w) { return w.empty(); })) {
      return false;
    }
    return howson::rank(from_generators(rank, words)) == words.size();
  }

}  // namespace howson
