#include "howson/graphmap.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <numeric>
#include <sstream>

namespace howson {

  std::size_t Graph::add_vertex(std::string name) {
    if (find_vertex(name)) {
      throw Error(Errc::parse_error, "vertex '" + name + "' declared twice");
    }
    _vertices.push_back(std::move(name));
    return _vertices.size() - 1;
  }

  std::size_t Graph::add_edge(std::string name, std::size_t src, std::size_t dst) {
    if (find_edge(name)) {
      throw Error(Errc::parse_error, "edge '" + name + "' declared twice");
    }
    if (src >= _vertices.size() || dst >= _vertices.size()) {
      throw Error(Errc::precondition, "edge '" + name + "' has an unknown endpoint");
    }
    _edges.push_back(GraphEdge{std::move(name), src, dst});
    return _edges.size() - 1;
  }

  std::optional<std::size_t> Graph::find_vertex(std::string_view name) const {
    auto it = std::find(_vertices.begin(), _vertices.end(), name);
    if (it == _vertices.end()) {
      return std::nullopt;
    }
    return static_cast<std::size_t>(it - _vertices.begin());
  }

  std::optional<std::size_t> Graph::find_edge(std::string_view name) const {
    auto it = std::find_if(_edges.begin(), _edges.end(),
                           [&](GraphEdge const& e) { return e.name == name; });
    if (it == _edges.end()) {
      return std::nullopt;
    }
    return static_cast<std::size_t>(it - _edges.begin());
  }

  std::size_t origin(Graph const& g, OrientedEdge e) {
    auto const& x = g.edge(e.edge);
    return e.reversed ? x.dst : x.src;
  }

  std::size_t terminus(Graph const& g, OrientedEdge e) {
    auto const& x = g.edge(e.edge);
    return e.reversed ? x.src : x.dst;
  }

  EdgePath inverse(EdgePath const& p) {
    EdgePath out;
    for (auto it = p.rbegin(); it != p.rend(); ++it) {
      out.push_back(it->inverse());
    }
    return out;
  }

  EdgePath tighten(EdgePath const& p) {
    EdgePath out;
    for (auto e : p) {
      if (!out.empty() && out.back() == e.inverse()) {
        out.pop_back();
      } else {
        out.push_back(e);
      }
    }
    return out;
  }

  EdgePath GraphSelfMap::apply(EdgePath const& p) const {
    EdgePath out;
    for (auto e : p) {
      auto const& image = edge_map.at(e.edge);
      if (e.reversed) {
        auto inv = inverse(image);
        out.insert(out.end(), inv.begin(), inv.end());
      } else {
        out.insert(out.end(), image.begin(), image.end());
      }
    }
    return tighten(out);
  }

  GraphSelfMap GraphSelfMap::from_endomorphism(Endomorphism const& phi) {
    GraphSelfMap m;
    m.graph.add_vertex("v");
    for (std::uint32_t g = 0; g < phi.rank(); ++g) {
      m.graph.add_edge(format_letter(Letter{g, 1}, phi.rank()), 0, 0);
    }
    m.vertex_map = {0};
    for (auto const& image : phi.images()) {
      EdgePath path;
      for (Letter x : image) {
        path.push_back(OrientedEdge{x.generator, x.sign < 0});
      }
      m.edge_map.push_back(std::move(path));
    }
    return m;
  }

  std::vector<std::size_t> Filtration::level(std::size_t r) const {
    std::vector<std::size_t> out;
    for (std::size_t i = 0; i < r && i < strata.size(); ++i) {
      out.insert(out.end(), strata[i].begin(), strata[i].end());
    }
    std::sort(out.begin(), out.end());
    return out;
  }

  // File format

  namespace {
    std::vector<std::string> split(std::string const& line) {
      std::istringstream       in(line.substr(0, line.find('#')));
      std::vector<std::string> out;
      for (std::string token; in >> token;) {
        out.push_back(token);
      }
      return out;
    }

    [[noreturn]] void bad_line(std::size_t line, std::string const& what) {
      throw Error(Errc::parse_error, "line " + std::to_string(line) + ": " + what);
    }

    std::string format_path(Graph const& g, EdgePath const& p) {
      std::string out;
      for (auto e : p) {
        if (!out.empty()) {
          out += ' ';
        }
        out += (e.reversed ? "-" : "") + g.edge(e.edge).name;
      }
      return out;
    }
  }  // namespace

  GraphMapFile GraphMapFile::parse(std::string_view text) {
    GraphMapFile                                           file;
    auto&                                                  g = file.map.graph;
    std::vector<std::optional<std::size_t>>                vmap;
    std::vector<std::optional<EdgePath>>                   emap;
    std::vector<std::pair<std::size_t, std::vector<std::string>>> pending;
    std::istringstream                                     in{std::string(text)};
    std::size_t                                            n = 0;

    auto vertex = [&](std::string const& name, std::size_t line) {
      auto v = g.find_vertex(name);
      if (!v) {
        bad_line(line, "unknown vertex '" + name + "'");
      }
      return *v;
    };
    auto edge = [&](std::string const& name, std::size_t line) {
      auto e = g.find_edge(name);
      if (!e) {
        bad_line(line, "unknown edge '" + name + "'");
      }
      return *e;
    };

    for (std::string line; std::getline(in, line);) {
      ++n;
      auto tokens = split(line);
      if (tokens.empty()) {
        continue;
      }
      auto const& key = tokens[0];
      if (key == "vertex") {
        if (tokens.size() != 2) {
          bad_line(n, "expected 'vertex <id>'");
        }
        g.add_vertex(tokens[1]);
        vmap.emplace_back();
      } else if (key == "edge") {
        if (tokens.size() != 4 || tokens[1].starts_with('-')) {
          bad_line(n, "expected 'edge <id> <src> <dst>'");
        }
        g.add_edge(tokens[1], vertex(tokens[2], n), vertex(tokens[3], n));
        emap.emplace_back();
      } else if (key == "vmap" || key == "emap" || key == "stratum") {
        // Resolved once all vertices and edges are known.
        pending.emplace_back(n, std::move(tokens));
      } else {
        bad_line(n, "unknown keyword '" + key + "'");
      }
    }

    for (auto const& [line, tokens] : pending) {
      auto const& key = tokens[0];
      if (key == "vmap") {
        if (tokens.size() != 3) {
          bad_line(line, "expected 'vmap <id> <id>'");
        }
        auto v = vertex(tokens[1], line);
        if (vmap[v]) {
          bad_line(line, "vertex '" + tokens[1] + "' mapped twice");
        }
        vmap[v] = vertex(tokens[2], line);
      } else if (key == "emap") {
        if (tokens.size() < 2) {
          bad_line(line, "expected 'emap <id> <path>'");
        }
        auto e = edge(tokens[1], line);
        if (emap[e]) {
          bad_line(line, "edge '" + tokens[1] + "' mapped twice");
        }
        EdgePath path;
        for (std::size_t i = 2; i < tokens.size(); ++i) {
          bool reversed = tokens[i].starts_with('-');
          path.push_back(OrientedEdge{edge(tokens[i].substr(reversed ? 1 : 0), line),
                                      reversed});
        }
        emap[e] = std::move(path);
      } else {
        if (tokens.size() < 2) {
          bad_line(line, "expected 'stratum <edge-id> ...'");
        }
        std::vector<std::size_t> stratum;
        for (std::size_t i = 1; i < tokens.size(); ++i) {
          stratum.push_back(edge(tokens[i], line));
        }
        file.filtration.strata.push_back(std::move(stratum));
      }
    }

    for (std::size_t v = 0; v < vmap.size(); ++v) {
      if (!vmap[v]) {
        throw Error(Errc::parse_error, "no vmap line for vertex '" + g.vertex_name(v) + "'");
      }
      file.map.vertex_map.push_back(*vmap[v]);
    }
    for (std::size_t e = 0; e < emap.size(); ++e) {
      if (!emap[e]) {
        throw Error(Errc::parse_error, "no emap line for edge '" + g.edge(e).name + "'");
      }
      file.map.edge_map.push_back(std::move(*emap[e]));
    }
    return file;
  }

  std::string GraphMapFile::to_text() const {
    auto const&        g = map.graph;
    std::ostringstream out;
    for (std::size_t v = 0; v < g.vertex_count(); ++v) {
      out << "vertex " << g.vertex_name(v) << '\n';
    }
    for (auto const& e : g.edges()) {
      out << "edge " << e.name << ' ' << g.vertex_name(e.src) << ' '
          << g.vertex_name(e.dst) << '\n';
    }
    for (std::size_t v = 0; v < g.vertex_count(); ++v) {
      out << "vmap " << g.vertex_name(v) << ' ' << g.vertex_name(map.vertex_map[v])
          << '\n';
    }
    for (std::size_t e = 0; e < g.edge_count(); ++e) {
      out << "emap " << g.edge(e).name;
      if (!map.edge_map[e].empty()) {
        out << ' ' << format_path(g, map.edge_map[e]);
      }
      out << '\n';
    }
    for (auto const& s : filtration.strata) {
      out << "stratum";
      for (auto e : s) {
        out << ' ' << g.edge(e).name;
      }
      out << '\n';
    }
    return out.str();
  }

  // Maps

  Diagnostics validate(GraphSelfMap const& m) {
    Diagnostics d;
    auto const& g = m.graph;
    if (m.vertex_map.size() != g.vertex_count()) {
      d.fail("vertex map has " + std::to_string(m.vertex_map.size())
             + " entries for " + std::to_string(g.vertex_count()) + " vertices");
      return d;
    }
    if (m.edge_map.size() != g.edge_count()) {
      d.fail("edge map has " + std::to_string(m.edge_map.size()) + " entries for "
             + std::to_string(g.edge_count()) + " edges");
      return d;
    }
    for (std::size_t v = 0; v < g.vertex_count(); ++v) {
      if (m.vertex_map[v] >= g.vertex_count()) {
        d.fail("vertex '" + g.vertex_name(v) + "' maps outside the graph");
      }
    }
    if (!d) {
      return d;
    }
    for (std::size_t e = 0; e < g.edge_count(); ++e) {
      auto const& name  = g.edge(e).name;
      auto const& path  = m.edge_map[e];
      auto        start = m.vertex_map[g.edge(e).src];
      auto        end   = m.vertex_map[g.edge(e).dst];
      if (std::any_of(path.begin(), path.end(),
                      [&](OrientedEdge x) { return x.edge >= g.edge_count(); })) {
        d.fail("image of edge '" + name + "' uses an unknown edge");
        continue;
      }
      auto at = start;
      bool ok = true;
      for (std::size_t i = 0; i < path.size() && ok; ++i) {
        if (origin(g, path[i]) != at) {
          d.fail("image of edge '" + name + "' is not a path: step "
                 + std::to_string(i + 1) + " does not start where step "
                 + std::to_string(i) + " ends");
          ok = false;
        }
        at = terminus(g, path[i]);
      }
      if (ok && at != end) {
        d.fail("image of edge '" + name + "' runs from '" + g.vertex_name(start)
               + "' to '" + g.vertex_name(at) + "' instead of to '"
               + g.vertex_name(end) + "'");
      }
    }
    return d;
  }

  GraphSelfMap power(GraphSelfMap const& m, std::size_t n) {
    GraphSelfMap result{m.graph, {}, {}};
    result.vertex_map.resize(m.graph.vertex_count());
    std::iota(result.vertex_map.begin(), result.vertex_map.end(), std::size_t{0});
    for (std::size_t e = 0; e < m.graph.edge_count(); ++e) {
      result.edge_map.push_back({OrientedEdge{e, false}});
    }
    for (std::size_t i = 0; i < n; ++i) {
      for (auto& v : result.vertex_map) {
        v = m.vertex_map.at(v);
      }
      for (auto& p : result.edge_map) {
        p = m.apply(p);
      }
    }
    return result;
  }

  TransitionMatrix transition_matrix(GraphSelfMap const& m) {
    auto const       n = m.graph.edge_count();
    TransitionMatrix t(n, std::vector<std::size_t>(n, 0));
    for (std::size_t e = 0; e < n; ++e) {
      for (auto x : m.edge_map.at(e)) {
        ++t[e][x.edge];
      }
    }
    return t;
  }

  // Components and Euler characteristic

  namespace {
    struct UnionFind {
      std::vector<std::size_t> parent;
      explicit UnionFind(std::size_t n) : parent(n) {
        std::iota(parent.begin(), parent.end(), std::size_t{0});
      }
      std::size_t find(std::size_t x) {
        while (parent[x] != x) {
          x = parent[x] = parent[parent[x]];
        }
        return x;
      }
      void unite(std::size_t x, std::size_t y) {
        x = find(x);
        y = find(y);
        if (x != y) {
          parent[std::max(x, y)] = std::min(x, y);
        }
      }
    };

    std::vector<Component> group(Graph const&                    g,
                                 std::vector<char> const&        present,
                                 std::vector<std::size_t> const& edges) {
      UnionFind uf(g.vertex_count());
      for (auto e : edges) {
        uf.unite(g.edge(e).src, g.edge(e).dst);
      }
      std::map<std::size_t, Component> by_root;
      for (std::size_t v = 0; v < g.vertex_count(); ++v) {
        if (present[v]) {
          by_root[uf.find(v)].vertices.push_back(v);
        }
      }
      for (auto e : edges) {
        by_root[uf.find(g.edge(e).src)].edges.push_back(e);
      }
      std::vector<Component> out;
      for (auto& [root, c] : by_root) {
        std::sort(c.edges.begin(), c.edges.end());
        out.push_back(std::move(c));
      }
      return out;
    }

    std::vector<std::size_t> all_edges(Graph const& g) {
      std::vector<std::size_t> out(g.edge_count());
      std::iota(out.begin(), out.end(), std::size_t{0});
      return out;
    }
  }  // namespace

  std::vector<Component> components(Graph const& g, std::vector<std::size_t> const& edges) {
    std::vector<char> present(g.vertex_count(), 0);
    for (auto e : edges) {
      present[g.edge(e).src] = present[g.edge(e).dst] = 1;
    }
    return group(g, present, edges);
  }

  std::vector<Component> components(Graph const& g) {
    return group(g, std::vector<char>(g.vertex_count(), 1), all_edges(g));
  }

  long euler_characteristic(Graph const& g) {
    return static_cast<long>(g.vertex_count()) - static_cast<long>(g.edge_count());
  }

  long euler_characteristic(Graph const& g, std::vector<std::size_t> const& edges) {
    long chi = 0;
    for (auto const& c : components(g, edges)) {
      chi += c.euler_characteristic();
    }
    return chi;
  }

  // Filtrations

  Diagnostics verify_filtration(GraphSelfMap const&        m,
                                Filtration const&          f,
                                std::optional<std::size_t> through) {
    auto d = validate(m);
    if (!d) {
      return d;
    }
    auto const&              g = m.graph;
    auto                     name = [&](std::size_t e) { return "'" + g.edge(e).name + "'"; };
    std::size_t const        unset = f.strata.size();
    std::vector<std::size_t> stratum_of(g.edge_count(), unset);
    for (std::size_t r = 0; r < f.strata.size(); ++r) {
      for (auto e : f.strata[r]) {
        if (e >= g.edge_count()) {
          d.fail("stratum " + std::to_string(r + 1) + " names an unknown edge");
          return d;
        }
        if (stratum_of[e] != unset) {
          d.fail("edge " + name(e) + " lies in strata " + std::to_string(stratum_of[e] + 1)
                 + " and " + std::to_string(r + 1));
          return d;
        }
        stratum_of[e] = r;
      }
    }
    for (std::size_t e = 0; e < g.edge_count(); ++e) {
      if (stratum_of[e] == unset) {
        d.fail("edge " + name(e) + " lies in no stratum");
        return d;
      }
    }

    auto const last = std::min(through.value_or(f.strata.size()), f.strata.size());
    for (std::size_t r = 0; r < last; ++r) {
      auto const level = std::to_string(r + 1);
      if (f.strata[r].size() != 1) {
        d.fail("stratum " + level + " is not a single edge");
        return d;
      }
      auto const  e     = f.strata[r][0];
      auto const& image = m.edge_map[e];
      for (auto x : image) {
        if (stratum_of[x.edge] > r) {
          d.fail("V^" + level + " is not invariant: the image of " + name(e)
                 + " crosses " + name(x.edge));
          return d;
        }
      }
      if (image.empty() || image.front() != OrientedEdge{e, false}) {
        d.fail("the image of e_" + level + " = " + name(e) + " does not begin with it");
        return d;
      }
      for (std::size_t i = 1; i < image.size(); ++i) {
        if (stratum_of[image[i].edge] >= r) {
          d.fail("P_" + level + " in the image of " + name(e) + " leaves V^" + std::to_string(r));
          return d;
        }
      }
      auto const q = g.edge(e).dst;
      if (m.vertex_map[q] != q) {
        d.fail("P_" + level + " is not a closed path at a fixed vertex: '"
               + g.vertex_name(q) + "' is not fixed");
        return d;
      }
    }
    return d;
  }

  std::optional<NegativeChi> smallest_negative_chi(Graph const& g, Filtration const& f) {
    for (std::size_t r = 1; r <= f.strata.size(); ++r) {
      for (auto& c : components(g, f.level(r))) {
        if (c.euler_characteristic() < 0) {
          return NegativeChi{r, std::move(c)};
        }
      }
    }
    return std::nullopt;
  }

  // Spanning trees and rewriting

  namespace {
    constexpr std::size_t none = static_cast<std::size_t>(-1);

    //! Breadth-first spanning tree of the subgraph on the given edges,
    //! visiting edges in increasing order at each vertex.
    class Tree {
     public:
      Tree(Graph const& g, std::vector<std::size_t> const& edges, std::size_t root)
          : _g(&g), _into(g.vertex_count(), {none, false}), _tree(g.edge_count(), 0),
            _reached(g.vertex_count(), 0) {
        std::vector<std::vector<std::size_t>> incident(g.vertex_count());
        for (auto e : edges) {
          incident[g.edge(e).src].push_back(e);
          if (g.edge(e).dst != g.edge(e).src) {
            incident[g.edge(e).dst].push_back(e);
          }
        }
        std::deque<std::size_t> queue{root};
        _reached[root] = 1;
        while (!queue.empty()) {
          auto v = queue.front();
          queue.pop_front();
          for (auto e : incident[v]) {
            OrientedEdge step{e, g.edge(e).src != v};
            auto         u = terminus(g, step);
            if (!_reached[u]) {
              _reached[u] = 1;
              _into[u]    = step;
              _tree[e]    = 1;
              queue.push_back(u);
            }
          }
        }
        for (auto e : edges) {
          if (!_tree[e]) {
            _generators.push_back(e);
          }
        }
      }

      [[nodiscard]] bool reaches(std::size_t v) const {
        return _reached[v] != 0;
      }

      //! The tree path from the root to v.
      [[nodiscard]] EdgePath path(std::size_t v) const {
        if (!reaches(v)) {
          throw Error(Errc::structure_error, "vertex '" + _g->vertex_name(v)
                                                 + "' is not in the component");
        }
        EdgePath out;
        while (_into[v].edge != none) {
          out.push_back(_into[v]);
          v = origin(*_g, _into[v]);
        }
        std::reverse(out.begin(), out.end());
        return out;
      }

      //! Tree path from u to v.
      [[nodiscard]] EdgePath path(std::size_t u, std::size_t v) const {
        auto p = inverse(path(u));
        auto q = path(v);
        p.insert(p.end(), q.begin(), q.end());
        return tighten(p);
      }

      //! The loop at the root running through edge e.
      [[nodiscard]] EdgePath loop(std::size_t e) const {
        auto p = path(_g->edge(e).src);
        p.push_back(OrientedEdge{e, false});
        auto q = inverse(path(_g->edge(e).dst));
        p.insert(p.end(), q.begin(), q.end());
        return p;
      }

      //! Non-tree edges in increasing order; they form a basis of pi_1.
      [[nodiscard]] std::vector<std::size_t> const& generators() const {
        return _generators;
      }

      //! Rewrites a path as a word in the generators, dropping tree edges.
      [[nodiscard]] Word word(EdgePath const& p, std::size_t rank) const {
        std::vector<Letter> letters;
        for (auto x : p) {
          auto it = std::lower_bound(_generators.begin(), _generators.end(), x.edge);
          if (it != _generators.end() && *it == x.edge) {
            letters.push_back(Letter{static_cast<std::uint32_t>(it - _generators.begin()),
                                     static_cast<std::int8_t>(x.reversed ? -1 : 1)});
          } else if (!_tree[x.edge]) {
            throw Error(Errc::structure_error,
                        "path leaves the component through '" + _g->edge(x.edge).name + "'");
          }
        }
        return Word::reduce(letters, rank);
      }

     private:
      Graph const*              _g;
      std::vector<OrientedEdge> _into;
      std::vector<char>         _tree;
      std::vector<char>         _reached;
      std::vector<std::size_t>  _generators;
    };

    //! Prunes vertices of degree at most one; what remains must be a single
    //! embedded cycle, returned starting at its least vertex.
    EdgePath retract_to_cycle(Graph const& g, Component const& c) {
      std::map<std::size_t, std::size_t> degree;
      std::vector<std::size_t>           live = c.edges;
      for (auto v : c.vertices) {
        degree[v] = 0;
      }
      for (auto e : live) {
        ++degree[g.edge(e).src];
        ++degree[g.edge(e).dst];
      }
      for (bool changed = true; changed;) {
        changed = false;
        for (auto it = live.begin(); it != live.end(); ++it) {
          auto s = g.edge(*it).src, t = g.edge(*it).dst;
          if (s != t && (degree[s] == 1 || degree[t] == 1)) {
            --degree[s];
            --degree[t];
            live.erase(it);
            changed = true;
            break;
          }
        }
      }
      if (live.empty()) {
        throw Error(Errc::structure_error, "component is a tree, not a cycle");
      }
      for (auto const& [v, d] : degree) {
        if (d != 0 && d != 2) {
          throw Error(Errc::structure_error,
                      "component does not retract to a cycle at '" + g.vertex_name(v) + "'");
        }
      }
      auto const start = g.edge(live.front()).src;
      EdgePath   cycle;
      auto       at = start;
      std::vector<char> used(g.edge_count(), 0);
      do {
        auto it = std::find_if(live.begin(), live.end(), [&](std::size_t e) {
          return !used[e] && (g.edge(e).src == at || g.edge(e).dst == at);
        });
        if (it == live.end()) {
          throw Error(Errc::structure_error, "retract is not a single cycle");
        }
        used[*it] = 1;
        OrientedEdge step{*it, g.edge(*it).src != at};
        cycle.push_back(step);
        at = terminus(g, step);
      } while (at != start);
      if (cycle.size() != live.size()) {
        throw Error(Errc::structure_error, "retract is not a single cycle");
      }
      return cycle;
    }

    EdgePath concat(std::initializer_list<EdgePath> parts) {
      EdgePath out;
      for (auto const& p : parts) {
        out.insert(out.end(), p.begin(), p.end());
      }
      return out;
    }

    std::string word_text(Word const& w, std::vector<std::string> const& names) {
      if (w.empty()) {
        return "1";
      }
      std::string out;
      for (Letter x : w) {
        if (!out.empty()) {
          out += ' ';
        }
        out += names[x.generator];
        if (x.sign < 0) {
          out += "^-1";
        }
      }
      return out;
    }
  }  // namespace

  // Mapping tori

  std::string Presentation::to_string() const {
    std::string out = "< ";
    for (std::size_t i = 0; i < generators.size(); ++i) {
      out += (i ? ", " : "") + generators[i];
    }
    out += " |";
    for (std::size_t i = 0; i < relations.size(); ++i) {
      out += (i ? ", " : " ") + word_text(relations[i].lhs, generators) + " = "
             + word_text(relations[i].rhs, generators);
    }
    return out + " >";
  }

  std::size_t Presentation::abelianization_rank() const {
    auto const                     n = generators.size();
    std::vector<std::vector<long long>> a;
    for (auto const& rel : relations) {
      std::vector<long long> row(n, 0);
      for (Letter x : rel.lhs) {
        row[x.generator] += x.sign;
      }
      for (Letter x : rel.rhs) {
        row[x.generator] -= x.sign;
      }
      a.push_back(std::move(row));
    }
    // Fraction-free Gaussian elimination (Bareiss) for the rank over Q.
    std::size_t rank = 0;
    long long   prev = 1;
    for (std::size_t col = 0; col < n && rank < a.size(); ++col) {
      auto pivot = rank;
      while (pivot < a.size() && a[pivot][col] == 0) {
        ++pivot;
      }
      if (pivot == a.size()) {
        continue;
      }
      std::swap(a[rank], a[pivot]);
      for (auto i = rank + 1; i < a.size(); ++i) {
        for (auto j = col + 1; j < n; ++j) {
          a[i][j] = (a[rank][col] * a[i][j] - a[i][col] * a[rank][j]) / prev;
        }
        a[i][col] = 0;
      }
      prev = a[rank][col];
      ++rank;
    }
    return n - rank;
  }

  namespace {
    Presentation torus(GraphSelfMap const& m, std::vector<Component> const& parts) {
      auto const& g = m.graph;
      // The least fixed vertex; edges of other components do not contribute
      // to pi_1 at the base.
      std::size_t              base = none;
      std::vector<std::size_t> component_edges;
      for (auto const& c : parts) {
        for (auto v : c.vertices) {
          if (m.vertex_map[v] == v && (base == none || v < base)) {
            base            = v;
            component_edges = c.edges;
          }
        }
      }
      if (base == none) {
        throw Error(Errc::filtration_violation, "the map fixes no vertex");
      }
      Tree         tree(g, component_edges, base);
      Presentation p;
      p.base       = base;
      auto const n = tree.generators().size();
      for (auto e : tree.generators()) {
        p.generators.push_back(g.edge(e).name);
      }
      p.generators.push_back("t");
      auto const t = static_cast<std::uint32_t>(n);
      for (std::uint32_t i = 0; i < n; ++i) {
        auto lhs  = Word::reduce(std::vector<Letter>{{t, 1}, {i, 1}, {t, -1}}, n + 1);
        auto loop = tree.loop(tree.generators()[i]);
        p.relations.push_back(Relation{lhs, tree.word(m.apply(loop), n + 1)});
      }
      return p;
    }
  }  // namespace

  Presentation mapping_torus_presentation(GraphSelfMap const& m) {
    if (auto d = validate(m); !d) {
      throw Error(Errc::filtration_violation, d.messages.front());
    }
    return torus(m, components(m.graph));
  }

  Presentation mapping_torus_presentation(GraphSelfMap const&        m,
                                          Filtration const&          f,
                                          std::optional<std::size_t> r) {
    auto const top = std::min(r.value_or(f.strata.size()), f.strata.size());
    if (auto d = verify_filtration(m, f, top); !d) {
      throw Error(Errc::filtration_violation, d.messages.front());
    }
    auto const edges = f.level(top);
    if (edges.empty()) {
      throw Error(Errc::filtration_violation, "V^" + std::to_string(top) + " is empty");
    }
    return torus(m, components(m.graph, edges));
  }

  // Polynomial witnesses

  std::string_view to_string(WitnessCase c) noexcept {
    switch (c) {
      case WitnessCase::disconnected:
        return "Disconnected";
      case WitnessCase::connected:
        return "Connected";
      case WitnessCase::degenerate:
        return "Connected-degenerate";
    }
    return "?";
  }

  namespace {
    RawHnnWord raw(Word const& w) {
      RawHnnWord out;
      for (Letter x : w) {
        out.push_back(HnnToken::base(x));
      }
      return out;
    }

    RawHnnWord commutator(RawHnnWord const& x, RawHnnWord const& y) {
      RawHnnWord out = x;
      out.insert(out.end(), y.begin(), y.end());
      for (auto it = x.rbegin(); it != x.rend(); ++it) {
        out.push_back(it->inverse());
      }
      for (auto it = y.rbegin(); it != y.rend(); ++it) {
        out.push_back(it->inverse());
      }
      return out;
    }
  }  // namespace

  RawHnnWord PolynomialWitness::a_raw() const {
    return raw(a);
  }

  RawHnnWord PolynomialWitness::b_raw() const {
    return raw(b);
  }

  RawHnnWord PolynomialWitness::z_raw() const {
    return RawHnnWord(z_power, HnnToken::t());
  }

  PolynomialWitness polynomial_witness(GraphSelfMap const& m, Filtration const& f) {
    if (auto d = validate(m); !d) {
      throw Error(Errc::filtration_violation, d.messages.front());
    }
    if (classify_growth(transition_matrix(m)).is_exponential()) {
      throw Error(Errc::exponential_stratum,
                  "some edge image crosses its own stratum more than once");
    }
    if (auto d = verify_filtration(m, f); !d) {
      throw Error(Errc::filtration_violation, d.messages.front());
    }
    auto found = smallest_negative_chi(m.graph, f);
    if (!found) {
      throw Error(Errc::no_negative_chi, "no component of any V^r has negative Euler characteristic");
    }
    auto const& g  = m.graph;
    auto const  r  = found->r;
    auto const  er = f.strata[r - 1].front();
    auto const& J  = found->component;
    if (!std::binary_search(J.edges.begin(), J.edges.end(), er)) {
      throw Error(Errc::structure_error, "e_r does not lie in J");
    }
    auto const p = g.edge(er).src;
    auto const q = g.edge(er).dst;

    Tree        tree(g, J.edges, p);
    auto const  rank = tree.generators().size();
    std::vector<Word> images;
    for (auto e : tree.generators()) {
      images.push_back(tree.word(m.apply(tree.loop(e)), rank));
    }

    PolynomialWitness w{WitnessCase::connected, r, er, p, J, {}, tree.generators(),
                        Endomorphism(rank, std::move(images)), Word(rank), Word(rank), 2};
    auto const& phi = w.phi;

    std::vector<std::size_t> rest;
    std::copy_if(J.edges.begin(), J.edges.end(), std::back_inserter(rest),
                 [&](std::size_t e) { return e != er; });
    auto parts = components(g, rest);
    // Endpoints of e_r that touch nothing else would be isolated vertices.
    for (auto v : {p, q}) {
      if (std::none_of(parts.begin(), parts.end(), [&](Component const& c) {
            return std::binary_search(c.vertices.begin(), c.vertices.end(), v);
          })) {
        throw Error(Errc::structure_error,
                    "endpoint '" + g.vertex_name(v) + "' of e_r lies on no other edge");
      }
    }
    auto part_of = [&](std::size_t v) -> Component const& {
      for (auto const& c : parts) {
        if (std::binary_search(c.vertices.begin(), c.vertices.end(), v)) {
          return c;
        }
      }
      throw Error(Errc::structure_error, "vertex outside J - e_r");
    };
    // The loop at the root of c's tree that goes once around c's retract.
    auto around = [&](Component const& c, std::size_t root, EdgePath& cycle) {
      cycle = retract_to_cycle(g, c);
      Tree t(g, c.edges, root);
      auto lead = t.path(root, origin(g, cycle.front()));
      return tighten(concat({lead, cycle, inverse(lead)}));
    };
    EdgePath const er_path{OrientedEdge{er, false}};

    std::vector<Word> fixed_checks;
    if (parts.size() == 2) {
      w.kind = WitnessCase::disconnected;
      EdgePath c1, c2;
      auto     alpha = around(part_of(p), p, c1);
      auto     beta  = concat({er_path, around(part_of(q), q, c2), inverse(er_path)});
      w.cycles       = {c1, c2};
      w.a            = tree.word(alpha, rank);
      w.b            = tree.word(beta, rank);
      fixed_checks   = {w.a, w.b};
    } else if (parts.size() == 1) {
      EdgePath c;
      auto     gamma = tree.word(around(parts.front(), p, c), rank);
      Tree     t(g, parts.front().edges, q);
      auto     beta  = tree.word(concat({er_path, t.path(q, p)}), rank);
      w.cycles       = {c};
      fixed_checks   = {gamma};
      if (phi.apply(gamma) == gamma && phi.apply(beta) == beta) {
        w.kind    = WitnessCase::degenerate;
        w.a       = gamma;
        w.b       = beta;
        w.z_power = 1;
      } else {
        w.kind = WitnessCase::connected;
        w.a    = gamma;
        w.b    = beta * gamma * inv(beta);
      }
    } else {
      throw Error(Errc::structure_error,
                  "J - e_r has " + std::to_string(parts.size()) + " components");
    }
    for (auto const& x : fixed_checks) {
      if (!are_conjugate(iterate(phi, x, 2), x)) {
        throw Error(Errc::structure_error,
                    "the square of the map does not fix the cycle '" + x.to_string()
                        + "' up to conjugacy");
      }
    }

    w.ab_free = is_free_basis(rank, {w.a, w.b});
    if (is_injective(phi)) {
      AscendingHnn G(phi);
      w.hnn_checked   = true;
      w.a_commutes    = G.normal_form(commutator(w.a_raw(), w.z_raw())).is_identity();
      w.b_commutes    = G.normal_form(commutator(w.b_raw(), w.z_raw())).is_identity();
      w.ab_nontrivial = !G.normal_form(commutator(w.a_raw(), w.b_raw())).is_identity();
      if (!is_surjective(phi)) {
        w.notes.push_back("the induced map on pi_1(J) is injective but not onto");
      }
    } else {
      w.notes.push_back("the induced map on pi_1(J) is not injective; relation checks skipped");
    }
    return w;
  }

}  // namespace howson
