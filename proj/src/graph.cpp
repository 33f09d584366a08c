#include "graph.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <set>

#include "affine.hpp"

namespace gog {

int Graph::add_vertex(const std::string& name, GroupPtr group) {
    if (vindex_.count(name)) throw Error(Errc::invariant, "duplicate vertex " + name);
    int v = nv();
    vname_.push_back(name);
    vgroup_.push_back(std::move(group));
    vindex_[name] = v;
    stars_valid_ = false;
    return v;
}

int Graph::add_edge(const std::string& name, const std::string& inv_name, int o, int t, GroupPtr group, Mono alpha,
                    Mono omega) {
    if (name == inv_name) throw Error(Errc::invariant, "edge " + name + " is its own inverse");
    if (eindex_.count(name) || eindex_.count(inv_name)) throw Error(Errc::invariant, "duplicate edge " + name);
    if (o < 0 || o >= nv() || t < 0 || t >= nv()) throw Error(Errc::unknown_vertex, "edge " + name + " has an unknown endpoint");
    if (!alpha.dom()->same(*group) || !omega.dom()->same(*group))
        throw Error(Errc::owner_mismatch, "edge map of " + name + " does not start at the edge group");
    if (!alpha.cod()->same(*vgroup_[o]) || !omega.cod()->same(*vgroup_[t]))
        throw Error(Errc::owner_mismatch, "edge map of " + name + " does not land in the endpoint group");
    int e = ne();
    ename_.push_back(name);
    ename_.push_back(inv_name);
    egroup_.push_back(group);
    egroup_.push_back(group);
    inv_.push_back(e + 1);
    inv_.push_back(e);
    origin_.push_back(o);
    origin_.push_back(t);
    alpha_.push_back(std::move(alpha));
    alpha_.push_back(std::move(omega));
    eindex_[name] = e;
    eindex_[inv_name] = e + 1;
    stars_valid_ = false;
    return e;
}

std::optional<int> Graph::vertex(const std::string& name) const {
    auto it = vindex_.find(name);
    if (it == vindex_.end()) return std::nullopt;
    return it->second;
}

std::optional<int> Graph::edge(const std::string& name) const {
    auto it = eindex_.find(name);
    if (it == eindex_.end()) return std::nullopt;
    return it->second;
}

int Graph::vertex_or_throw(const std::string& name) const {
    auto v = vertex(name);
    if (!v) throw Error(Errc::unknown_vertex, "unknown vertex " + name);
    return *v;
}

const std::vector<std::vector<int>>& Graph::stars() const {
    if (!stars_valid_) {
        stars_.assign(nv(), {});
        for (int e = 0; e < ne(); ++e) stars_[origin_[e]].push_back(e);
        stars_valid_ = true;
    }
    return stars_;
}

std::vector<int> Graph::star(int v) const { return stars().at(v); }

void Graph::validate() const {
    for (int e = 0; e < ne(); ++e) {
        int f = inv_[e];
        if (f == e || inv_[f] != e) throw Error(Errc::invariant, "edge involution broken at " + ename_[e]);
        if (!egroup_[e]->same(*egroup_[f])) throw Error(Errc::invariant, "edge " + ename_[e] + " and its inverse carry different groups");
        if (!alpha_[e].dom()->same(*egroup_[e]) || !alpha_[e].cod()->same(*vgroup_[origin_[e]]))
            throw Error(Errc::invariant, "edge map of " + ename_[e] + " has wrong domain or codomain");
    }
    if (basepoint && (*basepoint < 0 || *basepoint >= nv())) throw Error(Errc::unknown_vertex, "basepoint is not a vertex");
}

Path trivial_path(const Graph& g, int u) { return element_path(g, u, g.vgroup(u)->id()); }

Path element_path(const Graph& g, int u, Elem a) {
    if (u < 0 || u >= g.nv()) throw Error(Errc::unknown_vertex, "unknown vertex");
    Path p;
    p.start = u;
    p.elems = {a};
    return p;
}

Path edge_path(const Graph& g, int e) {
    Path p;
    p.start = g.origin(e);
    p.elems = {g.vgroup(g.origin(e))->id(), g.vgroup(g.target(e))->id()};
    p.edges = {e};
    return p;
}

int path_end(const Graph& g, const Path& p) { return p.edges.empty() ? p.start : g.target(p.edges.back()); }

bool is_circuit(const Graph& g, const Path& p) { return path_end(g, p) == p.start; }

void check_path(const Graph& g, const Path& p) {
    if (p.start < 0 || p.start >= g.nv()) throw Error(Errc::unknown_vertex, "path starts at an unknown vertex");
    if (p.elems.size() != p.edges.size() + 1) throw Error(Errc::owner_mismatch, "path has mismatched elements and edges");
    int v = p.start;
    if (!g.vgroup(v)->contains(p.elems[0])) throw Error(Errc::owner_mismatch, "path element outside its vertex group");
    for (std::size_t i = 0; i < p.edges.size(); ++i) {
        int e = p.edges[i];
        if (e < 0 || e >= g.ne()) throw Error(Errc::owner_mismatch, "path uses an unknown edge");
        if (g.origin(e) != v) throw Error(Errc::adjacency, "consecutive path edges are not adjacent");
        v = g.target(e);
        if (!g.vgroup(v)->contains(p.elems[i + 1])) throw Error(Errc::owner_mismatch, "path element outside its vertex group");
    }
}

std::string format_path(const Graph& g, const Path& p) {
    std::string s = "(" + g.vgroup(p.start)->format(p.elems[0]);
    for (std::size_t i = 0; i < p.edges.size(); ++i) {
        int e = p.edges[i];
        s += ", " + g.ename(e) + ", " + g.vgroup(g.target(e))->format(p.elems[i + 1]);
    }
    return s + ")";
}

Path concat(const Graph& g, const Path& p, const Path& q) {
    int v = path_end(g, p);
    if (v != q.start) throw Error(Errc::adjacency, "paths are not consecutive");
    Path r = p;
    r.elems.back() = g.vgroup(v)->op(r.elems.back(), q.elems[0]);
    r.elems.insert(r.elems.end(), q.elems.begin() + 1, q.elems.end());
    r.edges.insert(r.edges.end(), q.edges.begin(), q.edges.end());
    return r;
}

Path invert(const Graph& g, const Path& p) {
    Path r;
    r.start = path_end(g, p);
    r.elems.clear();
    int k = p.length();
    int v = r.start;
    r.elems.push_back(g.vgroup(v)->inv(p.elems[k]));
    for (int i = k - 1; i >= 0; --i) {
        int e = g.inv(p.edges[i]);
        r.edges.push_back(e);
        v = g.target(e);
        r.elems.push_back(g.vgroup(v)->inv(p.elems[i]));
    }
    return r;
}

Path left_mul(const Graph& g, Elem a, const Path& p) {
    Path r = p;
    r.elems[0] = g.vgroup(p.start)->op(a, r.elems[0]);
    return r;
}

Path right_mul(const Graph& g, const Path& p, Elem a) {
    Path r = p;
    r.elems.back() = g.vgroup(path_end(g, p))->op(r.elems.back(), a);
    return r;
}

std::vector<int> redexes(const Graph& g, const Path& p) {
    std::vector<int> out;
    for (int i = 1; i < p.length(); ++i) {
        int e = p.edges[i - 1];
        if (p.edges[i] == g.inv(e) && g.omega(e).in_image(p.elems[i])) out.push_back(i);
    }
    return out;
}

Path rewrite_at(const Graph& g, const Path& p, int i) {
    int e = p.edges.at(i - 1);
    if (p.edges.at(i) != g.inv(e)) throw Error(Errc::invariant, "not a reduction position");
    auto x = g.omega(e).preimage(p.elems[i]);
    if (!x) throw Error(Errc::invariant, "not a reduction position");
    const Group& G = *g.vgroup(g.origin(e));
    Path r;
    r.start = p.start;
    r.elems.assign(p.elems.begin(), p.elems.begin() + i);
    r.elems.back() = G.op(G.op(r.elems.back(), g.alpha(e).apply(*x)), p.elems[i + 1]);
    r.elems.insert(r.elems.end(), p.elems.begin() + i + 2, p.elems.end());
    r.edges.assign(p.edges.begin(), p.edges.begin() + (i - 1));
    r.edges.insert(r.edges.end(), p.edges.begin() + i + 1, p.edges.end());
    return r;
}

Path reduce(const Graph& g, const Path& p) {
    Path r;
    r.start = p.start;
    r.elems = {p.elems[0]};
    for (int i = 0; i < p.length(); ++i) {
        int e = p.edges[i];
        Elem next = p.elems[i + 1];
        if (!r.edges.empty() && e == g.inv(r.edges.back())) {
            int prev = r.edges.back();
            if (auto x = g.omega(prev).preimage(r.elems.back())) {
                r.edges.pop_back();
                r.elems.pop_back();
                const Group& G = *g.vgroup(g.origin(prev));
                r.elems.back() = G.op(G.op(r.elems.back(), g.alpha(prev).apply(*x)), next);
                continue;
            }
        }
        r.edges.push_back(e);
        r.elems.push_back(next);
    }
    return r;
}

bool is_reduced(const Graph& g, const Path& p) { return redexes(g, p).empty(); }

bool sim_equal(const Graph& g, const Path& p, const Path& q) {
    if (p.start != q.start || p.edges != q.edges) return false;
    int k = p.length();
    if (k == 0) return p.elems[0] == q.elems[0];
    const Group& G0 = *g.vgroup(p.start);
    auto x = g.alpha(p.edges[0]).preimage(G0.op(G0.inv(p.elems[0]), q.elems[0]));
    if (!x) return false;
    for (int i = 1; i < k; ++i) {
        int e = p.edges[i - 1];
        const Group& G = *g.vgroup(g.target(e));
        Elem y = G.op(G.op(G.inv(p.elems[i]), g.omega(e).apply(*x)), q.elems[i]);
        x = g.alpha(p.edges[i]).preimage(y);
        if (!x) return false;
    }
    int e = p.edges[k - 1];
    const Group& G = *g.vgroup(g.target(e));
    return G.op(G.inv(g.omega(e).apply(*x)), p.elems[k]) == q.elems[k];
}

bool eq_equal(const Graph& g, const Path& p, const Path& q) {
    if (p.start != q.start || path_end(g, p) != path_end(g, q)) return false;
    if ((p.length() - q.length()) % 2 != 0) return false;
    return sim_equal(g, reduce(g, p), reduce(g, q));
}

namespace {

bool folds_cyclically(const Graph& g, const Path& q) {
    int k = q.length();
    if (k < 2 || q.edges[k - 1] != g.inv(q.edges[0])) return false;
    const Group& G = *g.vgroup(q.start);
    return g.alpha(q.edges[0]).in_image(G.op(q.elems[k], q.elems[0]));
}

}  // namespace

CyclicReduction cyclic_reduce(const Graph& g, const Path& p) {
    if (!is_circuit(g, p)) throw Error(Errc::not_a_circuit, "cyclic reduction needs a circuit");
    Path q = reduce(g, p);
    Path r = trivial_path(g, q.start);
    while (folds_cyclically(g, q)) {
        Path s = edge_path(g, q.edges[0]);
        s.elems[0] = q.elems[0];
        Path si = invert(g, s);
        q = reduce(g, concat(g, concat(g, si, q), s));
        r = reduce(g, concat(g, si, r));
    }
    return {q, r};
}

bool is_cyclically_reduced(const Graph& g, const Path& p) {
    if (!is_circuit(g, p)) return false;
    return is_reduced(g, p) && !folds_cyclically(g, p);
}

bool is_locally_elliptic(const Graph& g, const Path& p) { return cyclic_reduce(g, p).core.length() == 0; }

namespace {

std::optional<Elem> conjugating_element(const Group& G, Elem c, Elem b) {
    if (c == b) return G.id();
    if (!G.finite() || G.abelian()) return std::nullopt;
    for (Elem x : G.elements())
        if (G.conj(c, x) == b) return x;
    return std::nullopt;
}

Conjugacy conjugate_elements(const Graph& g, const Path& p, const Path& q, int depth) {
    struct State {
        int v;
        Elem c;
        int parent;
        Elem via_g;
        int via_e;
        int depth;
    };
    std::vector<State> states{{p.start, p.elems[0], -1, 0, -1, 0}};
    std::set<std::pair<int, Elem>> seen{{p.start, p.elems[0]}};
    bool truncated = false;
    auto build = [&](int idx, Elem last) {
        std::vector<int> chain;
        for (int i = idx; i >= 0; i = states[i].parent) chain.push_back(i);
        std::reverse(chain.begin(), chain.end());
        Path r = trivial_path(g, p.start);
        for (std::size_t k = 1; k < chain.size(); ++k) {
            const State& s = states[chain[k]];
            r = concat(g, right_mul(g, r, s.via_g), edge_path(g, s.via_e));
        }
        return right_mul(g, r, last);
    };
    for (std::size_t i = 0; i < states.size(); ++i) {
        State s = states[i];
        const Group& G = *g.vgroup(s.v);
        if (s.v == q.start)
            if (auto x = conjugating_element(G, s.c, q.elems[0])) return {Conjugacy::Status::found, build(static_cast<int>(i), *x)};
        if (s.depth >= depth) {
            truncated = true;
            continue;
        }
        std::vector<Elem> conj_by{G.id()};
        if (G.finite() && !G.abelian()) conj_by = G.elements();
        for (int e : g.star(s.v)) {
            for (Elem x : conj_by) {
                auto y = g.alpha(e).preimage(G.conj(s.c, x));
                if (!y) continue;
                Elem c2 = g.omega(e).apply(*y);
                int t = g.target(e);
                if (!seen.insert({t, c2}).second) continue;
                states.push_back({t, c2, static_cast<int>(i), x, e, s.depth + 1});
            }
        }
    }
    return {truncated ? Conjugacy::Status::unknown : Conjugacy::Status::absent, {}};
}

// candidate values of the first chain unknown for q ~ a^-1 R a
std::vector<Elem> chain_candidates(const Graph& g, const Path& R, const Path& q) {
    int f1 = R.edges[0];
    const GroupPtr& E = g.egroup(f1);
    if (E->finite()) return E->elements();
    AffineSystem sys;
    // a = R_0 + alpha(x1) - q_0, all additive in Z
    Affine x = Affine::var();
    Affine a = x * g.alpha(f1).factor() + (R.elems[0] - q.elems[0]);
    int k = R.length();
    bool alive = true;
    for (int i = 1; i < k && alive; ++i) {
        int e = R.edges[i - 1], f = R.edges[i];
        Affine y = x * g.omega(e).factor() + (q.elems[i] - R.elems[i]);
        if (g.egroup(f)->kind() == Group::Kind::trivial) {
            sys.zero(y);
            alive = false;
            break;
        }
        x = y / g.alpha(f).factor();
        sys.integral(x);
    }
    if (alive) {
        int e = R.edges[k - 1];
        sys.zero(a + (R.elems[k] - q.elems[k]) - x * g.omega(e).factor());
    }
    auto s = sys.solve();
    if (s.none) return {};
    if (s.unique) return {*s.unique};
    return s.residues;
}

}  // namespace

Conjugacy collins_conjugate(const Graph& g, const Path& p, const Path& q, int depth) {
    if (!is_circuit(g, p) || !is_circuit(g, q)) throw Error(Errc::not_a_circuit, "conjugacy needs circuits");
    if (!is_cyclically_reduced(g, p) || !is_cyclically_reduced(g, q))
        throw Error(Errc::not_cyclically_reduced, "conjugacy needs cyclically reduced circuits");
    if (p.length() != q.length()) return {};
    int m = p.length();
    if (m == 0) return conjugate_elements(g, p, q, depth);
    for (int j = 0; j < m; ++j) {
        Path P;
        P.start = p.start;
        P.elems.assign(p.elems.begin(), p.elems.begin() + j + 1);
        P.edges.assign(p.edges.begin(), p.edges.begin() + j);
        Path S;
        S.start = path_end(g, P);
        S.elems.assign(p.elems.begin() + j, p.elems.end());
        S.elems[0] = g.vgroup(S.start)->id();
        S.edges.assign(p.edges.begin() + j, p.edges.end());
        Path R = concat(g, S, P);
        if (R.start != q.start || R.edges != q.edges) continue;
        const Group& G = *g.vgroup(R.start);
        for (Elem x1 : chain_candidates(g, R, q)) {
            Elem a = G.op(G.op(R.elems[0], g.alpha(R.edges[0]).apply(x1)), G.inv(q.elems[0]));
            Path cand = left_mul(g, G.inv(a), right_mul(g, R, a));
            if (sim_equal(g, cand, q)) return {Conjugacy::Status::found, reduce(g, right_mul(g, P, a))};
        }
    }
    return {};
}

Subgraph induced(const Graph& g, const std::vector<char>& keep_v, const std::vector<char>& keep_e) {
    Subgraph s;
    std::vector<int> vnew(g.nv(), -1);
    for (int v = 0; v < g.nv(); ++v)
        if (keep_v[v]) {
            vnew[v] = s.graph.add_vertex(g.vname(v), g.vgroup(v));
            s.vmap.push_back(v);
        }
    for (int e = 0; e < g.ne(); ++e) {
        int f = g.inv(e);
        if (f < e || !keep_e[e] || !keep_e[f]) continue;
        int o = vnew[g.origin(e)], t = vnew[g.target(e)];
        if (o < 0 || t < 0) continue;
        s.graph.add_edge(g.ename(e), g.ename(f), o, t, g.egroup(e), g.alpha(e), g.alpha(f));
        s.emap.push_back(e);
        s.emap.push_back(f);
    }
    if (g.basepoint && vnew[*g.basepoint] >= 0) s.graph.basepoint = vnew[*g.basepoint];
    return s;
}

namespace {

Subgraph peel(const Graph& g, int keep) {
    std::vector<char> kv(g.nv(), 1), ke(g.ne(), 1);
    std::vector<int> deg(g.nv(), 0);
    for (int e = 0; e < g.ne(); ++e) ++deg[g.origin(e)];
    std::deque<int> work;
    for (int v = 0; v < g.nv(); ++v) work.push_back(v);
    while (!work.empty()) {
        int v = work.front();
        work.pop_front();
        if (!kv[v] || v == keep) continue;
        if (deg[v] == 0) {
            if (g.vgroup(v)->kind() == Group::Kind::trivial) kv[v] = 0;
            continue;
        }
        if (deg[v] != 1) continue;
        int f = -1;
        for (int e : g.star(v))
            if (ke[e]) f = e;
        if (!g.alpha(f).surjective()) continue;
        kv[v] = 0;
        ke[f] = ke[g.inv(f)] = 0;
        int w = g.target(f);
        --deg[w];
        deg[v] = 0;
        work.push_back(w);
    }
    return induced(g, kv, ke);
}

}  // namespace

Subgraph core(const Graph& g) { return peel(g, -1); }

Subgraph pointed_core(const Graph& g, int u) {
    if (u < 0 || u >= g.nv()) throw Error(Errc::unknown_vertex, "pointed core at an unknown vertex");
    return peel(g, u);
}

std::vector<int> component_ids(const Graph& g, int* count) {
    std::vector<int> comp(g.nv(), -1);
    int c = 0;
    for (int s = 0; s < g.nv(); ++s) {
        if (comp[s] >= 0) continue;
        std::deque<int> q{s};
        comp[s] = c;
        while (!q.empty()) {
            int v = q.front();
            q.pop_front();
            for (int e : g.star(v)) {
                int w = g.target(e);
                if (comp[w] < 0) {
                    comp[w] = c;
                    q.push_back(w);
                }
            }
        }
        ++c;
    }
    if (count) *count = c;
    return comp;
}

long betti(const Graph& g) {
    int c = 0;
    component_ids(g, &c);
    return static_cast<long>(g.ne() / 2) - g.nv() + c;
}

SpanningTree spanning_tree(const Graph& g, int root) {
    SpanningTree t;
    t.parent_edge.assign(g.nv(), -1);
    t.depth.assign(g.nv(), -1);
    std::deque<int> q{root};
    t.depth[root] = 0;
    while (!q.empty()) {
        int v = q.front();
        q.pop_front();
        t.order.push_back(v);
        for (int e : g.star(v)) {
            int w = g.target(e);
            if (t.depth[w] >= 0) continue;
            t.depth[w] = t.depth[v] + 1;
            t.parent_edge[w] = e;
            q.push_back(w);
        }
    }
    return t;
}

Path tree_path(const Graph& g, const SpanningTree& t, int v) {
    if (t.depth.at(v) < 0) throw Error(Errc::unknown_vertex, "vertex not reached by the spanning tree");
    std::vector<int> edges;
    for (int w = v; t.parent_edge[w] >= 0; w = g.origin(t.parent_edge[w])) edges.push_back(t.parent_edge[w]);
    std::reverse(edges.begin(), edges.end());
    int root = edges.empty() ? v : g.origin(edges.front());
    Path p = trivial_path(g, root);
    for (int e : edges) p = concat(g, p, edge_path(g, e));
    return p;
}

std::vector<Path> pi1_generators(const Graph& g, int root, bool* all_reached) {
    auto t = spanning_tree(g, root);
    std::vector<Path> out;
    bool reached = true;
    for (int x = 0; x < g.nv(); ++x) {
        if (t.depth[x] < 0) {
            reached = false;
            continue;
        }
        Path tx = tree_path(g, t, x);
        for (Elem z : g.vgroup(x)->generators())
            out.push_back(concat(g, right_mul(g, tx, z), invert(g, tx)));
    }
    for (int e = 0; e < g.ne(); ++e) {
        int o = g.origin(e), d = g.target(e);
        if (t.depth[o] < 0 || e > g.inv(e)) continue;
        if (t.parent_edge[d] == e || t.parent_edge[o] == g.inv(e)) continue;
        out.push_back(concat(g, concat(g, tree_path(g, t, o), edge_path(g, e)), invert(g, tree_path(g, t, d))));
    }
    if (all_reached) *all_reached = reached;
    return out;
}

}  // namespace gog
