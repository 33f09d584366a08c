#include "oracles.hpp"

#include <algorithm>
#include <array>
#include <deque>
#include <functional>
#include <map>
#include <set>

namespace oracle {

Elem random_element(const Group& g, Rng& rng, Elem zwin) {
    if (g.finite()) {
        auto els = g.elements();
        return els[std::uniform_int_distribution<std::size_t>(0, els.size() - 1)(rng)];
    }
    return std::uniform_int_distribution<Elem>(-zwin, zwin)(rng);
}

namespace {
int random_star_edge(const Graph& g, int v, Rng& rng) {
    auto st = g.star(v);
    if (st.empty()) return -1;
    return st[std::uniform_int_distribution<std::size_t>(0, st.size() - 1)(rng)];
}
}  // namespace

Path random_path(const Graph& g, int start, int len, Rng& rng, Elem zwin) {
    Path p;
    p.start = start;
    p.elems = {random_element(*g.vgroup(start), rng, zwin)};
    int cur = start;
    for (int i = 0; i < len; ++i) {
        int e = random_star_edge(g, cur, rng);
        if (e < 0) break;
        cur = g.target(e);
        p.edges.push_back(e);
        p.elems.push_back(random_element(*g.vgroup(cur), rng, zwin));
    }
    return p;
}

std::optional<Path> random_reduced_path(const Graph& g, int start, int len, Rng& rng, Elem zwin) {
    Path p;
    p.start = start;
    p.elems = {random_element(*g.vgroup(start), rng, zwin)};
    int cur = start;
    for (int i = 0; i < len; ++i) {
        bool ok = false;
        for (int attempt = 0; attempt < 50 && !ok; ++attempt) {
            int e = random_star_edge(g, cur, rng);
            if (e < 0) return std::nullopt;
            if (!p.edges.empty()) {
                int prev = p.edges.back();
                if (e == g.inv(prev)) {
                    Elem a = random_element(*g.vgroup(cur), rng, zwin);
                    if (g.omega(prev).in_image(a)) continue;
                    p.elems.back() = a;
                }
            }
            ok = true;
            cur = g.target(e);
            p.edges.push_back(e);
            p.elems.push_back(random_element(*g.vgroup(cur), rng, zwin));
        }
        if (!ok) return std::nullopt;
    }
    return p;
}

Path random_circuit(const Graph& g, int u, int len, Rng& rng, Elem zwin) {
    for (int attempt = 0; attempt < 1000; ++attempt) {
        Path p = random_path(g, u, len, rng, zwin);
        if (path_end(g, p) == u) return p;
        // walk back along a random path and close if possible
        Path back = random_path(g, path_end(g, p), len, rng, zwin);
        if (path_end(g, back) == u) return concat(g, p, back);
    }
    return trivial_path(g, u);
}

Path random_rewrite(const Graph& g, Path p, Rng& rng) {
    for (;;) {
        auto rs = redexes(g, p);
        if (rs.empty()) return p;
        int i = rs[std::uniform_int_distribution<std::size_t>(0, rs.size() - 1)(rng)];
        p = rewrite_at(g, p, i);
    }
}

Path random_inflate(const Graph& g, const Path& p, Rng& rng) {
    Path q = p;
    std::size_t i = std::uniform_int_distribution<std::size_t>(0, q.edges.size())(rng);
    int v = i == 0 ? q.start : g.target(q.edges[i - 1]);
    int e = random_star_edge(g, v, rng);
    if (e >= 0) {
        Elem x = random_element(*g.egroup(e), rng);
        const Group& G = *g.vgroup(v);
        Elem ai = q.elems[i];
        q.elems[i] = G.op(ai, G.inv(g.alpha(e).apply(x)));
        q.edges.insert(q.edges.begin() + i, {e, g.inv(e)});
        q.elems.insert(q.elems.begin() + i + 1, {g.omega(e).apply(x), G.id()});
    }
    if (!q.edges.empty()) {
        std::size_t j = std::uniform_int_distribution<std::size_t>(0, q.edges.size() - 1)(rng);
        int f = q.edges[j];
        Elem y = random_element(*g.egroup(f), rng);
        const Group& O = *g.vgroup(g.origin(f));
        const Group& T = *g.vgroup(g.target(f));
        q.elems[j] = O.op(q.elems[j], g.alpha(f).apply(y));
        q.elems[j + 1] = T.op(T.inv(g.omega(f).apply(y)), q.elems[j + 1]);
    }
    return q;
}

long LGraph::betti() const {
    std::vector<int> parent(n);
    for (int i = 0; i < n; ++i) parent[i] = i;
    std::function<int(int)> find = [&](int x) { return parent[x] == x ? x : parent[x] = find(parent[x]); };
    int comps = n;
    for (auto& [o, l, t] : edges) {
        int a = find(o), b = find(t);
        if (a != b) {
            parent[a] = b;
            --comps;
        }
    }
    return static_cast<long>(edges.size() / 2) - n + comps;
}

LGraph labelled(const Morphism& m) {
    const Graph& B = *m.source;
    LGraph g;
    g.n = B.nv();
    g.base = B.basepoint.value_or(0);
    for (int f = 0; f < B.ne(); ++f) g.edges.emplace_back(B.origin(f), m.e(f), B.target(f));
    return g;
}

LGraph labelled(const Graph& D, const std::vector<int>& label, int base) {
    LGraph g;
    g.n = D.nv();
    g.base = base;
    for (int h = 0; h < D.ne(); ++h) g.edges.emplace_back(D.origin(h), label[h], D.target(h));
    return g;
}

LGraph fiber_product(const LGraph& b, const LGraph& c, const Graph&, const Morphism& mb, const Morphism& mc) {
    LGraph d;
    d.n = b.n * c.n;
    d.base = b.base * c.n + c.base;
    for (auto& [bo, bl, bt] : b.edges)
        for (auto& [co, cl, ct] : c.edges)
            if (bl == cl) d.edges.emplace_back(bo * c.n + co, bl, bt * c.n + ct);
    // pairs over different vertices of A are not vertices of the product
    std::vector<char> keep(d.n, 0);
    for (int x = 0; x < b.n; ++x)
        for (int y = 0; y < c.n; ++y) keep[x * c.n + y] = mb.v(x) == mc.v(y);
    std::vector<int> renum(d.n, -1);
    int k = 0;
    for (int i = 0; i < d.n; ++i)
        if (keep[i]) renum[i] = k++;
    LGraph out;
    out.n = k;
    out.base = renum[d.base];
    for (auto& [o, l, t] : d.edges) out.edges.emplace_back(renum[o], l, renum[t]);
    return out;
}

LGraph pointed_core(const LGraph& g) {
    std::vector<char> alive(g.n, 0);
    std::vector<std::vector<int>> adj(g.n);
    for (auto& [o, l, t] : g.edges) adj[o].push_back(t);
    std::deque<int> q{g.base};
    alive[g.base] = 1;
    while (!q.empty()) {
        int x = q.front();
        q.pop_front();
        for (int y : adj[x])
            if (!alive[y]) {
                alive[y] = 1;
                q.push_back(y);
            }
    }
    for (bool changed = true; changed;) {
        changed = false;
        for (int x = 0; x < g.n; ++x) {
            if (!alive[x] || x == g.base) continue;
            int deg = 0;
            for (auto& [o, l, t] : g.edges)
                if (o == x && alive[t]) ++deg;
            if (deg <= 1) {
                alive[x] = 0;
                changed = true;
            }
        }
    }
    std::vector<int> renum(g.n, -1);
    LGraph out;
    for (int x = 0; x < g.n; ++x)
        if (alive[x]) renum[x] = out.n++;
    out.base = renum[g.base];
    for (auto& [o, l, t] : g.edges)
        if (alive[o] && alive[t]) out.edges.emplace_back(renum[o], l, renum[t]);
    return out;
}

bool pointed_isomorphic(const LGraph& a, const LGraph& b) {
    if (a.n != b.n || a.edges.size() != b.edges.size()) return false;
    std::vector<std::vector<std::pair<int, int>>> sa(a.n), sb(b.n);
    for (auto& [o, l, t] : a.edges) sa[o].emplace_back(l, t);
    for (auto& [o, l, t] : b.edges) sb[o].emplace_back(l, t);
    std::vector<int> map(a.n, -1), back(b.n, -1);
    map[a.base] = b.base;
    back[b.base] = a.base;
    std::deque<int> q{a.base};
    while (!q.empty()) {
        int x = q.front();
        q.pop_front();
        auto ea = sa[x], eb = sb[map[x]];
        if (ea.size() != eb.size()) return false;
        std::multiset<int> la, lb;
        for (auto& [l, t] : ea) la.insert(l);
        for (auto& [l, t] : eb) lb.insert(l);
        if (la != lb) return false;
        for (auto& [l, t] : ea) {
            if (la.count(l) != 1) return false;  // not an immersion; the walk is ambiguous
            int u = -1;
            for (auto& [l2, t2] : eb)
                if (l2 == l) u = t2;
            if (map[t] < 0 && back[u] < 0) {
                map[t] = u;
                back[u] = t;
                q.push_back(t);
            } else if (map[t] != u || back[u] != t) {
                return false;
            }
        }
    }
    return std::count(map.begin(), map.end(), -1) == 0;
}

std::vector<long> component_bettis(const LGraph& g) {
    std::vector<int> comp(g.n, -1);
    std::vector<std::vector<int>> adj(g.n);
    for (auto& [o, l, t] : g.edges) adj[o].push_back(t);
    int k = 0;
    for (int s = 0; s < g.n; ++s) {
        if (comp[s] >= 0) continue;
        std::deque<int> q{s};
        comp[s] = k;
        while (!q.empty()) {
            int x = q.front();
            q.pop_front();
            for (int y : adj[x])
                if (comp[y] < 0) {
                    comp[y] = k;
                    q.push_back(y);
                }
        }
        ++k;
    }
    std::vector<long> nv(k, 0), ne(k, 0);
    for (int x = 0; x < g.n; ++x) ++nv[comp[x]];
    for (auto& [o, l, t] : g.edges) ++ne[comp[o]];
    std::vector<long> out;
    for (int i = 0; i < k; ++i) out.push_back(ne[i] / 2 - nv[i] + 1);
    std::sort(out.begin(), out.end());
    return out;
}

Morphism random_immersion(GraphPtr bouquet, int max_vertices, int max_edges, Rng& rng) {
    const Graph& A = *bouquet;
    int labels = A.ne() / 2;
    auto triv = Group::trivial();
    for (;;) {
        int n = std::uniform_int_distribution<int>(1, max_vertices)(rng);
        // out[l][x] = target of the l-edge leaving x
        std::vector<std::vector<int>> out(labels, std::vector<int>(n, -1)), in(labels, std::vector<int>(n, -1));
        std::vector<std::tuple<int, int, int>> es;
        auto try_add = [&](int x, int l, int y) {
            if (out[l][x] >= 0 || in[l][y] >= 0) return false;
            out[l][x] = y;
            in[l][y] = x;
            es.emplace_back(x, l, y);
            return true;
        };
        bool ok = true;
        for (int i = 1; i < n && ok; ++i) {
            bool placed = false;
            for (int attempt = 0; attempt < 30 && !placed; ++attempt) {
                int j = std::uniform_int_distribution<int>(0, i - 1)(rng);
                int l = std::uniform_int_distribution<int>(0, labels - 1)(rng);
                placed = rng() % 2 ? try_add(j, l, i) : try_add(i, l, j);
            }
            ok = placed;
        }
        if (!ok) continue;
        int extra = std::uniform_int_distribution<int>(0, std::max(0, max_edges - (n - 1)))(rng);
        for (int k = 0; k < extra * 3 && static_cast<int>(es.size()) < max_edges; ++k) {
            int x = std::uniform_int_distribution<int>(0, n - 1)(rng);
            int y = std::uniform_int_distribution<int>(0, n - 1)(rng);
            int l = std::uniform_int_distribution<int>(0, labels - 1)(rng);
            try_add(x, l, y);
        }
        auto B = std::make_shared<Graph>();
        for (int x = 0; x < n; ++x) B->add_vertex("b" + std::to_string(x), triv);
        std::vector<int> emap;
        std::vector<Mono> emono;
        std::vector<std::pair<Elem, Elem>> tw;
        int k = 0;
        for (auto& [x, l, y] : es) {
            std::string s = std::to_string(k++);
            B->add_edge("s" + s, "S" + s, x, y, triv, Mono::trivial(triv, triv), Mono::trivial(triv, triv));
            emap.push_back(2 * l);
            emono.push_back(Mono::trivial(triv, triv));
            tw.push_back({0, 0});
        }
        B->basepoint = 0;
        return assemble(B, bouquet, std::vector<int>(n, 0), std::vector<Mono>(n, Mono::trivial(triv, triv)), emap, emono,
                        tw);
    }
}

namespace {
// least element of each left coset a alpha(A_e), by enumeration
std::vector<Elem> coset_minima(const Group& G, const Mono& alpha) {
    std::set<Elem> reps;
    auto sub = alpha.dom()->elements();
    for (Elem a : G.elements()) {
        Elem best = a;
        for (Elem x : sub) best = std::min(best, G.op(a, alpha.apply(x)));
        reps.insert(best);
    }
    return {reps.begin(), reps.end()};
}
}  // namespace

std::optional<Path> brute_conjugator(const Graph& g, const Path& p, const Path& q, int max_len) {
    int from = p.start, to = q.start;
    std::optional<Path> found;
    std::function<void(Path&, int, int)> dfs = [&](Path& r, int cur, int left) {
        if (found) return;
        if (cur == to) {
            // last element ranges over the whole vertex group
            Elem keep = r.elems.back();
            for (Elem a : g.vgroup(cur)->elements()) {
                r.elems.back() = g.vgroup(cur)->op(keep, a);
                if (eq_equal(g, q, concat(g, concat(g, invert(g, r), p), r))) {
                    found = r;
                    return;
                }
            }
            r.elems.back() = keep;
        }
        if (left == 0) return;
        for (int e : g.star(cur)) {
            Elem keep = r.elems.back();
            for (Elem c : coset_minima(*g.vgroup(cur), g.alpha(e))) {
                r.elems.back() = g.vgroup(cur)->op(keep, c);
                r.edges.push_back(e);
                r.elems.push_back(g.vgroup(g.target(e))->id());
                dfs(r, g.target(e), left - 1);
                r.edges.pop_back();
                r.elems.pop_back();
                if (found) return;
            }
            r.elems.back() = keep;
        }
    };
    Path r = trivial_path(g, from);
    dfs(r, from, max_len);
    return found;
}

std::vector<std::vector<Elem>> brute_double_cosets(const Group& G, const Mono& H, const Mono& K) {
    std::vector<std::vector<Elem>> out;
    std::set<Elem> seen;
    auto hs = H.dom()->elements(), ks = K.dom()->elements();
    for (Elem a : G.elements()) {
        if (seen.count(a)) continue;
        std::set<Elem> orbit;
        for (Elem h : hs)
            for (Elem k : ks) orbit.insert(G.op(G.op(H.apply(h), a), K.apply(k)));
        seen.insert(orbit.begin(), orbit.end());
        out.emplace_back(orbit.begin(), orbit.end());
    }
    return out;
}

GroupPtr symmetric3() {
    // permutations of {0,1,2} as images; product a*b = a o b (apply b first)
    std::vector<std::array<int, 3>> perms{{0, 1, 2}, {1, 0, 2}, {2, 1, 0}, {0, 2, 1}, {1, 2, 0}, {2, 0, 1}};
    std::vector<std::string> names{"()", "(12)", "(13)", "(23)", "(123)", "(132)"};
    auto index = [&](const std::array<int, 3>& p) {
        return static_cast<int>(std::find(perms.begin(), perms.end(), p) - perms.begin());
    };
    std::vector<std::vector<int>> prod(6, std::vector<int>(6));
    std::vector<int> inv(6);
    for (int a = 0; a < 6; ++a) {
        for (int b = 0; b < 6; ++b) {
            std::array<int, 3> c{};
            for (int i = 0; i < 3; ++i) c[i] = perms[a][perms[b][i]];
            prod[a][b] = index(c);
        }
        std::array<int, 3> c{};
        for (int i = 0; i < 3; ++i) c[perms[a][i]] = i;
        inv[a] = index(c);
    }
    return Group::table(names, prod, inv, 0);
}

GraphPtr s3_amalgam() {
    auto S3 = symmetric3();
    auto C2 = Group::cyclic(2);
    Elem t = *S3->lookup("(12)");
    auto A = std::make_shared<Graph>();
    A->add_vertex("s", S3);
    A->add_vertex("s'", S3);
    A->add_edge("e", "E", 0, 1, C2, Mono::from_images(C2, S3, {0, t}), Mono::from_images(C2, S3, {0, t}));
    A->basepoint = 0;
    return A;
}

GraphPtr free_product_23() {
    auto C2 = Group::cyclic(2), C3 = Group::cyclic(3), T = Group::trivial();
    auto A = std::make_shared<Graph>();
    A->add_vertex("p", C2);
    A->add_vertex("q", C3);
    A->add_edge("e", "E", 0, 1, T, Mono::trivial(T, C2), Mono::trivial(T, C3));
    A->basepoint = 0;
    return A;
}

}  // namespace oracle
