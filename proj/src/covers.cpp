#include "covers.hpp"

#include <deque>
#include <functional>
#include <map>
#include <numeric>
#include <set>

namespace gog {

PathLift lift_path(const Morphism& mu, const Path& p, int v0) {
    const Graph& A = *mu.target;
    const Graph& B = *mu.source;
    check_path(A, p);
    if (mu.v(v0) != p.start) throw Error(Errc::invariant, "lift starts over the wrong vertex");
    Path q = trivial_path(B, v0);
    Elem a = p.elems[0];
    int cur = v0;
    for (int i = 0; i < p.length(); ++i) {
        int e = p.edges[i];
        DoubleCosets dc(A.vgroup(A.origin(e)), mu.vmono[cur], A.alpha(e));
        bool moved = false;
        for (int f : B.star(cur)) {
            if (mu.e(f) != e) continue;
            auto bx = dc.factor(mu.alpha_twist(f), a);
            if (!bx) continue;
            Path step = edge_path(B, f);
            step.elems[0] = bx->first;
            q = concat(B, q, step);
            const Group& H = *A.vgroup(A.target(e));
            a = H.op(H.op(mu.omega_twist(f), A.omega(e).apply(bx->second)), p.elems[i + 1]);
            cur = B.target(f);
            moved = true;
            break;
        }
        if (!moved)
            throw Error(Errc::not_a_covering, "star of " + B.vname(cur) + " has no edge over " + A.ename(e) + " for the lift");
    }
    if (auto b = mu.vmono[cur].preimage(a)) {
        q = right_mul(B, q, *b);
        a = A.vgroup(mu.v(cur))->id();
    }
    return {q, a};
}

namespace {

// inverse of an isomorphism rho: D -> C that is bijective on the graph
std::optional<Morphism> invert_iso(const Morphism& rho) {
    const Graph& D = *rho.source;
    const Graph& C = *rho.target;
    if (D.nv() != C.nv() || D.ne() != C.ne()) return std::nullopt;
    std::vector<int> vinv(C.nv(), -1), einv(C.ne(), -1);
    for (int x = 0; x < D.nv(); ++x) {
        if (vinv[rho.v(x)] >= 0 || !rho.vmono[x].surjective()) return std::nullopt;
        vinv[rho.v(x)] = x;
    }
    for (int h = 0; h < D.ne(); ++h) {
        if (einv[rho.e(h)] >= 0 || !rho.emono[h].surjective()) return std::nullopt;
        einv[rho.e(h)] = h;
    }
    Morphism t;
    t.source = rho.target;
    t.target = rho.source;
    for (int w = 0; w < C.nv(); ++w) {
        int x = vinv[w];
        t.vmap.push_back(x);
        const Mono& m = rho.vmono[x];
        t.vmono.push_back(Mono::from_function(C.vgroup(w), D.vgroup(x), [&](Elem z) { return *m.preimage(z); }));
    }
    for (int g = 0; g < C.ne(); ++g) {
        int h = einv[g];
        t.emap.push_back(h);
        const Mono& m = rho.emono[h];
        t.emono.push_back(Mono::from_function(C.egroup(g), D.egroup(h), [&](Elem z) { return *m.preimage(z); }));
        int w = C.origin(g);
        const Group& Cw = *C.vgroup(w);
        t.twist.push_back(*rho.vmono[vinv[w]].preimage(Cw.inv(rho.alpha_twist(h))));
    }
    t.validate();
    return t;
}

}  // namespace

MorphismLift lift_morphism(const Morphism& muB, const Morphism& muC, const ProductOptions& opt) {
    const Graph& B = *muB.source;
    const Graph& C = *muC.source;
    if (!B.basepoint || !C.basepoint) throw Error(Errc::unsupported, "lifting needs pointed morphisms");
    auto cov = covering_report(muB, opt.coset_window);
    if (!cov.ok) throw Error(Errc::unsupported, "lifting needs a covering");
    MorphismLift out;
    int v0 = *B.basepoint, w0 = *C.basepoint;
    for (const Path& gen : pi1_generators(C, w0)) {
        PathLift pl = lift_path(muB, apply_path(muC, gen), v0);
        if (path_end(B, pl.q) != v0 || !muB.target->vgroup(muB.v(v0))->is_id(pl.a)) {
            out.status = MorphismLift::Status::absent;
            out.reason = "generator " + format_path(C, gen) + " does not lift to a loop";
            return out;
        }
    }
    Product P = pointed_product(muB, muC, opt);
    if (!P.complete) {
        out.reason = "product not fully explored";
        return out;
    }
    auto tau = invert_iso(P.rhoC);
    if (!tau) {
        out.reason = "right projection is not an isomorphism on the explored product";
        return out;
    }
    Morphism sigma = compose(P.rhoB, *tau);
    auto cert = find_equivalence(compose(muB, sigma), muC, true);
    if (!cert) {
        out.reason = "lift candidate fails the pointed equivalence";
        return out;
    }
    out.status = MorphismLift::Status::found;
    out.sigma = sigma;
    out.cert = *cert;
    return out;
}

namespace {

struct Folder {
    std::vector<int> parent;
    int find(int x) {
        while (parent[x] != x) x = parent[x] = parent[parent[x]];
        return x;
    }
    bool unite(int a, int b) {
        a = find(a);
        b = find(b);
        if (a == b) return false;
        if (b < a) std::swap(a, b);
        parent[b] = a;
        return true;
    }
};

struct LabelledEdge {
    int o, label, t;
};

Stallings realize(GraphPtr A, int nverts, const std::vector<int>& over, const std::vector<LabelledEdge>& edges,
                  int base) {
    auto g = std::make_shared<Graph>();
    auto triv = Group::trivial();
    for (int v = 0; v < nverts; ++v) g->add_vertex("v" + std::to_string(v), triv);
    Morphism m;
    m.target = A;
    for (int v = 0; v < nverts; ++v) {
        m.vmap.push_back(over[v]);
        m.vmono.push_back(Mono::trivial(triv, A->vgroup(over[v])));
    }
    int k = 0;
    for (auto& le : edges) {
        int l = le.label, li = A->inv(l);
        g->add_edge(A->ename(l) + "#" + std::to_string(k), A->ename(li) + "#" + std::to_string(k), le.o, le.t, triv,
                    Mono::trivial(triv, triv), Mono::trivial(triv, triv));
        ++k;
        for (int x : {l, li}) {
            m.emap.push_back(x);
            m.emono.push_back(Mono::trivial(triv, A->egroup(x)));
            m.twist.push_back(A->vgroup(A->origin(x))->id());
        }
    }
    g->basepoint = base;
    m.source = g;
    return {g, m};
}

Stallings restrict(const Stallings& s, const Subgraph& sub) {
    auto g = std::make_shared<Graph>(sub.graph);
    Morphism m;
    m.source = g;
    m.target = s.immersion.target;
    for (int v : sub.vmap) {
        m.vmap.push_back(s.immersion.vmap[v]);
        m.vmono.push_back(s.immersion.vmono[v]);
    }
    for (int e : sub.emap) {
        m.emap.push_back(s.immersion.emap[e]);
        m.emono.push_back(s.immersion.emono[e]);
        m.twist.push_back(s.immersion.twist[e]);
    }
    return {g, m};
}

}  // namespace

Stallings stallings_cover(GraphPtr A, const std::vector<Path>& generators) {
    for (int u = 0; u < A->nv(); ++u)
        if (A->vgroup(u)->kind() != Group::Kind::trivial) throw Error(Errc::unsupported, "Stallings folding needs trivial groups");
    for (int e = 0; e < A->ne(); ++e)
        if (A->egroup(e)->kind() != Group::Kind::trivial) throw Error(Errc::unsupported, "Stallings folding needs trivial groups");
    int u0 = A->basepoint.value_or(0);
    std::vector<int> over{u0};
    std::vector<LabelledEdge> edges;
    for (const Path& g : generators) {
        if (g.start != u0 || !is_circuit(*A, g)) throw Error(Errc::not_a_circuit, "generators must be circuits at the basepoint");
        Path r = reduce(*A, g);
        int cur = 0;
        for (int i = 0; i < r.length(); ++i) {
            int l = r.edges[i];
            int next = 0;
            if (i + 1 < r.length()) {
                next = static_cast<int>(over.size());
                over.push_back(A->target(l));
            }
            edges.push_back({cur, l, next});
            cur = next;
        }
    }
    Folder uf;
    uf.parent.resize(over.size());
    std::iota(uf.parent.begin(), uf.parent.end(), 0);
    for (bool changed = true; changed;) {
        changed = false;
        std::map<std::pair<int, int>, int> seen;
        for (auto& le : edges)
            for (int dir = 0; dir < 2; ++dir) {
                int o = uf.find(dir ? le.t : le.o), t = uf.find(dir ? le.o : le.t);
                int l = dir ? A->inv(le.label) : le.label;
                auto [it, fresh] = seen.emplace(std::make_pair(o, l), t);
                if (!fresh && uf.unite(it->second, t)) changed = true;
            }
    }
    std::map<int, int> renum;
    std::vector<int> over2;
    for (int v = 0; v < static_cast<int>(over.size()); ++v) {
        int r = uf.find(v);
        if (!renum.count(r)) {
            renum[r] = static_cast<int>(over2.size());
            over2.push_back(over[r]);
        }
    }
    std::set<std::tuple<int, int, int>> kept;
    std::vector<LabelledEdge> folded;
    for (auto& le : edges) {
        int o = renum[uf.find(le.o)], t = renum[uf.find(le.t)], l = le.label;
        if (l > A->inv(l)) {
            std::swap(o, t);
            l = A->inv(l);
        }
        if (kept.insert({o, l, t}).second) folded.push_back({o, l, t});
    }
    Stallings raw = realize(A, static_cast<int>(over2.size()), over2, folded, renum[uf.find(0)]);
    return restrict(raw, pointed_core(*raw.graph, *raw.graph->basepoint));
}

Completion complete_cover(const Stallings& s, int radius) {
    const Graph& A = *s.immersion.target;
    const Graph& B = *s.graph;
    std::vector<int> over = s.immersion.vmap;
    std::vector<LabelledEdge> edges;
    for (int f = 0; f < B.ne(); ++f)
        if (f < B.inv(f)) edges.push_back({B.origin(f), s.immersion.e(f), B.target(f)});
    std::vector<std::set<int>> labels(over.size());
    for (int f = 0; f < B.ne(); ++f) labels[B.origin(f)].insert(s.immersion.e(f));
    std::vector<int> depth(over.size(), 0);
    std::deque<int> q;
    for (int v = 0; v < static_cast<int>(over.size()); ++v) q.push_back(v);
    Completion out;
    while (!q.empty()) {
        int v = q.front();
        q.pop_front();
        bool open = false;
        for (int l : A.star(over[v])) {
            if (labels[v].count(l)) continue;
            if (depth[v] >= radius) {
                open = true;
                continue;
            }
            int w = static_cast<int>(over.size());
            over.push_back(A.target(l));
            depth.push_back(depth[v] + 1);
            labels.push_back({A.inv(l)});
            labels[v].insert(l);
            edges.push_back({v, l, w});
            q.push_back(w);
        }
        if (open) out.frontier.push_back(v);
    }
    out.cover = realize(s.immersion.target, static_cast<int>(over.size()), over, edges, B.basepoint.value_or(0));
    return out;
}

TreeBall bass_serre_ball(const Graph& A, int u0, int radius, Elem coset_window) {
    TreeBall t;
    t.radius = radius;
    auto triv = Group::trivial();
    t.tree.add_vertex("x0", triv);
    t.over.push_back(u0);
    t.label.push_back(trivial_path(A, u0));
    t.depth.push_back(0);
    std::vector<int> via{-1};
    for (std::size_t x = 0; x < t.over.size(); ++x) {
        if (t.depth[x] >= radius) continue;
        int u = t.over[x];
        const Group& G = *A.vgroup(u);
        for (int e : A.star(u)) {
            bool trunc = false;
            auto reps = left_coset_reps(A.alpha(e), coset_window, &trunc);
            if (trunc) t.truncated = true;
            for (Elem c : reps) {
                if (via[x] >= 0 && e == A.inv(via[x]) && c == G.id()) continue;
                Path step = edge_path(A, e);
                step.elems[0] = c;
                int y = static_cast<int>(t.over.size());
                t.tree.add_vertex("x" + std::to_string(y), triv);
                t.over.push_back(A.target(e));
                t.label.push_back(reduce(A, concat(A, t.label[x], step)));
                t.depth.push_back(t.depth[x] + 1);
                via.push_back(e);
                std::string n = std::to_string(t.tree.ne() / 2);
                t.tree.add_edge("t" + n, "T" + n, static_cast<int>(x), y, triv, Mono::trivial(triv, triv),
                                Mono::trivial(triv, triv));
                t.edge_over.push_back(e);
                t.edge_over.push_back(A.inv(e));
            }
        }
    }
    return t;
}

Elem expected_degree(const Graph& A, int u) {
    Elem d = 0;
    for (int e : A.star(u)) {
        Elem i = subgroup_index(A.alpha(e));
        if (i == 0) return 0;
        d += i;
    }
    return d;
}

bool tree_ball_acyclic(const Graph& A, const TreeBall& t) {
    int n = 0;
    component_ids(t.tree, &n);
    if (n != 1 || t.tree.ne() / 2 != t.tree.nv() - 1) return false;
    for (int x = 0; x < t.tree.nv(); ++x) {
        Path xi = invert(A, t.label[x]);
        for (int y = x + 1; y < t.tree.nv(); ++y) {
            if (t.over[x] != t.over[y]) continue;
            if (reduce(A, concat(A, xi, t.label[y])).length() == 0) return false;
        }
    }
    return true;
}

Acylindricity is_k_acylindrical(const Graph& A, int k, Elem element_window) {
    Acylindricity out;
    bool windowed = false;
    bool found = false;
    auto test = [&](const Path& p) {
        ++out.paths_checked;
        const Group& G = *A.vgroup(path_end(A, p));
        std::vector<Elem> as;
        if (G.finite()) {
            for (Elem a : G.elements())
                if (!G.is_id(a)) as.push_back(a);
        } else {
            windowed = true;
            for (Elem i = 1; i <= element_window; ++i) {
                as.push_back(i);
                as.push_back(-i);
            }
        }
        for (Elem a : as)
            if (reduce(A, concat(A, right_mul(A, p, a), invert(A, p))).length() == 0) {
                out.witness = p;
                out.element = a;
                found = true;
                return;
            }
    };
    std::function<void(Path&, int)> grow = [&](Path& p, int cur) {
        if (found) return;
        if (p.length() == k) {
            test(p);
            return;
        }
        for (int e : A.star(cur)) {
            std::vector<Elem> mids{A.vgroup(cur)->id()};
            if (p.length() > 0) {
                int prev = p.edges.back();
                DoubleCosets dc(A.vgroup(cur), A.omega(prev), A.alpha(e));
                if (!dc.finite()) windowed = true;
                mids = dc.representatives(element_window);
                if (e == A.inv(prev)) {
                    Elem triv = dc.canonical(A.vgroup(cur)->id());
                    std::erase(mids, triv);
                }
            }
            for (Elem m : mids) {
                Path q = p;
                q.elems.back() = m;
                q.edges.push_back(e);
                q.elems.push_back(A.vgroup(A.target(e))->id());
                grow(q, A.target(e));
                if (found) return;
            }
        }
    };
    for (int u = 0; u < A.nv() && !found; ++u) {
        Path p = trivial_path(A, u);
        grow(p, u);
    }
    if (found)
        out.verdict = Acylindricity::Verdict::no;
    else
        out.verdict = windowed ? Acylindricity::Verdict::unknown : Acylindricity::Verdict::yes;
    return out;
}

}  // namespace gog
