#include "morphism.hpp"

#include <deque>
#include <set>

#include "affine.hpp"

namespace gog {

Morphism Morphism::identity(GraphPtr g) {
    Morphism m;
    m.source = g;
    m.target = g;
    for (int v = 0; v < g->nv(); ++v) {
        m.vmap.push_back(v);
        m.vmono.push_back(Mono::identity(g->vgroup(v)));
    }
    for (int e = 0; e < g->ne(); ++e) {
        m.emap.push_back(e);
        m.emono.push_back(Mono::identity(g->egroup(e)));
        m.twist.push_back(g->vgroup(g->origin(e))->id());
    }
    return m;
}

void Morphism::validate() const {
    if (!source || !target) throw Error(Errc::invariant, "morphism without source or target");
    const Graph& B = *source;
    const Graph& A = *target;
    if (static_cast<int>(vmap.size()) != B.nv() || static_cast<int>(vmono.size()) != B.nv())
        throw Error(Errc::invariant, "morphism vertex data has the wrong size");
    if (static_cast<int>(emap.size()) != B.ne() || static_cast<int>(emono.size()) != B.ne() ||
        static_cast<int>(twist.size()) != B.ne())
        throw Error(Errc::invariant, "morphism edge data has the wrong size");
    for (int x = 0; x < B.nv(); ++x) {
        if (vmap[x] < 0 || vmap[x] >= A.nv()) throw Error(Errc::unknown_vertex, "vertex " + B.vname(x) + " maps outside the target");
        if (!vmono[x].dom()->same(*B.vgroup(x)) || !vmono[x].cod()->same(*A.vgroup(vmap[x])))
            throw Error(Errc::owner_mismatch, "vertex map at " + B.vname(x) + " has the wrong domain or codomain");
    }
    for (int f = 0; f < B.ne(); ++f) {
        int e = emap[f];
        if (e < 0 || e >= A.ne()) throw Error(Errc::invariant, "edge " + B.ename(f) + " maps outside the target");
        if (emap[B.inv(f)] != A.inv(e)) throw Error(Errc::invariant, "graph map does not respect inverses at " + B.ename(f));
        if (A.origin(e) != vmap[B.origin(f)]) throw Error(Errc::adjacency, "graph map does not respect origins at " + B.ename(f));
        if (!emono[f].dom()->same(*B.egroup(f)) || !emono[f].cod()->same(*A.egroup(e)))
            throw Error(Errc::owner_mismatch, "edge map at " + B.ename(f) + " has the wrong domain or codomain");
        if (!emono[f].equals(emono[B.inv(f)])) throw Error(Errc::invariant, "edge map of " + B.ename(f) + " differs from its inverse");
        const Group& G = *A.vgroup(A.origin(e));
        if (!G.contains(twist[f])) throw Error(Errc::owner_mismatch, "twist of " + B.ename(f) + " is outside its group");
        const Mono& mv = vmono[B.origin(f)];
        for (Elem b : B.egroup(f)->generators()) {
            Elem lhs = A.alpha(e).apply(emono[f].apply(b));
            Elem rhs = G.conj(mv.apply(B.alpha(f).apply(b)), twist[f]);
            if (lhs != rhs) throw Error(Errc::invariant, "twisted commutation fails at " + B.ename(f));
        }
    }
}

Path apply_path(const Morphism& m, const Path& p) {
    const Graph& B = *m.source;
    const Graph& A = *m.target;
    check_path(B, p);
    Path r;
    r.start = m.v(p.start);
    r.elems.clear();
    int k = p.length();
    for (int i = 0; i <= k; ++i) {
        int x = i == 0 ? p.start : B.target(p.edges[i - 1]);
        const Group& G = *A.vgroup(m.v(x));
        Elem a = m.vmono[x].apply(p.elems[i]);
        if (i > 0) a = G.op(G.inv(m.omega_twist(p.edges[i - 1])), a);
        if (i < k) a = G.op(a, m.alpha_twist(p.edges[i]));
        r.elems.push_back(a);
        if (i < k) r.edges.push_back(m.e(p.edges[i]));
    }
    return r;
}

Morphism compose(const Morphism& nu, const Morphism& mu) {
    if (mu.target != nu.source) throw Error(Errc::composability, "morphisms are not composable");
    Morphism r;
    r.source = mu.source;
    r.target = nu.target;
    const Graph& C = *mu.source;
    const Graph& A = *nu.target;
    for (int w = 0; w < C.nv(); ++w) {
        r.vmap.push_back(nu.v(mu.v(w)));
        r.vmono.push_back(mu.vmono[w].then(nu.vmono[mu.v(w)]));
    }
    for (int g = 0; g < C.ne(); ++g) {
        int f = mu.e(g);
        r.emap.push_back(nu.e(f));
        r.emono.push_back(mu.emono[g].then(nu.emono[f]));
        const Group& G = *A.vgroup(A.origin(nu.e(f)));
        r.twist.push_back(G.op(nu.vmono[mu.v(C.origin(g))].apply(mu.alpha_twist(g)), nu.alpha_twist(f)));
    }
    return r;
}

namespace {

// H ∩ K == S, all given as images in a common group, S ⊆ H ∩ K known
bool intersection_is(const Mono& h, const Mono& k, const Mono& s) {
    const Group& G = *h.cod();
    if (!G.finite()) {
        Elem lh = h.lattice(), lk = k.lattice();
        return lcm(lh, lk) == s.lattice();
    }
    std::set<Elem> inter;
    for (Elem a : h.image_elements())
        if (k.in_image(a)) inter.insert(a);
    return static_cast<Elem>(inter.size()) == s.dom()->order();
}

// target edge -> source edges at v over it
std::vector<std::pair<int, std::vector<int>>> star_fibres(const Morphism& m, int v) {
    std::vector<std::pair<int, std::vector<int>>> out;
    for (int e : m.target->star(m.v(v))) out.push_back({e, {}});
    for (int f : m.source->star(v))
        for (auto& [e, fs] : out)
            if (e == m.e(f)) fs.push_back(f);
    return out;
}

}  // namespace

ImmersionReport immersion_report(const Morphism& m) {
    ImmersionReport rep;
    const Graph& B = *m.source;
    const Graph& A = *m.target;
    for (int v = 0; v < B.nv(); ++v) {
        int u = m.v(v);
        for (auto& [e, fs] : star_fibres(m, v)) {
            if (fs.empty()) continue;
            DoubleCosets dc(A.vgroup(u), m.vmono[v], A.alpha(e));
            std::set<Elem> seen;
            for (int f : fs)
                if (!seen.insert(dc.canonical(m.alpha_twist(f))).second) {
                    rep.ok = false;
                    rep.defects.push_back({v, e, "two edges over " + A.ename(e) + " share a double coset"});
                    break;
                }
            for (int f : fs) {
                Elem t = m.alpha_twist(f);
                if (!intersection_is(m.vmono[v].conjugated(t), A.alpha(e), B.alpha(f).then(m.vmono[v]).conjugated(t))) {
                    rep.ok = false;
                    rep.defects.push_back({v, e, "edge group of " + B.ename(f) + " is not saturated"});
                }
            }
        }
    }
    return rep;
}

bool is_immersion(const Morphism& m) { return immersion_report(m).ok; }

CoveringReport covering_report(const Morphism& m, Elem window) {
    CoveringReport rep;
    auto imm = immersion_report(m);
    rep.ok = imm.ok;
    rep.defects = imm.defects;
    const Graph& B = *m.source;
    const Graph& A = *m.target;
    for (int v = 0; v < B.nv(); ++v) {
        int u = m.v(v);
        for (auto& [e, fs] : star_fibres(m, v)) {
            DoubleCosets dc(A.vgroup(u), m.vmono[v], A.alpha(e));
            if (!dc.finite()) rep.window_qualified = true;
            std::set<Elem> hit;
            for (int f : fs) hit.insert(dc.canonical(m.alpha_twist(f)));
            for (Elem r : dc.representatives(window))
                if (!hit.count(r)) {
                    rep.ok = false;
                    rep.defects.push_back({v, e, "no edge over " + A.ename(e) + " in double coset " + A.vgroup(u)->format(r)});
                    break;
                }
        }
    }
    return rep;
}

bool is_covering(const Morphism& m, Elem window) { return covering_report(m, window).ok; }

namespace {

bool same_shape(const Morphism& m1, const Morphism& m2) {
    return m1.source == m2.source && m1.target == m2.target && m1.vmap == m2.vmap && m1.emap == m2.emap;
}

bool fail(std::string* why, const std::string& msg) {
    if (why) *why = msg;
    return false;
}

// star injectivity, edge-group saturation and twisted commutation, restricted to vertices with keep[v] (all when keep is empty)
bool check_local(const Morphism& m1, const Morphism& m2, const Certificate& c, const std::vector<char>& keep,
                 std::string* why) {
    const Graph& B = *m1.source;
    const Graph& A = *m1.target;
    for (int v = 0; v < B.nv(); ++v) {
        if (!keep.empty() && !keep[v]) continue;
        const Group& G = *A.vgroup(m1.v(v));
        Elem av = c.vparams[v];
        if (!G.contains(av)) return fail(why, "vertex parameter outside its group at " + B.vname(v));
        for (Elem b : B.vgroup(v)->generators())
            if (m2.vmono[v].apply(b) != G.conj(m1.vmono[v].apply(b), av))
                return fail(why, "vertex monomorphisms are not conjugate by the parameter at " + B.vname(v));
        for (int f : B.star(v)) {
            Elem af = c.eparams[f];
            if (!A.egroup(m1.e(f))->contains(af)) return fail(why, "edge parameter outside its group at " + B.ename(f));
            if (c.eparams[B.inv(f)] != af) return fail(why, "edge parameters differ on " + B.ename(f) + " and its inverse");
            Elem rhs = G.op(G.op(m1.alpha_twist(f), A.alpha(m1.e(f)).apply(af)), G.inv(m2.alpha_twist(f)));
            if (rhs != av) return fail(why, "vertex and edge parameters disagree at " + B.ename(f));
        }
    }
    return true;
}

std::optional<Elem> edge_param(const Morphism& m1, const Morphism& m2, int f, Elem av) {
    const Graph& A = *m1.target;
    int e = m1.e(f);
    const Group& G = *A.vgroup(A.origin(e));
    return A.alpha(e).preimage(G.op(G.op(G.inv(m1.alpha_twist(f)), av), m2.alpha_twist(f)));
}

// fills vertex and edge parameters over one component from the root value
bool propagate(const Morphism& m1, const Morphism& m2, int root, Elem value, Certificate& c) {
    const Graph& B = *m1.source;
    const Graph& A = *m1.target;
    std::vector<char> done(B.nv(), 0);
    c.vparams[root] = value;
    done[root] = 1;
    std::deque<int> q{root};
    while (!q.empty()) {
        int v = q.front();
        q.pop_front();
        for (int f : B.star(v)) {
            auto af = edge_param(m1, m2, f, c.vparams[v]);
            if (!af) return false;
            c.eparams[f] = *af;
            int w = B.target(f), fi = B.inv(f);
            const Group& H = *A.vgroup(m1.v(w));
            Elem aw = H.op(H.op(m1.alpha_twist(fi), A.alpha(m1.e(fi)).apply(*af)), H.inv(m2.alpha_twist(fi)));
            if (!done[w]) {
                done[w] = 1;
                c.vparams[w] = aw;
                q.push_back(w);
            } else if (c.vparams[w] != aw) {
                return false;
            }
        }
    }
    return true;
}

struct RootValues {
    std::vector<Elem> values;
    bool infinite = false;
};

// candidate root values; for Z roots a symbolic pass through Z vertices narrows them
RootValues root_values(const Morphism& m1, const Morphism& m2, int root, std::optional<Elem> window) {
    const Graph& B = *m1.source;
    const Graph& A = *m1.target;
    const GroupPtr& G = A.vgroup(m1.v(root));
    if (G->finite()) return {G->elements(), false};
    std::vector<std::optional<Affine>> val(B.nv());
    val[root] = Affine::var();
    AffineSystem sys;
    std::deque<int> q{root};
    while (!q.empty()) {
        int v = q.front();
        q.pop_front();
        for (int f : B.star(v)) {
            int e = m1.e(f);
            Affine lhs = *val[v] + (m2.alpha_twist(f) - m1.alpha_twist(f));
            if (A.egroup(e)->kind() != Group::Kind::integers) {
                sys.zero(lhs);
                continue;
            }
            Affine af = lhs / A.alpha(e).factor();
            sys.integral(af);
            int fi = B.inv(f), w = B.target(f);
            Affine aw = af * A.omega(e).factor() + (m1.alpha_twist(fi) - m2.alpha_twist(fi));
            if (val[w]) {
                sys.zero(*val[w] - aw);
            } else {
                val[w] = aw;
                q.push_back(w);
            }
        }
    }
    auto s = sys.solve();
    RootValues out;
    if (s.none) return out;
    if (s.unique) {
        out.values = {*s.unique};
        return out;
    }
    out.infinite = true;
    out.values = window ? sys.enumerate(*window) : s.residues;
    return out;
}

}  // namespace

bool check_certificate(const Morphism& m1, const Morphism& m2, const Certificate& c, std::string* why) {
    if (!same_shape(m1, m2)) return fail(why, "morphisms differ on the underlying graph");
    const Graph& B = *m1.source;
    if (static_cast<int>(c.vparams.size()) != B.nv() || static_cast<int>(c.eparams.size()) != B.ne())
        return fail(why, "certificate has the wrong size");
    if (c.pointed) {
        if (!B.basepoint) return fail(why, "pointed certificate on an unpointed source");
        if (!m1.target->vgroup(m1.v(*B.basepoint))->is_id(c.vparams[*B.basepoint]))
            return fail(why, "basepoint parameter is not trivial");
    }
    return check_local(m1, m2, c, {}, why);
}

Certificate identity_certificate(const Morphism& m) {
    Certificate c;
    const Graph& B = *m.source;
    const Graph& A = *m.target;
    for (int v = 0; v < B.nv(); ++v) c.vparams.push_back(A.vgroup(m.v(v))->id());
    for (int f = 0; f < B.ne(); ++f) c.eparams.push_back(A.egroup(m.e(f))->id());
    c.pointed = B.basepoint.has_value();
    return c;
}

std::optional<Certificate> find_equivalence(const Morphism& m1, const Morphism& m2, bool pointed) {
    if (!same_shape(m1, m2)) return std::nullopt;
    const Graph& B = *m1.source;
    if (pointed && !B.basepoint) throw Error(Errc::unsupported, "pointed equivalence needs a basepoint");
    Certificate c = identity_certificate(m1);
    c.pointed = pointed;
    int ncomp = 0;
    auto comp = component_ids(B, &ncomp);
    for (int k = 0; k < ncomp; ++k) {
        int root = -1;
        for (int v = 0; v < B.nv() && root < 0; ++v)
            if (comp[v] == k) root = v;
        std::vector<Elem> values;
        if (pointed && comp[*B.basepoint] == k) {
            root = *B.basepoint;
            values = {m1.target->vgroup(m1.v(root))->id()};
        } else {
            values = root_values(m1, m2, root, std::nullopt).values;
        }
        std::vector<char> keep(B.nv());
        for (int v = 0; v < B.nv(); ++v) keep[v] = comp[v] == k;
        bool found = false;
        for (Elem a : values) {
            Certificate t = c;
            if (propagate(m1, m2, root, a, t) && check_local(m1, m2, t, keep, nullptr)) {
                c = t;
                found = true;
                break;
            }
        }
        if (!found) return std::nullopt;
    }
    if (!check_certificate(m1, m2, c)) return std::nullopt;
    return c;
}

namespace {

void require(const Morphism& m1, const Morphism& m2, const Certificate& c) {
    std::string why;
    if (!check_certificate(m1, m2, c, &why)) throw Error(Errc::invalid_certificate, why);
}

}  // namespace

Certificate certificate_compose(const Morphism& m1, const Morphism& m2, const Morphism& m3, const Certificate& c1,
                                const Certificate& c2) {
    require(m1, m2, c1);
    require(m2, m3, c2);
    const Graph& B = *m1.source;
    const Graph& A = *m1.target;
    Certificate c;
    c.pointed = c1.pointed && c2.pointed;
    for (int v = 0; v < B.nv(); ++v) c.vparams.push_back(A.vgroup(m1.v(v))->op(c1.vparams[v], c2.vparams[v]));
    for (int f = 0; f < B.ne(); ++f) c.eparams.push_back(A.egroup(m1.e(f))->op(c1.eparams[f], c2.eparams[f]));
    return c;
}

Certificate certificate_precompose(const Morphism& mu, const Morphism& nu, const Certificate& c, const Morphism& tau) {
    require(mu, nu, c);
    if (tau.target != mu.source) throw Error(Errc::composability, "precomposed morphism does not land in the source");
    const Graph& C = *tau.source;
    Certificate r;
    for (int w = 0; w < C.nv(); ++w) r.vparams.push_back(c.vparams[tau.v(w)]);
    for (int g = 0; g < C.ne(); ++g) r.eparams.push_back(c.eparams[tau.e(g)]);
    r.pointed = c.pointed && C.basepoint && mu.source->basepoint && tau.v(*C.basepoint) == *mu.source->basepoint;
    return r;
}

Certificate certificate_postcompose(const Morphism& mu, const Morphism& nu, const Certificate& c, const Morphism& tau) {
    require(mu, nu, c);
    if (mu.target != tau.source) throw Error(Errc::composability, "postcomposed morphism does not start at the target");
    const Graph& C = *mu.source;
    Certificate r;
    for (int w = 0; w < C.nv(); ++w) r.vparams.push_back(tau.vmono[mu.v(w)].apply(c.vparams[w]));
    for (int g = 0; g < C.ne(); ++g) r.eparams.push_back(tau.emono[mu.e(g)].apply(c.eparams[g]));
    r.pointed = c.pointed;
    return r;
}

Certificate certificate_inverse(const Morphism& m1, const Certificate& c) {
    const Graph& B = *m1.source;
    const Graph& A = *m1.target;
    Certificate r = c;
    for (int v = 0; v < B.nv(); ++v) r.vparams[v] = A.vgroup(m1.v(v))->inv(c.vparams[v]);
    for (int f = 0; f < B.ne(); ++f) r.eparams[f] = A.egroup(m1.e(f))->inv(c.eparams[f]);
    return r;
}

Centralizer centralizer(const Morphism& m, Elem window) {
    const Graph& B = *m.source;
    int ncomp = 0;
    component_ids(B, &ncomp);
    if (ncomp != 1) throw Error(Errc::unsupported, "centralizer needs a connected source");
    int root = B.basepoint.value_or(0);
    auto rv = root_values(m, m, root, window);
    Centralizer out;
    out.window_qualified = rv.infinite;
    for (Elem a : rv.values) {
        Certificate c = identity_certificate(m);
        c.pointed = false;
        if (propagate(m, m, root, a, c) && check_certificate(m, m, c)) out.elements.push_back(c);
    }
    return out;
}

bool in_centralizer(const Morphism& m, const std::vector<Elem>& d) {
    const Graph& B = *m.source;
    if (static_cast<int>(d.size()) != B.nv()) return false;
    Certificate c = identity_certificate(m);
    c.pointed = false;
    c.vparams = d;
    for (int f = 0; f < B.ne(); ++f) {
        auto af = edge_param(m, m, f, d[B.origin(f)]);
        if (!af) return false;
        c.eparams[f] = *af;
    }
    return check_certificate(m, m, c);
}

}  // namespace gog
